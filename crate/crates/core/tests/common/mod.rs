#![allow(dead_code)]

use charpair::{shapes, CharacteristicPair, OrbitComplex, SquareKind};

/// Valid pairs used across the integration tests, with labels.
pub fn pair_corpus() -> Vec<(String, CharacteristicPair)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push((format!("simplex({n})"), CharacteristicPair::simplex(n)));
    }
    for p in -3..=3 {
        out.push((format!("square a({p})"), CharacteristicPair::square(SquareKind::A(p))));
    }
    out.push(("square b".into(), CharacteristicPair::square(SquareKind::B)));
    for a in 0..=3 {
        out.push((format!("lens({a})"), CharacteristicPair::lens_family(a)));
        out.push((format!("prism({a})"), CharacteristicPair::prism_family(a)));
    }
    for k in 1..=4 {
        out.push((format!("polygon sum({k})"), CharacteristicPair::polygon_sum(k)));
    }
    for k in [2, 3, 4] {
        out.push((
            format!("S2 x {k}CP2"),
            CharacteristicPair::polygon_sum(k).product_with_s2().unwrap(),
        ));
    }
    out.push((
        "cube from b".into(),
        CharacteristicPair::square(SquareKind::B).product_with_s2().unwrap(),
    ));
    out
}

pub fn polytopal_corpus() -> Vec<(String, CharacteristicPair)> {
    pair_corpus()
        .into_iter()
        .filter(|(_, p)| p.complex().is_polytopal())
        .collect()
}

/// Rank 3 complexes with disc facets.
pub fn rank3_complexes() -> Vec<(String, OrbitComplex)> {
    let mut out = vec![
        ("tetrahedron".to_string(), shapes::tetrahedron()),
        ("cube".into(), shapes::cube()),
        ("bigon prism".into(), shapes::bigon_prism()),
        ("theta".into(), shapes::theta()),
    ];
    for k in 3..=8 {
        out.push((format!("prism({k})"), shapes::prism(k)));
    }
    out
}

/// All characteristic matrices over the square with sign-normalized rows
/// in `[-1, 1]^2` that are nonsingular at the four corners, checked with a
/// hand-written 2x2 determinant.
pub fn square_matrices_bound_1() -> Vec<Vec<Vec<i64>>> {
    let rows = [vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]];
    let mut out = Vec::new();
    for a in &rows {
        for b in &rows {
            for c in &rows {
                for d in &rows {
                    let m = vec![a.clone(), b.clone(), c.clone(), d.clone()];
                    if (0..4).all(|i| det2(&m[i], &m[(i + 1) % 4]).abs() == 1) {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

fn det2(u: &[i64], v: &[i64]) -> i64 {
    u[0] * v[1] - u[1] * v[0]
}

/// Brute-force equivalence over the square: every facet bijection that
/// preserves cyclic adjacency, every 2x2 matrix with entries in `[-3, 3]`
/// and determinant +-1, rows compared up to sign.
pub fn square_oracle(l1: &[Vec<i64>], l2: &[Vec<i64>]) -> bool {
    let adjacent = |i: usize, j: usize| (i + 1) % 4 == j || (j + 1) % 4 == i;
    let mut perms = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (0..i).all(|j| p[i] != p[j]));
                    if distinct && (0..4).all(|i| (0..4).all(|j| adjacent(i, j) == adjacent(p[i], p[j]))) {
                        perms.push(p);
                    }
                }
            }
        }
    }
    assert_eq!(perms.len(), 8, "the square has eight symmetries");
    for p in &perms {
        for a in -3..=3i64 {
            for b in -3..=3i64 {
                for c in -3..=3i64 {
                    for d in -3..=3i64 {
                        if (a * d - b * c).abs() != 1 {
                            continue;
                        }
                        let ok = (0..4).all(|i| {
                            let (x, y) = (l1[i][0], l1[i][1]);
                            let image = [a * x + b * y, c * x + d * y];
                            let target = &l2[p[i]];
                            (image[0] == target[0] && image[1] == target[1])
                                || (image[0] == -target[0] && image[1] == -target[1])
                        });
                        if ok {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}
