//! Weak equivariant equivalence of characteristic pairs.
//!
//! Two pairs are equivalent when a complex isomorphism `phi` and a matrix
//! `A` in `GL(n, Z)` satisfy `A lambda(i) = +-lambda'(phi(i))` for every
//! facet. A witness records `phi`, `A` and the signs.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use rayon::prelude::*;
use thiserror::Error;

use crate::complex::{for_each_subset, FacetId, IsomorphismSearch, OrbitComplex};
use crate::linalg::{IntMatrix, LinalgError};
use crate::pair::{sign_normalized, CharacteristicPair, PairError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivalenceError {
    #[error("pairs have ranks {0} and {1}")]
    RankMismatch(usize, usize),
    #[error("entry bound must be at least 1")]
    ZeroBound,
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, EquivalenceError>;

/// Whether the torus automorphism may be arbitrary (weak) or must be the
/// identity (strict).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Mode {
    #[default]
    Weak,
    Strict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub facet_bijection: Vec<FacetId>,
    pub unimodular: IntMatrix,
    pub signs: Vec<i64>,
}

impl EquivalenceWitness {
    pub fn identity(p: &CharacteristicPair) -> Self {
        EquivalenceWitness {
            facet_bijection: (0..p.facet_count()).collect(),
            unimodular: IntMatrix::identity(p.rank()),
            signs: vec![1; p.facet_count()],
        }
    }

    /// Witness for the reverse direction.
    pub fn inverse(&self) -> Result<Self> {
        let m = self.facet_bijection.len();
        let mut facet_bijection = vec![0; m];
        let mut signs = vec![0; m];
        for (i, &g) in self.facet_bijection.iter().enumerate() {
            facet_bijection[g] = i;
            signs[g] = self.signs[i];
        }
        Ok(EquivalenceWitness {
            facet_bijection,
            unimodular: self.unimodular.unimodular_inverse()?,
            signs,
        })
    }

    /// `self` maps p1 to p2, `next` maps p2 to p3; the result maps p1 to p3.
    pub fn compose(&self, next: &EquivalenceWitness) -> Result<Self> {
        Ok(EquivalenceWitness {
            facet_bijection: self.facet_bijection.iter().map(|&g| next.facet_bijection[g]).collect(),
            unimodular: next.unimodular.mul(&self.unimodular)?,
            signs: self
                .facet_bijection
                .iter()
                .enumerate()
                .map(|(i, &g)| self.signs[i] * next.signs[g])
                .collect(),
        })
    }
}

/// Checks every defining equation of a witness from `p1` to `p2`.
pub fn verify_witness(p1: &CharacteristicPair, p2: &CharacteristicPair, w: &EquivalenceWitness) -> bool {
    let (n, m) = (p1.rank(), p1.facet_count());
    if p2.rank() != n
        || p2.facet_count() != m
        || w.facet_bijection.len() != m
        || w.signs.len() != m
        || w.unimodular.nrows() != n
        || w.unimodular.ncols() != n
    {
        return false;
    }
    if w.signs.iter().any(|s| s.abs() != 1) {
        return false;
    }
    if !matches!(w.unimodular.determinant(), Ok(1 | -1)) {
        return false;
    }
    if !p1.complex().is_isomorphism(p2.complex(), &w.facet_bijection) {
        return false;
    }
    (0..m).all(|i| {
        let Ok(image) = w.unimodular.apply(p1.row(i)) else {
            return false;
        };
        image
            .iter()
            .zip(p2.row(w.facet_bijection[i]))
            .all(|(a, b)| *a == w.signs[i] * b)
    })
}

/// Decides equivalence, returning the first witness in a fixed order:
/// complex isomorphisms in lexicographic order, then sign patterns on the
/// base vertex in binary order (all positive first).
pub fn are_equivalent(
    p1: &CharacteristicPair,
    p2: &CharacteristicPair,
    mode: Mode,
) -> Result<Option<EquivalenceWitness>> {
    if p1.rank() != p2.rank() {
        return Err(EquivalenceError::RankMismatch(p1.rank(), p2.rank()));
    }
    p1.ensure_valid()?;
    p2.ensure_valid()?;
    let n = p1.rank();
    let base = p1.complex().vertices()[0].clone();
    let b1 = p1.lambda().basis(&base);
    let b1_inv = b1.unimodular_inverse()?;
    let mut found = None;
    let mut failure = None;
    IsomorphismSearch::new(p1.complex(), p2.complex()).for_each(|phi| {
        let image: Vec<FacetId> = base.iter().map(|&f| phi[f]).collect();
        let b2 = p2.lambda().basis(&image);
        for pattern in 0..1u32 << n {
            let mut scaled = b2.clone();
            for col in 0..n {
                if pattern >> col & 1 == 1 {
                    for row in 0..n {
                        scaled[(row, col)] = -scaled[(row, col)];
                    }
                }
            }
            let a = match scaled.mul(&b1_inv) {
                Ok(a) => a,
                Err(e) => {
                    failure = Some(e);
                    return ControlFlow::Break(());
                }
            };
            if mode == Mode::Strict && a != IntMatrix::identity(n) {
                continue;
            }
            if let Some(signs) = facet_signs(p1, p2, phi, &a) {
                found = Some(EquivalenceWitness {
                    facet_bijection: phi.to_vec(),
                    unimodular: a,
                    signs,
                });
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    if let Some(e) = failure {
        return Err(e.into());
    }
    if let Some(w) = &found {
        assert!(
            verify_witness(p1, p2, w),
            "equivalence search produced a bad witness: {w:?}"
        );
    }
    Ok(found)
}

fn facet_signs(p1: &CharacteristicPair, p2: &CharacteristicPair, phi: &[FacetId], a: &IntMatrix) -> Option<Vec<i64>> {
    (0..p1.facet_count())
        .map(|i| {
            let image = a.apply(p1.row(i)).ok()?;
            let target = p2.row(phi[i]);
            if image == target {
                Some(1)
            } else if image.iter().zip(target).all(|(x, y)| *x == -y) {
                Some(-1)
            } else {
                None
            }
        })
        .collect()
}

/// An equivalence invariant: equal for equivalent pairs, with no converse.
///
/// Combines the sorted facet boundary lengths, the f-vector, and for every
/// unordered pair of vertex records the sorted `|det|` values over all
/// `n`-subsets of the facets at either vertex.
pub fn fingerprint(p: &CharacteristicPair) -> String {
    let c = p.complex();
    let mut lengths: Vec<usize> = (0..c.facet_count()).map(|f| c.boundary_length(f)).collect();
    lengths.sort_unstable();
    let vertices = c.vertices();
    let mut mixed: Vec<Vec<i64>> = Vec::new();
    for (i, u) in vertices.iter().enumerate() {
        for v in &vertices[i + 1..] {
            let mut union: Vec<FacetId> = u.iter().chain(v).copied().collect();
            union.sort_unstable();
            union.dedup();
            let mut dets = Vec::new();
            for_each_subset(&union, p.rank(), &mut |facets: &[FacetId]| {
                let det = p.lambda().basis(facets).determinant().map(i64::abs).unwrap_or(-1);
                dets.push(det);
            });
            dets.sort_unstable();
            mixed.push(dets);
        }
    }
    mixed.sort_unstable();
    format!("{lengths:?}|{:?}|{mixed:?}", c.f_vector())
}

/// Representatives of every equivalence class of valid characteristic
/// matrices over `c` with entries in `[-bound, bound]`, after normalizing
/// the rows at the first vertex to the standard basis. Output order is the
/// order of first appearance in the search.
pub fn enumerate_pairs(c: &OrbitComplex, bound: i64) -> Result<Vec<CharacteristicPair>> {
    if bound < 1 {
        return Err(EquivalenceError::ZeroBound);
    }
    let n = c.rank();
    let m = c.facet_count();
    let base = c.vertices()[0].clone();
    let mut rows: Vec<Option<Vec<i64>>> = vec![None; m];
    for (k, &f) in base.iter().enumerate() {
        let mut e = vec![0; n];
        e[k] = 1;
        rows[f] = Some(e);
    }
    let candidates = primitive_vectors(n, bound);
    // Vertices become checkable once their largest facet is assigned.
    let mut checks: BTreeMap<FacetId, Vec<&[FacetId]>> = BTreeMap::new();
    for v in c.vertices() {
        checks
            .entry(*v.iter().max().expect("vertices are nonempty"))
            .or_default()
            .push(v);
    }
    let mut found = Vec::new();
    search(c, 0, &mut rows, &candidates, &checks, &mut found)?;

    let mut reps: Vec<(String, CharacteristicPair)> = Vec::new();
    for rows in found {
        let pair = CharacteristicPair::new(c.clone(), rows)?;
        let print = fingerprint(&pair);
        let duplicate = reps
            .par_iter()
            .filter(|(f, _)| *f == print)
            .any(|(_, rep)| matches!(are_equivalent(rep, &pair, Mode::Weak), Ok(Some(_))));
        if !duplicate {
            reps.push((print, pair));
        }
    }
    Ok(reps.into_iter().map(|(_, p)| p).collect())
}

fn search(
    c: &OrbitComplex,
    f: FacetId,
    rows: &mut Vec<Option<Vec<i64>>>,
    candidates: &[Vec<i64>],
    checks: &BTreeMap<FacetId, Vec<&[FacetId]>>,
    out: &mut Vec<Vec<Vec<i64>>>,
) -> Result<()> {
    if f == c.facet_count() {
        out.push(rows.iter().map(|r| r.clone().expect("all rows assigned")).collect());
        return Ok(());
    }
    let fixed = rows[f].is_some();
    let options: Vec<Vec<i64>> = match &rows[f] {
        Some(r) => vec![r.clone()],
        None => candidates.to_vec(),
    };
    for option in options {
        rows[f] = Some(option);
        let mut ok = true;
        for v in checks.get(&f).into_iter().flatten() {
            let cols: Vec<Vec<i64>> = v.iter().map(|&g| rows[g].clone().expect("assigned")).collect();
            if IntMatrix::from_columns(c.rank(), &cols)?.determinant()?.abs() != 1 {
                ok = false;
                break;
            }
        }
        if ok {
            search(c, f + 1, rows, candidates, checks, out)?;
        }
    }
    if !fixed {
        rows[f] = None;
    }
    Ok(())
}

/// Primitive vectors with entries in `[-bound, bound]`, one per sign class,
/// in lexicographic order.
fn primitive_vectors(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut v = vec![-bound; n];
    loop {
        if crate::linalg::gcd_all(&v) == 1 && sign_normalized(&v) == v {
            out.push(v.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] < bound {
                v[i] += 1;
                break;
            }
            v[i] = -bound;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pair::SquareKind;

    #[test]
    fn square_a1_and_a_minus_1_are_equivalent() {
        let p = CharacteristicPair::square(SquareKind::A(1));
        let q = CharacteristicPair::square(SquareKind::A(-1));
        let w = are_equivalent(&p, &q, Mode::Weak).unwrap().unwrap();
        assert!(verify_witness(&p, &q, &w));
    }

    #[test]
    fn lens_family_is_pairwise_distinct() {
        for a in 0..4 {
            for b in 0..4 {
                let r = are_equivalent(
                    &CharacteristicPair::lens_family(a),
                    &CharacteristicPair::lens_family(b),
                    Mode::Weak,
                )
                .unwrap();
                assert_eq!(r.is_some(), a == b, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn identity_witness_checks() {
        let p = CharacteristicPair::simplex(3);
        assert!(verify_witness(&p, &p, &EquivalenceWitness::identity(&p)));
        let (l0, l1) = (CharacteristicPair::lens_family(0), CharacteristicPair::lens_family(1));
        assert!(!verify_witness(&l0, &l1, &EquivalenceWitness::identity(&l0)));
    }

    #[test]
    fn strict_mode_fixes_the_torus() {
        let p = CharacteristicPair::square(SquareKind::A(1));
        let q = CharacteristicPair::square(SquareKind::A(-1));
        assert!(are_equivalent(&p, &q, Mode::Strict).unwrap().is_none());
        let w = are_equivalent(&p, &p.with_signs(&[1, -1, -1, 1]), Mode::Strict)
            .unwrap()
            .unwrap();
        assert_eq!(w.unimodular, IntMatrix::identity(2));
    }

    #[test]
    fn rank_mismatch() {
        assert!(matches!(
            are_equivalent(
                &CharacteristicPair::simplex(2),
                &CharacteristicPair::simplex(3),
                Mode::Weak
            ),
            Err(EquivalenceError::RankMismatch(2, 3))
        ));
    }

    #[test]
    fn fingerprints_separate_different_complexes() {
        assert_ne!(
            fingerprint(&CharacteristicPair::simplex(3)),
            fingerprint(&CharacteristicPair::lens_family(0))
        );
    }

    #[test]
    fn tetrahedron_has_one_class() {
        let reps = enumerate_pairs(&OrbitComplex::simplex(3), 2).unwrap();
        assert_eq!(reps.len(), 1);
    }

    #[test]
    fn primitive_vector_counts() {
        // (1,0),(0,1),(1,1),(1,-1)
        assert_eq!(primitive_vectors(2, 1).len(), 4);
        assert_eq!(primitive_vectors(3, 1).len(), 13);
    }
}
