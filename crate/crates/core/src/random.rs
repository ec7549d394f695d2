//! Seeded random transformations that preserve the equivalence class of a
//! pair: facet relabelings, vertex reorderings, `GL(n, Z)` twists and sign
//! flips.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::complex::{FacetId, OrbitComplex};
use crate::linalg::IntMatrix;
use crate::pair::{CharacteristicPair, Result};

pub fn random_permutation<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..len).collect();
    perm.shuffle(rng);
    perm
}

/// A product of `steps` elementary integer row operations, so the result
/// always has determinant +-1. Multipliers lie in `-2..=2`.
pub fn random_unimodular<R: Rng + ?Sized>(n: usize, steps: usize, rng: &mut R) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for _ in 0..steps {
        match rng.gen_range(0..3) {
            0 if n > 1 => {
                let i = rng.gen_range(0..n);
                let j = (i + rng.gen_range(1..n)) % n;
                let k = [-2, -1, 1, 2][rng.gen_range(0..4)];
                for c in 0..n {
                    m[(i, c)] += k * m[(j, c)];
                }
            }
            1 if n > 1 => {
                let i = rng.gen_range(0..n);
                let j = (i + rng.gen_range(1..n)) % n;
                for c in 0..n {
                    let t = m[(i, c)];
                    m[(i, c)] = m[(j, c)];
                    m[(j, c)] = t;
                }
            }
            _ => {
                let i = rng.gen_range(0..n);
                for c in 0..n {
                    m[(i, c)] = -m[(i, c)];
                }
            }
        }
    }
    m
}

pub fn random_signs<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<i64> {
    (0..len).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect()
}

/// A random complex automorphism of `c`, uniformly among all of them.
pub fn random_automorphism<R: Rng + ?Sized>(c: &OrbitComplex, rng: &mut R) -> Vec<FacetId> {
    let all = c.automorphisms();
    all.choose(rng).expect("the identity is an automorphism").clone()
}

/// Relabels facets, reorders vertices, twists by a random unimodular matrix
/// and flips random row signs. The result is equivalent to `p`.
pub fn random_twist<R: Rng + ?Sized>(p: &CharacteristicPair, rng: &mut R) -> Result<CharacteristicPair> {
    let relabel = random_permutation(p.facet_count(), rng);
    let vertex_order = random_permutation(p.complex().vertex_count(), rng);
    let a = random_unimodular(p.rank(), 6, rng);
    let signs = random_signs(p.facet_count(), rng);
    p.relabeled(&relabel)
        .with_vertex_order(&vertex_order)
        .twisted(&a)
        .map(|q| q.with_signs(&signs))
}
