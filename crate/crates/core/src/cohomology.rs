//! Integral cohomology of a polytopal characteristic pair from its face ring.
//!
//! The ring is `Z[v_0, .., v_{m-1}] / (I + J)` with one degree-2 generator
//! per facet, `I` spanned by the monomials whose support lies in no vertex,
//! and `J` generated by the linear forms `sum_i lambda_{i,j} v_i`. Each even
//! degree is computed on its own: the surviving monomials of that degree
//! span it, and the relations are the linear forms times the monomials one
//! degree lower. A Smith form per degree gives rank and torsion; a Hermite
//! basis gives canonical representatives.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::complex::FacetId;
use crate::linalg::{HermiteBasis, IntMatrix, LinalgError};
use crate::pair::{CharacteristicPair, FacetSubpair, PairError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("face-ring cohomology needs distinct vertex facet-sets")]
    NotPolytopal,
    #[error("degree {degree} is outside 0..={top} or odd")]
    DegreeOutOfRange { degree: usize, top: usize },
    #[error("product degree {degree} exceeds the top degree {top}")]
    DegreeOverflow { degree: usize, top: usize },
    #[error("expected a class of degree {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("top degree has rank {0}, expected 1")]
    TopRank(usize),
    #[error("facet {facet} has {count} vertices, not one of the census sizes")]
    UnexpectedVertexCount { facet: FacetId, count: usize },
    #[error("facet census needs rank 3, pair has rank {0}")]
    CensusRank(usize),
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, CohomologyError>;

/// A monomial in the facet generators, as a nondecreasing list of facets.
pub type Monomial = Vec<FacetId>;

/// One even degree of the cohomology ring.
#[derive(Debug, Clone)]
pub struct GradedPiece {
    degree: usize,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    relations: IntMatrix,
    rank: usize,
    torsion: Vec<i64>,
    hermite: HermiteBasis,
    /// Columns project monomial coordinates onto free coordinates.
    free_projection: IntMatrix,
    /// Monomial coordinates of the free generators.
    free_lifts: Vec<Vec<i64>>,
}

impl GradedPiece {
    fn new(degree: usize, basis: Vec<Monomial>, relations: IntMatrix) -> Result<Self> {
        let width = basis.len();
        let index = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        let snf = relations.smith()?;
        let r = snf.rank();
        let mut free_projection = IntMatrix::zeros(width, width - r);
        for row in 0..width {
            for (j, col) in (r..width).enumerate() {
                free_projection[(row, j)] = snf.right[(row, col)];
            }
        }
        let free_lifts = (r..width).map(|i| snf.right_inv.row(i).to_vec()).collect();
        // Eliminate the latest monomials first so representatives use the
        // earliest ones.
        let priority: Vec<usize> = (0..width).rev().collect();
        let hermite = HermiteBasis::new(width, &relations.to_rows(), &priority)?;
        Ok(GradedPiece {
            degree,
            basis,
            index,
            relations,
            rank: width - r,
            torsion: snf.torsion(),
            hermite,
            free_projection,
            free_lifts,
        })
    }

    /// Cohomological degree (twice the monomial degree).
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Invariant factors different from 1.
    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    pub fn monomial_index(&self, m: &[FacetId]) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// A cohomology class as integer coefficients over the monomial basis of
/// its degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingClass {
    degree: usize,
    coefficients: Vec<i64>,
}

impl RingClass {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn scaled(&self, s: i64) -> RingClass {
        RingClass {
            degree: self.degree,
            coefficients: self.coefficients.iter().map(|x| x * s).collect(),
        }
    }

    pub fn plus(&self, other: &RingClass) -> RingClass {
        assert_eq!(self.degree, other.degree, "adding classes of different degree");
        RingClass {
            degree: self.degree,
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn minus(&self, other: &RingClass) -> RingClass {
        self.plus(&other.scaled(-1))
    }
}

/// Cohomology ring of a valid polytopal pair, every degree precomputed.
#[derive(Debug, Clone)]
pub struct CohomologyRing {
    pair: CharacteristicPair,
    pieces: Vec<GradedPiece>,
    vertex_sets: Vec<BTreeSet<FacetId>>,
}

impl CohomologyRing {
    pub fn new(pair: &CharacteristicPair) -> Result<Self> {
        if !pair.complex().is_polytopal() {
            return Err(CohomologyError::NotPolytopal);
        }
        pair.ensure_valid()?;
        let n = pair.rank();
        let vertex_sets: Vec<BTreeSet<FacetId>> = pair
            .complex()
            .vertices()
            .iter()
            .map(|v| v.iter().copied().collect())
            .collect();
        let mut pieces: Vec<GradedPiece> = Vec::with_capacity(n + 1);
        for d in 0..=n {
            let basis = surviving_monomials(&vertex_sets, d);
            let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
            let mut rows = Vec::new();
            if d > 0 {
                for lower in &pieces[d - 1].basis {
                    for j in 0..n {
                        let mut row = vec![0i64; basis.len()];
                        for f in 0..pair.facet_count() {
                            let c = pair.row(f)[j];
                            if c == 0 {
                                continue;
                            }
                            let prod = times_generator(lower, f);
                            if let Some(&i) = index.get(&prod) {
                                row[i] += c;
                            }
                        }
                        if row.iter().any(|&x| x != 0) {
                            rows.push(row);
                        }
                    }
                }
            }
            let relations = IntMatrix::from_rows(basis.len(), &rows)?;
            pieces.push(GradedPiece::new(2 * d, basis, relations)?);
        }
        Ok(CohomologyRing {
            pair: pair.clone(),
            pieces,
            vertex_sets,
        })
    }

    pub fn pair(&self) -> &CharacteristicPair {
        &self.pair
    }

    pub fn top_degree(&self) -> usize {
        2 * self.pair.rank()
    }

    pub fn piece(&self, degree: usize) -> Result<&GradedPiece> {
        if degree % 2 == 1 || degree > self.top_degree() {
            return Err(CohomologyError::DegreeOutOfRange {
                degree,
                top: self.top_degree(),
            });
        }
        Ok(&self.pieces[degree / 2])
    }

    /// Betti numbers in degrees `0..=2n`; odd degrees vanish.
    pub fn betti(&self) -> Vec<usize> {
        (0..=self.top_degree())
            .map(|d| if d % 2 == 0 { self.pieces[d / 2].rank } else { 0 })
            .collect()
    }

    pub fn euler_char(&self) -> i64 {
        self.betti().iter().map(|&b| b as i64).sum()
    }

    pub fn has_torsion(&self) -> bool {
        self.pieces.iter().any(|p| !p.torsion.is_empty())
    }

    pub fn zero(&self, degree: usize) -> Result<RingClass> {
        let width = self.piece(degree)?.basis.len();
        Ok(RingClass {
            degree,
            coefficients: vec![0; width],
        })
    }

    /// The class of a monomial (zero if it is a Stanley-Reisner monomial).
    pub fn monomial(&self, facets: &[FacetId]) -> Result<RingClass> {
        let degree = 2 * facets.len();
        let mut c = self.zero(degree)?;
        let mut m = facets.to_vec();
        m.sort_unstable();
        if let Some(i) = self.pieces[facets.len()].monomial_index(&m) {
            c.coefficients[i] = 1;
        }
        Ok(c)
    }

    /// The Poincare dual `v_f` of the characteristic submanifold over facet `f`.
    pub fn generator(&self, f: FacetId) -> RingClass {
        self.monomial(&[f]).expect("degree 2 exists for rank >= 1")
    }

    pub fn class(&self, degree: usize, coefficients: Vec<i64>) -> Result<RingClass> {
        let width = self.piece(degree)?.basis.len();
        if coefficients.len() != width {
            return Err(CohomologyError::Linalg(LinalgError::Shape(format!(
                "{} coefficients for a basis of {width}",
                coefficients.len()
            ))));
        }
        Ok(RingClass { degree, coefficients })
    }

    /// Canonical representative modulo the relations.
    pub fn normalize(&self, c: &RingClass) -> Result<RingClass> {
        let piece = self.piece(c.degree)?;
        Ok(RingClass {
            degree: c.degree,
            coefficients: piece.hermite.reduce(&c.coefficients)?,
        })
    }

    pub fn is_zero(&self, c: &RingClass) -> Result<bool> {
        Ok(self.normalize(c)?.coefficients.iter().all(|&x| x == 0))
    }

    pub fn equal(&self, a: &RingClass, b: &RingClass) -> Result<bool> {
        if a.degree != b.degree {
            return Ok(false);
        }
        self.is_zero(&a.minus(b))
    }

    /// Coordinates in a fixed basis of the free part of the degree.
    pub fn coordinates(&self, c: &RingClass) -> Result<Vec<i64>> {
        let piece = self.piece(c.degree)?;
        Ok(piece.free_projection.left_apply(&c.coefficients)?)
    }

    pub fn from_coordinates(&self, degree: usize, coords: &[i64]) -> Result<RingClass> {
        let piece = self.piece(degree)?;
        let mut out = vec![0i64; piece.basis.len()];
        for (lift, &x) in piece.free_lifts.iter().zip(coords) {
            for (o, &l) in out.iter_mut().zip(lift) {
                *o += x * l;
            }
        }
        self.normalize(&RingClass {
            degree,
            coefficients: out,
        })
    }

    /// Cup product, reduced to normal form.
    pub fn multiply(&self, a: &RingClass, b: &RingClass) -> Result<RingClass> {
        let degree = a.degree + b.degree;
        if degree > self.top_degree() {
            return Err(CohomologyError::DegreeOverflow {
                degree,
                top: self.top_degree(),
            });
        }
        let (pa, pb) = (self.piece(a.degree)?, self.piece(b.degree)?);
        let target = &self.pieces[degree / 2];
        let mut out = vec![0i64; target.basis.len()];
        for (i, &x) in a.coefficients.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, &y) in b.coefficients.iter().enumerate().filter(|(_, y)| **y != 0) {
                let mut m = pa.basis[i].clone();
                m.extend_from_slice(&pb.basis[j]);
                m.sort_unstable();
                if let Some(k) = target.monomial_index(&m) {
                    out[k] += x * y;
                }
            }
        }
        self.normalize(&RingClass {
            degree,
            coefficients: out,
        })
    }

    pub fn product(&self, classes: &[&RingClass]) -> Result<RingClass> {
        let mut acc = self.monomial(&[])?;
        for c in classes {
            acc = self.multiply(&acc, c)?;
        }
        Ok(acc)
    }

    /// Evaluation of a top-degree class on the fundamental class. The
    /// orientation is fixed so that the product of the generators at the
    /// lexicographically least vertex evaluates to +1.
    pub fn evaluate_top(&self, c: &RingClass) -> Result<i64> {
        let top = self.top_degree();
        if c.degree != top {
            return Err(CohomologyError::DegreeMismatch {
                expected: top,
                found: c.degree,
            });
        }
        let piece = &self.pieces[top / 2];
        if piece.rank != 1 {
            return Err(CohomologyError::TopRank(piece.rank));
        }
        let least = self
            .vertex_sets
            .iter()
            .min()
            .expect("complexes have vertices")
            .iter()
            .copied()
            .collect::<Vec<_>>();
        let orientation = self.coordinates(&self.monomial(&least)?)?[0];
        Ok(self.coordinates(c)?[0] * orientation.signum())
    }

    /// Whether every degree is spanned by products of degree-2 classes with
    /// the degree below, checked on free coordinates by a Smith form.
    pub fn generated_in_degree_two(&self) -> Result<bool> {
        let n = self.pair.rank();
        for d in 2..=n {
            let target_rank = self.pieces[d].rank;
            if target_rank == 0 {
                continue;
            }
            let mut rows = Vec::new();
            for g in 0..self.pieces[1].basis.len() {
                let a = RingClass {
                    degree: 2,
                    coefficients: unit(self.pieces[1].basis.len(), g),
                };
                for h in 0..self.pieces[d - 1].basis.len() {
                    let b = RingClass {
                        degree: 2 * (d - 1),
                        coefficients: unit(self.pieces[d - 1].basis.len(), h),
                    };
                    rows.push(self.coordinates(&self.multiply(&a, &b)?)?);
                }
            }
            let image = IntMatrix::from_rows(target_rank, &rows)?.smith()?;
            if image.rank() != target_rank || image.diagonal.iter().any(|&x| x != 1) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Intersection form on degree 2 when the rank is 2, in free
    /// coordinates.
    pub fn intersection_form(&self) -> Result<IntMatrix> {
        let r = self.pieces[1].rank;
        let gens: Vec<RingClass> = (0..r)
            .map(|i| self.from_coordinates(2, &unit(r, i)))
            .collect::<Result<_>>()?;
        let mut form = IntMatrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                form[(i, j)] = self.evaluate_top(&self.multiply(&gens[i], &gens[j])?)?;
            }
        }
        Ok(form)
    }

    /// Restriction to the characteristic submanifold over facet `f`.
    pub fn restriction(&self, f: FacetId) -> Result<Restriction> {
        let sub = self.pair.facet_subpair(f)?;
        let target = CohomologyRing::new(&sub.pair)?;
        let m = self.pair.facet_count();
        let sub_m = sub.pair.facet_count();
        // Image of each generator as a linear form in the sub generators.
        let mut images = vec![vec![0i64; sub_m]; m];
        for (s, &g) in sub.parent_facets.iter().enumerate() {
            images[g][s] += 1;
        }
        // v_f = -sum_{g != f} <row g, u> v_g with <row f, u> = 1.
        for (s, &g) in sub.parent_facets.iter().enumerate() {
            let pairing: i64 = self
                .pair
                .row(g)
                .iter()
                .zip(&sub.dual_functional)
                .map(|(a, b)| a * b)
                .sum();
            images[f][s] -= pairing;
        }
        Ok(Restriction {
            facet: f,
            subpair: sub,
            target,
            images,
        })
    }

    /// Restriction on degree 2: the matrix in free coordinates (rows index
    /// the source basis) and a basis of its kernel.
    pub fn restriction_deg2(&self, f: FacetId) -> Result<(Restriction, IntMatrix, Vec<RingClass>)> {
        let res = self.restriction(f)?;
        let r = self.pieces[1].rank;
        let rows = (0..r)
            .map(|i| {
                let c = self.from_coordinates(2, &unit(r, i))?;
                res.target.coordinates(&res.restrict(self, &c)?)
            })
            .collect::<Result<Vec<_>>>()?;
        let matrix = IntMatrix::from_rows(res.target.pieces[1].rank, &rows)?;
        let kernel = matrix
            .left_kernel()?
            .iter()
            .map(|k| self.from_coordinates(2, k))
            .collect::<Result<Vec<_>>>()?;
        Ok((res, matrix, kernel))
    }

    /// Sorts the facets of a rank 3 pair into the three census types:
    /// `k + 3` vertices, `k + 2` vertices with restriction kernel spanned by
    /// a square-zero class, and 4 vertices.
    pub fn facet_type_census(&self, k: usize) -> Result<FacetCensus> {
        let n = self.pair.rank();
        if n != 3 {
            return Err(CohomologyError::CensusRank(n));
        }
        let mut facets = Vec::with_capacity(self.pair.facet_count());
        let mut counts = FacetTypeCount::default();
        for f in 0..self.pair.facet_count() {
            let vertex_count = self.pair.complex().boundary_length(f);
            let (_, _, kernel) = self.restriction_deg2(f)?;
            let square_zero_kernel = kernel.len() == 1 && self.is_zero(&self.multiply(&kernel[0], &kernel[0])?)?;
            let kind = if vertex_count == k + 3 {
                counts.dk3 += 1;
                FacetType::Full
            } else if vertex_count == k + 2 && (k + 2 != 4 || square_zero_kernel) {
                counts.dk2 += 1;
                FacetType::Fibre
            } else if vertex_count == 4 {
                counts.d4 += 1;
                FacetType::Quadrilateral
            } else {
                return Err(CohomologyError::UnexpectedVertexCount {
                    facet: f,
                    count: vertex_count,
                });
            };
            facets.push(FacetRecord {
                facet: f,
                vertex_count,
                kernel_rank: kernel.len(),
                square_zero_kernel,
                kind,
            });
        }
        Ok(FacetCensus { counts, facets })
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn times_generator(m: &[FacetId], f: FacetId) -> Monomial {
    let mut out = m.to_vec();
    let pos = out.partition_point(|&x| x <= f);
    out.insert(pos, f);
    out
}

/// Degree-`d` monomials whose support lies in some vertex, lexicographic.
fn surviving_monomials(vertex_sets: &[BTreeSet<FacetId>], d: usize) -> Vec<Monomial> {
    fn multisets(items: &[FacetId], d: usize, start: usize, cur: &mut Monomial, out: &mut BTreeSet<Monomial>) {
        if cur.len() == d {
            out.insert(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            multisets(items, d, i, cur, out);
            cur.pop();
        }
    }
    let mut out = BTreeSet::new();
    for set in vertex_sets {
        let items: Vec<FacetId> = set.iter().copied().collect();
        multisets(&items, d, 0, &mut Vec::with_capacity(d), &mut out);
    }
    out.into_iter().collect()
}

/// Restriction map `H*(M) -> H*(M_f)` to a characteristic submanifold.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub facet: FacetId,
    pub subpair: FacetSubpair,
    pub target: CohomologyRing,
    /// `images[g]` = coefficients of the image of `v_g` over the sub
    /// generators.
    pub images: Vec<Vec<i64>>,
}

impl Restriction {
    /// Restricts a class of `source` by substituting generator images into
    /// each monomial. Degrees above the target's top degree are an error
    /// (the image would lie in a zero group).
    pub fn restrict(&self, source: &CohomologyRing, c: &RingClass) -> Result<RingClass> {
        let piece = source.piece(c.degree)?;
        if c.degree > self.target.top_degree() {
            return Err(CohomologyError::DegreeOverflow {
                degree: c.degree,
                top: self.target.top_degree(),
            });
        }
        let mut acc = self.target.zero(c.degree)?;
        for (i, &x) in c.coefficients.iter().enumerate().filter(|(_, x)| **x != 0) {
            let mut term = self.target.monomial(&[])?;
            for &g in &piece.basis[i] {
                let image = self.target.class(2, self.images[g].clone())?;
                term = self.target.multiply(&term, &image)?;
            }
            acc = acc.plus(&term.scaled(x));
        }
        self.target.normalize(&acc)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FacetTypeCount {
    pub d4: usize,
    pub dk2: usize,
    pub dk3: usize,
}

impl FacetTypeCount {
    pub fn new(d4: usize, dk2: usize, dk3: usize) -> Self {
        FacetTypeCount { d4, dk2, dk3 }
    }

    pub fn total(&self) -> usize {
        self.d4 + self.dk2 + self.dk3
    }
}

impl std::fmt::Display for FacetTypeCount {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.d4, self.dk2, self.dk3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FacetType {
    /// `k + 3` vertices.
    Full,
    /// `k + 2` vertices; the submanifold is a fibre of the sphere factor.
    Fibre,
    /// Four vertices.
    Quadrilateral,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetRecord {
    pub facet: FacetId,
    pub vertex_count: usize,
    pub kernel_rank: usize,
    pub square_zero_kernel: bool,
    pub kind: FacetType,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetCensus {
    pub counts: FacetTypeCount,
    pub facets: Vec<FacetRecord>,
}

/// All nonnegative solutions of
/// `4 d4 + (k+2) dk2 + (k+3) dk3 = 6k + 12`, `d4 + dk2 + dk3 = k + 4`,
/// found by enumeration. Meaningful for `k >= 2`.
pub fn facet_count_solutions(k: usize) -> Vec<FacetTypeCount> {
    let total = k + 4;
    let mut out = Vec::new();
    for d4 in 0..=total {
        for dk2 in 0..=total - d4 {
            let dk3 = total - d4 - dk2;
            if 4 * d4 + (k + 2) * dk2 + (k + 3) * dk3 == 6 * k + 12 {
                out.push(FacetTypeCount { d4, dk2, dk3 });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pair::SquareKind;

    #[test]
    fn cp3_ring() {
        let ring = CohomologyRing::new(&CharacteristicPair::simplex(3)).unwrap();
        assert_eq!(ring.betti(), vec![1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(ring.euler_char(), 4);
        assert!(!ring.has_torsion());
        let x = ring.generator(0);
        // All generators agree: v_i = v_j in H^2(CP^3).
        for f in 1..4 {
            assert!(ring.equal(&x, &ring.generator(f)).unwrap());
        }
        let x2 = ring.multiply(&x, &x).unwrap();
        assert_eq!(ring.coordinates(&x2).unwrap().len(), 1);
        assert!(!ring.is_zero(&x2).unwrap());
        let x3 = ring.multiply(&x2, &x).unwrap();
        assert_eq!(ring.evaluate_top(&x3).unwrap(), 1);
        assert!(ring.generated_in_degree_two().unwrap());
    }

    #[test]
    fn s2_times_s2_ring() {
        let ring = CohomologyRing::new(&CharacteristicPair::square(SquareKind::A(0))).unwrap();
        assert_eq!(ring.piece(2).unwrap().rank(), 2);
        let v = |f| ring.generator(f);
        assert_eq!(
            ring.evaluate_top(&ring.multiply(&v(0), &v(1)).unwrap()).unwrap().abs(),
            1
        );
        assert!(ring.is_zero(&ring.multiply(&v(0), &v(0)).unwrap()).unwrap());
        assert!(matches!(
            ring.multiply(&ring.multiply(&v(0), &v(1)).unwrap(), &v(0)),
            Err(CohomologyError::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn polygon_sum_form_is_definite() {
        for k in 1..=5 {
            let ring = CohomologyRing::new(&CharacteristicPair::polygon_sum(k)).unwrap();
            assert_eq!(ring.betti(), vec![1, 0, k, 0, 1]);
            let form = ring.intersection_form().unwrap();
            assert_eq!(form.determinant().unwrap().abs(), 1);
            // Sylvester: leading minors all of one sign pattern.
            let minors: Vec<i64> = (1..=k)
                .map(|s| {
                    let rows: Vec<Vec<i64>> = (0..s).map(|i| form.row(i)[..s].to_vec()).collect();
                    IntMatrix::from_rows(s, &rows).unwrap().determinant().unwrap()
                })
                .collect();
            let positive = minors.iter().all(|&d| d > 0);
            let negative = minors
                .iter()
                .enumerate()
                .all(|(i, &d)| if i % 2 == 0 { d < 0 } else { d > 0 });
            assert!(positive || negative, "k = {k}: minors {minors:?}");
        }
    }

    #[test]
    fn non_polytopal_pairs_are_rejected() {
        assert!(matches!(
            CohomologyRing::new(&CharacteristicPair::lens_family(2)),
            Err(CohomologyError::NotPolytopal)
        ));
    }

    #[test]
    fn cp3_restrictions_are_injective() {
        let ring = CohomologyRing::new(&CharacteristicPair::simplex(3)).unwrap();
        for f in 0..4 {
            let (_, matrix, kernel) = ring.restriction_deg2(f).unwrap();
            assert_eq!((matrix.nrows(), matrix.ncols()), (1, 1));
            assert!(kernel.is_empty());
        }
    }

    #[test]
    fn facet_count_system() {
        assert_eq!(facet_count_solutions(4), vec![FacetTypeCount::new(6, 2, 0)]);
        assert_eq!(
            facet_count_solutions(3),
            vec![FacetTypeCount::new(5, 2, 0), FacetTypeCount::new(6, 0, 1)]
        );
        let two = facet_count_solutions(2);
        assert_eq!(two.len(), 7);
        assert!(two.iter().all(|s| s.dk3 == 0 && s.d4 + s.dk2 == 6));
        for k in 2..30 {
            assert!(facet_count_solutions(k).contains(&FacetTypeCount::new(k + 2, 2, 0)));
        }
    }

    #[test]
    fn census_rejects_triangles() {
        let ring = CohomologyRing::new(&CharacteristicPair::simplex(3)).unwrap();
        assert!(matches!(
            ring.facet_type_census(2),
            Err(CohomologyError::UnexpectedVertexCount { count: 3, .. })
        ));
    }
}
