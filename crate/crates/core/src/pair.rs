//! Characteristic maps over orbit complexes.
//!
//! A characteristic map assigns each facet the circle subgroup of the torus
//! fixing the corresponding characteristic submanifold. It is stored as a
//! primitive integer vector spanning that circle's Lie algebra; the vector is
//! only defined up to sign, and every comparison in this crate respects that.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::complex::{ComplexError, FacetId, OrbitComplex, VertexId};
use crate::linalg::{gcd_all, IntMatrix, LinalgError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("characteristic matrix has {found} rows, complex has {expected} facets")]
    RowCount { expected: usize, found: usize },
    #[error("row {row} has length {found}, expected rank {expected}")]
    RowLength { row: usize, expected: usize, found: usize },
    #[error("invalid characteristic pair:\n{0}")]
    Invalid(ValidationReport),
    #[error("facet {facet} does not carry a valid characteristic pair: {reason}")]
    InvalidFacetComplex { facet: FacetId, reason: String },
    #[error("product is out of range: {0}")]
    RankLimit(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, PairError>;

/// One primitive integer row per facet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharacteristicMatrix {
    rank: usize,
    rows: Vec<Vec<i64>>,
}

impl CharacteristicMatrix {
    pub fn new(rank: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        for (i, r) in rows.iter().enumerate() {
            if r.len() != rank {
                return Err(PairError::RowLength {
                    row: i,
                    expected: rank,
                    found: r.len(),
                });
            }
        }
        Ok(CharacteristicMatrix { rank, rows })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn row(&self, f: FacetId) -> &[i64] {
        &self.rows[f]
    }

    /// Matrix with the rows of the given facets as columns.
    pub fn basis(&self, facets: &[FacetId]) -> IntMatrix {
        let cols: Vec<&[i64]> = facets.iter().map(|&f| self.rows[f].as_slice()).collect();
        IntMatrix::from_columns(self.rank, &cols).expect("rows have the matrix rank")
    }
}

/// Row `v` with its first nonzero entry made positive.
pub fn sign_normalized(v: &[i64]) -> Vec<i64> {
    match v.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => v.iter().map(|y| -y).collect(),
        _ => v.to_vec(),
    }
}

/// Equality of rows up to sign.
pub fn same_up_to_sign(a: &[i64], b: &[i64]) -> bool {
    a == b || a.iter().zip(b).all(|(x, y)| *x == -*y)
}

/// Diagnostics from [`CharacteristicPair::validate`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// (facet, row, gcd of the row's entries)
    pub non_primitive: Vec<(FacetId, Vec<i64>, i64)>,
    /// (vertex, facet-set, determinant)
    pub singular_vertices: Vec<(VertexId, Vec<FacetId>, i64)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.non_primitive.is_empty() && self.singular_vertices.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return writeln!(f, "valid");
        }
        for (facet, row, g) in &self.non_primitive {
            writeln!(f, "facet {facet}: row {row:?} is not primitive (gcd {g})")?;
        }
        for (v, set, det) in &self.singular_vertices {
            writeln!(f, "vertex {v} {set:?}: determinant {det}, expected +-1")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicPair {
    complex: OrbitComplex,
    lambda: CharacteristicMatrix,
}

/// Square characteristic maps of the two shapes that occur over the square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareKind {
    /// Rows (1,0), (0,1), (1,p), (0,1).
    A(i64),
    /// Rows (1,0), (0,1), (1,2), (1,1).
    B,
}

/// Characteristic pair of a characteristic submanifold, with the facets and
/// vertices of the parent they came from.
#[derive(Debug, Clone)]
pub struct FacetSubpair {
    pub pair: CharacteristicPair,
    /// For each facet of the subpair, the parent facet it is the
    /// intersection with.
    pub parent_facets: Vec<FacetId>,
    /// For each vertex of the subpair, the parent vertex.
    pub parent_vertices: Vec<VertexId>,
    /// A primitive functional `u` with `<row of the facet, u> = 1`.
    pub dual_functional: Vec<i64>,
}

impl CharacteristicPair {
    /// Pairs a complex with a characteristic matrix, checking only shapes.
    /// Use [`validate`](Self::validate) or [`new`](Self::new) for the
    /// nonsingularity conditions.
    pub fn from_parts(complex: OrbitComplex, rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.len() != complex.facet_count() {
            return Err(PairError::RowCount {
                expected: complex.facet_count(),
                found: rows.len(),
            });
        }
        let lambda = CharacteristicMatrix::new(complex.rank(), rows)?;
        Ok(CharacteristicPair { complex, lambda })
    }

    /// Builds a pair and rejects it unless every row is primitive and every
    /// vertex basis is unimodular.
    pub fn new(complex: OrbitComplex, rows: Vec<Vec<i64>>) -> Result<Self> {
        let p = Self::from_parts(complex, rows)?;
        p.ensure_valid()?;
        Ok(p)
    }

    pub fn complex(&self) -> &OrbitComplex {
        &self.complex
    }

    pub fn lambda(&self) -> &CharacteristicMatrix {
        &self.lambda
    }

    pub fn rank(&self) -> usize {
        self.complex.rank()
    }

    pub fn facet_count(&self) -> usize {
        self.complex.facet_count()
    }

    pub fn row(&self, f: FacetId) -> &[i64] {
        self.lambda.row(f)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for (f, row) in self.lambda.rows().iter().enumerate() {
            let g = gcd_all(row);
            if g != 1 {
                report.non_primitive.push((f, row.clone(), g));
            }
        }
        for (v, set) in self.complex.vertices().iter().enumerate() {
            // Entries are small; an overflow is reported as determinant 0.
            let det = self.lambda.basis(set).determinant().unwrap_or(0);
            if det.abs() != 1 {
                report.singular_vertices.push((v, set.clone(), det));
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(PairError::Invalid(report))
        }
    }

    /// Boundary of the simplex with rows `e_1, .., e_n, -(1, .., 1)`.
    pub fn simplex(n: usize) -> Self {
        let mut rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        rows.push(vec![-1; n]);
        Self::new(OrbitComplex::simplex(n), rows).expect("standard simplex pair is valid")
    }

    /// Pair over the square, facets `0..4` in cyclic order.
    pub fn square(kind: SquareKind) -> Self {
        let rows = match kind {
            SquareKind::A(p) => vec![vec![1, 0], vec![0, 1], vec![1, p], vec![0, 1]],
            SquareKind::B => vec![vec![1, 0], vec![0, 1], vec![1, 2], vec![1, 1]],
        };
        Self::new(OrbitComplex::polygon(4), rows).expect("square pairs are valid")
    }

    /// Pair over the bigon prism: sides `(1,0,0)`, `(0,1,0)`, bottom
    /// `(0,0,1)`, top `(-a,a,1)`.
    pub fn lens_family(a: i64) -> Self {
        let base = Self::new(OrbitComplex::polygon(2), vec![vec![1, 0], vec![0, 1]]).expect("bigon pair is valid");
        base.product_with_s2()
            .and_then(|p| p.with_row(3, vec![-a, a, 1]))
            .expect("lens family pairs are valid")
    }

    /// Pair over the triangular prism: sides `(1,0,0)`, `(0,1,0)`,
    /// `(-1,-1,0)`, bottom `(0,0,1)`, top `(-a,a,1)`.
    pub fn prism_family(a: i64) -> Self {
        let base = Self::new(OrbitComplex::polygon(3), vec![vec![1, 0], vec![0, 1], vec![-1, -1]])
            .expect("triangle pair is valid");
        base.product_with_s2()
            .and_then(|p| p.with_row(4, vec![-a, a, 1]))
            .expect("prism family pairs are valid")
    }

    /// Rank-2 pair over the `(k+2)`-gon modelling the connected sum of `k`
    /// copies of the projective plane.
    ///
    /// Starting from the triangle pair, each step sums with another
    /// projective plane at the vertex between the last facet (row `u`) and
    /// facet 0 (row `w`). The new facet between them gets `u - det(u, w) w`,
    /// which keeps the intersection form definite.
    pub fn polygon_sum(k: usize) -> Self {
        assert!(k >= 1, "need at least one summand");
        let mut rows = vec![vec![1, 0], vec![0, 1], vec![-1, -1]];
        for _ in 1..k {
            let u = rows.last().expect("nonempty").clone();
            let w = rows[0].clone();
            let det = u[0] * w[1] - u[1] * w[0];
            rows.push(vec![u[0] - det * w[0], u[1] - det * w[1]]);
        }
        Self::new(OrbitComplex::polygon(k + 2), rows).expect("polygon sums are valid")
    }

    /// The pair of `M x S^2`: rows extended by a zero coordinate, plus a
    /// bottom and a top facet both carrying `e_{n+1}`.
    pub fn product_with_s2(&self) -> Result<Self> {
        let complex = self.complex.product_with_interval().map_err(|e| match e {
            ComplexError::RankLimit(msg) => PairError::RankLimit(msg),
            other => PairError::Complex(other),
        })?;
        let n = self.rank();
        let mut rows: Vec<Vec<i64>> = self
            .lambda
            .rows()
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.push(0);
                r
            })
            .collect();
        let mut end = vec![0; n + 1];
        end[n] = 1;
        rows.push(end.clone());
        rows.push(end);
        Self::new(complex, rows)
    }

    /// Replaces one row, re-validating.
    pub fn with_row(&self, f: FacetId, row: Vec<i64>) -> Result<Self> {
        let mut rows = self.lambda.rows().to_vec();
        rows[f] = row;
        Self::new(self.complex.clone(), rows)
    }

    /// Characteristic pair of the characteristic submanifold over facet `f`.
    ///
    /// The facets of the subpair are the faces of codimension one in `F_f`:
    /// in rank 3 its boundary edges, otherwise the nonempty intersections
    /// with other facets. Rows are the images of the neighbouring rows in
    /// `Z^n / <row f>`, identified with `Z^{n-1}` through a unimodular basis
    /// extension from the Smith form of the single row.
    pub fn facet_subpair(&self, f: FacetId) -> Result<FacetSubpair> {
        let n = self.rank();
        let invalid = |reason: String| PairError::InvalidFacetComplex { facet: f, reason };
        if f >= self.facet_count() {
            return Err(invalid("no such facet".into()));
        }
        if n < 2 {
            return Err(invalid("rank 1 facets are points".into()));
        }
        self.ensure_valid()?;
        let parent_vertices = self.complex.facet_vertices(f);

        let (parent_facets, sub_vertices, sub_complex) = if n == 3 {
            let edges = self.complex.edges().unwrap_or_default();
            if edges.iter().any(|e| e.contains_facet(f) && e.endpoints().is_none()) {
                return Err(invalid("facet is bounded by a circle edge".into()));
            }
            let mut on_f: Vec<(FacetId, usize)> = edges
                .iter()
                .enumerate()
                .filter_map(|(i, e)| e.other_facet(f).map(|g| (g, i)))
                .collect();
            on_f.sort_unstable();
            let sub_index: BTreeMap<usize, usize> = on_f.iter().enumerate().map(|(s, &(_, i))| (i, s)).collect();
            let mut sub_vertices: Vec<Vec<FacetId>> = vec![Vec::new(); parent_vertices.len()];
            let vertex_slot: BTreeMap<VertexId, usize> =
                parent_vertices.iter().enumerate().map(|(s, &v)| (v, s)).collect();
            for (&ei, &s) in &sub_index {
                let (u, v) = edges[ei].endpoints().expect("segment");
                for w in [u, v] {
                    sub_vertices[vertex_slot[&w]].push(s);
                }
            }
            let parents: Vec<FacetId> = on_f.iter().map(|&(g, _)| g).collect();
            let complex =
                OrbitComplex::new(2, parents.len(), sub_vertices.clone(), None).map_err(|e| invalid(e.to_string()))?;
            (parents, sub_vertices, complex)
        } else {
            let parents = self.complex.adjacent_facets(f);
            let slot: BTreeMap<FacetId, usize> = parents.iter().enumerate().map(|(s, &g)| (g, s)).collect();
            let sub_vertices: Vec<Vec<FacetId>> = parent_vertices
                .iter()
                .map(|&v| {
                    self.complex.vertices()[v]
                        .iter()
                        .filter(|&&g| g != f)
                        .map(|g| slot[g])
                        .collect()
                })
                .collect();
            let complex = if n - 1 == 3 {
                OrbitComplex::polytopal(3, parents.len(), sub_vertices.clone())
            } else {
                OrbitComplex::new(n - 1, parents.len(), sub_vertices.clone(), None)
            }
            .map_err(|e| invalid(e.to_string()))?;
            (parents, sub_vertices, complex)
        };
        debug_assert_eq!(sub_vertices.len(), parent_vertices.len());

        // row_f * V = +-e_1, so x -> (x V)[1..] kills row_f and is onto Z^{n-1}.
        let single = IntMatrix::from_rows(n, &[self.row(f)])?;
        let snf = single.smith()?;
        let v = &snf.right;
        let lead = snf.left[(0, 0)];
        let dual_functional: Vec<i64> = v.column(0).iter().map(|x| x * lead).collect();
        let rows = parent_facets
            .iter()
            .map(|&g| Ok(v.left_apply(self.row(g))?[1..].to_vec()))
            .collect::<Result<Vec<_>>>()?;
        let pair = CharacteristicPair::new(sub_complex, rows).map_err(|e| invalid(e.to_string()))?;
        Ok(FacetSubpair {
            pair,
            parent_facets,
            parent_vertices,
            dual_functional,
        })
    }

    /// Facet `i` renamed `perm[i]`, rows moved along.
    pub fn relabeled(&self, perm: &[FacetId]) -> Self {
        let complex = self.complex.relabeled(perm);
        let mut rows = vec![Vec::new(); self.facet_count()];
        for (f, &p) in perm.iter().enumerate() {
            rows[p] = self.row(f).to_vec();
        }
        CharacteristicPair {
            complex,
            lambda: CharacteristicMatrix {
                rank: self.rank(),
                rows,
            },
        }
    }

    pub fn with_vertex_order(&self, perm: &[VertexId]) -> Self {
        CharacteristicPair {
            complex: self.complex.with_vertex_order(perm),
            lambda: self.lambda.clone(),
        }
    }

    /// Rows replaced by `a * row`, for a unimodular `a`.
    pub fn twisted(&self, a: &IntMatrix) -> Result<Self> {
        let rows = self
            .lambda
            .rows()
            .iter()
            .map(|r| a.apply(r))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(CharacteristicPair {
            complex: self.complex.clone(),
            lambda: CharacteristicMatrix {
                rank: self.rank(),
                rows,
            },
        })
    }

    /// Row `f` multiplied by `signs[f]`.
    pub fn with_signs(&self, signs: &[i64]) -> Self {
        let rows = self
            .lambda
            .rows()
            .iter()
            .zip(signs)
            .map(|(r, &s)| r.iter().map(|x| x * s).collect())
            .collect();
        CharacteristicPair {
            complex: self.complex.clone(),
            lambda: CharacteristicMatrix {
                rank: self.rank(),
                rows,
            },
        }
    }

    /// Number of pairs of disjoint facets carrying the same row up to sign.
    pub fn equal_opposite_facets(&self) -> usize {
        let m = self.facet_count();
        let mut count = 0;
        for f in 0..m {
            let adjacent = self.complex.adjacent_facets(f);
            for g in f + 1..m {
                if !adjacent.contains(&g) && same_up_to_sign(self.row(f), self.row(g)) {
                    count += 1;
                }
            }
        }
        count
    }
}
