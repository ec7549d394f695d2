//! Combinatorial face structure of the orbit space of a locally standard
//! torus manifold.
//!
//! An [`OrbitComplex`] records the facets of the orbit space by index, every
//! vertex as the set of `n` facets meeting there, and (in rank 3) the edges of
//! the boundary 2-sphere. Vertices are an ordered list with stable identities:
//! two vertices may carry the same facet-set, which is how the simplicial
//! poset orbit spaces (the bigon, the bigon times an interval) are encoded.

mod disc;
mod iso;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use iso::IsomorphismSearch;

pub type FacetId = usize;
pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("rank must be at least 1")]
    InvalidRank,
    #[error("{facet_count} facets is too few for rank {rank}")]
    TooFewFacets { rank: usize, facet_count: usize },
    #[error("vertex {vertex} has {found} facets, expected {expected}")]
    DimensionMismatch {
        vertex: VertexId,
        expected: usize,
        found: usize,
    },
    #[error("facet index {facet} out of range")]
    FacetOutOfRange { facet: FacetId },
    #[error("facet {facet} lies in no vertex")]
    DanglingFacet { facet: FacetId },
    #[error("boundary is not a sphere: {0}")]
    BoundaryNotSphere(String),
    #[error("bad edge incidence: {0}")]
    BadEdgeIncidence(String),
    #[error("rank 3 complexes need an edge list")]
    MissingEdges,
    #[error("edge lists are only accepted in rank 3")]
    UnexpectedEdges,
    #[error("complex has repeated vertex facet-sets (not a simple polytope)")]
    NotPolytopal,
    #[error("operation needs rank {expected}, complex has rank {found}")]
    WrongRank { expected: usize, found: usize },
    #[error("rank limit: {0}")]
    RankLimit(String),
    #[error("no disc ordering: {0}")]
    NoOrdering(String),
}

pub type Result<T> = std::result::Result<T, ComplexError>;

/// How an edge of the boundary surface is attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKind {
    /// A segment between two distinct vertices.
    Segment(VertexId, VertexId),
    /// A closed edge without vertices.
    Circle,
}

/// Edge of a rank 3 complex: the two facets it separates and its kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    facets: (FacetId, FacetId),
    kind: EdgeKind,
}

impl Edge {
    pub fn segment(f: FacetId, g: FacetId, u: VertexId, v: VertexId) -> Self {
        Edge {
            facets: (f.min(g), f.max(g)),
            kind: EdgeKind::Segment(u, v),
        }
    }

    pub fn circle(f: FacetId, g: FacetId) -> Self {
        Edge {
            facets: (f.min(g), f.max(g)),
            kind: EdgeKind::Circle,
        }
    }

    /// Facet pair, smaller index first.
    pub fn facets(&self) -> (FacetId, FacetId) {
        self.facets
    }

    pub fn kind(&self) -> EdgeKind {
        self.kind
    }

    pub fn endpoints(&self) -> Option<(VertexId, VertexId)> {
        match self.kind {
            EdgeKind::Segment(u, v) => Some((u, v)),
            EdgeKind::Circle => None,
        }
    }

    pub fn contains_facet(&self, f: FacetId) -> bool {
        self.facets.0 == f || self.facets.1 == f
    }

    /// The other facet of the pair, if `f` is one of them.
    pub fn other_facet(&self, f: FacetId) -> Option<FacetId> {
        match self.facets {
            (a, b) if a == f => Some(b),
            (a, b) if b == f => Some(a),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitComplex {
    rank: usize,
    facet_count: usize,
    vertices: Vec<Vec<FacetId>>,
    edges: Option<Vec<Edge>>,
}

impl OrbitComplex {
    /// Validates and builds a complex. Vertex facet-sets are stored sorted;
    /// vertex order is preserved.
    pub fn new(rank: usize, facet_count: usize, vertices: Vec<Vec<FacetId>>, edges: Option<Vec<Edge>>) -> Result<Self> {
        let vertices = vertices
            .into_iter()
            .map(|mut v| {
                v.sort_unstable();
                v
            })
            .collect();
        let c = OrbitComplex {
            rank,
            facet_count,
            vertices,
            edges,
        };
        c.validate()?;
        Ok(c)
    }

    /// Builds a complex whose vertex facet-sets are pairwise distinct,
    /// generating the edge list in rank 3: every facet pair contained in a
    /// vertex becomes a segment between the two vertices containing it.
    pub fn polytopal(rank: usize, facet_count: usize, vertices: Vec<Vec<FacetId>>) -> Result<Self> {
        let mut vertices: Vec<Vec<FacetId>> = vertices
            .into_iter()
            .map(|mut v| {
                v.sort_unstable();
                v
            })
            .collect();
        let distinct: BTreeSet<&Vec<FacetId>> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(ComplexError::NotPolytopal);
        }
        let edges = if rank == 3 {
            let mut by_pair: BTreeMap<(FacetId, FacetId), Vec<VertexId>> = BTreeMap::new();
            for (vi, v) in vertices.iter().enumerate() {
                if v.len() != 3 {
                    return Err(ComplexError::DimensionMismatch {
                        vertex: vi,
                        expected: 3,
                        found: v.len(),
                    });
                }
                for (a, b) in [(v[0], v[1]), (v[0], v[2]), (v[1], v[2])] {
                    by_pair.entry((a, b)).or_default().push(vi);
                }
            }
            let mut edges = Vec::with_capacity(by_pair.len());
            for ((a, b), vs) in by_pair {
                if vs.len() != 2 {
                    return Err(ComplexError::BadEdgeIncidence(format!(
                        "facets {a} and {b} meet at {} vertices, an edge needs 2",
                        vs.len()
                    )));
                }
                edges.push(Edge::segment(a, b, vs[0], vs[1]));
            }
            Some(edges)
        } else {
            None
        };
        let c = OrbitComplex {
            rank,
            facet_count,
            vertices: std::mem::take(&mut vertices),
            edges,
        };
        c.validate()?;
        Ok(c)
    }

    /// Boundary of the `n`-simplex: `n + 1` facets, every `n`-subset a vertex.
    pub fn simplex(n: usize) -> Self {
        assert!(n >= 1, "simplex rank must be positive");
        let vertices = (0..=n)
            .rev()
            .map(|skip| (0..=n).filter(|&f| f != skip).collect())
            .collect();
        Self::polytopal(n, n + 1, vertices).expect("simplex boundary is valid")
    }

    /// The `k`-gon, facets in cyclic order, vertex `i` between facets `i` and
    /// `i + 1`. `k = 2` gives the bigon, whose two vertices share a facet-set.
    pub fn polygon(k: usize) -> Self {
        assert!(k >= 2, "a polygon needs at least two sides");
        let vertices = (0..k).map(|i| vec![i, (i + 1) % k]).collect();
        Self::new(2, k, vertices, None).expect("polygon is valid")
    }

    /// Product with an interval. Facets `0..m` are the old facets times the
    /// interval, `m` is the bottom and `m + 1` the top. Vertices are the old
    /// vertices over the bottom followed by the old vertices over the top.
    pub fn product_with_interval(&self) -> Result<Self> {
        let m = self.facet_count;
        let (bottom, top) = (m, m + 1);
        let nv = self.vertices.len();
        let vertices: Vec<Vec<FacetId>> = [bottom, top]
            .iter()
            .flat_map(|&end| {
                self.vertices.iter().map(move |v| {
                    let mut w = v.clone();
                    w.push(end);
                    w
                })
            })
            .collect();
        let new_rank = self.rank + 1;
        match new_rank {
            2 => Self::new(2, m + 2, vertices, None),
            3 => {
                let mut edges = Vec::new();
                // Vertical edges over each old vertex.
                for (vi, v) in self.vertices.iter().enumerate() {
                    edges.push(Edge::segment(v[0], v[1], vi, vi + nv));
                }
                // Each old facet is a segment; it spans an edge on both ends.
                for f in 0..m {
                    let ends = self.facet_vertices(f);
                    if ends.len() != 2 {
                        return Err(ComplexError::RankLimit(format!(
                            "facet {f} of the polygon has {} vertices",
                            ends.len()
                        )));
                    }
                    edges.push(Edge::segment(f, bottom, ends[0], ends[1]));
                    edges.push(Edge::segment(f, top, ends[0] + nv, ends[1] + nv));
                }
                Self::new(3, m + 2, vertices, Some(edges))
            }
            _ => {
                if !self.is_polytopal() {
                    return Err(ComplexError::RankLimit(format!(
                        "rank {new_rank} products need distinct vertex facet-sets"
                    )));
                }
                Self::polytopal(new_rank, m + 2, vertices)
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn facet_count(&self) -> usize {
        self.facet_count
    }

    pub fn vertices(&self) -> &[Vec<FacetId>] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> Option<&[Edge]> {
        self.edges.as_deref()
    }

    pub fn segment_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges
            .iter()
            .flatten()
            .filter(|e| matches!(e.kind, EdgeKind::Segment(..)))
    }

    pub fn has_circle_edges(&self) -> bool {
        self.edges.iter().flatten().any(|e| e.kind == EdgeKind::Circle)
    }

    /// True when vertex facet-sets are pairwise distinct.
    pub fn is_polytopal(&self) -> bool {
        let distinct: BTreeSet<&Vec<FacetId>> = self.vertices.iter().collect();
        distinct.len() == self.vertices.len()
    }

    /// Indices of the vertices lying on facet `f`.
    pub fn facet_vertices(&self, f: FacetId) -> Vec<VertexId> {
        (0..self.vertices.len())
            .filter(|&v| self.vertices[v].contains(&f))
            .collect()
    }

    /// Number of vertices on the boundary of facet `f`.
    pub fn boundary_length(&self, f: FacetId) -> usize {
        self.vertices.iter().filter(|v| v.contains(&f)).count()
    }

    /// Facets sharing at least one vertex with `f`, ascending.
    pub fn adjacent_facets(&self, f: FacetId) -> Vec<FacetId> {
        let set: BTreeSet<FacetId> = self
            .vertices
            .iter()
            .filter(|v| v.contains(&f))
            .flatten()
            .copied()
            .filter(|&g| g != f)
            .collect();
        set.into_iter().collect()
    }

    /// `f_i` = number of `i`-dimensional faces, `i = 0..n-1`.
    pub fn f_vector(&self) -> Vec<usize> {
        let n = self.rank;
        let mut f = vec![0; n];
        f[0] = self.vertices.len();
        f[n - 1] = self.facet_count;
        if n == 3 {
            f[1] = self.segment_edges().count();
        } else {
            for (i, slot) in f.iter_mut().enumerate().take(n - 1).skip(1) {
                *slot = self.distinct_face_sets(n - i).len();
            }
        }
        f
    }

    /// Distinct `size`-subsets of facets contained in some vertex.
    fn distinct_face_sets(&self, size: usize) -> BTreeSet<Vec<FacetId>> {
        let mut out = BTreeSet::new();
        for v in &self.vertices {
            for_each_subset(v, size, &mut |s| {
                out.insert(s.to_vec());
            });
        }
        out
    }

    /// h-vector of the dual simplicial sphere, `sum h_i t^i = sum f_i (t-1)^i`
    /// with `f_n = 1`.
    pub fn h_vector(&self) -> Result<Vec<i64>> {
        if !self.is_polytopal() {
            return Err(ComplexError::NotPolytopal);
        }
        let n = self.rank;
        let mut f: Vec<i64> = self.f_vector().into_iter().map(|x| x as i64).collect();
        f.push(1);
        let h = (0..=n)
            .map(|k| {
                (k..=n)
                    .map(|i| {
                        let sign = if (i - k) % 2 == 0 { 1 } else { -1 };
                        sign * binomial(i, k) * f[i]
                    })
                    .sum()
            })
            .collect();
        Ok(h)
    }

    /// The same complex with facet `i` renamed `perm[i]`.
    pub fn relabeled(&self, perm: &[FacetId]) -> Self {
        assert_eq!(perm.len(), self.facet_count, "permutation length");
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                let mut w: Vec<FacetId> = v.iter().map(|&f| perm[f]).collect();
                w.sort_unstable();
                w
            })
            .collect();
        let edges = self.edges.as_ref().map(|es| {
            es.iter()
                .map(|e| Edge {
                    facets: {
                        let (a, b) = (perm[e.facets.0], perm[e.facets.1]);
                        (a.min(b), a.max(b))
                    },
                    kind: e.kind,
                })
                .collect()
        });
        OrbitComplex {
            rank: self.rank,
            facet_count: self.facet_count,
            vertices,
            edges,
        }
    }

    /// The same complex with vertex `v` moved to position `perm[v]`.
    pub fn with_vertex_order(&self, perm: &[VertexId]) -> Self {
        assert_eq!(perm.len(), self.vertices.len(), "permutation length");
        let mut vertices = vec![Vec::new(); self.vertices.len()];
        for (v, &p) in perm.iter().enumerate() {
            vertices[p] = self.vertices[v].clone();
        }
        let edges = self.edges.as_ref().map(|es| {
            es.iter()
                .map(|e| Edge {
                    facets: e.facets,
                    kind: match e.kind {
                        EdgeKind::Segment(u, v) => EdgeKind::Segment(perm[u], perm[v]),
                        EdgeKind::Circle => EdgeKind::Circle,
                    },
                })
                .collect()
        });
        OrbitComplex {
            rank: self.rank,
            facet_count: self.facet_count,
            vertices,
            edges,
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.rank;
        let m = self.facet_count;
        if n == 0 {
            return Err(ComplexError::InvalidRank);
        }
        let has_circle = self.has_circle_edges();
        if m < n && !has_circle {
            return Err(ComplexError::TooFewFacets {
                rank: n,
                facet_count: m,
            });
        }
        for (vi, v) in self.vertices.iter().enumerate() {
            if v.len() != n {
                return Err(ComplexError::DimensionMismatch {
                    vertex: vi,
                    expected: n,
                    found: v.len(),
                });
            }
            if let Some(&f) = v.iter().find(|&&f| f >= m) {
                return Err(ComplexError::FacetOutOfRange { facet: f });
            }
            if v.windows(2).any(|w| w[0] == w[1]) {
                return Err(ComplexError::DimensionMismatch {
                    vertex: vi,
                    expected: n,
                    found: v.iter().collect::<BTreeSet<_>>().len(),
                });
            }
        }
        match (&self.edges, n) {
            (None, 3) => return Err(ComplexError::MissingEdges),
            (Some(_), r) if r != 3 => return Err(ComplexError::UnexpectedEdges),
            _ => {}
        }
        for e in self.edges.iter().flatten() {
            let (a, b) = e.facets;
            if b >= m {
                return Err(ComplexError::FacetOutOfRange { facet: b });
            }
            if a == b {
                return Err(ComplexError::BadEdgeIncidence(format!(
                    "edge separates facet {a} from itself"
                )));
            }
        }
        let circle_facets: BTreeSet<FacetId> = self
            .edges
            .iter()
            .flatten()
            .filter(|e| e.kind == EdgeKind::Circle)
            .flat_map(|e| [e.facets.0, e.facets.1])
            .collect();
        let mut seen = vec![false; m];
        for v in &self.vertices {
            for &f in v {
                seen[f] = true;
            }
        }
        if let Some(f) = (0..m).find(|&f| !seen[f] && !circle_facets.contains(&f)) {
            return Err(ComplexError::DanglingFacet { facet: f });
        }
        if n == 3 {
            self.validate_surface(&circle_facets)
        } else {
            self.validate_ridges()
        }
    }

    fn validate_surface(&self, circle_facets: &BTreeSet<FacetId>) -> Result<()> {
        let m = self.facet_count;
        let nv = self.vertices.len();
        let edges = self.edges.as_deref().unwrap_or_default();
        let segments: Vec<&Edge> = edges
            .iter()
            .filter(|e| matches!(e.kind, EdgeKind::Segment(..)))
            .collect();
        let euler = nv as i64 - segments.len() as i64 + m as i64;
        if euler != 2 {
            return Err(ComplexError::BoundaryNotSphere(format!(
                "V - E + F = {nv} - {} + {m} = {euler}",
                segments.len()
            )));
        }

        let mut incident: Vec<Vec<(FacetId, FacetId)>> = vec![Vec::new(); nv];
        for e in &segments {
            let (u, v) = e.endpoints().expect("segment");
            if u >= nv || v >= nv {
                return Err(ComplexError::BadEdgeIncidence(format!(
                    "edge {:?} names a missing vertex",
                    e.facets
                )));
            }
            if u == v {
                return Err(ComplexError::BadEdgeIncidence(format!(
                    "edge {:?} is a loop at vertex {u}",
                    e.facets
                )));
            }
            for w in [u, v] {
                let set = &self.vertices[w];
                if !set.contains(&e.facets.0) || !set.contains(&e.facets.1) {
                    return Err(ComplexError::BadEdgeIncidence(format!(
                        "edge {:?} ends at vertex {w} with facets {set:?}",
                        e.facets
                    )));
                }
                incident[w].push(e.facets);
            }
        }
        for (w, pairs) in incident.iter_mut().enumerate() {
            pairs.sort_unstable();
            let v = &self.vertices[w];
            let expected = vec![(v[0], v[1]), (v[0], v[2]), (v[1], v[2])];
            if *pairs != expected {
                return Err(ComplexError::BadEdgeIncidence(format!(
                    "vertex {w} has incident edges {pairs:?}, expected one per facet pair of {v:?}"
                )));
            }
        }

        for &f in circle_facets {
            let circles = edges
                .iter()
                .filter(|e| e.kind == EdgeKind::Circle && e.contains_facet(f))
                .count();
            if circles != 1 || segments.iter().any(|e| e.contains_facet(f)) || self.boundary_length(f) > 0 {
                return Err(ComplexError::BadEdgeIncidence(format!(
                    "facet {f} must be bounded by exactly one circle edge"
                )));
            }
        }

        // Each remaining facet must be bounded by a single cycle. Vertex
        // incidences already force degree two, so connectivity suffices.
        for f in (0..m).filter(|f| !circle_facets.contains(f)) {
            let verts = self.facet_vertices(f);
            let mut uf = UnionFind::new(nv);
            for e in segments.iter().filter(|e| e.contains_facet(f)) {
                let (u, v) = e.endpoints().expect("segment");
                uf.union(u, v);
            }
            let root = uf.find(verts[0]);
            if verts.iter().any(|&v| uf.find(v) != root) {
                return Err(ComplexError::BoundaryNotSphere(format!(
                    "facet {f} is not a disc: its boundary has several cycles"
                )));
            }
        }

        let mut uf = UnionFind::new(m);
        for e in edges {
            uf.union(e.facets.0, e.facets.1);
        }
        if (1..m).any(|f| uf.find(f) != uf.find(0)) {
            return Err(ComplexError::BoundaryNotSphere("boundary is disconnected".into()));
        }
        Ok(())
    }

    fn validate_ridges(&self) -> Result<()> {
        let n = self.rank;
        if n >= 4 && !self.is_polytopal() {
            return Err(ComplexError::NotPolytopal);
        }
        let mut ridges: HashMap<Vec<FacetId>, Vec<VertexId>> = HashMap::new();
        for (vi, v) in self.vertices.iter().enumerate() {
            for_each_subset(v, n - 1, &mut |s| ridges.entry(s.to_vec()).or_default().push(vi));
        }
        let mut uf = UnionFind::new(self.vertices.len());
        for (ridge, vs) in &ridges {
            if vs.len() != 2 {
                return Err(ComplexError::BoundaryNotSphere(format!(
                    "ridge {ridge:?} lies in {} vertices, expected 2",
                    vs.len()
                )));
            }
            uf.union(vs[0], vs[1]);
        }
        if (1..self.vertices.len()).any(|v| uf.find(v) != uf.find(0)) {
            return Err(ComplexError::BoundaryNotSphere("boundary is disconnected".into()));
        }
        Ok(())
    }
}

pub(crate) fn for_each_subset<F: FnMut(&[usize])>(set: &[usize], size: usize, f: &mut F) {
    fn rec<F: FnMut(&[usize])>(set: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, f: &mut F) {
        if cur.len() == size {
            f(cur);
            return;
        }
        for i in start..set.len() {
            if set.len() - i < size - cur.len() {
                break;
            }
            cur.push(set[i]);
            rec(set, size, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(set, size, 0, &mut Vec::with_capacity(size), f);
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Named complexes used across the crate's examples and tests.
pub mod shapes {
    use super::*;

    pub fn tetrahedron() -> OrbitComplex {
        OrbitComplex::simplex(3)
    }

    pub fn square() -> OrbitComplex {
        OrbitComplex::polygon(4)
    }

    /// Sides `0..4` in cyclic order, bottom `4`, top `5`.
    pub fn cube() -> OrbitComplex {
        prism(4)
    }

    /// The `k`-gon times an interval: sides `0..k`, bottom `k`, top `k + 1`.
    pub fn prism(k: usize) -> OrbitComplex {
        OrbitComplex::polygon(k)
            .product_with_interval()
            .expect("polygon prisms are valid")
    }

    /// The bigon times an interval: sides `0, 1`, bottom `2`, top `3`.
    pub fn bigon_prism() -> OrbitComplex {
        prism(2)
    }

    /// Three facets meeting along three edges between two vertices that
    /// share the facet-set `{0, 1, 2}`.
    pub fn theta() -> OrbitComplex {
        OrbitComplex::new(
            3,
            3,
            vec![vec![0, 1, 2], vec![0, 1, 2]],
            Some(vec![
                Edge::segment(0, 1, 0, 1),
                Edge::segment(0, 2, 0, 1),
                Edge::segment(1, 2, 0, 1),
            ]),
        )
        .expect("theta complex is valid")
    }

    /// A 3-ball whose boundary is two hemispheres glued along a circle edge.
    pub fn split_sphere() -> OrbitComplex {
        OrbitComplex::new(3, 2, Vec::new(), Some(vec![Edge::circle(0, 1)])).expect("split sphere is valid")
    }
}
