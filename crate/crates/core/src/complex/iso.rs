//! Face-poset isomorphism between orbit complexes by backtracking over facet
//! images.
//!
//! Facets are assigned in index order and candidate images are tried in
//! ascending order, so witnesses come out in lexicographic order of their
//! image sequences. Pruning uses per-facet fingerprints and the pairwise
//! counts of shared vertices and edges.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use super::{EdgeKind, FacetId, OrbitComplex, VertexId};

/// Per-facet invariant: boundary length and the sorted list of
/// (shared vertex count, neighbour boundary length) over its neighbours.
fn facet_fingerprints(c: &OrbitComplex, shared: &[Vec<usize>]) -> Vec<(usize, Vec<(usize, usize)>)> {
    let m = c.facet_count();
    (0..m)
        .map(|f| {
            let mut nb: Vec<(usize, usize)> = (0..m)
                .filter(|&g| g != f && shared[f][g] > 0)
                .map(|g| (shared[f][g], shared[g][g]))
                .collect();
            nb.sort_unstable();
            (shared[f][f], nb)
        })
        .collect()
}

/// `shared[f][g]` = number of vertex records containing both facets
/// (the diagonal is the boundary length).
fn shared_vertex_counts(c: &OrbitComplex) -> Vec<Vec<usize>> {
    let m = c.facet_count();
    let mut shared = vec![vec![0; m]; m];
    for v in c.vertices() {
        for &a in v {
            for &b in v {
                shared[a][b] += 1;
            }
        }
    }
    shared
}

fn shared_edge_counts(c: &OrbitComplex) -> Vec<Vec<usize>> {
    let m = c.facet_count();
    let mut shared = vec![vec![0; m]; m];
    for e in c.edges().unwrap_or_default() {
        let (a, b) = e.facets();
        shared[a][b] += 1;
        shared[b][a] += 1;
    }
    shared
}

/// Backtracking enumerator of complex isomorphisms from `source` to `target`.
pub struct IsomorphismSearch<'a> {
    source: &'a OrbitComplex,
    target: &'a OrbitComplex,
    src_shared: Vec<Vec<usize>>,
    tgt_shared: Vec<Vec<usize>>,
    src_edges: Vec<Vec<usize>>,
    tgt_edges: Vec<Vec<usize>>,
    candidates: Vec<Vec<FacetId>>,
}

impl<'a> IsomorphismSearch<'a> {
    pub fn new(source: &'a OrbitComplex, target: &'a OrbitComplex) -> Self {
        let src_shared = shared_vertex_counts(source);
        let tgt_shared = shared_vertex_counts(target);
        let compatible = source.rank() == target.rank()
            && source.facet_count() == target.facet_count()
            && source.vertex_count() == target.vertex_count()
            && source.edges().map(<[_]>::len) == target.edges().map(<[_]>::len);
        let candidates = if compatible {
            let fs = facet_fingerprints(source, &src_shared);
            let ft = facet_fingerprints(target, &tgt_shared);
            fs.iter()
                .map(|p| (0..ft.len()).filter(|&g| ft[g] == *p).collect())
                .collect()
        } else {
            vec![Vec::new(); source.facet_count().max(1)]
        };
        IsomorphismSearch {
            source,
            target,
            src_edges: shared_edge_counts(source),
            tgt_edges: shared_edge_counts(target),
            src_shared,
            tgt_shared,
            candidates,
        }
    }

    /// Calls `visit` on every isomorphism in lexicographic order of image
    /// sequences until it returns `Break`.
    pub fn for_each<F>(&self, mut visit: F)
    where
        F: FnMut(&[FacetId]) -> ControlFlow<()>,
    {
        let m = self.source.facet_count();
        let mut image = Vec::with_capacity(m);
        let mut used = vec![false; m];
        let _ = self.extend(&mut image, &mut used, &mut visit);
    }

    pub fn first(&self) -> Option<Vec<FacetId>> {
        let mut found = None;
        self.for_each(|phi| {
            found = Some(phi.to_vec());
            ControlFlow::Break(())
        });
        found
    }

    pub fn all(&self) -> Vec<Vec<FacetId>> {
        let mut out = Vec::new();
        self.for_each(|phi| {
            out.push(phi.to_vec());
            ControlFlow::Continue(())
        });
        out
    }

    fn extend<F>(&self, image: &mut Vec<FacetId>, used: &mut [bool], visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[FacetId]) -> ControlFlow<()>,
    {
        let f = image.len();
        if f == self.source.facet_count() {
            if is_isomorphism(self.source, self.target, image) {
                return visit(image);
            }
            return ControlFlow::Continue(());
        }
        for &g in &self.candidates[f] {
            if used[g] {
                continue;
            }
            let consistent = (0..f).all(|h| {
                let gh = image[h];
                self.src_shared[f][h] == self.tgt_shared[g][gh] && self.src_edges[f][h] == self.tgt_edges[g][gh]
            });
            if !consistent {
                continue;
            }
            used[g] = true;
            image.push(g);
            let flow = self.extend(image, used, visit);
            image.pop();
            used[g] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Checks that `phi` (source facet `i` to target facet `phi[i]`) induces a
/// bijection of vertex records and, in rank 3, of edge records with their
/// endpoints.
pub fn is_isomorphism(source: &OrbitComplex, target: &OrbitComplex, phi: &[FacetId]) -> bool {
    let m = source.facet_count();
    if source.rank() != target.rank()
        || m != target.facet_count()
        || phi.len() != m
        || source.vertex_count() != target.vertex_count()
    {
        return false;
    }
    let mut hit = vec![false; m];
    for &g in phi {
        if g >= m || hit[g] {
            return false;
        }
        hit[g] = true;
    }
    let mapped: Vec<Vec<FacetId>> = source
        .vertices()
        .iter()
        .map(|v| {
            let mut w: Vec<FacetId> = v.iter().map(|&f| phi[f]).collect();
            w.sort_unstable();
            w
        })
        .collect();
    let mut by_set: BTreeMap<&Vec<FacetId>, Vec<VertexId>> = BTreeMap::new();
    for (vi, v) in target.vertices().iter().enumerate() {
        by_set.entry(v).or_default().push(vi);
    }
    let mut counts: BTreeMap<&Vec<FacetId>, usize> = BTreeMap::new();
    for w in &mapped {
        *counts.entry(w).or_default() += 1;
    }
    for (set, k) in &counts {
        if by_set.get(set).map(Vec::len) != Some(*k) {
            return false;
        }
    }
    match (source.edges(), target.edges()) {
        (None, None) => true,
        (Some(se), Some(te)) if se.len() == te.len() => {
            let target_edges = edge_multiset(te, |f| f, |v| v);
            let mut assignment = vec![usize::MAX; source.vertex_count()];
            let mut taken = vec![false; target.vertex_count()];
            assign_vertices(
                0,
                &mapped,
                &by_set,
                &mut assignment,
                &mut taken,
                &|psi: &[VertexId]| edge_multiset(se, |f| phi[f], |v| psi[v]) == target_edges,
            )
        }
        _ => false,
    }
}

type EdgeKey = (FacetId, FacetId, usize, usize);

fn edge_multiset(
    edges: &[super::Edge],
    facet_map: impl Fn(FacetId) -> FacetId,
    vertex_map: impl Fn(VertexId) -> VertexId,
) -> Vec<EdgeKey> {
    let mut keys: Vec<EdgeKey> = edges
        .iter()
        .map(|e| {
            let (a, b) = e.facets();
            let (a, b) = (facet_map(a), facet_map(b));
            let (u, v) = match e.kind() {
                EdgeKind::Segment(u, v) => {
                    let (u, v) = (vertex_map(u), vertex_map(v));
                    (u.min(v), u.max(v))
                }
                EdgeKind::Circle => (usize::MAX, usize::MAX),
            };
            (a.min(b), a.max(b), u, v)
        })
        .collect();
    keys.sort_unstable();
    keys
}

/// Searches a vertex bijection compatible with the mapped facet-sets; only
/// vertices with repeated facet-sets have more than one candidate.
fn assign_vertices(
    v: usize,
    mapped: &[Vec<FacetId>],
    by_set: &BTreeMap<&Vec<FacetId>, Vec<VertexId>>,
    assignment: &mut [VertexId],
    taken: &mut [bool],
    accept: &dyn Fn(&[VertexId]) -> bool,
) -> bool {
    if v == mapped.len() {
        return accept(assignment);
    }
    let Some(cands) = by_set.get(&mapped[v]) else {
        return false;
    };
    for &w in cands {
        if taken[w] {
            continue;
        }
        taken[w] = true;
        assignment[v] = w;
        let ok = assign_vertices(v + 1, mapped, by_set, assignment, taken, accept);
        taken[w] = false;
        if ok {
            return true;
        }
    }
    false
}

impl OrbitComplex {
    /// Lexicographically least facet bijection inducing an isomorphism of
    /// face posets, if one exists.
    pub fn find_isomorphism(&self, other: &OrbitComplex) -> Option<Vec<FacetId>> {
        IsomorphismSearch::new(self, other).first()
    }

    pub fn is_isomorphism(&self, other: &OrbitComplex, phi: &[FacetId]) -> bool {
        is_isomorphism(self, other, phi)
    }

    pub fn automorphisms(&self) -> Vec<Vec<FacetId>> {
        IsomorphismSearch::new(self, self).all()
    }
}
