//! Facet orderings of a rank 3 complex whose proper prefix unions are
//! disjoint unions of discs.

use std::collections::BTreeSet;

use super::{ComplexError, EdgeKind, FacetId, OrbitComplex, Result, UnionFind};

impl OrbitComplex {
    /// Orders the facets so that for every `k < m` the union of the first
    /// `k` facets is a disjoint union of discs.
    ///
    /// The last facet is facet 0; the rest of the sphere is then a disc, and
    /// facets meeting the boundary of what remains are peeled off one at a
    /// time (lowest index first). The removal order, reversed, is the
    /// ordering.
    pub fn disc_ordering(&self) -> Result<Vec<FacetId>> {
        if self.rank != 3 {
            return Err(ComplexError::WrongRank {
                expected: 3,
                found: self.rank,
            });
        }
        if self.has_circle_edges() {
            return Err(ComplexError::NoOrdering(
                "facets bounded by circle edges are not covered".into(),
            ));
        }
        let m = self.facet_count;
        let last = 0;
        let mut remaining: BTreeSet<FacetId> = (0..m).filter(|&f| f != last).collect();
        let mut removed = Vec::with_capacity(m);
        while !remaining.is_empty() {
            let on_boundary = remaining.iter().copied().find(|&f| {
                self.segment_edges()
                    .any(|e| e.other_facet(f).is_some_and(|g| !remaining.contains(&g)))
            });
            let Some(f) = on_boundary else {
                return Err(ComplexError::NoOrdering(format!(
                    "facets {remaining:?} do not meet the boundary of their union"
                )));
            };
            remaining.remove(&f);
            removed.push(f);
        }
        removed.reverse();
        removed.push(last);
        if let Some(k) = (1..m).find(|&k| !self.verify_disc_union(&removed, k)) {
            return Err(ComplexError::NoOrdering(format!(
                "prefix of length {k} of {removed:?} is not a union of discs"
            )));
        }
        Ok(removed)
    }

    /// True iff every connected component of the union of the first `k`
    /// facets of `ordering` has Euler characteristic 1.
    ///
    /// For `k = m` the union is the whole sphere, which is not a disc; the
    /// check returns `true` there by convention since only proper prefixes
    /// are constrained. Returns `false` for malformed input (wrong rank,
    /// `k > m`, an ordering that is not a list of distinct facets).
    pub fn verify_disc_union(&self, ordering: &[FacetId], k: usize) -> bool {
        let m = self.facet_count;
        if self.rank != 3 || k > m || k > ordering.len() {
            return false;
        }
        let prefix: BTreeSet<FacetId> = ordering[..k].iter().copied().collect();
        if prefix.len() != k || prefix.iter().any(|&f| f >= m) {
            return false;
        }
        if k == m {
            return true;
        }
        let edges = self.edges().unwrap_or_default();
        let nv = self.vertices.len();
        // Cells: facets 0..m, vertices m..m+nv, edges after that.
        let vertex_cell = |v: usize| m + v;
        let edge_cell = |e: usize| m + nv + e;
        let mut uf = UnionFind::new(m + nv + edges.len());
        let mut present = vec![false; m + nv + edges.len()];
        for &f in &prefix {
            present[f] = true;
        }
        for (vi, v) in self.vertices.iter().enumerate() {
            for f in v.iter().filter(|f| prefix.contains(f)) {
                present[vertex_cell(vi)] = true;
                uf.union(*f, vertex_cell(vi));
            }
        }
        for (ei, e) in edges.iter().enumerate() {
            let (a, b) = e.facets();
            for f in [a, b].into_iter().filter(|f| prefix.contains(f)) {
                present[edge_cell(ei)] = true;
                uf.union(f, edge_cell(ei));
            }
            if present[edge_cell(ei)] {
                if let Some((u, v)) = e.endpoints() {
                    uf.union(edge_cell(ei), vertex_cell(u));
                    uf.union(edge_cell(ei), vertex_cell(v));
                }
            }
        }
        // Euler characteristic per component. A circle edge is one vertex
        // and one edge, contributing zero.
        let mut chi = std::collections::BTreeMap::<usize, i64>::new();
        for cell in (0..present.len()).filter(|&c| present[c]) {
            let weight = if cell < m + nv {
                1
            } else {
                match edges[cell - m - nv].kind() {
                    EdgeKind::Segment(..) => -1,
                    EdgeKind::Circle => 0,
                }
            };
            *chi.entry(uf.find(cell)).or_default() += weight;
        }
        chi.values().all(|&x| x == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::super::shapes::*;
    use super::*;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn every_tetrahedron_ordering_is_a_disc_ordering() {
        let t = tetrahedron();
        let all = permutations(4);
        assert_eq!(all.len(), 24);
        for p in all {
            for k in 0..4 {
                assert!(t.verify_disc_union(&p, k), "{p:?} k={k}");
            }
        }
    }

    #[test]
    fn cube_top_bottom_and_side_band() {
        let c = cube();
        assert!(c.verify_disc_union(&[5, 4, 0, 1, 2, 3], 2));
        assert!(!c.verify_disc_union(&[0, 1, 2, 3, 4, 5], 4));
        // Three sides in a row form a disc.
        assert!(c.verify_disc_union(&[0, 1, 2, 3, 4, 5], 3));
        assert!(c.verify_disc_union(&[0, 1, 2, 3, 4, 5], 6));
        // Opposite sides plus top: connected strip.
        assert!(c.verify_disc_union(&[0, 2, 5, 1, 3, 4], 3));
    }

    #[test]
    fn orderings_for_standard_shapes() {
        for c in [
            tetrahedron(),
            cube(),
            prism(3),
            prism(5),
            prism(6),
            bigon_prism(),
            theta(),
        ] {
            let ord = c.disc_ordering().unwrap();
            assert_eq!(ord.len(), c.facet_count());
            for k in 0..c.facet_count() {
                assert!(c.verify_disc_union(&ord, k));
            }
        }
    }

    #[test]
    fn bigon_prism_side_pair_is_an_annulus() {
        assert!(!bigon_prism().verify_disc_union(&[0, 1, 2, 3], 2));
        assert!(bigon_prism().verify_disc_union(&[2, 0, 1, 3], 2));
    }

    #[test]
    fn circle_edges_have_no_ordering() {
        assert!(matches!(
            split_sphere().disc_ordering(),
            Err(ComplexError::NoOrdering(_))
        ));
        assert!(matches!(square().disc_ordering(), Err(ComplexError::WrongRank { .. })));
    }
}
