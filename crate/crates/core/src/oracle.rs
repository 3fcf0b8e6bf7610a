//! Exhaustive subtree enumeration for small graphs.
//!
//! This is the ground-truth oracle for every counting engine in the crate:
//! it knows nothing about contraction rules or cycle formulas and simply
//! walks every nonempty subtree (connected acyclic subgraph, single
//! vertices included) exactly once.
//!
//! Enumeration grows connected acyclic edge sets from each root vertex in
//! increasing id order, with the rule that the minimum-id vertex owns the
//! subtree: the walk from root `r` only ever touches vertices with ids
//! `>= r`, so no subtree is produced twice and nothing needs to be stored.
//! Each candidate edge gets a definite include/exclude decision in a fixed
//! order, which makes the output deterministic for a fixed input.

use std::collections::BTreeSet;



use crate::error::{Error, Result};
use crate::graph::{edge_key, VertexId, WeightedGraph};
use crate::ring::Ring;

/// Default vertex cap for enumeration; worst cases stay in the minutes.
pub const DEFAULT_VERTEX_CAP: usize = 20;

/// Hard limit on edges (edge sets are tracked as 64-bit masks).
const EDGE_LIMIT: usize = 64;

/// One subtree of a host graph: a nonempty vertex set plus the acyclic
/// edge set connecting it. Both lists are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subtree {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<(VertexId, VertexId)>,
}

struct Enumerator<F: FnMut(&Subtree)> {
    verts: Vec<VertexId>,
    edges: Vec<(usize, usize)>,
    incident: Vec<Vec<usize>>,
    visit: F,
    in_tree: u32,
    queued: u64,
    vstack: Vec<usize>,
    estack: Vec<usize>,
}

impl<F: FnMut(&Subtree)> Enumerator<F> {
    fn new<R: Ring>(g: &WeightedGraph<R>, visit: F) -> Self {
        let verts: Vec<VertexId> = g.vertices().collect();
        let index_of = |v: VertexId| verts.binary_search(&v).unwrap();
        let edges: Vec<(usize, usize)> = g.edges().map(|(a, b)| (index_of(a), index_of(b))).collect();
        let mut incident = vec![Vec::new(); verts.len()];
        for (i, &(a, b)) in edges.iter().enumerate() {
            incident[a].push(i);
            incident[b].push(i);
        }
        Enumerator {
            verts,
            edges,
            incident,
            visit,
            in_tree: 0,
            queued: 0,
            vstack: Vec::new(),
            estack: Vec::new(),
        }
    }

    fn run(&mut self) {
        for root in 0..self.verts.len() {
            self.in_tree = 1 << root;
            self.queued = 0;
            self.vstack.clear();
            self.vstack.push(root);
            self.estack.clear();
            let mut cands = Vec::new();
            for &e in &self.incident[root].clone() {
                let (a, b) = self.edges[e];
                let other = if a == root { b } else { a };
                if other > root {
                    cands.push(e);
                    self.queued |= 1 << e;
                }
            }
            self.extend(0, &mut cands, root);
        }
    }

    fn emit(&mut self) {
        let mut vertices: Vec<VertexId> = self.vstack.iter().map(|&i| self.verts[i]).collect();
        vertices.sort_unstable();
        let mut edges: Vec<(VertexId, VertexId)> = self
            .estack
            .iter()
            .map(|&e| {
                let (a, b) = self.edges[e];
                edge_key(self.verts[a], self.verts[b])
            })
            .collect();
        edges.sort_unstable();
        let st = Subtree { vertices, edges };
        (self.visit)(&st);
    }

    fn extend(&mut self, cursor: usize, cands: &mut Vec<usize>, root: usize) {
        if cursor == cands.len() {
            self.emit();
            return;
        }
        let e = cands[cursor];
        // Decision 1: this subtree never uses edge e.
        self.extend(cursor + 1, cands, root);
        // Decision 2: include e, if it still reaches a new vertex.
        let (a, b) = self.edges[e];
        let new = match ((self.in_tree >> a) & 1, (self.in_tree >> b) & 1) {
            (1, 0) => b,
            (0, 1) => a,
            _ => return, // both endpoints inside: inclusion would close a cycle
        };
        self.in_tree |= 1 << new;
        self.vstack.push(new);
        self.estack.push(e);
        let saved_queued = self.queued;
        let saved_len = cands.len();
        for &e2 in &self.incident[new].clone() {
            let (x, y) = self.edges[e2];
            let other = if x == new { y } else { x };
            if other > root && self.queued & (1 << e2) == 0 {
                cands.push(e2);
                self.queued |= 1 << e2;
            }
        }
        self.extend(cursor + 1, cands, root);
        cands.truncate(saved_len);
        self.queued = saved_queued;
        self.in_tree &= !(1 << new);
        self.vstack.pop();
        self.estack.pop();
    }
}

fn check_caps<R: Ring>(g: &WeightedGraph<R>, cap: usize) -> Result<()> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::TooSmall);
    }
    if n > cap || n > 32 {
        return Err(Error::SizeCapExceeded {
            size: n,
            cap: cap.min(32),
        });
    }
    if g.edge_count() > EDGE_LIMIT {
        return Err(Error::EdgeCapExceeded {
            size: g.edge_count(),
            cap: EDGE_LIMIT,
        });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Streams every nonempty subtree of `g` to `visit`, each exactly once,
/// under the default vertex cap.
pub fn visit_subtrees<R: Ring, F: FnMut(&Subtree)>(g: &WeightedGraph<R>, visit: F) -> Result<()> {
    visit_subtrees_capped(g, DEFAULT_VERTEX_CAP, visit)
}

/// Same as [`visit_subtrees`] with an explicit vertex cap.
pub fn visit_subtrees_capped<R: Ring, F: FnMut(&Subtree)>(
    g: &WeightedGraph<R>,
    cap: usize,
    visit: F,
) -> Result<()> {
    check_caps(g, cap)?;
    Enumerator::new(g, visit).run();
    Ok(())
}

/// Collects all subtrees; test convenience around the streaming interface.
pub fn collect_subtrees<R: Ring>(g: &WeightedGraph<R>) -> Result<Vec<Subtree>> {
    let mut out = Vec::new();
    visit_subtrees(g, |st| out.push(st.clone()))?;
    Ok(out)
}

/// Number of nonempty subtrees of `g`.
pub fn count_subtrees<R: Ring>(g: &WeightedGraph<R>) -> Result<u64> {
    let mut n = 0u64;
    visit_subtrees(g, |_| n += 1)?;
    Ok(n)
}

/// Weighted generating function by exhaustive enumeration: sums the product
/// of vertex and edge weights over every subtree containing all of
/// `required_vertices` and `required_edges`. With empty requirements this
/// is the plain generating function.
pub fn brute_gf<R: Ring>(
    g: &WeightedGraph<R>,
    required_vertices: &[VertexId],
    required_edges: &[(VertexId, VertexId)],
) -> Result<R> {
    for &v in required_vertices {
        if !g.contains_vertex(v) {
            return Err(Error::VertexNotFound(v));
        }
    }
    for &(a, b) in required_edges {
        if !g.has_edge(a, b) {
            return Err(Error::EdgeNotFound(a, b));
        }
    }
    let req_v: BTreeSet<VertexId> = required_vertices.iter().copied().collect();
    let req_e: BTreeSet<(VertexId, VertexId)> =
        required_edges.iter().map(|&(a, b)| edge_key(a, b)).collect();

    let mut total = R::zero();
    visit_subtrees(g, |st| {
        if !req_v.iter().all(|v| st.vertices.binary_search(v).is_ok()) {
            return;
        }
        if !req_e.iter().all(|e| st.edges.binary_search(e).is_ok()) {
            return;
        }
        let mut w = R::one();
        for &v in &st.vertices {
            w = w * g.vertex_weight(v).clone();
        }
        for &(a, b) in &st.edges {
            w = w * g.edge_weight(a, b).clone();
        }
        total = total.clone() + w;
    })?;
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vid;
    use crate::ring::{int, ExactInt};
    use std::collections::HashSet;

    #[test]
    fn p2_has_three_subtrees() {
        let g: WeightedGraph<ExactInt> = WeightedGraph::unit_path(2);
        assert_eq!(count_subtrees(&g).unwrap(), 3);
    }

    #[test]
    fn c3_has_nine_subtrees() {
        let g: WeightedGraph<ExactInt> = WeightedGraph::unit_cycle(3);
        assert_eq!(count_subtrees(&g).unwrap(), 9);
    }

    #[test]
    fn single_vertex() {
        let mut g: WeightedGraph<ExactInt> = WeightedGraph::new();
        g.add_vertex_weighted(vid(0), int(7));
        assert_eq!(count_subtrees(&g).unwrap(), 1);
        assert_eq!(brute_gf(&g, &[], &[]).unwrap(), int(7));
    }

    #[test]
    fn hexagon_constants() {
        let g: WeightedGraph<ExactInt> = WeightedGraph::unit_cycle(6);
        assert_eq!(brute_gf(&g, &[], &[]).unwrap(), int(36));
        assert_eq!(brute_gf(&g, &[vid(0)], &[]).unwrap(), int(21));
    }

    #[test]
    fn p3_count() {
        let g: WeightedGraph<ExactInt> = WeightedGraph::unit_path(3);
        assert_eq!(brute_gf(&g, &[], &[]).unwrap(), int(6));
    }

    #[test]
    fn subtree_invariants_hold_per_item() {
        let mut g: WeightedGraph<ExactInt> = WeightedGraph::unit_cycle(5);
        g.add_vertex(vid(5));
        g.add_edge(vid(2), vid(5));
        visit_subtrees(&g, |st| {
            assert!(!st.vertices.is_empty());
            assert_eq!(st.edges.len(), st.vertices.len() - 1);
            for &(a, b) in &st.edges {
                assert!(st.vertices.binary_search(&a).is_ok());
                assert!(st.vertices.binary_search(&b).is_ok());
            }
            // Connectivity: union-find over the subtree's edges.
            let idx = |v: VertexId| st.vertices.binary_search(&v).unwrap();
            let mut parent: Vec<usize> = (0..st.vertices.len()).collect();
            fn find(parent: &mut [usize], mut x: usize) -> usize {
                while parent[x] != x {
                    parent[x] = parent[parent[x]];
                    x = parent[x];
                }
                x
            }
            for &(a, b) in &st.edges {
                let (ra, rb) = (find(&mut parent, idx(a)), find(&mut parent, idx(b)));
                assert_ne!(ra, rb, "edge closes a cycle");
                parent[ra] = rb;
            }
            let root = find(&mut parent, 0);
            for i in 0..st.vertices.len() {
                assert_eq!(find(&mut parent, i), root, "subtree is disconnected");
            }
        })
        .unwrap();
    }

    #[test]
    fn no_duplicates() {
        let mut g: WeightedGraph<ExactInt> = WeightedGraph::unit_cycle(6);
        g.add_vertex(vid(6));
        g.add_edge(vid(0), vid(6));
        let mut seen = HashSet::new();
        visit_subtrees(&g, |st| {
            assert!(seen.insert((st.vertices.clone(), st.edges.clone())));
        })
        .unwrap();
        assert_eq!(seen.len() as u64, count_subtrees(&g).unwrap());
    }

    #[test]
    fn cap_is_enforced_and_named() {
        let g: WeightedGraph<ExactInt> = WeightedGraph::unit_path(6);
        let err = visit_subtrees_capped(&g, 5, |_| {}).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains('5') && msg.contains('6'), "{msg}");
        assert!(visit_subtrees_capped(&g, 6, |_| {}).is_ok());
    }

    #[test]
    fn disconnected_input_rejected() {
        let mut g: WeightedGraph<ExactInt> = WeightedGraph::unit_path(2);
        g.add_vertex(vid(9));
        assert!(matches!(count_subtrees(&g), Err(Error::Disconnected)));
    }

    #[test]
    fn required_elements_must_exist() {
        let g: WeightedGraph<ExactInt> = WeightedGraph::unit_path(3);
        assert!(matches!(
            brute_gf(&g, &[vid(9)], &[]),
            Err(Error::VertexNotFound(_))
        ));
        assert!(matches!(
            brute_gf(&g, &[], &[(vid(0), vid(2))]),
            Err(Error::EdgeNotFound(..))
        ));
    }

    #[test]
    fn relabeling_preserves_counts() {
        // Same shape as C5 with a pendant, ids scrambled.
        let mut a: WeightedGraph<ExactInt> = WeightedGraph::unit_cycle(5);
        a.add_vertex(vid(5));
        a.add_edge(vid(2), vid(5));

        let perm = [vid(40), vid(3), vid(17), vid(9), vid(25), vid(11)];
        let mut b: WeightedGraph<ExactInt> = WeightedGraph::new();
        for &v in &perm {
            b.add_vertex(v);
        }
        for (u, v) in a.edges() {
            b.add_edge(perm[u.0 as usize], perm[v.0 as usize]);
        }
        assert_eq!(count_subtrees(&a).unwrap(), count_subtrees(&b).unwrap());
    }
}
