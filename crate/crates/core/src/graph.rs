//! Weighted simple graphs and the contraction primitives that the
//! generating-function engines are built from.
//!
//! Vertices carry stable opaque ids: contracting one vertex never
//! renumbers the others, so ids held by callers stay valid. All analysis
//! operations are pure and return new graphs; mutating builders panic on
//! structural misuse (duplicate ids, self-loops, parallel edges).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;



use crate::error::{Error, Result};
use crate::ring::Ring;

/// Opaque, stable vertex identifier.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Shorthand used pervasively in tests.
pub fn vid(n: u32) -> VertexId {
    VertexId(n)
}

/// Coarse structural classification used to dispatch counting engines.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GraphClass {
    Tree,
    Unicyclic,
    Other,
}

/// Undirected edge key, normalized so (u, v) and (v, u) collide.
pub fn edge_key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Simple connected graph with per-vertex and per-edge ring weights.
///
/// Absent weights default to one, so plain subtree counting is the
/// all-ones specialization of the weighted generating function.
#[derive(Clone, Debug)]
pub struct WeightedGraph<R: Ring> {
    adj: BTreeMap<VertexId, Vec<VertexId>>,
    vweights: BTreeMap<VertexId, R>,
    eweights: BTreeMap<(VertexId, VertexId), R>,
}

impl<R: Ring> Default for WeightedGraph<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: Ring> WeightedGraph<R> {
    pub fn new() -> Self {
        WeightedGraph {
            adj: BTreeMap::new(),
            vweights: BTreeMap::new(),
            eweights: BTreeMap::new(),
        }
    }

    /// Adds a vertex with unit weight. Panics if the id is already taken.
    pub fn add_vertex(&mut self, v: VertexId) {
        self.add_vertex_weighted(v, R::one());
    }

    pub fn add_vertex_weighted(&mut self, v: VertexId, weight: R) {
        let fresh = self.adj.insert(v, Vec::new()).is_none();
        assert!(fresh, "duplicate vertex id {v}");
        self.vweights.insert(v, weight);
    }

    /// Adds an edge with unit weight. Panics on self-loops, parallel edges
    /// or missing endpoints.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) {
        self.add_edge_weighted(u, v, R::one());
    }

    pub fn add_edge_weighted(&mut self, u: VertexId, v: VertexId, weight: R) {
        assert!(u != v, "self-loop at {u}");
        assert!(self.adj.contains_key(&u), "unknown endpoint {u}");
        assert!(self.adj.contains_key(&v), "unknown endpoint {v}");
        let fresh = self.eweights.insert(edge_key(u, v), weight).is_none();
        assert!(fresh, "parallel edge ({u}, {v})");
        let lu = self.adj.get_mut(&u).unwrap();
        let pos = lu.binary_search(&v).unwrap_err();
        lu.insert(pos, v);
        let lv = self.adj.get_mut(&v).unwrap();
        let pos = lv.binary_search(&u).unwrap_err();
        lv.insert(pos, u);
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.eweights.len()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.eweights.contains_key(&edge_key(u, v))
    }

    /// Vertices in increasing id order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    /// Edges as normalized pairs, in increasing key order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.eweights.keys().copied()
    }

    /// Neighbors of `v` in increasing id order. Panics if `v` is unknown.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        self.adj.get(&v).map(Vec::as_slice).unwrap_or_else(|| panic!("unknown vertex {v}"))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    pub fn vertex_weight(&self, v: VertexId) -> &R {
        self.vweights.get(&v).unwrap_or_else(|| panic!("unknown vertex {v}"))
    }

    pub fn edge_weight(&self, u: VertexId, v: VertexId) -> &R {
        self.eweights
            .get(&edge_key(u, v))
            .unwrap_or_else(|| panic!("unknown edge ({u}, {v})"))
    }

    pub fn set_vertex_weight(&mut self, v: VertexId, weight: R) {
        assert!(self.adj.contains_key(&v), "unknown vertex {v}");
        self.vweights.insert(v, weight);
    }

    pub fn set_edge_weight(&mut self, u: VertexId, v: VertexId, weight: R) {
        let key = edge_key(u, v);
        assert!(self.eweights.contains_key(&key), "unknown edge ({u}, {v})");
        self.eweights.insert(key, weight);
    }

    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.adj.keys().next() else {
            return false;
        };
        let mut seen = BTreeSet::new();
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in self.neighbors(v) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == self.adj.len()
    }

    /// Classifies the graph by edge count confirmed with an explicit cycle
    /// search: disconnected graphs and graphs with two or more independent
    /// cycles land in `Other`.
    pub fn classify(&self) -> GraphClass {
        if !self.is_connected() {
            return GraphClass::Other;
        }
        let n = self.vertex_count();
        let m = self.edge_count();
        if m + 1 == n && self.find_cycle().is_none() {
            GraphClass::Tree
        } else if m == n && self.find_cycle().is_some() {
            GraphClass::Unicyclic
        } else {
            GraphClass::Other
        }
    }

    /// Returns some cycle as a vertex sequence (consecutive entries
    /// adjacent, last adjacent to first), or `None` for acyclic graphs.
    /// On unicyclic graphs this is the unique cycle.
    pub fn find_cycle(&self) -> Option<Vec<VertexId>> {
        let mut visited: BTreeSet<VertexId> = BTreeSet::new();
        for &start in self.adj.keys() {
            if visited.contains(&start) {
                continue;
            }
            // Frame: (vertex, parent, next neighbor index). The frame stack
            // always spells out the current DFS path.
            let mut frames: Vec<(VertexId, Option<VertexId>, usize)> = vec![(start, None, 0)];
            visited.insert(start);
            while let Some(&mut (v, parent, ref mut idx)) = frames.last_mut() {
                let nbrs = self.neighbors(v);
                if *idx >= nbrs.len() {
                    frames.pop();
                    continue;
                }
                let w = nbrs[*idx];
                *idx += 1;
                if Some(w) == parent {
                    continue;
                }
                if visited.insert(w) {
                    frames.push((w, Some(v), 0));
                } else if frames.iter().any(|&(fv, _, _)| fv == w) {
                    // Back edge to an ancestor: the cycle is the stack
                    // segment from w up to v.
                    let pos = frames.iter().position(|&(fv, _, _)| fv == w).unwrap();
                    return Some(frames[pos..].iter().map(|&(fv, _, _)| fv).collect());
                }
            }
        }
        None
    }

    /// Removes leaf `u` and folds its weight into the neighbor `v`:
    /// `f'(v) = f(v) * (1 + f(u) * g(u, v))`. Pure version of
    /// [`contract_leaf_in_place`](Self::contract_leaf_in_place).
    pub fn contract_leaf(&self, u: VertexId) -> Result<Self> {
        let mut g = self.clone();
        g.contract_leaf_in_place(u)?;
        Ok(g)
    }

    /// In-place leaf contraction; returns the weight the leaf carried at
    /// removal time (the term the unrooted generating function accumulates).
    pub fn contract_leaf_in_place(&mut self, u: VertexId) -> Result<R> {
        if !self.contains_vertex(u) {
            return Err(Error::VertexNotFound(u));
        }
        if self.vertex_count() < 2 {
            return Err(Error::TooSmall);
        }
        if self.degree(u) != 1 {
            return Err(Error::NotALeaf(u));
        }
        let v = self.neighbors(u)[0];
        let g_uv = self.eweights.remove(&edge_key(u, v)).unwrap();
        let f_u = self.vweights.remove(&u).unwrap();
        self.adj.remove(&u);
        let lv = self.adj.get_mut(&v).unwrap();
        lv.retain(|&x| x != u);
        let f_v = self.vweights.get(&v).unwrap().clone();
        let folded = f_v * (R::one() + f_u.clone() * g_uv);
        self.vweights.insert(v, folded);
        Ok(f_u)
    }

    /// Merges a simple path into its first vertex. The merged vertex weight
    /// is the product of all path vertex and edge weights; edges incident to
    /// the path are reattached. Contractions that would produce a parallel
    /// edge or self-loop are rejected.
    pub fn contract_path(&self, path: &[VertexId]) -> Result<Self> {
        self.check_path(path)?;
        let merged = path[0];
        let path_set: BTreeSet<VertexId> = path.iter().copied().collect();
        let mut weight = R::one();
        for &v in path {
            weight = weight * self.vertex_weight(v).clone();
        }
        for pair in path.windows(2) {
            weight = weight * self.edge_weight(pair[0], pair[1]).clone();
        }
        let path_edges: BTreeSet<(VertexId, VertexId)> =
            path.windows(2).map(|p| edge_key(p[0], p[1])).collect();

        let mut out = WeightedGraph::new();
        for v in self.vertices() {
            if v == merged {
                out.add_vertex_weighted(v, weight.clone());
            } else if !path_set.contains(&v) {
                out.add_vertex_weighted(v, self.vertex_weight(v).clone());
            }
        }
        for (a, b) in self.edges() {
            let w = self.eweights.get(&edge_key(a, b)).unwrap().clone();
            match (path_set.contains(&a), path_set.contains(&b)) {
                (true, true) => {
                    // Path edges vanish; a chord between path vertices would
                    // become a self-loop.
                    if !path_edges.contains(&edge_key(a, b)) {
                        return Err(Error::MultiEdge(merged));
                    }
                }
                (true, false) | (false, true) => {
                    let other = if path_set.contains(&a) { b } else { a };
                    if out.has_edge(merged, other) {
                        return Err(Error::MultiEdge(other));
                    }
                    out.add_edge_weighted(merged, other, w);
                }
                (false, false) => out.add_edge_weighted(a, b, w),
            }
        }
        Ok(out)
    }

    fn check_path(&self, path: &[VertexId]) -> Result<()> {
        if path.is_empty() {
            return Err(Error::NotAPath("empty sequence".into()));
        }
        let mut seen = BTreeSet::new();
        for &v in path {
            if !self.contains_vertex(v) {
                return Err(Error::VertexNotFound(v));
            }
            if !seen.insert(v) {
                return Err(Error::NotAPath(format!("vertex {v} repeats")));
            }
        }
        for pair in path.windows(2) {
            if !self.has_edge(pair[0], pair[1]) {
                return Err(Error::NotAPath(format!(
                    "missing edge ({}, {})",
                    pair[0], pair[1]
                )));
            }
        }
        Ok(())
    }

    /// Contracts every pendant tree of a unicyclic graph into its cycle
    /// vertex, leaving the weighted cycle. Each cycle vertex ends up
    /// carrying the rooted generating function of its pendant tree.
    pub fn contract_pendant_trees(&self) -> Result<Self> {
        Ok(self.contract_pendant_trees_with_extra()?.0)
    }

    /// Same as [`contract_pendant_trees`](Self::contract_pendant_trees) but
    /// also returns the sum of all folded leaf weights, i.e. the total
    /// weight of subtrees that avoid the cycle entirely.
    pub(crate) fn contract_pendant_trees_with_extra(&self) -> Result<(Self, R)> {
        let class = self.classify();
        if class != GraphClass::Unicyclic {
            return Err(Error::NotUnicyclic(class));
        }
        let mut g = self.clone();
        let mut extra = R::zero();
        loop {
            let leaf = g.vertices().find(|&v| g.degree(v) == 1);
            match leaf {
                Some(u) => extra = extra + g.contract_leaf_in_place(u)?,
                None => break,
            }
        }
        Ok((g, extra))
    }

    /// Connected component of `start`, ignoring the `banned` edges.
    /// Weights of surviving vertices and edges are carried over.
    pub(crate) fn component_avoiding(
        &self,
        start: VertexId,
        banned: &BTreeSet<(VertexId, VertexId)>,
    ) -> Self {
        let mut seen = BTreeSet::new();
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in self.neighbors(v) {
                if banned.contains(&edge_key(v, w)) {
                    continue;
                }
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        let mut out = WeightedGraph::new();
        for &v in &seen {
            out.add_vertex_weighted(v, self.vertex_weight(v).clone());
        }
        for (a, b) in self.edges() {
            if seen.contains(&a) && seen.contains(&b) && !banned.contains(&edge_key(a, b)) {
                out.add_edge_weighted(a, b, self.edge_weight(a, b).clone());
            }
        }
        out
    }

    /// Unit-weight cycle on vertices `0..m`.
    pub fn unit_cycle(m: usize) -> Self {
        assert!(m >= 3, "cycle needs at least 3 vertices");
        let mut g = WeightedGraph::new();
        for i in 0..m {
            g.add_vertex(VertexId(i as u32));
        }
        for i in 0..m {
            g.add_edge(VertexId(i as u32), VertexId(((i + 1) % m) as u32));
        }
        g
    }

    /// Unit-weight path on vertices `0..m`.
    pub fn unit_path(m: usize) -> Self {
        assert!(m >= 1);
        let mut g = WeightedGraph::new();
        for i in 0..m {
            g.add_vertex(VertexId(i as u32));
        }
        for i in 1..m {
            g.add_edge(VertexId((i - 1) as u32), VertexId(i as u32));
        }
        g
    }

    /// Unit-weight star: center 0 with `leaves` leaves.
    pub fn unit_star(leaves: usize) -> Self {
        let mut g = WeightedGraph::new();
        g.add_vertex(VertexId(0));
        for i in 1..=leaves {
            g.add_vertex(VertexId(i as u32));
            g.add_edge(VertexId(0), VertexId(i as u32));
        }
        g
    }
}
