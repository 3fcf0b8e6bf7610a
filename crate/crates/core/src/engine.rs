//! Subtree generating functions for weighted trees and unicyclic graphs,
//! with optional containment constraints (fixed vertex, fixed path, fixed
//! vertex pair).
//!
//! Tree routines work by iterated leaf contraction: removing a leaf `u`
//! with pendant edge to `v` and reweighting `f'(v) = f(v)(1 + f(u)g(u,v))`
//! preserves every rooted generating function, and accumulating the removed
//! leaf's weight recovers the unrooted one.
//!
//! Unicyclic routines contract all pendant trees onto the cycle and then
//! sum over arcs explicitly: every subtree of a cycle is a single vertex or
//! a path covering `1..m-1` consecutive edges, so the arc iteration below
//! (choose a start, extend clockwise / counterclockwise) enumerates each
//! exactly once. Constrained counts that would require contracting almost
//! the whole cycle are evaluated as explicit sums over admissible
//! extensions instead, so no multigraph is ever materialized. All of this
//! is verified against the exhaustive oracle rather than trusted on paper.

use std::collections::BTreeSet;



use crate::error::{Error, Result};
use crate::graph::{edge_key, GraphClass, VertexId, WeightedGraph};
use crate::ring::Ring;

/// Which subtrees to sum over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContainmentConstraint {
    /// All nonempty subtrees.
    None,
    /// Subtrees containing a fixed vertex.
    Vertex(VertexId),
    /// Subtrees containing every vertex and edge of a simple path.
    Path(Vec<VertexId>),
    /// Subtrees containing two prescribed distinct vertices.
    VertexPair(VertexId, VertexId),
}

/// Evaluates the generating function of a tree or unicyclic graph under a
/// containment constraint. Anything else is rejected with the offending
/// class named.
pub fn evaluate<R: Ring>(g: &WeightedGraph<R>, constraint: &ContainmentConstraint) -> Result<R> {
    match g.classify() {
        GraphClass::Tree => match constraint {
            ContainmentConstraint::None => tree_gf(g),
            ContainmentConstraint::Vertex(v) => tree_gf_rooted(g, *v),
            ContainmentConstraint::Path(p) => {
                check_simple_path(g, p)?;
                let edges: Vec<_> = p.windows(2).map(|w| (w[0], w[1])).collect();
                tree_gf_containing(g, p, &edges)
            }
            ContainmentConstraint::VertexPair(a, b) => tree_gf_two_vertices(g, *a, *b),
        },
        GraphClass::Unicyclic => match constraint {
            ContainmentConstraint::None => unicyclic_gf(g),
            ContainmentConstraint::Vertex(v) => unicyclic_gf_rooted(g, *v),
            ContainmentConstraint::Path(p) => unicyclic_gf_path(g, p),
            ContainmentConstraint::VertexPair(a, b) => unicyclic_gf_two_vertices(g, *a, *b),
        },
        other => Err(Error::UnsupportedClass(other)),
    }
}

/// `F(T; f, g)`: weighted sum over all nonempty subtrees of a tree.
pub fn tree_gf<R: Ring>(g: &WeightedGraph<R>) -> Result<R> {
    let class = g.classify();
    if class != GraphClass::Tree {
        return Err(Error::NotATree(class));
    }
    let mut work = g.clone();
    let mut total = R::zero();
    while work.vertex_count() > 1 {
        let leaf = work.vertices().find(|&v| work.degree(v) == 1).unwrap();
        total = total + work.contract_leaf_in_place(leaf)?;
    }
    let last = work.vertices().next().unwrap();
    Ok(total + work.vertex_weight(last).clone())
}

/// `F(T; f, g; v)`: weighted sum over subtrees of a tree containing `v`.
pub fn tree_gf_rooted<R: Ring>(g: &WeightedGraph<R>, v: VertexId) -> Result<R> {
    if !g.contains_vertex(v) {
        return Err(Error::VertexNotFound(v));
    }
    let class = g.classify();
    if class != GraphClass::Tree {
        return Err(Error::NotATree(class));
    }
    let mut work = g.clone();
    while work.vertex_count() > 1 {
        let leaf = work
            .vertices()
            .find(|&u| u != v && work.degree(u) == 1)
            .expect("a tree with >= 2 vertices has a leaf besides the root");
        work.contract_leaf_in_place(leaf)?;
    }
    Ok(work.vertex_weight(v).clone())
}

/// Weighted sum over subtrees of a tree containing two prescribed distinct
/// vertices: the product of the rooted generating functions of the hanging
/// components along the connecting path, times the path's edge weights.
pub fn tree_gf_two_vertices<R: Ring>(
    g: &WeightedGraph<R>,
    v0: VertexId,
    vl: VertexId,
) -> Result<R> {
    if v0 == vl {
        return Err(Error::IdenticalVertices(v0));
    }
    tree_gf_containing(g, &[v0, vl], &[])
}

/// Weighted sum over subtrees of a tree containing all required vertices
/// and edges. In a tree the requirements span a unique minimal subtree `K`;
/// any subtree containing `K` splits into independent pieces hanging off
/// `K`'s vertices, giving a product formula.
pub fn tree_gf_containing<R: Ring>(
    g: &WeightedGraph<R>,
    required_vertices: &[VertexId],
    required_edges: &[(VertexId, VertexId)],
) -> Result<R> {
    let class = g.classify();
    if class != GraphClass::Tree {
        return Err(Error::NotATree(class));
    }
    let mut targets: Vec<VertexId> = required_vertices.to_vec();
    for &(a, b) in required_edges {
        if !g.has_edge(a, b) {
            return Err(Error::EdgeNotFound(a, b));
        }
        targets.push(a);
        targets.push(b);
    }
    for &v in &targets {
        if !g.contains_vertex(v) {
            return Err(Error::VertexNotFound(v));
        }
    }
    if targets.is_empty() {
        return tree_gf(g);
    }

    // Parent pointers from the first target; walking each target back to
    // the root marks exactly the spanning subtree K.
    let anchor = targets[0];
    let parent = bfs_parents(g, anchor);
    let mut k_verts: BTreeSet<VertexId> = BTreeSet::new();
    let mut k_edges: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    k_verts.insert(anchor);
    for &t in &targets {
        let mut cur = t;
        while !k_verts.contains(&cur) {
            k_verts.insert(cur);
            let p = parent[&cur];
            k_edges.insert(edge_key(cur, p));
            cur = p;
        }
    }

    let mut total = R::one();
    for &v in &k_verts {
        let comp = g.component_avoiding(v, &k_edges);
        total = total * tree_gf_rooted(&comp, v)?;
    }
    for &(a, b) in &k_edges {
        total = total * g.edge_weight(a, b).clone();
    }
    Ok(total)
}

/// `F(U; f, g)` for a unicyclic graph: pendant trees are contracted onto
/// the cycle (collecting the weight of subtrees that never reach it), then
/// the cycle's own subtrees are summed arc by arc.
pub fn unicyclic_gf<R: Ring>(g: &WeightedGraph<R>) -> Result<R> {
    let (cycle_graph, off_cycle) = g.contract_pendant_trees_with_extra()?;
    let cycle = cycle_graph.find_cycle().expect("contraction preserves the cycle");
    let m = cycle.len();
    let f = |i: usize| cycle_graph.vertex_weight(cycle[i % m]).clone();
    let gw = |i: usize| cycle_graph.edge_weight(cycle[i % m], cycle[(i + 1) % m]).clone();

    // Singles plus, for each start vertex, every clockwise arc of 1..m-1 edges.
    let mut total = off_cycle;
    for i in 0..m {
        let mut arc = f(i);
        total = total + arc.clone();
        for k in 1..m {
            arc = arc * gw(i + k - 1) * f(i + k);
            total = total + arc.clone();
        }
    }
    Ok(total)
}

/// `F(U; f, g; v)`: weighted sum over subtrees of a unicyclic graph
/// containing `v`.
pub fn unicyclic_gf_rooted<R: Ring>(g: &WeightedGraph<R>, v: VertexId) -> Result<R> {
    if !g.contains_vertex(v) {
        return Err(Error::VertexNotFound(v));
    }
    let class = g.classify();
    if class != GraphClass::Unicyclic {
        return Err(Error::NotUnicyclic(class));
    }
    // Rooted contraction of every leaf other than v. What remains is the
    // cycle, possibly with a path leading out to v.
    let mut work = g.clone();
    loop {
        let leaf = work.vertices().find(|&u| u != v && work.degree(u) == 1);
        match leaf {
            Some(u) => {
                work.contract_leaf_in_place(u)?;
            }
            None => break,
        }
    }
    let cycle = work.find_cycle().expect("still unicyclic");
    if let Some(pos) = cycle.iter().position(|&c| c == v) {
        return Ok(rooted_arc_sum(&work, &cycle, pos));
    }

    // v hangs off the cycle: walk the remaining path v = w0, w1, .., wk
    // where wk is the attachment vertex on the cycle.
    let on_cycle: BTreeSet<VertexId> = cycle.iter().copied().collect();
    let mut path = vec![v];
    let mut prev: Option<VertexId> = None;
    let mut cur = v;
    while !on_cycle.contains(&cur) {
        let next = *work
            .neighbors(cur)
            .iter()
            .find(|&&x| Some(x) != prev)
            .expect("path to the cycle");
        prev = Some(cur);
        cur = next;
        path.push(cur);
    }
    let k = path.len() - 1;
    let mut total = R::zero();
    let mut prefix = work.vertex_weight(path[0]).clone();
    for j in 0..k {
        // Subtrees whose reach along the path stops at w_j.
        total = total + prefix.clone();
        prefix = prefix * work.edge_weight(path[j], path[j + 1]).clone();
        if j + 1 < k {
            prefix = prefix * work.vertex_weight(path[j + 1]).clone();
        }
    }
    let attach_pos = cycle.iter().position(|&c| c == path[k]).unwrap();
    Ok(total + prefix * rooted_arc_sum(&work, &cycle, attach_pos))
}

/// Weighted sum over subtrees of a unicyclic graph containing every vertex
/// and edge of the simple path `p`.
pub fn unicyclic_gf_path<R: Ring>(g: &WeightedGraph<R>, p: &[VertexId]) -> Result<R> {
    let class = g.classify();
    if class != GraphClass::Unicyclic {
        return Err(Error::NotUnicyclic(class));
    }
    check_simple_path(g, p)?;
    if p.len() == 1 {
        return unicyclic_gf_rooted(g, p[0]);
    }

    let cycle = g.find_cycle().unwrap();
    let m = cycle.len();
    let cycle_edges: BTreeSet<(VertexId, VertexId)> = (0..m)
        .map(|i| edge_key(cycle[i], cycle[(i + 1) % m]))
        .collect();
    let path_edges: Vec<(VertexId, VertexId)> =
        p.windows(2).map(|w| edge_key(w[0], w[1])).collect();
    let path_edge_set: BTreeSet<(VertexId, VertexId)> = path_edges.iter().copied().collect();
    let mut edge_product = R::one();
    for &(a, b) in &path_edges {
        edge_product = edge_product * g.edge_weight(a, b).clone();
    }

    let on_cycle: Vec<bool> = path_edges.iter().map(|e| cycle_edges.contains(e)).collect();
    if !on_cycle.iter().any(|&b| b) {
        // The path never runs along the cycle, so removing its edges puts
        // every path vertex in its own component; exactly one of those
        // components still holds the cycle.
        let mut total = edge_product;
        for &v in p {
            let comp = g.component_avoiding(v, &path_edge_set);
            let factor = match comp.classify() {
                GraphClass::Tree => tree_gf_rooted(&comp, v)?,
                GraphClass::Unicyclic => unicyclic_gf_rooted(&comp, v)?,
                other => return Err(Error::UnsupportedClass(other)),
            };
            total = total * factor;
        }
        return Ok(total);
    }

    // The path runs along one arc of the cycle. A simple path can enter and
    // leave the cycle region only once, so its cycle edges form one
    // contiguous run; the endpoints of that run are joined on the far side
    // by the complementary arc.
    let first = on_cycle.iter().position(|&b| b).unwrap();
    let last = on_cycle.iter().rposition(|&b| b).unwrap();
    if on_cycle[first..=last].iter().any(|&b| !b) {
        return Err(Error::Internal(
            "cycle edges of a simple path must be contiguous".into(),
        ));
    }
    let arc_a = p[first];
    let arc_b = p[last + 1];

    // Complementary arc from arc_a to arc_b, avoiding the path's edges.
    let comp_arc = walk_complementary_arc(&cycle, arc_a, arc_b, &path_edge_set);
    let r = comp_arc.len() - 1;
    let mut banned = path_edge_set.clone();
    for w in comp_arc.windows(2) {
        banned.insert(edge_key(w[0], w[1]));
    }

    // Hanging factor of every path vertex except the two arc endpoints.
    let mut total = edge_product;
    for &v in p {
        if v == arc_a || v == arc_b {
            continue;
        }
        let comp = g.component_avoiding(v, &banned);
        total = total * tree_gf_rooted(&comp, v)?;
    }

    // The two arc endpoints share the far side of the cycle. A subtree
    // containing the path keeps disjoint pieces at each endpoint: the piece
    // at arc_a covers a prefix q_0..q_x of the complementary arc, the piece
    // at arc_b a suffix q_y..q_r, with x < y (meeting would close the
    // cycle). Summing prefix weight * suffix weight over all x < y counts
    // every admissible extension once.
    let f_star: Vec<R> = comp_arc
        .iter()
        .map(|&q| {
            let comp = g.component_avoiding(q, &banned);
            tree_gf_rooted(&comp, q)
        })
        .collect::<Result<_>>()?;
    let mut fa = Vec::with_capacity(r + 1);
    fa.push(f_star[0].clone());
    for x in 1..=r {
        let prev: R = fa[x - 1].clone();
        fa.push(prev * g.edge_weight(comp_arc[x - 1], comp_arc[x]).clone() * f_star[x].clone());
    }
    let mut fb = vec![R::zero(); r + 1];
    fb[r] = f_star[r].clone();
    for y in (0..r).rev() {
        fb[y] =
            fb[y + 1].clone() * g.edge_weight(comp_arc[y], comp_arc[y + 1]).clone() * f_star[y].clone();
    }
    let mut suffix_sum = vec![R::zero(); r + 2];
    for y in (1..=r).rev() {
        suffix_sum[y] = suffix_sum[y + 1].clone() + fb[y].clone();
    }
    let mut pair = R::zero();
    for x in 0..r {
        pair = pair + fa[x].clone() * suffix_sum[x + 1].clone();
    }
    Ok(total * pair)
}

/// Weighted sum over subtrees of a unicyclic graph containing two
/// prescribed distinct vertices: one term per simple path between them
/// (two when the pair straddles the cycle). The per-path sets are disjoint
/// because a subtree holding both full arcs would contain the cycle.
pub fn unicyclic_gf_two_vertices<R: Ring>(
    g: &WeightedGraph<R>,
    vi: VertexId,
    vj: VertexId,
) -> Result<R> {
    if vi == vj {
        return Err(Error::IdenticalVertices(vi));
    }
    if !g.contains_vertex(vi) {
        return Err(Error::VertexNotFound(vi));
    }
    if !g.contains_vertex(vj) {
        return Err(Error::VertexNotFound(vj));
    }
    let class = g.classify();
    if class != GraphClass::Unicyclic {
        return Err(Error::NotUnicyclic(class));
    }
    let paths = simple_paths(g, vi, vj);
    debug_assert!(!paths.is_empty() && paths.len() <= 2);
    let mut total = R::zero();
    for p in &paths {
        total = total + unicyclic_gf_path(g, p)?;
    }
    Ok(total)
}

/// Sum over the arcs of a weighted cycle that contain the vertex at
/// `pos`: extend `a` edges one way and `b` edges the other, over all
/// `a + b <= m - 1`. Includes the single-vertex arc.
fn rooted_arc_sum<R: Ring>(g: &WeightedGraph<R>, cycle: &[VertexId], pos: usize) -> R {
    let m = cycle.len();
    let at = |off: isize| {
        let idx = (pos as isize + off).rem_euclid(m as isize) as usize;
        cycle[idx]
    };
    // left[a]: product over a counterclockwise steps; right[b]: clockwise.
    let mut left = Vec::with_capacity(m);
    left.push(R::one());
    for a in 1..m {
        let step = g.edge_weight(at(-(a as isize) + 1), at(-(a as isize))).clone()
            * g.vertex_weight(at(-(a as isize))).clone();
        let prev: R = left[a - 1].clone();
        left.push(prev * step);
    }
    let mut right = Vec::with_capacity(m);
    right.push(R::one());
    for b in 1..m {
        let step = g.edge_weight(at(b as isize - 1), at(b as isize)).clone()
            * g.vertex_weight(at(b as isize)).clone();
        let prev: R = right[b - 1].clone();
        right.push(prev * step);
    }
    let mut right_prefix = vec![R::zero(); m + 1];
    for b in 0..m {
        right_prefix[b + 1] = right_prefix[b].clone() + right[b].clone();
    }
    let mut sum = R::zero();
    for a in 0..m {
        sum = sum + left[a].clone() * right_prefix[m - a].clone();
    }
    g.vertex_weight(cycle[pos]).clone() * sum
}

fn bfs_parents<R: Ring>(
    g: &WeightedGraph<R>,
    start: VertexId,
) -> std::collections::BTreeMap<VertexId, VertexId> {
    let mut parent = std::collections::BTreeMap::new();
    let mut seen = BTreeSet::new();
    seen.insert(start);
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if seen.insert(w) {
                parent.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    parent
}

fn check_simple_path<R: Ring>(g: &WeightedGraph<R>, p: &[VertexId]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::NotAPath("empty sequence".into()));
    }
    let mut seen = BTreeSet::new();
    for &v in p {
        if !g.contains_vertex(v) {
            return Err(Error::VertexNotFound(v));
        }
        if !seen.insert(v) {
            return Err(Error::NotAPath(format!("vertex {v} repeats")));
        }
    }
    for w in p.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(Error::NotAPath(format!("missing edge ({}, {})", w[0], w[1])));
        }
    }
    Ok(())
}

fn walk_complementary_arc(
    cycle: &[VertexId],
    from: VertexId,
    to: VertexId,
    path_edges: &BTreeSet<(VertexId, VertexId)>,
) -> Vec<VertexId> {
    let m = cycle.len();
    let start = cycle.iter().position(|&c| c == from).unwrap();
    // Step in whichever direction leaves `from` over a non-path edge.
    let fwd = cycle[(start + 1) % m];
    let dir: isize = if path_edges.contains(&edge_key(from, fwd)) { -1 } else { 1 };
    let mut arc = vec![from];
    let mut idx = start as isize;
    loop {
        idx = (idx + dir).rem_euclid(m as isize);
        let v = cycle[idx as usize];
        arc.push(v);
        if v == to {
            return arc;
        }
        assert!(arc.len() <= m, "complementary arc walk failed");
    }
}

fn simple_paths<R: Ring>(g: &WeightedGraph<R>, from: VertexId, to: VertexId) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    let mut stack = vec![from];
    let mut on_path: BTreeSet<VertexId> = BTreeSet::from([from]);
    fn dfs<R: Ring>(
        g: &WeightedGraph<R>,
        to: VertexId,
        stack: &mut Vec<VertexId>,
        on_path: &mut BTreeSet<VertexId>,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        let cur = *stack.last().unwrap();
        if cur == to {
            out.push(stack.clone());
            return;
        }
        for &w in g.neighbors(cur) {
            if on_path.contains(&w) {
                continue;
            }
            stack.push(w);
            on_path.insert(w);
            dfs(g, to, stack, on_path, out);
            stack.pop();
            on_path.remove(&w);
        }
    }
    dfs(g, to, &mut stack, &mut on_path, &mut out);
    out
}
