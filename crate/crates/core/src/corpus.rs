//! Seeded generation of small weighted test instances: random trees and
//! unicyclic graphs with pendant trees. The oracle-equivalence suites draw
//! their fixed-seed corpus from here; ChaCha8 keeps the corpus identical
//! across platforms and releases.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{VertexId, WeightedGraph};
use crate::ring::ExactInt;

/// Cycle of length `cycle_len` with `extra_vertices` pendant-tree vertices
/// attached at random, all weights uniform in `1..=max_weight`.
pub fn random_weighted_unicyclic(
    rng: &mut ChaCha8Rng,
    cycle_len: usize,
    extra_vertices: usize,
    max_weight: i64,
) -> WeightedGraph<ExactInt> {
    let mut g: WeightedGraph<ExactInt> = WeightedGraph::unit_cycle(cycle_len);
    for i in 0..extra_vertices {
        let id = VertexId((cycle_len + i) as u32);
        let attach = VertexId(rng.gen_range(0..cycle_len + i) as u32);
        g.add_vertex(id);
        g.add_edge(attach, id);
    }
    randomize_weights(rng, &mut g, max_weight);
    g
}

/// Random attachment tree on `vertices` vertices with weights uniform in
/// `1..=max_weight`.
pub fn random_weighted_tree(
    rng: &mut ChaCha8Rng,
    vertices: usize,
    max_weight: i64,
) -> WeightedGraph<ExactInt> {
    let mut g: WeightedGraph<ExactInt> = WeightedGraph::new();
    g.add_vertex(VertexId(0));
    for i in 1..vertices {
        let attach = VertexId(rng.gen_range(0..i) as u32);
        g.add_vertex(VertexId(i as u32));
        g.add_edge(attach, VertexId(i as u32));
    }
    randomize_weights(rng, &mut g, max_weight);
    g
}

fn randomize_weights(rng: &mut ChaCha8Rng, g: &mut WeightedGraph<ExactInt>, max_weight: i64) {
    let vs: Vec<VertexId> = g.vertices().collect();
    for v in vs {
        g.set_vertex_weight(v, ExactInt::from(rng.gen_range(1..=max_weight)));
    }
    let es: Vec<(VertexId, VertexId)> = g.edges().collect();
    for (a, b) in es {
        g.set_edge_weight(a, b, ExactInt::from(rng.gen_range(1..=max_weight)));
    }
}
