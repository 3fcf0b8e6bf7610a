//! Property tests: ring axioms, oracle-anchored equivalences on random
//! weighted trees and unicyclic graphs, contraction identities, and the
//! chain recursion rebuilt from engine queries alone.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stn_core::chains::{chain_stn, enumerate_specs, AttachmentMode, ChainFamily};
use stn_core::corpus::{random_weighted_tree, random_weighted_unicyclic};
use stn_core::engine::{
    evaluate, tree_gf, tree_gf_rooted, tree_gf_two_vertices, unicyclic_gf, unicyclic_gf_path,
    unicyclic_gf_rooted, unicyclic_gf_two_vertices, ContainmentConstraint,
};
use stn_core::graph::{vid, VertexId, WeightedGraph};
use stn_core::oracle::{brute_gf, count_subtrees, visit_subtrees};
use stn_core::ring::{ExactInt, ExactRational};

fn big(n: i64) -> ExactInt {
    ExactInt::from(n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_exact_int(a in -1000i64..1000, b in -1000i64..1000, c in -1000i64..1000) {
        let (a, b, c) = (big(a), big(b), big(c));
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(big(1) * a.clone(), a.clone());
        prop_assert_eq!(big(0) + a.clone(), a.clone());
        prop_assert_eq!(big(0) * a.clone(), big(0));
    }

    #[test]
    fn ring_axioms_exact_rational(
        (an, ad) in (-100i64..100, 1i64..50),
        (bn, bd) in (-100i64..100, 1i64..50),
        (cn, cd) in (-100i64..100, 1i64..50),
    ) {
        let r = |n: i64, d: i64| ExactRational::new(n.into(), d.into());
        let (a, b, c) = (r(an, ad), r(bn, bd), r(cn, cd));
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(r(1, 1) * a.clone(), a.clone());
    }

    #[test]
    fn tree_engine_matches_oracle(seed in any::<u64>(), size in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_weighted_tree(&mut rng, size, 5);
        prop_assert_eq!(tree_gf(&g).unwrap(), brute_gf(&g, &[], &[]).unwrap());
        let verts: Vec<VertexId> = g.vertices().collect();
        let v = verts[rng.gen_range(0..verts.len())];
        prop_assert_eq!(tree_gf_rooted(&g, v).unwrap(), brute_gf(&g, &[v], &[]).unwrap());
        if size >= 2 {
            let w = loop {
                let w = verts[rng.gen_range(0..verts.len())];
                if w != v { break w; }
            };
            prop_assert_eq!(
                tree_gf_two_vertices(&g, v, w).unwrap(),
                brute_gf(&g, &[v, w], &[]).unwrap()
            );
        }
    }

    #[test]
    fn unicyclic_engine_matches_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cycle_len = rng.gen_range(3..=7usize);
        let extra = rng.gen_range(0..=3usize);
        let g = random_weighted_unicyclic(&mut rng, cycle_len, extra, 4);
        prop_assert_eq!(unicyclic_gf(&g).unwrap(), brute_gf(&g, &[], &[]).unwrap());
        let verts: Vec<VertexId> = g.vertices().collect();
        let v = verts[rng.gen_range(0..verts.len())];
        prop_assert_eq!(
            unicyclic_gf_rooted(&g, v).unwrap(),
            brute_gf(&g, &[v], &[]).unwrap()
        );
        let w = loop {
            let w = verts[rng.gen_range(0..verts.len())];
            if w != v { break w; }
        };
        prop_assert_eq!(
            unicyclic_gf_two_vertices(&g, v, w).unwrap(),
            brute_gf(&g, &[v, w], &[]).unwrap()
        );
    }

    /// Leaf contraction preserves rooted generating functions, measured by
    /// the oracle on both sides (no engine involved).
    #[test]
    fn contract_leaf_preserves_rooted_gf(seed in any::<u64>(), size in 2usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_weighted_tree(&mut rng, size, 5);
        let leaf = g.vertices().find(|&v| g.degree(v) == 1).unwrap();
        let contracted = g.contract_leaf(leaf).unwrap();
        for v in g.vertices() {
            if v == leaf {
                continue;
            }
            prop_assert_eq!(
                brute_gf(&g, &[v], &[]).unwrap(),
                brute_gf(&contracted, &[v], &[]).unwrap()
            );
        }
        // Unrooted: contraction folds every subtree except the bare leaf
        // into the smaller tree, so the totals differ by exactly f(u).
        prop_assert_eq!(
            brute_gf(&g, &[], &[]).unwrap(),
            brute_gf(&contracted, &[], &[]).unwrap() + g.vertex_weight(leaf).clone()
        );
    }

    /// The merged weight of a contracted path equals the oracle weight of
    /// the unique subtree that is exactly that path.
    #[test]
    fn contract_path_weight_is_path_subtree_weight(seed in any::<u64>(), size in 2usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_weighted_tree(&mut rng, size, 5);
        // Random path: walk from a random vertex without revisiting.
        let verts: Vec<VertexId> = g.vertices().collect();
        let mut path = vec![verts[rng.gen_range(0..verts.len())]];
        loop {
            let cur = *path.last().unwrap();
            let next: Vec<VertexId> = g
                .neighbors(cur)
                .iter()
                .copied()
                .filter(|n| !path.contains(n))
                .collect();
            if next.is_empty() || rng.gen_bool(0.3) {
                break;
            }
            path.push(next[rng.gen_range(0..next.len())]);
        }
        let merged = g.contract_path(&path).unwrap();
        let mut found = None;
        let path_edges: Vec<(VertexId, VertexId)> =
            path.windows(2).map(|w| stn_core::graph::edge_key(w[0], w[1])).collect();
        visit_subtrees(&g, |st| {
            let mut sv = path.clone();
            sv.sort_unstable();
            let mut se = path_edges.clone();
            se.sort_unstable();
            if st.vertices == sv && st.edges == se {
                let mut w = big(1);
                for &v in &st.vertices {
                    w *= g.vertex_weight(v);
                }
                for &(a, b) in &st.edges {
                    w *= g.edge_weight(a, b);
                }
                found = Some(w);
            }
        })
        .unwrap();
        prop_assert_eq!(merged.vertex_weight(path[0]), &found.expect("path is a subtree"));
    }

    #[test]
    fn oracle_count_is_relabeling_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (cl, ex) = (rng.gen_range(3..=6), rng.gen_range(0..=3));
        let g = random_weighted_unicyclic(&mut rng, cl, ex, 1);
        let n = g.vertex_count();
        let mut perm: Vec<u32> = (0..n as u32).map(|i| i * 7 + rng.gen_range(0..3) * 100 + 1).collect();
        perm.dedup();
        prop_assume!(perm.len() == n);
        let mut relabeled: WeightedGraph<ExactInt> = WeightedGraph::new();
        for &p in &perm {
            relabeled.add_vertex(vid(p));
        }
        for (a, b) in g.edges() {
            relabeled.add_edge(vid(perm[a.0 as usize]), vid(perm[b.0 as usize]));
        }
        prop_assert_eq!(count_subtrees(&g).unwrap(), count_subtrees(&relabeled).unwrap());
    }

    #[test]
    fn constraints_are_monotone(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (cl, ex) = (rng.gen_range(3..=6), rng.gen_range(0..=3));
        let g = random_weighted_unicyclic(&mut rng, cl, ex, 1);
        let verts: Vec<VertexId> = g.vertices().collect();
        let v = verts[rng.gen_range(0..verts.len())];
        let w = loop {
            let w = verts[rng.gen_range(0..verts.len())];
            if w != v { break w; }
        };
        let free = evaluate(&g, &ContainmentConstraint::None).unwrap();
        let rooted = evaluate(&g, &ContainmentConstraint::Vertex(v)).unwrap();
        let pair = evaluate(&g, &ContainmentConstraint::VertexPair(v, w)).unwrap();
        prop_assert!(rooted <= free);
        prop_assert!(pair <= rooted);
    }

    /// With all weights one, every generating function is a plain count.
    #[test]
    fn unit_weights_specialize_to_counting(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (cl, ex) = (rng.gen_range(3..=6), rng.gen_range(0..=3));
        let g = random_weighted_unicyclic(&mut rng, cl, ex, 1);
        let gf = unicyclic_gf(&g).unwrap();
        prop_assert_eq!(gf, big(count_subtrees(&g).unwrap() as i64));
    }
}

/// The chain recursion, rebuilt with every constant looked up from the
/// engine on a unit hexagon instead of hard-coded, agrees with the fast
/// path on every spec with up to six hexagons.
#[test]
fn chain_recursion_matches_engine_composition() {
    let c6: WeightedGraph<ExactInt> = WeightedGraph::unit_cycle(6);
    let hexagon_total = unicyclic_gf(&c6).unwrap();
    let hexagon_rooted = unicyclic_gf_rooted(&c6, vid(0)).unwrap();
    let pair_at = |d: u32| unicyclic_gf_two_vertices(&c6, vid(0), vid(d)).unwrap();

    // Spiro constants: subtrees of the hexagon through the shared vertex
    // split by which incident cycle edges they use, and the open 5-path
    // rooted at the new anchor.
    let both_edges = unicyclic_gf_path(&c6, &[vid(1), vid(0), vid(5)]).unwrap();
    let one_edge = unicyclic_gf_path(&c6, &[vid(0), vid(1)]).unwrap() - both_edges.clone();
    let through_shared = one_edge.clone() + one_edge.clone() + both_edges;
    let avoiding_shared = hexagon_total.clone() - hexagon_rooted.clone();
    let p5: WeightedGraph<ExactInt> = WeightedGraph::unit_path(5);
    let tail_at = |d: u32| tree_gf_rooted(&p5, vid(d - 1)).unwrap();

    for family in [ChainFamily::Polyphenylene, ChainFamily::Spiro] {
        for n in 1..=6 {
            for spec in enumerate_specs(family, n).unwrap() {
                let mut total = hexagon_total.clone();
                let mut anchor = hexagon_rooted.clone();
                for i in 2..=n {
                    if i >= 3 {
                        let d = spec.modes[i - 3].anchor_distance() as u32;
                        anchor = match family {
                            ChainFamily::Polyphenylene => {
                                hexagon_rooted.clone() + pair_at(d) * anchor
                            }
                            ChainFamily::Spiro => tail_at(d) + pair_at(d) * anchor,
                        };
                    }
                    total = match family {
                        ChainFamily::Polyphenylene => {
                            total + hexagon_rooted.clone() * anchor.clone() + hexagon_total.clone()
                        }
                        ChainFamily::Spiro => {
                            total + through_shared.clone() * anchor.clone() + avoiding_shared.clone()
                        }
                    };
                }
                assert_eq!(
                    total,
                    chain_stn(&spec).total,
                    "{family:?} n={n} modes={}",
                    spec.mode_string()
                );
            }
        }
    }
}

/// The engine-derived constants are the familiar ones.
#[test]
fn engine_constants_are_the_expected_numbers() {
    let c6: WeightedGraph<ExactInt> = WeightedGraph::unit_cycle(6);
    assert_eq!(unicyclic_gf(&c6).unwrap(), big(36));
    assert_eq!(unicyclic_gf_rooted(&c6, vid(3)).unwrap(), big(21));
    let p5: WeightedGraph<ExactInt> = WeightedGraph::unit_path(5);
    for mode in AttachmentMode::ALL {
        let d = mode.anchor_distance() as u32;
        assert_eq!(
            unicyclic_gf_two_vertices(&c6, vid(0), vid(d)).unwrap(),
            big(mode.pair_count() as i64)
        );
        assert_eq!(
            tree_gf_rooted(&p5, vid(d - 1)).unwrap(),
            big(mode.tail_count() as i64)
        );
    }
}

/// Rooted cycle counts decompose as 1 + the nonempty arcs through the
/// vertex: m(m+1)/2 on a unit cycle, cross-checked with the oracle.
#[test]
fn rooted_cycle_decomposition_identity() {
    for m in 3..=10usize {
        let g: WeightedGraph<ExactInt> = WeightedGraph::unit_cycle(m);
        let rooted = unicyclic_gf_rooted(&g, vid(0)).unwrap();
        assert_eq!(rooted, big((m * (m + 1) / 2) as i64));
        assert_eq!(rooted, brute_gf(&g, &[vid(0)], &[]).unwrap());
    }
}
