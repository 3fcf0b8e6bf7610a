//! Acceptance suite: one test per shipped guarantee, each printing a
//! PASS/FAIL line (visible with `--nocapture`). Everything here is exact
//! unless a tolerance is stated inline.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::time::Instant;

use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stn_core::chains::{
    build_chain_graph, chain_stn, enumerate_specs, spec_count, AttachmentMode, ChainFamily,
    ChainSpec, ProbabilityPair,
};
use stn_core::corpus::random_weighted_unicyclic;
use stn_core::engine::{
    unicyclic_gf, unicyclic_gf_path, unicyclic_gf_rooted,
    unicyclic_gf_two_vertices,
};
use stn_core::expect::{
    anchor_recursion_step, average_stn, exhaustive_expectation, expected_anchor, expected_stn,
    monte_carlo_estimate, relation_residual, special_chain_stn,
};
use stn_core::graph::{vid, VertexId, WeightedGraph};
use stn_core::oracle::{brute_gf, visit_subtrees};
use stn_core::ring::{int, rational, ExactInt, ExactRational};

fn criterion(id: &str, body: impl FnOnce() + UnwindSafe) {
    match catch_unwind(body) {
        Ok(()) => println!("{id}: PASS"),
        Err(e) => {
            println!("{id}: FAIL");
            resume_unwind(e);
        }
    }
}

/// Probability grid {0, 1/4, 1/3, 1/2, 1}^2 restricted to p1 + p2 <= 1.
fn probability_grid() -> Vec<ProbabilityPair> {
    let vals: [(i64, i64); 5] = [(0, 1), (1, 4), (1, 3), (1, 2), (1, 1)];
    let mut out = Vec::new();
    for &a in &vals {
        for &b in &vals {
            if let Ok(p) = ProbabilityPair::from_i64(a, b) {
                out.push(p);
            }
        }
    }
    assert_eq!(out.len(), 18);
    out
}

fn families() -> [ChainFamily; 2] {
    [ChainFamily::Polyphenylene, ChainFamily::Spiro]
}

#[test]
fn criterion_01_hexagon_constants() {
    criterion("criterion 01 — hexagon constants", || {
        let c6: WeightedGraph<ExactInt> = WeightedGraph::unit_cycle(6);
        assert_eq!(unicyclic_gf(&c6).unwrap(), int(36));
        assert_eq!(brute_gf(&c6, &[], &[]).unwrap(), int(36));
        for v in 0..6 {
            assert_eq!(unicyclic_gf_rooted(&c6, vid(v)).unwrap(), int(21));
            assert_eq!(brute_gf(&c6, &[vid(v)], &[]).unwrap(), int(21));
        }
        for (dist, expect) in [(1u32, 16i64), (2, 13), (3, 12)] {
            let engine = unicyclic_gf_two_vertices(&c6, vid(0), vid(dist)).unwrap();
            let oracle = brute_gf(&c6, &[vid(0), vid(dist)], &[]).unwrap();
            assert_eq!(engine, int(expect), "pair at distance {dist}");
            assert_eq!(engine, oracle);
        }
    });
}

/// All simple paths between two vertices, by exhaustive DFS (test-local,
/// independent of engine internals).
fn all_simple_paths(
    g: &WeightedGraph<ExactInt>,
    from: VertexId,
    to: VertexId,
) -> Vec<Vec<VertexId>> {
    fn dfs(
        g: &WeightedGraph<ExactInt>,
        to: VertexId,
        stack: &mut Vec<VertexId>,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        let cur = *stack.last().unwrap();
        if cur == to {
            out.push(stack.clone());
            return;
        }
        for &w in g.neighbors(cur) {
            if !stack.contains(&w) {
                stack.push(w);
                dfs(g, to, stack, out);
                stack.pop();
            }
        }
    }
    let mut out = Vec::new();
    dfs(g, to, &mut vec![from], &mut out);
    out
}

#[test]
fn criterion_02_engine_equals_oracle_on_random_corpus() {
    criterion("criterion 02 — engine ≡ oracle on randomized C3..C8 corpus", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
        let instances = 210;
        for round in 0..instances {
            let cycle_len = rng.gen_range(3..=8usize);
            let extra = rng.gen_range(0..=4usize);
            let g = random_weighted_unicyclic(&mut rng, cycle_len, extra, 5);
            let verts: Vec<VertexId> = g.vertices().collect();

            // One oracle sweep computes the total and every rooted sum.
            let mut total = ExactInt::zero();
            let mut rooted: BTreeMap<VertexId, ExactInt> =
                verts.iter().map(|&v| (v, ExactInt::zero())).collect();
            visit_subtrees(&g, |st| {
                let mut w = ExactInt::from(1);
                for &v in &st.vertices {
                    w *= g.vertex_weight(v);
                }
                for &(a, b) in &st.edges {
                    w *= g.edge_weight(a, b);
                }
                total += &w;
                for &v in &st.vertices {
                    *rooted.get_mut(&v).unwrap() += &w;
                }
            })
            .unwrap();

            assert_eq!(unicyclic_gf(&g).unwrap(), total, "total, round {round}");
            for &v in &verts {
                assert_eq!(
                    unicyclic_gf_rooted(&g, v).unwrap(),
                    rooted[&v],
                    "rooted at {v}, round {round}"
                );
            }

            // A random vertex pair: the pair count and every connecting
            // path's count against constrained oracle queries.
            let a = verts[rng.gen_range(0..verts.len())];
            let b = loop {
                let b = verts[rng.gen_range(0..verts.len())];
                if b != a {
                    break b;
                }
            };
            let pair = unicyclic_gf_two_vertices(&g, a, b).unwrap();
            assert_eq!(pair, brute_gf(&g, &[a, b], &[]).unwrap(), "pair, round {round}");
            let mut path_sum = ExactInt::zero();
            for path in all_simple_paths(&g, a, b) {
                let edges: Vec<_> = path.windows(2).map(|w| (w[0], w[1])).collect();
                let engine = unicyclic_gf_path(&g, &path).unwrap();
                assert_eq!(
                    engine,
                    brute_gf(&g, &path, &edges).unwrap(),
                    "path {path:?}, round {round}"
                );
                path_sum += engine;
            }
            assert_eq!(path_sum, pair, "paths partition the pair count");

            // A random arc along the cycle.
            let cycle = g.find_cycle().unwrap();
            let m = cycle.len();
            let start = rng.gen_range(0..m);
            let len = rng.gen_range(1..m);
            let arc: Vec<VertexId> = (0..=len).map(|k| cycle[(start + k) % m]).collect();
            let edges: Vec<_> = arc.windows(2).map(|w| (w[0], w[1])).collect();
            assert_eq!(
                unicyclic_gf_path(&g, &arc).unwrap(),
                brute_gf(&g, &arc, &edges).unwrap(),
                "arc, round {round}"
            );
        }
    });
}

#[test]
fn criterion_03_chain_recursion_equals_oracle() {
    criterion("criterion 03 — chain recursion ≡ oracle for n <= 3", || {
        let mut poly_totals = Vec::new();
        let mut spiro_totals = Vec::new();
        for family in families() {
            for n in 1..=3 {
                for spec in enumerate_specs(family, n).unwrap() {
                    let fast = chain_stn(&spec).total;
                    let g: WeightedGraph<ExactInt> = build_chain_graph(&spec);
                    let brute = brute_gf(&g, &[], &[]).unwrap();
                    assert_eq!(fast, brute, "{family:?} n={n} modes={}", spec.mode_string());
                    match family {
                        ChainFamily::Polyphenylene => poly_totals.push(fast),
                        ChainFamily::Spiro => spiro_totals.push(fast),
                    }
                }
            }
        }
        let expect_poly: Vec<ExactInt> =
            [36, 513, 8046, 6723, 6282].iter().map(|&v| int(v)).collect();
        let expect_spiro: Vec<ExactInt> =
            [36, 471, 7306, 6106, 5706].iter().map(|&v| int(v)).collect();
        assert_eq!(poly_totals, expect_poly);
        assert_eq!(spiro_totals, expect_spiro);
    });
}

#[test]
fn criterion_04_corollary_formulas() {
    criterion("criterion 04 — uniform-chain corollaries for n <= 25", || {
        for family in families() {
            for kind in AttachmentMode::ALL {
                for n in 1..=25 {
                    let formula = special_chain_stn(kind, family, n).unwrap();
                    let spec = ChainSpec::uniform(family, n, kind).unwrap();
                    assert_eq!(
                        formula,
                        chain_stn(&spec).total,
                        "{family:?} {kind:?} n={n}"
                    );
                }
            }
        }
    });
}

#[test]
fn criterion_05_expectation_equals_exhaustive() {
    criterion("criterion 05 — closed form ≡ exhaustive expectation for n <= 8", || {
        for family in families() {
            for p in probability_grid() {
                for n in 1..=8 {
                    let closed = expected_stn(family, n, &p).unwrap().value;
                    let exhaustive = exhaustive_expectation(family, n, &p).unwrap();
                    assert_eq!(closed, exhaustive, "{family:?} n={n} p={p:?}");
                }
            }
        }
    });
}

#[test]
fn criterion_06_relation() {
    criterion("criterion 06 — 400 E_poly = 441 E_spiro - 1035 n - 441", || {
        for p in probability_grid() {
            for n in 1..=50 {
                assert!(
                    relation_residual(n, &p).unwrap().is_zero(),
                    "n={n} p={p:?}"
                );
            }
        }
        // Spot value: both sides equal 14400 at n = 1.
        let p = ProbabilityPair::uniform();
        let poly = expected_stn(ChainFamily::Polyphenylene, 1, &p).unwrap().value;
        let spiro = expected_stn(ChainFamily::Spiro, 1, &p).unwrap().value;
        assert_eq!(rational(400, 1) * poly, rational(14400, 1));
        assert_eq!(
            rational(441, 1) * spiro - rational(1035, 1) - rational(441, 1),
            rational(14400, 1)
        );
    });
}

#[test]
fn criterion_07_averages() {
    criterion("criterion 07 — averages equal uniform expectations and means", || {
        let uniform = ProbabilityPair::uniform();
        for family in families() {
            for n in 1..=50 {
                assert_eq!(
                    average_stn(family, n).unwrap(),
                    expected_stn(family, n, &uniform).unwrap().value,
                    "{family:?} n={n}"
                );
            }
            for n in 1..=8 {
                assert_eq!(
                    average_stn(family, n).unwrap(),
                    exhaustive_expectation(family, n, &uniform).unwrap(),
                    "{family:?} n={n} vs uniform mean"
                );
            }
        }
        assert_eq!(
            average_stn(ChainFamily::Polyphenylene, 3).unwrap(),
            rational(7017, 1)
        );
        assert_eq!(
            average_stn(ChainFamily::Spiro, 3).unwrap(),
            rational(19118, 3)
        );
        // The stated means really are the uniform enumeration means.
        let mean = |family| {
            let total: ExactInt = enumerate_specs(family, 3)
                .unwrap()
                .map(|s| chain_stn(&s).total)
                .sum();
            ExactRational::new(total, spec_count(3).unwrap().into())
        };
        assert_eq!(mean(ChainFamily::Polyphenylene), rational(7017, 1));
        assert_eq!(mean(ChainFamily::Spiro), rational(19118, 3));
    });
}

#[test]
fn criterion_08_anchored_recursions() {
    criterion("criterion 08 — anchored closed forms ≡ unrolled recursions", || {
        for family in families() {
            for p in probability_grid() {
                let mut unrolled = rational(21, 1);
                assert_eq!(expected_anchor(family, 1, &p).unwrap(), unrolled);
                for n in 2..=50 {
                    unrolled = anchor_recursion_step(family, &p, &unrolled);
                    assert_eq!(
                        expected_anchor(family, n, &p).unwrap(),
                        unrolled,
                        "{family:?} n={n} p={p:?}"
                    );
                }
            }
        }
    });
}

#[test]
fn criterion_09_monte_carlo() {
    criterion("criterion 09 — Monte Carlo within 4 standard errors, reproducible", || {
        let p = ProbabilityPair::uniform();
        for family in families() {
            let run = monte_carlo_estimate(family, 10, &p, 10_000, 20260811).unwrap();
            let closed = expected_stn(family, 10, &p).unwrap().value.to_f64().unwrap();
            let dev = (run.mean - closed).abs();
            assert!(
                dev <= 4.0 * run.std_error,
                "{family:?}: |{} - {closed}| > 4 * {}",
                run.mean,
                run.std_error
            );
            let rerun = monte_carlo_estimate(family, 10, &p, 10_000, 20260811).unwrap();
            assert_eq!(run, rerun, "same seed must be bit-identical");
        }
        let ortho = ProbabilityPair::degenerate(AttachmentMode::Ortho);
        let run = monte_carlo_estimate(ChainFamily::Polyphenylene, 10, &ortho, 100, 7).unwrap();
        assert_eq!(run.std_error, 0.0);
        let exact = special_chain_stn(AttachmentMode::Ortho, ChainFamily::Polyphenylene, 10)
            .unwrap()
            .to_f64()
            .unwrap();
        assert_eq!(run.mean, exact);
    });
}

#[test]
fn criterion_10_order_and_asymptotics() {
    criterion("criterion 10 — E_spiro below E_poly, ratio tends to 400/441", || {
        for p in probability_grid() {
            // A single hexagon is the same graph in both families, so the
            // expectations coincide at n = 1; the order is strict beyond.
            let poly1 = expected_stn(ChainFamily::Polyphenylene, 1, &p).unwrap().value;
            let spiro1 = expected_stn(ChainFamily::Spiro, 1, &p).unwrap().value;
            assert_eq!(poly1, spiro1);
            for n in 2..=50 {
                let poly = expected_stn(ChainFamily::Polyphenylene, n, &p).unwrap().value;
                let spiro = expected_stn(ChainFamily::Spiro, n, &p).unwrap().value;
                assert!(spiro < poly, "n={n} p={p:?}");
            }
            let poly = expected_stn(ChainFamily::Polyphenylene, 60, &p).unwrap().value;
            let spiro = expected_stn(ChainFamily::Spiro, 60, &p).unwrap().value;
            let deviation = (spiro / poly - rational(400, 441)).abs();
            assert!(deviation < rational(1, 1_000_000), "p={p:?}");
        }
    });
}

#[test]
fn criterion_11_scale() {
    criterion("criterion 11 — exact counting at n = 300 in under 5 seconds", || {
        let start = Instant::now();
        let spec = ChainSpec::uniform(ChainFamily::Polyphenylene, 300, AttachmentMode::Ortho).unwrap();
        let fast = chain_stn(&spec).total;
        assert_eq!(fast, special_chain_stn(AttachmentMode::Ortho, ChainFamily::Polyphenylene, 300).unwrap());

        let mixed = ChainSpec::from_mode_string(
            ChainFamily::Spiro,
            300,
            &"OMP".repeat(100)[..298],
        )
        .unwrap();
        let total = chain_stn(&mixed).total;
        // 13.67^300 has over 300 decimal digits.
        assert!(total.to_string().len() > 300);

        let p = ProbabilityPair::uniform();
        for family in families() {
            let e = expected_stn(family, 300, &p).unwrap().value;
            assert!(e > ExactRational::zero());
            assert!(e.to_integer().to_string().len() > 300);
        }
        assert!(relation_residual(300, &p).unwrap().is_zero());
        let elapsed = start.elapsed();
        assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    });
}
