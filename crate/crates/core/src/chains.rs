//! Polyphenylene and spiro chains: construction as explicit graphs, the
//! O(n) exact subtree-number recursion, random sampling, and exhaustive
//! enumeration of mode sequences.
//!
//! A chain of `n` hexagons is determined by its family and the attachment
//! modes chosen at steps `3..=n`: the mode picked when hexagon `i` is
//! attached fixes where the link leaves hexagon `i-1`, at cycle distance
//! 1 (ortho), 2 (meta) or 3 (para) from that hexagon's incoming vertex.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedGraph};
use crate::ring::{ExactInt, ExactRational, Ring};

/// Where the outgoing link leaves a hexagon, relative to where the
/// incoming link entered.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum AttachmentMode {
    Ortho,
    Meta,
    Para,
}

impl AttachmentMode {
    pub const ALL: [AttachmentMode; 3] =
        [AttachmentMode::Ortho, AttachmentMode::Meta, AttachmentMode::Para];

    /// Cycle distance between the incoming vertex and the outgoing anchor.
    pub fn anchor_distance(self) -> usize {
        match self {
            AttachmentMode::Ortho => 1,
            AttachmentMode::Meta => 2,
            AttachmentMode::Para => 3,
        }
    }

    /// Subtrees of a unit hexagon containing two fixed vertices at this
    /// mode's distance: 16, 13 or 12. The multiplier of the anchored
    /// recursion for both families.
    pub fn pair_count(self) -> u32 {
        match self {
            AttachmentMode::Ortho => 16,
            AttachmentMode::Meta => 13,
            AttachmentMode::Para => 12,
        }
    }

    /// Subtrees of the open 5-vertex path (a hexagon minus its shared
    /// vertex) containing the new anchor: 5, 8 or 9. The additive term of
    /// the spiro anchored recursion; `tail_count + pair_count = 21`.
    pub fn tail_count(self) -> u32 {
        match self {
            AttachmentMode::Ortho => 5,
            AttachmentMode::Meta => 8,
            AttachmentMode::Para => 9,
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'O' | 'o' => Ok(AttachmentMode::Ortho),
            'M' | 'm' => Ok(AttachmentMode::Meta),
            'P' | 'p' => Ok(AttachmentMode::Para),
            other => Err(Error::InvalidModeChar(other)),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            AttachmentMode::Ortho => 'O',
            AttachmentMode::Meta => 'M',
            AttachmentMode::Para => 'P',
        }
    }
}

/// Hexagons joined by cut edges (polyphenylene) or shared cut vertices
/// (spiro).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum ChainFamily {
    Polyphenylene,
    Spiro,
}

impl ChainFamily {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "poly" | "polyphenylene" => Some(ChainFamily::Polyphenylene),
            "spiro" => Some(ChainFamily::Spiro),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ChainFamily::Polyphenylene => "poly",
            ChainFamily::Spiro => "spiro",
        }
    }
}

/// A concrete chain: family, hexagon count, and one attachment mode per
/// step `3..=n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainSpec {
    pub family: ChainFamily,
    pub n: usize,
    pub modes: Vec<AttachmentMode>,
}

impl ChainSpec {
    pub fn new(family: ChainFamily, n: usize, modes: Vec<AttachmentMode>) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidHexagonCount);
        }
        let expected = n.saturating_sub(2);
        if modes.len() != expected {
            return Err(Error::InvalidModes {
                n,
                expected,
                got: modes.len(),
            });
        }
        Ok(ChainSpec { family, n, modes })
    }

    /// Chain whose every attachment uses the same mode (the ortho-, meta-
    /// and para-chains).
    pub fn uniform(family: ChainFamily, n: usize, mode: AttachmentMode) -> Result<Self> {
        Self::new(family, n, vec![mode; n.saturating_sub(2)])
    }

    /// Parses a mode string like `"OMP"`, one character per step.
    pub fn from_mode_string(family: ChainFamily, n: usize, modes: &str) -> Result<Self> {
        let modes = modes
            .chars()
            .map(AttachmentMode::from_char)
            .collect::<Result<Vec<_>>>()?;
        Self::new(family, n, modes)
    }

    pub fn mode_string(&self) -> String {
        self.modes.iter().map(|m| m.to_char()).collect()
    }
}

/// Exact subtree-number total of a chain, plus the internal anchored
/// counts `A_1..A_{n-1}` (subtree counts rooted at the running attachment
/// vertex) used by the recursion.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainCount {
    pub total: ExactInt,
    pub anchors: Vec<ExactInt>,
}

/// Builds the chain as an explicit unit-weight graph.
///
/// Polyphenylene: hexagon `i` (0-based) occupies ids `6i..6i+5` with its
/// cycle in id order and its incoming vertex at local index 0; the cut
/// edge into hexagon `i+1` leaves at local index 1, 2 or 3 per the
/// governing mode (index 1 for the ungoverned first link). Spiro chains
/// merge each incoming vertex with the previous anchor, so hexagon `i >= 1`
/// adds the five ids `5i+1..5i+5`.
pub fn build_chain_graph<R: Ring>(spec: &ChainSpec) -> WeightedGraph<R> {
    let n = spec.n;
    // Outgoing anchor distance of hexagon h (0-based): the link h -> h+1 is
    // governed by the mode chosen when hexagon h+1 attaches.
    let out_distance = |h: usize| -> usize {
        if h == 0 {
            1
        } else {
            spec.modes[h - 1].anchor_distance()
        }
    };
    let mut g = WeightedGraph::new();
    match spec.family {
        ChainFamily::Polyphenylene => {
            for h in 0..n {
                let base = (6 * h) as u32;
                for j in 0..6 {
                    g.add_vertex(VertexId(base + j));
                }
                for j in 0..6 {
                    g.add_edge(VertexId(base + j), VertexId(base + (j + 1) % 6));
                }
                if h > 0 {
                    let prev_base = (6 * (h - 1)) as u32;
                    let anchor = prev_base + out_distance(h - 1) as u32;
                    g.add_edge(VertexId(anchor), VertexId(base));
                }
            }
        }
        ChainFamily::Spiro => {
            for j in 0..6 {
                g.add_vertex(VertexId(j));
            }
            for j in 0..6 {
                g.add_edge(VertexId(j), VertexId((j + 1) % 6));
            }
            let mut shared = VertexId(out_distance(0) as u32);
            for h in 1..n {
                let start = (6 + 5 * (h - 1)) as u32;
                for j in 0..5 {
                    g.add_vertex(VertexId(start + j));
                }
                g.add_edge(shared, VertexId(start));
                for j in 0..4 {
                    g.add_edge(VertexId(start + j), VertexId(start + j + 1));
                }
                g.add_edge(VertexId(start + 4), shared);
                if h + 1 < n {
                    // Distance d from the shared vertex along the new ring.
                    shared = VertexId(start + out_distance(h) as u32 - 1);
                }
            }
        }
    }
    g
}

/// Exact subtree number of a concrete chain by the O(n) anchored
/// recursion.
///
/// Polyphenylene: `A_1 = 21`, `A_{i-1} = 21 + k(m_i) A_{i-2}`,
/// `Total_i = Total_{i-1} + 21 A_{i-1} + 36` from `Total_1 = 36`.
/// Spiro: `B_1 = 21`, `B_{i-1} = a(m_i) + k(m_i) B_{i-2}`,
/// `Total_i = Total_{i-1} + 20 B_{i-1} + 15`, where `k` is the mode's
/// pair count and `a` its tail count.
pub fn chain_stn(spec: &ChainSpec) -> ChainCount {
    let n = spec.n;
    let mut total = ExactInt::from(36);
    let mut anchors: Vec<ExactInt> = Vec::with_capacity(n.saturating_sub(1));
    if n >= 2 {
        anchors.push(ExactInt::from(21));
    }
    for i in 2..=n {
        if i >= 3 {
            let mode = spec.modes[i - 3];
            let prev = &anchors[i - 3];
            let k = ExactInt::from(mode.pair_count());
            let offset = match spec.family {
                ChainFamily::Polyphenylene => ExactInt::from(21),
                ChainFamily::Spiro => ExactInt::from(mode.tail_count()),
            };
            anchors.push(offset + k * prev);
        }
        let anchor = &anchors[i - 2];
        total = match spec.family {
            ChainFamily::Polyphenylene => total + 21 * anchor + 36,
            ChainFamily::Spiro => total + 20 * anchor + 15,
        };
    }
    ChainCount { total, anchors }
}

/// Exact rational pair `(p1, p2)` steering the attachment process:
/// ortho with probability `p1`, meta with `p2`, para otherwise. Endpoints
/// are allowed (`p1, p2 >= 0`, `p1 + p2 <= 1`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProbabilityPair {
    p1: ExactRational,
    p2: ExactRational,
}

impl ProbabilityPair {
    pub fn new(p1: ExactRational, p2: ExactRational) -> Result<Self> {
        if p1 < ExactRational::zero() || p2 < ExactRational::zero() {
            return Err(Error::InvalidProbability(format!(
                "negative entry ({p1}, {p2})"
            )));
        }
        if p1.clone() + p2.clone() > ExactRational::from_integer(1.into()) {
            return Err(Error::InvalidProbability(format!("{p1} + {p2} > 1")));
        }
        Ok(ProbabilityPair { p1, p2 })
    }

    pub fn from_i64(p1: (i64, i64), p2: (i64, i64)) -> Result<Self> {
        Self::new(
            ExactRational::new(p1.0.into(), p1.1.into()),
            ExactRational::new(p2.0.into(), p2.1.into()),
        )
    }

    /// The uniform choice `(1/3, 1/3)` under which expectations become
    /// plain averages.
    pub fn uniform() -> Self {
        Self::from_i64((1, 3), (1, 3)).unwrap()
    }

    /// The point mass on one mode: `(1,0)`, `(0,1)` or `(0,0)`.
    pub fn degenerate(mode: AttachmentMode) -> Self {
        let (p1, p2) = match mode {
            AttachmentMode::Ortho => (1, 0),
            AttachmentMode::Meta => (0, 1),
            AttachmentMode::Para => (0, 0),
        };
        Self::from_i64((p1, 1), (p2, 1)).unwrap()
    }

    pub fn p1(&self) -> &ExactRational {
        &self.p1
    }

    pub fn p2(&self) -> &ExactRational {
        &self.p2
    }

    /// Probability of the third (para) outcome.
    pub fn p3(&self) -> ExactRational {
        ExactRational::from_integer(1.into()) - self.p1.clone() - self.p2.clone()
    }

    pub fn mode_probability(&self, mode: AttachmentMode) -> ExactRational {
        match mode {
            AttachmentMode::Ortho => self.p1.clone(),
            AttachmentMode::Meta => self.p2.clone(),
            AttachmentMode::Para => self.p3(),
        }
    }
}

/// Draws a random chain with i.i.d. mode choices.
///
/// The generator is ChaCha8 seeded from the 64-bit `seed` (via the rand
/// crate's SplitMix64-based `seed_from_u64` expansion), so the same inputs
/// produce the same spec on every platform. Probabilities are converted to
/// floating point only here, inside the sampler.
pub fn random_chain(
    family: ChainFamily,
    n: usize,
    p: &ProbabilityPair,
    seed: u64,
) -> Result<ChainSpec> {
    if n < 1 {
        return Err(Error::InvalidHexagonCount);
    }
    let p1 = rational_to_f64(&p.p1);
    let p12 = rational_to_f64(&(p.p1.clone() + p.p2.clone()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let modes = (0..n.saturating_sub(2))
        .map(|_| {
            let u: f64 = rng.gen();
            if u < p1 {
                AttachmentMode::Ortho
            } else if u < p12 {
                AttachmentMode::Meta
            } else {
                AttachmentMode::Para
            }
        })
        .collect();
    ChainSpec::new(family, n, modes)
}

fn rational_to_f64(r: &ExactRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Derives the seed of one Monte Carlo sample from the run seed: the
/// sample index is XORed in and the result scrambled with SplitMix64's
/// finalizer, giving decorrelated per-sample substreams.
pub fn sample_seed(seed: u64, sample_index: u64) -> u64 {
    splitmix64(seed ^ sample_index)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Default cap on enumerated mode sequences (3^10).
pub const DEFAULT_SPEC_CAP: u64 = 59_049;

/// Number of distinct chains with `n` hexagons: `3^(n-2)` for `n >= 2`.
/// `None` when the count does not fit in a `u64`.
pub fn spec_count(n: usize) -> Option<u64> {
    let steps = n.saturating_sub(2) as u32;
    3u64.checked_pow(steps)
}

/// The `index`-th mode sequence in lexicographic order (ortho < meta <
/// para), as base-3 digits, most significant first.
pub fn spec_from_index(family: ChainFamily, n: usize, index: u64) -> ChainSpec {
    let steps = n.saturating_sub(2);
    let mut modes = vec![AttachmentMode::Ortho; steps];
    let mut rest = index;
    for pos in (0..steps).rev() {
        modes[pos] = AttachmentMode::ALL[(rest % 3) as usize];
        rest /= 3;
    }
    debug_assert_eq!(rest, 0, "index out of range");
    ChainSpec { family, n, modes }
}

/// Streams every chain with `n` hexagons in lexicographic mode order.
pub fn enumerate_specs(
    family: ChainFamily,
    n: usize,
) -> Result<impl Iterator<Item = ChainSpec>> {
    enumerate_specs_capped(family, n, DEFAULT_SPEC_CAP)
}

pub fn enumerate_specs_capped(
    family: ChainFamily,
    n: usize,
    cap: u64,
) -> Result<impl Iterator<Item = ChainSpec>> {
    if n < 1 {
        return Err(Error::InvalidHexagonCount);
    }
    let count = match spec_count(n) {
        Some(c) if c <= cap => c,
        _ => {
            let shown = spec_count(n)
                .map(|c| c.to_string())
                .unwrap_or_else(|| format!("3^{}", n.saturating_sub(2)));
            return Err(Error::SpecCapExceeded(shown, cap));
        }
    };
    Ok((0..count).map(move |i| spec_from_index(family, n, i)))
}
