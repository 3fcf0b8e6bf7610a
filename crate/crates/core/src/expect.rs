//! Closed-form expected and average subtree numbers of random chains, the
//! polyphenylene/spiro relation, and two independent verifiers: exact
//! exhaustive expectation and a Monte Carlo estimator.
//!
//! Every closed form is evaluated in exact rational arithmetic with
//! rational probabilities; floating point appears only in Monte Carlo
//! outputs, after all accumulation has happened exactly. With the
//! `parallel` feature the verifiers fan out over rayon; because they
//! reduce with exact commutative addition the result is identical for any
//! thread count, and `*_serial` variants of both stay available as the
//! sequential reference.

use num_traits::{One, Signed, ToPrimitive, Zero};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::chains::{
    chain_stn, random_chain, spec_count, spec_from_index, AttachmentMode, ChainFamily, ChainSpec,
    ProbabilityPair, DEFAULT_SPEC_CAP,
};
use crate::error::{Error, Result};
use crate::ring::{ExactInt, ExactRational};

/// Exact expected subtree number of a random chain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExpectationResult {
    pub value: ExactRational,
    pub n: usize,
    pub family: ChainFamily,
    pub p: ProbabilityPair,
}

/// Sample mean and standard error of a Monte Carlo run. Reproducible for
/// fixed inputs and seed.
#[derive(Clone, PartialEq, Debug)]
pub struct MonteCarloResult {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

fn rat(n: i64) -> ExactRational {
    ExactRational::from_integer(n.into())
}

fn rat_pow(base: &ExactRational, exp: usize) -> ExactRational {
    num_traits::pow(base.clone(), exp)
}

/// `s = 4 p1 + p2`, the weighted-mode parameter every closed form is
/// written in; `base = 12 + s` governs the growth, `denom = 11 + s` the
/// coefficients.
fn s_base_denom(p: &ProbabilityPair) -> (ExactRational, ExactRational, ExactRational) {
    let s = rat(4) * p.p1().clone() + p.p2().clone();
    (s.clone(), rat(12) + s.clone(), rat(11) + s)
}

/// Closed-form expected subtree number of a random polyphenylene or spiro
/// chain with `n` hexagons.
pub fn expected_stn(family: ChainFamily, n: usize, p: &ProbabilityPair) -> Result<ExpectationResult> {
    if n < 1 {
        return Err(Error::InvalidHexagonCount);
    }
    let (_, base, denom) = s_base_denom(p);
    let denom_sq = denom.clone() * denom.clone();
    let value = match family {
        ChainFamily::Polyphenylene => {
            let lead = rat(441) / denom_sq;
            let linear = (rat(144) * p.p1().clone() + rat(36) * p.p2().clone() - rat(45)) / denom;
            lead.clone() * rat_pow(&base, n) + linear * rat(n as i64) - lead
        }
        ChainFamily::Spiro => {
            let lead = rat(400) / denom_sq;
            let linear = (rat(140) * p.p1().clone() + rat(35) * p.p2().clone() - rat(15)) / denom;
            lead.clone() * rat_pow(&base, n) + linear * rat(n as i64) - lead + rat(1)
        }
    };
    Ok(ExpectationResult {
        value,
        n,
        family,
        p: p.clone(),
    })
}

/// Closed-form expected anchored count: the expected number of subtrees
/// containing the vertex where the next hexagon would attach. Both
/// families start from 21 (the rooted hexagon count) and grow by
/// `x -> base * x + const`.
pub fn expected_anchor(family: ChainFamily, n: usize, p: &ProbabilityPair) -> Result<ExactRational> {
    if n < 1 {
        return Err(Error::InvalidHexagonCount);
    }
    let (_, base, denom) = s_base_denom(p);
    let powed = rat_pow(&base, n);
    Ok(match family {
        ChainFamily::Polyphenylene => rat(21) / denom.clone() * powed - rat(21) / denom,
        ChainFamily::Spiro => rat(20) / denom.clone() * powed + rat(1) - rat(20) / denom,
    })
}

/// One step of the anchored recursion, used to unroll and cross-check the
/// closed form: `T -> base T + 21` (polyphenylene) or
/// `C -> base C + 9 - s` (spiro).
pub fn anchor_recursion_step(
    family: ChainFamily,
    p: &ProbabilityPair,
    prev: &ExactRational,
) -> ExactRational {
    let (s, base, _) = s_base_denom(p);
    match family {
        ChainFamily::Polyphenylene => base * prev.clone() + rat(21),
        ChainFamily::Spiro => base * prev.clone() + rat(9) - s,
    }
}

/// Exact subtree number of the uniform-mode (ortho/meta/para) chains from
/// the closed formulas. The intermediate rationals must cancel; a
/// non-integral result is an internal error and can never fire.
pub fn special_chain_stn(kind: AttachmentMode, family: ChainFamily, n: usize) -> Result<ExactInt> {
    if n < 1 {
        return Err(Error::InvalidHexagonCount);
    }
    let pw = |b: i64, e: usize| rat_pow(&rat(b), e);
    let nr = rat(n as i64);
    let value = match (family, kind) {
        (ChainFamily::Polyphenylene, AttachmentMode::Ortho) => {
            rat(49) * (pw(16, n) - rat(1)) / rat(25) + rat(33) * nr / rat(5)
        }
        (ChainFamily::Polyphenylene, AttachmentMode::Meta) => {
            rat(49) * (pw(13, n) - rat(1)) / rat(16) - rat(3) * nr / rat(4)
        }
        (ChainFamily::Polyphenylene, AttachmentMode::Para) => {
            rat(441) * (pw(12, n) - rat(1)) / rat(121) - rat(45) * nr / rat(11)
        }
        (ChainFamily::Spiro, AttachmentMode::Ortho) => {
            rat(256) * (pw(16, n - 1) - rat(1)) / rat(9) + rat(25) * (nr - rat(1)) / rat(3) + rat(36)
        }
        (ChainFamily::Spiro, AttachmentMode::Meta) => {
            rat(325) * (pw(13, n - 1) - rat(1)) / rat(9) + rat(5) * (nr - rat(1)) / rat(3) + rat(36)
        }
        (ChainFamily::Spiro, AttachmentMode::Para) => {
            rat(4800) * (pw(12, n - 1) - rat(1)) / rat(121) - rat(15) * (nr - rat(1)) / rat(11)
                + rat(36)
        }
    };
    if !value.is_integer() {
        return Err(Error::Internal(format!(
            "special chain formula produced non-integer {value}"
        )));
    }
    Ok(value.to_integer())
}

/// Residual of the polyphenylene/spiro relation
/// `400 E_poly = 441 E_spiro - 1035 n - 441`; exactly zero for every valid
/// input.
pub fn relation_residual(n: usize, p: &ProbabilityPair) -> Result<ExactRational> {
    let poly = expected_stn(ChainFamily::Polyphenylene, n, p)?.value;
    let spiro = expected_stn(ChainFamily::Spiro, n, p)?.value;
    Ok(rat(441) * spiro - rat(1035) * rat(n as i64) - rat(441) - rat(400) * poly)
}

/// Average subtree number over all `3^(n-2)` chains with `n` hexagons;
/// equals the expectation at the uniform probability pair.
pub fn average_stn(family: ChainFamily, n: usize) -> Result<ExactRational> {
    if n < 1 {
        return Err(Error::InvalidHexagonCount);
    }
    let growth = ExactRational::new(41.into(), 3.into());
    let powed = rat_pow(&growth, n);
    let nr = rat(n as i64);
    Ok(match family {
        ChainFamily::Polyphenylene => {
            let lead = ExactRational::new(3969.into(), 1444.into());
            lead.clone() * powed + rat(45) / rat(38) * nr - lead
        }
        ChainFamily::Spiro => {
            ExactRational::new(900.into(), 361.into()) * powed + rat(130) / rat(38) * nr
                - ExactRational::new(539.into(), 361.into())
        }
    })
}

fn spec_probability(spec: &ChainSpec, p: &ProbabilityPair) -> ExactRational {
    let mut prob = ExactRational::one();
    for &m in &spec.modes {
        prob *= p.mode_probability(m);
    }
    prob
}

/// Independent oracle for the closed forms: sums
/// `P(spec) * chain_stn(spec)` over every mode sequence, in exact rational
/// arithmetic.
pub fn exhaustive_expectation(
    family: ChainFamily,
    n: usize,
    p: &ProbabilityPair,
) -> Result<ExactRational> {
    #[cfg(feature = "parallel")]
    {
        if n < 1 {
            return Err(Error::InvalidHexagonCount);
        }
        let count = match spec_count(n) {
            Some(c) if c <= DEFAULT_SPEC_CAP => c,
            _ => {
                return Err(Error::SpecCapExceeded(
                    spec_count(n)
                        .map(|c| c.to_string())
                        .unwrap_or_else(|| format!("3^{}", n.saturating_sub(2))),
                    DEFAULT_SPEC_CAP,
                ))
            }
        };
        Ok((0..count)
            .into_par_iter()
            .map(|i| {
                let spec = spec_from_index(family, n, i);
                let total = chain_stn(&spec).total;
                spec_probability(&spec, p) * ExactRational::from_integer(total)
            })
            .reduce(ExactRational::zero, |a, b| a + b))
    }
    #[cfg(not(feature = "parallel"))]
    {
        exhaustive_expectation_serial(family, n, p)
    }
}

/// Sequential reference implementation of [`exhaustive_expectation`].
pub fn exhaustive_expectation_serial(
    family: ChainFamily,
    n: usize,
    p: &ProbabilityPair,
) -> Result<ExactRational> {
    let mut sum = ExactRational::zero();
    for spec in crate::chains::enumerate_specs(family, n)? {
        let total = chain_stn(&spec).total;
        sum += spec_probability(&spec, p) * ExactRational::from_integer(total);
    }
    Ok(sum)
}

/// Statistical verifier: draws chains via per-sample derived seeds,
/// counts each one exactly, and reduces exact integer sums before the
/// single final float conversion. Standard error uses the unbiased sample
/// variance over `samples - 1`.
pub fn monte_carlo_estimate(
    family: ChainFamily,
    n: usize,
    p: &ProbabilityPair,
    samples: u64,
    seed: u64,
) -> Result<MonteCarloResult> {
    #[cfg(feature = "parallel")]
    {
        check_mc_inputs(n, samples)?;
        let (sum, sum_sq) = (0..samples)
            .into_par_iter()
            .map(|i| {
                let x = sample_value(family, n, p, seed, i);
                let sq = x.clone() * x.clone();
                (x, sq)
            })
            .reduce(
                || (ExactInt::zero(), ExactInt::zero()),
                |(s1, q1), (s2, q2)| (s1 + s2, q1 + q2),
            );
        Ok(summarize(sum, sum_sq, samples, seed))
    }
    #[cfg(not(feature = "parallel"))]
    {
        monte_carlo_estimate_serial(family, n, p, samples, seed)
    }
}

/// Sequential reference implementation of [`monte_carlo_estimate`];
/// bit-identical to the parallel path for the same inputs.
pub fn monte_carlo_estimate_serial(
    family: ChainFamily,
    n: usize,
    p: &ProbabilityPair,
    samples: u64,
    seed: u64,
) -> Result<MonteCarloResult> {
    check_mc_inputs(n, samples)?;
    let mut sum = ExactInt::zero();
    let mut sum_sq = ExactInt::zero();
    for i in 0..samples {
        let x = sample_value(family, n, p, seed, i);
        sum_sq += x.clone() * x.clone();
        sum += x;
    }
    Ok(summarize(sum, sum_sq, samples, seed))
}

fn check_mc_inputs(n: usize, samples: u64) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidHexagonCount);
    }
    if samples < 2 {
        return Err(Error::TooFewSamples(samples));
    }
    Ok(())
}

fn sample_value(
    family: ChainFamily,
    n: usize,
    p: &ProbabilityPair,
    seed: u64,
    index: u64,
) -> ExactInt {
    let spec = random_chain(family, n, p, crate::chains::sample_seed(seed, index))
        .expect("inputs validated");
    chain_stn(&spec).total
}

fn summarize(sum: ExactInt, sum_sq: ExactInt, samples: u64, seed: u64) -> MonteCarloResult {
    let n = ExactInt::from(samples);
    let mean = ExactRational::new(sum.clone(), n.clone());
    // Unbiased sample variance of the mean:
    // (N * sum_sq - sum^2) / (N^2 * (N - 1)).
    let numer = n.clone() * sum_sq - sum.clone() * sum;
    debug_assert!(!numer.is_negative());
    let denom = n.clone() * n.clone() * (n - ExactInt::one());
    let var_of_mean = ExactRational::new(numer, denom);
    let std_error = if var_of_mean.is_zero() {
        0.0
    } else {
        var_of_mean.to_f64().unwrap_or(f64::INFINITY).sqrt()
    };
    MonteCarloResult {
        mean: mean.to_f64().unwrap_or(f64::INFINITY),
        std_error,
        samples,
        seed,
    }
}
