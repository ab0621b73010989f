//! Stochastic validation of the exact machinery: outcome sampling, the
//! k-run conditioning experiment, and the brute-force enumeration oracle.
//!
//! Reproducibility contract: trial i draws from a counter-based substream
//! (ChaCha keyed by the seed, stream = trial index), so results are
//! bitwise identical for a given config no matter how trials are split.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::ftm::{classify_outcome, outcome_distribution, pr_constant_indication, FtmOutcome, OutcomeClass};
use crate::function_space::{enumerate_all_with_cap, FunctionSpec, DEFAULT_ENUMERATION_CAP};

/// One conditioning experiment: dimensions, target indication count, trial
/// budget, and the RNG seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub n_domain: usize,
    pub m_range: usize,
    pub k_target: usize,
    pub trials: u64,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn new(
        n_domain: usize,
        m_range: usize,
        k_target: usize,
        trials: u64,
        seed: u64,
    ) -> Result<Self> {
        if n_domain == 0 || m_range == 0 {
            return Err(crate::error::Error::InvalidArgument(
                "domain and range sizes must be at least 1".into(),
            ));
        }
        if k_target == 0 || trials == 0 {
            return Err(crate::error::Error::InvalidArgument(
                "k_target and trials must be at least 1".into(),
            ));
        }
        Ok(Self {
            n_domain,
            m_range,
            k_target,
            trials,
            seed,
        })
    }
}

/// Tally of a conditioning experiment. `estimate` is None when no trial
/// ever conditioned.
#[derive(Debug, Clone, PartialEq)]
pub struct PosteriorEstimate {
    pub trials: u64,
    /// Trials whose first k non-FAIL outcomes were all constant indications.
    pub conditioning_events: u64,
    /// Conditioning trials whose drawn function really was constant.
    pub constant_and_conditioned: u64,
    /// Trials settled exactly by a not-constant outcome before k
    /// indications accumulated.
    pub aborted_not_constant: u64,
    /// FAIL outcomes across all trials (each draw is FAIL with
    /// probability 1/M regardless of the function).
    pub fail_outcomes: u64,
    /// Total measurement draws across all trials.
    pub total_outcomes: u64,
    pub estimate: Option<f64>,
    /// Binomial standard error of the estimate.
    pub std_error: Option<f64>,
}

/// Inverse-CDF sampler over the canonical (alpha, beta) outcome order,
/// built once per distinct function.
pub struct OutcomeSampler {
    n_domain: usize,
    m_range: usize,
    cumulative: Vec<f64>,
}

impl OutcomeSampler {
    pub fn new(f: &FunctionSpec) -> Self {
        let dist = outcome_distribution(f);
        let mut cumulative = Vec::with_capacity(f.m_range() * f.n_domain());
        let mut acc = 0.0;
        for (_, p, _) in dist.iter() {
            acc += p;
            cumulative.push(acc);
        }
        Self {
            n_domain: f.n_domain(),
            m_range: f.m_range(),
            cumulative,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> FtmOutcome {
        let u: f64 = rng.random();
        let idx = self
            .cumulative
            .partition_point(|&c| c <= u)
            .min(self.cumulative.len() - 1);
        FtmOutcome::new(idx / self.n_domain, idx % self.n_domain)
    }

    pub fn m_range(&self) -> usize {
        self.m_range
    }
}

/// Draws one measurement outcome for f with Born probabilities.
pub fn sample_outcome<R: Rng + ?Sized>(f: &FunctionSpec, rng: &mut R) -> FtmOutcome {
    OutcomeSampler::new(f).sample(rng)
}

/// The per-trial RNG substream.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Runs the conditioning experiment: per trial, draw f uniformly, then
/// sample outcomes, discarding FAILs; a not-constant outcome ends the
/// trial without conditioning, while the k-th constant indication makes
/// the trial condition and records whether f was constant. The estimate
/// converges to the exact quantum posterior.
pub fn run_experiment(config: &ExperimentConfig) -> PosteriorEstimate {
    let mut sampler_cache: HashMap<Vec<usize>, OutcomeSampler> = HashMap::new();
    let mut conditioning_events = 0u64;
    let mut constant_and_conditioned = 0u64;
    let mut aborted_not_constant = 0u64;
    let mut fail_outcomes = 0u64;
    let mut total_outcomes = 0u64;

    for trial in 0..config.trials {
        let mut rng = trial_rng(config.seed, trial);
        let f = FunctionSpec::sample_uniform(config.n_domain, config.m_range, &mut rng);
        let sampler = sampler_cache
            .entry(f.values().to_vec())
            .or_insert_with(|| OutcomeSampler::new(&f));

        let mut indications = 0usize;
        loop {
            let outcome = sampler.sample(&mut rng);
            total_outcomes += 1;
            match classify_outcome(outcome, config.m_range, config.n_domain) {
                OutcomeClass::Fail => {
                    fail_outcomes += 1;
                }
                OutcomeClass::ConstantIndication => {
                    indications += 1;
                    if indications == config.k_target {
                        conditioning_events += 1;
                        if f.is_constant() {
                            constant_and_conditioned += 1;
                        }
                        break;
                    }
                }
                OutcomeClass::NotConstant => {
                    aborted_not_constant += 1;
                    break;
                }
                OutcomeClass::Error => {
                    // structurally impossible; reachable only through
                    // floating-point dust in the CDF, so redraw
                    total_outcomes -= 1;
                }
            }
        }
    }

    let (estimate, std_error) = if conditioning_events > 0 {
        let p = constant_and_conditioned as f64 / conditioning_events as f64;
        let se = (p * (1.0 - p) / conditioning_events as f64).sqrt();
        (Some(p), Some(se))
    } else {
        (None, None)
    };

    PosteriorEstimate {
        trials: config.trials,
        conditioning_events,
        constant_and_conditioned,
        aborted_not_constant,
        fail_outcomes,
        total_outcomes,
        estimate,
        std_error,
    }
}

/// The enumeration oracle for the evidence Pr(k): sums the per-function
/// likelihood^k over every function, weighted by the uniform prior. This
/// route never touches profiles or multiplicities, so it independently
/// checks the grouped sum.
pub fn brute_force_evidence(n_domain: usize, m_range: usize, k: usize) -> Result<BigRational> {
    brute_force_evidence_with_cap(n_domain, m_range, k, DEFAULT_ENUMERATION_CAP)
}

/// Like [`brute_force_evidence`] with an explicit enumeration cap.
pub fn brute_force_evidence_with_cap(
    n_domain: usize,
    m_range: usize,
    k: usize,
    cap: u64,
) -> Result<BigRational> {
    if k == 0 {
        // probabilities sum to one; no enumeration needed
        return Ok(BigRational::one());
    }
    let k_exp = u32::try_from(k).expect("k fits u32");
    // every likelihood is an integer over d = M N^2, so the sum is taken
    // over that common denominator
    let unit = BigInt::from(m_range as u128 * (n_domain as u128) * (n_domain as u128));
    let mut scaled_sum = BigInt::from(0);
    for f in enumerate_all_with_cap(n_domain, m_range, cap)? {
        let likelihood = pr_constant_indication(&f);
        let scaled = likelihood.numer() * &unit / likelihood.denom();
        scaled_sum += scaled.pow(k_exp);
    }
    let denominator = BigInt::from(m_range).pow(n_domain as u32) * unit.pow(k_exp);
    Ok(BigRational::new(scaled_sum, denominator))
}
