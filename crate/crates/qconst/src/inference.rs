//! Exact posterior probabilities that a function is constant, given k
//! constant-indicating measurement outcomes.
//!
//! Everything is Bayes over the uniform prior Pr(f) = M^-N. The joint
//! probability of "f constant and k indications" is M^(1-N) (1 - 1/M)^k,
//! since a constant function yields an indication whenever the outcome is
//! not FAIL. The evidence Pr(k) sums the per-function likelihood
//! (single-run indication probability)^k over the whole function space,
//! grouped by row profile with exact multiplicities:
//!
//!   Pr(k) = sum_{profiles} M^-N [ sum_l j_l l^2 / N^2 - 1/M ]^k C(j).
//!
//! The classical baseline evaluates f on k points and reports constant if
//! the restriction is; its posterior is M^(k-N), reaching certainty at
//! k = N. All quantities are arbitrary-precision rationals end to end;
//! decimal rendering happens only at the output boundary.
//!
//! The conditioning protocol: k counts only constant indications, FAIL
//! outcomes are discarded without incrementing k, and any not-constant
//! outcome settles the question exactly (no posterior needed).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinatorics::{profile_multiplicities, ProfileMultiplicity};
use crate::error::{Error, Result};
use crate::ftm::profile_constant_indication;

/// A posterior question: dimensions of the function space plus the number
/// of constant-indicating runs conditioned on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PosteriorQuery {
    pub n_domain: usize,
    pub m_range: usize,
    pub k_runs: usize,
}

impl PosteriorQuery {
    pub fn new(n_domain: usize, m_range: usize, k_runs: usize) -> Result<Self> {
        if n_domain == 0 || m_range == 0 {
            return Err(Error::InvalidArgument(
                "domain and range sizes must be at least 1".into(),
            ));
        }
        Ok(Self {
            n_domain,
            m_range,
            k_runs,
        })
    }
}

fn big(x: usize) -> BigInt {
    BigInt::from(x)
}

fn pow(base: &BigInt, exp: usize) -> BigInt {
    base.pow(u32::try_from(exp).expect("exponent fits u32"))
}

/// Joint probability that f is constant and k runs all indicate constant:
/// M^(1-N) (1 - 1/M)^k.
pub fn joint_constant(query: &PosteriorQuery) -> BigRational {
    let m = big(query.m_range);
    let numerator = &m * pow(&(&m - BigInt::one()), query.k_runs);
    let denominator = pow(&m, query.n_domain) * pow(&m, query.k_runs);
    BigRational::new(numerator, denominator)
}

/// Evidence Pr(k): the likelihood^k summed over the function space via the
/// row-profile decomposition. Defined as 1 at k = 0.
pub fn quantum_evidence(query: &PosteriorQuery) -> BigRational {
    evidence_from_profiles(
        &profile_multiplicities(query.n_domain, query.m_range),
        query,
    )
}

fn evidence_from_profiles(
    profiles: &[ProfileMultiplicity],
    query: &PosteriorQuery,
) -> BigRational {
    if query.k_runs == 0 {
        return BigRational::one();
    }
    let k = i32::try_from(query.k_runs).expect("k fits i32");
    let mut weighted = BigRational::zero();
    for pm in profiles {
        let likelihood = profile_constant_indication(&pm.profile);
        if likelihood.is_zero() {
            continue;
        }
        weighted += likelihood.pow(k) * BigRational::from_integer(BigInt::from(pm.count.clone()));
    }
    weighted / BigRational::from_integer(pow(&big(query.m_range), query.n_domain))
}

/// Posterior Pr(const | k) for the quantum strategy. At k = 0 this is the
/// prior M^(1-N). Fails when the conditioning event has zero probability
/// (only possible for M = 1 with k >= 1, where no indication outcome
/// exists).
pub fn quantum_posterior(query: &PosteriorQuery) -> Result<BigRational> {
    if query.k_runs == 0 {
        return Ok(prior(query));
    }
    let evidence = quantum_evidence(query);
    if evidence.is_zero() {
        return Err(Error::Degenerate(format!(
            "Pr({} constant indications) = 0 for N={}, M={}",
            query.k_runs, query.n_domain, query.m_range
        )));
    }
    Ok(joint_constant(query) / evidence)
}

/// Posterior Pr(const | k) for the classical point-sampling strategy:
/// M^(k-N) for k >= 1, certainty at k = N. At k = 0 nothing was sampled
/// and the posterior is the prior M^(1-N), matching the quantum side.
/// Sampling beyond the domain size carries no information, so k > N is
/// rejected.
pub fn classical_posterior(query: &PosteriorQuery) -> Result<BigRational> {
    if query.k_runs > query.n_domain {
        return Err(Error::InvalidArgument(format!(
            "classical sampling is capped at k = N = {} (got k = {})",
            query.n_domain, query.k_runs
        )));
    }
    if query.k_runs == 0 {
        return Ok(prior(query));
    }
    Ok(BigRational::new(
        pow(&big(query.m_range), query.k_runs),
        pow(&big(query.m_range), query.n_domain),
    ))
}

/// The shared prior Pr(const) = M^(1-N).
pub fn prior(query: &PosteriorQuery) -> BigRational {
    BigRational::new(big(query.m_range), pow(&big(query.m_range), query.n_domain))
}

/// One row of a posterior table.
#[derive(Debug, Clone)]
pub struct PosteriorRow {
    pub k: usize,
    pub quantum: BigRational,
    pub classical: BigRational,
}

/// Exact posterior-versus-k table for both strategies, k = 1..=k_max.
/// The classical column requires k_max <= N.
pub fn posterior_table(
    n_domain: usize,
    m_range: usize,
    k_max: usize,
) -> Result<Vec<PosteriorRow>> {
    if n_domain == 0 || m_range == 0 {
        return Err(Error::InvalidArgument(
            "domain and range sizes must be at least 1".into(),
        ));
    }
    if k_max > n_domain {
        return Err(Error::InvalidArgument(format!(
            "k_max = {k_max} exceeds N = {n_domain}; the classical column stops at k = N"
        )));
    }
    let profiles = profile_multiplicities(n_domain, m_range);
    (1..=k_max)
        .map(|k| {
            let query = PosteriorQuery::new(n_domain, m_range, k)?;
            let evidence = evidence_from_profiles(&profiles, &query);
            if evidence.is_zero() {
                return Err(Error::Degenerate(format!(
                    "Pr({k} constant indications) = 0 for N={n_domain}, M={m_range}"
                )));
            }
            Ok(PosteriorRow {
                k,
                quantum: joint_constant(&query) / evidence,
                classical: classical_posterior(&query)?,
            })
        })
        .collect()
}
