//! Closed-form worst-case and best-case analysis.
//!
//! The adversarial function is constant everywhere except one point; its
//! state lies almost entirely in the constant-function span, with
//! projection probability Pr_E = 1 - 2/N + 2/N^2. Driving the error of
//! mistaking it for a constant below epsilon takes
//! k = ln(eps) / ln(Pr_E) runs, and in the large-N limit the ratio
//! eta = k/N tends to -ln(eps)/2, i.e. eps = exp(-2 eta). The classical
//! sampler that checks a fraction eta of the domain errs with probability
//! 1 - eta. The best case is a permutation (N = M): it is orthogonal to
//! every indication outcome, so a single run answers exactly unless the
//! 1/N-probability FAIL shows up.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::function_space::FunctionSpec;

/// One sample of the worst-case error curves: the two limiting error
/// probabilities at runs-per-point ratio eta.
#[derive(Debug, Clone, Copy)]
pub struct WorstCaseCurve {
    pub eta: f64,
    pub quantum_eps: f64,
    pub classical_eps: f64,
}

/// The function that is hardest to tell from a constant: value 0
/// everywhere except the last point, which maps to 1.
pub fn worst_case_function(n_domain: usize, m_range: usize) -> Result<FunctionSpec> {
    if n_domain < 2 || m_range < 2 {
        return Err(Error::InvalidArgument(
            "the worst case needs N >= 2 and M >= 2".into(),
        ));
    }
    let mut values = vec![0usize; n_domain];
    values[n_domain - 1] = 1;
    FunctionSpec::new(m_range, values)
}

/// Exact probability that the worst-case function projects into the
/// constant-function span: 1 - 2/N + 2/N^2. Independent of M.
pub fn worst_case_pr(n_domain: usize) -> BigRational {
    assert!(n_domain >= 2);
    let n = n_domain as u128;
    BigRational::new(BigInt::from(n * n - 2 * n + 2), BigInt::from(n * n))
}

/// The M-aware error probability: the worst case's chance of an actual
/// constant indication, Pr_E - 1/M.
pub fn worst_case_indication_pr(n_domain: usize, m_range: usize) -> BigRational {
    assert!(n_domain >= 2 && m_range >= 2);
    let n = n_domain as u128;
    let m = m_range as u128;
    BigRational::new(
        BigInt::from(m * (n * n - 2 * n + 2) - n * n),
        BigInt::from(m * n * n),
    )
}

/// Number of runs needed to push the worst-case error at or below epsilon:
/// the ceiling of ln(eps) / ln(Pr_E). Runs are whole experiments, and
/// rounding up preserves the bound.
pub fn runs_for_error(n_domain: usize, epsilon: f64) -> Result<u64> {
    if n_domain < 2 {
        return Err(Error::InvalidArgument("need N >= 2".into()));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "epsilon must lie strictly between 0 and 1, got {epsilon}"
        )));
    }
    let n = n_domain as f64;
    let pr = 1.0 - 2.0 / n + 2.0 / (n * n);
    // small slack so exact-power cases (e.g. N=2, eps=0.25) do not round up
    let runs = (epsilon.ln() / pr.ln() - 1e-9).ceil();
    Ok(runs.max(1.0) as u64)
}

/// Uniformly sampled worst-case error curves on eta in [0, 1]:
/// quantum exp(-2 eta), classical 1 - eta.
pub fn figure1_curve(samples: usize) -> Vec<WorstCaseCurve> {
    assert!(samples >= 2);
    (0..samples)
        .map(|i| {
            let eta = i as f64 / (samples - 1) as f64;
            WorstCaseCurve {
                eta,
                quantum_eps: (-2.0 * eta).exp(),
                classical_eps: 1.0 - eta,
            }
        })
        .collect()
}

/// The nontrivial crossing of the two curves, exp(-2 eta) = 1 - eta,
/// located by bisection to 1e-9. Below it the quantum curve is strictly
/// lower.
pub fn crossing_eta() -> f64 {
    let gap = |eta: f64| (-2.0 * eta).exp() - (1.0 - eta);
    let (mut lo, mut hi) = (0.5, 0.9);
    debug_assert!(gap(lo) < 0.0 && gap(hi) > 0.0);
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if gap(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Outcome-class probabilities for a permutation on N = M points.
#[derive(Debug, Clone)]
pub struct BestCaseStats {
    pub fail_probability: BigRational,
    pub not_constant_probability: BigRational,
}

/// Exact best-case statistics: a permutation FAILs with probability 1/N
/// and otherwise proves non-constancy immediately; it can never indicate
/// constant.
pub fn best_case_stats(n_domain: usize) -> BestCaseStats {
    assert!(n_domain >= 2, "permutations need N = M >= 2");
    let n = BigInt::from(n_domain);
    BestCaseStats {
        fail_probability: BigRational::new(BigInt::from(1), n.clone()),
        not_constant_probability: BigRational::new(n.clone() - BigInt::from(1), n),
    }
}
