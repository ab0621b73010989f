//! Built-in invariant suites, runnable from the CLI as `selfcheck`.
//!
//! Each suite re-derives a structural fact from scratch at desk scale and
//! compares it against the library's primary computation path.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::asymptotics::{crossing_eta, worst_case_function, worst_case_pr};
use crate::combinatorics::{check_total, enumerate_profiles, multiplicity, partition_count_at_most};
use crate::error::Result;
use crate::ftm::{
    amplitude, ftm_entry, pr_constant_indication, pr_constant_subspace,
    profile_constant_indication, FtmOutcome, PROB_TOLERANCE, STRUCTURAL_ZERO_TOLERANCE,
};
use crate::function_space::{enumerate_all_with_cap, function_count, FunctionSpec};
use crate::inference::{classical_posterior, quantum_evidence, quantum_posterior, PosteriorQuery};
use crate::montecarlo::{brute_force_evidence_with_cap, trial_rng};

/// Scope of the selfcheck sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// Completes in seconds.
    Fast,
    /// Full enumeration sweeps up to the cap.
    Full,
}

/// Verdict of one suite.
#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl SuiteResult {
    fn pass(name: &'static str, detail: impl Into<String>) -> Self {
        Self {
            name,
            passed: true,
            detail: detail.into(),
        }
    }

    fn fail(name: &'static str, detail: impl Into<String>) -> Self {
        Self {
            name,
            passed: false,
            detail: detail.into(),
        }
    }
}

/// Runs every suite at the given level. `cap` bounds the enumeration
/// sweeps (functions per (N, M) pair).
pub fn run(level: Level, cap: u64) -> Vec<SuiteResult> {
    let sweep_cap = match level {
        Level::Fast => cap.min(10_000),
        Level::Full => cap.min(1_000_000),
    };
    vec![
        ftm_basis_suite(level),
        measurement_invariants_suite(level),
        profile_histogram_suite(sweep_cap),
        combinatorial_totals_suite(),
        evidence_oracle_suite(sweep_cap),
        closed_form_suite(),
    ]
}

/// Every (N, M) pair at desk scale whose function space fits the cap.
fn sweep_pairs(cap: u64) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for m in 1..=24usize {
        for n in 1..=24usize {
            match function_count(n, m) {
                Some(count) if count <= cap => pairs.push((n, m)),
                _ => {}
            }
        }
    }
    pairs
}

/// Orthonormality and completeness of the measurement basis.
fn ftm_basis_suite(level: Level) -> SuiteResult {
    const NAME: &str = "ftm_basis";
    let limit = match level {
        Level::Fast => 5,
        Level::Full => 8,
    };
    let mut checked = 0usize;
    for m_range in 1..=limit {
        for n_domain in 1..=limit {
            // pairwise scalar products Tr(A^dagger B) over the basis grid
            for a1 in 0..m_range {
                for b1 in 0..n_domain {
                    for a2 in 0..m_range {
                        for b2 in 0..n_domain {
                            let mut dot = num_complex::Complex64::new(0.0, 0.0);
                            for m in 0..m_range {
                                for n in 0..n_domain {
                                    dot += ftm_entry(a1, b1, m, n, m_range, n_domain).conj()
                                        * ftm_entry(a2, b2, m, n, m_range, n_domain);
                                }
                            }
                            let expected = if (a1, b1) == (a2, b2) { 1.0 } else { 0.0 };
                            if (dot.norm() - expected).abs() > PROB_TOLERANCE {
                                return SuiteResult::fail(
                                    NAME,
                                    format!(
                                        "<F({a1},{b1}),F({a2},{b2})> = {dot} for M={m_range}, N={n_domain}"
                                    ),
                                );
                            }
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    SuiteResult::pass(NAME, format!("{checked} scalar products, M,N <= {limit}"))
}

/// Parseval, the universal FAIL share, structural zeros, and agreement of
/// the complex and rational probability paths on random functions.
fn measurement_invariants_suite(level: Level) -> SuiteResult {
    const NAME: &str = "measurement_invariants";
    let draws = match level {
        Level::Fast => 60,
        Level::Full => 200,
    };
    let mut rng = trial_rng(0x5eed, 0);
    for i in 0..draws {
        let n = rng.random_range(1..=12);
        let m = rng.random_range(1..=12);
        let f = FunctionSpec::sample_uniform(n, m, &mut rng);

        let mut total = 0.0;
        let mut indication = 0.0;
        for alpha in 0..m {
            for beta in 0..n {
                let p = amplitude(&f, FtmOutcome::new(alpha, beta)).norm_sqr();
                total += p;
                if beta == 0 && alpha > 0 {
                    indication += p;
                }
                if beta > 0 && alpha == 0 && p > STRUCTURAL_ZERO_TOLERANCE {
                    return SuiteResult::fail(
                        NAME,
                        format!("ERROR outcome (0,{beta}) has probability {p} for f={f}"),
                    );
                }
            }
        }
        if (total - 1.0).abs() > PROB_TOLERANCE {
            return SuiteResult::fail(NAME, format!("probabilities sum to {total} for f={f}"));
        }
        let fail = amplitude(&f, FtmOutcome::new(0, 0)).norm_sqr();
        if (fail - 1.0 / m as f64).abs() > STRUCTURAL_ZERO_TOLERANCE {
            return SuiteResult::fail(NAME, format!("Pr(FAIL|{f}) = {fail}, expected 1/{m}"));
        }
        let exact = pr_constant_indication(&f).to_f64().unwrap();
        if (indication - exact).abs() > PROB_TOLERANCE {
            return SuiteResult::fail(
                NAME,
                format!("complex path gives {indication}, rational path {exact} for f={f} (draw {i})"),
            );
        }
    }
    SuiteResult::pass(NAME, format!("{draws} random functions, N,M <= 12"))
}

/// Exhaustive check that the profile histogram matches the closed-form
/// multiplicities and that every function's likelihood equals its
/// profile's.
fn profile_histogram_suite(cap: u64) -> SuiteResult {
    const NAME: &str = "profile_histogram";
    let mut functions = 0u64;
    for (n, m) in sweep_pairs(cap) {
        let mut histogram = std::collections::HashMap::new();
        for f in enumerate_all_with_cap(n, m, cap).expect("pair fits cap") {
            let profile = f.row_profile();
            if profile_constant_indication(&profile) != pr_constant_indication(&f) {
                return SuiteResult::fail(
                    NAME,
                    format!("profile likelihood mismatch for f={f} (N={n}, M={m})"),
                );
            }
            *histogram.entry(profile).or_insert(0u64) += 1;
            functions += 1;
        }
        let profiles = enumerate_profiles(n, m);
        if profiles.len() != histogram.len() {
            return SuiteResult::fail(
                NAME,
                format!(
                    "{} profiles enumerated but {} observed for N={n}, M={m}",
                    profiles.len(),
                    histogram.len()
                ),
            );
        }
        for profile in profiles {
            let expected = multiplicity(&profile, n, m).expect("valid profile");
            let observed = BigUint::from(histogram[&profile]);
            if expected != observed {
                return SuiteResult::fail(
                    NAME,
                    format!("C{profile} = {expected} but {observed} functions observed (N={n}, M={m})"),
                );
            }
        }
    }
    SuiteResult::pass(NAME, format!("{functions} functions enumerated (cap {cap})"))
}

/// Multiplicities total M^N and the profile count is the bounded
/// partition count.
fn combinatorial_totals_suite() -> SuiteResult {
    const NAME: &str = "combinatorial_totals";
    for n in 1..=24 {
        for m in 1..=24 {
            if !check_total(n, m) {
                return SuiteResult::fail(NAME, format!("sum of C != {m}^{n}"));
            }
        }
    }
    for n in 1..=30 {
        for m in 1..=30 {
            let enumerated = enumerate_profiles(n, m).len() as u128;
            let counted = partition_count_at_most(n, m);
            if enumerated != counted {
                return SuiteResult::fail(
                    NAME,
                    format!("{enumerated} profiles vs partition count {counted} for N={n}, M={m}"),
                );
            }
        }
    }
    SuiteResult::pass(NAME, "totals to 24^24, partition counts to N,M = 30")
}

/// Profile-sum evidence equals the brute-force enumeration oracle.
fn evidence_oracle_suite(cap: u64) -> SuiteResult {
    const NAME: &str = "evidence_oracle";
    let mut pairs = 0usize;
    for (n, m) in sweep_pairs(cap) {
        for k in 1..=3usize {
            let query = PosteriorQuery::new(n, m, k).expect("valid query");
            let grouped = quantum_evidence(&query);
            let oracle = brute_force_evidence_with_cap(n, m, k, cap).expect("pair fits cap");
            if grouped != oracle {
                return SuiteResult::fail(
                    NAME,
                    format!("evidence mismatch at N={n}, M={m}, k={k}: {grouped} vs {oracle}"),
                );
            }
        }
        pairs += 1;
    }
    SuiteResult::pass(NAME, format!("{pairs} (N,M) pairs, k in 1..=3 (cap {cap})"))
}

/// Worst/best-case identities, the classical formula, prior consistency,
/// and the figure-1 dominance pattern.
fn closed_form_suite() -> SuiteResult {
    const NAME: &str = "closed_forms";
    for n in 2..=64 {
        let g = worst_case_function(n, 2).expect("valid dimensions");
        if pr_constant_subspace(&g) != worst_case_pr(n) {
            return SuiteResult::fail(NAME, format!("worst-case identity fails at N={n}"));
        }
    }
    for n in 2..=32 {
        let perm = FunctionSpec::new(n, (0..n).collect()).expect("valid permutation");
        if !pr_constant_indication(&perm).is_zero() {
            return SuiteResult::fail(NAME, format!("permutation indicates constant at N={n}"));
        }
    }
    for n in 1..=24usize {
        for m in 1..=24usize {
            let at_n = classical_posterior(&PosteriorQuery::new(n, m, n).expect("valid"))
                .expect("k = N is allowed");
            if !at_n.is_one() {
                return SuiteResult::fail(NAME, format!("classical posterior != 1 at k=N={n}, M={m}"));
            }
            if m >= 2 {
                let q0 = PosteriorQuery::new(n, m, 0).expect("valid");
                if quantum_posterior(&q0).expect("prior") != classical_posterior(&q0).expect("prior") {
                    return SuiteResult::fail(NAME, format!("prior mismatch at N={n}, M={m}"));
                }
            }
        }
    }
    for tenth in 1..=7 {
        let eta = tenth as f64 / 10.0;
        if (-2.0 * eta).exp() >= 1.0 - eta {
            return SuiteResult::fail(NAME, format!("quantum curve not below classical at eta={eta}"));
        }
    }
    let eta = crossing_eta();
    if !(0.79..0.80).contains(&eta) {
        return SuiteResult::fail(NAME, format!("crossing point {eta} outside (0.79, 0.80)"));
    }
    SuiteResult::pass(NAME, "worst/best case, classical formula, priors, curve crossing")
}

/// Runs all suites, printing one verdict line each; Ok(()) iff all passed.
pub fn run_and_report(level: Level, cap: u64, mut out: impl std::io::Write) -> Result<bool> {
    let results = run(level, cap);
    let mut all_passed = true;
    for result in &results {
        let verdict = if result.passed { "ok" } else { "FAIL" };
        writeln!(out, "{verdict} {} - {}", result.name, result.detail)?;
        all_passed &= result.passed;
    }
    Ok(all_passed)
}
