//! The Fourier-transform-matrix (FTM) measurement basis.
//!
//! After the superposed computation of f the joint register state is the
//! M x N matrix F with entries F[m][n] = delta(m, f(n)) / sqrt(N). The
//! measurement observable is the orthonormal basis of MN matrices
//!
//!   FTM(alpha, beta)[m][n] = exp(i 2 pi alpha m / M) *
//!                            exp(i 2 pi beta n / N) / sqrt(M N),
//!
//! so outcome amplitudes are entries of the two-dimensional discrete
//! Fourier transform of F. Outcomes are classified by index:
//!
//!   (0, 0)                ->  FAIL (probability 1/M for every function)
//!   (alpha >= 1, 0)       ->  constant indication
//!   (0, beta >= 1)        ->  ERROR (zero probability without noise)
//!   (alpha >= 1, beta >=1)->  not constant (certain verdict)
//!
//! Probabilities restricted to beta = 0 are rational: the amplitude on
//! (alpha, 0) depends only on the alpha-th row sum s_alpha, giving
//! Pr = s_alpha^2 / N^2. Summed over alpha and grouped by row profile this
//! is sum_l j_l * l^2 / N^2; the constant-indication likelihood subtracts
//! the FAIL share 1/M. Those quantities are carried exactly as
//! arbitrary-precision rationals, while the full (alpha, beta) grid uses
//! complex floating point with the tolerances below.

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::function_space::{FunctionSpec, RowProfile};

/// Comparison tolerance for floating-point probabilities and overlaps.
pub const PROB_TOLERANCE: f64 = 1e-10;

/// Tolerance for quantities that are structurally zero (ERROR outcomes).
pub const STRUCTURAL_ZERO_TOLERANCE: f64 = 1e-12;

/// The M x N state matrix of a computed function: one entry 1/sqrt(N) per
/// column, row index given by the function value.
#[derive(Debug, Clone)]
pub struct FunctionMatrix {
    m_rows: usize,
    n_cols: usize,
    entries: Vec<f64>,
}

impl FunctionMatrix {
    /// The post-computation state matrix of f.
    pub fn from_function(f: &FunctionSpec) -> Self {
        let m_rows = f.m_range();
        let n_cols = f.n_domain();
        let amp = 1.0 / (n_cols as f64).sqrt();
        let mut entries = vec![0.0; m_rows * n_cols];
        for (n, &v) in f.values().iter().enumerate() {
            entries[v * n_cols + n] = amp;
        }
        Self {
            m_rows,
            n_cols,
            entries,
        }
    }

    pub fn m_rows(&self) -> usize {
        self.m_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn entry(&self, m: usize, n: usize) -> f64 {
        self.entries[m * self.n_cols + n]
    }

    /// Frobenius norm; 1 for any state matrix.
    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|e| e * e).sum::<f64>().sqrt()
    }
}

/// Index pair naming one FTM basis eigenstate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FtmOutcome {
    pub alpha: usize,
    pub beta: usize,
}

impl FtmOutcome {
    pub fn new(alpha: usize, beta: usize) -> Self {
        Self { alpha, beta }
    }
}

impl std::fmt::Display for FtmOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.alpha, self.beta)
    }
}

/// What a measurement outcome tells us about the computed function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OutcomeClass {
    /// alpha >= 1, beta = 0: probabilistic evidence that f is constant.
    ConstantIndication,
    /// (0, 0): the inconclusive outcome, probability 1/M for every f.
    Fail,
    /// alpha >= 1, beta >= 1: proof that f is not constant.
    NotConstant,
    /// (0, beta >= 1): orthogonal to every state matrix; only noise could
    /// produce it.
    Error,
}

impl OutcomeClass {
    pub const ALL: [OutcomeClass; 4] = [
        OutcomeClass::ConstantIndication,
        OutcomeClass::Fail,
        OutcomeClass::NotConstant,
        OutcomeClass::Error,
    ];

    fn index(self) -> usize {
        match self {
            OutcomeClass::ConstantIndication => 0,
            OutcomeClass::Fail => 1,
            OutcomeClass::NotConstant => 2,
            OutcomeClass::Error => 3,
        }
    }
}

impl std::fmt::Display for OutcomeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = match self {
            OutcomeClass::ConstantIndication => "CONSTANT_INDICATION",
            OutcomeClass::Fail => "FAIL",
            OutcomeClass::NotConstant => "NOT_CONSTANT",
            OutcomeClass::Error => "ERROR",
        };
        f.write_str(tag)
    }
}

/// Classifies an outcome by its index pair.
pub fn classify_outcome(outcome: FtmOutcome, m_range: usize, n_domain: usize) -> OutcomeClass {
    assert!(outcome.alpha < m_range && outcome.beta < n_domain);
    match (outcome.alpha, outcome.beta) {
        (0, 0) => OutcomeClass::Fail,
        (_, 0) => OutcomeClass::ConstantIndication,
        (0, _) => OutcomeClass::Error,
        (_, _) => OutcomeClass::NotConstant,
    }
}

/// Entry (m, n) of the FTM basis matrix indexed by (alpha, beta).
pub fn ftm_entry(
    alpha: usize,
    beta: usize,
    m: usize,
    n: usize,
    m_range: usize,
    n_domain: usize,
) -> Complex64 {
    assert!(alpha < m_range && beta < n_domain && m < m_range && n < n_domain);
    let norm = 1.0 / ((m_range * n_domain) as f64).sqrt();
    let phase = TAU * ((alpha * m) % m_range) as f64 / m_range as f64
        + TAU * ((beta * n) % n_domain) as f64 / n_domain as f64;
    Complex64::from_polar(norm, phase)
}

/// Projection amplitude of the state of f onto the (alpha, beta) basis
/// matrix: the (alpha, beta) entry of the 2-D DFT of the state matrix,
///
///   (1 / (sqrt(M) N)) * sum_n exp(-i 2 pi alpha f(n) / M)
///                             * exp(-i 2 pi beta n / N).
///
/// The conjugated (forward DFT) convention makes amplitude(f, (0,0)) equal
/// +1/sqrt(M). Terms are summed in ascending n for reproducibility.
pub fn amplitude(f: &FunctionSpec, outcome: FtmOutcome) -> Complex64 {
    let m_range = f.m_range();
    let n_domain = f.n_domain();
    assert!(outcome.alpha < m_range && outcome.beta < n_domain);
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..n_domain {
        let phase = -TAU * ((outcome.alpha * f.value(n)) % m_range) as f64 / m_range as f64
            - TAU * ((outcome.beta * n) % n_domain) as f64 / n_domain as f64;
        sum += Complex64::from_polar(1.0, phase);
    }
    sum / ((m_range as f64).sqrt() * n_domain as f64)
}

/// Born probabilities of every FTM outcome for a computed function,
/// plus per-class totals.
#[derive(Debug, Clone)]
pub struct OutcomeDistribution {
    m_range: usize,
    n_domain: usize,
    probabilities: Vec<f64>,
    class_totals: [f64; 4],
}

impl OutcomeDistribution {
    pub fn m_range(&self) -> usize {
        self.m_range
    }

    pub fn n_domain(&self) -> usize {
        self.n_domain
    }

    pub fn probability(&self, outcome: FtmOutcome) -> f64 {
        self.probabilities[outcome.alpha * self.n_domain + outcome.beta]
    }

    pub fn class_total(&self, class: OutcomeClass) -> f64 {
        self.class_totals[class.index()]
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    /// Rows in canonical order: alpha outer, beta inner.
    pub fn iter(&self) -> impl Iterator<Item = (FtmOutcome, f64, OutcomeClass)> + '_ {
        (0..self.m_range).flat_map(move |alpha| {
            (0..self.n_domain).map(move |beta| {
                let outcome = FtmOutcome::new(alpha, beta);
                (
                    outcome,
                    self.probability(outcome),
                    classify_outcome(outcome, self.m_range, self.n_domain),
                )
            })
        })
    }
}

/// Measurement distribution |amplitude|^2 over the full outcome grid.
pub fn outcome_distribution(f: &FunctionSpec) -> OutcomeDistribution {
    let m_range = f.m_range();
    let n_domain = f.n_domain();
    let mut probabilities = vec![0.0; m_range * n_domain];
    let mut class_totals = [0.0; 4];
    for alpha in 0..m_range {
        for beta in 0..n_domain {
            let outcome = FtmOutcome::new(alpha, beta);
            let p = amplitude(f, outcome).norm_sqr();
            probabilities[alpha * n_domain + beta] = p;
            class_totals[classify_outcome(outcome, m_range, n_domain).index()] += p;
        }
    }
    OutcomeDistribution {
        m_range,
        n_domain,
        probabilities,
        class_totals,
    }
}

/// Exact probability of projecting onto the alpha-th constant-function
/// direction: s_alpha^2 / N^2 with s_alpha the alpha-th row sum.
pub fn pr_k_alpha(f: &FunctionSpec, alpha: usize) -> BigRational {
    assert!(alpha < f.m_range());
    let s = f.row_sums()[alpha] as u128;
    let n = f.n_domain() as u128;
    BigRational::new(BigInt::from(s * s), BigInt::from(n * n))
}

/// Exact probability of landing anywhere in the constant-function span
/// (constant indication or FAIL): sum_alpha s_alpha^2 / N^2.
pub fn pr_constant_subspace(f: &FunctionSpec) -> BigRational {
    let sq_sum: u128 = f.row_sums().iter().map(|&s| (s as u128) * (s as u128)).sum();
    let n = f.n_domain() as u128;
    BigRational::new(BigInt::from(sq_sum), BigInt::from(n * n))
}

/// Exact single-run likelihood of a constant indication:
/// sum_alpha s_alpha^2 / N^2 - 1/M. Non-negative for every function, with
/// equality exactly when all row sums are equal.
pub fn pr_constant_indication(f: &FunctionSpec) -> BigRational {
    let sq_sum: u128 = f.row_sums().iter().map(|&s| (s as u128) * (s as u128)).sum();
    let n = f.n_domain() as u128;
    let m = f.m_range() as u128;
    BigRational::new(
        BigInt::from(m * sq_sum) - BigInt::from(n * n),
        BigInt::from(m * n * n),
    )
}

/// The constant-indication likelihood shared by every function with the
/// given row profile: sum_l j_l * l^2 / N^2 - 1/M.
pub fn profile_constant_indication(profile: &RowProfile) -> BigRational {
    let n = profile.n_domain() as u128;
    let m = profile.m_range() as u128;
    let sq_sum: u128 = profile
        .counts()
        .iter()
        .enumerate()
        .map(|(l, &j)| (j as u128) * (l as u128) * (l as u128))
        .sum();
    BigRational::new(
        BigInt::from(m * sq_sum) - BigInt::from(n * n),
        BigInt::from(m * n * n),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_traits::{One, ToPrimitive, Zero};

    fn rational(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn state_matrix_layout() {
        let f = FunctionSpec::new(2, vec![0, 0]).unwrap();
        let mat = FunctionMatrix::from_function(&f);
        let s = 1.0 / 2f64.sqrt();
        assert_abs_diff_eq!(mat.entry(0, 0), s);
        assert_abs_diff_eq!(mat.entry(0, 1), s);
        assert_abs_diff_eq!(mat.entry(1, 0), 0.0);
        assert_abs_diff_eq!(mat.entry(1, 1), 0.0);

        let f = FunctionSpec::new(2, vec![0, 1]).unwrap();
        let mat = FunctionMatrix::from_function(&f);
        assert_abs_diff_eq!(mat.entry(0, 0), s);
        assert_abs_diff_eq!(mat.entry(1, 1), s);
        assert_abs_diff_eq!(mat.entry(0, 1), 0.0);
        assert_abs_diff_eq!(mat.entry(1, 0), 0.0);
    }

    #[test]
    fn state_matrix_is_normalized() {
        for values in [vec![0, 1, 0], vec![2, 2, 2], vec![0, 1, 2]] {
            let f = FunctionSpec::new(3, values).unwrap();
            let mat = FunctionMatrix::from_function(&f);
            assert_abs_diff_eq!(mat.frobenius_norm(), 1.0, epsilon = 1e-12);
            // one nonzero entry per column
            for n in 0..mat.n_cols() {
                let nonzero = (0..mat.m_rows()).filter(|&m| mat.entry(m, n) != 0.0).count();
                assert_eq!(nonzero, 1);
            }
        }
    }

    #[test]
    fn ftm_entries() {
        // zero phases
        for m in 0..3 {
            for n in 0..4 {
                let e = ftm_entry(0, 0, m, n, 3, 4);
                assert_abs_diff_eq!(e.re, 1.0 / 12f64.sqrt(), epsilon = 1e-15);
                assert_abs_diff_eq!(e.im, 0.0, epsilon = 1e-15);
            }
        }
        // the 2x2 "same" pattern: (1/2) * (-1)^m
        for m in 0..2 {
            for n in 0..2 {
                let e = ftm_entry(1, 0, m, n, 2, 2);
                let expected = 0.5 * if m == 0 { 1.0 } else { -1.0 };
                assert_abs_diff_eq!(e.re, expected, epsilon = 1e-12);
                assert_abs_diff_eq!(e.im, 0.0, epsilon = 1e-12);
            }
        }
        // unit-modulus phases
        for (alpha, beta, m, n) in [(2, 3, 1, 4), (4, 1, 3, 2)] {
            let e = ftm_entry(alpha, beta, m, n, 5, 6);
            assert_abs_diff_eq!(e.norm(), 1.0 / 30f64.sqrt(), epsilon = 1e-12);
        }
    }

    #[test]
    fn amplitude_conventions() {
        for (m, values) in [(2, vec![0, 1, 0]), (3, vec![2, 0, 1, 1]), (4, vec![3, 3])] {
            let f = FunctionSpec::new(m, values).unwrap();
            // FAIL amplitude is 1/sqrt(M) for every function
            let fail = amplitude(&f, FtmOutcome::new(0, 0));
            assert_abs_diff_eq!(fail.re, 1.0 / (m as f64).sqrt(), epsilon = 1e-12);
            assert_abs_diff_eq!(fail.im, 0.0, epsilon = 1e-12);
            // ERROR amplitudes vanish
            for beta in 1..f.n_domain() {
                assert!(amplitude(&f, FtmOutcome::new(0, beta)).norm() < STRUCTURAL_ZERO_TOLERANCE);
            }
        }

        // constant function: amplitude on (alpha, 0) has modulus 1/sqrt(M)
        let f = FunctionSpec::constant(5, 3, 2).unwrap();
        for alpha in 0..3 {
            let a = amplitude(&f, FtmOutcome::new(alpha, 0));
            assert_abs_diff_eq!(a.norm(), 1.0 / 3f64.sqrt(), epsilon = 1e-12);
            let expected_phase = -TAU * (alpha as f64) * 2.0 / 3.0;
            let expected = Complex64::from_polar(1.0 / 3f64.sqrt(), expected_phase);
            assert_abs_diff_eq!(a.re, expected.re, epsilon = 1e-12);
            assert_abs_diff_eq!(a.im, expected.im, epsilon = 1e-12);
        }
    }

    #[test]
    fn classification_map() {
        assert_eq!(classify_outcome(FtmOutcome::new(0, 0), 3, 4), OutcomeClass::Fail);
        assert_eq!(
            classify_outcome(FtmOutcome::new(2, 0), 3, 4),
            OutcomeClass::ConstantIndication
        );
        assert_eq!(
            classify_outcome(FtmOutcome::new(1, 1), 3, 4),
            OutcomeClass::NotConstant
        );
        assert_eq!(classify_outcome(FtmOutcome::new(0, 2), 3, 4), OutcomeClass::Error);
    }

    #[test]
    fn deutsch_distributions() {
        for value in 0..2 {
            let f = FunctionSpec::constant(2, 2, value).unwrap();
            let dist = outcome_distribution(&f);
            assert_abs_diff_eq!(dist.class_total(OutcomeClass::ConstantIndication), 0.5, epsilon = PROB_TOLERANCE);
            assert_abs_diff_eq!(dist.class_total(OutcomeClass::Fail), 0.5, epsilon = PROB_TOLERANCE);
            assert_abs_diff_eq!(dist.class_total(OutcomeClass::NotConstant), 0.0, epsilon = PROB_TOLERANCE);
            assert_abs_diff_eq!(dist.class_total(OutcomeClass::Error), 0.0, epsilon = PROB_TOLERANCE);
        }
        for values in [vec![0, 1], vec![1, 0]] {
            let f = FunctionSpec::new(2, values).unwrap();
            let dist = outcome_distribution(&f);
            assert_abs_diff_eq!(dist.class_total(OutcomeClass::NotConstant), 0.5, epsilon = PROB_TOLERANCE);
            assert_abs_diff_eq!(dist.class_total(OutcomeClass::Fail), 0.5, epsilon = PROB_TOLERANCE);
            assert_abs_diff_eq!(dist.class_total(OutcomeClass::ConstantIndication), 0.0, epsilon = PROB_TOLERANCE);
        }
    }

    #[test]
    fn permutations_never_indicate_constant() {
        for n in 2..8 {
            let f = FunctionSpec::new(n, (0..n).collect()).unwrap();
            let dist = outcome_distribution(&f);
            assert_abs_diff_eq!(
                dist.class_total(OutcomeClass::Fail),
                1.0 / n as f64,
                epsilon = PROB_TOLERANCE
            );
            assert_abs_diff_eq!(
                dist.class_total(OutcomeClass::ConstantIndication),
                0.0,
                epsilon = PROB_TOLERANCE
            );
            assert!(pr_constant_indication(&f).is_zero());
            assert_eq!(pr_constant_subspace(&f), rational(1, n as i64));
        }
    }

    #[test]
    fn rational_projection_probabilities() {
        let f = FunctionSpec::constant(4, 3, 1).unwrap();
        assert!(pr_k_alpha(&f, 1).is_one());
        assert!(pr_k_alpha(&f, 0).is_zero());
        assert!(pr_constant_subspace(&f).is_one());
        assert_eq!(pr_constant_indication(&f), rational(2, 3)); // 1 - 1/M

        // near-constant function: row sums (N-1, 1)
        let g = FunctionSpec::new(2, vec![0, 0, 0, 1]).unwrap();
        assert_eq!(pr_k_alpha(&g, 0), rational(9, 16));
        assert_eq!(pr_constant_subspace(&g), rational(10, 16));

        // the (2,1) row-sum example
        let f = FunctionSpec::new(2, vec![0, 1, 0]).unwrap();
        assert_eq!(pr_constant_indication(&f), rational(1, 18));
    }

    #[test]
    fn profile_likelihood_matches_per_function_likelihood() {
        for f in crate::function_space::enumerate_all(4, 3).unwrap() {
            assert_eq!(
                profile_constant_indication(&f.row_profile()),
                pr_constant_indication(&f)
            );
        }
    }

    #[test]
    fn complex_and_rational_paths_agree() {
        for f in crate::function_space::enumerate_all(5, 3).unwrap() {
            let float_ci: f64 = (1..3)
                .map(|alpha| amplitude(&f, FtmOutcome::new(alpha, 0)).norm_sqr())
                .sum();
            let exact = pr_constant_indication(&f).to_f64().unwrap();
            assert_abs_diff_eq!(float_ci, exact, epsilon = PROB_TOLERANCE);
        }
    }

    #[test]
    fn distribution_is_normalized() {
        for values in [vec![0, 1, 2, 0], vec![1, 1, 1, 1], vec![3, 0, 2, 1]] {
            let f = FunctionSpec::new(4, values).unwrap();
            let dist = outcome_distribution(&f);
            assert_abs_diff_eq!(dist.total(), 1.0, epsilon = PROB_TOLERANCE);
            assert!(dist.iter().all(|(_, p, _)| p >= 0.0));
            assert!(dist.class_total(OutcomeClass::Error) < STRUCTURAL_ZERO_TOLERANCE);
            assert_abs_diff_eq!(
                dist.class_total(OutcomeClass::Fail),
                0.25,
                epsilon = STRUCTURAL_ZERO_TOLERANCE
            );
        }
    }

    /// At N = M = 2 the four basis matrices coincide with the images of the
    /// four flag states |FAIL>, |SAME>, |ERROR>, |DIFFERENT> under the
    /// state-matrix encoding (global phase 1).
    #[test]
    fn two_by_two_basis_recovers_flag_states() {
        // phi(|n>|m>) puts a 1 at row m, column n; flags are products
        // (|0> +/- |1>)(|0> +/- |1>)/2 with input sign on columns, output
        // sign on rows.
        let flag = |col_sign: f64, row_sign: f64| {
            // entry (m, n) = col_sign^n * row_sign^m / 2
            move |m: usize, n: usize| {
                0.5 * col_sign.powi(n as i32) * row_sign.powi(m as i32)
            }
        };
        let fail = flag(1.0, 1.0);
        let same = flag(1.0, -1.0);
        let error = flag(-1.0, 1.0);
        let different = flag(-1.0, -1.0);

        let cases: [(usize, usize, &dyn Fn(usize, usize) -> f64); 4] = [
            (0, 0, &fail),
            (1, 0, &same),
            (0, 1, &error),
            (1, 1, &different),
        ];
        for (alpha, beta, expected) in cases {
            for m in 0..2 {
                for n in 0..2 {
                    let e = ftm_entry(alpha, beta, m, n, 2, 2);
                    assert_abs_diff_eq!(e.re, expected(m, n), epsilon = 1e-12);
                    assert_abs_diff_eq!(e.im, 0.0, epsilon = 1e-12);
                }
            }
        }
    }

    /// Once N > 2 the constant states are no longer separable: every
    /// non-constant, non-balanced function keeps a strictly positive
    /// constant-indication probability.
    #[test]
    fn constancy_is_not_exactly_decidable_beyond_two_by_two() {
        let mut positive = 0;
        for f in crate::function_space::enumerate_all(3, 2).unwrap() {
            if f.is_constant() {
                continue;
            }
            // M = 2 does not divide N = 3, so no balanced functions exist
            // and the indication probability must be positive.
            assert!(pr_constant_indication(&f) > BigRational::zero(), "f = {f}");
            positive += 1;
        }
        assert_eq!(positive, 6);
    }
}
