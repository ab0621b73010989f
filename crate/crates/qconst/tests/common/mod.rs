//! Independent oracles shared by the integration suites. These re-derive
//! quantities from first principles, staying off the library's primary
//! computation paths.
#![allow(dead_code)] // each test target uses its own subset

use num_complex::Complex64;
use qconst::ftm::{ftm_entry, FtmOutcome, FunctionMatrix};
use qconst::FunctionSpec;

/// Projection amplitude computed the long way: materialize the state
/// matrix and the basis matrix and take the trace product
/// Tr(FTM^dagger * F). The library's amplitude() never builds either
/// matrix.
pub fn trace_product_amplitude(f: &FunctionSpec, outcome: FtmOutcome) -> Complex64 {
    let state = FunctionMatrix::from_function(f);
    let m_range = f.m_range();
    let n_domain = f.n_domain();
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 0..m_range {
        for n in 0..n_domain {
            acc += ftm_entry(outcome.alpha, outcome.beta, m, n, m_range, n_domain).conj()
                * state.entry(m, n);
        }
    }
    acc
}

/// Admissible profiles found by scanning the full (M+1)^(N+1) tuple grid
/// against the three constraints; feasible only for tiny N, M.
pub fn profiles_by_tuple_scan(n_domain: usize, m_range: usize) -> Vec<Vec<usize>> {
    let mut found = Vec::new();
    let mut tuple = vec![0usize; n_domain + 1];
    loop {
        let ones: usize = tuple.iter().enumerate().map(|(l, &j)| l * j).sum();
        let rows: usize = tuple.iter().sum();
        if ones == n_domain && rows == m_range {
            found.push(tuple.clone());
        }
        // odometer over 0..=M per position
        let mut pos = n_domain + 1;
        while pos > 0 {
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] <= m_range {
                break;
            }
            tuple[pos] = 0;
            if pos == 0 {
                return found;
            }
        }
    }
}

/// Partition counting by a recurrence over the largest part, independent
/// of both the library's generation and its coin-change counter:
/// p(n, k) = p(n - k, k) + p(n, k - 1).
pub fn partition_count_recursive(n: usize, max_part: usize) -> u128 {
    fn count(n: usize, k: usize, memo: &mut std::collections::HashMap<(usize, usize), u128>) -> u128 {
        if n == 0 {
            return 1;
        }
        if k == 0 {
            return 0;
        }
        if let Some(&v) = memo.get(&(n, k)) {
            return v;
        }
        let with_k = if k <= n { count(n - k, k, memo) } else { 0 };
        let without = count(n, k - 1, memo);
        let v = with_k + without;
        memo.insert((n, k), v);
        v
    }
    // partitions into at most M parts = partitions with parts <= M
    count(n, max_part, &mut std::collections::HashMap::new())
}
