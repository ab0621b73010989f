//! Row-profile enumeration and exact multiplicities.
//!
//! A profile (j_0..j_N) is admissible when sum_l l*j_l = N and
//! sum_l j_l = M with every j_l in 0..=M. Dropping j_0 (which is forced to
//! M minus the number of occupied rows), admissible profiles are exactly
//! the integer partitions of N into at most M parts, so enumeration
//! generates partitions instead of scanning the full tuple grid.
//!
//! Each profile is shared by
//!   C = N! / prod_l (l!)^{j_l}  *  M! / prod_l j_l!
//! functions: the first factor counts column arrangements, the second row
//! permutations. All arithmetic here is exact; no floating point.

use std::sync::Mutex;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::function_space::RowProfile;

/// A row profile together with the exact number of functions sharing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileMultiplicity {
    pub profile: RowProfile,
    pub count: BigUint,
}

static FACTORIALS: Mutex<Vec<BigUint>> = Mutex::new(Vec::new());

/// n! from a lazily extended shared table.
pub fn factorial(n: usize) -> BigUint {
    let mut table = FACTORIALS.lock().unwrap();
    if table.is_empty() {
        table.push(BigUint::one());
    }
    while table.len() <= n {
        let next = table.last().unwrap() * BigUint::from(table.len());
        table.push(next);
    }
    table[n].clone()
}

/// Every admissible profile for the given dimensions, exactly once, in
/// canonical order: lexicographically descending on (j_N,...,j_1), which is
/// the largest-part-first partition order.
pub fn enumerate_profiles(n_domain: usize, m_range: usize) -> Vec<RowProfile> {
    assert!(n_domain >= 1 && m_range >= 1);
    let mut profiles = Vec::new();
    let mut parts = Vec::new();
    descend(n_domain, n_domain, m_range, &mut parts, &mut |parts| {
        let mut counts = vec![0usize; n_domain + 1];
        for &p in parts {
            counts[p] += 1;
        }
        counts[0] = m_range - parts.len();
        profiles.push(RowProfile::from_counts_unchecked(counts));
    });
    profiles
}

fn descend(
    remaining: usize,
    max_part: usize,
    parts_left: usize,
    parts: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if remaining == 0 {
        emit(parts);
        return;
    }
    if parts_left == 0 {
        return;
    }
    for part in (1..=remaining.min(max_part)).rev() {
        parts.push(part);
        descend(remaining - part, part, parts_left - 1, parts, emit);
        parts.pop();
    }
}

/// Exact number of functions whose matrix realizes the given profile.
pub fn multiplicity(profile: &RowProfile, n_domain: usize, m_range: usize) -> Result<BigUint> {
    // re-validate: the profile may come from outside enumerate_profiles
    RowProfile::new(profile.counts().to_vec(), n_domain, m_range).map_err(|_| {
        Error::InvalidArgument(format!(
            "profile {profile} violates the tuple constraints for N={n_domain}, M={m_range}"
        ))
    })?;

    let mut numerator = factorial(n_domain) * factorial(m_range);
    let mut denominator = BigUint::one();
    for (l, &j) in profile.counts().iter().enumerate() {
        denominator *= factorial(l).pow(j as u32);
        denominator *= factorial(j);
    }
    let remainder = &numerator % &denominator;
    debug_assert!(remainder == BigUint::ZERO, "multiplicity must divide evenly");
    numerator /= denominator;
    Ok(numerator)
}

/// All profiles with their multiplicities, in canonical order.
pub fn profile_multiplicities(n_domain: usize, m_range: usize) -> Vec<ProfileMultiplicity> {
    enumerate_profiles(n_domain, m_range)
        .into_iter()
        .map(|profile| {
            let count = multiplicity(&profile, n_domain, m_range)
                .expect("enumerated profiles satisfy the constraints");
            ProfileMultiplicity { profile, count }
        })
        .collect()
}

/// True iff the multiplicities over all profiles sum to exactly M^N.
pub fn check_total(n_domain: usize, m_range: usize) -> bool {
    let total: BigUint = profile_multiplicities(n_domain, m_range)
        .into_iter()
        .map(|pm| pm.count)
        .sum();
    total == BigUint::from(m_range).pow(n_domain as u32)
}

/// Number of partitions of n into at most `max_parts` parts, by the bounded
/// coin-change recurrence (counting partitions with parts <= max_parts,
/// which is the same number by conjugation). Independent of
/// [`enumerate_profiles`]; used to cross-check it.
pub fn partition_count_at_most(n: usize, max_parts: usize) -> u128 {
    let mut table = vec![0u128; n + 1];
    table[0] = 1;
    for part in 1..=max_parts.min(n) {
        for total in part..=n {
            table[total] += table[total - part];
        }
    }
    table[n]
}
