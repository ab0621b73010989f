//! Problem instances: total functions f: {0..N-1} -> {0..M-1}, their row
//! structure, and uniform sampling / exhaustive enumeration over the M^N
//! function space.

use rand::Rng;

use crate::error::{Error, Result};

/// Default ceiling on M^N for exhaustive enumeration. Overridable per call
/// (and via the CLI `--cap` flag) so a stray 24^24 request fails fast
/// instead of running forever.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// A total function f: {0..N-1} -> {0..M-1}, stored densely as its N values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctionSpec {
    m_range: usize,
    values: Vec<usize>,
}

impl FunctionSpec {
    /// Builds a function from its value table. `values[n]` is f(n).
    pub fn new(m_range: usize, values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument(
                "domain size must be at least 1".into(),
            ));
        }
        if m_range == 0 {
            return Err(Error::InvalidArgument(
                "range size must be at least 1".into(),
            ));
        }
        if let Some(&v) = values.iter().find(|&&v| v >= m_range) {
            return Err(Error::InvalidArgument(format!(
                "value {v} out of range for M = {m_range}"
            )));
        }
        Ok(Self { m_range, values })
    }

    /// The constant function with the given value on a domain of size
    /// `n_domain`.
    pub fn constant(n_domain: usize, m_range: usize, value: usize) -> Result<Self> {
        Self::new(m_range, vec![value; n_domain])
    }

    /// Draws a function uniformly from the M^N function space: each value
    /// independent and uniform over {0..M-1}.
    pub fn sample_uniform<R: Rng + ?Sized>(n_domain: usize, m_range: usize, rng: &mut R) -> Self {
        assert!(n_domain >= 1 && m_range >= 1);
        let values = (0..n_domain).map(|_| rng.random_range(0..m_range)).collect();
        Self { m_range, values }
    }

    /// Strict parse of a comma-separated value list, e.g. `"0,1,0"`.
    /// N is inferred from the number of entries; out-of-range values are
    /// rejected.
    pub fn parse(literal: &str, m_range: usize) -> Result<Self> {
        if m_range == 0 {
            return Err(Error::InvalidArgument(
                "range size must be at least 1".into(),
            ));
        }
        let mut values = Vec::new();
        for token in literal.split(',') {
            let token = token.trim();
            let v: usize = token
                .parse()
                .map_err(|_| Error::Parse(format!("invalid function value {token:?}")))?;
            if v >= m_range {
                return Err(Error::Parse(format!(
                    "function value {v} out of range for M = {m_range}"
                )));
            }
            values.push(v);
        }
        Self::new(m_range, values)
    }

    /// Domain size N.
    pub fn n_domain(&self) -> usize {
        self.values.len()
    }

    /// Range size M.
    pub fn m_range(&self) -> usize {
        self.m_range
    }

    /// The value table f(0)..f(N-1).
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// f(n).
    pub fn value(&self, n: usize) -> usize {
        self.values[n]
    }

    /// True iff all values are equal. A single-point domain is constant.
    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    /// Row sums of the function's matrix: entry m counts the inputs mapped
    /// to m. The entries always sum to N.
    pub fn row_sums(&self) -> Vec<usize> {
        let mut sums = vec![0usize; self.m_range];
        for &v in &self.values {
            sums[v] += 1;
        }
        sums
    }

    /// Classifies the function by row occupancy: entry l of the result
    /// counts the rows holding exactly l ones.
    pub fn row_profile(&self) -> RowProfile {
        let n = self.n_domain();
        let mut counts = vec![0usize; n + 1];
        for s in self.row_sums() {
            counts[s] += 1;
        }
        RowProfile { counts }
    }
}

impl std::fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for v in &self.values {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// The (N+1)-tuple (j_0..j_N) counting matrix rows by their number of ones.
///
/// A valid profile satisfies
///   sum_l l * j_l = N   (one entry per column),
///   sum_l j_l = M       (one count per row),
///   0 <= j_l <= M.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowProfile {
    counts: Vec<usize>,
}

impl RowProfile {
    /// Builds a profile after checking all three tuple constraints against
    /// the given dimensions.
    pub fn new(counts: Vec<usize>, n_domain: usize, m_range: usize) -> Result<Self> {
        if counts.len() != n_domain + 1 {
            return Err(Error::InvalidArgument(format!(
                "profile must have {} entries, got {}",
                n_domain + 1,
                counts.len()
            )));
        }
        if counts.iter().any(|&j| j > m_range) {
            return Err(Error::InvalidArgument(format!(
                "profile entry exceeds M = {m_range}"
            )));
        }
        let ones: usize = counts.iter().enumerate().map(|(l, &j)| l * j).sum();
        if ones != n_domain {
            return Err(Error::InvalidArgument(format!(
                "profile places {ones} ones, expected N = {n_domain}"
            )));
        }
        let rows: usize = counts.iter().sum();
        if rows != m_range {
            return Err(Error::InvalidArgument(format!(
                "profile spans {rows} rows, expected M = {m_range}"
            )));
        }
        Ok(Self { counts })
    }

    /// The tuple entries j_0..j_N.
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// j_l: how many rows contain exactly l ones.
    pub fn count(&self, l: usize) -> usize {
        self.counts[l]
    }

    /// Domain size N the profile belongs to.
    pub fn n_domain(&self) -> usize {
        self.counts.len() - 1
    }

    /// Range size M the profile belongs to.
    pub fn m_range(&self) -> usize {
        self.counts.iter().sum()
    }

    pub(crate) fn from_counts_unchecked(counts: Vec<usize>) -> Self {
        Self { counts }
    }
}

impl std::fmt::Display for RowProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, j) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, ")")
    }
}

/// M^N if it fits in u64.
pub fn function_count(n_domain: usize, m_range: usize) -> Option<u64> {
    let m = u64::try_from(m_range).ok()?;
    let mut count: u64 = 1;
    for _ in 0..n_domain {
        count = count.checked_mul(m)?;
    }
    Some(count)
}

/// Iterates every function on the given domain and range exactly once, in
/// lexicographic order of the value tables, under the default enumeration
/// cap.
pub fn enumerate_all(n_domain: usize, m_range: usize) -> Result<FunctionIter> {
    enumerate_all_with_cap(n_domain, m_range, DEFAULT_ENUMERATION_CAP)
}

/// Like [`enumerate_all`] with an explicit cap on M^N.
pub fn enumerate_all_with_cap(n_domain: usize, m_range: usize, cap: u64) -> Result<FunctionIter> {
    if n_domain == 0 || m_range == 0 {
        return Err(Error::InvalidArgument(
            "domain and range sizes must be at least 1".into(),
        ));
    }
    match function_count(n_domain, m_range) {
        Some(count) if count <= cap => Ok(FunctionIter {
            m_range,
            next: Some(vec![0; n_domain]),
        }),
        _ => Err(Error::ResourceLimit(format!(
            "{m_range}^{n_domain} functions exceed the enumeration cap {cap}"
        ))),
    }
}

/// Lexicographic odometer over value tables.
pub struct FunctionIter {
    m_range: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for FunctionIter {
    type Item = FunctionSpec;

    fn next(&mut self) -> Option<Self::Item> {
        let current = self.next.take()?;
        let spec = FunctionSpec {
            m_range: self.m_range,
            values: current.clone(),
        };
        let mut values = current;
        for i in (0..values.len()).rev() {
            values[i] += 1;
            if values[i] < self.m_range {
                self.next = Some(values);
                return Some(spec);
            }
            values[i] = 0;
        }
        // wrapped around: enumeration finished
        Some(spec)
    }
}
