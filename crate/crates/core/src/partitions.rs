//! Integer partitions, hook lengths and the brute-force core counts.
//!
//! Everything here works directly on Ferrers diagrams and is deliberately
//! naive: it is the ground truth the faster lattice counts are checked
//! against.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Default largest `n` the brute-force enumerator accepts.
pub const DEFAULT_ORACLE_BOUND: u64 = 70;

/// A partition stored as weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Builds a partition from arbitrary parts: they are sorted into weakly
    /// decreasing order and zero parts are dropped.
    pub fn new(mut parts: Vec<u64>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Number of non-zero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0) as usize;
        let mut cols = vec![0u64; width];
        for &p in &self.parts {
            for c in cols.iter_mut().take(p as usize) {
                *c += 1;
            }
        }
        Partition { parts: cols }
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.conjugate() == *self
    }

    pub fn hook_table(&self) -> HookTable {
        let conj = self.conjugate();
        let mut entries = BTreeMap::new();
        for (j, &row) in self.parts.iter().enumerate() {
            for k in 0..row as usize {
                // h(j,k) = lambda_j + lambda'_k - k - j + 1 with 1-based j,k
                let h = row as i64 + conj.parts[k] as i64 - (k as i64 + 1) - (j as i64 + 1) + 1;
                entries.insert((j + 1, k + 1), h as u64);
            }
        }
        HookTable { entries }
    }

    pub fn is_t_core(&self, t: u32) -> bool {
        assert!(t >= 1, "t must be positive");
        self.hook_table().values().all(|h| h % t as u64 != 0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Hook lengths keyed by 1-indexed `(row, column)` cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookTable {
    entries: BTreeMap<(usize, usize), u64>,
}

impl HookTable {
    pub fn get(&self, row: usize, col: usize) -> Option<u64> {
        self.entries.get(&(row, col)).copied()
    }

    pub fn cells(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(&c, &h)| (c, h))
    }

    pub fn values(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.values().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The table with rows and columns swapped.
    pub fn transpose(&self) -> HookTable {
        HookTable {
            entries: self.entries.iter().map(|(&(j, k), &h)| ((k, j), h)).collect(),
        }
    }
}

pub fn conjugate(p: &Partition) -> Partition {
    p.conjugate()
}

pub fn hook_table(p: &Partition) -> HookTable {
    p.hook_table()
}

pub fn is_t_core(p: &Partition, t: u32) -> bool {
    p.is_t_core(t)
}

/// Partitions of `n` in lexicographically descending order.
#[derive(Debug)]
pub struct Partitions {
    current: Option<Vec<u64>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let out = Partition { parts: cur.clone() };
        self.current = successor(cur);
        Some(out)
    }
}

// Next partition in descending lexicographic order.
fn successor(mut parts: Vec<u64>) -> Option<Vec<u64>> {
    let mut ones = 0u64;
    while parts.last() == Some(&1) {
        parts.pop();
        ones += 1;
    }
    let last = parts.pop()?;
    let k = last - 1;
    let mut rem = ones + 1;
    parts.push(k);
    while rem > 0 {
        let take = rem.min(k);
        parts.push(take);
        rem -= take;
    }
    Some(parts)
}

/// Enumerates partitions of `n`, refusing sizes above the default oracle bound.
pub fn enumerate_partitions(n: u64) -> Result<Partitions> {
    enumerate_partitions_bounded(n, DEFAULT_ORACLE_BOUND)
}

pub fn enumerate_partitions_bounded(n: u64, bound: u64) -> Result<Partitions> {
    if n > bound {
        return Err(Error::OracleBound { n, bound });
    }
    let first = if n == 0 { Vec::new() } else { vec![n] };
    Ok(Partitions { current: Some(first) })
}

pub fn count_t_cores_brute(n: u64, t: u32) -> Result<u64> {
    Ok(enumerate_partitions(n)?.filter(|p| p.is_t_core(t)).count() as u64)
}

pub fn count_sc_t_cores_brute(n: u64, t: u32) -> Result<u64> {
    Ok(enumerate_partitions(n)?
        .filter(|p| p.is_self_conjugate() && p.is_t_core(t))
        .count() as u64)
}

/// Partition numbers `p(0..=n)` from Euler's pentagonal recurrence; used
/// only to sanity-check the enumerator.
pub fn partition_numbers(n: usize) -> Vec<u128> {
    let mut p = vec![0u128; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut acc: i128 = 0;
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[m - g1] as i128;
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                acc += sign * p[m - g2] as i128;
            }
            k += 1;
        }
        p[m] = acc as u128;
    }
    p
}
