//! Integer partitions, distinct-part partitions and their statistics.
//!
//! Parts are stored nonincreasing. Both streams enumerate in
//! lexicographically descending order starting from the one-part partition
//! `(n)`, and are generated lazily: `P(60)` has close to a million members.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Default ceiling on `n` for full enumeration.
pub const DEFAULT_ENUMERATION_LIMIT: u32 = 200;

/// Smallest part, largest part, number of parts and number of distinct part
/// sizes of a nonempty partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionStats {
    pub smallest: u32,
    pub largest: u32,
    pub num_parts: u32,
    pub num_distinct: u32,
}

impl PartitionStats {
    /// Statistics of a nonincreasing slice of positive parts, `None` when
    /// the slice is empty.
    pub fn of_parts(parts: &[u32]) -> Option<Self> {
        let (&largest, &smallest) = (parts.first()?, parts.last()?);
        let num_distinct = 1 + parts.windows(2).filter(|w| w[0] != w[1]).count() as u32;
        Some(PartitionStats {
            smallest,
            largest,
            num_parts: parts.len() as u32,
            num_distinct,
        })
    }

    /// True when every part occurs once.
    pub fn is_distinct(&self) -> bool {
        self.num_parts == self.num_distinct
    }
}

/// A partition of `n` with parts held in nonincreasing order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
    n: u32,
    stats: Option<PartitionStats>,
}

impl Partition {
    /// Builds a partition from parts already in nonincreasing order.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Usage(format!("partition parts must be positive: {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Usage(format!("partition parts must be nonincreasing: {parts:?}")));
        }
        Ok(Self::from_sorted_unchecked(parts))
    }

    /// Builds a partition from parts in any order.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Self::from_sorted_unchecked(Vec::new())
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<u32>) -> Self {
        let n = parts.iter().sum();
        let stats = PartitionStats::of_parts(&parts);
        Partition { parts, n, stats }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_distinct(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }

    /// Statistics of the partition. The empty partition has none.
    pub fn stats(&self) -> Result<PartitionStats> {
        self.stats
            .ok_or_else(|| Error::Usage("statistics are undefined on the empty partition".into()))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("()");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

/// Returns the statistics of `p`; errors on the empty partition.
pub fn stats(p: &Partition) -> Result<PartitionStats> {
    p.stats()
}

fn check_limit(n: u32, limit: u32) -> Result<()> {
    if n > limit {
        return Err(Error::Range(format!(
            "enumeration of n = {n} exceeds the configured limit {limit}"
        )));
    }
    Ok(())
}

/// Lazy stream over every partition of `n`.
#[derive(Clone, Debug)]
pub struct Partitions {
    n: u32,
    parts: Vec<u32>,
    started: bool,
    done: bool,
}

impl Partitions {
    fn new(n: u32) -> Self {
        Partitions { n, parts: Vec::new(), started: false, done: false }
    }

    /// Advances to the next partition and borrows its parts without
    /// allocating.
    pub fn advance(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.n > 0 {
                self.parts.push(self.n);
            }
            return Some(&self.parts);
        }
        let mut rem = 0;
        while self.parts.last() == Some(&1) {
            self.parts.pop();
            rem += 1;
        }
        let Some(last) = self.parts.last_mut() else {
            self.done = true;
            return None;
        };
        *last -= 1;
        let bound = *last;
        rem += 1;
        while rem > 0 {
            let x = bound.min(rem);
            self.parts.push(x);
            rem -= x;
        }
        Some(&self.parts)
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        self.advance().map(|p| Partition::from_sorted_unchecked(p.to_vec()))
    }
}

/// Lazy stream over the partitions of `n` into distinct parts.
#[derive(Clone, Debug)]
pub struct DistinctPartitions {
    n: u32,
    parts: Vec<u32>,
    started: bool,
    done: bool,
}

impl DistinctPartitions {
    fn new(n: u32) -> Self {
        DistinctPartitions { n, parts: Vec::new(), started: false, done: false }
    }

    pub fn advance(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.n > 0 {
                self.parts.push(self.n);
            }
            return Some(&self.parts);
        }
        // Lower the rightmost part that can be lowered while the remainder
        // still fits into distinct parts below it.
        let mut suffix: u64 = 0;
        for i in (0..self.parts.len()).rev() {
            let current = self.parts[i];
            suffix += u64::from(current);
            let v = current - 1;
            if v == 0 {
                continue;
            }
            let rem = suffix - u64::from(v);
            if rem > u64::from(v) * u64::from(v - 1) / 2 {
                continue;
            }
            self.parts.truncate(i);
            self.parts.push(v);
            let (mut rem, mut bound) = (rem as u32, v - 1);
            while rem > 0 {
                let x = bound.min(rem);
                self.parts.push(x);
                rem -= x;
                bound = x - 1;
            }
            return Some(&self.parts);
        }
        self.done = true;
        None
    }
}

impl Iterator for DistinctPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        self.advance().map(|p| Partition::from_sorted_unchecked(p.to_vec()))
    }
}

/// Every partition of `n`, lexicographically descending. `n = 0` yields the
/// empty partition once.
pub fn enumerate_partitions(n: u32) -> Result<Partitions> {
    enumerate_partitions_with_limit(n, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_partitions_with_limit(n: u32, limit: u32) -> Result<Partitions> {
    check_limit(n, limit)?;
    Ok(Partitions::new(n))
}

/// Every partition of `n` into distinct parts, lexicographically descending.
pub fn enumerate_distinct(n: u32) -> Result<DistinctPartitions> {
    enumerate_distinct_with_limit(n, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_distinct_with_limit(n: u32, limit: u32) -> Result<DistinctPartitions> {
    check_limit(n, limit)?;
    Ok(DistinctPartitions::new(n))
}

/// `p(n)` by Euler's pentagonal recurrence.
pub fn partition_count(n: u32) -> BigUint {
    partition_counts_upto(n).pop().expect("table has n + 1 entries")
}

/// `[p(0), p(1), ..., p(n)]`.
pub fn partition_counts_upto(n: u32) -> Vec<BigUint> {
    let n = n as usize;
    // Signed accumulation; p(m) itself is never negative.
    let mut table: Vec<num_bigint::BigInt> = Vec::with_capacity(n + 1);
    table.push(One::one());
    for m in 1..=n {
        let mut acc = num_bigint::BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let plus = k % 2 == 1;
            for g in [g1, g2] {
                if g <= m {
                    if plus {
                        acc += &table[m - g];
                    } else {
                        acc -= &table[m - g];
                    }
                }
            }
        }
        table.push(acc);
    }
    table
        .into_iter()
        .map(|v| v.to_biguint().expect("partition numbers are nonnegative"))
        .collect()
}

/// Number of partitions of `n` with exactly `t` distinct part sizes.
///
/// Counted by a dynamic program over part sizes, so it scales to `n` far
/// beyond the enumeration limit.
pub fn count_exact_part_sizes(n: u32, t: u32) -> BigUint {
    if t == 0 {
        return if n == 0 { BigUint::one() } else { BigUint::zero() };
    }
    if u64::from(t) * u64::from(t + 1) / 2 > u64::from(n) {
        return BigUint::zero();
    }
    let (n, t) = (n as usize, t as usize);
    // ways[k][m]: partitions of m using exactly k sizes among those seen so far.
    let mut ways = vec![vec![BigUint::zero(); n + 1]; t + 1];
    ways[0][0] = BigUint::one();
    for size in 1..=n {
        for k in (1..=t).rev() {
            for m in (size..=n).rev() {
                let mut added = BigUint::zero();
                let mut used = size;
                while used <= m {
                    added += &ways[k - 1][m - used];
                    used += size;
                }
                ways[k][m] += added;
            }
        }
    }
    std::mem::take(&mut ways[t][n])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(items: impl Iterator<Item = Partition>) -> Vec<String> {
        items.map(|p| p.to_string()).collect()
    }

    #[test]
    fn small_streams() {
        assert_eq!(render(enumerate_partitions(1).unwrap()), ["1"]);
        assert_eq!(render(enumerate_partitions(3).unwrap()), ["3", "2+1", "1+1+1"]);
        assert_eq!(render(enumerate_distinct(3).unwrap()), ["3", "2+1"]);
        assert_eq!(render(enumerate_distinct(6).unwrap()), ["6", "5+1", "4+2", "3+2+1"]);
        assert_eq!(render(enumerate_distinct(1).unwrap()), ["1"]);
    }

    #[test]
    fn zero_yields_the_empty_partition() {
        let all: Vec<_> = enumerate_partitions(0).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_empty());
        assert!(all[0].stats().is_err());
    }

    #[test]
    fn guard_rejects_large_n() {
        assert!(matches!(enumerate_partitions(201), Err(Error::Range(_))));
        assert!(matches!(enumerate_distinct(201), Err(Error::Range(_))));
        assert!(enumerate_partitions_with_limit(250, 300).is_ok());
    }

    #[test]
    fn stats_read_off_parts() {
        let p = Partition::new(vec![3, 2, 1]).unwrap();
        let s = p.stats().unwrap();
        assert_eq!((s.smallest, s.largest, s.num_parts, s.num_distinct), (1, 3, 3, 3));
        let p = Partition::new(vec![2, 2, 1, 1]).unwrap();
        let s = p.stats().unwrap();
        assert_eq!((s.smallest, s.largest, s.num_parts, s.num_distinct), (1, 2, 4, 2));
        let p = Partition::new(vec![4; 5]).unwrap();
        let s = p.stats().unwrap();
        assert_eq!((s.smallest, s.largest, s.num_distinct), (4, 4, 1));
    }

    #[test]
    fn construction_validates() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(Partition::from_unsorted(vec![1, 3, 2]).unwrap().parts(), &[3, 2, 1]);
    }

    #[test]
    fn counts() {
        assert_eq!(partition_count(0), BigUint::from(1u32));
        assert_eq!(partition_count(5), BigUint::from(7u32));
        assert_eq!(count_exact_part_sizes(6, 1), BigUint::from(4u32));
        assert_eq!(count_exact_part_sizes(6, 2), BigUint::from(6u32));
        assert_eq!(count_exact_part_sizes(5, 3), BigUint::zero());
        assert_eq!(count_exact_part_sizes(6, 3), BigUint::one());
    }

    #[test]
    fn stream_size_matches_pentagonal_count_at_60() {
        let mut stream = enumerate_partitions(60).unwrap();
        let mut count = 0u64;
        while stream.advance().is_some() {
            count += 1;
        }
        assert_eq!(BigUint::from(count), partition_count(60));
    }
}
