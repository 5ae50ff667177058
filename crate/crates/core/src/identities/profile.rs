//! Statistic histograms of `D(n)` and `P(n)`.
//!
//! Every weight in the identities depends on a partition only through a
//! few statistics, so each stream is enumerated once and folded into a
//! histogram keyed by those statistics.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::partition::{enumerate_distinct_with_limit, enumerate_partitions_with_limit};

/// `D(n)` folded by `(smallest, largest)`, each bucket holding
/// `sum (-1)^{#parts - 1}` over its members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinctProfile {
    pub n: u32,
    pub signed: BTreeMap<(u32, u32), i64>,
}

/// `P(n)` folded by `(largest, distinct part sizes)` into member counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionProfile {
    pub n: u32,
    pub counts: BTreeMap<(u32, u32), u64>,
}

pub fn distinct_profile(n: u32, limit: u32) -> Result<DistinctProfile> {
    let mut signed = BTreeMap::new();
    let mut stream = enumerate_distinct_with_limit(n, limit)?;
    while let Some(parts) = stream.advance() {
        let Some((&largest, &smallest)) = parts.first().zip(parts.last()) else {
            continue;
        };
        let sign = if parts.len() % 2 == 1 { 1 } else { -1 };
        *signed.entry((smallest, largest)).or_insert(0) += sign;
    }
    signed.retain(|_, v| *v != 0);
    Ok(DistinctProfile { n, signed })
}

pub fn partition_profile(n: u32, limit: u32) -> Result<PartitionProfile> {
    let mut counts = BTreeMap::new();
    let mut stream = enumerate_partitions_with_limit(n, limit)?;
    while let Some(parts) = stream.advance() {
        let Some(&largest) = parts.first() else {
            continue;
        };
        let distinct = 1 + parts.windows(2).filter(|w| w[0] != w[1]).count() as u32;
        *counts.entry((largest, distinct)).or_insert(0) += 1;
    }
    Ok(PartitionProfile { n, counts })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profiles_of_six() {
        // D(6) = {6, 5+1, 4+2, 3+2+1}
        let d = distinct_profile(6, 200).unwrap();
        let want: BTreeMap<_, _> = [((6, 6), 1), ((1, 5), -1), ((2, 4), -1), ((1, 3), 1)].into();
        assert_eq!(d.signed, want);
        let p = partition_profile(6, 200).unwrap();
        assert_eq!(p.counts.values().sum::<u64>(), 11);
        // one-size partitions of 6 are the divisors 1, 2, 3, 6
        assert_eq!(p.counts.iter().filter(|((_, nu), _)| *nu == 1).count(), 4);
    }
}
