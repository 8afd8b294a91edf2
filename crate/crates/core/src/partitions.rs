//! Integer partitions in reverse-lexicographic order.
//!
//! Exact distribution builders iterate over all partitions of n, so the
//! enumeration is capped: p(90) ≈ 5.7e7 is the largest workload that stays
//! desk-scale; beyond that the caller gets a capacity error instead of an
//! open-ended grind.

use crate::error::{Error, Result};
use crate::multiset::DegreeMultiset;

/// Largest n whose partitions we agree to enumerate.
pub const PARTITION_ENUMERATION_CAP: usize = 90;

/// Iterator over all partitions of n as [`DegreeMultiset`]s, from `[n]`
/// down to `[1, 1, ..., 1]` (reverse lexicographic on the descending part
/// lists). n = 0 yields exactly the empty partition.
pub fn partitions(n: usize) -> Result<Partitions> {
    if n > PARTITION_ENUMERATION_CAP {
        return Err(Error::capacity(format!(
            "partition enumeration of n = {n} exceeds the cap {PARTITION_ENUMERATION_CAP}"
        )));
    }
    Ok(Partitions {
        parts: vec![n],
        fresh: true,
        done: false,
    })
}

pub struct Partitions {
    /// current partition, parts descending (empty only for n = 0)
    parts: Vec<usize>,
    fresh: bool,
    done: bool,
}

impl Partitions {
    /// Standard successor in reverse-lex order: shave the rightmost part
    /// that exceeds 1, then refill the freed weight greedily.
    fn advance(&mut self) {
        let mut freed = 0usize;
        while self.parts.last() == Some(&1) {
            self.parts.pop();
            freed += 1;
        }
        match self.parts.last_mut() {
            None => {
                self.done = true;
            }
            Some(last) => {
                *last -= 1;
                freed += 1;
                let cap = *last;
                while freed > cap {
                    self.parts.push(cap);
                    freed -= cap;
                }
                if freed > 0 {
                    self.parts.push(freed);
                }
            }
        }
    }
}

impl Iterator for Partitions {
    type Item = DegreeMultiset;

    fn next(&mut self) -> Option<DegreeMultiset> {
        if self.done {
            return None;
        }
        if self.fresh {
            self.fresh = false;
            // initial state for n = 0 is `[0]`, which stands for the empty
            // partition
            if self.parts == [0] {
                self.parts.clear();
                self.done = true;
                return Some(DegreeMultiset::empty());
            }
        } else {
            self.advance();
            if self.done {
                return None;
            }
        }
        Some(DegreeMultiset::from_parts(&self.parts).expect("parts are positive"))
    }
}

/// p(n): the number of partitions, by the same enumeration (test aid; the
/// distribution builders use the iterator directly).
pub fn partition_count(n: usize) -> Result<u64> {
    Ok(partitions(n)?.count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_content_for_four() {
        let got: Vec<Vec<usize>> = partitions(4).unwrap().map(|m| m.parts_desc()).collect();
        let want = vec![
            vec![4],
            vec![3, 1],
            vec![2, 2],
            vec![2, 1, 1],
            vec![1, 1, 1, 1],
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn zero_and_one() {
        let got: Vec<DegreeMultiset> = partitions(0).unwrap().collect();
        assert_eq!(got, vec![DegreeMultiset::empty()]);
        let got: Vec<Vec<usize>> = partitions(1).unwrap().map(|m| m.parts_desc()).collect();
        assert_eq!(got, vec![vec![1]]);
    }

    #[test]
    fn counts_match_known_partition_numbers() {
        // p(0..12) and two spot checks further out
        let want = [1u64, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
        for (n, &w) in want.iter().enumerate() {
            assert_eq!(partition_count(n).unwrap(), w, "p({n})");
        }
        assert_eq!(partition_count(20).unwrap(), 627);
        assert_eq!(partition_count(40).unwrap(), 37338);
    }

    #[test]
    fn every_partition_has_the_right_weight_and_is_distinct() {
        let all: Vec<DegreeMultiset> = partitions(9).unwrap().collect();
        for m in &all {
            assert_eq!(m.weight(), 9);
        }
        let dedup: std::collections::BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(dedup.len(), all.len());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(partitions(PARTITION_ENUMERATION_CAP).is_ok());
        assert!(matches!(
            partitions(PARTITION_ENUMERATION_CAP + 1),
            Err(crate::Error::Capacity(_))
        ));
    }
}
