//! Fixed-capacity bitset over `0..=max_value`.
//!
//! Used for achievable-sum sets and sieve witnesses, where the universe is
//! `{0, 1, ..., n}` for a polynomial/permutation size n. Shift-or is the hot
//! operation (subset-sum DP), so it gets a word-level implementation.

/// Set of integers in `0..=max_value`, packed 64 per word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitSet {
    max_value: usize,
    words: Vec<u64>,
}

impl BitSet {
    /// Empty set over the universe `0..=max_value`.
    pub fn empty(max_value: usize) -> BitSet {
        BitSet {
            max_value,
            words: vec![0; max_value / 64 + 1],
        }
    }

    pub fn max_value(&self) -> usize {
        self.max_value
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v <= self.max_value, "value {v} outside universe");
        self.words[v / 64] |= 1u64 << (v % 64);
    }

    pub fn contains(&self, v: usize) -> bool {
        v <= self.max_value && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// `self |= self << k`, truncated to the universe. The core subset-sum
    /// step: after it, every old sum s also appears as s + k.
    pub fn or_shift_up(&mut self, k: usize) {
        if k > self.max_value {
            return;
        }
        let (wshift, bshift) = (k / 64, (k % 64) as u32);
        let n = self.words.len();
        // Walk downward so shifted-in words are still the originals.
        for i in (wshift..n).rev() {
            let mut v = self.words[i - wshift] << bshift;
            if bshift != 0 && i > wshift {
                v |= self.words[i - wshift - 1] >> (64 - bshift);
            }
            self.words[i] |= v;
        }
        self.mask_tail();
    }

    /// Intersection in place.
    pub fn and_assign(&mut self, other: &BitSet) {
        assert_eq!(self.max_value, other.max_value, "universe mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    /// Union in place.
    pub fn or_assign(&mut self, other: &BitSet) {
        assert_eq!(self.max_value, other.max_value, "universe mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    /// The set `{ v + s : v in self, 0 <= s <= slack }`, truncated.
    pub fn smeared_up(&self, slack: usize) -> BitSet {
        let mut out = self.clone();
        // Doubling: after adding shifts 1, 2, 4, ... every offset <= slack
        // is reachable as a sum of applied shifts.
        let mut covered = 0usize;
        let mut step = 1usize;
        while covered < slack {
            let take = step.min(slack - covered);
            let mut shifted = out.clone();
            shifted.or_shift_up(take);
            out.or_assign(&shifted);
            covered += take;
            step *= 2;
        }
        out
    }

    /// Is any element of `lo..=hi` present?
    pub fn any_in_range(&self, lo: usize, hi: usize) -> bool {
        let hi = hi.min(self.max_value);
        (lo..=hi).any(|v| self.contains(v))
    }

    /// Ascending iterator over elements.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..=self.max_value).filter(|&v| self.contains(v))
    }

    fn mask_tail(&mut self) {
        let used = self.max_value % 64 + 1;
        if used < 64 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << used) - 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_len() {
        let mut s = BitSet::empty(130);
        for v in [0, 63, 64, 65, 130] {
            s.insert(v);
        }
        assert!(s.contains(0) && s.contains(64) && s.contains(130));
        assert!(!s.contains(1) && !s.contains(129));
        assert_eq!(s.len(), 5);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 63, 64, 65, 130]);
    }

    #[test]
    fn shift_matches_naive() {
        // {0, 3, 70} |<<5 gives {0, 3, 5, 8, 70, 75}
        let mut s = BitSet::empty(100);
        for v in [0, 3, 70] {
            s.insert(v);
        }
        s.or_shift_up(5);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 3, 5, 8, 70, 75]);
    }

    #[test]
    fn shift_truncates_at_universe() {
        let mut s = BitSet::empty(10);
        s.insert(8);
        s.or_shift_up(5); // 13 falls off the end
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![8]);
        s.or_shift_up(2);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![8, 10]);
    }

    #[test]
    fn shift_across_word_boundary() {
        let mut s = BitSet::empty(200);
        s.insert(60);
        s.or_shift_up(10);
        assert!(s.contains(70));
        s.or_shift_up(64);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![60, 70, 124, 134]);
    }

    #[test]
    fn smear_covers_every_offset() {
        let mut s = BitSet::empty(40);
        s.insert(10);
        s.insert(30);
        let sm = s.smeared_up(7);
        let want: Vec<usize> = (10..=17).chain(30..=37).collect();
        assert_eq!(sm.iter().collect::<Vec<_>>(), want);
        // slack 0 is the identity
        assert_eq!(s.smeared_up(0), s);
    }

    #[test]
    fn range_query() {
        let mut s = BitSet::empty(50);
        s.insert(20);
        assert!(s.any_in_range(10, 20));
        assert!(s.any_in_range(20, 49));
        assert!(!s.any_in_range(21, 50));
        assert!(!s.any_in_range(0, 19));
        // range clipped past the universe is fine
        assert!(s.any_in_range(15, 5000));
    }
}
