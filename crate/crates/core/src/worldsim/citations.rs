//! Bounded index of citable documents ordered by incoming citations.
//!
//! Entries stay sorted by count, descending. `above[c]` holds the number of
//! entries whose count exceeds `c`, which is also the position where the block
//! of count `c` starts. Incrementing an entry swaps it to the front of its
//! block, so every update is O(1).

use crate::rng::RngState;

pub const DEFAULT_CAPACITY: usize = 32_768;

/// Compact reference to an emitted document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DocKey {
    pub class: u8,
    pub year: i16,
    pub ordinal: u32,
}

#[derive(Debug, Clone)]
pub struct RankIndex {
    entries: Vec<(DocKey, u32)>,
    above: Vec<usize>,
    capacity: usize,
}

impl RankIndex {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity > 0);
        Self { entries: Vec::with_capacity(capacity), above: vec![0], capacity }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry at 0-based rank `r`.
    pub fn get(&self, r: usize) -> (DocKey, u32) {
        self.entries[r]
    }

    /// Adds a document with zero incoming citations, evicting a random entry
    /// of the lowest count when full.
    pub fn insert(&mut self, key: DocKey, rng: &mut RngState) {
        if self.entries.len() == self.capacity {
            let lowest = self.entries.last().expect("full index").1 as usize;
            let start = self.above[lowest];
            let victim = start + rng.index(self.entries.len() - start);
            self.entries.swap_remove(victim);
            for a in &mut self.above[..lowest] {
                *a -= 1;
            }
        }
        // zero counts sit at the end, so no bound moves
        self.entries.push((key, 0));
    }

    /// Records one incoming citation for the entry at rank `r`; returns the new
    /// rank of that document.
    pub fn increment(&mut self, r: usize) -> usize {
        let c = self.entries[r].1 as usize;
        let j = self.above[c];
        self.entries.swap(r, j);
        self.entries[j].1 += 1;
        self.above[c] += 1;
        if self.above.len() == c + 1 {
            self.above.push(0);
        }
        j
    }

    /// Zipf (s = 1) rank in `0..len` via the continuous inverse CDF.
    pub fn sample_rank(&self, rng: &mut RngState) -> usize {
        let n = self.entries.len();
        debug_assert!(n > 0);
        let r = ((n as f64 + 1.0).powf(rng.next_unit())).floor() as usize;
        r.clamp(1, n) - 1
    }

    #[cfg(test)]
    fn check(&self) {
        for w in self.entries.windows(2) {
            assert!(w[0].1 >= w[1].1);
        }
        for (c, &a) in self.above.iter().enumerate() {
            assert_eq!(a, self.entries.iter().filter(|e| e.1 as usize > c).count(), "c={c}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(i: u32) -> DocKey {
        DocKey { class: 0, year: 1950, ordinal: i }
    }

    #[test]
    fn stays_sorted_under_updates_and_eviction() {
        let mut rng = RngState::new(3);
        let mut idx = RankIndex::new(50);
        for i in 0..400 {
            idx.insert(key(i), &mut rng);
            for _ in 0..3 {
                let r = idx.sample_rank(&mut rng);
                idx.increment(r);
            }
            idx.check();
        }
        assert_eq!(idx.len(), 50);
    }

    #[test]
    fn zipf_prefers_top_ranks() {
        let mut rng = RngState::new(9);
        let mut idx = RankIndex::new(1000);
        for i in 0..1000 {
            idx.insert(key(i), &mut rng);
        }
        let mut hits = vec![0u32; 1000];
        for _ in 0..100_000 {
            hits[idx.sample_rank(&mut rng)] += 1;
        }
        assert!(hits[0] > hits[9] * 5);
        assert!(hits[0] > 8_000 && hits[0] < 12_000, "{}", hits[0]);
    }

    #[test]
    fn increment_moves_to_block_front() {
        let mut rng = RngState::new(1);
        let mut idx = RankIndex::new(10);
        for i in 0..5 {
            idx.insert(key(i), &mut rng);
        }
        assert_eq!(idx.increment(4), 0);
        assert_eq!(idx.get(0), (key(4), 1));
        assert_eq!(idx.increment(3), 1);
        assert_eq!(idx.increment(1), 0);
        idx.check();
    }
}
