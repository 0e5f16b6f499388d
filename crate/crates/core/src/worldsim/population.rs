//! The author population: who publishes in a year, how often, with whom, and
//! who edits.

use crate::distributions::{author_counts, awp_params, new_author_factor, DiscreteDistribution};
use crate::error::ParamError;
use crate::rng::RngState;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Author {
    pub id: u32,
    pub cumulative_pubs: u32,
    pub first_year: i16,
    pub last_year: i16,
    /// Type and name triples already written.
    pub introduced: bool,
}

/// Active authors; retired authors are dropped and never return.
#[derive(Debug, Clone, Default)]
pub struct Population {
    pub authors: Vec<Author>,
    next_id: u32,
}

/// Per-paper author lists of one year, stored flat.
#[derive(Debug, Clone, Default)]
pub struct Authorship {
    offsets: Vec<u32>,
    filled: Vec<u16>,
    slots: Vec<u32>,
}

impl Authorship {
    /// Pool indices of the authors of paper `p`, in assignment order.
    pub fn authors(&self, p: usize) -> &[u32] {
        let start = self.offsets[p] as usize;
        &self.slots[start..start + self.filled[p] as usize]
    }

    pub fn papers(&self) -> usize {
        self.filled.len()
    }
}

/// Chance that an author with `x` papers this year reuses a coauthor's paper.
pub fn repeat_probability(x: u32) -> f64 {
    (1.0 - f64::from(x.max(1)).powf(-0.19)).min(0.9)
}

impl Population {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.authors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.authors.is_empty()
    }

    pub fn next_id(&self) -> u32 {
        self.next_id
    }

    /// Draws per-author publication counts for `slots` author slots spread
    /// over `papers` papers. Returns `(pool index, count)` sorted by count,
    /// descending; returning authors take the largest counts and new authors
    /// (appended to the pool) the smallest.
    pub fn choose_publishing_authors(
        &mut self,
        yr: i32,
        slots: u64,
        max_per_paper: u32,
        papers: u32,
        publications: f64,
        rng: &mut RngState,
    ) -> Result<Vec<(u32, u32)>, ParamError> {
        if slots == 0 || papers == 0 {
            return Ok(Vec::new());
        }
        let (distinct, _) = author_counts(yr, slots as f64)?;
        let d = ((distinct + 0.5).floor() as u64).clamp(u64::from(max_per_paper).max(1), slots);
        let new_target = ((new_author_factor(yr) * d as f64) + 0.5).floor() as u64;
        let returning = (d - new_target.min(d)).min(self.authors.len() as u64) as usize;
        let d = d as usize;

        let dist = DiscreteDistribution::powerlaw(awp_params(yr, publications))?;
        let mut counts: Vec<u32> = (0..d).map(|_| dist.sample(rng).min(papers)).collect();
        reconcile(&mut counts, slots, papers, rng);
        counts.sort_unstable_by(|a, b| b.cmp(a));

        let mut chosen = self.weighted_sample(returning, rng);
        chosen.sort_unstable_by(|&a, &b| {
            let (x, y) = (&self.authors[a as usize], &self.authors[b as usize]);
            y.cumulative_pubs.cmp(&x.cumulative_pubs).then(x.id.cmp(&y.id))
        });
        for _ in returning..d {
            chosen.push(self.authors.len() as u32);
            self.authors.push(Author {
                id: self.next_id,
                cumulative_pubs: 0,
                first_year: yr as i16,
                last_year: yr as i16,
                introduced: false,
            });
            self.next_id += 1;
        }
        Ok(chosen.into_iter().zip(counts).collect())
    }

    /// `k` distinct pool indices, weighted by `cumulative_pubs + 1`
    /// (Efraimidis-Spirakis keys).
    fn weighted_sample(&self, k: usize, rng: &mut RngState) -> Vec<u32> {
        if k == 0 {
            return Vec::new();
        }
        let mut keys: Vec<(f64, u32)> = self
            .authors
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let u = 1.0 - rng.next_unit();
                (u.ln() / f64::from(a.cumulative_pubs + 1), i as u32)
            })
            .collect();
        let cmp = |a: &(f64, u32), b: &(f64, u32)| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1));
        if k < keys.len() {
            keys.select_nth_unstable_by(k - 1, cmp);
            keys.truncate(k);
        }
        keys.sort_unstable_by(cmp);
        keys.into_iter().map(|(_, i)| i).collect()
    }

    /// Fills papers with `targets[p]` author slots from `publishing`, moving
    /// through authors by descending count and preferring papers of earlier
    /// coauthors. An author never appears twice on one paper.
    pub fn assign_coauthors(targets: &[u16], publishing: &[(u32, u32)], rng: &mut RngState) -> Authorship {
        const CLOSED: u32 = u32::MAX;
        let mut offsets = Vec::with_capacity(targets.len() + 1);
        let mut total = 0u32;
        for &t in targets {
            offsets.push(total);
            total += u32::from(t);
        }
        offsets.push(total);
        let mut slots = vec![0u32; total as usize];
        let mut filled = vec![0u16; targets.len()];
        let mut open: Vec<u32> = (0..targets.len() as u32).filter(|&p| targets[p as usize] > 0).collect();
        let mut open_pos = vec![CLOSED; targets.len()];
        for (i, &p) in open.iter().enumerate() {
            open_pos[p as usize] = i as u32;
        }
        // papers of every processed author, flat
        let mut papers_of: Vec<u32> = Vec::new();
        let mut papers_off: Vec<u32> = vec![0];

        let mut mine: Vec<u32> = Vec::new();
        for (ai, &(_, count)) in publishing.iter().enumerate() {
            mine.clear();
            let p_repeat = repeat_probability(count);
            for _ in 0..count {
                if open.is_empty() {
                    break;
                }
                let mut chosen = None;
                if !mine.is_empty() && rng.next_unit() < p_repeat {
                    for _ in 0..4 {
                        let paper = mine[rng.index(mine.len())] as usize;
                        let co = slots[offsets[paper] as usize + rng.index(filled[paper] as usize)] as usize;
                        if co == ai {
                            continue;
                        }
                        let theirs = &papers_of[papers_off[co] as usize..papers_off[co + 1] as usize];
                        let cand = theirs[rng.index(theirs.len())];
                        if open_pos[cand as usize] != CLOSED && !mine.contains(&cand) {
                            chosen = Some(cand);
                            break;
                        }
                    }
                }
                if chosen.is_none() {
                    for _ in 0..8 {
                        let cand = open[rng.index(open.len())];
                        if !mine.contains(&cand) {
                            chosen = Some(cand);
                            break;
                        }
                    }
                }
                if chosen.is_none() {
                    chosen = open.iter().copied().find(|c| !mine.contains(c));
                }
                let Some(paper) = chosen else { break };
                let p = paper as usize;
                slots[(offsets[p] + u32::from(filled[p])) as usize] = ai as u32;
                filled[p] += 1;
                if filled[p] == targets[p] {
                    let pos = open_pos[p] as usize;
                    open.swap_remove(pos);
                    if pos < open.len() {
                        open_pos[open[pos] as usize] = pos as u32;
                    }
                    open_pos[p] = CLOSED;
                }
                mine.push(paper);
            }
            papers_of.extend_from_slice(&mine);
            papers_off.push(papers_of.len() as u32);
        }
        for s in &mut slots {
            *s = publishing[*s as usize].0;
        }
        Authorship { offsets, filled, slots }
    }

    /// Adds this year's papers to the authors' records.
    pub fn record(&mut self, yr: i32, authorship: &Authorship) {
        for p in 0..authorship.papers() {
            for &a in authorship.authors(p) {
                let author = &mut self.authors[a as usize];
                author.cumulative_pubs += 1;
                author.last_year = yr as i16;
            }
        }
    }

    /// Cumulative weights `cumulative_pubs + 1` for editor sampling.
    pub fn editor_weights(&self) -> Vec<u64> {
        let mut acc = 0u64;
        self.authors
            .iter()
            .map(|a| {
                acc += u64::from(a.cumulative_pubs) + 1;
                acc
            })
            .collect()
    }

    /// Up to `m` distinct editors drawn proportionally to `cumulative_pubs + 1`.
    pub fn choose_editors(&self, prefix: &[u64], m: u32, rng: &mut RngState, out: &mut Vec<u32>) {
        out.clear();
        let Some(&total) = prefix.last() else { return };
        let m = (m as usize).min(prefix.len());
        let mut tries = 0;
        while out.len() < m && tries < 20 * m {
            tries += 1;
            let u = (rng.next_unit() * total as f64) as u64;
            let idx = prefix.partition_point(|&c| c <= u).min(prefix.len() - 1) as u32;
            if !out.contains(&idx) {
                out.push(idx);
            }
        }
    }

    /// Keeps at most `2 * distinct` authors, retiring the least recently
    /// publishing ones (ties by id).
    pub fn retire(&mut self, distinct: usize) -> usize {
        let keep = 2 * distinct;
        if self.authors.len() <= keep {
            return 0;
        }
        let k = self.authors.len() - keep;
        let mut order: Vec<(i16, u32, u32)> = self.authors.iter().enumerate().map(|(i, a)| (a.last_year, a.id, i as u32)).collect();
        order.select_nth_unstable(k - 1);
        let mut retired = vec![false; self.authors.len()];
        for &(_, _, i) in &order[..k] {
            retired[i as usize] = true;
        }
        let mut i = 0;
        self.authors.retain(|_| {
            let r = retired[i];
            i += 1;
            !r
        });
        k
    }
}

/// Adjusts `counts` to sum to `slots`, each count in `[1, cap]`. Increments
/// pick a random existing slot's owner (rich get richer), decrements pick a
/// random author with more than one publication.
fn reconcile(counts: &mut [u32], slots: u64, cap: u32, rng: &mut RngState) {
    let mut sum: u64 = counts.iter().map(|&c| u64::from(c)).sum();
    if sum < slots {
        let mut units: Vec<u32> = Vec::with_capacity(slots as usize);
        for (i, &c) in counts.iter().enumerate() {
            units.extend(std::iter::repeat_n(i as u32, c as usize));
        }
        let mut misses = 0;
        while sum < slots {
            let owner = if misses < 16 {
                units[rng.index(units.len())] as usize
            } else {
                match counts.iter().position(|&c| c < cap) {
                    Some(i) => i,
                    None => break,
                }
            };
            if counts[owner] < cap {
                counts[owner] += 1;
                units.push(owner as u32);
                sum += 1;
                misses = 0;
            } else {
                misses += 1;
            }
        }
    } else if sum > slots {
        let mut multi: Vec<u32> = (0..counts.len() as u32).filter(|&i| counts[i as usize] > 1).collect();
        while sum > slots && !multi.is_empty() {
            let pos = rng.index(multi.len());
            let i = multi[pos] as usize;
            counts[i] -= 1;
            sum -= 1;
            if counts[i] == 1 {
                multi.swap_remove(pos);
            }
        }
    }
}
