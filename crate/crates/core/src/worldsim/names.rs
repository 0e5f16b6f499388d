//! Person names and filler text drawn from the embedded word lists.
//!
//! Names are a bijection of the author id: ids are permuted inside blocks of
//! `given × last` combinations and later blocks carry a numeric suffix.

use std::sync::OnceLock;

use crate::rng::RngState;

const GIVEN_NAMES: &str = include_str!("../../data/given_names.txt");
const LAST_NAMES: &str = include_str!("../../data/last_names.txt");
const WORDS: &str = include_str!("../../data/words.txt");

/// Coprime to every block size the lists can produce (odd, not a multiple of 5).
const PERMUTATION_STEP: u64 = 1_234_567;

struct Lists {
    given: Vec<&'static str>,
    last: Vec<&'static str>,
    words: Vec<&'static str>,
}

fn lists() -> &'static Lists {
    static LISTS: OnceLock<Lists> = OnceLock::new();
    LISTS.get_or_init(|| {
        let split = |s: &'static str| s.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        Lists { given: split(GIVEN_NAMES), last: split(LAST_NAMES), words: split(WORDS) }
    })
}

/// Display name and blank-node label of author `id`.
pub fn person_name(id: u32) -> (String, String) {
    let l = lists();
    let block = (l.given.len() * l.last.len()) as u64;
    let id = u64::from(id);
    let round = id / block;
    let idx = (id % block) * PERMUTATION_STEP % block;
    let given = l.given[(idx % l.given.len() as u64) as usize];
    let last = l.last[(idx / l.given.len() as u64) as usize];
    if round == 0 {
        (format!("{given} {last}"), format!("{given}_{last}"))
    } else {
        let n = round + 1;
        (format!("{given} {last} {n}"), format!("{given}_{last}_{n}"))
    }
}

pub fn word(rng: &mut RngState) -> &'static str {
    let w = &lists().words;
    w[rng.index(w.len())]
}

fn capitalized(w: &str) -> String {
    let mut c = w.chars();
    match c.next() {
        Some(f) => f.to_ascii_uppercase().to_string() + c.as_str(),
        None => String::new(),
    }
}

/// `n` random words separated by spaces, the first one capitalized.
pub fn sentence(rng: &mut RngState, n: usize) -> String {
    let mut out = String::new();
    for i in 0..n {
        let w = word(rng);
        if i == 0 {
            out.push_str(&capitalized(w));
        } else {
            out.push(' ');
            out.push_str(w);
        }
    }
    out
}

pub fn capitalized_word(rng: &mut RngState) -> String {
    capitalized(word(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn names_are_unique_and_ascii() {
        let mut seen = HashSet::new();
        for id in (0..200_000).chain(1_999_990..2_000_010) {
            let (name, label) = person_name(id);
            assert!(label.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_'), "{label}");
            assert_ne!(name, "Paul Erdoes");
            assert!(seen.insert(name));
        }
    }

    #[test]
    fn suffix_after_first_block() {
        let block = (lists().given.len() * lists().last.len()) as u32;
        let (a, _) = person_name(7);
        let (b, lb) = person_name(block + 7);
        assert_eq!(b, format!("{a} 2"));
        assert!(lb.ends_with("_2"));
    }

    #[test]
    fn sentence_shape() {
        let mut rng = RngState::new(1);
        let s = sentence(&mut rng, 5);
        assert_eq!(s.split(' ').count(), 5);
        assert!(s.chars().next().unwrap().is_ascii_uppercase());
    }
}
