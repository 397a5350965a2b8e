//! Exact and abelian occurrence counting over digit streams.
//!
//! A window counts at cutoff `n` when it ends at or before position `n`;
//! overlapping windows each count.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::digits::{DigitStream, Position};
use crate::error::{Error, Result};
use crate::word::{Digit, Word};

/// An online recognizer fed one digit at a time. `push` returns true when the
/// window ending at the digit just pushed is an occurrence.
pub trait WindowMatcher {
    fn window_len(&self) -> usize;
    fn push(&mut self, d: Digit) -> bool;
}

/// Knuth-Morris-Pratt automaton for one pattern.
#[derive(Clone, Debug)]
pub struct ExactMatcher {
    pattern: Vec<Digit>,
    fail: Vec<usize>,
    state: usize,
}

impl ExactMatcher {
    pub fn new(pattern: &Word) -> Self {
        let p = pattern.digits().to_vec();
        let mut fail = vec![0; p.len()];
        let mut k = 0;
        for i in 1..p.len() {
            while k > 0 && p[i] != p[k] {
                k = fail[k - 1];
            }
            if p[i] == p[k] {
                k += 1;
            }
            fail[i] = k;
        }
        ExactMatcher {
            pattern: p,
            fail,
            state: 0,
        }
    }
}

impl WindowMatcher for ExactMatcher {
    fn window_len(&self) -> usize {
        self.pattern.len()
    }

    #[inline]
    fn push(&mut self, d: Digit) -> bool {
        if self.state == self.pattern.len() {
            self.state = self.fail[self.state - 1];
        }
        while self.state > 0 && self.pattern[self.state] != d {
            self.state = self.fail[self.state - 1];
        }
        if self.pattern[self.state] == d {
            self.state += 1;
        }
        self.state == self.pattern.len()
    }
}

/// Sliding-window Parikh matcher. `mismatched` tracks how many digits have a
/// window count different from the target, so each step is O(1).
#[derive(Clone, Debug)]
pub struct AbelianMatcher {
    target: [u64; 10],
    counts: [u64; 10],
    mismatched: usize,
    ring: Vec<Digit>,
    head: usize,
    filled: usize,
}

impl AbelianMatcher {
    pub fn new(pattern: &Word) -> Self {
        let target = *pattern.parikh().counts();
        AbelianMatcher {
            target,
            counts: [0; 10],
            mismatched: target.iter().filter(|&&c| c > 0).count(),
            ring: vec![0; pattern.len()],
            head: 0,
            filled: 0,
        }
    }

    #[inline]
    fn bump(&mut self, d: Digit, up: bool) {
        let i = d as usize;
        let before = self.counts[i] == self.target[i];
        if up {
            self.counts[i] += 1;
        } else {
            self.counts[i] -= 1;
        }
        let after = self.counts[i] == self.target[i];
        match (before, after) {
            (true, false) => self.mismatched += 1,
            (false, true) => self.mismatched -= 1,
            _ => {}
        }
    }
}

impl WindowMatcher for AbelianMatcher {
    fn window_len(&self) -> usize {
        self.ring.len()
    }

    #[inline]
    fn push(&mut self, d: Digit) -> bool {
        if self.filled == self.ring.len() {
            let old = self.ring[self.head];
            self.bump(old, false);
        } else {
            self.filled += 1;
        }
        self.ring[self.head] = d;
        self.head = (self.head + 1) % self.ring.len();
        self.bump(d, true);
        self.filled == self.ring.len() && self.mismatched == 0
    }
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::ZeroCount)
    } else {
        Ok(())
    }
}

/// Counts matches of `matcher` among windows ending at positions `1..=n`.
pub fn count_with<M: WindowMatcher>(s: &DigitStream, mut matcher: M, n: u64) -> u64 {
    s.digits()
        .take(n as usize)
        .filter(|&d| matcher.push(d))
        .count() as u64
}

/// Counts at each cutoff of a strictly increasing grid, in one pass.
pub fn count_with_grid<M: WindowMatcher>(
    s: &DigitStream,
    mut matcher: M,
    grid: &[u64],
) -> Result<Vec<u64>> {
    if grid.is_empty() || grid.windows(2).any(|g| g[0] >= g[1]) || grid[0] == 0 {
        return Err(Error::BadGrid);
    }
    let mut out = Vec::with_capacity(grid.len());
    let mut hits = 0u64;
    let mut pos = 0u64;
    let mut digits = s.digits();
    for &cut in grid {
        while pos < cut {
            let Some(d) = digits.next() else { break };
            pos += 1;
            hits += matcher.push(d) as u64;
        }
        out.push(hits);
    }
    Ok(out)
}

/// Occurrences of `e` in the first `n` digits of `s` (the exact count `A`).
pub fn count_exact(s: &DigitStream, e: &Word, n: u64) -> Result<u64> {
    check_n(n)?;
    Ok(count_with(s, ExactMatcher::new(e), n))
}

/// Occurrences of `e` or any permutation of `e` in the first `n` digits of `s`
/// (the abelian count `B`).
pub fn count_abelian(s: &DigitStream, e: &Word, n: u64) -> Result<u64> {
    check_n(n)?;
    Ok(count_with(s, AbelianMatcher::new(e), n))
}

pub fn count_abelian_grid(s: &DigitStream, e: &Word, grid: &[u64]) -> Result<Vec<u64>> {
    count_with_grid(s, AbelianMatcher::new(e), grid)
}

pub fn count_exact_grid(s: &DigitStream, e: &Word, grid: &[u64]) -> Result<Vec<u64>> {
    count_with_grid(s, ExactMatcher::new(e), grid)
}

/// Range-parallel counting. Window end positions are split into chunks; each
/// chunk re-reads `len - 1` digits of overlap and counts only the windows whose
/// end it owns, so every window is attributed exactly once.
pub fn count_par<M, F>(s: &DigitStream, make: F, n: u64, chunk: u64) -> u64
where
    M: WindowMatcher,
    F: Fn() -> M + Sync,
{
    let len = make().window_len() as u64;
    let n = match s.finite_len() {
        Some(total) => n.min(total),
        None => n,
    };
    if n < len {
        return 0;
    }
    let chunk = chunk.max(1);
    let ranges: Vec<(Position, Position)> = (len..=n)
        .step_by(chunk as usize)
        .map(|lo| (lo, (lo + chunk - 1).min(n)))
        .collect();
    ranges
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut matcher = make();
            let first = lo + 1 - len;
            let mut hits = 0;
            for (offset, d) in s
                .digits_from(first)
                .take((hi - first + 1) as usize)
                .enumerate()
            {
                let end = first + offset as u64;
                if matcher.push(d) && end >= lo {
                    hits += 1;
                }
            }
            hits
        })
        .sum()
}

pub fn count_abelian_par(s: &DigitStream, e: &Word, n: u64) -> Result<u64> {
    check_n(n)?;
    Ok(count_par(s, || AbelianMatcher::new(e), n, par_chunk(n)))
}

pub fn count_exact_par(s: &DigitStream, e: &Word, n: u64) -> Result<u64> {
    check_n(n)?;
    Ok(count_par(s, || ExactMatcher::new(e), n, par_chunk(n)))
}

fn par_chunk(n: u64) -> u64 {
    let threads = rayon::current_num_threads() as u64;
    (n / (4 * threads).max(1)).max(1 << 16)
}

/// All distinct rearrangements of `w` in lexicographic order.
pub fn distinct_permutations(w: &Word) -> Vec<Word> {
    let mut digits = w.digits().to_vec();
    digits.sort_unstable();
    let mut out = vec![Word::from_digits(&digits)];
    while next_permutation(&mut digits) {
        out.push(Word::from_digits(&digits));
    }
    out
}

fn next_permutation(v: &mut [Digit]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v
        .iter()
        .rposition(|&x| x > v[i])
        .expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Exact counts of several equal-length patterns in one pass.
///
/// Windows of up to 19 digits are keyed by their decimal value, which is
/// injective at fixed length. Longer patterns fall back to one automaton each.
pub fn count_each_exact(s: &DigitStream, patterns: &[Word], n: u64) -> Result<Vec<u64>> {
    check_n(n)?;
    let Some(len) = patterns.first().map(Word::len) else {
        return Ok(Vec::new());
    };
    if patterns.iter().any(|p| p.len() != len) {
        return Err(Error::Precondition("patterns must share one length".into()));
    }
    if len > 19 {
        return Ok(patterns
            .iter()
            .map(|p| count_with(s, ExactMatcher::new(p), n))
            .collect());
    }
    let key_of = |digits: &[Digit]| digits.iter().fold(0u64, |k, &d| k * 10 + d as u64);
    let mut index: HashMap<u64, Vec<usize>> = HashMap::new();
    for (i, p) in patterns.iter().enumerate() {
        index.entry(key_of(p.digits())).or_default().push(i);
    }
    let modulus = 10u64.pow(len as u32 - 1);
    let mut counts = vec![0u64; patterns.len()];
    let mut key = 0u64;
    for (i, d) in s.digits().take(n as usize).enumerate() {
        key = (key % modulus) * 10 + d as u64;
        if i + 1 >= len {
            if let Some(slots) = index.get(&key) {
                for &slot in slots {
                    counts[slot] += 1;
                }
            }
        }
    }
    Ok(counts)
}

/// Sum of exact counts over all distinct permutations of `e`.
pub fn permutation_sum(s: &DigitStream, e: &Word, n: u64) -> Result<u64> {
    Ok(count_each_exact(s, &distinct_permutations(e), n)?
        .iter()
        .sum())
}
