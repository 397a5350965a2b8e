//! Digit streams: Champernowne's constant C10, its run-sorted variant D10, and
//! literal words.
//!
//! Positions are 1-indexed past the decimal point. C10 is the concatenation
//! `1 2 3 ... 9 10 11 ...` of the positive integers. D10 is obtained from C10 by
//! replacing every maximal run of binary digits (0s and 1s) with the same run
//! sorted ascending. Non-binary digits never move, so a run occupies the same
//! positions in both constants and has the same zero and one counts.
//!
//! ```
//! use abelian_normal::DigitStream;
//!
//! let c10 = DigitStream::C10.prefix(15).unwrap();
//! let d10 = DigitStream::D10.prefix(15).unwrap();
//! assert_eq!(c10.to_string(), "123456789101112");
//! assert_eq!(d10.to_string(), "123456789011112");
//! ```

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::word::{is_binary, Digit, Word};

/// 1-indexed position past the decimal point.
pub type Position = u64;

/// A source of base-10 digits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DigitStream {
    /// Champernowne's constant.
    C10,
    /// C10 with every maximal binary run sorted ascending.
    D10,
    /// A finite word, used to exercise the run machinery on small inputs.
    Literal(Arc<[Digit]>),
}

/// A maximal run of binary digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BinaryRun {
    pub start: Position,
    pub len: u64,
    pub zeros: u64,
    pub ones: u64,
}

impl BinaryRun {
    /// Last position covered by the run.
    pub fn end(&self) -> Position {
        self.start + self.len - 1
    }

    pub fn contains(&self, p: Position) -> bool {
        p >= self.start && p <= self.end()
    }
}

/// Locates position `p` of C10: returns the integer written there and the
/// index of the digit within that integer (0 = most significant).
fn locate(p: Position) -> (u128, u32, u32) {
    debug_assert!(p >= 1);
    let mut rem = (p - 1) as u128;
    let mut width = 1u32;
    let mut block = 9u128;
    let mut first = 1u128;
    while rem >= block * width as u128 {
        rem -= block * width as u128;
        width += 1;
        block *= 10;
        first *= 10;
    }
    let number = first + rem / width as u128;
    let index = (rem % width as u128) as u32;
    (number, width, index)
}

/// Position of the first digit of the integer `k >= 1` in C10.
pub fn integer_start(k: u64) -> Position {
    let k = k.max(1) as u128;
    let mut pos = 1u128;
    let mut width = 1u128;
    let mut first = 1u128;
    while first * 10 <= k {
        pos += 9 * first * width;
        first *= 10;
        width += 1;
    }
    (pos + (k - first) * width) as Position
}

/// The digit of C10 at position `p`, in O(log p).
///
/// Panics if `p == 0`.
pub fn champernowne_digit(p: Position) -> Digit {
    assert!(p >= 1, "positions start at 1");
    let (number, width, index) = locate(p);
    let shift = 10u128.pow(width - 1 - index);
    ((number / shift) % 10) as Digit
}

/// Sequential generator of C10 digits.
///
/// The current integer is kept as a decimal digit buffer and incremented in
/// place, so each emitted digit costs amortized O(1).
#[derive(Clone, Debug)]
pub struct Champernowne {
    number: Vec<Digit>,
    index: usize,
}

impl Champernowne {
    pub fn new() -> Self {
        Champernowne {
            number: vec![1],
            index: 0,
        }
    }

    /// Generator whose first emitted digit is the one at position `p`.
    pub fn starting_at(p: Position) -> Self {
        let (number, _, index) = locate(p.max(1));
        let number = number
            .to_string()
            .bytes()
            .map(|b| b - b'0')
            .collect::<Vec<_>>();
        Champernowne {
            number,
            index: index as usize,
        }
    }

    fn increment(&mut self) {
        for d in self.number.iter_mut().rev() {
            if *d == 9 {
                *d = 0;
            } else {
                *d += 1;
                return;
            }
        }
        self.number.insert(0, 1);
    }
}

impl Default for Champernowne {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for Champernowne {
    type Item = Digit;

    #[inline]
    fn next(&mut self) -> Option<Digit> {
        if self.index == self.number.len() {
            self.increment();
            self.index = 0;
        }
        let d = self.number[self.index];
        self.index += 1;
        Some(d)
    }
}

/// Applies the run-sorting transform to a digit iterator.
///
/// Each binary run is consumed whole and replayed as its zeros followed by its
/// ones; only the two counts are held, never the run itself.
#[derive(Clone, Debug)]
pub struct Sorted<I> {
    inner: I,
    zeros: u64,
    ones: u64,
    pending: Option<Digit>,
}

impl<I: Iterator<Item = Digit>> Sorted<I> {
    pub fn new(inner: I) -> Self {
        Sorted {
            inner,
            zeros: 0,
            ones: 0,
            pending: None,
        }
    }
}

impl<I: Iterator<Item = Digit>> Iterator for Sorted<I> {
    type Item = Digit;

    #[inline]
    fn next(&mut self) -> Option<Digit> {
        if self.zeros > 0 {
            self.zeros -= 1;
            return Some(0);
        }
        if self.ones > 0 {
            self.ones -= 1;
            return Some(1);
        }
        if let Some(d) = self.pending.take() {
            return Some(d);
        }
        let first = self.inner.next()?;
        if !is_binary(first) {
            return Some(first);
        }
        let (mut zeros, mut ones) = (0u64, 0u64);
        let mut tally = |d: Digit| {
            if d == 0 {
                zeros += 1
            } else {
                ones += 1
            }
        };
        tally(first);
        for d in self.inner.by_ref() {
            if is_binary(d) {
                tally(d);
            } else {
                self.pending = Some(d);
                break;
            }
        }
        if zeros > 0 {
            self.zeros = zeros - 1;
            self.ones = ones;
            Some(0)
        } else {
            self.ones = ones - 1;
            Some(1)
        }
    }
}

/// Sorts every maximal binary run of a finite word in place of itself.
pub fn sort_runs(digits: &[Digit]) -> Vec<Digit> {
    Sorted::new(digits.iter().copied()).collect()
}

/// Iterator over the digits of a [`DigitStream`].
#[derive(Clone, Debug)]
pub enum Digits {
    C10(Champernowne),
    D10(Sorted<Champernowne>),
    Literal { digits: Arc<[Digit]>, next: usize },
}

impl Iterator for Digits {
    type Item = Digit;

    #[inline]
    fn next(&mut self) -> Option<Digit> {
        match self {
            Digits::C10(it) => it.next(),
            Digits::D10(it) => it.next(),
            Digits::Literal { digits, next } => {
                let d = digits.get(*next).copied();
                *next += 1;
                d
            }
        }
    }
}

impl DigitStream {
    pub fn literal(word: &Word) -> Self {
        DigitStream::Literal(word.digits().into())
    }

    /// Parses a literal stream from a digit string, ignoring spaces.
    pub fn parse_literal(s: &str) -> Result<Self> {
        let word: Word = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .parse()?;
        Ok(DigitStream::literal(&word))
    }

    /// Number of digits for finite streams, `None` for C10 and D10.
    pub fn finite_len(&self) -> Option<u64> {
        match self {
            DigitStream::Literal(d) => Some(d.len() as u64),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match self {
            DigitStream::C10 => "c10".into(),
            DigitStream::D10 => "d10".into(),
            DigitStream::Literal(d) => d.iter().map(|x| char::from(b'0' + x)).collect::<String>(),
        }
    }

    pub fn digits(&self) -> Digits {
        self.digits_from(1)
    }

    /// Digits starting at position `p`.
    pub fn digits_from(&self, p: Position) -> Digits {
        let p = p.max(1);
        match self {
            DigitStream::C10 => Digits::C10(Champernowne::starting_at(p)),
            DigitStream::D10 => {
                // Start σ at the beginning of the run holding p, then skip.
                let start = match DigitStream::C10.maximal_run_of(p) {
                    Some(run) => run.start,
                    None => p,
                };
                let mut it = Sorted::new(Champernowne::starting_at(start));
                if p > start {
                    it.nth((p - start - 1) as usize);
                }
                Digits::D10(it)
            }
            DigitStream::Literal(d) => Digits::Literal {
                digits: d.clone(),
                next: (p - 1) as usize,
            },
        }
    }

    /// Random access to the digit at `p`; `None` past the end of a literal.
    pub fn digit(&self, p: Position) -> Option<Digit> {
        if p == 0 {
            return None;
        }
        match self {
            DigitStream::C10 => Some(champernowne_digit(p)),
            DigitStream::D10 => {
                let d = champernowne_digit(p);
                if !is_binary(d) {
                    return Some(d);
                }
                let run = DigitStream::C10.maximal_run_of(p)?;
                Some(if p - run.start < run.zeros { 0 } else { 1 })
            }
            DigitStream::Literal(d) => d.get((p - 1) as usize).copied(),
        }
    }

    /// The first `n` digits.
    pub fn prefix(&self, n: u64) -> Result<Word> {
        self.window(1, n)
    }

    /// The `len` digits starting at position `start`.
    pub fn window(&self, start: Position, len: u64) -> Result<Word> {
        if start == 0 {
            return Err(Error::ZeroPosition);
        }
        if len == 0 {
            return Err(Error::ZeroCount);
        }
        if let Some(total) = self.finite_len() {
            if start + len - 1 > total {
                return Err(Error::PastEnd { start });
            }
        }
        Word::new(self.digits_from(start).take(len as usize).collect())
    }

    /// The run-sorting transform. C10 maps to D10; a literal maps to its
    /// run-sorted literal; D10 is a fixed point.
    pub fn sigma(&self) -> DigitStream {
        match self {
            DigitStream::C10 | DigitStream::D10 => DigitStream::D10,
            DigitStream::Literal(d) => DigitStream::Literal(sort_runs(d).into()),
        }
    }

    /// The maximal binary run containing position `p`, or `None` when the digit
    /// at `p` is not binary (or `p` is outside a finite stream).
    pub fn maximal_run_of(&self, p: Position) -> Option<BinaryRun> {
        let d = self.digit(p)?;
        if !is_binary(d) {
            return None;
        }
        let (mut zeros, mut ones) = (0u64, 0u64);
        let mut count = |d: Digit| if d == 0 { zeros += 1 } else { ones += 1 };
        count(d);
        let mut start = p;
        while start > 1 {
            match self.digit(start - 1) {
                Some(x) if is_binary(x) => {
                    count(x);
                    start -= 1;
                }
                _ => break,
            }
        }
        let mut end = p;
        while let Some(x) = self.digit(end + 1).filter(|&x| is_binary(x)) {
            count(x);
            end += 1;
        }
        Some(BinaryRun {
            start,
            len: end - start + 1,
            zeros,
            ones,
        })
    }

    /// Maximal binary run assigned to the empty word at the cut between
    /// positions `cut` and `cut + 1` (`cut = 0` is the cut before the first
    /// digit). The digit left of the cut takes precedence; otherwise the digit
    /// right of it; otherwise there is no run.
    pub fn run_at_cut(&self, cut: Position) -> Option<BinaryRun> {
        if cut >= 1 {
            if let Some(run) = self.maximal_run_of(cut) {
                return Some(run);
            }
        }
        self.maximal_run_of(cut + 1)
    }

    /// All maximal binary runs meeting positions `1..=n`, in order. A run that
    /// crosses `n` is reported with its full extent.
    pub fn binary_runs(&self, n: u64) -> Vec<BinaryRun> {
        Runs::new(self.digits())
            .take_while(|run| run.start <= n)
            .collect()
    }

    /// Digits annotated with the tallies of their enclosing binary runs.
    pub fn cells(&self) -> Cells<Digits> {
        Cells::new(self.digits())
    }
}

/// Maximal binary runs of a digit iterator that starts at position 1.
#[derive(Clone, Debug)]
pub struct Runs<I> {
    inner: I,
    pos: Position,
}

impl<I: Iterator<Item = Digit>> Runs<I> {
    pub fn new(inner: I) -> Self {
        Runs { inner, pos: 0 }
    }
}

impl<I: Iterator<Item = Digit>> Iterator for Runs<I> {
    type Item = BinaryRun;

    fn next(&mut self) -> Option<BinaryRun> {
        // Skip to the next binary digit.
        let first = loop {
            let d = self.inner.next()?;
            self.pos += 1;
            if is_binary(d) {
                break d;
            }
        };
        let mut run = BinaryRun {
            start: self.pos,
            len: 1,
            zeros: (first == 0) as u64,
            ones: (first == 1) as u64,
        };
        for d in self.inner.by_ref() {
            self.pos += 1;
            if !is_binary(d) {
                break;
            }
            run.len += 1;
            if d == 0 {
                run.zeros += 1;
            } else {
                run.ones += 1;
            }
        }
        Some(run)
    }
}

/// Counts describing the run that encloses a binary digit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunTally {
    pub zeros: u64,
    pub ones: u64,
    /// Zeros of the run at or before this digit.
    pub zeros_through: u64,
    /// Ones of the run at or before this digit.
    pub ones_through: u64,
}

/// A digit together with its run tally (`None` for non-binary digits).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cell {
    pub digit: Digit,
    pub run: Option<RunTally>,
}

/// Annotates a digit stream with run tallies. Binary runs are buffered until
/// they close, so memory is proportional to the longest run.
#[derive(Clone, Debug)]
pub struct Cells<I> {
    inner: I,
    buffer: std::collections::VecDeque<Cell>,
}

impl<I: Iterator<Item = Digit>> Cells<I> {
    pub fn new(inner: I) -> Self {
        Cells {
            inner,
            buffer: Default::default(),
        }
    }
}

impl<I: Iterator<Item = Digit>> Iterator for Cells<I> {
    type Item = Cell;

    fn next(&mut self) -> Option<Cell> {
        if let Some(cell) = self.buffer.pop_front() {
            return Some(cell);
        }
        let first = self.inner.next()?;
        if !is_binary(first) {
            return Some(Cell {
                digit: first,
                run: None,
            });
        }
        let mut run = vec![first];
        let mut terminator = None;
        for d in self.inner.by_ref() {
            if is_binary(d) {
                run.push(d);
            } else {
                terminator = Some(d);
                break;
            }
        }
        let zeros = run.iter().filter(|&&d| d == 0).count() as u64;
        let ones = run.len() as u64 - zeros;
        let (mut zt, mut ot) = (0, 0);
        for d in run {
            if d == 0 {
                zt += 1;
            } else {
                ot += 1;
            }
            self.buffer.push_back(Cell {
                digit: d,
                run: Some(RunTally {
                    zeros,
                    ones,
                    zeros_through: zt,
                    ones_through: ot,
                }),
            });
        }
        if let Some(d) = terminator {
            self.buffer.push_back(Cell {
                digit: d,
                run: None,
            });
        }
        self.buffer.pop_front()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(s: &str) -> DigitStream {
        DigitStream::parse_literal(s).unwrap()
    }

    fn run(start: u64, len: u64, zeros: u64, ones: u64) -> BinaryRun {
        BinaryRun {
            start,
            len,
            zeros,
            ones,
        }
    }

    #[test]
    fn random_access_digits() {
        assert_eq!(champernowne_digit(1), 1);
        assert_eq!(champernowne_digit(9), 9);
        assert_eq!(
            (10..=12).map(champernowne_digit).collect::<Vec<_>>(),
            vec![1, 0, 1]
        );
        assert_eq!(champernowne_digit(11), 0);
        assert_eq!(champernowne_digit(50), 3);
        // 189 digits cover 1..=99; position 190 starts "100".
        assert_eq!(champernowne_digit(189), 9);
        assert_eq!(
            (190..=192).map(champernowne_digit).collect::<Vec<_>>(),
            vec![1, 0, 0]
        );
    }

    #[test]
    fn integer_starts() {
        assert_eq!(integer_start(1), 1);
        assert_eq!(integer_start(10), 10);
        assert_eq!(integer_start(100), 190);
        assert_eq!(integer_start(1000), 2890);
        for k in [7u64, 12, 99, 101, 10415, 123_456] {
            let p = integer_start(k);
            let digits: String = Champernowne::starting_at(p)
                .take(k.to_string().len())
                .map(|d| char::from(b'0' + d))
                .collect();
            assert_eq!(digits, k.to_string());
        }
    }

    #[test]
    fn prefixes() {
        assert_eq!(
            DigitStream::C10.prefix(12).unwrap().to_string(),
            "123456789101"
        );
        assert_eq!(
            DigitStream::D10.prefix(14).unwrap().to_string(),
            "12345678901111"
        );
        assert_eq!(DigitStream::C10.prefix(1).unwrap().to_string(), "1");
        assert_eq!(DigitStream::C10.prefix(0), Err(Error::ZeroCount));
        assert!(lit("123").prefix(4).is_err());
    }

    #[test]
    fn d10_display_prefix() {
        assert_eq!(
            DigitStream::D10.prefix(50).unwrap().to_string(),
            "12345678901111213141516171819202122232425262728293"
        );
    }

    #[test]
    fn sigma_on_literals() {
        let sorted = lit("24911010010772").sigma();
        assert_eq!(sorted, lit("24900001111772"));
        assert_eq!(lit("249772").sigma(), lit("249772"));
        assert_eq!(DigitStream::C10.sigma(), DigitStream::D10);
    }

    #[test]
    fn runs_of_c10_prefix() {
        assert_eq!(
            DigitStream::C10.binary_runs(15),
            vec![run(1, 1, 0, 1), run(10, 5, 1, 4)]
        );
        assert!(lit("249").binary_runs(3).is_empty());
        assert_eq!(lit("24911010010772").binary_runs(14), vec![run(4, 8, 4, 4)]);
    }

    #[test]
    fn run_crossing_the_boundary_is_reported_whole() {
        // Positions 10..=14 hold 1,0,1,1,1; asking for n=11 still gets all five.
        assert_eq!(
            DigitStream::C10.binary_runs(11).last(),
            Some(&run(10, 5, 1, 4))
        );
    }

    #[test]
    fn maximal_runs_and_cuts() {
        assert_eq!(DigitStream::C10.maximal_run_of(11), Some(run(10, 5, 1, 4)));
        assert_eq!(DigitStream::C10.maximal_run_of(2), None);
        assert_eq!(lit("345").run_at_cut(1), None);
        assert_eq!(lit("34145").run_at_cut(3), Some(run(3, 1, 0, 1)));
        // Right neighbour is used when the left one is not binary.
        assert_eq!(lit("34145").run_at_cut(2), Some(run(3, 1, 0, 1)));
        assert_eq!(lit("1").run_at_cut(0), Some(run(1, 1, 0, 1)));
        assert_eq!(lit("01").run_at_cut(1), Some(run(1, 2, 1, 1)));
    }

    #[test]
    fn d10_random_access_matches_stream() {
        let streamed: Vec<Digit> = DigitStream::D10.digits().take(5000).collect();
        for (i, &d) in streamed.iter().enumerate() {
            assert_eq!(
                DigitStream::D10.digit(i as u64 + 1),
                Some(d),
                "position {}",
                i + 1
            );
        }
    }

    #[test]
    fn digits_from_matches_offset_stream() {
        for source in [DigitStream::C10, DigitStream::D10] {
            let all: Vec<Digit> = source.digits().take(3000).collect();
            for p in [
                1u64, 2, 10, 11, 12, 13, 189, 190, 191, 1000, 2889, 2890, 2891,
            ] {
                let from: Vec<Digit> = source.digits_from(p).take(20).collect();
                assert_eq!(
                    &from[..],
                    &all[(p - 1) as usize..(p + 19) as usize],
                    "{source:?} at {p}"
                );
            }
        }
    }

    #[test]
    fn cells_tally_runs() {
        let cells: Vec<Cell> = lit("2100140").cells().collect();
        assert_eq!(cells[0].run, None);
        let t = cells[2].run.unwrap();
        assert_eq!(
            (t.zeros, t.ones, t.zeros_through, t.ones_through),
            (2, 2, 1, 1)
        );
        let t = cells[4].run.unwrap();
        assert_eq!((t.zeros_through, t.ones_through), (2, 2));
        assert_eq!(cells[5].run, None);
        assert_eq!(cells[6].run.unwrap().zeros, 1);
        assert_eq!(cells.len(), 7);
    }

    #[test]
    fn no_ten_in_d10_prefix() {
        let digits: Vec<Digit> = DigitStream::D10.digits().take(200_000).collect();
        assert!(!digits.windows(2).any(|w| w == [1, 0]));
    }
}
