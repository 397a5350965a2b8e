//! Finite digit words and their Parikh vectors.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A decimal digit, stored as its numeric value `0..=9`.
pub type Digit = u8;

#[inline]
pub fn is_binary(d: Digit) -> bool {
    d <= 1
}

/// A nonempty finite word over the decimal digits.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Digit>);

impl Word {
    pub fn new(digits: Vec<Digit>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::EmptyWord);
        }
        if let Some(&d) = digits.iter().find(|&&d| d > 9) {
            return Err(Error::InvalidDigit(char::from(b'0'.wrapping_add(d))));
        }
        Ok(Word(digits))
    }

    /// Builds a word from digits already known to be valid. Panics on an empty
    /// slice or a value above 9.
    pub fn from_digits(digits: &[Digit]) -> Self {
        Word::new(digits.to_vec()).expect("valid digit slice")
    }

    pub fn digits(&self) -> &[Digit] {
        &self.0
    }

    pub fn into_digits(self) -> Vec<Digit> {
        self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn parikh(&self) -> ParikhVector {
        ParikhVector::of(&self.0)
    }

    pub fn is_binary(&self) -> bool {
        self.0.iter().all(|&d| is_binary(d))
    }

    pub fn has_binary(&self) -> bool {
        self.0.iter().any(|&d| is_binary(d))
    }

    pub fn has_nonbinary(&self) -> bool {
        self.0.iter().any(|&d| !is_binary(d))
    }

    /// At least one binary and at least one non-binary digit.
    pub fn is_mixed(&self) -> bool {
        self.has_binary() && self.has_nonbinary()
    }

    /// True when `other` is a rearrangement of `self`.
    pub fn is_permutation_of(&self, other: &Word) -> bool {
        self.len() == other.len() && self.parikh() == other.parikh()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as Digit)
                    .ok_or(Error::InvalidDigit(c))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(digits)
    }
}

/// Per-digit occurrence counts of a word.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ParikhVector([u64; 10]);

impl ParikhVector {
    pub fn of(digits: &[Digit]) -> Self {
        let mut counts = [0u64; 10];
        for &d in digits {
            counts[d as usize] += 1;
        }
        ParikhVector(counts)
    }

    pub fn count(&self, d: Digit) -> u64 {
        self.0[d as usize]
    }

    pub fn counts(&self) -> &[u64; 10] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn zeros(&self) -> u64 {
        self.0[0]
    }

    pub fn ones(&self) -> u64 {
        self.0[1]
    }

    /// Counts of the digits 2 through 9.
    pub fn nonbinary(&self) -> [u64; 8] {
        let mut out = [0; 8];
        out.copy_from_slice(&self.0[2..]);
        out
    }

    pub fn add(&mut self, d: Digit) {
        self.0[d as usize] += 1;
    }

    pub fn remove(&mut self, d: Digit) {
        self.0[d as usize] -= 1;
    }
}

impl fmt::Debug for ParikhVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (d, &c) in self.0.iter().enumerate() {
            if c > 0 {
                map.entry(&d, &c);
            }
        }
        map.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(pairs: &[(Digit, u64)]) -> ParikhVector {
        let mut counts = [0; 10];
        for &(d, c) in pairs {
            counts[d as usize] = c;
        }
        ParikhVector(counts)
    }

    #[test]
    fn parikh_examples() {
        let w: Word = "4501140".parse().unwrap();
        assert_eq!(w.parikh(), pv(&[(0, 2), (1, 2), (4, 2), (5, 1)]));
        assert_eq!(
            "12".parse::<Word>().unwrap().parikh(),
            pv(&[(1, 1), (2, 1)])
        );
        assert_eq!("11".parse::<Word>().unwrap().parikh(), pv(&[(1, 2)]));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!("".parse::<Word>(), Err(Error::EmptyWord));
        assert_eq!("12a".parse::<Word>(), Err(Error::InvalidDigit('a')));
        assert!(Word::new(vec![3, 10]).is_err());
    }

    #[test]
    fn classification() {
        let w: Word = "4501140".parse().unwrap();
        assert!(w.is_mixed());
        assert!("0110".parse::<Word>().unwrap().is_binary());
        assert!(!"2345".parse::<Word>().unwrap().has_binary());
        assert_eq!(w.to_string(), "4501140");
    }

    #[test]
    fn permutation_iff_equal_parikh() {
        let a: Word = "4501140".parse().unwrap();
        let b: Word = "5441100".parse().unwrap();
        let c: Word = "0040045".parse().unwrap();
        assert!(a.is_permutation_of(&b));
        assert!(!a.is_permutation_of(&c));
        assert_eq!(a.parikh().nonbinary(), c.parikh().nonbinary());
    }
}
