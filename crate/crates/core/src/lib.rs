//! Digit streams for the Champernowne constant and its run-sorted image,
//! exact and abelian window counts, the boundary cases that relate the two,
//! and the weights that normalize abelian frequencies.
//!
//! ```
//! use abelian_normal::{count_abelian, count_exact, DigitStream, Word};
//!
//! let w: Word = "12".parse().unwrap();
//! assert_eq!(count_exact(&DigitStream::C10, &w, 50).unwrap(), 3);
//! assert_eq!(count_abelian(&DigitStream::C10, &w, 50).unwrap(), 5);
//! ```

pub mod cases;
pub mod counting;
pub mod digits;
mod error;
pub mod experiments;
pub mod weight;
pub mod word;

pub use cases::{case_counts, case_hits, Case, Case2Mode, CaseOptions, ContextMode};
pub use counting::{count_abelian, count_exact, distinct_permutations, permutation_sum};
pub use digits::{BinaryRun, DigitStream, Position};
pub use error::{Error, Result};
pub use weight::{weight, CaseTag, ErrorBound, WeightValue};
pub use word::{Digit, ParikhVector, Word};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/digits.md")]
    mod digits {}
    #[doc = include_str!("../../../book/src/counting.md")]
    mod counting {}
    #[doc = include_str!("../../../book/src/cases.md")]
    mod cases {}
    #[doc = include_str!("../../../book/src/weighting.md")]
    mod weighting {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
