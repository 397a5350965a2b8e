//! Boundary contexts and the two classes of windows whose abelian status
//! changes between C10 and D10.
//!
//! Let `w` be a pattern with at least one binary and one non-binary digit and
//! let `v` be a window of C10 of the same length. Write `c1` for the longest
//! binary prefix of `v`, `c2` for its longest binary suffix, and `d1`, `d2` for
//! the maximal runs of C10 containing them. Because `v` holds a non-binary
//! digit, every binary run strictly inside `v` is complete, so sorting moves
//! digits only within `v`. The runs `d1` and `d2` may stick out of the window,
//! and sorting them changes which binary digits land on `c1` and `c2`:
//!
//! * the image of `c1` (a suffix of `d1`) holds `min(1_{d1}, |c1|)` ones;
//! * the image of `c2` (a prefix of `d2`) holds `min(0_{d2}, |c2|)` zeros.
//!
//! * **Case 1** counts windows of C10 that are permutations of `w` whose image
//!   in D10 is not.
//! * **Case 2** counts windows of C10 that are not permutations of `w` but
//!   whose image in D10 is.
//!
//! The binary digits of `w` not supplied by the interior of `v` must be
//! supplied by the images of `c1` and `c2`. For a window that is a permutation
//! of `w`, that demand equals the binary content of `c1` and `c2` themselves.

use crate::digits::{BinaryRun, Cell, DigitStream, Position};
use crate::error::{Error, Result};
use crate::word::{is_binary, Digit, ParikhVector, Word};

/// How much of the run `d2` to the right of a window is visible.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ContextMode {
    /// Runs are followed past the window end until they close.
    #[default]
    Full,
    /// `d2` is cut at the window end and digits to the right are never read.
    /// Under this convention `w = 4501140` has exactly one Case 1 window
    /// ending by 40972 and one Case 2 window ending by 39123.
    WindowLeft,
}

/// What "v differs from w" means for Case 2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Case2Mode {
    /// `v` is not a permutation of `w`.
    #[default]
    Parikh,
    /// `v` and `w` differ as strings.
    Literal,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct CaseOptions {
    pub context: ContextMode,
    pub case2: Case2Mode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    One,
    Two,
}

/// The binary pieces at either end of a window and their maximal runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryContext {
    pub c1: Vec<Digit>,
    pub c2: Vec<Digit>,
    pub d1: Option<BinaryRun>,
    pub d2: Option<BinaryRun>,
}

/// The four numbers the case predicates actually read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Tally {
    c1_len: u64,
    c2_len: u64,
    d1_ones: u64,
    d2_zeros: u64,
}

impl Tally {
    /// Zeros and ones that sorting places on `c1` and `c2` together.
    fn sigma_boundary(&self) -> (u64, u64) {
        let ones1 = self.d1_ones.min(self.c1_len);
        let zeros2 = self.d2_zeros.min(self.c2_len);
        (self.c1_len - ones1 + zeros2, self.c2_len - zeros2 + ones1)
    }
}

impl BoundaryContext {
    fn tally(&self) -> Tally {
        Tally {
            c1_len: self.c1.len() as u64,
            c2_len: self.c2.len() as u64,
            d1_ones: self.d1.map_or(0, |r| r.ones),
            d2_zeros: self.d2.map_or(0, |r| r.zeros),
        }
    }

    /// `(zeros, ones)` of the sorted image of `c1`.
    pub fn sigma_c1(&self) -> (u64, u64) {
        let t = self.tally();
        let ones = t.d1_ones.min(t.c1_len);
        (t.c1_len - ones, ones)
    }

    /// `(zeros, ones)` of the sorted image of `c2`.
    pub fn sigma_c2(&self) -> (u64, u64) {
        let t = self.tally();
        let zeros = t.d2_zeros.min(t.c2_len);
        (zeros, t.c2_len - zeros)
    }
}

/// Lengths of the binary prefix and suffix of a window, or `None` when the
/// window is all binary.
pub fn split_boundary(v: &[Digit]) -> Option<(usize, usize)> {
    let a = v.iter().take_while(|&&d| is_binary(d)).count();
    if a == v.len() {
        return None;
    }
    let b = v.iter().rev().take_while(|&&d| is_binary(d)).count();
    Some((a, b))
}

/// Boundary context of the window `i..i+len-1` of `s`, following runs past
/// the window in both directions.
pub fn boundary_context(s: &DigitStream, i: Position, len: usize) -> Result<BoundaryContext> {
    boundary_context_with(s, i, len, ContextMode::Full)
}

pub fn boundary_context_with(
    s: &DigitStream,
    i: Position,
    len: usize,
    mode: ContextMode,
) -> Result<BoundaryContext> {
    let v = s.window(i, len as u64)?;
    let (a, b) = split_boundary(v.digits()).ok_or(Error::AllBinaryWindow { start: i, len })?;
    let end = i + len as u64 - 1;
    let d1 = if a > 0 {
        s.maximal_run_of(i)
    } else {
        s.run_at_cut(i - 1)
    };
    let d2 = match mode {
        ContextMode::Full if b > 0 => s.maximal_run_of(end),
        ContextMode::Full => s.run_at_cut(end),
        ContextMode::WindowLeft if b > 0 => {
            let run = s
                .maximal_run_of(end)
                .expect("window ends in a binary digit");
            let seen = s.window(run.start, end - run.start + 1)?.parikh();
            Some(BinaryRun {
                start: run.start,
                len: end - run.start + 1,
                zeros: seen.zeros(),
                ones: seen.ones(),
            })
        }
        ContextMode::WindowLeft => None,
    };
    let digits = v.digits();
    Ok(BoundaryContext {
        c1: digits[..a].to_vec(),
        c2: digits[len - b..].to_vec(),
        d1,
        d2,
    })
}

/// `(zeros, ones)` of `w` minus those of the interior of `v`; negative when
/// the interior already carries more than `w` has.
fn demand(w: &ParikhVector, v: &[Digit], a: usize, b: usize) -> (i64, i64) {
    let interior = ParikhVector::of(&v[a..v.len() - b]);
    (
        w.zeros() as i64 - interior.zeros() as i64,
        w.ones() as i64 - interior.ones() as i64,
    )
}

fn classify(w: &Word, wp: &ParikhVector, v: &[Digit], t: Tally, mode: Case2Mode) -> Option<Case> {
    let vp = ParikhVector::of(v);
    if vp.nonbinary() != wp.nonbinary() || v.len() != w.len() {
        return None;
    }
    let (a, b) = (t.c1_len as usize, t.c2_len as usize);
    let (dz, do_) = demand(wp, v, a, b);
    let (sz, so) = t.sigma_boundary();
    let balanced = dz == sz as i64 && do_ == so as i64;
    if vp != *wp {
        // Different Parikh vectors differ as strings too, so both modes agree.
        return balanced.then_some(Case::Two);
    }
    if !balanced && (a > 0 || b > 0) {
        Some(Case::One)
    } else if mode == Case2Mode::Literal && balanced && v != w.digits() {
        Some(Case::Two)
    } else {
        None
    }
}

fn check_context(v: &Word, ctx: &BoundaryContext) -> Result<()> {
    let (a, b) = split_boundary(v.digits())
        .ok_or_else(|| Error::Precondition(format!("window {v} has no non-binary digit")))?;
    let d = v.digits();
    if ctx.c1 != d[..a] || ctx.c2 != d[d.len() - b..] {
        return Err(Error::Precondition(format!(
            "context pieces do not match the window {v}"
        )));
    }
    Ok(())
}

/// Case 1 test for an occurrence `occ` (a permutation of `w`) with context
/// `ctx`: at least one boundary piece is nonempty, and sorting leaves the
/// boundary pieces with a different zero or one count than `w` needs there.
pub fn case1_predicate(w: &Word, ctx: &BoundaryContext, occ: &Word) -> Result<bool> {
    if !w.is_mixed() {
        return Err(Error::NotMixed(w.to_string()));
    }
    if !occ.is_permutation_of(w) {
        return Err(Error::Precondition(format!(
            "{occ} is not a permutation of {w}"
        )));
    }
    check_context(occ, ctx)?;
    Ok(classify(w, &w.parikh(), occ.digits(), ctx.tally(), Case2Mode::Parikh) == Some(Case::One))
}

/// Case 2 test for a window `v`: same length and non-binary counts as `w`,
/// `v` differs from `w` in the sense of `mode`, and sorting gives the boundary
/// pieces exactly the binary digits `w` needs there.
pub fn case2_predicate(w: &Word, v: &Word, ctx: &BoundaryContext, mode: Case2Mode) -> Result<bool> {
    if !w.is_mixed() {
        return Err(Error::NotMixed(w.to_string()));
    }
    check_context(v, ctx)?;
    Ok(classify(w, &w.parikh(), v.digits(), ctx.tally(), mode) == Some(Case::Two))
}

fn check_pattern(w: &Word, n: u64) -> Result<()> {
    if !w.is_mixed() {
        return Err(Error::NotMixed(w.to_string()));
    }
    if n < w.len() as u64 {
        return Err(Error::PrefixTooShort { n, len: w.len() });
    }
    Ok(())
}

/// Streams the windows of `s` ending at positions `len..=n` and reports every
/// Case 1 and Case 2 window by its end position.
///
/// Windows are prefiltered on their non-binary counts with an O(1) sliding
/// update; only windows matching `w` there are inspected further.
pub fn scan_cases_in<F>(
    s: &DigitStream,
    w: &Word,
    n: u64,
    opts: CaseOptions,
    mut hit: F,
) -> Result<()>
where
    F: FnMut(Case, Position),
{
    check_pattern(w, n)?;
    let len = w.len();
    let wp = w.parikh();
    let target = wp.nonbinary();
    let mut counts = [0u64; 8];
    let mut mismatched = target.iter().filter(|&&c| c > 0).count();
    let bump = |counts: &mut [u64; 8], mismatched: &mut usize, d: Digit, up: bool| {
        if is_binary(d) {
            return;
        }
        let i = d as usize - 2;
        let before = counts[i] == target[i];
        if up {
            counts[i] += 1;
        } else {
            counts[i] -= 1;
        }
        match (before, counts[i] == target[i]) {
            (true, false) => *mismatched += 1,
            (false, true) => *mismatched -= 1,
            _ => {}
        }
    };
    let mut ring: Vec<Cell> = Vec::with_capacity(len);
    let mut head = 0;
    let mut window: Vec<Cell> = Vec::with_capacity(len);
    let mut digits: Vec<Digit> = Vec::with_capacity(len);
    for (idx, cell) in s.cells().take(n as usize).enumerate() {
        let pos = idx as u64 + 1;
        if ring.len() < len {
            ring.push(cell);
        } else {
            bump(&mut counts, &mut mismatched, ring[head].digit, false);
            ring[head] = cell;
            head = (head + 1) % len;
        }
        bump(&mut counts, &mut mismatched, cell.digit, true);
        if ring.len() < len || mismatched != 0 {
            continue;
        }
        window.clear();
        window.extend(ring[head..].iter().chain(&ring[..head]));
        digits.clear();
        digits.extend(window.iter().map(|c| c.digit));
        let Some((a, b)) = split_boundary(&digits) else {
            continue;
        };
        let tally = Tally {
            c1_len: a as u64,
            c2_len: b as u64,
            d1_ones: if a > 0 {
                window[0].run.map_or(0, |r| r.ones)
            } else {
                0
            },
            d2_zeros: if b > 0 {
                let r = window[len - 1].run.expect("binary digit carries a run");
                match opts.context {
                    ContextMode::Full => r.zeros,
                    ContextMode::WindowLeft => r.zeros_through,
                }
            } else {
                0
            },
        };
        if let Some(case) = classify(w, &wp, &digits, tally, opts.case2) {
            hit(case, pos);
        }
    }
    Ok(())
}

/// End positions of Case 1 and Case 2 windows within the first `n` digits.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CaseHits {
    pub case1: Vec<Position>,
    pub case2: Vec<Position>,
}

pub fn case_hits(w: &Word, n: u64, opts: CaseOptions) -> Result<CaseHits> {
    let mut hits = CaseHits::default();
    scan_cases_in(&DigitStream::C10, w, n, opts, |case, end| match case {
        Case::One => hits.case1.push(end),
        Case::Two => hits.case2.push(end),
    })?;
    Ok(hits)
}

/// `(𝒞_w(C10, n), 𝒟_w(C10, n))` from a single pass.
pub fn case_counts(w: &Word, n: u64, opts: CaseOptions) -> Result<(u64, u64)> {
    let (mut c, mut d) = (0, 0);
    scan_cases_in(&DigitStream::C10, w, n, opts, |case, _| match case {
        Case::One => c += 1,
        Case::Two => d += 1,
    })?;
    Ok((c, d))
}

/// Case 1 windows of C10 within the first `n` digits.
pub fn count_case1(w: &Word, n: u64, opts: CaseOptions) -> Result<u64> {
    Ok(case_counts(w, n, opts)?.0)
}

/// Case 2 windows of C10 within the first `n` digits.
pub fn count_case2(w: &Word, n: u64, opts: CaseOptions) -> Result<u64> {
    Ok(case_counts(w, n, opts)?.1)
}

/// Sorts every maximal binary factor of `p` that touches neither end.
pub fn sort_interior_runs(p: &Word) -> Word {
    let d = p.digits();
    let mut out = d.to_vec();
    let mut i = 0;
    while i < d.len() {
        if !is_binary(d[i]) {
            i += 1;
            continue;
        }
        let start = i;
        while i < d.len() && is_binary(d[i]) {
            i += 1;
        }
        if start > 0 && i < d.len() {
            out[start..i].sort_unstable();
        }
    }
    Word::from_digits(&out)
}
