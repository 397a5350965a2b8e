use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cases::{boundary_context, case_counts, case_hits, CaseOptions, ContextMode};
use crate::counting::{count_abelian, count_exact, permutation_sum};
use crate::digits::{integer_start, DigitStream, Position};
use crate::error::{Error, Result};
use crate::word::{is_binary, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
}

/// Named exact checks plus free-form notes for human inspection.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn expect<T: PartialEq + fmt::Display>(&mut self, name: &str, expected: T, observed: T) {
        self.checks.push(Check {
            name: name.into(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            passed: expected == observed,
        });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.passed {
                writeln!(f, "PASS {}: {}", c.name, c.observed)?;
            } else {
                writeln!(
                    f,
                    "FAIL {}: expected {}, observed {}",
                    c.name, c.expected, c.observed
                )?;
            }
        }
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        Ok(())
    }
}

/// Values behind the worked examples, gathered in one place so the checker
/// can be exercised on tampered observations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorkedExamples {
    pub exact_12: u64,
    pub abelian_12: u64,
    pub d10_prefix: String,
    pub sorted_example: String,
    /// Case 1 and Case 2 counts with `d2` cut at the window end.
    pub case1_window_left: u64,
    pub case2_window_left: u64,
    /// The same counts with runs followed past the window.
    pub case1_full: u64,
    pub case2_full: u64,
    pub first_case1_window_left: Option<Position>,
    pub first_case2_window_left: Option<Position>,
    pub first_case1_full: Vec<Position>,
    pub first_case2_full: Vec<Position>,
    pub region_c10: String,
    pub region_d10: String,
}

pub const EXAMPLE_PATTERN: &str = "4501140";
pub const CASE1_CUTOFF: u64 = 40972;
pub const CASE2_CUTOFF: u64 = 39123;
pub const D10_DISPLAY: &str = "12345678901111213141516171819202122232425262728293";

impl WorkedExamples {
    pub fn compute() -> Result<Self> {
        let c10 = DigitStream::C10;
        let twelve: Word = "12".parse()?;
        let w: Word = EXAMPLE_PATTERN.parse()?;
        let horizon = CASE1_CUTOFF.max(CASE2_CUTOFF);
        let left = case_hits(
            &w,
            horizon,
            CaseOptions {
                context: ContextMode::WindowLeft,
                ..Default::default()
            },
        )?;
        let full = case_hits(&w, horizon, CaseOptions::default())?;
        let upto = |hits: &[Position], n: u64| hits.iter().filter(|&&e| e <= n).count() as u64;

        let region_start = integer_start(10413);
        let region_len = 6 * 5;
        let spaced = |s: &DigitStream| -> Result<String> {
            let word = s.window(region_start, region_len)?.to_string();
            Ok(word
                .as_bytes()
                .chunks(5)
                .map(|c| std::str::from_utf8(c).expect("ascii digits"))
                .collect::<Vec<_>>()
                .join(" "))
        };

        Ok(WorkedExamples {
            exact_12: count_exact(&c10, &twelve, 50)?,
            abelian_12: count_abelian(&c10, &twelve, 50)?,
            d10_prefix: DigitStream::D10.prefix(50)?.to_string(),
            sorted_example: DigitStream::parse_literal("24911010010772")?
                .sigma()
                .prefix(14)?
                .to_string(),
            case1_window_left: upto(&left.case1, CASE1_CUTOFF),
            case2_window_left: upto(&left.case2, CASE2_CUTOFF),
            case1_full: upto(&full.case1, CASE1_CUTOFF),
            case2_full: upto(&full.case2, CASE2_CUTOFF),
            first_case1_window_left: left.case1.first().copied(),
            first_case2_window_left: left.case2.first().copied(),
            first_case1_full: full
                .case1
                .iter()
                .copied()
                .filter(|&e| e <= CASE1_CUTOFF)
                .collect(),
            first_case2_full: full
                .case2
                .iter()
                .copied()
                .filter(|&e| e <= CASE2_CUTOFF)
                .collect(),
            region_c10: spaced(&c10)?,
            region_d10: spaced(&DigitStream::D10)?,
        })
    }

    /// Compares observations with the reference values.
    pub fn check(&self) -> Report {
        let mut r = Report::default();
        r.expect("A_12(C10, 50)", 3, self.exact_12);
        r.expect("B_12(C10, 50)", 5, self.abelian_12);
        r.expect("D10 first 50 digits", D10_DISPLAY, &self.d10_prefix);
        r.expect(
            "sigma(24911010010772)",
            "24900001111772",
            &self.sorted_example,
        );
        r.expect(
            "C_4501140(C10, 40972) [window-left context]",
            1,
            self.case1_window_left,
        );
        r.expect(
            "D_4501140(C10, 39123) [window-left context]",
            1,
            self.case2_window_left,
        );
        let show = |p: &Option<Position>| p.map_or("none".to_string(), |p| p.to_string());
        r.notes.push(format!(
            "first hits with window-left context: case 1 ends at {}, case 2 ends at {}",
            show(&self.first_case1_window_left),
            show(&self.first_case2_window_left)
        ));
        r.notes.push(format!(
            "full context: C(40972) = {} (hits end at {:?}), D(39123) = {} (hits end at {:?})",
            self.case1_full, self.first_case1_full, self.case2_full, self.first_case2_full
        ));
        r.notes.push(format!("C10 from 10413: {}", self.region_c10));
        r.notes.push(format!("D10 from 10413: {}", self.region_d10));
        r
    }
}

/// Recomputes and checks every worked example with a published value.
pub fn verify_worked_examples() -> Result<Report> {
    Ok(WorkedExamples::compute()?.check())
}

/// The four run relations for one window: `[0, 1]` counts of the sorted
/// images of `c1` and `c2`, observed in the sorted stream and predicted from
/// the runs of the original.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunRelationCheck {
    pub start: Position,
    pub len: usize,
    pub window: Word,
    pub image: Word,
    pub c1_len: u64,
    pub c2_len: u64,
    pub d1_ones: u64,
    pub d2_zeros: u64,
    pub observed: [u64; 4],
    pub predicted: [u64; 4],
}

impl RunRelationCheck {
    pub fn holds(&self) -> bool {
        self.observed == self.predicted
    }
}

/// Evaluates the run relations for the window `start..start+len-1` of
/// `original`, reading the image from `sorted` at the same positions.
pub fn run_relation_check(
    original: &DigitStream,
    sorted: &DigitStream,
    start: Position,
    len: usize,
) -> Result<RunRelationCheck> {
    let ctx = boundary_context(original, start, len)?;
    let window = original.window(start, len as u64)?;
    let image = sorted.window(start, len as u64)?;
    let (a, b) = (ctx.c1.len(), ctx.c2.len());
    let img = image.digits();
    let count = |s: &[u8], d: u8| s.iter().filter(|&&x| x == d).count() as u64;
    let head = &img[..a];
    let tail = &img[len - b..];
    let (l1, l2) = (a as u64, b as u64);
    let d1_ones = ctx.d1.map_or(0, |r| r.ones);
    let d2_zeros = ctx.d2.map_or(0, |r| r.zeros);
    Ok(RunRelationCheck {
        start,
        len,
        window,
        image: image.clone(),
        c1_len: l1,
        c2_len: l2,
        d1_ones,
        d2_zeros,
        observed: [
            count(head, 0),
            count(head, 1),
            count(tail, 0),
            count(tail, 1),
        ],
        predicted: [
            l1 - d1_ones.min(l1),
            d1_ones.min(l1),
            d2_zeros.min(l2),
            l2 - d2_zeros.min(l2),
        ],
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunRelationReport {
    pub checked: u64,
    pub skipped_all_binary: u64,
    pub violations: u64,
    pub first_violation: Option<RunRelationCheck>,
}

impl RunRelationReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

impl fmt::Display for RunRelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} run relations: {} windows checked, {} all-binary windows skipped, {} violations",
            if self.passed() { "PASS" } else { "FAIL" },
            self.checked,
            self.skipped_all_binary,
            self.violations
        )?;
        if let Some(v) = &self.first_violation {
            writeln!(
                f,
                "  first violation at {} (len {}): C10 {} -> D10 {}, |c1|={} |c2|={} 1_d1={} 0_d2={}, observed {:?}, predicted {:?}",
                v.start, v.len, v.window, v.image, v.c1_len, v.c2_len, v.d1_ones, v.d2_zeros, v.observed, v.predicted
            )?;
        }
        Ok(())
    }
}

/// Samples windows of C10 within its first 10^6 digits, with lengths 2..=20
/// and uniform starts, and checks the run relations against D10. All-binary
/// draws are skipped and redrawn.
pub fn verify_run_relations(samples: u64, seed: u64) -> Result<RunRelationReport> {
    if samples == 0 {
        return Err(Error::ZeroCount);
    }
    const HORIZON: u64 = 1_000_000;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draws = Vec::with_capacity(samples as usize);
    let mut skipped = 0;
    while (draws.len() as u64) < samples {
        let len = rng.gen_range(2..=20usize);
        let start = rng.gen_range(1..=HORIZON - len as u64 + 1);
        let window = DigitStream::C10.window(start, len as u64)?;
        if window.digits().iter().all(|&d| is_binary(d)) {
            skipped += 1;
            continue;
        }
        draws.push((start, len));
    }
    let checks = draws
        .par_iter()
        .map(|&(start, len)| run_relation_check(&DigitStream::C10, &DigitStream::D10, start, len))
        .collect::<Result<Vec<_>>>()?;
    let violations = checks.iter().filter(|c| !c.holds()).count() as u64;
    Ok(RunRelationReport {
        checked: checks.len() as u64,
        skipped_all_binary: skipped,
        violations,
        first_violation: checks.into_iter().find(|c| !c.holds()),
    })
}

/// Both sides of the decomposition
/// `B_w(D10, n) = Σ_π A_π(C10, n) + 𝒟_w(C10, n) − 𝒞_w(C10, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub pattern: Word,
    pub requested_n: u64,
    pub n: u64,
    pub options: CaseOptions,
    pub lhs: u64,
    pub permutation_sum: u64,
    pub case1: u64,
    pub case2: u64,
    pub rhs: i64,
    pub mismatch: i64,
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} identity w={} n={} (requested {}) context={:?} case2={:?}: B(D10)={} sum A(C10)={} D={} C={} rhs={} mismatch={}",
            if self.mismatch == 0 { "PASS" } else { "FAIL" },
            self.pattern,
            self.n,
            self.requested_n,
            self.options.context,
            self.options.case2,
            self.lhs,
            self.permutation_sum,
            self.case2,
            self.case1,
            self.rhs,
            self.mismatch
        )
    }
}

/// Nearest position at or around `n` whose C10 digit is non-binary; ties go
/// to the smaller position.
pub fn snap_to_nonbinary(n: u64) -> u64 {
    let ok = |p: u64| p >= 1 && !is_binary(crate::digits::champernowne_digit(p));
    (0..)
        .find_map(|d| {
            if d < n && ok(n - d) {
                Some(n - d)
            } else if ok(n + d) {
                Some(n + d)
            } else {
                None
            }
        })
        .expect("C10 has non-binary digits arbitrarily far out")
}

/// Evaluates both sides of the decomposition at each cutoff. With `snap`,
/// each cutoff first moves to the nearest non-binary position of C10.
pub fn verify_identity(
    w: &Word,
    n_list: &[u64],
    options: CaseOptions,
    snap: bool,
) -> Result<Vec<IdentityReport>> {
    if !w.is_mixed() {
        return Err(Error::NotMixed(w.to_string()));
    }
    n_list
        .par_iter()
        .map(|&requested_n| {
            let n = if snap {
                snap_to_nonbinary(requested_n)
            } else {
                requested_n
            };
            let lhs = count_abelian(&DigitStream::D10, w, n)?;
            let permutation_sum = permutation_sum(&DigitStream::C10, w, n)?;
            let (case1, case2) = case_counts(w, n, options)?;
            let rhs = permutation_sum as i64 + case2 as i64 - case1 as i64;
            Ok(IdentityReport {
                pattern: w.clone(),
                requested_n,
                n,
                options,
                lhs,
                permutation_sum,
                case1,
                case2,
                rhs,
                mismatch: lhs as i64 - rhs,
            })
        })
        .collect()
}
