//! Normality and abelian-normality quotients, convergence tables, and the
//! verification suites.

mod verify;

pub use verify::{
    run_relation_check, snap_to_nonbinary, verify_identity, verify_run_relations,
    verify_worked_examples, Check, IdentityReport, Report, RunRelationCheck, RunRelationReport,
    WorkedExamples,
};

use std::io;

use rayon::prelude::*;

use crate::counting::{count_abelian_grid, count_exact};
use crate::digits::DigitStream;
use crate::error::{Error, Result};
use crate::weight::{pure_weight, weight, ErrorBound, WeightValue, DEFAULT_TOL};
use crate::word::Word;

/// CSV header shared by every convergence-style report.
pub const CSV_HEADER: [&str; 8] = [
    "n",
    "pattern",
    "count_b",
    "weight_value",
    "weight_err",
    "case_tag",
    "ratio",
    "deviation",
];

/// One row of a convergence study: the abelian quotient normalized so that
/// its target is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRecord {
    pub n: u64,
    pub pattern: Word,
    pub count_b: u64,
    pub weight: WeightValue,
    pub ratio: f64,
    pub deviation: f64,
}

/// `(1/W) · (count/n) · 10^len`.
pub fn abelian_quotient(count: u64, weight: f64, n: u64, len: usize) -> f64 {
    (count as f64 / n as f64) * 10f64.powi(len as i32) / weight
}

fn check_prefix(e: &Word, n: u64) -> Result<()> {
    if n < e.len() as u64 {
        return Err(Error::PrefixTooShort { n, len: e.len() });
    }
    Ok(())
}

/// `(A_E(s, n) / n) · 10^|E|`, which tends to 1 for every block of a normal
/// number.
pub fn normality_ratio(s: &DigitStream, e: &Word, n: u64) -> Result<f64> {
    check_prefix(e, n)?;
    let a = count_exact(s, e, n)?;
    Ok(abelian_quotient(a, 1.0, n, e.len()))
}

impl ConvergenceRecord {
    pub fn new(n: u64, pattern: Word, count_b: u64, weight: WeightValue) -> Self {
        let ratio = abelian_quotient(count_b, weight.value, n, pattern.len());
        ConvergenceRecord {
            n,
            pattern,
            count_b,
            weight,
            ratio,
            deviation: (ratio - 1.0).abs(),
        }
    }

    fn csv_row(&self) -> [String; 8] {
        [
            self.n.to_string(),
            self.pattern.to_string(),
            self.count_b.to_string(),
            self.weight.value.to_string(),
            match self.weight.abs_error {
                ErrorBound::Certified(e) => e.to_string(),
                ErrorBound::Uncertified => "uncertified".into(),
            },
            self.weight.case_tag.to_string(),
            self.ratio.to_string(),
            self.deviation.to_string(),
        ]
    }
}

/// Abelian-normality record for `E` at cutoff `n` under weight `w`.
pub fn abelian_ratio(
    s: &DigitStream,
    e: &Word,
    n: u64,
    w: &WeightValue,
) -> Result<ConvergenceRecord> {
    check_prefix(e, n)?;
    let b = crate::counting::count_abelian(s, e, n)?;
    Ok(ConvergenceRecord::new(n, e.clone(), b, w.clone()))
}

/// Which weight normalizes a convergence study.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WeightChoice {
    /// 𝒲 (the mixed case is estimated on `estimate_n` digits of C10).
    Auto { tol: f64, estimate_n: Option<u64> },
    /// Number of distinct rearrangements.
    Pure,
}

impl Default for WeightChoice {
    fn default() -> Self {
        WeightChoice::Auto {
            tol: DEFAULT_TOL,
            estimate_n: None,
        }
    }
}

/// Resolves a weight; mixed words default to estimating on `fallback_n` digits.
pub fn resolve_weight(e: &Word, choice: WeightChoice, fallback_n: u64) -> Result<WeightValue> {
    match choice {
        WeightChoice::Pure => Ok(pure_weight(e)),
        WeightChoice::Auto { tol, estimate_n } => {
            weight(e, tol, estimate_n.unwrap_or(fallback_n).max(e.len() as u64))
        }
    }
}

/// Records at every cutoff of a strictly increasing grid, counted in one pass.
pub fn convergence_table(
    s: &DigitStream,
    e: &Word,
    grid: &[u64],
    w: &WeightValue,
) -> Result<Vec<ConvergenceRecord>> {
    if let Some(&first) = grid.first() {
        check_prefix(e, first)?;
    }
    let counts = count_abelian_grid(s, e, grid)?;
    Ok(grid
        .iter()
        .zip(counts)
        .map(|(&n, b)| ConvergenceRecord::new(n, e.clone(), b, w.clone()))
        .collect())
}

/// Convergence tables for several patterns, computed in parallel and returned
/// in input order.
pub fn convergence_tables(
    s: &DigitStream,
    patterns: &[Word],
    grid: &[u64],
    choice: WeightChoice,
) -> Result<Vec<ConvergenceRecord>> {
    let fallback = grid.last().copied().unwrap_or(1);
    let tables = patterns
        .par_iter()
        .map(|e| {
            let w = resolve_weight(e, choice, fallback)?;
            convergence_table(s, e, grid, &w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(tables.into_iter().flatten().collect())
}

/// Pure-weight quotients on D10. The output is empirical evidence on whether
/// D10 is abelian-normal under the pure weighting; no verdict is drawn.
pub fn pure_abelian_probe(patterns: &[Word], grid: &[u64]) -> Result<Vec<ConvergenceRecord>> {
    convergence_tables(&DigitStream::D10, patterns, grid, WeightChoice::Pure)
}

pub fn write_csv<W: io::Write>(records: &[ConvergenceRecord], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for r in records {
        writer.write_record(r.csv_row())?;
    }
    writer.flush().map_err(|e| Error::Csv(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_abelian;
    use crate::weight::weight_binary;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn normality_ratio_examples() {
        assert_eq!(
            normality_ratio(&DigitStream::C10, &w("12"), 50).unwrap(),
            6.0
        );
        // A prefix that is exactly the pattern: one window.
        let s = DigitStream::parse_literal("37").unwrap();
        assert_eq!(normality_ratio(&s, &w("37"), 2).unwrap(), 50.0);
        assert!(normality_ratio(&DigitStream::C10, &w("123"), 2).is_err());
    }

    #[test]
    fn abelian_ratio_examples() {
        let rec = abelian_ratio(&DigitStream::C10, &w("12"), 50, &pure_weight(&w("12"))).unwrap();
        assert_eq!(rec.count_b, 5);
        assert_eq!(rec.ratio, 5.0);
        assert_eq!(rec.deviation, 4.0);
        let s = DigitStream::parse_literal("2345").unwrap();
        let rec = abelian_ratio(&s, &w("99"), 4, &pure_weight(&w("99"))).unwrap();
        assert_eq!(rec.ratio, 0.0);
    }

    #[test]
    fn table_matches_per_cutoff_counts() {
        let grid = [100, 1_000, 5_000, 10_000];
        let weight = weight_binary(&w("10"), 1e-12).unwrap();
        let table = convergence_table(&DigitStream::D10, &w("10"), &grid, &weight).unwrap();
        assert_eq!(table.len(), 4);
        for rec in &table {
            assert_eq!(
                rec.count_b,
                count_abelian(&DigitStream::D10, &w("10"), rec.n).unwrap()
            );
            let recomputed = abelian_quotient(rec.count_b, rec.weight.value, rec.n, 2);
            assert_eq!(recomputed.to_bits(), rec.ratio.to_bits());
            assert!(rec.ratio >= 0.0 && rec.count_b <= rec.n);
        }
        let single = convergence_table(&DigitStream::C10, &w("2"), &[100], &pure_weight(&w("2")));
        assert_eq!(single.unwrap().len(), 1);
    }

    #[test]
    fn tables_keep_input_order() {
        let pats = [w("10"), w("2"), w("11"), w("22")];
        let rows = convergence_tables(
            &DigitStream::D10,
            &pats,
            &[1000, 2000],
            WeightChoice::default(),
        )
        .unwrap();
        let order: Vec<String> = rows.iter().map(|r| r.pattern.to_string()).collect();
        assert_eq!(order, ["10", "10", "2", "2", "11", "11", "22", "22"]);
    }

    #[test]
    fn csv_output() {
        let rec = ConvergenceRecord::new(50, w("12"), 5, pure_weight(&w("12")));
        let mut buf = Vec::new();
        write_csv(&[rec], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "n,pattern,count_b,weight_value,weight_err,case_tag,ratio,deviation\n50,12,5,2,0,pure,5,4\n"
        );
    }
}
