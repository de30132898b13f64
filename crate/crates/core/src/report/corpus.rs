//! Enumerate, solve and verify one `(degree, height)` cell of the corpus.

use rayon::prelude::*;
use serde::Serialize;

use super::solutions::SolutionRow;
use crate::error::Result;
use crate::trinomial::{
    analyze_form, enumerate_with_stats, solve_with, verify_solutions, DegreeLimits, EnumerationStats, Method,
    SolutionRecord, TrinomialForm, VerifyReport,
};

#[derive(Debug, Clone)]
pub struct FormResult {
    pub form: TrinomialForm,
    pub solutions: Vec<SolutionRecord>,
    pub report: VerifyReport,
}

#[derive(Debug, Clone)]
pub struct CellRun {
    pub n: u32,
    pub height: u64,
    pub box_radius: u64,
    pub limits: DegreeLimits,
    pub stats: EnumerationStats,
    /// In enumeration order.
    pub results: Vec<FormResult>,
}

/// The short account of a cell that goes into summaries and JSON reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellSummary {
    pub n: u32,
    pub height: u64,
    pub box_radius: u64,
    pub forms: usize,
    pub stats: EnumerationStats,
    pub max_count: usize,
    /// First form attaining the maximum.
    pub argmax: Option<String>,
    pub failed_forms: usize,
}

impl CellRun {
    pub fn max_count(&self) -> usize {
        self.results.iter().map(|r| r.solutions.len()).max().unwrap_or(0)
    }

    pub fn rows(&self) -> Vec<SolutionRow> {
        self.results.iter().map(|r| SolutionRow::new(&r.form, &r.solutions)).collect()
    }

    pub fn summary(&self) -> CellSummary {
        let max = self.max_count();
        CellSummary {
            n: self.n,
            height: self.height,
            box_radius: self.box_radius,
            forms: self.results.len(),
            stats: self.stats,
            max_count: max,
            argmax: self.results.iter().find(|r| r.solutions.len() == max).map(|r| r.form.to_string()),
            failed_forms: self.results.iter().filter(|r| !r.report.passed()).count(),
        }
    }
}

/// Runs every irreducible form of degree `n` and height exactly `height`
/// through the box search and the bound checks.
pub fn run_cell(n: u32, height: u64, box_radius: u64, limits: DegreeLimits) -> Result<CellRun> {
    let (forms, stats) = enumerate_with_stats(n, height, Method::Full)?;
    let results: Result<Vec<FormResult>> = forms
        .par_iter()
        .map(|form| {
            let analysis = analyze_form(form)?;
            let solutions = solve_with(&analysis, box_radius)?;
            let report = verify_solutions(&analysis, &solutions, box_radius, limits);
            Ok(FormResult {
                form: *form,
                solutions,
                report,
            })
        })
        .collect();
    Ok(CellRun {
        n,
        height,
        box_radius,
        limits,
        stats,
        results: results?,
    })
}
