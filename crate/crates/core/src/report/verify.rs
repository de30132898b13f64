//! The machine-readable verification report behind `thue-bounds verify`.

use serde::Serialize;

use super::corpus::{run_cell, CellRun, CellSummary};
use crate::bounds::cross_check;
use crate::error::Result;
use crate::gap::{sharpness_suite, soundness_suite, SharpnessReport, SoundnessReport};
use crate::precision::HpCtx;
use crate::search::{optimal_params, ZPlan};
use crate::trinomial::DegreeLimits;

const MAX_COUNTEREXAMPLES: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyPlan {
    pub n_min: u32,
    pub n_max: u32,
    pub h_min: u64,
    pub h_max: u64,
    pub box_radius: u64,
    pub seed: u64,
    pub gap_instances: usize,
    pub sharp_instances: usize,
    pub plan: ZPlan,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub form: String,
    pub n: u32,
    pub height: u64,
    pub value: u64,
    pub bound: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantTally {
    pub name: String,
    pub checked: usize,
    pub passed: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl InvariantTally {
    fn new(name: impl Into<String>) -> Self {
        InvariantTally {
            name: name.into(),
            checked: 0,
            passed: 0,
            counterexamples: Vec::new(),
        }
    }

    fn record(&mut self, holds: bool, example: impl FnOnce() -> Counterexample) {
        self.checked += 1;
        if holds {
            self.passed += 1;
        } else if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(example());
        }
    }

    pub fn holds(&self) -> bool {
        self.passed == self.checked
    }
}

/// Per-degree parameter tuple recomputed in both precisions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeCheck {
    pub n: u32,
    pub t: u32,
    pub z: u32,
    pub z_n: u32,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyRun {
    pub plan: VerifyPlan,
    pub degrees: Vec<DegreeCheck>,
    pub cells: Vec<CellSummary>,
    pub invariants: Vec<InvariantTally>,
    pub gap_soundness: SoundnessReport,
    pub gap_sharpness: SharpnessReport,
    pub passed: bool,
}

/// Folds every form's checks into one tally per invariant.
pub fn tally(cells: &[CellRun]) -> Vec<InvariantTally> {
    let mut out: Vec<InvariantTally> = Vec::new();
    let flags = ["symmetric", "coprime", "exact", "interleaving"];
    for cell in cells {
        for r in &cell.results {
            let ex = |value: u64, bound: u64| Counterexample {
                form: r.form.to_string(),
                n: cell.n,
                height: cell.height,
                value,
                bound,
            };
            let f = &r.report;
            let values = [f.symmetric, f.coprime, f.exact, f.interleaving];
            let checks = f
                .checks
                .iter()
                .map(|c| (c.name.to_string(), c.holds, c.value, c.bound))
                .chain(flags.iter().zip(values).map(|(n, v)| (n.to_string(), v, u64::from(v), 1)));
            for (i, (name, holds, value, bound)) in checks.enumerate() {
                if out.len() <= i {
                    out.push(InvariantTally::new(name));
                }
                out[i].record(holds, || ex(value, bound));
            }
        }
    }
    out
}

pub fn verify_run(plan: &VerifyPlan) -> Result<VerifyRun> {
    let mut degrees = Vec::new();
    let mut cells = Vec::new();
    let mut ctx = HpCtx::default();
    for n in plan.n_min..=plan.n_max {
        let p = optimal_params(n, plan.plan)?;
        let chk = cross_check(&mut ctx, n, p.small(), p.large());
        let limits = DegreeLimits::with_z(n, p.z_value())?;
        degrees.push(DegreeCheck {
            n,
            t: p.t,
            z: p.z,
            z_n: p.z_value(),
            certified: chk.certified(),
        });
        for h in plan.h_min..=plan.h_max {
            cells.push(run_cell(n, h, plan.box_radius, limits)?);
        }
    }
    let invariants = tally(&cells);
    let gap_soundness = soundness_suite(plan.seed, plan.gap_instances);
    let gap_sharpness = sharpness_suite(plan.seed, plan.sharp_instances);
    let passed = degrees.iter().all(|d| d.certified)
        && invariants.iter().all(|t| t.holds())
        && gap_soundness.passed()
        && gap_sharpness.passed();
    Ok(VerifyRun {
        plan: plan.clone(),
        degrees,
        cells: cells.iter().map(|c| c.summary()).collect(),
        invariants,
        gap_soundness,
        gap_sharpness,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plan(n_min: u32, n_max: u32) -> VerifyPlan {
        VerifyPlan {
            n_min,
            n_max,
            h_min: 1,
            h_max: 1,
            box_radius: 50,
            seed: 3,
            gap_instances: 500,
            sharp_instances: 50,
            plan: ZPlan::default(),
        }
    }

    #[test]
    fn empty_range_passes() {
        let r = verify_run(&plan(7, 6)).unwrap();
        assert!(r.passed);
        assert!(r.cells.is_empty() && r.invariants.is_empty());
    }

    #[test]
    fn small_run_tallies_every_form() {
        let r = verify_run(&plan(6, 6)).unwrap();
        assert!(r.passed);
        assert_eq!(r.degrees[0].z_n, 15);
        assert_eq!(r.invariants.len(), 13);
        assert!(r.invariants.iter().all(|t| t.checked == 20));
    }
}
