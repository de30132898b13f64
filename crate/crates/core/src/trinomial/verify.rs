//! Checks a form's box solutions against the proven counting bounds.

use num_integer::Integer;
use serde::Serialize;

use super::analysis::{analyze_form, ExceptionalKind, FormAnalysis};
use super::solve::{solve_with, SolutionRecord};
use super::TrinomialForm;
use crate::bounds::degree_profile;
use crate::error::Result;
use crate::search::z_of_n;

/// The per-degree multipliers the bounds are stated in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeLimits {
    pub n: u32,
    pub v: u32,
    pub z: u32,
    pub ell: u32,
}

impl DegreeLimits {
    pub fn for_degree(n: u32) -> Result<Self> {
        Self::with_z(n, z_of_n(n)?)
    }

    pub fn with_z(n: u32, z: u32) -> Result<Self> {
        let p = degree_profile(n as i64)?;
        Ok(DegreeLimits { n, v: p.v, z, ell: p.ell })
    }

    pub fn total_bound(&self) -> u64 {
        2 * self.v as u64 * self.z as u64 + 8
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub value: u64,
    pub bound: u64,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PointCount {
    pub index: usize,
    pub kind: ExceptionalKind,
    pub regular: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub form: TrinomialForm,
    pub box_radius: u64,
    pub limits: DegreeLimits,
    pub n_total: u64,
    pub n_regular: u64,
    pub n_special: u64,
    pub r_f: u32,
    pub c_f: u32,
    pub per_point: Vec<PointCount>,
    pub checks: Vec<BoundCheck>,
    /// `(p, q)` is listed iff `(-p, -q)` is.
    pub symmetric: bool,
    /// `gcd(p, q) = 1` for every listed point with `q != 0`.
    pub coprime: bool,
    /// Every listed value re-evaluates to `F(p, q) = value` with `|value| = 1`.
    pub exact: bool,
    pub interleaving: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.symmetric && self.coprime && self.exact && self.interleaving && self.checks.iter().all(|c| c.holds)
    }

    pub fn violations(&self) -> Vec<&BoundCheck> {
        self.checks.iter().filter(|c| !c.holds).collect()
    }
}

pub fn verify_bounds(form: &TrinomialForm, b: u64, limits: DegreeLimits) -> Result<VerifyReport> {
    let analysis = analyze_form(form)?;
    let sols = solve_with(&analysis, b)?;
    Ok(verify_solutions(&analysis, &sols, b, limits))
}

/// The bound checks for an already computed solution list.
pub fn verify_solutions(analysis: &FormAnalysis, sols: &[SolutionRecord], b: u64, limits: DegreeLimits) -> VerifyReport {
    let form = analysis.form;
    let n_total = sols.len() as u64;
    let regular: Vec<&SolutionRecord> = sols.iter().filter(|s| s.regular).collect();
    let n_regular = regular.len() as u64;
    let n_special = sols.iter().filter(|s| s.special).count() as u64;
    let near_axes = sols.iter().filter(|s| (s.p as i128 * s.q as i128).abs() <= 1).count() as u64;

    let mut per_point: Vec<PointCount> = analysis
        .exceptional
        .iter()
        .enumerate()
        .map(|(index, e)| PointCount {
            index,
            kind: e.kind,
            regular: 0,
        })
        .collect();
    for s in &regular {
        if let Some(i) = s.belongs_to {
            per_point[i].regular += 1;
        }
    }
    let max_of = |root: bool| {
        per_point
            .iter()
            .filter(|p| matches!(p.kind, ExceptionalKind::Root(_)) == root)
            .map(|p| p.regular)
            .max()
            .unwrap_or(0)
    };
    let (z, v, ell) = (limits.z as u64, limits.v as u64, limits.ell as u64);
    let (r_f, c_f) = (analysis.r_f as u64, analysis.c_f as u64);
    let check = |name, value: u64, bound: u64| BoundCheck {
        name,
        value,
        bound,
        holds: value <= bound,
    };
    let checks = vec![
        check("N_total <= 2 v(n) z(n) + 8", n_total, limits.total_bound()),
        check("N_regular <= v(n) z(n)", n_regular, v * z),
        check("N_regular <= z(n) R_F + ell(n) C_F", n_regular, z * r_f + ell * c_f),
        check("N_total <= 2 N_regular + 8", n_total, 2 * n_regular + 8),
        check("#{|pq| <= 1} <= 8", near_axes, 8),
        check("R_F + C_F <= v(n)", r_f + c_f, v),
        check("regular per real root <= z(n)", max_of(true), z),
        check("regular per proper critical point <= ell(n)", max_of(false), ell),
        check(
            "regular solutions assigned to an exceptional point",
            regular.iter().filter(|s| s.belongs_to.is_none()).count() as u64,
            0,
        ),
    ];

    let set: std::collections::HashSet<(i64, i64)> = sols.iter().map(|s| (s.p, s.q)).collect();
    let symmetric = sols.iter().all(|s| set.contains(&(-s.p, -s.q)));
    let coprime = sols.iter().all(|s| s.q == 0 || s.p.gcd(&s.q) == 1);
    let exact = sols
        .iter()
        .all(|s| (s.value == 1 || s.value == -1) && form.eval(s.p, s.q) == s.value.into());

    VerifyReport {
        form,
        box_radius: b,
        limits,
        n_total,
        n_regular,
        n_special,
        r_f: analysis.r_f,
        c_f: analysis.c_f,
        per_point,
        checks,
        symmetric,
        coprime,
        exact,
        interleaving: analysis.interleaving,
    }
}
