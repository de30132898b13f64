//! Minimising `T + Z` over the free parameters, degree by degree.
//!
//! Three routes produce a tuple for a degree `n`:
//!
//! * [`grid_search`] scans an ascending lattice (`a`, then `d0`, then `b`) and
//!   keeps the first strict minimiser.
//! * [`descend_search`] walks `n` downward and, for each `n`, scans a lattice
//!   anchored at [`a_upper`] in descending order until it meets `T + Z = 4`.
//! * [`asymptotic_params`] is the closed-form choice for `n >= 507`.
//!
//! The fast engines rely on monotonicity of the bound formulas: `T` splits into
//! a part that falls with `d0` and a part that rises with it, and everything on
//! the large-solution side is monotone in `b`. [`grid::grid_exhaustive`] and
//! [`descend::descend_exhaustive`] replay the plain loops for cross-checking.

pub mod asymptotic;
pub mod descend;
pub mod grid;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    self, degree_profile, floor_plus_two, large_derived, large_quantity, n_star, small_quantities,
    thresholds_ok, valid_large, valid_small, LargeDerived, LargeParams, SmallParams, SmallQuantities,
};
use crate::error::{Error, Result};

pub use asymptotic::{asymptotic_params, asymptotic_report, AsymptoticReport, ASYMPTOTIC_MIN_N};
pub use descend::{descend_exhaustive, descend_lattice, descend_search};
pub use grid::{grid_exhaustive, grid_search, grid_search_n};

/// Smallest possible `T + Z`; both counts are at least 2.
pub const MIN_SUM: u32 = 4;

/// Step of the ascending grid used for the published table.
pub const COARSE_PREC: f64 = 0.01;

/// Step of the descending lattice used for the published table.
pub const FINE_PREC: f64 = 0.001;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchConfig {
    pub n_min: u32,
    pub n_max: u32,
    pub prec: f64,
    /// Stop scanning a degree as soon as `T + Z` reaches this value.
    pub target_sum: Option<u32>,
}

impl SearchConfig {
    pub fn new(n_min: u32, n_max: u32, prec: f64) -> Self {
        SearchConfig {
            n_min,
            n_max,
            prec,
            target_sum: Some(MIN_SUM),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_min < 6 {
            return Err(Error::UnsupportedDegree(self.n_min as i64));
        }
        check_prec(self.prec)
    }
}

pub(crate) fn check_prec(prec: f64) -> Result<()> {
    if prec > 0.0 && prec < 1.0 && prec.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("grid step {prec} must lie in (0, 1)")))
    }
}

/// Which procedure produced a tuple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "route", rename_all = "snake_case")]
pub enum Route {
    Grid { prec: f64 },
    Descend { prec: f64 },
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimalParams {
    pub n: u32,
    pub d0: f64,
    pub d: f64,
    pub a: f64,
    pub b: f64,
    pub t: u32,
    pub z: u32,
    pub route: Route,
}

impl OptimalParams {
    pub fn sum(&self) -> u32 {
        self.t + self.z
    }

    pub fn small(&self) -> SmallParams {
        SmallParams { d0: self.d0, d: self.d }
    }

    pub fn large(&self) -> LargeParams {
        LargeParams { a: self.a, b: self.b }
    }

    /// `z(n)`: `T + Z`, plus one for `6 <= n <= 8`.
    pub fn z_value(&self) -> u32 {
        self.sum() + u32::from(self.n <= 8)
    }
}

/// The four acceptance assertions of the reference search, with its messages.
pub fn assert_accepted(p: &OptimalParams) -> Result<()> {
    let n = p.n;
    if !valid_small(p.small(), n) {
        return Err(Error::InvalidParams("d0,d,n are invalid".into()));
    }
    if !valid_large(p.large(), n) {
        return Err(Error::InvalidParams("a,b,n are invalid".into()));
    }
    let dv = large_derived(p.large(), n)?;
    if !(dv.chi_n >= 2.0) {
        return Err(Error::ThresholdFailed("chiN is too small".into()));
    }
    if !(dv.pi_n >= bounds::pi_threshold(n)) {
        return Err(Error::ThresholdFailed("piN is too small".into()));
    }
    let t = bounds::small_count(p.small(), p.large(), n)?;
    let z = bounds::large_count(p.large(), n)?;
    if (t, z) != (p.t, p.z) {
        return Err(Error::InvalidParams(format!(
            "recorded (T, Z) = ({}, {}) but the formulas give ({t}, {z})",
            p.t, p.z
        )));
    }
    Ok(())
}

/// `(2n^2 - sqrt(4n^4 - 4(n^2 - 2n)(n^2 - 2))) / (2(n^2 - 2))`, the `a` at which
/// `a` meets the upper limit for `b`. The radicand is formed exactly in integers.
pub fn a_upper(n: u32) -> f64 {
    let n = n as i128;
    let radicand = 4 * n.pow(4) - 4 * (n * n - 2 * n) * (n * n - 2);
    let nf = n as f64;
    (2.0 * nf * nf - (radicand as f64).sqrt()) / (2.0 * (nf * nf - 2.0))
}

/// Everything about one `(a, b)` that does not depend on `d0`, for a pair that
/// passes the large-solution validity checks and thresholds.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Column {
    pub a: f64,
    pub b: f64,
    pub derived: LargeDerived,
    pub z: u32,
}

pub(crate) fn column(n: u32, a: f64, b: f64) -> Option<Column> {
    let large = LargeParams { a, b };
    if !valid_large(large, n) {
        return None;
    }
    let derived = large_derived(large, n).ok()?;
    if !thresholds_ok(&derived, n) {
        return None;
    }
    let q = large_quantity(&derived, n).ok()?;
    Some(Column {
        a,
        b,
        derived,
        z: floor_plus_two(q),
    })
}

/// Both floor arguments of `T` at `d0` (with `d = n*`), or `None` when `(d0, n*)` is invalid.
pub(crate) fn small_terms(n: u32, d0: f64, col: &Column) -> Option<SmallQuantities> {
    let small = SmallParams { d0, d: n_star(n) };
    if !valid_small(small, n) {
        return None;
    }
    small_quantities(small, &col.derived, n).ok()
}

/// Smallest index in `lo..hi` where the up-set predicate holds, or `hi`.
pub(crate) fn first_true(lo: usize, hi: usize, mut pred: impl FnMut(usize) -> bool) -> usize {
    let (mut lo, mut hi) = (lo, hi);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Choice of search resolutions behind [`optimal_params`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZPlan {
    pub coarse: f64,
    pub fine: f64,
}

impl Default for ZPlan {
    fn default() -> Self {
        ZPlan {
            coarse: COARSE_PREC,
            fine: FINE_PREC,
        }
    }
}

/// Best tuple for one degree: the closed form from 507 on, otherwise the first
/// `T + Z = 4` hit of the descending lattice, falling back to the minimiser of
/// the ascending grid when the lattice has none.
pub fn optimal_params(n: u32, plan: ZPlan) -> Result<OptimalParams> {
    degree_profile(n as i64)?;
    if n >= ASYMPTOTIC_MIN_N {
        return asymptotic_params(n);
    }
    if let Some(hit) = descend_lattice(n, plan.fine)? {
        return Ok(hit);
    }
    grid_search_n(n, plan.coarse, Some(MIN_SUM))
}

/// `z(n)` under the default resolutions.
pub fn z_of_n(n: u32) -> Result<u32> {
    Ok(optimal_params(n, ZPlan::default())?.z_value())
}

/// `2 v(n) z(n) + 8`.
pub fn solution_count_bound(n: u32) -> Result<u32> {
    let v = degree_profile(n as i64)?.v;
    Ok(2 * v * z_of_n(n)? + 8)
}

/// [`optimal_params`] for every degree in `n_min..=n_max`, in order.
pub fn optimal_table(n_min: u32, n_max: u32, plan: ZPlan) -> Result<Vec<OptimalParams>> {
    let results: Vec<Result<OptimalParams>> = (n_min..=n_max)
        .into_par_iter()
        .map(|n| optimal_params(n, plan))
        .collect();
    results.into_iter().collect()
}

/// Thomas's earlier per-root bound `w(n)` for `n >= 6`.
pub fn thomas_w(n: u32) -> Option<u32> {
    Some(match n {
        0..=5 => return None,
        6 => 16,
        7 => 13,
        8 => 11,
        9 => 9,
        10..=11 => 8,
        12..=16 => 7,
        17..=37 => 6,
        _ => 5,
    })
}

/// Thomas's `n = 5` entry, shown only with its caveat.
pub const THOMAS_W5: u32 = 27;
pub const THOMAS_W5_NOTE: &str =
    "n = 5: w = 27 as published, but its proof compares (b^t - 1)/(b - 1) < b^t, which fails for b = 1.5; excluded";

/// One band of consecutive degrees sharing `z(n)` and `w(n)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZBand {
    pub n_lo: u32,
    /// `None` for an open-ended band covered by the closed form.
    pub n_hi: Option<u32>,
    pub z: u32,
    pub w: u32,
}

impl ZBand {
    pub fn label(&self) -> String {
        match self.n_hi {
            None => format!(">= {}", self.n_lo),
            Some(hi) if hi == self.n_lo => self.n_lo.to_string(),
            Some(hi) => format!("{}-{}", self.n_lo, hi),
        }
    }

    /// `(2 v z + 8)` for odd and even degrees within the band, where present.
    pub fn totals(&self, per_root: u32) -> (Option<u32>, Option<u32>) {
        let hi = self.n_hi.unwrap_or(u32::MAX);
        let has_odd = self.n_lo % 2 == 1 || hi > self.n_lo;
        let has_even = self.n_lo % 2 == 0 || hi > self.n_lo;
        (
            has_odd.then_some(2 * 3 * per_root + 8),
            has_even.then_some(2 * 4 * per_root + 8),
        )
    }
}

/// Groups `z(n)` and `w(n)` for `6..=n_max` into bands. When `n_max` reaches the
/// closed-form regime the last band is left open.
pub fn z_bands(n_max: u32, plan: ZPlan) -> Result<Vec<ZBand>> {
    if n_max < 6 {
        return Err(Error::UnsupportedDegree(n_max as i64));
    }
    let table = optimal_table(6, n_max, plan)?;
    let mut bands: Vec<ZBand> = Vec::new();
    for p in &table {
        let z = p.z_value();
        let w = thomas_w(p.n).expect("n >= 6");
        match bands.last_mut() {
            Some(last) if last.z == z && last.w == w => last.n_hi = Some(p.n),
            _ => bands.push(ZBand {
                n_lo: p.n,
                n_hi: Some(p.n),
                z,
                w,
            }),
        }
    }
    if n_max >= ASYMPTOTIC_MIN_N {
        if let Some(last) = bands.last_mut() {
            last.n_hi = None;
        }
    }
    Ok(bands)
}
