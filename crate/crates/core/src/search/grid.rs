//! Ascending lattice: `a = i prec`, `d0 = k prec (n* - 1.4)`, `b = a + j prec`.
//!
//! Scan order is `a` outermost, then `d0`, then `b`; the incumbent changes only
//! on strict improvement, so the result is the first minimiser in that order.
//! Only tuples passing all four acceptance checks compete. Lattice points are
//! formed by multiplying the index, never by repeated addition.

use rayon::prelude::*;

use super::{check_prec, column, first_true, small_terms, Column, OptimalParams, Route, SearchConfig};
use crate::bounds::{b_limit, floor_plus_two, n_star, valid_small, SmallParams};
use crate::error::{Error, Result};

pub(crate) struct Lattice {
    pub n: u32,
    pub prec: f64,
    pub top: f64,
    pub d0_count: usize,
}

impl Lattice {
    pub fn new(n: u32, prec: f64) -> Self {
        let top = n_star(n) - 1.4;
        let step = prec * top;
        let mut d0_count = (1.0 / prec).floor() as usize + 2;
        while d0_count > 0 && !((d0_count - 1) as f64 * step <= top) {
            d0_count -= 1;
        }
        Lattice { n, prec, top, d0_count }
    }

    pub fn a(&self, i: usize) -> f64 {
        i as f64 * self.prec
    }

    pub fn d0(&self, k: usize) -> f64 {
        k as f64 * (self.prec * self.top)
    }

    pub fn b(&self, a: f64, j: usize) -> f64 {
        a + j as f64 * self.prec
    }

    /// Number of `j >= 1` with `b(a, j) < b_limit(a)`.
    pub fn b_count(&self, a: f64) -> usize {
        let limit = b_limit(a, self.n);
        if !(limit > a) {
            return 0;
        }
        let mut c = ((limit - a) / self.prec).floor() as usize + 2;
        while c > 0 && !(self.b(a, c) < limit) {
            c -= 1;
        }
        c
    }

    /// `d0(k)` is valid exactly for `k < valid_prefix()`.
    pub fn valid_prefix(&self) -> usize {
        let d = n_star(self.n);
        first_true(0, self.d0_count, |k| !valid_small(SmallParams { d0: self.d0(k), d }, self.n))
    }
}

fn record(lat: &Lattice, col: &Column, k: usize, t: u32) -> OptimalParams {
    OptimalParams {
        n: lat.n,
        d0: lat.d0(k),
        d: n_star(lat.n),
        a: col.a,
        b: col.b,
        t,
        z: col.z,
        route: Route::Grid { prec: lat.prec },
    }
}

/// Fast ascending search for a single degree.
pub fn grid_search_n(n: u32, prec: f64, target_sum: Option<u32>) -> Result<OptimalParams> {
    check_prec(prec)?;
    let lat = Lattice::new(n, prec);
    let kv = lat.valid_prefix();
    let target = target_sum.unwrap_or(0);
    let a_up = super::a_upper(n);
    let mut best: Option<OptimalParams> = None;
    let mut i = 1;
    while lat.a(i) <= a_up && best.map_or(true, |b| b.sum() > target) {
        let a = lat.a(i);
        i += 1;
        if kv == 0 {
            continue;
        }
        let cols: Vec<Column> = (1..=lat.b_count(a)).filter_map(|j| column(n, a, lat.b(a, j))).collect();
        if cols.is_empty() {
            continue;
        }
        let terms = |k: usize, col: &Column| small_terms(n, lat.d0(k), col).expect("valid d0 prefix");
        // min over d0 of max(q1, q2): q1 falls and q2 rises along the valid prefix.
        let t_min = |col: &Column| -> u32 {
            let kc = first_true(0, kv, |k| {
                let s = terms(k, col);
                s.height_term <= s.constant_term
            });
            [kc.checked_sub(1), (kc < kv).then_some(kc)]
                .into_iter()
                .flatten()
                .map(|k| terms(k, col).count())
                .min()
                .expect("nonempty prefix")
        };
        let s_star = cols.iter().map(|c| t_min(c) + c.z).min().expect("nonempty");
        if best.is_some_and(|b| b.sum() <= s_star) {
            continue;
        }
        // First d0 (then first b) reaching s_star: for each b the admissible d0 form an interval.
        let mut pick: Option<(usize, usize)> = None;
        for (idx, col) in cols.iter().enumerate() {
            if col.z + 2 > s_star {
                continue;
            }
            let t = s_star - col.z;
            let lo = first_true(0, kv, |k| floor_plus_two(terms(k, col).height_term) <= t);
            let hi = first_true(0, kv, |k| floor_plus_two(terms(k, col).constant_term) > t);
            if lo < hi && pick.map_or(true, |(k, _)| lo < k) {
                pick = Some((lo, idx));
            }
        }
        let (k, idx) = pick.expect("a column attains the minimum");
        let t = terms(k, &cols[idx]).count();
        debug_assert_eq!(t + cols[idx].z, s_star);
        best = Some(record(&lat, &cols[idx], k, t));
    }
    best.ok_or(Error::SearchFailed(n))
}

/// The ascending search for every degree in the configured range, in order.
///
/// Degrees run in parallel; on failure the error names the smallest failing degree.
pub fn grid_search(config: &SearchConfig) -> Result<Vec<OptimalParams>> {
    config.validate()?;
    if config.n_min > config.n_max {
        return Ok(Vec::new());
    }
    let results: Vec<Result<OptimalParams>> = (config.n_min..=config.n_max)
        .into_par_iter()
        .map(|n| grid_search_n(n, config.prec, config.target_sum))
        .collect();
    results.into_iter().collect()
}

/// Plain triple loop over the same lattice. Slow; kept as the reference route.
pub fn grid_exhaustive(n: u32, prec: f64, target_sum: Option<u32>) -> Result<OptimalParams> {
    check_prec(prec)?;
    let lat = Lattice::new(n, prec);
    let target = target_sum.unwrap_or(0);
    let a_up = super::a_upper(n);
    let mut best: Option<OptimalParams> = None;
    let mut i = 1;
    'scan: while lat.a(i) <= a_up {
        let a = lat.a(i);
        i += 1;
        let cols: Vec<Option<Column>> = (1..=lat.b_count(a)).map(|j| column(n, a, lat.b(a, j))).collect();
        for k in 0..lat.d0_count {
            for col in cols.iter().flatten() {
                let Some(s) = small_terms(n, lat.d0(k), col) else {
                    continue;
                };
                let t = s.count();
                if best.map_or(true, |b| t + col.z < b.sum()) {
                    best = Some(record(&lat, col, k, t));
                    if t + col.z <= target {
                        break 'scan;
                    }
                }
            }
        }
    }
    best.ok_or(Error::SearchFailed(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_counts() {
        let lat = Lattice::new(6, 0.01);
        assert_eq!(lat.d0_count, 101);
        assert!((lat.d0(100) - 0.6).abs() < 1e-12);
        let lat = Lattice::new(9, 0.01);
        assert!(lat.valid_prefix() > 0);
    }

    #[test]
    fn fast_matches_exhaustive_small_degrees() {
        for n in [6u32, 7, 8, 9, 12] {
            let fast = grid_search_n(n, 0.02, Some(4)).unwrap();
            let slow = grid_exhaustive(n, 0.02, Some(4)).unwrap();
            assert_eq!(fast, slow, "n = {n}");
        }
    }

    #[test]
    fn row_six() {
        let p = grid_search_n(6, 0.01, Some(4)).unwrap();
        assert_eq!((p.t, p.z), (10, 4));
        assert_eq!(p.d0, 0.0);
        assert!((p.a - 0.18).abs() < 1e-12 && (p.b - 0.29).abs() < 1e-12);
    }
}
