//! Descending lattice anchored at `a_upper(n)`: `a = aU - i prec` (`i >= 1`),
//! `b = aU - j prec` (`j >= 0`, `b > a`), `d0 = top - k prec top` with
//! `top = n* - 1.4`. Scan order is `a`, then `b`, then `d0`; the first tuple
//! with `T + Z = 4` wins.

use super::{a_upper, check_prec, column, first_true, small_terms, Column, OptimalParams, Route, MIN_SUM};
use crate::bounds::{floor_plus_two, n_star};
use crate::error::{Error, Result};

struct Lattice {
    n: u32,
    prec: f64,
    a_up: f64,
    top: f64,
    d0_count: usize,
}

impl Lattice {
    fn new(n: u32, prec: f64) -> Self {
        let top = n_star(n) - 1.4;
        let step = prec * top;
        let mut d0_count = (1.0 / prec).floor() as usize + 2;
        while d0_count > 0 && !(top - (d0_count - 1) as f64 * step >= 0.0) {
            d0_count -= 1;
        }
        Lattice {
            n,
            prec,
            a_up: a_upper(n),
            top,
            d0_count,
        }
    }

    fn a(&self, i: usize) -> f64 {
        self.a_up - i as f64 * self.prec
    }

    fn b(&self, j: usize) -> f64 {
        self.a_up - j as f64 * self.prec
    }

    fn d0(&self, k: usize) -> f64 {
        self.top - k as f64 * (self.prec * self.top)
    }

    /// Number of `j` with `b(j) > a`.
    fn b_count(&self, a: f64) -> usize {
        let mut c = ((self.a_up - a) / self.prec).floor() as usize + 2;
        while c > 0 && !(self.b(c - 1) > a) {
            c -= 1;
        }
        c
    }

    fn hit(&self, col: &Column, k: usize) -> OptimalParams {
        OptimalParams {
            n: self.n,
            d0: self.d0(k),
            d: n_star(self.n),
            a: col.a,
            b: col.b,
            t: 2,
            z: 2,
            route: Route::Descend { prec: self.prec },
        }
    }
}

/// First `T + Z = 4` tuple on the descending lattice for one degree, or `None`.
///
/// For fixed `a`, `Z = 2` holds on a top segment of `b` and `T = 2` for some
/// `d0` holds on a bottom segment, so the first hit is the largest `b` in both.
/// For fixed `(a, b)` the `d0` satisfying the `pi_n` term form a bottom segment
/// and those satisfying the `chi_n` term a top segment, so the largest `d0` of
/// the former decides.
pub fn descend_lattice(n: u32, prec: f64) -> Result<Option<OptimalParams>> {
    check_prec(prec)?;
    let lat = Lattice::new(n, prec);
    let kc = lat.d0_count;
    let mut i = 1;
    while lat.a(i) > 0.0 {
        let a = lat.a(i);
        i += 1;
        let jc = lat.b_count(a);
        let mut cache: Vec<Option<Option<Column>>> = vec![None; jc];
        let mut col = |j: usize| *cache[j].get_or_insert_with(|| column(n, a, lat.b(j)));
        let z_ok = |c: Option<Column>| c.is_some_and(|c| c.z == 2);
        if jc == 0 || !z_ok(col(0)) {
            continue;
        }
        let jz = first_true(0, jc, |j| !z_ok(col(j)));
        // Largest d0 meeting the pi_n term, if it also meets the chi_n term.
        let k_star = |c: &Column| -> Option<usize> {
            let k = first_true(0, kc, |k| {
                small_terms(n, lat.d0(k), c).is_some_and(|s| floor_plus_two(s.constant_term) <= 2)
            });
            (k < kc && floor_plus_two(small_terms(n, lat.d0(k), c)?.height_term) <= 2).then_some(k)
        };
        let last = col(jz - 1).expect("z_ok column");
        if k_star(&last).is_none() {
            continue;
        }
        let jt = first_true(0, jz, |j| k_star(&col(j).expect("z_ok column")).is_some());
        let c = col(jt).expect("z_ok column");
        let k = k_star(&c).expect("checked");
        return Ok(Some(lat.hit(&c, k)));
    }
    Ok(None)
}

/// Walks `n` down from `n_max`, keeping each degree's first hit, and stops at
/// the first degree without one. Returned in ascending order of `n`.
pub fn descend_search(n_max: u32, prec: f64) -> Result<Vec<OptimalParams>> {
    if n_max < 6 {
        return Err(Error::UnsupportedDegree(n_max as i64));
    }
    check_prec(prec)?;
    let mut out = Vec::new();
    let mut n = n_max;
    while n >= 6 {
        match descend_lattice(n, prec)? {
            Some(p) => out.push(p),
            None => break,
        }
        n -= 1;
    }
    out.reverse();
    Ok(out)
}

/// Plain triple loop over the same lattice. Slow; kept as the reference route.
pub fn descend_exhaustive(n: u32, prec: f64) -> Result<Option<OptimalParams>> {
    check_prec(prec)?;
    let lat = Lattice::new(n, prec);
    let mut i = 1;
    while lat.a(i) > 0.0 {
        let a = lat.a(i);
        i += 1;
        for j in 0..lat.b_count(a) {
            let Some(c) = column(n, a, lat.b(j)) else {
                continue;
            };
            for k in 0..lat.d0_count {
                if let Some(s) = small_terms(n, lat.d0(k), &c) {
                    if s.count() + c.z == MIN_SUM {
                        return Ok(Some(lat.hit(&c, k)));
                    }
                }
            }
        }
    }
    Ok(None)
}
