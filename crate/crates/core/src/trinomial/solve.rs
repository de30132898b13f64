//! Integer solutions of `|F(p, q)| = 1` in the box `|p|, |q| <= B`.
//!
//! For fixed `q > 0`, `g(x) = F(x, q)` is strictly monotone between the
//! scaled critical points `q tau`. On each such integer run the `x` with
//! `|g(x)| <= 1` form a block of at most three consecutive integers, found by
//! a galloping search started at `q alpha` for the real root `alpha` in that
//! run. Every decision is an exact integer comparison, so the result is the
//! complete solution set inside the box. `q < 0` mirrors `q > 0` and `q = 0`
//! is checked directly.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::analysis::{analyze_form, belongs_to, FormAnalysis, SHIFT};
use super::TrinomialForm;
use crate::bounds::p0;
use crate::error::{Error, Result};

/// Largest box radius accepted; keeps the scaled enclosures inside `i128`.
pub const MAX_BOX: u64 = 1 << 30;
const MAX_HEIGHT: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub p: i64,
    pub q: i64,
    /// `F(p, q)`, either 1 or -1.
    pub value: i8,
    /// `p != 0`, `q > 0` and `|p| != q`.
    pub regular: bool,
    /// `p > q >= 1` and `p >= p0(n)`.
    pub special: bool,
    /// Exceptional point (index from 0) that `p/q` belongs to, for `q != 0`.
    pub belongs_to: Option<usize>,
}

impl SolutionRecord {
    pub fn new(form: &TrinomialForm, analysis: Option<&FormAnalysis>, p: i64, q: i64, value: i8) -> Self {
        let regular = p != 0 && q > 0 && p.unsigned_abs() != q as u64;
        let special = p > q && q >= 1 && p >= p0(form.n) as i64;
        let belongs = match analysis {
            Some(a) if q != 0 => belongs_to(a, p, q).ok(),
            _ => None,
        };
        SolutionRecord {
            p,
            q,
            value,
            regular,
            special,
            belongs_to: belongs,
        }
    }
}

/// Position of `g(x)` relative to `[-1, 1]`: -2 below, 2 above, else the value.
fn class_of_big(v: &BigInt) -> i8 {
    if v > &BigInt::one() {
        2
    } else if v < &-BigInt::one() {
        -2
    } else {
        v.try_into().expect("within [-1, 1]")
    }
}

fn class_of(v: i128) -> i8 {
    v.clamp(-2, 2) as i8
}

/// `x -> F(x, q)` for one `q`, with the `q` powers cached.
struct Row<'a> {
    form: &'a TrinomialForm,
    q: i64,
    mid: Option<i128>,
    low: Option<i128>,
}

impl<'a> Row<'a> {
    fn new(form: &'a TrinomialForm, q: i64) -> Self {
        let q128 = q as i128;
        let mid = q128.checked_pow(form.n - form.k).and_then(|v| v.checked_mul(form.h_k as i128));
        let low = q128.checked_pow(form.n).and_then(|v| v.checked_mul(form.h_0 as i128));
        Row { form, q, mid, low }
    }

    fn fast(&self, x: i64) -> Option<i128> {
        let x = x as i128;
        let f = self.form;
        let a = x.checked_pow(f.n)?.checked_mul(f.h_n as i128)?;
        let b = x.checked_pow(f.k)?.checked_mul(self.mid?)?;
        a.checked_add(b)?.checked_add(self.low?)
    }

    fn class(&self, x: i64) -> i8 {
        match self.fast(x) {
            Some(v) => class_of(v),
            None => class_of_big(&self.form.eval_big(&BigInt::from(x), &BigInt::from(self.q))),
        }
    }
}

/// First `x` in `[lo, hi]` with `pred(x)`, given `pred(hi)` and monotone `pred`.
fn first_true_from(lo: i64, hi: i64, guess: i64, mut pred: impl FnMut(i64) -> bool) -> i64 {
    let g = guess.clamp(lo, hi);
    let (mut a, mut b); // pred(a) false (or a = lo - 1), pred(b) true
    if pred(g) {
        b = g;
        let mut step = 1i64;
        loop {
            let x = b - step;
            if x < lo {
                a = lo - 1;
                break;
            }
            if pred(x) {
                b = x;
                step *= 2;
            } else {
                a = x;
                break;
            }
        }
    } else {
        a = g;
        let mut step = 1i64;
        loop {
            let x = a + step;
            if x >= hi {
                b = hi;
                break;
            }
            if pred(x) {
                b = x;
                break;
            }
            a = x;
            step *= 2;
        }
    }
    while b - a > 1 {
        let mid = a + (b - a) / 2;
        if pred(mid) {
            b = mid;
        } else {
            a = mid;
        }
    }
    b
}

fn floor_scaled(q: i64, num: i128) -> i64 {
    (q as i128 * num).div_euclid(1i128 << SHIFT) as i64
}

fn ceil_scaled(q: i64, num: i128) -> i64 {
    -floor_scaled(q, -num)
}

/// Points `(x, q)` with `|F(x, q)| = 1` and `|x| <= b`, for one `q > 0`.
fn solve_row(form: &TrinomialForm, analysis: &FormAnalysis, root_piece: &[usize], q: i64, b: i64, out: &mut BTreeSet<(i64, i8)>) {
    let row = Row::new(form, q);
    let mut test = |x: i64, out: &mut BTreeSet<(i64, i8)>| {
        let c = row.class(x);
        if c == 1 || c == -1 {
            out.insert((x, c));
        }
    };
    let crit = &analysis.critical_points;
    let mut left = -b;
    for piece in 0..=crit.len() {
        let right = match crit.get(piece) {
            Some(c) => floor_scaled(q, c.location.lo).min(b),
            None => b,
        };
        if left <= right {
            let guess = root_piece
                .iter()
                .position(|&p| p == piece)
                .map(|j| (q as f64 * analysis.real_roots[j].approx).floor() as i64);
            scan_piece(&row, left, right, guess, &mut test, out);
        }
        if let Some(c) = crit.get(piece) {
            let lo = floor_scaled(q, c.location.lo);
            let hi = ceil_scaled(q, c.location.hi);
            for x in (lo + 1).max(-b)..hi.min(b + 1) {
                test(x, out);
            }
            left = hi.max(-b);
        }
    }
}

fn scan_piece(
    row: &Row,
    lo: i64,
    hi: i64,
    guess: Option<i64>,
    test: &mut impl FnMut(i64, &mut BTreeSet<(i64, i8)>),
    out: &mut BTreeSet<(i64, i8)>,
) {
    let (cl, ch) = (row.class(lo), row.class(hi));
    if (cl == 2 && ch == 2) || (cl == -2 && ch == -2) {
        return;
    }
    // Orient so the class is nondecreasing along the scan.
    let dir: i8 = if cl < ch || (cl == ch && cl < 0) { 1 } else { -1 };
    let first = first_true_from(lo, hi, guess.unwrap_or(if cl * dir >= -1 { lo } else { hi }), |x| {
        row.class(x) * dir >= -1
    });
    let mut x = first;
    while x <= hi && row.class(x) * dir <= 1 {
        test(x, out);
        x += 1;
    }
}

fn check_limits(form: &TrinomialForm, b: u64) -> Result<()> {
    if b == 0 || b > MAX_BOX {
        return Err(Error::InvalidParams(format!("box radius {b} not in 1..={MAX_BOX}")));
    }
    if form.height() > MAX_HEIGHT {
        return Err(Error::InvalidParams(format!("height {} above {MAX_HEIGHT}", form.height())));
    }
    Ok(())
}

/// All `(p, q)` in the box with `|F(p, q)| = 1`, sorted lexicographically.
pub fn solve_box(form: &TrinomialForm, b: u64) -> Result<Vec<SolutionRecord>> {
    let analysis = analyze_form(form)?;
    solve_with(&analysis, b)
}

pub fn solve_with(analysis: &FormAnalysis, b: u64) -> Result<Vec<SolutionRecord>> {
    let form = &analysis.form;
    check_limits(form, b)?;
    let bi = b as i64;
    let root_piece: Vec<usize> = analysis
        .real_roots
        .iter()
        .map(|r| analysis.critical_points.iter().filter(|c| c.location.hi <= r.lo).count())
        .collect();
    let mut points = BTreeSet::new();
    if form.h_n.abs() == 1 {
        let v = form.h_n.signum() as i8;
        let odd = form.n % 2 == 1;
        points.insert((1, 0, v));
        points.insert((-1, 0, if odd { -v } else { v }));
    }
    let sign_flip = |v: i8| if form.n % 2 == 1 { -v } else { v };
    let mut row = BTreeSet::new();
    for q in 1..=bi {
        row.clear();
        solve_row(form, analysis, &root_piece, q, bi, &mut row);
        for &(x, v) in &row {
            points.insert((x, q, v));
            points.insert((-x, -q, sign_flip(v)));
        }
    }
    Ok(points
        .into_iter()
        .map(|(p, q, v)| SolutionRecord::new(form, Some(analysis), p, q, v))
        .collect())
}

/// Reference scan of every box point. Quadratic in `b`; for tests.
pub fn solve_box_bruteforce(form: &TrinomialForm, b: u64) -> Vec<(i64, i64)> {
    let b = b as i64;
    let mut out = Vec::new();
    for p in -b..=b {
        for q in -b..=b {
            if (p, q) != (0, 0) && form.eval(p, q).abs().is_one() {
                out.push((p, q));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn galloping_search() {
        for target in -20..=20 {
            for guess in [-100, -20, 0, 7, 20, 100] {
                assert_eq!(first_true_from(-20, 20, guess, |x| x >= target), target);
            }
        }
        assert_eq!(first_true_from(3, 3, 0, |_| true), 3);
    }

    #[test]
    fn scaled_rounding() {
        let half = 1i128 << (SHIFT - 1);
        assert_eq!(floor_scaled(3, half), 1);
        assert_eq!(ceil_scaled(3, half), 2);
        assert_eq!(floor_scaled(3, -half), -2);
        assert_eq!(ceil_scaled(2, half), 1);
    }

    #[test]
    fn matches_bruteforce_on_small_boxes() {
        let forms = [
            (1, 1, 1, 6, 3),
            (1, -1, 1, 6, 3),
            (1, -3, 1, 6, 2),
            (1, 1, -1, 7, 1),
            (2, -3, 2, 6, 3),
            (1, -2, -1, 8, 4),
            (1, 3, -3, 9, 5),
            (3, -4, 4, 6, 1),
        ];
        for (a, b, c, n, k) in forms {
            let f = TrinomialForm::new(a, b, c, n, k).unwrap();
            let fast: Vec<(i64, i64)> = solve_box(&f, 40).unwrap().iter().map(|s| (s.p, s.q)).collect();
            assert_eq!(fast, solve_box_bruteforce(&f, 40), "{f}");
        }
    }

    #[test]
    fn records_are_classified() {
        let f = TrinomialForm::new(1, 1, 1, 6, 3).unwrap();
        let sols = solve_box(&f, 50).unwrap();
        assert_eq!(sols.len() % 2, 0);
        for s in &sols {
            assert_eq!(f.eval(s.p, s.q), BigInt::from(s.value));
            assert_eq!(s.regular, s.p != 0 && s.q > 0 && s.p.abs() != s.q);
            if s.q != 0 {
                assert!(s.belongs_to.is_some());
            }
        }
    }
}
