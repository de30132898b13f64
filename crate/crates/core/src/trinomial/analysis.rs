//! Real roots and critical points of `f(X) = F(X, 1)`.
//!
//! `f'(X) = X^(k-1) (n h_n X^(n-k) + k h_k)`, so a nonzero critical point is a
//! real `tau` with `tau^m = rho` where `m = n - k` and `rho = -k h_k / (n h_n)`.
//! At such a point `f(tau) = h_0 + h_k (m/n) tau^k` and
//! `f''(tau) = k h_k (k - n) tau^(k-2)`, so both signs are decided exactly by
//! integer comparisons of powers of `rho`. Locations are kept as dyadic
//! enclosures `[lo, hi] / 2^SHIFT`, and every sign of `f` at a dyadic point
//! is an exact integer evaluation.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use super::TrinomialForm;
use crate::bounds::degree_profile;
use crate::error::{Error, Result};

/// Enclosure denominators are `2^SHIFT`, so widths are at most `2^-48 < 1e-12`.
pub const SHIFT: u32 = 48;

fn scale() -> f64 {
    (SHIFT as f64).exp2()
}

/// Numerators over `2^SHIFT`; `lo == hi` when the point is an exact dyadic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootEnclosure {
    pub lo: i128,
    pub hi: i128,
    pub approx: f64,
}

impl RootEnclosure {
    pub fn width(&self) -> f64 {
        (self.hi - self.lo) as f64 / scale()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalKind {
    /// `X = 0` with `k >= 2`.
    Origin,
    /// A real solution of `X^(n-k) = rho`.
    Binomial,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub kind: CriticalKind,
    pub location: RootEnclosure,
    /// Sign of `tau` (0 at the origin).
    pub sign: i8,
    /// Sign of `f(tau)`.
    pub value_sign: i8,
    pub proper: bool,
    /// True when `f` has a local extremum here (false only for an odd-order flat point at 0).
    pub extremum: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum ExceptionalKind {
    /// Index into `real_roots`.
    Root(usize),
    /// Index into `critical_points`.
    Critical(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExceptionalPoint {
    pub kind: ExceptionalKind,
    pub approx: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormAnalysis {
    pub form: TrinomialForm,
    /// Ascending.
    pub real_roots: Vec<RootEnclosure>,
    /// Ascending.
    pub critical_points: Vec<CriticalPoint>,
    pub r_f: u32,
    pub c_f: u32,
    /// Ascending.
    pub exceptional: Vec<ExceptionalPoint>,
    /// Indices into `critical_points` of the partition boundaries `eta_1 < ... < eta_{c-1}`.
    pub boundaries: Vec<usize>,
    /// Every gap between consecutive exceptional points holds an improper critical point.
    pub interleaving: bool,
    /// Gaps that hold more than one improper critical point.
    pub crowded_gaps: Vec<usize>,
    pub v: u32,
}

impl FormAnalysis {
    pub fn within_v(&self) -> bool {
        self.r_f + self.c_f <= self.v
    }
}

fn sgn(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn sgn_i(x: i64) -> i8 {
    x.signum() as i8
}

/// `rho = num / den` with `den > 0`.
#[derive(Debug, Clone, Copy)]
struct Rho {
    num: i64,
    den: i64,
    m: u32,
}

impl Rho {
    fn of(form: &TrinomialForm) -> Self {
        let mut num = -(form.k as i64) * form.h_k;
        let mut den = form.n as i64 * form.h_n;
        if den < 0 {
            num = -num;
            den = -den;
        }
        Rho {
            num,
            den,
            m: form.n - form.k,
        }
    }

    /// Compares `(a / b)^m` with `|rho|` for `a >= 0`, `b > 0`.
    fn cmp_abs_root(&self, a: &BigInt, b: &BigInt) -> Ordering {
        (a.pow(self.m) * self.den).cmp(&(b.pow(self.m) * self.num.unsigned_abs()))
    }

    /// Enclosure of `|rho|^(1/m)`.
    fn enclose_abs_root(&self) -> (i128, i128) {
        let unit = BigInt::from(1u8) << SHIFT;
        let bound = (self.num.unsigned_abs() / self.den as u64).max(1) as i128 + 1;
        let (mut lo, mut hi) = (0i128, bound << SHIFT);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            match self.cmp_abs_root(&BigInt::from(mid), &unit) {
                Ordering::Less => lo = mid,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return (mid, mid),
            }
        }
        (lo, hi)
    }
}

/// Sign of `f(x / 2^SHIFT)`.
fn sign_at(form: &TrinomialForm, x: i128) -> i8 {
    sgn(&form.eval_big(&BigInt::from(x), &(BigInt::from(1u8) << SHIFT)))
}

fn approx(lo: i128, hi: i128) -> f64 {
    (lo as f64 + (hi - lo) as f64 / 2.0) / scale()
}

/// Exact signs of `f(tau)` and `f''(tau)` at `tau = s |rho|^(1/m)`.
fn binomial_signs(form: &TrinomialForm, rho: Rho, s: i64) -> (i8, i8) {
    let (n, k) = (form.n, form.k);
    let sk = if k % 2 == 0 { 1 } else { s };
    // n f(tau) = A + B w with w = |tau|^k > 0.
    let a = n as i64 * form.h_0;
    let b = form.h_k * (n - k) as i64 * sk;
    let value = if sgn_i(a) == sgn_i(b) {
        sgn_i(a)
    } else {
        // w vs w* = |a| / |b|: compare w^m = |rho|^k with (|a|/|b|)^m.
        let lhs = BigInt::from(rho.num.unsigned_abs()).pow(k) * BigInt::from(b.unsigned_abs()).pow(rho.m);
        let rhs = BigInt::from(a.unsigned_abs()).pow(rho.m) * BigInt::from(rho.den).pow(k);
        match lhs.cmp(&rhs) {
            Ordering::Greater => sgn_i(b),
            Ordering::Less => sgn_i(a),
            Ordering::Equal => 0,
        }
    };
    let second = -sgn_i(form.h_k) * sk as i8;
    (value, second)
}

pub fn analyze_form(form: &TrinomialForm) -> Result<FormAnalysis> {
    let profile = degree_profile(form.n as i64)?;
    let rho = Rho::of(form);
    let mut crit: Vec<CriticalPoint> = Vec::new();

    let binomial = |s: i64| -> Result<CriticalPoint> {
        let (lo, hi) = rho.enclose_abs_root();
        let (lo, hi) = if s > 0 { (lo, hi) } else { (-hi, -lo) };
        let (value, second) = binomial_signs(form, rho, s);
        if value == 0 {
            return Err(Error::Analysis(format!("{form}: f vanishes at a critical point")));
        }
        Ok(CriticalPoint {
            kind: CriticalKind::Binomial,
            location: RootEnclosure { lo, hi, approx: approx(lo, hi) },
            sign: s as i8,
            value_sign: value,
            proper: value * second > 0,
            extremum: true,
        })
    };
    let mut nonzero = Vec::new();
    if rho.m % 2 == 0 {
        if rho.num > 0 {
            nonzero.push(binomial(-1)?);
            nonzero.push(binomial(1)?);
        }
    } else {
        nonzero.push(binomial(rho.num.signum())?);
    }
    let origin = (form.k >= 2).then(|| {
        // Near 0, f'' has the sign of h_k X^(k-2): constant when k is even.
        let even = form.k % 2 == 0;
        CriticalPoint {
            kind: CriticalKind::Origin,
            location: RootEnclosure { lo: 0, hi: 0, approx: 0.0 },
            sign: 0,
            value_sign: sgn_i(form.h_0),
            proper: even && sgn_i(form.h_0) == sgn_i(form.h_k),
            extremum: even,
        }
    });
    crit.extend(nonzero.iter().filter(|c| c.sign < 0).cloned());
    crit.extend(origin);
    crit.extend(nonzero.iter().filter(|c| c.sign > 0).cloned());

    // Monotone pieces between consecutive critical points.
    let n_sign = sgn_i(form.h_n);
    let minus_inf = if form.n % 2 == 0 { n_sign } else { -n_sign };
    let cauchy = (1 + form.h_k.unsigned_abs().max(form.h_0.unsigned_abs()) as i128) << SHIFT;
    let mut roots = Vec::new();
    let mut exceptional = Vec::new();
    // Position in the merged walk: piece j is 2j, critical point i is 2i + 1.
    let mut ranks = Vec::new();
    for piece in 0..=crit.len() {
        let (left_sign, lo) = match piece {
            0 => (minus_inf, -cauchy),
            _ => (crit[piece - 1].value_sign, crit[piece - 1].location.hi),
        };
        let (right_sign, hi) = match crit.get(piece) {
            None => (n_sign, cauchy),
            Some(c) => (c.value_sign, c.location.lo),
        };
        if left_sign * right_sign < 0 {
            let enc = isolate(form, lo, hi, left_sign, right_sign)?;
            exceptional.push(ExceptionalPoint {
                kind: ExceptionalKind::Root(roots.len()),
                approx: enc.approx,
            });
            ranks.push(2 * piece);
            roots.push(enc);
        }
        if let Some(c) = crit.get(piece) {
            if c.proper {
                exceptional.push(ExceptionalPoint {
                    kind: ExceptionalKind::Critical(piece),
                    approx: c.location.approx,
                });
                ranks.push(2 * piece + 1);
            }
        }
    }

    // Improper critical points between consecutive exceptional points.
    let mut boundaries = Vec::new();
    let mut interleaving = true;
    let mut crowded_gaps = Vec::new();
    for (gap, w) in ranks.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        let inside: Vec<usize> = (0..crit.len())
            .filter(|&i| !crit[i].proper && a < 2 * i + 1 && 2 * i + 1 < b)
            .collect();
        if inside.len() > 1 {
            crowded_gaps.push(gap);
        }
        let pick = inside.iter().copied().find(|&i| crit[i].extremum).or(inside.first().copied());
        match pick {
            Some(i) => boundaries.push(i),
            None => interleaving = false,
        }
    }

    Ok(FormAnalysis {
        form: *form,
        r_f: roots.len() as u32,
        c_f: crit.iter().filter(|c| c.proper).count() as u32,
        real_roots: roots,
        critical_points: crit,
        exceptional,
        boundaries,
        interleaving,
        crowded_gaps,
        v: profile.v,
    })
}

/// Bisects the unique root of `f` on a monotone piece `[lo, hi] / 2^SHIFT`.
fn isolate(form: &TrinomialForm, mut lo: i128, mut hi: i128, ls: i8, rs: i8) -> Result<RootEnclosure> {
    let (sl, sr) = (sign_at(form, lo), sign_at(form, hi));
    if sl == 0 {
        return Ok(RootEnclosure { lo, hi: lo, approx: approx(lo, lo) });
    }
    if sr == 0 {
        return Ok(RootEnclosure { lo: hi, hi, approx: approx(hi, hi) });
    }
    if sl != ls || sr != rs {
        return Err(Error::Analysis(format!(
            "{form}: a real root lies within 2^-{SHIFT} of a critical point"
        )));
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match sign_at(form, mid) {
            0 => return Ok(RootEnclosure { lo: mid, hi: mid, approx: approx(mid, mid) }),
            s if s == ls => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(RootEnclosure { lo, hi, approx: approx(lo, hi) })
}

/// Compares `p / q` (with `q > 0`) against a critical point exactly.
pub(crate) fn cmp_with_critical(form: &TrinomialForm, c: &CriticalPoint, p: i64, q: i64) -> Ordering {
    debug_assert!(q > 0);
    let ps = p.signum() as i8;
    if c.kind == CriticalKind::Origin {
        return ps.cmp(&0);
    }
    if ps != c.sign {
        return ps.cmp(&c.sign);
    }
    let rho = Rho::of(form);
    let abs = rho.cmp_abs_root(&BigInt::from(p.unsigned_abs()), &BigInt::from(q));
    if c.sign > 0 {
        abs
    } else {
        abs.reverse()
    }
}

/// Index (from 0, in ascending order of the exceptional points) of the
/// exceptional point that `p / q` belongs to. The partition is
/// `J_0 = (-inf, eta_1)`, `J_i = [eta_i, eta_(i+1))`, so a ratio equal to a
/// boundary goes to the interval on its right.
pub fn belongs_to(analysis: &FormAnalysis, p: i64, q: i64) -> Result<usize> {
    if analysis.exceptional.is_empty() {
        return Err(Error::NoExceptionalPoints(format!("{p}/{q}")));
    }
    if !analysis.interleaving {
        return Err(Error::Analysis(format!(
            "{}: improper critical points do not separate the exceptional points",
            analysis.form
        )));
    }
    if q == 0 {
        return Err(Error::InvalidParams(format!("{p}/{q} is not a rational number")));
    }
    let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
    let form = &analysis.form;
    Ok(analysis
        .boundaries
        .iter()
        .filter(|&&i| cmp_with_critical(form, &analysis.critical_points[i], p, q) != Ordering::Less)
        .count())
}
