//! The same bound formulas evaluated at [`HP_BITS`](crate::precision::HP_BITS) bits.
//!
//! This is the second route of the two-precision check: a tuple is accepted
//! only when both routes agree on `T`, `Z` and all three validity flags, and
//! neither floor argument sits within [`FLOOR_MARGIN`](crate::precision::FLOOR_MARGIN)
//! of an integer.

use serde::Serialize;

use super::{breakdown, BoundBreakdown, LargeParams, SmallParams};
use crate::precision::{ge, gt, le, lt, Hf, HpCtx};

/// Parameters held at high precision.
#[derive(Debug, Clone)]
pub struct HpParams {
    pub d0: Hf,
    pub d: Hf,
    pub a: Hf,
    pub b: Hf,
}

impl HpParams {
    /// Exact conversion of binary64 parameters.
    pub fn from_f64(ctx: &HpCtx, small: SmallParams, large: LargeParams) -> Self {
        HpParams {
            d0: ctx.f(small.d0),
            d: ctx.f(small.d),
            a: ctx.f(large.a),
            b: ctx.f(large.b),
        }
    }
}

/// Intermediate values of the large-solution machinery at high precision.
#[derive(Debug, Clone)]
pub struct HpDerived {
    pub l: Hf,
    pub d: Hf,
    pub a: Hf,
    pub e: Hf,
    pub chi_n: Hf,
    pub pi_n: Hf,
}

/// High-precision counterpart of [`BoundBreakdown`], with the key quantities
/// rounded to binary64 for display.
#[derive(Debug, Clone, Serialize)]
pub struct HpBreakdown {
    pub n: u32,
    pub small_valid: bool,
    pub large_valid: bool,
    pub thresholds_ok: bool,
    pub t: Option<u32>,
    pub z: Option<u32>,
    pub k_d: f64,
    pub k_d0: f64,
    pub ln_q1: f64,
    pub l: Option<f64>,
    pub d: Option<f64>,
    pub a: Option<f64>,
    pub e: Option<f64>,
    pub chi_n: Option<f64>,
    pub pi_n: Option<f64>,
    pub small_quantity: Option<f64>,
    pub large_quantity: Option<f64>,
    /// A floor argument lies within the safety margin of an integer.
    pub near_integer: bool,
}

pub fn hp_n_star(ctx: &HpCtx, n: u32) -> Hf {
    ctx.ratio(n as i64 - 2, 2)
}

/// `ln K_d(n)`.
pub fn hp_ln_k(ctx: &mut HpCtx, d: &Hf, n: u32) -> Hf {
    let nf = ctx.int(n as i64);
    let one = ctx.int(1);
    let two = ctx.int(2);
    // m_n = 2 sqrt(2n / ((n-1)(n-2)))
    let nm1 = ctx.int(n as i64 - 1);
    let nm2 = ctx.int(n as i64 - 2);
    let inner = ctx.div(&ctx.mul(&two, &nf), &ctx.mul(&nm1, &nm2));
    let m = ctx.mul(&two, &ctx.sqrt(&inner));
    // r_n = 2.032^(1/n)
    let base = ctx.dec("2.032");
    let ln_base = ctx.ln(&base);
    let r = ctx.exp(&ctx.div(&ln_base, &nf));
    // u_n = sqrt(2 / ((n-2) p0^n))
    let p0n = ctx.powi(&ctx.int(super::p0(n) as i64), n as usize);
    let u = ctx.sqrt(&ctx.div(&two, &ctx.mul(&nm2, &p0n)));
    let growth = ctx.mul(&r, &ctx.add(&one, &u));
    let ln_growth = ctx.ln(&growth);
    let ln_m = ctx.ln(&m);
    ctx.add(&ln_m, &ctx.mul(d, &ln_growth))
}

/// `ln Q_1 = (n* - d0) ln p0 - ln K_{d0}(n)`.
pub fn hp_ln_q_one(ctx: &mut HpCtx, d0: &Hf, n: u32) -> Hf {
    let c0 = ctx.sub(&hp_n_star(ctx, n), d0);
    let p0 = ctx.int(super::p0(n) as i64);
    let ln_p0 = ctx.ln(&p0);
    let lnk0 = hp_ln_k(ctx, d0, n);
    ctx.sub(&ctx.mul(&c0, &ln_p0), &lnk0)
}

pub fn hp_valid_small(ctx: &mut HpCtx, d0: &Hf, d: &Hf, n: u32) -> bool {
    let ns = hp_n_star(ctx, n);
    let zero = ctx.int(0);
    let one = ctx.int(1);
    let margin = ctx.dec("1.4");
    let upper = ctx.sub(&ns, &margin);
    if !(le(&zero, d0) && le(d0, &upper) && lt(&one, d) && le(d, &ns)) {
        return false;
    }
    let lnq1 = hp_ln_q_one(ctx, d0, n);
    let lhs = ctx.mul(&ctx.sub(d, &one), &lnq1);
    let lnk = hp_ln_k(ctx, d, n);
    let rhs = ctx.max(&lnk, &zero);
    gt(&lhs, &rhs)
}

pub fn hp_b_limit(ctx: &mut HpCtx, a: &Hf, n: u32) -> Hf {
    let nf = ctx.int(n as i64);
    let two = ctx.int(2);
    let num = ctx.mul(&two, &ctx.add(&nf, &ctx.mul(a, a)));
    let frac = ctx.div(&num, &ctx.mul(&nf, &nf));
    ctx.sub(&ctx.int(1), &ctx.sqrt(&frac))
}

pub fn hp_valid_large(ctx: &mut HpCtx, a: &Hf, b: &Hf, n: u32) -> bool {
    let zero = ctx.int(0);
    let limit = hp_b_limit(ctx, a, n);
    lt(&zero, a) && lt(a, b) && lt(b, &limit)
}

/// `L, D, A, E, chi_n, pi_n`; `None` when `L >= n`, `b >= 1` or `b^2 <= a^2`.
pub fn hp_large_derived(ctx: &mut HpCtx, a: &Hf, b: &Hf, n: u32) -> Option<HpDerived> {
    let nf = ctx.int(n as i64);
    let one = ctx.int(1);
    let two = ctx.int(2);
    let four = ctx.int(4);
    if !lt(b, &one) {
        return None;
    }
    let a2 = ctx.mul(a, a);
    let l = ctx.div(&ctx.sqrt(&ctx.mul(&two, &ctx.add(&nf, &a2))), &ctx.sub(&one, b));
    if !lt(&l, &nf) {
        return None;
    }
    let b2 = ctx.mul(b, b);
    if !gt(&b2, &a2) {
        return None;
    }
    let d = ctx.div(&l, &ctx.sub(&nf, &l));
    let big_a = ctx.div(&one, &a2);
    let e = ctx.div(&one, &ctx.mul(&two, &ctx.sub(&b2, &a2)));
    let chi = ctx.add(&ctx.mul(&d, &ctx.add(&big_a, &one)), &one);
    let ln2 = ctx.ln(&two);
    let ln_n = ctx.ln(&nf);
    let t1 = ctx.mul(&ctx.add(&ctx.mul(&d, &ctx.add(&four, &big_a)), &two), &ln2);
    let t2 = ctx.div(&ctx.mul(&ctx.add(&d, &one), &ln_n), &two);
    let t3 = ctx.div(&ctx.mul(&ctx.mul(&nf, &big_a), &d), &two);
    let pi = ctx.add(&ctx.add(&t1, &t2), &t3);
    Some(HpDerived {
        l,
        d,
        a: big_a,
        e,
        chi_n: chi,
        pi_n: pi,
    })
}

pub fn hp_pi_threshold(ctx: &mut HpCtx, n: u32) -> Hf {
    let two = ctx.int(2);
    let ln2 = ctx.ln(&two);
    let ln_n = ctx.ln(&ctx.int(n as i64));
    ctx.add(&ctx.mul(&ctx.int(5), &ln2), &ctx.mul(&two, &ln_n))
}

pub fn hp_thresholds_ok(ctx: &mut HpCtx, dv: &HpDerived, n: u32) -> bool {
    let thr = hp_pi_threshold(ctx, n);
    ge(&dv.chi_n, &ctx.int(2)) && ge(&dv.pi_n, &thr)
}

/// `max` of the two floor arguments of `T`; `None` if the log argument is not above 1.
pub fn hp_small_quantity(ctx: &mut HpCtx, d0: &Hf, d: &Hf, dv: &HpDerived, n: u32) -> Option<Hf> {
    let nf = ctx.int(n as i64);
    let one = ctx.int(1);
    let dm1 = ctx.sub(d, &one);
    let ln_d = ctx.ln(d);
    let denom = ctx.add(&ctx.mul(d0, &dm1), d);
    let arg1 = ctx.add(&ctx.div(&ctx.mul(&ctx.mul(&dv.chi_n, &nf), &dm1), &denom), &one);
    let ln_arg1 = ctx.ln(&arg1);
    let q1 = ctx.div(&ln_arg1, &ln_d);
    let lnq1 = hp_ln_q_one(ctx, d0, n);
    let lnk = hp_ln_k(ctx, d, n);
    let gap = ctx.sub(&lnq1, &ctx.div(&lnk, &dm1));
    if !gt(&gap, &ctx.int(0)) {
        return None;
    }
    let arg2 = ctx.add(&ctx.div(&dv.pi_n, &gap), &one);
    let ln_arg2 = ctx.ln(&arg2);
    let q2 = ctx.div(&ln_arg2, &ln_d);
    Some(ctx.max(&q1, &q2))
}

pub fn hp_large_quantity(ctx: &mut HpCtx, dv: &HpDerived, n: u32) -> Option<Hf> {
    let two = ctx.int(2);
    if !gt(&dv.l, &two) {
        return None;
    }
    let nf = ctx.int(n as i64);
    let ln_e = ctx.ln(&dv.e);
    let ln_n = ctx.ln(&nf);
    let ln_l2 = ctx.ln(&ctx.sub(&dv.l, &two));
    let ln_nm1 = ctx.ln(&ctx.int(n as i64 - 1));
    let num = ctx.sub(&ctx.add(&ln_e, &ctx.mul(&two, &ln_n)), &ln_l2);
    Some(ctx.div(&num, &ln_nm1))
}

pub fn breakdown_hp(ctx: &mut HpCtx, n: u32, p: &HpParams) -> HpBreakdown {
    let small_valid = hp_valid_small(ctx, &p.d0, &p.d, n);
    let large_valid = hp_valid_large(ctx, &p.a, &p.b, n);
    let derived = if large_valid {
        hp_large_derived(ctx, &p.a, &p.b, n)
    } else {
        None
    };
    let thresholds_ok = match &derived {
        Some(dv) => hp_thresholds_ok(ctx, dv, n),
        None => false,
    };
    let mut near_integer = false;
    let mut small_quantity = None;
    let mut t = None;
    if let (true, Some(dv)) = (small_valid, &derived) {
        if let Some(q) = hp_small_quantity(ctx, &p.d0, &p.d, dv, n) {
            small_quantity = Some(ctx.to_f64(&q));
            if let Some((fl, near)) = ctx.floor_checked(&q) {
                near_integer |= near;
                t = Some((fl + 2) as u32);
            }
        }
    }
    let mut large_quantity = None;
    let mut z = None;
    if let Some(dv) = &derived {
        if let Some(q) = hp_large_quantity(ctx, dv, n) {
            large_quantity = Some(ctx.to_f64(&q));
            if thresholds_ok {
                if let Some((fl, near)) = ctx.floor_checked(&q) {
                    near_integer |= near;
                    z = Some((fl + 2) as u32);
                }
            }
        }
    }
    let lnk_d = hp_ln_k(ctx, &p.d, n);
    let lnk_d0 = hp_ln_k(ctx, &p.d0, n);
    let lnq1 = hp_ln_q_one(ctx, &p.d0, n);
    let k_d = ctx.exp(&lnk_d);
    let k_d0 = ctx.exp(&lnk_d0);
    let render = |ctx: &mut HpCtx, x: &Hf| ctx.to_f64(x);
    HpBreakdown {
        n,
        small_valid,
        large_valid,
        thresholds_ok,
        t,
        z,
        k_d: render(ctx, &k_d),
        k_d0: render(ctx, &k_d0),
        ln_q1: render(ctx, &lnq1),
        l: derived.as_ref().map(|dv| render(ctx, &dv.l)),
        d: derived.as_ref().map(|dv| render(ctx, &dv.d)),
        a: derived.as_ref().map(|dv| render(ctx, &dv.a)),
        e: derived.as_ref().map(|dv| render(ctx, &dv.e)),
        chi_n: derived.as_ref().map(|dv| render(ctx, &dv.chi_n)),
        pi_n: derived.as_ref().map(|dv| render(ctx, &dv.pi_n)),
        small_quantity,
        large_quantity,
        near_integer,
    }
}

/// Outcome of evaluating one tuple in both precisions.
#[derive(Debug, Clone, Serialize)]
pub struct PrecisionCheck {
    pub binary64: BoundBreakdown,
    pub high: HpBreakdown,
    /// `T`, `Z` and all validity flags coincide.
    pub agree: bool,
}

impl PrecisionCheck {
    /// Both routes agree, the tuple is accepted, and no floor is borderline.
    pub fn certified(&self) -> bool {
        self.agree && self.binary64.accepted() && !self.high.near_integer
    }

    /// Borderline floors need a human look rather than automatic acceptance.
    pub fn needs_review(&self) -> bool {
        self.high.near_integer
    }
}

/// Recomputes a binary64 tuple at high precision and compares.
pub fn cross_check(ctx: &mut HpCtx, n: u32, small: SmallParams, large: LargeParams) -> PrecisionCheck {
    let low = breakdown(n, small, large);
    let params = HpParams::from_f64(ctx, small, large);
    let high = breakdown_hp(ctx, n, &params);
    let agree = low.t == high.t
        && low.z == high.z
        && low.small_valid == high.small_valid
        && low.large_valid == high.large_valid
        && low.thresholds_ok == high.thresholds_ok;
    PrecisionCheck {
        binary64: low,
        high,
        agree,
    }
}
