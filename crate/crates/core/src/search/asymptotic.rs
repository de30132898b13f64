//! Closed-form parameters for `n >= 507`: `d0 = n*/2`, `d = n*`, `a = 1/4` and
//! `b = 1 - sqrt(2n + 1/8) / (c n^2/(n - 1) + 2)` with `c = 8/(9 C^2 - 1) = 32/45`
//! for `C = 7/6`. These give `T = Z = 2`; the report also checks the
//! intermediate estimates that argument relies on, in both precisions.

use serde::Serialize;

use super::{OptimalParams, Route};
use crate::bounds::hp::{hp_large_derived, hp_ln_k, HpDerived};
use crate::bounds::{self, cross_check, k_const, large_derived, n_star, LargeDerived, PrecisionCheck};
use crate::error::{Error, Result};
use crate::precision::{ge, gt, le, lt, Hf, HpCtx};

pub const ASYMPTOTIC_MIN_N: u32 = 507;

const C_NUM: f64 = 32.0;
const C_DEN: f64 = 45.0;

pub fn asymptotic_b(n: u32) -> f64 {
    let nf = n as f64;
    let c = C_NUM / C_DEN;
    1.0 - (2.0 * nf + 0.125).sqrt() / (c * nf * nf / (nf - 1.0) + 2.0)
}

fn hp_asymptotic_b(ctx: &mut HpCtx, n: u32) -> Hf {
    let nf = ctx.int(n as i64);
    let c = ctx.ratio(32, 45);
    let rad = ctx.add(&ctx.mul(&ctx.int(2), &nf), &ctx.ratio(1, 8));
    let den = ctx.add(
        &ctx.div(&ctx.mul(&c, &ctx.mul(&nf, &nf)), &ctx.sub(&nf, &ctx.int(1))),
        &ctx.int(2),
    );
    ctx.sub(&ctx.int(1), &ctx.div(&ctx.sqrt(&rad), &den))
}

pub fn asymptotic_params(n: u32) -> Result<OptimalParams> {
    if n < ASYMPTOTIC_MIN_N {
        return Err(Error::OutsideAsymptoticRegime {
            n,
            min: ASYMPTOTIC_MIN_N,
        });
    }
    let ns = n_star(n);
    let mut p = OptimalParams {
        n,
        d0: ns / 2.0,
        d: ns,
        a: 0.25,
        b: asymptotic_b(n),
        t: 0,
        z: 0,
        route: Route::Asymptotic,
    };
    p.t = bounds::small_count(p.small(), p.large(), n)?;
    p.z = bounds::large_count(p.large(), n)?;
    Ok(p)
}

/// One estimate from the closed-form argument, checked in both precisions.
#[derive(Debug, Clone, Serialize)]
pub struct SideCondition {
    pub name: String,
    pub binary64: bool,
    pub high: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticReport {
    pub params: OptimalParams,
    pub derived: LargeDerived,
    pub conditions: Vec<SideCondition>,
    pub precision: PrecisionCheck,
}

impl AsymptoticReport {
    pub fn all_hold(&self) -> bool {
        self.params.t == 2
            && self.params.z == 2
            && self.precision.certified()
            && self.conditions.iter().all(|c| c.binary64 && c.high)
    }
}

struct HpSide {
    b: Hf,
    dv: HpDerived,
    ln_k_half: Hf,
}

fn hp_side(ctx: &mut HpCtx, n: u32) -> Result<HpSide> {
    let a = ctx.ratio(1, 4);
    let b = hp_asymptotic_b(ctx, n);
    let dv = hp_large_derived(ctx, &a, &b, n).ok_or(Error::domain("L", "closed-form b out of range"))?;
    let half = ctx.ratio(n as i64 - 2, 4);
    let ln_k_half = hp_ln_k(ctx, &half, n);
    Ok(HpSide { b, dv, ln_k_half })
}

/// [`asymptotic_params`] plus every side estimate and the two-precision check.
pub fn asymptotic_report(ctx: &mut HpCtx, n: u32) -> Result<AsymptoticReport> {
    let params = asymptotic_params(n)?;
    let dv = large_derived(params.large(), n)?;
    let hp = hp_side(ctx, n)?;
    let nf = n as f64;
    let nh = ctx.int(n as i64);
    let mut conditions = Vec::new();
    let mut push = |name: String, binary64: bool, high: bool| conditions.push(SideCondition { name, binary64, high });

    let c = ctx.dec("0.711");
    push("E < 0.711".into(), dv.e < 0.711, lt(&hp.dv.e, &c));
    let c = ctx.dec("0.87509");
    push("b > 0.87509".into(), params.b > 0.87509, gt(&hp.b, &c));
    let quarter = ctx.ratio(1, 4);
    push("b > a = 1/4".into(), params.b > 0.25, gt(&hp.b, &quarter));
    let (lo, hi) = (ctx.dec("42.8"), ctx.dec("44.08"));
    push(
        "42.8 <= chi_n <= 44.08".into(),
        (42.8..=44.08).contains(&dv.chi_n),
        ge(&hp.dv.chi_n, &lo) && le(&hp.dv.chi_n, &hi),
    );
    let lo = ctx.add(&ctx.int(46), &ctx.mul(&ctx.int(19), &nh));
    let hi = ctx.add(&ctx.int(37), &ctx.mul(&ctx.int(21), &nh));
    push(
        "46 + 19n <= pi_n <= 37 + 21n".into(),
        46.0 + 19.0 * nf <= dv.pi_n && dv.pi_n <= 37.0 + 21.0 * nf,
        ge(&hp.dv.pi_n, &lo) && le(&hp.dv.pi_n, &hi),
    );
    let lo = ctx.mul(&ctx.ratio(32, 45), &nh);
    let hi = ctx.add(&lo, &ctx.int(3));
    let l_lo = C_NUM / C_DEN * nf;
    push(
        "(32/45) n <= L <= (32/45) n + 3".into(),
        l_lo <= dv.l && dv.l <= l_lo + 3.0,
        ge(&hp.dv.l, &lo) && le(&hp.dv.l, &hi),
    );
    let five = ctx.int(5);
    let ln5 = ctx.ln(&five);
    let bound = ctx.add(&ln5, &quarter);
    push(
        "K_{n*/2}(n) <= 5 e^(1/4)".into(),
        k_const(n_star(n) / 2.0, n) <= 5.0 * 0.25f64.exp(),
        le(&hp.ln_k_half, &bound),
    );
    let c = ctx.dec("1.9");
    let ln19 = ctx.ln(&c);
    let poly = ctx.mul(&ctx.int(n as i64 - 2), &ctx.int(n as i64 - 4));
    let rhs = ctx.div(&ctx.mul(&ln19, &poly), &ctx.int(8));
    push(
        "pi_n < (log 1.9 / 8)(n - 2)(n - 4)".into(),
        dv.pi_n < 1.9f64.ln() / 8.0 * (nf - 2.0) * (nf - 4.0),
        lt(&hp.dv.pi_n, &rhs),
    );

    let precision = cross_check(ctx, n, params.small(), params.large());
    Ok(AsymptoticReport {
        params,
        derived: dv,
        conditions,
        precision,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_below_regime() {
        assert!(matches!(
            asymptotic_params(506),
            Err(Error::OutsideAsymptoticRegime { n: 506, min: 507 })
        ));
    }

    #[test]
    fn regime_start() {
        let p = asymptotic_params(507).unwrap();
        assert_eq!((p.t, p.z), (2, 2));
        assert_eq!(p.d0, 126.25);
        let mut ctx = HpCtx::default();
        let r = asymptotic_report(&mut ctx, 507).unwrap();
        assert!(r.all_hold(), "{:#?}", r.conditions);
    }
}
