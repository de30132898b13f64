//! Counting chains under a gap condition.
//!
//! A chain `L <= y_0 <= ... <= y_l <= M` with `y_{i+1} >= y_i^(p-1) / T`
//! has length
//!
//! ```text
//! l <= log[ log(M T^(-1/(p-2))) / log(L T^(-1/(p-2))) ] / log(p - 1)
//! ```
//!
//! whenever `p > 2` and `L^(p-2) > T`. The bound is attained by the chain
//! `y_0 = L`, `y_i = y_{i-1}^(p-1) / T`, which [`sharp_chain`] builds.
//!
//! Chains grow doubly exponentially, so every routine here accepts or
//! produces values in log space as well.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::precision::{lt, Hf, HpCtx};

/// Above this magnitude [`sharp_chain`] stops exponentiating and continues in log space.
pub const LINEAR_LIMIT: f64 = 1e150;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GapViolation {
    #[error("L, M and T must be positive and finite (L = {l}, M = {m}, T = {t})")]
    NonPositive { l: f64, m: f64, t: f64 },
    #[error("ordering: L = {l} exceeds M = {m}")]
    Ordering { l: f64, m: f64 },
    #[error("p-range: p = {p} must exceed 2")]
    Exponent { p: f64 },
    #[error("L-vs-T: L^(p-2) = {lhs} does not exceed T = {t}")]
    Growth { lhs: f64, t: f64 },
}

/// A validated instance, stored by logarithms so huge `M` are representable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapInstance {
    pub ln_l: f64,
    pub ln_m: f64,
    pub ln_t: f64,
    pub p: f64,
}

impl GapInstance {
    pub fn new(l: f64, m: f64, t: f64, p: f64) -> Result<Self, GapViolation> {
        if !(l > 0.0 && m > 0.0 && t > 0.0 && l.is_finite() && m.is_finite() && t.is_finite()) {
            return Err(GapViolation::NonPositive { l, m, t });
        }
        Self::from_logs(l.ln(), m.ln(), t.ln(), p)
    }

    pub fn from_logs(ln_l: f64, ln_m: f64, ln_t: f64, p: f64) -> Result<Self, GapViolation> {
        if !(ln_l.is_finite() && ln_m.is_finite() && ln_t.is_finite()) {
            return Err(GapViolation::NonPositive {
                l: ln_l.exp(),
                m: ln_m.exp(),
                t: ln_t.exp(),
            });
        }
        if ln_l > ln_m {
            return Err(GapViolation::Ordering {
                l: ln_l.exp(),
                m: ln_m.exp(),
            });
        }
        if !(p > 2.0) {
            return Err(GapViolation::Exponent { p });
        }
        if !((p - 2.0) * ln_l > ln_t) {
            return Err(GapViolation::Growth {
                lhs: ((p - 2.0) * ln_l).exp(),
                t: ln_t.exp(),
            });
        }
        Ok(GapInstance { ln_l, ln_m, ln_t, p })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapBound {
    pub real_bound: f64,
    pub int_bound: u64,
}

pub fn gap_bound(inst: &GapInstance) -> GapBound {
    let shift = inst.ln_t / (inst.p - 2.0);
    let ratio = (inst.ln_m - shift) / (inst.ln_l - shift);
    let real_bound = (ratio.ln() / (inst.p - 1.0).ln()).max(0.0);
    // On a sharp chain the exact value is an integer and binary64 may land just
    // below it; flooring that would undercount, so snap within the tolerance.
    let nearest = real_bound.round();
    let int_bound = if (real_bound - nearest).abs() <= SHARP_TOL_F64 * nearest.max(1.0) {
        nearest
    } else {
        real_bound.floor()
    };
    GapBound {
        real_bound,
        int_bound: int_bound as u64,
    }
}

/// One chain element: exact while small, a logarithm once it has grown past [`LINEAR_LIMIT`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ChainValue {
    Linear(f64),
    Log(f64),
}

impl ChainValue {
    pub fn ln(&self) -> f64 {
        match *self {
            ChainValue::Linear(y) => y.ln(),
            ChainValue::Log(l) => l,
        }
    }

    /// The value itself; `+inf` if it is only known in log space beyond binary64.
    pub fn value(&self) -> f64 {
        match *self {
            ChainValue::Linear(y) => y,
            ChainValue::Log(l) => l.exp(),
        }
    }
}

/// `y_0 = L`, `y_i = y_{i-1}^(p-1) / T` for `i = 1..=ell`.
pub fn sharp_chain(l: f64, t: f64, p: f64, ell: usize) -> Result<Vec<ChainValue>, GapViolation> {
    // Validate with M = L; the ordering check is trivially met.
    GapInstance::new(l, l, t, p)?;
    let mut out = Vec::with_capacity(ell + 1);
    let mut cur = ChainValue::Linear(l);
    out.push(cur);
    for _ in 0..ell {
        cur = match cur {
            ChainValue::Linear(y) => {
                let next = y.powf(p - 1.0) / t;
                if next.is_finite() && next <= LINEAR_LIMIT {
                    ChainValue::Linear(next)
                } else {
                    ChainValue::Log((p - 1.0) * y.ln() - t.ln())
                }
            }
            ChainValue::Log(ly) => ChainValue::Log((p - 1.0) * ly - t.ln()),
        };
        out.push(cur);
    }
    Ok(out)
}

/// The longest admissible chain, found greedily.
///
/// Starting from `y_0 = L` and always taking the smallest admissible successor
/// `max(y_i, y_i^(p-1) / T)` is optimal because the successor map is monotone.
pub fn max_chain_oracle(inst: &GapInstance) -> u64 {
    let mut ln_y = inst.ln_l;
    let mut len = 0u64;
    loop {
        let next = ((inst.p - 1.0) * ln_y - inst.ln_t).max(ln_y);
        if next > inst.ln_m {
            return len;
        }
        ln_y = next;
        len += 1;
    }
}

/// High-precision [`gap_bound`] from logarithms already held at high precision.
pub fn gap_bound_hp(ctx: &mut HpCtx, ln_l: &Hf, ln_m: &Hf, ln_t: &Hf, p: &Hf) -> Hf {
    let two = ctx.int(2);
    let one = ctx.int(1);
    let shift = ctx.div(ln_t, &ctx.sub(p, &two));
    let ratio = ctx.div(&ctx.sub(ln_m, &shift), &ctx.sub(ln_l, &shift));
    let num = ctx.ln(&ratio);
    let den = ctx.ln(&ctx.sub(p, &one));
    ctx.div(&num, &den)
}

/// High-precision `ln y_ell` of the sharp chain.
pub fn sharp_chain_last_ln_hp(ctx: &mut HpCtx, l: f64, t: f64, p: f64, ell: usize) -> Hf {
    let pm1 = ctx.sub(&ctx.f(p), &ctx.int(1));
    let ln_t = ctx.ln(&ctx.f(t));
    let mut ln_y = ctx.ln(&ctx.f(l));
    for _ in 0..ell {
        ln_y = ctx.sub(&ctx.mul(&pm1, &ln_y), &ln_t);
    }
    ln_y
}

/// Sharpness residual `|gap_bound(L, y_ell, T, p) - ell|` at high precision.
pub fn sharpness_residual_hp(ctx: &mut HpCtx, l: f64, t: f64, p: f64, ell: usize) -> Hf {
    let ln_m = sharp_chain_last_ln_hp(ctx, l, t, p, ell);
    let ln_l = ctx.ln(&ctx.f(l));
    let ln_t = ctx.ln(&ctx.f(t));
    let pp = ctx.f(p);
    let bound = gap_bound_hp(ctx, &ln_l, &ln_m, &ln_t, &pp);
    ctx.sub(&bound, &ctx.int(ell as i64)).abs()
}

/// Instances per independently seeded shard of the randomized suites.
pub const SHARD_SIZE: usize = 1000;

/// Relative tolerance of the binary64 sharpness check.
pub const SHARP_TOL_F64: f64 = 1e-9;

/// Absolute tolerance of the high-precision sharpness check.
pub const SHARP_TOL_HP: &str = "1e-30";

const MAX_COUNTEREXAMPLES: usize = 10;

// Shard `i` draws from stream `i` of the seed, so results do not depend on
// how shards are spread over threads.
fn shard_rng(seed: u64, shard: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard as u64);
    rng
}

fn shards(count: usize) -> Vec<(usize, usize)> {
    (0..count.div_ceil(SHARD_SIZE))
        .map(|i| (i, SHARD_SIZE.min(count - i * SHARD_SIZE)))
        .collect()
}

/// `(L, T, p)` with `L` in `[1.01, 100]`, `p` in `(2.01, 20]`, `T` in `(0, 0.99 L^(p-2)]`.
pub fn random_base<R: Rng>(rng: &mut R) -> (f64, f64, f64) {
    let l: f64 = rng.gen_range(1.01..=100.0);
    let p = 20.0 - 17.99 * rng.gen::<f64>();
    let t = 0.99 * l.powf(p - 2.0) * (1.0 - rng.gen::<f64>());
    (l, t, p)
}

/// A valid instance with `M = L 10^u`, `u` in `[0, 12]`.
pub fn random_instance<R: Rng>(rng: &mut R) -> GapInstance {
    let (l, t, p) = random_base(rng);
    let u = rng.gen_range(0.0..=12.0);
    let ln_l = l.ln();
    GapInstance::from_logs(ln_l, ln_l + u * std::f64::consts::LN_10, t.ln(), p).expect("generator respects the hypotheses")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SoundnessCase {
    pub instance: GapInstance,
    pub oracle: u64,
    pub int_bound: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SoundnessReport {
    pub seed: u64,
    pub instances: usize,
    pub violations: usize,
    pub longest_chain: u64,
    pub counterexamples: Vec<SoundnessCase>,
}

impl SoundnessReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Compares [`max_chain_oracle`] with [`gap_bound`] on `count` random instances.
pub fn soundness_suite(seed: u64, count: usize) -> SoundnessReport {
    let per_shard: Vec<(usize, u64, Vec<SoundnessCase>)> = shards(count)
        .into_par_iter()
        .map(|(i, len)| {
            let mut rng = shard_rng(seed, i);
            let mut bad = Vec::new();
            let mut longest = 0;
            for _ in 0..len {
                let inst = random_instance(&mut rng);
                let oracle = max_chain_oracle(&inst);
                let int_bound = gap_bound(&inst).int_bound;
                longest = longest.max(oracle);
                if oracle > int_bound {
                    bad.push(SoundnessCase { instance: inst, oracle, int_bound });
                }
            }
            (bad.len(), longest, bad)
        })
        .collect();
    let mut report = SoundnessReport {
        seed,
        instances: count,
        violations: 0,
        longest_chain: 0,
        counterexamples: Vec::new(),
    };
    for (v, longest, bad) in per_shard {
        report.violations += v;
        report.longest_chain = report.longest_chain.max(longest);
        report.counterexamples.extend(bad);
    }
    report.counterexamples.truncate(MAX_COUNTEREXAMPLES);
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SharpnessCase {
    pub l: f64,
    pub t: f64,
    pub p: f64,
    pub ell: usize,
    pub real_bound: f64,
    pub residual_hp: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessReport {
    pub seed: u64,
    pub instances: usize,
    /// Largest `|real_bound - ell| / max(ell, 1)` in binary64.
    pub max_error_f64: f64,
    /// Largest `|real_bound - ell|` at high precision.
    pub max_residual_hp: f64,
    pub failures_f64: usize,
    pub failures_hp: usize,
    pub counterexamples: Vec<SharpnessCase>,
}

impl SharpnessReport {
    pub fn passed(&self) -> bool {
        self.failures_f64 == 0 && self.failures_hp == 0
    }
}

/// Builds the sharp chain for `count` random `(L, T, p, ell)`, `ell` in `0..=12`,
/// and checks that the bound returns `ell` in both precisions.
pub fn sharpness_suite(seed: u64, count: usize) -> SharpnessReport {
    let per_shard: Vec<(f64, f64, usize, usize, Vec<SharpnessCase>)> = shards(count)
        .into_par_iter()
        .map(|(i, len)| {
            let mut rng = shard_rng(seed, i);
            let mut ctx = HpCtx::default();
            let tol = ctx.dec(SHARP_TOL_HP);
            let (mut worst, mut worst_hp, mut bad_f, mut bad_h) = (0f64, 0f64, 0, 0);
            let mut bad = Vec::new();
            for _ in 0..len {
                let (l, t, p) = random_base(&mut rng);
                let ell = rng.gen_range(0..=12usize);
                let chain = sharp_chain(l, t, p, ell).expect("generator respects the hypotheses");
                let ln_m = chain.last().unwrap().ln();
                let real_bound = GapInstance::from_logs(l.ln(), ln_m, t.ln(), p)
                    .map(|inst| gap_bound(&inst).real_bound)
                    .unwrap_or(f64::NAN);
                let err = (real_bound - ell as f64).abs() / (ell.max(1) as f64);
                let res = sharpness_residual_hp(&mut ctx, l, t, p, ell);
                let res_f = ctx.to_f64(&res);
                let ok_f = err <= SHARP_TOL_F64;
                let ok_h = lt(&res, &tol);
                worst = worst.max(if err.is_nan() { f64::INFINITY } else { err });
                worst_hp = worst_hp.max(res_f);
                bad_f += usize::from(!ok_f);
                bad_h += usize::from(!ok_h);
                if !(ok_f && ok_h) {
                    bad.push(SharpnessCase { l, t, p, ell, real_bound, residual_hp: res_f });
                }
            }
            (worst, worst_hp, bad_f, bad_h, bad)
        })
        .collect();
    let mut report = SharpnessReport {
        seed,
        instances: count,
        max_error_f64: 0.0,
        max_residual_hp: 0.0,
        failures_f64: 0,
        failures_hp: 0,
        counterexamples: Vec::new(),
    };
    for (w, wh, bf, bh, bad) in per_shard {
        report.max_error_f64 = report.max_error_f64.max(w);
        report.max_residual_hp = report.max_residual_hp.max(wh);
        report.failures_f64 += bf;
        report.failures_hp += bh;
        report.counterexamples.extend(bad);
    }
    report.counterexamples.truncate(MAX_COUNTEREXAMPLES);
    report
}
