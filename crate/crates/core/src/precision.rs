//! Software high-precision arithmetic used to double-check binary64 results.
//!
//! Every quantity that decides a floor or a strict inequality is recomputed
//! here at [`HP_BITS`] bits (about 77 significant decimal digits). Inputs that
//! arrive as binary64 are converted exactly, so both routes see the same
//! parameter values.

use std::cmp::Ordering;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

/// Working precision in bits. 256 bits is roughly 77 decimal digits.
pub const HP_BITS: usize = 256;

/// Distance to the nearest integer below which a floor is considered unsafe.
pub const FLOOR_MARGIN: f64 = 1e-30;

const RM: RoundingMode = RoundingMode::ToEven;

pub type Hf = BigFloat;

/// Precision plus the constants cache astro-float needs for `ln`/`exp`.
pub struct HpCtx {
    p: usize,
    cc: Consts,
}

impl std::fmt::Debug for HpCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HpCtx").field("bits", &self.p).finish()
    }
}

impl Default for HpCtx {
    fn default() -> Self {
        Self::new(HP_BITS)
    }
}

impl HpCtx {
    pub fn new(bits: usize) -> Self {
        HpCtx {
            p: bits,
            cc: Consts::new().expect("astro-float constants cache"),
        }
    }

    pub fn bits(&self) -> usize {
        self.p
    }

    pub fn f(&self, x: f64) -> Hf {
        BigFloat::from_f64(x, self.p)
    }

    pub fn int(&self, x: i64) -> Hf {
        BigFloat::from_i64(x, self.p)
    }

    /// Parses a decimal literal such as `"2.032"` without a detour through binary64.
    pub fn dec(&mut self, s: &str) -> Hf {
        BigFloat::parse(s, Radix::Dec, self.p, RM, &mut self.cc)
    }

    pub fn ratio(&self, num: i64, den: i64) -> Hf {
        self.div(&self.int(num), &self.int(den))
    }

    pub fn add(&self, x: &Hf, y: &Hf) -> Hf {
        x.add(y, self.p, RM)
    }

    pub fn sub(&self, x: &Hf, y: &Hf) -> Hf {
        x.sub(y, self.p, RM)
    }

    pub fn mul(&self, x: &Hf, y: &Hf) -> Hf {
        x.mul(y, self.p, RM)
    }

    pub fn div(&self, x: &Hf, y: &Hf) -> Hf {
        x.div(y, self.p, RM)
    }

    pub fn sqrt(&self, x: &Hf) -> Hf {
        x.sqrt(self.p, RM)
    }

    pub fn ln(&mut self, x: &Hf) -> Hf {
        x.ln(self.p, RM, &mut self.cc)
    }

    pub fn exp(&mut self, x: &Hf) -> Hf {
        x.exp(self.p, RM, &mut self.cc)
    }

    pub fn pow(&mut self, x: &Hf, y: &Hf) -> Hf {
        x.pow(y, self.p, RM, &mut self.cc)
    }

    pub fn powi(&self, x: &Hf, k: usize) -> Hf {
        x.powi(k, self.p, RM)
    }

    pub fn max(&self, x: &Hf, y: &Hf) -> Hf {
        if cmp(x, y) == Ordering::Less {
            y.clone()
        } else {
            x.clone()
        }
    }

    /// Nearest binary64 value (via a decimal rendering, which is plenty for display and logs).
    pub fn to_f64(&mut self, x: &Hf) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        if x.is_inf_pos() {
            return f64::INFINITY;
        }
        if x.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        match x.format(Radix::Dec, RM, &mut self.cc) {
            Ok(s) => s.parse::<f64>().unwrap_or(f64::NAN),
            Err(_) => f64::NAN,
        }
    }

    pub fn to_string(&mut self, x: &Hf) -> String {
        x.format(Radix::Dec, RM, &mut self.cc)
            .unwrap_or_else(|_| "NaN".to_string())
    }

    /// `floor(x)` together with whether `x` lies within [`FLOOR_MARGIN`] of an integer.
    pub fn floor_checked(&mut self, x: &Hf) -> Option<(i64, bool)> {
        if x.is_nan() || x.is_inf() {
            return None;
        }
        let fl = x.floor();
        let frac = self.sub(x, &fl);
        let margin = self.f(FLOOR_MARGIN);
        let one_minus = self.sub(&self.int(1), &margin);
        let near = cmp(&frac, &margin) == Ordering::Less || cmp(&frac, &one_minus) == Ordering::Greater;
        let v = self.to_f64(&fl);
        if !v.is_finite() || v.abs() > 9.0e15 {
            return None;
        }
        Some((v as i64, near))
    }
}

pub fn cmp(x: &Hf, y: &Hf) -> Ordering {
    match x.cmp(y) {
        Some(c) if c < 0 => Ordering::Less,
        Some(0) => Ordering::Equal,
        Some(_) => Ordering::Greater,
        None => Ordering::Equal,
    }
}

pub fn gt(x: &Hf, y: &Hf) -> bool {
    !x.is_nan() && !y.is_nan() && cmp(x, y) == Ordering::Greater
}

pub fn lt(x: &Hf, y: &Hf) -> bool {
    !x.is_nan() && !y.is_nan() && cmp(x, y) == Ordering::Less
}

pub fn ge(x: &Hf, y: &Hf) -> bool {
    !x.is_nan() && !y.is_nan() && cmp(x, y) != Ordering::Less
}

pub fn le(x: &Hf, y: &Hf) -> bool {
    !x.is_nan() && !y.is_nan() && cmp(x, y) != Ordering::Greater
}
