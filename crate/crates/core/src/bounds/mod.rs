//! Closed-form bound quantities for special solutions belonging to a real root.
//!
//! Everything here is a pure function of the degree `n` and the free
//! parameters: `(d0, d)` drive the small-solution count `T` and `(a, b)` drive
//! the large-solution count `Z`. All logarithms are natural.
//!
//! The binary64 route works in log space wherever a power of `p0(n)` appears,
//! so degrees in the thousands do not overflow. [`hp`] recomputes the same
//! quantities at 256 bits and [`cross_check`] compares the two.

pub mod hp;

use serde::Serialize;

use crate::error::{Error, Result};

pub use hp::{cross_check, HpBreakdown, PrecisionCheck};

/// Degree-dependent constants shared by every bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DegreeProfile {
    pub n: u32,
    /// `(n - 2) / 2`
    pub n_star: f64,
    /// Smallest `p` a special solution can have.
    pub p0: u32,
    /// Upper bound on real roots plus proper critical points.
    pub v: u32,
    /// Per-critical-point multiplier in `N_F <= z(n) R_F + ell(n) C_F`.
    pub ell: u32,
}

pub fn degree_profile(n: i64) -> Result<DegreeProfile> {
    if n < 6 || n > u32::MAX as i64 {
        return Err(Error::UnsupportedDegree(n));
    }
    let n = n as u32;
    Ok(DegreeProfile {
        n,
        n_star: n_star(n),
        p0: p0(n),
        v: if n % 2 == 1 { 3 } else { 4 },
        ell: match n {
            6 | 7 => 4,
            8 => 3,
            _ => 2,
        },
    })
}

pub fn n_star(n: u32) -> f64 {
    (n as f64 - 2.0) / 2.0
}

pub fn p0(n: u32) -> u32 {
    if n <= 8 {
        3
    } else {
        2
    }
}

/// Free parameters of the small-solution count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmallParams {
    pub d0: f64,
    pub d: f64,
}

/// Free parameters of the large-solution count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LargeParams {
    pub a: f64,
    pub b: f64,
}

fn ln_m(n: f64) -> f64 {
    (2.0 * (2.0 * n / ((n - 1.0) * (n - 2.0))).sqrt()).ln()
}

/// `ln(r_n (1 + u_n))`, the per-unit-of-d growth of `ln K_d(n)`.
fn ln_growth(n: u32) -> f64 {
    let nf = n as f64;
    let ln_u = 0.5 * (2f64.ln() - (nf - 2.0).ln() - nf * (p0(n) as f64).ln());
    2.032f64.ln() / nf + ln_u.exp().ln_1p()
}

/// `ln K_d(n)` with `K_d(n) = m_n (r_n (1 + u_n))^d`.
pub fn ln_k_const(d: f64, n: u32) -> f64 {
    ln_m(n as f64) + d * ln_growth(n)
}

pub fn k_const(d: f64, n: u32) -> f64 {
    ln_k_const(d, n).exp()
}

/// `ln Q_1` with `Q_1 = p0^(n* - d0) / K_{d0}(n)`.
pub fn ln_q_one(d0: f64, n: u32) -> f64 {
    (n_star(n) - d0) * (p0(n) as f64).ln() - ln_k_const(d0, n)
}

/// `Q_1`; infinite once it leaves the binary64 range (use [`ln_q_one`] then).
pub fn q_one(d0: f64, n: u32) -> f64 {
    ln_q_one(d0, n).exp()
}

/// Range constraints on `(d0, d)` plus `Q_1^(d-1) > max(1, K_d(n))`, all strict where stated.
pub fn valid_small(params: SmallParams, n: u32) -> bool {
    let SmallParams { d0, d } = params;
    let ns = n_star(n);
    if !(d0.is_finite() && d.is_finite()) {
        return false;
    }
    if !(0.0 <= d0 && d0 <= ns - 1.4 && 1.0 < d && d <= ns) {
        return false;
    }
    (d - 1.0) * ln_q_one(d0, n) > ln_k_const(d, n).max(0.0)
}

/// Upper limit `1 - sqrt(2 (n + a^2) / n^2)` for `b`.
pub fn b_limit(a: f64, n: u32) -> f64 {
    let nf = n as f64;
    1.0 - (2.0 * (nf + a * a) / (nf * nf)).sqrt()
}

/// The chained strict inequality `0 < a < b < 1 - sqrt(2 (n + a^2) / n^2)`.
pub fn valid_large(params: LargeParams, n: u32) -> bool {
    let LargeParams { a, b } = params;
    0.0 < a && a < b && b < b_limit(a, n)
}

/// Quantities derived from `(a, b)` for the large-solution count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LargeDerived {
    pub l: f64,
    pub d: f64,
    pub a: f64,
    pub e: f64,
    pub chi_n: f64,
    pub pi_n: f64,
}

pub fn large_derived(params: LargeParams, n: u32) -> Result<LargeDerived> {
    let LargeParams { a, b } = params;
    let nf = n as f64;
    if b >= 1.0 {
        return Err(Error::domain("L", format!("b = {b} >= 1")));
    }
    let l = (2.0 * (nf + a * a)).sqrt() / (1.0 - b);
    if !(l < nf) {
        return Err(Error::domain("D", format!("L = {l} >= n = {n}")));
    }
    if !(b * b > a * a) {
        return Err(Error::domain("E", format!("b^2 - a^2 <= 0 for a = {a}, b = {b}")));
    }
    let d = l / (nf - l);
    let big_a = 1.0 / (a * a);
    let e = 1.0 / (2.0 * (b * b - a * a));
    let chi_n = d * (big_a + 1.0) + 1.0;
    let pi_n = (d * (4.0 + big_a) + 2.0) * 2f64.ln() + (d + 1.0) * nf.ln() / 2.0 + nf * big_a * d / 2.0;
    Ok(LargeDerived {
        l,
        d,
        a: big_a,
        e,
        chi_n,
        pi_n,
    })
}

/// `5 log 2 + 2 log n`, the least admissible `pi_n`.
pub fn pi_threshold(n: u32) -> f64 {
    5.0 * 2f64.ln() + 2.0 * (n as f64).ln()
}

pub fn thresholds_ok(derived: &LargeDerived, n: u32) -> bool {
    derived.chi_n >= 2.0 && derived.pi_n >= pi_threshold(n)
}

/// `ln Y_F = chi_n ln H + pi_n`; always representable.
pub fn ln_y_threshold(h: u64, chi_n: f64, pi_n: f64) -> Result<f64> {
    if h == 0 {
        return Err(Error::domain("Y_F", "height must be positive"));
    }
    Ok(chi_n * (h as f64).ln() + pi_n)
}

/// `Y_F = H^chi_n e^pi_n`, or [`Error::Overflow`] when it exceeds binary64.
pub fn y_threshold(h: u64, chi_n: f64, pi_n: f64) -> Result<f64> {
    let ln_y = ln_y_threshold(h, chi_n, pi_n)?;
    let y = ln_y.exp();
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::Overflow("Y_F"))
    }
}

/// The two candidates whose max is floored to give `T - 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmallQuantities {
    pub height_term: f64,
    pub constant_term: f64,
}

impl SmallQuantities {
    pub fn max(&self) -> f64 {
        self.height_term.max(self.constant_term)
    }

    pub fn count(&self) -> u32 {
        floor_plus_two(self.max())
    }
}

/// `floor(q) + 2`, the shape shared by `T` and `Z`. Callers guarantee `q >= 0`.
pub fn floor_plus_two(q: f64) -> u32 {
    (q.floor() as i64 + 2) as u32
}

/// The chi-dependent and pi-dependent terms of `T`, before flooring.
pub fn small_quantities(small: SmallParams, derived: &LargeDerived, n: u32) -> Result<SmallQuantities> {
    let SmallParams { d0, d } = small;
    let nf = n as f64;
    let ln_d = d.ln();
    let height_term = (derived.chi_n * nf * (d - 1.0) / (d0 * (d - 1.0) + d) + 1.0).ln() / ln_d;
    // ln(K_d^(-1/(d-1)) Q_1)
    let gap = ln_q_one(d0, n) - ln_k_const(d, n) / (d - 1.0);
    if !(gap > 0.0) {
        return Err(Error::domain(
            "T",
            format!("K_d(n)^(-1/(d-1)) Q_1 <= 1 (log = {gap}); Q_1 is too small"),
        ));
    }
    let constant_term = (derived.pi_n / gap + 1.0).ln() / ln_d;
    Ok(SmallQuantities {
        height_term,
        constant_term,
    })
}

/// `T`, the bound on small special solutions belonging to one real root.
pub fn small_count(small: SmallParams, large: LargeParams, n: u32) -> Result<u32> {
    if !valid_small(small, n) {
        return Err(Error::InvalidParams(describe_small_violation(small, n)));
    }
    if !valid_large(large, n) {
        return Err(Error::InvalidParams(describe_large_violation(large, n)));
    }
    let derived = large_derived(large, n)?;
    Ok(small_quantities(small, &derived, n)?.count())
}

/// `(log E + 2 log n - log(L - 2)) / log(n - 1)`, before flooring.
pub fn large_quantity(derived: &LargeDerived, n: u32) -> Result<f64> {
    let nf = n as f64;
    if !(derived.l > 2.0) {
        return Err(Error::domain("Z", format!("L = {} <= 2", derived.l)));
    }
    Ok((derived.e.ln() + 2.0 * nf.ln() - (derived.l - 2.0).ln()) / (nf - 1.0).ln())
}

/// `Z`, the bound on large special solutions belonging to one real root.
pub fn large_count(large: LargeParams, n: u32) -> Result<u32> {
    if !valid_large(large, n) {
        return Err(Error::InvalidParams(describe_large_violation(large, n)));
    }
    let derived = large_derived(large, n)?;
    check_thresholds(&derived, n)?;
    Ok(floor_plus_two(large_quantity(&derived, n)?))
}

fn check_thresholds(derived: &LargeDerived, n: u32) -> Result<()> {
    if !(derived.chi_n >= 2.0) {
        return Err(Error::ThresholdFailed(format!("chi_n = {} < 2", derived.chi_n)));
    }
    if !(derived.pi_n >= pi_threshold(n)) {
        return Err(Error::ThresholdFailed(format!(
            "pi_n = {} < 5 log 2 + 2 log n = {}",
            derived.pi_n,
            pi_threshold(n)
        )));
    }
    Ok(())
}

/// Names the first violated constraint on `(d0, d)`.
pub fn describe_small_violation(small: SmallParams, n: u32) -> String {
    let SmallParams { d0, d } = small;
    let ns = n_star(n);
    if !(d0 >= 0.0) {
        format!("d0 = {d0} violates 0 <= d0")
    } else if !(d0 <= ns - 1.4) {
        format!("d0 = {d0} violates d0 <= n* - 1.4 = {}", ns - 1.4)
    } else if !(d > 1.0) {
        format!("d = {d} violates 1 < d")
    } else if !(d <= ns) {
        format!("d = {d} violates d <= n* = {ns}")
    } else if !valid_small(small, n) {
        format!(
            "Q1^(d-1) > max(1, K_d(n)) fails: (d-1) ln Q1 = {}, ln K_d = {}",
            (d - 1.0) * ln_q_one(d0, n),
            ln_k_const(d, n)
        )
    } else {
        "none".to_string()
    }
}

/// Names the first violated link of `0 < a < b < 1 - sqrt(2 (n + a^2) / n^2)`.
pub fn describe_large_violation(large: LargeParams, n: u32) -> String {
    let LargeParams { a, b } = large;
    if !(a > 0.0) {
        format!("a = {a} violates 0 < a")
    } else if !(a < b) {
        format!("a = {a}, b = {b} violates a < b")
    } else if !(b < b_limit(a, n)) {
        format!("b = {b} violates b < 1 - sqrt(2(n + a^2)/n^2) = {}", b_limit(a, n))
    } else {
        "none".to_string()
    }
}

/// Every intermediate quantity for one parameter choice, in binary64.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundBreakdown {
    pub n: u32,
    pub small: SmallParams,
    pub large: LargeParams,
    pub k_d: f64,
    pub k_d0: f64,
    pub ln_q1: f64,
    pub derived: Option<LargeDerived>,
    pub small_quantities: Option<SmallQuantities>,
    pub large_quantity: Option<f64>,
    pub t: Option<u32>,
    pub z: Option<u32>,
    pub small_valid: bool,
    pub large_valid: bool,
    pub thresholds_ok: bool,
}

impl BoundBreakdown {
    pub fn q1(&self) -> f64 {
        self.ln_q1.exp()
    }

    /// All four acceptance conditions of the reference search.
    pub fn accepted(&self) -> bool {
        self.small_valid && self.large_valid && self.thresholds_ok && self.t.is_some() && self.z.is_some()
    }

    pub fn sum(&self) -> Option<u32> {
        Some(self.t? + self.z?)
    }
}

/// Evaluates everything that is defined for `(small, large)`; never fails.
pub fn breakdown(n: u32, small: SmallParams, large: LargeParams) -> BoundBreakdown {
    let small_valid = valid_small(small, n);
    let large_valid = valid_large(large, n);
    let derived = if large_valid { large_derived(large, n).ok() } else { None };
    let thresholds = derived.map(|dv| thresholds_ok(&dv, n)).unwrap_or(false);
    let small_quantities = match (&derived, small_valid) {
        (Some(dv), true) => small_quantities(small, dv, n).ok(),
        _ => None,
    };
    let large_q = derived.and_then(|dv| large_quantity(&dv, n).ok());
    let t = small_quantities.map(|q| q.count());
    let z = if thresholds {
        large_q.map(floor_plus_two)
    } else {
        None
    };
    BoundBreakdown {
        n,
        small,
        large,
        k_d: k_const(small.d, n),
        k_d0: k_const(small.d0, n),
        ln_q1: ln_q_one(small.d0, n),
        derived,
        small_quantities,
        large_quantity: large_q,
        t,
        z,
        small_valid,
        large_valid,
        thresholds_ok: thresholds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // Frozen from a 60-digit mpmath evaluation of the defining formulas.
    const M6: f64 = 1.549_193_338_482_966_8;
    const K2_6: f64 = 2.066_339_529_775_500_8;
    const Q1_0_6: f64 = 5.809_475_019_311_125;

    #[test]
    fn profile_examples() {
        let p = degree_profile(6).unwrap();
        assert_eq!((p.n_star, p.p0, p.v, p.ell), (2.0, 3, 4, 4));
        let p = degree_profile(9).unwrap();
        assert_eq!((p.n_star, p.p0, p.v, p.ell), (3.5, 2, 3, 2));
        assert_eq!(degree_profile(8).unwrap().ell, 3);
        assert_eq!(degree_profile(8).unwrap().p0, 3);
        assert_eq!(degree_profile(507).unwrap().n_star, 252.5);
        assert!(matches!(degree_profile(5), Err(Error::UnsupportedDegree(5))));
        assert!(degree_profile(-3).is_err());
    }

    #[test]
    fn k_const_values() {
        assert_relative_eq!(k_const(0.0, 6), M6, max_relative = 1e-14);
        assert_relative_eq!(k_const(2.0, 6), K2_6, max_relative = 1e-14);
        let k = k_const(n_star(507) / 2.0, 507);
        assert!(k <= 5.0 * 0.25f64.exp());
    }

    #[test]
    fn q_one_values() {
        assert_relative_eq!(q_one(0.0, 6), Q1_0_6, max_relative = 1e-14);
        assert_relative_eq!(q_one(0.0, 6), 9.0 / M6, max_relative = 1e-14);
        let ns = n_star(11);
        assert_relative_eq!(q_one(ns, 11), 1.0 / k_const(ns, 11), max_relative = 1e-14);
        let n = 507;
        let lower = (n_star(n) / 2.0) * 2f64.ln() - (5.0 * 0.25f64.exp()).ln();
        assert!(ln_q_one(n_star(n) / 2.0, n) >= lower);
    }

    #[test]
    fn small_validity() {
        assert!(valid_small(SmallParams { d0: 0.0, d: 2.0 }, 6));
        assert!(!valid_small(SmallParams { d0: 2.0 - 1.4 + 1e-9, d: 2.0 }, 6));
        assert!(!valid_small(SmallParams { d0: -0.1, d: 2.0 }, 6));
        assert!(!valid_small(SmallParams { d0: 0.0, d: 1.0 }, 6));
        assert!(!valid_small(SmallParams { d0: 0.0, d: 2.5 }, 6));
        let ns = n_star(507);
        assert!(valid_small(SmallParams { d0: ns / 2.0, d: ns }, 507));
    }

    #[test]
    fn large_validity() {
        assert!(valid_large(LargeParams { a: 0.18, b: 0.29 }, 6));
        assert_relative_eq!(b_limit(0.18, 6), 0.421_092_983_862_405_3, max_relative = 1e-14);
        assert!(!valid_large(LargeParams { a: 0.29, b: 0.18 }, 6));
        assert!(!valid_large(LargeParams { a: 0.0, b: 0.18 }, 6));
        assert!(!valid_large(LargeParams { a: 0.18, b: 0.43 }, 6));
        assert!(describe_large_violation(LargeParams { a: 0.29, b: 0.18 }, 6).contains("a < b"));
    }

    #[test]
    fn derived_values_n6() {
        let dv = large_derived(LargeParams { a: 0.18, b: 0.29 }, 6).unwrap();
        assert_relative_eq!(dv.l, 4.892_171_967_359_955, max_relative = 1e-13);
        assert_relative_eq!(dv.d, 4.416_003_046_701_670, max_relative = 1e-12);
        assert_relative_eq!(dv.a, 30.864_197_530_864_2, max_relative = 1e-13);
        assert_relative_eq!(dv.e, 9.671_179_883_945_841, max_relative = 1e-13);
        assert_relative_eq!(dv.chi_n, 141.712_393_377_000_14, max_relative = 1e-12);
        assert_relative_eq!(dv.pi_n, 521.844_771_646_768_9, max_relative = 1e-12);
        assert!(thresholds_ok(&dv, 6));
    }

    #[test]
    fn derived_rejects_degenerate() {
        assert!(large_derived(LargeParams { a: 0.2, b: 0.2 }, 6).is_err());
        assert!(large_derived(LargeParams { a: 0.2, b: 0.9 }, 6).is_err());
    }

    #[test]
    fn y_threshold_values() {
        assert_relative_eq!(y_threshold(1, 3.0, 2.5).unwrap(), 2.5f64.exp(), max_relative = 1e-15);
        assert_relative_eq!(y_threshold(2, 2.0, 0.0).unwrap(), 4.0, max_relative = 1e-15);
        let dv = large_derived(LargeParams { a: 0.18, b: 0.29 }, 6).unwrap();
        let ln_y = ln_y_threshold(3, dv.chi_n, dv.pi_n).unwrap();
        assert_relative_eq!(ln_y, 677.531_748_467_310_5, max_relative = 1e-12);
        assert_relative_eq!(y_threshold(3, dv.chi_n, dv.pi_n).unwrap(), ln_y.exp(), max_relative = 1e-12);
        assert!(matches!(y_threshold(4, dv.chi_n, dv.pi_n), Err(Error::Overflow(_))));
        assert!(y_threshold(0, 2.0, 0.0).is_err());
    }

    #[test]
    fn counts_n6() {
        let small = SmallParams { d0: 0.0, d: 2.0 };
        let large = LargeParams { a: 0.18, b: 0.29 };
        assert_eq!(small_count(small, large, 6).unwrap(), 10);
        assert_eq!(large_count(large, 6).unwrap(), 4);
        let b = breakdown(6, small, large);
        assert!(b.accepted());
        assert_eq!(b.sum(), Some(14));
    }

    #[test]
    fn counts_from_table() {
        let small = SmallParams { d0: 68.2227, d: 108.5 };
        let large = LargeParams { a: 0.399258, b: 0.883258 };
        assert_eq!(small_count(small, large, 219).unwrap(), 2);
        assert_eq!(large_count(large, 219).unwrap(), 2);
        assert_eq!(large_count(LargeParams { a: 0.27, b: 0.39 }, 18).unwrap(), 3);
    }

    #[test]
    fn small_count_rejects_invalid() {
        let large = LargeParams { a: 0.18, b: 0.29 };
        let err = small_count(SmallParams { d0: 0.7, d: 2.0 }, large, 6).unwrap_err();
        assert!(err.to_string().contains("n* - 1.4"));
    }

    #[test]
    fn large_count_rejects_failed_thresholds() {
        // a close to b and both large: chi_n stays above 2 but pi_n can be checked directly.
        let dv = large_derived(LargeParams { a: 0.18, b: 0.29 }, 6).unwrap();
        let weak = LargeDerived { chi_n: 1.5, ..dv };
        assert!(matches!(check_thresholds(&weak, 6), Err(Error::ThresholdFailed(_))));
        let weak = LargeDerived { pi_n: 1.0, ..dv };
        assert!(check_thresholds(&weak, 6).is_err());
    }
}
