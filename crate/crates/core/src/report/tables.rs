//! Text and CSV renderings of the parameter, bound and chain computations.

use std::fmt::Write as _;
use std::io::Write;

use crate::bounds::{
    describe_large_violation, describe_small_violation, BoundBreakdown, LargeParams, PrecisionCheck, SmallParams,
};
use crate::gap::{gap_bound, gap_bound_hp, max_chain_oracle, sharp_chain, sharp_chain_last_ln_hp, GapInstance};
use crate::precision::HpCtx;
use crate::search::{AsymptoticReport, OptimalParams, ZBand, THOMAS_W5, THOMAS_W5_NOTE};

pub const PARAM_COLUMNS: [&str; 7] = ["n", "d0", "d", "a", "b", "T", "Z"];

/// Shortest decimal that reads back to the same binary64; scientific outside
/// `[1e-5, 1e16)`.
pub fn fmt_num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// At most 12 decimals, for reading rather than round-tripping.
pub fn fmt_short(x: f64) -> String {
    let s = format!("{x:.12}");
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.to_string()
    }
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), fmt_num)
}

fn opt_u(x: Option<u32>) -> String {
    x.map_or_else(|| "-".into(), |v| v.to_string())
}

pub fn write_param_csv<W: Write>(out: W, rows: &[OptimalParams]) -> std::result::Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(PARAM_COLUMNS)?;
    for p in rows {
        w.write_record([
            p.n.to_string(),
            fmt_num(p.d0),
            fmt_num(p.d),
            fmt_num(p.a),
            fmt_num(p.b),
            p.t.to_string(),
            p.z.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn param_text(rows: &[OptimalParams]) -> String {
    let mut s = format!(
        "{:>5} {:>10} {:>8} {:>10} {:>20} {:>4} {:>4}\n",
        "n", "d0", "d", "a", "b", "T", "Z"
    );
    for p in rows {
        let _ = writeln!(
            s,
            "{:>5} {:>10} {:>8} {:>10} {:>20} {:>4} {:>4}",
            p.n,
            fmt_short(p.d0),
            fmt_short(p.d),
            fmt_short(p.a),
            fmt_short(p.b),
            p.t,
            p.z
        );
    }
    s
}

pub fn ztable_text(bands: &[ZBand]) -> String {
    let show = |(odd, even): (Option<u32>, Option<u32>)| match (odd, even) {
        (Some(o), Some(e)) => format!("{o}/{e}"),
        (Some(o), None) => o.to_string(),
        (None, Some(e)) => e.to_string(),
        (None, None) => "-".into(),
    };
    let mut s = format!("{:>10} {:>5} {:>5} {:>12} {:>12}\n", "n", "z(n)", "w(n)", "2vz+8", "2vw+8");
    let _ = writeln!(s, "{:>10} {:>5} {:>5} {:>12} {:>12}", "5", "-", format!("{THOMAS_W5}*"), "-", "-");
    for b in bands {
        let _ = writeln!(
            s,
            "{:>10} {:>5} {:>5} {:>12} {:>12}",
            b.label(),
            b.z,
            b.w,
            show(b.totals(b.z)),
            show(b.totals(b.w))
        );
    }
    let _ = writeln!(s, "totals are odd/even n");
    let _ = writeln!(s, "* {THOMAS_W5_NOTE}");
    s
}

pub fn write_ztable_csv<W: Write>(out: W, bands: &[ZBand]) -> std::result::Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n_lo", "n_hi", "z", "w", "total_z_odd", "total_z_even", "total_w_odd", "total_w_even"])?;
    let o = |v: Option<u32>| v.map_or_else(String::new, |x| x.to_string());
    for b in bands {
        let (zo, ze) = b.totals(b.z);
        let (wo, we) = b.totals(b.w);
        w.write_record([
            b.n_lo.to_string(),
            o(b.n_hi),
            b.z.to_string(),
            b.w.to_string(),
            o(zo),
            o(ze),
            o(wo),
            o(we),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Every intermediate quantity of one tuple, binary64 next to high precision.
pub fn bounds_text(chk: &PrecisionCheck) -> String {
    let lo: &BoundBreakdown = &chk.binary64;
    let hi = &chk.high;
    let dv = lo.derived;
    let rows: Vec<(&str, String, String)> = vec![
        ("K_d", fmt_num(lo.k_d), fmt_num(hi.k_d)),
        ("K_d0", fmt_num(lo.k_d0), fmt_num(hi.k_d0)),
        ("ln Q1", fmt_num(lo.ln_q1), fmt_num(hi.ln_q1)),
        ("Q1", fmt_num(lo.q1()), fmt_num(hi.ln_q1.exp())),
        ("L", opt(dv.map(|d| d.l)), opt(hi.l)),
        ("D", opt(dv.map(|d| d.d)), opt(hi.d)),
        ("A", opt(dv.map(|d| d.a)), opt(hi.a)),
        ("E", opt(dv.map(|d| d.e)), opt(hi.e)),
        ("chi_n", opt(dv.map(|d| d.chi_n)), opt(hi.chi_n)),
        ("pi_n", opt(dv.map(|d| d.pi_n)), opt(hi.pi_n)),
        ("T-2 (unfloored)", opt(lo.small_quantities.map(|q| q.max())), opt(hi.small_quantity)),
        ("Z-2 (unfloored)", opt(lo.large_quantity), opt(hi.large_quantity)),
        ("T", opt_u(lo.t), opt_u(hi.t)),
        ("Z", opt_u(lo.z), opt_u(hi.z)),
        ("(d0, d) valid", lo.small_valid.to_string(), hi.small_valid.to_string()),
        ("(a, b) valid", lo.large_valid.to_string(), hi.large_valid.to_string()),
        ("thresholds", lo.thresholds_ok.to_string(), hi.thresholds_ok.to_string()),
    ];
    let SmallParams { d0, d } = lo.small;
    let LargeParams { a, b } = lo.large;
    let mut s = format!(
        "n = {}, d0 = {}, d = {}, a = {}, b = {}\n",
        lo.n,
        fmt_num(d0),
        fmt_num(d),
        fmt_num(a),
        fmt_num(b)
    );
    let _ = writeln!(s, "{:<22} {:>24} {:>24}", "quantity", "binary64", "high precision");
    for (name, x, y) in rows {
        let _ = writeln!(s, "{name:<22} {x:>24} {y:>24}");
    }
    if !lo.small_valid {
        let _ = writeln!(s, "small-solution constraint: {}", describe_small_violation(lo.small, lo.n));
    }
    if !lo.large_valid {
        let _ = writeln!(s, "large-solution constraint: {}", describe_large_violation(lo.large, lo.n));
    }
    if hi.near_integer {
        let _ = writeln!(s, "a floor argument is within 1e-30 of an integer: manual review needed");
    }
    let verdict = if chk.certified() {
        "accepted in both precisions"
    } else if !chk.agree {
        "REJECTED: the two precisions disagree"
    } else {
        "REJECTED"
    };
    let _ = writeln!(s, "{verdict}");
    s
}

pub fn asymptotic_text(r: &AsymptoticReport) -> String {
    let mut s = bounds_text(&r.precision);
    let _ = writeln!(s, "{:<36} {:>9} {:>15}", "closed-form estimate", "binary64", "high precision");
    for c in &r.conditions {
        let _ = writeln!(s, "{:<36} {:>9} {:>15}", c.name, c.binary64, c.high);
    }
    let _ = writeln!(s, "T = {}, Z = {}, all estimates hold: {}", r.params.t, r.params.z, r.all_hold());
    s
}

/// The sharp chain from `(L, T, p)` with both evaluations of the bound at `M = y_ell`.
pub fn gap_demo_text(ctx: &mut HpCtx, l: f64, t: f64, p: f64, ell: usize) -> crate::error::Result<String> {
    let chain = sharp_chain(l, t, p, ell)?;
    let mut s = format!("L = {}, T = {}, p = {}, ell = {ell}\n", fmt_num(l), fmt_num(t), fmt_num(p));
    for (i, y) in chain.iter().enumerate() {
        let v = y.value();
        if v.is_finite() {
            let _ = writeln!(s, "y_{i} = {}", fmt_num(v));
        } else {
            let _ = writeln!(s, "y_{i} = exp({})", fmt_num(y.ln()));
        }
    }
    let inst = GapInstance::from_logs(l.ln(), chain.last().unwrap().ln(), t.ln(), p)?;
    let g = gap_bound(&inst);
    let ln_m = sharp_chain_last_ln_hp(ctx, l, t, p, ell);
    let (ln_l, ln_t, pp) = (ctx.ln(&ctx.f(l)), ctx.ln(&ctx.f(t)), ctx.f(p));
    let hp = gap_bound_hp(ctx, &ln_l, &ln_m, &ln_t, &pp);
    let residual = ctx.sub(&hp, &ctx.int(ell as i64)).abs();
    let _ = writeln!(s, "bound (binary64)       = {}", fmt_num(g.real_bound));
    let _ = writeln!(s, "bound (high precision) = {}", fmt_num(ctx.to_f64(&hp)));
    let _ = writeln!(s, "|bound - ell| (high)   = {:.3e}", ctx.to_f64(&residual));
    let _ = writeln!(s, "integer bound          = {}", g.int_bound);
    let _ = writeln!(s, "longest chain (oracle) = {}", max_chain_oracle(&inst));
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::cross_check;

    #[test]
    fn numbers_render_short() {
        assert_eq!(fmt_num(0.18), "0.18");
        assert_eq!(fmt_num(0.18000000000000002), "0.18000000000000002");
        assert_eq!(fmt_num(2.0), "2");
        assert_eq!(fmt_num(-0.5), "-0.5");
        assert_eq!(fmt_num(4.032940416828185e26), "4.032940416828185e26");
        assert_eq!(fmt_short(0.41000000000000003), "0.41");
        assert_eq!(fmt_short(12.144000000000002), "12.144");
    }

    #[test]
    fn bounds_rendering_names_violations() {
        let mut ctx = HpCtx::default();
        let chk = cross_check(&mut ctx, 6, SmallParams { d0: 0.0, d: 2.0 }, LargeParams { a: 0.18, b: 0.29 });
        let s = bounds_text(&chk);
        assert!(s.contains("accepted in both precisions"));
        assert!(s.lines().any(|l| l.starts_with("T ") && l.trim_end().ends_with("10")));
        let chk = cross_check(&mut ctx, 6, SmallParams { d0: 0.0, d: 2.0 }, LargeParams { a: 0.3, b: 0.2 });
        assert!(bounds_text(&chk).contains("violates a < b"));
    }

    #[test]
    fn gap_demo_prints_chain() {
        let mut ctx = HpCtx::default();
        let s = gap_demo_text(&mut ctx, 2.0, 1.0, 3.0, 3).unwrap();
        assert!(s.contains("y_3 = 256"));
        assert!(s.contains("integer bound          = 3"));
        assert!(gap_demo_text(&mut ctx, 2.0, 4.0, 3.0, 3).is_err());
    }
}
