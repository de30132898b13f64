//! Real analysis of one trinomial and the bound checks on its box solutions.
//!
//! Run with `cargo run --release --example verify_form [h_n h_k h_0 n k [B]]`.

use thue_bounds::trinomial::{analyze_form, verify_bounds, DegreeLimits, ExceptionalKind, TrinomialForm};

fn main() -> thue_bounds::Result<()> {
    let a: Vec<i64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let (form, b) = match a[..] {
        [hn, hk, h0, n, k] => (TrinomialForm::new(hn, hk, h0, n as u32, k as u32)?, 10_000),
        [hn, hk, h0, n, k, b] => (TrinomialForm::new(hn, hk, h0, n as u32, k as u32)?, b as u64),
        _ => (TrinomialForm::new(1, -4, -1, 9, 7)?, 10_000),
    };
    let an = analyze_form(&form)?;
    println!("F = {form}");
    println!("R_F = {}, C_F = {}, v(n) = {}", an.r_f, an.c_f, an.v);
    for (i, e) in an.exceptional.iter().enumerate() {
        let what = match e.kind {
            ExceptionalKind::Root(_) => "real root",
            ExceptionalKind::Critical(_) => "proper critical point",
        };
        println!("  J_{i}: {what} near {:.12}", e.approx);
    }

    let report = verify_bounds(&form, b, DegreeLimits::for_degree(form.n)?)?;
    println!("{} solutions in the box of radius {b}, {} regular", report.n_total, report.n_regular);
    for c in &report.checks {
        println!("  {:<52} {:>4} <= {:<4} {}", c.name, c.value, c.bound, if c.holds { "ok" } else { "VIOLATED" });
    }
    Ok(())
}
