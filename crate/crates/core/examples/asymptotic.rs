//! The closed-form parameter choice for large degrees and the estimates it rests on.
//!
//! Run with `cargo run --release --example asymptotic [n ...]`.

use thue_bounds::precision::HpCtx;
use thue_bounds::search::{asymptotic_report, solution_count_bound};

fn main() -> thue_bounds::Result<()> {
    let mut ns: Vec<u32> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    if ns.is_empty() {
        ns = vec![507, 600, 1000, 5000];
    }
    let mut ctx = HpCtx::default();
    for n in ns {
        let r = asymptotic_report(&mut ctx, n)?;
        println!("n = {n}: T = {}, Z = {}, b = {:.6}", r.params.t, r.params.z, r.params.b);
        for c in &r.conditions {
            let mark = if c.binary64 && c.high { "ok" } else { "FAILS" };
            println!("  {:<36} {mark}", c.name);
        }
        println!("  at most {} solutions\n", solution_count_bound(n)?);
    }
    Ok(())
}
