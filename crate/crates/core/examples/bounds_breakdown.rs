//! Every quantity behind `T` and `Z` for one degree, in binary64 and at 256 bits.
//!
//! Run with `cargo run --release --example bounds_breakdown [n [d0 a b]]`.
//! Without explicit parameters the optimised tuple for `n` is used.

use thue_bounds::bounds::{cross_check, n_star, LargeParams, SmallParams};
use thue_bounds::precision::HpCtx;
use thue_bounds::report::tables::bounds_text;
use thue_bounds::search::{optimal_params, ZPlan};

fn main() -> thue_bounds::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let n = args.first().map_or(6, |&x| x as u32);
    let (small, large) = match args[..] {
        [_, d0, a, b] => (SmallParams { d0, d: n_star(n) }, LargeParams { a, b }),
        _ => {
            let p = optimal_params(n, ZPlan::default())?;
            (p.small(), p.large())
        }
    };
    let chk = cross_check(&mut HpCtx::default(), n, small, large);
    print!("{}", bounds_text(&chk));
    Ok(())
}
