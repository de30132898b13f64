//! z(n) bands from 6 up to the closed-form regime, next to Thomas's w(n).
//!
//! Run with `cargo run --release --example ztable [n_max]`.

use thue_bounds::search::{z_bands, ZPlan, THOMAS_W5_NOTE};

fn main() -> thue_bounds::Result<()> {
    let n_max = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(507);
    let bands = z_bands(n_max, ZPlan::default())?;
    println!("{:>10} {:>5} {:>5} {:>12} {:>12}", "n", "z(n)", "w(n)", "2vz+8", "2vw+8");
    for band in &bands {
        let show = |(odd, even): (Option<u32>, Option<u32>)| match (odd, even) {
            (Some(o), Some(e)) => format!("{o}/{e}"),
            (Some(o), None) => o.to_string(),
            (None, Some(e)) => e.to_string(),
            (None, None) => "-".into(),
        };
        println!(
            "{:>10} {:>5} {:>5} {:>12} {:>12}",
            band.label(),
            band.z,
            band.w,
            show(band.totals(band.z)),
            show(band.totals(band.w))
        );
    }
    println!("totals are odd/even n; {THOMAS_W5_NOTE}");
    Ok(())
}
