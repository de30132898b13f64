//! The two published search procedures side by side for a range of degrees.
//! The default range shows the lattice reaching `T + Z = 4` at 218 and 219.
//!
//! Run with `cargo run --release --example optimize_table [n_min n_max]`.

use thue_bounds::report::tables::param_text;
use thue_bounds::search::{descend_lattice, grid_search, SearchConfig, COARSE_PREC, FINE_PREC};

fn main() -> thue_bounds::Result<()> {
    let args: Vec<u32> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let (lo, hi) = match args[..] {
        [a, b] => (a, b),
        _ => (212, 224),
    };
    let grid = grid_search(&SearchConfig::new(lo, hi, COARSE_PREC))?;
    println!("ascending grid, step {COARSE_PREC}");
    print!("{}", param_text(&grid));

    // The descending lattice only looks for T + Z = 4.
    let mut hits = Vec::new();
    for n in lo..=hi {
        hits.extend(descend_lattice(n, FINE_PREC)?);
    }
    println!("\ndescending lattice, step {FINE_PREC} (degrees with a T + Z = 4 tuple)");
    print!("{}", param_text(&hits));
    Ok(())
}
