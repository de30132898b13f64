//! Sharpness and soundness of the chain-counting lemma.
//!
//! Run with `cargo run --release --example gap_chain [L T p ell]`.

use thue_bounds::gap::{sharpness_suite, soundness_suite};
use thue_bounds::precision::HpCtx;
use thue_bounds::report::tables::gap_demo_text;

fn main() -> thue_bounds::Result<()> {
    let a: Vec<f64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let (l, t, p, ell) = match a[..] {
        [l, t, p, e] => (l, t, p, e as usize),
        _ => (3.0, 2.0, 4.0, 5),
    };
    print!("{}", gap_demo_text(&mut HpCtx::default(), l, t, p, ell)?);

    let sound = soundness_suite(1, 20_000);
    println!(
        "\n{} random instances: greedy chains never exceed the bound ({} violations, longest {})",
        sound.instances, sound.violations, sound.longest_chain
    );
    let sharp = sharpness_suite(1, 1_000);
    println!(
        "{} sharp chains: worst relative error {:.1e}, worst 256-bit residual {:.1e}",
        sharp.instances, sharp.max_error_f64, sharp.max_residual_hp
    );
    Ok(())
}
