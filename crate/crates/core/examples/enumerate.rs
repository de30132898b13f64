//! Irreducible trinomials of one degree and height, with every solution in the box.
//!
//! Run with `cargo run --release --example enumerate [n H [B]]`.
//! Writes the CSV file to the system temporary directory.

use thue_bounds::report::{file_name, run_cell, write_file};
use thue_bounds::trinomial::DegreeLimits;

fn main() -> thue_bounds::Result<()> {
    let a: Vec<u64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let n = a.first().map_or(6, |&x| x as u32);
    let h = a.get(1).copied().unwrap_or(1);
    let b = a.get(2).copied().unwrap_or(10_000);
    let run = run_cell(n, h, b, DegreeLimits::for_degree(n)?)?;
    let s = run.summary();
    println!("{} candidates, {} irreducible", s.stats.candidates, s.forms);

    let mut hist = std::collections::BTreeMap::new();
    for r in &run.results {
        *hist.entry(r.solutions.len()).or_insert(0) += 1;
    }
    for (count, forms) in &hist {
        println!("{forms:>5} forms with {count} solutions");
    }
    for r in run.results.iter().filter(|r| r.solutions.len() == s.max_count).take(3) {
        let pts: Vec<String> = r.solutions.iter().map(|s| format!("({}, {})", s.p, s.q)).collect();
        println!("{}: {}", r.form, pts.join(" "));
    }
    let path = std::env::temp_dir().join(file_name(n, h));
    write_file(&path, &run.rows())?;
    println!("wrote {}", path.display());
    Ok(())
}
