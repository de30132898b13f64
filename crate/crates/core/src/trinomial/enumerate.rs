//! The corpus of irreducible trinomials of given degree and exact height.
//!
//! The loops follow the published enumeration: positive leading coefficient
//! (`F` and `-F` have the same solutions), `|h_0| >= h_n` (otherwise the
//! reciprocal form `F(y, x)` is already listed), at least one coefficient of
//! absolute value exactly `H`, primitive, and `1 <= k <= n - 1`.

use rayon::prelude::*;
use serde::Serialize;

use super::irreducible::{irreducibility, Irreducibility, Method};
use super::TrinomialForm;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EnumerationStats {
    pub candidates: usize,
    pub irreducible: usize,
    pub reducible: usize,
    /// Excluded because no verdict was reached.
    pub unknown: usize,
}

/// Every primitive candidate before the irreducibility filter, in loop order.
pub fn candidate_forms(n: u32, height: u64) -> Result<Vec<TrinomialForm>> {
    if n < 6 {
        return Err(Error::UnsupportedDegree(n as i64));
    }
    if height == 0 || height > i64::MAX as u64 / 64 {
        return Err(Error::InvalidParams(format!("height {height} out of range")));
    }
    let h = height as i64;
    let mut out = Vec::new();
    for hn in 1..=h {
        for hk in (-h..0).chain(1..=h) {
            for h0 in (-h..=-hn).chain(hn..=h) {
                let top = hn == h || hk.abs() == h || h0.abs() == h;
                if !top {
                    continue;
                }
                for k in 1..n {
                    if let Ok(f) = TrinomialForm::new(hn, hk, h0, n, k) {
                        out.push(f);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Irreducible forms of degree `n` and height exactly `height`, in loop order.
pub fn enumerate_forms(n: u32, height: u64) -> Result<Vec<TrinomialForm>> {
    Ok(enumerate_with_stats(n, height, Method::Full)?.0)
}

pub fn enumerate_with_stats(n: u32, height: u64, method: Method) -> Result<(Vec<TrinomialForm>, EnumerationStats)> {
    let candidates = candidate_forms(n, height)?;
    let verdicts: Vec<Irreducibility> = candidates
        .par_iter()
        .map(|f| irreducibility(f, method).verdict)
        .collect();
    let mut stats = EnumerationStats {
        candidates: candidates.len(),
        ..Default::default()
    };
    let mut forms = Vec::new();
    for (f, v) in candidates.into_iter().zip(verdicts) {
        match v {
            Irreducibility::Irreducible => {
                stats.irreducible += 1;
                forms.push(f);
            }
            Irreducibility::Reducible => stats.reducible += 1,
            Irreducibility::Unknown => stats.unknown += 1,
        }
    }
    Ok((forms, stats))
}
