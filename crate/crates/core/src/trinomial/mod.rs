//! Trinomial forms `F(x, y) = h_n x^n + h_k x^k y^(n-k) + h_0 y^n`: enumeration,
//! irreducibility, real analysis of `f(X) = F(X, 1)`, bounded solution search
//! and verification of the counting bounds.

pub mod analysis;
pub mod enumerate;
pub mod irreducible;
pub(crate) mod modp;
pub mod solve;
pub mod verify;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use analysis::{analyze_form, belongs_to, CriticalKind, CriticalPoint, ExceptionalKind, ExceptionalPoint, FormAnalysis, RootEnclosure};
pub use enumerate::{candidate_forms, enumerate_forms, enumerate_with_stats, EnumerationStats};
pub use irreducible::{irreducibility, is_irreducible, Certificate, Irreducibility, IrreducibilityReport, Method};
pub use solve::{solve_box, solve_box_bruteforce, solve_with, SolutionRecord};
pub use verify::{verify_bounds, verify_solutions, BoundCheck, DegreeLimits, PointCount, VerifyReport};

/// A primitive trinomial binary form of degree at least 6.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TrinomialForm {
    pub h_n: i64,
    pub h_k: i64,
    pub h_0: i64,
    pub n: u32,
    pub k: u32,
}

impl TrinomialForm {
    pub fn new(h_n: i64, h_k: i64, h_0: i64, n: u32, k: u32) -> Result<Self> {
        if n < 6 {
            return Err(Error::UnsupportedDegree(n as i64));
        }
        if h_n == 0 || h_k == 0 || h_0 == 0 {
            return Err(Error::InvalidForm(format!("zero coefficient in ({h_n}, {h_k}, {h_0})")));
        }
        if k == 0 || k >= n {
            return Err(Error::InvalidForm(format!("middle degree {k} not in 1..{n}")));
        }
        if [h_n, h_k, h_0].iter().any(|c| *c == i64::MIN) {
            return Err(Error::InvalidForm("coefficient out of range".into()));
        }
        if h_n.gcd(&h_k).gcd(&h_0) != 1 {
            return Err(Error::InvalidForm(format!("({h_n}, {h_k}, {h_0}) is not primitive")));
        }
        Ok(TrinomialForm { h_n, h_k, h_0, n, k })
    }

    /// Naive height.
    pub fn height(&self) -> u64 {
        [self.h_n, self.h_k, self.h_0].iter().map(|c| c.unsigned_abs()).max().unwrap()
    }

    /// Coefficients of `f(X) = F(X, 1)`, lowest degree first.
    pub fn coefficients(&self) -> Vec<i64> {
        let mut c = vec![0; self.n as usize + 1];
        c[0] = self.h_0;
        c[self.k as usize] = self.h_k;
        c[self.n as usize] = self.h_n;
        c
    }

    /// `F(p, q)` exactly.
    pub fn eval(&self, p: i64, q: i64) -> BigInt {
        match self.eval_i128(p as i128, q as i128) {
            Some(v) => BigInt::from(v),
            None => self.eval_big(&BigInt::from(p), &BigInt::from(q)),
        }
    }

    /// `F(p, q)` in `i128`, or `None` on overflow.
    pub(crate) fn eval_i128(&self, p: i128, q: i128) -> Option<i128> {
        let (n, k) = (self.n, self.k);
        let a = p.checked_pow(n)?.checked_mul(self.h_n as i128)?;
        let b = p.checked_pow(k)?.checked_mul(q.checked_pow(n - k)?)?.checked_mul(self.h_k as i128)?;
        let c = q.checked_pow(n)?.checked_mul(self.h_0 as i128)?;
        a.checked_add(b)?.checked_add(c)
    }

    pub(crate) fn eval_big(&self, p: &BigInt, q: &BigInt) -> BigInt {
        let (n, k) = (self.n, self.k);
        p.pow(n) * self.h_n + p.pow(k) * q.pow(n - k) * self.h_k + q.pow(n) * self.h_0
    }

    /// Writes the form as a polynomial in `x` and `y`.
    pub fn display(&self) -> String {
        let term = |c: i64, xe: u32, ye: u32, first: bool| {
            let mut s = String::new();
            if first {
                if c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if c < 0 { " - " } else { " + " });
            }
            let a = c.unsigned_abs();
            if a != 1 {
                s.push_str(&a.to_string());
            }
            let mon = |v: &str, e: u32| match e {
                0 => String::new(),
                1 => v.to_string(),
                _ => format!("{v}^{e}"),
            };
            s.push_str(&mon("x", xe));
            s.push_str(&mon("y", ye));
            s
        };
        format!(
            "{}{}{}",
            term(self.h_n, self.n, 0, true),
            term(self.h_k, self.k, self.n - self.k, false),
            term(self.h_0, 0, self.n, false)
        )
    }
}

impl fmt::Display for TrinomialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}
