//! Explicit bounds on the number of integer solutions of trinomial Thue
//! equations `|h_n x^n + h_k x^k y^(n-k) + h_0 y^n| = 1`.

pub mod bounds;
pub mod error;
pub mod gap;
pub mod precision;
pub mod report;
pub mod search;
pub mod trinomial;

pub use error::{Error, Result};
