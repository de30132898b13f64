//! Files, tables and reports produced by the command-line tool.

pub mod config;
pub mod corpus;
pub mod solutions;
pub mod tables;
pub mod verify;

pub use config::{RunConfig, Settings, OUT_DIR_ENV};
pub use corpus::{run_cell, CellRun, CellSummary, FormResult};
pub use solutions::{cross_check, file_name, read_file, write_file, CrossCheck, SolutionRow, HEADERS};
pub use verify::{verify_run, InvariantTally, VerifyPlan, VerifyRun};
