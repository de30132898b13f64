//! Run settings shared by the command-line subcommands.
//!
//! Each setting is taken from the command line if given, else from the TOML
//! config file, else from the built-in default. The output directory has one
//! more fallback, the `THUE_BOUNDS_OUT_DIR` environment variable, between the
//! config file and the default.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::search::{check_prec, ZPlan, COARSE_PREC, FINE_PREC};
use crate::trinomial::solve::MAX_BOX;

pub const OUT_DIR_ENV: &str = "THUE_BOUNDS_OUT_DIR";

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_BOX: u64 = 10_000;
pub const DEFAULT_GAP_INSTANCES: usize = 100_000;
pub const DEFAULT_SHARP_INSTANCES: usize = 10_000;

/// Optional settings, as read from a config file or collected from flags.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub box_radius: Option<u64>,
    pub prec: Option<f64>,
    pub fine_prec: Option<f64>,
    pub out_dir: Option<PathBuf>,
    pub gap_instances: Option<usize>,
    pub sharp_instances: Option<usize>,
}

impl Settings {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Fields set in `self` win over those in `other`.
    pub fn or(self, other: Settings) -> Settings {
        Settings {
            seed: self.seed.or(other.seed),
            workers: self.workers.or(other.workers),
            box_radius: self.box_radius.or(other.box_radius),
            prec: self.prec.or(other.prec),
            fine_prec: self.fine_prec.or(other.fine_prec),
            out_dir: self.out_dir.or(other.out_dir),
            gap_instances: self.gap_instances.or(other.gap_instances),
            sharp_instances: self.sharp_instances.or(other.sharp_instances),
        }
    }
}

/// Fully resolved and validated settings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    /// `None` leaves the thread count to rayon.
    pub workers: Option<usize>,
    pub box_radius: u64,
    pub plan: ZPlan,
    pub out_dir: PathBuf,
    pub gap_instances: usize,
    pub sharp_instances: usize,
}

impl RunConfig {
    pub fn resolve(flags: Settings, file: Option<Settings>, env_out_dir: Option<PathBuf>) -> Result<Self> {
        let s = flags.or(file.unwrap_or_default());
        let cfg = RunConfig {
            seed: s.seed.unwrap_or(DEFAULT_SEED),
            workers: s.workers,
            box_radius: s.box_radius.unwrap_or(DEFAULT_BOX),
            plan: ZPlan {
                coarse: s.prec.unwrap_or(COARSE_PREC),
                fine: s.fine_prec.unwrap_or(FINE_PREC),
            },
            out_dir: s.out_dir.or(env_out_dir).unwrap_or_else(|| PathBuf::from(".")),
            gap_instances: s.gap_instances.unwrap_or(DEFAULT_GAP_INSTANCES),
            sharp_instances: s.sharp_instances.unwrap_or(DEFAULT_SHARP_INSTANCES),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.workers == Some(0) {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        if self.box_radius == 0 || self.box_radius > MAX_BOX {
            return Err(Error::Config(format!("box radius {} not in 1..={MAX_BOX}", self.box_radius)));
        }
        check_prec(self.plan.coarse)?;
        check_prec(self.plan.fine)
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::resolve(Settings::default(), None, None).expect("defaults are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let file = Settings::from_toml("seed = 5\nbox_radius = 300\nout_dir = \"from-file\"\n").unwrap();
        let flags = Settings {
            seed: Some(9),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(flags, Some(file.clone()), Some("from-env".into())).unwrap();
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.box_radius, 300);
        assert_eq!(cfg.out_dir, PathBuf::from("from-file"));
        let cfg = RunConfig::resolve(Settings::default(), None, Some("from-env".into())).unwrap();
        assert_eq!(cfg.out_dir, PathBuf::from("from-env"));
        assert_eq!(cfg.box_radius, DEFAULT_BOX);
        assert_eq!(RunConfig::default().seed, DEFAULT_SEED);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(Settings::from_toml("seeds = 1").is_err());
        let bad = |s: Settings| RunConfig::resolve(s, None, None).is_err();
        assert!(bad(Settings {
            workers: Some(0),
            ..Default::default()
        }));
        assert!(bad(Settings {
            box_radius: Some(0),
            ..Default::default()
        }));
        assert!(bad(Settings {
            prec: Some(1.5),
            ..Default::default()
        }));
    }
}
