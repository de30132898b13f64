use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use thue_bounds::bounds::{cross_check, n_star, LargeParams, SmallParams};
use thue_bounds::precision::HpCtx;
use thue_bounds::report::tables::{
    asymptotic_text, bounds_text, gap_demo_text, param_text, write_param_csv, write_ztable_csv, ztable_text,
};
use thue_bounds::report::{
    cross_check as compare_rows, file_name, read_file, run_cell, verify_run, write_file, RunConfig, Settings,
    VerifyPlan, OUT_DIR_ENV,
};
use thue_bounds::search::{asymptotic_report, descend_search, grid_search, optimal_params, z_bands, SearchConfig};
use thue_bounds::trinomial::DegreeLimits;
use thue_bounds::Error;

#[derive(Parser)]
#[command(name = "thue-bounds", version, about = "Solution-count bounds for trinomial Thue equations")]
struct Cli {
    /// TOML file with default settings.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for the randomized suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Directory for data files (default: $THUE_BOUNDS_OUT_DIR, then the current directory).
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Every intermediate quantity of T and Z for one degree.
    Bounds(BoundsArgs),
    /// Ascending grid search for the best (T, Z) per degree.
    Optimize {
        #[arg(long)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        prec: Option<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Descending lattice walk from n_max down to 6.
    Descend {
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        prec: Option<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// z(n) bands next to the earlier w(n).
    Ztable {
        #[arg(long, default_value_t = 507)]
        n_max: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Irreducible trinomials of one degree and height with their box solutions.
    Enumerate {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        height: u64,
        #[arg(long = "box")]
        box_radius: Option<u64>,
        /// Write the CSV here instead of the output directory.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Solutions from another solver in the same CSV layout.
        #[arg(long)]
        compare: Option<PathBuf>,
    },
    /// Checks every bound over a corpus plus the gap-lemma suites; prints JSON.
    Verify {
        #[arg(long, default_value_t = 6)]
        n_min: u32,
        #[arg(long, default_value_t = 9)]
        n_max: u32,
        #[arg(long, default_value_t = 1)]
        h_min: u64,
        #[arg(long, default_value_t = 2)]
        h_max: u64,
        #[arg(long = "box")]
        box_radius: Option<u64>,
        #[arg(long)]
        gap_instances: Option<usize>,
        #[arg(long)]
        sharp_instances: Option<usize>,
        /// Also write the JSON report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Builds a sharp chain and evaluates the gap bound on it.
    GapDemo {
        #[arg(long = "l")]
        l: f64,
        #[arg(long = "t")]
        t: f64,
        #[arg(long = "p")]
        p: f64,
        #[arg(long)]
        ell: usize,
    },
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    n: i64,
    #[arg(long)]
    d0: Option<f64>,
    /// Defaults to n*.
    #[arg(long)]
    d: Option<f64>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    /// Use the closed-form parameters (n >= 507).
    #[arg(long, conflicts_with_all = ["d0", "d", "a", "b"])]
    asymptotic: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

enum Outcome {
    Ok,
    Violation,
    Usage,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::UnsupportedDegree(_)
            | Error::OutsideAsymptoticRegime { .. }
            | Error::InvalidParams(_)
            | Error::GapInstance(_)
            | Error::InvalidForm(_)
            | Error::Config(_)
    )
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize") + "\n"
}

fn print(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes());
}

fn to_string(f: impl FnOnce(&mut Vec<u8>) -> Result<(), csv::Error>) -> String {
    let mut buf = Vec::new();
    f(&mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("utf-8")
}

fn degree(n: i64) -> Result<u32, Error> {
    u32::try_from(n).ok().filter(|&n| n >= 6).ok_or(Error::UnsupportedDegree(n))
}

fn bounds(cfg: &RunConfig, a: BoundsArgs) -> Result<Outcome, Error> {
    let n = degree(a.n)?;
    let mut ctx = HpCtx::default();
    if a.asymptotic {
        let r = asymptotic_report(&mut ctx, n)?;
        print(&match a.format {
            Format::Json => json(&r),
            _ => asymptotic_text(&r),
        });
        return Ok(if r.all_hold() { Outcome::Ok } else { Outcome::Violation });
    }
    let explicit = [a.d0, a.a, a.b];
    let (small, large) = if explicit.iter().all(Option::is_none) && a.d.is_none() {
        let p = optimal_params(n, cfg.plan)?;
        (p.small(), p.large())
    } else if let [Some(d0), Some(aa), Some(b)] = explicit {
        (
            SmallParams {
                d0,
                d: a.d.unwrap_or(n_star(n)),
            },
            LargeParams { a: aa, b },
        )
    } else {
        return Err(usage("explicit parameters need all of --d0, --a and --b"));
    };
    let chk = cross_check(&mut ctx, n, small, large);
    print(&match a.format {
        Format::Json => json(&chk),
        _ => bounds_text(&chk),
    });
    Ok(if chk.certified() { Outcome::Ok } else { Outcome::Usage })
}

fn param_output(rows: &[thue_bounds::search::OptimalParams], format: Format) {
    print(&match format {
        Format::Text => param_text(rows),
        Format::Csv => to_string(|b| write_param_csv(b, rows)),
        Format::Json => json(&rows),
    });
}

fn run(cli: Cli, cfg: RunConfig) -> Result<Outcome, Error> {
    match cli.cmd {
        Cmd::Bounds(a) => bounds(&cfg, a),
        Cmd::Optimize {
            n_min,
            n_max,
            prec,
            format,
        } => {
            let rows = grid_search(&SearchConfig::new(n_min, n_max, prec.unwrap_or(cfg.plan.coarse)))?;
            param_output(&rows, format);
            Ok(Outcome::Ok)
        }
        Cmd::Descend { n_max, prec, format } => {
            let rows = descend_search(n_max, prec.unwrap_or(cfg.plan.fine))?;
            let stop = rows.first().map_or(n_max, |p| p.n - 1);
            if stop >= 6 {
                eprintln!("walk stopped at n = {stop}: no T + Z = 4 tuple on the lattice");
            }
            param_output(&rows, format);
            Ok(Outcome::Ok)
        }
        Cmd::Ztable { n_max, format } => {
            let bands = z_bands(n_max, cfg.plan)?;
            print(&match format {
                Format::Text => ztable_text(&bands),
                Format::Csv => to_string(|b| write_ztable_csv(b, &bands)),
                Format::Json => json(&bands),
            });
            Ok(Outcome::Ok)
        }
        Cmd::Enumerate {
            degree,
            height,
            box_radius,
            output,
            compare,
        } => {
            let b = box_radius.unwrap_or(cfg.box_radius);
            let run = run_cell(degree, height, b, DegreeLimits::for_degree(degree)?)?;
            let rows = run.rows();
            let path = output.unwrap_or_else(|| cfg.out_dir.join(file_name(degree, height)));
            write_file(&path, &rows)?;
            let s = run.summary();
            let mut out = format!(
                "degree {degree}, height {height}: {} irreducible forms ({} candidates, {} reducible, {} undecided)\n",
                s.forms, s.stats.candidates, s.stats.reducible, s.stats.unknown
            );
            out += &format!("maximum number of solutions: {}", s.max_count);
            if let Some(f) = &s.argmax {
                out += &format!(" (first attained by {f})");
            }
            out += &format!("\ncounts are box-complete to B = {b}\nwrote {}\n", path.display());
            let mut outcome = Outcome::Ok;
            if s.failed_forms > 0 {
                out += &format!("bound violations in {} forms\n", s.failed_forms);
                outcome = Outcome::Violation;
            }
            if let Some(ext) = compare {
                let theirs = read_file(&ext)?;
                let cc = compare_rows(&rows, &theirs, &ext);
                out += &format!(
                    "compared with {}: {} rows, {} mismatches\n",
                    ext.display(),
                    cc.compared,
                    cc.mismatches.len()
                );
                for m in cc.mismatches.iter().take(10) {
                    out += &format!("  {:?}: ours {:?}, theirs {:?}\n", m.key, m.ours, m.theirs);
                }
                if !cc.agrees() {
                    outcome = Outcome::Violation;
                }
            }
            print(&out);
            Ok(outcome)
        }
        Cmd::Verify {
            n_min,
            n_max,
            h_min,
            h_max,
            box_radius,
            gap_instances,
            sharp_instances,
            report,
        } => {
            if n_min <= n_max && n_min < 6 {
                return Err(Error::UnsupportedDegree(n_min as i64));
            }
            if h_min == 0 {
                return Err(usage("heights start at 1"));
            }
            let plan = VerifyPlan {
                n_min,
                n_max,
                h_min,
                h_max,
                box_radius: box_radius.unwrap_or(cfg.box_radius),
                seed: cfg.seed,
                gap_instances: gap_instances.unwrap_or(cfg.gap_instances),
                sharp_instances: sharp_instances.unwrap_or(cfg.sharp_instances),
                plan: cfg.plan,
            };
            let r = verify_run(&plan)?;
            let text = json(&r);
            if let Some(path) = report {
                std::fs::write(&path, &text).map_err(|e| Error::Io { path, source: e })?;
            }
            print(&text);
            Ok(if r.passed { Outcome::Ok } else { Outcome::Violation })
        }
        Cmd::GapDemo { l, t, p, ell } => {
            print(&gap_demo_text(&mut HpCtx::default(), l, t, p, ell)?);
            Ok(Outcome::Ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let flags = Settings {
        seed: cli.seed,
        workers: cli.workers,
        out_dir: cli.out_dir.clone(),
        ..Default::default()
    };
    let resolved = cli
        .config
        .as_deref()
        .map(Settings::load)
        .transpose()
        .and_then(|file| RunConfig::resolve(flags, file, std::env::var_os(OUT_DIR_ENV).map(PathBuf::from)));
    let cfg = match resolved {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cfg.workers {
        pool = pool.num_threads(w);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match pool.install(|| run(cli, cfg)) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Ok(Outcome::Usage) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
