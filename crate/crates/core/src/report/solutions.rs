//! Per-form solution data in the CSV layout of the published data files.
//!
//! One row per form, CRLF line endings, and the solution list written as a
//! GP vector `[[p, q], ...]` sorted lexicographically.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::trinomial::{SolutionRecord, TrinomialForm};

pub const HEADERS: [&str; 6] = [
    "Number of Solutions to |F(x,y)| = 1",
    "Leading Coefficient",
    "Middle Coefficient",
    "Constant Coefficient",
    "Middle Degree",
    "List of Solutions to |F(x,y)| = 1",
];

pub fn file_name(n: u32, height: u64) -> String {
    format!("degree_{n}_height_{height}_thue_equations.csv")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionRow {
    pub h_n: i64,
    pub h_k: i64,
    pub h_0: i64,
    pub k: u32,
    /// Sorted lexicographically.
    pub solutions: Vec<(i64, i64)>,
}

impl SolutionRow {
    pub fn new(form: &TrinomialForm, sols: &[SolutionRecord]) -> Self {
        let mut solutions: Vec<(i64, i64)> = sols.iter().map(|s| (s.p, s.q)).collect();
        solutions.sort_unstable();
        SolutionRow {
            h_n: form.h_n,
            h_k: form.h_k,
            h_0: form.h_0,
            k: form.k,
            solutions,
        }
    }

    pub fn count(&self) -> usize {
        self.solutions.len()
    }

    pub fn key(&self) -> (i64, i64, i64, u32) {
        (self.h_n, self.h_k, self.h_0, self.k)
    }
}

pub fn format_list(sols: &[(i64, i64)]) -> String {
    let items: Vec<String> = sols.iter().map(|(p, q)| format!("[{p}, {q}]")).collect();
    format!("[{}]", items.join(", "))
}

/// Parses `[[p, q], ...]`, tolerating any whitespace and GP's `~` column marker.
pub fn parse_list(s: &str) -> Option<Vec<(i64, i64)>> {
    let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '~').collect();
    let inner = t.strip_prefix('[')?.strip_suffix(']')?;
    if inner.is_empty() {
        return Some(Vec::new());
    }
    let inner = inner.strip_prefix('[')?.strip_suffix(']')?;
    inner
        .split("],[")
        .map(|pair| {
            let (p, q) = pair.split_once(',')?;
            Some((p.parse().ok()?, q.parse().ok()?))
        })
        .collect()
}

/// Quotes only fields holding a comma, a quote or a line break, as Python's
/// `csv.writer` does by default. Both header fields naming `F(x,y)` are quoted.
fn field(s: &str) -> String {
    if s.contains([',', '"', '\r', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn line<W: Write>(out: &mut W, fields: &[String]) -> std::io::Result<()> {
    let cells: Vec<String> = fields.iter().map(|f| field(f)).collect();
    out.write_all(cells.join(",").as_bytes())?;
    out.write_all(b"\r\n")
}

pub fn write_rows<W: Write>(mut out: W, rows: &[SolutionRow]) -> std::io::Result<()> {
    line(&mut out, &HEADERS.map(String::from))?;
    for r in rows {
        line(
            &mut out,
            &[
                r.count().to_string(),
                r.h_n.to_string(),
                r.h_k.to_string(),
                r.h_0.to_string(),
                r.k.to_string(),
                format_list(&r.solutions),
            ],
        )?;
    }
    out.flush()
}

pub fn write_file(path: &Path, rows: &[SolutionRow]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_rows(std::io::BufWriter::new(file), rows).map_err(|e| Error::io(path, e))
}

/// Reads rows in the same layout, for example a file produced by an external solver.
/// The count column must agree with the list.
pub fn read_rows<R: Read>(input: R, path: &Path) -> Result<Vec<SolutionRow>> {
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let bad = |line: u64, detail: String| Error::Record {
        path: path.to_path_buf(),
        detail: format!("line {line}: {detail}"),
    };
    let mut r = csv::ReaderBuilder::new().from_reader(input);
    let headers = r.headers().map_err(csv_err)?.clone();
    if headers.iter().ne(HEADERS) {
        return Err(bad(1, format!("unexpected header {:?}", headers.iter().collect::<Vec<_>>())));
    }
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map_or(0, |p| p.line());
        let int = |i: usize| -> Result<i64> {
            rec[i].trim().parse().map_err(|_| bad(line, format!("column {} is not an integer", i + 1)))
        };
        let mut solutions = parse_list(&rec[5]).ok_or_else(|| bad(line, "unreadable solution list".into()))?;
        solutions.sort_unstable();
        let row = SolutionRow {
            h_n: int(1)?,
            h_k: int(2)?,
            h_0: int(3)?,
            k: u32::try_from(int(4)?).map_err(|_| bad(line, "negative middle degree".into()))?,
            solutions,
        };
        if int(0)? != row.count() as i64 {
            return Err(bad(line, format!("count {} but {} listed solutions", &rec[0], row.count())));
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn read_file(path: &Path) -> Result<Vec<SolutionRow>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_rows(file, path)
}

/// Difference between our box counts and another list of solutions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub key: (i64, i64, i64, u32),
    pub ours: Option<Vec<(i64, i64)>>,
    pub theirs: Option<Vec<(i64, i64)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub external: PathBuf,
    pub compared: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares row by row on `(h_n, h_k, h_0, k)`. A row present on one side
/// only is a mismatch.
pub fn cross_check(ours: &[SolutionRow], theirs: &[SolutionRow], external: &Path) -> CrossCheck {
    let mut left: BTreeMap<_, _> = ours.iter().map(|r| (r.key(), &r.solutions)).collect();
    let mut mismatches = Vec::new();
    let mut compared = 0;
    for r in theirs {
        match left.remove(&r.key()) {
            Some(s) => {
                compared += 1;
                if *s != r.solutions {
                    mismatches.push(Mismatch {
                        key: r.key(),
                        ours: Some(s.clone()),
                        theirs: Some(r.solutions.clone()),
                    });
                }
            }
            None => mismatches.push(Mismatch {
                key: r.key(),
                ours: None,
                theirs: Some(r.solutions.clone()),
            }),
        }
    }
    mismatches.extend(left.into_iter().map(|(key, s)| Mismatch {
        key,
        ours: Some(s.clone()),
        theirs: None,
    }));
    mismatches.sort_by_key(|m| m.key);
    CrossCheck {
        external: external.to_path_buf(),
        compared,
        mismatches,
    }
}
