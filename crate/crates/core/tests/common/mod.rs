#![allow(dead_code)]

use std::collections::BTreeMap;

use thue_bounds::trinomial::TrinomialForm;

/// The degree/height cells of the published solution table that are checked.
pub const CELLS: [(u32, u64, usize); 19] = [
    (6, 1, 8),
    (6, 2, 6),
    (6, 3, 8),
    (6, 4, 8),
    (7, 1, 8),
    (7, 2, 6),
    (7, 3, 8),
    (7, 4, 8),
    (8, 1, 8),
    (8, 2, 6),
    (8, 3, 8),
    (8, 4, 8),
    (9, 1, 8),
    (9, 2, 6),
    (9, 3, 8),
    (9, 4, 8),
    (10, 1, 8),
    (12, 1, 8),
    (15, 1, 8),
];

pub struct OracleForm {
    pub form: TrinomialForm,
    pub r_f: u32,
    pub c_f: u32,
}

fn parse_form(f: &[&str]) -> TrinomialForm {
    let n: u32 = f[0].parse().unwrap();
    let c: Vec<i64> = f[2..5].iter().map(|s| s.parse().unwrap()).collect();
    TrinomialForm::new(c[0], c[1], c[2], n, f[5].parse().unwrap()).unwrap()
}

/// Irreducible forms per (n, H) from an independent CAS enumeration, with
/// Sturm root counts and proper critical point counts.
pub fn oracle_forms() -> BTreeMap<(u32, u64), Vec<OracleForm>> {
    let mut out: BTreeMap<(u32, u64), Vec<OracleForm>> = BTreeMap::new();
    for line in include_str!("../data/irreducible_forms_oracle.csv").lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let key = (f[0].parse().unwrap(), f[1].parse().unwrap());
        out.entry(key).or_default().push(OracleForm {
            form: parse_form(&f),
            r_f: f[6].parse().unwrap(),
            c_f: f[7].parse().unwrap(),
        });
    }
    out
}

pub struct OracleSolutions {
    pub form: TrinomialForm,
    pub count_30: usize,
    pub solutions: Vec<(i64, i64)>,
}

/// Solution sets with |p|, |q| <= 10^4 from an independent exact scan.
pub fn oracle_solutions() -> Vec<OracleSolutions> {
    include_str!("../data/solutions_oracle.csv")
        .lines()
        .skip(1)
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            let solutions: Vec<(i64, i64)> = f[8]
                .split_whitespace()
                .map(|s| {
                    let (p, q) = s.split_once(':').unwrap();
                    (p.parse().unwrap(), q.parse().unwrap())
                })
                .collect();
            assert_eq!(solutions.len(), f[7].parse::<usize>().unwrap());
            OracleSolutions {
                form: parse_form(&f),
                count_30: f[6].parse().unwrap(),
                solutions,
            }
        })
        .collect()
}
