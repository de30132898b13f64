mod common;

use proptest::prelude::*;
use thue_bounds::trinomial::{
    analyze_form, belongs_to, candidate_forms, enumerate_forms, enumerate_with_stats, irreducibility, is_irreducible,
    solve_box, solve_box_bruteforce, verify_bounds, CriticalKind, DegreeLimits, Irreducibility, Method,
    TrinomialForm,
};

use common::{oracle_forms, oracle_solutions, CELLS};

#[test]
fn enumeration_matches_cas() {
    let oracle = oracle_forms();
    for (n, h, _) in CELLS {
        let (forms, stats) = enumerate_with_stats(n, h, Method::Full).unwrap();
        let expect: Vec<TrinomialForm> = oracle[&(n, h)].iter().map(|o| o.form).collect();
        assert_eq!(forms, expect, "n = {n}, H = {h}");
        assert_eq!(stats.unknown, 0);
        assert_eq!(stats.irreducible + stats.reducible, stats.candidates);
    }
}

#[test]
fn screen_never_contradicts_full_method() {
    let mut undecided = 0;
    for (n, h) in [(6, 1), (6, 2), (6, 3), (7, 2), (8, 2), (8, 3), (9, 2)] {
        for f in candidate_forms(n, h).unwrap() {
            let screen = irreducibility(&f, Method::Screen).verdict;
            let full = irreducibility(&f, Method::Full).verdict;
            assert_ne!(full, Irreducibility::Unknown, "{f}");
            match screen {
                Irreducibility::Unknown => undecided += 1,
                v => assert_eq!(v, full, "{f}"),
            }
        }
    }
    // x^8 - x^4 + 1 and friends split modulo every prime.
    assert!(undecided > 0);
}

#[test]
fn analysis_matches_sturm_counts() {
    for ((n, h), forms) in oracle_forms() {
        for o in forms {
            let a = analyze_form(&o.form).unwrap();
            assert_eq!((a.r_f, a.c_f), (o.r_f, o.c_f), "{} (n = {n}, H = {h})", o.form);
            assert!(a.within_v());
            assert!(a.interleaving, "{}", o.form);
            assert!(a.critical_points.len() <= 3);
            assert!(a.real_roots.iter().all(|r| r.width() <= 1e-12));
        }
    }
}

#[test]
fn box_solutions_match_independent_scan() {
    for o in oracle_solutions() {
        let got: Vec<(i64, i64)> = solve_box(&o.form, 200).unwrap().iter().map(|s| (s.p, s.q)).collect();
        assert_eq!(got, o.solutions, "{}", o.form);
        assert_eq!(o.count_30, o.solutions.len());
    }
}

#[test]
fn box_solver_matches_bruteforce() {
    for (n, h, _) in CELLS.iter().filter(|c| c.0 <= 9) {
        for f in enumerate_forms(*n, *h).unwrap().iter().step_by(7) {
            let got: Vec<(i64, i64)> = solve_box(f, 12).unwrap().iter().map(|s| (s.p, s.q)).collect();
            assert_eq!(got, solve_box_bruteforce(f, 12), "{f}");
        }
    }
}

#[test]
fn best_sextic_of_height_one() {
    let f = TrinomialForm::new(1, -1, -1, 6, 1).unwrap();
    assert_eq!(is_irreducible(&f), Irreducibility::Irreducible);
    let sols = solve_box(&f, 10_000).unwrap();
    let pts: Vec<(i64, i64)> = sols.iter().map(|s| (s.p, s.q)).collect();
    assert_eq!(pts, [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)]);
    // (1, 1) and (-1, 1) have |p| = q, so nothing here is regular.
    assert!(sols.iter().all(|s| !s.regular && !s.special));
}

#[test]
fn belongs_to_examples() {
    // x^6 - 2x^3 + 3: no real roots, 1 is the only proper critical point.
    let a = analyze_form(&TrinomialForm::new(1, -2, 3, 6, 3).unwrap()).unwrap();
    assert_eq!(a.exceptional.len(), 1);
    assert_eq!(belongs_to(&a, 10, 1).unwrap(), 0);
    for (p, q) in [(-7, 3), (0, 1), (5, -2), (1, 1)] {
        assert_eq!(belongs_to(&a, p, q).unwrap(), 0);
    }
    // x^6 - 3x^2 + 1: four real roots cut at -1, 0, 1.
    let a = analyze_form(&TrinomialForm::new(1, -3, 1, 6, 2).unwrap()).unwrap();
    assert_eq!(a.boundaries.len(), 3);
    assert_eq!(belongs_to(&a, 10, 1).unwrap(), 3);
    assert_eq!(belongs_to(&a, 1, 1).unwrap(), 3);
    assert_eq!(belongs_to(&a, 99, 100).unwrap(), 2);
    assert_eq!(belongs_to(&a, -1, 1).unwrap(), 1);
    assert_eq!(belongs_to(&a, -101, 100).unwrap(), 0);
    assert!(belongs_to(&a, 1, 0).is_err());
}

#[test]
fn sextics_of_small_height_verify() {
    let limits = DegreeLimits::for_degree(6).unwrap();
    assert_eq!(limits.z, 15);
    for h in 1..=2 {
        for f in enumerate_forms(6, h).unwrap() {
            let r = verify_bounds(&f, 10_000, limits).unwrap();
            assert!(r.passed(), "{f}: {:?}", r.violations());
            assert!(r.n_total <= 2 * r.n_regular + 8);
        }
    }
}

fn any_form() -> impl Strategy<Value = TrinomialForm> {
    (6u32..=12, 1i64..=6, -6i64..=6, -6i64..=6)
        .prop_flat_map(|(n, hn, hk, h0)| (Just(n), Just(hn), Just(hk), Just(h0), 1..n))
        .prop_filter_map("not a valid form", |(n, hn, hk, h0, k)| TrinomialForm::new(hn, hk, h0, n, k).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn solution_sets_are_symmetric_and_exact(f in any_form(), b in 1u64..=10) {
        prop_assume!(analyze_form(&f).is_ok());
        let sols = solve_box(&f, b).unwrap();
        let pts: Vec<(i64, i64)> = sols.iter().map(|s| (s.p, s.q)).collect();
        prop_assert_eq!(&pts, &solve_box_bruteforce(&f, b));
        for s in &sols {
            prop_assert!(pts.contains(&(-s.p, -s.q)));
            prop_assert_eq!(f.eval(s.p, s.q), s.value.into());
            if s.q != 0 {
                prop_assert_eq!(num_integer::gcd(s.p, s.q), 1);
            }
        }
        prop_assert_eq!(sols.len() % 2, 0);
    }

    #[test]
    fn critical_structure(f in any_form()) {
        if let Ok(a) = analyze_form(&f) {
            prop_assert!(a.critical_points.len() <= 3);
            prop_assert!(a.within_v());
            prop_assert_eq!(a.critical_points.iter().any(|c| c.kind == CriticalKind::Origin), f.k >= 2);
        }
    }

    #[test]
    fn partition_is_ordered(f in any_form(), ps in prop::collection::vec((-400i64..=400, 1i64..=60), 2..30)) {
        prop_assume!(is_irreducible(&f) == Irreducibility::Irreducible);
        let a = analyze_form(&f).unwrap();
        prop_assert!(a.interleaving);
        prop_assert_eq!(a.boundaries.len() + 1, a.exceptional.len());
        let mut ps = ps;
        ps.sort_by(|x, y| (x.0 * y.1).cmp(&(y.0 * x.1)));
        let idx: Vec<usize> = ps.iter().map(|&(p, q)| belongs_to(&a, p, q).unwrap()).collect();
        prop_assert!(idx.windows(2).all(|w| w[0] <= w[1]));
        for (&(p, q), &i) in ps.iter().zip(&idx) {
            let x = p as f64 / q as f64;
            if i > 0 {
                let eta = a.critical_points[a.boundaries[i - 1]].location.approx;
                prop_assert!(x >= eta - 1e-9);
            }
            if i < a.boundaries.len() {
                let eta = a.critical_points[a.boundaries[i]].location.approx;
                prop_assert!(x <= eta + 1e-9);
            }
            prop_assert!(i < a.exceptional.len());
        }
    }
}
