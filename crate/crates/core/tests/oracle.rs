mod common;

use common::{
    direct_chords, direct_residual, euclid, random_problem, residual_lipschitz, with_metric,
};
use equipart::fixtures::{random_open_polyline, random_weights, rng};
use equipart::oracle::{candidate_count, largest_grid_within_budget};
use equipart::{
    brute_force_min_residual, nested_refine, solve, Error, Exec, OracleOptions, SolveOptions,
    Status, Weights,
};

/// Exhaustive minimiser written with plain nested loops, `N ≤ 3`.
fn nested_loop_oracle(
    ev: &equipart::ChordEvaluator,
    w: &Weights,
    m: usize,
) -> Option<(Vec<f64>, f64)> {
    let g = |k: usize| k as f64 / (m - 1) as f64;
    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut consider = |interior: Vec<f64>| {
        let mut t = vec![0.0];
        t.extend(&interior);
        t.push(1.0);
        if let Some(r) = direct_residual(&direct_chords(ev, &t), w.alpha()) {
            if best.as_ref().is_none_or(|(_, b)| r < *b) {
                best = Some((interior, r));
            }
        }
    };
    match w.len() {
        1 => consider(vec![]),
        2 => {
            for a in 0..m {
                consider(vec![g(a)]);
            }
        }
        3 => {
            for a in 0..m {
                for b in a..m {
                    consider(vec![g(a), g(b)]);
                }
            }
        }
        n => panic!("nested-loop oracle handles N ≤ 3, got {n}"),
    }
    best
}

#[test]
fn oracle_matches_nested_loops_on_tiny_grids() {
    let metrics = [
        "euclidean",
        "squared_euclidean",
        "l1",
        "asymmetric_scaled:euclidean,3",
    ];
    for seed in 0..12u64 {
        let mut r = rng(seed);
        for metric in metrics {
            let ev = with_metric(random_open_polyline(seed, 5, 2), metric);
            for n in 1..=3 {
                let w = random_weights(&mut r, n);
                for m in 2..=7 {
                    let got =
                        brute_force_min_residual(&ev, n, &w, m, &OracleOptions::default()).unwrap();
                    let (t, res) = nested_loop_oracle(&ev, &w, m)
                        .expect("open curve has a nonzero chord vector");
                    assert_eq!(
                        got.t_star.as_slice(),
                        &t[..],
                        "seed {seed} {metric} N={n} m={m}"
                    );
                    assert_eq!(got.residual_star, res, "seed {seed} {metric} N={n} m={m}");
                    assert!(!got.degenerate);
                }
            }
        }
    }
}

#[test]
fn sequential_and_parallel_oracles_agree() {
    for seed in 0..4 {
        let p = random_problem(seed, &[2, 3, 4]);
        let results: Vec<_> = Exec::available()
            .into_iter()
            .map(|exec| {
                brute_force_min_residual(
                    &p.ev,
                    p.n,
                    &p.w,
                    61,
                    &OracleOptions {
                        exec,
                        ..Default::default()
                    },
                )
                .unwrap()
            })
            .collect();
        for r in &results[1..] {
            assert_eq!(r, &results[0]);
        }
    }
}

#[test]
fn counts_follow_the_binomial() {
    // C(m+N-2, N-1) by Pascal's triangle
    let mut pascal = vec![vec![1u128]];
    for row in 1..=60usize {
        let prev = &pascal[row - 1];
        let mut next = vec![1u128; row + 1];
        for k in 1..row {
            next[k] = prev[k - 1] + prev[k];
        }
        pascal.push(next);
    }
    for n in 1..=5 {
        for m in 2..=40 {
            if m + n - 2 <= 60 {
                assert_eq!(candidate_count(n, m), pascal[m + n - 2][n - 1]);
            }
        }
    }
    let ev = euclid("segment((0,0),(1,0))");
    let p = brute_force_min_residual(&ev, 3, &Weights::uniform(3), 9, &OracleOptions::default())
        .unwrap();
    assert_eq!(p.evaluated_count, 45);
}

#[test]
fn budget_is_enforced() {
    let ev = euclid("segment((0,0),(1,0))");
    let err =
        brute_force_min_residual(&ev, 5, &Weights::uniform(5), 501, &OracleOptions::default())
            .unwrap_err();
    match err {
        Error::BudgetExceeded { required, budget } => {
            assert_eq!(required, candidate_count(5, 501));
            assert_eq!(budget, 100_000_000);
        }
        other => panic!("unexpected {other:?}"),
    }
    assert!(candidate_count(5, largest_grid_within_budget(5, 501, 100_000_000)) <= 100_000_000);
}

#[test]
fn circle_arc_oracle_regression() {
    let ev = euclid("circle(1,0.75)");
    let w = Weights::uniform(3);
    let r = brute_force_min_residual(&ev, 3, &w, 201, &OracleOptions::default()).unwrap();
    assert_eq!(r.t_star.as_slice(), &[0.33, 0.665]);
    assert_eq!(r.residual_star, 0.002623154476830869);

    let r = brute_force_min_residual(&ev, 3, &w, 2001, &OracleOptions::default()).unwrap();
    assert_eq!(r.t_star.as_slice(), &[0.333, 0.6665]);
    assert_eq!(r.residual_star, 0.0002618508121744467);
    assert!(r.residual_star <= 0.01);
    for (got, exact) in r.t_star.as_slice().iter().zip([1.0 / 3.0, 2.0 / 3.0]) {
        assert!((got - exact).abs() <= 2.0 / 2001.0);
    }
}

#[test]
fn seed_zero_nested_regression() {
    let ev = with_metric(random_open_polyline(0, 16, 2), "euclidean");
    let levels = nested_refine(
        &ev,
        3,
        &Weights::uniform(3),
        &[51, 101, 201],
        &OracleOptions::default(),
    )
    .unwrap();
    let pinned = [
        (vec![0.74, 0.9], 0.009552476296883328),
        (vec![0.55, 0.92], 0.002881585978355361),
        (vec![0.55, 0.92], 0.002881585978355361),
    ];
    for (level, (t, r)) in levels.iter().zip(pinned) {
        assert_eq!(level.t_star.as_slice(), &t[..]);
        assert_eq!(level.residual_star, r);
    }
}

#[test]
fn nested_grids_must_double() {
    let ev = euclid("segment((0,0),(1,0))");
    let err = nested_refine(
        &ev,
        2,
        &Weights::uniform(2),
        &[51, 100],
        &OracleOptions::default(),
    );
    assert!(matches!(err, Err(Error::Domain(_))));
}

#[test]
fn existence_stress_small_n() {
    for seed in 0..50 {
        let p = random_problem(seed, &[2, 3, 4]);
        let levels =
            nested_refine(&p.ev, p.n, &p.w, &[51, 101, 201], &OracleOptions::default()).unwrap();
        let r: Vec<f64> = levels.iter().map(|l| l.residual_star).collect();
        assert!(r[0] >= r[1] && r[1] >= r[2], "seed {seed}: {r:?}");
        assert!(
            r[2] <= 0.1,
            "seed {seed}: N={} final residual {}",
            p.n,
            r[2]
        );
    }
}

#[test]
fn existence_stress_large_n_on_coarse_grids() {
    for seed in 100..120 {
        let p = random_problem(seed, &[5, 6]);
        let levels = nested_refine(&p.ev, p.n, &p.w, &[26, 51], &OracleOptions::default()).unwrap();
        assert!(
            levels[0].residual_star >= levels[1].residual_star,
            "seed {seed}"
        );
        assert!(!levels[1].degenerate);
    }
}

#[test]
fn solver_is_never_worse_than_the_oracle_modulus() {
    for seed in 0..10 {
        let p = random_problem(seed, &[2, 3, 4]);
        let s = solve(&p.ev, p.n, &p.w, &SolveOptions::default()).unwrap();
        if s.report.status != Status::Converged {
            continue;
        }
        let oracle =
            brute_force_min_residual(&p.ev, p.n, &p.w, 201, &OracleOptions::default()).unwrap();
        let lip = residual_lipschitz(&p.ev, p.n, s.partition.chords().iter().sum());
        assert!(
            s.report.residual <= oracle.residual_star + 2.0 * lip / 200.0,
            "seed {seed}: solver {} vs oracle {}",
            s.report.residual,
            oracle.residual_star
        );
        assert!(
            s.report.residual <= oracle.residual_star + 1e-12,
            "seed {seed}: the solver should beat the grid"
        );
    }
}
