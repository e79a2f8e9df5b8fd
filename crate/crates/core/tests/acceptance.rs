//! Acceptance criteria 1–8. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{direct_chords, direct_residual, euclid, random_problem, with_metric};
use equipart::curve::make_builtin_curve;
use equipart::fixtures::{random_open_polyline, rng};
use equipart::simplex::{face_maps, lemma_a_probe, radial_project};
use equipart::{
    brute_force_min_residual, detect_zero_chain, nested_refine, solve, ChordEvaluator, Error, Exec,
    OracleOptions, Permutation, Solution, SolveOptions, Status, Weights,
};
use rand::Rng;

const LINE_TOL: f64 = 1e-9;
const LINE_TIME: Duration = Duration::from_millis(100);
const AGREEMENT_RESIDUAL: f64 = 1e-7;
const AGREEMENT_SLACK: f64 = 0.02;
const AGREEMENT_TIME: Duration = Duration::from_secs(60);
const SEMI_METRIC_RESIDUAL: f64 = 1e-7;
const ZERO_CHAIN_EPS: f64 = 1e-9;
const ZERO_CHAIN_GRID: usize = 101;
const REFINE_FINAL: f64 = 0.1;
const PROBE_DENSITY: usize = 40;
const PROBE_MIN: f64 = 1e-6;
const SCALE_TOL: f64 = 1e-12;
const CERTIFICATE_TOL: f64 = 1e-12;

/// Converged solutions collected across criteria for the certificate check.
#[derive(Default)]
struct Ledger {
    solved: Vec<(ChordEvaluator, Weights, Solution)>,
}

impl Ledger {
    fn solve(
        &mut self,
        ev: &ChordEvaluator,
        n: usize,
        w: &Weights,
        opts: &SolveOptions,
    ) -> Solution {
        let s = solve(ev, n, w, opts).expect("valid problem");
        self.solved.push((ev.clone(), w.clone(), s.clone()));
        s
    }
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&mut Ledger) -> Outcome);

fn line_exactness(ledger: &mut Ledger) -> Outcome {
    let ev = euclid("segment((0,0),(1,0))");
    let mut slowest = Duration::ZERO;
    let mut worst = 0.0f64;
    for n in 2..=8 {
        let start = Instant::now();
        let s = ledger.solve(&ev, n, &Weights::uniform(n), &SolveOptions::default());
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        let err = (0..=n)
            .map(|i| (s.partition.t()[i] - i as f64 / n as f64).abs())
            .fold(0.0, f64::max);
        worst = worst.max(err);
        if err > LINE_TOL {
            return Err(format!("N={n}: max |t_i − i/N| = {err:e} > {LINE_TOL:e}"));
        }
        if elapsed >= LINE_TIME {
            return Err(format!("N={n}: {elapsed:?} ≥ {LINE_TIME:?}"));
        }
    }
    Ok(format!(
        "N=2..8, max |t_i − i/N| = {worst:e} ≤ {LINE_TOL:e}, slowest {slowest:?} < {LINE_TIME:?}"
    ))
}

fn weighted_line(ledger: &mut Ledger) -> Outcome {
    let ev = euclid("segment((0,0),(1,0))");
    let w = Weights::new(vec![0.2, 0.3, 0.5]).unwrap();
    let s = ledger.solve(&ev, 3, &w, &SolveOptions::default());
    let t = s.partition.t();
    let err = (t[1] - 0.2).abs().max((t[2] - 0.5).abs());
    if err <= LINE_TOL {
        Ok(format!(
            "t = ({:.12}, {:.12}), error {err:e} ≤ {LINE_TOL:e}",
            t[1], t[2]
        ))
    } else {
        Err(format!("t = {t:?}, error {err:e} > {LINE_TOL:e}"))
    }
}

fn oracle_agreement(ledger: &mut Ledger) -> Outcome {
    let start = Instant::now();
    let mut worst_solver = 0.0f64;
    let mut worst_gap = f64::NEG_INFINITY;
    for seed in 0..20 {
        let ev = with_metric(random_open_polyline(seed, 16, 2), "euclidean");
        for n in 2..=4 {
            let w = Weights::uniform(n);
            let s = ledger.solve(&ev, n, &w, &SolveOptions::default());
            if s.report.status != Status::Converged || s.report.residual > AGREEMENT_RESIDUAL {
                return Err(format!(
                    "seed {seed} N={n}: {} with residual {:e}",
                    s.report.status, s.report.residual
                ));
            }
            let o = brute_force_min_residual(&ev, n, &w, 201, &OracleOptions::default())
                .map_err(|e| e.to_string())?;
            let gap = o.residual_star - s.report.residual;
            if gap > AGREEMENT_SLACK {
                return Err(format!(
                    "seed {seed} N={n}: oracle {:e} > solver {:e} + {AGREEMENT_SLACK}",
                    o.residual_star, s.report.residual
                ));
            }
            worst_solver = worst_solver.max(s.report.residual);
            worst_gap = worst_gap.max(gap);
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= AGREEMENT_TIME {
        return Err(format!("60 cases took {elapsed:?} ≥ {AGREEMENT_TIME:?}"));
    }
    Ok(format!(
        "60 cases Converged, max residual {worst_solver:e} ≤ {AGREEMENT_RESIDUAL:e}, max oracle − solver {worst_gap:.3e} ≤ {AGREEMENT_SLACK}, {elapsed:.2?} < {AGREEMENT_TIME:?}"
    ))
}

fn semi_metric_generality(ledger: &mut Ledger) -> Outcome {
    let ev = with_metric(
        make_builtin_curve("circle(1,0.75)").unwrap(),
        "squared_euclidean",
    );
    let s = ledger.solve(&ev, 5, &Weights::uniform(5), &SolveOptions::default());
    if s.report.status == Status::Converged && s.report.residual <= SEMI_METRIC_RESIDUAL {
        Ok(format!(
            "squared_euclidean, N=5: Converged, residual {:e} ≤ {SEMI_METRIC_RESIDUAL:e}",
            s.report.residual
        ))
    } else {
        Err(format!(
            "{} with residual {:e}",
            s.report.status, s.report.residual
        ))
    }
}

fn degeneracy_split(ledger: &mut Ledger) -> Outcome {
    let closed = euclid("circle(1,1)");
    let mut largest = 0.0f64;
    for n in 2..=3 {
        let s = ledger.solve(&closed, n, &Weights::uniform(n), &SolveOptions::default());
        if s.report.status != Status::DegenerateZeroChain {
            return Err(format!("circle(1,1) N={n}: status {}", s.report.status));
        }
        let witness = s.report.zero_chain_witness.ok_or("no witness")?;
        let c = direct_chords(&closed, &witness)
            .into_iter()
            .fold(0.0, f64::max);
        if c > ZERO_CHAIN_EPS {
            return Err(format!(
                "circle(1,1) N={n}: witness chord {c:e} > {ZERO_CHAIN_EPS:e}"
            ));
        }
        largest = largest.max(c);
    }
    let open = euclid("circle(1,0.75)");
    for n in 2..=5 {
        if let Some(w) = detect_zero_chain(&open, n, ZERO_CHAIN_EPS, ZERO_CHAIN_GRID)
            .map_err(|e| e.to_string())?
        {
            return Err(format!("circle(1,0.75) N={n}: spurious chain {w:?}"));
        }
    }
    Ok(format!(
        "circle(1,1) N=2,3 degenerate, witness chords ≤ {largest:e}; circle(1,0.75) N=2..5 no chain at eps {ZERO_CHAIN_EPS:e}, m={ZERO_CHAIN_GRID}"
    ))
}

fn nested_refinement(_: &mut Ledger) -> Outcome {
    let mut worst = 0.0f64;
    for seed in 1000..1050 {
        let p = random_problem(seed, &[2, 3, 4]);
        let levels = nested_refine(&p.ev, p.n, &p.w, &[51, 101, 201], &OracleOptions::default())
            .map_err(|e| e.to_string())?;
        let r: Vec<f64> = levels.iter().map(|l| l.residual_star).collect();
        if !(r[0] >= r[1] && r[1] >= r[2]) {
            return Err(format!("seed {seed}: residuals {r:?} increase"));
        }
        if r[2] > REFINE_FINAL {
            return Err(format!(
                "seed {seed} N={}: final residual {} > {REFINE_FINAL}",
                p.n, r[2]
            ));
        }
        worst = worst.max(r[2]);
    }
    Ok(format!(
        "50 problems non-increasing at m=51,101,201, worst final {worst:.4e} ≤ {REFINE_FINAL}"
    ))
}

fn lemma_probe(_: &mut Ledger) -> Outcome {
    let mut smallest = f64::INFINITY;
    for n in 2..=4 {
        let shift = Permutation::cyclic_shift(n);
        for tau in [shift.clone(), shift.inverse()] {
            for (name, phi) in face_maps::fixture_family() {
                let d = lemma_a_probe(n, &tau, &phi, PROBE_DENSITY, Exec::default())
                    .map_err(|e| e.to_string())?;
                if d.is_nan() || d <= PROBE_MIN {
                    return Err(format!(
                        "N={n} τ={tau} {name}: min displacement {d:e} ≤ {PROBE_MIN:e}"
                    ));
                }
                smallest = smallest.min(d);
            }
        }
    }
    let swap = Permutation::from_one_based(&[2, 1, 3]).unwrap();
    match lemma_a_probe(
        3,
        &swap,
        face_maps::identity(),
        PROBE_DENSITY,
        Exec::default(),
    ) {
        Err(Error::Domain(_)) => {}
        other => return Err(format!("non-cyclic τ = {swap} gave {other:?}")),
    }
    Ok(format!(
        "N=2..4, 6 maps, min displacement {smallest:.4e} > {PROBE_MIN:e}; τ=(2,1,3) rejected"
    ))
}

fn invariance_suite(ledger: &mut Ledger) -> Outcome {
    let mut r = rng(8);
    let mut worst_scale = 0.0f64;
    for _ in 0..1000 {
        let len = r.random_range(1..9);
        let x: Vec<f64> = (0..len)
            .map(|_| {
                if r.random_bool(0.2) {
                    0.0
                } else {
                    r.random::<f64>()
                }
            })
            .collect();
        if x.iter().sum::<f64>() == 0.0 {
            continue;
        }
        let lambda = 10f64.powf(r.random_range(-6.0..6.0));
        let a = radial_project(&x).map_err(|e| e.to_string())?;
        let scaled: Vec<f64> = x.iter().map(|v| lambda * v).collect();
        let b = radial_project(&scaled).map_err(|e| e.to_string())?;
        let d = a.sup_distance(&b);
        if d > SCALE_TOL {
            return Err(format!(
                "radial projection moved by {d:e} under λ = {lambda:e}"
            ));
        }
        worst_scale = worst_scale.max(d);
    }

    let opts = SolveOptions::default();
    let mut worst_reversal = 0.0f64;
    for seed in 0..10 {
        let p = random_problem(seed, &[2, 3, 4]);
        let rev = p.ev.reversed();
        let back = ledger.solve(&rev, p.n, &p.w.reversed(), &opts);
        if back.report.status != Status::Converged {
            return Err(format!("reversal seed {seed}: {}", back.report.status));
        }
        let t = back.partition.reversed_breakpoints();
        let res = direct_residual(&direct_chords(&p.ev, &t), p.w.alpha()).ok_or("zero chords")?;
        if res > opts.tol {
            return Err(format!(
                "reversal seed {seed}: residual {res:e} > {:e}",
                opts.tol
            ));
        }
        worst_reversal = worst_reversal.max(res);
    }

    let mut checked = 0;
    for (ev, w, s) in &ledger.solved {
        if s.report.status != Status::Converged {
            continue;
        }
        let chords = direct_chords(ev, s.partition.t());
        let res = direct_residual(&chords, w.alpha()).ok_or("zero chords")?;
        if (res - s.report.residual).abs() > CERTIFICATE_TOL {
            return Err(format!(
                "certificate mismatch: reported {:e}, recomputed {res:e}",
                s.report.residual
            ));
        }
        checked += 1;
    }
    Ok(format!(
        "scale ≤ {worst_scale:e} (1000 cases), reversal residual ≤ {worst_reversal:e} (10 problems), {checked} certificates within {CERTIFICATE_TOL:e}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("line exactness", line_exactness),
        ("weighted line", weighted_line),
        ("oracle agreement", oracle_agreement),
        ("semi-metric generality", semi_metric_generality),
        ("degeneracy split", degeneracy_split),
        ("nested refinement", nested_refinement),
        ("permutation-map probe", lemma_probe),
        ("invariance suite", invariance_suite),
    ];
    let mut ledger = Ledger::default();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check(&mut ledger);
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!(
                "PASS criterion {} ({name}): {detail} [{elapsed:.2?}]",
                i + 1
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "FAIL criterion {} ({name}): {detail} [{elapsed:.2?}]",
                    i + 1
                );
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
