//! The acceptance gate: ten numbered criteria, each printing exactly one
//! `criterion NN: PASS/FAIL` line (visible with `--nocapture`). Expected
//! values are frozen from an independent exact-arithmetic computation;
//! tolerances do not exist because every comparison is exact.

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::process::Command;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nsystems::certify::{
    independence_certificate, specialization_rank_check, uniform_block_certificate, FunctionSet,
};
use nsystems::cfrac::{cf_identity_check, symbolic_cf_check};
use nsystems::exponents::{
    check_chains, closed_forms_paper, compare, criterion_lhs, criterion_report, mnuv,
    sample_neighborhood, trajectory_exponents,
};
use nsystems::nsystem::{
    build_geometry, canonical_params, validate_params, NSystem, Params, PointLabel,
};
use nsystems::Rat;

const SEED: u64 = 20260819;

fn criterion(id: u32, desc: &str, body: impl FnOnce() + UnwindSafe) {
    let result = catch_unwind(body);
    let verdict = if result.is_ok() { "PASS" } else { "FAIL" };
    println!("criterion {id:02}: {verdict} — {desc}");
    if let Err(e) = result {
        resume_unwind(e);
    }
}

fn r(s: &str) -> Rat {
    Rat::from_str(s).unwrap()
}

fn canonical(n: usize) -> Params {
    canonical_params(n).unwrap()
}

fn sample_radius(n: usize) -> Rat {
    Rat::one() / Rat::from_int(1i64 << (n + 3))
}

#[test]
fn criterion_01_construction_is_fast_sized_and_valid() {
    criterion(1, "geometries for n = 3..8 build in under a second with 3n+1 valid points", || {
        let start = Instant::now();
        for n in 3..=8 {
            let p = canonical(n);
            let report = validate_params(&p).unwrap();
            assert!(report.valid, "n = {n}: {:?}", report.violations);
            let g = build_geometry(&p).unwrap();
            assert_eq!(g.points().len(), 3 * n + 1, "n = {n}");
        }
        let elapsed = start.elapsed();
        assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    });
}

#[test]
fn criterion_02_routes_agree_except_what0_everywhere() {
    criterion(
        2,
        "trajectory and closed forms agree except What_0 on canonical and 100 sampled points per n",
        || {
            for n in 3..=8 {
                let center = canonical(n);
                let mut points = vec![center.clone()];
                points.extend(
                    sample_neighborhood(&center, &sample_radius(n), 100, SEED)
                        .unwrap()
                        .into_iter()
                        .map(|s| s.params),
                );
                assert_eq!(points.len(), 101);
                for (i, p) in points.iter().enumerate() {
                    let g = build_geometry(p).unwrap();
                    let t = trajectory_exponents(&g);
                    let c = closed_forms_paper(p);
                    let diff = compare(&t, &c).unwrap();
                    let unequal: Vec<&str> = diff
                        .entries
                        .iter()
                        .filter(|e| !e.equal)
                        .map(|e| e.name.as_str())
                        .collect();
                    assert_eq!(unequal, ["What_0"], "n = {n}, point {i}");
                    let d = mnuv(p);
                    let expected = d.m_k(n) / &(d.n_k(n - 1) + d.m_k(n));
                    assert_eq!(t.uniform[0], expected, "n = {n}, point {i}");
                }

                // Independent grid scan: evaluating the system at every
                // breakpoint and interval midpoint must reproduce the same
                // extrema (maxima of a piecewise-linear ratio cannot hide
                // between breakpoints, and midpoints would expose any that
                // tried).
                let g = build_geometry(&center).unwrap();
                let t = trajectory_exponents(&g);
                let qs: Vec<Rat> = g.points().iter().map(|pt| pt.q.clone()).collect();
                let mut grid = qs.clone();
                let half = r("1/2");
                for w in qs.windows(2) {
                    grid.push((&w[0] + &w[1]) * &half);
                }
                let system = NSystem::new(g);
                for k in 1..=n {
                    let mut ratios = Vec::new();
                    for q in &grid {
                        let values = system.eval(q).unwrap();
                        ratios.push(values[..k].iter().sum::<Rat>() / q);
                    }
                    // The end point q = C duplicates q = 1, so drop it from
                    // the max side exactly as the scan does.
                    let interior: Vec<&Rat> =
                        ratios.iter().take(qs.len() - 1).chain(ratios.iter().skip(qs.len())).collect();
                    let max = interior.iter().max().unwrap();
                    let min = ratios.iter().min().unwrap();
                    let one = Rat::one();
                    assert_eq!(
                        (*max).clone(),
                        &one / &(&one + &t.uniform[n - k]),
                        "n = {n}, k = {k} max"
                    );
                    assert_eq!(min.clone(), &one / &(&one + &t.ordinary[n - k]), "n = {n}, k = {k} min");
                }
            }
        },
    );
}

#[test]
fn criterion_03_frozen_n3_regression() {
    criterion(3, "the n = 3 canonical system matches its frozen table exactly", || {
        let p = canonical(3);
        assert_eq!(p.c(), &r("3"));
        assert_eq!(p.d(), &r("11/32"));
        let g = build_geometry(&p).unwrap();
        let qs: Vec<Rat> = g.points().iter().map(|pt| pt.q.clone()).collect();
        let expected_qs: Vec<Rat> =
            ["1", "9/8", "5/4", "23/16", "27/16", "41/16", "43/16", "87/32", "47/16", "3"]
                .iter()
                .map(|s| r(s))
                .collect();
        assert_eq!(qs, expected_qs);
        let start = &g.points()[0];
        assert_eq!(start.values, vec![r("1/8"), r("1/8"), r("1/4"), r("1/2")]);
        let mu1 = g.point(PointLabel::Mu { l: 1 }).unwrap();
        assert_eq!(mu1.values, vec![r("1/8"), r("11/32"), r("3/4"), r("3/2")]);
        let merged = g.point(PointLabel::DeltaMu { k: 3 }).unwrap();
        assert_eq!(merged.values, vec![r("1/8"), r("5/16"), r("5/8"), r("5/8")]);

        let t = trajectory_exponents(&g);
        assert_eq!(t.uniform, vec![r("8/15"), r("13/7"), r("7")]);
        assert_eq!(t.ordinary, vec![r("24/17"), r("36/7"), r("83/4")]);
        let c = closed_forms_paper(&p);
        assert_eq!(c.uniform, vec![r("8/7"), r("13/7"), r("7")]);
        assert_eq!(c.ordinary, t.ordinary);

        let d = mnuv(&p);
        assert_eq!(d.m, vec![r("3/4"), r("1/2"), r("0")]);
        assert_eq!(d.n, vec![r("1/8"), r("7/16"), r("17/16")]);
        assert_eq!(d.u, vec![r("12/7"), r("8/17")]);
        assert_eq!(d.v, vec![r("6"), r("8/7")]);
    });
}

#[test]
fn criterion_04_criterion_values_and_attainment_invariant() {
    criterion(
        4,
        "S_k(delta(k,1))/delta(k,1) values, their side pattern, and max-attainment consistency",
        || {
            let g3 = build_geometry(&canonical(3)).unwrap();
            assert_eq!(criterion_lhs(&g3, 2).unwrap(), r("1/3"));
            assert_eq!(criterion_lhs(&g3, 3).unwrap(), r("15/23"));
            for n in 3..=8 {
                let center = canonical(n);
                let report = criterion_report(&build_geometry(&center).unwrap());
                assert!(report.consistent, "n = {n}");
                for e in &report.entries {
                    let expected = if e.k < n { "<1/2" } else { ">1/2" };
                    assert_eq!(e.observed_side, expected, "n = {n}, k = {}", e.k);
                }
                for s in sample_neighborhood(&center, &sample_radius(n), 50, SEED + 4).unwrap() {
                    let report = criterion_report(&build_geometry(&s.params).unwrap());
                    assert!(report.consistent, "n = {n}, sample {}", s.index);
                }
            }
        },
    );
}

#[test]
fn criterion_05_inequality_chains_over_600_tuples() {
    criterion(5, "every exponent tuple satisfies both chains and the lower bounds", || {
        let mut checked = 0usize;
        for n in 3..=8 {
            let center = canonical(n);
            let g = build_geometry(&center).unwrap();
            let t = trajectory_exponents(&g);
            assert!(check_chains(&t).is_ok(), "canonical n = {n}");
            checked += 1;
            for s in sample_neighborhood(&center, &sample_radius(n), 100, SEED + 5).unwrap() {
                let report = check_chains(&s.tuple);
                assert!(report.is_ok(), "n = {n}, sample {}: {:?}", s.index, report.violations);
                checked += 1;
            }
        }
        assert!(checked >= 600, "only {checked} tuples checked");
    });
}

#[test]
fn criterion_06_continued_fraction_identity() {
    criterion(
        6,
        "the convergent ratio recovers V_{n-1} with C = 1, and provably not without it",
        || {
            for n in 3..=8 {
                let center = canonical(n);
                let report = cf_identity_check(&center, true).unwrap();
                assert!(report.pass, "canonical n = {n}");
                for s in sample_neighborhood(&center, &sample_radius(n), 20, SEED + 6).unwrap() {
                    let report = cf_identity_check(&s.params, true).unwrap();
                    assert!(report.pass, "n = {n}, sample {}", s.index);
                }
            }
            let unspecialized = cf_identity_check(&canonical(3), false).unwrap();
            assert!(!unspecialized.pass);
            assert_eq!(unspecialized.ratio, r("12/7"));
            assert_eq!(unspecialized.expected, r("8/7"));
        },
    );
}

#[test]
fn criterion_07_symbolic_convergent_structure() {
    criterion(7, "constant-term and determinant identities hold symbolically for n = 3..6", || {
        for n in 3..=6 {
            let report = symbolic_cf_check(n).unwrap();
            assert!(report.e_constant_term, "n = {n}");
            assert!(report.f_constant_term, "n = {n}");
            assert!(report.determinant_identity, "n = {n}");
            assert!(report.independent_of_what0, "n = {n}");
            assert!(report.constant_monomial_identity, "n = {n}");
            assert!(report.swapped_variant_fails, "n = {n}: the e/f-swapped recurrence must fail");
            assert!(report.pass, "n = {n}");
        }
    });
}

#[test]
fn criterion_08_certificates_for_n_3_to_6() {
    criterion(8, "full rank 2n, uniform block rank n, specialization rank 2n-3, each under 10s", || {
        for n in 3..=6 {
            let p = canonical(n);
            for set in [FunctionSet::Trajectory, FunctionSet::PaperTable] {
                let start = Instant::now();
                let cert = independence_certificate(n, &p, set).unwrap();
                let elapsed = start.elapsed();
                assert!(elapsed < Duration::from_secs(10), "n = {n}, {set:?}: {elapsed:?}");
                assert_eq!(cert.rank, 2 * n, "n = {n}, {set:?}");
                assert!(!cert.determinant.as_ref().unwrap().is_zero(), "n = {n}, {set:?}");
                assert_eq!(cert.verdict, "independent");
            }
            let block = uniform_block_certificate(n, &p).unwrap();
            assert_eq!(block.rank, n, "n = {n}");
            assert_eq!(block.determinant, None);
            let spec = specialization_rank_check(n, &p).unwrap();
            assert_eq!(spec.rank, 2 * n - 3, "n = {n}");
            assert!(spec.pass);
        }
    });
}

#[test]
fn criterion_09_self_similarity_of_the_extension() {
    criterion(9, "P(C^m q) = C^m P(q) for 100 random rational q and m in [-3, 3]", || {
        let system = NSystem::new(build_geometry(&canonical(4)).unwrap());
        let c = canonical(4).c().clone();
        let c3 = &(&c * &c) * &c;
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
        for _ in 0..100 {
            let j = rng.gen_range(0..=4096i64);
            let q0 = Rat::one() + (&c - &Rat::one()) * Rat::new(j, 4096).unwrap();
            let q = &q0 * &c3; // far enough inside the domain for any m in [-3, 3]
            let m = rng.gen_range(-3..=3i32);
            let scale = c.pow(m).unwrap();
            let lhs = system.eval(&(&q * &scale)).unwrap();
            let rhs: Vec<Rat> = system.eval(&q).unwrap().iter().map(|v| v * &scale).collect();
            assert_eq!(lhs, rhs, "q = {q}, m = {m}");
        }
    });
}

#[test]
fn criterion_10_binary_outputs_are_run_to_run_identical() {
    criterion(10, "sample and certify produce byte-identical output across two runs", || {
        let run = |args: &[&str]| {
            let out = Command::new(env!("CARGO_BIN_EXE_nsys")).args(args).output().unwrap();
            assert!(out.status.success(), "{args:?}");
            out.stdout
        };
        for args in [
            vec!["sample", "--canonical", "4", "--radius", "1/256", "--count", "8", "--seed", "3"],
            vec![
                "sample", "--canonical", "3", "--radius", "1/64", "--count", "5", "--seed", "17",
                "--format", "csv",
            ],
            vec!["certify", "--canonical", "3", "--set", "trajectory"],
            vec!["certify", "--canonical", "4", "--set", "paper"],
        ] {
            assert_eq!(run(&args), run(&args), "{args:?}");
        }
    });
}
