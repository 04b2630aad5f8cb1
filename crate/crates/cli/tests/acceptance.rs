//! Acceptance criteria, one PASS/FAIL line each.

use std::process::{Command, ExitCode};

use einstab_cli::config::AnalysisConfig;
use einstab_cli::render::to_json;
use einstab_core::aloff_wallach::{
    aw_instability_all, aw_isotropy, aw_scalar, cr_solution_family, cr_to_metric, einstein_defect, f_poly_derivative_exact,
    f_poly_exact, solve_c, AWMetric, Branch, AW_FORM,
};
use einstab_core::homspace::{divergence_invariant, fd, max_abs, ricci_blocks, scalar_curvature, structure_triples};
use einstab_core::liecore::{aw_basis, nikonorov_basis, stiefel_basis, validate_pq, AdaptedBasis, BackgroundForm};
use einstab_core::nikonorov::{nik_instability, nik_isotropy, nik_scalar, nik_solve, NikMetric, NIK_ANGLE, NIK_FORM, NIK_REFERENCE};
use einstab_core::spectra::{
    casimir, case_study, sasaki_parameters, CaseId, GroupScale, RootType,
};
use einstab_core::stiefel::{stiefel_einstein_constant, stiefel_instability, stiefel_scalar, StiefelMetric, STIEFEL_FORM};
use einstab_core::{Classification, DiagonalMetric, Witness};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn r(s: &str) -> BigRational {
    s.parse().expect("rational literal")
}

fn criterion_1() -> Outcome {
    let cases = [(Branch::CR, [1.0, 1.0, 0.5, 0.5], 0.75), (Branch::PP, [1.0, 1.0, 2.5, 2.5], 0.27)];
    let data = aw_isotropy(0, 1).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for (branch, expected, lambda) in cases {
        let c = solve_c(0, 1, branch).map_err(|e| e.to_string())?;
        let (m, l) = cr_to_metric(c, branch, 0, 1).map_err(|e| e.to_string())?;
        for (got, want) in m.scales().iter().zip(expected) {
            ensure((got - want).abs() <= 1e-10, || format!("{branch}: metric {:?}", m.scales()))?;
        }
        ensure((l - lambda).abs() <= 1e-10, || format!("{branch}: Lambda = {l}"))?;
        let generic = ricci_blocks(&data, &m.to_diagonal())
            .iter()
            .fold(0.0f64, |a, x| a.max((x - l).abs()));
        let defect = einstein_defect(&m, l).max(generic);
        ensure(defect <= 1e-10, || format!("{branch}: block residual {defect:e}"))?;
        worst = worst.max(defect);
    }
    Ok(format!("CR (1,1,1/2,1/2) with 3/4 and PP (1,1,5/2,5/2) with 27/100, residual {worst:.1e}"))
}

fn criterion_2() -> Outcome {
    let mut worst = 0.0f64;
    for branch in Branch::ALL {
        let (lo, hi) = branch.interval();
        for i in 0..200 {
            let c = lo + (hi - lo) * i as f64 / 199.0;
            let s = cr_solution_family(c, branch).map_err(|e| e.to_string())?;
            worst = worst.max(s.max_system_residual());
        }
    }
    ensure(worst <= 1e-12, || format!("residual {worst:e}"))?;
    Ok(format!("400 grid points, max residual {worst:.1e}"))
}

fn criterion_3() -> Outcome {
    ensure(f_poly_exact(&r("-17/20")) > r("3"), || "f(-0.85) <= 3".into())?;
    ensure(f_poly_exact(&r("17/20")) > r("1096"), || "f(0.85) <= 1096".into())?;
    ensure(f_poly_derivative_exact(&r("-1")) == r("-35"), || "f'(-1) != -35".into())?;
    ensure(f_poly_derivative_exact(&r("1")) == r("77"), || "f'(1) != 77".into())?;
    let mut points = 0;
    let mut worst = 0.0f64;
    for q in 1..=20i64 {
        for p in 0..=q / 3 {
            if validate_pq(p, q).is_err() {
                continue;
            }
            for branch in Branch::ALL {
                let certs = aw_instability_all(p, q, branch).map_err(|e| format!("({p},{q},{branch}): {e}"))?;
                for cert in certs {
                    points += 1;
                    worst = worst.max(cert.identity_error);
                    ensure(cert.identity_error <= 1e-8, || format!("({p},{q},{branch}) identity {:e}", cert.identity_error))?;
                    ensure(cert.verdict.classification == Classification::SLinearlyUnstable, || {
                        format!("({p},{q},{branch}) verdict {}", cert.verdict.classification)
                    })?;
                }
            }
        }
    }
    Ok(format!("exact f values hold; {points} Einstein points unstable, identity error {worst:.1e}"))
}

fn criterion_4() -> Outcome {
    let [first, second] = nik_solve().map_err(|e| e.to_string())?;
    let worst = first
        .metric
        .x()
        .iter()
        .zip(NIK_REFERENCE)
        .fold(0.0f64, |m, (a, b)| m.max(fd::relative_error(*a, b)));
    ensure(worst <= 1e-4, || format!("solution 1 {:?}", first.metric.x()))?;
    let mut agreement = 0.0f64;
    for (sol, axis) in [(&first, 2), (&second, 1)] {
        let cert = nik_instability(sol, axis).map_err(|e| e.to_string())?;
        ensure(cert.second_derivative > 0.0, || format!("axis {axis}: {}", cert.second_derivative))?;
        let Witness::SecondVariation { finite_difference: Some(fdv), .. } = cert.verdict.witness else {
            return Err("missing finite-difference check".into());
        };
        let err = fd::relative_error(cert.second_derivative, fdv);
        ensure(err <= 1e-5, || format!("axis {axis}: FD disagreement {err:e}"))?;
        agreement = agreement.max(err);
    }
    Ok(format!("reference matched to {worst:.1e}, both second derivatives positive, FD agreement {agreement:.1e}"))
}

fn criterion_5() -> Outcome {
    let mut worst = 0.0f64;
    for n in 3..=50 {
        let s = stiefel_instability(n).map_err(|e| e.to_string())?;
        let nf = n as f64;
        let x = s.einstein.metric.x();
        ensure(
            (x[0] - 2.0 * (nf - 1.0)).abs() < 1e-12 && (x[1] - nf).abs() < 1e-12 && (x[2] - nf).abs() < 1e-12,
            || format!("n = {n}: metric {x:?}"),
        )?;
        ensure(fd::relative_error(s.einstein.lambda, stiefel_einstein_constant(n)) <= 1e-12, || {
            format!("n = {n}: Lambda {}", s.einstein.lambda)
        })?;
        ensure(s.einstein.gradient_norm <= 1e-10, || format!("n = {n}: gradient {:e}", s.einstein.gradient_norm))?;
        ensure(s.hessian_11 > 0.0, || format!("n = {n}: Hessian entry {}", s.hessian_11))?;
        ensure(s.closed_form_error <= 1e-8, || format!("n = {n}: closed form error {:e}", s.closed_form_error))?;
        worst = worst.max(s.closed_form_error);
    }
    Ok(format!("n = 3..50 critical and unstable, closed-form error {worst:.1e}"))
}

fn random_scales(rng: &mut ChaCha8Rng, r: usize) -> Vec<f64> {
    (0..r).map(|_| rng.random_range(0.2..4.0)).collect()
}

fn criterion_6() -> Outcome {
    let bases: Vec<(&str, AdaptedBasis, BackgroundForm)> = vec![
        ("AW(0,1)", aw_basis(0, 1).map_err(|e| e.to_string())?, AW_FORM),
        ("AW(1,4)", aw_basis(1, 4).map_err(|e| e.to_string())?, AW_FORM),
        ("Stiefel(3)", stiefel_basis(3).map_err(|e| e.to_string())?, STIEFEL_FORM),
        ("Stiefel(4)", stiefel_basis(4).map_err(|e| e.to_string())?, STIEFEL_FORM),
        ("Stiefel(5)", stiefel_basis(5).map_err(|e| e.to_string())?, STIEFEL_FORM),
        ("Nikonorov", nikonorov_basis(NIK_ANGLE).map_err(|e| e.to_string())?, NIK_FORM),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for (name, basis, form) in &bases {
        let r = basis.summands.len();
        for _ in 0..50 {
            let g = DiagonalMetric::new(random_scales(&mut rng, r)).map_err(|e| e.to_string())?;
            let h: Vec<f64> = (0..r).map(|_| rng.random_range(-2.0..2.0)).collect();
            let div = max_abs(&divergence_invariant(basis, *form, &g, &h).map_err(|e| e.to_string())?);
            ensure(div <= 1e-10, || format!("{name}: residual {div:e}"))?;
            worst = worst.max(div);
        }
    }
    Ok(format!("300 random pairs on six bases, max residual {worst:.1e}"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    let pqs = [(0, 1), (1, 3), (1, 4), (2, 7), (1, 11)];
    let aw: Vec<_> = pqs.iter().map(|&(p, q)| aw_isotropy(p, q).map(|d| (p, q, d))).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    for i in 0..100 {
        let (p, q, data) = &aw[i % aw.len()];
        let x = random_scales(&mut rng, 4);
        let m = AWMetric::new(x[0], x[1], x[2], x[3], *p, *q).map_err(|e| e.to_string())?;
        let e = fd::relative_error(scalar_curvature(data, &m.to_diagonal()), aw_scalar(&m));
        ensure(e <= 1e-9, || format!("AW({p},{q}) at {x:?}: {e:e}"))?;
        worst = worst.max(e);
    }
    let nik = nik_isotropy(NIK_ANGLE).map_err(|e| e.to_string())?;
    for _ in 0..100 {
        let x = random_scales(&mut rng, 4);
        let m = NikMetric::new([x[0], x[1], x[2], x[3]], 1.0).map_err(|e| e.to_string())?;
        let g = DiagonalMetric::new(x.clone()).map_err(|e| e.to_string())?;
        let e = fd::relative_error(scalar_curvature(&nik, &g), nik_scalar(&m));
        ensure(e <= 1e-9, || format!("Nikonorov at {x:?}: {e:e}"))?;
        worst = worst.max(e);
    }
    let stiefel: Vec<_> = (3..=6)
        .map(|n| structure_triples(&stiefel_basis(n)?, STIEFEL_FORM))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    for i in 0..100 {
        let n = 3 + i % stiefel.len();
        let x = random_scales(&mut rng, 3);
        let m = StiefelMetric::new(x[0], x[1], x[2], n).map_err(|e| e.to_string())?;
        let e = fd::relative_error(scalar_curvature(&stiefel[n - 3], &m.to_diagonal()), stiefel_scalar(&m));
        ensure(e <= 1e-9, || format!("Stiefel({n}) at {x:?}: {e:e}"))?;
        worst = worst.max(e);
    }
    Ok(format!("300 random metrics, max relative error {worst:.1e}"))
}

fn criterion_8() -> Outcome {
    let q_of = |kind: RootType, index: usize| -> Result<BigRational, String> {
        let s = GroupScale::new(kind).map_err(|e| e.to_string())?;
        Ok(casimir(&s, &s.fundamental(index).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?.q)
    };
    ensure(q_of(RootType::B(2), 1)? == r("2/3"), || "so(5) vector".into())?;
    ensure(q_of(RootType::E6, 1)? == r("13/18"), || "E6 27".into())?;
    ensure(q_of(RootType::E7, 7)? == r("57/72"), || "E7 56".into())?;
    for p in 2..=10i64 {
        let expected = BigRational::new((p * (p + 3)).into(), ((p + 2) * (p + 2)).into());
        ensure(q_of(RootType::A(p as usize + 1), 2)? == expected, || format!("su({}) exterior square", p + 2))?;
    }
    let mut kinds = vec![RootType::G2, RootType::E6, RootType::E7];
    kinds.extend((1..=8).map(RootType::A));
    kinds.extend((2..=8).map(RootType::B));
    kinds.extend((3..=8).map(RootType::D));
    for kind in &kinds {
        let s = GroupScale::new(*kind).map_err(|e| e.to_string())?;
        let adj = casimir(&s, &s.adjoint()).map_err(|e| e.to_string())?.q;
        ensure(adj == r("1"), || format!("{kind} adjoint Casimir {adj}"))?;
    }
    for m in 3..=100i64 {
        let two_lambda = sasaki_parameters(m).map_err(|e| e.to_string())?.two_lambda;
        let vector = q_of(RootType::orthogonal((m + 2) as usize).map_err(|e| e.to_string())?, 1)?;
        ensure(vector < two_lambda, || format!("hyperquadric m = {m}"))?;
    }
    ensure(q_of(RootType::E6, 1)? < sasaki_parameters(16).map_err(|e| e.to_string())?.two_lambda, || "E6 inequality".into())?;
    ensure(q_of(RootType::E7, 7)? < sasaki_parameters(27).map_err(|e| e.to_string())?.two_lambda, || "E7 inequality".into())?;
    for p in 2..=100i64 {
        let two_lambda = sasaki_parameters(2 * p).map_err(|e| e.to_string())?.two_lambda;
        ensure(q_of(RootType::A(p as usize + 1), 2)? < two_lambda, || format!("Grassmannian p = {p}"))?;
    }
    let t = case_study(CaseId::TripleS3).map_err(|e| e.to_string())?;
    ensure(t.eigenvalue == r("3") && t.threshold == r("10/3"), || format!("triple-S3 {} vs {}", t.eigenvalue, t.threshold))?;
    ensure(t.verdict.classification == Classification::NuUnstableConformal, || "triple-S3 verdict".into())?;
    let h = case_study(CaseId::Hyperquadric(3)).map_err(|e| e.to_string())?;
    ensure(h.eigenvalue == r("11/18"), || format!("hyperquadric eigenvalue {}", h.eigenvalue))?;
    for k in 4..=20i64 {
        let s = case_study(CaseId::SpSu(k)).map_err(|e| e.to_string())?;
        let expected = BigRational::from_integer((-2 * k).into()) - BigRational::new(4.into(), (k + 1).into());
        ensure(s.eigenvalue == expected && s.eigenvalue < r("-8"), || format!("sp-su({k}) {}", s.eigenvalue))?;
        ensure(s.verdict.classification == Classification::SLinearlyUnstable, || format!("sp-su({k}) verdict"))?;
    }
    Ok(format!("Casimir values exact, adjoint = 1 on {} types, inequality suite and case studies hold", kinds.len()))
}

fn criterion_9() -> Outcome {
    let config = AnalysisConfig::from_pairs([("command".to_owned(), "report".to_owned())].into()).map_err(|e| e.to_string())?;
    let a = to_json(&einstab_cli::run(&config).report).map_err(|e| e.to_string())?;
    let b = to_json(&einstab_cli::run(&config).report).map_err(|e| e.to_string())?;
    ensure(a == b, || "library runs differ".into())?;
    let bin = env!("CARGO_BIN_EXE_einstab");
    let run = |threads: &str| {
        Command::new(bin)
            .args(["report", "--format", "json"])
            .env("EINSTAB_THREADS", threads)
            .output()
            .map_err(|e| e.to_string())
    };
    let one = run("1")?;
    let four = run("4")?;
    ensure(one.status.success() && four.status.success(), || "report exited nonzero".into())?;
    ensure(one.stdout == four.stdout, || "binary runs with 1 and 4 threads differ".into())?;
    Ok(format!("{} bytes of JSON identical across runs and thread counts", one.stdout.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("Aloff-Wallach closed form", criterion_1),
        ("Einstein-system identity", criterion_2),
        ("instability certificate", criterion_3),
        ("Nikonorov solutions", criterion_4),
        ("Stiefel family", criterion_5),
        ("divergence-free directions", criterion_6),
        ("oracle equivalence", criterion_7),
        ("spectra", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
