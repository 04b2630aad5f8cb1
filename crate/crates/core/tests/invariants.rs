use std::sync::LazyLock;

use approx::assert_relative_eq;
use einstab_core::aloff_wallach::{aw_isotropy, aw_scalar, cr_solution_family, AWMetric, Branch, AW_FORM};
use einstab_core::homspace::{
    divergence_invariant, fd, grad_hess, max_abs, normalized_total_scalar, scalar_curvature, structure_triples,
};
use einstab_core::liecore::{aw_basis, nikonorov_basis, stiefel_basis, AdaptedBasis, BackgroundForm};
use einstab_core::nikonorov::{mixing_parameter, nik_isotropy, nik_scalar, NikMetric, NIK_FORM};
use einstab_core::stiefel::{stiefel_scalar, StiefelMetric, STIEFEL_FORM};
use einstab_core::{DiagonalMetric, IsotropyData};
use proptest::prelude::*;

static AW_CASES: LazyLock<Vec<((i64, i64), IsotropyData)>> = LazyLock::new(|| {
    [(0, 1), (1, 4), (1, 5), (2, 7), (3, 11)]
        .into_iter()
        .map(|pq| (pq, aw_isotropy(pq.0, pq.1).unwrap()))
        .collect()
});

static STIEFEL_DATA: LazyLock<Vec<IsotropyData>> = LazyLock::new(|| {
    (3..=6)
        .map(|n| structure_triples(&stiefel_basis(n).unwrap(), STIEFEL_FORM).unwrap())
        .collect()
});

static NIK_DATA: LazyLock<IsotropyData> =
    LazyLock::new(|| nik_isotropy(einstab_core::nikonorov::NIK_ANGLE).unwrap());

static DIVERGENCE_BASES: LazyLock<Vec<(AdaptedBasis, BackgroundForm)>> = LazyLock::new(|| {
    let mut out = vec![
        (aw_basis(0, 1).unwrap(), AW_FORM),
        (aw_basis(1, 4).unwrap(), AW_FORM),
    ];
    out.extend((3..=5).map(|n| (stiefel_basis(n).unwrap(), STIEFEL_FORM)));
    out.push((nikonorov_basis(einstab_core::nikonorov::NIK_ANGLE).unwrap(), NIK_FORM));
    out
});

fn scales(r: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.2f64..4.0, r)
}

fn every_space() -> Vec<&'static IsotropyData> {
    let mut all: Vec<&IsotropyData> = AW_CASES.iter().map(|(_, d)| d).collect();
    all.extend(STIEFEL_DATA.iter());
    all.push(&NIK_DATA);
    all
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn aw_closed_form_matches_structure_constants(x in scales(4), idx in 0usize..5) {
        let ((p, q), data) = &AW_CASES[idx];
        let m = AWMetric::new(x[0], x[1], x[2], x[3], *p, *q).unwrap();
        let generic = scalar_curvature(data, &m.to_diagonal());
        assert_relative_eq!(generic, aw_scalar(&m), max_relative = 1e-9);
    }

    #[test]
    fn stiefel_closed_form_matches_structure_constants(x in scales(3), idx in 0usize..4) {
        let n = idx + 3;
        let m = StiefelMetric::new(x[0], x[1], x[2], n).unwrap();
        let generic = scalar_curvature(&STIEFEL_DATA[idx], &m.to_diagonal());
        assert_relative_eq!(generic, stiefel_scalar(&m), max_relative = 1e-9);
    }

    #[test]
    fn nikonorov_closed_form_matches_structure_constants(x in scales(4)) {
        let m = NikMetric::new([x[0], x[1], x[2], x[3]], 1.0).unwrap();
        let generic = scalar_curvature(&NIK_DATA, &DiagonalMetric::new(x.clone()).unwrap());
        assert_relative_eq!(generic, nik_scalar(&m), max_relative = 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn nikonorov_oracle_at_any_angle(x in scales(4), angle in 0.0f64..std::f64::consts::FRAC_PI_2) {
        let data = nik_isotropy(angle).unwrap();
        let m = NikMetric::new([x[0], x[1], x[2], x[3]], mixing_parameter(angle)).unwrap();
        let generic = scalar_curvature(&data, &DiagonalMetric::new(x.clone()).unwrap());
        assert_relative_eq!(generic, nik_scalar(&m), max_relative = 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn homothety(x in scales(4), t in 0.1f64..10.0, pick in 0usize..10) {
        let data = every_space()[pick];
        let g = DiagonalMetric::new(x[..data.r()].to_vec()).unwrap();
        let gt = g.scaled(t).unwrap();
        assert_relative_eq!(
            normalized_total_scalar(data, &gt),
            normalized_total_scalar(data, &g),
            max_relative = 1e-12,
            epsilon = 1e-12
        );
        assert_relative_eq!(
            scalar_curvature(data, &gt) * t,
            scalar_curvature(data, &g),
            max_relative = 1e-12,
            epsilon = 1e-12
        );
    }

    #[test]
    fn analytic_derivatives_match_finite_differences(x in scales(4), pick in 0usize..10) {
        let data = every_space()[pick];
        let x = &x[..data.r()];
        let g = DiagonalMetric::new(x.to_vec()).unwrap();
        let f = |y: &[f64]| normalized_total_scalar(data, &DiagonalMetric::new(y.to_vec()).unwrap());
        let (grad, hess) = grad_hess(data, &g);
        let grad_fd = fd::gradient(f, x);
        let hess_fd = fd::hessian_from_gradient(
            |y| grad_hess(data, &DiagonalMetric::new(y.to_vec()).unwrap()).0,
            x,
        );
        let gscale = grad.amax().max(1e-3);
        let hscale = hess.amax().max(1e-3);
        prop_assert!((&grad - &grad_fd).amax() / gscale < 1e-7);
        prop_assert!((&hess - &hess_fd).amax() / hscale < 1e-6);
        prop_assert!((&hess - hess.transpose()).amax() <= 1e-12 * hscale);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn diagonal_directions_are_divergence_free(x in scales(4), h in prop::collection::vec(-2.0f64..2.0, 4)) {
        for (basis, form) in DIVERGENCE_BASES.iter() {
            let r = basis.summands.len();
            let g = DiagonalMetric::new(x[..r].to_vec()).unwrap();
            let div = divergence_invariant(basis, *form, &g, &h[..r]).unwrap();
            prop_assert!(max_abs(&div) <= 1e-10, "residual {}", max_abs(&div));
        }
    }
}

proptest! {
    #[test]
    fn einstein_system_on_random_parameters(t in 0.0f64..1.0, pp in any::<bool>()) {
        let branch = if pp { Branch::PP } else { Branch::CR };
        let (lo, hi) = branch.interval();
        let s = cr_solution_family(lo + t * (hi - lo), branch).unwrap();
        prop_assert!(s.max_system_residual() <= 1e-12);
    }
}
