//! Property tests for the invariants of each module.

use foxwright::bounds::{luke_bounds, luke_bounds_equal_weights, pfq_luke, Checking, LukeBounds};
use foxwright::conditions::{check_h1, check_h2_params};
use foxwright::fox_wright::{eval_pfq, eval_series, psi_moment, shift_params};
use foxwright::hfunction::HDensity;
use foxwright::mathieu::{mathieu_sum, MathieuSpec};
use foxwright::report::{fmt_real, round_sig};
use foxwright::special::{digamma, hurwitz_zeta, ln_gamma};
use foxwright::{FoxWrightParams, ParamPair};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn unit_params(p: usize, q: usize) -> impl Strategy<Value = FoxWrightParams> {
    (prop::collection::vec(0.5f64..5.0, p), prop::collection::vec(0.5f64..5.0, q))
        .prop_map(|(a, b)| FoxWrightParams::unit(&a, &b).unwrap())
}

fn sorted_unit_params(max_p: usize) -> impl Strategy<Value = FoxWrightParams> {
    (1..=max_p).prop_flat_map(|p| {
        (prop::collection::vec(0.5f64..5.0, p), prop::collection::vec(0.5f64..5.0, p)).prop_map(|(mut a, mut b)| {
            a.sort_by(f64::total_cmp);
            b.sort_by(f64::total_cmp);
            FoxWrightParams::unit(&a, &b).unwrap()
        })
    })
}

/// p = q, weights drawn from {1/2, 1, 3/2, 2}, the lower weights a rotation
/// of the upper ones (so the set is balanced).
fn balanced_weighted(max_p: usize) -> impl Strategy<Value = FoxWrightParams> {
    (1..=max_p).prop_flat_map(|p| {
        (
            prop::collection::vec(0.5f64..4.0, p),
            prop::collection::vec(0.5f64..4.0, p),
            prop::collection::vec(1u8..=4, p),
            0..p,
        )
            .prop_map(|(a, b, w, rot)| {
                let weights: Vec<f64> = w.iter().map(|&k| f64::from(k) / 2.0).collect();
                let mut lw = weights.clone();
                lw.rotate_left(rot);
                let upper = a.iter().zip(&weights).map(|(&s, &w)| ParamPair::new(s, w)).collect();
                let lower = b.iter().zip(&lw).map(|(&s, &w)| ParamPair::new(s, w)).collect();
                FoxWrightParams::new(upper, lower).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn gamma_recurrence(x in 0.1f64..100.0) {
        let lhs = ln_gamma(x + 1.0).unwrap().exp();
        let rhs = x * ln_gamma(x).unwrap().exp();
        prop_assert!(rel(lhs, rhs) <= 1e-12, "x={x}: {lhs} vs {rhs}");
    }

    #[test]
    fn digamma_recurrence(x in 0.1f64..100.0) {
        let d = digamma(x + 1.0).unwrap() - digamma(x).unwrap();
        prop_assert!((d - 1.0 / x).abs() <= 1e-11);
    }

    #[test]
    fn hurwitz_decreasing_in_a(s in 1.1f64..8.0, a in 0.05f64..20.0, da in 0.01f64..5.0) {
        prop_assert!(hurwitz_zeta(s, a + da).unwrap() < hurwitz_zeta(s, a).unwrap());
    }

    #[test]
    fn value_at_zero_is_first_moment(params in (1usize..4, 0usize..4).prop_flat_map(|(p, q)| unit_params(p, q))) {
        let v = eval_series(&params, 0.0, 1e-12).unwrap();
        prop_assert_eq!(v, psi_moment(&params, 0, 0));
    }

    #[test]
    fn recurrence_matches_direct_terms(
        params in (1usize..4, 0usize..4).prop_flat_map(|(p, q)| unit_params(p, q)),
        w in 0.25f64..2.0,
    ) {
        let params = params.with_weight(w).unwrap();
        for (k, ln_c) in params.ln_coefficients().take(50).enumerate() {
            let direct = params.ln_coefficient_direct(k);
            // compare the terms, not their logarithms
            prop_assert!((ln_c - direct).abs() <= 1e-11 * direct.abs().max(1.0), "k={k}: {ln_c} vs {direct}");
        }
    }

    #[test]
    fn pfq_is_gamma_scaled_series(
        params in (1usize..4).prop_flat_map(|p| prop_oneof![unit_params(p, p), unit_params(p + 1, p)]),
        frac in 0.0f64..0.9,
    ) {
        let (a, b) = (params.upper_shifts(), params.lower_shifts());
        let z = frac * params.convergence().nabla;
        let prefactor: f64 = b.iter().map(|&x| ln_gamma(x).unwrap()).sum::<f64>()
            - a.iter().map(|&x| ln_gamma(x).unwrap()).sum::<f64>();
        let via_series = prefactor.exp() * eval_series(&params, z, 1e-15).unwrap();
        let pfq = eval_pfq(&a, &b, z, 1e-15).unwrap();
        prop_assert!(rel(pfq, via_series) <= 1e-12, "{pfq} vs {via_series}");
    }

    #[test]
    fn json_round_trip(params in balanced_weighted(3)) {
        prop_assert_eq!(FoxWrightParams::from_json(&params.to_json()).unwrap(), params);
    }

    #[test]
    fn h1_reports_are_monotone_in_order(params in sorted_unit_params(3), n in 1u32..16) {
        if check_h1(&params, n).unwrap().satisfied {
            for m in 0..n {
                prop_assert!(check_h1(&params, m).unwrap().satisfied);
            }
        }
    }

    #[test]
    fn envelope_ordered_and_collapses_at_origin(params in balanced_weighted(3), z in 1e-3f64..20.0) {
        let Ok(lb) = luke_bounds(&params, z, Checking::Checked) else { return Ok(()) };
        prop_assert!(lb.lower <= lb.upper);
        let at0 = luke_bounds(&params, 0.0, Checking::Checked).unwrap();
        let psi00 = psi_moment(&params, 0, 0);
        prop_assert!(rel(at0.lower, psi00) <= 1e-14 && rel(at0.upper, psi00) <= 1e-14);
        prop_assert!(rel(at0.value.unwrap(), psi00) <= 1e-14);
    }

    #[test]
    fn rounding_is_idempotent(x in prop::num::f64::NORMAL) {
        let r = round_sig(x);
        prop_assert_eq!(round_sig(r), r);
        prop_assert_eq!(fmt_real(x).parse::<f64>().unwrap(), r);
    }

    #[test]
    fn mathieu_decreasing_in_r(
        beta in 0.5f64..2.0,
        s in 1.2f64..6.0,
        r0 in 0.0f64..5.0,
        dr in 0.05f64..3.0,
    ) {
        let spec = MathieuSpec::new(1.0, beta, s + beta, 1.0, r0).unwrap();
        let a = mathieu_sum(&spec, 1e-12).unwrap();
        let b = mathieu_sum(&spec.with_r(r0 + dr).unwrap(), 1e-12).unwrap();
        prop_assert!(b < a, "S({r0}) = {a}, S({}) = {b}", r0 + dr);
    }
}

proptest! {
    // each case builds and integrates an H-density
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn density_nonnegative_under_h2_with_real_inversion(params in sorted_unit_params(3)) {
        prop_assume!(check_h2_params(&params).unwrap().report.satisfied);
        prop_assume!(params.convergence().mu > 0.0);
        let density = HDensity::from_params(params.clone()).unwrap();
        let rho = density.rho();
        for i in 1..=200 {
            let t = rho * i as f64 / 201.0;
            let v = density.at(t).unwrap();
            prop_assert!(v.value >= -1e-8, "t={t}: {}", v.value);
            // the imaginary part is pure discretization error; near t = 0 it
            // sits at the truncation level rather than below 1e-9·|Re|
            let allowed = 1e-9 * v.value.abs() + v.truncation_error + v.roundoff_error;
            prop_assert!(v.imag.abs() <= allowed, "t={t}: im {} vs {allowed}", v.imag);
        }
        for t in [rho, 1.5 * rho, 10.0 * rho] {
            prop_assert_eq!(density.value(t).unwrap(), 0.0);
        }
        let mass = density.moment(0).unwrap().value;
        prop_assert!(rel(mass, psi_moment(&params, 0, 0)) <= 1e-6);
    }
}

#[test]
fn hurwitz_recurrence_grid() {
    for s in [1.5, 2.0, 3.0, 5.0] {
        for a in [0.5, 1.0, 2.5] {
            let d = hurwitz_zeta(s, a).unwrap() - hurwitz_zeta(s, a + 1.0).unwrap();
            let want = a.powf(-s);
            assert!(rel(d, want) <= 1e-10, "s={s}, a={a}: {d} vs {want}");
        }
    }
}

#[test]
fn derivatives_are_shifted_series() {
    let params = FoxWrightParams::unit(&[1.0], &[2.0]).unwrap();
    let f = |z: f64| eval_series(&params, -z, 1e-15);
    for z in [0.5, 1.0, 2.0] {
        for n in 1..=3u32 {
            let d = foxwright::conditions::derivative(&f, z, n as usize, 1e-2 * n as f64).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let want = sign * eval_series(&shift_params(&params, n), -z, 1e-15).unwrap();
            assert!(rel(d, want) <= 1e-6, "n={n}, z={z}: {d} vs {want}");
        }
    }
}

#[test]
fn envelope_tight_at_origin() {
    let params = FoxWrightParams::unit(&[1.0, 2.0], &[2.5, 3.0]).unwrap();
    let ratios: Vec<f64> = [1e-2, 1e-3, 1e-4]
        .iter()
        .map(|&z| {
            let e = luke_bounds(&params, z, Checking::Checked).unwrap();
            (e.upper - e.lower) / (z * z)
        })
        .collect();
    // bounded, and settling to a constant
    assert!(ratios.iter().all(|r| r.is_finite() && *r >= 0.0 && *r < 1.0), "{ratios:?}");
    assert!((ratios[1] - ratios[2]).abs() < 0.05 * ratios[1], "{ratios:?}");
}

#[test]
fn equal_weight_form_is_the_same_path() {
    for w in [0.5, 1.0, 2.0] {
        let params = FoxWrightParams::unit(&[1.0, 1.5], &[2.0, 3.0]).unwrap().with_weight(w).unwrap();
        for z in [0.1, 1.0, 7.0] {
            let a = luke_bounds(&params, z, Checking::Checked).unwrap();
            let b = luke_bounds_equal_weights(&params, z, Checking::Checked).unwrap();
            assert_eq!((a.lower, a.upper), (b.lower, b.upper));
        }
    }
}

#[test]
fn pfq_form_agrees_with_lambda_form() {
    // a single pair (α)/(β): 2F1(σ, α; β; −z) bounds vs the λ-envelope with λ = σ
    for (alpha, beta) in [(1.0, 2.0), (1.5, 2.5), (2.0, 2.0)] {
        let luke = LukeBounds::new(FoxWrightParams::unit(&[alpha], &[beta]).unwrap(), Checking::Unchecked).unwrap();
        let scale = (ln_gamma(beta).unwrap() - ln_gamma(alpha).unwrap()).exp();
        for sigma in [0.5, 1.0, 2.0] {
            for z in [0.1, 0.5, 0.9] {
                let p = pfq_luke(&[alpha], &[beta], sigma, z, Checking::Unchecked).unwrap();
                let l = luke.lambda_envelope(sigma, z, false).unwrap();
                let g = foxwright::special::gamma(sigma).unwrap();
                assert!(rel(p.lower, l.lower * scale / g) <= 1e-12, "lower {sigma} {z}");
                assert!(rel(p.upper, l.upper * scale / g) <= 1e-12, "upper {sigma} {z}");
            }
        }
    }
}
