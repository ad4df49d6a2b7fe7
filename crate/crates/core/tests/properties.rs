//! Invariants checked on random inputs.

use std::f64::consts::PI;

use proptest::prelude::*;

use nanowire::demag::{compute_demag_matrix, diagonalize};
use nanowire::field3d::{exchange_energy, magnetostatic_energy, scale_field, wire, Field3D};
use nanowire::geometry::CrossSection;
use nanowire::lemmas::{green_rectangle_exact, green_rectangle_integral, wall_lower_bound_check, LemmaSet};
use nanowire::profile::{fixed_minimizer, reduced_energy, transverse_profile, ReducedEnergyParams};
use nanowire::vortex::{regularized_m, tilde_m, VortexParams};

fn unit(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn diagonalization_preserves_trace_and_determinant(a in -3.0..3.0f64, b in -3.0..3.0f64, c in -3.0..3.0f64) {
        let (l2, l3, theta) = diagonalize(a, b, c);
        prop_assert!(l2 <= l3);
        prop_assert!((l2 + l3 - (a + c)).abs() < 1e-12);
        prop_assert!((l2 * l3 - (a * c - b * b)).abs() < 1e-10);
        // the alpha2 eigenvector is (cos, sin) of minus the rotation angle
        let (s, co) = (-theta).sin_cos();
        let r = [a * co + b * s, b * co + c * s];
        prop_assert!((r[0] - l2 * co).abs() < 1e-10 && (r[1] - l2 * s).abs() < 1e-10);
    }

    #[test]
    fn demag_eigenvalues_are_rotation_invariant(a in 0.5..2.0f64, ratio in 0.3..1.0f64, angle in 0.0..PI) {
        let cs = CrossSection::ellipse(a, a * ratio).unwrap();
        let d0 = compute_demag_matrix(&cs, 256).unwrap();
        let d1 = compute_demag_matrix(&cs.rotated(angle).unwrap(), 256).unwrap();
        prop_assert!((d0.alpha2 - d1.alpha2).abs() < 1e-9 * d0.alpha3);
        prop_assert!((d0.alpha3 - d1.alpha3).abs() < 1e-9 * d0.alpha3);
        prop_assert!((d0.alpha2 + d0.alpha3 - cs.area()).abs() < 1e-3 * cs.area());
    }

    #[test]
    fn closed_form_energy_and_half_turn(alpha2 in 0.2..3.0f64, extra in 0.0..2.0f64, area in 0.3..4.0f64) {
        let params = ReducedEnergyParams::new(area, alpha2, alpha2 + extra).unwrap();
        let p = fixed_minimizer(&params, params.default_window(), 4096).unwrap();
        let e = reduced_energy(&p, &params).unwrap();
        prop_assert!((e - params.minimal_energy()).abs() < 1e-3 * params.minimal_energy());
        let turned = reduced_energy(&p.rotated(PI), &params).unwrap();
        prop_assert!((turned - e).abs() <= 1e-12 * e);
    }

    #[test]
    fn transverse_profiles_are_unit(alpha in 0.1..4.0f64, beta in 0.05..1.0f64, theta in 0.0..2.0 * PI, x in -30.0..30.0f64) {
        prop_assert!((unit(transverse_profile(alpha, beta, theta, x)) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn scaling_identities(t in 0.3..3.0f64, k in 0.5..3.0f64, phase in 0.0..PI) {
        let cs = CrossSection::rectangle(1.0, 0.5).unwrap();
        let domain = wire(&cs, 0.7, (-2.0, 2.0), [8, 6, 3]).unwrap();
        let f = Field3D::from_fn(domain, |p| [(k * p[0]).tanh(), (p[1] + phase).cos(), 0.5]).unwrap();
        let s = scale_field(&f, t).unwrap();
        let (ex, ms) = (exchange_energy(&f), magnetostatic_energy(&f).unwrap());
        prop_assert!((exchange_energy(&s) - t * ex).abs() < 1e-10 * t * ex);
        prop_assert!((magnetostatic_energy(&s).unwrap() - t.powi(3) * ms).abs() < 1e-8 * t.powi(3) * ms);
    }

    #[test]
    fn rectangle_integral_bound(s in 0.01..3.0f64, aspect in 1.0..50.0f64, y in -3.0..3.0f64, z in -2.0..2.0f64) {
        let r = s * aspect;
        let c = green_rectangle_integral(s, r, y * s, z * r).unwrap();
        let exact = green_rectangle_exact(s, r, y * s, z * r);
        prop_assert!((c.measured - exact).abs() < 1e-9 * exact);
        prop_assert!(c.pass, "{:?}", c);
        prop_assert!(c.measured <= 10.0 * s * (1.0 + aspect.ln()));
    }

    #[test]
    fn wall_bound_holds(alpha in 0.2..5.0f64, a1 in -1.0..1.0f64, a2 in -2.0..2.0f64, len in 0.5..20.0f64) {
        let n = 1001;
        let values: Vec<[f64; 3]> = (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                let phi = -1.2 + 2.4 * t + a1 * (PI * t).sin();
                let theta = a2 * (2.0 * PI * t).sin();
                [phi.sin(), phi.cos() * theta.cos(), phi.cos() * theta.sin()]
            })
            .collect();
        let c = wall_lower_bound_check(0.0, len / (n - 1) as f64, &values, alpha, 1.3).unwrap();
        prop_assert!(c.pass, "{:?}", c);
    }

    #[test]
    fn vortex_fields_are_unit_and_quarter_turn_equivariant(
        d in 2.0..20.0f64,
        x in -1.0..1.0f64,
        y in -1.0..1.0f64,
        z in -1.0..1.0f64,
    ) {
        let v = VortexParams::new(d).unwrap();
        let p = [x * v.l, y * d, z * d];
        prop_assume!(p[1].abs() + p[2].abs() > 1e-9);
        let m = regularized_m(p, &v).unwrap();
        let t = tilde_m(p, &v).unwrap();
        prop_assert!((unit(m) - 1.0).abs() < 1e-12 && (unit(t) - 1.0).abs() < 1e-12);
        // (y, z) -> (z, -y) on points and vectors alike
        let q = [p[0], p[2], -p[1]];
        let mq = regularized_m(q, &v).unwrap();
        prop_assert!((mq[0] - m[0]).abs() < 1e-12 && (mq[1] - m[2]).abs() < 1e-12 && (mq[2] + m[1]).abs() < 1e-12);
    }
}

#[test]
fn lemma_set_names_round_trip() {
    for set in LemmaSet::ALL {
        assert_eq!(LemmaSet::parse_list(&set.to_string()).unwrap(), vec![set]);
    }
}
