use num_complex::Complex64;
use penta_geom::convexity::{
    cconvexity_check, complex_tangent_basis, foliation_disc_part1, levi_form, linconvex_witness, witness_verify, AffinePullback,
    HyperplaneWitness, PhiField,
};
use penta_geom::domains::{boundary_classify, phi, BoundaryClass, PentaPoint, SymmetrisedPoint, DEFAULT_TOL};
use penta_geom::GeomError;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn disc(r: f64) -> impl Strategy<Value = Complex64> {
    (0.0..r, 0.0..std::f64::consts::TAU).prop_map(|(m, t)| Complex64::from_polar(m, t))
}

fn direction() -> impl Strategy<Value = [Complex64; 2]> {
    (disc(1.0), disc(1.0)).prop_filter("nonzero", |(a, b)| a.norm() + b.norm() > 0.1).prop_map(|(a, b)| [a, b])
}

#[test]
fn witness_for_a_pure_a_point() {
    let x = PentaPoint::new(c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
    let w = linconvex_witness(&x, DEFAULT_TOL).unwrap();
    match w {
        HyperplaneWitness::PsiLevelSet { z, omega } => {
            assert!(z.norm() < 1e-6);
            assert!((omega - c(2.0, 0.0)).norm() < 1e-6);
        }
        other => panic!("unexpected witness {other:?}"),
    }
    assert!(w.residual(&x) < 1e-8);
    let v = witness_verify(&w, 2000, 7).unwrap();
    assert!(v.min_residual > 1e-8);
}

#[test]
fn witness_over_the_boundary_and_outside_g2() {
    for x in [
        PentaPoint::new(c(0.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)),
        PentaPoint::new(c(0.0, 0.0), c(3.0, 0.0), c(0.0, 0.0)),
        PentaPoint::new(c(0.3, 0.1), c(0.0, 2.2), c(-1.0, 0.0)),
    ] {
        let w = linconvex_witness(&x, DEFAULT_TOL).unwrap();
        assert!(w.residual(&x) < 1e-8, "{x:?}: {w:?}");
        witness_verify(&w, 2000, 11).unwrap();
    }
}

#[test]
fn interior_points_have_no_witness() {
    let x = PentaPoint::new(c(0.1, 0.0), c(0.2, 0.0), c(0.0, 0.1));
    assert!(linconvex_witness(&x, DEFAULT_TOL).is_err());
}

#[test]
fn a_witness_through_p_is_rejected() {
    let w = HyperplaneWitness::PsiLevelSet { z: c(0.0, 0.0), omega: c(0.5, 0.0) };
    match witness_verify(&w, 5000, 3) {
        Err(GeomError::WitnessViolation { .. }) => {}
        other => panic!("expected a violation, got {other:?}"),
    }
}

#[test]
fn foliation_discs_stay_on_the_boundary() {
    let s = c(0.3, -0.2);
    let p = c(0.1, 0.15);
    let r = (-phi(s, p).unwrap() / 2.0).exp();
    let x = PentaPoint::new(Complex64::from_polar(r, 0.7), s, p);
    assert_eq!(boundary_classify(&x, DEFAULT_TOL), BoundaryClass::Part1);
    let d = foliation_disc_part1(&x).unwrap();
    assert!(d.eval(d.center).dist(&x) < 1e-10);
    for k in 0..16 {
        let t = Complex64::from_polar(0.9, k as f64 * 0.4);
        let y = d.eval(t);
        let defect = (y.a.norm_sqr() - (-phi(y.s, y.p).unwrap()).exp()).abs();
        assert!(defect < 1e-8, "t = {t}: {defect:e}");
    }
    // the disc direction is Levi-flat, the transverse tangent is not
    let along = [d.coeffs[1][0], d.coeffs[1][1], d.coeffs[1][2]];
    assert!(levi_form(&x, &along, 1e-4).unwrap().value.abs() < 1e-5);
    let basis = complex_tangent_basis(&x).unwrap();
    let worst = basis
        .iter()
        .map(|v| levi_form(&x, v, 1e-4).unwrap().value.abs())
        .fold(0.0, f64::max);
    assert!(worst > 1e-4, "{worst:e}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // The unsquared inequality is homogeneous of degree 2 under t ↦ ct, so
    // its margin for u∘T along d equals |Md|² times the margin for u along
    // Md/|Md| at T(x).
    #[test]
    fn standard_margin_is_affine_covariant(
        l1 in disc(0.6),
        l2 in disc(0.6),
        d in direction(),
        m in (disc(0.2), disc(0.2), disc(0.2), disc(0.2)),
        shift in (disc(0.05), disc(0.05)),
    ) {
        let matrix = [[c(1.0, 0.0) + m.0, m.1], [m.2, c(1.0, 0.0) + m.3]];
        let t = AffinePullback { inner: &PhiField, matrix, shift: [shift.0, shift.1] };
        let q = SymmetrisedPoint::from_roots(l1, l2);
        let (ts, tp) = t.map(q.s, q.p);
        prop_assume!(phi(ts, tp).is_ok());
        let n = (d[0].norm_sqr() + d[1].norm_sqr()).sqrt();
        let d = [d[0] / n, d[1] / n];
        let md = [matrix[0][0] * d[0] + matrix[0][1] * d[1], matrix[1][0] * d[0] + matrix[1][1] * d[1]];
        let scale = md[0].norm_sqr() + md[1].norm_sqr();

        let zero = c(0.0, 0.0);
        let pulled = cconvexity_check(&t, &q, d, zero, 1e-3).unwrap();
        let direct = cconvexity_check(&PhiField, &SymmetrisedPoint::new(ts, tp), md, zero, 1e-3).unwrap();
        let expect = scale * direct.margin_standard;
        prop_assert!(
            (pulled.margin_standard - expect).abs() < 1e-5 * (1.0 + expect.abs()),
            "{} vs {}", pulled.margin_standard, expect
        );
        prop_assert_eq!(pulled.margin_standard >= 0.0, direct.margin_standard >= 0.0);
    }
}
