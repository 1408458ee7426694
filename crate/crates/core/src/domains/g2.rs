use num_complex::Complex64;

use super::{SymmetrisedPoint, Verdict, DEFAULT_TOL};
use crate::complexalg::EigenPair;
use crate::error::{GeomError, Result};

const BETA_EPS: f64 = 1e-14;

/// `|s − s̄p| + |p|²`; below 1 exactly on `G₂`.
pub fn g2_value(q: &SymmetrisedPoint) -> f64 {
    (q.s - q.s.conj() * q.p).norm() + q.p.norm_sqr()
}

/// Membership in `G₂` with a band of width `tol` around the boundary.
///
/// The closed set is `{|s − s̄p| + |p|² ≤ 1, |s| ≤ 2}`: the first inequality
/// alone admits exterior points with `|p| = 1` such as `(3, 1)`.
pub fn g2_contains(q: &SymmetrisedPoint, tol: f64) -> Verdict {
    let v = g2_value(q);
    if v < 1.0 - tol {
        Verdict::Inside
    } else if v <= 1.0 + tol && q.s.norm() <= 2.0 + tol {
        Verdict::BoundaryBand
    } else {
        Verdict::Outside
    }
}

pub fn in_g2_closure(q: &SymmetrisedPoint, tol: f64) -> bool {
    g2_contains(q, tol) != Verdict::Outside
}

/// `β = (s − s̄p)/(1 − |p|²)`.
pub fn compute_beta(s: Complex64, p: Complex64) -> Result<Complex64> {
    let den = 1.0 - p.norm_sqr();
    if den.abs() < BETA_EPS {
        return Err(GeomError::DegenerateDenominator {
            context: "compute_beta",
            value: den.abs(),
        });
    }
    Ok((s - s.conj() * p) / den)
}

/// Hartogs radius `|1 − ½sβ̄/(1 + √(1 − |β|²))|` over `(s, p)`.
///
/// `1 − |β|²` is clamped at 0 so the value extends continuously to the part
/// of `∂G₂` with `|p| < 1`.
pub fn bound2(s: Complex64, p: Complex64) -> Result<f64> {
    let beta = compute_beta(s, p)?;
    let root = (1.0 - beta.norm_sqr()).max(0.0).sqrt();
    Ok((Complex64::new(1.0, 0.0) - 0.5 * s * beta.conj() / (1.0 + root)).norm())
}

/// `½|1 − λ̄₂λ₁| + ½(1 − |λ₁|²)^½(1 − |λ₂|²)^½`, with negative radicands clamped.
pub fn bound3(roots: &EigenPair) -> f64 {
    let (l1, l2) = (roots.lambda1, roots.lambda2);
    let r1 = (1.0 - l1.norm_sqr()).max(0.0).sqrt();
    let r2 = (1.0 - l2.norm_sqr()).max(0.0).sqrt();
    0.5 * (Complex64::new(1.0, 0.0) - l2.conj() * l1).norm() + 0.5 * r1 * r2
}

/// `φ(s, p) = −2 log(bound2(s, p))`, so that `P = {|a|² < e^{−φ(s,p)}}`.
pub fn phi(s: Complex64, p: Complex64) -> Result<f64> {
    let q = SymmetrisedPoint::new(s, p);
    if g2_contains(&q, DEFAULT_TOL) == Verdict::Outside {
        return Err(GeomError::Domain {
            context: "phi",
            detail: format!("(s, p) = ({s}, {p}) is not in G2 (value {})", g2_value(&q)),
        });
    }
    let b = bound2(s, p)?;
    if !(b > 0.0) {
        return Err(GeomError::Domain {
            context: "phi",
            detail: format!("log argument vanishes at ({s}, {p})"),
        });
    }
    Ok(-2.0 * b.ln())
}

/// Both roots on the unit circle within `tol` (Shilov boundary of `G₂`).
pub fn is_shilov(roots: &EigenPair, tol: f64) -> bool {
    (roots.lambda1.norm() - 1.0).abs() <= tol && (roots.lambda2.norm() - 1.0).abs() <= tol
}

/// Point `(2λ, λ²)` of the royal variety.
pub fn royal_point(lam: Complex64) -> SymmetrisedPoint {
    SymmetrisedPoint::new(2.0 * lam, lam * lam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexalg::solve_quadratic;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn q(s: Complex64, p: Complex64) -> SymmetrisedPoint {
        SymmetrisedPoint::new(s, p)
    }

    #[test]
    fn g2_examples() {
        assert_eq!(g2_contains(&q(c(0.0, 0.0), c(0.0, 0.0)), 1e-9), Verdict::Inside);
        assert_eq!(g2_contains(&q(c(2.0, 0.0), c(1.0, 0.0)), 1e-9), Verdict::BoundaryBand);
        let half = q(c(0.5, 0.0), c(0.0, 0.0));
        assert_eq!(g2_contains(&half, 1e-9), Verdict::Inside);
        assert!((g2_value(&half) - 0.5).abs() < 1e-16);
    }

    #[test]
    fn unit_p_exterior_is_outside() {
        // roots 2.618…, 0.381… although |s − s̄p| + |p|² = 1
        let x = q(c(3.0, 0.0), c(1.0, 0.0));
        assert!((g2_value(&x) - 1.0).abs() < 1e-15);
        assert_eq!(g2_contains(&x, 1e-9), Verdict::Outside);
    }

    #[test]
    fn beta_examples() {
        assert_eq!(compute_beta(c(0.0, 0.0), c(0.3, 0.2)).unwrap(), c(0.0, 0.0));
        assert_eq!(compute_beta(c(0.7, 0.0), c(0.0, 0.0)).unwrap(), c(0.7, 0.0));
        let b = compute_beta(c(1.0, 0.0), c(0.0, 0.5)).unwrap();
        assert!((b - c(1.0, -0.5) / 0.75).norm() < 1e-15);
        assert!(matches!(
            compute_beta(c(0.5, 0.0), c(0.0, 1.0)),
            Err(GeomError::DegenerateDenominator { .. })
        ));
    }

    #[test]
    fn phi_vanishes_on_s_zero() {
        assert_eq!(phi(c(0.0, 0.0), c(0.0, 0.0)).unwrap(), 0.0);
        assert_eq!(phi(c(0.0, 0.0), c(-0.3, 0.6)).unwrap(), 0.0);
        assert!(matches!(phi(c(3.0, 0.0), c(0.0, 0.0)), Err(GeomError::Domain { .. })));
    }

    #[test]
    fn bound3_one_unimodular_root() {
        let r = solve_quadratic(c(1.0, 0.0), c(0.0, 0.0));
        assert!((bound3(&r) - 0.5).abs() < 1e-15);
        assert!((bound3(&r.swapped()) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn royal_points() {
        assert_eq!(royal_point(c(0.0, 0.0)), q(c(0.0, 0.0), c(0.0, 0.0)));
        let corner = royal_point(c(1.0, 0.0));
        assert_eq!(corner, q(c(2.0, 0.0), c(1.0, 0.0)));
        assert!(is_shilov(&solve_quadratic(corner.s, corner.p), 1e-12));
        let half = royal_point(c(0.5, 0.0));
        assert_eq!(half, q(c(1.0, 0.0), c(0.25, 0.0)));
        let r = solve_quadratic(half.s, half.p);
        assert!((r.lambda1 - c(0.5, 0.0)).norm() < 1e-15 && (r.lambda2 - c(0.5, 0.0)).norm() < 1e-15);
    }
}
