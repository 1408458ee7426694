use num_complex::Complex64;

use super::PentaPoint;
use crate::complexalg::{operator_norm, solve_quadratic, Matrix2};
use crate::error::{GeomError, Result};
use crate::optimize::{nelder_mead, NelderMeadOptions};

/// `π(z) = (z₁₂, tr z, det z)`.
pub fn pi_map(z: &Matrix2) -> PentaPoint {
    PentaPoint::new(z.z12, z.trace(), z.det())
}

/// Preimage of `x` in the fiber parametrized by `z₁₁ = t`:
/// `[[t, a], [(t(s − t) − p)/a, s − t]]`. Requires `a ≠ 0`.
fn fiber_matrix(x: &PentaPoint, t: Complex64) -> Matrix2 {
    let z22 = x.s - t;
    Matrix2::new(t, x.a, (t * z22 - x.p) / x.a, z22)
}

/// Minimizes the operator norm over `π⁻¹(x)` (with `a ≠ 0`) by Nelder–Mead in `t = z₁₁`,
/// started from `s/2` and from both roots. Returns the best matrix found.
pub fn minimize_fiber_norm(x: &PentaPoint, target: f64) -> (Matrix2, f64) {
    let roots = solve_quadratic(x.s, x.p);
    let starts = [x.s / 2.0, roots.lambda1, roots.lambda2];
    let opts = NelderMeadOptions {
        step: 0.05 + 0.1 * x.a.norm(),
        f_tol: 1e-16,
        x_tol: 1e-14,
        max_iter: 6000,
    };
    let objective = |v: [f64; 2]| {
        let z = fiber_matrix(x, Complex64::new(v[0], v[1]));
        if z.is_finite() {
            operator_norm(&z)
        } else {
            f64::INFINITY
        }
    };
    let mut best: Option<(Matrix2, f64)> = None;
    for start in starts {
        let (t, norm) = nelder_mead(objective, [start.re, start.im], &opts);
        if best.map_or(true, |(_, b)| norm < b) {
            best = Some((fiber_matrix(x, Complex64::new(t[0], t[1])), norm));
        }
        if norm < target {
            break;
        }
    }
    best.expect("at least one start")
}

/// A strict contraction `z` with `π(z) = x`.
///
/// For `a = 0` the diagonal of roots is returned. Otherwise the free entry
/// `z₁₁` of the fiber is searched; the lift is accepted once its norm is
/// below `1 − tol/2`.
pub fn lift_to_ball(x: &PentaPoint, tol: f64) -> Result<Matrix2> {
    let target = 1.0 - tol / 2.0;
    if x.a == Complex64::new(0.0, 0.0) {
        let r = solve_quadratic(x.s, x.p);
        let z = Matrix2::diag(r.lambda1, r.lambda2);
        let norm = r.max_modulus();
        return if norm < target {
            Ok(z)
        } else {
            Err(GeomError::LiftFailure {
                best_norm: norm,
                target,
            })
        };
    }
    let (z, norm) = minimize_fiber_norm(x, target);
    if norm < target {
        Ok(z)
    } else {
        Err(GeomError::LiftFailure {
            best_norm: norm,
            target,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pi_examples() {
        let (l1, l2) = (c(0.3, 0.1), c(-0.2, 0.5));
        assert_eq!(pi_map(&Matrix2::diag(l1, l2)), PentaPoint::new(c(0.0, 0.0), l1 + l2, l1 * l2));
        let a = c(0.4, -0.3);
        let z = Matrix2::new(c(0.0, 0.0), a, c(0.0, 0.0), c(0.0, 0.0));
        assert_eq!(pi_map(&z), PentaPoint::new(a, c(0.0, 0.0), c(0.0, 0.0)));
    }

    #[test]
    fn diagonal_lifts() {
        assert_eq!(lift_to_ball(&PentaPoint::ORIGIN, 1e-9).unwrap(), Matrix2::zero());
        let x = PentaPoint::new(c(0.0, 0.0), c(0.5, 0.2), c(0.06, 0.01));
        let z = lift_to_ball(&x, 1e-9).unwrap();
        let r = solve_quadratic(x.s, x.p);
        assert!((operator_norm(&z) - r.max_modulus()).abs() < 1e-15);
    }

    #[test]
    fn lift_round_trips() {
        let x = PentaPoint::new(c(0.3, 0.2), c(0.4, -0.1), c(0.05, 0.02));
        let z = lift_to_ball(&x, 1e-9).unwrap();
        assert!(operator_norm(&z) < 1.0);
        assert!(pi_map(&z).dist(&x) < 1e-12);
    }

    #[test]
    fn exterior_point_fails_to_lift() {
        let x = PentaPoint::new(c(1.2, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        assert!(matches!(lift_to_ball(&x, 1e-9), Err(GeomError::LiftFailure { .. })));
    }
}
