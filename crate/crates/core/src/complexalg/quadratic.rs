use std::cmp::Ordering;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Roots of `λ² − sλ + p`, ordered by decreasing modulus, ties by argument in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub lambda1: Complex64,
    pub lambda2: Complex64,
}

impl EigenPair {
    pub fn sum(&self) -> Complex64 {
        self.lambda1 + self.lambda2
    }

    pub fn product(&self) -> Complex64 {
        self.lambda1 * self.lambda2
    }

    pub fn swapped(&self) -> Self {
        Self {
            lambda1: self.lambda2,
            lambda2: self.lambda1,
        }
    }

    pub fn max_modulus(&self) -> f64 {
        self.lambda1.norm().max(self.lambda2.norm())
    }
}

fn arg_2pi(z: Complex64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

fn root_order(x: &Complex64, y: &Complex64) -> Ordering {
    let (mx, my) = (x.norm(), y.norm());
    let scale = mx.max(my);
    if (mx - my).abs() > 4.0 * f64::EPSILON * scale {
        // larger modulus first
        return my.partial_cmp(&mx).unwrap_or(Ordering::Equal);
    }
    arg_2pi(*x)
        .partial_cmp(&arg_2pi(*y))
        .unwrap_or(Ordering::Equal)
}

/// Solves `λ² − sλ + p = 0`.
///
/// The root of larger modulus is taken from the sign of the square root that
/// avoids cancellation against `s`; the co-root is `p / λ₁`.
pub fn solve_quadratic(s: Complex64, p: Complex64) -> EigenPair {
    let sq = (s * s - 4.0 * p).sqrt();
    let big = if (s.conj() * sq).re >= 0.0 {
        (s + sq) / 2.0
    } else {
        (s - sq) / 2.0
    };
    let other = if big.norm() > 0.0 {
        p / big
    } else {
        Complex64::new(0.0, 0.0)
    };
    let (lambda1, lambda2) = if root_order(&big, &other) == Ordering::Greater {
        (other, big)
    } else {
        (big, other)
    };
    EigenPair { lambda1, lambda2 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_and_double_root() {
        let e = solve_quadratic(c(0.0, 0.0), c(0.0, 0.0));
        assert_eq!(e.lambda1, c(0.0, 0.0));
        assert_eq!(e.lambda2, c(0.0, 0.0));
        let e = solve_quadratic(c(1.0, 0.0), c(0.25, 0.0));
        assert!((e.lambda1 - c(0.5, 0.0)).norm() < 1e-15);
        assert!((e.lambda2 - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn expanded_product() {
        // (λ − 0.7)(λ + 0.2) = λ² − 0.5λ − 0.14
        let e = solve_quadratic(c(0.5, 0.0), c(-0.14, 0.0));
        assert!((e.lambda1 - c(0.7, 0.0)).norm() < 1e-15);
        assert!((e.lambda2 - c(-0.2, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn equal_modulus_ties_break_by_argument() {
        // roots ±i: arguments π/2 and 3π/2
        let e = solve_quadratic(c(0.0, 0.0), c(1.0, 0.0));
        assert!((e.lambda1 - c(0.0, 1.0)).norm() < 1e-15);
        assert!((e.lambda2 - c(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn near_double_root_keeps_digits() {
        let lam = c(0.3, 0.4);
        let eps = c(1e-9, 0.0);
        let (r1, r2) = (lam + eps, lam - eps);
        let e = solve_quadratic(r1 + r2, r1 * r2);
        assert!((e.sum() - (r1 + r2)).norm() < 1e-15);
        assert!((e.product() - r1 * r2).norm() < 1e-15);
    }
}
