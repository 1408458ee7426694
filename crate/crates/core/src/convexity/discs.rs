//! Analytic discs in `∂P` and in `G₂`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::levi::unimodular_root;
use crate::complexalg::{svd2, Matrix2};
use crate::domains::{boundary_classify, minimize_fiber_norm, BoundaryClass, PentaPoint, DEFAULT_TOL};
use crate::error::{GeomError, Result};

/// Lift norms further than this from 1 are not accepted as boundary lifts.
const BOUNDARY_LIFT_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscTag {
    Part1Foliation,
    Part2Foliation,
    RoyalEmbedding,
}

/// A polynomial disc `t ↦ Σ_k coeffs[k]·t^k` in `ℂ³`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticDisc {
    pub coeffs: Vec<[Complex64; 3]>,
    pub tag: DiscTag,
    /// Parameter at which the disc passes through the point it was built from.
    pub center: Complex64,
}

impl AnalyticDisc {
    pub fn eval(&self, t: Complex64) -> PentaPoint {
        // Horner
        let mut acc = [Complex64::new(0.0, 0.0); 3];
        for c in self.coeffs.iter().rev() {
            for j in 0..3 {
                acc[j] = acc[j] * t + c[j];
            }
        }
        PentaPoint::from_array(acc)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// The disc `t ↦ π(U·diag(1, t)·V)` through a point of `∂₁P`.
///
/// `x` is lifted to a norm-one matrix `z = U·diag(1, σ₂)·V` by minimizing the
/// operator norm over the fiber; the disc passes through (a rounding-level
/// neighbour of) `x` at `t = σ₂`.
pub fn foliation_disc_part1(x: &PentaPoint) -> Result<AnalyticDisc> {
    let class = boundary_classify(x, DEFAULT_TOL);
    if class != BoundaryClass::Part1 {
        return Err(GeomError::Classification {
            expected: "part1".into(),
            found: format!("{class:?}"),
        });
    }
    let (z, norm) = minimize_fiber_norm(x, 0.0);
    if (norm - 1.0).abs() > BOUNDARY_LIFT_TOL {
        return Err(GeomError::LiftFailure {
            best_norm: norm,
            target: 1.0,
        });
    }
    let svd = svd2(&z);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let a = svd.u * Matrix2::diag(one, zero) * svd.v;
    let b = svd.u * Matrix2::diag(zero, one) * svd.v;
    // det(A + tB) is linear in t because A and B have rank one
    let mixed = a.z11 * b.z22 + a.z22 * b.z11 - a.z12 * b.z21 - a.z21 * b.z12;
    Ok(AnalyticDisc {
        coeffs: vec![[a.z12, a.trace(), a.det()], [b.z12, b.trace(), mixed]],
        tag: DiscTag::Part1Foliation,
        center: Complex64::new(svd.sigma2, 0.0),
    })
}

/// The royal disc `λ ↦ (0, 2λ, λ²)`.
pub fn royal_disc() -> AnalyticDisc {
    let zero = Complex64::new(0.0, 0.0);
    AnalyticDisc {
        coeffs: vec![
            [zero; 3],
            [zero, Complex64::new(2.0, 0.0), zero],
            [zero, zero, Complex64::new(1.0, 0.0)],
        ],
        tag: DiscTag::RoyalEmbedding,
        center: zero,
    }
}

/// Local chart `(a, λ) ↦ (a, λ₁ + λ, λ₁λ)` of `∂₂P` around `(a₀, λ₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Part2Chart {
    /// The unimodular root, held fixed.
    pub lambda_u: Complex64,
    pub a0: Complex64,
    pub lambda0: Complex64,
}

impl Part2Chart {
    pub fn map(&self, a: Complex64, lambda: Complex64) -> PentaPoint {
        PentaPoint::new(a, self.lambda_u + lambda, self.lambda_u * lambda)
    }

    /// `t ↦ map(a₀, λ₀ + t)`.
    pub fn lambda_disc(&self) -> AnalyticDisc {
        let zero = Complex64::new(0.0, 0.0);
        let base = self.map(self.a0, self.lambda0);
        AnalyticDisc {
            coeffs: vec![base.to_array(), [zero, Complex64::new(1.0, 0.0), self.lambda_u]],
            tag: DiscTag::Part2Foliation,
            center: zero,
        }
    }

    /// `t ↦ map(a₀ + t, λ₀)`.
    pub fn a_disc(&self) -> AnalyticDisc {
        let zero = Complex64::new(0.0, 0.0);
        let base = self.map(self.a0, self.lambda0);
        AnalyticDisc {
            coeffs: vec![base.to_array(), [Complex64::new(1.0, 0.0), zero, zero]],
            tag: DiscTag::Part2Foliation,
            center: zero,
        }
    }

    /// Unit tangent vectors of the two flat directions.
    pub fn directions(&self) -> [[Complex64; 3]; 2] {
        let zero = Complex64::new(0.0, 0.0);
        let k = 1.0 / (1.0 + self.lambda_u.norm_sqr()).sqrt();
        [
            [Complex64::new(1.0, 0.0), zero, zero],
            [zero, Complex64::new(k, 0.0), self.lambda_u * k],
        ]
    }
}

/// The two-parameter flat family through a point of `∂₂P`.
pub fn foliation_disc_part2(x: &PentaPoint) -> Result<Part2Chart> {
    let lambda_u = unimodular_root(x.s, x.p);
    if (lambda_u.norm() - 1.0).abs() > DEFAULT_TOL.sqrt() {
        return Err(GeomError::Classification {
            expected: "a unimodular root".into(),
            found: format!("|λ| = {}", lambda_u.norm()),
        });
    }
    // the other root from the sum, so the chart reproduces x exactly in s
    let lambda0 = x.s - lambda_u;
    Ok(Part2Chart {
        lambda_u,
        a0: x.a,
        lambda0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::phi;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rank_one_lift_at_unit_a() {
        let x = PentaPoint::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let d = foliation_disc_part1(&x).unwrap();
        assert_eq!(d.tag, DiscTag::Part1Foliation);
        assert!(d.center.norm() < 1e-6);
        assert!(d.eval(c(0.0, 0.0)).dist(&x) < 1e-6);
        // a is constant and s stays 0
        for t in [c(0.3, 0.1), c(-0.5, 0.4)] {
            let y = d.eval(t);
            assert!((y.a.norm() - 1.0).abs() < 1e-6);
            assert!(y.s.norm() < 1e-6);
        }
    }

    #[test]
    fn part1_disc_stays_on_hartogs_boundary() {
        let (s, p) = (c(0.4, -0.2), c(0.1, 0.15));
        let a = Complex64::from_polar((-phi(s, p).unwrap() / 2.0).exp(), 1.1);
        let d = foliation_disc_part1(&PentaPoint::new(a, s, p)).unwrap();
        assert_eq!(d.degree(), 1);
        for k in 0..16 {
            let t = Complex64::from_polar(0.9 * (k as f64 + 0.5) / 16.0, 0.7 * k as f64);
            let y = d.eval(t);
            let defect = (y.a.norm_sqr() - (-phi(y.s, y.p).unwrap()).exp()).abs();
            assert!(defect < 1e-8, "t = {t}: {defect}");
        }
    }

    #[test]
    fn part2_chart_reproduces_the_point() {
        let x = PentaPoint::new(c(0.25, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        let chart = foliation_disc_part2(&x).unwrap();
        assert!((chart.lambda_u - c(1.0, 0.0)).norm() < 1e-12);
        assert!(chart.map(chart.a0, chart.lambda0).dist(&x) < 1e-12);
        assert!(chart.lambda_disc().eval(c(0.0, 0.0)).dist(&x) < 1e-12);
        assert!(foliation_disc_part2(&PentaPoint::ORIGIN).is_err());
    }

    #[test]
    fn royal_disc_is_the_double_root_curve() {
        let y = royal_disc().eval(c(0.3, 0.4));
        assert!((y.s * y.s - 4.0 * y.p).norm() < 1e-15);
    }
}
