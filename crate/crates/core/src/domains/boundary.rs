use serde::{Deserialize, Serialize};

use super::g2::{bound2, bound3, g2_contains};
use super::{PentaPoint, Verdict};
use crate::complexalg::solve_quadratic;

/// Position of a point relative to `P` and the three boundary strata:
/// `∂₁` over `G₂`, `∂₂` over the non-Shilov part of `∂G₂`, and `∂₃` the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryClass {
    Interior,
    Part1,
    Part2,
    Part3,
    Exterior,
}

impl BoundaryClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundaryClass::Interior => "interior",
            BoundaryClass::Part1 => "part1",
            BoundaryClass::Part2 => "part2",
            BoundaryClass::Part3 => "part3",
            BoundaryClass::Exterior => "exterior",
        }
    }
}

impl std::fmt::Display for BoundaryClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classifies `x` with band `tol` on the defining inequalities.
///
/// Over the boundary band of `G₂` a root counts as unimodular within
/// `√tol`, the root displacement that a band of width `tol` allows near a
/// double root.
pub fn boundary_classify(x: &PentaPoint, tol: f64) -> BoundaryClass {
    let q = x.base();
    let roots = solve_quadratic(q.s, q.p);
    let b3 = bound3(&roots);
    let modulus = x.a.norm();
    match g2_contains(&q, tol) {
        Verdict::Outside => BoundaryClass::Exterior,
        Verdict::Inside => {
            let c3 = Verdict::from_margin(b3 - modulus, tol);
            if c3 == Verdict::Inside {
                return BoundaryClass::Interior;
            }
            // e^{-φ} = bound2²
            let hartogs = match bound2(q.s, q.p) {
                Ok(b) => b * b,
                Err(_) => b3 * b3,
            };
            if c3 == Verdict::BoundaryBand || (modulus * modulus - hartogs).abs() <= tol {
                BoundaryClass::Part1
            } else {
                BoundaryClass::Exterior
            }
        }
        Verdict::BoundaryBand => {
            let root_tol = tol.sqrt();
            let unimodular = [roots.lambda1, roots.lambda2]
                .iter()
                .filter(|l| (l.norm() - 1.0).abs() <= root_tol)
                .count();
            if unimodular < 2 && modulus < b3 - tol {
                BoundaryClass::Part2
            } else if modulus <= b3 + tol {
                BoundaryClass::Part3
            } else {
                BoundaryClass::Exterior
            }
        }
    }
}
