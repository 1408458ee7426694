//! Membership oracles and geometric primitives for the symmetrised bidisc
//! `G₂`, the pentablock `P = π(R_I)` and the operator ball `R_I`.

mod actions;
mod boundary;
mod g2;
mod lift;
mod membership;
mod psi;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::GeomError;

pub use actions::{quasi_action, WeightVector};
pub use boundary::{boundary_classify, BoundaryClass};
pub use g2::{
    bound2, bound3, compute_beta, g2_contains, g2_value, in_g2_closure, is_shilov, phi,
    royal_point,
};
pub use lift::{lift_to_ball, minimize_fiber_norm, pi_map};
pub use membership::{penta_contains, penta_contains_with, Criterion, CriterionVerdicts, MembershipReport};
pub use psi::{phi_z, phi_z_field, psi, psi_gain, sup_psi, OptimizerConfig, PhiZField};

/// Width of the boundary band on the defining inequalities.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Tri-state answer of a membership query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Inside,
    BoundaryBand,
    Outside,
}

impl Verdict {
    /// Verdict for a signed margin (positive = inside).
    pub fn from_margin(margin: f64, tol: f64) -> Self {
        if margin > tol {
            Verdict::Inside
        } else if margin >= -tol {
            Verdict::BoundaryBand
        } else {
            Verdict::Outside
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Inside => "inside",
            Verdict::BoundaryBand => "boundary-band",
            Verdict::Outside => "outside",
        })
    }
}

/// A point `(a, s, p) ∈ ℂ³`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PentaPoint {
    pub a: Complex64,
    pub s: Complex64,
    pub p: Complex64,
}

impl PentaPoint {
    pub const ORIGIN: PentaPoint = PentaPoint {
        a: Complex64::new(0.0, 0.0),
        s: Complex64::new(0.0, 0.0),
        p: Complex64::new(0.0, 0.0),
    };

    pub fn new(a: Complex64, s: Complex64, p: Complex64) -> Self {
        Self { a, s, p }
    }

    pub fn from_reals(v: [f64; 6]) -> Self {
        Self::new(
            Complex64::new(v[0], v[1]),
            Complex64::new(v[2], v[3]),
            Complex64::new(v[4], v[5]),
        )
    }

    pub fn to_reals(&self) -> [f64; 6] {
        [self.a.re, self.a.im, self.s.re, self.s.im, self.p.re, self.p.im]
    }

    pub fn base(&self) -> SymmetrisedPoint {
        SymmetrisedPoint::new(self.s, self.p)
    }

    pub fn to_array(&self) -> [Complex64; 3] {
        [self.a, self.s, self.p]
    }

    pub fn from_array(v: [Complex64; 3]) -> Self {
        Self::new(v[0], v[1], v[2])
    }

    pub fn dist(&self, other: &Self) -> f64 {
        ((self.a - other.a).norm_sqr() + (self.s - other.s).norm_sqr() + (self.p - other.p).norm_sqr()).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.s.is_finite() && self.p.is_finite()
    }
}

/// Parses `"aRe,aIm,sRe,sIm,pRe,pIm"`.
impl FromStr for PentaPoint {
    type Err = GeomError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let parts: Vec<f64> = text
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| GeomError::InvalidParams(format!("bad point `{text}`: {e}")))?;
        let v: [f64; 6] = parts.try_into().map_err(|p: Vec<f64>| {
            GeomError::InvalidParams(format!("point needs 6 reals, got {}", p.len()))
        })?;
        Ok(Self::from_reals(v))
    }
}

/// A point `(s, p)` of `ℂ²`, the coordinates of the symmetrised bidisc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetrisedPoint {
    pub s: Complex64,
    pub p: Complex64,
}

impl SymmetrisedPoint {
    pub fn new(s: Complex64, p: Complex64) -> Self {
        Self { s, p }
    }

    /// `(λ₁ + λ₂, λ₁λ₂)`.
    pub fn from_roots(l1: Complex64, l2: Complex64) -> Self {
        Self::new(l1 + l2, l1 * l2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_point() {
        let x: PentaPoint = "1,2,3,4,5,6".parse().unwrap();
        assert_eq!(x.to_reals(), [1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert!("1,2,3".parse::<PentaPoint>().is_err());
        assert!("1,2,3,4,5,x".parse::<PentaPoint>().is_err());
    }

    #[test]
    fn verdict_bands() {
        assert_eq!(Verdict::from_margin(1e-3, 1e-9), Verdict::Inside);
        assert_eq!(Verdict::from_margin(1e-10, 1e-9), Verdict::BoundaryBand);
        assert_eq!(Verdict::from_margin(-1e-10, 1e-9), Verdict::BoundaryBand);
        assert_eq!(Verdict::from_margin(-1e-3, 1e-9), Verdict::Outside);
    }
}
