use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{PentaPoint, SymmetrisedPoint};
use crate::complexalg::POLE_EPS;
use crate::error::{GeomError, Result};
use crate::optimize::{nelder_mead, NelderMeadOptions};

/// `Ψ_z(a, s, p) = a(1 − |z|²)/(1 − sz + pz²)`.
pub fn psi(z: Complex64, x: &PentaPoint) -> Result<Complex64> {
    let den = Complex64::new(1.0, 0.0) - x.s * z + x.p * z * z;
    if den.norm() < POLE_EPS {
        return Err(GeomError::Pole {
            context: "psi",
            modulus: den.norm(),
        });
    }
    Ok(x.a * (1.0 - z.norm_sqr()) / den)
}

/// `|Ψ_z(1, s, p)|` on the closed disc, 0 on and outside the unit circle.
pub fn psi_gain(z: Complex64, q: &SymmetrisedPoint) -> f64 {
    let w = 1.0 - z.norm_sqr();
    if w <= 0.0 {
        return 0.0;
    }
    let den = (Complex64::new(1.0, 0.0) - q.s * z + q.p * z * z).norm();
    if den == 0.0 {
        f64::INFINITY
    } else {
        w / den
    }
}

/// `φ^z(s, p) = −2 log|(1 − sz + pz²)/(1 − |z|²)|`.
pub fn phi_z(z: Complex64, s: Complex64, p: Complex64) -> Result<f64> {
    let w = 1.0 - z.norm_sqr();
    if !(w > 0.0) {
        return Err(GeomError::Domain {
            context: "phi_z",
            detail: format!("|z| = {} must be < 1", z.norm()),
        });
    }
    let den = (Complex64::new(1.0, 0.0) - s * z + p * z * z).norm();
    if den < POLE_EPS {
        return Err(GeomError::Pole {
            context: "phi_z",
            modulus: den,
        });
    }
    Ok(-2.0 * (den / w).ln())
}

/// The field `(s, p) ↦ φ^z(s, p)` for a fixed `z ∈ 𝔻`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiZField {
    pub z: Complex64,
}

impl PhiZField {
    pub fn eval(&self, s: Complex64, p: Complex64) -> Result<f64> {
        phi_z(self.z, s, p)
    }
}

pub fn phi_z_field(z: Complex64) -> Result<PhiZField> {
    if !(z.norm() < 1.0) {
        return Err(GeomError::InvalidParams(format!("|z| = {} must be < 1", z.norm())));
    }
    Ok(PhiZField { z })
}

/// Grid-plus-refinement settings for maximizing `|Ψ_z|` over the closed disc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub radii: usize,
    pub angles: usize,
    /// Number of best grid cells refined locally.
    pub refine_starts: usize,
    pub tol: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            radii: 24,
            angles: 48,
            refine_starts: 3,
            tol: 1e-10,
        }
    }
}

/// `sup_{z ∈ 𝔻̄} |Ψ_z(x)|` and a maximizer.
///
/// Polar grid (including `z = 0`), then Nelder–Mead from the best few grid
/// points. The maximizer need not be unique; the first best one is returned.
pub fn sup_psi(x: &PentaPoint, opt: &OptimizerConfig) -> (f64, Complex64) {
    let q = x.base();
    let scale = x.a.norm();
    if scale == 0.0 {
        return (0.0, Complex64::new(0.0, 0.0));
    }

    let mut grid: Vec<(f64, Complex64)> = Vec::with_capacity(opt.radii * opt.angles + 1);
    let origin = Complex64::new(0.0, 0.0);
    grid.push((psi_gain(origin, &q), origin));
    for i in 1..opt.radii.max(1) {
        let r = i as f64 / opt.radii as f64;
        for j in 0..opt.angles.max(1) {
            let z = Complex64::from_polar(r, TAU * j as f64 / opt.angles as f64);
            grid.push((psi_gain(z, &q), z));
        }
    }
    grid.sort_by(|a, b| b.0.total_cmp(&a.0));

    let step = 0.5 / opt.radii.max(1) as f64;
    let nm = NelderMeadOptions {
        step,
        f_tol: opt.tol * 1e-4,
        x_tol: 1e-13,
        max_iter: 4000,
    };
    let mut best = grid[0];
    for &(_, start) in grid.iter().take(opt.refine_starts.max(1)) {
        let (xz, fz) = nelder_mead(
            |v| -psi_gain(Complex64::new(v[0], v[1]), &q),
            [start.re, start.im],
            &nm,
        );
        if -fz > best.0 {
            best = (-fz, Complex64::new(xz[0], xz[1]));
        }
    }
    (scale * best.0, best.1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn psi_examples() {
        let x = PentaPoint::new(c(0.4, 0.1), c(0.3, 0.0), c(0.1, 0.1));
        assert_eq!(psi(c(0.0, 0.0), &x).unwrap(), x.a);
        assert_eq!(psi(c(0.6, 0.8), &x).unwrap().norm(), 0.0);
        let e = PentaPoint::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        assert!((psi(c(0.5, 0.0), &e).unwrap() - c(0.75, 0.0)).norm() < 1e-16);
    }

    #[test]
    fn phi_z_at_origin() {
        let f = phi_z_field(c(0.0, 0.0)).unwrap();
        assert_eq!(f.eval(c(0.5, 0.1), c(0.2, 0.0)).unwrap(), 0.0);
        let z = c(0.3, 0.4);
        let v = phi_z(z, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!((v - 2.0 * (1.0 - z.norm_sqr()).ln()).abs() < 1e-15);
        assert!(phi_z_field(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn sup_of_pure_a_point_is_at_origin() {
        let x = PentaPoint::new(c(0.6, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let (sup, at) = sup_psi(&x, &OptimizerConfig::default());
        assert!((sup - 0.6).abs() < 1e-12);
        assert!(at.norm() < 1e-6);
        let y = PentaPoint::new(c(0.0, 0.0), c(0.5, 0.0), c(0.1, 0.0));
        assert_eq!(sup_psi(&y, &OptimizerConfig::default()).0, 0.0);
    }
}
