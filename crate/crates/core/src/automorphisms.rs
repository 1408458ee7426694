//! The automorphisms
//! `f_{ω,ν}(a, λ₁+λ₂, λ₁λ₂) = (ωη(1−|α|²)a / ((1−ᾱλ₁)(1−ᾱλ₂)), ν(λ₁)+ν(λ₂), ν(λ₁)ν(λ₂))`
//! of the pentablock, their group law, and Blaschke symmetrization on `G₂`.
//!
//! Composition convention: `auto_compose(f, g)` is `f ∘ g`, i.e. `g` is
//! applied first.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complexalg::{
    blaschke_apply, moebius_apply, moebius_compose, moebius_inverse, solve_quadratic,
    BlaschkeProduct, MoebiusParams, POLE_EPS,
};
use crate::domains::{PentaPoint, SymmetrisedPoint};
use crate::error::{GeomError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PentaAutomorphism {
    pub omega: Complex64,
    pub nu: MoebiusParams,
}

impl PentaAutomorphism {
    /// `ω` must be unimodular (within 1e-9); it is renormalized.
    pub fn new(omega: Complex64, nu: MoebiusParams) -> Result<Self> {
        if !omega.is_finite() || (omega.norm() - 1.0).abs() > 1e-9 {
            return Err(GeomError::InvalidParams(format!(
                "|omega| = {} is not unimodular",
                omega.norm()
            )));
        }
        Ok(Self {
            omega: omega / omega.norm(),
            nu,
        })
    }

    pub fn from_parts(omega: Complex64, eta: Complex64, alpha: Complex64) -> Result<Self> {
        Self::new(omega, MoebiusParams::new(eta, alpha)?)
    }

    pub fn identity() -> Self {
        Self {
            omega: Complex64::new(1.0, 0.0),
            nu: MoebiusParams::identity(),
        }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.omega - other.omega).norm() <= tol && self.nu.approx_eq(&other.nu, tol)
    }
}

impl Default for PentaAutomorphism {
    fn default() -> Self {
        Self::identity()
    }
}

fn unit(z: Complex64) -> Complex64 {
    z / z.norm()
}

/// Applies `f` to `x`; the `(s, p)` part goes through the roots, so it is
/// independent of their order.
pub fn auto_apply(f: &PentaAutomorphism, x: &PentaPoint) -> Result<PentaPoint> {
    let alpha = f.nu.alpha;
    let ac = alpha.conj();
    let den = Complex64::new(1.0, 0.0) - ac * x.s + ac * ac * x.p;
    if den.norm() < POLE_EPS {
        return Err(GeomError::Pole {
            context: "auto_apply",
            modulus: den.norm(),
        });
    }
    let a = f.omega * f.nu.eta * (1.0 - alpha.norm_sqr()) * x.a / den;
    let roots = solve_quadratic(x.s, x.p);
    let m1 = moebius_apply(&f.nu, roots.lambda1)?;
    let m2 = moebius_apply(&f.nu, roots.lambda2)?;
    Ok(PentaPoint::new(a, m1 + m2, m1 * m2))
}

/// Inverse automorphism: `ν' = ν⁻¹` and `ω' = ω̄`.
///
/// With `ν⁻¹ = (η̄, −ηα)` one has `1 − ᾱ'ν(λ) = (1 − |α|²)/(1 − ᾱλ)`, so the
/// denominators cancel and the first coordinate returns to `ω'ωa`.
pub fn auto_inverse(f: &PentaAutomorphism) -> PentaAutomorphism {
    PentaAutomorphism {
        omega: f.omega.conj(),
        nu: moebius_inverse(&f.nu),
    }
}

/// `f ∘ g`.
///
/// The Möbius parts compose directly. Writing
/// `c = 1 + ᾱ_f η_g α_g`, one finds
/// `D_f(g(x)) = c² D_{f∘g}(x) / D_g(x)` for the denominators
/// `D(x) = (1 − ᾱλ₁)(1 − ᾱλ₂)`; matching first coordinates gives
/// `ω = ω_f ω_g η_f η_g (1−|α_f|²)(1−|α_g|²) / (c² η (1−|α|²))`.
pub fn auto_compose(f: &PentaAutomorphism, g: &PentaAutomorphism) -> PentaAutomorphism {
    let nu = moebius_compose(&f.nu, &g.nu);
    let c = Complex64::new(1.0, 0.0) + f.nu.alpha.conj() * g.nu.eta * g.nu.alpha;
    let num = f.omega
        * g.omega
        * f.nu.eta
        * g.nu.eta
        * (1.0 - f.nu.alpha.norm_sqr())
        * (1.0 - g.nu.alpha.norm_sqr());
    let omega = num / (c * c * nu.eta * (1.0 - nu.alpha.norm_sqr()));
    PentaAutomorphism {
        omega: unit(omega),
        nu,
    }
}

/// Image of the origin: `(0, 2μ, μ²)` with `μ = ν(0) = −ηα`.
pub fn orbit_of_origin(f: &PentaAutomorphism) -> PentaPoint {
    let mu = -f.nu.eta * f.nu.alpha;
    PentaPoint::new(Complex64::new(0.0, 0.0), 2.0 * mu, mu * mu)
}

/// `(λ₁+λ₂, λ₁λ₂) ↦ (b(λ₁)+b(λ₂), b(λ₁)b(λ₂))`.
pub fn symmetrize_blaschke(b: &BlaschkeProduct, q: &SymmetrisedPoint) -> Result<SymmetrisedPoint> {
    let roots = solve_quadratic(q.s, q.p);
    let m1 = blaschke_apply(b, roots.lambda1)?;
    let m2 = blaschke_apply(b, roots.lambda2)?;
    Ok(SymmetrisedPoint::from_roots(m1, m2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_acts_trivially() {
        let x = PentaPoint::new(c(0.2, 0.1), c(0.3, -0.4), c(0.05, 0.1));
        let y = auto_apply(&PentaAutomorphism::identity(), &x).unwrap();
        assert!(y.dist(&x) < 1e-15);
    }

    #[test]
    fn rotations() {
        let (omega, eta) = (c(0.0, 1.0), c(0.6, 0.8));
        let f = PentaAutomorphism::from_parts(omega, eta, c(0.0, 0.0)).unwrap();
        let x = PentaPoint::new(c(0.2, 0.1), c(0.3, -0.4), c(0.05, 0.1));
        let y = auto_apply(&f, &x).unwrap();
        let expected = PentaPoint::new(omega * eta * x.a, eta * x.s, eta * eta * x.p);
        assert!(y.dist(&expected) < 1e-15);
        let back = auto_apply(&auto_inverse(&f), &y).unwrap();
        assert!(back.dist(&x) < 1e-15);
    }

    #[test]
    fn translation_on_part2_base() {
        let f = PentaAutomorphism::from_parts(c(1.0, 0.0), c(1.0, 0.0), c(0.5, 0.0)).unwrap();
        let y = auto_apply(&f, &PentaPoint::new(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0))).unwrap();
        assert!(y.dist(&PentaPoint::new(c(0.0, 0.0), c(0.5, 0.0), c(-0.5, 0.0))) < 1e-15);
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(orbit_of_origin(&PentaAutomorphism::identity()), PentaPoint::ORIGIN);
        let f = PentaAutomorphism::from_parts(c(1.0, 0.0), c(1.0, 0.0), c(0.3, 0.0)).unwrap();
        let o = orbit_of_origin(&f);
        assert!(o.dist(&PentaPoint::new(c(0.0, 0.0), c(-0.6, 0.0), c(0.09, 0.0))) < 1e-15);
        assert!(auto_apply(&f, &PentaPoint::ORIGIN).unwrap().dist(&o) < 1e-15);
    }

    #[test]
    fn compose_with_identity_and_inverse() {
        let f = PentaAutomorphism::from_parts(c(0.8, -0.6), c(0.0, -1.0), c(0.2, 0.45)).unwrap();
        let id = PentaAutomorphism::identity();
        assert!(auto_compose(&f, &id).approx_eq(&f, 1e-14));
        assert!(auto_compose(&id, &f).approx_eq(&f, 1e-14));
        assert!(auto_compose(&f, &auto_inverse(&f)).approx_eq(&id, 1e-14));
        assert!(auto_compose(&auto_inverse(&f), &f).approx_eq(&id, 1e-14));
    }

    #[test]
    fn blaschke_symmetrization() {
        let q = SymmetrisedPoint::from_roots(c(0.7, 0.0), c(0.2, 0.0));
        assert!({
            let r = symmetrize_blaschke(&BlaschkeProduct::identity(), &q).unwrap();
            (r.s - q.s).norm() < 1e-15 && (r.p - q.p).norm() < 1e-15
        });
        let square = BlaschkeProduct::new(c(1.0, 0.0), vec![c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let r = symmetrize_blaschke(&square, &q).unwrap();
        assert!((r.s - c(0.53, 0.0)).norm() < 1e-15);
        assert!((r.p - c(0.0196, 0.0)).norm() < 1e-15);
    }
}
