//! Disc automorphisms `λ ↦ η(λ − α)/(1 − ᾱλ)` and finite Blaschke products.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// Denominators below this modulus are treated as poles.
pub const POLE_EPS: f64 = 1e-14;

const UNIT_TOL: f64 = 1e-9;

/// Parameters of the Möbius map `ν(λ) = η(λ − α)/(1 − ᾱλ)`.
///
/// The representation is canonical: two maps are equal iff their `(η, α)`
/// pairs are equal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MoebiusParams {
    pub eta: Complex64,
    pub alpha: Complex64,
}

impl MoebiusParams {
    /// Validates `|η| = 1` (within 1e-9) and `|α| < 1`; `η` is renormalized.
    pub fn new(eta: Complex64, alpha: Complex64) -> Result<Self> {
        if !eta.is_finite() || !alpha.is_finite() {
            return Err(GeomError::InvalidParams("non-finite Möbius parameter".into()));
        }
        if (eta.norm() - 1.0).abs() > UNIT_TOL {
            return Err(GeomError::InvalidParams(format!(
                "|eta| = {} is not unimodular",
                eta.norm()
            )));
        }
        if alpha.norm() >= 1.0 {
            return Err(GeomError::InvalidParams(format!(
                "|alpha| = {} must be < 1",
                alpha.norm()
            )));
        }
        Ok(Self {
            eta: eta / eta.norm(),
            alpha,
        })
    }

    pub fn identity() -> Self {
        Self {
            eta: Complex64::new(1.0, 0.0),
            alpha: Complex64::new(0.0, 0.0),
        }
    }

    /// The rotation `λ ↦ ηλ`.
    pub fn rotation(eta: Complex64) -> Result<Self> {
        Self::new(eta, Complex64::new(0.0, 0.0))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.eta - other.eta).norm() <= tol && (self.alpha - other.alpha).norm() <= tol
    }
}

impl Default for MoebiusParams {
    fn default() -> Self {
        Self::identity()
    }
}

pub fn moebius_apply(nu: &MoebiusParams, lam: Complex64) -> Result<Complex64> {
    let den = Complex64::new(1.0, 0.0) - nu.alpha.conj() * lam;
    if den.norm() < POLE_EPS {
        return Err(GeomError::Pole {
            context: "moebius_apply",
            modulus: den.norm(),
        });
    }
    Ok(nu.eta * (lam - nu.alpha) / den)
}

/// Inverse map: solving `w = η(λ − α)/(1 − ᾱλ)` for `λ` gives
/// `η̄(w + ηα)/(1 + η̄ᾱw)`, i.e. parameters `(η̄, −ηα)`.
pub fn moebius_inverse(nu: &MoebiusParams) -> MoebiusParams {
    MoebiusParams {
        eta: nu.eta.conj(),
        alpha: -nu.eta * nu.alpha,
    }
}

/// `outer ∘ inner` (apply `inner` first).
///
/// Uses the matrix representation `ν ↔ [[η, −ηα], [−ᾱ, 1]]`; the product is
/// renormalized so its lower-right entry is 1.
pub fn moebius_compose(outer: &MoebiusParams, inner: &MoebiusParams) -> MoebiusParams {
    let m = |nu: &MoebiusParams| {
        [
            [nu.eta, -nu.eta * nu.alpha],
            [-nu.alpha.conj(), Complex64::new(1.0, 0.0)],
        ]
    };
    let (f, g) = (m(outer), m(inner));
    let a = f[0][0] * g[0][0] + f[0][1] * g[1][0];
    let c = f[1][0] * g[0][0] + f[1][1] * g[1][0];
    let d = f[1][0] * g[0][1] + f[1][1] * g[1][1];
    // d = 1 + ᾱ_outer·η_inner·α_inner never vanishes for disc automorphisms.
    let eta = a / d;
    let alpha = (-c / d).conj();
    MoebiusParams {
        eta: eta / eta.norm(),
        alpha,
    }
}

/// A finite Blaschke product `prefactor · ∏ (λ − α_k)/(1 − ᾱ_k λ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeProduct {
    pub prefactor: Complex64,
    pub zeros: Vec<Complex64>,
}

impl BlaschkeProduct {
    pub fn new(prefactor: Complex64, zeros: Vec<Complex64>) -> Result<Self> {
        if (prefactor.norm() - 1.0).abs() > UNIT_TOL {
            return Err(GeomError::InvalidParams(format!(
                "Blaschke prefactor modulus {} is not 1",
                prefactor.norm()
            )));
        }
        if let Some(z) = zeros.iter().find(|z| !(z.norm() < 1.0)) {
            return Err(GeomError::InvalidParams(format!(
                "Blaschke zero {z} lies outside the open disc"
            )));
        }
        Ok(Self {
            prefactor: prefactor / prefactor.norm(),
            zeros,
        })
    }

    pub fn identity() -> Self {
        Self {
            prefactor: Complex64::new(1.0, 0.0),
            zeros: vec![Complex64::new(0.0, 0.0)],
        }
    }

    pub fn from_moebius(nu: &MoebiusParams) -> Self {
        Self {
            prefactor: nu.eta,
            zeros: vec![nu.alpha],
        }
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }
}

pub fn blaschke_apply(b: &BlaschkeProduct, lam: Complex64) -> Result<Complex64> {
    b.zeros.iter().try_fold(b.prefactor, |acc, &alpha| {
        let den = Complex64::new(1.0, 0.0) - alpha.conj() * lam;
        if den.norm() < POLE_EPS {
            return Err(GeomError::Pole {
                context: "blaschke_apply",
                modulus: den.norm(),
            });
        }
        Ok(acc * (lam - alpha) / den)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_and_zero() {
        let id = MoebiusParams::identity();
        assert_eq!(moebius_apply(&id, c(0.3, 0.0)).unwrap(), c(0.3, 0.0));
        let nu = MoebiusParams::new(c(1.0, 0.0), c(0.5, 0.0)).unwrap();
        assert!(moebius_apply(&nu, c(0.5, 0.0)).unwrap().norm() < 1e-16);
    }

    #[test]
    fn rotation_by_minus_one_is_an_involution() {
        let nu = MoebiusParams::rotation(c(-1.0, 0.0)).unwrap();
        let inv = moebius_inverse(&nu);
        assert!(inv.approx_eq(&nu, 1e-15));
        assert!(moebius_inverse(&MoebiusParams::identity()).approx_eq(&MoebiusParams::identity(), 0.0));
    }

    #[test]
    fn pole_is_reported() {
        let nu = MoebiusParams::new(c(1.0, 0.0), c(0.5, 0.0)).unwrap();
        assert!(matches!(
            moebius_apply(&nu, c(2.0, 0.0)),
            Err(GeomError::Pole { .. })
        ));
    }

    #[test]
    fn rejects_bad_params() {
        assert!(MoebiusParams::new(c(2.0, 0.0), c(0.0, 0.0)).is_err());
        assert!(MoebiusParams::new(c(1.0, 0.0), c(1.0, 0.0)).is_err());
        assert!(BlaschkeProduct::new(c(1.0, 0.0), vec![c(0.0, 1.0)]).is_err());
    }

    #[test]
    fn blaschke_degree_zero_and_one() {
        let b0 = BlaschkeProduct::new(c(1.0, 0.0), vec![]).unwrap();
        assert_eq!(blaschke_apply(&b0, c(0.4, 0.0)).unwrap(), c(1.0, 0.0));
        let b1 = BlaschkeProduct::identity();
        assert_eq!(blaschke_apply(&b1, c(0.4, 0.0)).unwrap(), c(0.4, 0.0));
    }

    #[test]
    fn composition_matches_pointwise() {
        let f = MoebiusParams::new(c(0.6, 0.8), c(0.3, -0.4)).unwrap();
        let g = MoebiusParams::new(c(0.0, 1.0), c(-0.5, 0.2)).unwrap();
        let fg = moebius_compose(&f, &g);
        for lam in [c(0.1, 0.2), c(-0.7, 0.1), c(0.0, 0.0), c(0.5, -0.5)] {
            let direct = moebius_apply(&f, moebius_apply(&g, lam).unwrap()).unwrap();
            let composed = moebius_apply(&fg, lam).unwrap();
            assert!((direct - composed).norm() < 1e-14);
        }
        let round = moebius_compose(&f, &moebius_inverse(&f));
        assert!(round.approx_eq(&MoebiusParams::identity(), 1e-14));
    }
}
