//! 2×2 complex matrices and their closed-form singular value decomposition.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Matrix2 {
    pub z11: Complex64,
    pub z12: Complex64,
    pub z21: Complex64,
    pub z22: Complex64,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl Matrix2 {
    pub const fn new(z11: Complex64, z12: Complex64, z21: Complex64, z22: Complex64) -> Self {
        Self { z11, z12, z21, z22 }
    }

    pub const fn zero() -> Self {
        Self::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub const fn identity() -> Self {
        Self::new(ONE, ZERO, ZERO, ONE)
    }

    pub fn diag(d1: Complex64, d2: Complex64) -> Self {
        Self::new(d1, ZERO, ZERO, d2)
    }

    /// Matrix with columns `c1`, `c2`.
    pub fn from_columns(c1: [Complex64; 2], c2: [Complex64; 2]) -> Self {
        Self::new(c1[0], c2[0], c1[1], c2[1])
    }

    pub fn trace(&self) -> Complex64 {
        self.z11 + self.z22
    }

    pub fn det(&self) -> Complex64 {
        self.z11 * self.z22 - self.z12 * self.z21
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.z11.conj(), self.z21.conj(), self.z12.conj(), self.z22.conj())
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self::new(self.z11 * k, self.z12 * k, self.z21 * k, self.z22 * k)
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.z11.norm_sqr() + self.z12.norm_sqr() + self.z21.norm_sqr() + self.z22.norm_sqr()
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.z11 * v[0] + self.z12 * v[1],
            self.z21 * v[0] + self.z22 * v[1],
        ]
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            self.z11 - other.z11,
            self.z12 - other.z12,
            self.z21 - other.z21,
            self.z22 - other.z22,
        ]
        .iter()
        .map(|d| d.norm())
        .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.z11.is_finite() && self.z12.is_finite() && self.z21.is_finite() && self.z22.is_finite()
    }
}

impl Add for Matrix2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.z11 + o.z11, self.z12 + o.z12, self.z21 + o.z21, self.z22 + o.z22)
    }
}

impl Sub for Matrix2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.z11 - o.z11, self.z12 - o.z12, self.z21 - o.z21, self.z22 - o.z22)
    }
}

impl Mul for Matrix2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.z11 * o.z11 + self.z12 * o.z21,
            self.z11 * o.z12 + self.z12 * o.z22,
            self.z21 * o.z11 + self.z22 * o.z21,
            self.z21 * o.z12 + self.z22 * o.z22,
        )
    }
}

/// `z = u · diag(sigma1, sigma2) · v` with `u`, `v` unitary and `sigma1 ≥ sigma2 ≥ 0`.
///
/// Note `v` is the right factor itself (its rows are the conjugated right
/// singular vectors), matching the `U diag(σ₁, σ₂) V` convention.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Svd2 {
    pub u: Matrix2,
    pub sigma1: f64,
    pub sigma2: f64,
    pub v: Matrix2,
}

impl Svd2 {
    pub fn reconstruct(&self) -> Matrix2 {
        self.u * Matrix2::diag(self.sigma1.into(), self.sigma2.into()) * self.v
    }
}

fn normalize(v: [Complex64; 2]) -> Option<[Complex64; 2]> {
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    (n > 0.0 && n.is_finite()).then(|| [v[0] / n, v[1] / n])
}

/// Unit vector orthogonal to a unit vector `v`.
fn complement(v: [Complex64; 2]) -> [Complex64; 2] {
    [-v[1].conj(), v[0].conj()]
}

fn inner(x: [Complex64; 2], y: [Complex64; 2]) -> Complex64 {
    x[0].conj() * y[0] + x[1].conj() * y[1]
}

/// Closed-form SVD.
///
/// Singular values come from `σ₁² + σ₂² = ‖z‖_F²`, `σ₁σ₂ = |det z|` and
/// `(σ₁² − σ₂²)² = (‖row₁‖² − ‖row₂‖²)² + 4|⟨row₁, row₂⟩|²`, which avoids the
/// cancellation in `‖z‖_F⁴ − 4|det z|²` for nearly equal values. The
/// top right singular vector is an eigenvector of `z*z` read off the row of
/// `z*z − σ₁²I` with the larger norm; the remaining vectors are completed by
/// the explicit 2-dimensional complement so both factors are unitary to
/// rounding.
pub fn svd2(z: &Matrix2) -> Svd2 {
    let fro = z.frobenius_sq();
    let det = z.det().norm();
    if fro == 0.0 {
        return Svd2 {
            u: Matrix2::identity(),
            sigma1: 0.0,
            sigma2: 0.0,
            v: Matrix2::identity(),
        };
    }
    let rows = z.z11.norm_sqr() + z.z12.norm_sqr() - z.z21.norm_sqr() - z.z22.norm_sqr();
    let cross = z.z11 * z.z21.conj() + z.z12 * z.z22.conj();
    let gap = rows.hypot(2.0 * cross.norm());
    let sigma1 = ((fro + gap) / 2.0).sqrt();
    let sigma2 = det / sigma1;

    let h = z.adjoint() * *z;
    let mu = sigma1 * sigma1;
    let cand_a = [h.z12, Complex64::from(mu) - h.z11];
    let cand_b = [Complex64::from(mu) - h.z22, h.z21];
    let na = cand_a[0].norm_sqr() + cand_a[1].norm_sqr();
    let nb = cand_b[0].norm_sqr() + cand_b[1].norm_sqr();
    let threshold = (1e-13 * mu).powi(2);
    let v1 = if na.max(nb) <= threshold {
        // z*z is (numerically) a multiple of the identity
        [ONE, ZERO]
    } else if na >= nb {
        normalize(cand_a).unwrap_or([ONE, ZERO])
    } else {
        normalize(cand_b).unwrap_or([ONE, ZERO])
    };
    let v2 = complement(v1);

    let u1 = normalize(z.apply(v1)).unwrap_or([ONE, ZERO]);
    let mut u2 = complement(u1);
    let c = inner(u2, z.apply(v2));
    if c.norm() > 0.0 {
        let phase = c / c.norm();
        u2 = [u2[0] * phase, u2[1] * phase];
    }

    let u = Matrix2::from_columns(u1, u2);
    let v = Matrix2::from_columns(v1, v2).adjoint();
    Svd2 {
        u,
        sigma1,
        sigma2,
        v,
    }
}

pub fn operator_norm(z: &Matrix2) -> f64 {
    svd2(z).sigma1
}
