//! Levi forms of local defining functions of `∂P`.
//!
//! On `∂₁P` the defining function is `r(a, s, p) = log|a|² + φ(s, p)`. It is
//! only defined over `G₂`, so on `∂₂P` the unimodular root `λ₁` of
//! `λ² − sλ + p` is frozen and followed by continuity: `r₂ = |λ₁(s, p)|² − 1`.
//! The roots are simple there, so `λ₁` is holomorphic near the point.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complexalg::{solve_quadratic, wirtinger_jet_richardson};
use crate::domains::{boundary_classify, phi, BoundaryClass, PentaPoint, DEFAULT_TOL};
use crate::error::{GeomError, Result};

pub type Vec3 = [Complex64; 3];

const GRADIENT_EPS: f64 = 1e-12;
/// Step for the holomorphic gradient (Richardson-extrapolated).
pub const GRADIENT_STEP: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum DefiningFunction {
    /// `log|a|² + φ(s, p)`
    Hartogs,
    /// `|λ(s, p)|² − 1` for the root `λ` nearest to `anchor`.
    FrozenRoot { anchor: Complex64 },
}

impl DefiningFunction {
    pub fn eval(&self, x: &PentaPoint) -> Result<f64> {
        match self {
            DefiningFunction::Hartogs => {
                if x.a.norm() == 0.0 {
                    return Err(GeomError::Domain {
                        context: "log|a|^2",
                        detail: "a = 0".into(),
                    });
                }
                Ok(x.a.norm_sqr().ln() + phi(x.s, x.p)?)
            }
            DefiningFunction::FrozenRoot { anchor } => {
                let r = solve_quadratic(x.s, x.p);
                let lam = if (r.lambda1 - anchor).norm() <= (r.lambda2 - anchor).norm() {
                    r.lambda1
                } else {
                    r.lambda2
                };
                Ok(lam.norm_sqr() - 1.0)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeviResult {
    pub point: PentaPoint,
    pub tangent: Vec3,
    pub defining: DefiningFunction,
    pub value: f64,
    /// `|Σ ∂r/∂x_j · v_j|` for the unit tangent.
    pub gradient_residual: f64,
}

fn shift(x: &PentaPoint, v: &Vec3, t: Complex64) -> PentaPoint {
    PentaPoint::new(x.a + t * v[0], x.s + t * v[1], x.p + t * v[2])
}

fn norm3(v: &Vec3) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn scale3(v: &Vec3, k: Complex64) -> Vec3 {
    [v[0] * k, v[1] * k, v[2] * k]
}

/// Hermitian product `⟨x, y⟩ = Σ x_j ȳ_j`.
fn herm(x: &Vec3, y: &Vec3) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

/// Holomorphic gradient `(∂r/∂a, ∂r/∂s, ∂r/∂p)` by extrapolated central differences.
pub fn holomorphic_gradient(r: DefiningFunction, x: &PentaPoint, h: f64) -> Result<Vec3> {
    let mut grad = [Complex64::new(0.0, 0.0); 3];
    for (j, g) in grad.iter_mut().enumerate() {
        let mut e = [Complex64::new(0.0, 0.0); 3];
        e[j] = Complex64::new(1.0, 0.0);
        let (jet, _) = wirtinger_jet_richardson(|t| r.eval(&shift(x, &e, t)), Complex64::new(0.0, 0.0), h)?;
        *g = jet.d_z;
    }
    Ok(grad)
}

/// Orthonormal basis of the complex tangent space `{v : Σ ∂r/∂x_j v_j = 0}`
/// of `∂₁P` at `x`.
///
/// The standard basis vectors are projected off the normal; the one with
/// the smallest residual is dropped and the other two are orthonormalized
/// in index order.
pub fn complex_tangent_basis(x: &PentaPoint) -> Result<[Vec3; 2]> {
    let class = boundary_classify(x, DEFAULT_TOL);
    if class != BoundaryClass::Part1 {
        return Err(GeomError::Classification {
            expected: "part1".into(),
            found: format!("{class:?}"),
        });
    }
    let grad = holomorphic_gradient(DefiningFunction::Hartogs, x, GRADIENT_STEP)?;
    tangent_basis_from_gradient(&grad)
}

pub fn tangent_basis_from_gradient(grad: &Vec3) -> Result<[Vec3; 2]> {
    let gnorm = norm3(grad);
    if !(gnorm > GRADIENT_EPS) {
        return Err(GeomError::DegenerateGradient { norm: gnorm });
    }
    let normal: Vec3 = [grad[0].conj() / gnorm, grad[1].conj() / gnorm, grad[2].conj() / gnorm];
    let mut residuals: Vec<(usize, Vec3, f64)> = (0..3)
        .map(|k| {
            let mut e = [Complex64::new(0.0, 0.0); 3];
            e[k] = Complex64::new(1.0, 0.0);
            let c = herm(&e, &normal);
            let r: Vec3 = [e[0] - c * normal[0], e[1] - c * normal[1], e[2] - c * normal[2]];
            let n = norm3(&r);
            (k, r, n)
        })
        .collect();
    // drop the smallest residual (first index on ties), keep index order
    let drop = residuals
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .2.total_cmp(&b.1 .2))
        .map(|(i, _)| i)
        .unwrap_or(0);
    residuals.remove(drop);
    let b1 = scale3(&residuals[0].1, Complex64::new(1.0 / residuals[0].2, 0.0));
    let v = residuals[1].1;
    let c = herm(&v, &b1);
    let mut b2: Vec3 = [v[0] - c * b1[0], v[1] - c * b1[1], v[2] - c * b1[2]];
    // one more pass against the normal for rounding
    let cn = herm(&b2, &normal);
    for j in 0..3 {
        b2[j] -= cn * normal[j];
    }
    let n2 = norm3(&b2);
    Ok([b1, scale3(&b2, Complex64::new(1.0 / n2, 0.0))])
}

/// `∂∂̄r(x)[v, v̄]` for the given defining function, as the `u_{tt̄}` of
/// `t ↦ r(x + t v̂)` (extrapolated from steps `h` and `h/2`).
pub fn levi_form_with(r: DefiningFunction, x: &PentaPoint, v: &Vec3, h: f64) -> Result<LeviResult> {
    let n = norm3(v);
    if !(n > 0.0) {
        return Err(GeomError::InvalidParams("zero tangent vector".into()));
    }
    let unit = scale3(v, Complex64::new(1.0 / n, 0.0));
    let (jet, _) = wirtinger_jet_richardson(|t| r.eval(&shift(x, &unit, t)), Complex64::new(0.0, 0.0), h)?;
    let grad = holomorphic_gradient(r, x, GRADIENT_STEP)?;
    let residual = grad.iter().zip(&unit).map(|(g, u)| g * u).sum::<Complex64>().norm();
    Ok(LeviResult {
        point: *x,
        tangent: unit,
        defining: r,
        value: jet.d_zzbar.re,
        gradient_residual: residual,
    })
}

/// The root of `λ² − sλ + p` closest to the unit circle.
pub fn unimodular_root(s: Complex64, p: Complex64) -> Complex64 {
    let r = solve_quadratic(s, p);
    if (r.lambda1.norm() - 1.0).abs() <= (r.lambda2.norm() - 1.0).abs() {
        r.lambda1
    } else {
        r.lambda2
    }
}

/// Levi form at a point of `∂₁P` (Hartogs defining function) or `∂₂P`
/// (frozen unimodular root).
pub fn levi_form(x: &PentaPoint, v: &Vec3, h: f64) -> Result<LeviResult> {
    match boundary_classify(x, DEFAULT_TOL) {
        BoundaryClass::Part1 => levi_form_with(DefiningFunction::Hartogs, x, v, h),
        BoundaryClass::Part2 => {
            let anchor = unimodular_root(x.s, x.p);
            levi_form_with(DefiningFunction::FrozenRoot { anchor }, x, v, h)
        }
        other => Err(GeomError::EvaluationFailure {
            at: x.a,
            detail: format!("Levi form needs a part1/part2 point, found {other:?}"),
        }),
    }
}
