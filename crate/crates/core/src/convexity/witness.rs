//! Complex hyperplanes through exterior points that miss `P`.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::domains::{
    bound3, g2_contains, g2_value, penta_contains, pi_map, psi, sup_psi, Criterion, OptimizerConfig, PentaPoint,
    SymmetrisedPoint, Verdict, DEFAULT_TOL,
};
use crate::complexalg::solve_quadratic;
use crate::error::{GeomError, Result};
use crate::harness::sampler::random_contraction;
use crate::optimize::{nelder_mead, NelderMeadOptions};

/// Samples closer than this to the witness set count as incidences.
pub const INCIDENCE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum HyperplaneWitness {
    /// `ℂ × l` with `l = {(s₀, p₀) + t·direction}`; `direction` is a unit vector.
    ProductLine { point: [Complex64; 2], direction: [Complex64; 2] },
    /// `{(a, s, p) : a(1 − |z|²) = ω(1 − sz + pz²)}`.
    PsiLevelSet { z: Complex64, omega: Complex64 },
}

impl HyperplaneWitness {
    /// Distance-like residual of `x` to the witness set; zero on it.
    pub fn residual(&self, x: &PentaPoint) -> f64 {
        match *self {
            HyperplaneWitness::ProductLine { point, direction } => {
                ((x.s - point[0]) * direction[1] - (x.p - point[1]) * direction[0]).norm()
            }
            HyperplaneWitness::PsiLevelSet { z, omega } => {
                let den = Complex64::new(1.0, 0.0) - x.s * z + x.p * z * z;
                (x.a * (1.0 - z.norm_sqr()) - omega * den).norm()
            }
        }
    }

    /// For a level set with `|z| < 1`, the point of the hyperplane above `(s, p)`.
    pub fn fiber_point(&self, s: Complex64, p: Complex64) -> Option<PentaPoint> {
        match *self {
            HyperplaneWitness::PsiLevelSet { z, omega } if z.norm() < 1.0 => {
                let den = Complex64::new(1.0, 0.0) - s * z + p * z * z;
                Some(PentaPoint::new(omega * den / (1.0 - z.norm_sqr()), s, p))
            }
            _ => None,
        }
    }

    /// The `(s, p)`-line of a witness of the form `ℂ × l`, as (point on l, unit direction).
    pub fn base_line(&self) -> Option<([Complex64; 2], [Complex64; 2])> {
        match *self {
            HyperplaneWitness::ProductLine { point, direction } => Some((point, direction)),
            HyperplaneWitness::PsiLevelSet { z, .. } if z.norm() >= 1.0 - 1e-12 => {
                // 1 − sz + pz² = 0, through (1/z, 0)
                let n = (1.0 + z.norm_sqr()).sqrt();
                Some(([z.inv(), Complex64::new(0.0, 0.0)], [z / n, Complex64::new(1.0 / n, 0.0)]))
            }
            _ => None,
        }
    }
}

/// Orthogonal projection of `q` onto the line `point + t·direction`.
fn project(q: [Complex64; 2], point: [Complex64; 2], direction: [Complex64; 2]) -> [Complex64; 2] {
    let t = (q[0] - point[0]) * direction[0].conj() + (q[1] - point[1]) * direction[1].conj();
    [point[0] + t * direction[0], point[1] + t * direction[1]]
}

fn unit(v: [Complex64; 2]) -> [Complex64; 2] {
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    [v[0] / n, v[1] / n]
}

fn direction_from_angles(theta: f64, psi_angle: f64) -> [Complex64; 2] {
    [Complex64::new(theta.cos(), 0.0), Complex64::from_polar(theta.sin(), psi_angle)]
}

/// `min_t ρ((s₀, p₀) + t·d)` with `ρ = |s − s̄p| + |p|² − 1`, by a polar grid
/// in `t` followed by Nelder–Mead. Positive means the line misses `Ḡ₂`.
pub fn line_clearance(point: [Complex64; 2], direction: [Complex64; 2]) -> f64 {
    let rho = |t: Complex64| {
        g2_value(&SymmetrisedPoint::new(point[0] + t * direction[0], point[1] + t * direction[1])) - 1.0
    };
    // G₂ lies in the ball of radius √5 about the origin
    let reach = (point[0].norm_sqr() + point[1].norm_sqr()).sqrt() + 2.5;
    let mut best = (rho(Complex64::new(0.0, 0.0)), Complex64::new(0.0, 0.0));
    for i in 1..=24 {
        let r = reach * i as f64 / 24.0;
        for j in 0..48 {
            let t = Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / 48.0);
            let v = rho(t);
            if v < best.0 {
                best = (v, t);
            }
        }
    }
    let opts = NelderMeadOptions {
        step: reach / 48.0,
        f_tol: 1e-14,
        x_tol: 1e-12,
        max_iter: 2000,
    };
    let (_, v) = nelder_mead(|w| rho(Complex64::new(w[0], w[1])), [best.1.re, best.1.im], &opts);
    v.min(best.0)
}

/// `ℂ × l` for a base `(s₀, p₀)` outside `G₂`.
///
/// Seeded with `l = {1 − sz + pz² = 0}`, `z = 1/λ` for the larger root `λ`
/// (it misses `G₂` when `|λ| ≥ 1`), then the line clearance is maximized
/// over the direction angles.
fn product_line(q: &SymmetrisedPoint) -> Result<HyperplaneWitness> {
    let roots = solve_quadratic(q.s, q.p);
    let lam = roots.lambda1;
    if lam.norm() == 0.0 {
        return Err(GeomError::WitnessNotFound {
            detail: "base point has no nonzero root".into(),
        });
    }
    let point = [q.s, q.p];
    let seed = unit([lam.inv(), Complex64::new(1.0, 0.0)]);
    let seed_clearance = line_clearance(point, seed);

    let theta0 = (seed[1].norm()).atan2(seed[0].norm());
    // normalize the phase so the first component is real
    let phase = seed[0].arg();
    let psi0 = seed[1].arg() - phase;
    let opts = NelderMeadOptions {
        step: 0.1,
        f_tol: 1e-10,
        x_tol: 1e-8,
        max_iter: 300,
    };
    let (angles, neg) = nelder_mead(|v| -line_clearance(point, direction_from_angles(v[0], v[1])), [theta0, psi0], &opts);
    let (direction, clearance) = if -neg > seed_clearance {
        (direction_from_angles(angles[0], angles[1]), -neg)
    } else {
        (seed, seed_clearance)
    };
    if clearance < -DEFAULT_TOL {
        return Err(GeomError::WitnessNotFound {
            detail: format!("best line through ({}, {}) enters G2 (clearance {clearance:e})", q.s, q.p),
        });
    }
    Ok(HyperplaneWitness::ProductLine { point, direction })
}

/// A complex hyperplane through `x` disjoint from `P`.
///
/// Over a base in `G₂` (or its boundary band) the level set `{Ψ_z = Ψ_z(x)}`
/// at a maximizer of `|Ψ_z(x)|` is used. When that fails, e.g. on the
/// boundary of `G₂` with `a = 0`, the plane comes from the root line
/// `{1 − sz + pz² = 0}` with `z = 1/λ`.
pub fn linconvex_witness(x: &PentaPoint, tol: f64) -> Result<HyperplaneWitness> {
    if !x.is_finite() {
        return Err(GeomError::InvalidParams("point must be finite".into()));
    }
    let report = penta_contains(x, Criterion::C3, tol)?;
    if report.verdict == Verdict::Inside {
        return Err(GeomError::WitnessNotFound {
            detail: "point lies inside the pentablock".into(),
        });
    }
    let q = x.base();
    let base = g2_contains(&q, tol);
    if base != Verdict::Outside {
        let (sup, z) = sup_psi(x, &OptimizerConfig::default());
        if sup >= 1.0 - tol {
            if let Ok(omega) = psi(z, x) {
                return Ok(HyperplaneWitness::PsiLevelSet { z, omega });
            }
        }
        if base == Verdict::Inside {
            return Err(GeomError::WitnessNotFound {
                detail: format!("sup |Psi_z| = {sup} below 1 - tol"),
            });
        }
        let roots = solve_quadratic(q.s, q.p);
        let lam = roots.lambda1;
        if (lam.norm() - 1.0).abs() <= 1e-12 {
            return Ok(HyperplaneWitness::PsiLevelSet {
                z: lam.inv(),
                omega: Complex64::new(1.0, 0.0),
            });
        }
    }
    product_line(&q)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessVerification {
    pub witness: HyperplaneWitness,
    pub samples: usize,
    pub seed: u64,
    pub min_residual: f64,
    pub min_index: usize,
}

/// Checks that `n` points `π(z)`, `z` a random strict contraction, stay off
/// the witness set.
///
/// Besides the residual, each sample is projected onto the witness set
/// along the fiber (`a`-direction for level sets, orthogonally in `(s, p)`
/// for `ℂ × l`); the projected point must not be interior to `P`, resp. to
/// `G₂`.
pub fn witness_verify(w: &HyperplaneWitness, n: usize, seed: u64) -> Result<WitnessVerification> {
    if let HyperplaneWitness::PsiLevelSet { z, omega } = w {
        if !(z.norm() <= 1.0 + 1e-12) || !omega.is_finite() {
            return Err(GeomError::InvalidParams("level set needs |z| <= 1 and finite omega".into()));
        }
    }
    if n == 0 {
        return Err(GeomError::InvalidParams("n must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min = (f64::INFINITY, 0usize);
    for index in 0..n {
        let y = pi_map(&random_contraction(&mut rng, 1.0));
        let r = w.residual(&y);
        if r < min.0 {
            min = (r, index);
        }
        let violation = |detail: String| GeomError::WitnessViolation {
            index,
            sample: y.to_reals(),
            detail,
        };
        if r < INCIDENCE_TOL {
            return Err(violation(format!("residual {r:e}")));
        }
        if let Some(h) = w.fiber_point(y.s, y.p) {
            let roots = solve_quadratic(h.s, h.p);
            if g2_contains(&h.base(), DEFAULT_TOL) == Verdict::Inside && h.a.norm() < bound3(&roots) - DEFAULT_TOL {
                return Err(violation(format!("witness meets P at {:?}", h.to_reals())));
            }
        }
        if let Some((point, direction)) = w.base_line() {
            let [s, p] = project([y.s, y.p], point, direction);
            if g2_contains(&SymmetrisedPoint::new(s, p), DEFAULT_TOL) == Verdict::Inside {
                return Err(violation(format!("base line meets G2 at ({s}, {p})")));
            }
        }
    }
    Ok(WitnessVerification {
        witness: *w,
        samples: n,
        seed,
        min_residual: min.0,
        min_index: min.1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn large_a_gives_level_set_at_origin() {
        let x = PentaPoint::new(c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let w = linconvex_witness(&x, DEFAULT_TOL).unwrap();
        match w {
            HyperplaneWitness::PsiLevelSet { z, omega } => {
                assert!(z.norm() < 1e-6);
                assert!((omega - c(2.0, 0.0)).norm() < 1e-6);
            }
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(w.residual(&x) < 1e-10);
        let v = witness_verify(&w, 2000, 3).unwrap();
        assert!(v.min_residual > 0.0);
    }

    #[test]
    fn exterior_base_gives_product_line() {
        let x = PentaPoint::new(c(0.0, 0.0), c(3.0, 0.0), c(0.0, 0.0));
        let w = linconvex_witness(&x, DEFAULT_TOL).unwrap();
        assert!(matches!(w, HyperplaneWitness::ProductLine { .. }));
        assert!(w.residual(&x) < 1e-10);
        witness_verify(&w, 2000, 4).unwrap();
    }

    #[test]
    fn royal_boundary_point() {
        let x = PentaPoint::new(c(0.0, 0.0), c(2.0, 0.0), c(1.0, 0.0));
        let w = linconvex_witness(&x, DEFAULT_TOL).unwrap();
        assert!(w.residual(&x) < 1e-10);
        witness_verify(&w, 2000, 5).unwrap();
    }

    #[test]
    fn interior_plane_is_rejected() {
        let w = HyperplaneWitness::PsiLevelSet {
            z: c(0.0, 0.0),
            omega: c(0.5, 0.0),
        };
        assert!(matches!(
            witness_verify(&w, 100, 1),
            Err(GeomError::WitnessViolation { index: 0, .. })
        ));
        assert!(linconvex_witness(&PentaPoint::ORIGIN, DEFAULT_TOL).is_err());
    }
}
