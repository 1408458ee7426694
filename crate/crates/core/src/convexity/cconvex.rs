use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::field::{ScalarField2C, SupField};
use crate::complexalg::{wirtinger_jet_richardson, WirtingerJet};
use crate::domains::SymmetrisedPoint;
use crate::error::{GeomError, Result};
use crate::harness::sampler::{random_g2_point, random_unit_vector2};

/// Outcome of the C-convexity inequality for one field along one complex line.
///
/// `lhs = u_{zz̄}`; `rhs_squared = |u_zz − u_z²|²`; `rhs_standard = |u_zz − u_z²|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub base: [Complex64; 2],
    pub direction: [Complex64; 2],
    pub t0: Complex64,
    pub h: f64,
    pub lhs: f64,
    pub rhs_squared: f64,
    pub rhs_standard: f64,
    pub margin_squared: f64,
    pub margin_standard: f64,
    /// The family's maximizer changed across the stencil; the report was
    /// taken on the member active at `t0`.
    #[serde(default)]
    pub nonsmooth: bool,
    /// Largest change of the raw derivatives between steps `h` and `h/2`.
    #[serde(default)]
    pub richardson_gap: f64,
}

impl ConvexityReport {
    fn from_jet(base: &SymmetrisedPoint, dir: [Complex64; 2], t0: Complex64, h: f64, jet: &WirtingerJet) -> Self {
        let w = (jet.d_zz - jet.d_z * jet.d_z).norm();
        let lhs = jet.d_zzbar.re;
        Self {
            base: [base.s, base.p],
            direction: dir,
            t0,
            h,
            lhs,
            rhs_squared: w * w,
            rhs_standard: w,
            margin_squared: lhs - w * w,
            margin_standard: lhs - w,
            nonsmooth: false,
            richardson_gap: 0.0,
        }
    }
}

fn unit_direction(direction: [Complex64; 2]) -> Result<[Complex64; 2]> {
    let n = (direction[0].norm_sqr() + direction[1].norm_sqr()).sqrt();
    if !(n > 0.0) || !n.is_finite() {
        return Err(GeomError::InvalidParams("direction must be a nonzero vector".into()));
    }
    Ok([direction[0] / n, direction[1] / n])
}

fn restricted<'a>(
    u: &'a dyn ScalarField2C,
    base: &'a SymmetrisedPoint,
    dir: [Complex64; 2],
) -> impl Fn(Complex64) -> Result<f64> + 'a {
    move |t: Complex64| {
        let (ds, dp) = (t * dir[0], t * dir[1]);
        u.eval_offset(base.s, base.p, ds, dp).map_err(|e| GeomError::EvaluationFailure {
            at: t,
            detail: format!("{} at (s, p) = ({}, {}): {e}", u.name(), base.s + ds, base.p + dp),
        })
    }
}

/// Restricts `u` to the line `base + t·direction` and evaluates the
/// C-convexity inequality at `t0` in both forms.
///
/// Derivatives are Richardson-extrapolated from the steps `h` and `h/2`.
pub fn cconvexity_check(
    u: &dyn ScalarField2C,
    base: &SymmetrisedPoint,
    direction: [Complex64; 2],
    t0: Complex64,
    h: f64,
) -> Result<ConvexityReport> {
    let dir = unit_direction(direction)?;
    let (jet, gap) = wirtinger_jet_richardson(restricted(u, base, dir), t0, h)?;
    let mut r = ConvexityReport::from_jet(base, dir, t0, h, &jet);
    r.richardson_gap = gap;
    Ok(r)
}

/// C-convexity check of the pointwise supremum of `fields`.
///
/// Where the active member changes inside the stencil the supremum is not
/// `C¹`; the report then falls back to the member active at `t0` and sets
/// `nonsmooth`.
pub fn sup_family_check(
    fields: &[&dyn ScalarField2C],
    base: &SymmetrisedPoint,
    direction: [Complex64; 2],
    t0: Complex64,
    h: f64,
) -> Result<ConvexityReport> {
    let dir = unit_direction(direction)?;
    let sup = SupField::new(fields.to_vec());
    let at = |t: Complex64| sup.eval_offset_with_index(base.s, base.p, t * dir[0], t * dir[1]);
    let (_, active) = at(t0).map_err(|e| GeomError::EvaluationFailure {
        at: t0,
        detail: e.to_string(),
    })?;
    let mut uniform = true;
    for (dx, dy) in [(1., 0.), (-1., 0.), (0., 1.), (0., -1.), (1., 1.), (1., -1.), (-1., 1.), (-1., -1.)] {
        let t = t0 + Complex64::new(dx * h, dy * h);
        let (_, idx) = at(t).map_err(|e| GeomError::EvaluationFailure {
            at: t,
            detail: e.to_string(),
        })?;
        uniform &= idx == active;
    }
    if uniform {
        cconvexity_check(&sup, base, dir, t0, h)
    } else {
        let mut r = cconvexity_check(fields[active], base, dir, t0, h)?;
        r.nonsmooth = true;
        Ok(r)
    }
}

/// Largest `|u_{zz̄}|` over random points of `G₂` and random complex lines.
///
/// Points come from roots drawn uniformly in the disc of radius 0.8; the
/// step is 1e-4. Points where `u` fails to evaluate are skipped.
pub fn pluriharmonic_defect(u: &dyn ScalarField2C, samples: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let q = random_g2_point(&mut rng, 0.8);
        let dir = random_unit_vector2(&mut rng);
        let t0 = Complex64::new(0.0, 0.0);
        if let Ok(r) = cconvexity_check(u, &q, dir, t0, 1e-4) {
            worst = worst.max(r.lhs.abs());
        }
    }
    worst
}
