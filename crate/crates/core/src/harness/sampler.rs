//! Random points of `P`, its boundary strata, `G₂` and the parameter spaces.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Open01, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::automorphisms::PentaAutomorphism;
use crate::complexalg::{operator_norm, solve_quadratic, BlaschkeProduct, Matrix2, MoebiusParams};
use crate::domains::{bound3, boundary_classify, phi, pi_map, BoundaryClass, PentaPoint, SymmetrisedPoint, DEFAULT_TOL};
use crate::error::{GeomError, Result};

/// Rejection sampling gives up once this many draws accept under 0.1%.
pub const REJECTION_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplerStrategy {
    /// `π(z)` for a Gaussian matrix rescaled to a uniform operator norm.
    ContractionPushforward,
    /// Uniform in `{|a| ≤ 1.01} × {|s| ≤ 2} × {|p| ≤ 1}`, interior points kept.
    RejectionInBox,
    /// `(s, p) ∈ G₂` and `|a| = e^{−φ(s,p)/2}`.
    BoundaryPart1,
    /// One unimodular root and `|a|` below the criterion bound.
    BoundaryPart2,
}

impl SamplerStrategy {
    pub const ALL: [SamplerStrategy; 4] = [
        SamplerStrategy::ContractionPushforward,
        SamplerStrategy::RejectionInBox,
        SamplerStrategy::BoundaryPart1,
        SamplerStrategy::BoundaryPart2,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SamplerStrategy::ContractionPushforward => "contraction-pushforward",
            SamplerStrategy::RejectionInBox => "rejection-in-box",
            SamplerStrategy::BoundaryPart1 => "boundary-part1",
            SamplerStrategy::BoundaryPart2 => "boundary-part2",
        }
    }
}

impl fmt::Display for SamplerStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SamplerStrategy {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| GeomError::InvalidParams(format!("unknown sampler strategy '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub strategy: SamplerStrategy,
    pub count: usize,
    pub seed: u64,
    /// Operator-norm cap for the pushforward, root-radius cap for the
    /// boundary strategies. Defaults to 1 and 0.95.
    pub radius_cap: Option<f64>,
}

impl SamplerConfig {
    pub fn new(strategy: SamplerStrategy, count: usize, seed: u64) -> Self {
        Self {
            strategy,
            count,
            seed,
            radius_cap: None,
        }
    }
}

pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Uniform on the open disc of the given radius.
pub fn random_disc_point<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Complex64 {
    let u: f64 = rng.sample(Open01);
    let theta = rng.random::<f64>() * TAU;
    Complex64::from_polar(radius * u.sqrt(), theta)
}

pub fn random_unimodular<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, rng.random::<f64>() * TAU)
}

/// A Gaussian matrix rescaled so its operator norm is uniform in `(0, cap)`.
pub fn random_contraction<R: Rng + ?Sized>(rng: &mut R, cap: f64) -> Matrix2 {
    loop {
        let z = Matrix2::new(complex_normal(rng), complex_normal(rng), complex_normal(rng), complex_normal(rng));
        let norm = operator_norm(&z);
        if norm > 1e-12 {
            let r: f64 = rng.sample(Open01);
            return z.scale(Complex64::new(cap * r / norm, 0.0));
        }
    }
}

/// `(λ₁ + λ₂, λ₁λ₂)` with roots uniform in the disc of radius `root_radius`.
pub fn random_g2_point<R: Rng + ?Sized>(rng: &mut R, root_radius: f64) -> SymmetrisedPoint {
    let l1 = random_disc_point(rng, root_radius);
    let l2 = random_disc_point(rng, root_radius);
    SymmetrisedPoint::from_roots(l1, l2)
}

/// A complex-Gaussian direction normalized to unit length.
pub fn random_unit_vector2<R: Rng + ?Sized>(rng: &mut R) -> [Complex64; 2] {
    loop {
        let v = [complex_normal(rng), complex_normal(rng)];
        let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        if n > 1e-12 {
            return [v[0] / n, v[1] / n];
        }
    }
}

pub fn random_moebius<R: Rng + ?Sized>(rng: &mut R, alpha_radius: f64) -> MoebiusParams {
    MoebiusParams {
        eta: random_unimodular(rng),
        alpha: random_disc_point(rng, alpha_radius),
    }
}

pub fn random_automorphism<R: Rng + ?Sized>(rng: &mut R, alpha_radius: f64) -> PentaAutomorphism {
    PentaAutomorphism {
        omega: random_unimodular(rng),
        nu: random_moebius(rng, alpha_radius),
    }
}

/// Degree `1..=max_degree`, zeros uniform in the disc of radius `zero_radius`.
pub fn random_blaschke<R: Rng + ?Sized>(rng: &mut R, max_degree: usize, zero_radius: f64) -> BlaschkeProduct {
    let degree = rng.random_range(1..=max_degree.max(1));
    BlaschkeProduct {
        prefactor: random_unimodular(rng),
        zeros: (0..degree).map(|_| random_disc_point(rng, zero_radius)).collect(),
    }
}

pub fn random_penta_point<R: Rng + ?Sized>(rng: &mut R, cap: f64) -> PentaPoint {
    pi_map(&random_contraction(rng, cap))
}

/// A point of `∂₁P` over a base with roots in the disc of radius `root_radius`.
pub fn random_part1_point<R: Rng + ?Sized>(rng: &mut R, root_radius: f64) -> PentaPoint {
    loop {
        let q = random_g2_point(rng, root_radius);
        let theta = rng.random::<f64>() * TAU;
        if let Ok(v) = phi(q.s, q.p) {
            return PentaPoint::new(Complex64::from_polar((-v / 2.0).exp(), theta), q.s, q.p);
        }
    }
}

/// A point of `∂₂P`: roots `e^{iθ}` and `λ₂` with `|λ₂| < root_radius`,
/// `|a|` uniform-area below 0.95 of the criterion bound.
pub fn random_part2_point<R: Rng + ?Sized>(rng: &mut R, root_radius: f64) -> PentaPoint {
    let l1 = random_unimodular(rng);
    let l2 = random_disc_point(rng, root_radius);
    let q = SymmetrisedPoint::from_roots(l1, l2);
    let b3 = bound3(&solve_quadratic(q.s, q.p));
    PentaPoint::new(random_disc_point(rng, 0.95 * b3), q.s, q.p)
}

/// Draws `cfg.count` points with the configured strategy.
pub fn sample_penta(cfg: &SamplerConfig) -> Result<Vec<PentaPoint>> {
    if cfg.count == 0 {
        return Err(GeomError::InvalidParams("count must be positive".into()));
    }
    let cap = cfg.radius_cap;
    if let Some(c) = cap {
        if !(c > 0.0 && c <= 1.0) {
            return Err(GeomError::InvalidParams(format!("radius cap {c} not in (0, 1]")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let points = match cfg.strategy {
        SamplerStrategy::ContractionPushforward => {
            let c = cap.unwrap_or(1.0);
            (0..cfg.count).map(|_| random_penta_point(&mut rng, c)).collect()
        }
        SamplerStrategy::BoundaryPart1 => {
            let c = cap.unwrap_or(0.95);
            (0..cfg.count).map(|_| random_part1_point(&mut rng, c)).collect()
        }
        SamplerStrategy::BoundaryPart2 => {
            let c = cap.unwrap_or(0.95);
            (0..cfg.count).map(|_| random_part2_point(&mut rng, c)).collect()
        }
        SamplerStrategy::RejectionInBox => {
            let mut out = Vec::with_capacity(cfg.count);
            let mut drawn = 0usize;
            while out.len() < cfg.count {
                if drawn >= REJECTION_BUDGET && out.len() * 1000 < drawn {
                    return Err(GeomError::Exhaustion {
                        accepted: out.len(),
                        drawn,
                    });
                }
                drawn += 1;
                let a = random_disc_point(&mut rng, 1.01);
                let s = Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
                let p = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                let x = PentaPoint::new(a, s, p);
                if boundary_classify(&x, DEFAULT_TOL) == BoundaryClass::Interior {
                    out.push(x);
                }
            }
            out
        }
    };
    Ok(points)
}
