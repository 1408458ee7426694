//! Named property suites.
//!
//! Every suite shards its sample loop into [`SHARDS`] pieces. Shard `k`
//! draws from ChaCha8 seeded with the master seed on stream `k`, and the
//! shard results are merged in shard order, so a report depends only on
//! (suite, seed, config) and not on the thread count.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::report::SuiteReport;
use super::sampler::{
    random_automorphism, random_blaschke, random_disc_point, random_g2_point, random_part1_point, random_part2_point,
    random_penta_point, random_unimodular, random_unit_vector2,
};
use crate::automorphisms::{auto_apply, auto_compose, auto_inverse, orbit_of_origin, symmetrize_blaschke};
use crate::complexalg::solve_quadratic;
use crate::convexity::{
    cconvexity_check, complex_tangent_basis, foliation_disc_part1, foliation_disc_part2, levi_form,
    linconvex_witness, pluriharmonic_defect, sup_family_check, witness_verify, LogAffineField, PhiField,
    ScalarField2C, SupField,
};
use crate::domains::{
    bound2, bound3, boundary_classify, g2_contains, g2_value, penta_contains, phi, phi_z_field, quasi_action,
    BoundaryClass, Criterion, PentaPoint, PhiZField, SymmetrisedPoint, Verdict, WeightVector, DEFAULT_TOL,
};
use crate::error::{GeomError, Result};

pub const SHARDS: usize = 16;
pub const THREADS_ENV: &str = "PENTA_GEOM_THREADS";

/// Finite-difference step shared by the convexity and Levi suites.
pub const FD_STEP: f64 = 1e-4;
pub const CCONVEX_TOL: f64 = 1e-6;
pub const SUP_FAMILY_TOL: f64 = 1e-4;
pub const ENVELOPE_TOL: f64 = 0.05;
pub const DEFECT_THRESHOLD: f64 = 1e-3;
pub const PLURIHARMONIC_TOL: f64 = 1e-6;
pub const DISC_DEFECT_TOL: f64 = 1e-8;
pub const LEVI_FLAT_TOL: f64 = 1e-5;
pub const LEVI_NONFLAT_THRESHOLD: f64 = 1e-4;
pub const WITNESS_SAMPLES: usize = 10_000;

/// `z` values for the φ^z suite.
pub fn phiz_values() -> [Complex64; 8] {
    [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.3, 0.0),
        Complex64::new(0.0, 0.5),
        Complex64::new(-0.7, 0.0),
        Complex64::new(0.4, 0.4),
        Complex64::new(-0.2, -0.6),
        Complex64::new(0.85, 0.0),
        Complex64::from_polar(0.6, 2.0),
    ]
}

/// The origin plus `count` points on each circle `|z| = r`, alternate
/// circles rotated by half a step.
pub fn z_rings(rings: &[(f64, usize)]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0)];
    for (k, &(r, count)) in rings.iter().enumerate() {
        for j in 0..count {
            let theta = std::f64::consts::TAU * (j as f64 + 0.5 * (k % 2) as f64) / count as f64;
            out.push(Complex64::from_polar(r, theta));
        }
    }
    out
}

/// 32 values of `z`. For roots in `|λ| ≤ ½` the maximizing `z` stays in
/// `|z| < ½`, so the rings are placed there.
pub fn envelope_grid_coarse() -> Vec<Complex64> {
    z_rings(&[(0.16, 5), (0.32, 11), (0.46, 15)])
}

/// 127 values of `z` on six rings up to `|z| = 0.48`.
pub fn envelope_grid_fine() -> Vec<Complex64> {
    let rings: Vec<(f64, usize)> = (1..=6).map(|k| (0.08 * k as f64, 6 * k)).collect();
    z_rings(&rings)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuiteId {
    CriteriaEquivalence,
    ImageOfBall,
    BalancedActions,
    AutomorphismGroup,
    OrbitOfZero,
    BidiscSlice,
    PhiCconvex,
    PhizCconvex,
    SupFamily,
    NotPluriharmonic,
    Part1Foliation,
    Part2LeviFlat,
    Part1NotFlat,
    LinearConvexity,
    BlaschkeSymmetrization,
}

impl SuiteId {
    pub const ALL: [SuiteId; 15] = [
        SuiteId::CriteriaEquivalence,
        SuiteId::ImageOfBall,
        SuiteId::BalancedActions,
        SuiteId::AutomorphismGroup,
        SuiteId::OrbitOfZero,
        SuiteId::BidiscSlice,
        SuiteId::PhiCconvex,
        SuiteId::PhizCconvex,
        SuiteId::SupFamily,
        SuiteId::NotPluriharmonic,
        SuiteId::Part1Foliation,
        SuiteId::Part2LeviFlat,
        SuiteId::Part1NotFlat,
        SuiteId::LinearConvexity,
        SuiteId::BlaschkeSymmetrization,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SuiteId::CriteriaEquivalence => "criteria-equivalence",
            SuiteId::ImageOfBall => "image-of-ball",
            SuiteId::BalancedActions => "balanced-actions",
            SuiteId::AutomorphismGroup => "automorphism-group",
            SuiteId::OrbitOfZero => "orbit-of-zero",
            SuiteId::BidiscSlice => "bidisc-slice",
            SuiteId::PhiCconvex => "phi-cconvex",
            SuiteId::PhizCconvex => "phiz-cconvex",
            SuiteId::SupFamily => "sup-family",
            SuiteId::NotPluriharmonic => "not-pluriharmonic",
            SuiteId::Part1Foliation => "part1-foliation",
            SuiteId::Part2LeviFlat => "part2-levi-flat",
            SuiteId::Part1NotFlat => "part1-not-flat",
            SuiteId::LinearConvexity => "linear-convexity",
            SuiteId::BlaschkeSymmetrization => "blaschke-symmetrization",
        }
    }

    pub fn claim(&self) -> &'static str {
        match self {
            SuiteId::CriteriaEquivalence => {
                "membership criteria (beta bound, root bound, sup |Psi_z| < 1) are equivalent on C x G2"
            }
            SuiteId::ImageOfBall => "pi maps the open operator-norm ball into P",
            SuiteId::BalancedActions => "P is (k,1,2)-balanced for k = 0, 1, 2",
            SuiteId::AutomorphismGroup => "f_{omega,nu} maps P into P, with inverse and composition laws",
            SuiteId::OrbitOfZero => "the orbit of the origin lies in {0} x royal variety",
            SuiteId::BidiscSlice => "P meets {s = 0} in D x {0} x D",
            SuiteId::PhiCconvex => "phi is C-convex",
            SuiteId::PhizCconvex => "each phi^z is C-convex",
            SuiteId::SupFamily => "the upper envelope of phi^z approximates phi and stays C-convex",
            SuiteId::NotPluriharmonic => "phi is not pluriharmonic",
            SuiteId::Part1Foliation => "the part-1 boundary is foliated by analytic discs",
            SuiteId::Part2LeviFlat => "the part-2 boundary is Levi flat",
            SuiteId::Part1NotFlat => "the part-1 boundary is not Levi flat",
            SuiteId::LinearConvexity => "P is linearly convex",
            SuiteId::BlaschkeSymmetrization => {
                "symmetrized Blaschke products preserve G2 and its Shilov boundary"
            }
        }
    }

    /// Sample count used when the config does not set one.
    pub fn default_n(&self) -> usize {
        match self {
            SuiteId::CriteriaEquivalence | SuiteId::ImageOfBall | SuiteId::AutomorphismGroup => 10_000,
            SuiteId::BalancedActions | SuiteId::OrbitOfZero | SuiteId::BlaschkeSymmetrization => 1_000,
            SuiteId::BidiscSlice => 50,
            SuiteId::PhiCconvex | SuiteId::PhizCconvex => 500,
            SuiteId::NotPluriharmonic => 200,
            SuiteId::SupFamily
            | SuiteId::Part1Foliation
            | SuiteId::Part2LeviFlat
            | SuiteId::Part1NotFlat
            | SuiteId::LinearConvexity => 100,
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| GeomError::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub n: Option<usize>,
    /// Boundary band for membership verdicts.
    pub tol: f64,
    /// Worker cap; falls back to `PENTA_GEOM_THREADS`, then to rayon's default.
    pub threads: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            n: None,
            tol: DEFAULT_TOL,
            threads: None,
        }
    }
}

impl SuiteConfig {
    pub fn with_n(n: usize) -> Self {
        Self {
            n: Some(n),
            ..Self::default()
        }
    }
}

/// Per-shard accumulator.
#[derive(Debug, Default, Clone)]
struct Tally {
    checks: u64,
    failures: u64,
    counts: BTreeMap<String, u64>,
    max: BTreeMap<String, f64>,
    min: BTreeMap<String, f64>,
    first_failure: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    /// An executed measurement that is judged in aggregate, not by itself.
    fn observe(&mut self) {
        self.checks += 1;
    }

    fn fail(&mut self, detail: String) {
        self.check(false, || detail);
    }

    fn count(&mut self, key: &str) {
        *self.counts.entry(key.to_string()).or_insert(0) += 1;
    }

    // NaN propagates as a failure through the checks, not through the extrema
    fn max(&mut self, key: &str, v: f64) {
        let e = self.max.entry(key.to_string()).or_insert(f64::NEG_INFINITY);
        *e = e.max(v);
    }

    fn min(&mut self, key: &str, v: f64) {
        let e = self.min.entry(key.to_string()).or_insert(f64::INFINITY);
        *e = e.min(v);
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checks += other.checks;
        self.failures += other.failures;
        for (k, v) in other.counts {
            *self.counts.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.max {
            self.max(&k, v);
        }
        for (k, v) in other.min {
            self.min(&k, v);
        }
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
        self
    }

    fn into_report(self, n: u64, report: &mut SuiteReport) {
        for (k, v) in &self.counts {
            report.count(k, *v);
        }
        for (k, v) in self.max.iter().chain(self.min.iter()) {
            report.worst(k, *v);
        }
        report.count("checks", self.checks);
        report.count("failures", self.failures);
        if let Some(f) = &self.first_failure {
            report.note(format!("first failure: {f}"));
        }
        report.finish(n, self.checks > 0 && self.failures == 0);
    }
}

fn thread_count(cfg: &SuiteConfig) -> usize {
    cfg.threads
        .or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse().ok()))
        .unwrap_or(0)
}

pub fn shard_rng(seed: u64, shard: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard as u64);
    rng
}

/// Splits `0..n` into [`SHARDS`] contiguous ranges and runs `body(rng, index)`
/// for every index, each shard with its own stream.
fn run_sharded<F>(cfg: &SuiteConfig, n: usize, seed: u64, body: F) -> Result<Tally>
where
    F: Fn(&mut ChaCha8Rng, usize, &mut Tally) + Sync,
{
    let ranges: Vec<(usize, usize)> = (0..SHARDS)
        .map(|k| (k * n / SHARDS, (k + 1) * n / SHARDS))
        .collect();
    let work = || {
        ranges
            .par_iter()
            .enumerate()
            .map(|(shard, &(lo, hi))| {
                let mut rng = shard_rng(seed, shard);
                let mut tally = Tally::default();
                for i in lo..hi {
                    body(&mut rng, i, &mut tally);
                }
                tally
            })
            .collect::<Vec<_>>()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count(cfg))
        .build()
        .map_err(|e| GeomError::InvalidParams(format!("thread pool: {e}")))?;
    let tallies = pool.install(work);
    Ok(tallies.into_iter().fold(Tally::default(), Tally::merge))
}

pub fn run_suite(name: &str, cfg: &SuiteConfig, seed: u64) -> Result<SuiteReport> {
    run_suite_id(name.parse()?, cfg, seed)
}

pub fn run_suite_id(id: SuiteId, cfg: &SuiteConfig, seed: u64) -> Result<SuiteReport> {
    if !(cfg.tol >= 0.0) {
        return Err(GeomError::InvalidParams(format!("tolerance {} must be nonnegative", cfg.tol)));
    }
    let n = cfg.n.unwrap_or_else(|| id.default_n());
    if n == 0 {
        return Err(GeomError::InvalidParams("n must be positive".into()));
    }
    let start = Instant::now();
    let mut report = SuiteReport::new(id.name(), id.claim(), seed);
    report.tolerance("band", cfg.tol);
    report.count("samples", n as u64);
    let tally = match id {
        SuiteId::CriteriaEquivalence => criteria_equivalence(cfg, n, seed, &mut report)?,
        SuiteId::ImageOfBall => image_of_ball(cfg, n, seed)?,
        SuiteId::BalancedActions => balanced_actions(cfg, n, seed)?,
        SuiteId::AutomorphismGroup => automorphism_group(cfg, n, seed, &mut report)?,
        SuiteId::OrbitOfZero => orbit_of_zero(cfg, n, seed, &mut report)?,
        SuiteId::BidiscSlice => bidisc_slice(cfg, n, seed)?,
        SuiteId::PhiCconvex => phi_cconvex(cfg, n, seed, &mut report)?,
        SuiteId::PhizCconvex => phiz_cconvex(cfg, n, seed, &mut report)?,
        SuiteId::SupFamily => sup_family(cfg, n, seed, &mut report)?,
        SuiteId::NotPluriharmonic => not_pluriharmonic(n, seed, &mut report),
        SuiteId::Part1Foliation => part1_foliation(cfg, n, seed, &mut report)?,
        SuiteId::Part2LeviFlat => part2_levi_flat(cfg, n, seed, &mut report)?,
        SuiteId::Part1NotFlat => part1_not_flat(cfg, n, seed, &mut report)?,
        SuiteId::LinearConvexity => linear_convexity(cfg, n, seed, &mut report)?,
        SuiteId::BlaschkeSymmetrization => blaschke_symmetrization(cfg, n, seed, &mut report)?,
    };
    tally.into_report(n as u64, &mut report);
    report.wall_clock = start.elapsed();
    Ok(report)
}

fn criteria_equivalence(cfg: &SuiteConfig, n: usize, seed: u64, report: &mut SuiteReport) -> Result<Tally> {
    const MARGIN: f64 = 1e-6;
    const SUP_TOL: f64 = 1e-8;
    report.tolerance("margin", MARGIN).tolerance("sup_psi", SUP_TOL);
    let tol = cfg.tol;
    run_sharded(cfg, n, seed, |rng, _, t| {
        let q = random_g2_point(rng, 1.0);
        let b3 = bound3(&solve_quadratic(q.s, q.p));
        let modulus = b3 * 2.0 * rng.random::<f64>();
        let x = PentaPoint::new(Complex64::from_polar(modulus, rng.random::<f64>() * std::f64::consts::TAU), q.s, q.p);
        if 1.0 - g2_value(&q) <= MARGIN || (b3 - modulus).abs() <= MARGIN {
            t.count("skipped-near-boundary");
            return;
        }
        let r = match penta_contains(&x, Criterion::All, tol) {
            Ok(r) => r,
            Err(e) => return t.fail(format!("{x:?}: {e}")),
        };
        let v = r.verdicts;
        let agree = v.c2 == v.c3 && v.c3 == v.c4 && v.c3 != Some(Verdict::BoundaryBand);
        t.count(if r.verdict == Verdict::Inside { "inside" } else { "outside" });
        t.check(agree, || format!("{x:?}: verdicts {v:?}"));
        let expected = bound2(x.s, x.p).map(|b| modulus / b).unwrap_or(f64::NAN);
        let err = (r.sup_psi.unwrap_or(f64::NAN) - expected).abs();
        t.max("max_sup_psi_error", err);
        t.check(err < SUP_TOL, || format!("{x:?}: sup_psi error {err:e}"));
    })
}

fn image_of_ball(cfg: &SuiteConfig, n: usize, seed: u64) -> Result<Tally> {
    let tol = cfg.tol;
    run_sharded(cfg, n, seed, |rng, _, t| {
        let x = random_penta_point(rng, 1.0);
        match penta_contains(&x, Criterion::All, tol) {
            Ok(r) => {
                t.count(if r.verdict == Verdict::Inside { "inside" } else { "band" });
                t.min("min_margin", r.margin);
                t.check(r.verdict != Verdict::Outside, || format!("{x:?} reported outside"));
            }
            Err(e) => t.fail(format!("{x:?}: {e}")),
        }
    })
}

fn membership_c3(x: &PentaPoint, tol: f64) -> Verdict {
    penta_contains(x, Criterion::C3, tol).map(|r| r.verdict).unwrap_or(Verdict::Outside)
}

fn balanced_actions(cfg: &SuiteConfig, n: usize, seed: u64) -> Result<Tally> {
    let tol = cfg.tol;
    run_sharded(cfg, n, seed, |rng, _, t| {
        let x = random_penta_point(rng, 1.0);
        for k in 0..3u32 {
            for j in 0..10 {
                let lam = if j == 0 { random_unimodular(rng) } else { random_disc_point(rng, 1.0) };
                let y = quasi_action(WeightVector::new(k, 1, 2), lam, &x);
                t.check(membership_c3(&y, tol) != Verdict::Outside, || {
                    format!("k = {k}, lambda = {lam}: {x:?} -> {y:?}")
                });
            }
        }
    })
}

fn automorphism_group(cfg: &SuiteConfig, n: usize, seed: u64, report: &mut SuiteReport) -> Result<Tally> {
    const ROUND_TRIP: f64 = 1e-10;
    const COMPOSE: f64 = 1e-9;
    report.tolerance("round_trip", ROUND_TRIP).tolerance("composition", COMPOSE);
    let tol = cfg.tol;
    run_sharded(cfg, n, seed, |rng, _, t| {
        let f = random_automorphism(rng, 0.9);
        let g = random_automorphism(rng, 0.9);
        let x = random_penta_point(rng, 1.0);
        let outcome = (|| -> Result<(PentaPoint, f64, f64)> {
            let y = auto_apply(&f, &x)?;
            let back = auto_apply(&auto_inverse(&f), &y)?;
            let direct = auto_apply(&auto_compose(&f, &g), &x)?;
            let stepwise = auto_apply(&f, &auto_apply(&g, &x)?)?;
            Ok((y, back.dist(&x), direct.dist(&stepwise)))
        })();
        match outcome {
            Ok((y, rt, comp)) => {
                t.max("max_round_trip", rt);
                t.max("max_composition", comp);
                t.check(membership_c3(&y, tol) != Verdict::Outside, || format!("{f:?} maps {x:?} out"));
                t.check(rt < ROUND_TRIP, || format!("{f:?} at {x:?}: round trip {rt:e}"));
                t.check(comp < COMPOSE, || format!("{f:?}, {g:?} at {x:?}: composition {comp:e}"));
            }
            Err(e) => t.fail(format!("{f:?} at {x:?}: {e}")),
        }
    })
}

fn orbit_of_zero(cfg: &SuiteConfig, n: usize, seed: u64, report: &mut SuiteReport) -> Result<Tally> {
    const ROYAL: f64 = 1e-12;
    report.tolerance("royal_residual", ROYAL);
    run_sharded(cfg, n, seed, |rng, _, t| {
        let f = random_automorphism(rng, 0.99);
        let o = orbit_of_origin(&f);
        let royal = (o.s * o.s - 4.0 * o.p).norm();
        t.max("max_abs_a", o.a.norm());
        t.max("max_royal_residual", royal);
        t.check(o.a.norm() == 0.0, || format!("{f:?}: a = {}", o.a));
        t.check(royal < ROYAL, || format!("{f:?}: s^2 - 4p = {royal:e}"));
        match auto_apply(&f, &PentaPoint::ORIGIN) {
            Ok(y) => {
                t.max("max_abs_a", y.a.norm());
                t.max("max_orbit_vs_apply", y.dist(&o));
                t.check(y.a.norm() == 0.0 && y.dist(&o) < ROYAL, || format!("{f:?}: f(0) = {y:?}"));
            }
            Err(e) => t.fail(format!("{f:?}: {e}")),
        }
    })
}

fn bidisc_slice(cfg: &SuiteConfig, n: usize, seed: u64) -> Result<Tally> {
    const PHASES: usize = 4;
    const REACH: f64 = 1.2;
    let tol = cfg.tol;
    let denom = (n.max(2) - 1) as f64;
    run_sharded(cfg, n * n, seed, |rng, cell, t| {
        let (ra, rp) = (REACH * (cell / n) as f64 / denom, REACH * (cell % n) as f64 / denom);
        for _ in 0..PHASES {
            let a = Complex64::from_polar(ra, rng.random::<f64>() * std::f64::consts::TAU);
            let p = Complex64::from_polar(rp, rng.random::<f64>() * std::f64::consts::TAU);
            if (ra - 1.0).abs() <= tol || (rp - 1.0).abs() <= tol {
                t.count("skipped-band");
                continue;
            }
            let x = PentaPoint::new(a, Complex64::new(0.0, 0.0), p);
            let expected = if ra < 1.0 && rp < 1.0 { Verdict::Inside } else { Verdict::Outside };
            match penta_contains(&x, Criterion::All, tol) {
                Ok(r) => t.check(r.verdict == expected, || format!("{x:?}: {} vs {expected}", r.verdict)),
                Err(e) => t.fail(format!("{x:?}: {e}")),
            }
        }
    })
}

/// Base point with `1 − (|s − s̄p| + |p|²) ≥ margin`.
fn g2_point_away_from_boundary<R: Rng + ?Sized>(rng: &mut R, margin: f64) -> SymmetrisedPoint {
    loop {
        let q = random_g2_point(rng, 1.0);
        if 1.0 - g2_value(&q) >= margin {
            return q;
        }
    }
}

fn cconvex_run(
    cfg: &SuiteConfig,
    n: usize,
    seed: u64,
    fields: &[&dyn ScalarField2C],
) -> Result<Tally> {
    const MARGIN: f64 = 1e-2;
    run_sharded(cfg, n, seed, |rng, _, t| {
        let q = g2_point_away_from_boundary(rng, MARGIN);
        let dir = random_unit_vector2(rng);
        for u in fields {
            match cconvexity_check(*u, &q, dir, Complex64::new(0.0, 0.0), FD_STEP) {
                Ok(r) => {
                    t.min("min_margin_squared", r.margin_squared);
                    t.min("min_margin_standard", r.margin_standard);
                    t.max("max_rhs_standard", r.rhs_standard);
                    if r.margin_standard < -CCONVEX_TOL {
                        t.count("standard-form-violations");
                    }
                    if r.margin_squared < -CCONVEX_TOL {
                        t.count("squared-form-violations");
                    }
                    t.check(r.margin_squared >= -CCONVEX_TOL, || {
                        format!("{} at {q:?} along {dir:?}: margin {:e}", u.name(), r.margin_squared)
                    });
                }
                Err(e) => t.fail(format!("{} at {q:?}: {e}", u.name())),
            }
        }
    })
}

fn cconvex_tolerances(report: &mut SuiteReport) {
    report
        .tolerance("margin", CCONVEX_TOL)
        .tolerance("h", FD_STEP)
        .tolerance("distance_to_boundary", 1e-2);
    report.note("asserted: u_zz̄ >= |u_zz - u_z^2|^2; recorded: u_zz̄ >= |u_zz - u_z^2|");
}

fn phi_cconvex(cfg: &SuiteConfig, n: usize, seed: u64, report: &mut SuiteReport) -> Result<Tally> {
    cconvex_tolerances(report);
    cconvex_run(cfg, n, seed, &[&PhiField])
}

fn phiz_cconvex(cfg: &SuiteConfig, n: usize, seed: u64, report: &mut SuiteReport) -> Result<Tally> {
    cconvex_tolerances(report);
    let fields: Vec<PhiZField> = phiz_values().iter().map(|&z| phi_z_field(z)).collect::<Result<_>>()?;
    let refs: Vec<&dyn ScalarField2C> = fields.iter().map(|f| f as &dyn ScalarField2C).collect();
    cconvex_run(cfg, n, seed, &refs)
}

fn sup_family(cfg: &SuiteConfig, n: usize, seed: u64, report: &mut SuiteReport) -> Result<Tally> {
    report
        .tolerance("margin", SUP_FAMILY_TOL)
        .tolerance("envelope_gap", ENVELOPE_TOL)
        .tolerance("h", FD_STEP);
    let coarse: Vec<PhiZField> = envelope_grid_coarse().into_iter().map(phi_z_field).collect::<Result<_>>()?;
    let fine: Vec<PhiZField> = envelope_grid_fine().into_iter().map(phi_z_field).collect::<Result<_>>()?;
    let coarse_refs: Vec<&dyn ScalarField2C> = coarse.iter().map(|f| f as &dyn ScalarField2C).collect();
    let fine_refs: Vec<&dyn ScalarField2C> = fine.iter().map(|f| f as &dyn ScalarField2C).collect();
    let coarse_sup = SupField::new(coarse_refs.clone());
    let fine_sup = SupField::new(fine_refs);
    report.note(format!(
        "envelope grids: {} and {} values of z; envelope points have roots in |lambda| <= 0.5",
        coarse.len(),
        fine.len()
    ));
    run_sharded(cfg, n, seed, |rng, _, t| {
        // envelope: each φ^z ≤ φ, so the gap is nonnegative
        let q = random_g2_point(rng, 0.5);
        match (phi(q.s, q.p), coarse_sup.eval(q.s, q.p), fine_sup.eval(q.s, q.p)) {
            (Ok(v), Ok(c), Ok(f)) => {
                t.max("max_envelope_gap_32", v - c);
                t.max("max_envelope_gap_127", v - f);
                t.check(v - c <= ENVELOPE_TOL && v - c >= -1e-12, || format!("{q:?}: gap {}", v - c));
            }
            _ => t.fail(format!("{q:?}: envelope evaluation failed")),
        }
        let q = g2_point_away_from_boundary(rng, 1e-2);
        let dir = random_unit_vector2(rng);
        match sup_family_check(&coarse_refs, &q, dir, Complex64::new(0.0, 0.0), FD_STEP) {
            Ok(r) => {
                if r.nonsmooth {
                    t.count("nonsmooth-lines");
                }
                t.min("min_margin_squared", r.margin_squared);
                t.min("min_margin_standard", r.margin_standard);
                t.check(r.margin_squared >= -SUP_FAMILY_TOL, || format!("{q:?} along {dir:?}: {:e}", r.margin_squared));
            }
            Err(e) => t.fail(format!("{q:?}: {e}")),
        }
    })
}

fn not_pluriharmonic(n: usize, seed: u64, report: &mut SuiteReport) -> Tally {
    report
        .tolerance("defect_threshold", DEFECT_THRESHOLD)
        .tolerance("control", PLURIHARMONIC_TOL)
        .tolerance("h", FD_STEP);
    let control = LogAffineField {
        c0: Complex64::new(1.0, 0.0),
        c1: Complex64::new(-0.25, 0.0),
        c2: Complex64::new(0.0, 0.0),
    };
    let d_phi = pluriharmonic_defect(&PhiField, n, seed);
    let d_control = pluriharmonic_defect(&control, n, seed);
    let mut t = Tally::default();
    t.max("phi_defect", d_phi);
    t.max("control_defect", d_control);
    t.check(d_phi > DEFECT_THRESHOLD, || format!("phi defect {d_phi:e}"));
    t.check(d_control < PLURIHARMONIC_TOL, || format!("control defect {d_control:e}"));
    t
}

fn part1_foliation(cfg: &SuiteConfig, n: usize, seed: u64, report: &mut SuiteReport) -> Result<Tally> {
    const DISC_SAMPLES: usize = 64;
    report.tolerance("defect", DISC_DEFECT_TOL);
    run_sharded(cfg, n, seed, |rng, _, t| {
        let x = random_part1_point(rng, 0.95);
        let disc = match foliation_disc_part1(&x) {
            Ok(d) => d,
            Err(e) => return t.fail(format!("{x:?}: {e}")),
        };
        t.max("max_center_offset", disc.eval(disc.center).dist(&x));
        for _ in 0..DISC_SAMPLES {
            let tt = random_disc_point(rng, 0.95);
            let y = disc.eval(tt);
            let defect = phi(y.s, y.p).map(|v| (y.a.norm_sqr() - (-v).exp()).abs()).unwrap_or(f64::NAN);
            t.max("max_defect", defect);
            t.check(defect < DISC_DEFECT_TOL, || format!("{x:?} at t = {tt}: defect {defect:e}"));
        }
    })
}

fn part2_levi_flat(cfg: &SuiteConfig, n: usize, seed: u64, report: &mut SuiteReport) -> Result<Tally> {
    report.tolerance("levi_flat", LEVI_FLAT_TOL).tolerance("h", FD_STEP);
    let tol = cfg.tol;
    run_sharded(cfg, n, seed, |rng, _, t| {
        let x = random_part2_point(rng, 0.95);
        let class = boundary_classify(&x, tol);
        if class != BoundaryClass::Part2 {
            return t.fail(format!("{x:?} classified {class:?}"));
        }
        let chart = match foliation_disc_part2(&x) {
            Ok(c) => c,
            Err(e) => return t.fail(format!("{x:?}: {e}")),
        };
        for v in chart.directions() {
            match levi_form(&x, &v, FD_STEP) {
                Ok(l) => {
                    t.max("max_abs_levi", l.value.abs());
                    t.max("max_gradient_residual", l.gradient_residual);
                    t.check(l.value.abs() < LEVI_FLAT_TOL, || format!("{x:?} along {v:?}: {:e}", l.value));
                }
                Err(e) => t.fail(format!("{x:?}: {e}")),
            }
        }
    })
}

fn part1_not_flat(cfg: &SuiteConfig, n: usize, seed: u64, report: &mut SuiteReport) -> Result<Tally> {
    report.tolerance("levi_nonflat", LEVI_NONFLAT_THRESHOLD).tolerance("h", FD_STEP);
    let needed = (99 * n).div_ceil(100) as u64;
    report.tolerance("required_fraction", 0.99);
    // one value per point, in index order, for the calibration log
    let values: std::sync::Mutex<Vec<(usize, f64, f64)>> = std::sync::Mutex::new(Vec::with_capacity(n));
    let mut tally = run_sharded(cfg, n, seed, |rng, i, t| {
        let x = random_part1_point(rng, 0.95);
        let basis = match complex_tangent_basis(&x) {
            Ok(b) => b,
            Err(e) => {
                t.count("errors");
                return t.fail(format!("{x:?}: {e}"));
            }
        };
        let mut best = (0.0f64, 0.0f64);
        for v in basis {
            let coarse = levi_form(&x, &v, FD_STEP);
            let fine = levi_form(&x, &v, FD_STEP / 2.0);
            match (coarse, fine) {
                (Ok(c), Ok(f)) => {
                    t.max("max_gradient_residual", c.gradient_residual);
                    if c.value.abs() > best.0 {
                        best = (c.value.abs(), (c.value - f.value).abs());
                    }
                }
                (Err(e), _) | (_, Err(e)) => {
                    t.count("errors");
                    return t.fail(format!("{x:?}: {e}"));
                }
            }
        }
        t.observe();
        if best.0 > LEVI_NONFLAT_THRESHOLD {
            t.count("nonflat");
        }
        t.min("min_max_abs_levi", best.0);
        t.max("max_richardson_gap", best.1);
        values.lock().expect("calibration log").push((i, best.0, best.1));
    })?;
    let mut values = values.into_inner().expect("calibration log");
    values.sort_by_key(|v| v.0);
    let mut sorted: Vec<f64> = values.iter().map(|v| v.1).collect();
    sorted.sort_by(f64::total_cmp);
    if !sorted.is_empty() {
        let q = |f: f64| sorted[((sorted.len() - 1) as f64 * f).round() as usize];
        report.note(format!(
            "calibration: max |Levi| over tangent basis, quantiles 0/1/10/50%: {:.3e} {:.3e} {:.3e} {:.3e}; threshold {LEVI_NONFLAT_THRESHOLD:e}",
            q(0.0),
            q(0.01),
            q(0.1),
            q(0.5)
        ));
    }
    let nonflat = tally.counts.get("nonflat").copied().unwrap_or(0);
    let errors = tally.counts.get("errors").copied().unwrap_or(0);
    // the per-point threshold is a count criterion, not a per-check one
    tally.checks += 1;
    if nonflat < needed || errors > 0 {
        tally.failures += 1;
        tally.first_failure.get_or_insert(format!("{nonflat} of {n} points non-flat, {needed} needed"));
    }
    Ok(tally)
}

fn linear_convexity(cfg: &SuiteConfig, n: usize, seed: u64, report: &mut SuiteReport) -> Result<Tally> {
    report
        .tolerance("residual", 1e-10)
        .tolerance("incidence", crate::convexity::INCIDENCE_TOL)
        .tolerance("verify_samples", WITNESS_SAMPLES as f64);
    let tol = cfg.tol;
    let half = n / 2;
    run_sharded(cfg, n, seed, |rng, i, t| {
        let x = if i < half {
            let q = random_g2_point(rng, 0.95);
            let b3 = bound3(&solve_quadratic(q.s, q.p));
            let modulus = b3 * (1.05 + rng.random::<f64>());
            PentaPoint::new(Complex64::from_polar(modulus, rng.random::<f64>() * std::f64::consts::TAU), q.s, q.p)
        } else {
            loop {
                let l1 = Complex64::from_polar(1.05 + rng.random::<f64>(), rng.random::<f64>() * std::f64::consts::TAU);
                let l2 = random_disc_point(rng, 1.5);
                let q = SymmetrisedPoint::from_roots(l1, l2);
                if g2_contains(&q, tol) == Verdict::Outside {
                    break PentaPoint::new(random_disc_point(rng, 1.5), q.s, q.p);
                }
            }
        };
        t.count(if i < half { "base-inside" } else { "base-outside" });
        let verify_seed: u64 = rng.random();
        let w = match linconvex_witness(&x, tol) {
            Ok(w) => w,
            Err(e) => return t.fail(format!("{x:?}: {e}")),
        };
        let residual = w.residual(&x);
        t.max("max_residual", residual);
        t.check(residual < 1e-10, || format!("{x:?}: residual {residual:e}"));
        t.count(match w {
            crate::convexity::HyperplaneWitness::ProductLine { .. } => "product-line",
            crate::convexity::HyperplaneWitness::PsiLevelSet { .. } => "psi-level-set",
        });
        match witness_verify(&w, WITNESS_SAMPLES, verify_seed) {
            Ok(v) => {
                t.min("min_sample_residual", v.min_residual);
                t.observe();
            }
            Err(e) => t.fail(format!("{x:?}: {e}")),
        }
    })
}

fn blaschke_symmetrization(cfg: &SuiteConfig, n: usize, seed: u64, report: &mut SuiteReport) -> Result<Tally> {
    const SHILOV: f64 = 1e-10;
    report.tolerance("shilov", SHILOV);
    let tol = cfg.tol;
    run_sharded(cfg, n, seed, |rng, _, t| {
        let b = random_blaschke(rng, 3, 0.9);
        let q = random_g2_point(rng, 0.999);
        match symmetrize_blaschke(&b, &q) {
            Ok(image) => t.check(g2_contains(&image, tol) == Verdict::Inside, || {
                format!("{b:?} maps {q:?} to {image:?}")
            }),
            Err(e) => t.fail(format!("{b:?} at {q:?}: {e}")),
        }
        // ∂_sG₂ = {|p| = 1, s = s̄p}
        let edge = SymmetrisedPoint::from_roots(random_unimodular(rng), random_unimodular(rng));
        match symmetrize_blaschke(&b, &edge) {
            Ok(image) => {
                let residual = (image.p.norm() - 1.0).abs().max((image.s - image.s.conj() * image.p).norm());
                t.max("max_shilov_residual", residual);
                t.check(residual < SHILOV, || format!("{b:?} maps {edge:?} to {image:?}"));
            }
            Err(e) => t.fail(format!("{b:?} at {edge:?}: {e}")),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip_and_unknown_is_an_error() {
        for id in SuiteId::ALL {
            assert_eq!(id.name().parse::<SuiteId>().unwrap(), id);
        }
        assert!(matches!(run_suite("nope", &SuiteConfig::default(), 1), Err(GeomError::UnknownSuite(_))));
    }

    #[test]
    fn orbit_suite_small() {
        let r = run_suite("orbit-of-zero", &SuiteConfig::with_n(50), 7).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.worst["max_abs_a"], 0.0);
    }

    #[test]
    fn thread_count_does_not_change_the_report() {
        let one = SuiteConfig {
            threads: Some(1),
            ..SuiteConfig::with_n(40)
        };
        let four = SuiteConfig {
            threads: Some(4),
            ..SuiteConfig::with_n(40)
        };
        let a = run_suite("automorphism-group", &one, 3).unwrap();
        let b = run_suite("automorphism-group", &four, 3).unwrap();
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    }
}
