use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::g2::{bound2, bound3, compute_beta, g2_contains, g2_value};
use super::psi::{sup_psi, OptimizerConfig};
use super::{PentaPoint, Verdict};
use crate::complexalg::solve_quadratic;
use crate::error::{GeomError, Result};

/// Which characterization of the pentablock to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    /// Hartogs radius through `β`.
    C2,
    /// Radius through the roots `λ₁, λ₂`.
    C3,
    /// `sup_z |Ψ_z| < 1`.
    C4,
    All,
}

impl FromStr for Criterion {
    type Err = GeomError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "c2" | "2" => Ok(Criterion::C2),
            "c3" | "3" => Ok(Criterion::C3),
            "c4" | "4" => Ok(Criterion::C4),
            "all" => Ok(Criterion::All),
            other => Err(GeomError::InvalidParams(format!("unknown criterion `{other}`"))),
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::C2 => "c2",
            Criterion::C3 => "c3",
            Criterion::C4 => "c4",
            Criterion::All => "all",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CriterionVerdicts {
    pub c2: Option<Verdict>,
    pub c3: Option<Verdict>,
    pub c4: Option<Verdict>,
}

impl CriterionVerdicts {
    fn evaluated(&self) -> impl Iterator<Item = Verdict> {
        [self.c2, self.c3, self.c4].into_iter().flatten()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub point: PentaPoint,
    pub criterion: Criterion,
    pub tol: f64,
    /// Verdict for `(s, p)` against `G₂`.
    pub g2: Verdict,
    pub g2_value: f64,
    pub beta: Option<Complex64>,
    pub bound2: Option<f64>,
    pub bound3: Option<f64>,
    pub sup_psi: Option<f64>,
    pub argmax_z: Option<Complex64>,
    pub verdicts: CriterionVerdicts,
    pub verdict: Verdict,
    /// Signed distance to the active bound; positive inside.
    pub margin: f64,
}

pub fn penta_contains(x: &PentaPoint, criterion: Criterion, tol: f64) -> Result<MembershipReport> {
    penta_contains_with(x, criterion, tol, &OptimizerConfig::default())
}

/// Evaluates the requested characterizations of `P` at `x`.
///
/// Points whose `(s, p)` lies outside the closure of `G₂` are exterior for
/// every criterion. Over the boundary band of `G₂` a criterion can only
/// report `boundary-band` or `outside`. With [`Criterion::All`], an
/// inside/outside disagreement is an error; any other mix is reported as
/// `boundary-band`.
pub fn penta_contains_with(
    x: &PentaPoint,
    criterion: Criterion,
    tol: f64,
    opt: &OptimizerConfig,
) -> Result<MembershipReport> {
    let q = x.base();
    let gv = g2_value(&q);
    let g2 = g2_contains(&q, tol);
    let mut report = MembershipReport {
        point: *x,
        criterion,
        tol,
        g2,
        g2_value: gv,
        beta: None,
        bound2: None,
        bound3: None,
        sup_psi: None,
        argmax_z: None,
        verdicts: CriterionVerdicts::default(),
        verdict: Verdict::Outside,
        margin: (1.0 - gv).min(2.0 - q.s.norm()),
    };
    let want = |c: Criterion| criterion == c || criterion == Criterion::All;

    if g2 == Verdict::Outside {
        report.verdicts = CriterionVerdicts {
            c2: want(Criterion::C2).then_some(Verdict::Outside),
            c3: want(Criterion::C3).then_some(Verdict::Outside),
            c4: want(Criterion::C4).then_some(Verdict::Outside),
        };
        return Ok(report);
    }

    let modulus = x.a.norm();
    let classify = |m: f64| match g2 {
        Verdict::Inside => Verdict::from_margin(m, tol),
        _ if m >= -tol => Verdict::BoundaryBand,
        _ => Verdict::Outside,
    };
    let mut margins: Vec<f64> = Vec::with_capacity(3);

    if want(Criterion::C2) {
        match compute_beta(q.s, q.p) {
            Ok(beta) => {
                let b = bound2(q.s, q.p)?;
                report.beta = Some(beta);
                report.bound2 = Some(b);
                report.verdicts.c2 = Some(classify(b - modulus));
                margins.push(b - modulus);
            }
            // |p| = 1 only occurs on the Shilov boundary; the other criteria still apply.
            Err(_) if criterion == Criterion::All => {}
            Err(e) => return Err(e),
        }
    }
    if want(Criterion::C3) {
        let b = bound3(&solve_quadratic(q.s, q.p));
        report.bound3 = Some(b);
        report.verdicts.c3 = Some(classify(b - modulus));
        margins.push(b - modulus);
    }
    if want(Criterion::C4) {
        let (sup, at) = sup_psi(x, opt);
        report.sup_psi = Some(sup);
        report.argmax_z = Some(at);
        report.verdicts.c4 = Some(classify(1.0 - sup));
        margins.push(1.0 - sup);
    }

    let verdicts: Vec<Verdict> = report.verdicts.evaluated().collect();
    let has = |v: Verdict| verdicts.contains(&v);
    report.verdict = if has(Verdict::Inside) && has(Verdict::Outside) {
        return Err(GeomError::Inconsistency {
            detail: format!(
                "x = {:?}: c2 {:?}, c3 {:?}, c4 {:?} (bound2 {:?}, bound3 {:?}, sup {:?})",
                x.to_reals(),
                report.verdicts.c2,
                report.verdicts.c3,
                report.verdicts.c4,
                report.bound2,
                report.bound3,
                report.sup_psi
            ),
        });
    } else if verdicts.iter().all(|&v| v == verdicts[0]) {
        verdicts[0]
    } else {
        Verdict::BoundaryBand
    };
    // the first evaluated criterion (in c2, c3, c4 order) sets the margin
    let bound_margin = margins[0];
    report.margin = if g2 == Verdict::Inside {
        bound_margin
    } else {
        bound_margin.min(1.0 - gv)
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pt(a: f64, s: f64, p: f64) -> PentaPoint {
        PentaPoint::new(c(a, 0.0), c(s, 0.0), c(p, 0.0))
    }

    #[test]
    fn origin_is_inside() {
        let r = penta_contains(&PentaPoint::ORIGIN, Criterion::All, 1e-9).unwrap();
        assert_eq!(r.verdict, Verdict::Inside);
        assert_eq!(r.bound2, Some(1.0));
        assert_eq!(r.bound3, Some(1.0));
        assert_eq!(r.sup_psi, Some(0.0));
    }

    #[test]
    fn s_zero_slice_is_a_bidisc() {
        let r = penta_contains(&pt(0.5, 0.0, 0.5), Criterion::All, 1e-9).unwrap();
        assert_eq!(r.verdict, Verdict::Inside);
        assert!((r.bound3.unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn royal_boundary_points() {
        for theta in [0.0, 1.0, 2.5, -0.7] {
            let lam = Complex64::from_polar(1.0, theta);
            let x = PentaPoint::new(c(0.3, 0.0), 2.0 * lam, lam * lam);
            assert_eq!(penta_contains(&x, Criterion::All, 1e-9).unwrap().verdict, Verdict::Outside);
            let y = PentaPoint { a: c(0.0, 0.0), ..x };
            assert_eq!(
                penta_contains(&y, Criterion::All, 1e-9).unwrap().verdict,
                Verdict::BoundaryBand
            );
        }
    }

    #[test]
    fn point_over_part2_base() {
        // λ₁ = 1, λ₂ = 0: (s, p) lies on ∂G₂, so the point is a boundary point
        let r = penta_contains(&pt(0.25, 1.0, 0.0), Criterion::C3, 1e-9).unwrap();
        assert_eq!(r.verdict, Verdict::BoundaryBand);
        assert!((r.bound3.unwrap() - 0.5).abs() < 1e-15);
        let r = penta_contains(&pt(0.6, 1.0, 0.0), Criterion::All, 1e-9).unwrap();
        assert_eq!(r.verdict, Verdict::Outside);
    }

    #[test]
    fn exterior_base_short_circuits() {
        let r = penta_contains(&pt(0.0, 3.0, 0.0), Criterion::All, 1e-9).unwrap();
        assert_eq!(r.verdict, Verdict::Outside);
        assert!(r.bound3.is_none());
        assert!(r.margin < 0.0);
    }

    #[test]
    fn c2_alone_on_unit_p_is_degenerate() {
        let x = PentaPoint::new(c(0.0, 0.0), c(2.0, 0.0), c(1.0, 0.0));
        assert!(matches!(
            penta_contains(&x, Criterion::C2, 1e-9),
            Err(GeomError::DegenerateDenominator { .. })
        ));
        assert_eq!(penta_contains(&x, Criterion::All, 1e-9).unwrap().verdict, Verdict::BoundaryBand);
    }

    #[test]
    fn criterion_parsing() {
        assert_eq!("all".parse::<Criterion>().unwrap(), Criterion::All);
        assert_eq!("C3".parse::<Criterion>().unwrap(), Criterion::C3);
        assert!("c5".parse::<Criterion>().is_err());
    }
}
