use num_complex::Complex64;

use crate::complexalg::POLE_EPS;
use crate::domains::{phi, PhiZField};
use crate::error::{GeomError, Result};

/// A real field on (a subdomain of) `ℂ²` in the coordinates `(s, p)`.
pub trait ScalarField2C: Send + Sync {
    fn eval(&self, s: Complex64, p: Complex64) -> Result<f64>;

    /// Declared domain; evaluation outside it is an error.
    fn contains(&self, _s: Complex64, _p: Complex64) -> bool {
        true
    }

    fn name(&self) -> String;

    /// `u(s + ds, p + dp)`. Fields whose value depends on an affine form can
    /// override this so the form is evaluated once at the base and the
    /// increment is added exactly; the stencil differences then do not see
    /// the rounding of `s + ds`.
    fn eval_offset(&self, s: Complex64, p: Complex64, ds: Complex64, dp: Complex64) -> Result<f64> {
        self.eval(s + ds, p + dp)
    }
}

fn neg_two_log(w: Complex64, scale: f64, context: &'static str) -> Result<f64> {
    let m = w.norm();
    if m < POLE_EPS {
        return Err(GeomError::Pole { context, modulus: m });
    }
    Ok(-2.0 * (m / scale).ln())
}

/// `φ(s, p) = −2 log|1 − ½sβ̄/(1 + √(1 − |β|²))|` on `G₂`.
#[derive(Debug, Clone, Copy, Default)]
pub struct PhiField;

impl ScalarField2C for PhiField {
    fn eval(&self, s: Complex64, p: Complex64) -> Result<f64> {
        phi(s, p)
    }

    fn contains(&self, s: Complex64, p: Complex64) -> bool {
        phi(s, p).is_ok()
    }

    fn name(&self) -> String {
        "phi".into()
    }
}

impl ScalarField2C for PhiZField {
    fn eval(&self, s: Complex64, p: Complex64) -> Result<f64> {
        PhiZField::eval(self, s, p)
    }

    fn eval_offset(&self, s: Complex64, p: Complex64, ds: Complex64, dp: Complex64) -> Result<f64> {
        let z = self.z;
        let w = 1.0 - z.norm_sqr();
        if !(w > 0.0) {
            return PhiZField::eval(self, s + ds, p + dp);
        }
        let base = Complex64::new(1.0, 0.0) - s * z + p * z * z;
        neg_two_log(base + (dp * z - ds) * z, w, "phi_z")
    }

    fn name(&self) -> String {
        format!("phi^z(z={})", self.z)
    }
}

/// `−2 log|c₀ + c₁s + c₂p|`, pluriharmonic wherever the affine form is nonzero.
#[derive(Debug, Clone, Copy)]
pub struct LogAffineField {
    pub c0: Complex64,
    pub c1: Complex64,
    pub c2: Complex64,
}

impl ScalarField2C for LogAffineField {
    fn eval(&self, s: Complex64, p: Complex64) -> Result<f64> {
        let w = self.c0 + self.c1 * s + self.c2 * p;
        if w.norm() == 0.0 {
            return Err(GeomError::Pole {
                context: "log-affine field",
                modulus: 0.0,
            });
        }
        Ok(-2.0 * w.norm().ln())
    }

    fn eval_offset(&self, s: Complex64, p: Complex64, ds: Complex64, dp: Complex64) -> Result<f64> {
        let base = self.c0 + self.c1 * s + self.c2 * p;
        let w = base + self.c1 * ds + self.c2 * dp;
        if w.norm() == 0.0 {
            return Err(GeomError::Pole {
                context: "log-affine field",
                modulus: 0.0,
            });
        }
        Ok(-2.0 * w.norm().ln())
    }

    fn name(&self) -> String {
        format!("-2log|{} + {} s + {} p|", self.c0, self.c1, self.c2)
    }
}

/// A named closure.
pub struct FnField<F> {
    name: String,
    f: F,
}

impl<F> FnField<F>
where
    F: Fn(Complex64, Complex64) -> Result<f64> + Send + Sync,
{
    pub fn new(name: impl Into<String>, f: F) -> Self {
        Self { name: name.into(), f }
    }
}

impl<F> ScalarField2C for FnField<F>
where
    F: Fn(Complex64, Complex64) -> Result<f64> + Send + Sync,
{
    fn eval(&self, s: Complex64, p: Complex64) -> Result<f64> {
        (self.f)(s, p)
    }

    fn name(&self) -> String {
        self.name.clone()
    }
}

/// Pointwise maximum of a finite family.
pub struct SupField<'a> {
    pub members: Vec<&'a dyn ScalarField2C>,
}

impl<'a> SupField<'a> {
    pub fn new(members: Vec<&'a dyn ScalarField2C>) -> Self {
        Self { members }
    }

    /// Maximum and the index of the first member attaining it.
    pub fn eval_with_index(&self, s: Complex64, p: Complex64) -> Result<(f64, usize)> {
        let zero = Complex64::new(0.0, 0.0);
        self.eval_offset_with_index(s, p, zero, zero)
    }

    pub fn eval_offset_with_index(
        &self,
        s: Complex64,
        p: Complex64,
        ds: Complex64,
        dp: Complex64,
    ) -> Result<(f64, usize)> {
        let mut best: Option<(f64, usize)> = None;
        for (i, m) in self.members.iter().enumerate() {
            let v = m.eval_offset(s, p, ds, dp)?;
            if best.map_or(true, |(b, _)| v > b) {
                best = Some((v, i));
            }
        }
        best.ok_or_else(|| GeomError::InvalidParams("empty field family".into()))
    }
}

impl ScalarField2C for SupField<'_> {
    fn eval(&self, s: Complex64, p: Complex64) -> Result<f64> {
        self.eval_with_index(s, p).map(|(v, _)| v)
    }

    fn eval_offset(&self, s: Complex64, p: Complex64, ds: Complex64, dp: Complex64) -> Result<f64> {
        self.eval_offset_with_index(s, p, ds, dp).map(|(v, _)| v)
    }

    fn name(&self) -> String {
        format!("sup of {} fields", self.members.len())
    }
}

/// `u ∘ T` for the complex-affine map `T(s, p) = M·(s, p) + b`.
pub struct AffinePullback<'a> {
    pub inner: &'a dyn ScalarField2C,
    pub matrix: [[Complex64; 2]; 2],
    pub shift: [Complex64; 2],
}

impl AffinePullback<'_> {
    pub fn map(&self, s: Complex64, p: Complex64) -> (Complex64, Complex64) {
        let m = &self.matrix;
        (
            m[0][0] * s + m[0][1] * p + self.shift[0],
            m[1][0] * s + m[1][1] * p + self.shift[1],
        )
    }
}

impl ScalarField2C for AffinePullback<'_> {
    fn eval(&self, s: Complex64, p: Complex64) -> Result<f64> {
        let (s2, p2) = self.map(s, p);
        self.inner.eval(s2, p2)
    }

    fn eval_offset(&self, s: Complex64, p: Complex64, ds: Complex64, dp: Complex64) -> Result<f64> {
        let (s2, p2) = self.map(s, p);
        let m = &self.matrix;
        self.inner
            .eval_offset(s2, p2, m[0][0] * ds + m[0][1] * dp, m[1][0] * ds + m[1][1] * dp)
    }

    fn contains(&self, s: Complex64, p: Complex64) -> bool {
        let (s2, p2) = self.map(s, p);
        self.inner.contains(s2, p2)
    }

    fn name(&self) -> String {
        format!("({})∘T", self.inner.name())
    }
}
