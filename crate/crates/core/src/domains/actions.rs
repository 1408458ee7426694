use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::PentaPoint;

/// Exponents of the action `λ · x = (λ^{m₁}x₁, λ^{m₂}x₂, λ^{m₃}x₃)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightVector {
    pub m1: u32,
    pub m2: u32,
    pub m3: u32,
}

impl WeightVector {
    pub const fn new(m1: u32, m2: u32, m3: u32) -> Self {
        Self { m1, m2, m3 }
    }
}

fn power(lam: Complex64, m: u32) -> Complex64 {
    // 0^0 = 1
    lam.powu(m)
}

pub fn quasi_action(m: WeightVector, lam: Complex64, x: &PentaPoint) -> PentaPoint {
    PentaPoint::new(
        power(lam, m.m1) * x.a,
        power(lam, m.m2) * x.s,
        power(lam, m.m3) * x.p,
    )
}
