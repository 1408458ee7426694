//! Scalar and 2×2 complex arithmetic.

mod matrix;
mod moebius;
mod quadratic;
mod wirtinger;

pub use matrix::{operator_norm, svd2, Matrix2, Svd2};
pub use moebius::{
    blaschke_apply, moebius_apply, moebius_compose, moebius_inverse, BlaschkeProduct,
    MoebiusParams, POLE_EPS,
};
pub use quadratic::{solve_quadratic, EigenPair};
pub use wirtinger::{wirtinger_jet, wirtinger_jet_richardson, WirtingerJet, DEFAULT_STEP};
