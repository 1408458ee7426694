//! C-convexity of scalar fields, Levi forms on `∂P`, boundary discs and
//! linear-convexity witnesses.

mod cconvex;
mod discs;
mod field;
mod levi;
mod witness;

pub use cconvex::{cconvexity_check, pluriharmonic_defect, sup_family_check, ConvexityReport};
pub use discs::{foliation_disc_part1, foliation_disc_part2, royal_disc, AnalyticDisc, DiscTag, Part2Chart};
pub use field::{AffinePullback, FnField, LogAffineField, PhiField, ScalarField2C, SupField};
pub use levi::{
    complex_tangent_basis, holomorphic_gradient, levi_form, levi_form_with, tangent_basis_from_gradient,
    unimodular_root, DefiningFunction, LeviResult, Vec3,
};
pub use witness::{line_clearance, linconvex_witness, witness_verify, HyperplaneWitness, WitnessVerification, INCIDENCE_TOL};
