//! Numerical geometry of the pentablock `P ⊂ ℂ³`, the symmetrised bidisc
//! `G₂` and the 2×2 operator ball `R_I`.
//!
//! * [`complexalg`]: Möbius maps, Blaschke products, quadratic roots,
//!   closed-form 2×2 SVD and Wirtinger finite differences.
//! * [`domains`]: membership oracles, `β`, `φ`, `Ψ_z`, `π` and its lift,
//!   quasi-balanced actions and boundary classification.
//! * [`automorphisms`]: the maps `f_{ω,ν}`, their group law and orbits.
//! * [`convexity`]: C-convexity checks, Levi forms, boundary foliations
//!   and separating hyperplanes.
//! * [`harness`]: samplers, named property suites and JSON reports.

pub mod automorphisms;
pub mod complexalg;
pub mod convexity;
pub mod domains;
pub mod error;
pub mod harness;
pub mod optimize;

pub use error::{GeomError, Result};
