//! Douady–Earle extension of circle homeomorphisms to the Poincaré disk.
//!
//! The extension of a boundary map `φ` sends an interior point `x` to the
//! conformal barycenter of the pushed-forward visual measure `φ⋆μ_x`. This
//! crate evaluates that map pointwise, computes its differential from the
//! implicit first-variation identity, and carries the closed-form pinching
//! eigenvalues used to study how large the Jacobian can get.
//!
//! Everything here is pure arithmetic on immutable values; the crate is
//! `no_std` and needs only `alloc`. File formats, CSV output and the command
//! line live in the companion `dext` crate.
//!
//! Module map:
//! * [`disk`]: Poincaré disk geometry, Möbius isometries, Busemann functions,
//!   the Poisson kernel and the `Θ` angle function.
//! * [`circle_map`]: orientation-preserving circle homeomorphisms, including
//!   the symmetric pinching family.
//! * [`quadrature`] and [`measure`]: quadrature rules on the circle, visual
//!   measures and the first-quadrant pinching integrals.
//! * [`barycenter`]: averaged Busemann functions, the Newton barycenter solver
//!   and the pointwise extension.
//! * [`jacobian`]: differential, Jacobian, finite-difference cross-checks and
//!   rigidity scans.
#![no_std]
// negated comparisons are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod barycenter;
pub mod circle_map;
pub mod disk;
mod error;
pub mod jacobian;
pub mod linalg;
pub mod measure;
pub mod quadrature;
pub mod sum;

pub use barycenter::{de_extend, solve_barycenter, BarycenterProblem, SolveReport, SolverConfig};
pub use circle_map::{CircleMap, Pinch, SampledMonotone, ValidationReport};
pub use disk::{BoundaryPoint, DiskPoint, Frame, MobiusIsometry, TangentVector};
pub use error::{Error, Result};
pub use jacobian::{
    differential, fd_jacobian, lambda_formulas, rigidity_gap, DifferentialReport, FdJacobian, PinchEigenvalues,
    PinchQuadrature, RigidityGap,
};
pub use linalg::Mat2;
pub use measure::{pinch_integrals, pushforward_integrate, visual_measure, PinchIntegrals, WeightedNodes};
pub use quadrature::{QuadratureRule, Scheme, SubstitutionRule};
