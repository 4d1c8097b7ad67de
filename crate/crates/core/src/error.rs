use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("point ({u}, {v}) is not strictly inside the unit disk")]
    OutsideDisk { u: f64, v: f64 },

    #[error("{what} = {value} is outside its domain {domain}")]
    Domain { what: &'static str, value: f64, domain: &'static str },

    #[error("invalid Möbius isometry: |c| = {0} must be < 1")]
    InvalidMobius(f64),

    #[error("not a degree-one circle homeomorphism: {0}")]
    NotMonotone(String),

    #[error("invalid quadrature rule: {0}")]
    InvalidQuadrature(String),

    #[error("measure has no mass")]
    EmptyMeasure,

    #[error("quadrature does not resolve the visual measure: mass {mass} instead of 1")]
    Unresolved { mass: f64 },

    #[error("measure is too concentrated: one node carries {fraction} of the total mass")]
    AtomicMeasure { fraction: f64 },

    #[error("barycenter Hessian is singular (smallest eigenvalue {min_eigenvalue})")]
    SingularHessian { min_eigenvalue: f64 },

    #[error("Hessian is ill-conditioned (condition number {condition})")]
    IllConditioned { condition: f64 },

    #[error("no convergence after {iterations} iterations (gradient norm {gradient_norm})")]
    MaxIterations { iterations: usize, gradient_norm: f64 },

    #[error("line search failed at gradient norm {gradient_norm}")]
    LineSearch { gradient_norm: f64 },

    #[error("finite-difference step {0} outside [1e-6, 1e-3]")]
    InvalidStep(f64),

    #[error("empty grid")]
    EmptyGrid,
}
