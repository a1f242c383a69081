//! Gradient flow transport for one-parameter polynomial families.
//!
//! A family of complex polynomial generators in coordinates `z_1..z_n` and a
//! parameter `t` cuts out a total space fibered over the `t`-line.  This
//! crate evaluates the gradient-Hamiltonian vector field of the projection
//! `Re t` — the field that moves points from one fiber to another at unit
//! parameter speed while preserving the torus moment map — integrates it
//! with adaptive error control and per-step projection back onto the fiber,
//! transports tangent frames along the way, and extrapolates trajectories
//! to the zero fiber without ever evaluating the flow there.

mod cpoly;
mod family;
mod field;
mod integrate;
mod limit;

pub use cpoly::CPoly;
pub use family::{full_point, NumericFamily};
pub use field::{fiber_tangent_frame, gh_vector_field, project_to_fiber, tangent_projection};
pub use integrate::{check_invariants, integrate, symplectic_pairing, InvariantReport, StepDiagnostics, Trajectory};
pub use limit::{limit_point, LimitPoint, DEFAULT_LIMIT_EPSILON};

use num_complex::Complex64;
use thiserror::Error;

/// Squared-norm floor under which the projected gradient counts as zero and
/// the field is declared blowing up.
pub const BLOWUP_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum FlowError {
    #[error("singular point: the generator Jacobian drops rank")]
    SingularPoint,
    #[error("flow blow-up imminent: the projected gradient is numerically zero")]
    BlowUp,
    #[error("invalid time range: {0}")]
    InvalidTimes(String),
    #[error("step size underflow near t = {t}")]
    StepUnderflow { t: f64 },
    #[error("fiber projection failed to converge near t = {t}")]
    ResidualDivergence { t: f64 },
    #[error("step budget exhausted before reaching the target parameter")]
    StepBudget,
    #[error("limit extrapolation is not converging")]
    NonConvergent,
    #[error("bad data: {0}")]
    BadData(String),
}

/// A point of the flow: fiber coordinates, parameter value, and an optional
/// frame of ambient tangent vectors transported along the trajectory.
#[derive(Clone, Debug)]
pub struct FlowState {
    pub z: Vec<Complex64>,
    pub t: f64,
    pub frame: Option<Vec<Vec<Complex64>>>,
}

impl FlowState {
    pub fn new(z: Vec<Complex64>, t: f64) -> FlowState {
        FlowState { z, t, frame: None }
    }

    pub fn with_frame(z: Vec<Complex64>, t: f64, frame: Vec<Vec<Complex64>>) -> FlowState {
        FlowState { z, t, frame: Some(frame) }
    }

    pub(crate) fn check_arity(&self, family: &NumericFamily) -> Result<(), FlowError> {
        if self.z.len() != family.n {
            return Err(FlowError::BadData(format!(
                "state has {} coordinates, family has {}",
                self.z.len(),
                family.n
            )));
        }
        if !self.t.is_finite() || self.t <= 0.0 {
            return Err(FlowError::InvalidTimes(format!(
                "state parameter t = {} must be positive",
                self.t
            )));
        }
        if let Some(frame) = &self.frame {
            if frame.iter().any(|u| u.len() != family.n + 1) {
                return Err(FlowError::BadData(
                    "frame vectors must live in the ambient space (coordinates plus parameter)"
                        .into(),
                ));
            }
        }
        Ok(())
    }
}

/// Tunable integration tolerances.  The defaults match the documented
/// behavior of the flow commands.
#[derive(Clone, Debug)]
pub struct FlowOptions {
    /// Relative tolerance of the embedded Runge-Kutta error estimate.
    pub rel_tol: f64,
    /// Absolute floor of the same estimate.
    pub abs_tol: f64,
    /// Residual target of the per-step fiber projection.
    pub proj_tol: f64,
    /// Magnitude under which a coordinate counts as sitting on a stratum
    /// wall.
    pub stratum_tol: f64,
    pub max_steps: usize,
}

impl Default for FlowOptions {
    fn default() -> Self {
        FlowOptions {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            proj_tol: 1e-12,
            stratum_tol: 1e-9,
            max_steps: 500_000,
        }
    }
}
