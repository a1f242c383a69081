//! Extrapolation of a flow trajectory to the zero fiber.
//!
//! The flow is never evaluated at parameter zero.  Instead the trajectory is
//! halted at three geometrically spaced parameter values and Richardson
//! extrapolation removes the first- and second-order tails.

use num_complex::Complex64;

use crate::family::NumericFamily;
use crate::integrate::integrate;
use crate::{FlowError, FlowOptions, FlowState};

pub const DEFAULT_LIMIT_EPSILON: f64 = 1e-3;

#[derive(Clone, Debug)]
pub struct LimitPoint {
    /// Extrapolated coordinates on the zero fiber.
    pub z: Vec<Complex64>,
    /// Spread of the extrapolation stages; the limit is only trusted to
    /// this resolution.
    pub error_estimate: f64,
    /// Max magnitude of the generators at the reported point with the
    /// parameter set to zero.
    pub residual: f64,
}

impl LimitPoint {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "z": self.z.iter().map(|x| serde_json::json!([x.re, x.im])).collect::<Vec<_>>(),
            "error_estimate": self.error_estimate,
            "residual": self.residual,
        })
    }
}

fn diff_norm(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Flow `start` toward the zero fiber and extrapolate the landing point.
///
/// Integrates down to `epsilon`, `epsilon / 2`, and `epsilon / 4`, then
/// combines the three endpoints so that both linear and quadratic tails in
/// the parameter cancel.  Errors with `NonConvergent` when the stage
/// differences fail to contract.
pub fn limit_point(
    family: &NumericFamily,
    start: &FlowState,
    epsilon: f64,
    opts: &FlowOptions,
) -> Result<LimitPoint, FlowError> {
    start.check_arity(family)?;
    if !epsilon.is_finite() || epsilon <= 0.0 || epsilon >= start.t {
        return Err(FlowError::InvalidTimes(format!(
            "epsilon = {} must satisfy 0 < epsilon < start.t = {}",
            epsilon, start.t
        )));
    }
    let bare = FlowState { z: start.z.clone(), t: start.t, frame: None };
    let stage1 = integrate(family, &bare, epsilon, opts)?;
    let a = stage1.end().clone();
    let stage2 = integrate(family, &a, epsilon / 2.0, opts)?;
    let b = stage2.end().clone();
    let stage3 = integrate(family, &b, epsilon / 4.0, opts)?;
    let c = stage3.end().clone();

    let d1 = diff_norm(&b.z, &a.z);
    let d2 = diff_norm(&c.z, &b.z);
    if d2 > 0.95 * d1 + 1e-13 {
        return Err(FlowError::NonConvergent);
    }

    // First-level eliminations of the linear tail at step ratios 2:1,
    // then one more level to cancel the quadratic term.
    let n = family.n;
    let mut l1 = vec![Complex64::new(0.0, 0.0); n];
    let mut l2 = l1.clone();
    let mut r = l1.clone();
    for i in 0..n {
        l1[i] = 2.0 * b.z[i] - a.z[i];
        l2[i] = 2.0 * c.z[i] - b.z[i];
        r[i] = (4.0 * l2[i] - l1[i]) / 3.0;
    }
    let error_estimate = diff_norm(&l2, &l1).max(diff_norm(&r, &l2));
    let residual = family.residual(&r, 0.0);
    Ok(LimitPoint { z: r, error_estimate, residual })
}
