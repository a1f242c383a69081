//! Adaptive integration of the gradient-Hamiltonian flow.
//!
//! An embedded 4/5 Runge-Kutta pair drives the step size; every accepted
//! step re-pins the parameter to its exact linear value (the field moves it
//! at unit rate by construction) and Newton-projects the coordinates back
//! onto the fiber at that parameter.  Optional frame vectors are transported
//! jointly through the linearized field, approximated by central-difference
//! directional derivatives.

use num_complex::Complex64;

use crate::family::NumericFamily;
use crate::field::{hdot, norm, project_to_fiber, velocity};
use crate::{FlowError, FlowOptions, FlowState};

/// Per-step health measurements, recorded at every accepted step (and once
/// for the initial state, with zero elapsed time).
#[derive(Clone, Debug)]
pub struct StepDiagnostics {
    pub elapsed: f64,
    pub t: f64,
    /// Max generator magnitude after the fiber projection.
    pub residual: f64,
    /// Max drift of the conserved moment components since the start.
    pub psi_drift: f64,
    /// Raw integrator error in the parameter before re-pinning.
    pub pi_error: f64,
    /// Coordinates numerically on a stratum wall (|z_i| below threshold).
    pub zero_coords: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub states: Vec<FlowState>,
    pub diagnostics: Vec<StepDiagnostics>,
}

impl Trajectory {
    /// Trajectory consisting of a single state and its diagnostics; also
    /// the seed that `integrate` extends step by step.
    pub fn initial(family: &NumericFamily, state: &FlowState, opts: &FlowOptions) -> Trajectory {
        let diag = StepDiagnostics {
            elapsed: 0.0,
            t: state.t,
            residual: family.residual(&state.z, state.t),
            psi_drift: 0.0,
            pi_error: 0.0,
            zero_coords: zero_coords(&state.z, opts.stratum_tol),
        };
        Trajectory { states: vec![state.clone()], diagnostics: vec![diag] }
    }

    pub fn start(&self) -> &FlowState {
        &self.states[0]
    }

    pub fn end(&self) -> &FlowState {
        self.states.last().expect("trajectory is never empty")
    }

    pub fn elapsed(&self) -> f64 {
        self.diagnostics.last().map_or(0.0, |d| d.elapsed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let states: Vec<serde_json::Value> = self
            .states
            .iter()
            .map(|s| {
                let mut obj = serde_json::json!({
                    "z": complex_vec_json(&s.z),
                    "t": s.t,
                });
                if let Some(frame) = &s.frame {
                    obj["frame"] = serde_json::Value::Array(
                        frame.iter().map(|u| complex_vec_json(u)).collect(),
                    );
                }
                obj
            })
            .collect();
        let diagnostics: Vec<serde_json::Value> = self
            .diagnostics
            .iter()
            .map(|d| {
                serde_json::json!({
                    "elapsed": d.elapsed,
                    "t": d.t,
                    "residual": d.residual,
                    "psi_drift": d.psi_drift,
                    "pi_error": d.pi_error,
                    "zero_coords": d.zero_coords,
                })
            })
            .collect();
        serde_json::json!({ "states": states, "diagnostics": diagnostics })
    }
}

fn complex_vec_json(v: &[Complex64]) -> serde_json::Value {
    serde_json::Value::Array(v.iter().map(|x| serde_json::json!([x.re, x.im])).collect())
}

fn zero_coords(z: &[Complex64], tol: f64) -> Vec<usize> {
    z.iter()
        .enumerate()
        .filter(|(_, zi)| zi.norm() < tol)
        .map(|(i, _)| i)
        .collect()
}

// Dormand-Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = B1 - 5179.0 / 57600.0;
const E3: f64 = B3 - 7571.0 / 16695.0;
const E4: f64 = B4 - 393.0 / 640.0;
const E5: f64 = B5 + 92097.0 / 339200.0;
const E6: f64 = B6 - 187.0 / 2100.0;
const E7: f64 = -1.0 / 40.0;

fn combine(y: &[Complex64], h: f64, parts: &[(f64, &[Complex64])]) -> Vec<Complex64> {
    let mut out = y.to_vec();
    for (c, k) in parts {
        let hc = h * c;
        for (o, ki) in out.iter_mut().zip(*k) {
            *o += hc * ki;
        }
    }
    out
}

/// One embedded step.  Returns the fifth-order update and the error norm
/// scaled so that values at most 1 are acceptable.
fn rk_step<F>(deriv: &F, y: &[Complex64], h: f64, opts: &FlowOptions) -> Result<(Vec<Complex64>, f64), FlowError>
where
    F: Fn(&[Complex64]) -> Result<Vec<Complex64>, FlowError>,
{
    let k1 = deriv(y)?;
    let k2 = deriv(&combine(y, h, &[(A21, &k1)]))?;
    let k3 = deriv(&combine(y, h, &[(A31, &k1), (A32, &k2)]))?;
    let k4 = deriv(&combine(y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]))?;
    let k5 = deriv(&combine(y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]))?;
    let k6 = deriv(&combine(
        y,
        h,
        &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
    ))?;
    let y5 = combine(y, h, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
    let k7 = deriv(&y5)?;
    let mut err = 0.0f64;
    for i in 0..y.len() {
        let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        let scale = opts.abs_tol + opts.rel_tol * y[i].norm().max(y5[i].norm());
        err = err.max(e.norm() / scale);
    }
    Ok((y5, err))
}

/// The joint derivative: field velocity on the base point, then one
/// central-difference directional derivative of the field per frame vector.
fn joint_deriv(
    family: &NumericFamily,
    y: &[Complex64],
    frames: usize,
) -> Result<Vec<Complex64>, FlowError> {
    let dim = family.n + 1;
    let base = &y[..dim];
    let mut out = velocity(family, base)?;
    if frames == 0 {
        return Ok(out);
    }
    let ynorm = norm(base).max(1.0);
    for f in 0..frames {
        let u = &y[dim * (1 + f)..dim * (2 + f)];
        let un = norm(u);
        if un == 0.0 {
            out.extend(std::iter::repeat(Complex64::new(0.0, 0.0)).take(dim));
            continue;
        }
        let delta = 1e-6 * ynorm / un;
        let mut yp = base.to_vec();
        let mut ym = base.to_vec();
        for i in 0..dim {
            yp[i] += delta * u[i];
            ym[i] -= delta * u[i];
        }
        let vp = velocity(family, &yp)?;
        let vm = velocity(family, &ym)?;
        let inv = 1.0 / (2.0 * delta);
        out.extend(vp.iter().zip(&vm).map(|(p, m)| (p - m) * inv));
    }
    Ok(out)
}

fn pack(state: &FlowState) -> Vec<Complex64> {
    let mut y = state.z.clone();
    y.push(Complex64::new(state.t, 0.0));
    if let Some(frame) = &state.frame {
        for u in frame {
            y.extend_from_slice(u);
        }
    }
    y
}

fn unpack(y: &[Complex64], n: usize, frames: usize) -> (Vec<Complex64>, Option<Vec<Vec<Complex64>>>) {
    let z = y[..n].to_vec();
    let frame = if frames > 0 {
        let dim = n + 1;
        Some((0..frames).map(|f| y[dim * (1 + f)..dim * (2 + f)].to_vec()).collect())
    } else {
        None
    };
    (z, frame)
}

/// Flow `start` down to parameter value `t_end`.
///
/// Requires `0 < t_end < start.t`; the zero fiber is never evaluated.  The
/// start is first projected onto its fiber so that later residuals measure
/// integration error, not input error.
pub fn integrate(
    family: &NumericFamily,
    start: &FlowState,
    t_end: f64,
    opts: &FlowOptions,
) -> Result<Trajectory, FlowError> {
    start.check_arity(family)?;
    if !t_end.is_finite() || t_end <= 0.0 || t_end >= start.t {
        return Err(FlowError::InvalidTimes(format!(
            "t_end = {} must satisfy 0 < t_end < start.t = {}",
            t_end, start.t
        )));
    }
    let t0 = start.t;
    let total = t0 - t_end;
    let mut z0 = start.z.clone();
    project_to_fiber(family, &mut z0, t0, opts.proj_tol)?;
    let state0 = FlowState { z: z0, t: t0, frame: start.frame.clone() };
    let psi0 = family.psi(&state0.z);
    let frames = state0.frame.as_ref().map_or(0, Vec::len);
    let mut traj = Trajectory::initial(family, &state0, opts);

    let deriv = |y: &[Complex64]| joint_deriv(family, y, frames);
    let mut y = pack(&state0);
    let n = family.n;
    let mut s = 0.0f64;
    let mut h = total.min(0.05);
    let mut steps = 0usize;
    loop {
        let remaining = total - s;
        if remaining <= total * 1e-14 {
            break;
        }
        if steps >= opts.max_steps {
            return Err(FlowError::StepBudget);
        }
        // Stretch slightly rather than leave a microscopic trailing step.
        let h_try = if remaining <= h * 1.05 { remaining } else { h };
        let (ynew, err) = rk_step(&deriv, &y, h_try, opts)?;
        let arrived = err <= 1.0 && h_try >= remaining * (1.0 - 1e-12);
        if err <= 1.0 {
            s = if arrived { total } else { s + h_try };
            let t = if arrived { t_end } else { t0 - s };
            let pi_error = (ynew[n] - Complex64::new(t, 0.0)).norm();
            let (mut z, frame) = unpack(&ynew, n, frames);
            let residual = project_to_fiber(family, &mut z, t, opts.proj_tol)?;
            let state = FlowState { z, t, frame };
            y = pack(&state);
            let psi = family.psi(&state.z);
            let psi_drift = family.conserved_drift(&psi, &psi0);
            traj.diagnostics.push(StepDiagnostics {
                elapsed: s,
                t,
                residual,
                psi_drift,
                pi_error,
                zero_coords: zero_coords(&state.z, opts.stratum_tol),
            });
            traj.states.push(state);
            steps += 1;
            if arrived {
                break;
            }
        } else if h_try < 1e-13 * total.max(1.0) {
            return Err(FlowError::StepUnderflow { t: t0 - s });
        }
        let fac = if err > 0.0 { 0.9 * err.powf(-0.2) } else { 5.0 };
        h = h_try * fac.clamp(0.2, 5.0);
    }
    Ok(traj)
}

/// Conserved-quantity drifts over a trajectory.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    /// Max deviation of the parameter from its exact linear schedule.
    pub pi_drift: f64,
    /// Max drift of the conserved moment components — the directions whose
    /// circle action preserves the family fiberwise.  This is the quantity
    /// the flow is obliged to conserve.
    pub psi_drift: f64,
    /// Max raw drift over all moment components, conserved or not.  Equal
    /// to `psi_drift` for weight-homogeneous families; genuinely larger
    /// when a parameter term shifts the weight of a generator.
    pub psi_component_drift: f64,
    /// Max drift of the symplectic pairing over transported frame pairs;
    /// absent when the trajectory carries fewer than two frame vectors.
    pub omega_drift: Option<f64>,
    /// Max generator residual over all recorded states, recomputed.
    pub max_residual: f64,
    pub steps: usize,
}

impl InvariantReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "pi_drift": self.pi_drift,
            "psi_drift": self.psi_drift,
            "psi_component_drift": self.psi_component_drift,
            "omega_drift": self.omega_drift,
            "max_residual": self.max_residual,
            "steps": self.steps,
        })
    }
}

/// Symplectic pairing on the ambient space, `omega(u, v) = -Im <u, v>`.
pub fn symplectic_pairing(u: &[Complex64], v: &[Complex64]) -> f64 {
    -hdot(u, v).im
}

/// Recompute every conserved quantity along a trajectory and report the
/// worst drift.  A single-state trajectory reports exact zeros.
pub fn check_invariants(
    trajectory: &Trajectory,
    family: &NumericFamily,
) -> Result<InvariantReport, FlowError> {
    if trajectory.states.is_empty() || trajectory.states.len() != trajectory.diagnostics.len() {
        return Err(FlowError::BadData(
            "trajectory states and diagnostics are misaligned".into(),
        ));
    }
    let start = trajectory.start();
    start.check_arity(family)?;
    let t0 = start.t;
    let psi0 = family.psi(&start.z);
    let omega0: Option<Vec<f64>> = start.frame.as_ref().filter(|f| f.len() >= 2).map(|frame| {
        let mut vals = Vec::new();
        for i in 0..frame.len() {
            for j in i + 1..frame.len() {
                vals.push(symplectic_pairing(&frame[i], &frame[j]));
            }
        }
        vals
    });

    let mut pi_drift = 0.0f64;
    let mut psi_drift = 0.0f64;
    let mut psi_component_drift = 0.0f64;
    let mut omega_drift = omega0.as_ref().map(|_| 0.0f64);
    let mut max_residual = 0.0f64;
    for (state, diag) in trajectory.states.iter().zip(&trajectory.diagnostics) {
        pi_drift = pi_drift.max((state.t - (t0 - diag.elapsed)).abs());
        let psi = family.psi(&state.z);
        psi_drift = psi_drift.max(family.conserved_drift(&psi, &psi0));
        for (a, b) in psi.iter().zip(&psi0) {
            psi_component_drift = psi_component_drift.max((a - b).abs());
        }
        max_residual = max_residual.max(family.residual(&state.z, state.t));
        if let (Some(base), Some(drift)) = (&omega0, &mut omega_drift) {
            let frame = state.frame.as_ref().ok_or_else(|| {
                FlowError::BadData("frame vanished along the trajectory".into())
            })?;
            let mut idx = 0;
            for i in 0..frame.len() {
                for j in i + 1..frame.len() {
                    let w = symplectic_pairing(&frame[i], &frame[j]);
                    *drift = drift.max((w - base[idx]).abs());
                    idx += 1;
                }
            }
        }
    }
    Ok(InvariantReport {
        pi_drift,
        psi_drift,
        psi_component_drift,
        omega_drift,
        max_residual,
        steps: trajectory.states.len() - 1,
    })
}
