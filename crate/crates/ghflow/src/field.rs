//! The gradient-Hamiltonian vector field and the tangent-space machinery
//! behind it: Hermitian projection onto the kernel of the generator
//! Jacobian, and the Newton step that snaps points back onto a fiber.

use num_complex::Complex64;

use crate::family::{full_point, NumericFamily};
use crate::{FlowError, FlowState};

/// Hermitian inner product, conjugate-linear in the first slot.
pub fn hdot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn axpy(y: &mut [Complex64], c: Complex64, x: &[Complex64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += c * xi;
    }
}

/// Orthonormal basis of the span of `rows` by modified Gram-Schmidt.
///
/// Returns an error if any row is (numerically) dependent on the earlier
/// ones: for Jacobian rows that is exactly the rank-deficient, singular-point
/// situation.
fn orthonormal_rows(rows: &[Vec<Complex64>]) -> Result<Vec<Vec<Complex64>>, FlowError> {
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for row in rows {
        let scale = norm(row).max(1.0);
        let mut r = row.clone();
        for q in &basis {
            let c = hdot(q, &r);
            axpy(&mut r, -c, q);
        }
        // Second pass tightens the orthogonality lost to cancellation.
        for q in &basis {
            let c = hdot(q, &r);
            axpy(&mut r, -c, q);
        }
        let nr = norm(&r);
        if nr <= 1e-10 * scale {
            return Err(FlowError::SingularPoint);
        }
        let inv = 1.0 / nr;
        for x in &mut r {
            *x *= inv;
        }
        basis.push(r);
    }
    Ok(basis)
}

/// Orthonormal basis of the normal space at `y`: the conjugated Jacobian
/// rows, orthonormalized.  The kernel of the Jacobian is the Hermitian
/// complement of this span.
fn normal_basis(family: &NumericFamily, y: &[Complex64]) -> Result<Vec<Vec<Complex64>>, FlowError> {
    let rows: Vec<Vec<Complex64>> = family
        .jacobian(y)
        .into_iter()
        .map(|row| row.into_iter().map(|x| x.conj()).collect())
        .collect();
    orthonormal_rows(&rows)
}

fn project_out(v: &mut [Complex64], basis: &[Vec<Complex64>]) {
    for q in basis {
        let c = hdot(q, v);
        axpy(v, -c, q);
    }
}

/// Orthonormal complex basis of the tangent space of the family's total
/// space at `state`, i.e. of the kernel of the generator Jacobian.
///
/// Errors with `SingularPoint` when the Jacobian drops rank.
pub fn tangent_projection(
    family: &NumericFamily,
    state: &FlowState,
) -> Result<Vec<Vec<Complex64>>, FlowError> {
    state.check_arity(family)?;
    let y = full_point(&state.z, Complex64::new(state.t, 0.0));
    let normals = normal_basis(family, &y)?;
    let dim = family.n + 1;
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for i in 0..dim {
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[i] = Complex64::new(1.0, 0.0);
        project_out(&mut v, &normals);
        project_out(&mut v, &basis);
        let nv = norm(&v);
        if nv > 1e-6 {
            project_out(&mut v, &basis);
            let inv = 1.0 / norm(&v);
            for x in &mut v {
                *x *= inv;
            }
            basis.push(v);
        }
    }
    debug_assert_eq!(basis.len(), dim - normals.len());
    Ok(basis)
}

/// Real-orthonormal frame spanning the tangent space of the fiber through
/// `state`, as ambient vectors with zero parameter component: the pairs
/// `{u, iu}` over a complex orthonormal kernel basis of the coordinate
/// Jacobian, so consecutive vectors pair to `omega(u, iu) = -1`.
///
/// This is the frame the symplectic invariant applies to.  The flow carries
/// fibers to fibers symplectically, so pairings of transported fiber-tangent
/// vectors are conserved; vectors with a parameter component — such as the
/// basis of `tangent_projection` — obey no such law.  The zero parameter
/// component survives transport exactly, because the field's parameter
/// velocity is constant.
pub fn fiber_tangent_frame(
    family: &NumericFamily,
    state: &FlowState,
) -> Result<Vec<Vec<Complex64>>, FlowError> {
    state.check_arity(family)?;
    let y = full_point(&state.z, Complex64::new(state.t, 0.0));
    let rows: Vec<Vec<Complex64>> = family
        .jacobian_z(&y)
        .into_iter()
        .map(|row| row.into_iter().map(|x| x.conj()).collect())
        .collect();
    let normals = orthonormal_rows(&rows)?;
    let n = family.n;
    let mut kernel: Vec<Vec<Complex64>> = Vec::new();
    for i in 0..n {
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        v[i] = Complex64::new(1.0, 0.0);
        project_out(&mut v, &normals);
        project_out(&mut v, &kernel);
        if norm(&v) > 1e-6 {
            project_out(&mut v, &kernel);
            let inv = 1.0 / norm(&v);
            for x in &mut v {
                *x *= inv;
            }
            kernel.push(v);
        }
    }
    let mut frame = Vec::with_capacity(2 * kernel.len());
    for u in kernel {
        let mut real = u.clone();
        real.push(Complex64::new(0.0, 0.0));
        let mut imag: Vec<Complex64> = u.iter().map(|x| Complex64::new(0.0, 1.0) * x).collect();
        imag.push(Complex64::new(0.0, 0.0));
        frame.push(real);
        frame.push(imag);
    }
    Ok(frame)
}

/// Evaluate the flow's velocity at an arbitrary complex point `y = (z, t)`.
///
/// The field is `V = -P(grad Re t) / |P(grad Re t)|^2` where `P` is the
/// Hermitian projection onto the Jacobian kernel; by construction
/// `dt(V) = -1` exactly, so the parameter decreases at unit rate.
pub fn velocity(family: &NumericFamily, y: &[Complex64]) -> Result<Vec<Complex64>, FlowError> {
    let normals = normal_basis(family, y)?;
    let dim = family.n + 1;
    let mut p = vec![Complex64::new(0.0, 0.0); dim];
    p[dim - 1] = Complex64::new(1.0, 0.0);
    project_out(&mut p, &normals);
    let ns = p.iter().map(|x| x.norm_sqr()).sum::<f64>();
    if ns < crate::BLOWUP_THRESHOLD {
        return Err(FlowError::BlowUp);
    }
    let inv = -1.0 / ns;
    for x in &mut p {
        *x *= inv;
    }
    Ok(p)
}

/// The gradient-Hamiltonian vector field at a state on the family.
pub fn gh_vector_field(
    family: &NumericFamily,
    state: &FlowState,
) -> Result<Vec<Complex64>, FlowError> {
    state.check_arity(family)?;
    let y = full_point(&state.z, Complex64::new(state.t, 0.0));
    velocity(family, &y)
}

/// Solve the dense Hermitian-positive-definite system `A x = b` in place
/// by Gaussian elimination with partial pivoting.  `A` is square and small
/// (one row per generator).
fn solve_dense(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let k = b.len();
    for col in 0..k {
        let (piv, mag) = (col..k)
            .map(|r| (r, a[r][col].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))?;
        if mag == 0.0 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = Complex64::new(1.0, 0.0) / a[col][col];
        for r in col + 1..k {
            let f = a[r][col] * inv;
            for c in col..k {
                let v = a[col][c];
                a[r][c] -= f * v;
            }
            let bc = b[col];
            b[r] -= f * bc;
        }
    }
    for col in (0..k).rev() {
        let mut acc = b[col];
        for c in col + 1..k {
            acc -= a[col][c] * b[c];
        }
        b[col] = acc / a[col][col];
    }
    Some(b)
}

/// Newton-project `z` onto the fiber of the family at parameter `t`,
/// leaving `t` untouched.  Uses the minimal-norm update
/// `dz = J^H (J J^H)^{-1} (-g)` so the point moves orthogonally to the
/// fiber.  Errors with `ResidualDivergence` when the residual fails to
/// reach `tol`.
pub fn project_to_fiber(
    family: &NumericFamily,
    z: &mut [Complex64],
    t: f64,
    tol: f64,
) -> Result<f64, FlowError> {
    let k = family.generators.len();
    if k == 0 {
        return Ok(0.0);
    }
    for _ in 0..30 {
        let y = full_point(z, Complex64::new(t, 0.0));
        let g = family.eval_generators(&y);
        let res = g.iter().map(|x| x.norm()).fold(0.0, f64::max);
        if res <= tol {
            return Ok(res);
        }
        let j = family.jacobian_z(&y);
        // Gram matrix J J^H and right-hand side -g.
        let gram: Vec<Vec<Complex64>> = (0..k)
            .map(|r| (0..k).map(|c| hdot(&j[c], &j[r])).collect())
            .collect();
        let rhs: Vec<Complex64> = g.iter().map(|x| -x).collect();
        let x = solve_dense(gram, rhs).ok_or(FlowError::ResidualDivergence { t })?;
        for (i, zi) in z.iter_mut().enumerate() {
            for (xr, row) in x.iter().zip(&j) {
                *zi += row[i].conj() * xr;
            }
        }
    }
    Err(FlowError::ResidualDivergence { t })
}
