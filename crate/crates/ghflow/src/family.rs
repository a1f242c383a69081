//! Numeric view of a one-parameter flat family: generators as complex
//! polynomials in the coordinates plus the parameter, together with the
//! per-coordinate weight vectors driving the torus moment map.

use degen::FamilyIdeal;
use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::cpoly::CPoly;
use crate::FlowError;

/// A family ready for floating-point work.
///
/// `generators` are polynomials in `n + 1` complex variables; the last
/// variable is the family parameter `t`.  `moment_data[i]` is the weight
/// vector attached to coordinate `z_i`, so the moment map is
/// `psi(z) = sum_i |z_i|^2 / 2 * moment_data[i]`.
#[derive(Clone, Debug)]
pub struct NumericFamily {
    pub n: usize,
    pub generators: Vec<CPoly>,
    pub moment_data: Vec<Vec<f64>>,
    /// Partial derivatives, `partials[j][i] = d generators[j] / d y_i`
    /// with `i` ranging over all `n + 1` variables.
    partials: Vec<Vec<CPoly>>,
    /// Orthonormal basis of the moment directions conserved by the flow:
    /// the torus directions whose action fixes every generator fiberwise.
    conserved: Vec<Vec<f64>>,
}

impl NumericFamily {
    pub fn from_parts(
        n: usize,
        generators: Vec<CPoly>,
        moment_data: Vec<Vec<f64>>,
    ) -> Result<NumericFamily, FlowError> {
        for g in &generators {
            if g.n != n + 1 {
                return Err(FlowError::BadData(format!(
                    "generator has {} variables, expected {}",
                    g.n,
                    n + 1
                )));
            }
        }
        if moment_data.len() != n {
            return Err(FlowError::BadData(format!(
                "moment data covers {} coordinates, expected {}",
                moment_data.len(),
                n
            )));
        }
        let dim = moment_data.first().map_or(0, Vec::len);
        if moment_data.iter().any(|v| v.len() != dim) {
            return Err(FlowError::BadData(
                "moment weight vectors have mixed lengths".into(),
            ));
        }
        let partials = generators
            .iter()
            .map(|g| (0..n + 1).map(|i| g.derivative(i)).collect())
            .collect();
        let conserved = conserved_directions(&generators, &moment_data, dim);
        Ok(NumericFamily { n, generators, moment_data, partials, conserved })
    }

    /// Convert an exact family into its numeric counterpart.
    pub fn from_family(family: &FamilyIdeal) -> Result<NumericFamily, FlowError> {
        let n = family.num_vars();
        let mut generators = Vec::new();
        for poly in family.family_polys() {
            let mut terms = Vec::new();
            for (exps, coeff) in &poly.terms {
                let c = coeff.to_f64().ok_or_else(|| {
                    FlowError::BadData("coefficient overflows f64".into())
                })?;
                terms.push((Complex64::new(c, 0.0), exps.clone()));
            }
            generators.push(CPoly::new(n + 1, terms));
        }
        let mut moment_data = Vec::new();
        for g in &family.valuation.generators {
            let mut v = Vec::new();
            for x in &g.value {
                v.push(x.to_f64().ok_or_else(|| {
                    FlowError::BadData("weight overflows f64".into())
                })?);
            }
            moment_data.push(v);
        }
        NumericFamily::from_parts(n, generators, moment_data)
    }

    /// Dimension of the moment image, i.e. the common length of all weight
    /// vectors.
    pub fn moment_dim(&self) -> usize {
        self.moment_data.first().map_or(0, Vec::len)
    }

    /// Orthonormal basis of the moment directions conserved along the flow.
    ///
    /// A direction is conserved when the corresponding circle action fixes
    /// every generator fiberwise, which requires all monomials of a
    /// generator to carry the same coordinate weight.  Generators whose
    /// parameter terms shift the weight (the usual situation for a
    /// non-homogeneous lower-order term) cut the conserved subspace down
    /// accordingly; a weight-homogeneous family conserves everything.
    pub fn conserved_directions(&self) -> &[Vec<f64>] {
        &self.conserved
    }

    /// Largest drift of the conserved moment components between two moment
    /// values.
    pub fn conserved_drift(&self, psi: &[f64], psi0: &[f64]) -> f64 {
        self.conserved
            .iter()
            .map(|xi| {
                xi.iter()
                    .zip(psi.iter().zip(psi0))
                    .map(|(x, (a, b))| x * (a - b))
                    .sum::<f64>()
                    .abs()
            })
            .fold(0.0, f64::max)
    }

    /// Torus moment map `psi(z) = sum_i |z_i|^2 / 2 * v_i`.
    pub fn psi(&self, z: &[Complex64]) -> Vec<f64> {
        assert_eq!(z.len(), self.n, "point arity mismatch");
        let mut out = vec![0.0; self.moment_dim()];
        for (zi, v) in z.iter().zip(&self.moment_data) {
            let w = 0.5 * zi.norm_sqr();
            for (o, vi) in out.iter_mut().zip(v) {
                *o += w * vi;
            }
        }
        out
    }

    /// Evaluate all generators at the point `y = (z, t)`.
    pub fn eval_generators(&self, y: &[Complex64]) -> Vec<Complex64> {
        self.generators.iter().map(|g| g.eval(y)).collect()
    }

    /// Max generator magnitude at `(z, t)`; zero for an empty family.
    pub fn residual(&self, z: &[Complex64], t: f64) -> f64 {
        let y = full_point(z, Complex64::new(t, 0.0));
        self.eval_generators(&y)
            .iter()
            .map(|g| g.norm())
            .fold(0.0, f64::max)
    }

    /// Jacobian rows `J[j][i] = d g_j / d y_i` at `y`, over all `n + 1`
    /// variables.
    pub fn jacobian(&self, y: &[Complex64]) -> Vec<Vec<Complex64>> {
        self.partials
            .iter()
            .map(|row| row.iter().map(|p| p.eval(y)).collect())
            .collect()
    }

    /// Jacobian restricted to the coordinate variables (the parameter
    /// column dropped), used by the per-step fiber projection.
    pub fn jacobian_z(&self, y: &[Complex64]) -> Vec<Vec<Complex64>> {
        self.partials
            .iter()
            .map(|row| row[..self.n].iter().map(|p| p.eval(y)).collect())
            .collect()
    }
}

/// Concatenate coordinates and parameter into a single evaluation point.
pub fn full_point(z: &[Complex64], t: Complex64) -> Vec<Complex64> {
    let mut y = Vec::with_capacity(z.len() + 1);
    y.extend_from_slice(z);
    y.push(t);
    y
}

fn real_dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn real_norm(a: &[f64]) -> f64 {
    real_dot(a, a).sqrt()
}

fn real_project_out(v: &mut [f64], basis: &[Vec<f64>]) {
    for q in basis {
        let c = real_dot(q, v);
        for (vi, qi) in v.iter_mut().zip(q) {
            *vi -= c * qi;
        }
    }
}

/// Orthonormal basis of the directions `xi` with `<xi, w - w0> = 0` for all
/// monomial weight differences `w - w0` within each generator, where a
/// monomial's weight is the exponent-weighted sum of the coordinate weight
/// vectors (the parameter carries no weight).
fn conserved_directions(
    generators: &[CPoly],
    moment_data: &[Vec<f64>],
    dim: usize,
) -> Vec<Vec<f64>> {
    let monomial_weight = |exps: &[u32]| -> Vec<f64> {
        let mut w = vec![0.0; dim];
        for (e, v) in exps.iter().zip(moment_data) {
            if *e > 0 {
                for (wi, vi) in w.iter_mut().zip(v) {
                    *wi += f64::from(*e) * vi;
                }
            }
        }
        w
    };
    let mut constraints: Vec<Vec<f64>> = Vec::new();
    for g in generators {
        let Some((_, first)) = g.terms.first() else { continue };
        let w0 = monomial_weight(first);
        for (_, exps) in &g.terms[1..] {
            let w = monomial_weight(exps);
            let mut row: Vec<f64> = w.iter().zip(&w0).map(|(a, b)| a - b).collect();
            let scale = real_norm(&row);
            if scale <= 1e-12 {
                continue;
            }
            real_project_out(&mut row, &constraints);
            let nr = real_norm(&row);
            if nr > 1e-9 * scale.max(1.0) {
                let inv = 1.0 / nr;
                for x in &mut row {
                    *x *= inv;
                }
                constraints.push(row);
            }
        }
    }
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for i in 0..dim {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        real_project_out(&mut v, &constraints);
        real_project_out(&mut v, &basis);
        if real_norm(&v) > 1e-6 {
            real_project_out(&mut v, &basis);
            let inv = 1.0 / real_norm(&v);
            for x in &mut v {
                *x *= inv;
            }
            basis.push(v);
        }
    }
    basis
}
