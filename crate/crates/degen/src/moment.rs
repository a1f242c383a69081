//! The torus moment map Ψ(z) = ½ Σ |zᵢ|² v(fᵢ) and its graded components.

use crate::DegenError;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use strings::ValuationData;

#[derive(Clone, Debug)]
pub struct MomentImage {
    /// Ψ(z) in the value lattice tensored with ℝ
    pub value: Vec<f64>,
    /// a ∘ Ψ, when an a-grading map is available
    pub a_component: Option<Vec<f64>>,
    /// c ∘ Ψ: the weight block of Ψ
    pub c_component: Vec<f64>,
}

pub fn moment_map_psi(vd: &ValuationData, z: &[Complex64]) -> Result<MomentImage, DegenError> {
    if z.len() != vd.generators.len() {
        return Err(DegenError::BadData(format!(
            "point has {} coordinates but there are {} generators",
            z.len(),
            vd.generators.len()
        )));
    }
    let d = vd.m + vd.rank;
    let mut value = vec![0.0; d];
    for (g, zi) in vd.generators.iter().zip(z) {
        let w = 0.5 * zi.norm_sqr();
        for (out, v) in value.iter_mut().zip(&g.value) {
            *out += w * v.to_f64().expect("value fits f64");
        }
    }
    let a_component = vd
        .a_map
        .clone()
        .or_else(|| vd.solve_a_map())
        .map(|map| {
            map.matrix
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&value)
                        .map(|(c, x)| c.to_f64().expect("coefficient fits f64") * x)
                        .sum()
                })
                .collect()
        });
    let c_component = value[vd.m..].to_vec();
    Ok(MomentImage {
        value,
        a_component,
        c_component,
    })
}
