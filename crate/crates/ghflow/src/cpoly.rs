//! Sparse complex polynomials used for numeric evaluation of family
//! generators and their Jacobians.

use num_complex::Complex64;

/// A sparse polynomial over `C` in `n` variables with floating coefficients.
///
/// Terms are kept sorted by exponent vector so evaluation order (and hence
/// floating-point round-off) is deterministic across runs.
#[derive(Clone, Debug, PartialEq)]
pub struct CPoly {
    pub n: usize,
    pub terms: Vec<(Complex64, Vec<u32>)>,
}

impl CPoly {
    pub fn new(n: usize, mut terms: Vec<(Complex64, Vec<u32>)>) -> CPoly {
        for (_, e) in &terms {
            assert_eq!(e.len(), n, "exponent arity mismatch");
        }
        terms.sort_by(|a, b| a.1.cmp(&b.1));
        terms.retain(|(c, _)| c.norm_sqr() != 0.0);
        CPoly { n, terms }
    }

    pub fn zero(n: usize) -> CPoly {
        CPoly { n, terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, y: &[Complex64]) -> Complex64 {
        assert_eq!(y.len(), self.n, "point arity mismatch");
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, exps) in &self.terms {
            let mut m = *c;
            for (yi, &e) in y.iter().zip(exps) {
                if e > 0 {
                    m *= yi.powu(e);
                }
            }
            acc += m;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> CPoly {
        assert!(i < self.n);
        let mut terms = Vec::new();
        for (c, exps) in &self.terms {
            let e = exps[i];
            if e == 0 {
                continue;
            }
            let mut de = exps.clone();
            de[i] = e - 1;
            terms.push((c * f64::from(e), de));
        }
        CPoly::new(self.n, terms)
    }
}
