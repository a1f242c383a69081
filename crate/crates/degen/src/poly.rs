//! Sparse multivariate polynomials with exact rational coefficients.

use crate::DegenError;
use num_traits::{One, Signed, Zero};
use polyhedra::num::{rat_parse, rat_str, Rat};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};

/// Polynomial in `n` variables, keyed by exponent vectors of length `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub n: usize,
    pub terms: BTreeMap<Vec<u32>, Rat>,
}

impl Poly {
    pub fn zero(n: usize) -> Poly {
        Poly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rat) -> Poly {
        let mut p = Poly::zero(n);
        p.add_term(vec![0; n], c);
        p
    }

    pub fn one(n: usize) -> Poly {
        Poly::constant(n, Rat::one())
    }

    pub fn var(n: usize, i: usize) -> Poly {
        assert!(i < n);
        let mut exp = vec![0; n];
        exp[i] = 1;
        Poly::monomial(n, exp, Rat::one())
    }

    pub fn monomial(n: usize, exp: Vec<u32>, c: Rat) -> Poly {
        let mut p = Poly::zero(n);
        p.add_term(exp, c);
        p
    }

    /// Add `c·x^exp`, merging with an existing term and dropping zeros.
    pub fn add_term(&mut self, exp: Vec<u32>, c: Rat) {
        assert_eq!(exp.len(), self.n, "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (exp, c) in &other.terms {
            out.add_term(exp.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.n, other.n);
        let mut out = Poly::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exp, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Substitute 0 for every variable in `vanish`.
    pub fn kill_vars(&self, vanish: &BTreeSet<usize>) -> Poly {
        let mut out = Poly::zero(self.n);
        for (exp, c) in &self.terms {
            if vanish.iter().all(|&i| exp[i] == 0) {
                out.add_term(exp.clone(), c.clone());
            }
        }
        out
    }

    /// Human-readable form, e.g. `x1*y3 - x2*y2`.
    pub fn render(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.n);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (exp, c) in &self.terms {
            let mut factors: Vec<String> = Vec::new();
            for (i, &k) in exp.iter().enumerate() {
                if k == 1 {
                    factors.push(names[i].clone());
                } else if k > 1 {
                    factors.push(format!("{}^{}", names[i], k));
                }
            }
            let mag = c.abs();
            let piece = if factors.is_empty() {
                rat_str(&mag)
            } else if mag.is_one() {
                factors.join("*")
            } else {
                format!("{}*{}", rat_str(&mag), factors.join("*"))
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&piece);
        }
        out
    }

    /// JSON form: a list of `[coefficient, exponents]` pairs in term order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(exp, c)| json!([rat_str(c), exp]))
                .collect(),
        )
    }

    pub fn from_json(v: &Value, n: usize) -> Result<Poly, DegenError> {
        let bad = |msg: &str| DegenError::BadData(msg.to_string());
        let mut p = Poly::zero(n);
        for term in v.as_array().ok_or_else(|| bad("polynomial must be an array"))? {
            let pair = term.as_array().ok_or_else(|| bad("term must be a pair"))?;
            if pair.len() != 2 {
                return Err(bad("term must be [coefficient, exponents]"));
            }
            let c = pair[0]
                .as_str()
                .and_then(rat_parse)
                .ok_or_else(|| bad("bad coefficient"))?;
            let exp: Vec<u32> = pair[1]
                .as_array()
                .ok_or_else(|| bad("exponents must be an array"))?
                .iter()
                .map(|x| x.as_u64().map(|k| k as u32).ok_or_else(|| bad("bad exponent")))
                .collect::<Result<_, _>>()?;
            if exp.len() != n {
                return Err(bad("exponent length mismatch"));
            }
            p.add_term(exp, c);
        }
        Ok(p)
    }
}
