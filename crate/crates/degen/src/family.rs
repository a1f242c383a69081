//! Assembly of the one-parameter family attached to valued relations: the
//! weighting functional e, the family polynomials with their t-exponents,
//! fibers, initial-term integrity, and per-face subfamilies.

use crate::poly::Poly;
use crate::DegenError;
use num_traits::{Signed, ToPrimitive, Zero};
use polyhedra::num::{idot, int_to_rat, Int, Rat};
use polyhedra::{LinearMap, RationalCone};
use serde_json::{json, Value};
use std::cmp::Ordering;
use std::collections::BTreeSet;
use strings::ValuationData;

/// One generating relation g = leading + lower, where every leading term has
/// the common value `s` and every lower term is strictly smaller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub leading: Poly,
    pub lower: Poly,
    /// common value of the leading terms in ℤ^m × Λ
    pub s: Vec<Int>,
}

impl Relation {
    pub fn to_json(&self) -> Value {
        json!({
            "leading": self.leading.to_json(),
            "lower": self.lower.to_json(),
            "s": self.s.iter().map(|x| x.to_i64().expect("s fits i64")).collect::<Vec<i64>>(),
        })
    }

    pub fn from_json(v: &Value, n: usize) -> Result<Relation, DegenError> {
        let bad = |msg: &str| DegenError::BadData(msg.to_string());
        let s = v["s"]
            .as_array()
            .ok_or_else(|| bad("relation missing s"))?
            .iter()
            .map(|x| x.as_i64().map(Int::from).ok_or_else(|| bad("bad s entry")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Relation {
            leading: Poly::from_json(&v["leading"], n)?,
            lower: Poly::from_json(&v["lower"], n)?,
            s,
        })
    }
}

/// Value of the monomial x^exp: the exponent-weighted sum of generator values.
pub fn monomial_value(vd: &ValuationData, exp: &[u32]) -> Vec<Int> {
    assert_eq!(exp.len(), vd.generators.len());
    let mut out = vec![Int::zero(); vd.m + vd.rank];
    for (g, &k) in vd.generators.iter().zip(exp) {
        if k == 0 {
            continue;
        }
        let k = Int::from(k);
        for (o, v) in out.iter_mut().zip(&g.value) {
            *o += v * &k;
        }
    }
    out
}

/// Shape checks only: variable counts, vector lengths, and that every leading
/// term really has value `s`. The order inequalities on the lower terms are
/// checked separately by [`validate_relations`].
fn structural_check(vd: &ValuationData, relations: &[Relation]) -> Result<(), DegenError> {
    let n = vd.generators.len();
    let d = vd.m + vd.rank;
    for (j, rel) in relations.iter().enumerate() {
        if rel.leading.n != n || rel.lower.n != n {
            return Err(DegenError::BadRelation(format!(
                "relation {j}: polynomials must have {n} variables"
            )));
        }
        if rel.s.len() != d {
            return Err(DegenError::BadRelation(format!(
                "relation {j}: s must have length {d}"
            )));
        }
        if rel.leading.is_zero() {
            return Err(DegenError::BadRelation(format!(
                "relation {j}: leading part is zero"
            )));
        }
        for exp in rel.leading.terms.keys() {
            if monomial_value(vd, exp) != rel.s {
                return Err(DegenError::BadRelation(format!(
                    "relation {j}: leading term {exp:?} does not have value {:?}",
                    rel.s
                )));
            }
        }
    }
    Ok(())
}

/// Full validity: shape, plus every lower term strictly smaller than `s` in
/// the lattice order and with the same weight block.
pub fn validate_relations(vd: &ValuationData, relations: &[Relation]) -> Result<(), DegenError> {
    structural_check(vd, relations)?;
    for (j, rel) in relations.iter().enumerate() {
        for exp in rel.lower.terms.keys() {
            let val = monomial_value(vd, exp);
            if val[vd.m..] != rel.s[vd.m..] {
                return Err(DegenError::BadRelation(format!(
                    "relation {j}: lower term {exp:?} has a different weight block"
                )));
            }
            if vd.order.cmp(vd.m, &val, &rel.s) != Ordering::Less {
                return Err(DegenError::BadRelation(format!(
                    "relation {j}: lower term {exp:?} is not strictly smaller than the leading value"
                )));
            }
        }
    }
    Ok(())
}

/// Pick the weighting functional e: nonnegative on every generator value and
/// exceeding each lower-term value by at least 1 relative to `s`. Solved as an
/// exact LP over the nonnegative orthant minimizing the coordinate sum; ties
/// are broken by the lexicographically smallest optimal vertex, which is then
/// cleared to an integer row.
pub fn choose_e(vd: &ValuationData, relations: &[Relation]) -> Result<LinearMap, DegenError> {
    structural_check(vd, relations)?;
    let d = vd.m + vd.rank;
    // Homogenize with a last coordinate τ; vertices are rays with τ > 0.
    let mut ineqs: Vec<Vec<Rat>> = Vec::new();
    let lift = |v: &[Int], last: i64| -> Vec<Rat> {
        let mut row = int_to_rat(v);
        row.push(Rat::from_integer(Int::from(last)));
        row
    };
    for g in &vd.generators {
        ineqs.push(lift(&g.value, 0));
    }
    for rel in relations {
        for exp in rel.lower.terms.keys() {
            let val = monomial_value(vd, exp);
            let diff: Vec<Int> = rel.s.iter().zip(&val).map(|(a, b)| a - b).collect();
            ineqs.push(lift(&diff, -1));
        }
    }
    for k in 0..d {
        let mut unit = vec![Int::zero(); d];
        unit[k] = Int::from(1);
        ineqs.push(lift(&unit, 0));
    }
    ineqs.push(lift(&vec![Int::zero(); d], 1));
    let cone = RationalCone::from_h_raw("functional-lift", d + 1, &ineqs, &[]);
    let mut best: Option<((Rat, Vec<Rat>), Vec<Int>)> = None;
    for ray in &cone.rays {
        if !ray[d].is_positive() {
            continue;
        }
        let tau = Rat::from_integer(ray[d].clone());
        let vertex: Vec<Rat> = ray[..d]
            .iter()
            .map(|x| Rat::from_integer(x.clone()) / &tau)
            .collect();
        let sum: Rat = vertex.iter().cloned().sum();
        let key = (sum, vertex);
        if best.as_ref().map_or(true, |(k, _)| key < *k) {
            best = Some((key, ray[..d].to_vec()));
        }
    }
    match best {
        Some((_, row)) => Ok(LinearMap::new(
            vec![int_to_rat(&row)],
            &vd.lattice(),
            "Z",
            d,
        )),
        None => Err(DegenError::NotRefinable),
    }
}

/// The assembled family: exact generators ĝ_j = leading + Σ t^{m_{j,l}}·(lower
/// term l), together with the functional that produced the t-exponents.
#[derive(Clone, Debug)]
pub struct FamilyIdeal {
    pub valuation: ValuationData,
    pub relations: Vec<Relation>,
    /// the functional as an integer row on ℤ^m × Λ
    pub e: Vec<Int>,
    /// per relation, per lower term (in term order), the exponent of t
    pub t_exponents: Vec<Vec<Int>>,
}

/// Build the family from validated relations and a functional from
/// [`choose_e`]. Rejects functionals that are negative on a generator value
/// or give any lower term a t-exponent below 1.
pub fn rees_family(
    vd: &ValuationData,
    relations: &[Relation],
    e: &LinearMap,
) -> Result<FamilyIdeal, DegenError> {
    structural_check(vd, relations)?;
    let d = vd.m + vd.rank;
    if e.matrix.len() != 1 || e.domain_rank != d || !e.is_integral() {
        return Err(DegenError::InvalidFunctional(
            "expected a single integral row on the value lattice".to_string(),
        ));
    }
    let row: Vec<Int> = e.matrix[0].iter().map(|x| x.to_integer()).collect();
    for g in &vd.generators {
        if idot(&row, &g.value).is_negative() {
            return Err(DegenError::InvalidFunctional(format!(
                "negative on the value of generator {}",
                g.name
            )));
        }
    }
    let mut t_exponents = Vec::with_capacity(relations.len());
    for (j, rel) in relations.iter().enumerate() {
        let es = idot(&row, &rel.s);
        let mut ms = Vec::new();
        for exp in rel.lower.terms.keys() {
            let m = &es - idot(&row, &monomial_value(vd, exp));
            if m < Int::from(1) {
                return Err(DegenError::InvalidFunctional(format!(
                    "relation {j}: lower term {exp:?} gets t-exponent {m} < 1"
                )));
            }
            ms.push(m);
        }
        t_exponents.push(ms);
    }
    Ok(FamilyIdeal {
        valuation: vd.clone(),
        relations: relations.to_vec(),
        e: row,
        t_exponents,
    })
}

impl FamilyIdeal {
    /// Unchecked constructor for hand-built families (raw examples, JSON).
    pub fn raw(
        valuation: ValuationData,
        relations: Vec<Relation>,
        e: Vec<Int>,
        t_exponents: Vec<Vec<Int>>,
    ) -> FamilyIdeal {
        assert_eq!(relations.len(), t_exponents.len());
        for (rel, ms) in relations.iter().zip(&t_exponents) {
            assert_eq!(rel.lower.terms.len(), ms.len());
        }
        FamilyIdeal {
            valuation,
            relations,
            e,
            t_exponents,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.valuation.generators.len()
    }

    /// The family generators as polynomials in (z₁, …, z_n, t); t is last.
    pub fn family_polys(&self) -> Vec<Poly> {
        let n = self.num_vars();
        self.relations
            .iter()
            .zip(&self.t_exponents)
            .map(|(rel, ms)| {
                let mut g = Poly::zero(n + 1);
                for (exp, c) in &rel.leading.terms {
                    let mut e = exp.clone();
                    e.push(0);
                    g.add_term(e, c.clone());
                }
                for ((exp, c), m) in rel.lower.terms.iter().zip(ms) {
                    let mut e = exp.clone();
                    e.push(m.to_u32().expect("t-exponent fits u32"));
                    g.add_term(e, c.clone());
                }
                g
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "valuation": self.valuation.to_json(),
            "relations": self.relations.iter().map(|r| r.to_json()).collect::<Vec<Value>>(),
            "e": self.e.iter().map(|x| x.to_i64().expect("e fits i64")).collect::<Vec<i64>>(),
            "t_exponents": self.t_exponents.iter().map(|ms| {
                ms.iter().map(|m| m.to_i64().expect("exponent fits i64")).collect::<Vec<i64>>()
            }).collect::<Vec<Vec<i64>>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<FamilyIdeal, DegenError> {
        let bad = |msg: &str| DegenError::BadData(msg.to_string());
        let vd = ValuationData::from_json(&v["valuation"])
            .map_err(|e| bad(&format!("valuation: {e}")))?;
        let n = vd.generators.len();
        let relations = v["relations"]
            .as_array()
            .ok_or_else(|| bad("missing relations"))?
            .iter()
            .map(|r| Relation::from_json(r, n))
            .collect::<Result<Vec<_>, _>>()?;
        let e = v["e"]
            .as_array()
            .ok_or_else(|| bad("missing e"))?
            .iter()
            .map(|x| x.as_i64().map(Int::from).ok_or_else(|| bad("bad e entry")))
            .collect::<Result<Vec<_>, _>>()?;
        let t_exponents = v["t_exponents"]
            .as_array()
            .ok_or_else(|| bad("missing t_exponents"))?
            .iter()
            .map(|ms| {
                ms.as_array()
                    .ok_or_else(|| bad("t_exponents rows must be arrays"))?
                    .iter()
                    .map(|m| m.as_i64().map(Int::from).ok_or_else(|| bad("bad t-exponent")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        if relations.len() != t_exponents.len()
            || relations
                .iter()
                .zip(&t_exponents)
                .any(|(r, ms)| r.lower.terms.len() != ms.len())
        {
            return Err(bad("t_exponents shape does not match the relations"));
        }
        if e.len() != vd.m + vd.rank {
            return Err(bad("e length does not match the value lattice"));
        }
        Ok(FamilyIdeal::raw(vd, relations, e, t_exponents))
    }
}

/// Substitute t = t₀ into every family generator.
pub fn fiber(family: &FamilyIdeal, t0: &Rat) -> Vec<Poly> {
    family
        .relations
        .iter()
        .zip(&family.t_exponents)
        .map(|(rel, ms)| {
            let mut g = rel.leading.clone();
            for ((exp, c), m) in rel.lower.terms.iter().zip(ms) {
                let k = m.to_usize().expect("t-exponent fits usize");
                g.add_term(exp.clone(), c * num_traits::pow::pow(t0.clone(), k));
            }
            g
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct GeneratorSummary {
    pub terms: usize,
    /// common value of every term of the t=0 generator
    pub value: Vec<Int>,
    pub is_binomial: bool,
    pub rendered: String,
}

#[derive(Clone, Debug)]
pub struct InitialIdealSummary {
    pub generators: Vec<GeneratorSummary>,
}

impl InitialIdealSummary {
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.generators
                .iter()
                .map(|g| {
                    json!({
                        "terms": g.terms,
                        "value": g.value.iter().map(|x| x.to_i64().expect("value fits i64")).collect::<Vec<i64>>(),
                        "is_binomial": g.is_binomial,
                        "generator": g.rendered,
                    })
                })
                .collect(),
        )
    }
}

/// Check that each t=0 generator is homogeneous for the valuation (all terms
/// share one value) and report its term structure.
pub fn initial_ideal_summary(family: &FamilyIdeal) -> Result<InitialIdealSummary, DegenError> {
    let vd = &family.valuation;
    let names: Vec<String> = vd.generators.iter().map(|g| g.name.clone()).collect();
    let mut generators = Vec::with_capacity(family.relations.len());
    for (j, rel) in family.relations.iter().enumerate() {
        let mut common: Option<Vec<Int>> = None;
        for exp in rel.leading.terms.keys() {
            let val = monomial_value(vd, exp);
            match &common {
                None => common = Some(val),
                Some(c) if *c == val => {}
                Some(c) => {
                    return Err(DegenError::Integrity(format!(
                        "t=0 generator {j} mixes values {c:?} and {val:?}"
                    )));
                }
            }
        }
        let value = common.ok_or_else(|| {
            DegenError::Integrity(format!("t=0 generator {j} has no terms"))
        })?;
        if value != rel.s {
            return Err(DegenError::Integrity(format!(
                "t=0 generator {j} has value {value:?} but the relation records {:?}",
                rel.s
            )));
        }
        generators.push(GeneratorSummary {
            terms: rel.leading.terms.len(),
            value,
            is_binomial: rel.leading.terms.len() == 2,
            rendered: rel.leading.render(&names),
        });
    }
    Ok(InitialIdealSummary { generators })
}

/// Cone in the weight block spanned by the generator weights.
pub fn c_image_cone(vd: &ValuationData) -> RationalCone {
    vd.value_cone().image(&vd.c_map())
}

/// Restriction of the family to the stratum of a face of the weight cone:
/// which generators survive and which coordinates are set to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subfamily {
    pub kept_relations: Vec<usize>,
    pub vanishing_coordinates: Vec<usize>,
}

impl Subfamily {
    pub fn to_json(&self) -> Value {
        json!({
            "kept_relations": self.kept_relations,
            "vanishing_coordinates": self.vanishing_coordinates,
        })
    }
}

pub fn subfamily_ideal(
    family: &FamilyIdeal,
    face: &RationalCone,
) -> Result<Subfamily, DegenError> {
    let vd = &family.valuation;
    let image = c_image_cone(vd);
    if !face.is_face_of(&image) {
        return Err(DegenError::NotAFace);
    }
    let weight_part = |v: &[Int]| -> Vec<Rat> { int_to_rat(&v[vd.m..]) };
    let kept_relations = family
        .relations
        .iter()
        .enumerate()
        .filter(|(_, rel)| face.contains(&weight_part(&rel.s)))
        .map(|(j, _)| j)
        .collect();
    let vanishing_coordinates = vd
        .generators
        .iter()
        .enumerate()
        .filter(|(_, g)| !face.contains(&weight_part(&g.value)))
        .map(|(i, _)| i)
        .collect();
    Ok(Subfamily {
        kept_relations,
        vanishing_coordinates,
    })
}

/// True when every dropped generator dies after the face's coordinates are
/// set to zero — the defining compatibility of the stratum restriction.
pub fn dropped_generators_vanish(family: &FamilyIdeal, sub: &Subfamily) -> bool {
    let vanish: BTreeSet<usize> = sub.vanishing_coordinates.iter().copied().collect();
    family
        .family_polys()
        .iter()
        .enumerate()
        .filter(|(j, _)| !sub.kept_relations.contains(j))
        .all(|(_, g)| g.kill_vars(&vanish).is_zero())
}
