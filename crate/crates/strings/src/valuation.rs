//! Graded valuation data on a lattice ℤ^m × Λ and the checkable axioms:
//! weight compatibility, strong convexity, bounded weight fibers, order
//! positivity, properness, and saturation up to a degree bound.

use crate::StringError;
use num_traits::{Signed, ToPrimitive, Zero};
use polyhedra::num::{Int, Rat};
use polyhedra::{LinearMap, RationalCone};
use serde_json::{json, Value};
use std::cmp::Ordering;
use std::collections::BTreeSet;

/// Total order on ℤ^m × Λ: weight block compared by coordinate sum then
/// lexicographically, ties broken by the string block lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderSpec {
    LexRefinement,
}

impl OrderSpec {
    pub fn name(&self) -> &'static str {
        match self {
            OrderSpec::LexRefinement => "lex-refinement",
        }
    }

    pub fn parse(s: &str) -> Result<OrderSpec, StringError> {
        match s {
            "lex-refinement" => Ok(OrderSpec::LexRefinement),
            other => Err(StringError::BadData(format!("unknown order {other:?}"))),
        }
    }

    /// Compare two full lattice vectors (length m + rank).
    pub fn cmp(&self, m: usize, x: &[Int], y: &[Int]) -> Ordering {
        let (xs, xw) = x.split_at(m);
        let (ys, yw) = y.split_at(m);
        self.cmp_weight(xw, yw).then_with(|| xs.cmp(ys))
    }

    /// Compare two weight-block vectors.
    pub fn cmp_weight(&self, xw: &[Int], yw: &[Int]) -> Ordering {
        let sx: Int = xw.iter().cloned().sum();
        let sy: Int = yw.iter().cloned().sum();
        sx.cmp(&sy).then_with(|| xw.cmp(yw))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationGenerator {
    pub name: String,
    /// value in ℤ^m × Λ
    pub value: Vec<Int>,
    pub a_weight: Vec<Int>,
    pub c_weight: Vec<Int>,
}

#[derive(Clone, Debug)]
pub struct ValuationData {
    pub m: usize,
    pub rank: usize,
    pub generators: Vec<ValuationGenerator>,
    pub order: OrderSpec,
    /// optional explicit a-grading map; when absent, consistency of the
    /// a-weights with some linear map is checked instead
    pub a_map: Option<LinearMap>,
}

impl ValuationData {
    pub fn new(m: usize, rank: usize, generators: Vec<ValuationGenerator>) -> Result<Self, StringError> {
        for g in &generators {
            if g.value.len() != m + rank || g.a_weight.len() != rank || g.c_weight.len() != rank {
                return Err(StringError::BadData(format!(
                    "generator {} has inconsistent vector lengths",
                    g.name
                )));
            }
        }
        Ok(ValuationData {
            m,
            rank,
            generators,
            order: OrderSpec::LexRefinement,
            a_map: None,
        })
    }

    pub fn lattice(&self) -> String {
        format!("Z{}xW{}", self.m, self.rank)
    }

    /// Projection ℤ^m × Λ → Λ.
    pub fn c_map(&self) -> LinearMap {
        let rows: Vec<Vec<Rat>> = (0..self.rank)
            .map(|i| {
                (0..self.m + self.rank)
                    .map(|j| {
                        if j == self.m + i {
                            Rat::from_integer(1.into())
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        LinearMap::new(rows, &self.lattice(), "weight-block", self.m + self.rank)
    }

    /// Cone generated by the generator values.
    pub fn value_cone(&self) -> RationalCone {
        let gens: Vec<Vec<Rat>> = self
            .generators
            .iter()
            .map(|g| g.value.iter().map(|x| Rat::from_integer(x.clone())).collect())
            .collect();
        RationalCone::from_rays_raw(&self.lattice(), self.m + self.rank, &gens, &[])
    }

    /// A linear map L → Λ matching every a_weight, when one exists.
    pub fn solve_a_map(&self) -> Option<LinearMap> {
        let rows: Vec<Vec<Rat>> = self
            .generators
            .iter()
            .map(|g| g.value.iter().map(|x| Rat::from_integer(x.clone())).collect())
            .collect();
        let mut map_rows = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            let rhs: Vec<Rat> = self
                .generators
                .iter()
                .map(|g| Rat::from_integer(g.a_weight[i].clone()))
                .collect();
            map_rows.push(polyhedra::linalg::solve(&rows, &rhs)?);
        }
        Some(LinearMap::new(
            map_rows,
            &self.lattice(),
            "weight-block",
            self.m + self.rank,
        ))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "rank": self.rank,
            "generators": self.generators.iter().map(|g| json!({
                "name": g.name,
                "v": g.value.iter().map(|x| x.to_i64().expect("value fits i64")).collect::<Vec<i64>>(),
                "a_weight": g.a_weight.iter().map(|x| x.to_i64().expect("weight fits i64")).collect::<Vec<i64>>(),
                "c_weight": g.c_weight.iter().map(|x| x.to_i64().expect("weight fits i64")).collect::<Vec<i64>>(),
            })).collect::<Vec<Value>>(),
            "order": self.order.name(),
        })
    }

    pub fn from_json(v: &Value) -> Result<ValuationData, StringError> {
        let bad = |msg: &str| StringError::BadData(msg.to_string());
        let m = v["m"].as_u64().ok_or_else(|| bad("missing m"))? as usize;
        let rank = v["rank"].as_u64().ok_or_else(|| bad("missing rank"))? as usize;
        let order = OrderSpec::parse(v["order"].as_str().ok_or_else(|| bad("missing order"))?)?;
        let ints = |val: &Value, field: &str| -> Result<Vec<Int>, StringError> {
            val.as_array()
                .ok_or_else(|| bad(&format!("{field} must be an array")))?
                .iter()
                .map(|x| {
                    x.as_i64()
                        .map(Int::from)
                        .ok_or_else(|| bad(&format!("{field} entries must be integers")))
                })
                .collect()
        };
        let generators = v["generators"]
            .as_array()
            .ok_or_else(|| bad("missing generators"))?
            .iter()
            .map(|g| {
                Ok(ValuationGenerator {
                    name: g["name"]
                        .as_str()
                        .ok_or_else(|| bad("generator name"))?
                        .to_string(),
                    value: ints(&g["v"], "v")?,
                    a_weight: ints(&g["a_weight"], "a_weight")?,
                    c_weight: ints(&g["c_weight"], "c_weight")?,
                })
            })
            .collect::<Result<Vec<_>, StringError>>()?;
        let mut vd = ValuationData::new(m, rank, generators)?;
        vd.order = order;
        Ok(vd)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaturationCheck {
    /// every lattice point of the value cone with degree ≤ bound is a sum of
    /// generator values
    Verified { points_checked: usize, bound: i64 },
    Counterexample(Vec<Int>),
    /// not decidable here (e.g. value cone not strongly convex)
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct GoodValuationReport {
    /// c(v(f)) = c_weight(f) and the a-weights extend to a linear map
    pub weight_compatibility: bool,
    pub cone_strongly_convex: bool,
    pub image_strongly_convex: bool,
    /// kernel of c meets the value cone only at 0
    pub bounded_c_fibers: bool,
    /// every generator's weight block is positive, so 0 is the least weight
    pub minimal_image_element: bool,
    /// every generator value is positive in the lattice order
    pub order_positive_values: bool,
    /// no generator is graded by weight 0
    pub proper: bool,
    pub saturation: SaturationCheck,
}

impl GoodValuationReport {
    pub fn passes(&self) -> bool {
        self.weight_compatibility
            && self.cone_strongly_convex
            && self.image_strongly_convex
            && self.bounded_c_fibers
            && self.minimal_image_element
            && self.order_positive_values
            && self.proper
            && !matches!(self.saturation, SaturationCheck::Counterexample(_))
    }

    pub fn to_json(&self) -> Value {
        let saturation = match &self.saturation {
            SaturationCheck::Verified { points_checked, bound } => json!({
                "status": "verified",
                "points_checked": points_checked,
                "degree_bound": bound,
            }),
            SaturationCheck::Counterexample(p) => json!({
                "status": "counterexample",
                "point": p.iter().map(|x| x.to_i64().unwrap()).collect::<Vec<i64>>(),
            }),
            SaturationCheck::Inconclusive => json!({"status": "inconclusive"}),
        };
        json!({
            "weight_compatibility": self.weight_compatibility,
            "cone_strongly_convex": self.cone_strongly_convex,
            "image_strongly_convex": self.image_strongly_convex,
            "bounded_c_fibers": self.bounded_c_fibers,
            "minimal_image_element": self.minimal_image_element,
            "order_positive_values": self.order_positive_values,
            "proper": self.proper,
            "saturation": saturation,
            "passes": self.passes(),
        })
    }
}

fn int_dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Run every testable axiom on the data and collect the outcomes.
pub fn good_valuation_check(vd: &ValuationData) -> GoodValuationReport {
    let zero_weight = vec![Int::zero(); vd.rank];
    let zero_value = vec![Int::zero(); vd.m + vd.rank];

    let c_ok = vd
        .generators
        .iter()
        .all(|g| g.value[vd.m..] == g.c_weight[..]);
    let a_ok = match &vd.a_map {
        Some(map) => vd.generators.iter().all(|g| {
            let v: Vec<Rat> = g.value.iter().map(|x| Rat::from_integer(x.clone())).collect();
            map.apply(&v)
                .iter()
                .zip(&g.a_weight)
                .all(|(got, want)| *got == Rat::from_integer(want.clone()))
        }),
        None => vd.solve_a_map().is_some(),
    };

    let cone = vd.value_cone();
    let cone_strongly_convex = cone.is_strongly_convex();
    let c = vd.c_map();
    let image = cone.image(&c);
    let image_strongly_convex = image.is_strongly_convex();

    let kernel_eqs: Vec<Vec<Rat>> = c.matrix.clone();
    let fiber_cone = cone.with_extra_equations(&kernel_eqs);
    let bounded_c_fibers = fiber_cone.span_dim() == 0;

    let minimal_image_element = vd
        .generators
        .iter()
        .all(|g| vd.order.cmp_weight(&g.c_weight, &zero_weight) == Ordering::Greater);
    let order_positive_values = vd
        .generators
        .iter()
        .all(|g| vd.order.cmp(vd.m, &g.value, &zero_value) == Ordering::Greater);
    let proper = vd.generators.iter().all(|g| g.c_weight.iter().any(|x| !x.is_zero()));

    let saturation = saturation_check(vd, &cone, cone_strongly_convex);

    GoodValuationReport {
        weight_compatibility: c_ok && a_ok,
        cone_strongly_convex,
        image_strongly_convex,
        bounded_c_fibers,
        minimal_image_element,
        order_positive_values,
        proper,
        saturation,
    }
}

fn saturation_check(vd: &ValuationData, cone: &RationalCone, convex: bool) -> SaturationCheck {
    if !convex || vd.generators.is_empty() {
        return SaturationCheck::Inconclusive;
    }
    // Strictly positive integer functional on the cone: the facet-normal sum.
    let n = vd.m + vd.rank;
    let mut h = vec![Int::zero(); n];
    for f in &cone.facets {
        for (hi, fi) in h.iter_mut().zip(f) {
            *hi += fi;
        }
    }
    let gen_degrees: Vec<Int> = vd.generators.iter().map(|g| int_dot(&h, &g.value)).collect();
    if gen_degrees.iter().any(|d| !d.is_positive()) {
        return SaturationCheck::Inconclusive;
    }
    let bound: Int = gen_degrees.iter().max().unwrap() * Int::from(2);
    let mut ineqs: Vec<(Vec<Rat>, Rat)> = cone
        .facets
        .iter()
        .map(|f| {
            (
                f.iter().map(|x| Rat::from_integer(x.clone())).collect(),
                Rat::zero(),
            )
        })
        .collect();
    ineqs.push((
        h.iter().map(|x| -Rat::from_integer(x.clone())).collect(),
        -Rat::from_integer(bound.clone()),
    ));
    let eqs: Vec<(Vec<Rat>, Rat)> = cone
        .equations
        .iter()
        .map(|e| {
            (
                e.iter().map(|x| Rat::from_integer(x.clone())).collect(),
                Rat::zero(),
            )
        })
        .collect();
    let region = match polyhedra::RationalPolytope::from_h(&vd.lattice(), n, &ineqs, &eqs) {
        Ok(p) => p,
        Err(_) => return SaturationCheck::Inconclusive,
    };
    let points = polyhedra::lattice_points(&region);
    let gen_values: Vec<Vec<Int>> = vd.generators.iter().map(|g| g.value.clone()).collect();
    let mut reachable: BTreeSet<Vec<Int>> = BTreeSet::from([vec![Int::zero(); n]]);
    let mut dead: BTreeSet<Vec<Int>> = BTreeSet::new();
    let in_cone = |x: &[Int]| -> bool {
        cone.facets.iter().all(|f| !int_dot(f, x).is_negative())
            && cone.equations.iter().all(|e| int_dot(e, x).is_zero())
    };
    fn reach(
        x: &[Int],
        gens: &[Vec<Int>],
        in_cone: &dyn Fn(&[Int]) -> bool,
        reachable: &mut BTreeSet<Vec<Int>>,
        dead: &mut BTreeSet<Vec<Int>>,
    ) -> bool {
        if reachable.contains(x) {
            return true;
        }
        if dead.contains(x) {
            return false;
        }
        for g in gens {
            let y: Vec<Int> = x.iter().zip(g).map(|(a, b)| a - b).collect();
            if in_cone(&y) && reach(&y, gens, in_cone, reachable, dead) {
                reachable.insert(x.to_vec());
                return true;
            }
        }
        dead.insert(x.to_vec());
        false
    }
    let mut checked = 0usize;
    for p in &points {
        checked += 1;
        if !reach(p, &gen_values, &in_cone, &mut reachable, &mut dead) {
            return SaturationCheck::Counterexample(p.clone());
        }
    }
    SaturationCheck::Verified {
        points_checked: checked,
        bound: bound.to_i64().unwrap_or(i64::MAX),
    }
}
