//! Shipped worked examples: the rank-one and rank-two flag families and the
//! raw hyperbola family used by the flow engine.

use crate::family::{choose_e, rees_family, FamilyIdeal, Relation};
use crate::poly::Poly;
use crate::DegenError;
use num_traits::One;
use polyhedra::num::{Int, Rat};
use strings::{ValuationData, ValuationGenerator};

pub const BUILTIN_NAMES: [&str; 3] = ["sl2", "sl3-string-121", "hyperbola"];

#[derive(Clone, Debug)]
pub struct BuiltinExample {
    pub name: String,
    pub valuation: ValuationData,
    pub relations: Vec<Relation>,
    pub commentary: String,
}

fn generator(name: &str, value: &[i64], a_weight: &[i64], c_weight: &[i64]) -> ValuationGenerator {
    let iv = |xs: &[i64]| xs.iter().map(|&x| Int::from(x)).collect::<Vec<Int>>();
    ValuationGenerator {
        name: name.to_string(),
        value: iv(value),
        a_weight: iv(a_weight),
        c_weight: iv(c_weight),
    }
}

fn sl2() -> BuiltinExample {
    let valuation = ValuationData::new(
        1,
        1,
        vec![
            generator("x1", &[0, 1], &[-1], &[1]),
            generator("x2", &[1, 1], &[1], &[1]),
        ],
    )
    .expect("builtin data is well formed");
    BuiltinExample {
        name: "sl2".to_string(),
        valuation,
        relations: vec![],
        commentary: "two sections of the ample line bundle on the projective line; \
                     no relations, so the family is the product E × C"
            .to_string(),
    }
}

fn sl3_string_121() -> BuiltinExample {
    let valuation = ValuationData::new(
        3,
        2,
        vec![
            generator("x1", &[0, 0, 0, 1, 0], &[-1, 0], &[1, 0]),
            generator("x2", &[1, 0, 0, 1, 0], &[1, -1], &[1, 0]),
            generator("x3", &[0, 1, 1, 1, 0], &[0, 1], &[1, 0]),
            generator("y1", &[0, 0, 0, 0, 1], &[0, -1], &[0, 1]),
            generator("y2", &[0, 1, 0, 0, 1], &[-1, 1], &[0, 1]),
            generator("y3", &[1, 1, 0, 0, 1], &[1, 0], &[0, 1]),
        ],
    )
    .expect("builtin data is well formed");
    // x1·y3 − x2·y2 + x3·y1 = 0; the first two terms have the top value.
    let mut leading = Poly::zero(6);
    leading.add_term(vec![1, 0, 0, 0, 0, 1], Rat::one());
    leading.add_term(vec![0, 1, 0, 0, 1, 0], -Rat::one());
    let lower = Poly::monomial(6, vec![0, 0, 1, 1, 0, 0], Rat::one());
    let relations = vec![Relation {
        leading,
        lower,
        s: [1, 1, 0, 1, 1].iter().map(|&x| Int::from(x)).collect(),
    }];
    BuiltinExample {
        name: "sl3-string-121".to_string(),
        valuation,
        relations,
        commentary: "the rank-two flag variety in its minor embedding, valued through the \
                     string parametrization of the word (1,2,1); one quadric relation \
                     whose single lower term picks up the deformation parameter"
            .to_string(),
    }
}

fn hyperbola() -> BuiltinExample {
    let valuation = ValuationData::new(
        1,
        0,
        vec![
            generator("z1", &[1], &[], &[]),
            generator("z2", &[-1], &[], &[]),
        ],
    )
    .expect("builtin data is well formed");
    let leading = Poly::monomial(2, vec![1, 1], Rat::one());
    let lower = Poly::constant(2, -Rat::one());
    let relations = vec![Relation {
        leading,
        lower,
        s: vec![Int::from(0)],
    }];
    BuiltinExample {
        name: "hyperbola".to_string(),
        valuation,
        relations,
        commentary: "raw one-parameter family z1·z2 = t; the grading axioms fail by design \
                     (there is no weight block), it exists to exercise the flow engine"
            .to_string(),
    }
}

pub fn builtin(name: &str) -> Result<BuiltinExample, DegenError> {
    match name {
        "sl2" => Ok(sl2()),
        "sl3-string-121" => Ok(sl3_string_121()),
        "hyperbola" => Ok(hyperbola()),
        other => Err(DegenError::UnknownExample(other.to_string())),
    }
}

impl BuiltinExample {
    /// Assemble the family. The graded examples run the functional LP; the
    /// hyperbola is wired by hand since its lower term shares the leading
    /// value and no admissible functional exists.
    pub fn family(&self) -> Result<FamilyIdeal, DegenError> {
        if self.name == "hyperbola" {
            return Ok(FamilyIdeal::raw(
                self.valuation.clone(),
                self.relations.clone(),
                vec![Int::from(0)],
                vec![vec![Int::from(1)]],
            ));
        }
        let e = choose_e(&self.valuation, &self.relations)?;
        rees_family(&self.valuation, &self.relations, &e)
    }
}
