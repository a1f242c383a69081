//! JSON encoding with rationals rendered as "p/q" strings ("n" for integers).

use crate::num::{rat_str, Int, Rat};
use crate::{RationalCone, RationalPolytope};
use serde_json::{json, Value};

pub fn int_row(v: &[Int]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn rat_row(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(rat_str(x))).collect())
}

impl RationalCone {
    pub fn to_json(&self) -> Value {
        json!({
            "lattice": self.lattice,
            "inequalities": self.facets.iter().map(|f| int_row(f)).collect::<Vec<_>>(),
            "equations": self.equations.iter().map(|e| int_row(e)).collect::<Vec<_>>(),
            "rays": self.rays.iter().map(|r| int_row(r)).collect::<Vec<_>>(),
            "lineality": self.lineality.iter().map(|l| int_row(l)).collect::<Vec<_>>(),
        })
    }
}

impl RationalPolytope {
    pub fn to_json(&self) -> Value {
        // inequality rows serialized as [a_1, ..., a_n, b] meaning ⟨a, x⟩ ≥ b
        let rows = |list: &[(Vec<Int>, Int)]| -> Vec<Value> {
            list.iter()
                .map(|(a, b)| {
                    let mut row = a.clone();
                    row.push(b.clone());
                    int_row(&row)
                })
                .collect()
        };
        json!({
            "dim": self.dim(),
            "equations": rows(&self.equations),
            "inequalities": rows(&self.inequalities),
            "lattice": self.lattice,
            "vertices": self.vertices.iter().map(|v| rat_row(v)).collect::<Vec<_>>(),
        })
    }
}
