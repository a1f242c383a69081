//! String cones, string polytopes, the grading maps tying string data to
//! weight space, per-face subcones, and checkable axioms for graded
//! valuation data.

mod tables;
mod valuation;

pub use valuation::{
    good_valuation_check, GoodValuationReport, OrderSpec, SaturationCheck, ValuationData,
    ValuationGenerator,
};

use num_traits::{One, Signed, Zero};
use polyhedra::num::{Rat};
use polyhedra::{slice, LinearMap, PolyError, RationalCone, RationalPolytope};
use rootsys::{RootSystem, ReducedWord};

#[derive(Debug, thiserror::Error)]
pub enum StringError {
    #[error("no string inequality table for word {0:?}")]
    UnsupportedWord(Vec<usize>),
    #[error("not a reduced word for the longest element")]
    InvalidWord,
    #[error("weight is not dominant")]
    NotDominant,
    #[error("not a face of the image cone")]
    NotAFace,
    #[error("malformed valuation data: {0}")]
    BadData(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug)]
pub struct StringCone {
    pub word: ReducedWord,
    /// cone of string parametrizations in ℝ^m
    pub cone: RationalCone,
    /// cone of (string, weight) pairs in ℝ^m × Λ_ℝ
    pub extended: RationalCone,
}

pub fn weight_lattice(rs: &RootSystem) -> String {
    format!("weight[{}]", rs.label)
}

pub fn string_lattice(rs: &RootSystem, letters: &[usize]) -> String {
    format!("string[{}:{}]", rs.label, word_key(letters))
}

pub fn extended_lattice(rs: &RootSystem, letters: &[usize]) -> String {
    format!("string-ext[{}:{}]", rs.label, word_key(letters))
}

fn word_key(letters: &[usize]) -> String {
    letters
        .iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(".")
}

fn int_rows_to_rat(rows: &[Vec<i64>]) -> Vec<Vec<Rat>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
        .collect()
}

/// Both cones of string parametrizations for a reduced word, from the shipped
/// inequality tables.
pub fn extended_string_cone(rs: &RootSystem, letters: &[usize]) -> Result<StringCone, StringError> {
    if !rs.validate_word(letters) {
        return Err(StringError::InvalidWord);
    }
    let (cone_rows, ext_rows) =
        tables::inequality_tables(rs, letters).ok_or_else(|| StringError::UnsupportedWord(letters.to_vec()))?;
    let m = letters.len();
    let cone = RationalCone::from_h_raw(
        &string_lattice(rs, letters),
        m,
        &int_rows_to_rat(&cone_rows),
        &[],
    );
    let extended = RationalCone::from_h_raw(
        &extended_lattice(rs, letters),
        m + rs.rank,
        &int_rows_to_rat(&ext_rows),
        &[],
    );
    Ok(StringCone {
        word: ReducedWord {
            letters: letters.to_vec(),
        },
        cone,
        extended,
    })
}

/// The unextended cone of string parametrizations.
pub fn string_cone(rs: &RootSystem, letters: &[usize]) -> Result<StringCone, StringError> {
    extended_string_cone(rs, letters)
}

/// The maps (a, c) on ℤ^m × Λ: c forgets the string block; a′ sends the j-th
/// string coordinate to α_{i_j} and vanishes on Λ; a = a′ − c.
pub fn grading_maps(rs: &RootSystem, letters: &[usize]) -> Result<(LinearMap, LinearMap), StringError> {
    if !rs.validate_word(letters) {
        return Err(StringError::InvalidWord);
    }
    let m = letters.len();
    let domain = extended_lattice(rs, letters);
    let codomain = weight_lattice(rs);
    let mut c_rows = Vec::with_capacity(rs.rank);
    let mut a_rows = Vec::with_capacity(rs.rank);
    for i in 0..rs.rank {
        let mut c_row = vec![Rat::zero(); m + rs.rank];
        c_row[m + i] = Rat::one();
        c_rows.push(c_row);
        let mut a_row: Vec<Rat> = (0..m)
            .map(|j| Rat::from_integer(rs.cartan[i][letters[j] - 1].clone()))
            .collect();
        a_row.extend((0..rs.rank).map(|k| {
            if k == i {
                -Rat::one()
            } else {
                Rat::zero()
            }
        }));
        a_rows.push(a_row);
    }
    let a = LinearMap::new(a_rows, &domain, &codomain, m + rs.rank);
    let c = LinearMap::new(c_rows, &domain, &codomain, m + rs.rank);
    debug_assert!(a.is_surjective() && c.is_surjective());
    Ok((a, c))
}

/// Fiber of the extended string cone over a dominant weight.
pub fn string_polytope(
    rs: &RootSystem,
    letters: &[usize],
    lambda: &[Rat],
) -> Result<RationalPolytope, StringError> {
    if lambda.len() != rs.rank {
        return Err(StringError::Poly(PolyError::DimensionMismatch(format!(
            "weight length {} vs rank {}",
            lambda.len(),
            rs.rank
        ))));
    }
    if !rs.is_dominant(lambda) {
        return Err(StringError::NotDominant);
    }
    let sc = extended_string_cone(rs, letters)?;
    let (_, c) = grading_maps(rs, letters)?;
    Ok(slice(&sc.extended, &c, lambda)?)
}

/// c⁻¹(σ̄) ∩ cone for a closed face σ̄ of the c-image of the cone: cut by the
/// pullbacks of the image facets active on σ̄.
pub fn subcone_for_face(
    cone: &RationalCone,
    c: &LinearMap,
    sigma: &RationalCone,
) -> Result<RationalCone, StringError> {
    let image = cone.image(c);
    if !sigma.is_face_of(&image) {
        return Err(StringError::NotAFace);
    }
    let vanishes_on_sigma = |facet: &Vec<polyhedra::num::Int>| {
        let frow: Vec<Rat> = facet.iter().map(|x| Rat::from_integer(x.clone())).collect();
        sigma
            .rays
            .iter()
            .chain(sigma.lineality.iter())
            .all(|r| {
                r.iter()
                    .zip(&frow)
                    .fold(Rat::zero(), |acc, (a, b)| acc + Rat::from_integer(a.clone()) * b)
                    .is_zero()
            })
    };
    let extra: Vec<Vec<Rat>> = image
        .facets
        .iter()
        .filter(|f| vanishes_on_sigma(f))
        .map(|f| {
            let frow: Vec<Rat> = f.iter().map(|x| Rat::from_integer(x.clone())).collect();
            c.pullback(&frow)
        })
        .collect();
    Ok(cone.with_extra_equations(&extra))
}

/// m-dimensional volume of a string polytope: zero when the fiber degenerates
/// below the string dimension.
pub fn full_dim_volume(p: &RationalPolytope, m: usize) -> Rat {
    if p.dim() < m as i64 {
        Rat::zero()
    } else {
        polyhedra::volume(p)
    }
}

/// Is the weight on the boundary of the dominant chamber (some pairing zero)?
pub fn on_chamber_wall(rs: &RootSystem, lambda: &[Rat]) -> bool {
    rs.positive_roots
        .iter()
        .any(|a| rs.pairing(lambda, a).is_zero())
        || lambda.iter().any(|x| x.is_negative())
}
