//! Gromov-width bookkeeping for coadjoint orbits: the minimal positive
//! coroot pairing ℓ_λ (the candidate width), Duistermaat–Heckman volumes
//! computed independently on the Lie-theory side and on the string-polytope
//! side, and an exhaustive search for integral simplex certificates that
//! witness the lower bound inside the polytope.

mod embedding;

pub use embedding::{simplex_embedding, EmbeddingOutcome, SearchOptions, SimplexEmbedding};

use num_traits::{One, Zero};
use polyhedra::num::{rat_str, Rat};
use polyhedra::{volume, RationalPolytope};
use rootsys::RootSystem;
use strings::{string_polytope, StringError};

#[derive(Debug, thiserror::Error)]
pub enum WidthError {
    #[error("the orbit of the zero weight is a point")]
    PointOrbit,
    #[error("weight is not dominant")]
    NotDominant,
    #[error("bad input: {0}")]
    BadInput(String),
    #[error(transparent)]
    String(#[from] StringError),
}

fn check_weight(rs: &RootSystem, lambda: &[Rat]) -> Result<(), WidthError> {
    if lambda.len() != rs.rank {
        return Err(WidthError::BadInput(format!(
            "weight has {} coordinates, rank is {}",
            lambda.len(),
            rs.rank
        )));
    }
    if !rs.is_dominant(lambda) {
        return Err(WidthError::NotDominant);
    }
    Ok(())
}

/// ℓ_λ: the minimum of ⟨λ, α∨⟩ over the positive roots pairing positively
/// with λ.  For a dominant weight this is the candidate Gromov width of the
/// orbit through λ; the zero weight has a point orbit and no candidate.
pub fn ell_lambda(rs: &RootSystem, lambda: &[Rat]) -> Result<Rat, WidthError> {
    check_weight(rs, lambda)?;
    let mut best: Option<Rat> = None;
    for alpha in &rs.positive_roots {
        let pairing = rs.pairing(lambda, alpha);
        if pairing > Rat::zero() && best.as_ref().map_or(true, |b| pairing < *b) {
            best = Some(pairing);
        }
    }
    best.ok_or(WidthError::PointOrbit)
}

/// Liouville volume of the orbit through λ: the product of ⟨λ, α∨⟩/⟨ρ, α∨⟩
/// over the positive roots pairing positively with λ.  Normalized so it
/// equals the leading Ehrhart coefficient of the moment image; the zero
/// weight gives the empty product 1, matching the 0-dimensional convention
/// on the polytope side.
pub fn orbit_volume(rs: &RootSystem, lambda: &[Rat]) -> Result<Rat, WidthError> {
    check_weight(rs, lambda)?;
    let rho = rs.rho();
    let mut vol = Rat::one();
    for alpha in &rs.positive_roots {
        let num = rs.pairing(lambda, alpha);
        if num > Rat::zero() {
            vol = vol * num / rs.pairing(&rho, alpha);
        }
    }
    Ok(vol)
}

/// Moment image of the orbit under the collective torus action along the
/// given reduced word: the string polytope at λ.
pub fn orbit_polytope(
    rs: &RootSystem,
    letters: &[usize],
    lambda: &[Rat],
) -> Result<RationalPolytope, WidthError> {
    Ok(string_polytope(rs, letters, lambda)?)
}

/// Volume of the moment image in its affine hull, normalized against the
/// induced lattice.  Agrees exactly with [`orbit_volume`] — the
/// Duistermaat–Heckman measure computed on the polytope side.
pub fn dh_fiber_volume(
    rs: &RootSystem,
    letters: &[usize],
    lambda: &[Rat],
) -> Result<Rat, WidthError> {
    Ok(volume(&orbit_polytope(rs, letters, lambda)?))
}

/// Everything the width of one orbit rests on: ℓ_λ, both volume
/// computations, the polytope itself, and the result of the certificate
/// search at size ℓ_λ.
#[derive(Clone, Debug)]
pub struct WidthReport {
    pub lambda: Vec<Rat>,
    pub ell: Rat,
    pub orbit_volume: Rat,
    pub fiber_volume: Rat,
    pub polytope: RationalPolytope,
    pub outcome: EmbeddingOutcome,
    pub upper_bound_note: String,
}

impl WidthReport {
    pub fn embedding(&self) -> Option<&SimplexEmbedding> {
        match &self.outcome {
            EmbeddingOutcome::Certificate(e) => Some(e),
            _ => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (search, obstructed) = match &self.outcome {
            EmbeddingOutcome::Certificate(_) => ("certificate", false),
            EmbeddingOutcome::NotFound { volume_obstructed } => ("none", *volume_obstructed),
            EmbeddingOutcome::Inconclusive { .. } => ("inconclusive", false),
        };
        serde_json::json!({
            "lambda": self.lambda.iter().map(rat_str).collect::<Vec<_>>(),
            "ell": rat_str(&self.ell),
            "orbit_volume": rat_str(&self.orbit_volume),
            "fiber_volume": rat_str(&self.fiber_volume),
            "polytope_dim": self.polytope.dim(),
            "embedding": self
                .embedding()
                .map(SimplexEmbedding::to_json)
                .unwrap_or(serde_json::Value::Null),
            "search": search,
            "volume_obstructed": obstructed,
            "upper_bound_note": self.upper_bound_note,
        })
    }
}

/// Build the full report for the orbit through λ along one reduced word.
/// The certificate search runs at size ℓ_λ (minus the configured shrink);
/// the zero weight is rejected — its width is zero and there is nothing to
/// search.
pub fn width_report(
    rs: &RootSystem,
    letters: &[usize],
    lambda: &[Rat],
    opts: &SearchOptions,
) -> Result<WidthReport, WidthError> {
    let ell = ell_lambda(rs, lambda)?;
    let f = orbit_volume(rs, lambda)?;
    let polytope = orbit_polytope(rs, letters, lambda)?;
    let g = volume(&polytope);
    let outcome = simplex_embedding(&polytope, &ell, opts)?;
    let size = &ell - &opts.shrink;
    let upper_bound_note = note_for(&ell, &size, &outcome, &g);
    Ok(WidthReport {
        lambda: lambda.to_vec(),
        ell,
        orbit_volume: f,
        fiber_volume: g,
        polytope,
        outcome,
        upper_bound_note,
    })
}

fn note_for(ell: &Rat, size: &Rat, outcome: &EmbeddingOutcome, fiber_volume: &Rat) -> String {
    match outcome {
        EmbeddingOutcome::Certificate(e) => format!(
            "embedded simplex of size {} certifies width >= {}; the matching upper bound width <= {} is quoted from the literature, not computed here",
            rat_str(&e.size),
            rat_str(&e.size),
            rat_str(ell),
        ),
        EmbeddingOutcome::NotFound {
            volume_obstructed: true,
        } => format!(
            "no simplex of size {} embeds: its volume exceeds the fiber volume {}",
            rat_str(size),
            rat_str(fiber_volume),
        ),
        EmbeddingOutcome::NotFound {
            volume_obstructed: false,
        } => format!(
            "the searched certificate class contains no simplex of size {}; this yields no upper bound",
            rat_str(size),
        ),
        EmbeddingOutcome::Inconclusive { reason } => {
            format!("certificate search inconclusive: {reason}")
        }
    }
}
