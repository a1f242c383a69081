//! Exhaustive search for integral simplex certificates.  A certificate is an
//! affine map x ↦ τ + s·Cx whose linear part C is unimodular onto the
//! direction lattice of the target, whose translation τ is a lattice point,
//! and whose closed standard simplex of size s lands inside the polytope.
//! Such a simplex is the moment image of a symplectic ball of capacity s, so
//! every certificate is a width lower bound.

use std::collections::BTreeSet;

use num_traits::{One, ToPrimitive, Zero};
use polyhedra::num::{int_to_rat, Int, Rat};
use polyhedra::{lattice_points, volume, RationalPolytope};

use crate::WidthError;

/// Caps for the certificate search.  The search is exhaustive over its
/// class — linear parts generated by signed permutations times products of
/// at most `max_elementary` transvections, translations over the lattice
/// points of the target — so "not found" is a statement about the whole
/// class.  When a cap binds the search refuses to conclude instead.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// subtracted from the requested size before searching; zero searches
    /// the closed simplex at full size
    pub shrink: Rat,
    /// depth of the transvection products generating the linear parts
    pub max_elementary: usize,
    /// largest bounding-box side the exhaustive search will take on
    pub bbox_cap: i64,
    /// largest polytope dimension the exhaustive search will take on
    pub max_dim: usize,
    /// cap on the number of vertex-containment checks
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            shrink: Rat::zero(),
            max_elementary: 3,
            bbox_cap: 20,
            max_dim: 4,
            budget: 500_000_000,
        }
    }
}

/// A found certificate: vertex i of the standard simplex maps to
/// `translation + size·columns[i-1]` (vertex 0 to `translation`).
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexEmbedding {
    /// images of the simplex edge directions, in ambient coordinates; they
    /// form a lattice basis of the direction lattice of the target
    pub columns: Vec<Vec<Int>>,
    /// image of the corner vertex, a lattice point of the target
    pub translation: Vec<Int>,
    /// edge length of the embedded simplex
    pub size: Rat,
}

impl SimplexEmbedding {
    /// The d+1 vertices of the embedded closed simplex.
    pub fn vertices(&self) -> Vec<Vec<Rat>> {
        let corner = int_to_rat(&self.translation);
        let mut out = vec![corner.clone()];
        for col in &self.columns {
            out.push(
                corner
                    .iter()
                    .zip(col)
                    .map(|(t, c)| t + &self.size * Rat::from_integer(c.clone()))
                    .collect(),
            );
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let ints = |v: &[Int]| v.iter().map(Int::to_string).collect::<Vec<_>>();
        serde_json::json!({
            "columns": self.columns.iter().map(|c| ints(c)).collect::<Vec<_>>(),
            "translation": ints(&self.translation),
            "size": polyhedra::num::rat_str(&self.size),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum EmbeddingOutcome {
    Certificate(SimplexEmbedding),
    /// the class was searched exhaustively and contains no certificate;
    /// `volume_obstructed` records whether the simplex volume alone already
    /// rules out an embedding of any kind
    NotFound { volume_obstructed: bool },
    /// a cap bound before the class could be exhausted
    Inconclusive { reason: String },
}

/// Volume of the standard simplex of edge length `size` in dimension d,
/// in the lattice normalization: size^d / d!.
pub(crate) fn simplex_volume(size: &Rat, d: usize) -> Rat {
    let mut v = Rat::one();
    for k in 1..=d {
        v = v * size / Rat::from_integer(Int::from(k as i64));
    }
    v
}

/// Search for a simplex certificate of size `ell − shrink` inside `p`.
/// Deterministic: candidates are scanned in canonical order (translations
/// ascending, then linear parts ascending) and the first hit is returned.
/// Every returned certificate is re-verified exactly against the rational
/// inequalities and against the volume bound size^d/d! ≤ vol(p).
pub fn simplex_embedding(
    p: &RationalPolytope,
    ell: &Rat,
    opts: &SearchOptions,
) -> Result<EmbeddingOutcome, WidthError> {
    let size = ell - &opts.shrink;
    if size <= Rat::zero() {
        return Err(WidthError::BadInput("simplex size must be positive".into()));
    }
    if p.is_empty() {
        return Err(WidthError::BadInput(
            "cannot embed into an empty polytope".into(),
        ));
    }
    let d = p.direction_basis.len();
    if d == 0 {
        return Err(WidthError::BadInput(
            "target polytope must have positive dimension".into(),
        ));
    }
    if d > opts.max_dim {
        return Ok(EmbeddingOutcome::Inconclusive {
            reason: format!("dimension {} exceeds the search cap {}", d, opts.max_dim),
        });
    }

    let vol = volume(p);
    let obstruction = simplex_volume(&size, d);
    let volume_obstructed = obstruction > vol;

    // coordinate spans of the target; they bound the admissible edge images
    let n = p.ambient_dim;
    let mut lo = p.vertices[0].clone();
    let mut hi = p.vertices[0].clone();
    for v in &p.vertices {
        for k in 0..n {
            if v[k] < lo[k] {
                lo[k] = v[k].clone();
            }
            if v[k] > hi[k] {
                hi[k] = v[k].clone();
            }
        }
    }
    let spans: Vec<Rat> = (0..n).map(|k| &hi[k] - &lo[k]).collect();
    let cap = Rat::from_integer(Int::from(opts.bbox_cap));
    if spans.iter().any(|s| *s > cap) {
        return Ok(EmbeddingOutcome::Inconclusive {
            reason: format!("bounding box exceeds the search cap {}", opts.bbox_cap),
        });
    }

    // everything at this scale fits machine integers; refuse rather than
    // silently overflow if it does not
    let inconclusive_range = || {
        Ok(EmbeddingOutcome::Inconclusive {
            reason: "coefficients exceed the fast search range".into(),
        })
    };
    let Some(rows) = int_rows(&p.inequalities) else {
        return inconclusive_range();
    };
    let (Some(snum), Some(sden)) = (size.numer().to_i64(), size.denom().to_i64()) else {
        return inconclusive_range();
    };
    let Some(basis) = int_vecs(&p.direction_basis) else {
        return inconclusive_range();
    };
    let Some(taus) = int_vecs(&lattice_points(p)) else {
        return inconclusive_range();
    };
    if taus.is_empty() {
        return Ok(EmbeddingOutcome::NotFound { volume_obstructed });
    }
    let span_bounds: Option<Vec<(i64, i64)>> = spans
        .iter()
        .map(|s| Some((s.numer().to_i64()?, s.denom().to_i64()?)))
        .collect();
    let Some(span_bounds) = span_bounds else {
        return inconclusive_range();
    };

    let mats = unimodular_parts(d, opts.max_elementary);
    let checks = (taus.len() as u64)
        .saturating_mul(mats.len() as u64)
        .saturating_mul(d as u64)
        .saturating_mul(rows.len().max(1) as u64);
    if checks > opts.budget {
        return Ok(EmbeddingOutcome::Inconclusive {
            reason: format!(
                "search budget exceeded: {} containment checks needed, {} allowed",
                checks, opts.budget
            ),
        });
    }

    // per linear part: ambient edge images and their inequality pairings
    struct Candidate {
        cols: Vec<Vec<i64>>,
        rowdots: Vec<Vec<i64>>, // rowdots[r][i] = ⟨a_r, cols[i]⟩
    }
    let mut cands: Vec<Candidate> = Vec::new();
    'mats: for u in &mats {
        let mut cols = vec![vec![0i64; n]; d];
        for i in 0..d {
            for j in 0..d {
                let coef = u[j][i];
                if coef != 0 {
                    for k in 0..n {
                        cols[i][k] += coef * basis[j][k];
                    }
                }
            }
        }
        // an edge longer than the box in some coordinate never fits
        for col in &cols {
            for k in 0..n {
                let (sn, sd) = span_bounds[k];
                let lhs = (snum.abs() as i128) * (col[k].abs() as i128) * (sd as i128);
                let rhs = (sden as i128) * (sn as i128);
                if lhs > rhs {
                    continue 'mats;
                }
            }
        }
        let rowdots = rows
            .iter()
            .map(|(a, _)| cols.iter().map(|c| dot(a, c)).collect())
            .collect();
        cands.push(Candidate { cols, rowdots });
    }

    // canonical scan: translations ascending, then linear parts ascending;
    // the corner vertex is a lattice point of p, so only the d edge tips
    // need checking
    let qb: Vec<i64> = rows.iter().map(|(_, b)| sden * b).collect();
    for tau in &taus {
        let taudots: Vec<i64> = rows.iter().map(|(a, _)| sden * dot(a, tau)).collect();
        for cand in &cands {
            let ok = (0..d).all(|i| {
                (0..rows.len()).all(|r| taudots[r] + snum * cand.rowdots[r][i] >= qb[r])
            });
            if ok {
                let emb = SimplexEmbedding {
                    columns: cand
                        .cols
                        .iter()
                        .map(|c| c.iter().map(|&x| Int::from(x)).collect())
                        .collect(),
                    translation: tau.iter().map(|&x| Int::from(x)).collect(),
                    size: size.clone(),
                };
                for v in emb.vertices() {
                    assert!(p.contains(&v), "certificate vertex escapes the target");
                }
                assert!(
                    obstruction <= vol,
                    "certificate found past the volume obstruction"
                );
                return Ok(EmbeddingOutcome::Certificate(emb));
            }
        }
    }
    Ok(EmbeddingOutcome::NotFound { volume_obstructed })
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn int_rows(rows: &[(Vec<Int>, Int)]) -> Option<Vec<(Vec<i64>, i64)>> {
    rows.iter()
        .map(|(a, b)| Some((a.iter().map(Int::to_i64).collect::<Option<Vec<_>>>()?, b.to_i64()?)))
        .collect()
}

fn int_vecs(vecs: &[Vec<Int>]) -> Option<Vec<Vec<i64>>> {
    vecs.iter()
        .map(|v| v.iter().map(Int::to_i64).collect())
        .collect()
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = a.len();
    let mut out = vec![vec![0i64; d]; d];
    for i in 0..d {
        for k in 0..d {
            if a[i][k] != 0 {
                for j in 0..d {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    out
}

/// All linear parts of the searched class, ascending: signed permutation
/// matrices times products of at most `depth` transvections I ± E_{ij}.
/// The class is closed under inverse-of-permutation conjugation, so one-sided
/// products suffice.
fn unimodular_parts(d: usize, depth: usize) -> Vec<Vec<Vec<i64>>> {
    let mut ident = vec![vec![0i64; d]; d];
    for (i, row) in ident.iter_mut().enumerate() {
        row[i] = 1;
    }
    let mut gens: Vec<Vec<Vec<i64>>> = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                for s in [1i64, -1] {
                    let mut g = ident.clone();
                    g[i][j] = s;
                    gens.push(g);
                }
            }
        }
    }
    let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    seen.insert(ident.clone());
    let mut frontier = vec![ident];
    for _ in 0..depth {
        let mut next = Vec::new();
        for m in &frontier {
            for g in &gens {
                let prod = matmul(m, g);
                if seen.insert(prod.clone()) {
                    next.push(prod);
                }
            }
        }
        frontier = next;
    }
    let products: Vec<_> = seen.iter().cloned().collect();
    let mut all: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    for p in signed_permutations(d) {
        for m in &products {
            all.insert(matmul(&p, m));
        }
    }
    all.into_iter().collect()
}

fn signed_permutations(d: usize) -> Vec<Vec<Vec<i64>>> {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut used = vec![false; d];
    fn rec(d: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for k in 0..d {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                rec(d, cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    rec(d, &mut cur, &mut used, &mut perms);
    let mut out = Vec::new();
    for perm in &perms {
        for mask in 0u32..(1 << d) {
            let mut m = vec![vec![0i64; d]; d];
            for (k, &target) in perm.iter().enumerate() {
                m[k][target] = if mask & (1 << k) != 0 { -1 } else { 1 };
            }
            out.push(m);
        }
    }
    out
}
