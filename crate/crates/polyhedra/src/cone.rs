//! Rational polyhedral cones with canonical H- and V-representations.

use crate::dd::{dual_description, DualDescription};
use crate::linalg::reduce_mod_span;
use crate::num::{idot, int_to_rat, mixed_dot, neg_vec, primitive, Int, Rat};
use crate::{LatticeVector, LinearMap, PolyError};
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCone {
    pub lattice: String,
    /// ambient rank
    pub dim: usize,
    /// minimal inequality system: primitive integer rows reduced modulo `equations`, sorted
    pub facets: Vec<Vec<Int>>,
    /// canonical basis of the span's orthogonal complement (⟨e,·⟩ = 0 on the cone)
    pub equations: Vec<Vec<Int>>,
    /// extreme rays modulo lineality, primitive, sorted
    pub rays: Vec<Vec<Int>>,
    /// canonical basis of the saturated lineality lattice
    pub lineality: Vec<Vec<Int>>,
}

fn facets_and_equations(dual: &DualDescription) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let eq_span: Vec<Vec<Rat>> = dual.lineality.iter().map(|r| int_to_rat(r)).collect();
    let mut facets: Vec<Vec<Int>> = dual
        .rays
        .iter()
        .map(|d| primitive(&reduce_mod_span(&int_to_rat(d), &eq_span)))
        .collect();
    facets.sort();
    facets.dedup();
    (facets, dual.lineality.clone())
}

impl RationalCone {
    /// Cone {x : ineq·x ≥ 0, eq·x = 0} with both representations canonicalized.
    pub fn from_h_raw(lattice: &str, dim: usize, ineqs: &[Vec<Rat>], eqs: &[Vec<Rat>]) -> Self {
        let DualDescription { rays, lineality } = dual_description(dim, eqs, ineqs);
        Self::assemble(lattice, dim, rays, lineality)
    }

    /// Cone generated by `gens` plus the span of `lin`; redundant generators dropped.
    pub fn from_rays_raw(lattice: &str, dim: usize, gens: &[Vec<Rat>], lin: &[Vec<Rat>]) -> Self {
        let dual = dual_description(dim, lin, gens);
        let (facets, equations) = facets_and_equations(&dual);
        let fr: Vec<Vec<Rat>> = facets.iter().map(|f| int_to_rat(f)).collect();
        let er: Vec<Vec<Rat>> = equations.iter().map(|e| int_to_rat(e)).collect();
        let DualDescription { rays, lineality } = dual_description(dim, &er, &fr);
        RationalCone {
            lattice: lattice.into(),
            dim,
            facets,
            equations,
            rays,
            lineality,
        }
    }

    fn assemble(lattice: &str, dim: usize, rays: Vec<Vec<Int>>, lineality: Vec<Vec<Int>>) -> Self {
        let gr: Vec<Vec<Rat>> = rays.iter().map(|r| int_to_rat(r)).collect();
        let lr: Vec<Vec<Rat>> = lineality.iter().map(|l| int_to_rat(l)).collect();
        let dual = dual_description(dim, &lr, &gr);
        let (facets, equations) = facets_and_equations(&dual);
        RationalCone {
            lattice: lattice.into(),
            dim,
            facets,
            equations,
            rays,
            lineality,
        }
    }

    /// Dimension of the linear span.
    pub fn span_dim(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        assert_eq!(x.len(), self.dim);
        self.facets.iter().all(|f| !mixed_dot(f, x).is_negative())
            && self.equations.iter().all(|e| mixed_dot(e, x).is_zero())
    }

    pub fn contains_cone(&self, other: &RationalCone) -> bool {
        other.rays.iter().all(|r| self.contains(&int_to_rat(r)))
            && other.lineality.iter().all(|l| {
                self.contains(&int_to_rat(l)) && self.contains(&int_to_rat(&neg_vec(l)))
            })
    }

    /// Intersection via concatenated H-representations.
    pub fn intersect(&self, other: &RationalCone) -> RationalCone {
        assert_eq!(self.dim, other.dim);
        let ineqs: Vec<Vec<Rat>> = self
            .facets
            .iter()
            .chain(other.facets.iter())
            .map(|f| int_to_rat(f))
            .collect();
        let eqs: Vec<Vec<Rat>> = self
            .equations
            .iter()
            .chain(other.equations.iter())
            .map(|e| int_to_rat(e))
            .collect();
        RationalCone::from_h_raw(&self.lattice, self.dim, &ineqs, &eqs)
    }

    /// The cone cut down by extra linear equations.
    pub fn with_extra_equations(&self, extra: &[Vec<Rat>]) -> RationalCone {
        let ineqs: Vec<Vec<Rat>> = self.facets.iter().map(|f| int_to_rat(f)).collect();
        let mut eqs: Vec<Vec<Rat>> = self.equations.iter().map(|e| int_to_rat(e)).collect();
        eqs.extend(extra.iter().cloned());
        RationalCone::from_h_raw(&self.lattice, self.dim, &ineqs, &eqs)
    }

    /// Image cone under a linear map (generated by images of rays and lineality).
    pub fn image(&self, m: &LinearMap) -> RationalCone {
        assert_eq!(m.domain_rank, self.dim);
        let gens: Vec<Vec<Rat>> = self.rays.iter().map(|r| m.apply(&int_to_rat(r))).collect();
        let lin: Vec<Vec<Rat>> = self
            .lineality
            .iter()
            .map(|l| m.apply(&int_to_rat(l)))
            .collect();
        RationalCone::from_rays_raw(&m.codomain, m.codomain_rank, &gens, &lin)
    }

    /// Dual cone {a : ⟨a, x⟩ ≥ 0 on self}.
    pub fn dual(&self) -> RationalCone {
        let gens: Vec<Vec<Rat>> = self.facets.iter().map(|f| int_to_rat(f)).collect();
        let lin: Vec<Vec<Rat>> = self.equations.iter().map(|e| int_to_rat(e)).collect();
        RationalCone::from_rays_raw(&self.lattice, self.dim, &gens, &lin)
    }

    /// True iff self is a face of d: contained in d and cut out by the facets of
    /// d that are tight on it.
    pub fn is_face_of(&self, d: &RationalCone) -> bool {
        if self.dim != d.dim || !d.contains_cone(self) {
            return false;
        }
        let tight: Vec<Vec<Rat>> = d
            .facets
            .iter()
            .filter(|f| {
                self.rays.iter().all(|r| idot(f, r).is_zero())
                    && self.lineality.iter().all(|l| idot(f, l).is_zero())
            })
            .map(|f| int_to_rat(f))
            .collect();
        d.with_extra_equations(&tight) == *self
    }
}

/// Cone from inequality normals over a named lattice. An empty list yields the
/// full space, which is why the ambient lattice must be passed explicitly.
pub fn cone_from_inequalities(
    lattice: &str,
    rank: usize,
    ineqs: &[LatticeVector],
) -> Result<RationalCone, PolyError> {
    let mut rows = Vec::new();
    for v in ineqs {
        if v.lattice != lattice || v.coords.len() != rank {
            return Err(PolyError::MixedLattices(lattice.into(), v.lattice.clone()));
        }
        rows.push(v.coords.clone());
    }
    Ok(RationalCone::from_h_raw(lattice, rank, &rows, &[]))
}

pub fn is_strongly_convex(cone: &RationalCone) -> bool {
    cone.is_strongly_convex()
}

#[derive(Clone, Debug)]
pub struct FaceEntry {
    /// indices into the parent cone's ray list
    pub ray_indices: Vec<usize>,
    pub codim: usize,
    pub cone: RationalCone,
}

#[derive(Clone, Debug)]
pub struct FaceLattice {
    /// sorted by dimension ascending, then by ray index set
    pub faces: Vec<FaceEntry>,
}

impl FaceLattice {
    /// Closure order: face i is contained in face j.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        let a: BTreeSet<usize> = self.faces[i].ray_indices.iter().cloned().collect();
        let b: BTreeSet<usize> = self.faces[j].ray_indices.iter().cloned().collect();
        a.is_subset(&b)
    }

    /// Index of the face whose ray set matches, if present.
    pub fn find(&self, ray_indices: &BTreeSet<usize>) -> Option<usize> {
        self.faces
            .iter()
            .position(|f| f.ray_indices.iter().cloned().collect::<BTreeSet<_>>() == *ray_indices)
    }
}

/// Complete face lattice of a strongly convex cone, from {0} up to the cone itself.
pub fn faces(cone: &RationalCone) -> Result<FaceLattice, PolyError> {
    if !cone.is_strongly_convex() {
        return Err(PolyError::NotStronglyConvex);
    }
    let nrays = cone.rays.len();
    let tight: Vec<BTreeSet<usize>> = cone
        .facets
        .iter()
        .map(|f| {
            (0..nrays)
                .filter(|&i| idot(f, &cone.rays[i]).is_zero())
                .collect()
        })
        .collect();
    let top: BTreeSet<usize> = (0..nrays).collect();
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut queue = vec![top];
    while let Some(s) = queue.pop() {
        if !seen.insert(s.clone()) {
            continue;
        }
        for t in &tight {
            let child: BTreeSet<usize> = s.intersection(t).cloned().collect();
            if child != s && !seen.contains(&child) {
                queue.push(child);
            }
        }
    }
    let cone_dim = cone.span_dim();
    let mut entries: Vec<FaceEntry> = seen
        .into_iter()
        .map(|s| {
            let gens: Vec<Vec<Rat>> = s.iter().map(|&i| int_to_rat(&cone.rays[i])).collect();
            let face = RationalCone::from_rays_raw(&cone.lattice, cone.dim, &gens, &[]);
            let fdim = face.span_dim();
            FaceEntry {
                ray_indices: s.into_iter().collect(),
                codim: cone_dim - fdim,
                cone: face,
            }
        })
        .collect();
    entries.sort_by(|a, b| {
        (std::cmp::Reverse(a.codim), &a.ray_indices).cmp(&(std::cmp::Reverse(b.codim), &b.ray_indices))
    });
    Ok(FaceLattice { faces: entries })
}
