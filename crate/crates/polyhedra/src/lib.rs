//! Exact rational polyhedral engine: cones with dual H/V representations,
//! face lattices, affine slices, lattice-point enumeration, and volumes
//! normalized against the lattice induced in the affine hull.

pub mod json;
pub mod linalg;
pub mod num;

mod cone;
mod dd;
mod polytope;

pub use cone::{
    cone_from_inequalities, faces, is_strongly_convex, FaceEntry, FaceLattice, RationalCone,
};
pub use dd::{dual_description, DualDescription};
pub use polytope::{lattice_points, slice, volume, RationalPolytope};

use num::Rat;

#[derive(Debug, thiserror::Error)]
pub enum PolyError {
    #[error("mixed lattices: expected {0}, got {1}")]
    MixedLattices(String, String),
    #[error("cone has nonzero lineality")]
    NotStronglyConvex,
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("unbounded fiber")]
    UnboundedFiber,
    #[error("linear map is not integral")]
    NonIntegralMap,
    #[error("linear map is not surjective")]
    NotSurjectiveMap,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// A vector of rational coordinates tagged with the name of its ambient lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeVector {
    pub coords: Vec<Rat>,
    pub lattice: String,
}

impl LatticeVector {
    pub fn new(coords: Vec<Rat>, lattice: &str) -> Self {
        LatticeVector {
            coords,
            lattice: lattice.into(),
        }
    }
}

/// A linear map between named lattices, stored as a row matrix
/// (row i of `matrix` computes coordinate i of the image).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub matrix: Vec<Vec<Rat>>,
    pub domain: String,
    pub codomain: String,
    pub domain_rank: usize,
    pub codomain_rank: usize,
}

impl LinearMap {
    pub fn new(matrix: Vec<Vec<Rat>>, domain: &str, codomain: &str, domain_rank: usize) -> Self {
        let codomain_rank = matrix.len();
        for row in &matrix {
            assert_eq!(row.len(), domain_rank, "LinearMap: row length mismatch");
        }
        LinearMap {
            matrix,
            domain: domain.into(),
            codomain: codomain.into(),
            domain_rank,
            codomain_rank,
        }
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.domain_rank);
        self.matrix.iter().map(|row| num::dot(row, v)).collect()
    }

    /// Pullback of a functional on the codomain: u ↦ uᵀ·matrix.
    pub fn pullback(&self, u: &[Rat]) -> Vec<Rat> {
        assert_eq!(u.len(), self.codomain_rank);
        (0..self.domain_rank)
            .map(|j| {
                self.matrix
                    .iter()
                    .zip(u)
                    .fold(Rat::from_integer(0.into()), |acc, (row, ui)| {
                        acc + &row[j] * ui
                    })
            })
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.matrix
            .iter()
            .all(|row| row.iter().all(|x| x.is_integer()))
    }

    pub fn is_surjective(&self) -> bool {
        linalg::rank(&self.matrix) == self.codomain_rank
    }
}
