//! Root-system combinatorics: Cartan data, positive roots by string closure,
//! Weyl pairings and dimensions, reduced words for the longest element,
//! dominant representatives, and chamber faces.
//!
//! Weights live in fundamental-weight coordinates throughout, so ⟨λ, αᵢ∨⟩ is
//! just the i-th coordinate and every pairing is a dot product against the
//! coroot expansion of the root.

use num_traits::{One, Signed, Zero};
use polyhedra::num::{Int, Rat};
use std::collections::BTreeSet;

#[derive(Debug, thiserror::Error)]
pub enum RootError {
    #[error("unsupported root system: {0}")]
    Unsupported(String),
    #[error("weight is not dominant")]
    NotDominant,
    #[error("weight is not integral")]
    NotIntegral,
    #[error("coordinate length {got} does not match rank {want}")]
    BadLength { got: usize, want: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeLabel {
    A(usize),
    B2,
    C2,
    G2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveRoot {
    /// expansion in simple roots
    pub root_coeffs: Vec<Int>,
    /// fundamental-weight coordinates (Cartan columns combined by root_coeffs)
    pub weight_coords: Vec<Int>,
    /// expansion of the coroot in simple coroots: ⟨λ, α∨⟩ = Σ coroot_coeffs[j]·λ[j]
    pub coroot_coeffs: Vec<Int>,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub label: String,
    pub type_label: TypeLabel,
    pub rank: usize,
    /// cartan[i][j] = ⟨α_j, α_i∨⟩; column j is α_j in fundamental-weight coordinates
    pub cartan: Vec<Vec<Int>>,
    /// symmetrizers dᵢ = (αᵢ, αᵢ)/2 as integers with short roots normalized to 1
    pub symmetrizers: Vec<Int>,
    pub positive_roots: Vec<PositiveRoot>,
}

/// A reduced word for the longest Weyl element, letters 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedWord {
    pub letters: Vec<usize>,
}

fn tridiagonal_a(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Int::from(2)
                    } else if i.abs_diff(j) == 1 {
                        Int::from(-1)
                    } else {
                        Int::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn build_root_system(label: &str) -> Result<RootSystem, RootError> {
    let label = label.trim();
    let (type_label, cartan, symmetrizers): (TypeLabel, Vec<Vec<Int>>, Vec<Int>) = match label {
        "B2" => (
            TypeLabel::B2,
            vec![vec![2.into(), (-1).into()], vec![(-2).into(), 2.into()]],
            vec![2.into(), 1.into()],
        ),
        "C2" => (
            TypeLabel::C2,
            vec![vec![2.into(), (-2).into()], vec![(-1).into(), 2.into()]],
            vec![1.into(), 2.into()],
        ),
        "G2" => (
            TypeLabel::G2,
            vec![vec![2.into(), (-3).into()], vec![(-1).into(), 2.into()]],
            vec![1.into(), 3.into()],
        ),
        _ => {
            let Some(n) = label
                .strip_prefix('A')
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&n| n >= 1)
            else {
                return Err(RootError::Unsupported(label.into()));
            };
            (TypeLabel::A(n), tridiagonal_a(n), vec![Int::one(); n])
        }
    };
    let rank = cartan.len();
    let positive_roots = close_positive_roots(&cartan, &symmetrizers);
    let expected = match &type_label {
        TypeLabel::A(n) => n * (n + 1) / 2,
        TypeLabel::B2 | TypeLabel::C2 => 4,
        TypeLabel::G2 => 6,
    };
    assert_eq!(positive_roots.len(), expected, "positive-root closure count");
    Ok(RootSystem {
        label: label.into(),
        type_label,
        rank,
        cartan,
        symmetrizers,
        positive_roots,
    })
}

/// Root-string closure from the simple roots: β + αᵢ is a root iff
/// p − ⟨β, αᵢ∨⟩ > 0 where p is the depth of the αᵢ-string below β.
fn close_positive_roots(cartan: &[Vec<Int>], symmetrizers: &[Int]) -> Vec<PositiveRoot> {
    let rank = cartan.len();
    let mut coeffs: BTreeSet<Vec<Int>> = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect();
    loop {
        let mut added = false;
        let snapshot: Vec<Vec<Int>> = coeffs.iter().cloned().collect();
        for b in &snapshot {
            for i in 0..rank {
                let pairing: Int = (0..rank).map(|j| &cartan[i][j] * &b[j]).sum();
                let mut p = Int::zero();
                loop {
                    let probe: Vec<Int> = (0..rank)
                        .map(|j| {
                            if j == i {
                                &b[j] - (&p + Int::one())
                            } else {
                                b[j].clone()
                            }
                        })
                        .collect();
                    if coeffs.contains(&probe) {
                        p += Int::one();
                    } else {
                        break;
                    }
                }
                if p - pairing > Int::zero() {
                    let up: Vec<Int> = (0..rank)
                        .map(|j| if j == i { &b[j] + Int::one() } else { b[j].clone() })
                        .collect();
                    if coeffs.insert(up) {
                        added = true;
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    coeffs
        .into_iter()
        .map(|b| {
            let weight_coords: Vec<Int> = (0..rank)
                .map(|i| (0..rank).map(|j| &cartan[i][j] * &b[j]).sum())
                .collect();
            // (β, β)/2 with (αᵢ, αⱼ) = dᵢ·cartan[i][j]
            let norm2: Int = (0..rank)
                .map(|i| {
                    let row: Int = (0..rank).map(|j| &cartan[i][j] * &b[j]).sum();
                    &symmetrizers[i] * &b[i] * row
                })
                .sum();
            let d_beta = Rat::new(norm2, Int::from(2));
            let coroot_coeffs: Vec<Int> = (0..rank)
                .map(|j| {
                    let c = Rat::from_integer(&symmetrizers[j] * &b[j]) / &d_beta;
                    assert!(c.is_integer(), "coroot expansion must be integral");
                    c.to_integer()
                })
                .collect();
            PositiveRoot {
                root_coeffs: b,
                weight_coords,
                coroot_coeffs,
            }
        })
        .collect()
}

impl RootSystem {
    pub fn check_len(&self, v: &[Rat]) -> Result<(), RootError> {
        if v.len() != self.rank {
            return Err(RootError::BadLength {
                got: v.len(),
                want: self.rank,
            });
        }
        Ok(())
    }

    /// Number of positive roots, which is also the length of every reduced word.
    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    /// ⟨λ, α∨⟩ for a positive root α.
    pub fn pairing(&self, lambda: &[Rat], alpha: &PositiveRoot) -> Rat {
        alpha
            .coroot_coeffs
            .iter()
            .zip(lambda)
            .fold(Rat::zero(), |acc, (c, l)| acc + Rat::from_integer(c.clone()) * l)
    }

    pub fn is_dominant(&self, lambda: &[Rat]) -> bool {
        lambda.iter().all(|x| !x.is_negative())
    }

    pub fn is_integral(&self, lambda: &[Rat]) -> bool {
        lambda.iter().all(|x| x.is_integer())
    }

    /// ρ = Σ fundamental weights = (1, …, 1).
    pub fn rho(&self) -> Vec<Rat> {
        vec![Rat::one(); self.rank]
    }

    /// Weyl dimension ∏_{α>0} ⟨λ+ρ, α∨⟩ / ⟨ρ, α∨⟩.
    pub fn weyl_dim(&self, lambda: &[Rat]) -> Result<Int, RootError> {
        self.check_len(lambda)?;
        if !self.is_dominant(lambda) {
            return Err(RootError::NotDominant);
        }
        if !self.is_integral(lambda) {
            return Err(RootError::NotIntegral);
        }
        let rho = self.rho();
        let shifted: Vec<Rat> = lambda.iter().zip(&rho).map(|(a, b)| a + b).collect();
        let mut acc = Rat::one();
        for alpha in &self.positive_roots {
            acc *= self.pairing(&shifted, alpha) / self.pairing(&rho, alpha);
        }
        assert!(acc.is_integer(), "Weyl dimension must be an integer");
        Ok(acc.to_integer())
    }

    /// Simple reflection sᵢ (0-based index) on fundamental-weight coordinates:
    /// λ ↦ λ − ⟨λ, αᵢ∨⟩ αᵢ.
    pub fn reflect(&self, lambda: &[Rat], i: usize) -> Vec<Rat> {
        let coeff = lambda[i].clone();
        (0..self.rank)
            .map(|k| &lambda[k] - &(Rat::from_integer(self.cartan[k][i].clone()) * &coeff))
            .collect()
    }

    /// The unique dominant vector in the Weyl orbit.
    pub fn dominant_representative(&self, xi: &[Rat]) -> Vec<Rat> {
        let mut v = xi.to_vec();
        loop {
            match v.iter().position(|x| x.is_negative()) {
                Some(i) => v = self.reflect(&v, i),
                None => return v,
            }
        }
    }

    /// Open face of the dominant chamber containing λ: the 1-based simple
    /// indices with vanishing pairing.
    pub fn face_of(&self, lambda: &[Rat]) -> Result<BTreeSet<usize>, RootError> {
        self.check_len(lambda)?;
        if !self.is_dominant(lambda) {
            return Err(RootError::NotDominant);
        }
        Ok(lambda
            .iter()
            .enumerate()
            .filter(|(_, x)| x.is_zero())
            .map(|(i, _)| i + 1)
            .collect())
    }

    /// All reduced words for w₀ at rank ≤ 2; the canonical staircase word for
    /// A_n, n ≥ 3.
    pub fn reduced_words(&self) -> Vec<ReducedWord> {
        let words: Vec<Vec<usize>> = match &self.type_label {
            TypeLabel::A(1) => vec![vec![1]],
            TypeLabel::A(2) => vec![vec![1, 2, 1], vec![2, 1, 2]],
            TypeLabel::B2 | TypeLabel::C2 => vec![vec![1, 2, 1, 2], vec![2, 1, 2, 1]],
            TypeLabel::G2 => vec![vec![1, 2, 1, 2, 1, 2], vec![2, 1, 2, 1, 2, 1]],
            TypeLabel::A(n) => {
                let mut w = Vec::new();
                for k in 1..=*n {
                    for i in (1..=k).rev() {
                        w.push(i);
                    }
                }
                vec![w]
            }
        };
        let out: Vec<ReducedWord> = words
            .into_iter()
            .map(|letters| ReducedWord { letters })
            .collect();
        for w in &out {
            debug_assert!(self.validate_word(&w.letters));
        }
        out
    }

    /// True iff the letters form a reduced word for the longest element:
    /// correct length and the product acts as w₀ on weight coordinates.
    pub fn validate_word(&self, letters: &[usize]) -> bool {
        if letters.len() != self.num_positive() {
            return false;
        }
        if letters.iter().any(|&l| l < 1 || l > self.rank) {
            return false;
        }
        // product matrix on fundamental-weight coordinates, columns = images of ωⱼ
        let mut cols: Vec<Vec<Rat>> = (0..self.rank)
            .map(|j| {
                (0..self.rank)
                    .map(|i| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        for &l in letters.iter().rev() {
            for col in &mut cols {
                *col = self.reflect(col, l - 1);
            }
        }
        let w0 = self.longest_element_columns();
        cols == w0
    }

    /// Columns of w₀ acting on fundamental-weight coordinates.
    fn longest_element_columns(&self) -> Vec<Vec<Rat>> {
        match &self.type_label {
            TypeLabel::A(n) => (0..*n)
                .map(|j| {
                    // w₀(ω_{j+1}) = −ω_{n−j}
                    (0..*n)
                        .map(|i| if i == n - 1 - j { -Rat::one() } else { Rat::zero() })
                        .collect()
                })
                .collect(),
            _ => (0..self.rank)
                .map(|j| {
                    (0..self.rank)
                        .map(|i| if i == j { -Rat::one() } else { Rat::zero() })
                        .collect()
                })
                .collect(),
        }
    }

    /// Weyl-group length of the product of `letters` via the inversion count:
    /// the number of positive roots sent negative.
    pub fn inversion_count(&self, letters: &[usize]) -> usize {
        self.positive_roots
            .iter()
            .filter(|beta| {
                let mut b: Vec<Rat> = beta
                    .root_coeffs
                    .iter()
                    .map(|x| Rat::from_integer(x.clone()))
                    .collect();
                for &l in letters.iter().rev() {
                    // sᵢ on root coefficients: b ↦ b − ⟨β, αᵢ∨⟩ eᵢ
                    let i = l - 1;
                    let pairing: Rat = (0..self.rank)
                        .map(|j| Rat::from_integer(self.cartan[i][j].clone()) * &b[j])
                        .fold(Rat::zero(), |a, x| a + x);
                    b[i] = &b[i] - &pairing;
                }
                b.iter().any(|x| x.is_negative())
            })
            .count()
    }

    /// Simple root αᵢ (0-based) in fundamental-weight coordinates.
    pub fn simple_root_weight_coords(&self, i: usize) -> Vec<Int> {
        (0..self.rank).map(|k| self.cartan[k][i].clone()).collect()
    }
}

/// Convenience: weight from integer coordinates.
pub fn weight(coords: &[i64]) -> Vec<Rat> {
    coords.iter().map(|&c| Rat::from_integer(Int::from(c))).collect()
}
