//! Rational polytopes: affine slices of cones, lattice points, normalized volume.

use crate::cone::RationalCone;
use crate::linalg::{integer_kernel, solve_columns, subspace_lattice_basis};
use crate::num::{
    int_to_rat, is_zero_vec, mixed_dot, primitive_int, rat_ceil, rat_floor, Int, Rat,
};
use crate::{LinearMap, PolyError};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    pub lattice: String,
    pub ambient_dim: usize,
    /// ⟨a, x⟩ ≥ b rows, primitive, reduced modulo the affine hull, sorted
    pub inequalities: Vec<(Vec<Int>, Int)>,
    /// ⟨a, x⟩ = b rows cutting out the affine hull
    pub equations: Vec<(Vec<Int>, Int)>,
    /// sorted lexicographically; empty iff the polytope is empty
    pub vertices: Vec<Vec<Rat>>,
    pub base_point: Option<Vec<Rat>>,
    /// canonical basis of ℤ^n ∩ (direction space of the affine hull)
    pub direction_basis: Vec<Vec<Int>>,
}

impl RationalPolytope {
    pub fn empty(lattice: &str, ambient_dim: usize) -> Self {
        RationalPolytope {
            lattice: lattice.into(),
            ambient_dim,
            inequalities: vec![],
            equations: vec![],
            vertices: vec![],
            base_point: None,
            direction_basis: vec![],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Dimension of the affine hull; −1 for the empty polytope.
    pub fn dim(&self) -> i64 {
        if self.is_empty() {
            -1
        } else {
            self.direction_basis.len() as i64
        }
    }

    /// Polytope {x : ⟨a,x⟩ ≥ b, ⟨e,x⟩ = c}. Returns the empty polytope when the
    /// system is infeasible and an error when it is feasible but unbounded.
    pub fn from_h(
        lattice: &str,
        n: usize,
        ineqs: &[(Vec<Rat>, Rat)],
        eqs: &[(Vec<Rat>, Rat)],
    ) -> Result<Self, PolyError> {
        // homogenize: (x, s) with ⟨a,x⟩ − b·s ≥ 0, ⟨e,x⟩ − c·s = 0, s ≥ 0
        let mut hi: Vec<Vec<Rat>> = ineqs
            .iter()
            .map(|(a, b)| {
                let mut row = a.clone();
                row.push(-b.clone());
                row
            })
            .collect();
        let mut s_row = vec![Rat::zero(); n];
        s_row.push(Rat::one());
        hi.push(s_row);
        let he: Vec<Vec<Rat>> = eqs
            .iter()
            .map(|(e, c)| {
                let mut row = e.clone();
                row.push(-c.clone());
                row
            })
            .collect();
        let hcone = RationalCone::from_h_raw(lattice, n + 1, &hi, &he);
        Self::from_homogeneous_cone(lattice, n, &hcone)
    }

    /// Convex hull of finitely many rational points.
    pub fn from_vertices(lattice: &str, n: usize, pts: &[Vec<Rat>]) -> Self {
        if pts.is_empty() {
            return Self::empty(lattice, n);
        }
        let gens: Vec<Vec<Rat>> = pts
            .iter()
            .map(|p| {
                assert_eq!(p.len(), n);
                let mut row = p.clone();
                row.push(Rat::one());
                row
            })
            .collect();
        let hcone = RationalCone::from_rays_raw(lattice, n + 1, &gens, &[]);
        // a cone generated at height 1 has no recession and no lineality
        Self::from_homogeneous_cone(lattice, n, &hcone)
            .expect("hull of finitely many points is bounded")
    }

    fn from_homogeneous_cone(
        lattice: &str,
        n: usize,
        hcone: &RationalCone,
    ) -> Result<Self, PolyError> {
        let mut vertices: Vec<Vec<Rat>> = Vec::new();
        let mut recession = false;
        for r in &hcone.rays {
            let s = &r[n];
            if s.is_zero() {
                recession = true;
            } else {
                let sr = Rat::from_integer(s.clone());
                vertices.push(r[..n].iter().map(|x| Rat::from_integer(x.clone()) / &sr).collect());
            }
        }
        if vertices.is_empty() {
            return Ok(Self::empty(lattice, n));
        }
        if recession || !hcone.lineality.is_empty() {
            return Err(PolyError::Unbounded);
        }
        vertices.sort();
        let mut inequalities: Vec<(Vec<Int>, Int)> = hcone
            .facets
            .iter()
            .filter(|row| !is_zero_vec(&row[..n]))
            .map(|row| (row[..n].to_vec(), -row[n].clone()))
            .collect();
        inequalities.sort();
        let equations: Vec<(Vec<Int>, Int)> = hcone
            .equations
            .iter()
            .filter(|row| !is_zero_vec(&row[..n]))
            .map(|row| (row[..n].to_vec(), -row[n].clone()))
            .collect();
        let base = vertices[0].clone();
        let dirs: Vec<Vec<Rat>> = vertices
            .iter()
            .skip(1)
            .map(|v| v.iter().zip(&base).map(|(a, b)| a - b).collect())
            .collect();
        let direction_basis = subspace_lattice_basis(&dirs, n);
        Ok(RationalPolytope {
            lattice: lattice.into(),
            ambient_dim: n,
            inequalities,
            equations,
            vertices,
            base_point: Some(base),
            direction_basis,
        })
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        assert_eq!(x.len(), self.ambient_dim);
        if self.is_empty() {
            return false;
        }
        self.inequalities
            .iter()
            .all(|(a, b)| mixed_dot(a, x) >= Rat::from_integer(b.clone()))
            && self
                .equations
                .iter()
                .all(|(e, c)| mixed_dot(e, x) == Rat::from_integer(c.clone()))
    }

    pub fn dilate(&self, k: u32) -> RationalPolytope {
        let kr = Rat::from_integer(Int::from(k));
        let pts: Vec<Vec<Rat>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * &kr).collect())
            .collect();
        Self::from_vertices(&self.lattice, self.ambient_dim, &pts)
    }
}

/// Fiber c⁻¹(λ) ∩ cone as a polytope; errors when the fiber is unbounded.
pub fn slice(
    cone: &RationalCone,
    c: &LinearMap,
    lambda: &[Rat],
) -> Result<RationalPolytope, PolyError> {
    if c.domain_rank != cone.dim {
        return Err(PolyError::DimensionMismatch(format!(
            "map domain rank {} vs cone ambient {}",
            c.domain_rank, cone.dim
        )));
    }
    if lambda.len() != c.codomain_rank {
        return Err(PolyError::DimensionMismatch(format!(
            "value length {} vs map codomain rank {}",
            lambda.len(),
            c.codomain_rank
        )));
    }
    if !c.is_integral() {
        return Err(PolyError::NonIntegralMap);
    }
    if !c.is_surjective() {
        return Err(PolyError::NotSurjectiveMap);
    }
    let ineqs: Vec<(Vec<Rat>, Rat)> = cone
        .facets
        .iter()
        .map(|f| (int_to_rat(f), Rat::zero()))
        .collect();
    let mut eqs: Vec<(Vec<Rat>, Rat)> = cone
        .equations
        .iter()
        .map(|e| (int_to_rat(e), Rat::zero()))
        .collect();
    for (row, li) in c.matrix.iter().zip(lambda) {
        eqs.push((row.clone(), li.clone()));
    }
    RationalPolytope::from_h(&cone.lattice, cone.dim, &ineqs, &eqs).map_err(|e| match e {
        PolyError::Unbounded => PolyError::UnboundedFiber,
        other => other,
    })
}

/// Primitive integer form of a row (a | b), scaling by the positive gcd.
fn primitive_row(a: &[Int], b: &Int) -> (Vec<Int>, Int) {
    let mut all = a.to_vec();
    all.push(b.clone());
    let all = primitive_int(&all);
    (all[..a.len()].to_vec(), all[a.len()].clone())
}

/// All integer points, sorted lexicographically, via Fourier–Motzkin prefix
/// projections and interval enumeration.
pub fn lattice_points(p: &RationalPolytope) -> Vec<Vec<Int>> {
    if p.is_empty() {
        return vec![];
    }
    let n = p.ambient_dim;
    if n == 0 {
        return vec![vec![]];
    }
    let mut rows: Vec<(Vec<Int>, Int)> = Vec::new();
    for (a, b) in &p.inequalities {
        rows.push((a.clone(), b.clone()));
    }
    for (e, c) in &p.equations {
        rows.push((e.clone(), c.clone()));
        rows.push((e.iter().map(|x| -x.clone()).collect(), -c.clone()));
    }
    // levels[j]: constraints with support in the first j variables
    let mut levels: Vec<Vec<(Vec<Int>, Int)>> = vec![Vec::new(); n + 1];
    let mut cur: BTreeSet<(Vec<Int>, Int)> = rows.iter().map(|(a, b)| primitive_row(a, b)).collect();
    for j in (1..=n).rev() {
        levels[j] = cur.iter().cloned().collect();
        let mut next: BTreeSet<(Vec<Int>, Int)> = BTreeSet::new();
        let pos: Vec<&(Vec<Int>, Int)> = cur.iter().filter(|(a, _)| a[j - 1].is_positive()).collect();
        let neg: Vec<&(Vec<Int>, Int)> = cur.iter().filter(|(a, _)| a[j - 1].is_negative()).collect();
        for (a, b) in cur.iter().filter(|(a, _)| a[j - 1].is_zero()) {
            next.insert((a.clone(), b.clone()));
        }
        for p in &pos {
            let (pa, pb) = (&p.0, &p.1);
            for q in &neg {
                let (na, nb) = (&q.0, &q.1);
                // cp·(na,nb) + cn·(pa,pb) eliminates variable j−1
                let cp = pa[j - 1].clone();
                let cn = -na[j - 1].clone();
                let row: Vec<Int> = pa
                    .iter()
                    .zip(na.iter())
                    .map(|(x, y)| &cp * y + &cn * x)
                    .collect();
                let b = &cp * nb + &cn * pb;
                debug_assert!(row[j - 1].is_zero());
                if is_zero_vec(&row) {
                    // 0 ≥ b: infeasibility would have surfaced as emptiness already
                    debug_assert!(!b.is_positive());
                    continue;
                }
                next.insert(primitive_row(&row, &b));
            }
        }
        cur = next;
    }

    let mut out = Vec::new();
    let mut prefix: Vec<Int> = Vec::new();
    enumerate(&levels, n, &mut prefix, &mut out);
    out
}

fn enumerate(
    levels: &[Vec<(Vec<Int>, Int)>],
    n: usize,
    prefix: &mut Vec<Int>,
    out: &mut Vec<Vec<Int>>,
) {
    let j = prefix.len();
    if j == n {
        out.push(prefix.clone());
        return;
    }
    let mut lo: Option<Int> = None;
    let mut hi: Option<Int> = None;
    for (a, b) in &levels[j + 1] {
        let c = &a[j];
        if c.is_zero() {
            continue; // already enforced at an earlier level
        }
        let mut rhs = Rat::from_integer(b.clone());
        for (i, x) in prefix.iter().enumerate() {
            rhs -= Rat::from_integer(&a[i] * x);
        }
        let bound = rhs / Rat::from_integer(c.clone());
        if c.is_positive() {
            let v = rat_ceil(&bound);
            lo = Some(match lo {
                Some(l) => l.max(v),
                None => v,
            });
        } else {
            let v = rat_floor(&bound);
            hi = Some(match hi {
                Some(h) => h.min(v),
                None => v,
            });
        }
    }
    let (Some(lo), Some(hi)) = (lo, hi) else {
        panic!("lattice_points requires a bounded polytope");
    };
    let mut x = lo;
    while x <= hi {
        prefix.push(x.clone());
        enumerate(levels, n, prefix, out);
        prefix.pop();
        x += Int::one();
    }
}

/// Exact volume normalized so the fundamental cell of the lattice induced in
/// the affine hull has volume 1. A point has volume 1; the empty polytope 0.
pub fn volume(p: &RationalPolytope) -> Rat {
    if p.is_empty() {
        return Rat::zero();
    }
    let d = p.direction_basis.len();
    if d == 0 {
        return Rat::one();
    }
    let base = p.base_point.as_ref().unwrap();
    let cols: Vec<Vec<Rat>> = p.direction_basis.iter().map(|b| int_to_rat(b)).collect();
    let us: Vec<Vec<Rat>> = p
        .vertices
        .iter()
        .map(|v| {
            let rhs: Vec<Rat> = v.iter().zip(base).map(|(a, b)| a - b).collect();
            solve_columns(&cols, &rhs).expect("vertex lies in the affine hull")
        })
        .collect();
    normalized_volume_full_dim(&us, d)
}

/// Volume of a full-dimensional polytope given by its vertices in ℝ^d,
/// normalized against ℤ^d, by pyramid decomposition over facets: the lattice
/// height of the apex over a facet with primitive integer normal is just the
/// difference of functional values.
fn normalized_volume_full_dim(pts: &[Vec<Rat>], d: usize) -> Rat {
    if d == 0 {
        return Rat::one();
    }
    if d == 1 {
        let mut lo = pts[0][0].clone();
        let mut hi = pts[0][0].clone();
        for p in pts {
            if p[0] < lo {
                lo = p[0].clone();
            }
            if p[0] > hi {
                hi = p[0].clone();
            }
        }
        return hi - lo;
    }
    let gens: Vec<Vec<Rat>> = pts
        .iter()
        .map(|p| {
            let mut row = p.clone();
            row.push(Rat::one());
            row
        })
        .collect();
    let hcone = RationalCone::from_rays_raw("vol", d + 1, &gens, &[]);
    debug_assert!(hcone.equations.is_empty(), "expected full-dimensional hull");
    let x0 = &pts[0];
    let mut total = Rat::zero();
    for row in &hcone.facets {
        let a = &row[..d];
        if is_zero_vec(a) {
            continue;
        }
        let c = &row[d];
        // (a | c) is primitive as a (d+1)-vector; the lattice height needs the
        // x-part alone primitive, so divide out its content (offsets of
        // facets through rational vertices need not be integral).
        let content = a.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
        let h = (mixed_dot(a, x0) + Rat::from_integer(c.clone())) / Rat::from_integer(content);
        if h.is_zero() {
            continue;
        }
        debug_assert!(h.is_positive(), "base point violates a hull facet");
        let on_facet: Vec<Vec<Rat>> = pts
            .iter()
            .filter(|p| (mixed_dot(a, p) + Rat::from_integer(c.clone())).is_zero())
            .cloned()
            .collect();
        let sub_basis = integer_kernel(&[a.to_vec()], d);
        debug_assert_eq!(sub_basis.len(), d - 1);
        let cols: Vec<Vec<Rat>> = sub_basis.iter().map(|b| int_to_rat(b)).collect();
        let fbase = &on_facet[0];
        let sub_pts: Vec<Vec<Rat>> = on_facet
            .iter()
            .map(|p| {
                let rhs: Vec<Rat> = p.iter().zip(fbase).map(|(x, y)| x - y).collect();
                solve_columns(&cols, &rhs).expect("facet point lies in the facet hull")
            })
            .collect();
        total += h * normalized_volume_full_dim(&sub_pts, d - 1);
    }
    total / Rat::from_integer(Int::from(d as u32))
}
