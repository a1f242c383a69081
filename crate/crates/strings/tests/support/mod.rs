//! Exact piecewise-linear path crystal, used as an independent enumeration
//! oracle. Paths are polylines in weight space with rational breakpoints,
//! identified up to reparametrization; root operators reflect the segment
//! where the pairing function last attains its minimum.

use num_traits::{One, Signed, Zero};
use polyhedra::num::{Int, Rat};
use rootsys::RootSystem;
use std::collections::{BTreeSet, VecDeque};

/// Canonical polyline: breakpoints starting at the origin, no zero or
/// consecutively parallel increments.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Path {
    pub pts: Vec<Vec<Rat>>,
}

fn parallel_same_direction(u: &[Rat], v: &[Rat]) -> bool {
    // u = c·v with c > 0
    let mut c: Option<Rat> = None;
    for (a, b) in u.iter().zip(v) {
        if b.is_zero() {
            if !a.is_zero() {
                return false;
            }
        } else {
            let q = a / b;
            match &c {
                None => {
                    if !q.is_positive() {
                        return false;
                    }
                    c = Some(q);
                }
                Some(prev) => {
                    if *prev != q {
                        return false;
                    }
                }
            }
        }
    }
    c.is_some()
}

impl Path {
    pub fn straight(target: &[Rat]) -> Path {
        let zero = vec![Rat::zero(); target.len()];
        if target.iter().all(|x| x.is_zero()) {
            return Path { pts: vec![zero] };
        }
        Path {
            pts: vec![zero, target.to_vec()],
        }
    }

    pub fn endpoint(&self) -> &[Rat] {
        self.pts.last().unwrap()
    }

    fn canonical(mut pts: Vec<Vec<Rat>>) -> Path {
        let mut out: Vec<Vec<Rat>> = vec![pts.remove(0)];
        for p in pts {
            if &p == out.last().unwrap() {
                continue;
            }
            if out.len() >= 2 {
                let a = &out[out.len() - 2];
                let b = &out[out.len() - 1];
                let u: Vec<Rat> = b.iter().zip(a).map(|(x, y)| x - y).collect();
                let v: Vec<Rat> = p.iter().zip(b).map(|(x, y)| x - y).collect();
                if parallel_same_direction(&u, &v) {
                    out.pop();
                }
            }
            out.push(p);
        }
        Path { pts: out }
    }
}

/// Pairing heights ⟨π(t), αᵢ∨⟩ at the breakpoints (fundamental-weight
/// coordinates make this the i-th coordinate).
fn heights(path: &Path, i: usize) -> Vec<Rat> {
    path.pts.iter().map(|p| p[i].clone()).collect()
}

fn reflect_from(rs: &RootSystem, base: &[Rat], q: &[Rat], i: usize) -> Vec<Rat> {
    let diff: Vec<Rat> = q.iter().zip(base).map(|(x, y)| x - y).collect();
    let refl = rs.reflect(&diff, i);
    base.iter().zip(&refl).map(|(x, y)| x + y).collect()
}

fn alpha(rs: &RootSystem, i: usize) -> Vec<Rat> {
    rs.simple_root_weight_coords(i)
        .iter()
        .map(|x| Rat::from_integer(x.clone()))
        .collect()
}

/// Point where the height crosses `level` inside segment (pts[j], pts[j+1]).
fn crossing(path: &Path, i: usize, j: usize, level: &Rat) -> Vec<Rat> {
    let a = &path.pts[j];
    let b = &path.pts[j + 1];
    let ha = &a[i];
    let hb = &b[i];
    let s = (level - ha) / (hb - ha);
    a.iter()
        .zip(b)
        .map(|(x, y)| x + (y - x) * &s)
        .collect()
}

/// Raising operator eᵢ (0-based i), or None when the path is already
/// αᵢ-highest.
pub fn e_op(rs: &RootSystem, path: &Path, i: usize) -> Option<Path> {
    let h = heights(path, i);
    let m = h.iter().min().unwrap().clone();
    if m > -Rat::one() {
        return None;
    }
    assert!(m.is_integer(), "integral path minima");
    // first attainment of the minimum
    let k1 = h.iter().position(|x| *x == m).unwrap();
    let level = &m + Rat::one();
    // walk back to the last time the height was m + 1
    let mut j = k1;
    let mut base: Option<(usize, Vec<Rat>)> = None;
    while j > 0 {
        j -= 1;
        if h[j] >= level {
            let pt = if h[j] == level {
                path.pts[j].clone()
            } else {
                crossing(path, i, j, &level)
            };
            base = Some((j, pt));
            break;
        }
    }
    let (j0, base_pt) = base.expect("height starts at 0 ≥ m + 1");
    let mut pts: Vec<Vec<Rat>> = path.pts[..=j0].to_vec();
    pts.push(base_pt.clone());
    for q in &path.pts[j0 + 1..=k1] {
        pts.push(reflect_from(rs, &base_pt, q, i));
    }
    let al = alpha(rs, i);
    for q in &path.pts[k1..] {
        pts.push(q.iter().zip(&al).map(|(x, y)| x + y).collect());
    }
    Some(Path::canonical(pts))
}

/// Lowering operator fᵢ, or None when the string drops out of the crystal.
pub fn f_op(rs: &RootSystem, path: &Path, i: usize) -> Option<Path> {
    let h = heights(path, i);
    let m = h.iter().min().unwrap().clone();
    let last = h.last().unwrap();
    if last - &m < Rat::one() {
        return None;
    }
    assert!(m.is_integer(), "integral path minima");
    // last attainment of the minimum
    let k0 = h.iter().rposition(|x| *x == m).unwrap();
    let level = &m + Rat::one();
    // walk forward to the first time the height is back at m + 1
    let mut cut: Option<(usize, Vec<Rat>)> = None;
    for j in k0..path.pts.len() - 1 {
        if h[j + 1] >= level {
            let pt = if h[j + 1] == level {
                path.pts[j + 1].clone()
            } else {
                crossing(path, i, j, &level)
            };
            cut = Some((j, pt));
            break;
        }
    }
    let (j1, cut_pt) = cut.expect("height returns to m + 1");
    let base_pt = path.pts[k0].clone();
    let mut pts: Vec<Vec<Rat>> = path.pts[..=k0].to_vec();
    for q in &path.pts[k0 + 1..=j1] {
        pts.push(reflect_from(rs, &base_pt, q, i));
    }
    pts.push(reflect_from(rs, &base_pt, &cut_pt, i));
    let al = alpha(rs, i);
    for q in std::iter::once(&cut_pt).chain(&path.pts[j1 + 1..]) {
        pts.push(q.iter().zip(&al).map(|(x, y)| x - y).collect());
    }
    Some(Path::canonical(pts))
}

/// The crystal generated from the straight path to dominant λ.
pub fn crystal(rs: &RootSystem, lambda: &[Rat]) -> BTreeSet<Path> {
    assert!(rs.is_dominant(lambda));
    let start = Path::straight(lambda);
    let mut seen: BTreeSet<Path> = BTreeSet::from([start.clone()]);
    let mut queue: VecDeque<Path> = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for i in 0..rs.rank {
            if let Some(q) = f_op(rs, &p, i) {
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
    }
    seen
}

/// String coordinates of a path: repeatedly raise along the word letters.
pub fn string_coords(rs: &RootSystem, path: &Path, letters: &[usize]) -> Vec<Int> {
    let mut cur = path.clone();
    let mut out = Vec::with_capacity(letters.len());
    for &l in letters {
        let mut count = 0i64;
        while let Some(up) = e_op(rs, &cur, l - 1) {
            cur = up;
            count += 1;
        }
        out.push(Int::from(count));
    }
    assert!(
        cur.pts.len() <= 2 && rs.is_dominant(cur.endpoint()),
        "string extraction must terminate at the highest path"
    );
    out
}

/// All string vectors of the λ-crystal for a reduced word.
pub fn crystal_strings(rs: &RootSystem, lambda: &[Rat], letters: &[usize]) -> BTreeSet<Vec<Int>> {
    crystal(rs, lambda)
        .iter()
        .map(|p| string_coords(rs, p, letters))
        .collect()
}

/// Dominant integral weights with ⟨λ, ρ∨⟩ ≤ bound.
pub fn small_dominant_weights(rs: &RootSystem, bound: i64) -> Vec<Vec<Rat>> {
    let rho_cov: Vec<Rat> = (0..rs.rank)
        .map(|j| {
            rs.positive_roots
                .iter()
                .map(|r| Rat::from_integer(r.coroot_coeffs[j].clone()))
                .fold(Rat::zero(), |a, x| a + x)
                / Rat::from_integer(Int::from(2))
        })
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<i64>> = vec![vec![]];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == rs.rank {
            let lam: Vec<Rat> = prefix.iter().map(|&x| Rat::from_integer(Int::from(x))).collect();
            let height: Rat = lam
                .iter()
                .zip(&rho_cov)
                .map(|(a, b)| a * b)
                .fold(Rat::zero(), |a, x| a + x);
            if height <= Rat::from_integer(Int::from(bound)) {
                out.push(lam);
            }
            continue;
        }
        // ⟨ωᵢ, ρ∨⟩ ≥ 1/2, so 2·bound caps every coordinate; the final filter is exact
        for v in 0..=2 * bound {
            let mut next = prefix.clone();
            next.push(v);
            stack.push(next);
        }
    }
    out.sort();
    out
}
