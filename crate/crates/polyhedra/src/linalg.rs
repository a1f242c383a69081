//! Exact rational and integer linear algebra: echelon forms, kernels, lattice bases.

use crate::num::{primitive, Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Reduced row echelon form in place. Returns pivot column indices.
pub fn rref(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for x in &mut m[r] {
            *x = &*x / &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of the right kernel {x : M x = 0}; one vector per free column.
pub fn kernel_basis(rows: &[Vec<Rat>], dim: usize) -> Vec<Vec<Rat>> {
    for r in rows {
        assert_eq!(r.len(), dim, "kernel_basis: row length mismatch");
    }
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![Rat::zero(); dim];
        v[f] = Rat::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -m[r][f].clone();
        }
        basis.push(v);
    }
    basis
}

/// One solution of rows·x = rhs (free variables set to 0), if consistent.
pub fn solve(rows: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(rows.len(), rhs.len());
    let n = rows.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Rat>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&n) {
        return None; // pivot in the augmented column: inconsistent
    }
    let mut x = vec![Rat::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][n].clone();
    }
    Some(x)
}

/// Solve Σ_j u_j · cols[j] = rhs for u.
pub fn solve_columns(cols: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let n = rhs.len();
    let k = cols.len();
    for c in cols {
        assert_eq!(c.len(), n);
    }
    let rows: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..k).map(|j| cols[j][i].clone()).collect())
        .collect();
    solve(&rows, rhs)
}

/// Row Hermite reduction by unimodular row operations: echelon shape, positive
/// pivots, entries above each pivot reduced into [0, pivot). Zero rows sink to
/// the bottom.
pub fn row_hnf(m: &mut Vec<Vec<Int>>) {
    let rows = m.len();
    if rows == 0 {
        return;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if !m[i][c].is_zero()
                    && best.map_or(true, |b| m[i][c].abs() < m[b][c].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap(r, b);
            let mut any_left = false;
            for i in (r + 1)..rows {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[r][c]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let t = &m[r][j] * &q;
                        m[i][j] = &m[i][j] - &t;
                    }
                }
                if !m[i][c].is_zero() {
                    any_left = true;
                }
            }
            if any_left {
                continue;
            }
            if m[r][c].is_negative() {
                for j in 0..cols {
                    m[r][j] = -m[r][j].clone();
                }
            }
            for i in 0..r {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[r][c]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let t = &m[r][j] * &q;
                        m[i][j] = &m[i][j] - &t;
                    }
                }
            }
            r += 1;
            break;
        }
    }
}

/// Canonical basis (HNF rows) of the lattice generated by integer vectors.
pub fn hnf_basis(gens: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut m: Vec<Vec<Int>> = gens.to_vec();
    row_hnf(&mut m);
    m.retain(|row| row.iter().any(|x| !x.is_zero()));
    m
}

/// Basis of {x ∈ ℤ^n : A x = 0} for an integer matrix A (saturated by construction).
pub fn integer_kernel(a: &[Vec<Int>], n: usize) -> Vec<Vec<Int>> {
    let m = a.len();
    for row in a {
        assert_eq!(row.len(), n, "integer_kernel: row length mismatch");
    }
    // rows of [Aᵀ | I]: unimodular row reduction leaves kernel vectors in the I-part
    let mut w: Vec<Vec<Int>> = (0..n)
        .map(|i| {
            let mut row: Vec<Int> = (0..m).map(|j| a[j][i].clone()).collect();
            row.extend((0..n).map(|k| if k == i { Int::one() } else { Int::zero() }));
            row
        })
        .collect();
    row_hnf(&mut w);
    let mut ker: Vec<Vec<Int>> = w
        .into_iter()
        .filter(|row| row[..m].iter().all(|x| x.is_zero()))
        .map(|row| row[m..].to_vec())
        .collect();
    row_hnf(&mut ker);
    ker.retain(|row| row.iter().any(|x| !x.is_zero()));
    ker
}

/// Canonical basis of ℤ^n ∩ span(rows): the saturated lattice of a rational subspace.
pub fn subspace_lattice_basis(span_rows: &[Vec<Rat>], dim: usize) -> Vec<Vec<Int>> {
    let complement = kernel_basis(span_rows, dim);
    let rows: Vec<Vec<Int>> = complement.iter().map(|r| primitive(r)).collect();
    integer_kernel(&rows, dim)
}

/// Canonical representative of v modulo the row space of `rows`: pivot
/// coordinates are zeroed out.
pub fn reduce_mod_span(v: &[Rat], rows: &[Vec<Rat>]) -> Vec<Rat> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut v = v.to_vec();
    for (r, &c) in pivots.iter().enumerate() {
        if !v[c].is_zero() {
            let f = v[c].clone();
            for j in 0..v.len() {
                let t = &m[r][j] * &f;
                v[j] = &v[j] - &t;
            }
        }
    }
    v
}
