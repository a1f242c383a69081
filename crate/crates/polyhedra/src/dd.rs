//! Double description: extreme rays and lineality of {x : E x = 0, A x ≥ 0}.

use crate::linalg::subspace_lattice_basis;
use crate::num::{idot, int_to_rat, is_zero_vec, neg_vec, primitive, primitive_int, Int, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

pub struct DualDescription {
    /// extreme rays (modulo lineality), primitive, sorted lexicographically
    pub rays: Vec<Vec<Int>>,
    /// canonical (HNF) basis of the saturated lineality lattice
    pub lineality: Vec<Vec<Int>>,
}

/// Primitive integer combination c1·v1 − c2·v2.
fn comb(c1: &Int, v1: &[Int], c2: &Int, v2: &[Int]) -> Vec<Int> {
    let raw: Vec<Int> = v1.iter().zip(v2).map(|(a, b)| c1 * a - c2 * b).collect();
    primitive_int(&raw)
}

pub fn dual_description(dim: usize, eqs: &[Vec<Rat>], ineqs: &[Vec<Rat>]) -> DualDescription {
    let eqs: Vec<Vec<Int>> = eqs
        .iter()
        .map(|r| primitive(r))
        .filter(|r| !is_zero_vec(r))
        .collect();
    let ineqs: Vec<Vec<Int>> = ineqs
        .iter()
        .map(|r| primitive(r))
        .filter(|r| !is_zero_vec(r))
        .collect();

    let mut lineality: Vec<Vec<Int>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect();
    let mut rays: Vec<Vec<Int>> = Vec::new();
    let mut tight: Vec<BTreeSet<u32>> = Vec::new();

    // Equations first: each either kills one lineality direction or already holds.
    // No rays exist yet, so no ray bookkeeping is needed here.
    for e in &eqs {
        if let Some(k) = lineality.iter().position(|l| !idot(e, l).is_zero()) {
            let l0 = lineality.remove(k);
            let d0 = idot(e, &l0);
            for l in &mut lineality {
                let d = idot(e, l);
                if !d.is_zero() {
                    *l = comb(&d0, l, &d, &l0);
                }
            }
        }
    }

    for (id, a) in (0u32..).zip(ineqs.iter()) {
        if let Some(k) = lineality.iter().position(|l| !idot(a, l).is_zero()) {
            // pivot: one lineality direction leaves; its positive half becomes a ray
            let l0 = lineality.remove(k);
            let d0 = idot(a, &l0);
            for l in &mut lineality {
                let d = idot(a, l);
                if !d.is_zero() {
                    *l = comb(&d0, l, &d, &l0);
                }
            }
            for (r, t) in rays.iter_mut().zip(tight.iter_mut()) {
                let d = idot(a, r);
                if !d.is_zero() {
                    let mut nr = comb(&d0, r, &d, &l0);
                    if d0.is_negative() {
                        nr = neg_vec(&nr);
                    }
                    *r = nr;
                }
                t.insert(id);
            }
            let r0 = if d0.is_positive() { l0 } else { neg_vec(&l0) };
            rays.push(r0);
            tight.push((0..id).collect());
            continue;
        }
        // a vanishes on the lineality space; split rays by sign
        let vals: Vec<Int> = rays.iter().map(|r| idot(a, r)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (t, v) in tight.iter_mut().zip(&vals) {
                if v.is_zero() {
                    t.insert(id);
                }
            }
            continue;
        }
        let plus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut new_rays = Vec::new();
        let mut new_tight = Vec::new();
        for i in 0..rays.len() {
            if !vals[i].is_negative() {
                let mut t = tight[i].clone();
                if vals[i].is_zero() {
                    t.insert(id);
                }
                new_rays.push(rays[i].clone());
                new_tight.push(t);
            }
        }
        for &p in &plus {
            for &m in &minus {
                let common: BTreeSet<u32> =
                    tight[p].intersection(&tight[m]).cloned().collect();
                let adjacent = !(0..rays.len())
                    .any(|k| k != p && k != m && common.is_subset(&tight[k]));
                if !adjacent {
                    continue;
                }
                // vals[p]·rays[m] − vals[m]·rays[p] lands on the hyperplane
                let nr = comb(&vals[p], &rays[m], &vals[m], &rays[p]);
                let mut t = common;
                t.insert(id);
                new_rays.push(nr);
                new_tight.push(t);
            }
        }
        rays = new_rays;
        tight = new_tight;
    }

    rays.sort();
    rays.dedup();
    let lin_rows: Vec<Vec<Rat>> = lineality.iter().map(|l| int_to_rat(l)).collect();
    let lineality = subspace_lattice_basis(&lin_rows, dim);
    DualDescription { rays, lineality }
}
