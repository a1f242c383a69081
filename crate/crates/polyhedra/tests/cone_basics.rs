//! Hand-checked double-description and face-lattice cases.

use polyhedra::num::{int, rat, Rat};
use polyhedra::{cone_from_inequalities, faces, LatticeVector, RationalCone};

fn lv(coords: &[i64]) -> LatticeVector {
    LatticeVector::new(coords.iter().map(|&x| rat(x)).collect(), "Z^2")
}

fn rows(list: &[&[i64]]) -> Vec<Vec<Rat>> {
    list.iter()
        .map(|r| r.iter().map(|&x| rat(x)).collect())
        .collect()
}

fn int_rows(list: &[&[i64]]) -> Vec<Vec<polyhedra::num::Int>> {
    list.iter()
        .map(|r| r.iter().map(|&x| int(x)).collect())
        .collect()
}

#[test]
fn orthant_rays() {
    let c = cone_from_inequalities("Z^2", 2, &[lv(&[1, 0]), lv(&[0, 1])]).unwrap();
    assert_eq!(c.rays, int_rows(&[&[0, 1], &[1, 0]]));
    assert!(c.lineality.is_empty());
    assert!(c.is_strongly_convex());
}

#[test]
fn wedge_rays_by_hand() {
    // {x+y ≥ 0, x−y ≥ 0} has extreme rays (1,1) and (1,−1)
    let c = cone_from_inequalities("Z^2", 2, &[lv(&[1, 1]), lv(&[1, -1])]).unwrap();
    assert_eq!(c.rays, int_rows(&[&[1, -1], &[1, 1]]));
    assert!(c.lineality.is_empty());
}

#[test]
fn no_constraints_full_plane() {
    let c = cone_from_inequalities("Z^2", 2, &[]).unwrap();
    assert!(c.rays.is_empty());
    assert_eq!(c.lineality, int_rows(&[&[1, 0], &[0, 1]]));
    assert!(!c.is_strongly_convex());
    assert!(c.facets.is_empty());
    assert!(c.equations.is_empty());
}

#[test]
fn mixed_lattice_rejected() {
    let bad = LatticeVector::new(vec![rat(1), rat(0)], "Z^3");
    assert!(cone_from_inequalities("Z^2", 2, &[lv(&[1, 0]), bad]).is_err());
}

#[test]
fn half_plane_not_strongly_convex() {
    let c = cone_from_inequalities("Z^2", 2, &[lv(&[1, 0])]).unwrap();
    assert!(!c.is_strongly_convex());
    assert_eq!(c.lineality, int_rows(&[&[0, 1]]));
    assert_eq!(c.rays, int_rows(&[&[1, 0]]));
    assert!(faces(&c).is_err());
}

#[test]
fn opposite_halfspaces_give_zero_cone() {
    let c = cone_from_inequalities("Z^2", 2, &[lv(&[1, 0]), lv(&[-1, 0]), lv(&[0, 1]), lv(&[0, -1])])
        .unwrap();
    assert!(c.rays.is_empty());
    assert!(c.lineality.is_empty());
    assert_eq!(c.equations.len(), 2);
    assert_eq!(c.span_dim(), 0);
}

#[test]
fn orthant_face_counts() {
    let c2 = cone_from_inequalities("Z^2", 2, &[lv(&[1, 0]), lv(&[0, 1])]).unwrap();
    assert_eq!(faces(&c2).unwrap().faces.len(), 4);

    let r3: Vec<LatticeVector> = (0..3)
        .map(|i| {
            let mut v = vec![rat(0); 3];
            v[i] = rat(1);
            LatticeVector::new(v, "Z^3")
        })
        .collect();
    let c3 = cone_from_inequalities("Z^3", 3, &r3).unwrap();
    assert_eq!(faces(&c3).unwrap().faces.len(), 8);
}

#[test]
fn cone_over_unit_square_has_ten_faces() {
    // rays (0,0,1), (1,0,1), (0,1,1), (1,1,1)
    let gens = rows(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]);
    let c = RationalCone::from_rays_raw("Z^3", 3, &gens, &[]);
    assert_eq!(c.rays.len(), 4);
    let fl = faces(&c).unwrap();
    assert_eq!(fl.faces.len(), 10);
    let by_codim = |k: usize| fl.faces.iter().filter(|f| f.codim == k).count();
    assert_eq!(by_codim(0), 1); // the cone
    assert_eq!(by_codim(1), 4); // facets
    assert_eq!(by_codim(2), 4); // rays
    assert_eq!(by_codim(3), 1); // apex
}

#[test]
fn face_closure_and_order() {
    let gens = rows(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]);
    let c = RationalCone::from_rays_raw("Z^3", 3, &gens, &[]);
    let fl = faces(&c).unwrap();
    for i in 0..fl.faces.len() {
        for j in 0..fl.faces.len() {
            if fl.leq(i, j) {
                // every ray of the smaller face is a ray of the larger
                for ri in &fl.faces[i].ray_indices {
                    assert!(fl.faces[j].ray_indices.contains(ri));
                }
                assert!(fl.faces[i].cone.is_face_of(&fl.faces[j].cone));
            }
        }
        assert!(fl.faces[i].cone.is_face_of(&c));
    }
    // intersections of faces are faces
    for i in 0..fl.faces.len() {
        for j in 0..fl.faces.len() {
            let meet: std::collections::BTreeSet<usize> = fl.faces[i]
                .ray_indices
                .iter()
                .filter(|r| fl.faces[j].ray_indices.contains(r))
                .cloned()
                .collect();
            assert!(fl.find(&meet).is_some());
        }
    }
}

#[test]
fn canonical_roundtrip_equality() {
    let gens = rows(&[&[2, 1, 0], &[0, 1, 2], &[1, 1, 1], &[0, 0, 1]]);
    let c = RationalCone::from_rays_raw("Z^3", 3, &gens, &[]);
    let fr: Vec<Vec<Rat>> = c.facets.iter().map(|f| f.iter().map(|x| Rat::from_integer(x.clone())).collect()).collect();
    let er: Vec<Vec<Rat>> = c.equations.iter().map(|e| e.iter().map(|x| Rat::from_integer(x.clone())).collect()).collect();
    let c2 = RationalCone::from_h_raw("Z^3", 3, &fr, &er);
    assert_eq!(c, c2);
}

#[test]
fn dual_of_orthant_is_orthant() {
    let c = cone_from_inequalities("Z^2", 2, &[lv(&[1, 0]), lv(&[0, 1])]).unwrap();
    let d = c.dual();
    assert_eq!(c, d);
}

#[test]
fn image_of_orthant_under_sum() {
    let c = cone_from_inequalities("Z^2", 2, &[lv(&[1, 0]), lv(&[0, 1])]).unwrap();
    let m = polyhedra::LinearMap::new(vec![vec![rat(1), rat(1)]], "Z^2", "Z", 2);
    let img = c.image(&m);
    assert_eq!(img.rays, int_rows(&[&[1]]));
}
