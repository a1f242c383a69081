//! Slices, lattice points, and normalized volumes on hand-checked inputs.

use polyhedra::num::{int, rat, ratio, Rat};
use polyhedra::{
    cone_from_inequalities, lattice_points, slice, volume, LatticeVector, LinearMap, PolyError,
    RationalPolytope,
};

fn lv(coords: &[i64], lat: &str) -> LatticeVector {
    LatticeVector::new(coords.iter().map(|&x| rat(x)).collect(), lat)
}

fn pts(list: &[&[i64]]) -> Vec<Vec<Rat>> {
    list.iter()
        .map(|p| p.iter().map(|&x| rat(x)).collect())
        .collect()
}

/// {(t, h) : 0 ≤ t ≤ h} sliced at h = λ.
fn interval_cone() -> polyhedra::RationalCone {
    cone_from_inequalities("Z^2", 2, &[lv(&[1, 0], "Z^2"), lv(&[-1, 1], "Z^2")]).unwrap()
}

fn second_coord() -> LinearMap {
    LinearMap::new(vec![vec![rat(0), rat(1)]], "Z^2", "Z", 2)
}

#[test]
fn segment_slice_points_and_volume() {
    let p = slice(&interval_cone(), &second_coord(), &[rat(3)]).unwrap();
    assert_eq!(p.dim(), 1);
    assert_eq!(p.vertices, pts(&[&[0, 3], &[3, 3]]));
    let ls = lattice_points(&p);
    assert_eq!(ls.len(), 4);
    assert_eq!(ls[0], vec![int(0), int(3)]);
    assert_eq!(ls[3], vec![int(3), int(3)]);
    assert_eq!(volume(&p), rat(3));
}

#[test]
fn zero_slice_is_a_point() {
    let p = slice(&interval_cone(), &second_coord(), &[rat(0)]).unwrap();
    assert_eq!(p.dim(), 0);
    assert_eq!(p.vertices, pts(&[&[0, 0]]));
    assert_eq!(volume(&p), rat(1));
    assert_eq!(lattice_points(&p).len(), 1);
}

#[test]
fn negative_slice_is_empty() {
    let p = slice(&interval_cone(), &second_coord(), &[rat(-2)]).unwrap();
    assert!(p.is_empty());
    assert_eq!(p.dim(), -1);
    assert_eq!(volume(&p), rat(0));
    assert!(lattice_points(&p).is_empty());
}

#[test]
fn unbounded_fiber_is_an_error() {
    // diagonal functional on the orthant: fiber x − y = 0 is a ray
    let orthant =
        cone_from_inequalities("Z^2", 2, &[lv(&[1, 0], "Z^2"), lv(&[0, 1], "Z^2")]).unwrap();
    let diff = LinearMap::new(vec![vec![rat(1), rat(-1)]], "Z^2", "Z", 2);
    match slice(&orthant, &diff, &[rat(0)]) {
        Err(PolyError::UnboundedFiber) => {}
        other => panic!("expected unbounded fiber, got {other:?}"),
    }
}

#[test]
fn square_lattice_points() {
    let square = RationalPolytope::from_vertices(
        "Z^2",
        2,
        &pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]),
    );
    assert_eq!(lattice_points(&square).len(), 9);
    assert_eq!(volume(&square), rat(4));
}

#[test]
fn unit_simplex_volume_is_one_sixth() {
    let s = RationalPolytope::from_vertices(
        "Z^3",
        3,
        &pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
    );
    assert_eq!(volume(&s), ratio(1, 6));
    assert_eq!(lattice_points(&s).len(), 4);
}

#[test]
fn unit_cube_volume_is_one() {
    let mut vs = Vec::new();
    for a in 0..2i64 {
        for b in 0..2i64 {
            for c in 0..2i64 {
                vs.push(vec![rat(a), rat(b), rat(c)]);
            }
        }
    }
    let cube = RationalPolytope::from_vertices("Z^3", 3, &vs);
    assert_eq!(volume(&cube), rat(1));
    assert_eq!(lattice_points(&cube).len(), 8);
}

#[test]
fn diagonal_segment_measured_against_induced_lattice() {
    // [(0,0), (2,2)] has lattice length 2, not Euclidean length
    let seg = RationalPolytope::from_vertices("Z^2", 2, &pts(&[&[0, 0], &[2, 2]]));
    assert_eq!(seg.dim(), 1);
    assert_eq!(volume(&seg), rat(2));
    assert_eq!(lattice_points(&seg).len(), 3);
}

#[test]
fn lower_dimensional_triangle_volume() {
    // triangle in the plane x+y+z = 3: conv{3e1, 3e2, 3e3} is 9/2 against Z^3 ∩ {sum 0}
    let t = RationalPolytope::from_vertices(
        "Z^3",
        3,
        &pts(&[&[3, 0, 0], &[0, 3, 0], &[0, 0, 3]]),
    );
    assert_eq!(t.dim(), 2);
    assert_eq!(volume(&t), ratio(9, 2));
    assert_eq!(lattice_points(&t).len(), 10);
}

#[test]
fn interior_point_is_not_a_vertex() {
    let p = RationalPolytope::from_vertices("Z^2", 2, &pts(&[&[0, 0], &[2, 0], &[1, 0]]));
    assert_eq!(p.vertices, pts(&[&[0, 0], &[2, 0]]));
}

#[test]
fn dilate_scales_slice() {
    let cone = interval_cone();
    let c = second_coord();
    let p1 = slice(&cone, &c, &[rat(2)]).unwrap();
    let p3 = slice(&cone, &c, &[rat(6)]).unwrap();
    assert_eq!(p1.dilate(3), p3);
}

#[test]
fn hull_with_rational_vertices() {
    let p = RationalPolytope::from_vertices(
        "Z^1",
        1,
        &[vec![ratio(1, 2)], vec![ratio(7, 2)]],
    );
    assert_eq!(volume(&p), rat(3));
    // integer points of [1/2, 7/2] are 1, 2, 3
    assert_eq!(lattice_points(&p).len(), 3);
}

#[test]
fn contains_checks_h_description() {
    let square = RationalPolytope::from_vertices("Z^2", 2, &pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]));
    assert!(square.contains(&[rat(1), rat(1)]));
    assert!(square.contains(&[ratio(1, 2), rat(2)]));
    assert!(!square.contains(&[rat(3), rat(0)]));
}

#[test]
fn rational_vertex_volumes_use_primitive_heights() {
    // facets through rational vertices have non-primitive x-parts after
    // row clearing; the half-open simplex exercises that path in every dim
    let tri = RationalPolytope::from_vertices(
        "Z",
        2,
        &[
            vec![rat(0), rat(0)],
            vec![ratio(1, 2), rat(0)],
            vec![rat(0), ratio(1, 2)],
        ],
    );
    assert_eq!(volume(&tri), ratio(1, 8));
    let tet = RationalPolytope::from_vertices(
        "Z",
        3,
        &[
            vec![rat(0), rat(0), rat(0)],
            vec![ratio(1, 2), rat(0), rat(0)],
            vec![rat(0), ratio(1, 2), rat(0)],
            vec![rat(0), rat(0), ratio(3, 2)],
        ],
    );
    assert_eq!(volume(&tet), ratio(1, 16));
    // and a scaled copy against Ehrhart-style dilation
    assert_eq!(volume(&tet.dilate(2)), ratio(1, 2));
}
