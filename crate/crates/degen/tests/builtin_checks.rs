use degen::{
    builtin, c_image_cone, dropped_generators_vanish, fiber, initial_ideal_summary,
    subfamily_ideal, validate_relations, DegenError, FamilyIdeal, Poly, BUILTIN_NAMES,
};
use num_traits::One;
use polyhedra::num::{rat, ratio, Int, Rat};
use polyhedra::{faces, RationalCone};
use strings::good_valuation_check;

fn ints(xs: &[i64]) -> Vec<Int> {
    xs.iter().map(|&x| Int::from(x)).collect()
}

#[test]
fn graded_builtins_pass_the_axioms_and_the_hyperbola_fails_them() {
    for name in BUILTIN_NAMES {
        let ex = builtin(name).unwrap();
        let report = good_valuation_check(&ex.valuation);
        if name == "hyperbola" {
            assert!(!report.passes(), "the raw family must not pass");
        } else {
            assert!(report.passes(), "{name}: {report:?}");
            validate_relations(&ex.valuation, &ex.relations).unwrap();
        }
    }
    assert!(matches!(
        builtin("so5"),
        Err(DegenError::UnknownExample(_))
    ));
}

#[test]
fn rank_one_builtin_has_an_empty_family() {
    let family = builtin("sl2").unwrap().family().unwrap();
    assert_eq!(family.e, ints(&[0, 0]));
    assert!(family.relations.is_empty());
    assert!(family.family_polys().is_empty());
}

#[test]
fn rank_two_builtin_assembles_the_expected_family() {
    let family = builtin("sl3-string-121").unwrap().family().unwrap();
    assert_eq!(family.e, ints(&[1, 0, 0, 0, 0]));
    assert_eq!(family.t_exponents, vec![ints(&[1])]);

    // ĝ = x1·y3 − x2·y2 + t·x3·y1 in (z₁,…,z₆,t)
    let polys = family.family_polys();
    assert_eq!(polys.len(), 1);
    let mut expected = Poly::zero(7);
    expected.add_term(vec![1, 0, 0, 0, 0, 1, 0], Rat::one());
    expected.add_term(vec![0, 1, 0, 0, 1, 0, 0], -Rat::one());
    expected.add_term(vec![0, 0, 1, 1, 0, 0, 1], Rat::one());
    assert_eq!(polys[0], expected);

    // fibers: t=1 restores the quadric, t=0 keeps the leading binomial,
    // t=1/2 scales the lower term by (1/2)^1
    let rel = &family.relations[0];
    assert_eq!(fiber(&family, &rat(1)), vec![rel.leading.add(&rel.lower)]);
    assert_eq!(fiber(&family, &rat(0)), vec![rel.leading.clone()]);
    let half = fiber(&family, &ratio(1, 2));
    assert_eq!(half[0].terms[&vec![0u32, 0, 1, 1, 0, 0]], ratio(1, 2));

    let summary = initial_ideal_summary(&family).unwrap();
    assert_eq!(summary.generators.len(), 1);
    assert_eq!(summary.generators[0].terms, 2);
    assert!(summary.generators[0].is_binomial);
    assert_eq!(summary.generators[0].value, ints(&[1, 1, 0, 1, 1]));
    assert_eq!(summary.generators[0].rendered, "-x2*y2 + x1*y3");
}

#[test]
fn hyperbola_builtin_is_wired_raw() {
    let family = builtin("hyperbola").unwrap().family().unwrap();
    let polys = family.family_polys();
    assert_eq!(polys.len(), 1);
    let mut expected = Poly::zero(3);
    expected.add_term(vec![1, 1, 0], Rat::one());
    expected.add_term(vec![0, 0, 1], -Rat::one());
    assert_eq!(polys[0], expected, "z1·z2 − t");
}

#[test]
fn subfamilies_split_along_the_weight_cone_faces() {
    let family = builtin("sl3-string-121").unwrap().family().unwrap();
    let image = c_image_cone(&family.valuation);
    assert_eq!(image.rays, vec![ints(&[0, 1]), ints(&[1, 0])]);

    let whole = subfamily_ideal(&family, &image).unwrap();
    assert_eq!(whole.kept_relations, vec![0]);
    assert!(whole.vanishing_coordinates.is_empty());

    let origin = RationalCone::from_rays_raw("weight-block", 2, &[], &[]);
    let at_zero = subfamily_ideal(&family, &origin).unwrap();
    assert!(at_zero.kept_relations.is_empty());
    assert_eq!(at_zero.vanishing_coordinates, vec![0, 1, 2, 3, 4, 5]);

    // the wall where the first weight coordinate vanishes: the quadric is
    // dropped, the x-coordinates vanish, the y-coordinates survive
    let wall = RationalCone::from_rays_raw("weight-block", 2, &[vec![rat(0), rat(1)]], &[]);
    let sub = subfamily_ideal(&family, &wall).unwrap();
    assert!(sub.kept_relations.is_empty());
    assert_eq!(sub.vanishing_coordinates, vec![0, 1, 2]);

    let skew = RationalCone::from_rays_raw("weight-block", 2, &[vec![rat(1), rat(1)]], &[]);
    assert!(matches!(
        subfamily_ideal(&family, &skew),
        Err(DegenError::NotAFace)
    ));
}

fn subfamilies_of_all_faces(family: &FamilyIdeal) -> Vec<(RationalCone, degen::Subfamily)> {
    let image = c_image_cone(&family.valuation);
    faces(&image)
        .unwrap()
        .faces
        .iter()
        .map(|entry| {
            let sub = subfamily_ideal(family, &entry.cone).unwrap();
            (entry.cone.clone(), sub)
        })
        .collect()
}

#[test]
fn dropped_generators_vanish_on_every_face() {
    for name in ["sl2", "sl3-string-121"] {
        let family = builtin(name).unwrap().family().unwrap();
        for (_, sub) in subfamilies_of_all_faces(&family) {
            assert!(dropped_generators_vanish(&family, &sub), "{name}: {sub:?}");
        }
    }
}

#[test]
fn subfamilies_are_compatible_with_face_intersection() {
    let family = builtin("sl3-string-121").unwrap().family().unwrap();
    let all = subfamilies_of_all_faces(&family);
    for (cone_a, sub_a) in &all {
        for (cone_b, sub_b) in &all {
            let meet = cone_a.intersect(cone_b);
            let sub = subfamily_ideal(&family, &meet).unwrap();
            let kept: Vec<usize> = sub_a
                .kept_relations
                .iter()
                .copied()
                .filter(|j| sub_b.kept_relations.contains(j))
                .collect();
            let mut vanishing: Vec<usize> = sub_a
                .vanishing_coordinates
                .iter()
                .chain(&sub_b.vanishing_coordinates)
                .copied()
                .collect();
            vanishing.sort_unstable();
            vanishing.dedup();
            assert_eq!(sub.kept_relations, kept);
            assert_eq!(sub.vanishing_coordinates, vanishing);
        }
    }
}

#[test]
fn family_json_round_trips_byte_identically() {
    for name in BUILTIN_NAMES {
        let family = builtin(name).unwrap().family().unwrap();
        let text = serde_json::to_string_pretty(&family.to_json()).unwrap();
        let back = FamilyIdeal::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.e, family.e);
        assert_eq!(back.t_exponents, family.t_exponents);
        assert_eq!(back.relations, family.relations);
        assert_eq!(
            serde_json::to_string_pretty(&back.to_json()).unwrap(),
            text
        );
    }
}
