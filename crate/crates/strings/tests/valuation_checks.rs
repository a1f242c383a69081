use polyhedra::num::Int;
use strings::{good_valuation_check, SaturationCheck, ValuationData, ValuationGenerator};

fn gen(name: &str, value: &[i64], a_weight: &[i64], c_weight: &[i64]) -> ValuationGenerator {
    let iv = |xs: &[i64]| xs.iter().map(|&x| Int::from(x)).collect::<Vec<Int>>();
    ValuationGenerator {
        name: name.to_string(),
        value: iv(value),
        a_weight: iv(a_weight),
        c_weight: iv(c_weight),
    }
}

/// Valuation data of the rank-one flag variety: two sections of the ample
/// generator, graded by the single fundamental weight.
fn rank_one_data() -> ValuationData {
    ValuationData::new(
        1,
        1,
        vec![
            gen("x1", &[0, 1], &[-1], &[1]),
            gen("x2", &[1, 1], &[1], &[1]),
        ],
    )
    .unwrap()
}

/// Valuation data of the full flag variety of rank two: six Plücker-style
/// generators over the string lattice of the word (1,2,1).
fn rank_two_data() -> ValuationData {
    ValuationData::new(
        3,
        2,
        vec![
            gen("x1", &[0, 0, 0, 1, 0], &[-1, 0], &[1, 0]),
            gen("x2", &[1, 0, 0, 1, 0], &[1, -1], &[1, 0]),
            gen("x3", &[0, 1, 1, 1, 0], &[0, 1], &[1, 0]),
            gen("y1", &[0, 0, 0, 0, 1], &[0, -1], &[0, 1]),
            gen("y2", &[0, 1, 0, 0, 1], &[-1, 1], &[0, 1]),
            gen("y3", &[1, 1, 0, 0, 1], &[1, 0], &[0, 1]),
        ],
    )
    .unwrap()
}

#[test]
fn rank_one_and_rank_two_data_pass_all_axioms() {
    for vd in [rank_one_data(), rank_two_data()] {
        let report = good_valuation_check(&vd);
        assert!(report.weight_compatibility, "{report:?}");
        assert!(report.cone_strongly_convex, "{report:?}");
        assert!(report.image_strongly_convex, "{report:?}");
        assert!(report.bounded_c_fibers, "{report:?}");
        assert!(report.minimal_image_element, "{report:?}");
        assert!(report.order_positive_values, "{report:?}");
        assert!(report.proper, "{report:?}");
        assert!(
            matches!(report.saturation, SaturationCheck::Verified { .. }),
            "{report:?}"
        );
        assert!(report.passes());
    }
}

#[test]
fn zero_weight_generator_fails_properness() {
    let mut vd = rank_one_data();
    vd.generators.push(gen("unit", &[1, 0], &[0], &[0]));
    let report = good_valuation_check(&vd);
    assert!(!report.proper);
    assert!(!report.minimal_image_element);
    assert!(!report.passes());
}

#[test]
fn weight_mismatch_fails_compatibility() {
    let mut vd = rank_one_data();
    // claim a weight block that disagrees with the value's projection
    vd.generators[1] = gen("x2", &[1, 1], &[1], &[2]);
    let report = good_valuation_check(&vd);
    assert!(!report.weight_compatibility);
    assert!(!report.passes());
}

#[test]
fn inconsistent_a_weights_fail_compatibility() {
    let mut vd = rank_two_data();
    // y3 = x2 + y2 − x1 on values, so its a-weight is forced; break it
    vd.generators[5].a_weight = vec![Int::from(5), Int::from(5)];
    let report = good_valuation_check(&vd);
    assert!(!report.weight_compatibility);
}

#[test]
fn opposite_values_fail_convexity_and_descend_to_inconclusive() {
    let vd = ValuationData::new(
        1,
        1,
        vec![
            gen("p", &[1, 1], &[1], &[1]),
            gen("q", &[-1, -1], &[-1], &[-1]),
        ],
    )
    .unwrap();
    let report = good_valuation_check(&vd);
    assert!(!report.cone_strongly_convex);
    assert!(!report.order_positive_values);
    assert_eq!(report.saturation, SaturationCheck::Inconclusive);
    assert!(!report.passes());
}

#[test]
fn unbounded_fibers_are_detected() {
    // a value with zero weight block makes the c-fiber over 0 a ray
    let vd = ValuationData::new(
        1,
        1,
        vec![
            gen("x", &[1, 0], &[0], &[0]),
            gen("y", &[0, 1], &[-1], &[1]),
        ],
    )
    .unwrap();
    let report = good_valuation_check(&vd);
    assert!(!report.bounded_c_fibers);
    assert!(!report.passes());
}

#[test]
fn missing_lattice_point_is_a_saturation_counterexample() {
    // the doubled generator spans the same cone but misses odd points
    let vd = ValuationData::new(
        1,
        1,
        vec![gen("sq", &[0, 2], &[0], &[2]), gen("lin", &[2, 2], &[2], &[2])],
    )
    .unwrap();
    let report = good_valuation_check(&vd);
    match &report.saturation {
        SaturationCheck::Counterexample(p) => {
            assert!(p.iter().any(|x| x.to_string() == "1"), "odd point {p:?}");
        }
        other => panic!("expected a counterexample, got {other:?}"),
    }
    assert!(!report.passes());
}

#[test]
fn json_round_trip_preserves_the_data() {
    let vd = rank_two_data();
    let js = vd.to_json();
    assert_eq!(js["m"], 3);
    assert_eq!(js["rank"], 2);
    assert_eq!(js["order"], "lex-refinement");
    assert_eq!(js["generators"].as_array().unwrap().len(), 6);
    let back = ValuationData::from_json(&js).unwrap();
    assert_eq!(back.generators, vd.generators);
    assert_eq!(back.m, vd.m);
    assert_eq!(back.rank, vd.rank);
    // deterministic serialization
    assert_eq!(
        serde_json::to_string(&js).unwrap(),
        serde_json::to_string(&back.to_json()).unwrap()
    );
}

#[test]
fn order_is_a_translation_invariant_refinement() {
    use std::cmp::Ordering;
    let vd = rank_two_data();
    let vals: Vec<Vec<Int>> = vd.generators.iter().map(|g| g.value.clone()).collect();
    for x in &vals {
        for y in &vals {
            let base = vd.order.cmp(vd.m, x, y);
            for z in &vals {
                let xz: Vec<Int> = x.iter().zip(z).map(|(a, b)| a + b).collect();
                let yz: Vec<Int> = y.iter().zip(z).map(|(a, b)| a + b).collect();
                assert_eq!(vd.order.cmp(vd.m, &xz, &yz), base, "translation by {z:?}");
            }
            if x == y {
                assert_eq!(base, Ordering::Equal);
            }
        }
    }
}
