//! The scalar side of the width reports: minimal coroot pairings and the
//! two independent Duistermaat–Heckman volume computations.

use polyhedra::num::{Int, Rat};
use polyhedra::{lattice_points, volume};
use rootsys::build_root_system;
use width::{
    dh_fiber_volume, ell_lambda, orbit_polytope, orbit_volume, width_report, SearchOptions,
    WidthError,
};

fn rat(k: i64) -> Rat {
    Rat::from_integer(Int::from(k))
}

fn w(coords: &[i64]) -> Vec<Rat> {
    rootsys::weight(coords)
}

#[test]
fn minimal_pairing_matches_hand_values() {
    let a1 = build_root_system("A1").unwrap();
    let a2 = build_root_system("A2").unwrap();
    assert_eq!(ell_lambda(&a1, &w(&[5])).unwrap(), rat(5));
    // pairings of (2,3) with the three positive coroots are {2, 3, 5}
    assert_eq!(ell_lambda(&a2, &w(&[2, 3])).unwrap(), rat(2));
    // on the wall the zero pairing is ignored: {0, 3, 3}
    assert_eq!(ell_lambda(&a2, &w(&[0, 3])).unwrap(), rat(3));
    assert_eq!(ell_lambda(&a2, &w(&[1, 1])).unwrap(), rat(1));
}

#[test]
fn zero_weight_has_no_candidate_width() {
    let a2 = build_root_system("A2").unwrap();
    assert!(matches!(
        ell_lambda(&a2, &w(&[0, 0])),
        Err(WidthError::PointOrbit)
    ));
}

#[test]
fn bad_weights_are_rejected() {
    let a2 = build_root_system("A2").unwrap();
    assert!(matches!(
        ell_lambda(&a2, &w(&[-1, 2])),
        Err(WidthError::NotDominant)
    ));
    assert!(matches!(
        ell_lambda(&a2, &w(&[1])),
        Err(WidthError::BadInput(_))
    ));
    assert!(matches!(
        orbit_volume(&a2, &w(&[0, -3])),
        Err(WidthError::NotDominant)
    ));
}

#[test]
fn minimal_pairing_scales_linearly() {
    let a2 = build_root_system("A2").unwrap();
    for l1 in 0..=3i64 {
        for l2 in 0..=3i64 {
            if l1 + l2 == 0 {
                continue;
            }
            let base = ell_lambda(&a2, &w(&[l1, l2])).unwrap();
            for k in 1..=4i64 {
                let scaled = ell_lambda(&a2, &w(&[k * l1, k * l2])).unwrap();
                assert_eq!(scaled, rat(k) * &base);
            }
        }
    }
}

#[test]
fn orbit_volume_matches_hand_values() {
    let a1 = build_root_system("A1").unwrap();
    let a2 = build_root_system("A2").unwrap();
    for n in 1..=5i64 {
        assert_eq!(orbit_volume(&a1, &w(&[n])).unwrap(), rat(n));
    }
    assert_eq!(orbit_volume(&a2, &w(&[1, 1])).unwrap(), rat(1));
    // (2·3·5)/(1·1·2)
    assert_eq!(orbit_volume(&a2, &w(&[2, 3])).unwrap(), rat(15));
    // wall orbit: (3·3)/(1·2), only the two positive pairings contribute
    assert_eq!(orbit_volume(&a2, &w(&[0, 3])).unwrap(), rat(9) / rat(2));
    assert_eq!(orbit_volume(&a2, &w(&[3, 0])).unwrap(), rat(9) / rat(2));
    // point orbit: empty product
    assert_eq!(orbit_volume(&a2, &w(&[0, 0])).unwrap(), rat(1));
}

#[test]
fn the_two_volume_computations_agree_everywhere() {
    let a1 = build_root_system("A1").unwrap();
    for n in 0..=6i64 {
        let lam = w(&[n]);
        assert_eq!(
            orbit_volume(&a1, &lam).unwrap(),
            dh_fiber_volume(&a1, &[1], &lam).unwrap(),
            "A1 disagreement at {n}"
        );
    }
    let a2 = build_root_system("A2").unwrap();
    for word in [[1usize, 2, 1], [2, 1, 2]] {
        for l1 in 0..=6i64 {
            for l2 in 0..=(6 - l1) {
                let lam = w(&[l1, l2]);
                assert_eq!(
                    orbit_volume(&a2, &lam).unwrap(),
                    dh_fiber_volume(&a2, &word, &lam).unwrap(),
                    "A2 disagreement at ({l1},{l2}) along {word:?}"
                );
            }
        }
    }
}

#[test]
fn moment_images_match_known_shapes() {
    // string polytopes carry their weight coordinates along, pinned by
    // equations: the A1 interval is [0,5] × {5}
    let a1 = build_root_system("A1").unwrap();
    let p = orbit_polytope(&a1, &[1], &w(&[5])).unwrap();
    assert_eq!(p.vertices, vec![vec![rat(0), rat(5)], vec![rat(5), rat(5)]]);
    assert_eq!(p.dim(), 1);

    let a2 = build_root_system("A2").unwrap();
    let wall = orbit_polytope(&a2, &[1, 2, 1], &w(&[0, 3])).unwrap();
    assert_eq!(wall.dim(), 2);
    assert_eq!(lattice_points(&wall).len(), 10);

    let regular = orbit_polytope(&a2, &[1, 2, 1], &w(&[1, 1])).unwrap();
    assert_eq!(regular.dim(), 3);
    assert_eq!(volume(&regular), rat(1));
}

#[test]
fn reports_carry_certificate_and_consistent_volumes() {
    let a2 = build_root_system("A2").unwrap();
    let report = width_report(&a2, &[1, 2, 1], &w(&[0, 3]), &SearchOptions::default()).unwrap();
    assert_eq!(report.ell, rat(3));
    assert_eq!(report.orbit_volume, rat(9) / rat(2));
    assert_eq!(report.fiber_volume, report.orbit_volume);
    let emb = report.embedding().expect("certificate at size 3");
    assert_eq!(emb.size, rat(3));
    for v in emb.vertices() {
        assert!(report.polytope.contains(&v));
    }
    assert!(report.upper_bound_note.contains("upper bound"));
}

#[test]
fn report_json_is_deterministic() {
    let a2 = build_root_system("A2").unwrap();
    let mk = || {
        width_report(&a2, &[1, 2, 1], &w(&[2, 3]), &SearchOptions::default())
            .unwrap()
            .to_json()
            .to_string()
    };
    let first = mk();
    assert_eq!(first, mk());
    assert!(first.contains("\"ell\":\"2\""));
    assert!(first.contains("\"orbit_volume\":\"15\""));
}

#[test]
fn reports_reject_the_zero_weight() {
    let a2 = build_root_system("A2").unwrap();
    assert!(matches!(
        width_report(&a2, &[1, 2, 1], &w(&[0, 0]), &SearchOptions::default()),
        Err(WidthError::PointOrbit)
    ));
}
