//! The suite behind `toricwb check all`: eight end-to-end criteria crossing
//! crate boundaries, each with a wall-clock budget and a one-line verdict.
//! Every numeric tolerance here is part of the contract; loosening one is a
//! bug, not a fix.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use degen::{
    builtin, c_image_cone, dropped_generators_vanish, fiber, initial_ideal_summary,
    subfamily_ideal,
};
use ghflow::{
    check_invariants, fiber_tangent_frame, gh_vector_field, integrate, limit_point, FlowOptions,
    FlowState, NumericFamily, DEFAULT_LIMIT_EPSILON,
};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use polyhedra::num::{int_to_rat, rat, rat_str, Int, Rat};
use polyhedra::{faces, lattice_points, volume, RationalCone, RationalPolytope};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rootsys::{build_root_system, weight, RootSystem};
use strings::{good_valuation_check, string_polytope, SaturationCheck, ValuationGenerator};
use width::{ell_lambda, width_report, EmbeddingOutcome, SearchOptions};

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

type CriterionFn = fn(u64) -> Result<String, String>;

/// Name, wall-clock budget in seconds, body.  Order is the report order.
const CRITERIA: [(&str, Option<f64>, CriterionFn); 8] = [
    ("lattice points count the representation", Some(5.0), littelmann_counts),
    ("the two Duistermaat-Heckman volumes agree", Some(10.0), dh_identity),
    ("the one-parameter family is coherent", Some(1.0), rees_integrity),
    ("the transport flow conserves its invariants", Some(30.0), flow_invariants),
    ("the projected gradient matches the hand value", None, field_hand_value),
    ("width certificates and their obstructions", Some(60.0), width_certificates),
    ("polyhedral round-trips, faces, and dilations", Some(60.0), polyhedra_properties),
    ("the grading axioms separate good data from bad", Some(1.0), valuation_axioms),
];

fn run_one(slot: usize, seed: u64) -> CriterionResult {
    let (name, budget, body) = CRITERIA[slot];
    let clock = Instant::now();
    let outcome = body(seed);
    let seconds = clock.elapsed().as_secs_f64();
    let (mut passed, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let Some(limit) = budget {
        if seconds > limit {
            passed = false;
            detail.push_str(&format!("; exceeded the {limit}s budget"));
        }
    }
    CriterionResult {
        index: slot + 1,
        name,
        passed,
        detail,
        seconds,
    }
}

/// Run every criterion and return the results in report order.  With more
/// than one worker the criteria are distributed over a scoped thread pool;
/// collection order is fixed, so the rendered report never depends on `jobs`.
pub fn run_acceptance(jobs: usize, seed: u64) -> Vec<CriterionResult> {
    let n = CRITERIA.len();
    if jobs <= 1 {
        return (0..n).map(|i| run_one(i, seed)).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<CriterionResult>>> = (0..n).map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(n) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let result = run_one(i, seed);
                *slots[i].lock().unwrap() = Some(result);
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.into_inner().unwrap().expect("every slot is filled"))
        .collect()
}

pub fn render_lines(results: &[CriterionResult]) -> String {
    let mut out = String::new();
    for r in results {
        out.push_str(&format!(
            "{} criterion {}: {} — {} ({:.2}s)\n",
            if r.passed { "PASS" } else { "FAIL" },
            r.index,
            r.name,
            r.detail,
            r.seconds,
        ));
    }
    out
}

const WORDS_A2: [&[usize]; 2] = [&[1, 2, 1], &[2, 1, 2]];

/// Dominant integral weights of rank two with coordinate sum at most `cap`.
fn small_weights(cap: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for l1 in 0..=cap {
        for l2 in 0..=(cap - l1) {
            out.push((l1, l2));
        }
    }
    out
}

fn littelmann_counts(_seed: u64) -> Result<String, String> {
    let rs = build_root_system("A2").map_err(|e| e.to_string())?;
    let grid = small_weights(6);
    for &(l1, l2) in &grid {
        let lam = weight(&[l1, l2]);
        let dim = rs.weyl_dim(&lam).map_err(|e| e.to_string())?;
        for word in WORDS_A2 {
            let p = string_polytope(&rs, word, &lam).map_err(|e| e.to_string())?;
            let count = lattice_points(&p).len();
            if dim.to_usize() != Some(count) {
                return Err(format!(
                    "word {word:?} at ({l1},{l2}): {count} lattice points vs dimension {dim}"
                ));
            }
        }
    }
    for (l1, l2, expected) in [(1, 1, 8), (1, 0, 3), (2, 3, 42), (0, 3, 10)] {
        let p = string_polytope(&rs, &[1, 2, 1], &weight(&[l1, l2])).map_err(|e| e.to_string())?;
        let count = lattice_points(&p).len();
        if count != expected {
            return Err(format!("({l1},{l2}): expected {expected} lattice points, found {count}"));
        }
    }
    Ok(format!(
        "{} dominant weights, both reduced words, every count equals the Weyl dimension",
        grid.len()
    ))
}

fn volumes_agree(rs: &RootSystem, word: &[usize], lam: &[Rat]) -> Result<(), String> {
    let f = width::orbit_volume(rs, lam).map_err(|e| e.to_string())?;
    let g = width::dh_fiber_volume(rs, word, lam).map_err(|e| e.to_string())?;
    if f != g {
        return Err(format!(
            "volumes disagree at {:?} for word {word:?}: {} vs {}",
            lam.iter().map(rat_str).collect::<Vec<_>>(),
            rat_str(&f),
            rat_str(&g)
        ));
    }
    Ok(())
}

fn dh_identity(_seed: u64) -> Result<String, String> {
    let a1 = build_root_system("A1").map_err(|e| e.to_string())?;
    for n in 0..=6 {
        volumes_agree(&a1, &[1], &weight(&[n]))?;
    }
    let a2 = build_root_system("A2").map_err(|e| e.to_string())?;
    let grid = small_weights(6);
    for &(l1, l2) in &grid {
        for word in WORDS_A2 {
            volumes_agree(&a2, word, &weight(&[l1, l2]))?;
        }
    }
    for (l1, l2, expected) in [(1, 1, "1"), (2, 3, "15")] {
        let f = width::orbit_volume(&a2, &weight(&[l1, l2])).map_err(|e| e.to_string())?;
        if rat_str(&f) != expected {
            return Err(format!(
                "({l1},{l2}): expected volume {expected}, found {}",
                rat_str(&f)
            ));
        }
    }
    // the volume is homogeneous of degree = number of positive pairings
    for (l1, l2) in [(1i64, 1i64), (2, 3), (0, 3), (1, 0)] {
        let lam = weight(&[l1, l2]);
        let base = width::orbit_volume(&a2, &lam).map_err(|e| e.to_string())?;
        let degree = a2
            .positive_roots
            .iter()
            .filter(|alpha| a2.pairing(&lam, alpha) > Rat::zero())
            .count();
        for k in 2..=4i64 {
            let scaled_weight = weight(&[k * l1, k * l2]);
            let scaled = width::orbit_volume(&a2, &scaled_weight).map_err(|e| e.to_string())?;
            let mut predicted = base.clone();
            for _ in 0..degree {
                predicted *= rat(k);
            }
            if scaled != predicted {
                return Err(format!(
                    "scaling failed at ({l1},{l2}) with k = {k}: {} vs {}",
                    rat_str(&scaled),
                    rat_str(&predicted)
                ));
            }
        }
    }
    Ok(format!(
        "exact agreement on {} rank-one and {} rank-two weights, plus degree-homogeneous scaling",
        7,
        grid.len()
    ))
}

fn rees_integrity(_seed: u64) -> Result<String, String> {
    let family = builtin("sl3-string-121")
        .and_then(|ex| ex.family())
        .map_err(|e| e.to_string())?;
    if family.relations.is_empty() {
        return Err("expected at least one relation".into());
    }
    let one = Int::from(1);
    for row in &family.t_exponents {
        for m in row {
            if m < &one {
                return Err(format!("parameter exponent {m} is below 1"));
            }
        }
    }
    let at_one = fiber(&family, &rat(1));
    for (j, rel) in family.relations.iter().enumerate() {
        if at_one[j] != rel.leading.add(&rel.lower) {
            return Err(format!("the fiber at 1 does not restore relation {j}"));
        }
    }
    let at_zero = fiber(&family, &rat(0));
    for (j, rel) in family.relations.iter().enumerate() {
        if at_zero[j] != rel.leading {
            return Err(format!("the fiber at 0 keeps a lower term of relation {j}"));
        }
    }
    // homogeneity of the special fiber is recomputed, not assumed
    initial_ideal_summary(&family).map_err(|e| e.to_string())?;
    let image = c_image_cone(&family.valuation);
    let lattice = faces(&image).map_err(|e| e.to_string())?;
    for entry in &lattice.faces {
        let sub = subfamily_ideal(&family, &entry.cone).map_err(|e| e.to_string())?;
        if !dropped_generators_vanish(&family, &sub) {
            return Err(format!(
                "dropped generators survive on the face {:?}",
                entry.ray_indices
            ));
        }
        if entry.codim == 0 && sub.kept_relations.len() != family.relations.len() {
            return Err("the whole cone must keep every relation".into());
        }
        if entry.ray_indices.is_empty()
            && sub.vanishing_coordinates.len() != family.valuation.generators.len()
        {
            return Err("the origin face must kill every coordinate".into());
        }
    }
    Ok(format!(
        "parameter exponents at least 1, both special fibers as expected, {} faces split consistently",
        lattice.faces.len()
    ))
}

fn flow_invariants(_seed: u64) -> Result<String, String> {
    let ideal = builtin("hyperbola")
        .and_then(|ex| ex.family())
        .map_err(|e| e.to_string())?;
    let family = NumericFamily::from_family(&ideal).map_err(|e| e.to_string())?;
    let opts = FlowOptions::default();
    let mut worst = [0.0f64; 6];
    for i in 0..10 {
        // midpoint radii: |z1| = 1 sits on the stratum whose limit is the
        // cone point, a separate regime with a much looser resolution
        let r = 0.5 + 1.5 * (i as f64 + 0.5) / 10.0;
        let theta = 2.0 * std::f64::consts::PI * (i as f64) / 10.0;
        let z1 = Complex64::from_polar(r, theta);
        let z = vec![z1, z1.inv()]; // z1 z2 = 1 puts the start on the t = 1 fiber
        let plain = FlowState::new(z.clone(), 1.0);
        let basis = fiber_tangent_frame(&family, &plain).map_err(|e| e.to_string())?;
        if basis.len() < 2 {
            return Err(format!("start {i}: the fiber is too small for a 2-frame"));
        }
        let state = FlowState::with_frame(z.clone(), 1.0, basis[..2].to_vec());
        let trajectory = integrate(&family, &state, 0.05, &opts).map_err(|e| e.to_string())?;
        if (trajectory.elapsed() - 0.95).abs() > 1e-12 {
            return Err(format!("start {i}: elapsed {} is not 0.95", trajectory.elapsed()));
        }
        let report = check_invariants(&trajectory, &family).map_err(|e| e.to_string())?;
        let omega = report
            .omega_drift
            .ok_or_else(|| format!("start {i}: no symplectic pairing was transported"))?;
        let checks = [
            ("parameter drift", report.pi_drift, 1e-9),
            ("moment drift", report.psi_drift, 1e-6),
            ("generator residual", report.max_residual, 1e-8),
            ("pairing drift", omega, 1e-4),
        ];
        for (what, value, bound) in checks {
            if !(value < bound) {
                return Err(format!("start {i}: {what} {value:.3e} is not below {bound:.0e}"));
            }
        }
        let lp = limit_point(&family, &plain, DEFAULT_LIMIT_EPSILON, &opts)
            .map_err(|e| e.to_string())?;
        let limit_residual = family.residual(&lp.z, 0.0);
        if !(limit_residual < 1e-5) {
            return Err(format!(
                "start {i}: the limit misses the zero fiber by {limit_residual:.3e}"
            ));
        }
        let psi0 = family.psi(&z);
        let psi1 = family.psi(&lp.z);
        let moment_deviation = psi0
            .iter()
            .zip(&psi1)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if !(moment_deviation < 1e-5) {
            return Err(format!(
                "start {i}: the limit moves the moment map by {moment_deviation:.3e}"
            ));
        }
        for (w, v) in worst.iter_mut().zip([
            report.pi_drift,
            report.psi_drift,
            report.max_residual,
            omega,
            limit_residual,
            moment_deviation,
        ]) {
            *w = w.max(v);
        }
    }
    Ok(format!(
        "10 starts: parameter drift {:.1e}, moment drift {:.1e}, residual {:.1e}, pairing drift {:.1e}; limits: residual {:.1e}, moment deviation {:.1e}",
        worst[0], worst[1], worst[2], worst[3], worst[4], worst[5]
    ))
}

fn field_hand_value(_seed: u64) -> Result<String, String> {
    let ideal = builtin("hyperbola")
        .and_then(|ex| ex.family())
        .map_err(|e| e.to_string())?;
    let family = NumericFamily::from_family(&ideal).map_err(|e| e.to_string())?;
    let state = FlowState::new(vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)], 1.0);
    let v = gh_vector_field(&family, &state).map_err(|e| e.to_string())?;
    let expected = [
        Complex64::new(-0.5, 0.0),
        Complex64::new(-0.5, 0.0),
        Complex64::new(-1.0, 0.0),
    ];
    let mut gap = 0.0f64;
    for (vi, ei) in v.iter().zip(&expected) {
        gap = gap.max((vi - ei).norm());
    }
    if !(gap < 1e-12) {
        return Err(format!("field at (1,1,1) misses (-1/2,-1/2,-1) by {gap:.3e}"));
    }
    Ok(format!("field at (1,1,1) equals (-1/2,-1/2,-1) to {gap:.1e}"))
}

fn width_certificates(_seed: u64) -> Result<String, String> {
    let rs = build_root_system("A2").map_err(|e| e.to_string())?;
    let word = [1usize, 2, 1];

    let wall = weight(&[0, 3]);
    let ell = ell_lambda(&rs, &wall).map_err(|e| e.to_string())?;
    if ell != rat(3) {
        return Err(format!("expected candidate width 3 at (0,3), found {}", rat_str(&ell)));
    }
    let report = width_report(&rs, &word, &wall, &SearchOptions::default())
        .map_err(|e| e.to_string())?;
    match &report.outcome {
        EmbeddingOutcome::Certificate(emb) if emb.size == rat(3) => {}
        other => return Err(format!("no size-3 certificate at (0,3): {other:?}")),
    }

    // one size past the candidate width must fail on volume alone, and the
    // search still runs to exhaustion
    let oversized = SearchOptions {
        shrink: -rat(1),
        ..SearchOptions::default()
    };
    let over = width_report(&rs, &word, &wall, &oversized).map_err(|e| e.to_string())?;
    let fiber_volume = over.fiber_volume.clone();
    match &over.outcome {
        EmbeddingOutcome::NotFound {
            volume_obstructed: true,
        } => {}
        other => return Err(format!("the size-4 simplex is not volume-excluded: {other:?}")),
    }

    let regular = weight(&[2, 3]);
    let ell2 = ell_lambda(&rs, &regular).map_err(|e| e.to_string())?;
    if ell2 != rat(2) {
        return Err(format!("expected candidate width 2 at (2,3), found {}", rat_str(&ell2)));
    }
    let report2 = width_report(&rs, &word, &regular, &SearchOptions::default())
        .map_err(|e| e.to_string())?;
    match &report2.outcome {
        EmbeddingOutcome::Certificate(emb) if emb.size == rat(2) => {}
        other => return Err(format!("no size-2 certificate at (2,3): {other:?}")),
    }

    Ok(format!(
        "certificates of sizes 3 and 2 found; the size-4 simplex (volume 8) exceeds the fiber volume {}",
        rat_str(&fiber_volume)
    ))
}

fn random_cone(rng: &mut ChaCha8Rng, dim: usize, n_ineq: usize) -> RationalCone {
    let rows: Vec<Vec<Rat>> = (0..n_ineq)
        .map(|_| (0..dim).map(|_| rat(rng.gen_range(-3..=3))).collect())
        .collect();
    RationalCone::from_h_raw("Z^n", dim, &rows, &[])
}

/// Dilation counts for k = 1..5 must fit a degree-dim polynomial whose
/// leading coefficient is the lattice-normalized volume.
fn dilation_leading_term(p: &RationalPolytope) -> Result<(), String> {
    let d = p.dim();
    if d < 0 {
        return Err("dilation target is empty".into());
    }
    let d = d as usize;
    let counts: Vec<Rat> = (1..=5u32)
        .map(|k| rat(lattice_points(&p.dilate(k)).len() as i64))
        .collect();
    let mut table = vec![counts];
    while table.last().unwrap().len() > 1 {
        let prev = table.last().unwrap();
        let next: Vec<Rat> = (0..prev.len() - 1).map(|i| &prev[i + 1] - &prev[i]).collect();
        table.push(next);
    }
    for (level, row) in table.iter().enumerate().skip(d + 1) {
        if row.iter().any(|x| !x.is_zero()) {
            return Err(format!(
                "dilation counts are not polynomial of degree {d}: difference level {level} is nonzero"
            ));
        }
    }
    let mut factorial = rat(1);
    for j in 1..=d {
        factorial *= rat(j as i64);
    }
    let leading = &table[d][0] / factorial;
    let vol = volume(p);
    if leading != vol {
        return Err(format!(
            "leading coefficient {} differs from the volume {}",
            rat_str(&leading),
            rat_str(&vol)
        ));
    }
    Ok(())
}

fn polyhedra_properties(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..100 {
        let dim = rng.gen_range(1..=4);
        let n_ineq = rng.gen_range(0..=8);
        let c = random_cone(&mut rng, dim, n_ineq);
        let gens: Vec<Vec<Rat>> = c.rays.iter().map(|r| int_to_rat(r)).collect();
        let lin: Vec<Vec<Rat>> = c.lineality.iter().map(|l| int_to_rat(l)).collect();
        let c2 = RationalCone::from_rays_raw("Z^n", dim, &gens, &lin);
        if c != c2 {
            return Err(format!("H/V round-trip failed on trial {trial}"));
        }
        for r in &c.rays {
            if !c2.contains(&int_to_rat(r)) {
                return Err(format!("a ray escaped its own cone on trial {trial}"));
            }
        }
    }
    let mut checked = 0;
    while checked < 30 {
        let dim = rng.gen_range(2..=4);
        let n_ineq = rng.gen_range(3..=7);
        let c = random_cone(&mut rng, dim, n_ineq);
        if !c.is_strongly_convex() {
            continue;
        }
        checked += 1;
        let fl = faces(&c).map_err(|e| e.to_string())?;
        if !fl.faces.iter().any(|f| f.codim == 0) {
            return Err("face lattice is missing its top".into());
        }
        if !fl.faces.iter().any(|f| f.ray_indices.is_empty()) {
            return Err("face lattice is missing its bottom".into());
        }
        for i in 0..fl.faces.len() {
            for j in 0..fl.faces.len() {
                let meet: std::collections::BTreeSet<usize> = fl.faces[i]
                    .ray_indices
                    .iter()
                    .filter(|r| fl.faces[j].ray_indices.contains(r))
                    .cloned()
                    .collect();
                if fl.find(&meet).is_none() {
                    return Err("face lattice is not closed under intersection".into());
                }
            }
            if !fl.faces[i].cone.is_face_of(&c) {
                return Err("a listed face is not a face geometrically".into());
            }
        }
    }
    let a1 = build_root_system("A1").map_err(|e| e.to_string())?;
    let a2 = build_root_system("A2").map_err(|e| e.to_string())?;
    let targets = [
        string_polytope(&a1, &[1], &weight(&[5])).map_err(|e| e.to_string())?,
        string_polytope(&a2, &[1, 2, 1], &weight(&[1, 1])).map_err(|e| e.to_string())?,
        string_polytope(&a2, &[1, 2, 1], &weight(&[0, 3])).map_err(|e| e.to_string())?,
        string_polytope(&a2, &[1, 2, 1], &weight(&[2, 3])).map_err(|e| e.to_string())?,
    ];
    for p in &targets {
        dilation_leading_term(p)?;
    }
    Ok(format!(
        "100 H/V round-trips, 30 pointed face lattices, {} dilation fits, all exact",
        targets.len()
    ))
}

fn valuation_axioms(_seed: u64) -> Result<String, String> {
    let iv = |xs: &[i64]| xs.iter().map(|&x| Int::from(x)).collect::<Vec<Int>>();
    for name in ["sl2", "sl3-string-121"] {
        let ex = builtin(name).map_err(|e| e.to_string())?;
        let report = good_valuation_check(&ex.valuation);
        if !report.passes() {
            return Err(format!("{name} fails the axioms: {report:?}"));
        }
        if !matches!(report.saturation, SaturationCheck::Verified { .. }) {
            return Err(format!("{name}: saturation was not verified"));
        }
    }
    // a unit-like generator of weight zero must break properness
    let mut broken = builtin("sl2").map_err(|e| e.to_string())?.valuation;
    broken.generators.push(ValuationGenerator {
        name: "unit".into(),
        value: iv(&[1, 0]),
        a_weight: iv(&[0]),
        c_weight: iv(&[0]),
    });
    let report = good_valuation_check(&broken);
    if report.proper || report.passes() {
        return Err("a zero-weight generator went undetected".into());
    }
    // an inconsistent weight assignment must break compatibility
    let mut skewed = builtin("sl3-string-121").map_err(|e| e.to_string())?.valuation;
    skewed.generators[5].a_weight = iv(&[5, 5]);
    let report = good_valuation_check(&skewed);
    if report.weight_compatibility || report.passes() {
        return Err("an inconsistent weight assignment went undetected".into());
    }
    Ok("both builtin data sets pass every axiom; both seeded violations are caught".into())
}
