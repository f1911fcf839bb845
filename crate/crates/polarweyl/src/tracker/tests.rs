use super::*;

fn params() -> TrackerParams {
    TrackerParams::default()
}

#[test]
fn quadric_critical_points() {
    let model = quadric_model(3).unwrap();
    let z = model.base_critical_set(&params()).unwrap();
    assert_eq!(z.len(), 2);
    // the two points are +-e0 with l-values +-1
    let mut vals: Vec<f64> = z.values.iter().map(|v| v.re).collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert!((vals[0] + 1.0).abs() < 1e-10 && (vals[1] - 1.0).abs() < 1e-10);
}

#[test]
fn quadric_full_turn_swaps() {
    let model = quadric_model(3).unwrap();
    let z = model.base_critical_set(&params()).unwrap();
    let lp = model.full_turn_loop().unwrap();
    let out = track_loop(&model, &z, &lp, &params()).unwrap();
    assert_eq!(out.permutation, vec![1, 0]);
    for log in &out.logs {
        assert!(log.max_residual <= 1e-10);
    }
}

#[test]
fn trivial_loop_is_identity() {
    let model = quadric_model(3).unwrap();
    let z = model.base_critical_set(&params()).unwrap();
    let lp = model.trivial_loop().unwrap();
    let out = track_loop(&model, &z, &lp, &params()).unwrap();
    assert_eq!(out.permutation, vec![0, 1]);
}

#[test]
fn normal_crossings_full_turn_three_cycle() {
    let model = normal_crossings_model(3).unwrap();
    let z = model.base_critical_set(&params()).unwrap();
    assert_eq!(z.len(), 3);
    let lp = model.full_turn_loop().unwrap();
    let out = track_loop(&model, &z, &lp, &params()).unwrap();
    // order three, no fixed point
    let p = &out.permutation;
    assert!(p.iter().enumerate().all(|(i, &j)| i != j));
    let mut cur = 0usize;
    for _ in 0..3 {
        cur = p[cur];
    }
    assert_eq!(cur, 0);
}

#[test]
fn quadric_carousel() {
    let model = quadric_model(3).unwrap();
    let eps = CycNum::from_ratio(1, 10);
    let report = carousel_report(&model, 0, &eps, &params()).unwrap();
    assert_eq!(report.cluster_count, 1);
    assert_eq!(report.n_sigma, 2);
    assert!(report.cyclic_on_clusters);
    assert!(report.matches_sigma);
}

#[test]
fn normal_crossings_carousel() {
    let model = normal_crossings_model(3).unwrap();
    let eps = CycNum::from_ratio(1, 10);
    let report = carousel_report(&model, 0, &eps, &params()).unwrap();
    assert_eq!(report.cluster_count, 1);
    assert_eq!(report.n_sigma, 3);
    assert!(report.cyclic_on_clusters);
    assert!(report.matches_sigma);
}

#[test]
fn symmetric_matrices_model_basics() {
    let model = symmetric_matrices_model().unwrap();
    assert_eq!(model.group.order(), 6);
    let z = model.base_critical_set(&params()).unwrap();
    assert_eq!(z.len(), 6);
}

#[test]
fn symmetric_matrices_carousel_three_clusters() {
    let model = symmetric_matrices_model().unwrap();
    let eps = CycNum::from_ratio(1, 100);
    let report = carousel_report(&model, 0, &eps, &params()).unwrap();
    assert_eq!(report.cluster_count, 3);
    assert_eq!(report.cluster_size, 2);
    assert!(report.cyclic_on_clusters);
    assert!(report.matches_sigma);
    assert!(report.observed_gap_ratio > 5.0);
}

#[test]
fn braid_generator_loops_give_wall_translations() {
    let model = symmetric_matrices_model().unwrap();
    let z = model.base_critical_set(&params()).unwrap();
    let eps = CycNum::from_ratio(1, 10);
    for wall in 0..2 {
        let frame = model.wall_frame(wall, &model.basepoint).unwrap();
        let lp = model.braid_generator_loop(wall, &eps).unwrap();
        let out = track_loop(&model, &z, &lp, &params()).unwrap();
        assert_eq!(out.permutation, model.right_translation(frame.sigma), "wall {wall}");
    }
}

#[test]
fn loop_concatenation_is_composition() {
    let model = symmetric_matrices_model().unwrap();
    let z = model.base_critical_set(&params()).unwrap();
    let eps = CycNum::from_ratio(1, 10);
    let l0 = model.braid_generator_loop(0, &eps).unwrap();
    let l1 = model.braid_generator_loop(1, &eps).unwrap();
    let p0 = track_loop(&model, &z, &l0, &params()).unwrap().permutation;
    let p1 = track_loop(&model, &z, &l1, &params()).unwrap().permutation;
    let cat = l0.concat(&l1).unwrap();
    let pc = track_loop(&model, &z, &cat, &params()).unwrap().permutation;
    let composed: Vec<usize> = (0..p0.len()).map(|i| p1[p0[i]]).collect();
    assert_eq!(pc, composed);
}

#[test]
fn wall_loops_generate_the_right_regular_action() {
    let model = symmetric_matrices_model().unwrap();
    let z = model.base_critical_set(&params()).unwrap();
    let eps = CycNum::from_ratio(1, 10);
    let mut gens = Vec::new();
    for wall in 0..2 {
        let lp = model.braid_generator_loop(wall, &eps).unwrap();
        gens.push(track_loop(&model, &z, &lp, &params()).unwrap().permutation);
    }
    let closure = permutation_group_closure(&gens);
    let mut expected: Vec<Vec<usize>> =
        (0..model.group.order()).map(|w| model.right_translation(w)).collect();
    expected.sort();
    assert_eq!(closure, expected);
}

#[test]
fn permutations_stable_under_step_halving() {
    let model = symmetric_matrices_model().unwrap();
    let z = model.base_critical_set(&params()).unwrap();
    let eps = CycNum::from_ratio(1, 10);
    let lp = model.braid_generator_loop(0, &eps).unwrap();
    let p1 = track_loop(&model, &z, &lp, &params()).unwrap().permutation;
    let mut halved = params();
    halved.initial_step *= 0.5;
    let p2 = track_loop(&model, &z, &lp, &halved).unwrap().permutation;
    assert_eq!(p1, p2);
}

#[test]
fn wall_half_turn_order_divides_n_sigma() {
    for (model, n_sigma) in [
        (quadric_model(3).unwrap(), 2u32),
        (normal_crossings_model(3).unwrap(), 3u32),
        (symmetric_matrices_model().unwrap(), 2u32),
    ] {
        let z = model.base_critical_set(&params()).unwrap();
        let eps = CycNum::from_ratio(1, 10);
        let lp = model.braid_generator_loop(0, &eps).unwrap();
        let p = track_loop(&model, &z, &lp, &params()).unwrap().permutation;
        // order of the permutation divides n_sigma
        let mut current: Vec<usize> = (0..p.len()).collect();
        let mut order = 0u32;
        loop {
            current = current.iter().map(|&i| p[i]).collect();
            order += 1;
            if current.iter().enumerate().all(|(i, &j)| i == j) {
                break;
            }
            assert!(order <= n_sigma, "order exceeded n_sigma for {}", model.name);
        }
        assert_eq!(n_sigma % order, 0, "{}", model.name);
    }
}

#[test]
fn model_invariance_validation_rejects_bad_group() {
    // Z/3 acting on the Cartan line of the quadric is not an invariance
    let mut f = MPoly::zero(2);
    for k in 0..2 {
        f = f.add(&MPoly::var(2, k).pow(2));
    }
    let group = ReflectionGroup::enumerate(&ReflectionGroupSpec::Cyclic { order: 3 }, 8).unwrap();
    let res = PolarModel::new(
        "bad",
        2,
        vec![f],
        vec![vec![CycNum::one(), CycNum::zero()]],
        group,
        vec![CycNum::one(), CycNum::zero()],
        vec![CycNum::one()],
        vec![],
    );
    assert!(res.is_err());
}
