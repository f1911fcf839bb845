//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line. Every tolerance is pinned here, in code.

mod common;

use common::HeckeOracle;
use num_complex::Complex64;
use polarweyl::algebra::{build_quotient_algebra, compare_algebras, IsoVerdict};
use polarweyl::catalog::{bundled_entries, run_entry, tracker_model_by_name, RunOptions};
use polarweyl::cyclotomic::CycNum;
use polarweyl::poly::IntPoly;
use polarweyl::rank_one::{
    carousel_matrix, inflate_relation, roots_of_unity_check, RankOneDatum, RankOneType,
};
use polarweyl::symspace::{
    build_symmetric_space_algebra, bundled_symmetric_spaces, classify_hybrid, HybridClass,
};
use polarweyl::tracker::{
    carousel_report, permutation_group_closure, track_loop, LoopSpec, PolarModel, TrackerParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn criterion_line(n: u32, name: &str, pass: bool) {
    println!("criterion {n} ({name}): {}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} ({name}) failed");
}

/// Criterion 1: catalog exactness for the seven worked-example families
/// at the bundled parameters: dimension exactly |W| and generator minimal
/// polynomials exactly the expected relation, integer equality, within
/// the runtime budget.
#[test]
fn criterion_1_catalog_exactness() {
    let families = [
        "quadric",
        "normal-crossings",
        "determinant",
        "symmetric-det",
        "sym-conj",
        "orth-symp",
        "evaluation-map",
    ];
    let entries = bundled_entries().unwrap();
    let opts = RunOptions::default();
    let suite_start = std::time::Instant::now();
    let mut pass = true;
    for family in families {
        let selected: Vec<_> =
            entries.iter().filter(|e| e.tags.iter().any(|t| t == family)).collect();
        assert!(!selected.is_empty(), "no entries for {family}");
        for entry in selected {
            let outcome = run_entry(entry, &opts);
            if !outcome.pass {
                eprintln!("entry {} failed: {:#?}", entry.id, outcome.checks);
                pass = false;
            }
            if outcome.elapsed_ms > 60_000.0 {
                eprintln!("entry {} exceeded 60 s ({} ms)", entry.id, outcome.elapsed_ms);
                pass = false;
            }
        }
    }
    let total = suite_start.elapsed().as_secs_f64();
    if total > 600.0 {
        eprintln!("catalog exactness took {total:.1} s > 600 s");
        pass = false;
    }
    criterion_line(1, "catalog exactness", pass);
}

/// Criterion 2: the dimension law dim A = |W| for every bundled
/// group/relation pair, up to |W| = 384, exactly.
#[test]
fn criterion_2_dimension_law() {
    let entries = bundled_entries().unwrap();
    let mut pass = true;
    let mut max_order = 0usize;
    for entry in &entries {
        let Some(spec) = &entry.group else { continue };
        let group =
            polarweyl::reflection::ReflectionGroup::enumerate(spec, 2 * entry.expected_dim + 8)
                .unwrap();
        let alg =
            build_quotient_algebra(&entry.presentation, &entry.relations, entry.expected_dim)
                .unwrap();
        max_order = max_order.max(group.order());
        if alg.dim() != group.order() {
            eprintln!("{}: dim {} != |W| {}", entry.id, alg.dim(), group.order());
            pass = false;
        }
    }
    if max_order < 384 {
        eprintln!("largest bundled group has order {max_order} < 384");
        pass = false;
    }
    criterion_line(2, "dimension law dim A = |W|", pass);
}

/// Criterion 3: for all rank-one data with n <= 12 the minimal
/// polynomial of the carousel block matrix equals the inflation
/// Rt(z^m), exactly.
#[test]
fn criterion_3_carousel_inflation() {
    let mut pass = true;
    let mut cases = 0usize;
    for n in 1..=12u32 {
        for m in (1..=n).filter(|m| n % m == 0) {
            let d = (n / m) as usize;
            for rt in slice_polynomials(d) {
                let datum = RankOneDatum::new("orbit", n, m, rt, RankOneType::Local).unwrap();
                let per_case = std::time::Instant::now();
                let inflated = inflate_relation(&datum).unwrap();
                let (_, min_poly) = carousel_matrix(&datum).unwrap();
                cases += 1;
                if min_poly != inflated {
                    eprintln!("mismatch at n = {n}, m = {m}");
                    pass = false;
                }
                if per_case.elapsed().as_secs_f64() > 1.0 {
                    eprintln!("case n = {n}, m = {m} exceeded 1 s");
                    pass = false;
                }
            }
        }
    }
    assert!(cases > 100, "sweep covered {cases} cases");
    criterion_line(3, "carousel minimal polynomial equals inflation (n <= 12)", pass);
}

fn slice_polynomials(d: usize) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut p = IntPoly::one();
    for _ in 0..d {
        p = p.mul(&IntPoly::from_i64(&[-1, 1]));
    }
    out.push(p); // (w-1)^d
    let mut p = IntPoly::one();
    for _ in 0..d {
        p = p.mul(&IntPoly::from_i64(&[1, 1]));
    }
    out.push(p); // (w+1)^d
    let mut coeffs = vec![0i64; d + 1];
    coeffs[0] = -1;
    coeffs[d] = 1;
    out.push(IntPoly::from_i64(&coeffs)); // w^d - 1
    if d >= 2 {
        let mut p = IntPoly::from_i64(&[1, 1]);
        for _ in 0..d - 1 {
            p = p.mul(&IntPoly::from_i64(&[-1, 1]));
        }
        out.push(p); // (w-1)^{d-1}(w+1)
    }
    out
}

/// Criterion 4: every relation polynomial produced anywhere factors
/// completely into cyclotomic polynomials, exactly.
#[test]
fn criterion_4_roots_of_unity() {
    let mut pass = true;
    // catalog relations
    for entry in bundled_entries().unwrap() {
        for (orbit, poly) in entry.relations.orbits() {
            let r = roots_of_unity_check(poly).unwrap();
            if !r.all_roots_of_unity {
                eprintln!("{}: R[{orbit}] has a non-cyclotomic factor", entry.id);
                pass = false;
            }
        }
    }
    // symmetric-space recipe relations
    for b in bundled_symmetric_spaces().unwrap() {
        let spec = polarweyl::reflection::ReflectionGroupSpec::Coxeter {
            family: b.datum.family,
            rank: b.datum.rank,
        };
        let pres = polarweyl::braid::BraidPresentation::for_group_spec(&spec).unwrap();
        for (_, poly) in b.datum.relation_set(&pres).unwrap().orbits() {
            if !roots_of_unity_check(poly).unwrap().all_roots_of_unity {
                pass = false;
            }
        }
    }
    // rank-one inflations from the criterion-3 sweep
    for n in 1..=12u32 {
        for m in (1..=n).filter(|m| n % m == 0) {
            for rt in slice_polynomials((n / m) as usize) {
                // only cyclotomic-rooted slices produce relations here
                if !roots_of_unity_check(&rt).unwrap().all_roots_of_unity {
                    continue;
                }
                let datum = RankOneDatum::new("orbit", n, m, rt, RankOneType::Local).unwrap();
                let inflated = inflate_relation(&datum).unwrap();
                if !roots_of_unity_check(&inflated).unwrap().all_roots_of_unity {
                    eprintln!("inflation broke the roots-of-unity property at n = {n}, m = {m}");
                    pass = false;
                }
            }
        }
    }
    criterion_line(4, "all relation polynomials factor into cyclotomics", pass);
}

/// Criterion 5: the symmetric-space recipe: sl(n,R) gives non-semisimple
/// algebras of dimension n! with all minimal polynomials (z-1)^2; the
/// group case matches the group algebra; the oracle confirms every
/// bundled datum. Includes an independent Hecke-multiplication
/// cross-check of the sl(n,R) family.
#[test]
fn criterion_5_symmetric_space_recipe() {
    let start = std::time::Instant::now();
    let mut pass = true;
    let bundled = bundled_symmetric_spaces().unwrap();

    for n in 2..=4usize {
        let b = bundled.iter().find(|b| b.datum.name == format!("sl({n},R)")).unwrap();
        let alg = build_symmetric_space_algebra(&b.datum, 64).unwrap();
        let expected_dim: usize = (1..=n).product();
        if alg.dim() != expected_dim {
            eprintln!("sl({n},R): dim {} != {expected_dim}", alg.dim());
            pass = false;
        }
        if alg.is_semisimple() {
            eprintln!("sl({n},R): unexpectedly semisimple");
            pass = false;
        }
        for mp in alg.generator_min_polys().unwrap() {
            if mp.to_int() != Some(IntPoly::from_i64(&[1, -2, 1])) {
                eprintln!("sl({n},R): generator minimal polynomial differs from (z-1)^2");
                pass = false;
            }
        }
        // independent oracle: Hecke multiplication in the T_w basis
        let oracle = HeckeOracle::symmetric_group(n);
        if oracle.dim != expected_dim {
            pass = false;
        }
        if oracle.trace_form_rank() == oracle.dim {
            eprintln!("oracle claims semisimplicity for n = {n}");
            pass = false;
        }
        let oracle_mp = oracle.min_poly_of_negated_generator();
        if oracle_mp != common::z_minus_one_squared() {
            eprintln!("oracle minimal polynomial differs for n = {n}: {oracle_mp:?}");
            pass = false;
        }
    }

    // the group case matches the group algebra of its Weyl group
    {
        let b = bundled.iter().find(|b| b.datum.name == "group case sl2+sl2").unwrap();
        let alg = build_symmetric_space_algebra(&b.datum, 16).unwrap();
        if !(alg.is_semisimple() && alg.dim() == 2) {
            pass = false;
        }
        for mp in alg.generator_min_polys().unwrap() {
            if mp.to_int() != Some(IntPoly::from_i64(&[-1, 0, 1])) {
                pass = false;
            }
        }
        // compare against the directly built group algebra C[W]
        let pres = polarweyl::braid::BraidPresentation::new(vec!["s1".into()], vec![]).unwrap();
        let rels = polarweyl::braid::RelationSet::uniform(&pres, IntPoly::from_i64(&[-1, 0, 1]))
            .unwrap();
        let group_algebra = build_quotient_algebra(&pres, &rels, 8).unwrap();
        let verdict = compare_algebras(&alg, &group_algebra).unwrap();
        if !matches!(verdict.verdict, IsoVerdict::Isomorphic { .. }) {
            eprintln!("group case does not match the group algebra: {verdict:?}");
            pass = false;
        }
        if classify_hybrid(&b.datum) != HybridClass::GroupAlgebra {
            pass = false;
        }
    }

    // the oracle agrees on every bundled involution model
    for b in &bundled {
        let oracle = b.model.s_values_oracle().unwrap();
        if oracle.s_values != b.datum.s_values() {
            eprintln!("oracle disagrees for {}", b.datum.name);
            pass = false;
        }
    }

    if start.elapsed().as_secs_f64() > 120.0 {
        eprintln!("criterion 5 exceeded 120 s");
        pass = false;
    }
    criterion_line(5, "symmetric-space recipe and oracle", pass);
}

/// Criterion 6: tracker properties on the three bundled models:
/// (a) |Z| = |W|; (b) loop concatenation is permutation composition on
/// 10 random loop pairs; (c) the wall loops generate exactly the
/// label-translation action of W; (d) the carousel clusters into
/// |W|/n_sigma groups of n_sigma. Permutations are bit-identical under
/// step halving. Residual tolerance 1e-10, match radius 1e-6.
#[test]
fn criterion_6_tracker_properties() {
    let start = std::time::Instant::now();
    let params = TrackerParams::default();
    assert_eq!(params.accept_residual, 1e-10);
    assert_eq!(params.match_radius, 1e-6);
    let mut pass = true;
    let eps = CycNum::from_ratio(1, 10);

    for name in ["quadric:3", "normal-crossings:3", "symmetric-matrices:3"] {
        let model = tracker_model_by_name(name).unwrap();
        let z = model.base_critical_set(&params).unwrap();
        // (a)
        if z.len() != model.group.order() {
            eprintln!("{name}: |Z| = {} != |W| = {}", z.len(), model.group.order());
            pass = false;
        }

        // wall loops and their permutations
        let wall_count = model.walls.len();
        let mut wall_loops: Vec<LoopSpec> = Vec::new();
        for w in 0..wall_count {
            wall_loops.push(model.braid_generator_loop(w, &eps).unwrap());
        }
        let wall_perms: Vec<Vec<usize>> = wall_loops
            .iter()
            .map(|lp| track_loop(&model, &z, lp, &params).unwrap().permutation)
            .collect();

        // (c) group closure equals the right-translation action
        let closure = permutation_group_closure(&wall_perms);
        let mut expected: Vec<Vec<usize>> =
            (0..model.group.order()).map(|w| model.right_translation(w)).collect();
        expected.sort();
        if closure != expected {
            eprintln!("{name}: wall loops do not generate the translation action");
            pass = false;
        }

        // (b) ten random loop pairs: words in the wall loops and reverses
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..10 {
            let mut make_loop = || -> LoopSpec {
                let mut lp: Option<LoopSpec> = None;
                let letters = 1 + rng.gen_range(0..2);
                for _ in 0..letters {
                    let base = &wall_loops[rng.gen_range(0..wall_count)];
                    let piece =
                        if rng.gen_bool(0.5) { base.clone() } else { base.reverse() };
                    lp = Some(match lp {
                        None => piece,
                        Some(prev) => prev.concat(&piece).unwrap(),
                    });
                }
                lp.unwrap()
            };
            let g1 = make_loop();
            let g2 = make_loop();
            let p1 = track_loop(&model, &z, &g1, &params).unwrap().permutation;
            let p2 = track_loop(&model, &z, &g2, &params).unwrap().permutation;
            let cat = g1.concat(&g2).unwrap();
            let pc = track_loop(&model, &z, &cat, &params).unwrap().permutation;
            let composed: Vec<usize> = (0..p1.len()).map(|i| p2[p1[i]]).collect();
            if pc != composed {
                eprintln!("{name}: concatenation is not composition");
                pass = false;
            }
        }

        // (d) carousel clustering
        let carousel_eps = if name == "symmetric-matrices:3" {
            CycNum::from_ratio(1, 100)
        } else {
            CycNum::from_ratio(1, 10)
        };
        let report = carousel_report(&model, 0, &carousel_eps, &params).unwrap();
        let n_sigma = report.n_sigma as usize;
        if report.cluster_count != model.group.order() / n_sigma
            || !report.cyclic_on_clusters
            || !report.matches_sigma
        {
            eprintln!("{name}: carousel structure check failed: {report:?}");
            pass = false;
        }

        // bit-identical permutations across two step sizes
        let mut halved = params;
        halved.initial_step *= 0.5;
        for lp in &wall_loops {
            let a = track_loop(&model, &z, lp, &params).unwrap().permutation;
            let b = track_loop(&model, &z, lp, &halved).unwrap().permutation;
            if a != b {
                eprintln!("{name}: permutation changed under step halving");
                pass = false;
            }
        }
    }

    if start.elapsed().as_secs_f64() > 300.0 {
        eprintln!("criterion 6 exceeded 300 s");
        pass = false;
    }
    criterion_line(6, "tracker properties on the bundled models", pass);
}

/// Criterion 7: algebra property suite: associativity on all basis
/// triples (exact) for every bundled algebra of dimension <= 48;
/// trace-form semisimplicity verdicts match the closed-form squarefree
/// criterion on all commutative entries (exact); the opposite-algebra
/// involution preserves dimension and radical.
#[test]
fn criterion_7_algebra_property_suite() {
    let mut pass = true;
    for entry in bundled_entries().unwrap() {
        let alg =
            build_quotient_algebra(&entry.presentation, &entry.relations, entry.expected_dim)
                .unwrap();
        if alg.dim() <= 48 && !alg.verify_associativity() {
            eprintln!("{}: associativity failed", entry.id);
            pass = false;
        }
        if alg.dim() <= 48 && !alg.verify_relations() {
            eprintln!("{}: relations fail in the regular representation", entry.id);
            pass = false;
        }
        if entry.presentation.generator_count() == 1 && alg.dim() <= 48 && alg.is_commutative()
        {
            // commutative: semisimple iff the relation polynomial is
            // squarefree, i.e. every cyclotomic factor has multiplicity 1
            let poly = entry.relations.poly_for_generator(0);
            let (factors, rest) = polarweyl::poly::factor_cyclotomic(poly);
            assert!(rest.is_one(), "catalog relations are cyclotomic products");
            let squarefree = factors.iter().all(|(_, m)| *m == 1);
            let analysis = alg.trace_form_analysis();
            if analysis.semisimple != squarefree {
                eprintln!(
                    "{}: semisimplicity {} but squarefree {}",
                    entry.id, analysis.semisimple, squarefree
                );
                pass = false;
            }
        }
        if alg.dim() <= 48 {
            let opp = alg.opposite();
            if opp.dim() != alg.dim()
                || opp.trace_form_analysis() != alg.trace_form_analysis()
            {
                eprintln!("{}: opposite algebra changed invariants", entry.id);
                pass = false;
            }
        }
    }
    criterion_line(7, "algebra property suite", pass);
}

/// The spec's per-model regularity claims: residuals at accepted steps
/// stay within tolerance and the Jacobian never degenerates (logged as
/// part of criterion 6 but asserted separately here for visibility).
#[test]
fn tracker_residual_and_jacobian_logs() {
    let params = TrackerParams::default();
    let model: PolarModel = tracker_model_by_name("symmetric-matrices:3").unwrap();
    let z = model.base_critical_set(&params).unwrap();
    let lp = model.braid_generator_loop(0, &CycNum::from_ratio(1, 10)).unwrap();
    let out = track_loop(&model, &z, &lp, &params).unwrap();
    for log in &out.logs {
        assert!(log.max_residual <= params.accept_residual);
        assert!(log.min_abs_det_jacobian >= params.min_det_jacobian);
    }
    // lambda values of the critical set agree with the loop basepoint
    let base = lp.basepoint();
    for (a, b) in base.iter().zip(z.lambda.iter()) {
        assert!((a - b).norm() < 1e-12);
    }
    let _: Vec<Complex64> = base;
}
