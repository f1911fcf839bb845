use super::*;
use crate::braid::{BraidPresentation, NCPoly};
use crate::poly::IntPoly;
use crate::reflection::{CoxeterFamily, ReflectionGroupSpec};

fn free_one_generator() -> BraidPresentation {
    BraidPresentation::new(vec!["z".into()], vec![]).unwrap()
}

fn a2_presentation() -> BraidPresentation {
    BraidPresentation::for_group_spec(&ReflectionGroupSpec::Coxeter {
        family: CoxeterFamily::A,
        rank: 2,
    })
    .unwrap()
}

fn build_cyclic(poly: &[i64]) -> FinDimAlgebra {
    let pres = free_one_generator();
    let rels = RelationSet::uniform(&pres, IntPoly::from_i64(poly)).unwrap();
    build_quotient_algebra(&pres, &rels, 64).unwrap()
}

fn int_poly(p: &CycPoly) -> IntPoly {
    p.to_int().expect("integer minimal polynomial")
}

#[test]
fn truncated_polynomial_algebra() {
    // one free generator with (z - 1)^3: C[z]/(z-1)^3
    let alg = build_cyclic(&[-1, 3, -3, 1]);
    assert_eq!(alg.dim(), 3);
    assert_eq!(alg.basis_words(), &[vec![], vec![0], vec![0, 0]]);
    let mp = alg.min_poly(&NCPoly::gen(0)).unwrap();
    assert_eq!(int_poly(&mp), IntPoly::from_i64(&[-1, 3, -3, 1]));
    let analysis = alg.trace_form_analysis();
    assert!(!analysis.semisimple);
    assert_eq!(analysis.radical_dim, 2);
    assert!(alg.is_commutative());
    assert!(alg.verify_associativity());
    assert!(alg.verify_relations());
}

#[test]
fn group_algebra_of_s3() {
    // A2 Artin presentation with (t - 1)(t + 1): the group algebra C[S3]
    let pres = a2_presentation();
    let rels = RelationSet::uniform(&pres, IntPoly::from_i64(&[-1, 0, 1])).unwrap();
    let alg = build_quotient_algebra(&pres, &rels, 64).unwrap();
    assert_eq!(alg.dim(), 6);
    let analysis = alg.trace_form_analysis();
    assert!(analysis.semisimple);
    assert_eq!(analysis.radical_dim, 0);
    assert_eq!(alg.center_dim(), 3); // three conjugacy classes
    for mp in alg.generator_min_polys().unwrap() {
        assert_eq!(int_poly(&mp), IntPoly::from_i64(&[-1, 0, 1]));
    }
    assert!(alg.verify_associativity());
    assert!(alg.verify_relations());
}

#[test]
fn hecke_at_minus_one_for_s3() {
    // A2 Artin presentation with (t - 1)^2: dimension 6, not semisimple
    let pres = a2_presentation();
    let rels = RelationSet::uniform(&pres, IntPoly::from_i64(&[1, -2, 1])).unwrap();
    let alg = build_quotient_algebra(&pres, &rels, 64).unwrap();
    assert_eq!(alg.dim(), 6);
    assert!(!alg.is_semisimple());
    for mp in alg.generator_min_polys().unwrap() {
        assert_eq!(int_poly(&mp), IntPoly::from_i64(&[1, -2, 1]));
    }
    assert!(alg.verify_relations());
}

#[test]
fn unit_min_poly() {
    let alg = build_cyclic(&[-1, 0, 1]);
    let mp = alg.min_poly(&NCPoly::unit()).unwrap();
    assert_eq!(int_poly(&mp), IntPoly::from_i64(&[-1, 1]));
}

#[test]
fn left_regular_matrix_in_word_basis() {
    // C[z]/(z-1)^2 with word basis {1, z}: z*1 = z, z*z = 2z - 1
    let alg = build_cyclic(&[1, -2, 1]);
    assert_eq!(alg.dim(), 2);
    let l = alg.left_regular_matrix(&alg.generator(0));
    let expected = Mat::from_i64_rows(&[&[0, -1], &[1, 2]]);
    assert_eq!(l, expected);
}

#[test]
fn generator_inverse_from_relation() {
    // (z - 1)(z + 1): z^{-1} = z
    let alg = build_cyclic(&[-1, 0, 1]);
    let inv = alg.generator_inverses().unwrap().remove(0);
    assert_eq!(inv, alg.generator(0));
    // NCPoly with an inverse letter reduces correctly
    let v = alg.element(&NCPoly::gen_inv(0)).unwrap();
    assert_eq!(v, alg.generator(0));
}

#[test]
fn opposite_of_commutative_is_same() {
    let alg = build_cyclic(&[-1, 3, -3, 1]);
    let opp = alg.opposite();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            assert_eq!(alg.product_of_basis(i, j), opp.product_of_basis(i, j));
        }
    }
}

#[test]
fn opposite_preserves_invariants() {
    let pres = a2_presentation();
    let rels = RelationSet::uniform(&pres, IntPoly::from_i64(&[1, -2, 1])).unwrap();
    let alg = build_quotient_algebra(&pres, &rels, 64).unwrap();
    let opp = alg.opposite();
    assert_eq!(alg.dim(), opp.dim());
    assert_eq!(alg.trace_form_analysis(), opp.trace_form_analysis());
    assert_eq!(alg.center_dim(), opp.center_dim());
    // opposite products transpose the structure constants
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            assert_eq!(alg.product_of_basis(i, j), opp.product_of_basis(j, i));
        }
    }
    // noncommutative: some product must actually differ
    assert!((0..alg.dim()).any(|i| {
        (0..alg.dim()).any(|j| alg.product_of_basis(i, j) != opp.product_of_basis(i, j))
    }));
}

#[test]
fn compare_radical_distinguishes() {
    let a = build_cyclic(&[1, -2, 1]); // (z-1)^2
    let b = build_cyclic(&[-1, 0, 1]); // z^2 - 1
    let verdict = compare_algebras(&a, &b).unwrap();
    assert!(verdict.dimension_equal);
    assert_eq!(verdict.radical_dims, (1, 0));
    assert!(matches!(verdict.verdict, IsoVerdict::NotIsomorphic { .. }));
}

#[test]
fn compare_local_multiplicities() {
    // (z-1)(z+1)^2 vs (z+1)(z-1)^2: same dimension, radical and center,
    // but the multiplicity at each root differs
    let a = build_cyclic(&[-1, -1, 1, 1]); // (z-1)(z+1)^2 = z^3+z^2-z-1
    let b = build_cyclic(&[1, -1, -1, 1]); // (z+1)(z-1)^2 = z^3-z^2-z+1
    assert_eq!(a.dim(), 3);
    assert_eq!(b.dim(), 3);
    let verdict = compare_algebras(&a, &b).unwrap();
    assert_eq!(verdict.radical_dims, (1, 1));
    match &verdict.verdict {
        IsoVerdict::NotIsomorphic { reason } => {
            assert!(reason.contains("local multiplicities"), "{reason}");
        }
        other => panic!("expected NotIsomorphic, got {other:?}"),
    }
}

#[test]
fn compare_identical_builds() {
    let pres = a2_presentation();
    let rels = RelationSet::uniform(&pres, IntPoly::from_i64(&[-1, 0, 1])).unwrap();
    let a = build_quotient_algebra(&pres, &rels, 64).unwrap();
    let b = build_quotient_algebra(&pres, &rels, 64).unwrap();
    let verdict = compare_algebras(&a, &b).unwrap();
    assert!(matches!(verdict.verdict, IsoVerdict::Isomorphic { .. }));
}

#[test]
fn zero_algebra_is_an_error() {
    // z = z^2 together with (z + 1) forces 1 = -1, collapsing to zero
    let pres =
        BraidPresentation::new(vec!["z".into()], vec![(vec![0], vec![0, 0])]).unwrap();
    let rels = RelationSet::uniform(&pres, IntPoly::from_i64(&[1, 1])).unwrap();
    match build_quotient_algebra(&pres, &rels, 16) {
        Err(Error::ZeroAlgebra) => {}
        other => panic!("expected zero-algebra error, got {other:?}"),
    }
}

#[test]
fn dim_cap_enforced() {
    let pres = a2_presentation();
    let rels = RelationSet::uniform(&pres, IntPoly::from_i64(&[-1, 0, 1])).unwrap();
    match build_quotient_algebra(&pres, &rels, 2) {
        Err(Error::DimCapExceeded(2)) => {}
        other => panic!("expected cap error, got {other:?}"),
    }
}

#[test]
fn generator_order_permutation_invariance() {
    // same Coxeter presentation with the two generators swapped
    let p1 = a2_presentation();
    let p2 = BraidPresentation::new(
        vec!["s2".into(), "s1".into()],
        vec![(vec![1, 0, 1], vec![0, 1, 0])],
    )
    .unwrap();
    let r1 = RelationSet::uniform(&p1, IntPoly::from_i64(&[1, -2, 1])).unwrap();
    let r2 = RelationSet::uniform(&p2, IntPoly::from_i64(&[1, -2, 1])).unwrap();
    let a1 = build_quotient_algebra(&p1, &r1, 64).unwrap();
    let a2 = build_quotient_algebra(&p2, &r2, 64).unwrap();
    assert_eq!(a1.dim(), a2.dim());
    let sorted = |alg: &FinDimAlgebra| -> Vec<String> {
        let mut v: Vec<String> =
            alg.generator_min_polys().unwrap().iter().map(format_min_poly).collect();
        v.sort();
        v
    };
    assert_eq!(sorted(&a1), sorted(&a2));
}

#[test]
fn mixed_orbit_relations() {
    // G(4,1,1) = Z/4 acting on C: relation (t^2-1)^2 of degree 4
    let pres = BraidPresentation::new(vec!["t".into()], vec![]).unwrap();
    let rels = RelationSet::uniform(&pres, IntPoly::from_i64(&[1, 0, -2, 0, 1])).unwrap();
    let alg = build_quotient_algebra(&pres, &rels, 16).unwrap();
    assert_eq!(alg.dim(), 4);
    let mp = alg.generator_min_polys().unwrap().remove(0);
    assert_eq!(int_poly(&mp), IntPoly::from_i64(&[1, 0, -2, 0, 1]));
}
