//! Module actions, preserved adjunctions and the coherent synthesis, the
//! unit-action lift check, and the projectivizing test.

use semicat::fincat::{CatPresentation, Fo, Mor};
use semicat::generate::*;
use semicat::linalg::Mat;
use semicat::modlift::*;
use semicat::rigidity::certificate_search;
use semicat::semicat::SemigroupData;
use semicat::unit::unit_general;
use semicat::FieldSpec;

fn q() -> FieldSpec {
    FieldSpec::Q
}

#[test]
fn regular_modules_validate() {
    for s in [
        bimodule_proj(&algebra_k(q())).unwrap(),
        bimodule_proj(&algebra_dual_numbers(q())).unwrap(),
        group_proj(&group_z2(), FieldSpec::Fp(2)).unwrap(),
        bimodule_proj(&algebra_k_times_k(q())).unwrap(),
    ] {
        let m = ModuleCatData::regular(&s);
        let rep = validate_module(&s, &m);
        assert!(rep.pass, "violations: {:?}", rep.violations);
    }
}

#[test]
fn zeroed_multiplicativity_block_fails_validation() {
    let s = bimodule_proj(&algebra_dual_numbers(q())).unwrap();
    let mut m = ModuleCatData::regular(&s);
    let cell = &m.mult[0][0][0];
    m.mult[0][0][0] = Mor::zero(&m.base, cell.src.clone(), cell.dst.clone());
    let rep = validate_module(&s, &m);
    assert!(!rep.pass);
    assert!(!rep.violations.is_empty());
}

#[test]
fn realization_on_regular_modules() {
    for s in [
        bimodule_proj(&algebra_k(q())).unwrap(),
        bimodule_proj(&algebra_dual_numbers(q())).unwrap(),
        group_proj(&group_z2(), FieldSpec::Fp(2)).unwrap(),
    ] {
        let cert = certificate_search(&s, 2, 0).unwrap();
        let m = ModuleCatData::regular(&s);
        match adjunction_realization(&s, &m, &cert.right[0], 0, 6) {
            RealizationResult::Found(r) => assert!(r.coherent),
            RealizationResult::Refuted(w) => panic!("refuted on a rigid regular module: {w}"),
            RealizationResult::Undecided => panic!("undecided on a rigid regular module"),
        }
    }
}

/// The radical-killing idempotent endofunctor of modules over the dual
/// numbers: indecomposables P (the free module) and S (the simple), with
/// the functor sending P to S ⊕ S and S to S. It squares to itself but is
/// not self-adjoint, so the one-object-monoid action it defines refutes
/// automatic preservation of adjoint pairs.
fn semisimplification_module() -> (SemigroupData, ModuleCatData) {
    let f = q();
    let s = linear_semigroup(f, &["*"], &[vec![0]]).unwrap();
    // M: objects P, S; Hom(P,P) = k[x]/(x^2), Hom(P,S) = k, Hom(S,P) = k,
    // Hom(S,S) = k; the nonzero composite S -> P -> S is zero (it factors
    // through the socle), and P -> S -> P is x.
    let homdim = vec![vec![2, 1], vec![1, 1]];
    // basis: End(P) = {1, x}; Hom(P,S) = {p}; Hom(S,P) = {i}; End(S) = {1}
    let mut comp = vec![vec![Vec::new(); 2]; 2];
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                comp[x][y].push(Mat::zero(f, homdim[x][z], homdim[y][z] * homdim[x][y]));
            }
        }
    }
    // End(P) multiplication (dual numbers): columns j*2+i
    comp[0][0][0].set(0, 0, f.one());
    comp[0][0][0].set(1, 1, f.one());
    comp[0][0][0].set(1, 2, f.one());
    // p ∘ 1 = p, p ∘ x = 0: Hom(P,P) x Hom(P,S): comp[0][0][1]: cols j*2+i,
    // j over Hom(P,S) basis (p), i over End(P) (1, x)
    comp[0][0][1].set(0, 0, f.one());
    // 1_S ∘ p = p: comp[0][1][1]: j over End(S), i over Hom(P,S)
    comp[0][1][1].set(0, 0, f.one());
    // i ∘ 1_S = i: comp[1][1][0]: j over Hom(S,P), i over End(S)
    comp[1][1][0].set(0, 0, f.one());
    // 1_P ∘ i = i, x ∘ i = 0: comp[1][0][0]: j over End(P) (1, x), i over Hom(S,P)
    comp[1][0][0].set(0, 0, f.one());
    // p ∘ i = 0 (S -> P -> S): comp[1][0][1] stays zero
    // i ∘ p = x (P -> S -> P): comp[0][1][0]: j over Hom(S,P), i over Hom(P,S)
    comp[0][1][0].set(1, 0, f.one());
    // End(S)
    comp[1][1][1].set(0, 0, f.one());
    let base = CatPresentation {
        field: f,
        objects: vec!["P".into(), "S".into()],
        homdim,
        comp,
        ident: vec![vec![f.one(), f.zero()], vec![f.one()]],
    };
    assert!(semicat::fincat::validate_presentation(&base).pass);

    // the action of the single generator: P -> S ⊕ S, S -> S; morphisms
    // factor through the semisimplification
    let act_obj = vec![vec![Fo(vec![1, 1]), Fo(vec![1])]];
    let mut act_mor = vec![vec![vec![vec![Vec::new(); 2]; 2]]];
    // act on End(P) basis (1, x): the underlying linear maps survive, so x
    // becomes the top-to-socle map on S ⊕ S
    let id_ss = Mor::identity(&base, &Fo(vec![1, 1]));
    let mut x_map = Mor::zero(&base, Fo(vec![1, 1]), Fo(vec![1, 1]));
    x_map.blocks[1][0] = vec![f.one()];
    act_mor[0][0][0][0] = vec![id_ss.clone(), x_map];
    // act on p: P -> S: becomes the projection onto the top component
    let mut proj_top = Mor::zero(&base, Fo(vec![1, 1]), Fo(vec![1]));
    proj_top.blocks[0][0] = vec![f.one()];
    act_mor[0][0][0][1] = vec![proj_top];
    // act on i: S -> P: becomes the inclusion of the socle component
    let mut inc_soc = Mor::zero(&base, Fo(vec![1]), Fo(vec![1, 1]));
    inc_soc.blocks[1][0] = vec![f.one()];
    act_mor[0][0][1][0] = vec![inc_soc];
    // act on End(S)
    act_mor[0][0][1][1] = vec![Mor::identity(&base, &Fo(vec![1]))];
    // multiplicativity: S_A(S_A(X)) = S_A(X) via the identity
    let mult = vec![vec![vec![
        Mor::identity(&base, &Fo(vec![1, 1])),
        Mor::identity(&base, &Fo(vec![1])),
    ]]];
    let m = ModuleCatData {
        base,
        act_obj,
        act_mor,
        mult: mult.clone(),
        mult_inv: mult,
    };
    (s, m)
}

#[test]
fn semisimplification_endofunctor_is_refuted() {
    let (s, m) = semisimplification_module();
    let rep = validate_module(&s, &m);
    assert!(rep.pass, "violations: {:?}", rep.violations);
    // the one-element-monoid object is self-dual with identity data
    let cert = certificate_search(&s, 1, 0).unwrap();
    match adjunction_realization(&s, &m, &cert.right[0], 0, 4) {
        RealizationResult::Refuted(w) => {
            assert!(w.contains("dim"), "witness should be a dimension mismatch: {w}");
        }
        _ => panic!("the radical-killing idempotent must be refuted by dimensions"),
    }
}

#[test]
fn unital_lift_passes_on_regular_modules() {
    for s in [
        bimodule_proj(&algebra_k(q())).unwrap(),
        group_proj(&group_z2(), FieldSpec::Fp(2)).unwrap(),
    ] {
        let cert = certificate_search(&s, 2, 0).unwrap();
        let unit = unit_general(&s, &cert);
        let m = ModuleCatData::regular(&s);
        let rep = unital_lift_check(&s, &m, &cert, &unit, 0).unwrap();
        assert!(rep.pass, "failures: {:?}", rep.failures);
    }
}

#[test]
fn zero_action_module_is_rejected_at_the_surjectivity_clause() {
    let s = bimodule_proj(&algebra_dual_numbers(q())).unwrap();
    let cert = certificate_search(&s, 2, 0).unwrap();
    let unit = unit_general(&s, &cert);
    let m = ModuleCatData::zero_action(&s, q());
    assert!(validate_module(&s, &m).pass);
    let rep = unital_lift_check(&s, &m, &cert, &unit, 0).unwrap();
    assert!(!rep.pass);
    assert!(!rep.surjective_action);
    assert!(rep.failures.iter().any(|f| f.contains("S ⋆ M = M")));
}

#[test]
fn projectivizing_on_group_projectives() {
    // the regular module of a disimple fixture is projectivizing
    let s = group_proj(&group_z2(), FieldSpec::Fp(2)).unwrap();
    let m = ModuleCatData::regular(&s);
    let rep = projectivizing_check(&s, &m).unwrap();
    assert!(rep.pass, "witness: {:?}", rep.witness);
}

#[test]
fn dual_numbers_bimodules_are_not_projectivizing() {
    // acting on the simple bimodule with both actions zero produces a
    // non-projective object
    let s = bimodule_proj(&algebra_dual_numbers(q())).unwrap();
    let m = ModuleCatData::regular(&s);
    let rep = projectivizing_check(&s, &m).unwrap();
    assert!(!rep.pass);
    assert!(rep.witness.unwrap().contains("simple"));
}

#[test]
fn projectivizing_trivially_on_k() {
    let s = bimodule_proj(&algebra_k(q())).unwrap();
    let m = ModuleCatData::regular(&s);
    assert!(projectivizing_check(&s, &m).unwrap().pass);
}
