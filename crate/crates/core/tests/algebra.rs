use lierinehart::constructions::{atiyah_algebra, builtin, der_algebra, fiber_product, semidirect, BUILTIN_NAMES};
use lierinehart::exactlin::{frac, int, unit, Matrix, Subspace, Tensor3};
use lierinehart::{Axiom, CommAlgebra, LRMorphism, LeftLRModule, LieRinehartAlgebra, RightLRModule};
use std::sync::Arc;

#[test]
fn twisted_module_structure_on_dual_numbers_is_valid() {
    // ε · 1 = c ε instead of ε: A acting through the automorphism ε ↦ cε
    let l = builtin("dual_numbers").unwrap();
    for c in [int(0), int(2), frac(-1, 2)] {
        let t = l.with_action_entry(1, 0, 1, c);
        assert!(t.validate().is_valid());
    }
}

#[test]
fn single_bracket_mutation_breaks_antisymmetry_or_jacobi() {
    for name in BUILTIN_NAMES {
        let l = builtin(name).unwrap();
        let n = l.dim();
        for (i, j, k) in [(0, 0, 0), (0, n - 1, 0), (n - 1, 0, n - 1)] {
            let v = l.bracket_tensor().get(i, j, k) + int(1);
            let r = l.with_bracket_entry(i, j, k, v).validate();
            assert!(r.has(Axiom::Antisymmetry) || r.has(Axiom::Jacobi), "{name}");
        }
    }
}

#[test]
fn unsigned_swap_on_sl2_breaks_the_bracket() {
    let l = Arc::new(builtin("sl2").unwrap());
    let m = Matrix::from_fn(3, 3, |r, c| match (r, c) {
        (0, 0) | (1, 2) | (2, 1) => int(1),
        _ => int(0),
    });
    let f = LRMorphism::new(l.clone(), l.clone(), m).unwrap();
    assert!(f.validate().has(Axiom::MorphismBracket));
    let zero = LRMorphism::zero(l.clone(), l).unwrap();
    assert!(zero.validate().is_valid());
}

#[test]
fn right_modules_need_zero_anchor() {
    let l = builtin("dual_numbers").unwrap();
    // A with zero right action: the mixed law would force x(a)m = 0
    let bad = RightLRModule::with_zero_action(&l, l.base().mult().clone()).unwrap();
    assert!(!bad.validate(&l).is_valid());
    let sl2 = builtin("sl2").unwrap();
    assert!(RightLRModule::trivial(&sl2, 2).unwrap().validate(&sl2).is_valid());
    assert!(LeftLRModule::base_module(&sl2).validate(&sl2).is_valid());
}

#[test]
fn derivations_of_bases() {
    assert!(CommAlgebra::rationals().derivations().is_empty());
    assert_eq!(CommAlgebra::dual_numbers().derivations().len(), 1);
    assert!(CommAlgebra::split(2).derivations().is_empty());
    assert_eq!(CommAlgebra::truncated_polynomials(3).derivations().len(), 2);
}

#[test]
fn der_algebra_is_closed_under_commutators() {
    let base = CommAlgebra::truncated_polynomials(3);
    let der = base.derivations();
    let span = Subspace::span(9, der.iter().map(|d| d.entries().to_vec()));
    for a in &der {
        for b in &der {
            assert!(span.contains(a.commutator(b).entries()));
        }
    }
    assert!(der_algebra(&base).validate().is_valid());
}

#[test]
fn center_is_killed_by_every_adjoint() {
    for name in BUILTIN_NAMES {
        let l = builtin(name).unwrap();
        let z = l.center();
        for i in 0..l.dim() {
            let ad = l.adjoint(&unit(l.dim(), i));
            for v in z.basis() {
                assert!(ad.apply(v).iter().all(|x| *x == int(0)), "{name}");
            }
        }
        let d = l.derived();
        assert_eq!(d.close_under(&l.act_operators()), d, "{name}");
    }
}

#[test]
fn constructions_return_valid_algebras() {
    let q = CommAlgebra::rationals();
    let m = Tensor3::from_fn(1, 2, 2, |_, j| unit(2, j));
    let at = atiyah_algebra(&q, &m).unwrap();
    assert_eq!(at.dim(), 4);
    let dual = CommAlgebra::dual_numbers();
    let at = atiyah_algebra(&dual, dual.mult()).unwrap();
    assert_eq!(at.dim(), 3);
    assert!(at.validate().is_valid());

    let sl2 = Arc::new(builtin("sl2").unwrap());
    let zero_r = LieRinehartAlgebra::zero(sl2.base());
    let same = semidirect(&sl2, &zero_r, &Tensor3::zeros(3, 0, 0)).unwrap();
    assert_eq!(same.bracket_tensor(), sl2.bracket_tensor());

    let dpa = Arc::new(builtin("der_plus_a").unwrap());
    let a = Arc::new(builtin("dual_numbers").unwrap());
    let fp = fiber_product(&dpa, &a).unwrap();
    assert!(fp.algebra.validate().is_valid());
    let both_zero = fiber_product(&sl2, &sl2).unwrap();
    assert_eq!(both_zero.algebra.dim(), 6);
}

#[test]
fn heisenberg_commutator_is_center() {
    let h = builtin("heisenberg").unwrap();
    assert_eq!(h.derived(), h.center());
    assert_eq!(h.center().rank(), 1);
}
