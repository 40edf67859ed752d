mod common;

use std::sync::Arc;

use common::arc;
use lierinehart::constructions::{
    builtin, lie_builtin, product_with_trivial, pullback_extension, transformation_algebra, LieAlgebraOverK,
};
use lierinehart::exactlin::{int, Matrix};
use lierinehart::uce::{build_uce, solve_lifts};
use lierinehart::{CommAlgebra, Error, LRMorphism};

#[test]
fn transformation_over_q_reproduces_the_lie_algebra() {
    for name in ["sl2", "heisenberg", "abelian(3)"] {
        let g = lie_builtin(name).unwrap();
        let l = transformation_algebra(&g, &CommAlgebra::rationals(), &vec![Matrix::zeros(1, 1); g.dim()]).unwrap();
        assert_eq!(l.bracket_tensor(), g.bracket_tensor(), "{name}");
    }
    let a = arc("transformation(sl2,dual_numbers,0)");
    assert_eq!(a.dim(), 6);
    assert!(a.is_perfect() && a.has_zero_anchor());
}

#[test]
fn transformation_rejects_non_lie_gamma() {
    // γ must land in Der(A); the projection onto the unit is not a derivation
    let g = LieAlgebraOverK::abelian(1);
    let bad = Matrix::from_fn(2, 2, |r, c| if r == 0 && c == 0 { int(1) } else { int(0) });
    let err = transformation_algebra(&g, &CommAlgebra::dual_numbers(), &[bad]).unwrap_err();
    assert!(matches!(err, Error::Invalid { .. }));
}

#[test]
fn pullback_of_identity_splits() {
    let l = arc("sl2");
    let id = LRMorphism::identity(l.clone());
    let p = pullback_extension(&id, &id).unwrap();
    assert!(p.p_l.is_central());
    assert_eq!(p.algebra.dim(), 3);
    assert!(solve_lifts(&id, &p.p_l.p).unwrap().is_unique());
}

#[test]
fn pullback_of_uce_along_identity() {
    let l = arc("sl2");
    let u = build_uce(&l).unwrap();
    let p = pullback_extension(&u.uce_morphism, &LRMorphism::identity(l.clone())).unwrap();
    assert!(p.p_l.kernel.is_zero());
    assert!(solve_lifts(&LRMorphism::identity(l), &p.p_l.p).unwrap().exists());
}

#[test]
fn pullback_with_one_dimensional_kernel() {
    // c: L × Q → L splits; the split exists exactly when a lift h with c h = f exists
    let l = arc("sl2");
    let prod = product_with_trivial(&l, 1).unwrap();
    let c = prod.first.clone();
    let p = pullback_extension(&c, &LRMorphism::identity(l.clone())).unwrap();
    assert_eq!(p.p_l.kernel.rank(), 1);
    let lifts = solve_lifts(&LRMorphism::identity(l.clone()), &p.p_l.p).unwrap();
    assert!(lifts.exists() && lifts.is_unique());
    // sl2 is perfect, so even the kernel direction is pinned down

    // a non-perfect algebra: abelian(1) × Q over abelian(1) has many splits
    let a = Arc::new(builtin("abelian(1)").unwrap());
    let prod = product_with_trivial(&a, 1).unwrap();
    let p = pullback_extension(&prod.first, &LRMorphism::identity(a.clone())).unwrap();
    let lifts = solve_lifts(&LRMorphism::identity(a), &p.p_l.p).unwrap();
    assert!(lifts.exists() && !lifts.is_unique());
}

#[test]
fn pullback_requires_a_central_extension() {
    let l = arc("sl2_v");
    let s = arc("sl2");
    let proj = Matrix::from_fn(3, 5, |r, c| if r == c { int(1) } else { int(0) });
    let c = LRMorphism::validated(l, s.clone(), proj).unwrap();
    assert!(matches!(
        pullback_extension(&c, &LRMorphism::identity(s)),
        Err(Error::NotCentral(_))
    ));
}
