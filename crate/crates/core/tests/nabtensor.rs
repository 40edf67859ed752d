mod common;

use std::sync::Arc;

use common::arc;
use lierinehart::constructions::{der_algebra, fiber_product};
use lierinehart::exactlin::{int, outer3, unit, Matrix, Subspace, Tensor3};
use lierinehart::nabtensor::{
    actions_from_crossed_modules, check_compatible, factor_pairing, hat_tensor, hat_uce_isomorphism,
    symmetry_isomorphism, tensor_exactness, tensor_product, universal_pairing, validate_crossed_module,
    validate_pairing, ActionPair, CrossedModule,
};
use lierinehart::report::Axiom;
use lierinehart::uce::build_uce;
use lierinehart::{CommAlgebra, Error, LRMorphism, LieRinehartAlgebra};

/// `A ⊗ L^ab ⊗ M^ab → L ⊗ M`, `e_p ⊗ [x] ⊗ [m] ↦ e_p(x ⊗ m)`, as a matrix.
fn abelianized_comparison(l: &Arc<LieRinehartAlgebra>, m: &Arc<LieRinehartAlgebra>) -> (usize, Matrix) {
    let t = tensor_product(l, m, &ActionPair::trivial(l, m)).unwrap();
    let (lab, mab) = (l.abelianize(), m.abelianize());
    let na = l.base().dim();
    let mut cols = Vec::new();
    for p in 0..na {
        for i in 0..lab.dim() {
            for j in 0..mab.dim() {
                let x = unit(l.dim(), lab.representative(i));
                let y = unit(m.dim(), mab.representative(j));
                cols.push(t.class(&unit(na, p), &x, &y));
            }
        }
    }
    (t.dim(), Matrix::from_columns(t.dim(), &cols))
}

#[test]
fn trivial_actions_match_abelianized_module_tensor() {
    for (a, b) in [
        ("heisenberg", "abelian(2)"),
        ("heisenberg", "heisenberg"),
        (
            "transformation(heisenberg,dual_numbers,0)",
            "transformation(abelian(2),dual_numbers,0)",
        ),
    ] {
        let (l, m) = (arc(a), arc(b));
        let (dim, cmp) = abelianized_comparison(&l, &m);
        let expected = l.base().dim() * l.abelianize().dim() * m.abelianize().dim();
        assert_eq!(dim, expected, "{a} ⊗ {b}");
        assert!(cmp.is_square() && cmp.is_invertible(), "{a} ⊗ {b}");
    }
}

#[test]
fn module_tensor_map_is_surjective() {
    for name in ["sl2", "heisenberg", "transformation(sl2,dual_numbers,0)", "sl2_v"] {
        let l = arc(name);
        let t = tensor_product(&l, &l, &ActionPair::bracket(&l)).unwrap();
        assert_eq!(t.module_map().rank(), t.dim(), "{name}");
        assert!(t.anchor_triangle(), "{name}");
    }
}

#[test]
fn bracket_self_tensor_goldens() {
    let golden = [
        ("sl2", 3),
        ("heisenberg", 6),
        ("transformation(sl2,dual_numbers,0)", 12),
        ("sl2xsl2", 6),
    ];
    for (name, dim) in golden {
        let l = arc(name);
        let t = tensor_product(&l, &l, &ActionPair::bracket(&l)).unwrap();
        assert_eq!(t.dim(), dim, "{name}");
    }
}

#[test]
fn hat_tensor_is_uce() {
    for name in ["sl2", "transformation(sl2,dual_numbers,0)", "sl2xsl2", "sl2_v"] {
        let l = arc(name);
        let iso = hat_uce_isomorphism(&l).unwrap();
        let uce = build_uce(&l).unwrap();
        assert_eq!(iso.hat.dim(), uce.dim(), "{name}");
        assert!(iso.central && iso.inverse_pair(), "{name}");
        // the kernel over L is carried onto the kernel over L
        let k = iso.hat.mu.kernel().image_under(iso.to_uce.matrix());
        assert_eq!(k, uce.kernel(), "{name}");
    }
    for name in ["heisenberg", "abelian(2)", "der_plus_a"] {
        assert!(matches!(hat_tensor(&arc(name)), Err(Error::NotPerfect(_))), "{name}");
    }
}

#[test]
fn symmetry_isomorphism_both_ways() {
    let h = arc("sl2_v");
    let v = h
        .derived()
        .intersection(&h.center().sum(&Subspace::span(5, (3..5).map(|i| unit(5, i)))));
    let xv = CrossedModule::ideal_inclusion(&h, &v).unwrap();
    let xh = CrossedModule::ideal_inclusion(&h, &Subspace::full(5)).unwrap();
    let pair = actions_from_crossed_modules(&xv, &xh).unwrap();
    let lm = tensor_product(&xv.r, &xh.r, &pair).unwrap();
    let ml = tensor_product(&xh.r, &xv.r, &pair.swapped()).unwrap();
    let (there, back) = symmetry_isomorphism(&lm, &ml).unwrap();
    assert!(there.is_isomorphism() && back.is_isomorphism());
    for name in ["heisenberg", "transformation(sl2,dual_numbers,0)"] {
        let l = arc(name);
        let t = tensor_product(&l, &l, &ActionPair::bracket(&l)).unwrap();
        assert!(symmetry_isomorphism(&t, &t).is_ok(), "{name}");
    }
}

#[test]
fn unsigned_swap_breaks_the_anchor() {
    // x ⊗ m ↦ m ⊗ x would need [α x, α m] = [α m, α x]
    let l = Arc::new(der_algebra(&CommAlgebra::truncated_polynomials(3)));
    assert!(!l.anchor()[0].commutator(&l.anchor()[1]).is_zero());
    let t = tensor_product(&l, &l, &ActionPair::bracket(&l)).unwrap();
    let (there, _) = symmetry_isomorphism(&t, &t).unwrap();
    let unsigned = there.matrix().scale(&int(-1));
    assert!(LRMorphism::validated(t.algebra.clone(), t.algebra.clone(), unsigned).is_err());
}

#[test]
fn crossed_module_examples() {
    let sl2v = arc("sl2_v");
    let v = Subspace::span(5, (3..5).map(|i| unit(5, i)));
    let incl = CrossedModule::ideal_inclusion(&sl2v, &v).unwrap();
    assert!(validate_crossed_module(&incl).unwrap().is_valid());

    // sl2 acting on Q² through the standard representation
    let sl2 = arc("sl2");
    let r = arc("abelian(2)");
    let mats = [[[1, 0], [0, -1]], [[0, 1], [0, 0]], [[0, 0], [1, 0]]];
    let action = Tensor3::from_fn(3, 2, 2, |i, j| (0..2).map(|k| int(mats[i][k][j])).collect());
    let zero = CrossedModule::zero_map(&sl2, &r, action);
    assert!(validate_crossed_module(&zero).unwrap().is_valid());

    let proj = Matrix::from_fn(3, 5, |r, c| if r == c { int(1) } else { int(0) });
    let f = LRMorphism::validated(sl2v.clone(), sl2.clone(), proj).unwrap();
    let ker = CrossedModule::kernel_inclusion(&f).unwrap();
    assert_eq!(ker.r.dim(), 2);
    assert!(validate_crossed_module(&ker).unwrap().is_valid());

    let mut broken = incl.clone();
    broken.boundary.set(3, 0, int(2));
    assert!(!validate_crossed_module(&broken).unwrap().is_valid());
}

#[test]
fn compatibility_examples() {
    let h = arc("heisenberg");
    let xz = CrossedModule::ideal_inclusion(&h, &h.center()).unwrap();
    let xh = CrossedModule::ideal_inclusion(&h, &Subspace::full(3)).unwrap();
    let pair = actions_from_crossed_modules(&xz, &xh).unwrap();
    assert!(check_compatible(&xz.r, &xh.r, &pair).unwrap().is_valid());

    let sl2 = arc("sl2");
    let mut pair = ActionPair::bracket(&sl2);
    pair.m_on_l.set(1, 0, 1, int(-1));
    let report = check_compatible(&sl2, &sl2, &pair).unwrap();
    assert!(
        report.has(Axiom::CompatRight) || report.has(Axiom::CompatLeft),
        "{report}"
    );
    let err = tensor_product(&sl2, &sl2, &pair).unwrap_err();
    assert!(matches!(err, Error::Invalid { .. }));
}

#[test]
fn pairings_factor_through_the_tensor() {
    for name in [
        "sl2",
        "heisenberg",
        "dual_numbers",
        "transformation(sl2,dual_numbers,0)",
    ] {
        let l = arc(name);
        let t = tensor_product(&l, &l, &ActionPair::bracket(&l)).unwrap();
        let u = universal_pairing(&t);
        assert!(
            validate_pairing(&l, &l, &t.pair, &u, false).unwrap().is_valid(),
            "{name}"
        );
        let phi = factor_pairing(&t, &u).unwrap();
        assert_eq!(*phi.matrix(), Matrix::identity(t.dim()), "{name}");
        // the bracket pairing (x, y) ↦ [x, y] factors as μ
        let b = lierinehart::nabtensor::Pairing {
            target: l.clone(),
            values: l.bracket_tensor().clone(),
        };
        assert_eq!(factor_pairing(&t, &b).unwrap().matrix(), t.mu.matrix(), "{name}");
    }
}

#[test]
fn non_pairing_is_rejected() {
    let l = arc("sl2");
    let t = tensor_product(&l, &l, &ActionPair::bracket(&l)).unwrap();
    let mut values = l.bracket_tensor().clone();
    values.set(0, 0, 0, int(1));
    let f = lierinehart::nabtensor::Pairing {
        target: l.clone(),
        values,
    };
    assert!(factor_pairing(&t, &f).is_err());
}

fn zero_to_identity(p: &Arc<LieRinehartAlgebra>, n: &Arc<LieRinehartAlgebra>, pair: &ActionPair) {
    let z = Arc::new(LieRinehartAlgebra::zero(n.base()));
    let f = LRMorphism::zero(z.clone(), n.clone()).unwrap();
    let g = LRMorphism::identity(n.clone());
    let zp = ActionPair::trivial(&z, p);
    let r = tensor_exactness(&f, &g, p, [&zp, pair, pair]).unwrap();
    assert!(r.exact(), "{r:?}");
}

#[test]
fn exactness_trivial() {
    let h = arc("heisenberg");
    zero_to_identity(&h, &h, &ActionPair::bracket(&h));
}

#[test]
fn exactness_heisenberg_center() {
    let h = arc("heisenberg");
    let (z, incl) = h.restrict_to(&h.center()).unwrap();
    let z = Arc::new(z);
    let (q, proj) = h.quotient_by_ideal(&h.center()).unwrap();
    let q = Arc::new(q);
    let f = LRMorphism::validated(z.clone(), h.clone(), incl).unwrap();
    let g = LRMorphism::validated(h.clone(), q.clone(), proj.clone()).unwrap();
    let section: Vec<_> = (0..q.dim())
        .map(|k| lierinehart::exactlin::solve(&proj, &unit(q.dim(), k)).unwrap())
        .collect();
    let zp = ActionPair::trivial(&z, &h);
    let qp = ActionPair {
        l_on_m: Tensor3::from_fn(2, 3, 3, |i, j| h.bracket(&section[i], &unit(3, j))),
        m_on_l: Tensor3::from_fn(3, 2, 2, |j, i| proj.apply(&h.bracket(&unit(3, j), &section[i]))),
    };
    let r = tensor_exactness(&f, &g, &h, [&zp, &ActionPair::bracket(&h), &qp]).unwrap();
    assert!(r.exact(), "{r:?}");
    assert_eq!(r.dims, [2, 6, 4]);
}

/// `sl2 × sl2` with `P = sl2` acting on (and acted on by) the second factor.
fn second_factor_pairs() -> (LRMorphism, LRMorphism, Arc<LieRinehartAlgebra>, [ActionPair; 3]) {
    let s = arc("sl2");
    let prod = fiber_product(&s, &s).unwrap();
    let m = prod.algebra.clone();
    let incl = Matrix::from_columns(
        6,
        &(0..3)
            .map(|i| prod.pair(&unit(3, i), &[int(0), int(0), int(0)]).unwrap())
            .collect::<Vec<_>>(),
    );
    let f = LRMorphism::validated(s.clone(), m.clone(), incl).unwrap();
    let g = prod.second.clone();
    let second = |x: &[_]| g.apply(x);
    let mp = ActionPair {
        l_on_m: Tensor3::from_fn(6, 3, 3, |i, j| s.bracket(&second(&unit(6, i)), &unit(3, j))),
        m_on_l: Tensor3::from_fn(3, 6, 6, |j, i| {
            let y = s.bracket(&unit(3, j), &second(&unit(6, i)));
            prod.pair(&[int(0), int(0), int(0)], &y).unwrap()
        }),
    };
    let pairs = [ActionPair::trivial(&s, &s), mp, ActionPair::bracket(&s)];
    (f, g, s, pairs)
}

#[test]
fn exactness_split_sl2() {
    let (f, g, p, pairs) = second_factor_pairs();
    let r = tensor_exactness(&f, &g, &p, [&pairs[0], &pairs[1], &pairs[2]]).unwrap();
    assert!(r.exact(), "{r:?}");
    assert_eq!(r.dims, [0, 3, 3]);
}

#[test]
fn diagonal_action_is_not_compatible() {
    let s = arc("sl2");
    let prod = fiber_product(&s, &s).unwrap();
    let m = &prod.algebra;
    let diag = |x: &[_]| lierinehart::exactlin::add(&prod.first.apply(x), &prod.second.apply(x));
    let pair = ActionPair {
        l_on_m: Tensor3::from_fn(6, 3, 3, |i, j| s.bracket(&diag(&unit(6, i)), &unit(3, j))),
        m_on_l: Tensor3::from_fn(3, 6, 6, |j, i| {
            let x = unit(6, i);
            let a = s.bracket(&unit(3, j), &prod.first.apply(&x));
            let b = s.bracket(&unit(3, j), &prod.second.apply(&x));
            prod.pair(&a, &b).unwrap()
        }),
    };
    let report = check_compatible(m, &s, &pair).unwrap();
    assert!(!report.is_valid());
    assert!(report.has(Axiom::CompatRight) || report.has(Axiom::CompatLeft));
}

#[test]
fn hat_relation_on_basis_is_multilinear() {
    // the hat generator with a = b = 1 on sl2 is already a tensor relation
    let l = arc("sl2");
    let t = tensor_product(&l, &l, &ActionPair::bracket(&l)).unwrap();
    let hat = hat_tensor(&l).unwrap();
    assert_eq!(t.presentation.relations(), hat.presentation.relations());
    let one = [int(1)];
    let v = outer3(&one, &unit(3, 1), &unit(3, 2));
    assert!(!t.presentation.relations().contains(&v));
}
