mod common;

use std::sync::Arc;

use common::arc;
use lierinehart::exactlin::{frac, int, unit, Matrix, QuotientPresentation, Scalar, Subspace, Tensor3};
use lierinehart::homology::{chain_boundary, coboundary};
use lierinehart::lifting::{rinehart_derivations, DerivationPair};
use lierinehart::uce::{build_uce, uce_map, uce_on_morphism};
use lierinehart::{LRMorphism, LeftLRModule, LieRinehartAlgebra, RightLRModule};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![4 => (-3i64..=3).prop_map(int), 1 => (-3i64..=3, 1i64..=3).prop_map(|(n, d)| frac(n, d))]
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(scalar(), r * c).prop_map(move |v| Matrix::from_fn(r, c, |i, j| v[i * c + j].clone()))
    })
}

/// Unit lower-triangular times unit upper-triangular: always invertible.
fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-2i64..=2, 2 * n * n).prop_map(move |v| {
        let lower = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Equal => int(1),
            std::cmp::Ordering::Greater => int(v[i * n + j]),
            std::cmp::Ordering::Less => int(0),
        });
        let upper = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Equal => int(1),
            std::cmp::Ordering::Less => int(v[n * n + i * n + j]),
            std::cmp::Ordering::Greater => int(0),
        });
        lower.mul(&upper)
    })
}

/// The algebra over `Q` with structure constants transported along `p`:
/// `y_i = Σ_k p_{ki} x_k`.
fn transport(l: &LieRinehartAlgebra, p: &Matrix) -> LieRinehartAlgebra {
    let inv = p.inverse().unwrap();
    let n = l.dim();
    let bracket = Tensor3::from_fn(n, n, n, |i, j| inv.apply(&l.bracket(&p.column(i), &p.column(j))));
    LieRinehartAlgebra::new(l.base().clone(), l.a_action().clone(), bracket, l.anchor().to_vec()).unwrap()
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn rref_is_idempotent(m in matrix(5, 6)) {
        let (r, piv) = m.rref();
        let (r2, piv2) = r.rref();
        prop_assert_eq!(&r, &r2);
        prop_assert_eq!(piv, piv2);
    }

    #[test]
    fn rref_is_canonical(m in matrix(4, 5), p in invertible(4)) {
        let m = Matrix::from_fn(4, m.cols(), |i, j| if i < m.rows() { m.get(i, j).clone() } else { int(0) });
        prop_assert_eq!(p.mul(&m).rref().0, m.rref().0);
    }

    #[test]
    fn rank_nullity(m in matrix(5, 6)) {
        prop_assert_eq!(m.kernel().rank() + m.image().rank(), m.cols());
        for v in m.kernel().basis() {
            prop_assert!(m.apply(v).iter().all(|x| *x == int(0)));
        }
    }

    #[test]
    fn quotient_section_is_right_inverse(m in matrix(4, 6)) {
        let rel = Subspace::span(m.cols(), (0..m.rows()).map(|i| m.row(i).to_vec()));
        let q = QuotientPresentation::new(rel.clone());
        prop_assert_eq!(q.projection_matrix().mul(&q.section_matrix()), Matrix::identity(q.dim()));
        prop_assert_eq!(q.projection_matrix().kernel(), rel);
        prop_assert_eq!(q.dim(), m.cols() - q.relations().rank());
    }

    #[test]
    fn close_under_is_stable(seed in matrix(2, 5), a in matrix(5, 5), b in matrix(5, 5)) {
        let n = seed.cols();
        let sq = |x: &Matrix| Matrix::from_fn(n, n, |i, j| if i < x.rows() && j < x.cols() { x.get(i, j).clone() } else { int(0) });
        let ops = [sq(&a), sq(&b)];
        let s = Subspace::span(n, (0..seed.rows()).map(|i| seed.row(i).to_vec())).close_under(&ops);
        for v in s.basis() {
            for op in &ops {
                prop_assert!(s.contains(&op.apply(v)));
            }
        }
        prop_assert_eq!(s.close_under(&ops), s.clone());
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn transported_algebras_are_valid_and_complexes(p in invertible(3), which in 0usize..2) {
        let l = arc(["sl2", "heisenberg"][which]);
        let t = transport(&l, &p);
        prop_assert!(t.validate().is_valid());
        let m = LeftLRModule::adjoint(&t);
        for n in 0..2 {
            let d = coboundary(&t, &m, n + 1).unwrap().mul(&coboundary(&t, &m, n).unwrap());
            prop_assert!(d.is_zero());
        }
        let r = RightLRModule::trivial(&t, 1).unwrap();
        let (_, _, d3) = chain_boundary(&t, &r, 3).unwrap();
        let (_, _, d2) = chain_boundary(&t, &r, 2).unwrap();
        prop_assert!(d2.mul(&d3).is_zero());
        // the transport map is an isomorphism onto the original algebra
        let iso = LRMorphism::validated(Arc::new(t), l.clone(), p.clone());
        prop_assert!(iso.is_ok());
    }

    #[test]
    fn uce_functor_laws(seed in any::<u64>()) {
        use rand::SeedableRng;
        let l = arc("sl2");
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let autos = common::sl2_automorphisms(&l, 2, &mut rng);
        let u = build_uce(&l).unwrap();
        let id = uce_map(&LRMorphism::identity(l.clone()), &u, &u).unwrap();
        prop_assert_eq!(id.matrix(), &Matrix::identity(u.dim()));
        let (f, g) = (&autos[0], &autos[1]);
        let gf = LRMorphism::validated(l.clone(), l.clone(), g.matrix().mul(f.matrix())).unwrap();
        let uf = uce_map(f, &u, &u).unwrap();
        let ug = uce_map(g, &u, &u).unwrap();
        let ugf = uce_map(&gf, &u, &u).unwrap();
        prop_assert_eq!(ugf.matrix(), &ug.matrix().mul(uf.matrix()));
    }

    #[test]
    fn uce_functor_on_a_tensor_sl2(t in -3i64..=3, s in -3i64..=3) {
        // exp(t ad e) ∘ exp(s ad f), extended A-linearly to A ⊗ sl2
        let l = arc("transformation(sl2,dual_numbers,0)");
        let adj = |i: usize, c: i64| {
            let ad = l.adjoint(&unit(6, i)).scale(&int(c));
            LRMorphism::validated(l.clone(), l.clone(), lierinehart::exactlin::exp_nilpotent(&ad).unwrap()).unwrap()
        };
        let (f, g) = (adj(1, t), adj(2, s));
        let gf = g.compose(&f).unwrap();
        let uf = uce_on_morphism(&f).unwrap();
        let ug = uce_on_morphism(&g).unwrap();
        let ugf = uce_on_morphism(&gf).unwrap();
        prop_assert_eq!(ugf.matrix(), &ug.matrix().mul(uf.matrix()));
    }

    #[test]
    fn derivation_pairs_close_under_bracket(coeffs in proptest::collection::vec(-2i64..=2, 18), which in 0usize..3) {
        let l = arc(["heisenberg", "dual_numbers", "der_plus_a"][which]);
        let basis = rinehart_derivations(&l);
        let combo = |off: usize| {
            basis.iter().enumerate().fold(DerivationPair::zero(&l), |acc, (k, d)| {
                let c = int(coeffs[(off + k) % coeffs.len()]);
                DerivationPair {
                    delta: acc.delta.add(&d.delta.scale(&c)),
                    delta0: acc.delta0.add(&d.delta0.scale(&c)),
                }
            })
        };
        let (d1, d2) = (combo(0), combo(7));
        prop_assert!(d1.validate(&l).is_valid());
        prop_assert!(d1.bracket(&d2).validate(&l).is_valid());
    }
}
