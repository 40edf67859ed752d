#![allow(dead_code)]

use std::sync::Arc;

use lierinehart::constructions::{builtin, fiber_product, lie_via_character, LieAlgebraOverK, Product};
use lierinehart::exactlin::{exp_nilpotent, int, unit, zeros, Matrix, Scalar, Subspace};
use lierinehart::lifting::{Covering, DerivationPair};
use lierinehart::{LRMorphism, LieRinehartAlgebra};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn arc(name: &str) -> Arc<LieRinehartAlgebra> {
    Arc::new(builtin(name).unwrap())
}

/// `e ↦ −f, f ↦ −e, h ↦ −h` on the basis `h, e, f`.
pub fn chevalley(l: &Arc<LieRinehartAlgebra>) -> LRMorphism {
    let m = Matrix::from_rows(
        3,
        vec![
            vec![int(-1), int(0), int(0)],
            vec![int(0), int(0), int(-1)],
            vec![int(0), int(-1), int(0)],
        ],
    );
    LRMorphism::validated(l.clone(), l.clone(), m).unwrap()
}

/// `h ↦ h, e ↦ t e, f ↦ t⁻¹ f`.
pub fn torus(l: &Arc<LieRinehartAlgebra>, t: Scalar) -> LRMorphism {
    let inv = Scalar::from_integer(1.into()) / &t;
    let m = Matrix::from_fn(3, 3, |r, c| match (r, c) {
        (0, 0) => int(1),
        (1, 1) => t.clone(),
        (2, 2) => inv.clone(),
        _ => int(0),
    });
    LRMorphism::validated(l.clone(), l.clone(), m).unwrap()
}

/// `exp(s · ad x_i)` for an ad-nilpotent basis vector.
pub fn exp_ad(l: &Arc<LieRinehartAlgebra>, i: usize, s: Scalar) -> LRMorphism {
    let ad = l.adjoint(&unit(l.dim(), i)).scale(&s);
    LRMorphism::validated(l.clone(), l.clone(), exp_nilpotent(&ad).unwrap()).unwrap()
}

/// Fixed-seed sample of sl2 automorphisms: random products of torus
/// elements, `exp(s ad e)`, `exp(s ad f)` and the Chevalley involution.
pub fn sl2_automorphisms(l: &Arc<LieRinehartAlgebra>, count: usize, rng: &mut ChaCha8Rng) -> Vec<LRMorphism> {
    let rat = |rng: &mut ChaCha8Rng| {
        let n: i64 = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
        Scalar::new(n.into(), rng.gen_range(1i64..=3).into())
    };
    (0..count)
        .map(|_| {
            let mut g = LRMorphism::identity(l.clone());
            for _ in 0..3 {
                let step = match rng.gen_range(0..4) {
                    0 => torus(l, rat(rng)),
                    1 => exp_ad(l, 1, rat(rng)),
                    2 => exp_ad(l, 2, rat(rng)),
                    _ => chevalley(l),
                };
                g = LRMorphism::validated(l.clone(), l.clone(), step.matrix().mul(g.matrix())).unwrap();
            }
            g
        })
        .collect()
}

/// `(A ⊗ sl2) × sl2` over the dual numbers with the inclusions and
/// projection of the split sequence `A ⊗ sl2 → M ⇄ sl2`.
pub fn transformation_times_sl2() -> (Product, LRMorphism, LRMorphism, LRMorphism) {
    let l = arc("transformation(sl2,dual_numbers,0)");
    let n = Arc::new(lie_via_character(&LieAlgebraOverK::sl2(), l.base()).unwrap());
    let prod = fiber_product(&l, &n).unwrap();
    let incl_l: Vec<_> = (0..l.dim())
        .map(|i| prod.pair(&unit(l.dim(), i), &zeros(n.dim())).unwrap())
        .collect();
    let incl_n: Vec<_> = (0..n.dim())
        .map(|i| prod.pair(&zeros(l.dim()), &unit(n.dim(), i)).unwrap())
        .collect();
    let d = prod.algebra.dim();
    let f = LRMorphism::validated(l, prod.algebra.clone(), Matrix::from_columns(d, &incl_l)).unwrap();
    let s = LRMorphism::validated(n, prod.algebra.clone(), Matrix::from_columns(d, &incl_n)).unwrap();
    let g = prod.second.clone();
    (prod, f, g, s)
}

/// The covering `uce(sl2 ⋉ 2V) / K' → sl2 ⋉ 2V` for a line `K'` of
/// `Ker uce` that the copy-swap automorphism moves.
pub fn quotient_covering() -> (Covering, LRMorphism, DerivationPair) {
    let l = arc("sl2_2v");
    let u = lierinehart::uce::build_uce(&l).unwrap();
    // basis h, e, f, v1, v2, v1', v2'
    let swap = Matrix::from_fn(7, 7, |r, c| {
        let image = match c {
            3 => 5,
            4 => 6,
            5 => 3,
            6 => 4,
            x => x,
        };
        if r == image {
            int(1)
        } else {
            int(0)
        }
    });
    let swap = LRMorphism::validated(l.clone(), l.clone(), swap).unwrap();
    let mix = Matrix::from_fn(7, 7, |r, c| {
        if (c, r) == (3, 5) || (c, r) == (4, 6) {
            int(1)
        } else {
            int(0)
        }
    });
    let mix = DerivationPair {
        delta: mix,
        delta0: Matrix::zeros(1, 1),
    };
    let uswap = lierinehart::uce::uce_map(&swap, &u, &u).unwrap();
    let kernel = u.kernel();
    let line = kernel
        .basis()
        .iter()
        .map(|v| Subspace::span(u.dim(), [v.clone()]))
        .find(|k| k.image_under(uswap.matrix()) != *k)
        .expect("swap moves some kernel line");
    let (q, proj) = u.algebra.quotient_by_ideal(&line).unwrap();
    let q = Arc::new(q);
    let down = u
        .uce_morphism
        .matrix()
        .mul(&lierinehart::uce::linear_section(&proj).unwrap());
    let f = LRMorphism::validated(q, l, down).unwrap();
    (Covering::new(f).unwrap(), swap, mix)
}
