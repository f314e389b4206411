//! Dg modules and bimodules over small dg categories: Yoneda modules, the tensor product over
//! a category, the extension functors Φ̂ and Φ̃, restriction along a dg functor.
//!
//! Actions are written on the side they act from (m·f for right modules, f·n for left modules),
//! which makes every associativity and commutation law sign-free; the Koszul signs live only
//! in the differentials of tensor products and hom complexes.

mod bimodule;
mod hom;
mod module;
pub mod random;
mod tensor;

pub use bimodule::{
    bimodule_tensor, delta, delta_witness, phi_hat, representable_pair, BimoduleTensor, DgBimodule, PhiHat,
};
pub use hom::{adjunction_check, module_hom, phi_tilde, yoneda_hom_check, AdjunctionReport, ModuleHom, PhiTilde};
pub use module::{
    res_along, ringoid_left_module, ringoid_right_module, yoneda, yoneda_left, DgModule, Variance,
};
pub use tensor::{tensor_over_cat, yoneda_witness, TensorOverCat, TensorTerm};

use crate::dgcore::{is_chain_iso, ChainComplex};
use crate::error::Result;
use crate::exactla::Matrix;

/// h_X ⊗_𝒜 N ≅ N(X): equal dimensions in every degree and the action map is a chain isomorphism.
pub fn yoneda_tensor_check(n: &DgModule, x: usize) -> Result<bool> {
    let h = yoneda(n.cat(), x);
    let t = tensor_over_cat(&h, n)?;
    let w = yoneda_witness(&t, n, x);
    let target = n.value(x);
    Ok(same_dims(&t.complex, target) && is_chain_iso(&t.complex, target, |d| block(&w, d, target, &t.complex)))
}

/// Δ_𝒜 ⊗_𝒜 E ≅ E componentwise via [u ⊗ x] ↦ u·x.
pub fn delta_tensor_check(e: &DgBimodule) -> Result<bool> {
    let d = delta(e.left_cat());
    let t = bimodule_tensor(&d, e)?;
    for a in 0..e.left_cat().num_objects() {
        for c in 0..e.right_cat().num_objects() {
            let comp = &t.components[a][c];
            let target = e.value(a, c);
            if !same_dims(&comp.complex, target)
                || !is_chain_iso(&comp.complex, target, |n| delta_witness(comp, e, a, c, n))
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn same_dims(a: &ChainComplex, b: &ChainComplex) -> bool {
    a.support() == b.support() && a.degrees().all(|d| a.dim(d) == b.dim(d))
}

fn block(w: &std::collections::BTreeMap<i64, Matrix>, d: i64, target: &ChainComplex, source: &ChainComplex) -> Matrix {
    w.get(&d)
        .cloned()
        .unwrap_or_else(|| Matrix::zero(source.field(), target.dim(d), source.dim(d)))
}

#[cfg(test)]
mod tests {
    use super::random::*;
    use super::*;
    use crate::dgcore::{random::rng, DgFunctor};
    use crate::exactla::{FieldSpec, Matrix};
    use crate::freealg::{polynomial_ring, quantum_plane};

    const Q: FieldSpec = FieldSpec::RATIONALS;

    fn cone_of_id() -> ChainComplex {
        ChainComplex::new(Q, 0, vec![1, 1], vec![Matrix::identity(Q, 1)]).unwrap()
    }

    #[test]
    fn yoneda_values_in_ringoid() {
        let tc = ringoid(&polynomial_ring(Q, 1).unwrap(), vec![0, 1]);
        let h0 = yoneda(&tc.cat, 0);
        assert!(h0.value(1).is_zero());
        assert_eq!(h0.value(0).dim(0), 1);
        assert_eq!(h0.value(0).total_dim(), 1);
    }

    #[test]
    fn yoneda_tensor_on_examples() {
        let k = ChainComplex::concentrated(Q, 0, 1);
        let tc = complexes(Q, vec![k, cone_of_id()]);
        let n = yoneda_left(&tc.cat, 1).direct_sum(&yoneda_left(&tc.cat, 0).shift(1)).unwrap();
        for x in 0..2 {
            assert!(yoneda_tensor_check(&n, x).unwrap());
        }
        let zero = DgModule::zero(tc.cat.clone(), Variance::Right);
        let t = tensor_over_cat(&zero, &n).unwrap();
        assert!(t.complex.is_zero());
    }

    #[test]
    fn tensor_over_unit_category_is_plain_tensor() {
        let k = ChainComplex::concentrated(Q, 0, 1);
        let tc = complexes(Q, vec![k.clone()]);
        let objs = [k];
        // Hom(k, W) = W and Hom(V, k) = V*, both over the one-object category of k
        let m = hom_into(&tc, &objs, &ChainComplex::concentrated(Q, -1, 2));
        let n = hom_from(&tc, &objs, &cone_of_id().direct_sum(&ChainComplex::concentrated(Q, 1, 1)));
        let t = tensor_over_cat(&m, &n).unwrap();
        let plain = m.value(0).tensor(n.value(0));
        assert!(same_dims(&t.complex, &plain));
    }

    #[test]
    fn delta_tensor_on_examples() {
        let tc = ringoid(&quantum_plane(Q, Q.from_i64(2)).unwrap(), vec![0, 1, 2]);
        assert!(delta_tensor_check(&delta(&tc.cat)).unwrap());
        let e = representable_pair(&tc.cat, 0, &tc.cat, 2).unwrap().shift(1);
        assert!(delta_tensor_check(&e).unwrap());
    }

    #[test]
    fn phi_hat_of_representable() {
        let tc = complexes(Q, vec![ChainComplex::concentrated(Q, 0, 1), cone_of_id()]);
        let mut r = rng(5);
        let e = random_bimodule(&mut r, &tc, &tc);
        for x in 0..2 {
            let ph = phi_hat(&e, &yoneda(&tc.cat, x)).unwrap();
            for b in 0..2 {
                assert!(same_dims(ph.module.value(b), e.value(x, b)));
            }
        }
        let ph = phi_hat(&e, &DgModule::zero(tc.cat.clone(), Variance::Right)).unwrap();
        assert!(ph.module.is_zero());
    }

    #[test]
    fn phi_tilde_of_delta_is_identity_on_dims() {
        let tc = complexes(Q, vec![ChainComplex::concentrated(Q, 0, 1), cone_of_id()]);
        let n = hom_into(&tc, &[ChainComplex::concentrated(Q, 0, 1), cone_of_id()], &ChainComplex::concentrated(Q, 1, 2));
        let pt = phi_tilde(&delta(&tc.cat), &n).unwrap();
        for a in 0..2 {
            assert!(same_dims(pt.module.value(a), n.value(a)));
        }
    }

    #[test]
    fn adjunction_small_instances() {
        let mut r = rng(17);
        for _ in 0..6 {
            let a = random_test_category(&mut r, Q, 2);
            let b = random_test_category(&mut r, Q, 2);
            let e = random_bimodule(&mut r, &a, &b);
            let m = random_right_module(&mut r, &a);
            let n = random_right_module(&mut r, &b);
            let rep = adjunction_check(&e, &m, &n).unwrap();
            assert!(rep.iso, "{:?}", rep);
        }
    }

    #[test]
    fn yoneda_hom_for_acyclic_and_general_modules() {
        let tc = complexes(Q, vec![ChainComplex::concentrated(Q, 0, 1), cone_of_id()]);
        let objs = [ChainComplex::concentrated(Q, 0, 1), cone_of_id()];
        let acyclic = hom_into(&tc, &objs, &cone_of_id());
        for x in 0..2 {
            let (h, m, iso) = yoneda_hom_check(&acyclic, x).unwrap();
            assert_eq!((h, m), (0, 0));
            assert!(iso);
        }
        let general = hom_into(&tc, &objs, &ChainComplex::concentrated(Q, 0, 2));
        let (h, m, iso) = yoneda_hom_check(&general, 0).unwrap();
        assert_eq!((h, m, iso), (2, 2, true));
    }

    #[test]
    fn restriction() {
        let tc = ringoid(&polynomial_ring(Q, 1).unwrap(), vec![0, 1, 2]);
        let n = yoneda(&tc.cat, 2);
        let id = DgFunctor::identity(tc.cat.clone());
        let r = res_along(&id, &n).unwrap();
        for x in 0..3 {
            assert_eq!(r.value(x), n.value(x));
        }
        let inc = DgFunctor::inclusion(tc.cat.clone(), &[0, 1]).unwrap();
        let r = res_along(&inc, &n).unwrap();
        assert_eq!(r.value(0), n.value(0));
        assert_eq!(r.value(1), n.value(1));
    }

    #[test]
    fn random_modules_validate() {
        let mut r = rng(3);
        for _ in 0..10 {
            let tc = random_test_category(&mut r, Q, 3);
            random_right_module(&mut r, &tc).validate().unwrap();
            let n = random_left_module(&mut r, &tc);
            n.validate().unwrap();
            for x in 0..tc.cat.num_objects() {
                assert!(yoneda_tensor_check(&n, x).unwrap());
            }
        }
    }
}
