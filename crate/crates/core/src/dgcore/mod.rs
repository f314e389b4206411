//! Bounded cochain complexes, small dg categories with finite hom data, dg functors and
//! the truncated ringoid of a graded algebra.

mod category;
mod complex;
mod functor;
pub mod random;

pub use category::{
    complexes_category, ringoid_truncated, tensor_dgcat, unit_category, LinearCategory, SmallDgCategory,
};
pub use complex::{
    hom_complex, is_chain_iso, is_chain_map, kron_vec, tensor_index, tensor_locate, tensor_offset, ChainComplex, HomComplex, Homology,
};
pub use functor::{
    homotopy_equivalent, induced_on_homology, DgFunctor, HomotopyVerdict, PairVerdict, QuasiEquivalence,
    QuasiFullyFaithful,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{FieldSpec, Matrix};
    use crate::freealg::{polynomial_ring, quantum_plane};
    use std::sync::Arc;

    const Q: FieldSpec = FieldSpec::RATIONALS;

    fn cone_of_id() -> ChainComplex {
        ChainComplex::new(Q, 0, vec![1, 1], vec![Matrix::identity(Q, 1)]).unwrap()
    }

    #[test]
    fn homology_examples() {
        let c = ChainComplex::new(Q, 0, vec![1, 1, 1], vec![Matrix::zero(Q, 1, 1), Matrix::identity(Q, 1)]).unwrap();
        assert_eq!((c.homology(0).dim(), c.homology(1).dim(), c.homology(2).dim()), (1, 0, 0));
        assert!(cone_of_id().is_acyclic());
        let z = ChainComplex::concentrated(Q, 2, 3);
        assert_eq!(z.homology(2).dim(), 3);
    }

    #[test]
    fn hom_complex_of_cone() {
        let c = cone_of_id();
        let h = hom_complex(&c, &c).complex;
        assert_eq!((h.dim(-1), h.dim(0), h.dim(1)), (1, 2, 1));
        // the source is contractible, so the whole hom complex is acyclic
        assert!(h.is_acyclic());
        let k = ChainComplex::concentrated(Q, 0, 1);
        let hk = hom_complex(&k, &k).complex;
        assert_eq!(hk, ChainComplex::concentrated(Q, 0, 1));
    }

    #[test]
    fn ringoid_hom_dims() {
        let (cat, _) = ringoid_truncated(&polynomial_ring(Q, 1).unwrap(), &[0, 1, 2], 4).unwrap();
        assert_eq!(cat.hom(0, 1).dim(0), 1);
        assert_eq!(cat.hom(0, 2).dim(0), 1);
        assert!(cat.hom(1, 0).is_zero());
        assert_eq!(cat.hom(2, 2).dim(0), 1);
        let (cat, _) = ringoid_truncated(&quantum_plane(Q, Q.from_i64(2)).unwrap(), &[0, 1, 2], 4).unwrap();
        assert_eq!(cat.hom(0, 2).dim(0), 3);
        assert!(ringoid_truncated(&polynomial_ring(Q, 1).unwrap(), &[0, 5], 4).is_err());
    }

    #[test]
    fn h0_kills_contractible_summand() {
        let k = ChainComplex::concentrated(Q, 0, 1);
        let cat = complexes_category(Q, &[("k".into(), k.clone()), ("c".into(), cone_of_id())]).unwrap();
        let h0 = cat.h0_category();
        assert_eq!(h0.dims, vec![vec![1, 0], vec![0, 0]]);
        let z0 = cat.z0_category();
        assert_eq!(z0.dims[1][1], 1);
        let unit = unit_category(Q);
        assert_eq!(unit.h0_category().dims, vec![vec![1]]);
    }

    #[test]
    fn unit_tensor() {
        let cat = complexes_category(Q, &[("c".into(), cone_of_id()), ("k".into(), ChainComplex::concentrated(Q, 1, 2))])
            .unwrap();
        let t = tensor_dgcat(&unit_category(Q), &cat).unwrap();
        assert_eq!(t.num_objects(), 2);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(t.hom(x, y), cat.hom(x, y));
                for p in cat.hom(y, x).degrees() {
                    for q in cat.hom(x, y).degrees() {
                        assert_eq!(t.composition_matrix(x, y, x, p, q), cat.composition_matrix(x, y, x, p, q));
                    }
                }
            }
        }
    }

    #[test]
    fn functors_and_equivalences() {
        let k = ChainComplex::concentrated(Q, 0, 1);
        let cyl = k.direct_sum(&cone_of_id());
        let cat = Arc::new(
            complexes_category(Q, &[("k".into(), k), ("cyl".into(), cyl), ("c".into(), cone_of_id())]).unwrap(),
        );
        let id = DgFunctor::identity(cat.clone());
        assert!(id.is_quasi_equivalence(1).holds());
        match homotopy_equivalent(&cat, 0, 1, 7) {
            HomotopyVerdict::Equivalent { f, g } => {
                assert!(!f.is_zero() && !g.is_zero());
                assert!(cat.hom(0, 1).apply_d(0, &f).is_zero());
            }
            v => panic!("expected an equivalence, got {:?}", v),
        }
        assert_eq!(homotopy_equivalent(&cat, 0, 2, 7), HomotopyVerdict::NotEquivalent);
        assert!(matches!(homotopy_equivalent(&cat, 2, 2, 7), HomotopyVerdict::Equivalent { .. }));
        let inc = DgFunctor::inclusion(cat.clone(), &[0, 2]).unwrap();
        assert!(inc.is_quasi_fully_faithful().holds());
        assert!(inc.is_quasi_equivalence(3).holds());
        let inc = DgFunctor::inclusion(cat.clone(), &[2]).unwrap();
        assert!(!inc.is_quasi_equivalence(3).holds());
    }

    #[test]
    fn collapsing_functor_is_not_qff() {
        let k = ChainComplex::concentrated(Q, 0, 1);
        let cat = Arc::new(complexes_category(Q, &[("k".into(), k)]).unwrap());
        let c = Arc::new(complexes_category(Q, &[("c".into(), cone_of_id())]).unwrap());
        // any unit-preserving functor into an acyclic category collapses End(k)
        let f = DgFunctor::new(cat, c.clone(), vec![0], |_, _, _| {
            Matrix::from_columns(Q, c.hom(0, 0).dim(0), &[c.unit(0).clone()])
        });
        let f = f.unwrap();
        assert!(!f.is_quasi_fully_faithful().holds());
    }

    #[test]
    fn random_categories_validate() {
        let mut rng = random::rng(11);
        for _ in 0..20 {
            let c = random::random_category(&mut rng, Q);
            c.validate().unwrap();
            let op = c.opposite();
            op.validate().unwrap();
            for x in 0..c.num_objects() {
                assert_eq!(op.hom(x, x), c.hom(x, x));
                assert_eq!(c.unit(x).is_zero(), c.hom(x, x).is_zero());
            }
        }
    }
}
