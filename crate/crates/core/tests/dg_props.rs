use ncproj::dgcore::random::{random_complex, rng};
use ncproj::dgcore::{hom_complex, tensor_dgcat, ChainComplex};
use ncproj::dgmod::random::{random_left_module, random_test_category};
use ncproj::dgmod::yoneda_tensor_check;
use ncproj::exactla::FieldSpec;
use proptest::prelude::*;

const Q: FieldSpec = FieldSpec::RATIONALS;

fn euler(c: &ChainComplex) -> i64 {
    c.degrees().map(|n| if n.rem_euclid(2) == 0 { c.dim(n) as i64 } else { -(c.dim(n) as i64) }).sum()
}

fn betti(c: &ChainComplex, n: i64) -> usize {
    c.homology(n).dim()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tensor_is_a_complex_with_multiplicative_euler_characteristic(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_complex(&mut r, Q, 4);
        let d = random_complex(&mut r, Q, 4);
        let t = c.tensor(&d);
        for n in t.degrees() {
            prop_assert!(t.d(n + 1).mul(&t.d(n)).is_zero());
        }
        prop_assert_eq!(euler(&t), euler(&c) * euler(&d));
    }

    // over a field, H^0 Hom(C, D) = ⊕_n Hom(H^n C, H^n D)
    #[test]
    fn homotopy_classes_match_homology(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_complex(&mut r, Q, 4);
        let d = random_complex(&mut r, Q, 4);
        let h = hom_complex(&c, &d);
        let expected: usize = c.degrees().map(|n| betti(&c, n) * betti(&d, n)).sum();
        prop_assert_eq!(betti(&h.complex, 0), expected);
    }

    #[test]
    fn random_categories_validate_and_tensor(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_test_category(&mut r, Q, 2);
        let b = random_test_category(&mut r, Q, 2);
        prop_assert!(a.cat.validate().is_ok());
        prop_assert!(a.cat.opposite().validate().is_ok());
        let ab = tensor_dgcat(&a.cat, &b.cat).unwrap();
        prop_assert!(ab.validate().is_ok());
        prop_assert_eq!(ab.num_objects(), a.cat.num_objects() * b.cat.num_objects());
    }

    #[test]
    fn yoneda_over_finite_field(seed in any::<u64>()) {
        let mut r = rng(seed);
        let tc = random_test_category(&mut r, FieldSpec::new(5).unwrap(), 2);
        let n = random_left_module(&mut r, &tc);
        for x in 0..tc.cat.num_objects() {
            prop_assert!(yoneda_tensor_check(&n, x).unwrap());
        }
    }
}

#[test]
fn core_types_are_thread_safe() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<ChainComplex>();
    assert_send_sync::<ncproj::dgcore::SmallDgCategory>();
    assert_send_sync::<ncproj::freealg::Algebra>();
    assert_send_sync::<ncproj::grmod::WindowedModule>();
    assert_send_sync::<ncproj::bigr::BiBiModule>();
    assert_send_sync::<ncproj::error::Error>();
}
