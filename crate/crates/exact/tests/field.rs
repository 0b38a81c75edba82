use bicrossx_exact::{root_of_unity, Cyclotomic, Rational};
use proptest::prelude::*;

const CONDUCTORS: [u32; 6] = [1, 2, 3, 4, 6, 12];

fn element(n: u32) -> impl Strategy<Value = Cyclotomic> {
    let phi = bicrossx_exact::cyclotomic::field(n).phi;
    prop::collection::vec((-20i64..=20, 1i64..=6), phi).prop_map(move |cs| Cyclotomic::from_coeffs(n, cs.into_iter().map(|(a, b)| Rational::new(a, b)).collect()).unwrap())
}

fn triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|n| (element(n), element(n), element(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6000))]

    #[test]
    fn field_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn embedding_is_a_ring_map((a, b, _c) in triple()) {
        let m = 12 * a.conductor();
        let (ea, eb) = (a.embed(m).unwrap(), b.embed(m).unwrap());
        prop_assert_eq!((&a * &b).embed(m).unwrap(), &ea * &eb);
        prop_assert_eq!(ea.restrict(a.conductor()).unwrap(), a);
    }
}

#[test]
fn cube_roots_sum_to_minus_one() {
    assert_eq!(&root_of_unity(3, 1) + &root_of_unity(3, 2), Cyclotomic::from_int(3, -1));
    assert!((&root_of_unity(3, 1) * &root_of_unity(3, 2)).is_one());
}

#[test]
fn sixth_root_is_minus_cube_root_squared() {
    assert_eq!(root_of_unity(6, 1), -root_of_unity(3, 2).embed(6).unwrap());
}

#[test]
fn zero_exponent_is_unit() {
    for n in CONDUCTORS {
        assert!(root_of_unity(n, 0).is_one());
        assert!(root_of_unity(n, n as i64).is_one());
    }
}

#[test]
fn embeddings() {
    assert_eq!(root_of_unity(3, 1).embed(6).unwrap(), root_of_unity(6, 2));
    assert!(Cyclotomic::one(1).embed(12).unwrap().is_one());
    assert_eq!(root_of_unity(2, 1).embed(6).unwrap(), root_of_unity(6, 3));
    assert_eq!(root_of_unity(6, 3), Cyclotomic::from_int(6, -1));
    assert!(root_of_unity(4, 1).embed(6).is_err());
}

#[test]
fn norms_and_conjugates() {
    let z = root_of_unity(12, 1);
    assert_eq!(z.norm(), Rational::one());
    assert_eq!(z.conj(), root_of_unity(12, -1));
    let two = Cyclotomic::from_int(6, 2);
    assert_eq!((&two - &root_of_unity(6, 1)).norm(), Rational::from_integer(3));
}
