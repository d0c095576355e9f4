use num_bigint::BigInt;
use proptest::prelude::*;

use ellcount::counting_formulas::{n_unweighted, n_weighted, CountQuery};
use ellcount::galois_field::GaloisField;
use ellcount::height_moduli_classes::{wmin_class, WeightVector};
use ellcount::motivic_ring::MotivicClass;
use ellcount::p1_sections::{places_up_to, BinaryForm};

fn class() -> impl Strategy<Value = MotivicClass> {
    proptest::collection::vec(-50i64..50, 0..8).prop_map(|c| MotivicClass::from_i64s(&c))
}

fn field() -> impl Strategy<Value = GaloisField> {
    prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27])
        .prop_map(|q| GaloisField::of_order(q).unwrap())
}

proptest! {
    #[test]
    fn ring_laws(a in class(), b in class(), c in class()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn specialize_is_a_ring_map(a in class(), b in class(), q in 2u64..30) {
        prop_assert_eq!((&a + &b).specialize(q), a.specialize(q) + b.specialize(q));
        prop_assert_eq!((&a * &b).specialize(q), a.specialize(q) * b.specialize(q));
        prop_assert_eq!(MotivicClass::lefschetz().specialize(q), BigInt::from(q));
    }

    #[test]
    fn display_parses_back(a in class()) {
        let back: MotivicClass = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn exact_division_undoes_multiplication(a in class(), b in class()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn field_axioms(f in field(), i in 0u32..1024, j in 0u32..1024, k in 0u32..1024) {
        let q = f.order();
        let (a, b, c) = (f.element(i % q), f.element(j % q), f.element(k % q));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.from_int(0));
        prop_assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
        if let Some(inv) = f.inv(a) {
            prop_assert_eq!(f.mul(a, inv), f.from_int(1));
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn valuations_add_under_products(
        q in prop::sample::select(vec![2u64, 3, 4]),
        x in proptest::collection::vec(0u32..16, 1..5),
        y in proptest::collection::vec(0u32..16, 1..5),
    ) {
        let f = GaloisField::of_order(q).unwrap();
        let form = |d: &[u32]| BinaryForm::from_coeffs(d.iter().map(|&c| f.element(c % f.order())).collect());
        let (a, b) = (form(&x), form(&y));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let ab = a.mul(&f, &b);
        for place in places_up_to(&f, 2) {
            let sum = a.valuation(&f, &place).unwrap() + b.valuation(&f, &place).unwrap();
            prop_assert_eq!(ab.valuation(&f, &place), Some(sum));
        }
    }
}

#[test]
fn counts_grow_with_the_height_bound() {
    for q in [2u64, 3, 4, 8, 9, 27] {
        let mut last = (n_weighted(&CountQuery::new(q, 0).unwrap()), BigInt::from(0));
        for m in 1..=6 {
            let query = CountQuery::new(q, m).unwrap();
            let now = (n_weighted(&query), n_unweighted(&query).unwrap());
            assert!(now.0 > last.0 && now.1 > last.1, "q={q} m={m}");
            last = now;
        }
    }
}

#[test]
fn stable_classes_grow_geometrically() {
    for lambda in ["2", "4,6", "1,1,1", "2,3"] {
        let w: WeightVector = lambda.parse().unwrap();
        let step = MotivicClass::monomial(1, w.total() as usize);
        for n in 2..8 {
            assert_eq!(
                wmin_class(&w, n + 1).unwrap(),
                &wmin_class(&w, n).unwrap() * &step,
                "{lambda} n={n}"
            );
        }
    }
}
