use proptest::prelude::*;
use spinchain_floquet::polyring::{LaurentMatrix, LaurentPoly, Transpose};

const VARS: [&str; 3] = ["x", "y", "z"];

fn poly() -> impl Strategy<Value = LaurentPoly> {
    sparse_poly(6)
}

fn sparse_poly(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 0..max_terms).prop_map(|terms| {
        terms
            .into_iter()
            .fold(LaurentPoly::zero(3), |acc, e| acc.add(&LaurentPoly::monomial(e)).unwrap())
    })
}

fn matrix(n: usize) -> impl Strategy<Value = LaurentMatrix> {
    prop::collection::vec(prop::collection::vec(sparse_poly(3), n), n)
        .prop_map(|rows| LaurentMatrix::from_rows(3, rows).unwrap())
}

proptest! {
    #[test]
    fn multiplication_is_associative_and_distributive(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn characteristic_two(a in poly()) {
        prop_assert!(a.add(&a).unwrap().is_zero());
    }

    #[test]
    fn reduction_is_a_ring_homomorphism(a in poly(), b in poly(), l in 1usize..5) {
        let period = [l, l, l];
        let r = |p: &LaurentPoly| p.reduce(&period).unwrap();
        prop_assert_eq!(r(&a.mul(&b).unwrap()), r(&r(&a).mul(&r(&b)).unwrap()));
        prop_assert_eq!(r(&a.add(&b).unwrap()), r(&a).add(&r(&b)).unwrap());
    }

    #[test]
    fn antipode_is_an_involutive_automorphism(a in poly(), b in poly()) {
        prop_assert_eq!(a.antipode().antipode(), a.clone());
        prop_assert_eq!(a.mul(&b).unwrap().antipode(), a.antipode().mul(&b.antipode()).unwrap());
    }

    #[test]
    fn text_round_trip(a in poly()) {
        let text = a.to_string_with(&VARS);
        prop_assert_eq!(LaurentPoly::parse(&text, &VARS).unwrap(), a);
    }

    #[test]
    fn determinant_is_multiplicative(a in matrix(3), b in matrix(3)) {
        let det_ab = a.mul(&b).unwrap().determinant().unwrap();
        prop_assert_eq!(det_ab, a.determinant().unwrap().mul(&b.determinant().unwrap()).unwrap());
    }

    #[test]
    fn transposes_reverse_products(a in matrix(2), b in matrix(2)) {
        for conv in [Transpose::Plain, Transpose::Antipode] {
            let lhs = a.mul(&b).unwrap().transpose(conv);
            let rhs = b.transpose(conv).mul(&a.transpose(conv)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn mismatched_variable_counts_are_rejected() {
    let a = LaurentPoly::one(3);
    let b = LaurentPoly::one(2);
    assert!(a.mul(&b).is_err());
    assert!(a.add(&b).is_err());
}
