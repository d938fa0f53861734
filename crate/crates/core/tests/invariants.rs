use endolab::exact_math::{Cyclotomic, IntMatrix};
use endolab::galois_tori::{component_group_pi0, tn_pairing, TwistedTorus};
use endolab::padic::{hasse_invariant, hilbert_symbol, DiagQuadForm, Place};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-2000i64..=-1, 1i64..=2000]
}

fn place() -> impl Strategy<Value = Place> {
    prop_oneof![Just(Place::Infinity), prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]).prop_map(Place::Prime)]
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hilbert_symbol_is_bimultiplicative(a in nonzero(), b in nonzero(), c in nonzero(), v in place()) {
        let lhs = hilbert_symbol(&rat(a), &(rat(b) * rat(c)), v).unwrap();
        let rhs = hilbert_symbol(&rat(a), &rat(b), v).unwrap() * hilbert_symbol(&rat(a), &rat(c), v).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hilbert_symbol_is_symmetric_and_kills_norms(a in nonzero(), b in nonzero(), v in place()) {
        prop_assert_eq!(hilbert_symbol(&rat(a), &rat(b), v).unwrap(), hilbert_symbol(&rat(b), &rat(a), v).unwrap());
        prop_assert_eq!(hilbert_symbol(&rat(a), &rat(-a), v).unwrap(), 1);
        if a != 1 {
            prop_assert_eq!(hilbert_symbol(&rat(a), &rat(1 - a), v).unwrap(), 1);
        }
    }

    #[test]
    fn hasse_invariant_ignores_square_scaling(coeffs in prop::collection::vec(nonzero(), 1..5), s in 1i64..50, k in 0usize..4, v in place()) {
        let k = k % coeffs.len();
        let q = DiagQuadForm::from_integers(&coeffs).unwrap();
        let mut scaled = coeffs.clone();
        scaled[k] *= s * s;
        let r = DiagQuadForm::from_integers(&scaled).unwrap();
        prop_assert_eq!(hasse_invariant(&q, v).unwrap(), hasse_invariant(&r, v).unwrap());
    }

    #[test]
    fn tn_pairing_is_bimultiplicative(which in 0usize..3, seed in 0u64..1000) {
        let f = [vec![vec![-1i64]], vec![vec![0, -1], vec![1, 0]], vec![vec![-1, 0], vec![0, -1]]][which].clone();
        let t = TwistedTorus::new(IntMatrix::from_rows(&f).unwrap()).unwrap();
        let data = component_group_pi0(&t).unwrap();
        let elems = data.h1.elements();
        let pick = |s: u64| elems[(s as usize) % elems.len()].clone();
        let (x, y, z) = (pick(seed), pick(seed / 3 + 1), pick(seed / 7 + 2));
        let lhs = tn_pairing(&data, &data.h1.add(&x, &y), &z).unwrap();
        let rhs = tn_pairing(&data, &x, &z).unwrap().mul_ref(&tn_pairing(&data, &y, &z).unwrap()).reduce();
        prop_assert_eq!(lhs.reduce(), rhs);
        let zero = vec![0; x.len()];
        prop_assert_eq!(tn_pairing(&data, &zero, &z).unwrap(), Cyclotomic::one());
    }
}
