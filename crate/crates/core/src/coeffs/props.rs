use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use super::{BaseElem, Exponents, ParamScalar};

/// Small polynomial fractions in two parameters.
fn scalar() -> impl Strategy<Value = ParamScalar> {
    let poly = prop::collection::vec((-4i64..=4, 0u32..3, 0u32..3), 1..4).prop_map(|terms| {
        terms.into_iter().fold(ParamScalar::zero(), |acc, (c, i, j)| {
            acc + ParamScalar::from_int(c) * ParamScalar::param(0).pow(i) * ParamScalar::param(1).pow(j)
        })
    });
    (poly.clone(), poly).prop_filter_map("nonzero denominator", |(n, d)| n.checked_div(&d).ok())
}

fn base() -> impl Strategy<Value = BaseElem> {
    prop::collection::vec((scalar(), 0u32..3, 0u32..2), 0..3).prop_map(|terms| {
        terms.into_iter().fold(BaseElem::zero(2), |acc, (c, i, j)| {
            acc.add(&BaseElem::term(2, Exponents::from_vec(vec![i, j]), c))
        })
    })
}

fn point() -> Vec<BigRational> {
    vec![BigRational::new(BigInt::from(7), BigInt::from(3)), BigRational::from_integer(BigInt::from(-5))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a - &a, ParamScalar::zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn scalar_evaluation_is_a_homomorphism(a in scalar(), b in scalar()) {
        let at = point();
        if let (Ok(x), Ok(y)) = (a.eval(&at), b.eval(&at)) {
            prop_assert_eq!((&a * &b).eval(&at).unwrap(), &x * &y);
            prop_assert_eq!((&a + &b).eval(&at).unwrap(), &x + &y);
        }
    }

    #[test]
    fn base_ring_axioms(f in base(), g in base(), h in base()) {
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert!(f.sub(&f).is_zero());
        if !f.is_zero() && !g.is_zero() {
            prop_assert_eq!(f.mul(&g).degree(), Some(f.degree().unwrap() + g.degree().unwrap()));
        }
    }
}
