use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::exponents::Exponents;
use super::intpoly::IntPoly;
use super::CoeffError;

/// An element of the coefficient field `K = Q(params)`: a quotient of
/// integer polynomials in the named parameters.
///
/// Values are kept with integer and monomial content removed and a positive
/// leading denominator coefficient. When the denominator is not a monomial an
/// exact-division attempt cancels it if it divides the numerator; no general
/// polynomial gcd is taken. Equality is decided by cross-multiplication, so
/// it never depends on how far a value was reduced.
#[derive(Clone, Debug)]
pub struct ParamScalar {
    num: IntPoly,
    den: IntPoly,
}

impl ParamScalar {
    pub fn zero() -> Self {
        ParamScalar { num: IntPoly::zero(), den: IntPoly::one() }
    }

    pub fn one() -> Self {
        ParamScalar::from_int(1)
    }

    pub fn from_int(k: i64) -> Self {
        ParamScalar { num: IntPoly::constant(BigInt::from(k)), den: IntPoly::one() }
    }

    pub fn from_bigint(k: BigInt) -> Self {
        ParamScalar { num: IntPoly::constant(k), den: IntPoly::one() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        ParamScalar::from_parts(IntPoly::constant(r.numer().clone()), IntPoly::constant(r.denom().clone()))
            .expect("rational denominators are nonzero")
    }

    /// The parameter with the given index.
    pub fn param(index: usize) -> Self {
        ParamScalar { num: IntPoly::param(index), den: IntPoly::one() }
    }

    pub fn from_parts(num: IntPoly, den: IntPoly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        let mut s = ParamScalar { num, den };
        s.normalize();
        Ok(s)
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = IntPoly::one();
            return;
        }
        let mono = self
            .num
            .monomial_content()
            .zip(self.den.monomial_content())
            .map(|(a, b)| a.gcd(&b));
        if let Some(g) = mono {
            if !g.is_one() {
                self.num = self.num.div_monomial(&g);
                self.den = self.den.div_monomial(&g);
            }
        }
        if !self.den.is_monomial() {
            if let Some(q) = self.num.exact_div(&self.den) {
                self.num = q;
                self.den = IntPoly::one();
            }
        }
        let g = num_integer::Integer::gcd(&self.num.integer_content(), &self.den.integer_content());
        if !g.is_one() && !g.is_zero() {
            self.num = self.num.div_integer(&g);
            self.den = self.den.div_integer(&g);
        }
        if self.den.leading().is_some_and(|(_, c)| c.is_negative()) {
            self.num = self.num.neg();
            self.den = self.den.neg();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &ParamScalar::one()
    }

    /// True when the value involves no parameters.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(BigRational::new(n, d))
    }

    pub fn checked_div(&self, other: &ParamScalar) -> Result<ParamScalar, CoeffError> {
        if other.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        ParamScalar::from_parts(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn inv(&self) -> Result<ParamScalar, CoeffError> {
        ParamScalar::one().checked_div(self)
    }

    pub fn pow(&self, k: u32) -> ParamScalar {
        ParamScalar { num: self.num.pow(k), den: self.den.pow(k) }
    }

    /// Highest parameter index referenced, plus one.
    pub fn param_span(&self) -> usize {
        self.num.param_span().max(self.den.param_span())
    }

    /// Evaluate at exact rational parameter values.
    pub fn eval(&self, values: &[BigRational]) -> Result<BigRational, CoeffError> {
        let d = self.den.eval(values);
        if d.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(self.num.eval(values) / d)
    }

    /// A single-term polynomial value that renders without parentheses in a product.
    pub fn is_simple_product(&self) -> bool {
        self.den.is_one() && self.num.term_count() <= 1
    }

    pub fn is_negative_leading(&self) -> bool {
        self.num.leading().is_some_and(|(_, c)| c.is_negative())
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.den.is_one() {
            return self.num.render(names);
        }
        let num = if self.num.term_count() > 1 {
            format!("({})", self.num.render(names))
        } else {
            self.num.render(names)
        };
        let den_atomic = self.den.is_monomial()
            && self.den.leading().is_some_and(|(e, c)| {
                (e.is_one()) || (c.is_one() && e.as_slice().iter().filter(|&&k| k > 0).count() == 1)
            });
        let den = if den_atomic {
            self.den.render(names)
        } else {
            format!("({})", self.den.render(names))
        };
        format!("{}/{}", num, den)
    }

    /// Deterministic structural comparison on the stored representation.
    pub fn structural_cmp(&self, other: &ParamScalar) -> std::cmp::Ordering {
        fn key(p: &IntPoly) -> Vec<(Exponents, BigInt)> {
            p.terms().map(|(e, c)| (e.clone(), c.clone())).collect()
        }
        key(&self.num)
            .cmp(&key(&other.num))
            .then_with(|| key(&self.den).cmp(&key(&other.den)))
    }
}

impl PartialEq for ParamScalar {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for ParamScalar {}

impl Default for ParamScalar {
    fn default() -> Self {
        ParamScalar::zero()
    }
}

impl fmt::Display for ParamScalar {
    /// Renders with positional parameter names `p0, p1, ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.param_span()).map(|i| format!("p{}", i)).collect();
        f.write_str(&self.render(&names))
    }
}

impl<'a> Add<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    fn add(self, rhs: &ParamScalar) -> ParamScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return ParamScalar::from_parts(self.num.add(&rhs.num), self.den.clone()).unwrap();
        }
        ParamScalar::from_parts(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
        .unwrap()
    }
}

impl<'a> Sub<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    fn sub(self, rhs: &ParamScalar) -> ParamScalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: &ParamScalar) -> ParamScalar {
        if self.is_zero() || rhs.is_zero() {
            return ParamScalar::zero();
        }
        ParamScalar::from_parts(self.num.mul(&rhs.num), self.den.mul(&rhs.den)).unwrap()
    }
}

impl Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ParamScalar> for ParamScalar {
            type Output = ParamScalar;
            fn $m(self, rhs: ParamScalar) -> ParamScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> ParamScalar {
        ParamScalar::param(0)
    }
    fn b() -> ParamScalar {
        ParamScalar::param(1)
    }
    fn names() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    #[test]
    fn cancellation_identity() {
        let q = ParamScalar::param(0);
        assert_eq!(q, (&q * &q).checked_div(&q).unwrap());
    }

    #[test]
    fn inverse_pair() {
        let ab = a().checked_div(&b()).unwrap();
        let ba = b().checked_div(&a()).unwrap();
        assert!((&ab * &ba).is_one());
        assert_eq!((&ab * &ba).render(&names()), "1");
    }

    #[test]
    fn sum_of_ratio_and_squared_ratio() {
        // a/b + (b/a)^2 = (a^3 + b^3) / (a^2 b), checked by cross-multiplication
        let ab = a().checked_div(&b()).unwrap();
        let ba = b().checked_div(&a()).unwrap();
        let sum = &ab + &(&ba * &ba);
        let expected = ParamScalar::from_parts(
            a().numerator().pow(3).add(&b().numerator().pow(3)),
            a().numerator().pow(2).mul(b().numerator()),
        )
        .unwrap();
        assert_eq!(sum, expected);
        assert_eq!(sum.render(&names()), "(b^3 + a^3)/(a^2*b)");
    }

    #[test]
    fn division_by_zero() {
        assert!(matches!(a().checked_div(&ParamScalar::zero()), Err(CoeffError::DivisionByZero)));
    }

    #[test]
    fn sign_convention_puts_sign_in_numerator() {
        let s = ParamScalar::one().checked_div(&(-&a())).unwrap();
        assert_eq!(s.render(&names()), "-1/a");
        let t = b().checked_div(&(-&a())).unwrap();
        assert_eq!(t.render(&names()), "-b/a");
    }

    #[test]
    fn exact_denominator_cancels() {
        let num = &(&a() * &a()) - &(&b() * &b());
        let den = &a() + &b();
        assert_eq!(num.checked_div(&den).unwrap().render(&names()), "-b + a");
    }
}
