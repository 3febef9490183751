use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::exponents::Exponents;

/// Sparse polynomial with integer coefficients in the parameters of a
/// presentation. Monomials use trimmed exponent vectors indexed by parameter.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Exponents::default(), c);
        }
        IntPoly { terms }
    }

    pub fn param(index: usize) -> Self {
        let mut e = vec![0; index + 1];
        e[index] = 1;
        IntPoly::monomial(BigInt::one(), Exponents::trimmed(e))
    }

    pub fn monomial(c: BigInt, e: Exponents) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Exponents::trimmed(e.as_slice().to_vec()), c);
        }
        IntPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(e, c)| e.is_one() && c.is_one())
    }

    /// The constant value if the polynomial has no parameter dependence.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Highest parameter index used, plus one.
    pub fn param_span(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out = IntPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.mul(e2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        if k.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul_monomial(&self, e: &Exponents) -> IntPoly {
        IntPoly {
            terms: self.terms.iter().map(|(m, c)| (Exponents::trimmed(m.mul(e).as_slice().to_vec()), c.clone())).collect(),
        }
    }

    /// Divide every term by the monomial `e`; the caller guarantees divisibility.
    pub fn div_monomial(&self, e: &Exponents) -> IntPoly {
        IntPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let q = m.div(e).expect("monomial divisibility");
                    (Exponents::trimmed(q.as_slice().to_vec()), c.clone())
                })
                .collect(),
        }
    }

    /// Divide every coefficient exactly by `k`.
    pub fn div_integer(&self, k: &BigInt) -> IntPoly {
        IntPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c / k)).collect(),
        }
    }

    /// Gcd of all integer coefficients (non-negative; zero for the zero polynomial).
    pub fn integer_content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Option<Exponents> {
        let mut iter = self.terms.keys();
        let first = iter.next()?.clone();
        Some(iter.fold(first, |g, e| g.gcd(e)))
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (lead_e, lead_c) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot = IntPoly::zero();
        while let Some((e, c)) = rem.leading() {
            let qe = e.div(lead_e)?;
            let (qc, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return None;
            }
            let qe = Exponents::trimmed(qe.as_slice().to_vec());
            let step = IntPoly::monomial(qc, qe);
            rem = rem.sub(&divisor.mul(&step));
            quot = quot.add(&step);
        }
        Some(quot)
    }

    pub fn pow(&self, k: u32) -> IntPoly {
        let mut out = IntPoly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, values: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (i, &k) in e.as_slice().iter().enumerate() {
                if k > 0 {
                    term *= num_traits::pow(values[i].clone(), k as usize);
                }
            }
            acc += term;
        }
        acc
    }

    /// Render in descending term order; returns "0" for the zero polynomial.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            let mono = e.render(names);
            let body = if mono.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                mono
            } else {
                format!("{}*{}", abs, mono)
            };
            match (idx, neg) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }
}
