use std::collections::BTreeMap;

use num_rational::BigRational;

use super::exponents::Exponents;
use super::scalar::ParamScalar;
use super::CoeffError;

/// Element of the commutative base ring `R = K[t_1, ..., t_m]`.
///
/// Terms are keyed by dense exponent vectors of length `m`; zero coefficients
/// are never stored. With `m = 0` this is just a scalar of `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseElem {
    arity: usize,
    terms: BTreeMap<Exponents, ParamScalar>,
}

impl BaseElem {
    pub fn zero(arity: usize) -> Self {
        BaseElem { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        BaseElem::scalar(arity, ParamScalar::one())
    }

    pub fn scalar(arity: usize, c: ParamScalar) -> Self {
        BaseElem::term(arity, Exponents::zero(arity), c)
    }

    /// The generator `t_k`.
    pub fn generator(arity: usize, k: usize) -> Self {
        BaseElem::term(arity, Exponents::unit(arity, k), ParamScalar::one())
    }

    pub fn term(arity: usize, e: Exponents, c: ParamScalar) -> Self {
        debug_assert_eq!(e.len(), arity);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        BaseElem { arity, terms }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_scalar().is_some_and(|c| c.is_one())
    }

    /// Terms in ascending order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &ParamScalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// The value as an element of `K`, if it has no `t`-dependence.
    pub fn as_scalar(&self) -> Option<ParamScalar> {
        match self.terms.len() {
            0 => Some(ParamScalar::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coeff(&self, e: &Exponents) -> Option<&ParamScalar> {
        self.terms.get(e)
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.degree()).max()
    }

    /// True when every term has total degree exactly `d`.
    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        !self.is_zero() && self.terms.keys().all(|e| e.degree() == d)
    }

    fn check_arity(&self, other: &BaseElem) -> Result<(), CoeffError> {
        if self.arity != other.arity {
            return Err(CoeffError::ArityMismatch { expected: self.arity, found: other.arity });
        }
        Ok(())
    }

    fn add_term(&mut self, e: Exponents, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn try_add(&self, other: &BaseElem) -> Result<BaseElem, CoeffError> {
        self.check_arity(other)?;
        Ok(self.add(other))
    }

    pub fn try_mul(&self, other: &BaseElem) -> Result<BaseElem, CoeffError> {
        self.check_arity(other)?;
        Ok(self.mul(other))
    }

    /// Sum; arities must agree (checked in debug builds, see `try_add`).
    pub fn add(&self, other: &BaseElem) -> BaseElem {
        debug_assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &BaseElem) -> BaseElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BaseElem {
        BaseElem {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &BaseElem) -> BaseElem {
        debug_assert_eq!(self.arity, other.arity);
        let mut out = BaseElem::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.mul(e2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, k: &ParamScalar) -> BaseElem {
        if k.is_zero() {
            return BaseElem::zero(self.arity);
        }
        BaseElem {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> BaseElem {
        let mut out = BaseElem::one(self.arity);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Map every coefficient through `f`.
    pub fn map_coeffs<F>(&self, mut f: F) -> Result<BaseElem, CoeffError>
    where
        F: FnMut(&ParamScalar) -> Result<ParamScalar, CoeffError>,
    {
        let mut out = BaseElem::zero(self.arity);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Substitute exact rational values for the parameters.
    pub fn specialize(&self, values: &[BigRational]) -> Result<BaseElem, CoeffError> {
        self.map_coeffs(|c| c.eval(values).map(|r| ParamScalar::from_rational(&r)))
    }

    /// Evaluate as a polynomial function with parameters and variables fixed.
    pub fn eval(&self, params: &[BigRational], point: &[BigRational]) -> Result<BigRational, CoeffError> {
        let mut acc = BigRational::from_integer(0.into());
        for (e, c) in &self.terms {
            let mut term = c.eval(params)?;
            for (i, &k) in e.as_slice().iter().enumerate() {
                term *= num_traits::pow(point[i].clone(), k as usize);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Substitute elements of `K` for the variables.
    pub fn eval_scalar(&self, point: &[ParamScalar]) -> ParamScalar {
        let mut acc = ParamScalar::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.as_slice().iter().enumerate() {
                if k > 0 {
                    term = &term * &point[i].pow(k);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Deterministic structural comparison of stored representations.
    pub fn structural_cmp(&self, other: &BaseElem) -> std::cmp::Ordering {
        self.terms.len().cmp(&other.terms.len()).then_with(|| {
            for ((e1, c1), (e2, c2)) in self.terms.iter().zip(other.terms.iter()) {
                let o = e1.cmp(e2).then_with(|| c1.structural_cmp(c2));
                if o != std::cmp::Ordering::Equal {
                    return o;
                }
            }
            std::cmp::Ordering::Equal
        })
    }

    /// Render as a sum in descending term order.
    pub fn render(&self, params: &[String], gens: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let term = render_term(c, &e.render(gens), params);
            push_signed(&mut out, idx == 0, &term);
        }
        out
    }

    /// Render as a factor of a product: bare when a single simple term, else parenthesized.
    pub fn render_factor(&self, params: &[String], gens: &[String]) -> String {
        let single_simple = self.terms.len() == 1
            && self.terms.values().next().is_some_and(|c| c.is_simple_product());
        let s = self.render(params, gens);
        if single_simple {
            s
        } else {
            format!("({})", s)
        }
    }
}

/// Render `c * mono`, where `mono` is an already-rendered monomial (possibly empty).
pub(crate) fn render_term(c: &ParamScalar, mono: &str, params: &[String]) -> String {
    if mono.is_empty() {
        return c.render(params);
    }
    if c.is_one() {
        return mono.to_string();
    }
    if (-c).is_one() {
        return format!("-{}", mono);
    }
    if c.is_simple_product() {
        format!("{}*{}", c.render(params), mono)
    } else if c.is_negative_leading() {
        format!("-({})*{}", (-c).render(params), mono)
    } else {
        format!("({})*{}", c.render(params), mono)
    }
}

/// Append `term` to a sum being rendered, turning a leading `-` into ` - `.
pub(crate) fn push_signed(out: &mut String, first: bool, term: &str) {
    if first {
        out.push_str(term);
    } else if let Some(rest) = term.strip_prefix('-') {
        out.push_str(" - ");
        out.push_str(rest);
    } else {
        out.push_str(" + ");
        out.push_str(term);
    }
}
