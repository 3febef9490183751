use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::coeffs::{BaseElem, CoeffError, Exponents, ParamScalar};
use crate::presentation::Symbols;

/// Element of `A` in normal form: a left `R`-linear combination of standard
/// monomials `x^alpha`. Zero coefficients are never stored, so two elements
/// are equal iff their term maps are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    n: usize,
    m: usize,
    terms: BTreeMap<Exponents, BaseElem>,
}

impl Element {
    pub fn zero(n: usize, m: usize) -> Self {
        Element { n, m, terms: BTreeMap::new() }
    }

    pub fn one(n: usize, m: usize) -> Self {
        Element::from_base(n, BaseElem::one(m))
    }

    pub fn from_base(n: usize, r: BaseElem) -> Self {
        let m = r.arity();
        Element::term(n, m, Exponents::zero(n), r)
    }

    pub fn var(n: usize, m: usize, i: usize) -> Self {
        Element::term(n, m, Exponents::unit(n, i), BaseElem::one(m))
    }

    /// `r * x^alpha`.
    pub fn term(n: usize, m: usize, alpha: Exponents, r: BaseElem) -> Self {
        let mut e = Element::zero(n, m);
        e.add_term(alpha, r);
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BaseElem)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, alpha: &Exponents) -> Option<&BaseElem> {
        self.terms.get(alpha)
    }

    /// Largest total degree of a standard monomial; `None` stands for the
    /// degree of zero, minus infinity.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|a| a.degree()).max()
    }

    pub fn add_term(&mut self, alpha: Exponents, r: BaseElem) {
        if r.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(r);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&r);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        for (a, r) in &other.terms {
            self.add_term(a.clone(), r.clone());
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn neg(&self) -> Element {
        Element {
            n: self.n,
            m: self.m,
            terms: self.terms.iter().map(|(a, r)| (a.clone(), r.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    /// `r * self` for `r` in `R`; coefficients sit on the left so this is termwise.
    pub fn scale_left(&self, r: &BaseElem) -> Element {
        let mut out = Element::zero(self.n, self.m);
        for (a, s) in &self.terms {
            out.add_term(a.clone(), r.mul(s));
        }
        out
    }

    pub fn scale(&self, k: &ParamScalar) -> Element {
        self.scale_left(&BaseElem::scalar(self.m, k.clone()))
    }

    /// Sum of the terms of top degree.
    pub fn top_part(&self) -> Element {
        let mut out = Element::zero(self.n, self.m);
        if let Some(d) = self.degree() {
            for (a, r) in &self.terms {
                if a.degree() == d {
                    out.add_term(a.clone(), r.clone());
                }
            }
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|a| a.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Substitute exact rational values for the parameters.
    pub fn specialize(&self, values: &[BigRational]) -> Result<Element, CoeffError> {
        let mut out = Element::zero(self.n, self.m);
        for (a, r) in &self.terms {
            out.add_term(a.clone(), r.specialize(values)?);
        }
        Ok(out)
    }

    /// Render in descending monomial order, e.g. `t^2*x + 2*t`.
    pub fn render(&self, syms: &Symbols) -> String {
        syms.render_sum(self.terms.iter().rev().map(|(a, r)| (r, a)))
    }
}
