use std::cell::RefCell;
use std::collections::HashMap;

use super::element::Element;
use crate::coeffs::{BaseElem, Exponents};
use crate::presentation::Presentation;

/// Product engine working directly on normal forms. Products `x_i * x^beta`
/// are memoized per instance.
pub struct Multiplier<'p> {
    p: &'p Presentation,
    memo: RefCell<HashMap<(usize, Exponents), Element>>,
}

impl<'p> Multiplier<'p> {
    pub fn new(p: &'p Presentation) -> Self {
        Multiplier { p, memo: RefCell::new(HashMap::new()) }
    }

    /// `x_i * x^beta` in normal form.
    fn var_times_monomial(&self, i: usize, beta: &Exponents) -> Element {
        if let Some(hit) = self.memo.borrow().get(&(i, beta.clone())) {
            return hit.clone();
        }
        let (n, m) = (self.p.n(), self.p.m());
        let out = match beta.first_nonzero() {
            Some(k) if k < i => {
                // x_i x_k x^rest = c_{k,i} x_k (x_i x^rest) + tail_{k,i} x^rest
                let rest = beta.with_decremented(k);
                let rel = self.p.relation(k, i);
                let inner = self.var_times_monomial(i, &rest);
                let mut acc = self.var_times_element(k, &inner).scale_left(&rel.c);
                acc.add_term(rest.clone(), rel.tail.constant.clone());
                for (l, coeff) in rel.tail.linear.iter().enumerate() {
                    if !coeff.is_zero() {
                        acc.add_assign(&self.var_times_monomial(l, &rest).scale_left(coeff));
                    }
                }
                acc
            }
            _ => Element::term(n, m, beta.with_incremented(i), BaseElem::one(m)),
        };
        self.memo.borrow_mut().insert((i, beta.clone()), out.clone());
        out
    }

    /// `x_i * e` for `e` in normal form.
    pub fn var_times_element(&self, i: usize, e: &Element) -> Element {
        let sigma = self.p.sigma(i);
        let delta = self.p.delta(i);
        let mut acc = Element::zero(self.p.n(), self.p.m());
        for (beta, r) in e.terms() {
            let s = sigma.apply(r).expect("arity");
            if !s.is_zero() {
                acc.add_assign(&self.var_times_monomial(i, beta).scale_left(&s));
            }
            let d = delta.apply_unchecked(sigma, r);
            acc.add_term(beta.clone(), d);
        }
        acc
    }

    /// `x^alpha * e`.
    pub fn monomial_times_element(&self, alpha: &Exponents, e: &Element) -> Element {
        let mut acc = e.clone();
        for i in (0..self.p.n()).rev() {
            for _ in 0..alpha.get(i) {
                acc = self.var_times_element(i, &acc);
            }
        }
        acc
    }

    pub fn mul(&self, f: &Element, g: &Element) -> Element {
        let mut acc = Element::zero(self.p.n(), self.p.m());
        for (alpha, r) in f.terms() {
            acc.add_assign(&self.monomial_times_element(alpha, g).scale_left(r));
        }
        acc
    }
}

/// Product of two normal forms in `A`.
pub fn multiply(p: &Presentation, f: &Element, g: &Element) -> Element {
    Multiplier::new(p).mul(f, g)
}
