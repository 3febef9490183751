use super::base::BaseElem;
use super::exponents::Exponents;
use super::scalar::ParamScalar;
use super::CoeffError;

/// A `K`-algebra endomorphism of `R` given by generator images, with an
/// optional claimed inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoMap {
    forward: Vec<BaseElem>,
    inverse: Option<Vec<BaseElem>>,
}

impl EndoMap {
    pub fn identity(arity: usize) -> Self {
        let gens: Vec<BaseElem> = (0..arity).map(|k| BaseElem::generator(arity, k)).collect();
        EndoMap { forward: gens.clone(), inverse: Some(gens) }
    }

    pub fn new(forward: Vec<BaseElem>, inverse: Option<Vec<BaseElem>>) -> Self {
        EndoMap { forward, inverse }
    }

    pub fn arity(&self) -> usize {
        self.forward.len()
    }

    pub fn images(&self) -> &[BaseElem] {
        &self.forward
    }

    pub fn inverse_images(&self) -> Option<&[BaseElem]> {
        self.inverse.as_deref()
    }

    pub fn is_identity(&self) -> bool {
        let m = self.arity();
        self.forward.iter().enumerate().all(|(k, img)| *img == BaseElem::generator(m, k))
    }

    /// The map on the inverse images, if an inverse was supplied.
    pub fn inverse_map(&self) -> Option<EndoMap> {
        self.inverse
            .as_ref()
            .map(|inv| EndoMap { forward: inv.clone(), inverse: Some(self.forward.clone()) })
    }

    /// Apply the unique `K`-algebra extension of the generator images to `r`.
    pub fn apply(&self, r: &BaseElem) -> Result<BaseElem, CoeffError> {
        if r.arity() != self.arity() {
            return Err(CoeffError::ArityMismatch { expected: self.arity(), found: r.arity() });
        }
        Ok(substitute(r, &self.forward))
    }

    /// Checks that forward and inverse compose to the identity on every
    /// generator, both ways. Returns the generators where this fails; `None`
    /// if no inverse was supplied.
    pub fn inverse_failures(&self) -> Option<Vec<usize>> {
        let inv = self.inverse.as_ref()?;
        let m = self.arity();
        let mut bad = Vec::new();
        for k in 0..m {
            let t = BaseElem::generator(m, k);
            let there = substitute(&inv[k], &self.forward);
            let back = substitute(&self.forward[k], inv);
            if there != t || back != t {
                bad.push(k);
            }
        }
        Some(bad)
    }

    /// Whether the map is an automorphism of `R`, when that can be decided:
    /// a verified inverse, an affine map (invertible iff its linear part is),
    /// or a single generator sent to a polynomial of degree at least two.
    pub fn bijectivity(&self) -> Option<bool> {
        if self.inverse_failures().is_some_and(|bad| bad.is_empty()) {
            return Some(true);
        }
        let m = self.arity();
        if self.forward.iter().all(|img| img.degree().unwrap_or(0) <= 1) {
            let rows: Vec<Vec<ParamScalar>> = self
                .forward
                .iter()
                .map(|img| {
                    (0..m)
                        .map(|l| img.coeff(&Exponents::unit(m, l)).cloned().unwrap_or_else(ParamScalar::zero))
                        .collect()
                })
                .collect();
            return Some(crate::linalg::rank(&rows, m) == m);
        }
        if m == 1 {
            return Some(false);
        }
        None
    }
}

/// Substitute `images[k]` for `t_k` in `r`.
pub(crate) fn substitute(r: &BaseElem, images: &[BaseElem]) -> BaseElem {
    let m = r.arity();
    let out_arity = images.first().map_or(m, |i| i.arity());
    let mut acc = BaseElem::zero(out_arity);
    for (e, c) in r.terms() {
        let mut term = BaseElem::scalar(out_arity, c.clone());
        for (k, &p) in e.as_slice().iter().enumerate() {
            if p > 0 {
                term = term.mul(&images[k].pow(p));
            }
        }
        acc = acc.add(&term);
    }
    acc
}

/// A sigma-derivation of `R` given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivMap {
    images: Vec<BaseElem>,
}

impl DerivMap {
    pub fn zero(arity: usize) -> Self {
        DerivMap { images: vec![BaseElem::zero(arity); arity] }
    }

    pub fn new(images: Vec<BaseElem>) -> Self {
        DerivMap { images }
    }

    pub fn images(&self) -> &[BaseElem] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|i| i.is_zero())
    }

    /// Pairs `(j, k)`, `j < k`, violating
    /// `sigma(t_j) delta(t_k) + delta(t_j) t_k = sigma(t_k) delta(t_j) + delta(t_k) t_j`.
    pub fn symmetry_failures(&self, sigma: &EndoMap) -> Vec<(usize, usize)> {
        let m = self.images.len();
        let s = sigma.images();
        let mut bad = Vec::new();
        for j in 0..m {
            for k in (j + 1)..m {
                let tj = BaseElem::generator(m, j);
                let tk = BaseElem::generator(m, k);
                let lhs = s[j].mul(&self.images[k]).add(&self.images[j].mul(&tk));
                let rhs = s[k].mul(&self.images[j]).add(&self.images[k].mul(&tj));
                if lhs != rhs {
                    bad.push((j, k));
                }
            }
        }
        bad
    }

    /// Sigma-Leibniz extension applied to `r`, without re-validating the pair.
    pub(crate) fn apply_unchecked(&self, sigma: &EndoMap, r: &BaseElem) -> BaseElem {
        let m = r.arity();
        let mut acc = BaseElem::zero(m);
        if self.is_zero() {
            return acc;
        }
        for (e, c) in r.terms() {
            // expand t^e as a word g_1 ... g_d and sum sigma(g_1..g_{i-1}) delta(g_i) g_{i+1}..g_d
            let word: Vec<usize> = e
                .as_slice()
                .iter()
                .enumerate()
                .flat_map(|(k, &p)| std::iter::repeat_n(k, p as usize))
                .collect();
            let mut prefix = BaseElem::one(m);
            for (pos, &g) in word.iter().enumerate() {
                let mut suffix = Exponents::zero(m);
                for &h in &word[pos + 1..] {
                    suffix = suffix.with_incremented(h);
                }
                let tail = BaseElem::term(m, suffix, c.clone());
                acc = acc.add(&prefix.mul(&self.images[g]).mul(&tail));
                prefix = prefix.mul(&sigma.images()[g]);
            }
        }
        acc
    }
}

/// Structured outcome of [`validate_maps`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapValidation {
    /// `None` when no inverse was supplied.
    pub inverse_verified: Option<bool>,
    pub inverse_witnesses: Vec<usize>,
    pub derivation_consistent: bool,
    pub derivation_witnesses: Vec<(usize, usize)>,
}

pub fn validate_maps(sigma: &EndoMap, delta: &DerivMap) -> MapValidation {
    let inverse = sigma.inverse_failures();
    let derivation_witnesses = delta.symmetry_failures(sigma);
    MapValidation {
        inverse_verified: inverse.as_ref().map(|b| b.is_empty()),
        inverse_witnesses: inverse.unwrap_or_default(),
        derivation_consistent: derivation_witnesses.is_empty(),
        derivation_witnesses,
    }
}

pub fn apply_endo(sigma: &EndoMap, r: &BaseElem) -> Result<BaseElem, CoeffError> {
    sigma.apply(r)
}

/// Apply the sigma-derivation `delta` (paired with `sigma`) to `r`.
pub fn apply_deriv(sigma: &EndoMap, delta: &DerivMap, r: &BaseElem) -> Result<BaseElem, CoeffError> {
    if r.arity() != delta.images.len() {
        return Err(CoeffError::ArityMismatch { expected: delta.images.len(), found: r.arity() });
    }
    if let Some(&(j, k)) = delta.symmetry_failures(sigma).first() {
        return Err(CoeffError::InvalidDerivation { pair: (j, k) });
    }
    Ok(delta.apply_unchecked(sigma, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ParamScalar {
        ParamScalar::param(0)
    }

    fn t1() -> BaseElem {
        BaseElem::generator(1, 0)
    }

    fn sym_names() -> (Vec<String>, Vec<String>) {
        (vec!["h".into()], vec!["t".into()])
    }

    #[test]
    fn q_dilation_on_square() {
        let sigma = EndoMap::new(vec![t1().scale(&q())], None);
        let r = t1().pow(2);
        assert_eq!(apply_endo(&sigma, &r).unwrap(), t1().pow(2).scale(&q().pow(2)));
    }

    #[test]
    fn identity_endo() {
        let sigma = EndoMap::identity(1);
        let r = t1().pow(3).add(&BaseElem::one(1));
        assert_eq!(apply_endo(&sigma, &r).unwrap(), r);
    }

    #[test]
    fn shift_on_square() {
        let h = BaseElem::scalar(1, ParamScalar::param(0));
        let sigma = EndoMap::new(vec![t1().sub(&h)], None);
        let got = apply_endo(&sigma, &t1().pow(2)).unwrap();
        let (p, g) = sym_names();
        assert_eq!(got.render(&p, &g), "t^2 - 2*h*t + h^2");
    }

    #[test]
    fn weyl_derivative() {
        let delta = DerivMap::new(vec![BaseElem::one(1)]);
        let got = apply_deriv(&EndoMap::identity(1), &delta, &t1().pow(2)).unwrap();
        assert_eq!(got, t1().scale(&ParamScalar::from_int(2)));
    }

    #[test]
    fn zero_derivation() {
        let got = apply_deriv(&EndoMap::identity(1), &DerivMap::zero(1), &t1().pow(5)).unwrap();
        assert!(got.is_zero());
    }

    #[test]
    fn twisted_derivative_of_square() {
        // delta(t^2) = sigma(t) delta(t) + delta(t) t = (q + 1) t
        let sigma = EndoMap::new(vec![t1().scale(&q())], None);
        let delta = DerivMap::new(vec![BaseElem::one(1)]);
        let got = apply_deriv(&sigma, &delta, &t1().pow(2)).unwrap();
        assert_eq!(got, t1().scale(&(&q() + &ParamScalar::one())));
    }

    #[test]
    fn dilation_inverse_verified() {
        let inv = t1().scale(&q().inv().unwrap());
        let sigma = EndoMap::new(vec![t1().scale(&q())], Some(vec![inv]));
        let v = validate_maps(&sigma, &DerivMap::zero(1));
        assert_eq!(v.inverse_verified, Some(true));
    }

    #[test]
    fn square_map_is_not_inverted_by_identity() {
        let sigma = EndoMap::new(vec![t1().pow(2)], Some(vec![t1()]));
        let v = validate_maps(&sigma, &DerivMap::zero(1));
        assert_eq!(v.inverse_verified, Some(false));
        assert_eq!(v.inverse_witnesses, vec![0]);
    }

    #[test]
    fn swapped_derivation_is_consistent() {
        let t = |k| BaseElem::generator(2, k);
        let delta = DerivMap::new(vec![t(1), t(0)]);
        let v = validate_maps(&EndoMap::identity(2), &delta);
        assert!(v.derivation_consistent);
    }

    #[test]
    fn inconsistent_derivation_is_rejected() {
        // sigma(t1) = 2 t1, sigma(t2) = t2, delta(t1) = 0, delta(t2) = 1:
        // 2 t1 * 1 + 0 != t2 * 0 + 1 * t1
        let t = |k| BaseElem::generator(2, k);
        let sigma = EndoMap::new(vec![t(0).scale(&ParamScalar::from_int(2)), t(1)], None);
        let delta = DerivMap::new(vec![BaseElem::zero(2), BaseElem::one(2)]);
        assert_eq!(delta.symmetry_failures(&sigma), vec![(0, 1)]);
        assert!(matches!(apply_deriv(&sigma, &delta, &t(0)), Err(CoeffError::InvalidDerivation { .. })));
    }

    #[test]
    fn bijectivity_decisions() {
        let t = t1();
        let one = BaseElem::one(1);
        let shift = EndoMap::new(vec![t.sub(&one)], None);
        assert_eq!(shift.bijectivity(), Some(true));
        let square = EndoMap::new(vec![t.mul(&t)], None);
        assert_eq!(square.bijectivity(), Some(false));
        let constant = EndoMap::new(vec![one.clone()], None);
        assert_eq!(constant.bijectivity(), Some(false));
        let dil = EndoMap::new(vec![t.scale(&q())], Some(vec![t.scale(&q().inv().unwrap())]));
        assert_eq!(dil.bijectivity(), Some(true));
        let s = BaseElem::generator(2, 0);
        let u = BaseElem::generator(2, 1);
        let swap = EndoMap::new(vec![u.clone(), s.clone()], None);
        assert_eq!(swap.bijectivity(), Some(true));
        let collapse = EndoMap::new(vec![s.add(&u), s.add(&u)], None);
        assert_eq!(collapse.bijectivity(), Some(false));
        let triangular = EndoMap::new(vec![s.add(&u.mul(&u)), u.clone()], None);
        assert_eq!(triangular.bijectivity(), None);
    }
}
