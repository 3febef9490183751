//! Total-degree filtration: the associated graded presentation, principal
//! symbols, the iterated Ore description of quasi-commutative extensions and
//! graded dimension counts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

use crate::coeffs::{BaseElem, EndoMap, Exponents, ParamScalar};
use crate::linalg;
use crate::presentation::{classify_shape, Presentation};
use crate::rewrite::{multiply, normal_form, Element, FreeWord, Strategy};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error("the zero element has no principal symbol")]
    ZeroElement,
    #[error("presentation is not quasi-commutative: {0}")]
    NotQuasiCommutative(String),
    #[error("presentation is not finitely graded: {0}")]
    NotFinitelyGraded(String),
}

/// `Gr(A)`: same variables, sigmas and `c`'s with every delta and tail dropped.
pub fn gr_presentation(p: &Presentation) -> Presentation {
    p.without_lower_order()
}

/// Top-degree part of `f`, read as an element of `Gr(A)`.
pub fn principal_symbol(p: &Presentation, f: &Element) -> Result<Element, GradedError> {
    debug_assert_eq!((f.n(), f.m()), (p.n(), p.m()));
    if f.is_zero() {
        return Err(GradedError::ZeroElement);
    }
    Ok(f.top_part())
}

/// Stage `j` of `R[z_1; theta_1]...[z_n; theta_n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreStage {
    /// Action of `theta_j` on `R`.
    pub theta: EndoMap,
    /// `theta_j(z_i) = multipliers[i] * z_i` for `i < j`.
    pub multipliers: Vec<BaseElem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreTower {
    n: usize,
    m: usize,
    pub stages: Vec<OreStage>,
    pub bijective: bool,
    /// Random products compared against `multiply`: (agreed, total).
    pub replay: (usize, usize),
}

pub const ORE_REPLAY_PRODUCTS: usize = 20;
const ORE_REPLAY_SEED: u64 = 0x5eed_0e1e;

impl OreTower {
    fn from_presentation(p: &Presentation) -> OreTower {
        let stages = (0..p.n())
            .map(|j| OreStage {
                theta: p.sigma(j).clone(),
                multipliers: (0..j).map(|i| p.relation(i, j).c.clone()).collect(),
            })
            .collect();
        OreTower { n: p.n(), m: p.m(), stages, bijective: classify_shape(p).bijective, replay: (0, 0) }
    }

    /// `theta_j(s z^low)` for `low` supported on `z_1..z_{j-1}`.
    fn theta(&self, j: usize, s: &BaseElem, low: &Exponents) -> Element {
        let stage = &self.stages[j];
        let image = stage.theta.apply(s).expect("arity");
        let mut acc = Element::from_base(self.n, image);
        for i in 0..j {
            let zi = Element::term(self.n, self.m, Exponents::unit(self.n, i), stage.multipliers[i].clone());
            for _ in 0..low.get(i) {
                acc = self.mul(&acc, &zi);
            }
        }
        acc
    }

    /// `z_j * h`.
    fn var_times(&self, j: usize, h: &Element) -> Element {
        let mut out = Element::zero(self.n, self.m);
        for (beta, s) in h.terms() {
            let v = beta.as_slice();
            let get = |i: usize| v.get(i).copied().unwrap_or(0);
            let low = Exponents::from_vec((0..self.n).map(|i| if i < j { get(i) } else { 0 }).collect());
            let high = Exponents::from_vec((0..self.n).map(|i| if i < j { 0 } else { get(i) }).collect());
            let high = high.with_incremented(j);
            for (gamma, r) in self.theta(j, s, &low).terms() {
                out.add_term(gamma.mul(&high), r.clone());
            }
        }
        out
    }

    /// Product computed purely from the tower data.
    pub fn mul(&self, f: &Element, g: &Element) -> Element {
        let mut out = Element::zero(self.n, self.m);
        for (alpha, r) in f.terms() {
            let mut h = g.clone();
            for i in (0..self.n).rev() {
                for _ in 0..alpha.get(i) {
                    h = self.var_times(i, &h);
                }
            }
            out.add_assign(&h.scale_left(r));
        }
        out
    }

    pub fn replay_agrees(&self) -> bool {
        self.replay.0 == self.replay.1
    }

    pub fn to_json(&self, p: &Presentation) -> serde_json::Value {
        let syms = p.symbols();
        let stages: Vec<_> = self
            .stages
            .iter()
            .enumerate()
            .map(|(j, st)| {
                let on_base: serde_json::Map<_, _> = st
                    .theta
                    .images()
                    .iter()
                    .enumerate()
                    .map(|(k, img)| (syms.base[k].clone(), json!(syms.render_base(img))))
                    .collect();
                let on_vars: serde_json::Map<_, _> = st
                    .multipliers
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (syms.vars[i].clone(), json!(syms.render_term(c, &Exponents::unit(self.n, i)))))
                    .collect();
                json!({ "variable": syms.vars[j], "theta_on_base": on_base, "theta_on_variables": on_vars })
            })
            .collect();
        json!({
            "stages": stages,
            "bijective": self.bijective,
            "replay": { "products": self.replay.1, "agreed": self.replay.0 },
        })
    }
}

/// A random element with at most three terms of degree at most two.
pub(crate) fn random_element(rng: &mut impl Rng, n: usize, m: usize) -> Element {
    let mut e = Element::zero(n, m);
    for _ in 0..rng.gen_range(1..=3) {
        let mut v = vec![0u32; n];
        for _ in 0..rng.gen_range(0..=2) {
            v[rng.gen_range(0..n)] += 1;
        }
        let mut r = BaseElem::scalar(m, ParamScalar::from_int(rng.gen_range(1..=4)));
        if m > 0 && rng.gen_bool(0.5) {
            r = r.add(&BaseElem::generator(m, rng.gen_range(0..m)));
        }
        e.add_term(Exponents::from_vec(v), r);
    }
    e
}

/// The iterated Ore description of a quasi-commutative extension, verified
/// by replaying random products against `multiply`.
pub fn iterated_ore(p: &Presentation) -> Result<OreTower, GradedError> {
    let shape = classify_shape(p);
    if !shape.quasi_commutative {
        let w = shape.witnesses.iter().find(|w| w.starts_with("not quasi")).cloned().unwrap_or_default();
        return Err(GradedError::NotQuasiCommutative(w));
    }
    let mut tower = OreTower::from_presentation(p);
    let mut rng = ChaCha8Rng::seed_from_u64(ORE_REPLAY_SEED);
    let mut agreed = 0;
    for _ in 0..ORE_REPLAY_PRODUCTS {
        let f = random_element(&mut rng, p.n(), p.m());
        let g = random_element(&mut rng, p.n(), p.m());
        if tower.mul(&f, &g) == multiply(p, &f, &g) {
            agreed += 1;
        }
    }
    tower.replay = (agreed, ORE_REPLAY_PRODUCTS);
    Ok(tower)
}

/// Degrees up to this bound are cross-checked by reducing every free word.
pub const HILBERT_CROSS_CHECK_MAX: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertDim {
    pub degree: u32,
    /// Number of standard monomials of this degree.
    pub dim: u64,
    /// Rank of the normal forms of all `n^d` words, when computed.
    pub word_rank: Option<u64>,
}

impl HilbertDim {
    pub fn cross_check(&self) -> Option<bool> {
        self.word_rank.map(|r| r == self.dim)
    }
}

fn monomials_of_degree(n: usize, d: u32) -> Vec<Exponents> {
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponents>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Exponents::from_vec(cur.clone()));
            return;
        }
        for a in 0..=left {
            cur[i] = a;
            go(i + 1, left - a, cur, out);
        }
    }
    let mut out = Vec::new();
    go(0, d, &mut vec![0; n], &mut out);
    out
}

fn all_words(n: usize, d: u32) -> Vec<Vec<usize>> {
    let mut words = vec![Vec::new()];
    for _ in 0..d {
        words = words
            .into_iter()
            .flat_map(|w| {
                (0..n).map(move |i| {
                    let mut w = w.clone();
                    w.push(i);
                    w
                })
            })
            .collect();
    }
    words
}

/// `dim_K A_d` for a finitely graded presentation.
pub fn hilbert_dim(p: &Presentation, d: u32) -> Result<HilbertDim, GradedError> {
    let shape = classify_shape(p);
    if !shape.finitely_graded {
        let w = shape.witnesses.iter().find(|w| w.starts_with("not finitely")).cloned().unwrap_or_default();
        return Err(GradedError::NotFinitelyGraded(w));
    }
    let n = p.n();
    let dim = num_integer::binomial((d as u64) + n as u64 - 1, n as u64 - 1);
    let word_rank = (d <= HILBERT_CROSS_CHECK_MAX).then(|| {
        let basis = monomials_of_degree(n, d);
        let rows: Vec<Vec<ParamScalar>> = all_words(n, d)
            .iter()
            .map(|w| {
                let e = normal_form(p, &FreeWord::vars(w), Strategy::Leftmost);
                basis
                    .iter()
                    .map(|b| e.coeff(b).and_then(|r| r.as_scalar()).unwrap_or_else(ParamScalar::zero))
                    .collect()
            })
            .collect();
        linalg::rank(&rows, basis.len()) as u64
    });
    Ok(HilbertDim { degree: d, dim, word_rank })
}
