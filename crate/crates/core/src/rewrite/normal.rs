use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::element::Element;
use crate::coeffs::{BaseElem, Exponents, ParamScalar};
use crate::presentation::{FreeExpr, Presentation, Sym};

/// One letter of an unreduced product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Scalar(BaseElem),
    Var(usize),
}

/// An unreduced product in the free algebra over `R`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreeWord {
    pub atoms: Vec<Atom>,
}

impl FreeWord {
    pub fn new(atoms: Vec<Atom>) -> Self {
        FreeWord { atoms }
    }

    pub fn vars(vars: &[usize]) -> Self {
        FreeWord { atoms: vars.iter().map(|&i| Atom::Var(i)).collect() }
    }

    /// Split a parsed expression into scalar-weighted words.
    pub fn from_expr(expr: &FreeExpr, m: usize) -> Vec<(ParamScalar, FreeWord)> {
        expr.terms()
            .map(|(word, c)| {
                let atoms = word
                    .iter()
                    .map(|s| match s {
                        Sym::Base(k) => Atom::Scalar(BaseElem::generator(m, *k)),
                        Sym::Var(i) => Atom::Var(*i),
                    })
                    .collect();
                (c.clone(), FreeWord { atoms })
            })
            .collect()
    }
}

/// Which redex the reducer rewrites first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Leftmost,
    Rightmost,
}

impl FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "leftmost" => Ok(Strategy::Leftmost),
            "rightmost" => Ok(Strategy::Rightmost),
            other => Err(format!("unknown strategy `{}` (expected leftmost or rightmost)", other)),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Leftmost => "leftmost",
            Strategy::Rightmost => "rightmost",
        })
    }
}

/// `x_i r = sigma_i(r) x_i + delta_i(r)` as an element.
pub fn push_coeff(p: &Presentation, i: usize, r: &BaseElem) -> Element {
    let (n, m) = (p.n(), p.m());
    let mut out = Element::term(n, m, Exponents::unit(n, i), p.sigma(i).apply(r).expect("arity"));
    out.add_term(Exponents::zero(n), p.delta(i).apply_unchecked(p.sigma(i), r));
    out
}

/// `x_j x_i = c_{i,j} x_i x_j + tail_{i,j}` for `j > i`, as an element.
pub fn swap_reduce(p: &Presentation, j: usize, i: usize) -> Element {
    assert!(j > i, "swap_reduce needs j > i");
    let (n, m) = (p.n(), p.m());
    let rel = p.relation(i, j);
    let mut out = Element::term(n, m, Exponents::unit(n, i).mul(&Exponents::unit(n, j)), rel.c.clone());
    for (k, l) in rel.tail.linear.iter().enumerate() {
        out.add_term(Exponents::unit(n, k), l.clone());
    }
    out.add_term(Exponents::zero(n), rel.tail.constant.clone());
    out
}

/// Position of the leftmost or rightmost redex of a word: a variable
/// followed by a scalar, or an inverted pair of variables.
pub(crate) fn find_redex(atoms: &[Atom], strategy: Strategy) -> Option<usize> {
    let is_redex = |k: usize| match (&atoms[k], &atoms[k + 1]) {
        (Atom::Var(_), Atom::Scalar(_)) => true,
        (Atom::Var(a), Atom::Var(b)) => a > b,
        _ => false,
    };
    let len = atoms.len();
    if len < 2 {
        return None;
    }
    match strategy {
        Strategy::Leftmost => (0..len - 1).find(|&k| is_redex(k)),
        Strategy::Rightmost => (0..len - 1).rev().find(|&k| is_redex(k)),
    }
}

/// Apply the single rewrite rule at redex position `pos`, returning the
/// resulting words (each with implicit coefficient one).
pub(crate) fn rewrite_at(p: &Presentation, atoms: &[Atom], pos: usize) -> Vec<Vec<Atom>> {
    let prefix = &atoms[..pos];
    let suffix = &atoms[pos + 2..];
    let splice = |mid: Vec<Atom>| {
        let mut w = Vec::with_capacity(atoms.len() + 1);
        w.extend_from_slice(prefix);
        w.extend(mid);
        w.extend_from_slice(suffix);
        w
    };
    let mut out = Vec::new();
    match (&atoms[pos], &atoms[pos + 1]) {
        (Atom::Var(i), Atom::Scalar(r)) => {
            let s = p.sigma(*i).apply(r).expect("arity");
            if !s.is_zero() {
                out.push(splice(vec![Atom::Scalar(s), Atom::Var(*i)]));
            }
            let d = p.delta(*i).apply_unchecked(p.sigma(*i), r);
            if !d.is_zero() {
                out.push(splice(vec![Atom::Scalar(d)]));
            }
        }
        (Atom::Var(j), Atom::Var(i)) if j > i => {
            let rel = p.relation(*i, *j);
            if !rel.c.is_zero() {
                out.push(splice(vec![Atom::Scalar(rel.c.clone()), Atom::Var(*i), Atom::Var(*j)]));
            }
            for (k, l) in rel.tail.linear.iter().enumerate() {
                if !l.is_zero() {
                    out.push(splice(vec![Atom::Scalar(l.clone()), Atom::Var(k)]));
                }
            }
            if !rel.tail.constant.is_zero() {
                out.push(splice(vec![Atom::Scalar(rel.tail.constant.clone())]));
            }
        }
        _ => panic!("no redex at position {}", pos),
    }
    out
}

/// Word used as a map key; scalars compare structurally.
#[derive(Clone, Debug)]
struct WordKey(Vec<Atom>);

fn atom_cmp(a: &Atom, b: &Atom) -> Ordering {
    match (a, b) {
        (Atom::Var(x), Atom::Var(y)) => x.cmp(y),
        (Atom::Var(_), Atom::Scalar(_)) => Ordering::Less,
        (Atom::Scalar(_), Atom::Var(_)) => Ordering::Greater,
        (Atom::Scalar(r), Atom::Scalar(s)) => r.structural_cmp(s),
    }
}

impl Ord for WordKey {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            let o = atom_cmp(a, b);
            if o != Ordering::Equal {
                return o;
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for WordKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for WordKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for WordKey {}

/// Rewrites a sum of words to normal form, merging identical pending words.
pub(crate) struct Reducer<'p> {
    p: &'p Presentation,
    strategy: Strategy,
    pending: BTreeMap<WordKey, BaseElem>,
    result: Element,
}

impl<'p> Reducer<'p> {
    pub fn new(p: &'p Presentation, strategy: Strategy) -> Self {
        Reducer { p, strategy, pending: BTreeMap::new(), result: Element::zero(p.n(), p.m()) }
    }

    /// Queue `coeff * word`.
    pub fn push(&mut self, coeff: BaseElem, atoms: Vec<Atom>) {
        let (coeff, atoms) = self.tidy(coeff, atoms);
        if coeff.is_zero() {
            return;
        }
        if find_redex(&atoms, Strategy::Leftmost).is_none() {
            let mut alpha = Exponents::zero(self.p.n());
            for a in &atoms {
                if let Atom::Var(i) = a {
                    alpha = alpha.with_incremented(*i);
                }
            }
            self.result.add_term(alpha, coeff);
            return;
        }
        let key = WordKey(atoms);
        match self.pending.get_mut(&key) {
            Some(c) => {
                *c = c.add(&coeff);
                if c.is_zero() {
                    self.pending.remove(&key);
                }
            }
            None => {
                self.pending.insert(key, coeff);
            }
        }
    }

    /// Absorb leading scalars and central constants into the coefficient and
    /// merge adjacent scalars.
    fn tidy(&self, mut coeff: BaseElem, atoms: Vec<Atom>) -> (BaseElem, Vec<Atom>) {
        let mut out: Vec<Atom> = Vec::with_capacity(atoms.len());
        for a in atoms {
            match a {
                Atom::Scalar(r) => {
                    if let Some(k) = r.as_scalar() {
                        coeff = coeff.scale(&k);
                    } else if out.is_empty() {
                        coeff = coeff.mul(&r);
                    } else if let Some(Atom::Scalar(prev)) = out.last_mut() {
                        *prev = prev.mul(&r);
                    } else {
                        out.push(Atom::Scalar(r));
                    }
                }
                v => out.push(v),
            }
        }
        (coeff, out)
    }

    pub fn run(mut self) -> Element {
        while let Some((WordKey(atoms), coeff)) = self.pending.pop_first() {
            let pos = find_redex(&atoms, self.strategy).expect("pending words are reducible");
            for w in rewrite_at(self.p, &atoms, pos) {
                self.push(coeff.clone(), w);
            }
        }
        self.result
    }
}

/// Reduce a word to its normal form.
pub fn normal_form(p: &Presentation, w: &FreeWord, strategy: Strategy) -> Element {
    let mut red = Reducer::new(p, strategy);
    red.push(BaseElem::one(p.m()), w.atoms.clone());
    red.run()
}

/// Reduce a parsed expression to normal form.
pub fn normal_form_expr(p: &Presentation, expr: &FreeExpr, strategy: Strategy) -> Element {
    let mut red = Reducer::new(p, strategy);
    for (c, w) in FreeWord::from_expr(expr, p.m()) {
        red.push(BaseElem::scalar(p.m(), c), w.atoms);
    }
    red.run()
}
