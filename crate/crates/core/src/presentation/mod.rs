//! Skew PBW extension presentations: data model, text format, validation
//! and shape classification.

mod emit;
mod expr;
mod lexer;
mod parse;

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::coeffs::{push_signed, render_term, validate_maps, BaseElem, DerivMap, EndoMap, Exponents, ParamScalar};
use crate::report::Check;

pub use emit::emit;
pub use expr::{parse_expression, FreeExpr, Sym};
pub use parse::parse;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("{line}:{col}: {message}")]
    Parse { line: usize, col: usize, message: String },
    #[error("{line}:{col}: undeclared symbol `{name}`")]
    UndeclaredSymbol { name: String, line: usize, col: usize },
    #[error("{line}:{col}: `{name}` is declared twice")]
    DuplicateDeclaration { name: String, line: usize, col: usize },
    #[error("line {line}: a relation for {left}*{right} was already given")]
    DuplicateRelation { left: String, right: String, line: usize },
    #[error("line {line}: image of `{generator}` under {map} of `{var}` was already given")]
    DuplicateMapImage { map: String, var: String, generator: String, line: usize },
    #[error("line {line}: relation term `{monomial}` has degree above 1 in the extension variables")]
    HigherDegreeTail { monomial: String, line: usize },
    #[error("line {line}: {message}")]
    RelationShape { message: String, line: usize },
    #[error("parameter `{0}` has no assigned value")]
    MissingAssignment(String),
    #[error("`{0}` is not a parameter of this presentation")]
    UnknownParameter(String),
    #[error("specialization divides by zero in `{scalar}`")]
    SpecializationDivisionByZero { scalar: String },
    #[error("specialization makes c for {left}*{right} vanish")]
    CoefficientVanishes { left: String, right: String },
    #[error("malformed presentation: {0}")]
    Structure(String),
}

/// Names of parameters, base generators and extension variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Symbols {
    pub params: Vec<String>,
    pub base: Vec<String>,
    pub vars: Vec<String>,
}

impl Symbols {
    pub fn render_scalar(&self, c: &ParamScalar) -> String {
        c.render(&self.params)
    }

    pub fn render_base(&self, r: &BaseElem) -> String {
        r.render(&self.params, &self.base)
    }

    /// Render `r * x^alpha` as a summand, merging a single-term coefficient into the product.
    pub fn render_term(&self, r: &BaseElem, alpha: &Exponents) -> String {
        let xmono = alpha.render(&self.vars);
        if xmono.is_empty() {
            return self.render_base(r);
        }
        if r.term_count() == 1 {
            let (e, c) = r.terms().next().unwrap();
            let tmono = e.render(&self.base);
            let mono = if tmono.is_empty() { xmono } else { format!("{}*{}", tmono, xmono) };
            return render_term(c, &mono, &self.params);
        }
        format!("({})*{}", self.render_base(r), xmono)
    }

    /// Render a sum of terms given in the order they should appear.
    pub fn render_sum<'a, I>(&self, terms: I) -> String
    where
        I: IntoIterator<Item = (&'a BaseElem, &'a Exponents)>,
    {
        let mut out = String::new();
        for (idx, (r, alpha)) in terms.into_iter().enumerate() {
            push_signed(&mut out, idx == 0, &self.render_term(r, alpha));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// The part of a pair relation of degree at most one: `constant + sum_k linear[k] x_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tail {
    pub constant: BaseElem,
    pub linear: Vec<BaseElem>,
}

impl Tail {
    pub fn zero(n: usize, m: usize) -> Self {
        Tail { constant: BaseElem::zero(m), linear: vec![BaseElem::zero(m); n] }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.linear.iter().all(|l| l.is_zero())
    }
}

/// `x_j x_i = c x_i x_j + tail` for a pair `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub c: BaseElem,
    pub tail: Tail,
}

impl Relation {
    pub fn commuting(n: usize, m: usize) -> Self {
        Relation { c: BaseElem::one(m), tail: Tail::zero(n, m) }
    }
}

/// A skew PBW extension `A = sigma(R)<x_1, ..., x_n>` of `R = K[t_1..t_m]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    symbols: Symbols,
    sigma: Vec<EndoMap>,
    delta: Vec<DerivMap>,
    relations: BTreeMap<(usize, usize), Relation>,
}

impl Presentation {
    /// Assemble a presentation. Pairs missing from `relations` commute.
    pub fn new(
        symbols: Symbols,
        sigma: Vec<EndoMap>,
        delta: Vec<DerivMap>,
        mut relations: BTreeMap<(usize, usize), Relation>,
    ) -> Result<Self, PresentationError> {
        let n = symbols.vars.len();
        let m = symbols.base.len();
        if n == 0 {
            return Err(PresentationError::Structure("at least one extension variable is required".into()));
        }
        if sigma.len() != n || delta.len() != n {
            return Err(PresentationError::Structure("one sigma and one delta per variable".into()));
        }
        if sigma.iter().any(|s| s.arity() != m) || delta.iter().any(|d| d.images().len() != m) {
            return Err(PresentationError::Structure("map arity differs from the base ring".into()));
        }
        for (&(i, j), rel) in &relations {
            if i >= j || j >= n {
                return Err(PresentationError::Structure(format!("relation pair ({}, {}) is not oriented", i, j)));
            }
            if rel.c.arity() != m || rel.tail.linear.len() != n {
                return Err(PresentationError::Structure("relation data has the wrong shape".into()));
            }
        }
        for j in 0..n {
            for i in 0..j {
                relations.entry((i, j)).or_insert_with(|| Relation::commuting(n, m));
            }
        }
        Ok(Presentation { symbols, sigma, delta, relations })
    }

    pub fn symbols(&self) -> &Symbols {
        &self.symbols
    }

    /// Number of extension variables.
    pub fn n(&self) -> usize {
        self.symbols.vars.len()
    }

    /// Number of base generators.
    pub fn m(&self) -> usize {
        self.symbols.base.len()
    }

    pub fn sigma(&self, i: usize) -> &EndoMap {
        &self.sigma[i]
    }

    pub fn delta(&self, i: usize) -> &DerivMap {
        &self.delta[i]
    }

    /// Relation for `x_j x_i` with `i < j`.
    pub fn relation(&self, i: usize, j: usize) -> &Relation {
        &self.relations[&(i, j)]
    }

    pub fn relations(&self) -> impl Iterator<Item = (&(usize, usize), &Relation)> {
        self.relations.iter()
    }

    pub fn pair_label(&self, i: usize, j: usize) -> (String, String) {
        (self.symbols.vars[j].clone(), self.symbols.vars[i].clone())
    }

    /// Same presentation with every delta and every tail set to zero.
    pub(crate) fn without_lower_order(&self) -> Presentation {
        let (n, m) = (self.n(), self.m());
        Presentation {
            symbols: self.symbols.clone(),
            sigma: self.sigma.clone(),
            delta: vec![DerivMap::zero(m); n],
            relations: self
                .relations
                .iter()
                .map(|(&k, r)| (k, Relation { c: r.c.clone(), tail: Tail::zero(n, m) }))
                .collect(),
        }
    }
}

/// Outcome of a batch of checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn pair_witness(i: usize, j: usize) -> String {
    format!("({},{})", i + 1, j + 1)
}

/// Checks the extension axioms that can be decided locally. The PBW basis
/// property itself is certified by the overlap check in `rewrite`.
pub fn validate_axioms(p: &Presentation) -> ValidationReport {
    let syms = p.symbols();
    let mut c_bad = Vec::new();
    for (&(i, j), rel) in p.relations() {
        if rel.c.is_zero() {
            c_bad.push(pair_witness(i, j));
        }
    }
    let mut inv_bad = Vec::new();
    let mut deriv_bad = Vec::new();
    for i in 0..p.n() {
        let v = validate_maps(p.sigma(i), p.delta(i));
        if v.inverse_verified == Some(false) {
            for k in v.inverse_witnesses {
                inv_bad.push(format!("{}: {}", syms.vars[i], syms.base[k]));
            }
        }
        for (a, b) in v.derivation_witnesses {
            deriv_bad.push(format!("{}: ({}, {})", syms.vars[i], syms.base[a], syms.base[b]));
        }
    }
    ValidationReport {
        checks: vec![
            Check::from_witnesses("c_nonzero", &c_bad),
            Check::from_witnesses("sigma_inverse", &inv_bad),
            Check::from_witnesses("delta_pair_symmetry", &deriv_bad),
            // tails of degree > 1 cannot be represented; the parser rejects them
            Check::pass("tail_degree"),
        ],
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeReport {
    pub quasi_commutative: bool,
    pub bijective: bool,
    pub finitely_graded: bool,
    pub witnesses: Vec<String>,
}

pub fn classify_shape(p: &Presentation) -> ShapeReport {
    let syms = p.symbols();
    let mut witnesses = Vec::new();
    let mut quasi = true;
    let mut bijective = true;
    let mut tails_zero = true;
    for i in 0..p.n() {
        if !p.delta(i).is_zero() {
            quasi = false;
            witnesses.push(format!("not quasi-commutative: delta of {} is nonzero", syms.vars[i]));
        }
        match p.sigma(i).bijectivity() {
            Some(true) => {}
            Some(false) => {
                bijective = false;
                witnesses.push(format!("not bijective: sigma of {} is not an automorphism", syms.vars[i]));
            }
            None => {
                bijective = false;
                witnesses.push(format!(
                    "not bijective: no verified inverse for sigma of {} and bijectivity is undecided",
                    syms.vars[i]
                ));
            }
        }
    }
    for (&(i, j), rel) in p.relations() {
        let (l, r) = p.pair_label(i, j);
        if !rel.tail.is_zero() {
            quasi = false;
            tails_zero = false;
            witnesses.push(format!("not quasi-commutative: relation {}*{} has a nonzero tail", l, r));
        }
        match rel.c.as_scalar() {
            Some(c) if !c.is_zero() => {}
            _ => {
                bijective = false;
                witnesses.push(format!(
                    "not bijective: c for {}*{} is `{}`, not a unit of K",
                    l,
                    r,
                    syms.render_base(&rel.c)
                ));
            }
        }
    }
    let finitely_graded = p.m() == 0 && tails_zero;
    if p.m() > 0 {
        witnesses.push(format!("not finitely graded: base ring has {} generator(s)", p.m()));
    } else if !tails_zero {
        witnesses.push("not finitely graded: inhomogeneous relations".to_string());
    }
    ShapeReport { quasi_commutative: quasi, bijective, finitely_graded, witnesses }
}

/// Substitute exact rational values for every parameter.
pub fn specialize(
    p: &Presentation,
    assignment: &BTreeMap<String, BigRational>,
) -> Result<Presentation, PresentationError> {
    let syms = p.symbols();
    for name in assignment.keys() {
        if !syms.params.contains(name) {
            return Err(PresentationError::UnknownParameter(name.clone()));
        }
    }
    let values: Vec<BigRational> = syms
        .params
        .iter()
        .map(|name| assignment.get(name).cloned().ok_or_else(|| PresentationError::MissingAssignment(name.clone())))
        .collect::<Result<_, _>>()?;
    let spec = |r: &BaseElem| -> Result<BaseElem, PresentationError> {
        r.map_coeffs(|c| c.eval(&values).map(|v| ParamScalar::from_rational(&v)))
            .map_err(|_| PresentationError::SpecializationDivisionByZero {
                scalar: syms.render_base(r),
            })
    };
    let spec_all = |v: &[BaseElem]| -> Result<Vec<BaseElem>, PresentationError> { v.iter().map(spec).collect() };

    let mut sigma = Vec::new();
    let mut delta = Vec::new();
    for i in 0..p.n() {
        let s = p.sigma(i);
        let inverse = s.inverse_images().map(spec_all).transpose()?;
        sigma.push(EndoMap::new(spec_all(s.images())?, inverse));
        delta.push(DerivMap::new(spec_all(p.delta(i).images())?));
    }
    let mut relations = BTreeMap::new();
    for (&(i, j), rel) in p.relations() {
        let c = spec(&rel.c)?;
        if c.is_zero() && !rel.c.is_zero() {
            let (left, right) = p.pair_label(i, j);
            return Err(PresentationError::CoefficientVanishes { left, right });
        }
        let tail = Tail { constant: spec(&rel.tail.constant)?, linear: spec_all(&rel.tail.linear)? };
        relations.insert((i, j), Relation { c, tail });
    }
    let symbols = Symbols { params: Vec::new(), base: syms.base.clone(), vars: syms.vars.clone() };
    Presentation::new(symbols, sigma, delta, relations)
}
