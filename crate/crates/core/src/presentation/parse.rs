use std::collections::{BTreeMap, HashSet};

use super::expr::{Cursor, FreeExpr, Sym};
use super::lexer::{tokenize, Pos, Tok};
use super::{Presentation, PresentationError, Relation, Symbols, Tail};
use crate::coeffs::{BaseElem, DerivMap, EndoMap, Exponents};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum MapKind {
    Sigma,
    SigmaInv,
    Delta,
}

impl MapKind {
    fn label(self) -> &'static str {
        match self {
            MapKind::Sigma => "sigma",
            MapKind::SigmaInv => "sigmainv",
            MapKind::Delta => "delta",
        }
    }
}

/// Parse the line-oriented presentation format.
///
/// Unspecified sigma images default to the identity, delta images to zero
/// and pair relations to `x_j x_i = x_i x_j`.
pub fn parse(source: &str) -> Result<Presentation, PresentationError> {
    let toks = tokenize(source)?;
    let mut cur = Cursor::new(&toks);
    let mut syms = Symbols::default();
    let mut declared: HashSet<String> = HashSet::new();
    let mut seen_decl: HashSet<&'static str> = HashSet::new();
    let mut images: BTreeMap<(MapKind, usize, usize), BaseElem> = BTreeMap::new();
    let mut relations: BTreeMap<(usize, usize), Relation> = BTreeMap::new();
    let mut body_started = false;

    while !cur.at_end() {
        let (kw, kw_pos) = cur.ident()?;
        match kw.as_str() {
            "params" | "base" | "vars" => {
                let key: &'static str = match kw.as_str() {
                    "params" => "params",
                    "base" => "base",
                    _ => "vars",
                };
                if body_started {
                    return Err(err_at(kw_pos, format!("`{}` must come before maps and relations", kw)));
                }
                if !seen_decl.insert(key) {
                    return Err(err_at(kw_pos, format!("`{}` declared more than once", kw)));
                }
                let mut names = Vec::new();
                loop {
                    let (name, pos) = cur.ident()?;
                    if is_keyword(&name) || !declared.insert(name.clone()) {
                        return Err(PresentationError::DuplicateDeclaration { name, line: pos.line, col: pos.col });
                    }
                    names.push(name);
                    if !cur.eat(&Tok::Comma) {
                        break;
                    }
                }
                cur.expect(&Tok::Semi)?;
                match key {
                    "params" => syms.params = names,
                    "base" => syms.base = names,
                    _ => syms.vars = names,
                }
            }
            "sigma" | "sigmainv" | "delta" => {
                body_started = true;
                require_vars(&syms, kw_pos)?;
                let kind = match kw.as_str() {
                    "sigma" => MapKind::Sigma,
                    "sigmainv" => MapKind::SigmaInv,
                    _ => MapKind::Delta,
                };
                let (var, vpos) = cur.ident()?;
                let i = lookup(&syms.vars, &var, vpos)?;
                cur.expect(&Tok::Colon)?;
                let (gen, gpos) = cur.ident()?;
                let k = lookup(&syms.base, &gen, gpos)?;
                cur.expect(&Tok::Arrow)?;
                let epos = cur.pos();
                let e = cur.expr(&syms)?;
                cur.expect(&Tok::Semi)?;
                let img = e
                    .to_base(syms.base.len())
                    .ok_or_else(|| err_at(epos, "map images must lie in the base ring"))?;
                if images.insert((kind, i, k), img).is_some() {
                    return Err(PresentationError::DuplicateMapImage {
                        map: kind.label().into(),
                        var,
                        generator: gen,
                        line: kw_pos.line,
                    });
                }
            }
            "rel" => {
                body_started = true;
                require_vars(&syms, kw_pos)?;
                let lhs = cur.expr(&syms)?;
                cur.expect(&Tok::Eq)?;
                let rhs = cur.expr(&syms)?;
                cur.expect(&Tok::Semi)?;
                let ((i, j), rel) = solve_relation(&syms, &lhs.sub(&rhs), kw_pos.line)?;
                if relations.insert((i, j), rel).is_some() {
                    return Err(PresentationError::DuplicateRelation {
                        left: syms.vars[j].clone(),
                        right: syms.vars[i].clone(),
                        line: kw_pos.line,
                    });
                }
            }
            _ => return Err(err_at(kw_pos, format!("unknown statement `{}`", kw))),
        }
    }
    require_vars(&syms, cur.pos())?;

    let (n, m) = (syms.vars.len(), syms.base.len());
    let mut sigma = Vec::with_capacity(n);
    let mut delta = Vec::with_capacity(n);
    for i in 0..n {
        let gen = |k: usize| BaseElem::generator(m, k);
        let forward: Vec<BaseElem> = (0..m)
            .map(|k| images.get(&(MapKind::Sigma, i, k)).cloned().unwrap_or_else(|| gen(k)))
            .collect();
        let has_inverse = (0..m).any(|k| images.contains_key(&(MapKind::SigmaInv, i, k)));
        let identity = forward.iter().enumerate().all(|(k, f)| *f == gen(k));
        let inverse = if has_inverse {
            Some(
                (0..m)
                    .map(|k| images.get(&(MapKind::SigmaInv, i, k)).cloned().unwrap_or_else(|| gen(k)))
                    .collect(),
            )
        } else if identity {
            Some(forward.clone())
        } else {
            None
        };
        sigma.push(EndoMap::new(forward, inverse));
        delta.push(DerivMap::new(
            (0..m)
                .map(|k| images.get(&(MapKind::Delta, i, k)).cloned().unwrap_or_else(|| BaseElem::zero(m)))
                .collect(),
        ));
    }
    Presentation::new(syms, sigma, delta, relations)
}

fn is_keyword(s: &str) -> bool {
    matches!(s, "params" | "base" | "vars" | "sigma" | "sigmainv" | "delta" | "rel")
}

fn err_at(pos: Pos, message: impl Into<String>) -> PresentationError {
    PresentationError::Parse { line: pos.line, col: pos.col, message: message.into() }
}

fn require_vars(syms: &Symbols, pos: Pos) -> Result<(), PresentationError> {
    if syms.vars.is_empty() {
        Err(err_at(pos, "`vars` must be declared first"))
    } else {
        Ok(())
    }
}

fn lookup(names: &[String], name: &str, pos: Pos) -> Result<usize, PresentationError> {
    names.iter().position(|n| n == name).ok_or_else(|| PresentationError::UndeclaredSymbol {
        name: name.to_string(),
        line: pos.line,
        col: pos.col,
    })
}

/// Render a word, collapsing runs of a repeated generator into powers.
fn render_word(syms: &Symbols, word: &[Sym]) -> String {
    let name = |s: &Sym| match s {
        Sym::Base(k) => syms.base[*k].clone(),
        Sym::Var(i) => syms.vars[*i].clone(),
    };
    let mut parts: Vec<String> = Vec::new();
    let mut idx = 0;
    while idx < word.len() {
        let mut run = 1;
        while idx + run < word.len() && word[idx + run] == word[idx] {
            run += 1;
        }
        parts.push(if run == 1 { name(&word[idx]) } else { format!("{}^{}", name(&word[idx]), run) });
        idx += run;
    }
    parts.join("*")
}

/// Bring `expr = 0` into the oriented form `x_j x_i = c x_i x_j + tail`.
fn solve_relation(
    syms: &Symbols,
    expr: &FreeExpr,
    line: usize,
) -> Result<((usize, usize), Relation), PresentationError> {
    let (n, m) = (syms.vars.len(), syms.base.len());
    let mut constant = BaseElem::zero(m);
    let mut linear = vec![BaseElem::zero(m); n];
    let mut quad: BTreeMap<(usize, usize), BaseElem> = BTreeMap::new();

    for (word, c) in expr.terms() {
        let split = word.iter().position(|s| matches!(s, Sym::Var(_))).unwrap_or(word.len());
        let (coeff_part, var_part) = word.split_at(split);
        let mut e = Exponents::zero(m);
        for s in coeff_part {
            if let Sym::Base(k) = s {
                e = e.with_incremented(*k);
            }
        }
        let mut vars = Vec::new();
        for s in var_part {
            match s {
                Sym::Var(i) => vars.push(*i),
                Sym::Base(_) => {
                    return Err(PresentationError::RelationShape {
                        message: format!(
                            "coefficient in `{}` must stand to the left of the variables",
                            render_word(syms, word)
                        ),
                        line,
                    })
                }
            }
        }
        let coeff = BaseElem::term(m, e, c.clone());
        match vars.as_slice() {
            [] => constant = constant.add(&coeff),
            [k] => linear[*k] = linear[*k].add(&coeff),
            [a, b] if a != b => {
                let entry = quad.entry((*a, *b)).or_insert_with(|| BaseElem::zero(m));
                *entry = entry.add(&coeff);
            }
            _ => {
                return Err(PresentationError::HigherDegreeTail {
                    monomial: render_word(syms, var_part_as_syms(&vars).as_slice()),
                    line,
                })
            }
        }
    }
    quad.retain(|_, v| !v.is_zero());

    let inverted: Vec<(usize, usize)> = quad.keys().filter(|(a, b)| a > b).copied().collect();
    let (j, i) = match inverted.as_slice() {
        [one] => *one,
        [] => {
            return Err(PresentationError::RelationShape {
                message: "relation must contain a product x_j*x_i with x_j declared after x_i".into(),
                line,
            })
        }
        _ => {
            return Err(PresentationError::RelationShape {
                message: "relation involves more than one pair of variables".into(),
                line,
            })
        }
    };
    for &(a, b) in quad.keys() {
        if (a, b) != (j, i) && (a, b) != (i, j) {
            return Err(PresentationError::HigherDegreeTail {
                monomial: render_word(syms, &[Sym::Var(a), Sym::Var(b)]),
                line,
            });
        }
    }
    let lead = quad[&(j, i)].clone();
    let lead = lead.as_scalar().filter(|c| !c.is_zero()).ok_or_else(|| PresentationError::RelationShape {
        message: format!(
            "cannot solve for {}*{}: its coefficient is not a nonzero scalar of K",
            syms.vars[j], syms.vars[i]
        ),
        line,
    })?;
    let factor = (-&lead).inv().expect("nonzero");
    let other = quad.get(&(i, j)).cloned().unwrap_or_else(|| BaseElem::zero(m));
    let rel = Relation {
        c: other.scale(&factor),
        tail: Tail {
            constant: constant.scale(&factor),
            linear: linear.iter().map(|l| l.scale(&factor)).collect(),
        },
    };
    Ok(((i, j), rel))
}

fn var_part_as_syms(vars: &[usize]) -> Vec<Sym> {
    vars.iter().map(|&i| Sym::Var(i)).collect()
}
