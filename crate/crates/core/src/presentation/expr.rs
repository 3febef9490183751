use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use super::lexer::{tokenize, Pos, Tok, Token};
use super::{PresentationError, Symbols};
use crate::coeffs::{BaseElem, Exponents, ParamScalar};

/// A generator of the free algebra on base and extension variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    Base(usize),
    Var(usize),
}

/// Element of the free associative `K`-algebra on the base generators and
/// extension variables, as produced by the expression parser. Nothing is
/// reordered: `x*t` and `t*x` are different words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeExpr {
    terms: BTreeMap<Vec<Sym>, ParamScalar>,
}

impl FreeExpr {
    pub fn zero() -> Self {
        FreeExpr::default()
    }

    pub fn scalar(c: ParamScalar) -> Self {
        let mut f = FreeExpr::zero();
        f.add_term(Vec::new(), c);
        f
    }

    pub fn word(word: Vec<Sym>) -> Self {
        let mut f = FreeExpr::zero();
        f.add_term(word, ParamScalar::one());
        f
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Sym>, &ParamScalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, w: Vec<Sym>, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(ParamScalar::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &FreeExpr) -> FreeExpr {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> FreeExpr {
        FreeExpr { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &FreeExpr) -> FreeExpr {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FreeExpr) -> FreeExpr {
        let mut out = FreeExpr::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, k: &ParamScalar) -> FreeExpr {
        let mut out = FreeExpr::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * k);
        }
        out
    }

    /// The value as a scalar of `K`, if no generator occurs.
    pub fn as_scalar(&self) -> Option<ParamScalar> {
        match self.terms.len() {
            0 => Some(ParamScalar::zero()),
            1 => {
                let (w, c) = self.terms.iter().next().unwrap();
                w.is_empty().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// The value as an element of `R`, if only base generators occur.
    pub fn to_base(&self, arity: usize) -> Option<BaseElem> {
        let mut acc = BaseElem::zero(arity);
        for (w, c) in &self.terms {
            let mut e = Exponents::zero(arity);
            for s in w {
                match s {
                    Sym::Base(k) => e = e.with_incremented(*k),
                    Sym::Var(_) => return None,
                }
            }
            acc = acc.add(&BaseElem::term(arity, e, c.clone()));
        }
        Some(acc)
    }
}

pub(crate) struct Cursor<'a> {
    toks: &'a [Token],
    i: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [Token]) -> Self {
        Cursor { toks, i: 0 }
    }

    pub fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.i)
    }

    pub fn next(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.i);
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    pub fn at_end(&self) -> bool {
        self.i >= self.toks.len()
    }

    pub fn pos(&self) -> Pos {
        self.peek()
            .map(|t| t.pos)
            .or_else(|| self.toks.last().map(|t| Pos { line: t.pos.line, col: t.pos.col + 1 }))
            .unwrap_or(Pos { line: 1, col: 1 })
    }

    pub fn error(&self, message: impl Into<String>) -> PresentationError {
        let p = self.pos();
        PresentationError::Parse { line: p.line, col: p.col, message: message.into() }
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().is_some_and(|t| &t.tok == tok) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<(), PresentationError> {
        if self.eat(tok) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |t| t.tok.describe());
            Err(self.error(format!("expected {}, found {}", tok.describe(), found)))
        }
    }

    pub fn ident(&mut self) -> Result<(String, Pos), PresentationError> {
        match self.peek() {
            Some(Token { tok: Tok::Ident(s), pos }) => {
                self.i += 1;
                Ok((s.clone(), *pos))
            }
            other => {
                let found = other.map_or("end of input".to_string(), |t| t.tok.describe());
                Err(self.error(format!("expected identifier, found {}", found)))
            }
        }
    }

    pub fn expr(&mut self, syms: &Symbols) -> Result<FreeExpr, PresentationError> {
        let mut acc = self.product(syms)?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc.add(&self.product(syms)?);
            } else if self.eat(&Tok::Minus) {
                acc = acc.sub(&self.product(syms)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self, syms: &Symbols) -> Result<FreeExpr, PresentationError> {
        let mut acc = self.unary(syms)?;
        loop {
            if self.eat(&Tok::Star) {
                acc = acc.mul(&self.unary(syms)?);
            } else if self.peek().is_some_and(|t| t.tok == Tok::Slash) {
                let pos = self.pos();
                self.i += 1;
                let divisor = self.unary(syms)?;
                let d = divisor.as_scalar().ok_or_else(|| PresentationError::Parse {
                    line: pos.line,
                    col: pos.col,
                    message: "division is only allowed by scalars of K".into(),
                })?;
                let inv = d.inv().map_err(|_| PresentationError::Parse {
                    line: pos.line,
                    col: pos.col,
                    message: "division by zero".into(),
                })?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self, syms: &Symbols) -> Result<FreeExpr, PresentationError> {
        if self.eat(&Tok::Minus) {
            return Ok(self.unary(syms)?.neg());
        }
        let base = self.atom(syms)?;
        if self.eat(&Tok::Caret) {
            let k = match self.next() {
                Some(Token { tok: Tok::Int(k), .. }) => k.to_u32(),
                _ => None,
            }
            .ok_or_else(|| self.error("expected a non-negative integer exponent"))?;
            let mut out = FreeExpr::scalar(ParamScalar::one());
            for _ in 0..k {
                out = out.mul(&base);
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn atom(&mut self, syms: &Symbols) -> Result<FreeExpr, PresentationError> {
        match self.peek() {
            Some(Token { tok: Tok::Int(k), .. }) => {
                self.i += 1;
                Ok(FreeExpr::scalar(ParamScalar::from_bigint(k.clone())))
            }
            Some(Token { tok: Tok::Ident(name), pos }) => {
                self.i += 1;
                if let Some(k) = syms.params.iter().position(|p| p == name) {
                    return Ok(FreeExpr::scalar(ParamScalar::param(k)));
                }
                if let Some(k) = syms.base.iter().position(|p| p == name) {
                    return Ok(FreeExpr::word(vec![Sym::Base(k)]));
                }
                if let Some(k) = syms.vars.iter().position(|p| p == name) {
                    return Ok(FreeExpr::word(vec![Sym::Var(k)]));
                }
                Err(PresentationError::UndeclaredSymbol { name: name.clone(), line: pos.line, col: pos.col })
            }
            Some(Token { tok: Tok::LParen, .. }) => {
                self.i += 1;
                let e = self.expr(syms)?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            other => {
                let found = other.map_or("end of input".to_string(), |t| t.tok.describe());
                Err(self.error(format!("expected a number, name or `(`, found {}", found)))
            }
        }
    }
}

/// Parse a standalone expression over the symbols of a presentation.
pub fn parse_expression(src: &str, syms: &Symbols) -> Result<FreeExpr, PresentationError> {
    let toks = tokenize(src)?;
    let mut cur = Cursor::new(&toks);
    let e = cur.expr(syms)?;
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(e)
}
