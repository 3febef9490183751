use serde::Serialize;

use super::element::Element;
use super::normal::{rewrite_at, Atom, Reducer, Strategy};
use crate::coeffs::BaseElem;
use crate::presentation::{Presentation, Symbols};
use crate::report::Check;

/// An ambiguity of the rewriting system; indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OverlapKind {
    /// `x_k x_j x_i` with `k > j > i`.
    Variables { k: usize, j: usize, i: usize },
    /// `x_j x_i t_l` with `j > i`.
    VariablesScalar { j: usize, i: usize, l: usize },
}

impl OverlapKind {
    /// 1-based index triple as reported, e.g. `(3,2,1)`.
    pub fn triple(&self) -> (usize, usize, usize) {
        match *self {
            OverlapKind::Variables { k, j, i } => (k + 1, j + 1, i + 1),
            OverlapKind::VariablesScalar { j, i, l } => (j + 1, i + 1, l + 1),
        }
    }

    pub fn word_label(&self, syms: &Symbols) -> String {
        match *self {
            OverlapKind::Variables { k, j, i } => format!("{}*{}*{}", syms.vars[k], syms.vars[j], syms.vars[i]),
            OverlapKind::VariablesScalar { j, i, l } => {
                format!("{}*{}*{}", syms.vars[j], syms.vars[i], syms.base[l])
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapResult {
    pub kind: OverlapKind,
    /// Normal form after first rewriting the left pair of the word.
    pub via_left: Element,
    /// Normal form after first rewriting the right pair of the word.
    pub via_right: Element,
    /// `via_left - via_right`; zero iff the ambiguity resolves.
    pub discrepancy: Element,
}

impl OverlapResult {
    pub fn pass(&self) -> bool {
        self.discrepancy.is_zero()
    }
}

/// Every overlap of the rewriting system with its resolution status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyCertificate {
    pub overlaps: Vec<OverlapResult>,
}

impl ConsistencyCertificate {
    pub fn all_pass(&self) -> bool {
        self.overlaps.iter().all(|o| o.pass())
    }

    pub fn failures(&self) -> impl Iterator<Item = &OverlapResult> {
        self.overlaps.iter().filter(|o| !o.pass())
    }

    pub fn to_checks(&self, syms: &Symbols) -> Vec<Check> {
        self.overlaps
            .iter()
            .map(|o| {
                let (a, b, c) = o.kind.triple();
                let name = format!("overlap {} ({},{},{})", o.kind.word_label(syms), a, b, c);
                if o.pass() {
                    Check::pass(name)
                } else {
                    Check::fail(name, o.discrepancy.render(syms))
                }
            })
            .collect()
    }

    pub fn to_json(&self, syms: &Symbols) -> serde_json::Value {
        serde_json::Value::Array(
            self.overlaps
                .iter()
                .map(|o| {
                    let (a, b, c) = o.kind.triple();
                    serde_json::json!({
                        "overlap": o.kind,
                        "indices": [a, b, c],
                        "word": o.kind.word_label(syms),
                        "pass": o.pass(),
                        "via_left": o.via_left.render(syms),
                        "via_right": o.via_right.render(syms),
                        "discrepancy": o.discrepancy.render(syms),
                    })
                })
                .collect(),
        )
    }
}

fn resolve(p: &Presentation, atoms: &[Atom], kind: OverlapKind) -> OverlapResult {
    let route = |pos: usize| {
        let mut red = Reducer::new(p, Strategy::Leftmost);
        for w in rewrite_at(p, atoms, pos) {
            red.push(BaseElem::one(p.m()), w);
        }
        red.run()
    };
    let via_left = route(0);
    let via_right = route(1);
    let discrepancy = via_left.sub(&via_right);
    OverlapResult { kind, via_left, via_right, discrepancy }
}

/// Resolve every ambiguity: `x_k x_j x_i` for `k > j > i` and `x_j x_i t_l`
/// for `j > i`. With degree-one tails these are all of them, so an all-pass
/// certificate means the system is confluent and the standard monomials are
/// a left `R`-basis.
pub fn check_pbw_consistency(p: &Presentation) -> ConsistencyCertificate {
    let (n, m) = (p.n(), p.m());
    let mut overlaps = Vec::new();
    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                let atoms = [Atom::Var(k), Atom::Var(j), Atom::Var(i)];
                overlaps.push(resolve(p, &atoms, OverlapKind::Variables { k, j, i }));
            }
        }
    }
    for j in 0..n {
        for i in 0..j {
            for l in 0..m {
                let atoms = [Atom::Var(j), Atom::Var(i), Atom::Scalar(BaseElem::generator(m, l))];
                overlaps.push(resolve(p, &atoms, OverlapKind::VariablesScalar { j, i, l }));
            }
        }
    }
    ConsistencyCertificate { overlaps }
}
