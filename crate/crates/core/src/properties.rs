//! Transfer-theorem report: the hypotheses of each transfer result are
//! checked exactly on the presentation; facts about the base ring
//! `K[t_1..t_m]` are assumed and labelled as such.

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::presentation::{validate_axioms, Presentation};
use crate::rewrite::check_pbw_consistency;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PropertyError {
    #[error("presentation is not certified: {0}")]
    UncertifiedPresentation(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Applies {
    Yes,
    /// Reserved: the transfer results only ever conclude, never refute.
    No,
    HypothesesNotMet,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Computed,
    BaseRingFact,
}

impl Serialize for Basis {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Basis::Computed => "computed",
            Basis::BaseRingFact => "base-ring fact (assumed, cited)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    /// `None` when the check is outside what can be decided.
    pub pass: Option<bool>,
    pub witness: Option<String>,
    pub basis: Basis,
}

impl Hypothesis {
    fn computed(name: &str, pass: Option<bool>, witnesses: Vec<String>) -> Self {
        let witness = (!witnesses.is_empty()).then(|| witnesses.join("; "));
        Hypothesis { name: name.into(), pass, witness, basis: Basis::Computed }
    }

    fn fact(name: &str, citation: &str) -> Self {
        Hypothesis { name: name.into(), pass: Some(true), witness: Some(citation.into()), basis: Basis::BaseRingFact }
    }
}

fn verdict(hyps: &[Hypothesis]) -> Applies {
    if hyps.iter().any(|h| h.pass == Some(false)) {
        Applies::HypothesesNotMet
    } else if hyps.iter().any(|h| h.pass.is_none()) {
        Applies::Unknown
    } else {
        Applies::Yes
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Property {
    #[serde(rename = "noetherian")]
    Noetherian,
    #[serde(rename = "auslander_gorenstein")]
    AuslanderGorenstein,
    #[serde(rename = "auslander_regular")]
    AuslanderRegular,
    #[serde(rename = "cohen_macaulay")]
    CohenMacaulay,
    #[serde(rename = "strongly_noetherian")]
    StronglyNoetherian,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyRecord {
    pub property: Property,
    pub applies: Applies,
    pub hypotheses_checked: Vec<Hypothesis>,
    pub citation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub records: Vec<PropertyRecord>,
}

impl PropertyReport {
    pub fn get(&self, p: Property) -> &PropertyRecord {
        self.records.iter().find(|r| r.property == p).expect("every property is reported")
    }

    /// No record says "yes" while one of its hypotheses failed or is undecided.
    pub fn is_monotone(&self) -> bool {
        self.records
            .iter()
            .all(|r| r.applies != Applies::Yes || r.hypotheses_checked.iter().all(|h| h.pass == Some(true)))
    }
}

const CITE_NOETHERIAN: &str = "Hilbert basis theorem for skew PBW extensions: a bijective skew PBW extension \
of a left (right) Noetherian ring is left (right) Noetherian";
const CITE_AG: &str = "a bijective skew PBW extension of an Auslander-Gorenstein ring is \
Auslander-Gorenstein (Gr(A) is an iterated skew polynomial ring with bijective twists and A is Zariskian)";
const CITE_AR: &str = "a bijective skew PBW extension of an Auslander regular ring is Auslander regular \
(Gr(A) is an iterated skew polynomial ring with bijective twists and A is Zariskian)";
const CITE_CM: &str = "a bijective skew PBW extension of a connected graded Auslander-Gorenstein and \
Cohen-Macaulay K-algebra R with sigma_j(R_i) contained in R_i for all i, j is Cohen-Macaulay";
const CITE_SN: &str = "a bijective skew PBW extension of a left strongly Noetherian K-algebra is left \
strongly Noetherian";
const CITE_GK: &str = "GKdim(A) = GKdim(R) + n for a bijective skew PBW extension of R when sigma_n(V) is \
contained in a finite dimensional generating subspace V of R";

const FACT_NOETHERIAN: &str = "K[t_1..t_m] is Noetherian by the classical Hilbert basis theorem";
const FACT_AG: &str = "fields and polynomial rings over a field are Auslander-Gorenstein \
(commutative regular rings of finite global dimension)";
const FACT_AR: &str = "fields and polynomial rings over a field are Auslander regular \
(commutative Noetherian rings of finite global dimension)";
const FACT_CM: &str = "polynomial rings over a field are Cohen-Macaulay with respect to GK dimension";
const FACT_SN: &str = "commutative finitely generated K-algebras are strongly Noetherian";
const FACT_GK: &str = "GKdim(K[t_1..t_m]) = m";

/// Bijectivity of every sigma and invertibility of every `c` in `R`.
fn bijective_hypothesis(p: &Presentation) -> Hypothesis {
    let syms = p.symbols();
    let mut witnesses = Vec::new();
    let mut pass = Some(true);
    for i in 0..p.n() {
        match p.sigma(i).bijectivity() {
            Some(true) => {}
            Some(false) => {
                pass = Some(false);
                witnesses.push(format!("sigma of {} is not an automorphism", syms.vars[i]));
            }
            None => {
                if pass == Some(true) {
                    pass = None;
                }
                witnesses.push(format!("bijectivity of sigma of {} is undecided", syms.vars[i]));
            }
        }
    }
    for (&(i, j), rel) in p.relations() {
        if !rel.c.as_scalar().is_some_and(|c| !c.is_zero()) {
            let (l, r) = p.pair_label(i, j);
            pass = Some(false);
            witnesses.push(format!("c for {}*{} is {}, not a unit", l, r, syms.render_base(&rel.c)));
        }
    }
    Hypothesis::computed("bijective", pass, witnesses)
}

/// Images of generators, over all sigmas, that fail `ok`.
fn failing_images(p: &Presentation, ok: impl Fn(&crate::coeffs::BaseElem) -> bool) -> Vec<String> {
    let syms = p.symbols();
    let mut out = Vec::new();
    for i in 0..p.n() {
        for img in p.sigma(i).images() {
            if !ok(img) {
                let s = syms.render_base(img);
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GkValue {
    Value(u32),
    NotCertified,
}

impl Serialize for GkValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            GkValue::Value(v) => s.serialize_u32(*v),
            GkValue::NotCertified => s.serialize_str("not_certified"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GkReport {
    pub value: GkValue,
    pub hypotheses: Vec<Hypothesis>,
    pub citation: String,
}

pub fn gkdim_report(p: &Presentation) -> GkReport {
    let frame = failing_images(p, |img| img.degree().unwrap_or(0) <= 1);
    let hypotheses = vec![
        bijective_hypothesis(p),
        Hypothesis::computed("frame_stable", Some(frame.is_empty()), frame),
        Hypothesis::fact("base_gkdim", FACT_GK),
    ];
    let value = if verdict(&hypotheses) == Applies::Yes {
        GkValue::Value((p.m() + p.n()) as u32)
    } else {
        GkValue::NotCertified
    };
    GkReport { value, hypotheses, citation: CITE_GK.into() }
}

fn record(property: Property, hypotheses: Vec<Hypothesis>, citation: &str, note: Option<String>) -> PropertyRecord {
    PropertyRecord { property, applies: verdict(&hypotheses), hypotheses_checked: hypotheses, citation: citation.into(), note }
}

/// Requires valid axioms and an all-pass overlap certificate.
pub fn property_report(p: &Presentation) -> Result<PropertyReport, PropertyError> {
    let v = validate_axioms(p);
    if let Some(bad) = v.checks.iter().find(|c| !c.pass) {
        return Err(PropertyError::UncertifiedPresentation(format!("axiom check {} failed", bad.name)));
    }
    let cert = check_pbw_consistency(p);
    if let Some(o) = cert.failures().next() {
        return Err(PropertyError::UncertifiedPresentation(format!(
            "overlap {} does not resolve",
            o.kind.word_label(p.symbols())
        )));
    }
    let bij = bijective_hypothesis(p);
    let graded = failing_images(p, |img| img.is_homogeneous_of_degree(1));
    let cm_note = (p.m() == 0).then(|| "R = K: the grading condition on sigma is vacuous".to_string());
    let records = vec![
        record(
            Property::Noetherian,
            vec![bij.clone(), Hypothesis::fact("base_noetherian", FACT_NOETHERIAN)],
            CITE_NOETHERIAN,
            None,
        ),
        record(
            Property::AuslanderGorenstein,
            vec![bij.clone(), Hypothesis::fact("base_auslander_gorenstein", FACT_AG)],
            CITE_AG,
            None,
        ),
        record(
            Property::AuslanderRegular,
            vec![bij.clone(), Hypothesis::fact("base_auslander_regular", FACT_AR)],
            CITE_AR,
            None,
        ),
        record(
            Property::CohenMacaulay,
            vec![
                bij.clone(),
                Hypothesis::computed("sigma_preserves_grading", Some(graded.is_empty()), graded),
                Hypothesis::fact("base_auslander_gorenstein", FACT_AG),
                Hypothesis::fact("base_cohen_macaulay", FACT_CM),
            ],
            CITE_CM,
            cm_note,
        ),
        record(
            Property::StronglyNoetherian,
            vec![bij, Hypothesis::fact("base_strongly_noetherian", FACT_SN)],
            CITE_SN,
            None,
        ),
    ];
    Ok(PropertyReport { records })
}
