//! Point modules of finitely graded presentations: bilinear forms from the
//! quadratic relations, the matrix `M(u)` with `forms(u, v) = 0 <=> M(u) v = 0`,
//! its maximal minors, and chains of points (truncated point modules).

use std::collections::BTreeMap;

use serde_json::json;
use thiserror::Error;

use crate::coeffs::{BaseElem, Exponents, ParamScalar};
use crate::linalg;
use crate::presentation::{classify_shape, Presentation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PointsError {
    #[error("presentation is not finitely graded: {0}")]
    NotFinitelyGraded(String),
    #[error("all coordinates of the point are zero")]
    ZeroPoint,
    #[error("point has {found} coordinates, expected {expected}")]
    ArityMismatch { expected: usize, found: usize },
}

/// `r` bilinear forms in `u_1..u_n`, `v_1..v_n`; `forms[l][(a, b)]` is the
/// coefficient of `u_a v_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearSystem {
    pub n: usize,
    pub forms: Vec<BTreeMap<(usize, usize), ParamScalar>>,
    u_names: Vec<String>,
    v_names: Vec<String>,
}

impl BilinearSystem {
    pub fn new(n: usize, forms: Vec<BTreeMap<(usize, usize), ParamScalar>>) -> Self {
        let u_names = (1..=n).map(|i| format!("u{}", i)).collect();
        let v_names = (1..=n).map(|i| format!("v{}", i)).collect();
        BilinearSystem { n, forms, u_names, v_names }
    }

    pub fn u_names(&self) -> &[String] {
        &self.u_names
    }

    /// Value of form `l` at `(u, v)`.
    pub fn eval_form(&self, l: usize, u: &[ParamScalar], v: &[ParamScalar]) -> ParamScalar {
        self.forms[l]
            .iter()
            .fold(ParamScalar::zero(), |acc, (&(a, b), c)| &acc + &(&(c * &u[a]) * &v[b]))
    }

    pub fn annihilates(&self, u: &ProjPoint, v: &ProjPoint) -> bool {
        (0..self.forms.len()).all(|l| self.eval_form(l, &u.coords, &v.coords).is_zero())
    }

    pub fn render_form(&self, l: usize, params: &[String]) -> String {
        let gens: Vec<String> = self.u_names.iter().chain(&self.v_names).cloned().collect();
        let mut poly = BaseElem::zero(2 * self.n);
        for (&(a, b), c) in &self.forms[l] {
            let mut e = vec![0; 2 * self.n];
            e[a] += 1;
            e[self.n + b] += 1;
            poly = poly.add(&BaseElem::term(2 * self.n, Exponents::from_vec(e), c.clone()));
        }
        poly.render(params, &gens)
    }
}

/// Each relation `x_j x_i = c x_i x_j` becomes `u_j v_i - c u_i v_j`,
/// sorted by `(i, j)`. Point coordinates are named `u_<var>`.
pub fn multilinearize(p: &Presentation) -> Result<BilinearSystem, PointsError> {
    let shape = classify_shape(p);
    if !shape.finitely_graded {
        let w = shape.witnesses.iter().find(|w| w.starts_with("not finitely")).cloned().unwrap_or_default();
        return Err(PointsError::NotFinitelyGraded(w));
    }
    let forms = p
        .relations()
        .map(|(&(i, j), rel)| {
            let c = rel.c.as_scalar().expect("finitely graded presentations have scalar c");
            let mut f = BTreeMap::new();
            f.insert((j, i), ParamScalar::one());
            f.insert((i, j), -c);
            f
        })
        .collect();
    let mut s = BilinearSystem::new(p.n(), forms);
    s.u_names = p.symbols().vars.iter().map(|v| format!("u_{}", v)).collect();
    s.v_names = p.symbols().vars.iter().map(|v| format!("v_{}", v)).collect();
    Ok(s)
}

/// A point of projective space over `K`.
#[derive(Clone, Debug, Eq)]
pub struct ProjPoint {
    coords: Vec<ParamScalar>,
}

impl ProjPoint {
    pub fn new(coords: Vec<ParamScalar>) -> Result<Self, PointsError> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(PointsError::ZeroPoint);
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self, PointsError> {
        Self::new(coords.iter().map(|&c| ParamScalar::from_int(c)).collect())
    }

    pub fn coords(&self) -> &[ParamScalar] {
        &self.coords
    }

    /// Scaled so that the first nonzero coordinate is 1.
    pub fn canonical(&self) -> ProjPoint {
        let lead = self.coords.iter().find(|c| !c.is_zero()).expect("nonzero point");
        let inv = lead.inv().expect("nonzero");
        ProjPoint { coords: self.coords.iter().map(|c| c * &inv).collect() }
    }

    pub fn scaled(&self, k: &ParamScalar) -> Result<ProjPoint, PointsError> {
        ProjPoint::new(self.coords.iter().map(|c| c * k).collect())
    }

    pub fn render(&self, params: &[String]) -> Vec<String> {
        self.canonical().coords.iter().map(|c| c.render(params)).collect()
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (&self.coords, &other.coords);
        a.len() == b.len()
            && (0..a.len()).all(|i| (i + 1..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
    }
}

/// `M(u)` at a point: `M[l][b] = sum_a forms[l][(a, b)] u_a`.
pub fn point_matrix(s: &BilinearSystem, u: &ProjPoint) -> Result<Vec<Vec<ParamScalar>>, PointsError> {
    if u.coords.len() != s.n {
        return Err(PointsError::ArityMismatch { expected: s.n, found: u.coords.len() });
    }
    Ok(s.forms
        .iter()
        .map(|f| {
            let mut row = vec![ParamScalar::zero(); s.n];
            for (&(a, b), c) in f {
                row[b] = &row[b] + &(c * &u.coords[a]);
            }
            row
        })
        .collect())
}

/// `M(u)` with entries linear forms in `K[u_1..u_n]`.
pub fn symbolic_point_matrix(s: &BilinearSystem) -> Vec<Vec<BaseElem>> {
    s.forms
        .iter()
        .map(|f| {
            let mut row = vec![BaseElem::zero(s.n); s.n];
            for (&(a, b), c) in f {
                row[b] = row[b].add(&BaseElem::generator(s.n, a).scale(c));
            }
            row
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Locus {
    /// Fewer forms than coordinates: every point has a successor.
    KernelAlwaysNonzero,
    /// All maximal minors of `M(u)`, by row subsets in lexicographic order.
    Minors(Vec<BaseElem>),
}

pub fn point_scheme_locus(s: &BilinearSystem) -> Locus {
    let r = s.forms.len();
    if r < s.n {
        return Locus::KernelAlwaysNonzero;
    }
    let m = symbolic_point_matrix(s);
    Locus::Minors(
        linalg::subsets(r, s.n)
            .into_iter()
            .map(|rows| {
                let sub: Vec<Vec<BaseElem>> = rows.iter().map(|&i| m[i].clone()).collect();
                linalg::det(&sub, s.n)
            })
            .collect(),
    )
}

/// Whether `u` lies on the locus (always true when the kernel is never zero).
pub fn on_locus(locus: &Locus, u: &ProjPoint) -> bool {
    match locus {
        Locus::KernelAlwaysNonzero => true,
        Locus::Minors(ms) => ms.iter().all(|f| f.eval_scalar(u.coords()).is_zero()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NextPoint {
    Unique(ProjPoint),
    Family(Vec<ProjPoint>),
    Empty,
}

pub fn next_point(s: &BilinearSystem, u: &ProjPoint) -> Result<NextPoint, PointsError> {
    let m = point_matrix(s, u)?;
    let mut basis: Vec<ProjPoint> =
        linalg::kernel(&m, s.n).into_iter().map(|v| ProjPoint::new(v).expect("kernel vector")).collect();
    Ok(match basis.len() {
        0 => NextPoint::Empty,
        1 => NextPoint::Unique(basis.pop().unwrap().canonical()),
        _ => NextPoint::Family(basis),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainStatus {
    ExtendsUniquely,
    Branches,
    Terminates,
}

impl ChainStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ChainStatus::ExtendsUniquely => "extends_uniquely",
            ChainStatus::Branches => "branches",
            ChainStatus::Terminates => "terminates",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointChain {
    pub points: Vec<ProjPoint>,
    pub status: ChainStatus,
    /// Kernel basis at the branching step.
    pub branch_basis: Vec<ProjPoint>,
}

impl PointChain {
    pub fn to_json(&self, params: &[String]) -> serde_json::Value {
        json!({
            "points": self.points.iter().map(|p| p.render(params)).collect::<Vec<_>>(),
            "status": self.status.as_str(),
            "steps": self.points.len() - 1,
            "branch_basis": self.branch_basis.iter().map(|p| p.render(params)).collect::<Vec<_>>(),
        })
    }
}

/// Follow `next_point` for up to `depth` steps from `p0`.
pub fn point_chain(s: &BilinearSystem, p0: &ProjPoint, depth: usize) -> Result<PointChain, PointsError> {
    let mut points = vec![p0.canonical()];
    for _ in 0..depth {
        let cur = points.last().unwrap();
        match next_point(s, cur)? {
            NextPoint::Unique(q) => {
                assert!(s.annihilates(cur, &q), "consecutive points must lie on the point scheme");
                points.push(q);
            }
            NextPoint::Family(basis) => {
                return Ok(PointChain { points, status: ChainStatus::Branches, branch_basis: basis })
            }
            NextPoint::Empty => return Ok(PointChain { points, status: ChainStatus::Terminates, branch_basis: vec![] }),
        }
    }
    Ok(PointChain { points, status: ChainStatus::ExtendsUniquely, branch_basis: vec![] })
}

#[cfg(test)]
mod tests;
