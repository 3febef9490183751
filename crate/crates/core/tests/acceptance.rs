//! Acceptance suite: one PASS/FAIL line per criterion.

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use skewpbw::coeffs::{BaseElem, Exponents, ParamScalar};
use skewpbw::graded::{gr_presentation, hilbert_dim, iterated_ore, principal_symbol, HILBERT_CROSS_CHECK_MAX};
use skewpbw::points::{
    multilinearize, next_point, point_chain, point_scheme_locus, ChainStatus, Locus, NextPoint, ProjPoint,
};
use skewpbw::presentation::{classify_shape, emit, parse, validate_axioms, Presentation};
use skewpbw::properties::{gkdim_report, property_report, Applies, GkValue, Property};
use skewpbw::rewrite::{check_pbw_consistency, multiply, normal_form, Atom, Element, FreeWord, OverlapKind, Strategy};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn load(name: &str) -> Presentation {
    let path = corpus_dir().join(format!("{}.spbw", name));
    let src = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {}", path.display(), e));
    parse(&src).unwrap_or_else(|e| panic!("{}: {}", path.display(), e))
}

fn whole_corpus() -> Vec<(String, Presentation)> {
    let mut names: Vec<String> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension()? == "spbw").then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), load(&n))).collect()
}

/// The presentations the certification criterion names.
const NAMED: &[&str] = &[
    "quantum_plane",
    "quantum_3space",
    "weyl",
    "shift",
    "sklyanin_c0",
    "diffusion2",
    "skew3_zero",
    "commutative_xyz",
];

fn certified_corpus() -> Vec<(String, Presentation)> {
    whole_corpus()
        .into_iter()
        .filter(|(_, p)| validate_axioms(p).all_pass() && check_pbw_consistency(p).all_pass())
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, m: usize) -> FreeWord {
    let len = rng.gen_range(1..=5);
    FreeWord::new(
        (0..len)
            .map(|_| {
                if m > 0 && rng.gen_bool(0.3) {
                    Atom::Scalar(BaseElem::generator(m, rng.gen_range(0..m)))
                } else {
                    Atom::Var(rng.gen_range(0..n))
                }
            })
            .collect(),
    )
}

/// A nonzero element with at most three terms of degree at most two.
fn random_element(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Element {
    loop {
        let e = random_terms(rng, n, m);
        if !e.is_zero() {
            return e;
        }
    }
}

fn random_terms(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Element {
    let mut e = Element::zero(n, m);
    for _ in 0..rng.gen_range(1..=3) {
        let mut v = vec![0u32; n];
        for _ in 0..rng.gen_range(0..=2) {
            v[rng.gen_range(0..n)] += 1;
        }
        let c = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { -1 } else { 1 };
        let mut r = BaseElem::scalar(m, ParamScalar::from_int(c));
        if m > 0 && rng.gen_bool(0.5) {
            r = r.add(&BaseElem::generator(m, rng.gen_range(0..m)));
        }
        e.add_term(Exponents::from_vec(v), r);
    }
    e
}

fn random_point(rng: &mut ChaCha8Rng, n: usize, nonzero: bool) -> ProjPoint {
    loop {
        let v: Vec<i64> = (0..n)
            .map(|_| loop {
                let c = rng.gen_range(-20..=20);
                if !nonzero || c != 0 {
                    break c;
                }
            })
            .collect();
        if let Ok(p) = ProjPoint::from_ints(&v) {
            return p;
        }
    }
}

fn c1_certification() -> Outcome {
    for name in NAMED {
        let p = load(name);
        let v = validate_axioms(&p);
        ensure(v.all_pass(), || format!("{}: axiom checks fail", name))?;
        let cert = check_pbw_consistency(&p);
        let bad: Vec<_> = cert.failures().map(|o| o.kind.triple()).collect();
        ensure(bad.is_empty(), || format!("{}: failing overlaps {:?}", name, bad))?;
    }
    Ok(format!("{} presentations, zero failing overlaps", NAMED.len()))
}

fn c2_negative_control() -> Outcome {
    let p = load("negative_control");
    let syms = p.symbols();
    let cert = check_pbw_consistency(&p);
    // Both reduction routes of z*y*x, reduced by hand:
    //   (yz + x)x = yxz + x^2 = (xy + 1)z + x^2
    //   z(xy + 1) = xzy + z = x(yz + x) + z
    let hand = "x*y*z + x^2 + z";
    let triple = cert
        .overlaps
        .iter()
        .find(|o| o.kind == OverlapKind::Variables { k: 2, j: 1, i: 0 })
        .ok_or("overlap (3,2,1) missing")?;
    ensure(triple.via_left.render(syms) == hand && triple.via_right.render(syms) == hand, || {
        format!(
            "routes differ from hand reduction: {} | {}",
            triple.via_left.render(syms),
            triple.via_right.render(syms)
        )
    })?;
    ensure(!cert.all_pass(), || {
        format!(
            "presentation is consistent: both routes of z*y*x reduce to {}, so no discrepancy exists to report",
            hand
        )
    })?;
    let failing: Vec<_> = cert.failures().collect();
    ensure(failing.len() == 1 && failing[0].kind.triple() == (3, 2, 1), || "wrong failing overlap".into())?;
    Ok(format!("discrepancy {}", failing[0].discrepancy.render(syms)))
}

fn c3_associativity_and_strategies() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa55);
    let corpus = certified_corpus();
    for (name, p) in &corpus {
        for _ in 0..100 {
            let w = random_word(&mut rng, p.n(), p.m());
            let l = normal_form(p, &w, Strategy::Leftmost);
            let r = normal_form(p, &w, Strategy::Rightmost);
            ensure(l == r, || format!("{}: strategies disagree on {:?}", name, w))?;
            let f = random_element(&mut rng, p.n(), p.m());
            let g = random_element(&mut rng, p.n(), p.m());
            let h = random_element(&mut rng, p.n(), p.m());
            let a = multiply(p, &multiply(p, &f, &g), &h);
            let b = multiply(p, &f, &multiply(p, &g, &h));
            ensure(a == b, || format!("{}: (fg)h != f(gh)", name))?;
        }
    }
    Ok(format!("{} presentations x 100 words and triples", corpus.len()))
}

fn c4_graded() -> Outcome {
    let gr = emit(&gr_presentation(&load("weyl")));
    let want = emit(&load("commutative_tx"));
    ensure(gr == want, || format!("gr(weyl) emitted as {:?}, expected {:?}", gr, want))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x9a);
    let corpus = certified_corpus();
    for (name, p) in &corpus {
        let g = gr_presentation(p);
        for _ in 0..50 {
            let f = random_element(&mut rng, p.n(), p.m());
            let h = random_element(&mut rng, p.n(), p.m());
            let lhs = principal_symbol(p, &multiply(p, &f, &h)).map_err(|e| e.to_string())?;
            let sf = principal_symbol(p, &f).map_err(|e| e.to_string())?;
            let sh = principal_symbol(p, &h).map_err(|e| e.to_string())?;
            ensure(lhs == multiply(&g, &sf, &sh), || format!("{}: symbol not multiplicative", name))?;
        }
    }
    Ok(format!("gr(weyl) matches; symbols multiplicative on {} presentations", corpus.len()))
}

fn c5_ore_replay() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0e);
    let mut count = 0;
    for (name, p) in certified_corpus() {
        if !classify_shape(&p).quasi_commutative {
            continue;
        }
        let tower = iterated_ore(&p).map_err(|e| e.to_string())?;
        ensure(tower.replay_agrees(), || format!("{}: built-in replay {:?}", name, tower.replay))?;
        for _ in 0..20 {
            let f = random_element(&mut rng, p.n(), p.m());
            let g = random_element(&mut rng, p.n(), p.m());
            ensure(tower.mul(&f, &g) == multiply(&p, &f, &g), || format!("{}: tower product differs", name))?;
        }
        count += 1;
    }
    Ok(format!("{} quasi-commutative presentations x 20 products", count))
}

fn c6_gkdim() -> Outcome {
    for (name, want) in [("quantum_plane", 2), ("weyl", 2)] {
        let r = gkdim_report(&load(name));
        ensure(r.value == GkValue::Value(want), || format!("{}: {:?}", name, r.value))?;
    }
    let r = gkdim_report(&load("sigma_square"));
    ensure(r.value == GkValue::NotCertified, || format!("sigma_square: {:?}", r.value))?;
    let frame = r.hypotheses.iter().find(|h| h.name == "frame_stable").ok_or("no frame hypothesis")?;
    ensure(frame.witness.as_deref() == Some("t^2"), || format!("witness {:?}", frame.witness))?;
    Ok("2, 2, not_certified (witness t^2)".into())
}

fn c7_hilbert() -> Outcome {
    let mut count = 0;
    for (name, p) in certified_corpus() {
        if !classify_shape(&p).finitely_graded {
            continue;
        }
        let n = p.n() as u64;
        for d in 0..=HILBERT_CROSS_CHECK_MAX {
            let h = hilbert_dim(&p, d).map_err(|e| e.to_string())?;
            let want = num_integer::binomial(d as u64 + n - 1, n - 1);
            ensure(h.dim == want && h.word_rank == Some(want), || {
                format!("{} d={}: dim {} rank {:?}, expected {}", name, d, h.dim, h.word_rank, want)
            })?;
        }
        count += 1;
    }
    Ok(format!("{} finitely graded presentations, d <= {}", count, HILBERT_CROSS_CHECK_MAX))
}

fn c8_points() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x8);
    // (a) quantum plane
    let qp = load("quantum_plane");
    let s = multilinearize(&qp).map_err(|e| e.to_string())?;
    let q = ParamScalar::param(0);
    for _ in 0..50 {
        let u = random_point(&mut rng, 2, false);
        let want = ProjPoint::new(vec![&q * &u.coords()[0], u.coords()[1].clone()]).unwrap();
        let got = next_point(&s, &u).map_err(|e| e.to_string())?;
        ensure(got == NextPoint::Unique(want), || format!("quantum plane: next point of {:?} is {:?}", u, got))?;
        let chain = point_chain(&s, &u, 10).map_err(|e| e.to_string())?;
        ensure(chain.status == ChainStatus::ExtendsUniquely && chain.points.len() == 11, || {
            format!("quantum plane: chain from {:?} stops with {:?}", u, chain.status)
        })?;
    }
    // (b) commutative K[x,y,z]
    let s = multilinearize(&load("commutative_xyz")).map_err(|e| e.to_string())?;
    for _ in 0..50 {
        let u = random_point(&mut rng, 3, false);
        let got = next_point(&s, &u).map_err(|e| e.to_string())?;
        ensure(got == NextPoint::Unique(u.clone()), || format!("commutative: next point of {:?} is {:?}", u, got))?;
    }
    // (c) Sklyanin with c = 0
    let sk = load("sklyanin_c0");
    let s = multilinearize(&sk).map_err(|e| e.to_string())?;
    let Locus::Minors(ms) = point_scheme_locus(&s) else {
        return Err("Sklyanin: expected a determinant".into());
    };
    let (a, b) = (ParamScalar::param(0), ParamScalar::param(1));
    let gamma = -(&a.checked_div(&b).unwrap() + &b.checked_div(&a).unwrap().pow(2));
    let xyz = Exponents::from_vec(vec![1, 1, 1]);
    let det = &ms[0];
    let ratio = det
        .coeff(&xyz)
        .filter(|_| det.term_count() == 1)
        .and_then(|c| c.checked_div(&gamma).ok())
        .and_then(|r| r.as_rational());
    ensure(ms.len() == 1 && ratio.as_ref().is_some_and(|r| !num_traits::Zero::is_zero(r)), || {
        format!("Sklyanin determinant is {}", det.render(&sk.symbols().params, s.u_names()))
    })?;
    let off = random_point(&mut rng, 3, true);
    let chain = point_chain(&s, &off, 5).map_err(|e| e.to_string())?;
    ensure(chain.status == ChainStatus::Terminates && chain.points.len() == 1, || {
        format!("Sklyanin: chain from {:?} has status {:?}", off, chain.status)
    })?;
    Ok(format!("det = {} * gamma * u_x*u_y*u_z", ratio.unwrap()))
}

fn c9_property_report() -> Outcome {
    const ALL: [Property; 5] = [
        Property::Noetherian,
        Property::AuslanderGorenstein,
        Property::AuslanderRegular,
        Property::CohenMacaulay,
        Property::StronglyNoetherian,
    ];
    for name in ["quantum_plane", "quantum_3space"] {
        let r = property_report(&load(name)).map_err(|e| e.to_string())?;
        for prop in ALL {
            let rec = r.get(prop);
            ensure(rec.applies == Applies::Yes, || format!("{}: {:?} is {:?}", name, prop, rec.applies))?;
            ensure(
                !rec.hypotheses_checked.is_empty() && rec.hypotheses_checked.iter().all(|h| h.pass == Some(true)),
                || format!("{}: {:?} hypotheses not all passing", name, prop),
            )?;
        }
    }
    let r = property_report(&load("shift")).map_err(|e| e.to_string())?;
    let cm = r.get(Property::CohenMacaulay);
    ensure(cm.applies == Applies::HypothesesNotMet, || format!("shift CM is {:?}", cm.applies))?;
    ensure(cm.hypotheses_checked.iter().any(|h| h.witness.as_deref() == Some("t - h")), || {
        "shift CM has no witness t - h".into()
    })?;
    let mut reported = 0;
    for (name, p) in whole_corpus() {
        let Ok(r) = property_report(&p) else { continue };
        for rec in &r.records {
            let clean = rec.hypotheses_checked.iter().all(|h| h.pass == Some(true));
            ensure(rec.applies != Applies::Yes || clean, || format!("{}: {:?} says yes", name, rec.property))?;
        }
        reported += 1;
    }
    Ok(format!("monotone on {} reported presentations", reported))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("PBW certification corpus", c1_certification),
        ("negative control", c2_negative_control),
        ("associativity and strategy independence", c3_associativity_and_strategies),
        ("graded structure", c4_graded),
        ("Ore replay", c5_ore_replay),
        ("GK dimension", c6_gkdim),
        ("Hilbert dims", c7_hilbert),
        ("point modules", c8_points),
        ("property report", c9_property_report),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {}", msg))
        });
        match outcome {
            Ok(detail) => println!("criterion {} ({}): PASS: {}", i + 1, title, detail),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({}): FAIL: {}", i + 1, title, why);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
