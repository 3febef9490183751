use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::presentation::specialize;
use crate::testutil::corpus;

fn names(p: &Presentation) -> Vec<String> {
    p.symbols().params.clone()
}

fn int_point(rng: &mut ChaCha8Rng, n: usize) -> ProjPoint {
    loop {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-9..=9)).collect();
        if let Ok(p) = ProjPoint::from_ints(&v) {
            return p;
        }
    }
}

fn specialized(name: &str, vals: &[(&str, i64)]) -> Presentation {
    let map: BTreeMap<String, BigRational> =
        vals.iter().map(|(k, v)| (k.to_string(), BigRational::from_integer(BigInt::from(*v)))).collect();
    specialize(&corpus(name), &map).unwrap()
}

#[test]
fn forms_of_the_corpus() {
    let p = corpus("quantum_plane");
    let s = multilinearize(&p).unwrap();
    assert_eq!(s.forms.len(), 1);
    assert_eq!(s.render_form(0, &names(&p)), "-q*u_x*v_y + u_y*v_x");
    let p = corpus("sklyanin_c0");
    let s = multilinearize(&p).unwrap();
    let forms: Vec<String> = (0..3).map(|l| s.render_form(l, &names(&p))).collect();
    assert_eq!(forms, vec!["(b/a)*u_x*v_y + u_y*v_x", "(a/b)*u_x*v_z + u_z*v_x", "(b/a)*u_y*v_z + u_z*v_y"]);
    let s = multilinearize(&corpus("commutative_xyz")).unwrap();
    assert_eq!(s.render_form(2, &[]), "-u_y*v_z + u_z*v_y");
    assert!(matches!(multilinearize(&corpus("weyl")), Err(PointsError::NotFinitelyGraded(_))));
}

#[test]
fn symbolic_matrices() {
    let p = corpus("quantum_plane");
    let s = multilinearize(&p).unwrap();
    let m = symbolic_point_matrix(&s);
    let r: Vec<String> = m[0].iter().map(|e| e.render(&names(&p), s.u_names())).collect();
    assert_eq!(r, vec!["u_y", "-q*u_x"]);
    let p = corpus("sklyanin_c0");
    let s = multilinearize(&p).unwrap();
    let m: Vec<Vec<String>> = symbolic_point_matrix(&s)
        .iter()
        .map(|row| row.iter().map(|e| e.render(&names(&p), s.u_names())).collect())
        .collect();
    assert_eq!(
        m,
        vec![
            vec!["u_y", "(b/a)*u_x", "0"],
            vec!["u_z", "0", "(a/b)*u_x"],
            vec!["0", "u_z", "(b/a)*u_y"],
        ]
    );
}

#[test]
fn numeric_matrix_of_the_commutative_ring() {
    let s = multilinearize(&corpus("commutative_xyz")).unwrap();
    let u = ProjPoint::from_ints(&[1, 0, 0]).unwrap();
    let m = point_matrix(&s, &u).unwrap();
    assert_eq!(linalg::rank(&m, 3), 2);
    assert_eq!(next_point(&s, &u).unwrap(), NextPoint::Unique(u));
    assert_eq!(ProjPoint::from_ints(&[0, 0, 0]), Err(PointsError::ZeroPoint));
    let short = ProjPoint::from_ints(&[1, 0]).unwrap();
    assert!(matches!(point_matrix(&s, &short), Err(PointsError::ArityMismatch { .. })));
}

#[test]
fn sklyanin_determinant() {
    let p = corpus("sklyanin_c0");
    let s = multilinearize(&p).unwrap();
    let Locus::Minors(ms) = point_scheme_locus(&s) else { panic!("three forms in three variables") };
    assert_eq!(ms.len(), 1);
    let (a, b) = (ParamScalar::param(0), ParamScalar::param(1));
    let ab = a.checked_div(&b).unwrap();
    let ba = b.checked_div(&a).unwrap();
    let gamma = -(&ab + &ba.pow(2));
    let uxyz = BaseElem::term(3, Exponents::from_vec(vec![1, 1, 1]), gamma);
    assert_eq!(ms[0], uxyz);
    assert_eq!(ms[0].render(&names(&p), s.u_names()), "-((b^3 + a^3)/(a^2*b))*u_x*u_y*u_z");
}

#[test]
fn loci_of_other_presentations() {
    let s = multilinearize(&corpus("quantum_plane")).unwrap();
    assert_eq!(point_scheme_locus(&s), Locus::KernelAlwaysNonzero);
    let s = multilinearize(&corpus("commutative_xyz")).unwrap();
    assert_eq!(point_scheme_locus(&s), Locus::Minors(vec![BaseElem::zero(3)]));
    let p = corpus("quantum_3space");
    let s = multilinearize(&p).unwrap();
    let Locus::Minors(ms) = point_scheme_locus(&s) else { panic!() };
    let (q12, q13, q23) = (ParamScalar::param(0), ParamScalar::param(1), ParamScalar::param(2));
    let coeff = &q13 - &(&q12 * &q23);
    let want = BaseElem::term(3, Exponents::from_vec(vec![1, 1, 1]), coeff);
    // equal up to the sign fixed by the row order
    assert!(ms[0] == want || ms[0] == want.neg(), "{}", ms[0].render(&names(&p), s.u_names()));
}

#[test]
fn quantum_plane_next_point() {
    let p = corpus("quantum_plane");
    let s = multilinearize(&p).unwrap();
    let q = ParamScalar::param(0);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let u = int_point(&mut rng, 2);
        let want = ProjPoint::new(vec![&q * &u.coords()[0], u.coords()[1].clone()]).unwrap();
        assert_eq!(next_point(&s, &u).unwrap(), NextPoint::Unique(want));
    }
}

#[test]
fn quantum_plane_chain() {
    let p = corpus("quantum_plane");
    let s = multilinearize(&p).unwrap();
    let chain = point_chain(&s, &ProjPoint::from_ints(&[1, 1]).unwrap(), 4).unwrap();
    assert_eq!(chain.status, ChainStatus::ExtendsUniquely);
    let q = ParamScalar::param(0);
    for (k, pt) in chain.points.iter().enumerate() {
        let want = ProjPoint::new(vec![q.pow(k as u32), ParamScalar::one()]).unwrap();
        assert_eq!(*pt, want);
    }
    // rendered with the first coordinate normalized to 1
    assert_eq!(chain.points[2].render(&names(&p)), vec!["1", "1/q^2"]);
}

#[test]
fn sklyanin_points() {
    let p = corpus("sklyanin_c0");
    let s = multilinearize(&p).unwrap();
    let e1 = ProjPoint::from_ints(&[1, 0, 0]).unwrap();
    assert_eq!(next_point(&s, &e1).unwrap(), NextPoint::Unique(e1.clone()));
    let chain = point_chain(&s, &ProjPoint::from_ints(&[1, 1, 1]).unwrap(), 5).unwrap();
    assert_eq!(chain.status, ChainStatus::Terminates);
    assert_eq!(chain.points.len(), 1);
    // [0:1:1] lies on the locus: M = [[1,0,0],[1,0,0],[0,1,b/a]]
    let l = ProjPoint::from_ints(&[0, 1, 1]).unwrap();
    let NextPoint::Unique(v) = next_point(&s, &l).unwrap() else { panic!() };
    assert!(s.annihilates(&l, &v));
    assert_eq!(v.render(&names(&p)), vec!["0", "1", "-a/b"]);
}

#[test]
fn degenerate_points_branch() {
    // the commutative ring at a point with two zero coordinates still has a
    // one-dimensional kernel; the zero system branches everywhere
    let s = BilinearSystem::new(2, vec![]);
    let chain = point_chain(&s, &ProjPoint::from_ints(&[1, 2]).unwrap(), 3).unwrap();
    assert_eq!(chain.status, ChainStatus::Branches);
    assert_eq!(chain.branch_basis.len(), 2);
}

#[test]
fn next_point_is_projectively_well_defined() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for name in ["quantum_plane", "quantum_3space", "sklyanin_c0", "skew3_zero", "commutative_xyz"] {
        let p = corpus(name);
        let s = multilinearize(&p).unwrap();
        for _ in 0..10 {
            let u = int_point(&mut rng, p.n());
            let k = ParamScalar::from_int(rng.gen_range(2..9)) + ParamScalar::param(0);
            let k = if p.symbols().params.is_empty() { ParamScalar::from_int(-3) } else { k };
            assert_eq!(next_point(&s, &u).unwrap(), next_point(&s, &u.scaled(&k).unwrap()).unwrap(), "{}", name);
        }
    }
}

#[test]
fn locus_is_sound_on_specialized_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let cases: &[(&str, &[(&str, i64)])] = &[
        ("sklyanin_c0", &[("a", 1), ("b", 2)]),
        ("sklyanin_c0", &[("a", 1), ("b", -1)]),
        ("quantum_3space", &[("q12", 2), ("q13", 3), ("q23", 5)]),
        ("quantum_3space", &[("q12", 2), ("q13", 6), ("q23", 3)]),
        ("skew3_zero", &[("alpha", 2), ("beta", 3), ("gamma", 4)]),
    ];
    for (name, vals) in cases {
        let p = specialized(name, vals);
        let s = multilinearize(&p).unwrap();
        let locus = point_scheme_locus(&s);
        for k in 0..30 {
            // every third point is forced onto a coordinate line
            let mut u = int_point(&mut rng, 3).coords().to_vec();
            if k % 3 == 0 {
                u[k % 3] = ParamScalar::zero();
                u[(k + 1) % 3] = ParamScalar::zero();
            }
            let Ok(u) = ProjPoint::new(u) else { continue };
            let nonempty = next_point(&s, &u).unwrap() != NextPoint::Empty;
            assert_eq!(nonempty, on_locus(&locus, &u), "{} {:?}", name, u);
        }
    }
}
