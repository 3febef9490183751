use super::Presentation;
use crate::coeffs::{BaseElem, Exponents};

/// Canonical text form. Default data (identity sigma, zero delta, commuting
/// pairs) is omitted, so `parse(&emit(p)) == p`.
pub fn emit(p: &Presentation) -> String {
    let syms = p.symbols();
    let (n, m) = (p.n(), p.m());
    let mut out = String::new();
    if !syms.params.is_empty() {
        out.push_str(&format!("params {};\n", syms.params.join(", ")));
    }
    if m > 0 {
        out.push_str(&format!("base {};\n", syms.base.join(", ")));
    }
    out.push_str(&format!("vars {};\n", syms.vars.join(", ")));

    for i in 0..n {
        let sigma = p.sigma(i);
        let gen = |k: usize| BaseElem::generator(m, k);
        for (k, img) in sigma.images().iter().enumerate() {
            if *img != gen(k) {
                out.push_str(&format!("sigma {}: {} -> {};\n", syms.vars[i], syms.base[k], syms.render_base(img)));
            }
        }
        if let Some(inv) = sigma.inverse_images() {
            let forward_identity = sigma.is_identity();
            let inverse_identity = inv.iter().enumerate().all(|(k, img)| *img == gen(k));
            if !(forward_identity && inverse_identity) {
                let mut wrote = false;
                for (k, img) in inv.iter().enumerate() {
                    if *img != gen(k) {
                        out.push_str(&format!(
                            "sigmainv {}: {} -> {};\n",
                            syms.vars[i],
                            syms.base[k],
                            syms.render_base(img)
                        ));
                        wrote = true;
                    }
                }
                if !wrote {
                    // an identity inverse of a non-identity map still has to be stated
                    out.push_str(&format!("sigmainv {}: {} -> {};\n", syms.vars[i], syms.base[0], syms.base[0]));
                }
            }
        }
        for (k, img) in p.delta(i).images().iter().enumerate() {
            if !img.is_zero() {
                out.push_str(&format!("delta {}: {} -> {};\n", syms.vars[i], syms.base[k], syms.render_base(img)));
            }
        }
    }

    for (&(i, j), rel) in p.relations() {
        if rel.c.is_one() && rel.tail.is_zero() {
            continue;
        }
        let mut terms: Vec<(BaseElem, Exponents)> = Vec::new();
        let quad = Exponents::unit(n, i).mul(&Exponents::unit(n, j));
        terms.push((rel.c.clone(), quad));
        for k in (0..n).rev() {
            if !rel.tail.linear[k].is_zero() {
                terms.push((rel.tail.linear[k].clone(), Exponents::unit(n, k)));
            }
        }
        if !rel.tail.constant.is_zero() {
            terms.push((rel.tail.constant.clone(), Exponents::zero(n)));
        }
        let rhs = syms.render_sum(terms.iter().filter(|(r, _)| !r.is_zero()).map(|(r, e)| (r, e)));
        out.push_str(&format!("rel {}*{} = {};\n", syms.vars[j], syms.vars[i], rhs));
    }
    out
}
