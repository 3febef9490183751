//! Exact symbolic engine for skew PBW extensions `A = sigma(R)<x_1..x_n>` of
//! `R = K[t_1..t_m]` over a field `K` of rational functions in named
//! parameters: presentations, normal forms, overlap certificates, associated
//! graded and iterated Ore structure, property reports and point modules.

pub mod coeffs;
pub mod graded;
pub mod linalg;
pub mod points;
pub mod presentation;
pub mod properties;
pub mod report;
pub mod rewrite;

#[cfg(test)]
pub(crate) mod testutil {
    use crate::presentation::{parse, Presentation};

    pub fn corpus(name: &str) -> Presentation {
        let path = format!("{}/../../corpus/{}.spbw", env!("CARGO_MANIFEST_DIR"), name);
        let src = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {}", path, e));
        parse(&src).unwrap_or_else(|e| panic!("{}: {}", path, e))
    }
}
