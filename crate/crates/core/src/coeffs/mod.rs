//! Exact arithmetic for the parameter field `K`, the commutative base ring
//! `R = K[t_1..t_m]`, and the endomorphisms and sigma-derivations acting on it.

mod base;
mod exponents;
mod intpoly;
mod maps;
mod scalar;

#[cfg(test)]
mod props;

use thiserror::Error;

pub use base::BaseElem;
pub(crate) use base::{push_signed, render_term};
pub use exponents::Exponents;
pub use intpoly::IntPoly;
pub use maps::{apply_deriv, apply_endo, validate_maps, DerivMap, EndoMap, MapValidation};
pub use scalar::ParamScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("arity mismatch: expected {expected} base generators, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("derivation images violate the sigma-Leibniz pair condition at generators {pair:?}")]
    InvalidDerivation { pair: (usize, usize) },
}
