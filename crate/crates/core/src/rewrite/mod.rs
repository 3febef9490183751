//! Normal forms on the standard-monomial basis, multiplication, and the
//! overlap certificate for the PBW basis property.

mod element;
mod multiply;
mod normal;
mod overlap;

pub use element::Element;
pub use multiply::{multiply, Multiplier};
pub use normal::{normal_form, normal_form_expr, push_coeff, swap_reduce, Atom, FreeWord, Strategy};
pub use overlap::{check_pbw_consistency, ConsistencyCertificate, OverlapKind, OverlapResult};
