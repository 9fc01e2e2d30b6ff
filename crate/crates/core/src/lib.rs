//! Exact computations for the Virasoro action on conformal-welding coordinates:
//! truncated series, the graded coordinate algebra, the operators `L_n` and
//! `Lbar_n`, the moment recursion for the welding measure, high-precision
//! numerics for the diagonal distribution, and an explicit family of weldings.

pub mod algebra;
pub mod error;
pub mod exact;
pub mod family;
pub mod moments;
// Domain guards are written `!(x > 0)` so that NaN fails them.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub mod numerics;
pub mod virasoro;

pub use error::{Error, Result};
