//! Frobenius traces of elliptic curves over the rationals, the Chebotarev
//! counting machinery built on them, and exact finite-group checks of the
//! reductions used to bound Lang-Trotter counting functions.

#![allow(
    clippy::neg_cmp_op_on_partial_ord,
    clippy::needless_range_loop,
    clippy::wrong_self_convention
)]

pub mod arith;
pub mod chebotarev;
pub mod classfn;
pub mod elliptic;
pub mod error;
pub mod groups;
pub mod quadfield;
pub mod verify;

pub use error::{Error, Result};
