#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod numerics;

pub use error::{Error, Result};
pub mod cli;
pub mod lie;
pub mod potentials;
pub mod reduction;
pub mod transforms;
