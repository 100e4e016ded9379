pub mod arith;
pub mod characters;
pub mod error;
pub mod gauss_sums;
pub mod lfunctions;
pub mod gaussint;
pub mod moments;
pub mod numeric;
pub mod symbols;
pub mod verify;

pub use error::{Error, Result};
pub use gaussint::{GaussFactorization, GaussInt};
pub use symbols::QuarticValue;
