//! Exact arithmetic for experiments with norm forms of number fields.

pub mod arith;
pub mod bundled;
pub mod density;
pub mod error;
pub mod factor;
pub mod field;
pub mod perm;
pub mod poly;
pub mod quadratic;
pub mod represent;
pub mod scan;
pub mod splitting;

pub use error::{Error, Result};
