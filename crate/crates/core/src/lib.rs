//! Expansions in non-integer bases between 1 and 2, computed exactly.

pub mod branching;
pub mod certify;
pub mod constants;
pub mod error;
pub mod exactnum;
pub mod expansions;
pub mod search;
pub mod symbolic;

pub use error::{Error, Result};
