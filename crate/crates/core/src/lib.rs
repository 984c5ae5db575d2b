pub mod density;
pub mod distinguish;
pub mod error;
pub mod expansions;
pub mod figures;
pub mod hilbert;
pub mod properties;
pub mod simplex;
pub mod sweep;
pub mod tol;

pub use error::{Error, Result};
