//! Exact sheaf cohomology on the flag variety of `Sp₄` over small prime
//! fields, computed from truncated Čech complexes of its multigraded
//! coordinate ring.

pub mod cache;
pub mod cech;
pub mod claims;
pub mod cli;
pub mod error;
pub mod field;
pub mod geom;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod report;
pub mod ring;
pub mod rootdata;
pub mod sheaf;

pub use error::{Error, Result};
pub use field::{Fp, Prime};
pub use rootdata::{Weight, WeylElement};
