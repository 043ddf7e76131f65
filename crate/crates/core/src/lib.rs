pub mod cohomology;
pub mod corpus;
pub mod defect;
pub mod error;
pub mod exec;
pub mod io;
pub mod linalg;
pub mod manifold;
pub mod operations;
pub mod simplicial;

pub use error::{Error, Result};
