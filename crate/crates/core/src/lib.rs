pub mod error;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod maximality;
pub mod maximalize;
pub mod num;
pub mod polyhedron;
pub mod search;

pub use error::{Error, Result};

/// Largest ambient dimension accepted by polyhedral routines.
pub const MAX_DIM: usize = 8;
