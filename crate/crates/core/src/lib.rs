pub mod bounds;
pub mod checks;
pub mod cone;
pub mod error;
pub mod gamma;
pub mod graph;
pub mod instances;
pub mod linalg;
pub mod polyhedron;
pub mod report;
pub mod sampling;
pub mod subdet;

pub use error::{Error, Result};
