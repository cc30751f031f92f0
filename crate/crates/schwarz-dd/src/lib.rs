//! Overlapping Schwarz domain decomposition solvers for 2D elliptic problems
//! with adjoint-based decomposition of the error in a quantity of interest
//! into iteration and discretization parts, and per-subdomain contributions.

pub mod error;
pub mod geom;
pub mod mesh;
pub mod par;
pub mod quadrature;

pub use error::{Error, Result};
pub use geom::Rect;
pub use mesh::Mesh;
