//! Exact toric g- and h-polynomials, flag vectors and low-degree
//! combinatorial intersection cohomology of convex polytopes and fans.

pub mod canonical;
pub mod catalog;
pub mod error;
pub mod geometry;
pub mod lattice;
pub mod linalg;
pub mod localization;
pub mod polynomial;
pub mod rigidity;
pub mod shelling;
pub mod toric;
pub mod verma;
pub mod vertex_set;

pub use error::{Error, Result};
pub use lattice::{Face, FaceId, FaceLattice};
pub use polynomial::Polynomial;
pub use vertex_set::VertexSet;
