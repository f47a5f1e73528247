//! Construction, invariants, and icosahedral realizations of the Petrie
//! relatives of Gordan's regular map {5,4}_6.
//!
//! All geometry is carried out exactly in Q(√5); see [`field::FieldScalar`].

pub mod census;
pub mod export;
pub mod field;
pub mod flagmap;
pub mod labels;
pub mod linalg;
pub mod poly;
pub mod presentation;
pub mod realization;
pub mod symmetry;

pub use field::FieldScalar;
pub use flagmap::{hexad, FlagSystem, MapInvariants};
pub use linalg::{coplanar, Mat3, Vec3};
pub use presentation::{build_map, enumerate, Presentation};
pub use symmetry::{generate_h3, h3, standard_configuration, ConfigKind, SymmetryGroup, VertexConfiguration};
