//! Finite-geometry tools for binary and q-ary linear codes with small
//! locality: field arithmetic, projective geometries and point multisets,
//! linear codes and their locality, constructions, bounds, an exact
//! minimum-length search and a registry of tabulated parameters.

pub mod error;
pub mod bounds;
pub mod code;
pub mod constructions;
pub mod field;
pub mod geometry;
pub mod ilp;
pub mod locality;
pub mod registry;

pub use error::{Error, Result};
pub use field::{Elem, FieldContext};
pub use geometry::{gaussian_binomial, Geometry, MultisetFile, PointEncoding, PointMultiset, Subspace};
pub use code::{macwilliams_transform, LinearCode, WeightDistribution};
pub use locality::{locality, locality_geometric, LocalityCertificate, LocalityReport, ScreenResult};
