//! Finite simplicial sets with an emphasis on the subcategories that behave
//! like simplicial complexes.
//!
//! The crate provides:
//!
//! - exact arithmetic in the simplex category ([`delta`]);
//! - presentations of finite simplicial sets by nondegenerate generators,
//!   with validation, vertex extraction, the distinct-vertex and
//!   unique-simplex properties, loop detection, and hom-set enumeration
//!   ([`sset`], [`hom`], [`builders`]);
//! - barycentric subdivision of objects and maps ([`subdivision`]);
//! - the reflectors that repair the two properties: desingularization and
//!   the localization collapsing opposing edges and parallel simplices
//!   ([`reflectors`]);
//! - pushouts, coproducts and coequalizers, reflected into the nonsingular
//!   and unique-simplex subcategories ([`colimit`]);
//! - ordered simplicial complexes with the adjunction against
//!   unique-simplex simplicial sets, and their limits and colimits
//!   ([`osc`]);
//! - integer simplicial homology via Smith normal form ([`homology`],
//!   [`snf`]);
//! - a text format for all of the above plus OFF and dot export
//!   ([`format`], [`export`]).

pub mod builders;
pub mod colimit;
pub(crate) mod congruence;
pub mod delta;
pub mod export;
pub mod fixtures;
pub mod format;
pub mod hom;
pub mod homology;
pub mod osc;
pub mod reflectors;
pub mod snf;
pub mod sset;
pub mod subdivision;

pub use delta::MonotoneMap;
pub use hom::{hom_count, hom_enumerate, Budget};
pub use sset::{DegenerateTerm, FiniteSimplicialSet, GenId, SimplicialMap, VertexPartition};
