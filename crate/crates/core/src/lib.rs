//! Finite semigroups, λρ-systems over them, and λρ-products.

pub mod category;
pub mod constructions;
pub mod group_wreath;
pub mod io;
pub mod iso;
pub mod product;
pub mod semigroup;
pub mod system;

pub use semigroup::{catalog, FiniteSemigroup, Homomorphism, Partition, SemigroupError};
pub use system::{Axiom, AxiomViolation, IndexedSystem, LrSystem, MapKind, SystemError, SystemOfMaps};
