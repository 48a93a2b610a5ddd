//! Coxeter transformations of incidence algebras of order-ideal lattices:
//! exact K₀-level linear algebra, the partition and configuration
//! combinatorics of grid lattices, and cominuscule posets from root systems.

pub mod config;
pub mod error;
mod exact;
pub mod k0lin;
pub mod partition;
pub mod poset;
pub mod rootsys;
pub mod verify;

pub use config::{Configuration, SignedConfiguration};
pub use error::{Error, Result};
pub use k0lin::{CoxeterOperator, IntMatrix, K0Vector, SignedOrder};
pub use partition::{EnhancedPartition, PlainPartition, ResolutionKind};
pub use poset::{IdealLattice, Poset};
pub use rootsys::{RootSystem, RootType, ShapeTag};
pub use verify::{SuiteOptions, VerificationReport};
