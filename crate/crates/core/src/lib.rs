//! Semiprime closure operations on small commutative rings: ideal
//! lattices, operation families, axiom checks, composition tables and
//! exhaustive enumeration on bounded windows.

pub mod catalog;
pub mod diagram;
pub mod checks;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod monoid;
pub mod ops;
pub mod report;
pub mod ring;
pub mod subspace;
pub mod suites;
pub mod syntax;
pub mod tables;

pub use checks::{bound_consistent, check_axiom, is_bounded, is_closure, is_semiprime, Axiom, AxiomReport, Outcome, Witness};
pub use error::{Error, Result};
pub use field::FieldSet;
pub use ops::{compose, BoxOp, ClosureOp, CuspOp, DedekindOp, DvrOp, IntOp, PointOp, RawMap, Zero};
pub use ring::{CuspIdeal, DedekindIdeal, DvrIdeal, Ideal, Lattice, Ring, Window};
