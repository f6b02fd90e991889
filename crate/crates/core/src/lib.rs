//! Quantale-valued closure and approach structures on finite sets.
//!
//! The crate models finite quantales, V-valued relations and the lax
//! distributive laws of the powerset and ultrafilter monads over the
//! V-powerset monad, and uses them to check the axioms of V-closure spaces,
//! V-approach spaces, closure towers and ultrafilter convergence structures.
//! Change of base along monotone maps between quantales, and the reflector
//! onto lax algebras, live in [`base_change`].
//!
//! Everything is finite: ultrafilters are principal and infinite quantales
//! are replaced by finite sub-quantales (see [`lattice::Builtin`]).

pub mod base_change;
pub mod budget;
pub mod convergence;
pub mod format;
pub mod lattice;
pub mod report;
pub mod spaces;
pub mod suites;
pub mod vrel;

pub use budget::Budget;
pub use lattice::{Builtin, Elem, MonotoneMap, Quantale};
pub use report::{LawReport, Verdict, Violation};
