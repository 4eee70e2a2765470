//! Exact braid monodromy, pure braid and monomial braid computations, and
//! graded Lie algebra ranks for fiber-type hyperplane arrangements.
//!
//! Everything is exact: braids are compared through their action on free
//! groups, line data is rational, and Lie ranks come from integer or
//! rational elimination.

pub mod arrangements;
pub mod braid;
pub mod dynnikov;
pub mod freegroup;
pub mod liealg;
pub mod linalg;
pub mod monomial;
pub mod report;
pub mod sweep;
pub mod wiring;

pub use braid::{BraidAction, BraidWord, StrandPermutation};
pub use freegroup::{Endomorphism, FreeGroupError, Word};
pub use report::{Entry, Report};
pub use sweep::Exec;
