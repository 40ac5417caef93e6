//! Flow-equivalence invariants of sofic shifts.
//!
//! Shifts are given by right-resolving labeled graphs ([`presentation`]).
//! From the minimal automaton of the factor language the crate builds the
//! syntactic semigroup ([`semigroup`]), its Karoubi envelope ([`karoubi`]),
//! the Krieger and Fischer covers with their actions ([`covers`]) and the
//! comparison report ([`invariants`]).

pub mod corpus;
pub mod covers;
pub mod error;
pub mod invariants;
pub mod karoubi;
pub mod presentation;
pub mod semigroup;

pub use error::{Error, Result};
pub use presentation::{Presentation, ShiftHandle};
pub use semigroup::FinSemigroupZ;
