//! Exact computations with graded representations of the increasing monoid.
//!
//! The crate covers four layers:
//!
//! * [`word`] and [`kgroup`]: constraint words and the Grothendieck ring `Z{a,b}`
//!   with its operator algebra;
//! * [`ncseries`] and [`invariants`]: rational non-commutative series, the
//!   multiplicity and pairing series, Hilbert series, level and effectivity;
//! * [`modengine`]: explicit truncated graded modules over exact rationals,
//!   used as an independent oracle;
//! * [`monomial`]: the dictionary between principal modules and monomials.
//!
//! The [`cli`] module implements the `incmon` command line tool.

pub mod cli;
pub mod error;
pub mod invariants;
pub mod kgroup;
pub mod modengine;
pub mod monomial;
pub mod ncseries;
pub mod poly;
pub mod word;

pub use error::{Error, ParseError, Result};
pub use kgroup::KElement;
pub use ncseries::{NCSeries, NCTerm, RationalFactor};
pub use word::{Letter, Word};
