//! Finite ortholattices, quantifiers, orthoframes and orthospaces, with
//! exhaustive checkers for completions and for the filter/clopen duality.

pub mod bitset;
pub mod budget;
pub mod catalog;
pub mod completions;
pub mod dot;
pub mod duality;
pub mod error;
pub mod format;
pub mod frames;
pub mod lattice;
pub mod oracle;
pub mod report;
pub mod suite;

pub use budget::Budget;
pub use error::{Error, Result};
