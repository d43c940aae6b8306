//! Construction, verification and application of locally supported
//! orthogonal and biorthogonal (multi)wavelet bases on the half-line and on
//! bounded intervals, derived from compactly supported filter banks on the
//! real line.
//!
//! The crate is organized around the construction pipeline:
//!
//! * [`filterbank`] — matrix filters, perfect reconstruction, sum rules;
//! * [`refinable`] — numerics of refinable vector functions (evaluation,
//!   inner products, moments, polynomial reproduction);
//! * [`boundary`] — boundary refinable vector functions on `[0, inf)`;
//! * [`construct`] — boundary wavelet engines (orthogonal, classical, direct);
//! * [`interval`] — assembly of bases on `[0, N]`;
//! * [`transform`] — multilevel fast wavelet transforms on the interval;
//! * [`fixtures`] — built-in example banks used as regression targets.

pub mod boundary;
pub mod construct;
pub mod error;
pub mod filterbank;
pub mod fixtures;
pub mod interval;
pub mod linalg;
pub mod refinable;
pub mod transform;

pub use error::{Result, WaveletError};
pub use linalg::{Mat, Tolerances, Vect};
