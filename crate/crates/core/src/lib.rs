//! Geometric constructions and distance statistics for two-dimensional
//! critical bond percolation on `Z^2`.
//!
//! Configurations live on the box `B_n(0)` ([`lattice`]). From a
//! configuration one extracts lowest crossings, innermost circuits and
//! radial paths ([`geometry`]), chemical distances ([`distance`]), arm events
//! ([`arms`]) and shielded detours of the lowest crossing ([`shortcut`]).
//! [`harness`] runs the seeded Monte Carlo studies built on top.
//!
//! ```
//! use perc::lattice::BondConfig;
//! use perc::geometry::lowest_crossing;
//!
//! let cfg = BondConfig::all_open(3);
//! assert_eq!(lowest_crossing(&cfg).unwrap().num_edges(), 6);
//! ```

pub mod arms;
pub mod distance;
mod error;
pub mod geometry;
pub mod harness;
pub mod lattice;
pub mod oracle;
pub mod shortcut;
pub mod stats;

pub use error::{Error, Result};
