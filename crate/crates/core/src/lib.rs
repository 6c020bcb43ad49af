//! Rank-table matroid workbench.
//!
//! Everything is built on exhaustively validated rank tables over ground sets
//! of at most 20 elements: connectivity functionals, modular-cut extensions,
//! clonal cores of partitioned matroids, and the classification of 4-paths
//! and 4-flexipaths by their connectivity profiles.

pub mod clonal;
pub mod cli;
pub mod connectivity;
pub mod error;
pub mod extension;
pub mod files;
pub mod flexipath;
pub mod gallery;
pub mod matroid;
pub mod subset;
pub mod verify;

pub use error::{Error, Result};
pub use matroid::{Matroid, PartitionedMatroid, MAX_ELEMENTS};
pub use subset::Subset;
