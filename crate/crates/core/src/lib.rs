//! Exact combinatorics around Kronecker-coefficient positivity.
//!
//! * [`partition`], [`segmented`]: partitions in run-length and symbolic form.
//! * [`oracle`]: characters, Kronecker and Littlewood-Richardson coefficients.
//! * [`pointset`]: the point-set counts t and p, simplex-like and pedestalled
//!   triples.
//! * [`designs`]: obstruction designs and the special-class deciders.
//! * [`reductions`]: the reduction chain from 3-dimensional matching down to
//!   restricted Kronecker instances.

pub mod error;
pub mod exec;
pub mod json;
pub mod oracle;
pub mod partition;
pub mod pointset;
pub mod reductions;
pub mod designs;
pub mod segmented;

pub use error::{Error, Result};
pub use exec::Exec;
pub use partition::{Partition, PartitionTriple};
pub use segmented::{SegmentedSequence, Shape};
