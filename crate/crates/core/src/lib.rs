//! Exact combinatorics of k-indivisible noncrossing partitions.

pub mod bijections;
pub mod counting;
pub mod error;
pub mod geometry;
pub mod hurwitz;
pub mod mdiv;
pub mod nc;
pub mod perm;
pub mod poset;
pub mod typeb;
pub mod verify;

pub use counting::BigCount;
pub use error::{Error, Result};
pub use perm::{EllK, KParams, Permutation};
