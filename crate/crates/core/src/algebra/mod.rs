//! The graded coordinate algebra: partitions, monomial bases, the inner product
//! `<u^p, u^q> = p!`, operator matrices between graded pieces and exact linear algebra.

pub mod basis;
pub mod element;
pub mod linalg;
pub mod partition;

pub use basis::{inner_product, monomial_basis, OperatorMatrix};
pub use element::{AlgebraElement, RhoExp};
pub use partition::{enumerate_partitions, partition_count, Partition};
