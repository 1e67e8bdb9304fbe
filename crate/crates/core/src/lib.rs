//! Exact spanning-tree counts for circulant graphs
//! `C_{βn}(s_1, …, s_k, α_1 n, …, α_ℓ n)`.
//!
//! Three independent routes produce `τ`: a fraction-free determinant of the
//! reduced Laplacian, the product of Laplacian eigenvalues, and the product
//! of Chebyshev values over the roots of the polynomials `P_u`. The real
//! valued routes run in ball arithmetic and round to an integer only once
//! the enclosure proves it.

pub mod arith;
pub mod ball;
pub mod chebpoly;
pub mod error;
pub mod exec;
pub mod graph;
pub mod mahler;
pub mod poly;
pub mod roots;
pub mod treecount;
pub mod verify;

pub use error::{Error, Result};
pub use exec::{Exec, Options};
pub use graph::{validate_spec, CirculantSpec};
pub use treecount::{Method, TauResult};
