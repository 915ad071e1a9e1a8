//! Flexible list coloring of complete multipartite graphs: exact solvers,
//! choosability deciders, constructive colorers with request guarantees, and
//! a catalog of explicit witness assignments.

pub mod audit;
pub mod brute;
pub mod choose;
pub mod colorset;
pub mod constructive;
pub mod error;
pub mod exact;
pub mod flexlab;
pub mod gen;
pub mod graph;
pub mod instance;
pub mod witnesses;

pub type Rational = num_rational::Ratio<i64>;

pub use colorset::{ColorId, ColorSet};
pub use error::{Error, Result};
pub use graph::{Coloring, ListAssignment, MultipartiteGraph, Request, Vertex};
