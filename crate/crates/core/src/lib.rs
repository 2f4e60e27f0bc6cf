//! Exact symbolic computation in Leavitt path algebras of finite directed
//! graphs over star-subrings of ℂ.
//!
//! - [`graph`]: finite graphs, paths, vertex classification, condition (L)
//! - [`ring`]: exact coefficient rings ℤ, ℤ\[i\], ℤ\[1/2\], ℚ and the kindness test
//! - [`algebra`]: normal forms, products, involution, grading, uniformization
//! - [`analysis`]: projections, diagonal membership, proof replay, *-homomorphisms
//! - [`groupoid`]: eventually periodic boundary paths and the graph groupoid
//! - [`parse`] and [`cli`]: expression grammar, input files, command dispatch
//!
//! Batch checks accept an [`Exec`] strategy; with the default `parallel`
//! feature they run on the rayon pool.

#![allow(clippy::len_without_is_empty)]

pub mod algebra;
pub mod analysis;
pub mod cli;
pub mod error;
pub mod graph;
pub mod groupoid;
pub mod par;
pub mod parse;
pub mod ring;
pub mod sample;

pub use algebra::{AlgebraElement, Monomial, UniformTerm};
pub use error::{AlgebraError, GraphError, RingError};
pub use graph::{Atom, EdgeId, Graph, GraphDescription, Path, VertexId};
pub use par::Exec;
pub use ring::{kind_instance_check, KindVerdict, RingElement, RingOp, StarRing};
