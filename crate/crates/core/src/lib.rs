//! Crystallizations of manifolds and the face numbers of their simplicial
//! cell decompositions.
//!
//! The crate is organised around two dual representations of the same
//! object:
//!
//! - [`ColoredGraph`]: an admissible `d`-colored multigraph (a
//!   crystallization when every `d-1` colour restriction is connected);
//! - [`SimplicialPoset`]: a ranked poset whose lower intervals are boolean
//!   algebras.
//!
//! [`SimplicialPoset::from_graph`] and [`SimplicialPoset::to_graph`] move
//! between the two. On top of that sit GF(2) homology ([`homology`]),
//! explicit constructions ([`constructions`]), dipole cancellation
//! ([`reduction`]) and decision procedures on `h`-vectors ([`checker`]).
//!
//! ```
//! use crystal_core::{constructions, homology, reduction};
//!
//! let (graph, certificate) = reduction::reduce_product_spheres(2, 2).unwrap();
//! assert_eq!(graph.vertex_count(), 14);
//! assert_eq!(certificate.len(), 5);
//!
//! let rp2 = constructions::cross_polytope_quotient(3).unwrap();
//! let betti = homology::betti_gf2(&rp2).unwrap();
//! assert_eq!(betti.reduced(), &[0, 1, 1]);
//! ```

pub mod checker;
pub mod colored_multigraph;
pub mod constructions;
mod error;
pub mod homology;
pub mod reduction;
pub mod simplicial_poset;
mod union_find;
pub mod vectors;

pub use colored_multigraph::{ColorSet, ColoredGraph, ValidationReport, Violation};
pub use error::{Error, Result};
pub use simplicial_poset::{CellId, SimplicialPoset};
pub use vectors::{BettiVector, FVector, HVector, HppVector};
