//! Matrix graphs `M_{N×n}(q)` over finite fields, rank-metric codes and the
//! two distance-coloring problems built on them.
//!
//! The vertex set of the matrix graph is `F_q^{N×n}`; two matrices are
//! adjacent when their difference has rank one. Graph distance coincides with
//! rank distance, so colorings in which nearby vertices differ are partitions
//! of the matrix space into rank-metric codes. This crate provides:
//!
//! * [`gf_tower`]: exact arithmetic in `F_p ⊂ F_q ⊂ F_{q^N}`;
//! * [`rank_linalg`]: rank, rank distance and the vector/matrix bridge;
//! * [`matrix_graph`]: the implicit graph, BFS and export;
//! * [`rank_codes`]: Gabidulin codes, spectra and the built-in equidistant codes;
//! * [`coloring`]: syndrome colorings and their exhaustive verification;
//! * [`bounds`]: closed-form bounds on both chromatic numbers.

pub mod bounds;
pub mod budget;
pub mod cli;
pub mod coloring;
pub mod error;
pub mod gf_tower;
pub mod linalg;
pub mod matrix_graph;
pub mod rank_codes;
pub mod rank_linalg;

pub use budget::Budget;
pub use error::{Error, Result};
pub use gf_tower::{BaseField, ExtField, FieldTower, FiniteField, Fq, FqN};
pub use rank_linalg::{MatFq, VecExt};
