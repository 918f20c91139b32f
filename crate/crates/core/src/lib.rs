//! Algebraic invariants of finite and `Z^d`-periodic graphs.
//!
//! A periodic graph is given by its finite quotient with integer voltages on
//! the edges ([`graph::VoltageGraph`]). From it the crate computes the
//! Laplacian polynomials `Δ_k` ([`algebra`]), coloring and bicycle spaces
//! ([`colorings`]), faces, Dehn colorings and medial curves of plane graphs
//! ([`planar`]), spanning-tree counts of covers and restrictions
//! ([`spanning`]), and logarithmic Mahler measure ([`mahler`]). [`verify`]
//! cross-checks the identities between them; [`format`] reads and writes the
//! text format.

pub mod algebra;
pub mod colorings;
pub mod format;
pub mod graph;
pub mod mahler;
pub mod planar;
pub mod spanning;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] algebra::AlgebraError),
    #[error(transparent)]
    Graph(#[from] graph::GraphError),
    #[error(transparent)]
    Coloring(#[from] colorings::ColoringError),
    #[error(transparent)]
    Planar(#[from] planar::PlanarError),
    #[error(transparent)]
    Spanning(#[from] spanning::SpanningError),
    #[error(transparent)]
    Mahler(#[from] mahler::MahlerError),
    #[error(transparent)]
    Format(#[from] format::FormatError),
}
