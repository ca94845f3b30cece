//! Checkerboard embeddings of framed 4-valent graphs, read through chord
//! diagrams and GF(2) interlacement matrices, plus the polynomial invariants
//! (Kauffman bracket, generating functions, gl(n) weight system) built on the
//! same surgery picture.

pub mod chord_diagram;
pub mod framed_graph;
pub mod generate;
pub mod genus;
pub mod gf2;
pub mod harness;
pub mod invariants;
pub mod poly;
pub mod surgery;

use num_bigint::BigInt;
use thiserror::Error;

pub use chord_diagram::{Bipartition, DiagramError, FramedChordDiagram, Label, Sign};
pub use framed_graph::{FramedFourGraph, GraphError, PlaneGraph, RotatingCircuit};
pub use genus::{GenusError, GenusReport, Orientability, Splitting};
pub use gf2::{Gf2Error, Gf2Matrix};
pub use invariants::{Exponent, FourTermQuadruple, InvariantError};
pub use poly::{Coefficient, LaurentPoly, Var};
pub use surgery::SurgeryError;

/// Polynomials with arbitrary-precision coefficients.
pub type Poly = LaurentPoly<BigInt>;
/// Polynomials with machine-word coefficients.
pub type SmallPoly = LaurentPoly<i64>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Genus(#[from] GenusError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}
