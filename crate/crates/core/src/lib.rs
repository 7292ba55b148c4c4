//! Exact computation of the Terwilliger algebra of the Hamming graph
//! `H(D, q)` and the decomposition of its standard module through the
//! Krawtchouk algebra and `U(sl2)`.

pub mod cgengine;
pub mod error;
pub mod exactlin;
pub mod hamming;
pub mod krawtchouk;
pub mod rational;
pub mod report;
pub mod table;
pub mod terwilliger;

pub use cgengine::{CgSummandList, IsotypicPiece};
pub use error::{Error, Result};
pub use exactlin::{KronMode, KronSumOperator, Matrix, Vector};
pub use hamming::{HammingGraph, SchemeMatrices};
pub use krawtchouk::{RepTriple, Sl2Triple};
pub use rational::{rat, Rational};
pub use report::Check;
pub use terwilliger::{DecompositionReport, Gauge, ModuleDescriptor};
