//! Entanglement entropy of free fermions hopping on Johnson graphs `J(n, k)`.
//!
//! Three routes compute the spectrum of the chopped correlation matrix:
//!
//! * [`spectral::DenseOracle`] diagonalizes the adjacency matrix on all
//!   `C(n, k)` vertices. Only usable on small graphs.
//! * [`terwilliger::assemble_spectrum`] splits the problem over irreducible
//!   modules whose basis change is given by Clebsch-Gordan coefficients.
//! * [`heun::spectrum_via_heun`] diagonalizes a tridiagonal operator that
//!   commutes with the correlation matrix on every module.
//!
//! The last two only touch objects of size `k + 1` and run at `n = 30`.

pub mod entropy;
pub mod error;
pub mod heun;
pub mod linalg;
pub mod output;
pub mod scheme;
pub mod specfn;
pub mod spectral;
pub mod sweep;
pub mod terwilliger;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{symmetric_eigen, DenseMatrix, TridiagonalMatrix};
pub use scheme::{GraphSpec, Vertex};
pub use specfn::HalfInt;
pub use spectral::{CorrelationSpectrum, FillingSpec, HoppingProfile, SubsystemSpec};
