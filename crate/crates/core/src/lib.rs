//! Dense and sparse linear algebra for qudit registers: states, operators,
//! spin-chain Hamiltonians and entanglement criteria.

pub mod chains;
pub mod dirac;
pub mod entangle;
pub mod error;
pub mod io;
pub mod linalg;
pub mod operator;
pub mod pauli_io;
pub mod permute;
pub mod policy;
pub mod random;
pub mod sparse;
pub mod state;
pub mod states;
pub mod util;

pub type C64 = num_complex::Complex64;
pub type CMatrix = nalgebra::DMatrix<C64>;
pub type CVector = nalgebra::DVector<C64>;

pub use entangle::{BipartitionMask, SearchParams, SpinSqueezingReport};
pub use error::{Error, Result};
pub use io::Document;
pub use operator::{QuantumOperator, Storage};
pub use permute::{Permutation, QuditList};
pub use policy::NumericPolicy;
pub use random::RandomSource;
pub use sparse::CsrMatrix;
pub use state::{DensityMatrix, RegisterShape, StateLike, StateRef, StateVector};
