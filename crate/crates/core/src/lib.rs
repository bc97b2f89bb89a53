//! Exact computations in the quantized enveloping algebra `U_h(sl2)` over
//! `Q[h]/h^N`: the Hopf structure, the universal R-matrix, the Drinfeld
//! subalgebra `H'`, the braiding `Ad(R)` and its classical limit.

pub mod braiding;
pub mod classical;
pub mod coalgebra;
pub mod combinatorics;
pub mod error;
pub mod hopf;
pub mod poisson;
pub mod prime;
pub mod report;
pub mod rmatrix;
pub mod series;
pub mod subset;
pub mod suites;
pub mod tensor;
pub mod text;

pub use error::AlgebraError;
pub use hopf::{AlgebraElement, HopfAlgebra, InstanceKind, Pbw};
pub use report::{Check, VerificationReport};
pub use rmatrix::RMatrix;
pub use series::{Rational, ScalarSeries, SeriesError, Valuation};
pub use subset::SubsetIndex;
pub use tensor::TensorElement;
