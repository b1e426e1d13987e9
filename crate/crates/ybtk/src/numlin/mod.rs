//! Exact and floating-point scalars, dense matrices, eigensolvers and
//! matrix exponentials used by every other module.

pub mod cyc;
pub mod eig;
pub mod expm;
pub mod mat;
pub mod scalar;

pub use cyc::ExactCyc8;
pub use eig::{eig_dense, eigh, EigDecomposition};
pub use expm::expm;
pub use mat::CMat;
pub use scalar::Scalar;
