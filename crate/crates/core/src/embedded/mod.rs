//! Methods that select features through the training of a linear classifier.
//! All of them are binary-only.

pub mod fsv;
pub mod l0;
pub mod rfe;

pub use fsv::{fsv_fit, fsv_rank, FsvFit, FsvParams};
pub use l0::{l0_fit, l0_fs, L0Fit, L0Params};
pub use rfe::{svm_rfe, RfeParams};
