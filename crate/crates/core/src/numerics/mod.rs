//! Numerical kernels the ranking methods are built on.

pub mod eigen;
pub mod info;
pub mod lasso;
pub mod linalg;
pub mod lp;
pub mod stats;
pub mod svm;

pub use eigen::{power_iteration, smallest_generalized_eigvecs, Eigenpair, SpectralEmbedding};
pub use info::{default_bins, discretize, entropy, mutual_information, Discretizer};
pub use lasso::{lambda_max, lasso_cd, soft_threshold, LassoFit};
pub use linalg::{jacobi_eigen, solve, SymmetricEigen};
pub use lp::{solve_lp, LpProblem, LpSolution, LpStatus};
pub use stats::{pairwise_sq_dists, spearman};
pub use svm::{train_linear_svm, train_svm, SvmModel, SvmParams};
