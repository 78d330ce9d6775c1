//! Classifier-independent scoring methods.

pub mod ecfs;
pub mod fisher;
pub mod inffs;
pub mod laplacian;
pub mod mcfs;
pub mod mrmr;
pub mod mutinf;
pub mod relieff;

pub use ecfs::{ec_fs, ecfs_adjacency};
pub use fisher::fisher_score;
pub use inffs::{inf_fs, inffs_adjacency, path_scores, PathScores};
pub use laplacian::{knn_affinity, laplacian_score, Affinity, GraphParams, HeatWidth};
pub use mcfs::{mcfs_score, McfsParams};
pub use mrmr::mrmr_rank;
pub use mutinf::mutinf_fs;
pub use relieff::{relief_f, ReliefParams, Sweep};
