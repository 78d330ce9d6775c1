//! Feature ranking and selection.
//!
//! Eleven methods (eight filters, two wrappers and one embedded method) share
//! one interface: each produces a [`FeatureRanking`], and
//! [`select_top`] turns a ranking into a [`FeatureSubset`]. The
//! [`eval`] module measures downstream classification accuracy of the
//! selected subsets under stratified cross-validation.

// `!(x > 0.0)` is used deliberately so that NaN is rejected as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod embedded;
pub mod error;
pub mod eval;
pub mod filters;
pub mod io;
pub mod methods;
pub mod numerics;
pub mod pipeline;
pub mod types;

pub use error::{FsError, Result};
pub use methods::{rank, Method, Params};
pub use pipeline::{ranking_from_scores, select_top, standardize, validate_dataset, ValidationReport, Violation};
pub use types::{
    DataMatrix, Direction, FeatureRanking, FeatureScores, FeatureSubset, FsClass, FsType,
    LabelVector, MethodDescriptor, SENTINEL,
};
