//! Downstream evaluation of selected subsets and synthetic fixtures.

pub mod curve;
pub mod cv;
pub mod knn;
pub mod synth;

pub use curve::{accuracy_curve, accuracy_curve_with, holdout_accuracy, Classifier, EvalReport};
pub use cv::{stratified_kfold, Fold};
pub use knn::knn_predict;
pub use synth::{
    gen_fig4_irrelevant, gen_fig4_redundant, gen_informative, gen_random_labels,
    gen_redundant_with_weak,
};
