use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{FsError, Result};
use crate::types::LabelVector;

/// One cross-validation split: sorted train and test sample indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fold {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Stratified k-fold split.
///
/// The members of each class are shuffled with a single seeded generator
/// (classes visited in id order) and dealt round-robin to the folds. The
/// starting fold carries over from one class to the next so that total fold
/// sizes stay balanced too. Per-class counts across folds differ by at most
/// one.
pub fn stratified_kfold(labels: &LabelVector, folds: usize, seed: u64) -> Result<Vec<Fold>> {
    if folds < 2 {
        return Err(FsError::InvalidArgument(format!(
            "need at least 2 folds, got {folds}"
        )));
    }
    let counts = labels.class_counts();
    if let Some((c, &size)) = counts.iter().enumerate().find(|(_, &s)| s < folds) {
        return Err(FsError::InvalidArgument(format!(
            "class {c} has {size} samples, fewer than {folds} folds"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![0usize; labels.len()];
    let mut offset = 0;
    for class in 0..counts.len() {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels.get(i) == class).collect();
        members.shuffle(&mut rng);
        for (pos, &i) in members.iter().enumerate() {
            assignment[i] = (offset + pos) % folds;
        }
        offset = (offset + members.len()) % folds;
    }
    Ok((0..folds)
        .map(|f| {
            let (test, train): (Vec<usize>, Vec<usize>) =
                (0..labels.len()).partition(|&i| assignment[i] == f);
            Fold { train, test }
        })
        .collect())
}
