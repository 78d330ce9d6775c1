use crate::error::{FsError, Result};
use crate::numerics::stats::sq_dist;
use crate::types::{DataMatrix, LabelVector};

/// Euclidean k-nearest-neighbour majority vote.
///
/// Equal distances are resolved by ascending training index and tied votes
/// by the smallest class id.
pub fn knn_predict(
    train: &DataMatrix,
    train_labels: &LabelVector,
    test: &DataMatrix,
    k: usize,
) -> Result<Vec<usize>> {
    let t = train.n_samples();
    if t == 0 {
        return Err(FsError::InvalidArgument("empty training set".into()));
    }
    if train_labels.len() != t {
        return Err(FsError::DimensionMismatch(format!(
            "{} labels for {t} training samples",
            train_labels.len()
        )));
    }
    if test.n_features() != train.n_features() {
        return Err(FsError::DimensionMismatch(format!(
            "test has {} features, train has {}",
            test.n_features(),
            train.n_features()
        )));
    }
    if k == 0 || k > t {
        return Err(FsError::InvalidArgument(format!(
            "k must be in [1, {t}], got {k}"
        )));
    }
    let n_classes = train_labels.n_classes();
    let mut idx: Vec<usize> = (0..t).collect();
    let mut dist = vec![0.0; t];
    let preds = test
        .values()
        .rows()
        .into_iter()
        .map(|q| {
            for (i, d) in dist.iter_mut().enumerate() {
                *d = sq_dist(q, train.row(i));
            }
            idx.sort_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(a.cmp(&b)));
            let mut votes = vec![0usize; n_classes];
            for &i in &idx[..k] {
                votes[train_labels.get(i)] += 1;
            }
            // max_by_key keeps the last maximum, so scan in reverse
            (0..n_classes).rev().max_by_key(|&c| votes[c]).unwrap_or(0)
        })
        .collect();
    Ok(preds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[f64]) -> DataMatrix {
        DataMatrix::from_columns(&[xs.to_vec()]).unwrap()
    }

    #[test]
    fn vote_enumeration() {
        let p = knn_predict(&line(&[0.0, 1.0, 10.0]), &LabelVector::new(vec![0, 0, 1]), &line(&[2.0]), 3)
            .unwrap();
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn exact_match_k1() {
        let p = knn_predict(&line(&[0.0, 5.0, 9.0]), &LabelVector::new(vec![1, 0, 1]), &line(&[5.0]), 1)
            .unwrap();
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn ties() {
        // equidistant neighbours: the lower train index wins
        let p = knn_predict(&line(&[1.0, -1.0]), &LabelVector::new(vec![1, 0]), &line(&[0.0]), 1)
            .unwrap();
        assert_eq!(p, vec![1]);
        // 1-1 vote: the smaller class id wins
        let p = knn_predict(&line(&[1.0, -1.0]), &LabelVector::new(vec![1, 0]), &line(&[0.0]), 2)
            .unwrap();
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn k_equals_train_size_is_global_majority() {
        let train = line(&[0.0, 1.0, 2.0, 30.0, 31.0]);
        let labels = LabelVector::new(vec![0, 0, 1, 1, 1]);
        let p = knn_predict(&train, &labels, &line(&[-100.0, 0.5, 100.0]), 5).unwrap();
        assert_eq!(p, vec![1, 1, 1]);
    }
}
