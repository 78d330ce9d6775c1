use std::fmt;
use std::str::FromStr;

use ndarray::Array2;

use super::cv::stratified_kfold;
use super::knn::knn_predict;
use crate::error::{FsError, Result};
use crate::io::fmt_f64;
use crate::methods::{rank, Method, Params};
use crate::numerics::stats::{mean, pop_std};
use crate::numerics::svm::{train_svm, SvmParams};
use crate::pipeline::select_top;
use crate::types::{DataMatrix, FeatureRanking, LabelVector};

/// Downstream classifier used to score a feature subset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Classifier {
    Knn(usize),
    /// One-vs-rest linear SVM on columns standardized with training-fold
    /// statistics.
    LinearSvm(f64),
}

impl Default for Classifier {
    fn default() -> Self {
        Classifier::Knn(3)
    }
}

impl fmt::Display for Classifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classifier::Knn(k) => write!(f, "knn:{k}"),
            Classifier::LinearSvm(c) => write!(f, "svm:{c}"),
        }
    }
}

impl FromStr for Classifier {
    type Err = FsError;

    /// `knn:K` or `svm:C`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || FsError::InvalidArgument(format!("classifier must be knn:K or svm:C, got '{s}'"));
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "knn" => match arg.parse::<usize>() {
                Ok(k) if k >= 1 => Ok(Classifier::Knn(k)),
                _ => Err(bad()),
            },
            "svm" => match arg.parse::<f64>() {
                Ok(c) if c > 0.0 && c.is_finite() => Ok(Classifier::LinearSvm(c)),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }
}

/// Accuracy-versus-subset-size curve averaged over cross-validation folds.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub method: String,
    pub classifier: Classifier,
    pub folds: usize,
    pub seed: u64,
    pub grid: Vec<usize>,
    pub mean_acc: Vec<f64>,
    /// Population standard deviation over folds.
    pub std_acc: Vec<f64>,
}

impl EvalReport {
    pub fn to_json(&self) -> String {
        let join = |v: Vec<String>| v.join(", ");
        format!(
            "{{\n  \"method\": {},\n  \"classifier\": \"{}\",\n  \"folds\": {},\n  \"seed\": {},\n  \"grid\": [{}],\n  \"mean_acc\": [{}],\n  \"std_acc\": [{}]\n}}\n",
            serde_json::to_string(&self.method).expect("string"),
            self.classifier,
            self.folds,
            self.seed,
            join(self.grid.iter().map(usize::to_string).collect()),
            join(self.mean_acc.iter().map(|&v| fmt_f64(v)).collect()),
            join(self.std_acc.iter().map(|&v| fmt_f64(v)).collect()),
        )
    }
}

/// Test accuracy of `classifier` trained on `train` and applied to `test`.
pub fn holdout_accuracy(
    train: &DataMatrix,
    train_labels: &LabelVector,
    test: &DataMatrix,
    test_labels: &LabelVector,
    classifier: Classifier,
) -> Result<f64> {
    let predicted = match classifier {
        Classifier::Knn(k) => knn_predict(train, train_labels, test, k)?,
        Classifier::LinearSvm(c) => svm_predict(train, train_labels, test, c)?,
    };
    let hits = predicted
        .iter()
        .zip(test_labels.as_slice())
        .filter(|(p, y)| p == y)
        .count();
    Ok(hits as f64 / test_labels.len() as f64)
}

fn svm_predict(
    train: &DataMatrix,
    train_labels: &LabelVector,
    test: &DataMatrix,
    c_reg: f64,
) -> Result<Vec<usize>> {
    let n = train.n_features();
    let (mu, sd): (Vec<f64>, Vec<f64>) = (0..n)
        .map(|j| {
            let col = train.column(j).to_vec();
            (mean(&col), pop_std(&col))
        })
        .unzip();
    let scale = |d: &DataMatrix| {
        Array2::from_shape_fn((d.n_samples(), n), |(i, j)| {
            if sd[j] > 0.0 {
                (d.values()[[i, j]] - mu[j]) / sd[j]
            } else {
                0.0
            }
        })
    };
    let (xtr, xte) = (scale(train), scale(test));
    let n_classes = train_labels.n_classes();
    let params = SvmParams::new(c_reg);
    // binary problems need a single machine (class 1 positive)
    let positives: Vec<usize> = if n_classes == 2 { vec![1] } else { (0..n_classes).collect() };
    let mut decisions = Vec::with_capacity(positives.len());
    for &pos in &positives {
        let y: Vec<f64> = train_labels
            .as_slice()
            .iter()
            .map(|&l| if l == pos { 1.0 } else { -1.0 })
            .collect();
        let model = train_svm(xtr.view(), &y, &params)?;
        let d: Vec<f64> = xte
            .rows()
            .into_iter()
            .map(|r| model.decision(r.as_slice().expect("standard layout")))
            .collect();
        decisions.push(d);
    }
    Ok((0..test.n_samples())
        .map(|i| {
            if n_classes == 2 {
                usize::from(decisions[0][i] > 0.0)
            } else {
                let mut best = 0;
                for c in 1..n_classes {
                    if decisions[c][i] > decisions[best][i] {
                        best = c;
                    }
                }
                best
            }
        })
        .collect())
}

fn check_grid(grid: &[usize], n: usize) -> Result<Vec<usize>> {
    if grid.is_empty() {
        return Err(FsError::InvalidArgument("empty subset-size grid".into()));
    }
    if let Some(&m) = grid.iter().find(|&&m| m == 0 || m > n) {
        return Err(FsError::InvalidArgument(format!(
            "grid value {m} outside [1, {n}]"
        )));
    }
    let mut g = grid.to_vec();
    g.sort_unstable();
    g.dedup();
    Ok(g)
}

/// [`accuracy_curve`] with an arbitrary ranking function.
///
/// `ranker` only ever sees the training rows of each fold.
#[allow(clippy::too_many_arguments)]
pub fn accuracy_curve_with<F>(
    data: &DataMatrix,
    labels: &LabelVector,
    method_name: &str,
    mut ranker: F,
    grid: &[usize],
    folds: usize,
    classifier: Classifier,
    seed: u64,
) -> Result<EvalReport>
where
    F: FnMut(&DataMatrix, &LabelVector) -> Result<FeatureRanking>,
{
    if labels.len() != data.n_samples() {
        return Err(FsError::DimensionMismatch(format!(
            "{} labels for {} samples",
            labels.len(),
            data.n_samples()
        )));
    }
    let grid = check_grid(grid, data.n_features())?;
    let splits = stratified_kfold(labels, folds, seed)?;
    let mut acc = vec![Vec::with_capacity(folds); grid.len()];
    for fold in &splits {
        let (xtr, ytr) = (data.select_rows(&fold.train), labels.select(&fold.train));
        let (xte, yte) = (data.select_rows(&fold.test), labels.select(&fold.test));
        let ranking = ranker(&xtr, &ytr)?;
        if ranking.n_features() != data.n_features() {
            return Err(FsError::DimensionMismatch(format!(
                "ranking covers {} of {} features",
                ranking.n_features(),
                data.n_features()
            )));
        }
        for (g, &m) in grid.iter().enumerate() {
            let cols = select_top(&ranking, m)?;
            let a = holdout_accuracy(
                &xtr.select_columns(cols.indices()),
                &ytr,
                &xte.select_columns(cols.indices()),
                &yte,
                classifier,
            )?;
            acc[g].push(a);
        }
    }
    Ok(EvalReport {
        method: method_name.to_string(),
        classifier,
        folds,
        seed,
        grid,
        mean_acc: acc.iter().map(|a| mean(a)).collect(),
        std_acc: acc.iter().map(|a| pop_std(a)).collect(),
    })
}

/// Cross-validated accuracy of the top-`m` features of `method` for every
/// `m` in `grid`. Features are ranked inside each fold on its training rows.
#[allow(clippy::too_many_arguments)]
pub fn accuracy_curve(
    data: &DataMatrix,
    labels: &LabelVector,
    method: Method,
    params: &Params,
    grid: &[usize],
    folds: usize,
    classifier: Classifier,
    seed: u64,
) -> Result<EvalReport> {
    params.check_keys(method)?;
    accuracy_curve_with(
        data,
        labels,
        method.name(),
        |x, y| rank(method, x, Some(y), params, Some(seed)),
        grid,
        folds,
        classifier,
        seed,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classifier_strings() {
        assert_eq!("knn:3".parse::<Classifier>().unwrap(), Classifier::Knn(3));
        assert_eq!("svm:0.5".parse::<Classifier>().unwrap(), Classifier::LinearSvm(0.5));
        for bad in ["knn:0", "svm:-1", "tree:2", "knn"] {
            assert!(bad.parse::<Classifier>().is_err(), "{bad}");
        }
        assert_eq!(Classifier::LinearSvm(1.0).to_string(), "svm:1");
    }

    #[test]
    fn svm_one_vs_rest_separates_three_clusters() {
        let train = DataMatrix::from_rows(&[
            vec![0.0, 0.0],
            vec![0.2, 0.1],
            vec![5.0, 0.0],
            vec![5.1, 0.3],
            vec![0.0, 5.0],
            vec![0.3, 5.2],
        ])
        .unwrap();
        let l = LabelVector::new(vec![0, 0, 1, 1, 2, 2]);
        let test = DataMatrix::from_rows(&[vec![0.1, 0.2], vec![4.8, 0.1], vec![0.1, 4.9]]).unwrap();
        let acc = holdout_accuracy(&train, &l, &test, &LabelVector::new(vec![0, 1, 2]), Classifier::LinearSvm(10.0))
            .unwrap();
        assert_eq!(acc, 1.0);
    }
}
