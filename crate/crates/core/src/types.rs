//! Domain types shared by every ranking method.

use std::collections::BTreeMap;
use std::fmt;

use ndarray::{Array2, ArrayView1, ArrayView2};

use crate::error::{FsError, Result};

/// Score used in place of an infinite score, so rankings serialize cleanly.
pub const SENTINEL: f64 = 1e12;

/// A `T x n` sample-by-feature matrix.
///
/// Construction through [`DataMatrix::from_array`] does not check the
/// invariants (finite entries, `T >= 2`, `n >= 1`); use
/// [`crate::validate_dataset`] or [`DataMatrix::new`] for that.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    values: Array2<f64>,
    feature_names: Option<Vec<String>>,
}

impl DataMatrix {
    /// Checked constructor.
    pub fn new(values: Array2<f64>) -> Result<Self> {
        let data = Self::from_array(values);
        let report = crate::pipeline::validate_dataset(&data, None);
        if report.is_valid() {
            Ok(data)
        } else {
            Err(FsError::InvalidData(report.to_string()))
        }
    }

    pub fn from_array(values: Array2<f64>) -> Self {
        Self {
            values,
            feature_names: None,
        }
    }

    /// Builds a matrix from row vectors. Rows must all have the same length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let t = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(FsError::DimensionMismatch(format!(
                "row {i} has {} columns, expected {n}",
                r.len()
            )));
        }
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        let values = Array2::from_shape_vec((t, n), flat)
            .map_err(|e| FsError::DimensionMismatch(e.to_string()))?;
        Ok(Self::from_array(values))
    }

    /// Builds a matrix from feature columns of equal length.
    pub fn from_columns(cols: &[Vec<f64>]) -> Result<Self> {
        let n = cols.len();
        let t = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|c| c.len() != t) {
            return Err(FsError::DimensionMismatch(
                "feature columns differ in length".into(),
            ));
        }
        Ok(Self::from_array(Array2::from_shape_fn((t, n), |(i, j)| {
            cols[j][i]
        })))
    }

    pub fn with_feature_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n_features() {
            return Err(FsError::DimensionMismatch(format!(
                "{} feature names for {} features",
                names.len(),
                self.n_features()
            )));
        }
        self.feature_names = Some(names);
        Ok(self)
    }

    pub fn n_samples(&self) -> usize {
        self.values.nrows()
    }

    pub fn n_features(&self) -> usize {
        self.values.ncols()
    }

    pub fn values(&self) -> ArrayView2<'_, f64> {
        self.values.view()
    }

    pub fn into_values(self) -> Array2<f64> {
        self.values
    }

    pub fn column(&self, j: usize) -> ArrayView1<'_, f64> {
        self.values.column(j)
    }

    pub fn row(&self, i: usize) -> ArrayView1<'_, f64> {
        self.values.row(i)
    }

    pub fn feature_names(&self) -> Option<&[String]> {
        self.feature_names.as_deref()
    }

    /// Sub-matrix of the given rows (in the given order).
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let values = self.values.select(ndarray::Axis(0), rows);
        Self {
            values,
            feature_names: self.feature_names.clone(),
        }
    }

    /// Sub-matrix of the given feature columns (in the given order).
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let values = self.values.select(ndarray::Axis(1), cols);
        let feature_names = self
            .feature_names
            .as_ref()
            .map(|names| cols.iter().map(|&c| names[c].clone()).collect());
        Self {
            values,
            feature_names,
        }
    }
}

/// Class ids in `[0, C)`, one per sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelVector {
    labels: Vec<usize>,
    n_classes: usize,
}

impl LabelVector {
    /// `C` is taken as `max(label) + 1`; presence of every class is checked by
    /// [`crate::validate_dataset`].
    pub fn new(labels: Vec<usize>) -> Self {
        let n_classes = labels.iter().max().map_or(0, |&m| m + 1);
        Self { labels, n_classes }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.labels
    }

    pub fn get(&self, i: usize) -> usize {
        self.labels[i]
    }

    /// Number of samples of each class.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n_classes];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    pub fn select(&self, rows: &[usize]) -> Self {
        Self {
            labels: rows.iter().map(|&r| self.labels[r]).collect(),
            n_classes: self.n_classes,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    HigherBetter,
    LowerBetter,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::HigherBetter => "HigherBetter",
            Direction::LowerBetter => "LowerBetter",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "HigherBetter" => Some(Direction::HigherBetter),
            "LowerBetter" => Some(Direction::LowerBetter),
            _ => None,
        }
    }

    /// The worst possible score in this direction.
    pub fn worst(self) -> f64 {
        match self {
            Direction::HigherBetter => -SENTINEL,
            Direction::LowerBetter => SENTINEL,
        }
    }
}

/// Per-feature scores together with the direction in which they improve.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureScores {
    pub scores: Vec<f64>,
    pub direction: Direction,
}

impl FeatureScores {
    pub fn new(scores: Vec<f64>, direction: Direction) -> Self {
        Self { scores, direction }
    }

    pub fn higher(scores: Vec<f64>) -> Self {
        Self::new(scores, Direction::HigherBetter)
    }

    pub fn lower(scores: Vec<f64>) -> Self {
        Self::new(scores, Direction::LowerBetter)
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FsType {
    Filter,
    Wrapper,
    Embedded,
}

impl FsType {
    /// One-letter code used in ranking documents.
    pub fn code(self) -> &'static str {
        match self {
            FsType::Filter => "f",
            FsType::Wrapper => "w",
            FsType::Embedded => "e",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FsClass {
    Supervised,
    Unsupervised,
}

impl FsClass {
    pub fn code(self) -> &'static str {
        match self {
            FsClass::Supervised => "s",
            FsClass::Unsupervised => "u",
        }
    }
}

/// Identity and metadata of a ranking method.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodDescriptor {
    /// Dispatch name (`fisher`, `svmrfe`, ...).
    pub name: String,
    /// Display acronym (`Fisher`, `SVM-RFE`, ...).
    pub acronym: String,
    pub fs_type: FsType,
    pub fs_class: FsClass,
    /// Complexity tag, `N/A` when undocumented.
    pub complexity: String,
    /// Effective hyperparameters.
    pub params: BTreeMap<String, String>,
    /// Iteration count `i` for iterative methods.
    pub iterations: Option<usize>,
}

impl MethodDescriptor {
    pub fn with_params(mut self, params: BTreeMap<String, String>) -> Self {
        self.params = params;
        self
    }

    pub fn with_iterations(mut self, iterations: usize) -> Self {
        self.iterations = Some(iterations);
        self
    }

    /// Descriptor for a caller-defined ranking that is not one of the
    /// registered methods.
    pub fn custom(name: &str, fs_type: FsType, fs_class: FsClass) -> Self {
        Self {
            name: name.to_string(),
            acronym: name.to_string(),
            fs_type,
            fs_class,
            complexity: "N/A".into(),
            params: BTreeMap::new(),
            iterations: None,
        }
    }
}

/// A permutation of feature indices, best first.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRanking {
    pub order: Vec<usize>,
    pub scores: FeatureScores,
    pub method: MethodDescriptor,
    pub seed: Option<u64>,
}

impl FeatureRanking {
    pub fn n_features(&self) -> usize {
        self.order.len()
    }

    /// Position of each feature in `order` (0 = best).
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (rank, &f) in self.order.iter().enumerate() {
            pos[f] = rank;
        }
        pos
    }
}

/// Sorted, distinct feature indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureSubset {
    indices: Vec<usize>,
}

impl FeatureSubset {
    /// Fails unless `indices` is strictly increasing and within `[0, n)`.
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FsError::InvalidArgument(
                "subset indices must be strictly increasing".into(),
            ));
        }
        if let Some(&last) = indices.last() {
            if last >= n {
                return Err(FsError::InvalidArgument(format!(
                    "subset index {last} out of range for {n} features"
                )));
            }
        }
        Ok(Self { indices })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

impl fmt::Display for FeatureSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
