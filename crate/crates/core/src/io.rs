//! Dataset loading (CSV, LIBSVM) and the ranking / subset documents.
//!
//! Documents are written by hand rather than through a serializer so that
//! key order and float formatting are fixed: floats always carry 17
//! significant digits, which makes the files byte-stable and lossless.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use ndarray::Array2;
use serde_json::Value;

use crate::error::{FsError, Result};
use crate::methods::Method;
use crate::types::{
    DataMatrix, Direction, FeatureRanking, FeatureScores, FeatureSubset, FsClass, FsType,
    LabelVector, MethodDescriptor,
};

/// Where the class labels live in a CSV table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelSpec {
    /// Zero-based column index.
    ColumnIndex(usize),
    LastColumn,
    NoLabels,
}

/// Remaps arbitrary label tokens to `0..C` in order of first appearance.
#[derive(Default)]
struct LabelCodes {
    seen: HashMap<String, usize>,
    codes: Vec<usize>,
}

impl LabelCodes {
    fn push(&mut self, token: &str) {
        let next = self.seen.len();
        let code = *self.seen.entry(token.to_string()).or_insert(next);
        self.codes.push(code);
    }

    fn finish(self) -> LabelVector {
        LabelVector::new(self.codes)
    }
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> FsError {
    FsError::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| FsError::io(path, e))
}

/// Loads a comma-separated numeric table.
///
/// Blank lines are ignored. The label column, if any, is removed from the
/// matrix and its values (compared as trimmed strings) are mapped to class
/// ids in order of first appearance.
pub fn load_csv(
    path: impl AsRef<Path>,
    label_spec: LabelSpec,
    has_header: bool,
) -> Result<(DataMatrix, Option<LabelVector>)> {
    let path = path.as_ref();
    let text = read_text(path)?;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty());

    let header: Option<Vec<String>> = if has_header {
        let (_, l) = lines
            .next()
            .ok_or_else(|| parse_err(path, 1, "empty file"))?;
        Some(l.split(',').map(|s| s.trim().to_string()).collect())
    } else {
        None
    };

    let mut width = header.as_ref().map(Vec::len);
    let mut label_col = None;
    let mut values = Vec::new();
    let mut labels = LabelCodes::default();
    let mut rows = 0;
    for (lineno, line) in lines {
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        let w = *width.get_or_insert(cells.len());
        if cells.len() != w {
            return Err(parse_err(
                path,
                lineno,
                format!("ragged row: expected {w} fields, found {}", cells.len()),
            ));
        }
        let lc = *label_col.get_or_insert(match label_spec {
            LabelSpec::NoLabels => None,
            LabelSpec::LastColumn => Some(w - 1),
            LabelSpec::ColumnIndex(k) if k < w => Some(k),
            LabelSpec::ColumnIndex(k) => {
                return Err(FsError::InvalidArgument(format!(
                    "label column {k} out of range for {w} columns"
                )))
            }
        });
        for (c, cell) in cells.iter().enumerate() {
            if Some(c) == lc {
                labels.push(cell);
            } else {
                let v: f64 = cell.parse().map_err(|_| {
                    parse_err(path, lineno, format!("non-numeric cell '{cell}' in column {c}"))
                })?;
                values.push(v);
            }
        }
        rows += 1;
    }
    if rows == 0 {
        return Err(parse_err(path, 1, "empty file"));
    }
    let lc = label_col.flatten();
    let n = width.unwrap() - usize::from(lc.is_some());
    if n == 0 {
        return Err(parse_err(path, 1, "no feature columns"));
    }
    let array = Array2::from_shape_vec((rows, n), values).expect("rectangular by construction");
    let mut data = DataMatrix::new(array)?;
    if let Some(h) = header {
        let names = h
            .into_iter()
            .enumerate()
            .filter(|&(c, _)| Some(c) != lc)
            .map(|(_, s)| s)
            .collect();
        data = data.with_feature_names(names)?;
    }
    Ok((data, lc.map(|_| labels.finish())))
}

/// Loads a LIBSVM / SVMlight file into a dense matrix; unspecified entries
/// are 0 and the feature count is the largest index seen.
pub fn load_libsvm(path: impl AsRef<Path>) -> Result<(DataMatrix, LabelVector)> {
    let path = path.as_ref();
    let text = read_text(path)?;
    let mut labels = LabelCodes::default();
    let mut rows: Vec<Vec<(usize, f64)>> = Vec::new();
    let mut n = 0;
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        labels.push(tokens.next().expect("non-empty line"));
        let mut row = Vec::new();
        let mut last = 0;
        for tok in tokens {
            let (idx, val) = tok
                .split_once(':')
                .ok_or_else(|| parse_err(path, lineno, format!("expected idx:val, got '{tok}'")))?;
            let idx: usize = idx
                .parse()
                .map_err(|_| parse_err(path, lineno, format!("bad index in '{tok}'")))?;
            let val: f64 = val
                .parse()
                .map_err(|_| parse_err(path, lineno, format!("bad value in '{tok}'")))?;
            if idx == 0 {
                return Err(parse_err(path, lineno, "indices are 1-based"));
            }
            if idx <= last {
                return Err(parse_err(
                    path,
                    lineno,
                    format!("indices must be strictly increasing ({idx} after {last})"),
                ));
            }
            last = idx;
            row.push((idx - 1, val));
        }
        n = n.max(last);
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(parse_err(path, 1, "empty file"));
    }
    if n == 0 {
        return Err(parse_err(path, 1, "no features"));
    }
    let mut array = Array2::<f64>::zeros((rows.len(), n));
    for (r, row) in rows.iter().enumerate() {
        for &(c, v) in row {
            array[[r, c]] = v;
        }
    }
    Ok((DataMatrix::new(array)?, labels.finish()))
}

/// Float formatting used by every document: 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// Writes the table as CSV (labels, if given, as the last column).
pub fn write_csv(
    path: impl AsRef<Path>,
    data: &DataMatrix,
    labels: Option<&LabelVector>,
) -> Result<()> {
    let mut out = String::new();
    for (i, row) in data.values().rows().into_iter().enumerate() {
        let mut cells: Vec<String> = row.iter().map(|&v| fmt_f64(v)).collect();
        if let Some(l) = labels {
            cells.push(l.get(i).to_string());
        }
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    write_atomic(path.as_ref(), out.as_bytes())
}

/// Writes through a temporary sibling file and renames it into place, so
/// readers never observe a partial document.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let file_name = path
        .file_name()
        .ok_or_else(|| FsError::io(path, std::io::Error::other("not a file path")))?;
    let tmp = dir.join(format!(
        ".{}.tmp{}",
        file_name.to_string_lossy(),
        std::process::id()
    ));
    let result = fs::File::create(&tmp)
        .and_then(|mut f| f.write_all(bytes).and_then(|_| f.sync_all()))
        .and_then(|_| fs::rename(&tmp, path));
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(FsError::io(path, e));
    }
    Ok(())
}

/// The ranking document as a string.
pub fn ranking_to_json(r: &FeatureRanking) -> String {
    let mut s = String::from("{\n");
    let d = &r.method;
    let _ = writeln!(s, "  \"method\": {},", json_string(&d.name));
    let _ = writeln!(s, "  \"fs_type\": \"{}\",", d.fs_type.code());
    let _ = writeln!(s, "  \"fs_class\": \"{}\",", d.fs_class.code());
    let _ = writeln!(s, "  \"direction\": \"{}\",", r.scores.direction.as_str());
    let scores: Vec<String> = r.scores.scores.iter().map(|&v| fmt_f64(v)).collect();
    let _ = writeln!(s, "  \"scores\": [{}],", scores.join(", "));
    let order: Vec<String> = r.order.iter().map(usize::to_string).collect();
    let _ = writeln!(s, "  \"order\": [{}],", order.join(", "));
    let params: Vec<String> = d
        .params
        .iter()
        .map(|(k, v)| format!("{}: {}", json_string(k), json_string(v)))
        .collect();
    let _ = writeln!(s, "  \"params\": {{{}}},", params.join(", "));
    let seed = r.seed.map_or_else(|| "null".to_string(), |v| v.to_string());
    let _ = writeln!(s, "  \"seed\": {seed}");
    s.push_str("}\n");
    s
}

pub fn write_ranking(ranking: &FeatureRanking, path: impl AsRef<Path>) -> Result<()> {
    write_atomic(path.as_ref(), ranking_to_json(ranking).as_bytes())
}

fn field<'a>(doc: &'a Value, key: &str, path: &Path) -> Result<&'a Value> {
    doc.get(key)
        .ok_or_else(|| parse_err(path, 1, format!("missing key '{key}'")))
}

/// Parses a ranking document.
pub fn read_ranking(path: impl AsRef<Path>) -> Result<FeatureRanking> {
    let path = path.as_ref();
    let text = read_text(path)?;
    parse_ranking(&text).map_err(|m| parse_err(path, 1, m))
}

/// Parses the text of a ranking document.
pub fn parse_ranking(text: &str) -> std::result::Result<FeatureRanking, String> {
    let doc: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let p = Path::new("");
    let get = |k: &str| field(&doc, k, p).map_err(|_| format!("missing key '{k}'"));
    let str_of = |k: &str| -> std::result::Result<String, String> {
        get(k)?
            .as_str()
            .map(str::to_string)
            .ok_or_else(|| format!("'{k}' must be a string"))
    };

    let name = str_of("method")?;
    let fs_type = match str_of("fs_type")?.as_str() {
        "f" => FsType::Filter,
        "w" => FsType::Wrapper,
        "e" => FsType::Embedded,
        other => return Err(format!("bad fs_type '{other}'")),
    };
    let fs_class = match str_of("fs_class")?.as_str() {
        "s" => FsClass::Supervised,
        "u" => FsClass::Unsupervised,
        other => return Err(format!("bad fs_class '{other}'")),
    };
    let direction = Direction::parse(&str_of("direction")?).ok_or("bad direction")?;
    let scores = get("scores")?
        .as_array()
        .ok_or("'scores' must be an array")?
        .iter()
        .map(|v| v.as_f64().ok_or("non-numeric score"))
        .collect::<std::result::Result<Vec<f64>, _>>()?;
    let order = get("order")?
        .as_array()
        .ok_or("'order' must be an array")?
        .iter()
        .map(|v| v.as_u64().map(|u| u as usize).ok_or("non-integer order entry"))
        .collect::<std::result::Result<Vec<usize>, _>>()?;
    let n = scores.len();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
        return Err("'order' is not a permutation of the score indices".into());
    }
    let params: BTreeMap<String, String> = get("params")?
        .as_object()
        .ok_or("'params' must be an object")?
        .iter()
        .map(|(k, v)| {
            v.as_str()
                .map(|s| (k.clone(), s.to_string()))
                .ok_or_else(|| format!("param '{k}' must be a string"))
        })
        .collect::<std::result::Result<_, _>>()?;
    let seed = match get("seed")? {
        Value::Null => None,
        v => Some(v.as_u64().ok_or("'seed' must be a non-negative integer or null")?),
    };

    let mut method = match name.parse::<Method>() {
        Ok(m) => m.descriptor(),
        Err(_) => MethodDescriptor::custom(&name, fs_type, fs_class),
    };
    method.fs_type = fs_type;
    method.fs_class = fs_class;
    method.params = params;
    Ok(FeatureRanking {
        order,
        scores: FeatureScores::new(scores, direction),
        method,
        seed,
    })
}

/// The subset document: source method, feature count and selected indices.
pub fn subset_to_json(subset: &FeatureSubset, ranking: &FeatureRanking) -> String {
    let idx: Vec<String> = subset.indices().iter().map(usize::to_string).collect();
    format!(
        "{{\n  \"method\": {},\n  \"n_features\": {},\n  \"m\": {},\n  \"indices\": [{}]\n}}\n",
        json_string(&ranking.method.name),
        ranking.n_features(),
        subset.len(),
        idx.join(", ")
    )
}

pub fn write_subset(
    subset: &FeatureSubset,
    ranking: &FeatureRanking,
    path: impl AsRef<Path>,
) -> Result<()> {
    write_atomic(path.as_ref(), subset_to_json(subset, ranking).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::ranking_from_scores;

    fn tmp_with(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn csv_last_column_labels() {
        let f = tmp_with("1,2,0\n3,4,1\n");
        let (d, l) = load_csv(f.path(), LabelSpec::LastColumn, false).unwrap();
        assert_eq!(d.values(), ndarray::array![[1.0, 2.0], [3.0, 4.0]]);
        assert_eq!(l.unwrap().as_slice(), &[0, 1]);
        let (d, l) = load_csv(f.path(), LabelSpec::NoLabels, false).unwrap();
        assert_eq!(d.n_features(), 3);
        assert!(l.is_none());
    }

    #[test]
    fn csv_label_remap_and_header() {
        let f = tmp_with("a,y,b\n1,+1,2\n3,-1,4\n5,+1,6\n");
        let (d, l) = load_csv(f.path(), LabelSpec::ColumnIndex(1), true).unwrap();
        assert_eq!(l.unwrap().as_slice(), &[0, 1, 0]);
        assert_eq!(d.feature_names().unwrap(), &["a".to_string(), "b".to_string()]);
        assert_eq!(d.column(1).to_vec(), vec![2.0, 4.0, 6.0]);
    }

    #[test]
    fn csv_errors() {
        let ragged = tmp_with("1,2\n3\n");
        let err = load_csv(ragged.path(), LabelSpec::NoLabels, false).unwrap_err();
        assert!(matches!(err, FsError::Parse { line: 2, .. }), "{err}");
        assert!(err.to_string().contains("ragged"));
        let text = tmp_with("1,x\n3,4\n");
        assert!(matches!(
            load_csv(text.path(), LabelSpec::NoLabels, false),
            Err(FsError::Parse { .. })
        ));
        let empty = tmp_with("");
        assert!(matches!(
            load_csv(empty.path(), LabelSpec::NoLabels, false),
            Err(FsError::Parse { .. })
        ));
    }

    #[test]
    fn libsvm_format() {
        let f = tmp_with("+1 1:0.5 3:2\n\n-1 2:1\n");
        let (d, l) = load_libsvm(f.path()).unwrap();
        assert_eq!(d.values(), ndarray::array![[0.5, 0.0, 2.0], [0.0, 1.0, 0.0]]);
        assert_eq!(l.as_slice(), &[0, 1]);
        let bad = tmp_with("1 2:1 1:1\n0 1:1\n");
        let err = load_libsvm(bad.path()).unwrap_err();
        assert!(err.to_string().contains("strictly increasing"));
    }

    #[test]
    fn ranking_document_round_trip() {
        let scores = FeatureScores::higher(vec![0.1, 1.0 / 3.0, -2.5e-300, 1e12]);
        let desc = Method::Fisher.descriptor();
        let mut r = ranking_from_scores(scores, desc).unwrap();
        r.seed = Some(7);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.json");
        write_ranking(&r, &path).unwrap();
        let first = fs::read(&path).unwrap();
        write_ranking(&r, &path).unwrap();
        assert_eq!(first, fs::read(&path).unwrap());
        let back = read_ranking(&path).unwrap();
        assert_eq!(back.order, r.order);
        assert_eq!(back.scores, r.scores);
        assert_eq!(back.seed, Some(7));
        assert_eq!(back.method.name, "fisher");
    }

    #[test]
    fn unwritable_path_names_the_path() {
        let r = ranking_from_scores(FeatureScores::higher(vec![1.0]), Method::Fisher.descriptor())
            .unwrap();
        let err = write_ranking(&r, "/nonexistent-dir/r.json").unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/r.json"), "{err}");
    }
}
