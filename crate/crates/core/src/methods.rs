//! Registry of the built-in methods and a single string-keyed entry point.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::embedded::{fsv_rank, l0_fs, svm_rfe, FsvParams, L0Params, RfeParams};
use crate::error::{FsError, Result};
use crate::filters::{
    ec_fs, fisher_score, inf_fs, laplacian_score, mcfs_score, mrmr_rank, mutinf_fs, relief_f,
    GraphParams, HeatWidth, McfsParams, ReliefParams, Sweep,
};
use crate::numerics::info::default_bins;
use crate::pipeline::{ranking_from_scores, require_labels, validate_dataset};
use crate::types::{
    DataMatrix, FeatureRanking, FeatureScores, FsClass, FsType, LabelVector, MethodDescriptor,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    SvmRfe,
    InfFs,
    ReliefF,
    Fsv,
    MutInf,
    Mrmr,
    Fisher,
    Laplacian,
    Mcfs,
    L0,
    EcFs,
}

impl Method {
    /// All methods, in catalogue order.
    pub const ALL: [Method; 11] = [
        Method::SvmRfe,
        Method::InfFs,
        Method::ReliefF,
        Method::Fsv,
        Method::MutInf,
        Method::Mrmr,
        Method::Fisher,
        Method::Laplacian,
        Method::Mcfs,
        Method::L0,
        Method::EcFs,
    ];

    /// Dispatch name.
    pub fn name(self) -> &'static str {
        match self {
            Method::SvmRfe => "svmrfe",
            Method::InfFs => "inffs",
            Method::ReliefF => "relieff",
            Method::Fsv => "fsv",
            Method::MutInf => "mutinf",
            Method::Mrmr => "mrmr",
            Method::Fisher => "fisher",
            Method::Laplacian => "laplacian",
            Method::Mcfs => "mcfs",
            Method::L0 => "l0",
            Method::EcFs => "ecfs",
        }
    }

    pub fn descriptor(self) -> MethodDescriptor {
        use FsClass::*;
        use FsType::*;
        let (acronym, fs_type, fs_class, complexity) = match self {
            Method::SvmRfe => ("SVM-RFE", Embedded, Supervised, "O(T^2 n log2 n)"),
            Method::InfFs => ("Inf-FS", Filter, Unsupervised, "O(n^2.37 (1+T))"),
            Method::ReliefF => ("Relief-F", Filter, Supervised, "O(iTnC)"),
            Method::Fsv => ("FSV", Wrapper, Supervised, "N/A"),
            Method::MutInf => ("MutInf", Filter, Supervised, "~O(n^2 T^2)"),
            Method::Mrmr => ("mRMR", Filter, Supervised, "O(n^3 T^2)"),
            Method::Fisher => ("Fisher", Filter, Supervised, "O(Tn)"),
            Method::Laplacian => ("LaplacianScore", Filter, Unsupervised, "N/A"),
            Method::Mcfs => ("MCFS", Filter, Unsupervised, "N/A"),
            Method::L0 => ("L0", Wrapper, Supervised, "N/A"),
            Method::EcFs => ("EC-FS", Filter, Supervised, "O(Tn + n^2)"),
        };
        MethodDescriptor {
            name: self.name().to_string(),
            acronym: acronym.to_string(),
            fs_type,
            fs_class,
            complexity: complexity.to_string(),
            params: BTreeMap::new(),
            iterations: None,
        }
    }

    pub fn is_supervised(self) -> bool {
        !matches!(self, Method::InfFs | Method::Laplacian | Method::Mcfs)
    }

    /// Methods that only accept two classes.
    pub fn is_binary_only(self) -> bool {
        matches!(self, Method::SvmRfe | Method::L0 | Method::Fsv)
    }

    /// Accepted `--params` keys.
    pub fn param_keys(self) -> &'static [&'static str] {
        match self {
            Method::Fisher => &[],
            Method::MutInf | Method::Mrmr => &["bins"],
            Method::ReliefF => &["k", "iterations"],
            Method::Laplacian => &["k", "t"],
            Method::Mcfs => &["k", "t", "clusters", "lambda_frac", "standardize"],
            Method::InfFs => &["alpha"],
            Method::EcFs => &["alpha", "bins"],
            Method::SvmRfe => &["C", "elim_fraction"],
            Method::L0 => &["C", "max_iter"],
            Method::Fsv => &["lambda", "alpha", "max_iter", "tol"],
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = FsError;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| FsError::UnknownMethod(s.to_string()))
    }
}

/// String-valued hyperparameters, as given on the command line.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params(BTreeMap<String, String>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses `k=v,k=v`. Empty input gives no parameters.
    pub fn parse(s: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for item in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| {
                FsError::InvalidArgument(format!("expected key=value, got '{item}'"))
            })?;
            let (k, v) = (k.trim(), v.trim());
            if k.is_empty() {
                return Err(FsError::InvalidArgument(format!("empty key in '{item}'")));
            }
            if map.insert(k.to_string(), v.to_string()).is_some() {
                return Err(FsError::InvalidArgument(format!("duplicate key '{k}'")));
            }
        }
        Ok(Self(map))
    }

    pub fn set(mut self, key: &str, value: impl ToString) -> Self {
        self.0.insert(key.to_string(), value.to_string());
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    pub fn as_map(&self) -> &BTreeMap<String, String> {
        &self.0
    }

    /// Rejects keys the method does not know.
    pub fn check_keys(&self, method: Method) -> Result<()> {
        let allowed = method.param_keys();
        match self.0.keys().find(|k| !allowed.contains(&k.as_str())) {
            None => Ok(()),
            Some(k) => Err(invalid(
                method,
                if allowed.is_empty() {
                    format!("unknown parameter '{k}' (takes none)")
                } else {
                    format!("unknown parameter '{k}' (accepted: {})", allowed.join(", "))
                },
            )),
        }
    }

    fn parsed<T: FromStr>(&self, method: Method, key: &str) -> Result<Option<T>> {
        self.get(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|_| invalid(method, format!("cannot parse {key}='{v}'")))
            })
            .transpose()
    }

    fn f64(&self, method: Method, key: &str) -> Result<Option<f64>> {
        match self.parsed::<f64>(method, key)? {
            Some(v) if !v.is_finite() => Err(invalid(method, format!("{key} must be finite"))),
            other => Ok(other),
        }
    }

    fn usize(&self, method: Method, key: &str) -> Result<Option<usize>> {
        self.parsed(method, key)
    }

    fn bool(&self, method: Method, key: &str) -> Result<Option<bool>> {
        self.get(key)
            .map(|v| match v {
                "true" | "1" | "yes" => Ok(true),
                "false" | "0" | "no" => Ok(false),
                _ => Err(invalid(method, format!("cannot parse {key}='{v}' as a flag"))),
            })
            .transpose()
    }
}

impl From<BTreeMap<String, String>> for Params {
    fn from(map: BTreeMap<String, String>) -> Self {
        Self(map)
    }
}

fn invalid(method: Method, message: String) -> FsError {
    FsError::InvalidParam {
        method: method.name().to_string(),
        message,
    }
}

fn heat_width(method: Method, params: &Params) -> Result<HeatWidth> {
    match params.get("t") {
        None | Some("auto") => Ok(HeatWidth::Auto),
        Some(_) => match params.f64(method, "t")? {
            Some(t) if t > 0.0 => Ok(HeatWidth::Fixed(t)),
            _ => Err(invalid(method, "t must be > 0 or 'auto'".into())),
        },
    }
}

fn graph_params(method: Method, params: &Params) -> Result<GraphParams> {
    let d = GraphParams::default();
    Ok(GraphParams {
        k_neighbors: params.usize(method, "k")?.unwrap_or(d.k_neighbors),
        heat_t: heat_width(method, params)?,
    })
}

fn heat_str(h: HeatWidth) -> String {
    match h {
        HeatWidth::Auto => "auto".into(),
        HeatWidth::Fixed(t) => t.to_string(),
    }
}

fn record(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Ranks the features of `data` with `method`.
///
/// Supervised methods require `labels`; unsupervised ones ignore them except
/// MCFS, which takes its default cluster count from the number of classes.
/// The returned descriptor lists every effective hyperparameter, defaults
/// included. `seed` drives the sampled Relief-F sweep and is echoed in the
/// ranking.
pub fn rank(
    method: Method,
    data: &DataMatrix,
    labels: Option<&LabelVector>,
    params: &Params,
    seed: Option<u64>,
) -> Result<FeatureRanking> {
    params.check_keys(method)?;
    let labels = if method.is_supervised() {
        Some(require_labels(method.name(), data, labels)?)
    } else {
        let report = validate_dataset(data, None);
        if !report.is_valid() {
            return Err(FsError::InvalidData(report.to_string()));
        }
        labels
    };
    let name = method.name();
    let bins_for = |p: &Params| -> Result<usize> {
        let b = p.usize(method, "bins")?.unwrap_or_else(|| default_bins(data.n_samples()));
        if b < 2 {
            return Err(invalid(method, "bins must be >= 2".into()));
        }
        Ok(b)
    };

    let scored = |scores: FeatureScores, desc: MethodDescriptor| ranking_from_scores(scores, desc);
    let mut ranking = match method {
        Method::Fisher => scored(fisher_score(data, labels.unwrap())?, method.descriptor())?,
        Method::MutInf => {
            let bins = bins_for(params)?;
            let desc = method.descriptor().with_params(record(&[("bins", bins.to_string())]));
            scored(mutinf_fs(data, labels.unwrap(), Some(bins))?, desc)?
        }
        Method::Mrmr => mrmr_rank(data, labels.unwrap(), Some(bins_for(params)?))?,
        Method::ReliefF => {
            let k = params.usize(method, "k")?.unwrap_or(10);
            let sweep = match params.usize(method, "iterations")? {
                Some(i) => Sweep::Sampled(i),
                None => Sweep::AllSamples,
            };
            let rp = ReliefParams {
                k,
                sweep,
                seed: seed.unwrap_or(0),
            };
            let probes = match sweep {
                Sweep::AllSamples => data.n_samples(),
                Sweep::Sampled(i) => i,
            };
            let sweep_str = match sweep {
                Sweep::AllSamples => "all".to_string(),
                Sweep::Sampled(i) => i.to_string(),
            };
            let desc = method
                .descriptor()
                .with_params(record(&[("k", k.to_string()), ("iterations", sweep_str)]))
                .with_iterations(probes);
            scored(relief_f(data, labels.unwrap(), &rp)?, desc)?
        }
        Method::Laplacian => {
            let gp = graph_params(method, params)?;
            let desc = method.descriptor().with_params(record(&[
                ("k", gp.k_neighbors.to_string()),
                ("t", heat_str(gp.heat_t)),
            ]));
            scored(laplacian_score(data, &gp)?, desc)?
        }
        Method::Mcfs => {
            let d = McfsParams::default();
            let clusters = match params.usize(method, "clusters")? {
                Some(c) => c,
                None => labels.map_or(d.n_clusters, |l| l.n_classes()),
            };
            let mp = McfsParams {
                graph: graph_params(method, params)?,
                n_clusters: clusters,
                lambda_frac: params.f64(method, "lambda_frac")?.unwrap_or(d.lambda_frac),
                standardize: params.bool(method, "standardize")?.unwrap_or(d.standardize),
                ..d
            };
            let desc = method.descriptor().with_params(record(&[
                ("k", mp.graph.k_neighbors.to_string()),
                ("t", heat_str(mp.graph.heat_t)),
                ("clusters", clusters.to_string()),
                ("lambda_frac", mp.lambda_frac.to_string()),
                ("standardize", mp.standardize.to_string()),
            ]));
            scored(mcfs_score(data, &mp)?, desc)?
        }
        Method::InfFs => {
            let alpha = params.f64(method, "alpha")?.unwrap_or(0.5);
            let desc = method.descriptor().with_params(record(&[("alpha", alpha.to_string())]));
            scored(inf_fs(data, alpha)?, desc)?
        }
        Method::EcFs => {
            let alpha = params.f64(method, "alpha")?.unwrap_or(0.5);
            let bins = bins_for(params)?;
            let desc = method.descriptor().with_params(record(&[
                ("alpha", alpha.to_string()),
                ("bins", bins.to_string()),
            ]));
            scored(ec_fs(data, labels.unwrap(), alpha, Some(bins))?, desc)?
        }
        Method::SvmRfe => {
            let rp = RfeParams {
                c_reg: positive(method, params, "C")?.unwrap_or(1.0),
                elim_fraction: params.f64(method, "elim_fraction")?,
            };
            svm_rfe(data, labels.unwrap(), &rp)?
        }
        Method::L0 => {
            let d = L0Params::default();
            let lp = L0Params {
                c_reg: positive(method, params, "C")?.unwrap_or(d.c_reg),
                max_iter: params.usize(method, "max_iter")?.unwrap_or(d.max_iter),
            };
            l0_fs(data, labels.unwrap(), &lp)?
        }
        Method::Fsv => {
            let d = FsvParams::default();
            let fp = FsvParams {
                lambda: params.f64(method, "lambda")?.unwrap_or(d.lambda),
                alpha_cc: params.f64(method, "alpha")?.unwrap_or(d.alpha_cc),
                max_iter: params.usize(method, "max_iter")?.unwrap_or(d.max_iter),
                tol: params.f64(method, "tol")?.unwrap_or(d.tol),
            };
            fsv_rank(data, labels.unwrap(), &fp)?
        }
    };
    debug_assert_eq!(ranking.method.name, name);
    ranking.seed = seed;
    Ok(ranking)
}

fn positive(method: Method, params: &Params, key: &str) -> Result<Option<f64>> {
    match params.f64(method, key)? {
        Some(v) if v <= 0.0 => Err(invalid(method, format!("{key} must be > 0"))),
        other => Ok(other),
    }
}
