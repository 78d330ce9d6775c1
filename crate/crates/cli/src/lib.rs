//! Command-line front end: `rank`, `select`, `eval` and `bench`.
//!
//! Every command writes its result to a file (atomically) and nothing to
//! standard output. Errors go to the error stream and map to exit codes:
//! 2 for bad arguments, 3 for bad data, 4 for numerical failures.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::thread;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fslib::eval::{accuracy_curve, Classifier, EvalReport};
use fslib::io::{
    fmt_f64, load_csv, load_libsvm, read_ranking, write_atomic, write_ranking, write_subset,
    LabelSpec,
};
use fslib::{rank, select_top, DataMatrix, FsError, LabelVector, Method, Params};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "fslib", version, about = "Feature ranking, selection and evaluation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rank every feature of a dataset.
    Rank {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        method: String,
        /// Method parameters as `key=value,...`.
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
    },
    /// Take the top features of a ranking document.
    Select {
        #[arg(long)]
        ranking: PathBuf,
        #[arg(long)]
        top: usize,
        #[arg(long)]
        output: PathBuf,
    },
    /// Cross-validated accuracy of the top-m features for each m in a grid.
    Eval {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        method: String,
        #[arg(long, default_value = "")]
        params: String,
        #[command(flatten)]
        protocol: ProtocolArgs,
        #[arg(long)]
        output: PathBuf,
    },
    /// Run `eval` for several methods and write a summary table.
    Bench {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated method names, or `all`.
        #[arg(long)]
        methods: String,
        #[command(flatten)]
        protocol: ProtocolArgs,
        /// Directory receiving `<method>.json` and `summary.csv`.
        #[arg(long)]
        output: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Libsvm,
}

#[derive(Debug, Args)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// `last`, `none` or a zero-based column index (CSV only).
    #[arg(long, default_value = "last")]
    label_col: String,
    /// The CSV file starts with a header row.
    #[arg(long)]
    header: bool,
}

#[derive(Debug, Args)]
struct ProtocolArgs {
    /// Subset sizes, e.g. `1,2,5,10`.
    #[arg(long)]
    grid: String,
    #[arg(long, default_value_t = 5)]
    folds: usize,
    /// `knn:K` or `svm:C`.
    #[arg(long, default_value = "knn:3")]
    classifier: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn exit_code(e: &FsError) -> i32 {
    match e {
        FsError::InvalidArgument(_)
        | FsError::UnknownMethod(_)
        | FsError::InvalidParam { .. }
        | FsError::MissingLabels(_) => EXIT_USAGE,
        FsError::NotBinary { .. }
        | FsError::DimensionMismatch(_)
        | FsError::InvalidData(_)
        | FsError::Parse { .. }
        | FsError::Io { .. } => EXIT_DATA,
        FsError::Numerical(_) => EXIT_NUMERICAL,
    }
}

fn label_spec(s: &str) -> Result<LabelSpec, FsError> {
    match s {
        "last" => Ok(LabelSpec::LastColumn),
        "none" => Ok(LabelSpec::NoLabels),
        k => k.parse().map(LabelSpec::ColumnIndex).map_err(|_| {
            FsError::InvalidArgument(format!("--label-col must be last, none or an index, got '{k}'"))
        }),
    }
}

fn load(input: &InputArgs) -> Result<(DataMatrix, Option<LabelVector>), FsError> {
    match input.format {
        Format::Csv => load_csv(&input.input, label_spec(&input.label_col)?, input.header),
        Format::Libsvm => load_libsvm(&input.input).map(|(d, l)| (d, Some(l))),
    }
}

fn parse_grid(s: &str) -> Result<Vec<usize>, FsError> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|_| FsError::InvalidArgument(format!("bad grid entry '{v}'")))
        })
        .collect()
}

fn parse_methods(s: &str) -> Result<Vec<Method>, FsError> {
    if s == "all" {
        return Ok(Method::ALL.to_vec());
    }
    let methods = s
        .split(',')
        .map(|m| m.trim().parse())
        .collect::<Result<Vec<Method>, _>>()?;
    if let Some(dup) = methods.iter().enumerate().find(|(i, m)| methods[..*i].contains(m)) {
        return Err(FsError::InvalidArgument(format!("method {} listed twice", dup.1)));
    }
    Ok(methods)
}

struct Protocol {
    grid: Vec<usize>,
    folds: usize,
    classifier: Classifier,
    seed: u64,
}

impl Protocol {
    fn from_args(a: &ProtocolArgs) -> Result<Self, FsError> {
        Ok(Self {
            grid: parse_grid(&a.grid)?,
            folds: a.folds,
            classifier: a.classifier.parse()?,
            seed: a.seed,
        })
    }
}

fn require_labels(labels: Option<LabelVector>, what: &str) -> Result<LabelVector, FsError> {
    labels.ok_or_else(|| FsError::MissingLabels(what.to_string()))
}

fn evaluate(
    method: Method,
    params: &Params,
    data: &DataMatrix,
    labels: &LabelVector,
    p: &Protocol,
) -> Result<EvalReport, FsError> {
    accuracy_curve(data, labels, method, params, &p.grid, p.folds, p.classifier, p.seed)
}

fn summary_table(grid: &[usize], reports: &[EvalReport]) -> String {
    let mut s = String::from("method");
    for m in grid {
        let _ = write!(s, ",m={m}");
    }
    s.push('\n');
    for r in reports {
        s.push_str(&r.method);
        for v in &r.mean_acc {
            let _ = write!(s, ",{}", fmt_f64(*v));
        }
        s.push('\n');
    }
    s
}

fn run(cmd: Command) -> Result<(), FsError> {
    match cmd {
        Command::Rank {
            input,
            method,
            params,
            seed,
            output,
        } => {
            let method: Method = method.parse()?;
            let params = Params::parse(&params)?;
            params.check_keys(method)?;
            let (data, labels) = load(&input)?;
            let ranking = rank(method, &data, labels.as_ref(), &params, Some(seed))?;
            write_ranking(&ranking, &output)
        }
        Command::Select {
            ranking,
            top,
            output,
        } => {
            let r = read_ranking(&ranking)?;
            let subset = select_top(&r, top)?;
            write_subset(&subset, &r, &output)
        }
        Command::Eval {
            input,
            method,
            params,
            protocol,
            output,
        } => {
            let method: Method = method.parse()?;
            let params = Params::parse(&params)?;
            params.check_keys(method)?;
            let protocol = Protocol::from_args(&protocol)?;
            let (data, labels) = load(&input)?;
            let labels = require_labels(labels, "eval")?;
            let report = evaluate(method, &params, &data, &labels, &protocol)?;
            write_atomic(&output, report.to_json().as_bytes())
        }
        Command::Bench {
            input,
            methods,
            protocol,
            output,
        } => {
            let methods = parse_methods(&methods)?;
            let protocol = Protocol::from_args(&protocol)?;
            let (data, labels) = load(&input)?;
            let labels = require_labels(labels, "bench")?;
            std::fs::create_dir_all(&output).map_err(|e| FsError::Io {
                path: output.clone(),
                source: e,
            })?;
            let params = Params::new();
            let results: Vec<Result<EvalReport, FsError>> = thread::scope(|s| {
                let handles: Vec<_> = methods
                    .iter()
                    .map(|&m| {
                        let (params, data, labels, protocol) = (&params, &data, &labels, &protocol);
                        let out = output.join(format!("{m}.json"));
                        s.spawn(move || {
                            let report = evaluate(m, params, data, labels, protocol)?;
                            write_atomic(&out, report.to_json().as_bytes())?;
                            Ok(report)
                        })
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("bench worker panicked"))
                    .collect()
            });
            let reports = results.into_iter().collect::<Result<Vec<_>, _>>()?;
            let summary = summary_table(&protocol.grid, &reports);
            write_atomic(&output.join("summary.csv"), summary.as_bytes())
        }
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code. Diagnostics are written to `stderr`.
pub fn dispatch<I, T>(argv: I, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match run(cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::Path;
    use std::fs;

    const FISHER_TOY: &str = "0,5,0\n2,5,0\n4,4,1\n6,6,1\n";

    fn call(args: &[&str]) -> (i32, String) {
        let mut err = Vec::new();
        let code = dispatch(std::iter::once("fslib").chain(args.iter().copied()), &mut err);
        (code, String::from_utf8(err).unwrap())
    }

    fn toy(dir: &Path) -> String {
        let p = dir.join("toy.csv");
        fs::write(&p, FISHER_TOY).unwrap();
        p.to_str().unwrap().to_string()
    }

    #[test]
    fn rank_then_select() {
        let dir = tempfile::tempdir().unwrap();
        let input = toy(dir.path());
        let out = dir.path().join("r.out");
        let (code, err) = call(&[
            "rank", "--method", "fisher", "--input", &input, "--label-col", "last", "--output",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_OK, "{err}");
        let r = read_ranking(&out).unwrap();
        // feature 0: between 16, within 4 -> 4; feature 1: between 0 -> 0
        assert_eq!(r.order, vec![0, 1]);
        assert_eq!(r.seed, Some(0));

        let sel = dir.path().join("s.json");
        let (code, _) = call(&["select", "--ranking", out.to_str().unwrap(), "--top", "1", "--output", sel.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
        let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&sel).unwrap()).unwrap();
        assert_eq!(doc["indices"], serde_json::json!([0]));

        let (code, err) = call(&["select", "--ranking", out.to_str().unwrap(), "--top", "0", "--output", sel.to_str().unwrap()]);
        assert_eq!(code, EXIT_USAGE, "{err}");
    }

    #[test]
    fn supervised_method_without_labels() {
        let dir = tempfile::tempdir().unwrap();
        let input = toy(dir.path());
        let out = dir.path().join("r.out");
        let (code, err) = call(&[
            "rank", "--method", "fisher", "--input", &input, "--label-col", "none", "--output",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("fisher requires labels"), "{err}");
        assert!(!out.exists());
    }

    #[test]
    fn argument_and_data_errors() {
        let dir = tempfile::tempdir().unwrap();
        let input = toy(dir.path());
        let out = dir.path().join("r.out");
        let out = out.to_str().unwrap();
        assert_eq!(call(&["rank", "--method", "nope", "--input", &input, "--output", out]).0, EXIT_USAGE);
        assert_eq!(
            call(&["rank", "--method", "inffs", "--input", &input, "--params", "alpah=1", "--output", out]).0,
            EXIT_USAGE
        );
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        let ragged = dir.path().join("bad.csv");
        fs::write(&ragged, "1,2\n3\n").unwrap();
        assert_eq!(
            call(&["rank", "--method", "inffs", "--input", ragged.to_str().unwrap(), "--label-col", "none", "--output", out]).0,
            EXIT_DATA
        );
        // three classes for a binary-only method
        let three = dir.path().join("three.csv");
        fs::write(&three, "0,0\n1,0\n2,1\n3,1\n4,2\n5,2\n").unwrap();
        assert_eq!(
            call(&["rank", "--method", "svmrfe", "--input", three.to_str().unwrap(), "--output", out]).0,
            EXIT_DATA
        );
    }

    #[test]
    fn bench_writes_reports_and_summary() {
        let dir = tempfile::tempdir().unwrap();
        let (d, l) = fslib::eval::gen_fig4_irrelevant(20, 3).unwrap();
        let input = dir.path().join("d.csv");
        fslib::io::write_csv(&input, &d, Some(&l)).unwrap();
        let out = dir.path().join("bench");
        let (code, err) = call(&[
            "bench", "--methods", "fisher,inffs", "--input", input.to_str().unwrap(), "--grid", "1,2",
            "--folds", "2", "--output", out.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_OK, "{err}");
        let summary = fs::read_to_string(out.join("summary.csv")).unwrap();
        let lines: Vec<&str> = summary.lines().collect();
        assert_eq!(lines[0], "method,m=1,m=2");
        assert!(lines[1].starts_with("fisher,") && lines[2].starts_with("inffs,"));
        assert!(out.join("fisher.json").exists() && out.join("inffs.json").exists());
    }
}
