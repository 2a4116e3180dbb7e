//! `matalg` — classify diagonal/arbitrary matrix pairs from their support
//! digraph, list maximal pattern subalgebras, and count minimal strongly
//! connected digraphs. All I/O is UTF-8 JSON on files or standard streams.
//!
//! Exit codes: 0 success, 2 parse error, 3 invalid eigenvalue spectrum,
//! 4 verification or golden-table mismatch, 5 cap or range violation.

use clap::{Args, Parser, Subcommand};
use matalg::golden;
use matalg::json::{DerivationRow, IngestError, PairJson, SubalgebraListing, SubspaceListing};
use matalg::lattice::{all_proper_subsets, IndexSubset};
use matalg::oracle::{commutant_basis, coordinate_subspace_invariant, generated_algebra, is_decomposable};
use matalg::{
    classify, count_table_row, enumerate_maximal_subalgebras, lift_children, lift_subalgebras,
    stream_minimal_scc, ClassificationReport, CountRow, CriteriaError, DiagonalSpectrum,
    EnumerationConfig, EnumerationError, Matrix, OracleError, Pattern,
};
use serde::Serialize;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_PARSE: u8 = 2;
const EXIT_SPECTRUM: u8 = 3;
const EXIT_MISMATCH: u8 = 4;
const EXIT_CAP: u8 = 5;

#[derive(Parser)]
#[command(name = "matalg", version, about, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a (lambda, A) pair as irreducible / Schur irreducible /
    /// indecomposable and list its invariant coordinate subspaces.
    Classify(ClassifyArgs),
    /// List only the invariant coordinate subspaces of a pair.
    Subspaces(PairInputArgs),
    /// Close a pattern under the pattern product.
    Closure(ClosureArgs),
    /// List all maximal proper pattern subalgebras of Mat(n).
    Subalgebras(SubalgebrasArgs),
    /// Enumerate minimal strongly connected digraphs on n vertices.
    Enumerate(EnumerateArgs),
    /// Cross-check the classifier against the exact brute-force oracles.
    OracleVerify(PairInputArgs),
    /// Count tables for minimal strongly connected digraphs.
    Tables(TablesArgs),
}

#[derive(Args)]
struct PairInputArgs {
    /// Pair file: {"lambda": [[re_num,re_den,im_num,im_den], ...], "A": {...}}
    #[arg(long)]
    input: PathBuf,
    /// Output path (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
    /// Support tolerance for float-entry matrices ("entries_f")
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    pair: PairInputArgs,
    /// Additionally run the oracle cross-checks; exit 4 on any disagreement
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct ClosureArgs {
    /// Pattern file: {"n": ..., "edges": [[k,m], ...]} or {"adjacency": [[0,1,...], ...]}
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Adjoin all diagonal pairs before closing
    #[arg(long)]
    with_diagonal: bool,
}

#[derive(Args)]
struct SubalgebrasArgs {
    /// Dimension, 2..=12
    #[arg(long)]
    n: usize,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also emit the lift derivation from level n-1 and cross-check it
    /// against direct enumeration (exit 4 on disagreement)
    #[arg(long)]
    recursion: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Number of vertices
    #[arg(long)]
    n: usize,
    /// Count isomorphism classes instead of labeled digraphs
    #[arg(long)]
    unlabeled: bool,
    /// Write the pattern stream as JSON lines to this path
    #[arg(long)]
    stream: Option<PathBuf>,
    /// Raise the dimension cap (default 6)
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TablesArgs {
    /// Compute rows for n = 1..=max_n
    #[arg(long)]
    max_n: usize,
    /// Include labeled counts
    #[arg(long)]
    labeled: bool,
    /// Include isomorphism-class counts
    #[arg(long)]
    unlabeled: bool,
    /// Compare against the embedded published values; exit 4 on mismatch
    #[arg(long)]
    golden: bool,
    /// Raise the dimension cap (default 6)
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<IngestError> for CliError {
    fn from(e: IngestError) -> Self {
        let code = match e {
            IngestError::Spectrum(_) => EXIT_SPECTRUM,
            _ => EXIT_PARSE,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<CriteriaError> for CliError {
    fn from(e: CriteriaError) -> Self {
        let code = match e {
            CriteriaError::DimensionMismatch(..) => EXIT_PARSE,
            CriteriaError::ListingTooLarge(_) => EXIT_CAP,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<EnumerationError> for CliError {
    fn from(e: EnumerationError) -> Self {
        CliError::new(EXIT_CAP, e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::ScanTooLarge(_) => EXIT_CAP,
            _ => EXIT_PARSE,
        };
        CliError::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Classify(args) => run_classify(args),
        Command::Subspaces(args) => run_subspaces(args),
        Command::Closure(args) => run_closure(args),
        Command::Subalgebras(args) => run_subalgebras(args),
        Command::Enumerate(args) => run_enumerate(args),
        Command::OracleVerify(args) => run_oracle_verify(args),
        Command::Tables(args) => run_tables(args),
    }
}

fn read_pair(args: &PairInputArgs) -> Result<(DiagonalSpectrum, Matrix), CliError> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", args.input.display())))?;
    let wire: PairJson = serde_json::from_str(&text)
        .map_err(|e| CliError::new(EXIT_PARSE, format!("invalid pair file: {e}")))?;
    if args.tolerance < 0.0 || !args.tolerance.is_finite() {
        return Err(CliError::new(EXIT_PARSE, "tolerance must be a nonnegative finite number"));
    }
    Ok(wire.into_pair(args.tolerance)?)
}

fn write_output<T: Serialize>(path: Option<&Path>, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::new(EXIT_PARSE, format!("serialization failed: {e}")))?;
    text.push('\n');
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_classify(args: ClassifyArgs) -> Result<(), CliError> {
    let (spectrum, a) = read_pair(&args.pair)?;
    let report = classify(&spectrum, &a)?;
    write_output(args.pair.output.as_deref(), &report)?;
    if args.verify {
        let verification = verify_against_oracle(&spectrum, &a, &report)?;
        for check in &verification.checks {
            eprintln!(
                "verify {}: classifier={} oracle={} {}",
                check.name,
                check.classifier,
                check.oracle,
                if check.agree { "ok" } else { "MISMATCH" }
            );
        }
        if !verification.all_match {
            return Err(CliError::new(EXIT_MISMATCH, "oracle disagrees with the classifier"));
        }
    }
    Ok(())
}

fn run_subspaces(args: PairInputArgs) -> Result<(), CliError> {
    let (spectrum, a) = read_pair(&args)?;
    let subsets = matalg::invariant_coordinate_subspaces(&spectrum, &a)?;
    let listing = SubspaceListing {
        n: spectrum.n(),
        invariant_subspaces: subsets
            .iter()
            .map(|s| s.members().iter().map(|v| v + 1).collect())
            .collect(),
    };
    write_output(args.output.as_deref(), &listing)
}

fn run_closure(args: ClosureArgs) -> Result<(), CliError> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", args.input.display())))?;
    let pattern: Pattern = serde_json::from_str(&text)
        .map_err(|e| CliError::new(EXIT_PARSE, format!("invalid pattern file: {e}")))?;
    write_output(args.output.as_deref(), &pattern.closure(args.with_diagonal))
}

fn run_subalgebras(args: SubalgebrasArgs) -> Result<(), CliError> {
    if !(2..=12).contains(&args.n) {
        return Err(CliError::new(
            EXIT_CAP,
            format!("subalgebra listings cover 2 <= n <= 12, got {}", args.n),
        ));
    }
    let subalgebras = enumerate_maximal_subalgebras(args.n)
        .map_err(|e| CliError::new(EXIT_CAP, e.to_string()))?;
    let derivation = if args.recursion {
        if args.n < 3 {
            return Err(CliError::new(
                EXIT_CAP,
                "the recursion derivation needs a previous level: n >= 3",
            ));
        }
        let previous = all_proper_subsets(args.n - 1)
            .map_err(|e| CliError::new(EXIT_CAP, e.to_string()))?;
        let lifted = lift_subalgebras(&previous)
            .map_err(|e| CliError::new(EXIT_MISMATCH, e.to_string()))?;
        let direct: Vec<IndexSubset> = subalgebras.iter().map(|s| *s.subset()).collect();
        if lifted != direct {
            return Err(CliError::new(
                EXIT_MISMATCH,
                "lift recursion disagrees with direct enumeration",
            ));
        }
        Some(
            previous
                .iter()
                .map(|p| {
                    lift_children(p)
                        .map(|c| DerivationRow::from(&c))
                        .map_err(|e| CliError::new(EXIT_CAP, e.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?,
        )
    } else {
        None
    };
    let listing = SubalgebraListing {
        n: args.n,
        count: subalgebras.len(),
        subalgebras,
        derivation,
    };
    write_output(args.output.as_deref(), &listing)
}

fn enumeration_config(cap: Option<usize>) -> Result<EnumerationConfig, CliError> {
    let mut cfg = EnumerationConfig::default();
    if let Some(cap) = cap {
        cfg.cap = cap;
    }
    if let Ok(v) = std::env::var("MATALG_THREADS") {
        cfg.threads = v.parse().map_err(|_| {
            CliError::new(EXIT_PARSE, format!("MATALG_THREADS must be a number, got {v:?}"))
        })?;
    }
    Ok(cfg)
}

fn run_enumerate(args: EnumerateArgs) -> Result<(), CliError> {
    let cfg = enumeration_config(args.cap)?;
    let labeled_mode = !args.unlabeled;
    let start = std::time::Instant::now();
    let count = match &args.stream {
        Some(path) => {
            let file = fs::File::create(path)
                .map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
            let mut out = std::io::BufWriter::new(file);
            let mut write_error = None;
            let count = stream_minimal_scc(args.n, labeled_mode, &cfg, |p| {
                if write_error.is_none() {
                    let line = serde_json::to_string(p).expect("pattern serializes");
                    if let Err(e) = writeln!(out, "{line}") {
                        write_error = Some(e);
                    }
                }
            })?;
            out.flush()
                .map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
            if let Some(e) = write_error {
                return Err(CliError::new(EXIT_PARSE, format!("{}: {e}", path.display())));
            }
            count
        }
        None => matalg::enumerate_minimal_scc(args.n, labeled_mode, &cfg)?,
    };
    let row = CountRow {
        n: args.n,
        labeled: labeled_mode.then_some(count),
        unlabeled: (!labeled_mode).then_some(count),
        seconds: start.elapsed().as_secs_f64(),
    };
    write_output(args.output.as_deref(), &row)
}

fn run_tables(args: TablesArgs) -> Result<(), CliError> {
    let cfg = enumeration_config(args.cap)?;
    // with no selection, produce both counts
    let (want_labeled, want_unlabeled) = if args.labeled || args.unlabeled {
        (args.labeled, args.unlabeled)
    } else {
        (true, true)
    };
    if args.max_n == 0 {
        return Err(CliError::new(EXIT_CAP, "max-n must be at least 1"));
    }
    let mut rows = Vec::with_capacity(args.max_n);
    for n in 1..=args.max_n {
        rows.push(count_table_row(n, want_labeled, want_unlabeled, &cfg)?);
    }
    write_output(args.output.as_deref(), &rows)?;
    if args.golden {
        for row in &rows {
            check_golden(row.n, "labeled", row.labeled, golden::labeled_golden(row.n))?;
            check_golden(row.n, "unlabeled", row.unlabeled, golden::unlabeled_golden(row.n))?;
        }
    }
    Ok(())
}

fn check_golden(
    n: usize,
    kind: &str,
    computed: Option<u64>,
    expected: Option<u64>,
) -> Result<(), CliError> {
    let Some(computed) = computed else {
        return Ok(());
    };
    match expected {
        Some(expected) if expected == computed => Ok(()),
        Some(expected) => Err(CliError::new(
            EXIT_MISMATCH,
            format!("golden mismatch at n={n}: {kind} count {computed} != published {expected}"),
        )),
        None => Err(CliError::new(
            EXIT_MISMATCH,
            format!("no published {kind} value for n={n}"),
        )),
    }
}

#[derive(Serialize)]
struct OracleCheck {
    name: &'static str,
    classifier: bool,
    oracle: bool,
    agree: bool,
}

#[derive(Serialize)]
struct OracleVerification {
    n: usize,
    checks: Vec<OracleCheck>,
    invariant_subspaces_agree: bool,
    all_match: bool,
}

fn verify_against_oracle(
    spectrum: &DiagonalSpectrum,
    a: &Matrix,
    report: &ClassificationReport,
) -> Result<OracleVerification, CliError> {
    let n = spectrum.n();
    let lam = spectrum.to_matrix();
    let generated_dim = generated_algebra(&[lam.clone(), a.clone()])?.dimension();
    let commutant_dim = commutant_basis(&[lam.clone(), a.clone()])?.dimension();
    let decomposable = is_decomposable(spectrum, a)?;

    let mats = [lam, a.clone()];
    let oracle_invariant: Vec<IndexSubset> = if n == 1 {
        Vec::new()
    } else {
        all_proper_subsets(n)
            .map_err(|e| CliError::new(EXIT_CAP, e.to_string()))?
            .into_iter()
            .filter(|s| coordinate_subspace_invariant(&mats, s))
            .collect()
    };
    let subsets_agree = oracle_invariant == report.invariant_subsets;

    let checks = vec![
        OracleCheck {
            name: "irreducible",
            classifier: report.irreducible,
            oracle: generated_dim == n * n,
            agree: report.irreducible == (generated_dim == n * n),
        },
        OracleCheck {
            name: "schur_irreducible",
            classifier: report.schur_irreducible,
            oracle: commutant_dim == 1,
            agree: report.schur_irreducible == (commutant_dim == 1),
        },
        OracleCheck {
            name: "indecomposable",
            classifier: report.indecomposable,
            oracle: !decomposable,
            agree: report.indecomposable == !decomposable,
        },
    ];
    let all_match = subsets_agree && checks.iter().all(|c| c.agree);
    Ok(OracleVerification {
        n,
        checks,
        invariant_subspaces_agree: subsets_agree,
        all_match,
    })
}

fn run_oracle_verify(args: PairInputArgs) -> Result<(), CliError> {
    let (spectrum, a) = read_pair(&args)?;
    let report = classify(&spectrum, &a)?;
    let verification = verify_against_oracle(&spectrum, &a, &report)?;
    write_output(args.output.as_deref(), &verification)?;
    if !verification.all_match {
        return Err(CliError::new(EXIT_MISMATCH, "oracle disagrees with the classifier"));
    }
    Ok(())
}
