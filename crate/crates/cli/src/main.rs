//! Command-line front end for the all-minors matrix tree identity toolkit.
//!
//! Exit codes: 0 success (and identity match), 1 verified mismatch or
//! internal invariant breach, 2 input or argument error, 3 contract or
//! resource-guard violation.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use allminors::json::{
    forest_json, fuzz_summary_json, parse_forest_json, parse_graph_json, parse_matrix_json,
    rational_string, report_json_numeric, report_json_symbolic, tree_count_json,
};
use allminors::{
    count_trees, count_trees_with_cap, enumerate_forests, enumerate_forests_with_cap, epsilon,
    fuzz_campaign, fuzz_campaign_with_cap, induced_bijection, sgn_bijection, subsets_of_size,
    symbolic_verify, symbolic_verify_with_cap, verify_identity, verify_identity_with_cap, Error,
    Result, TreeCountReport, VerificationReport, Vertex, VertexSubset,
};

/// Entry bound for the random matrices drawn during fuzz campaigns.
const FUZZ_ENTRY_BOUND: i64 = 9;

/// Writes one stdout line, exiting quietly when the reader has gone away
/// (enumerations are long; `| head` must not panic the process).
fn out(args: std::fmt::Arguments<'_>) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout.write_fmt(args).and_then(|()| stdout.write_all(b"\n")) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(1);
    }
}

macro_rules! outln {
    ($($t:tt)*) => { out(format_args!($($t)*)) };
}

#[derive(Parser)]
#[command(
    name = "allminors",
    version,
    about = "Exact checks of the all-minors matrix tree identity"
)]
struct Cli {
    /// Path to the JSON input (matrix, forest, or graph, per command).
    #[arg(long, global = true, conflicts_with = "inline")]
    input: Option<PathBuf>,

    /// Inline JSON input instead of a file.
    #[arg(long, global = true)]
    inline: Option<String>,

    /// Comma-separated 1-based vertex list for U, e.g. "1,3".
    #[arg(long, global = true)]
    u: Option<String>,

    /// Comma-separated 1-based vertex list for W.
    #[arg(long, global = true)]
    w: Option<String>,

    /// Seed for fuzz campaigns.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Random matrices per size in fuzz campaigns.
    #[arg(long, global = true, default_value_t = 25)]
    trials: usize,

    /// Override the enumeration / symbolic size cap.
    #[arg(long, global = true)]
    cap: Option<usize>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Attach each forest's sign to enumerate output.
    #[arg(long, global = true)]
    signs: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Check det M(W,U) against the signed forest sum for one matrix.
    Verify,
    /// List the forests from U to W on n vertices in canonical order.
    Enumerate { n: usize },
    /// Show the bijection and sign data of one forest.
    Sign,
    /// Check the identity as a polynomial equality at size n; sweeps every
    /// (U, W) pair unless --u and --w pin one.
    Symbolic { n: usize },
    /// Randomized verification campaign over all subset pairs up to n_max.
    Fuzz { n_max: usize },
    /// Count and weigh the spanning trees of a weighted digraph.
    CountTrees {
        /// Root vertex for the tree orientation.
        #[arg(long, default_value_t = 1)]
        root: Vertex,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse(_) => 2,
                Error::Internal(_) => 1,
                _ => 3,
            })
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match cli.command {
        Command::Verify => cmd_verify(cli),
        Command::Enumerate { n } => cmd_enumerate(cli, n),
        Command::Sign => cmd_sign(cli),
        Command::Symbolic { n } => cmd_symbolic(cli, n),
        Command::Fuzz { n_max } => cmd_fuzz(cli, n_max),
        Command::CountTrees { root } => cmd_count_trees(cli, root),
    }
}

fn read_payload(cli: &Cli) -> Result<String> {
    match (&cli.input, &cli.inline) {
        (Some(path), _) => std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display()))),
        (None, Some(text)) => Ok(text.clone()),
        (None, None) => Err(Error::Parse(
            "provide the input via --input PATH or --inline JSON".into(),
        )),
    }
}

fn parse_vertex_list(text: &str, what: &str) -> Result<Vec<Vertex>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<Vertex>()
                .map_err(|_| Error::Parse(format!("{what}: {t:?} is not a vertex number")))
        })
        .collect()
}

/// Both subsets, validated against n. All failures are argument errors.
fn required_uw(cli: &Cli, n: usize) -> Result<(VertexSubset, VertexSubset)> {
    let (Some(ut), Some(wt)) = (&cli.u, &cli.w) else {
        return Err(Error::Parse("this command requires --u and --w".into()));
    };
    let uv = parse_vertex_list(ut, "--u")?;
    let wv = parse_vertex_list(wt, "--w")?;
    if uv.len() != wv.len() {
        return Err(Error::Parse(format!(
            "--u lists {} vertices but --w lists {}; the subsets must have equal size",
            uv.len(),
            wv.len()
        )));
    }
    let u = VertexSubset::new(n, uv).map_err(|e| Error::Parse(format!("--u: {e}")))?;
    let w = VertexSubset::new(n, wv).map_err(|e| Error::Parse(format!("--w: {e}")))?;
    Ok((u, w))
}

fn print_numeric_report(cli: &Cli, report: &VerificationReport<allminors::Rational>) {
    match cli.format {
        Format::Json => outln!("{}", report_json_numeric(report)),
        Format::Table => {
            outln!("n            {}", report.n);
            outln!("U            {}", report.u);
            outln!("W            {}", report.w);
            outln!("forest_count {}", report.forest_count);
            outln!("lhs          {}", rational_string(&report.lhs));
            outln!("rhs          {}", rational_string(&report.rhs));
            outln!("match        {}", report.matched);
            outln!("elapsed_ms   {}", report.elapsed.as_millis());
        }
    }
}

fn cmd_verify(cli: &Cli) -> Result<u8> {
    let m = parse_matrix_json(&read_payload(cli)?)?;
    let (u, w) = required_uw(cli, m.rows())?;
    let report = match cli.cap {
        Some(cap) => verify_identity_with_cap(&m, &u, &w, cap)?,
        None => verify_identity(&m, &u, &w)?,
    };
    print_numeric_report(cli, &report);
    Ok(u8::from(!report.matched))
}

fn cmd_enumerate(cli: &Cli, n: usize) -> Result<u8> {
    let (u, w) = required_uw(cli, n)?;
    let forests = match cli.cap {
        Some(cap) => enumerate_forests_with_cap(n, &u, &w, cap)?,
        None => enumerate_forests(n, &u, &w)?,
    };
    match cli.format {
        Format::Json => {
            outln!("{}", json!({ "count": forests.len() }));
            for f in &forests {
                let mut line = json!({ "edges": forest_json(f)["edges"] });
                if cli.signs {
                    let sign = epsilon(&u, &w, f)?;
                    line["epsilon"] = json!(sign.to_string());
                }
                outln!("{line}");
            }
        }
        Format::Table => {
            outln!("count {}", forests.len());
            for f in &forests {
                let edges = f.edges();
                let body = if edges.is_empty() {
                    "(no edges)".to_string()
                } else {
                    edges
                        .iter()
                        .map(|(a, b)| format!("({a},{b})"))
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                if cli.signs {
                    outln!("{} {body}", epsilon(&u, &w, f)?);
                } else {
                    outln!("{body}");
                }
            }
        }
    }
    Ok(0)
}

fn cmd_sign(cli: &Cli) -> Result<u8> {
    let f = parse_forest_json(&read_payload(cli)?)?;
    let (u, w) = required_uw(cli, f.n())?;
    let pi = induced_bijection(&f, &u, &w)?;
    let sgn = sgn_bijection(&u, &pi)?;
    let eps = epsilon(&u, &w, &f)?;
    match cli.format {
        Format::Json => {
            let pairs: Vec<_> = pi.pairs().iter().map(|(a, b)| json!([a, b])).collect();
            outln!(
                "{}",
                json!({
                    "n": f.n(),
                    "U": u.members(),
                    "W": w.members(),
                    "edges": forest_json(&f)["edges"],
                    "pi": pairs,
                    "sgn_pi": sgn.to_string(),
                    "epsilon": eps.to_string(),
                })
            );
        }
        Format::Table => {
            outln!("n       {}", f.n());
            outln!("U       {u}");
            outln!("W       {w}");
            let edges = f
                .edges()
                .iter()
                .map(|(a, b)| format!("({a},{b})"))
                .collect::<Vec<_>>()
                .join(" ");
            outln!("edges   {}", if edges.is_empty() { "(none)" } else { &edges });
            let pairs = pi
                .pairs()
                .iter()
                .map(|(a, b)| format!("{a}->{b}"))
                .collect::<Vec<_>>()
                .join(" ");
            outln!("pi      {pairs}");
            outln!("sgn_pi  {sgn}");
            outln!("epsilon {eps}");
        }
    }
    Ok(0)
}

fn symbolic_report(cli: &Cli, n: usize, u: &VertexSubset, w: &VertexSubset) -> Result<bool> {
    let report = match cli.cap {
        Some(cap) => symbolic_verify_with_cap(n, u, w, cap)?,
        None => symbolic_verify(n, u, w)?,
    };
    match cli.format {
        Format::Json => outln!("{}", report_json_symbolic(&report)),
        Format::Table => outln!(
            "U={} W={} forests={} match={} lhs={}",
            report.u, report.w, report.forest_count, report.matched, report.lhs
        ),
    }
    Ok(report.matched)
}

fn cmd_symbolic(cli: &Cli, n: usize) -> Result<u8> {
    match (&cli.u, &cli.w) {
        (Some(_), Some(_)) => {
            let (u, w) = required_uw(cli, n)?;
            Ok(u8::from(!symbolic_report(cli, n, &u, &w)?))
        }
        (None, None) => {
            let mut all_matched = true;
            for k in 1..=n {
                let us = subsets_of_size(n, k);
                let ws = subsets_of_size(n, k);
                for u in &us {
                    for w in &ws {
                        all_matched &= symbolic_report(cli, n, u, w)?;
                    }
                }
            }
            Ok(u8::from(!all_matched))
        }
        _ => Err(Error::Parse(
            "give both --u and --w, or neither to sweep every pair".into(),
        )),
    }
}

fn cmd_fuzz(cli: &Cli, n_max: usize) -> Result<u8> {
    let summary = match cli.cap {
        Some(cap) => fuzz_campaign_with_cap(n_max, cli.trials, cli.seed, FUZZ_ENTRY_BOUND, cap)?,
        None => fuzz_campaign(n_max, cli.trials, cli.seed, FUZZ_ENTRY_BOUND)?,
    };
    match cli.format {
        Format::Json => outln!("{}", fuzz_summary_json(&summary)),
        Format::Table => {
            outln!("n_max    {}", summary.n_max);
            outln!("trials   {}", summary.trials);
            outln!("seed     {}", summary.seed);
            outln!("checks   {}", summary.checks);
            outln!("failures {}", summary.failures.len());
            for f in &summary.failures {
                outln!("  n={} U={:?} W={:?} trial={}", f.n, f.u, f.w, f.trial);
            }
        }
    }
    Ok(u8::from(!summary.failures.is_empty()))
}

fn cmd_count_trees(cli: &Cli, root: Vertex) -> Result<u8> {
    let (n, edges) = parse_graph_json(&read_payload(cli)?)?;
    let report = match cli.cap {
        Some(cap) => count_trees_with_cap(n, &edges, root, cap)?,
        None => count_trees(n, &edges, root)?,
    };
    print_tree_report(cli, &report);
    Ok(u8::from(report.matched == Some(false)))
}

fn print_tree_report(cli: &Cli, report: &TreeCountReport) {
    match cli.format {
        Format::Json => outln!("{}", tree_count_json(report)),
        Format::Table => {
            outln!("n          {}", report.n);
            outln!("root       {}", report.root);
            outln!("det_minor  {}", rational_string(&report.det_minor));
            match &report.enumeration {
                Some(e) => {
                    outln!("tree_count {}", e.tree_count);
                    outln!("weight_sum {}", rational_string(&e.weight_sum));
                    outln!("signed_sum {}", rational_string(&e.signed_sum));
                    outln!("match      {}", report.matched == Some(true));
                }
                None => outln!("enumeration skipped (n above cap)"),
            }
        }
    }
}
