//! The `szl` command line: decide membership, construct orientations or
//! witnesses, simplify multiplicities, compute tree packings, and run the
//! enumeration/verification harness.
//!
//! Exit codes: 0 on success (for `decide`, a member; for `verify`, no
//! fast/brute mismatches), 1 on a negative result (non-member, infeasible
//! boundary, or mismatches), 2 on input errors.

pub mod document;
pub mod family;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use document::{parse_graph_file, render_document, GraphDocument};
use family::parse_family;
use szl_core::boundary::{validate_boundary, BoundarySpec};
use szl_core::cache::{cache_load, cache_store, to_hex, CacheEntry};
use szl_core::decide::{decide_brute, decide_fast, failing_boundaries, szl_simplify, Verdict};
use szl_core::enumerate::{enumerate_graphs, verify_characterization};
use szl_core::graph::{Multigraph, TreePacking};
use szl_core::orient::{find_beta_orientation, RefutedGamma, SolveOutcome};

const EXIT_OK: i32 = 0;
const EXIT_NEGATIVE: i32 = 1;
const EXIT_INPUT: i32 = 2;

const LONG_ABOUT: &str = "\
Decides strong modular connectivity of small multigraphs: whether every \
boundary (per-vertex residues mod 2l with matching parities and zero sum) \
is realized by an orientation. Produces orientations, infeasibility \
witnesses, tree packings, and exhaustive family verifications.";

const AFTER_HELP: &str = "\
EXIT CODES:
    0  success (member / feasible / no mismatches)
    1  negative result (non-member, infeasible boundary, or mismatches)
    2  input error

FILE FORMAT (one directive per line, '#' starts a comment):
    ell 5
    vertices 4
    edge 0 1 3        # unordered pair with multiplicity, at most once
    boundary 5 5 5 5  # optional, one residue per vertex
";

#[derive(Parser)]
#[command(name = "szl", about = LONG_ABOUT, after_help = AFTER_HELP, version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FileArgs {
    /// Graph document to read
    file: PathBuf,
    /// Modulus parameter; overrides any `ell` line in the file
    #[arg(long)]
    ell: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide membership; non-members list their failing boundaries with
    /// refuted candidate vectors and bad sets
    Decide {
        #[command(flatten)]
        file: FileArgs,
        /// Sweep every boundary instead of using the characterization
        #[arg(long, conflicts_with = "fast")]
        brute: bool,
        /// Use the small-graph characterization (the default)
        #[arg(long)]
        fast: bool,
    },
    /// Construct an orientation for the file's boundary, or print a witness
    Orient {
        #[command(flatten)]
        file: FileArgs,
    },
    /// Print the document with every multiplicity capped at l-1
    Simplify {
        #[command(flatten)]
        file: FileArgs,
    },
    /// Print the spanning-tree packing number and a witness partition
    Trees {
        /// Graph document to read
        file: PathBuf,
    },
    /// List a graph family, up to isomorphism when requested
    Enumerate {
        /// Family spec, e.g. "n=4,e=12,mu<=3,delta>=4"
        #[arg(long)]
        family: String,
        /// Collapse isomorphic graphs
        #[arg(long)]
        up_to_iso: bool,
    },
    /// Compare fast and brute verdicts over a family and report non-members
    Verify {
        /// Family spec, e.g. "n=4,e=12,mu<=3,delta>=4"
        #[arg(long)]
        family: String,
        /// Modulus parameter
        #[arg(long)]
        ell: u32,
        /// Collapse isomorphic graphs
        #[arg(long)]
        up_to_iso: bool,
        /// Verdict cache to merge results into
        #[arg(long)]
        cache: Option<PathBuf>,
    },
}

/// Runs the CLI against `args` (including the program name), writing the
/// report to `out`. Errors go to stderr. Returns the process exit code.
pub fn run(args: &[String], out: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    eprintln!("{e}");
                    EXIT_INPUT
                }
            };
        }
    };
    let result = match cli.command {
        Command::Decide { file, brute, fast } => cmd_decide(&file, brute, fast, out),
        Command::Orient { file } => cmd_orient(&file, out),
        Command::Simplify { file } => cmd_simplify(&file, out),
        Command::Trees { file } => cmd_trees(&file, out),
        Command::Enumerate { family, up_to_iso } => cmd_enumerate(&family, up_to_iso, out),
        Command::Verify {
            family,
            ell,
            up_to_iso,
            cache,
        } => cmd_verify(&family, ell, up_to_iso, cache.as_deref(), out),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            EXIT_INPUT
        }
    }
}

type CmdResult = Result<i32, String>;

fn load_document(path: &Path) -> Result<GraphDocument, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_graph_file(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn require_ell(file: &FileArgs, doc: &GraphDocument) -> Result<u32, String> {
    file.ell
        .or(doc.ell)
        .ok_or_else(|| "no modulus parameter: add an `ell` line or pass --ell".into())
}

fn format_values<T: std::fmt::Display>(values: &[T]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_refutations(out: &mut dyn Write, refuted: &[RefutedGamma]) -> std::io::Result<()> {
    for r in refuted {
        writeln!(out, "gamma {}", format_values(&r.gamma))?;
        writeln!(out, "bad-set {}", format_values(&r.witness.subset.members()))?;
    }
    Ok(())
}

fn cmd_decide(file: &FileArgs, brute: bool, _fast: bool, out: &mut dyn Write) -> CmdResult {
    let doc = load_document(&file.file)?;
    let ell = require_ell(file, &doc)?;
    let verdict: Verdict = if brute {
        decide_brute(&doc.graph, ell).map_err(|e| e.to_string())?
    } else {
        decide_fast(&doc.graph, ell)
            .map_err(|e| format!("{e} (pass --brute to sweep all boundaries)"))?
    };
    let io = |e: std::io::Error| e.to_string();
    writeln!(
        out,
        "verdict {}",
        if verdict.member { "member" } else { "nonmember" }
    )
    .map_err(io)?;
    writeln!(
        out,
        "method {}",
        match verdict.method {
            szl_core::decide::Method::Fast => "fast",
            szl_core::decide::Method::Brute => "brute",
        }
    )
    .map_err(io)?;
    writeln!(out, "trace {}", verdict.trace).map_err(io)?;
    if verdict.member {
        return Ok(EXIT_OK);
    }
    // Certificates: the brute verdict already carries them, the fast path
    // reconstructs them by sweeping.
    if verdict.failing.is_empty() {
        for boundary in failing_boundaries(&doc.graph, ell).map_err(|e| e.to_string())? {
            writeln!(out, "failing-boundary {}", format_values(boundary.values())).map_err(io)?;
            match find_beta_orientation(&doc.graph, &boundary).map_err(|e| e.to_string())? {
                SolveOutcome::Feasible(_) => unreachable!("boundary came from the failing sweep"),
                SolveOutcome::Infeasible(refuted) => {
                    write_refutations(out, &refuted).map_err(io)?
                }
            }
        }
    } else {
        for failing in &verdict.failing {
            writeln!(
                out,
                "failing-boundary {}",
                format_values(failing.boundary.values())
            )
            .map_err(io)?;
            write_refutations(out, &failing.refuted).map_err(io)?;
        }
    }
    Ok(EXIT_NEGATIVE)
}

fn cmd_orient(file: &FileArgs, out: &mut dyn Write) -> CmdResult {
    let doc = load_document(&file.file)?;
    let ell = require_ell(file, &doc)?;
    let values = doc
        .boundary
        .clone()
        .ok_or("orient needs a `boundary` line in the document")?;
    let boundary = BoundarySpec::new(ell, values).map_err(|e| e.to_string())?;
    let violations = validate_boundary(&doc.graph, &boundary).map_err(|e| e.to_string())?;
    if !violations.is_empty() {
        let lines: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(format!("invalid boundary: {}", lines.join("; ")));
    }
    let io = |e: std::io::Error| e.to_string();
    match find_beta_orientation(&doc.graph, &boundary).map_err(|e| e.to_string())? {
        SolveOutcome::Feasible(d) => {
            for (u, v, _) in doc.graph.edges() {
                writeln!(out, "orientation {u} {v} {}", d.forward(u, v)).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        SolveOutcome::Infeasible(refuted) => {
            writeln!(out, "verdict infeasible").map_err(io)?;
            write_refutations(out, &refuted).map_err(io)?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_simplify(file: &FileArgs, out: &mut dyn Write) -> CmdResult {
    let doc = load_document(&file.file)?;
    let ell = require_ell(file, &doc)?;
    let simplified = szl_simplify(&doc.graph, ell).map_err(|e| e.to_string())?;
    let rendered = render_document(&GraphDocument {
        ell: Some(ell),
        graph: simplified,
        boundary: doc.boundary,
    });
    write!(out, "{rendered}").map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}

fn cmd_trees(path: &Path, out: &mut dyn Write) -> CmdResult {
    let doc = load_document(path)?;
    let io = |e: std::io::Error| e.to_string();
    match doc.graph.tree_packing_number() {
        TreePacking::Unbounded => {
            writeln!(out, "tree-packing unbounded").map_err(io)?;
        }
        TreePacking::Finite { count, witness } => {
            writeln!(out, "tree-packing {count}").map_err(io)?;
            let blocks: Vec<String> = witness
                .blocks()
                .iter()
                .map(|b| format_values(b))
                .collect();
            writeln!(out, "witness-partition {}", blocks.join(" | ")).map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_enumerate(family: &str, up_to_iso: bool, out: &mut dyn Write) -> CmdResult {
    let spec = parse_family(family, up_to_iso)?;
    let graphs = enumerate_graphs(&spec).map_err(|e| e.to_string())?;
    let io = |e: std::io::Error| e.to_string();
    writeln!(out, "family {}", spec.render()).map_err(io)?;
    writeln!(out, "count {}", graphs.len()).map_err(io)?;
    for g in &graphs {
        writeln!(
            out,
            "graph {} e={} mu={} delta={}",
            to_hex(&g.canonical_code().map_err(|e| e.to_string())?),
            g.edge_count(),
            g.max_multiplicity(),
            g.min_degree()
        )
        .map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(
    family: &str,
    ell: u32,
    up_to_iso: bool,
    cache: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    let spec = parse_family(family, up_to_iso)?;
    let report = verify_characterization(ell, &spec).map_err(|e| e.to_string())?;
    write!(out, "{}", report.render()).map_err(|e| e.to_string())?;
    if let Some(path) = cache {
        let mut entries: Vec<CacheEntry> = if path.exists() {
            cache_load(path).map_err(|e| e.to_string())?
        } else {
            Vec::new()
        };
        // Fresh results replace stale entries for the same graph and modulus.
        entries.retain(|e| {
            e.ell != ell || !report.entries.iter().any(|n| n.code == e.code)
        });
        entries.extend(report.entries.iter().cloned());
        entries.sort_by(|a, b| a.ell.cmp(&b.ell).then_with(|| a.code.cmp(&b.code)));
        cache_store(path, &entries).map_err(|e| e.to_string())?;
    }
    Ok(if report.mismatches.is_empty() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

/// Library-level entry used by tests; mirrors `main`.
pub fn run_to_string(args: &[&str]) -> (i32, String) {
    let owned: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let mut buf = Vec::new();
    let code = run(&owned, &mut buf);
    (code, String::from_utf8(buf).expect("output is UTF-8"))
}
