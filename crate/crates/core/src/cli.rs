//! Command-line front end.
//!
//! Exit status: 0 on success (or "exists"), 2 when a classification answers
//! "does not exist", 1 on any error including usage errors.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{certify_with, hypo_exists, strong_exists, Threshold};
use crate::constructions::{complete_dary, figure1, max_nullity_tree, path, star, tstar};
use crate::enumeration::{free_trees, DEFAULT_MAX_N};
use crate::spectral::{energy, matching_number, nullity, Method, DEFAULT_TOL};
use crate::tree::Tree;
use crate::verify::{verify_reference_values, DEFAULT_SEED};

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_DOES_NOT_EXIST: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "hypotree", version, about = "Energies and existence of hypoenergetic trees")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Eigenvalue tolerance
    #[arg(long = "tol", global = true, env = "HYPOTREE_TOL", default_value_t = DEFAULT_TOL,
          value_parser = parse_tol)]
    pub tolerance: f64,
    /// Eigenvalue backend: exact_roots or dense
    #[arg(long, global = true, default_value = "exact_roots")]
    pub method: Method,
    /// Emit JSON
    #[arg(long, global = true, conflicts_with = "dot")]
    pub json: bool,
    /// Emit trees as Graphviz DOT
    #[arg(long, global = true)]
    pub dot: bool,
    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Raise the exhaustive-enumeration order limit
    #[arg(long = "max-n-override", global = true)]
    pub max_n_override: Option<usize>,
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("tolerance must be positive, got {s}"))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Output {
    Text,
    Json,
    Dot,
}

impl RunConfig {
    pub fn output(&self) -> Output {
        if self.json {
            Output::Json
        } else if self.dot {
            Output::Dot
        } else {
            Output::Text
        }
    }

    fn max_n(&self) -> usize {
        self.max_n_override.unwrap_or(DEFAULT_MAX_N)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a tree from one of the named families
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Energy of a tree read from an edge-list file ("-" for stdin)
    Energy { file: PathBuf },
    /// Nullity and matching number of a tree
    Nullity { file: PathBuf },
    /// Existence verdict for order n and maximum degree delta
    Classify {
        n: usize,
        delta: usize,
        #[arg(long)]
        strong: bool,
    },
    /// Certified witness tree for order n and maximum degree delta
    Witness {
        n: usize,
        delta: usize,
        #[arg(long)]
        strong: bool,
    },
    /// All free trees of order n, one per line
    Enumerate {
        n: usize,
        /// Only trees with maximum degree exactly k
        #[arg(long = "delta-exact")]
        delta_exact: Option<usize>,
        /// Only trees with maximum degree at most k
        #[arg(long = "delta-cap", conflicts_with = "delta_exact")]
        delta_cap: Option<usize>,
        /// Only trees that certify as hypoenergetic or strongly hypoenergetic
        #[arg(long)]
        filter: Option<Filter>,
        /// Print canonical codes instead of edge lists
        #[arg(long)]
        codes: bool,
    },
    /// Recompute every published energy value
    VerifyPaper,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Filter {
    Hypo,
    Strong,
}

#[derive(Subcommand, Debug)]
enum ConstructKind {
    Star { n: usize },
    Path { n: usize },
    /// Complete d-ary tree C_h
    Dary { d: usize, h: usize },
    /// Minimum-energy tree T*(n, d)
    Tstar { n: usize, d: usize },
    /// Maximum-nullity tree of order n and maximum degree delta
    Maxnull { n: usize, delta: usize },
    /// One of S1, S3, S4, W
    Figure1 { name: String },
    /// Coalescence of two trees at the given vertices
    Coalesce { a: PathBuf, u: usize, b: PathBuf, v: usize },
}

type CmdResult = Result<u8, String>;

/// Runs the CLI with `args` (including the program name), writing to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_ERROR,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let cfg = &cli.config;
    match &cli.command {
        Command::Construct { kind } => cmd_construct(kind, cfg, out),
        Command::Energy { file } => cmd_energy(&read_tree(file)?, cfg, out),
        Command::Nullity { file } => cmd_nullity(&read_tree(file)?, cfg, out),
        Command::Classify { n, delta, strong } => cmd_classify(*n, *delta, *strong, false, cfg, out),
        Command::Witness { n, delta, strong } => cmd_classify(*n, *delta, *strong, true, cfg, out),
        Command::Enumerate { n, delta_exact, delta_cap, filter, codes } => {
            cmd_enumerate(*n, *delta_exact, *delta_cap, *filter, *codes, cfg, out)
        }
        Command::VerifyPaper => cmd_verify_paper(cfg, out),
    }
}

fn read_tree(file: &Path) -> Result<Tree, String> {
    let text = if file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        s
    } else {
        std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?
    };
    Tree::parse_edge_list(&text).map_err(|e| format!("{}: {e}", file.display()))
}

fn io(e: std::io::Error) -> String {
    e.to_string()
}

#[derive(Serialize)]
struct TreeJson {
    n: usize,
    max_degree: usize,
    edges: Vec<(usize, usize)>,
}

fn emit_tree(t: &Tree, cfg: &RunConfig, out: &mut dyn Write) -> Result<(), String> {
    match cfg.output() {
        Output::Text => write!(out, "{}", t.to_edge_list()).map_err(io),
        Output::Dot => write!(out, "{}", t.to_dot()).map_err(io),
        Output::Json => {
            let doc = TreeJson { n: t.n(), max_degree: t.max_degree(), edges: t.edges() };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?).map_err(io)
        }
    }
}

fn cmd_construct(kind: &ConstructKind, cfg: &RunConfig, out: &mut dyn Write) -> CmdResult {
    let need_vertex = |n: usize| if n == 0 { Err("order must be at least 1".to_string()) } else { Ok(n) };
    let tree = match kind {
        ConstructKind::Star { n } => star(need_vertex(*n)?),
        ConstructKind::Path { n } => path(need_vertex(*n)?),
        ConstructKind::Dary { d, h } => complete_dary(*d, *h)
            .map_err(|e| e.to_string())?
            .ok_or("C_0 is the empty graph and has no vertices")?,
        ConstructKind::Tstar { n, d } => tstar(*n, *d).map_err(|e| e.to_string())?,
        ConstructKind::Maxnull { n, delta } => max_nullity_tree(*n, *delta).map_err(|e| e.to_string())?,
        ConstructKind::Figure1 { name } => figure1(name).map_err(|e| e.to_string())?,
        ConstructKind::Coalesce { a, u, b, v } => {
            let g = read_tree(a)?;
            let h = read_tree(b)?;
            g.coalesce(*u, &h, *v).map_err(|e| e.to_string())?
        }
    };
    emit_tree(&tree, cfg, out)?;
    Ok(EXIT_OK)
}

fn cmd_energy(t: &Tree, cfg: &RunConfig, out: &mut dyn Write) -> CmdResult {
    let e = energy(t, cfg.tolerance, cfg.method).map_err(|e| e.to_string())?;
    match cfg.output() {
        Output::Json => writeln!(out, "{}", e.to_json()).map_err(io)?,
        _ => {
            writeln!(out, "{:.6}", e.energy).map_err(io)?;
            writeln!(out, "# error bound {:.3e}, n = {}, nullity = {}, method {}", e.error_bound, e.n, e.nullity, e.method)
                .map_err(io)?;
            writeln!(out, "# char poly {}", e.char_poly).map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct NullityJson {
    n: usize,
    nullity: usize,
    matching_number: usize,
}

fn cmd_nullity(t: &Tree, cfg: &RunConfig, out: &mut dyn Write) -> CmdResult {
    let n0 = nullity(t).map_err(|e| e.to_string())?;
    let mu = matching_number(t);
    match cfg.output() {
        Output::Json => {
            let doc = NullityJson { n: t.n(), nullity: n0, matching_number: mu };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?).map_err(io)?
        }
        _ => writeln!(out, "{n0}\n# matching number {mu}, n = {}", t.n()).map_err(io)?,
    }
    Ok(EXIT_OK)
}

fn cmd_classify(n: usize, delta: usize, strong: bool, emit_witness: bool, cfg: &RunConfig, out: &mut dyn Write) -> CmdResult {
    let v = if strong { strong_exists(n, delta) } else { hypo_exists(n, delta) }.map_err(|e| e.to_string())?;
    let kind = if strong { "strongly hypoenergetic" } else { "hypoenergetic" };
    match (cfg.output(), emit_witness) {
        (Output::Json, _) => writeln!(out, "{}", v.to_json()).map_err(io)?,
        (output, false) | (output @ Output::Text, true) if output != Output::Dot || !emit_witness => {
            let answer = if !v.feasible {
                "infeasible"
            } else if v.exists() {
                "yes"
            } else {
                "no"
            };
            writeln!(out, "{answer}: {kind} trees of order {n} with maximum degree {delta}").map_err(io)?;
            writeln!(out, "clause: {}", v.clause).map_err(io)?;
            if let Some(w) = &v.witness {
                writeln!(
                    out,
                    "witness: {} (E = {:.6}, error bound {:.1e}, margin {:.6})",
                    w.strategy, w.certificate.energy, w.certificate.error_bound, w.margin
                )
                .map_err(io)?;
                if emit_witness {
                    write!(out, "{}", w.tree.to_edge_list()).map_err(io)?;
                }
            }
        }
        _ => {
            if let Some(w) = &v.witness {
                write!(out, "{}", w.tree.to_dot()).map_err(io)?;
            }
        }
    }
    Ok(if v.exists() { EXIT_OK } else { EXIT_DOES_NOT_EXIST })
}

/// One-line edge list: `u v;u v;...` (`n=1` for the single vertex).
pub fn edge_list_line(t: &Tree) -> String {
    if t.n() == 1 {
        return "n=1".into();
    }
    t.edges().iter().map(|(u, v)| format!("{u} {v}")).collect::<Vec<_>>().join(";")
}

fn cmd_enumerate(
    n: usize,
    delta_exact: Option<usize>,
    delta_cap: Option<usize>,
    filter: Option<Filter>,
    codes: bool,
    cfg: &RunConfig,
    out: &mut dyn Write,
) -> CmdResult {
    if n == 0 {
        return Err("order must be at least 1".into());
    }
    if n > cfg.max_n() {
        return Err(format!("order {n} exceeds the enumeration limit {} (use --max-n-override)", cfg.max_n()));
    }
    let cap = delta_exact.or(delta_cap);
    let stream = free_trees(n, cap).filter(|t| delta_exact.is_none_or(|k| t.max_degree() == k));
    let threshold = filter.map(|f| Threshold::for_order(n, f == Filter::Strong));
    let mut stream = stream.peekable();
    while stream.peek().is_some() {
        let batch: Vec<Tree> = stream.by_ref().take(4096).collect();
        let keep: Vec<bool> = match threshold {
            None => vec![true; batch.len()],
            Some(th) => batch
                .par_iter()
                .map(|t| certify_with(t, th, cfg.tolerance))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?,
        };
        for (t, k) in batch.iter().zip(keep) {
            if !k {
                continue;
            }
            let line = if codes { t.canonical_code().to_string() } else { edge_list_line(t) };
            writeln!(out, "{line}").map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify_paper(cfg: &RunConfig, out: &mut dyn Write) -> CmdResult {
    let checks = verify_reference_values(cfg.seed);
    let all = checks.iter().all(|c| c.pass);
    match cfg.output() {
        Output::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(&checks).map_err(|e| e.to_string())?).map_err(io)?
        }
        _ => {
            for c in &checks {
                let tag = if c.pass { "PASS" } else { "FAIL" };
                writeln!(out, "[{tag}] {}: expected {}, got {}", c.name, c.expected, c.got).map_err(io)?;
            }
            let passed = checks.iter().filter(|c| c.pass).count();
            writeln!(out, "{passed}/{} checks passed", checks.len()).map_err(io)?;
        }
    }
    Ok(if all { EXIT_OK } else { EXIT_ERROR })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (u8, String) {
        let mut buf = Vec::new();
        let mut full = vec!["hypotree"];
        full.extend_from_slice(args);
        let code = run(full, &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn construct_outputs() {
        let (code, out) = run_capture(&["construct", "tstar", "20", "3"]);
        assert_eq!(code, 0);
        let t = Tree::parse_edge_list(&out).unwrap();
        assert_eq!((t.n(), t.max_degree()), (20, 4));

        let (_, out) = run_capture(&["construct", "figure1", "W"]);
        assert_eq!(Tree::parse_edge_list(&out).unwrap().n(), 7);

        let (_, out) = run_capture(&["--dot", "construct", "star", "3"]);
        assert!(out.starts_with("graph T {"));

        let (_, out) = run_capture(&["construct", "star", "1"]);
        assert_eq!(out, "n=1\n");

        let (code, _) = run_capture(&["construct", "figure1", "Q"]);
        assert_eq!(code, 1);
        let (code, _) = run_capture(&["construct", "bogus"]);
        assert_eq!(code, 1);
        let (code, _) = run_capture(&["construct", "dary", "3", "0"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn classify_exit_codes() {
        let (code, out) = run_capture(&["classify", "22", "4", "--strong"]);
        assert_eq!(code, 2);
        assert!(out.starts_with("no:"));
        assert!(out.contains("21.06862"));
        let (code, _) = run_capture(&["classify", "7", "3"]);
        assert_eq!(code, 0);
        let (code, out) = run_capture(&["classify", "4", "4"]);
        assert_eq!(code, 2);
        assert!(out.starts_with("infeasible"));
    }

    #[test]
    fn witness_json() {
        let (code, out) = run_capture(&["--json", "witness", "12", "5", "--strong"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["energy"].as_f64().unwrap() + v["error_bound"].as_f64().unwrap() < 11.0);
        assert_eq!(v["witness_edges"].as_array().unwrap().len(), 11);
    }

    #[test]
    fn enumerate_lines() {
        let (code, out) = run_capture(&["enumerate", "7"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 11);
        let (_, out) = run_capture(&["enumerate", "7", "--delta-exact", "3", "--filter", "hypo"]);
        assert_eq!(out.lines().count(), 1);
        let (_, out) = run_capture(&["enumerate", "8", "--delta-exact", "5", "--codes"]);
        assert_eq!(out.lines().count(), 3);
        let (code, _) = run_capture(&["enumerate", "21"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn bad_tolerance_is_usage_error() {
        let (code, _) = run_capture(&["--tol", "-1", "construct", "star", "3"]);
        assert_eq!(code, 1);
    }
}
