//! Command-line front end. Every subcommand writes one JSON document.
//!
//! Exit status: 0 on success, 1 on a domain error (with an error object
//! naming it), 2 on a usage error.

pub mod demo;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_rational::Rational64;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::brauer::{ClassJson, Place};
use crate::commensurability::{choose_t, decide_ring_relation, enumerate_family, verify_certificate, FamilyCertificate, PlaceUniverse, UniverseSpec};
use crate::cyclic_symbols::QuaternionSymbol;
use crate::fixtures::GeneratorList;
use crate::gassmann::{are_conjugate, is_gassmann, schreier_graph, GroupSpec, SubgroupSpec};
use crate::spectra::{char_poly, compare, eigenvalues_display, AdjacencyMatrix, DEFAULT_NODE_CAP};
use crate::{arith, Error};

pub const NODE_CAP_ENV: &str = "ISOSPEC_NODE_CAP";

#[derive(Debug, Parser)]
#[command(name = "isospec", version, about = "Brauer class certificates and exact isospectrality checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON result here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    /// Repeat for more progress notes on standard error.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certified family of pairwise non-commensurable classes.
    Family {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        m: u64,
        /// Comma-separated places, e.g. p2,p3,p5 (default: first t primes).
        #[arg(long, value_delimiter = ',')]
        places: Option<Vec<String>>,
        /// Q, Qi, or a universe JSON file.
        #[arg(long, default_value = "Q")]
        universe: String,
    },
    /// Ring isomorphism / anti-isomorphism of two classes.
    Classify {
        #[arg(long, default_value = "Q")]
        universe: String,
        #[arg(long)]
        c1: PathBuf,
        #[arg(long)]
        c2: PathBuf,
    },
    /// Re-check a certificate produced by `family`.
    Verify {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long, default_value = "Q")]
        universe: String,
    },
    /// Hilbert symbols of (a, b) over Q and the resulting class.
    Hilbert {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Per-class Gassmann report for two subgroups.
    Gassmann {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        h1: PathBuf,
        #[arg(long)]
        h2: PathBuf,
    },
    /// Schreier coset graph adjacency matrix.
    Schreier {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        gens: PathBuf,
    },
    /// Characteristic polynomial and eigenvalues of a graph.
    Spectrum {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Isospectrality and isomorphism verdict for two graphs.
    Compare {
        #[arg(long)]
        g1: PathBuf,
        #[arg(long)]
        g2: PathBuf,
        #[arg(long)]
        node_cap: Option<u64>,
    },
    /// Bundled end-to-end run.
    Demo {
        #[arg(long)]
        group: Option<PathBuf>,
        #[arg(long)]
        h1: Option<PathBuf>,
        #[arg(long)]
        h2: Option<PathBuf>,
        #[arg(long)]
        gens: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        d: u64,
        #[arg(long, default_value_t = 4)]
        m: u64,
    },
}

#[derive(Debug)]
pub enum CliError {
    /// Bad invocation; exit status 2.
    Usage { flag: String, message: String },
    /// Malformed input file; exit status 1.
    Input { flag: String, message: String },
    /// A library error; exit status 1.
    Domain(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage { .. } => 2,
            CliError::Input { .. } | CliError::Domain(_) => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Usage { flag, message } => json!({"error": {"name": "Usage", "flag": flag, "message": message}}),
            CliError::Input { flag, message } => json!({"error": {"name": "InvalidInput", "flag": flag, "message": message}}),
            CliError::Domain(e) => json!({"error": {"name": e.name(), "message": e.to_string()}}),
        }
    }
}

impl<E: Into<Error>> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Domain(e.into())
    }
}

/// Result of a successful dispatch: the JSON payload and whether every
/// check it reports passed (only `demo` can report a failure this way).
#[derive(Debug)]
pub struct Outcome {
    pub output: Value,
    pub success: bool,
}

fn read_file(flag: &str, path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage { flag: flag.into(), message: format!("{}: {e}", path.display()) })
}

fn read_json<T: DeserializeOwned>(flag: &str, path: &Path) -> Result<T, CliError> {
    let text = read_file(flag, path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Input { flag: flag.into(), message: format!("{}: {e}", path.display()) })
}

/// `p2`, `p:2`, `2`, `p5+`, `real`, ... → canonical place label.
fn normalize_place(raw: &str) -> Result<String, CliError> {
    let s = raw.trim();
    if s == "real" || s == "complex" {
        return Ok(s.into());
    }
    let body = s.strip_prefix("p:").or_else(|| s.strip_prefix('p')).unwrap_or(s);
    let digits = body.trim_end_matches(['+', '-']);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || body.len() - digits.len() > 1 {
        return Err(CliError::Usage { flag: "--places".into(), message: format!("cannot read place {raw:?}") });
    }
    Ok(format!("p:{body}"))
}

fn prime_of_label(label: &str) -> Option<u64> {
    label.strip_prefix("p:")?.trim_end_matches(['+', '-']).parse().ok()
}

/// Builds the universe named by `--universe` covering the given primes.
fn universe_for(selector: &str, primes: &[u64]) -> Result<PlaceUniverse, CliError> {
    match selector {
        "Q" | "q" => Ok(PlaceUniverse::rationals(primes)?),
        "Qi" | "qi" | "Q[i]" => Ok(PlaceUniverse::gaussian(primes)?),
        path => {
            let spec: UniverseSpec = read_json("--universe", Path::new(path))?;
            Ok(PlaceUniverse::from_spec(&spec)?)
        }
    }
}

/// One place per orbit over the smallest primes: `p:N` for 2 and inert
/// primes, `p:N+` for split primes in `Qi`.
fn default_places(selector: &str, t: usize) -> Vec<String> {
    let gaussian = matches!(selector, "Qi" | "qi" | "Q[i]");
    arith::first_primes(t)
        .into_iter()
        .map(|p| if gaussian && p % 4 == 1 { format!("p:{p}+") } else { format!("p:{p}") })
        .collect()
}

fn node_cap(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(NODE_CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage { flag: NODE_CAP_ENV.into(), message: format!("not a count: {v:?}") }),
        Err(_) => Ok(DEFAULT_NODE_CAP),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GraphFile {
    Bare(AdjacencyMatrix),
    Wrapped { adjacency: AdjacencyMatrix },
}

impl GraphFile {
    fn matrix(self) -> AdjacencyMatrix {
        match self {
            GraphFile::Bare(m) | GraphFile::Wrapped { adjacency: m } => m,
        }
    }
}

fn load_group(flag: &str, path: &Path) -> Result<crate::PermGroup, CliError> {
    Ok(read_json::<GroupSpec>(flag, path)?.close()?)
}

fn note(verbose: u8, msg: impl AsRef<str>) {
    if verbose > 0 {
        eprintln!("isospec: {}", msg.as_ref());
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let v = cli.verbose;
    let ok = |output: Value| Ok(Outcome { output, success: true });
    match &cli.command {
        Command::Family { d, m, places, universe } => {
            let t = choose_t(*m, *d)?;
            let labels = match places {
                Some(list) => list.iter().map(|p| normalize_place(p)).collect::<Result<Vec<_>, _>>()?,
                None => default_places(universe, t),
            };
            let primes: Vec<u64> = labels.iter().filter_map(|l| prime_of_label(l)).collect();
            let u = universe_for(universe, &primes)?;
            let places = labels.iter().map(|l| Place::from_label(l)).collect::<Result<Vec<_>, _>>()?;
            note(v, format!("t = {t}, places {}", labels.join(",")));
            let cert = enumerate_family(&u, *d, *m, &places)?;
            ok(serde_json::to_value(cert).expect("certificate serializes"))
        }
        Command::Classify { universe, c1, c2 } => {
            let a = read_json::<ClassJson>("--c1", c1)?.into_class()?;
            let b = read_json::<ClassJson>("--c2", c2)?.into_class()?;
            let primes: Vec<u64> = a.entries().chain(b.entries()).filter_map(|(p, _)| prime_of_label(p.label())).collect();
            let u = universe_for(universe, &primes)?;
            note(v, format!("searching {} automorphisms", u.group().order()));
            let verdict = decide_ring_relation(&u, &a, &b)?;
            ok(serde_json::to_value(verdict).expect("verdict serializes"))
        }
        Command::Verify { cert, universe } => {
            let cert: FamilyCertificate = read_json("--cert", cert)?;
            let primes: Vec<u64> = cert.places.iter().filter_map(|p| prime_of_label(p.label())).collect();
            let u = universe_for(universe, &primes)?;
            let report = verify_certificate(&u, &cert);
            Ok(Outcome { success: report.valid, output: serde_json::to_value(report).expect("report serializes") })
        }
        Command::Hilbert { a, b } => {
            let parse = |flag: &str, s: &str| {
                s.trim().parse::<Rational64>().map_err(|e| CliError::Usage { flag: flag.into(), message: format!("{s:?}: {e}") })
            };
            let symbol = QuaternionSymbol::new(parse("--a", a)?, parse("--b", b)?)?;
            let table: serde_json::Map<String, Value> =
                symbol.sign_table().into_iter().map(|(p, s)| (p.label().to_string(), json!(s))).collect();
            let class = symbol.brauer_class()?;
            ok(json!({
                "a": symbol.a().to_string(),
                "b": symbol.b().to_string(),
                "symbols": table,
                "class": class,
                "exponent": class.exponent(),
            }))
        }
        Command::Gassmann { group, h1, h2 } => {
            let g = load_group("--group", group)?;
            let s1 = read_json::<SubgroupSpec>("--h1", h1)?.resolve(&g)?;
            let s2 = read_json::<SubgroupSpec>("--h2", h2)?.resolve(&g)?;
            note(v, format!("|G| = {}, |H1| = {}, |H2| = {}", g.order(), s1.order(), s2.order()));
            let report = is_gassmann(&g, &s1, &s2);
            ok(json!({
                "group_order": g.order(),
                "h1_order": s1.order(),
                "h2_order": s2.order(),
                "is_gassmann": report.is_gassmann,
                "conjugate": are_conjugate(&g, &s1, &s2),
                "classes": report.classes,
            }))
        }
        Command::Schreier { group, h, gens } => {
            let g = load_group("--group", group)?;
            let sub = read_json::<SubgroupSpec>("--h", h)?.resolve(&g)?;
            let gens = read_json::<GeneratorList>("--gens", gens)?.into_vec();
            let graph = schreier_graph(&g, &sub, &gens)?;
            ok(serde_json::to_value(graph).expect("graph serializes"))
        }
        Command::Spectrum { graph } => {
            let a = read_json::<GraphFile>("--graph", graph)?.matrix();
            ok(json!({
                "vertices": a.size(),
                "char_poly": char_poly(&a),
                "eigenvalues": eigenvalues_display(&a),
            }))
        }
        Command::Compare { g1, g2, node_cap: cap } => {
            let a = read_json::<GraphFile>("--g1", g1)?.matrix();
            let b = read_json::<GraphFile>("--g2", g2)?.matrix();
            let verdict = compare(&a, &b, node_cap(*cap)?);
            ok(serde_json::to_value(verdict).expect("verdict serializes"))
        }
        Command::Demo { group, h1, h2, gens, d, m } => {
            let mut inputs = demo::DemoInputs { degree: *d, family_size: *m, node_cap: node_cap(None)?, ..Default::default() };
            let overrides = [("--group", group, &mut inputs.group), ("--h1", h1, &mut inputs.h1), ("--h2", h2, &mut inputs.h2), ("--gens", gens, &mut inputs.gens)];
            for (flag, path, slot) in overrides {
                if let Some(path) = path {
                    *slot = read_file(flag, path)?;
                }
            }
            let report = demo::run_demo(&inputs);
            for c in &report.checks {
                note(v, format!("[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
            }
            Ok(Outcome { success: report.passed, output: serde_json::to_value(&report).expect("report serializes") })
        }
    }
}

/// Parses `args`, runs, writes the JSON, and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (value, code) = match run(&cli) {
        Ok(outcome) => (outcome.output, if outcome.success { 0 } else { 1 }),
        Err(e) => {
            if let CliError::Usage { flag, message } = &e {
                eprintln!("isospec: {flag}: {message}");
            }
            (e.to_json(), e.exit_code())
        }
    };
    let mut text = serde_json::to_string_pretty(&value).expect("JSON values serialize");
    text.push('\n');
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("isospec: --output: {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn place_normalization() {
        assert_eq!(normalize_place("p2").unwrap(), "p:2");
        assert_eq!(normalize_place("p:13").unwrap(), "p:13");
        assert_eq!(normalize_place("7").unwrap(), "p:7");
        assert_eq!(normalize_place("p5+").unwrap(), "p:5+");
        assert!(normalize_place("px").is_err());
        assert!(normalize_place("p5+-").is_err());
    }

    #[test]
    fn default_place_lists() {
        assert_eq!(default_places("Q", 4), vec!["p:2", "p:3", "p:5", "p:7"]);
        assert_eq!(default_places("Qi", 4), vec!["p:2", "p:3", "p:5+", "p:7"]);
    }
}
