//! Command-line front end. [`run`] takes explicit streams so that it can be
//! driven from tests; the binary forwards to it.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::diagram::{classify, delete_node, named_type, parse_diagram, CoxeterMatrix};
use crate::enumerator::EnumerateError;
use crate::presentation::{progenitor_presentation, EmitFormat};
use crate::rootorbit::{orbit_size, OrbitError, DEFAULT_ORBIT_LIMIT};
use crate::symgen::{analyze, tables, verify, AnalyzeError, Family, Limits, SymGenReport, TableError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_EXCEEDED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "coxsym", version, about = "Symmetric presentations of Coxeter groups")]
struct Cli {
    /// Cap on live cosets in every enumeration.
    #[arg(long, global = true, env = "COXSYM_MAX_COSETS")]
    max_cosets: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Diagram file, or `-` for standard input.
    #[arg(value_name = "FILE", required_unless_present = "type_name", conflicts_with = "type_name")]
    file: Option<PathBuf>,
    /// Named type such as F4, ~E8, I2(7).
    #[arg(long = "type", value_name = "TYPE")]
    type_name: Option<String>,
}

#[derive(Args, Debug)]
struct NodeInput {
    #[command(flatten)]
    input: Input,
    /// Distinguished node (one-based).
    #[arg(long, short = 'k')]
    node: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the group of a diagram.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Build the symmetric presentation for a node.
    Analyze {
        #[command(flatten)]
        at: NodeInput,
        #[arg(long)]
        json: bool,
    },
    /// Analyze and run every independent check.
    Verify {
        #[command(flatten)]
        at: NodeInput,
        #[arg(long)]
        json: bool,
    },
    /// Print a family table and compare it with the reference rows.
    Tables {
        #[arg(long)]
        family: String,
        /// Range of the family parameter, e.g. `4..8` or `5`.
        #[arg(long, value_parser = parse_range)]
        n: Option<RangeInclusive<u32>>,
    },
    /// Print the presentation `Q` (or the progenitor).
    Emit {
        #[command(flatten)]
        at: NodeInput,
        #[arg(long, default_value = "native")]
        format: String,
        #[arg(long)]
        progenitor: bool,
    },
    /// Orbit of the simple root of a node under the other reflections.
    Orbit {
        #[command(flatten)]
        at: NodeInput,
        #[arg(long, default_value_t = DEFAULT_ORBIT_LIMIT)]
        limit: usize,
        /// Print every root of the orbit.
        #[arg(long)]
        dump: bool,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("bad bound {t:?}: {e}"));
    match s.split_once("..") {
        Some((a, b)) => Ok(num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(s)?;
            Ok(v..=v)
        }
    }
}

/// Failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn parse(e: impl ToString) -> Self {
        Failure { code: EXIT_PARSE, message: e.to_string() }
    }
}

impl From<AnalyzeError> for Failure {
    fn from(e: AnalyzeError) -> Self {
        let code = match e {
            AnalyzeError::Exceeded { .. } | AnalyzeError::Enumerate(EnumerateError::Exceeded { .. }) => EXIT_EXCEEDED,
            AnalyzeError::Diagram(_) | AnalyzeError::Presentation(_) => EXIT_PARSE,
            AnalyzeError::Enumerate(_) => EXIT_CHECK_FAILED,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: EXIT_CHECK_FAILED, message: e.to_string() }
    }
}

fn load(input: &Input, stdin: &mut dyn Read) -> Result<CoxeterMatrix, Failure> {
    if let Some(t) = &input.type_name {
        return named_type(t).map_err(Failure::parse);
    }
    let path = input.file.as_ref().expect("clap requires a file or --type");
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(Failure::parse)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?
    };
    parse_diagram(&text).map_err(Failure::parse)
}

fn load_node(at: &NodeInput, stdin: &mut dyn Read) -> Result<(CoxeterMatrix, usize), Failure> {
    let m = load(&at.input, stdin)?;
    if at.node == 0 || at.node > m.rank() {
        return Err(Failure::parse(format!("node {} out of range 1..={}", at.node, m.rank())));
    }
    Ok((m, at.node - 1))
}

fn write_report(out: &mut dyn Write, r: &SymGenReport, as_json: bool) -> std::io::Result<()> {
    if as_json {
        writeln!(out, "{}", r.to_json())
    } else {
        write!(out, "{r}")
    }
}

fn execute(cli: Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, Failure> {
    let limits = Limits { max_cosets: cli.max_cosets, ..Limits::default() };
    match cli.command {
        Command::Classify { input, json } => {
            let m = load(&input, stdin)?;
            let c = classify(&m);
            if json {
                let comps: Vec<_> = c
                    .components
                    .iter()
                    .map(|k| {
                        json!({
                            "nodes": k.nodes.iter().map(|x| x + 1).collect::<Vec<_>>(),
                            "name": k.name,
                            "class": k.class,
                            "signature": k.signature,
                        })
                    })
                    .collect();
                let v = json!({
                    "rank": m.rank(),
                    "name": crate::diagram::type_name(&m),
                    "class": c.class,
                    "components": comps,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
            } else {
                writeln!(out, "{} {}", crate::diagram::type_name(&m), c.class)?;
                for k in &c.components {
                    let nodes: Vec<String> = k.nodes.iter().map(|x| (x + 1).to_string()).collect();
                    writeln!(out, "  {} [{}] {} signature {}", k.name, nodes.join(" "), k.class, k.signature)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Analyze { at, json } => {
            let (m, k) = load_node(&at, stdin)?;
            let r = analyze(&m, k, &limits)?;
            write_report(out, &r, json)?;
            Ok(if r.all_passed() { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Verify { at, json } => {
            let (m, k) = load_node(&at, stdin)?;
            let r = verify(&m, k, &limits)?;
            write_report(out, &r, json)?;
            Ok(if r.all_passed() { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Tables { family, n } => {
            let fam: Family = family.parse().map_err(Failure::parse)?;
            let t = tables(fam, n, &limits).map_err(|e| match e {
                TableError::Analyze(a) => Failure::from(a),
                other => Failure::parse(other),
            })?;
            write!(out, "{t}")?;
            if t.all_match() {
                Ok(EXIT_OK)
            } else {
                Err(Failure { code: EXIT_CHECK_FAILED, message: format!("rows differ from reference:\n{}", t.diff()) })
            }
        }
        Command::Emit { at, format, progenitor } => {
            let (m, k) = load_node(&at, stdin)?;
            let fmt: EmitFormat = format.parse().map_err(Failure::parse)?;
            let r = analyze(&m, k, &limits)?;
            let p = if progenitor {
                progenitor_presentation(&m, k, &r.pi()).map_err(Failure::parse)?
            } else {
                r.symmetric_presentation()
            };
            write!(out, "{}", p.emit(fmt))?;
            Ok(EXIT_OK)
        }
        Command::Orbit { at, limit, dump } => {
            let (m, k) = load_node(&at, stdin)?;
            match orbit_size(&m, k, limit) {
                Ok(o) => {
                    let wp = delete_node(&m, k).map_err(Failure::parse)?;
                    writeln!(
                        out,
                        "|alpha_{}^W'| = {}  (W' = {})",
                        k + 1,
                        o.size,
                        crate::diagram::type_name(&wp.matrix)
                    )?;
                    if dump {
                        write!(out, "{}", o.dump())?;
                    }
                    Ok(EXIT_OK)
                }
                Err(OrbitError::Exceeded { limit }) => Err(Failure {
                    code: EXIT_EXCEEDED,
                    message: format!("orbit exceeded {limit} roots; it may be infinite"),
                }),
                Err(e) => Err(Failure::parse(e)),
            }
        }
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code: 0 success, 1 failed check, 2 parse or usage error,
/// 3 enumeration or orbit limit exceeded.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli, stdin, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["coxsym"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("4..8").unwrap(), 4..=8);
        assert_eq!(parse_range("4..=8").unwrap(), 4..=8);
        assert_eq!(parse_range("5").unwrap(), 5..=5);
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn classify_stdin() {
        let (code, out, _) = call(&["classify", "-"], "rank 3\nedge 1 2 4\nedge 2 3 3\n");
        assert_eq!(code, 0);
        assert!(out.starts_with("B_3 Finite"), "{out}");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["classify", "-"], "rank 2\nedge 1 2 1\n").0, EXIT_PARSE);
        assert_eq!(call(&["analyze", "--type", "A3", "--node", "9"], "").0, EXIT_PARSE);
        assert_eq!(call(&["bogus"], "").0, EXIT_PARSE);
        assert_eq!(call(&["--help"], "").0, EXIT_OK);
        let (code, _, err) = call(
            &["analyze", "-", "--node", "3", "--max-cosets", "50"],
            "rank 3; edge 1 2 inf; edge 2 3 3; edge 1 3 3",
        );
        assert_eq!(code, EXIT_EXCEEDED);
        assert!(err.contains("finite index"), "{err}");
        let (code, _, _) = call(&["orbit", "--type", "~A2", "--node", "1", "--limit", "3"], "");
        assert_eq!(code, EXIT_EXCEEDED);
    }

    #[test]
    fn emit_and_orbit() {
        let (code, out, _) = call(&["emit", "--type", "A2", "--node", "2"], "");
        assert_eq!(code, 0);
        assert!(out.starts_with("gens S1 T1 T2;"), "{out}");
        let (code, out, _) = call(&["emit", "--type", "A2", "--node", "2", "--format", "json", "--progenitor"], "");
        assert_eq!(code, 0);
        assert!(out.contains("\"generators\""));
        let (code, out, _) = call(&["orbit", "--type", "~E8", "--node", "9"], "");
        assert_eq!(code, 0);
        assert!(out.contains("= 240"), "{out}");
    }
}
