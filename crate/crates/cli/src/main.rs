//! `cleaved`: build, simplify and pair tangle structures, compute Khovanov
//! homology and run the invariant suites.

use clap::{Parser, Subcommand};
use cleaved::algebra::algebra;
use cleaved::check::Check;
use cleaved::corpus::{self, Golden, LINKS, TANGLES};
use cleaved::diagram::{parse_tangle, TangleDiagram};
use cleaved::homology::{homology, Complex, HomologyTable};
use cleaved::pairing::{box_tensor, glue, Oracle};
use cleaved::simplify::{simplify_type_a, simplify_type_d, ReducedA};
use cleaved::suite::{verify_algebra, verify_diagram, Limits, Report};
use cleaved::type_a::TypeA;
use cleaved::type_d::TypeD;
use cleaved::{BigInt, Error, Grading};
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

const EXIT_PARSE: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_VERIFY: u8 = 4;
const EXIT_ORACLE: u8 = 5;

#[derive(Parser)]
#[command(name = "cleaved", version, about = "Khovanov homology over ℤ from inside and outside tangle halves")]
#[command(after_help = "Arguments of the form key=value are read as --key value. A diagram argument is a \
                         file path or the name of a bundled diagram.")]
struct Cli {
    /// Largest crossing count accepted for any diagram.
    #[arg(long, global = true, default_value_t = 20)]
    cap: usize,
    /// Write the JSON artifact here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The algebra BΓₙ: basis, products and differential.
    Algebra {
        #[arg(long)]
        n: usize,
        /// Summary counts, with both gradings in circulation for e_C→.
        #[arg(long)]
        audit: bool,
    },
    /// Type A structure of an inside tangle.
    TypeA {
        diagram: String,
        #[arg(long)]
        simplify: bool,
        /// Longest generator sequence listed among the reduced actions.
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Type D structure of an outside tangle.
    TypeD {
        diagram: String,
        #[arg(long)]
        simplify: bool,
    },
    /// Box tensor product of an inside and an outside tangle.
    Pair {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        simplify: bool,
        #[arg(long)]
        homology: bool,
        /// Compare the homology with the Khovanov complex of the glued diagram.
        #[arg(long)]
        against_oracle: bool,
        /// Golden homology table to compare against.
        #[arg(long)]
        expect: Option<PathBuf>,
    },
    /// Homology of a complex JSON file or of a closed diagram.
    Homology {
        input: String,
        #[arg(long)]
        expect: Option<PathBuf>,
        /// Print the table as text instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Khovanov complex of a closed diagram, or of an inside/outside pair glued.
    Oracle {
        diagram: Option<String>,
        #[arg(long)]
        left: Option<String>,
        #[arg(long)]
        right: Option<String>,
        #[arg(long)]
        homology: bool,
    },
    /// Invariant suites on every `*.tangle` in a directory, or on the bundled corpus.
    Verify {
        dir: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        max_len: usize,
        #[arg(long, default_value_t = 2)]
        max_n: usize,
    },
}

enum Failure {
    Error(Error),
    Verification(String),
    Oracle(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Error(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Error(e.into())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Rewrites `key=value` into `--key=value`; paths and flags pass through.
fn preprocess(args: impl IntoIterator<Item = String>) -> Vec<String> {
    args.into_iter()
        .enumerate()
        .map(|(i, a)| match a.split_once('=') {
            Some((k, _))
                if i > 0
                    && !a.starts_with('-')
                    && !k.is_empty()
                    && k.chars().all(|c| c.is_ascii_lowercase() || c == '-' || c == '_') =>
            {
                format!("--{}", a.replacen('_', "-", k.matches('_').count()))
            }
            _ => a,
        })
        .collect()
}

fn load(arg: &str) -> cleaved::Result<TangleDiagram> {
    let p = Path::new(arg);
    if p.is_file() {
        return parse_tangle(&std::fs::read_to_string(p)?);
    }
    match corpus::diagram(arg.strip_suffix(".tangle").unwrap_or(arg)) {
        Ok(t) => Ok(t),
        Err(_) => Err(Error::Io(std::io::Error::new(std::io::ErrorKind::NotFound, format!("{arg}: no such file or bundled diagram")))),
    }
}

fn emit(output: &Option<PathBuf>, v: &Value) -> Outcome {
    let text = serde_json::to_string_pretty(v)? + "\n";
    match output {
        Some(p) => std::fs::write(p, text)?,
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
            r => r?,
        },
    }
    Ok(())
}

fn read_golden(p: &Path) -> Result<HomologyTable, Failure> {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(p)?)?;
    Ok(Golden::from_json(&v).map(|g| g.table).or_else(|_| HomologyTable::from_json(&v))?)
}

/// Bidegrees where two tables differ.
fn table_diff(got: &HomologyTable, want: &HomologyTable) -> Vec<String> {
    let mut keys: Vec<&Grading> = got.groups.keys().chain(want.groups.keys()).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter(|k| got.groups.get(k) != want.groups.get(k))
        .map(|k| {
            let show = |t: &HomologyTable| t.groups.get(k).map_or("0".to_string(), |g| g.to_string());
            format!("{k}: got {}, expected {}", show(got), show(want))
        })
        .collect()
}

fn compare(got: &HomologyTable, expect: &Option<PathBuf>) -> Outcome {
    if let Some(p) = expect {
        let want = read_golden(p)?;
        let diff = table_diff(got, &want);
        if !diff.is_empty() {
            return Err(Failure::Verification(format!("homology differs from {}:\n{}", p.display(), diff.join("\n"))));
        }
    }
    Ok(())
}

fn check_json(c: &Check) -> Value {
    json!({"name": c.name, "cases": c.cases, "passed": c.passed(), "failures": c.failures})
}

fn run(cli: Cli) -> Outcome {
    let cap = cli.cap;
    let out = &cli.output;
    match cli.command {
        Command::Algebra { n, audit } => {
            let a = algebra(n)?;
            emit(out, &if audit { a.audit() } else { a.to_json() })
        }
        Command::TypeA { diagram, simplify, max_len } => {
            let a = Arc::new(TypeA::new(load(&diagram)?, cap)?);
            let v = if simplify { simplify_type_a(a).to_json(max_len) } else { a.to_json() };
            emit(out, &v)
        }
        Command::TypeD { diagram, simplify } => {
            let d = TypeD::new(load(&diagram)?, cap)?;
            let v = if simplify {
                let r = simplify_type_d(&d);
                let mut v = r.structure.to_json();
                v["reduced"] = json!(true);
                v["reduction_log"] = serde_json::to_value(&r.log)?;
                v
            } else {
                d.to_json()
            };
            emit(out, &v)
        }
        Command::Pair { left, right, simplify, homology: want_h, against_oracle, expect } => {
            let (ti, to) = (load(&left)?, load(&right)?);
            let a = Arc::new(TypeA::new(ti.clone(), cap)?);
            let d = TypeD::new(to.clone(), cap)?;
            let (ra, rd) = if simplify { (simplify_type_a(a), simplify_type_d(&d).structure) } else { (ReducedA::identity(a), d) };
            let bx = box_tensor(&ra, &rd)?;
            let mut v = json!({"schema": "cleaved.pair/1", "left": ti.to_text(), "right": to.to_text(),
                               "simplified": simplify, "complex": bx.complex.to_json()});
            let need_h = want_h || against_oracle || expect.is_some();
            let h = if need_h { Some(homology(&bx.complex)?) } else { None };
            if let Some(h) = &h {
                v["homology"] = h.to_json();
            }
            let mut mismatch = None;
            if against_oracle {
                let o = Oracle::new(glue(&ti, &to)?, cap)?;
                let oh = homology(&o.complex)?;
                let diff = table_diff(h.as_ref().unwrap(), &oh);
                v["oracle"] = json!({"homology": oh.to_json(), "agrees": diff.is_empty(), "differences": diff});
                if !diff.is_empty() {
                    mismatch = Some(diff.join("\n"));
                }
            }
            emit(out, &v)?;
            if let Some(m) = mismatch {
                return Err(Failure::Oracle(m));
            }
            compare(h.as_ref().unwrap_or(&HomologyTable::default()), &expect)
        }
        Command::Homology { input, expect, text } => {
            let complex = if input.ends_with(".json") {
                let v: Value = serde_json::from_str(&std::fs::read_to_string(&input)?)?;
                complex_from_json(v.get("complex").unwrap_or(&v))?
            } else {
                Oracle::new(load(&input)?, cap)?.complex
            };
            let h = homology(&complex)?;
            if text {
                let s = h.to_string();
                match out {
                    Some(p) => std::fs::write(p, s)?,
                    None => print!("{s}"),
                }
            } else {
                emit(out, &h.to_json())?;
            }
            compare(&h, &expect)
        }
        Command::Oracle { diagram, left, right, homology: want_h } => {
            let t = match (diagram, left, right) {
                (Some(p), None, None) => load(&p)?,
                (None, Some(l), Some(r)) => glue(&load(&l)?, &load(&r)?)?,
                _ => return Err(Error::Parse("give one closed diagram, or both left= and right=".into()).into()),
            };
            let o = Oracle::new(t, cap)?;
            let mut v = json!({"schema": "cleaved.oracle/1", "diagram": o.diagram.to_text(), "complex": o.complex.to_json()});
            if want_h {
                v["homology"] = homology(&o.complex)?.to_json();
            }
            emit(out, &v)
        }
        Command::Verify { dir, max_len, max_n } => {
            let limits = Limits { crossing_cap: cap, max_len, max_n };
            let diagrams: Vec<(String, TangleDiagram)> = match dir {
                Some(d) => corpus::read_dir(&d)?,
                None => LINKS
                    .iter()
                    .chain(TANGLES)
                    .map(|e| Ok((e.name.to_string(), parse_tangle(e.text)?)))
                    .collect::<cleaved::Result<_>>()?,
            };
            let mut report = Report::default();
            for n in 1..=max_n.min(2) {
                verify_algebra(n, &mut report)?;
            }
            for (name, t) in &diagrams {
                verify_diagram(name, t, limits, &mut report)?;
            }
            let v = json!({"schema": "cleaved.verify/1", "diagrams": diagrams.len(), "passed": report.passed(),
                           "checks": report.checks.iter().map(check_json).collect::<Vec<_>>()});
            emit(out, &v)?;
            for c in &report.checks {
                eprintln!("{} {} ({} cases)", if c.passed() { "ok  " } else { "FAIL" }, c.name, c.cases);
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verification("invariant suite failed".into()))
            }
        }
    }
}

/// Reads the `cleaved.complex/1` schema.
fn complex_from_json(v: &Value) -> cleaved::Result<Complex> {
    let bad = |m: &str| Error::Parse(format!("complex: {m}"));
    let gens = v.get("generators").and_then(Value::as_array).ok_or_else(|| bad("missing generators"))?;
    let mut keys = Vec::new();
    let mut gradings = Vec::new();
    for g in gens {
        keys.push(g.get("key").and_then(Value::as_str).unwrap_or_default().to_string());
        let h = g.get("h").and_then(Value::as_i64).ok_or_else(|| bad("missing h"))?;
        let q2 = g.get("q2").and_then(Value::as_i64).ok_or_else(|| bad("missing q2"))?;
        gradings.push(Grading::new(h as i32, q2 as i32));
    }
    let mut d = vec![cleaved::Chain::new(); keys.len()];
    for t in v.get("differential").and_then(Value::as_array).ok_or_else(|| bad("missing differential"))? {
        let (Some(x), Some(y), Some(c)) = (t[0].as_u64(), t[1].as_u64(), t[2].as_str()) else {
            return Err(bad("differential entries are [from, to, coefficient]"));
        };
        if x as usize >= keys.len() || y as usize >= keys.len() {
            return Err(bad("generator index out of range"));
        }
        let c: BigInt = c.parse().map_err(|_| bad("bad coefficient"))?;
        d[x as usize].add_term(y as usize, c);
    }
    Ok(Complex::new(keys, gradings, d))
}

fn main() -> ExitCode {
    let cli = Cli::parse_from(preprocess(std::env::args()));
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Error(e) => {
                    let code = match &e {
                        Error::Cap(_) => EXIT_CAP,
                        Error::Verification(_) | Error::NotComplex(_) | Error::Torsion(_) => EXIT_VERIFY,
                        _ => EXIT_PARSE,
                    };
                    (code, e.to_string())
                }
                Failure::Verification(m) => (EXIT_VERIFY, m),
                Failure::Oracle(m) => (EXIT_ORACLE, format!("box homology differs from the oracle:\n{m}")),
            };
            eprintln!("cleaved: {msg}");
            ExitCode::from(code)
        }
    }
}
