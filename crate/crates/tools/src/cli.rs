//! The `toric` command line.
//!
//! Exit codes: 0 success, 1 usage, 2 unreadable or invalid input, 3 a
//! mathematical guard refused the operation, 4 a verification found a
//! counterexample. Failures print one line `error: <kind>: <message>` on
//! stderr.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use toric_core::cone::{classify, ConeError, SingularityClass};
use toric_core::fan::{is_wall_removable, wall_relation, wall_type, FanError};
use toric_core::mmp::{flip, flop_odp, standard_flip_fan, theorem4_fan, Family, FlipFamily, MmpError, Theorem4Side};
use toric_core::{Fan, IntegerMatrix, LatticeVector};

use crate::document::FanDocument;
use crate::search::{self, Execution, SearchReport};

#[derive(Parser, Debug)]
#[command(name = "toric", version, about = "Terminal toric threefold singularities, flips and flops")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the singularity of every cone of a fan.
    Classify { file: PathBuf },
    /// List walls with their relations, Σα and type.
    Walls { file: PathBuf },
    /// Flip a fan across the wall spanned by rays i and j.
    Flip {
        file: PathBuf,
        #[arg(long, value_name = "I,J", value_parser = parse_wall)]
        wall: (usize, usize),
    },
    /// Both small resolutions of a single ordinary-double-point cone.
    Flop { file: PathBuf },
    /// Write the fan of a flip family.
    Generate {
        #[arg(long)]
        family: FamilyArg,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        a: i64,
        /// Add the ordinary double point cone on side d1 or d2.
        #[arg(long)]
        theorem4: Option<SideArg>,
    },
    /// Run an exhaustive verification search.
    Verify {
        #[arg(long)]
        theorem: TheoremArg,
        /// Box bound or maximal r; the default depends on the search.
        #[arg(long)]
        bound: Option<i64>,
        /// Run single-threaded.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    D1,
    D2,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TheoremArg {
    #[value(name = "1.1")]
    FlipDiagrams,
    #[value(name = "2.1")]
    Quotients,
    #[value(name = "2.3")]
    NonQFactorial,
    #[value(name = "3.1")]
    Flips,
    #[value(name = "4.1")]
    NoOdp,
    #[value(name = "oracle")]
    Oracle,
}

impl TheoremArg {
    fn default_bound(self) -> i64 {
        match self {
            TheoremArg::FlipDiagrams => 15,
            TheoremArg::Quotients | TheoremArg::NoOdp => 12,
            TheoremArg::NonQFactorial => 3,
            TheoremArg::Flips => 5,
            TheoremArg::Oracle => 6,
        }
    }
}

fn parse_wall(s: &str) -> Result<(usize, usize), String> {
    let (i, j) = s.split_once(',').ok_or("expected I,J")?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((parse(i)?, parse(j)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Usage,
    Io,
    Parse,
    Validation,
    Guard,
    Counterexample,
}

impl Kind {
    fn code(self) -> i32 {
        match self {
            Kind::Usage => 1,
            Kind::Io | Kind::Parse | Kind::Validation => 2,
            Kind::Guard => 3,
            Kind::Counterexample => 4,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Kind::Usage => "usage",
            Kind::Io => "io",
            Kind::Parse => "parse",
            Kind::Validation => "validation",
            Kind::Guard => "guard",
            Kind::Counterexample => "counterexample",
        }
    }
}

struct Failure {
    kind: Kind,
    message: String,
}

fn fail(kind: Kind, message: impl ToString) -> Failure {
    Failure { kind, message: message.to_string() }
}

impl From<MmpError> for Failure {
    fn from(e: MmpError) -> Self {
        match e {
            MmpError::InvalidFamily => fail(Kind::Validation, e),
            _ => fail(Kind::Guard, e),
        }
    }
}

impl From<ConeError> for Failure {
    fn from(e: ConeError) -> Self {
        fail(Kind::Guard, e)
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run(args: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { Kind::Usage.code() } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
            } else {
                let first = rendered.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
                let _ = writeln!(stderr, "error: usage: {}", first.trim_start_matches("error: "));
            }
            return code;
        }
    };
    let outcome = execute(&cli).and_then(|(text, code)| {
        match &cli.out {
            Some(path) => fs::write(path, &text).map_err(|e| fail(Kind::Io, format!("{}: {e}", path.display())))?,
            None => stdout.write_all(text.as_bytes()).map_err(|e| fail(Kind::Io, e))?,
        }
        Ok(code)
    });
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let message = f.message.replace('\n', " ");
            let _ = writeln!(stderr, "error: {}: {}", f.kind.name(), message);
            f.kind.code()
        }
    }
}

fn execute(cli: &Cli) -> Result<(String, i32), Failure> {
    match &cli.command {
        Command::Classify { file } => {
            let fan = read_fan(file)?;
            Ok((render(cli.json, classify_fan(&fan)?), 0))
        }
        Command::Walls { file } => {
            let fan = read_fan(file)?;
            Ok((render(cli.json, walls_of(&fan)), 0))
        }
        Command::Flip { file, wall: (i, j) } => {
            let fan = read_fan(file)?;
            let w = fan
                .find_wall(*i, *j)
                .ok_or_else(|| fail(Kind::Guard, FanError::NotAWall(*i, *j)))?;
            let flipped = flip(&fan, &w)?;
            Ok((FanDocument::from_fan(&flipped, None).to_json_string(), 0))
        }
        Command::Flop { file } => {
            let fan = read_fan(file)?;
            if fan.cones().len() != 1 {
                return Err(fail(Kind::Guard, "flop expects a document with a single cone"));
            }
            let (a, b) = flop_odp(&fan.cone(0))?;
            let docs: Vec<Value> = [a, b]
                .iter()
                .map(|f| serde_json::to_value(FanDocument::from_fan(f, None)).expect("documents serialize"))
                .collect();
            Ok((pretty(&Value::Array(docs)), 0))
        }
        Command::Generate { family, r, a, theorem4 } => {
            let family = match family {
                FamilyArg::A => Family::A,
                FamilyArg::B => Family::B,
            };
            let fam = FlipFamily::new(family, *r, *a)?;
            let mut meta = Map::new();
            meta.insert("name".into(), json!(fam.to_string()));
            meta.insert("family".into(), json!(family.name()));
            meta.insert("r".into(), json!(r));
            meta.insert("a".into(), json!(a));
            let fan = match theorem4 {
                None => standard_flip_fan(fam),
                Some(side) => {
                    let side = match side {
                        SideArg::D1 => Theorem4Side::Delta1,
                        SideArg::D2 => Theorem4Side::Delta2,
                    };
                    meta.insert("theorem4".into(), json!(side.name()));
                    theorem4_fan(fam, side)?
                }
            };
            Ok((FanDocument::from_fan(&fan, Some(meta)).to_json_string(), 0))
        }
        Command::Verify { theorem, bound, sequential } => {
            let bound = bound.unwrap_or(theorem.default_bound());
            if bound < 1 {
                return Err(fail(Kind::Usage, "--bound must be at least 1"));
            }
            let exec = if *sequential { Execution::Sequential } else { Execution::Parallel };
            let rep = run_search(*theorem, bound, exec);
            let text = if cli.json { pretty(&rep.to_json(true)) } else { rep.summary() };
            Ok((text, if rep.passed() { 0 } else { Kind::Counterexample.code() }))
        }
    }
}

fn run_search(theorem: TheoremArg, bound: i64, exec: Execution) -> SearchReport {
    match theorem {
        TheoremArg::FlipDiagrams => search::verify_flip_diagrams(bound, exec),
        TheoremArg::Quotients => search::verify_quotient_classification(bound, exec),
        TheoremArg::NonQFactorial => search::verify_nonqfactorial_classification(bound, exec),
        TheoremArg::Flips => search::search_flips(bound, exec),
        TheoremArg::NoOdp => search::verify_no_odp_on_flips(bound, exec),
        TheoremArg::Oracle => search::cross_validate_terminality(bound, exec),
    }
}

fn read_fan(path: &Path) -> Result<Fan, Failure> {
    let text = fs::read_to_string(path).map_err(|e| fail(Kind::Io, format!("{}: {e}", path.display())))?;
    let doc = FanDocument::parse(&text).map_err(|e| fail(Kind::Parse, format!("{}: {e}", path.display())))?;
    doc.to_fan().map_err(|e| fail(Kind::Validation, format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// JSON or one line of text per entry of the `"lines"` array.
fn render(as_json: bool, out: Rendered) -> String {
    if as_json {
        pretty(&out.json)
    } else {
        out.lines.iter().map(|l| format!("{l}\n")).collect()
    }
}

struct Rendered {
    json: Value,
    lines: Vec<String>,
}

fn coords(v: &LatticeVector) -> Value {
    json!(v.coords())
}

fn matrix_rows(m: &IntegerMatrix) -> Value {
    json!((0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn classify_fan(fan: &Fan) -> Result<Rendered, Failure> {
    let mut entries = Vec::new();
    let mut lines = Vec::new();
    for (i, idx) in fan.cones().iter().enumerate() {
        let cone = fan.cone(i);
        let mut e = Map::new();
        e.insert("cone".into(), json!(i));
        e.insert("rays".into(), json!(idx));
        let label = match classify(&cone) {
            Ok(class) => {
                e.insert("class".into(), json!(class.kind().name()));
                match &class {
                    SingularityClass::TerminalQuotient { r, a, quotient, .. } => {
                        e.insert("r".into(), json!(r));
                        e.insert("a".into(), json!(a));
                        e.insert("quotient".into(), json!(quotient.to_string()));
                    }
                    SingularityClass::OrdinaryDoublePoint { to_standard, .. } => {
                        e.insert("to_standard".into(), matrix_rows(to_standard));
                    }
                    SingularityClass::CanonicalNotTerminal { witness, .. }
                    | SingularityClass::NotCanonical { witness, .. } => {
                        e.insert("witness".into(), coords(witness));
                    }
                    SingularityClass::NotQGorenstein { ray, value } => {
                        e.insert("ray".into(), coords(ray));
                        e.insert("value".into(), json!(value.to_string()));
                    }
                    SingularityClass::Smooth => {}
                }
                class.to_string()
            }
            Err(ConeError::NotFullDimensional(d)) => {
                e.insert("class".into(), json!("LowerDimensional"));
                e.insert("dim".into(), json!(d));
                format!("LowerDimensional(dim={d})")
            }
            Err(err) => return Err(err.into()),
        };
        lines.push(format!("cone {i} {idx:?}: {label}"));
        entries.push(Value::Object(e));
    }
    Ok(Rendered { json: json!({ "cones": entries }), lines })
}

fn walls_of(fan: &Fan) -> Rendered {
    let mut entries = Vec::new();
    let mut lines = Vec::new();
    for w in fan.walls() {
        let removable = is_wall_removable(fan, &w).removable;
        let (alpha, sum, typ, sign) = match wall_relation(fan, &w) {
            Ok(rel) => {
                let sign = match rel.k_sign() {
                    std::cmp::Ordering::Less => "negative",
                    std::cmp::Ordering::Equal => "zero",
                    std::cmp::Ordering::Greater => "positive",
                };
                (json!(rel.alpha), json!(rel.sum()), json!(wall_type(&rel).name()), json!(sign))
            }
            Err(_) => (Value::Null, Value::Null, Value::Null, Value::Null),
        };
        lines.push(match typ.as_str() {
            Some(t) => format!(
                "wall {:?} between cones {:?}: alpha {} sum {} {} (K.C {})",
                w.face, w.cones, alpha, sum, t, sign.as_str().unwrap_or("")
            ),
            None => format!("wall {:?} between cones {:?}: non-simplicial side, no relation", w.face, w.cones),
        });
        entries.push(json!({
            "face": w.face,
            "cones": w.cones,
            "alpha": alpha,
            "sum": sum,
            "type": typ,
            "k_sign": sign,
            "removable": removable,
        }));
    }
    Rendered { json: json!({ "walls": entries }), lines }
}
