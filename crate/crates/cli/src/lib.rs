//! Command-line frontend: reads JSON problem files and runs the structure
//! algorithms on them.
//!
//! Exit codes: 0 success, 1 internal error, 2 parse or validation failure,
//! 3 a theorem hypothesis fails, 4 an eigenvalue is not rational.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use colorlie::algebra::{AlgebraError, ColorAlgebra};
use colorlie::linalg::{fmt_rational, NilPolicy};
use colorlie::problem::Problem;
use colorlie::report;
use colorlie::structure::{
    color_flag, ideal_chain, z3_counterexample, Options, StructureError,
};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_FIELD: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "colorlie", version, about = "Structure theory for linear Lie color algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Run the algorithms without checking the theorem hypotheses first
    #[arg(long, global = true)]
    pub skip_hypotheses: bool,
    /// Seed for probabilistic nil checks
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// How nil checks on spans are decided
    #[arg(long, global = true, value_enum, default_value_t = PolicyArg::Auto)]
    pub policy: PolicyArg,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a problem file, close the generators and report dimensions
    Validate { path: PathBuf },
    /// Derived and lower central series
    Series { path: PathBuf },
    /// Homogeneous basis in which every element is upper triangular
    Triangularize { path: PathBuf },
    /// Chain of color ideals with dimensions 0, 1, ..., dim L
    Chain { path: PathBuf },
    /// The Z_3-graded example that cannot be triangularized
    DemoZ3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    Auto,
    Deterministic,
    Probabilistic,
}

impl Cli {
    fn options(&self) -> Options {
        let policy = match self.policy {
            PolicyArg::Auto => NilPolicy::Auto { seed: self.seed },
            PolicyArg::Deterministic => NilPolicy::Deterministic,
            PolicyArg::Probabilistic => NilPolicy::Probabilistic { seed: self.seed },
        };
        Options {
            check_hypotheses: !self.skip_hypotheses,
            policy,
        }
    }
}

/// A failed command: exit code plus a report for stderr (text) or stdout (JSON).
struct Failure {
    code: i32,
    message: String,
    detail: Value,
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        let code = match e {
            AlgebraError::NotClosed | AlgebraError::ClosureDiverged(_) => EXIT_INVALID,
            _ => EXIT_INTERNAL,
        };
        Failure {
            code,
            message: e.to_string(),
            detail: json!({ "kind": "AlgebraError", "message": e.to_string() }),
        }
    }
}

impl From<StructureError> for Failure {
    fn from(e: StructureError) -> Self {
        Failure {
            code: exit_code(&e),
            message: format!("{}: {e}", report::error_kind(&e)),
            detail: report::error(&e),
        }
    }
}

pub fn exit_code(e: &StructureError) -> i32 {
    match e.root_cause() {
        StructureError::HypothesisFailed(_)
        | StructureError::TorsionGrading(_)
        | StructureError::NotSolvable
        | StructureError::NoHomogeneousEigenvector
        | StructureError::NoAnnihilatedVector
        | StructureError::WeightNotInvariant => EXIT_HYPOTHESIS,
        StructureError::IrrationalEigenvalue { .. } => EXIT_FIELD,
        StructureError::EmptySpace | StructureError::ZeroAlgebra => EXIT_INVALID,
        StructureError::Algebra(AlgebraError::NotClosed | AlgebraError::ClosureDiverged(_)) => {
            EXIT_INVALID
        }
        _ => EXIT_INTERNAL,
    }
}

fn load(path: &PathBuf) -> Result<(Problem, ColorAlgebra), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INVALID,
        message: format!("{}: {e}", path.display()),
        detail: json!({ "kind": "IoError", "message": e.to_string() }),
    })?;
    let problem = Problem::from_json(&text).map_err(|e| Failure {
        code: EXIT_INVALID,
        message: format!("{}: {e}", path.display()),
        detail: json!({ "kind": "ProblemError", "message": e.to_string() }),
    })?;
    let algebra = problem.algebra()?;
    Ok((problem, algebra))
}

fn dims_line(dims: &[(colorlie::grading::GroupElement, usize)]) -> String {
    if dims.is_empty() {
        return "-".into();
    }
    dims.iter()
        .map(|(g, n)| format!("{n}@{g}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn validate(l: &ColorAlgebra) -> (String, Value) {
    let mut text = String::new();
    writeln!(text, "valid").unwrap();
    writeln!(text, "group: {}", l.space().group()).unwrap();
    writeln!(text, "space: {}", l.space()).unwrap();
    writeln!(text, "dim L: {}", l.dim()).unwrap();
    writeln!(text, "components: {}", dims_line(&l.component_dims())).unwrap();
    let mut value = report::algebra(l);
    value["valid"] = json!(true);
    (text, value)
}

fn series(l: &ColorAlgebra) -> Result<(String, Value), Failure> {
    let value = report::series(l)?;
    let derived = l.derived_series()?;
    let lower = l.lower_central_series()?;
    let mut text = String::new();
    for (name, s) in [("derived", &derived), ("lower central", &lower)] {
        let dims: Vec<String> = s.iter().map(|x| x.dim().to_string()).collect();
        writeln!(text, "{name}: [{}]", dims.join(", ")).unwrap();
        for (i, x) in s.iter().enumerate() {
            writeln!(text, "  {i}: {}", dims_line(&x.component_dims())).unwrap();
        }
    }
    writeln!(text, "solvable: {}", value["solvable"]).unwrap();
    writeln!(text, "nilpotent: {}", value["nilpotent"]).unwrap();
    Ok((text, value))
}

fn triangularize(problem: &Problem, l: &ColorAlgebra, opts: Options) -> Result<(String, Value), Failure> {
    let flag = color_flag(l, opts)?;
    let value = report::flag(&flag, &problem.generators)?;
    let mut text = String::new();
    writeln!(text, "flag basis:").unwrap();
    for (k, v) in flag.ordered_basis.iter().enumerate() {
        writeln!(text, "  v{}: {v}", k + 1).unwrap();
    }
    writeln!(text, "weights (rows: flag position, columns: basis of L):").unwrap();
    for (k, w) in flag.weights.iter().enumerate() {
        let vals: Vec<String> = w.values.iter().map(fmt_rational).collect();
        writeln!(text, "  v{}: [{}]", k + 1, vals.join(", ")).unwrap();
    }
    for (i, x) in problem.generators.iter().enumerate() {
        writeln!(text, "generator {i} (degree {}) in the flag basis:", x.degree()).unwrap();
        write!(text, "{}", flag.matrix_of(x)?).unwrap();
    }
    Ok((text, value))
}

fn chain(l: &ColorAlgebra, opts: Options) -> Result<(String, Value), Failure> {
    let c = ideal_chain(l, opts)?;
    let value = report::chain(&c);
    let mut text = String::new();
    let dims: Vec<String> = c.chain.iter().map(|s| s.dim().to_string()).collect();
    writeln!(text, "dims: {}", dims.join(", ")).unwrap();
    for (i, x) in c.ordered_basis.iter().enumerate() {
        writeln!(text, "L_{} = L_{} + F x{}, x{} of {x}", i + 1, i, i + 1, i + 1).unwrap();
    }
    Ok((text, value))
}

fn demo_z3() -> Result<(String, Value), Failure> {
    let r = z3_counterexample()?;
    let value = report::z3(&r);
    let mut text = String::new();
    writeln!(text, "G = Z_3, trivial bicharacter, V_i = F e_i").unwrap();
    writeln!(text, "A e1 = e3, A e2 = e1, A e3 = e2; in the basis e1, e2, e3:").unwrap();
    write!(text, "{}", r.matrix).unwrap();
    writeln!(text, "deg A = {}", r.degree).unwrap();
    writeln!(text, "[L, L] = 0: {}", r.derived_zero).unwrap();
    writeln!(text, "solvable: {}", r.solvable).unwrap();
    writeln!(text, "homogeneous elements of [L, L] nilpotent: {}", r.derived_nil).unwrap();
    writeln!(text, "A^3 = I: {}", r.a_cubed_is_identity).unwrap();
    let roots: Vec<String> = r.rational_roots.iter().map(|(x, _)| fmt_rational(x)).collect();
    writeln!(text, "char poly: {}, rational roots: {{{}}}", r.char_poly, roots.join(", ")).unwrap();
    writeln!(
        text,
        "eigenvector for 1: {} (homogeneous: {})",
        r.eigenvector, r.eigenvector_homogeneous
    )
    .unwrap();
    writeln!(text, "color flag: fails with {}", r.flag_error).unwrap();
    writeln!(text, "  without hypothesis checks: {}", r.unchecked_flag_error).unwrap();
    writeln!(text, "homogeneous orderings:").unwrap();
    for o in &r.orderings {
        let order: Vec<String> = o.order.iter().map(|i| format!("e{i}")).collect();
        let rows: Vec<String> = o
            .matrix
            .to_rows()
            .iter()
            .map(|row| row.iter().map(fmt_rational).collect::<Vec<_>>().join(" "))
            .collect();
        writeln!(
            text,
            "  ({}): [{}] upper triangular: {}",
            order.join(", "),
            rows.join("; "),
            o.upper_triangular
        )
        .unwrap();
    }
    writeln!(text, "orderings checked: {}", r.orderings.len()).unwrap();
    writeln!(text, "triangularizable: {}", r.triangularizable).unwrap();
    Ok((text, value))
}

fn dispatch(cli: &Cli) -> Result<(String, Value), Failure> {
    let opts = cli.options();
    match &cli.command {
        Command::Validate { path } => {
            let (_, l) = load(path)?;
            Ok(validate(&l))
        }
        Command::Series { path } => {
            let (_, l) = load(path)?;
            series(&l)
        }
        Command::Triangularize { path } => {
            let (problem, l) = load(path)?;
            triangularize(&problem, &l, opts)
        }
        Command::Chain { path } => {
            let (_, l) = load(path)?;
            chain(&l, opts)
        }
        Command::DemoZ3 => demo_z3(),
    }
}

/// Runs a parsed command line, writing reports to `out` and diagnostics to
/// `err`. Returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli) {
        Ok((text, value)) => {
            if cli.json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).unwrap());
            } else {
                let _ = write!(out, "{text}");
            }
            EXIT_OK
        }
        Err(f) => {
            if cli.json {
                let doc = json!({ "error": f.detail, "exit_code": f.code });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap());
            }
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
