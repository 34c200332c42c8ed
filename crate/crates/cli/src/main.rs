//! `pfaff`: evaluate and verify block partial linearizations of pfaffians.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pfaff::bpf::{bpf0_with, bpf_with, gen_pf, partial_lin_det, LinearizationSpec};
use pfaff::corpus::{gen_corpus, CorpusBounds};
use pfaff::decomp::{
    amitsur_det_terms, class_partition_check_with, lemma2_check_with,
    newton_consistency_check_with, pfaffian_product_terms, sigma_newton, verify_decomposition_with,
};
use pfaff::tableau::{MatrixSpec, Tableau, TableauSpec};
use pfaff::{Error, Limits, Polynomial, SymMatrix};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "pfaff",
    version,
    about = "Exact block partial linearizations of the pfaffian"
)]
struct Cli {
    /// Print polynomials as plain text instead of a JSON report.
    #[arg(long, global = true)]
    text: bool,
    /// Lift the guards on factorial-size enumerations.
    #[arg(long, global = true)]
    unsafe_large: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Tableau JSON file; `-` or nothing reads standard input.
    file: Option<PathBuf>,
}

#[derive(Args)]
struct Glued {
    #[command(flatten)]
    input: Input,
    /// First glued column; defaults to the tableau's `q` field.
    #[arg(long)]
    q1: Option<usize>,
    /// Second glued column; defaults to the tableau's `q` field.
    #[arg(long)]
    q2: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a tableau and list every violated invariant.
    Validate(Input),
    /// Evaluate bpf over the constrained permutation sum.
    Bpf(Input),
    /// Evaluate bpf⁰ over all permutation tuples.
    Bpf0(Input),
    /// The pfaffian of X − Xᵗ for an integer matrix file or a generic matrix.
    Pf {
        /// Matrix JSON `{"rows":r,"cols":c,"entries":[[…]]}`.
        file: Option<PathBuf>,
        /// Use the generic n×n matrix instead of a file.
        #[arg(long)]
        generic: Option<usize>,
    },
    /// Per-quadruple breakdown of the decomposition along two glued columns.
    Decompose(Glued),
    /// Compare bpf with the decomposition; exit 1 on a mismatch.
    Verify(Glued),
    /// Compare bpf⁰ with its trace expansion over S_n; exit 1 on a mismatch.
    Lemma2(Glued),
    /// Census of permutation classes; exit 1 if any property fails.
    Classes(Glued),
    /// Compare bpf with its class-representative and power-trace forms over ℚ.
    Newton(Glued),
    /// Amitsur's formula for det_{k_1,…,k_s} of generic n×n matrices.
    Amitsur {
        #[arg(long)]
        n: usize,
        /// Multiplicities, comma separated, summing to n.
        #[arg(long, value_delimiter = ',', required = true)]
        ks: Vec<usize>,
    },
    /// The expansion of P(Y)·P(Z) for generic n×n Y, Z.
    Pfprod {
        #[arg(long)]
        n: usize,
    },
    /// σ_k of the generic n×n matrix by minors and by power traces.
    Sigma {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Emit seeded random tableaux, one JSON object per line.
    Corpus {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        max_cells: usize,
        #[arg(long, default_value_t = 4)]
        max_columns: usize,
        #[arg(long, default_value_t = 3)]
        max_junction: usize,
        #[arg(long, default_value_t = 3)]
        max_labels: usize,
    },
    /// Verify every tableau of a JSON-lines stream; exit 1 at the first mismatch.
    VerifyAll(Input),
}

enum Failure {
    Usage(String),
    Mismatch(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<Value, Failure>;

struct Ctx {
    text: bool,
    limits: Limits,
}

fn poly(p: &Polynomial) -> Value {
    Value::String(p.to_string())
}

fn read_input(input: &Input) -> Result<String, Failure> {
    match &input.file {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn load(input: &Input) -> Result<(TableauSpec, Tableau), Failure> {
    let spec = TableauSpec::parse(&read_input(input)?)?;
    let t = spec.build()?;
    Ok((spec, t))
}

fn glued(g: &Glued) -> Result<(TableauSpec, Tableau, usize, usize), Failure> {
    let (spec, t) = load(&g.input)?;
    let (q1, q2) = match (g.q1, g.q2, spec.q) {
        (Some(a), Some(b), _) => (a, b),
        (None, None, Some([a, b])) => (a, b),
        _ => {
            return Err(Failure::Usage(
                "glued columns needed: pass --q1 and --q2 or a \"q\" field".into(),
            ))
        }
    };
    Ok((spec, t, q1, q2))
}

fn mismatch(report: Value, spec: &TableauSpec) -> Failure {
    let mut report = report;
    report["witness_tableau"] = serde_json::from_str(&spec.to_json()).expect("spec is JSON");
    Failure::Mismatch(report)
}

fn generic_many(n: usize, s: usize) -> Vec<SymMatrix> {
    (1..=s as u32)
        .map(|l| SymMatrix::generic(l, n, n))
        .collect()
}

fn run(cmd: &Command, ctx: &Ctx) -> Outcome {
    match cmd {
        Command::Validate(input) => {
            let spec = TableauSpec::parse(&read_input(input)?)?;
            let t = spec.build_unchecked()?;
            let violations: Vec<String> = t.validate().iter().map(ToString::to_string).collect();
            if violations.is_empty() {
                Ok(
                    json!({"valid": true, "dims": t.dims(), "arrows": t.arrows().len(), "labels": t.label_count()}),
                )
            } else {
                Err(Failure::Usage(format!(
                    "invalid tableau: {}",
                    violations.join("; ")
                )))
            }
        }
        Command::Bpf(input) => {
            let (_, t) = load(input)?;
            Ok(json!({"bpf": poly(&bpf_with(&t, &ctx.limits)?)}))
        }
        Command::Bpf0(input) => {
            let (_, t) = load(input)?;
            Ok(json!({"bpf0": poly(&bpf0_with(&t, &ctx.limits)?), "c_t": t.c_t().to_string()}))
        }
        Command::Pf { file, generic } => {
            let m = match (file, generic) {
                (None, Some(n)) => SymMatrix::generic(1, *n, *n),
                (Some(_), None) => {
                    let spec: MatrixSpec =
                        serde_json::from_str(&read_input(&Input { file: file.clone() })?)
                            .map_err(|e| Failure::Usage(format!("parse error: {e}")))?;
                    match spec {
                        MatrixSpec::Explicit {
                            rows,
                            cols,
                            entries,
                        } => {
                            if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
                                return Err(Failure::Usage(format!(
                                    "entries do not match {rows}x{cols}"
                                )));
                            }
                            SymMatrix::from_fn(rows, cols, |i, j| {
                                Polynomial::from_int(entries[i][j])
                            })
                        }
                        MatrixSpec::Named(name) => {
                            return Err(Failure::Usage(format!(
                                "pass --generic n instead of {name:?}"
                            )))
                        }
                    }
                }
                _ => {
                    return Err(Failure::Usage(
                        "pass exactly one of a matrix file or --generic n".into(),
                    ))
                }
            };
            ctx.limits.check_perm_order(m.rows())?;
            Ok(json!({"pf": poly(&gen_pf(&m)?)}))
        }
        Command::Decompose(g) => {
            let (_, t, q1, q2) = glued(g)?;
            Ok(verify_decomposition_with(&t, q1, q2, &ctx.limits)?.to_json())
        }
        Command::Verify(g) => {
            let (spec, t, q1, q2) = glued(g)?;
            let report = verify_decomposition_with(&t, q1, q2, &ctx.limits)?;
            let value = report.to_json();
            if report.equal && report.witness_independent {
                Ok(value)
            } else {
                Err(mismatch(value, &spec))
            }
        }
        Command::Lemma2(g) => {
            let (spec, t, q1, q2) = glued(g)?;
            let report = lemma2_check_with(&t, q1, q2, &ctx.limits)?;
            if report.equal {
                Ok(report.to_json())
            } else {
                Err(mismatch(report.to_json(), &spec))
            }
        }
        Command::Classes(g) => {
            let (spec, t, q1, q2) = glued(g)?;
            let census = class_partition_check_with(&t, q1, q2, &ctx.limits)?;
            if census.ok() {
                Ok(census.to_json())
            } else {
                Err(mismatch(census.to_json(), &spec))
            }
        }
        Command::Newton(g) => {
            let (spec, t, q1, q2) = glued(g)?;
            let report = newton_consistency_check_with(&t, q1, q2, &ctx.limits)?;
            if report.equal() {
                Ok(report.to_json())
            } else {
                Err(mismatch(report.to_json(), &spec))
            }
        }
        Command::Amitsur { n, ks } => {
            ctx.limits.check_perm_order(*n)?;
            let xs = generic_many(*n, ks.len());
            let terms = amitsur_det_terms(&xs, ks)?;
            let value: Polynomial = terms.iter().map(|t| t.value.clone()).sum();
            let brute = partial_lin_det(&LinearizationSpec::new(xs, ks.clone())?)?;
            let report = json!({
                "value": poly(&value),
                "equal": value == brute,
                "terms": terms.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
            });
            if value == brute {
                Ok(report)
            } else {
                Err(Failure::Mismatch(report))
            }
        }
        Command::Pfprod { n } => {
            ctx.limits.check_perm_order(*n)?;
            let (y, z) = (SymMatrix::generic(1, *n, *n), SymMatrix::generic(2, *n, *n));
            let terms = pfaffian_product_terms(&y, &z)?;
            let value: Polynomial = terms.iter().map(|t| t.value.clone()).sum();
            let product = &gen_pf(&y)? * &gen_pf(&z)?;
            let report = json!({
                "value": poly(&value),
                "equal": value == product,
                "terms": terms.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
            });
            if value == product {
                Ok(report)
            } else {
                Err(Failure::Mismatch(report))
            }
        }
        Command::Sigma { n, k } => {
            ctx.limits.check_perm_order(*n)?;
            let a = SymMatrix::generic(1, *n, *n);
            let minors = a.sigma(*k)?;
            let traces = sigma_newton(&a, *k)?;
            let equal = minors.to_rational() == traces;
            let report = json!({"sigma": poly(&minors), "equal": equal});
            if equal {
                Ok(report)
            } else {
                Err(Failure::Mismatch(report))
            }
        }
        Command::Corpus {
            seed,
            count,
            max_cells,
            max_columns,
            max_junction,
            max_labels,
        } => {
            let bounds = CorpusBounds {
                max_columns: *max_columns,
                max_cells: *max_cells,
                max_junction: *max_junction,
                max_labels: *max_labels,
            };
            let lines: Vec<Value> = gen_corpus(*seed, &bounds, *count)?
                .iter()
                .map(|s| serde_json::from_str(&s.to_json()).expect("spec is JSON"))
                .collect();
            Ok(Value::Array(lines))
        }
        Command::VerifyAll(input) => {
            let text = read_input(input)?;
            let mut checked = 0usize;
            for (i, line) in text
                .lines()
                .enumerate()
                .filter(|(_, l)| !l.trim().is_empty())
            {
                let spec = TableauSpec::parse(line)
                    .map_err(|e| Failure::Usage(format!("line {}: {e}", i + 1)))?;
                let t = spec
                    .build()
                    .map_err(|e| Failure::Usage(format!("line {}: {e}", i + 1)))?;
                let [q1, q2] = spec
                    .q
                    .ok_or_else(|| Failure::Usage(format!("line {}: no \"q\" field", i + 1)))?;
                let report = verify_decomposition_with(&t, q1, q2, &ctx.limits)
                    .map_err(|e| Failure::Usage(format!("line {}: {e}", i + 1)))?;
                if !(report.equal && report.witness_independent) {
                    let mut value = report.to_json();
                    value["line"] = json!(i + 1);
                    return Err(mismatch(value, &spec));
                }
                checked += 1;
            }
            Ok(json!({"checked": checked, "equal": true}))
        }
    }
}

/// The plain-text form: every polynomial-valued field on its own line.
fn render_text(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let keys = ["bpf", "bpf0", "pf", "rhs", "value", "sigma"];
            let picked: Vec<String> = keys
                .iter()
                .filter_map(|k| {
                    map.get(*k)
                        .and_then(Value::as_str)
                        .map(|s| format!("{k}: {s}"))
                })
                .collect();
            if picked.is_empty() {
                v.to_string()
            } else {
                picked.join("\n")
            }
        }
        _ => v.to_string(),
    }
}

fn emit(v: &Value, text: bool, corpus: bool) {
    let mut out = io::stdout().lock();
    let written = if corpus {
        v.as_array()
            .into_iter()
            .flatten()
            .try_for_each(|line| writeln!(out, "{line}"))
    } else if text {
        writeln!(out, "{}", render_text(v))
    } else {
        writeln!(out, "{v}")
    };
    if written.is_err() {
        std::process::exit(2);
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let ctx = Ctx {
        text: cli.text,
        limits: if cli.unsafe_large {
            Limits::unbounded()
        } else {
            Limits::default()
        },
    };
    let corpus = matches!(cli.command, Command::Corpus { .. });
    match run(&cli.command, &ctx) {
        Ok(v) => {
            emit(&v, ctx.text, corpus);
            ExitCode::SUCCESS
        }
        Err(Failure::Mismatch(v)) => {
            emit(&v, ctx.text, false);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
