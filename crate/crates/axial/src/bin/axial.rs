//! Command-line front end: load algebras and fusion laws, run
//! verifications, emit deterministic text or JSON reports.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use axial::algebra::Algebra;
use axial::field::{parse_rat, ParamAssignment, Scalar};
use axial::fusion::FusionLaw;
use axial::linalg::{Certificate, Subspace, Vect};
use axial::relators::check_all;
use axial::sweep;

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "axial", about = "Exact verification of 2-generated axial algebras")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Seed for random rational specializations.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Maximum generator-word length for the relator suite.
    #[arg(long, global = true, default_value_t = 4)]
    max_len: usize,
    /// Rational parameter assignment, e.g. "a=1/2,x=7/3".
    #[arg(long, global = true)]
    params: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification sweep over the built-in catalog.
    Verify,
    /// Verify one axis of an algebra against a fusion law.
    CheckAxis {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        law: PathBuf,
        /// Index of the basis vector used as the axis.
        #[arg(long, default_value_t = 0)]
        axis: usize,
        /// Skip the primitivity requirement.
        #[arg(long)]
        no_primitive: bool,
    },
    /// Smallest fusion table an axis satisfies for given eigenvalues.
    MinimalLaw {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, default_value_t = 0)]
        axis: usize,
        /// Comma-separated eigenvalue expressions, e.g. "1,a,1/2".
        #[arg(long)]
        eigenvalues: String,
    },
    /// Grading group of a fusion law via Smith normal form.
    Grading {
        #[arg(long)]
        law: PathBuf,
    },
    /// Ideal closures of given generators (or of each basis vector).
    Ideals {
        #[arg(long)]
        algebra: PathBuf,
        /// Semicolon-separated vectors, each a comma-separated scalar list.
        #[arg(long)]
        gens: Option<String>,
    },
    /// Quotient by the ideal closure of the given generators.
    Quotient {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        gens: String,
    },
    /// Evaluate the universal relators in an algebra.
    Relators {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        law: PathBuf,
        /// Comma-separated basis indices used as axes.
        #[arg(long, default_value = "0,1")]
        axes: String,
    },
    /// Rewrite a symbolic algebra file at a rational parameter point.
    Specialize {
        #[arg(long)]
        algebra: PathBuf,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_algebra(path: &PathBuf) -> Result<Algebra, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let v: Value =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Algebra::from_json(&v).map_err(|e| e.to_string())
}

fn load_law(path: &PathBuf) -> Result<FusionLaw, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let v: Value =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    FusionLaw::from_json(&v).map_err(|e| e.to_string())
}

fn parse_params(s: &Option<String>) -> Result<ParamAssignment, String> {
    let mut out = ParamAssignment::new();
    if let Some(s) = s {
        for part in s.split(',').filter(|p| !p.trim().is_empty()) {
            let (name, val) = part
                .split_once('=')
                .ok_or_else(|| format!("bad assignment {part:?}, expected name=p/q"))?;
            let r = parse_rat(val.trim())
                .ok_or_else(|| format!("bad rational {:?}", val.trim()))?;
            out.insert(name.trim().to_string(), r);
        }
    }
    Ok(out)
}

fn parse_vect(s: &str, dim: usize) -> Result<Vect, String> {
    let coords: Result<Vec<Scalar>, _> =
        s.split(',').map(|c| Scalar::parse(c.trim())).collect();
    let coords = coords.map_err(|e| e.to_string())?;
    if coords.len() != dim {
        return Err(format!("vector has {} coordinates, algebra has dimension {}", coords.len(), dim));
    }
    Ok(Vect::new(coords))
}

fn parse_gens(s: &str, dim: usize) -> Result<Vec<Vect>, String> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| parse_vect(p, dim))
        .collect()
}

fn emit(format: Format, v: &Value, text: &str) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(v).unwrap()),
        Format::Text => println!("{}", text),
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Verify => cmd_verify(cli),
        Command::CheckAxis { algebra, law, axis, no_primitive } => {
            let alg = load_algebra(algebra)?;
            let law = load_law(law)?;
            if *axis >= alg.dim() {
                return Err(format!("axis index {axis} out of range"));
            }
            let a = Vect::unit(alg.dim(), *axis);
            let r = alg
                .check_axis(&a, &law, !*no_primitive)
                .map_err(|e| e.to_string())?;
            let cert: Vec<String> = r.certificate.iter().map(|p| p.to_string()).collect();
            let violations: Vec<String> = r
                .violations
                .iter()
                .map(|v| {
                    format!(
                        "product of {}- and {}-eigenvectors has a {}-component",
                        law.labels()[v.lambda],
                        law.labels()[v.mu],
                        law.labels()[v.component]
                    )
                })
                .collect();
            let passed = r.passed();
            emit(
                cli.format,
                &json!({
                    "passed": passed,
                    "idempotent": r.idempotent,
                    "complete": r.complete,
                    "primitive": r.primitive_checked,
                    "violations": violations,
                    "certificate": cert,
                }),
                &format!(
                    "{}\nidempotent: {}\ncomplete: {}\nprimitive: {}\nviolations: {}\ncertificate: {}",
                    if passed { "PASS" } else { "FAIL" },
                    r.idempotent,
                    r.complete,
                    r.primitive_checked,
                    if violations.is_empty() { "none".into() } else { violations.join("; ") },
                    cert.join(", ")
                ),
            );
            Ok(if passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::MinimalLaw { algebra, axis, eigenvalues } => {
            let alg = load_algebra(algebra)?;
            let evs: Result<Vec<Scalar>, _> =
                eigenvalues.split(',').map(|c| Scalar::parse(c.trim())).collect();
            let evs = evs.map_err(|e| e.to_string())?;
            let a = Vect::unit(alg.dim(), *axis);
            let law = alg.minimal_fusion_law(&a, &evs).map_err(|e| e.to_string())?;
            let g = law.grading_group();
            emit(
                cli.format,
                &json!({
                    "law": law.to_json(),
                    "grading": g.structure(),
                }),
                &format!(
                    "{}\ngrading group: {}",
                    serde_json::to_string(&law.to_json()).unwrap(),
                    g.structure()
                ),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Grading { law } => {
            let law = load_law(law)?;
            let g = law.grading_group();
            let degrees: Vec<String> = (0..law.len())
                .map(|i| format!("{} -> {}", law.labels()[i], g.degree_string(i)))
                .collect();
            emit(
                cli.format,
                &json!({
                    "group": g.structure(),
                    "degrees": degrees,
                }),
                &format!("{}; {}", g.structure(), degrees.join(", ")),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Ideals { algebra, gens } => {
            let alg = load_algebra(algebra)?;
            let gen_sets: Vec<(String, Vec<Vect>)> = match gens {
                Some(s) => vec![(s.clone(), parse_gens(s, alg.dim())?)],
                None => (0..alg.dim())
                    .map(|i| {
                        (alg.basis_names()[i].clone(), vec![Vect::unit(alg.dim(), i)])
                    })
                    .collect(),
            };
            let mut rows = Vec::new();
            let mut lines = Vec::new();
            for (name, g) in gen_sets {
                let span = Subspace::from_vectors(alg.dim(), &g, Certificate::new());
                let closed = alg.ideal_closure(&g);
                let is_ideal = closed.dim() == span.dim();
                let basis: Vec<String> =
                    closed.basis.iter().map(|b| b.to_string()).collect();
                rows.push(json!({
                    "generators": name,
                    "span_dim": span.dim(),
                    "closure_dim": closed.dim(),
                    "already_ideal": is_ideal,
                    "closure_basis": basis,
                }));
                lines.push(format!(
                    "<{}>: span dim {}, closure dim {} ({}), basis [{}]",
                    name,
                    span.dim(),
                    closed.dim(),
                    if is_ideal { "ideal" } else { "not an ideal" },
                    basis.join("; ")
                ));
            }
            emit(cli.format, &json!({ "ideals": rows }), &lines.join("\n"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Quotient { algebra, gens } => {
            let alg = load_algebra(algebra)?;
            let g = parse_gens(gens, alg.dim())?;
            let closed = alg.ideal_closure(&g);
            let (q, proj) = alg.quotient(&closed).map_err(|e| e.to_string())?;
            let images: Vec<String> = (0..alg.dim())
                .map(|i| {
                    format!(
                        "{} -> {}",
                        alg.basis_names()[i],
                        proj.mul_vec(&Vect::unit(alg.dim(), i))
                    )
                })
                .collect();
            emit(
                cli.format,
                &json!({
                    "ideal_dim": closed.dim(),
                    "quotient": q.to_json(),
                    "projection": images,
                }),
                &format!(
                    "ideal dim {}; quotient dim {}\n{}\nprojection: {}",
                    closed.dim(),
                    q.dim(),
                    serde_json::to_string(&q.to_json()).unwrap(),
                    images.join(", ")
                ),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Relators { algebra, law, axes } => {
            let alg = load_algebra(algebra)?;
            let law = load_law(law)?;
            let idx: Result<Vec<usize>, _> =
                axes.split(',').map(|s| s.trim().parse::<usize>()).collect();
            let idx = idx.map_err(|e| e.to_string())?;
            let axes: Vec<Vect> =
                idx.iter().map(|&i| Vect::unit(alg.dim(), i)).collect();
            let r = check_all(&alg, &axes, &law, cli.max_len).map_err(|e| e.to_string())?;
            let passed = r.failed == 0;
            emit(
                cli.format,
                &json!({
                    "passed": passed,
                    "total": r.total,
                    "failed": r.failed,
                    "failures": r.failures,
                }),
                &format!(
                    "{}: {} instances, {} failed{}{}",
                    if passed { "PASS" } else { "FAIL" },
                    r.total,
                    r.failed,
                    if r.failures.is_empty() { "" } else { "\n" },
                    r.failures.join("\n")
                ),
            );
            Ok(if passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Specialize { algebra, out } => {
            let alg = load_algebra(algebra)?;
            let at = parse_params(&cli.params)?;
            if at.is_empty() {
                return Err("specialize requires --params".into());
            }
            // optional precondition polynomials recorded in the file: refuse
            // any point where one of them vanishes
            let raw: Value = serde_json::from_str(
                &std::fs::read_to_string(algebra).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            if let Some(excl) = raw.get("exclusions").and_then(Value::as_array) {
                for e in excl {
                    let text = e.as_str().ok_or("exclusions must be strings")?;
                    let s = Scalar::parse(text).map_err(|e| e.to_string())?;
                    if let Ok(v) = s.specialize(&at) {
                        if v.is_zero() {
                            return Err(format!(
                                "refusing specialization: precondition {} vanishes",
                                text
                            ));
                        }
                    }
                }
            }
            // refuse points where any structure-constant denominator
            // vanishes: the specialized table would not be defined
            let spec = alg.specialize(&at).map_err(|e| {
                format!("refusing specialization: {e}")
            })?;
            let text = serde_json::to_string_pretty(&spec.to_json()).unwrap();
            match out {
                Some(p) => {
                    std::fs::write(p, text).map_err(|e| e.to_string())?;
                    println!("wrote {}", p.display());
                }
                None => println!("{}", text),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn cmd_verify(cli: &Cli) -> Result<ExitCode, String> {
    let rep = sweep::run(cli.seed, cli.max_len).map_err(|e| e.to_string())?;
    let mut sections: BTreeMap<String, Vec<Value>> = BTreeMap::new();
    let mut lines = Vec::new();
    let mut repro_fail = 0usize;
    let mut adj_fail = 0usize;
    let mut sorted = rep.checks.clone();
    sorted.sort_by(|a, b| (&a.section, &a.name).cmp(&(&b.section, &b.name)));
    for c in &sorted {
        if !c.passed {
            if c.adjudication {
                adj_fail += 1;
            } else {
                repro_fail += 1;
            }
        }
        sections.entry(c.section.clone()).or_default().push(json!({
            "name": c.name,
            "passed": c.passed,
            "kind": if c.adjudication { "adjudication" } else { "reproduction" },
            "detail": c.detail,
        }));
        lines.push(format!(
            "{} [{}] {}{}",
            if c.passed { "PASS" } else { "FAIL" },
            if c.adjudication {
                format!("{} (adjudication)", c.section)
            } else {
                c.section.clone()
            },
            c.name,
            if c.detail.is_empty() { String::new() } else { format!(" — {}", c.detail) }
        ));
    }
    let ok = repro_fail == 0 && adj_fail == 0;
    lines.push(format!(
        "\n{}: {} checks, {} reproduction failures, {} inconclusive adjudications",
        if ok { "PASS" } else { "FAIL" },
        sorted.len(),
        repro_fail,
        adj_fail
    ));
    emit(
        cli.format,
        &json!({
            "passed": ok,
            "seed": cli.seed,
            "max_len": cli.max_len,
            "sections": sections,
            "reproduction_failures": repro_fail,
            "inconclusive_adjudications": adj_fail,
        }),
        &lines.join("\n"),
    );
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
