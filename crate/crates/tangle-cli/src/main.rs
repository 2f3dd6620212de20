//! `tangle`: entanglement measures for qubits and rebits from the command
//! line.
//!
//! Subcommands: `tangle` (analytic measures of a state or density),
//! `embed` (ubit embedding and the two-qubit/three-rebit relations),
//! `roof` (numerical convex-roof minimization) and `check` (the built-in
//! verification suites). Exit codes: 0 success, 2 parse/usage error,
//! 3 invalid state, 4 check-suite failure.

mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tangle::catalog;
use tangle::exec::Exec;
use tangle::mat::Field;
use tangle::qubit;
use tangle::rebit;
use tangle::roof::{roof_minimize, RoofConfig, RoofResult};
use tangle::state::{state_from_json, LoadError, StateData, StateVector};
use tangle::ubit;
use tangle::verify::{self, Suite};
use tangle::Error as CoreError;

use report::{f64_cell, number, CsvTable, Report};

const EXIT_PARSE: i32 = 2;
const EXIT_INVALID: i32 = 3;
const EXIT_CHECK_FAILED: i32 = 4;

#[derive(Parser)]
#[command(
    name = "tangle",
    version,
    about = "Tangle and three-tangle measures for qubits and rebits, with a convex-roof minimizer and the ubit embedding"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analytic measures of a pure state or density matrix
    Tangle(TangleArgs),
    /// Embed a complex two-qubit state as three rebits and report the
    /// tangle relations
    Embed(EmbedArgs),
    /// Numerically minimize a convex roof over decompositions
    Roof(RoofArgs),
    /// Run the built-in verification suites
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FieldArg {
    Real,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Objective {
    /// Two-party tangle of the state's own field
    Tangle,
    /// Three-tangle (signed for rebits)
    #[value(name = "three_tangle")]
    ThreeTangle,
    /// Joint roof of sigma_A|B + sigma_UAB over the embedded state
    #[value(name = "joint_tau")]
    JointTau,
}

#[derive(Args)]
struct TangleArgs {
    /// Catalog names or JSON state files; catalog names resolve first
    inputs: Vec<String>,
    /// Catalog state to load (repeatable)
    #[arg(long = "catalog", value_name = "NAME")]
    catalogs: Vec<String>,
    /// JSON state file to load (repeatable)
    #[arg(long = "file", value_name = "PATH")]
    files: Vec<PathBuf>,
    /// Reinterpret the field tag (complex -> real only if exactly real)
    #[arg(long, value_enum)]
    field: Option<FieldArg>,
    /// Skip the per-call route cross-checks
    #[arg(long)]
    fast: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct EmbedArgs {
    /// Catalog name or JSON state file; catalog names resolve first
    input: Option<String>,
    #[arg(long = "catalog", value_name = "NAME")]
    catalog: Option<String>,
    #[arg(long = "file", value_name = "PATH")]
    file: Option<PathBuf>,
    /// Reinterpret the field tag before embedding
    #[arg(long, value_enum)]
    field: Option<FieldArg>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct RoofArgs {
    /// Catalog name or JSON state file; catalog names resolve first
    input: Option<String>,
    #[arg(long = "catalog", value_name = "NAME")]
    catalog: Option<String>,
    #[arg(long = "file", value_name = "PATH")]
    file: Option<PathBuf>,
    #[arg(long, value_enum)]
    field: Option<FieldArg>,
    #[arg(long, value_enum)]
    objective: Objective,
    /// Decomposition cardinality (default: twice the rank)
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long = "max-iters", default_value_t = 500)]
    max_iters: usize,
    /// Run restarts sequentially instead of in parallel
    #[arg(long)]
    serial: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    /// identity | monogamy | hyperdet | relation | roof-oracle | all
    #[arg(default_value = "all")]
    suite: String,
    /// Samples per statistical suite (for `roof-oracle` alone, -n counts
    /// whole minimizations)
    #[arg(short = 'n', long = "samples")]
    n: Option<usize>,
    /// Roof minimizations in the roof-oracle suite when running `all`
    #[arg(long = "n-roof")]
    n_roof: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run sample batches sequentially instead of in parallel
    #[arg(long)]
    serial: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }

    fn invalid(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Tangle(args) => cmd_tangle(args),
        Command::Embed(args) => cmd_embed(args),
        Command::Roof(args) => cmd_roof(args),
        Command::Check(args) => cmd_check(args),
    };
    match result {
        Ok((text, code)) => {
            print!("{text}");
            std::process::exit(code);
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            std::process::exit(failure.code);
        }
    }
}

// ---------------------------------------------------------------------------
// Input resolution.
// ---------------------------------------------------------------------------

fn load_file(path: &PathBuf) -> Result<(String, StateData), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
    let data = state_from_json(&text).map_err(|e| match e {
        LoadError::Parse(inner) => Failure::parse(format!("{}: {inner}", path.display())),
        LoadError::Invalid(inner) => Failure::invalid(format!("{}: {inner}", path.display())),
    })?;
    Ok((path.display().to_string(), data))
}

/// Bare names try the catalog first, then the filesystem.
fn resolve_auto(name: &str) -> Result<(String, StateData), Failure> {
    match catalog::catalog(name) {
        Ok(data) => Ok((name.to_string(), data)),
        Err(CoreError::UnknownCatalog(_)) => {
            let path = PathBuf::from(name);
            if path.exists() {
                load_file(&path)
            } else {
                Err(Failure::parse(format!(
                    "`{name}` is neither a catalog state ({}) nor a readable file",
                    catalog::NAMES.join(", ")
                )))
            }
        }
        Err(e) => Err(Failure::parse(e.to_string())),
    }
}

fn apply_field(data: StateData, field: Option<FieldArg>) -> Result<StateData, Failure> {
    match field {
        None => Ok(data),
        Some(FieldArg::Complex) => Ok(data.to_complex()),
        Some(FieldArg::Real) => data.try_real().map_err(|e| Failure::invalid(e.to_string())),
    }
}

fn gather_inputs(
    inputs: &[String],
    catalogs: &[String],
    files: &[PathBuf],
    field: Option<FieldArg>,
) -> Result<Vec<(String, StateData)>, Failure> {
    let mut out = Vec::new();
    for name in inputs {
        out.push(resolve_auto(name)?);
    }
    for name in catalogs {
        let data = catalog::catalog(name).map_err(|e| Failure::parse(e.to_string()))?;
        out.push((name.clone(), data));
    }
    for path in files {
        out.push(load_file(path)?);
    }
    if out.is_empty() {
        return Err(Failure::parse(
            "no input state; pass a catalog name, a file, or --catalog/--file",
        ));
    }
    out.into_iter()
        .map(|(label, data)| Ok((label, apply_field(data, field)?)))
        .collect()
}

fn gather_single(
    input: &Option<String>,
    catalog_name: &Option<String>,
    file: &Option<PathBuf>,
    field: Option<FieldArg>,
) -> Result<(String, StateData), Failure> {
    let inputs: Vec<String> = input.iter().cloned().collect();
    let catalogs: Vec<String> = catalog_name.iter().cloned().collect();
    let files: Vec<PathBuf> = file.iter().cloned().collect();
    let mut all = gather_inputs(&inputs, &catalogs, &files, field)?;
    if all.len() != 1 {
        return Err(Failure::parse("this command takes exactly one input state"));
    }
    Ok(all.remove(0))
}

// ---------------------------------------------------------------------------
// tangle
// ---------------------------------------------------------------------------

struct Measures {
    kind: &'static str,
    values: BTreeMap<&'static str, Value>,
    residuals: Vec<(&'static str, f64, f64)>,
}

fn measures_for(data: &StateData, fast: bool) -> Result<Measures, Failure> {
    let mut values: BTreeMap<&'static str, Value> = BTreeMap::new();
    let mut residuals = Vec::new();
    let kind;
    match data {
        StateData::Pure(psi) => {
            kind = "pure";
            match (psi.field(), psi.n_factors()) {
                (Field::Complex, 2) => {
                    if fast {
                        let tau = qubit::pure_tangle_2q_fast(psi)
                            .map_err(|e| Failure::invalid(e.to_string()))?;
                        values.insert("tau_pure", number(tau));
                    } else {
                        let routes = qubit::pure_tangle_routes(psi)
                            .map_err(|e| Failure::invalid(e.to_string()))?;
                        values.insert("tau_pure", number(routes.component_formula));
                        residuals.push(("tau_route_agreement", routes.spread(), qubit::ROUTE_TOL));
                    }
                }
                (Field::Real, 2) => {
                    let sigma =
                        rebit::pure_tangle_2r(psi).map_err(|e| Failure::invalid(e.to_string()))?;
                    values.insert("sigma_pure", number(sigma));
                }
                (field, 3) => {
                    let d = qubit::d_terms(psi).map_err(|e| Failure::invalid(e.to_string()))?;
                    if field == Field::Real {
                        let sigma = rebit::rebit_three_tangle_pure(psi)
                            .map_err(|e| Failure::invalid(e.to_string()))?;
                        values.insert("sigma_abc", number(sigma));
                        values.insert("d1", number(d.d1.re));
                        values.insert("d2", number(d.d2.re));
                        values.insert("d3", number(d.d3.re));
                        for (key, hinge) in [
                            ("sigma_a_rest", 0usize),
                            ("sigma_b_rest", 1),
                            ("sigma_c_rest", 2),
                        ] {
                            let v = rebit::rebit_bipartite(psi, hinge)
                                .map_err(|e| Failure::invalid(e.to_string()))?;
                            values.insert(key, number(v));
                        }
                        for (key, i, j) in [
                            ("sigma_ab", 0usize, 1usize),
                            ("sigma_ac", 0, 2),
                            ("sigma_bc", 1, 2),
                        ] {
                            let v = rebit::pair_sigma(psi, i, j)
                                .map_err(|e| Failure::invalid(e.to_string()))?;
                            values.insert(key, number(v));
                        }
                    } else {
                        let tau = qubit::three_tangle(psi)
                            .map_err(|e| Failure::invalid(e.to_string()))?;
                        values.insert("tau_abc", number(tau));
                        values.insert("d1", json!([d.d1.re, d.d1.im]));
                        values.insert("d2", json!([d.d2.re, d.d2.im]));
                        values.insert("d3", json!([d.d3.re, d.d3.im]));
                        for (key, hinge) in
                            [("tau_a_rest", 0usize), ("tau_b_rest", 1), ("tau_c_rest", 2)]
                        {
                            let v = qubit::bipartite_tangle_pure(psi, hinge)
                                .map_err(|e| Failure::invalid(e.to_string()))?;
                            values.insert(key, number(v));
                        }
                    }
                }
                (_, n) => {
                    return Err(Failure::parse(format!(
                        "no tangle measures for a pure state on {n} factor(s)"
                    )));
                }
            }
        }
        StateData::Mixed(rho) => {
            kind = "mixed";
            match (rho.field(), rho.n_factors()) {
                (Field::Complex, 2) => {
                    let tau =
                        qubit::mixed_tangle_2q(rho).map_err(|e| Failure::invalid(e.to_string()))?;
                    values.insert("tau_mixed", number(tau));
                }
                (Field::Real, 2) => {
                    let sigma =
                        rebit::mixed_tangle_2r(rho).map_err(|e| Failure::invalid(e.to_string()))?;
                    values.insert("sigma_mixed", number(sigma));
                }
                (_, n) => {
                    return Err(Failure::parse(format!(
                        "no closed-form mixed measure on {n} factor(s); use `tangle roof`"
                    )));
                }
            }
        }
    }
    Ok(Measures {
        kind,
        values,
        residuals,
    })
}

const TANGLE_CSV_COLUMNS: [&str; 19] = [
    "input",
    "kind",
    "field",
    "n_factors",
    "tau_pure",
    "sigma_pure",
    "tau_mixed",
    "sigma_mixed",
    "tau_abc",
    "sigma_abc",
    "d1",
    "d2",
    "d3",
    "sigma_a_rest",
    "sigma_b_rest",
    "sigma_c_rest",
    "sigma_ab",
    "sigma_ac",
    "sigma_bc",
];

fn cmd_tangle(args: TangleArgs) -> Result<(String, i32), Failure> {
    let inputs = gather_inputs(&args.inputs, &args.catalogs, &args.files, args.field)?;
    let mut rep = Report::new("tangle", args.seed);
    rep.config = json!({"fast": args.fast});
    let mut csv = CsvTable::new(TANGLE_CSV_COLUMNS.to_vec());

    for (label, data) in &inputs {
        rep.inputs.push(label.clone());
        let m = measures_for(data, args.fast)?;
        let mut obj = serde_json::Map::new();
        obj.insert("kind".into(), json!(m.kind));
        obj.insert("field".into(), json!(data.field().to_string()));
        obj.insert("n_factors".into(), json!(data.n_factors()));
        let mut cells: Vec<(&'static str, String)> = vec![
            ("input", label.clone()),
            ("kind", m.kind.to_string()),
            ("field", data.field().to_string()),
            ("n_factors", data.n_factors().to_string()),
        ];
        for (key, value) in &m.values {
            obj.insert((*key).into(), value.clone());
            if let Some(x) = value.as_f64() {
                cells.push((key, f64_cell(x)));
            }
        }
        rep.result(label, Value::Object(obj));
        for (name, value, tol) in m.residuals {
            rep.residual(&format!("{label}.{name}"), value, tol);
        }
        csv.row(cells);
    }

    let text = match args.format {
        Format::Json => rep.to_json(),
        Format::Csv => csv.render(),
    };
    Ok((text, 0))
}

// ---------------------------------------------------------------------------
// embed
// ---------------------------------------------------------------------------

fn cmd_embed(args: EmbedArgs) -> Result<(String, i32), Failure> {
    let (label, data) = gather_single(&args.input, &args.catalog, &args.file, args.field)?;
    if data.field() != Field::Complex {
        return Err(Failure::parse(
            "embed expects a complex-tagged two-qubit input (pass --field complex to lift a real state)",
        ));
    }
    if data.n_factors() != 2 {
        return Err(Failure::parse("embed expects a two-factor input"));
    }

    let mut rep = Report::new("embed", args.seed);
    rep.inputs.push(label.clone());
    rep.config = json!({});
    let mut csv = CsvTable::new(vec![
        "input",
        "tau_ab",
        "sigma_ab",
        "sigma_uab",
        "sigma_a_ub",
        "sigma_a_u",
        "sigma_b_ua",
        "sigma_b_u",
    ]);

    match &data {
        StateData::Pure(psi) => {
            let embedding =
                ubit::embed(&psi.to_density()).map_err(|e| Failure::invalid(e.to_string()))?;
            let relations =
                ubit::relation_report(psi).map_err(|e| Failure::invalid(e.to_string()))?;
            rep.result("rho_uab", serde_json::to_value(&embedding.rho_uab).unwrap());
            rep.result(
                "relations",
                json!({
                    "tau_ab": relations.tau_ab,
                    "sigma_ab": relations.sigma_ab,
                    "sigma_uab": relations.sigma_uab,
                    "sigma_a_ub": relations.sigma_a_ub,
                    "sigma_a_u": relations.sigma_a_u,
                    "sigma_b_ua": relations.sigma_b_ua,
                    "sigma_b_u": relations.sigma_b_u,
                }),
            );
            rep.residual("tau_route_agreement", relations.residual_tau_routes, 1e-10);
            rep.residual(
                "tau_equals_sigma_ab_plus_sigma_uab",
                relations.residual_sum_form,
                1e-10,
            );
            rep.residual("hinge_form_a", relations.residual_hinge_a, 1e-10);
            rep.residual("hinge_form_b", relations.residual_hinge_b, 1e-10);
            csv.row(vec![
                ("input", label.clone()),
                ("tau_ab", f64_cell(relations.tau_ab)),
                ("sigma_ab", f64_cell(relations.sigma_ab)),
                ("sigma_uab", f64_cell(relations.sigma_uab)),
                ("sigma_a_ub", f64_cell(relations.sigma_a_ub)),
                ("sigma_a_u", f64_cell(relations.sigma_a_u)),
                ("sigma_b_ua", f64_cell(relations.sigma_b_ua)),
                ("sigma_b_u", f64_cell(relations.sigma_b_u)),
            ]);
        }
        StateData::Mixed(rho) => {
            let embedding = ubit::embed(rho).map_err(|e| Failure::invalid(e.to_string()))?;
            rep.result("rho_uab", serde_json::to_value(&embedding.rho_uab).unwrap());
            csv.row(vec![("input", label.clone())]);
        }
    }

    let text = match args.format {
        Format::Json => rep.to_json(),
        Format::Csv => csv.render(),
    };
    Ok((text, 0))
}

// ---------------------------------------------------------------------------
// roof
// ---------------------------------------------------------------------------

fn cmd_roof(args: RoofArgs) -> Result<(String, i32), Failure> {
    let (label, data) = gather_single(&args.input, &args.catalog, &args.file, args.field)?;
    let rho = match data {
        StateData::Pure(psi) => psi.to_density(),
        StateData::Mixed(rho) => rho,
    };
    let cfg = RoofConfig {
        m: args.m,
        restarts: args.restarts,
        seed: args.seed,
        tol: args.tol,
        max_iters: args.max_iters,
        exec: if args.serial {
            Exec::Serial
        } else {
            Exec::Parallel
        },
    };

    let objective_name = match args.objective {
        Objective::Tangle => "tangle",
        Objective::ThreeTangle => "three_tangle",
        Objective::JointTau => "joint_tau",
    };
    let (result, reference): (RoofResult, Option<f64>) = match args.objective {
        Objective::Tangle => {
            if rho.n_factors() != 2 {
                return Err(Failure::parse(
                    "objective `tangle` needs a two-factor density",
                ));
            }
            match rho.field() {
                Field::Real => {
                    let obj = |s: &StateVector| {
                        rebit::pure_tangle_2r(s).expect("objective on real two-rebit states")
                    };
                    let result = roof_minimize(&rho, obj, &cfg)
                        .map_err(|e| Failure::invalid(e.to_string()))?;
                    let reference = rebit::mixed_tangle_2r(&rho)
                        .map_err(|e| Failure::invalid(e.to_string()))?;
                    (result, Some(reference))
                }
                Field::Complex => {
                    let obj = |s: &StateVector| {
                        qubit::pure_tangle_2q_fast(s).expect("objective on two-qubit states")
                    };
                    let result = roof_minimize(&rho, obj, &cfg)
                        .map_err(|e| Failure::invalid(e.to_string()))?;
                    let reference = qubit::mixed_tangle_2q(&rho)
                        .map_err(|e| Failure::invalid(e.to_string()))?;
                    (result, Some(reference))
                }
            }
        }
        Objective::ThreeTangle => {
            if rho.n_factors() != 3 {
                return Err(Failure::parse(
                    "objective `three_tangle` needs a three-factor density",
                ));
            }
            let result = match rho.field() {
                Field::Real => {
                    let obj = |s: &StateVector| {
                        rebit::rebit_three_tangle_pure(s).expect("objective on three-rebit states")
                    };
                    roof_minimize(&rho, obj, &cfg).map_err(|e| Failure::invalid(e.to_string()))?
                }
                Field::Complex => {
                    let obj = |s: &StateVector| {
                        qubit::three_tangle(s).expect("objective on three-qubit states")
                    };
                    roof_minimize(&rho, obj, &cfg).map_err(|e| Failure::invalid(e.to_string()))?
                }
            };
            (result, None)
        }
        Objective::JointTau => {
            if rho.field() != Field::Complex || rho.n_factors() != 2 {
                return Err(Failure::parse(
                    "objective `joint_tau` needs a complex two-factor density",
                ));
            }
            let result =
                ubit::joint_roof_tangle(&rho, &cfg).map_err(|e| Failure::invalid(e.to_string()))?;
            let reference =
                qubit::mixed_tangle_2q(&rho).map_err(|e| Failure::invalid(e.to_string()))?;
            (result, Some(reference))
        }
    };

    let mut rep = Report::new("roof", args.seed);
    rep.inputs.push(label.clone());
    rep.config = serde_json::to_value(&cfg).unwrap();
    rep.result("objective", json!(objective_name));
    rep.result("value", number(result.value));
    rep.result("converged", json!(result.converged));
    rep.result("restarts_used", json!(result.restarts_used));
    rep.result("decomposition", serde_json::to_value(&result.best).unwrap());
    rep.residual("reconstruction", result.residual, 1e-10);
    if let Some(reference) = reference {
        rep.result("formula_value", number(reference));
        rep.residual("vs_formula", (result.value - reference).abs(), 1e-6);
    }

    let text = match args.format {
        Format::Json => rep.to_json(),
        Format::Csv => {
            let mut csv = CsvTable::new(vec![
                "input",
                "objective",
                "value",
                "converged",
                "restarts",
                "reconstruction",
                "formula_value",
            ]);
            let mut cells = vec![
                ("input", label),
                ("objective", objective_name.to_string()),
                ("value", f64_cell(result.value)),
                ("converged", result.converged.to_string()),
                ("restarts", result.restarts_used.to_string()),
                ("reconstruction", f64_cell(result.residual)),
            ];
            if let Some(reference) = reference {
                cells.push(("formula_value", f64_cell(reference)));
            }
            csv.row(cells);
            csv.render()
        }
    };
    Ok((text, 0))
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

fn cmd_check(args: CheckArgs) -> Result<(String, i32), Failure> {
    let exec = if args.serial {
        Exec::Serial
    } else {
        Exec::Parallel
    };
    let reports = if args.suite == "all" {
        verify::run_all(args.n, args.n_roof, args.seed, exec)
    } else {
        let suite = Suite::from_name(&args.suite).ok_or_else(|| {
            Failure::parse(format!(
                "unknown suite `{}`; expected identity, monogamy, hyperdet, relation, roof-oracle or all",
                args.suite
            ))
        })?;
        vec![suite.run(args.n, args.seed, exec)]
    };

    let all_pass = reports.iter().all(|r| r.pass);
    let mut rep = Report::new("check", args.seed);
    rep.inputs.push(args.suite.clone());
    rep.config = json!({"n": args.n, "n_roof": args.n_roof});
    for suite in &reports {
        rep.result(suite.suite, serde_json::to_value(suite).unwrap());
        for prop in &suite.properties {
            rep.residual(
                &format!("{}.{}", suite.suite, prop.name),
                prop.max_residual,
                prop.tol,
            );
        }
    }
    rep.result("pass", json!(all_pass));

    let text = match args.format {
        Format::Json => rep.to_json(),
        Format::Csv => {
            let mut csv = CsvTable::new(vec![
                "suite",
                "property",
                "samples",
                "failures",
                "max_residual",
                "tol",
                "pass",
            ]);
            for suite in &reports {
                for prop in &suite.properties {
                    csv.row(vec![
                        ("suite", suite.suite.to_string()),
                        ("property", prop.name.to_string()),
                        ("samples", prop.samples.to_string()),
                        ("failures", prop.failures.to_string()),
                        ("max_residual", f64_cell(prop.max_residual)),
                        ("tol", format!("{:e}", prop.tol)),
                        ("pass", prop.pass.to_string()),
                    ]);
                }
            }
            csv.render()
        }
    };
    Ok((text, if all_pass { 0 } else { EXIT_CHECK_FAILED }))
}
