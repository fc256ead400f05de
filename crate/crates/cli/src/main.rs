//! `fracstab` — stability analysis, analytic responses and simulation of
//! fractional-order systems from the command line.
//!
//! Exit codes: 0 success (including UNSTABLE verdicts), 2 for input or
//! configuration errors, 3 for numeric failures. Results go to stdout;
//! stderr only ever carries warnings and summaries.

mod report;

use clap::{Args, Parser, Subcommand};
use fracstab_core::{
    analyze, analyze_characteristic, find_equilibria, general_fode_response, jacobian_at,
    min_chaos_order, ml_deriv, nonlinear_stability, parse_pseudo_polynomial,
    parse_transfer_function, parse_vector_field_file, simulate, Complex64, Error, MLParams,
    PolynomialVectorField, ResponseVariant, SeriesBudget, SimConfig, Trajectory,
};
use report::{complex_str, envelope, fnum, fstr, nonlinear_stability_json, polyline_svg, stability_report_json};
use serde_json::{json, Map, Value};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fracstab",
    version,
    about = "Fractional-order system stability, responses and simulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide stability of a characteristic polynomial or transfer function
    Analyze(AnalyzeArgs),
    /// Evaluate the analytic time response of a characteristic polynomial
    Respond(RespondArgs),
    /// Integrate a fractional-order system with the fixed-step GL scheme
    Simulate(SimulateArgs),
    /// Find equilibria of a nonlinear system and assess their stability
    Equilibria(EquilibriaArgs),
    /// Evaluate the two-parameter Mittag-Leffler function or a derivative
    Ml(MlArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Characteristic pseudo-polynomial, e.g. "0.8*s^2.2+0.5*s^0.9+1"
    #[arg(long, conflicts_with = "tf")]
    char: Option<String>,
    /// Transfer function, e.g. "(12.46*s+64.47)/(39.69*s^1.25+12.46*s+65.068)"
    #[arg(long)]
    tf: Option<String>,
}

#[derive(Args)]
struct RespondArgs {
    /// Characteristic pseudo-polynomial (response of 1/poly)
    #[arg(long)]
    char: String,
    /// Response kind: impulse, step or zero (homogeneous reading)
    #[arg(long, default_value = "impulse")]
    variant: String,
    /// Final time
    #[arg(long = "t-end")]
    t_end: f64,
    /// Number of evaluation points on (0, t_end]
    #[arg(long, default_value_t = 200)]
    points: usize,
    /// Cap on the outer series index
    #[arg(long = "max-outer")]
    max_outer: Option<usize>,
    /// Relative truncation tolerance
    #[arg(long = "rel-tol")]
    rel_tol: Option<f64>,
    /// Largest tolerated cancellation ratio
    #[arg(long = "cancellation-cap")]
    cancellation_cap: Option<f64>,
    /// Also write a minimal SVG plot to this path
    #[arg(long)]
    svg: Option<String>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Built-in system name ("chen") or "file" with a path argument
    #[arg(long)]
    system: String,
    /// Vector-field file (.fvf) when --system file is used
    file: Option<String>,
    /// Override the derivative orders, e.g. "0.9,0.9,0.9"
    #[arg(long, allow_hyphen_values = true)]
    orders: Option<String>,
    /// Initial state, e.g. "-9,-5,14"
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<String>,
    /// Step size in seconds
    #[arg(long)]
    h: f64,
    /// Final time in seconds
    #[arg(long = "t-end")]
    t_end: f64,
    /// Short-memory window in seconds (full memory when omitted)
    #[arg(long)]
    memory: Option<f64>,
    /// Also write a minimal SVG plot to this path
    #[arg(long)]
    svg: Option<String>,
}

#[derive(Args)]
struct EquilibriaArgs {
    /// Built-in system name ("chen") or "file" with a path argument
    #[arg(long)]
    system: String,
    /// Vector-field file (.fvf) when --system file is used
    file: Option<String>,
    /// Newton seeds "x1,..,xn;x1,..,xn;..."
    #[arg(long, allow_hyphen_values = true)]
    seeds: Option<String>,
}

#[derive(Args)]
struct MlArgs {
    #[arg(long)]
    mu: f64,
    #[arg(long)]
    nu: f64,
    /// Derivative order (0 evaluates the function itself)
    #[arg(long, default_value_t = 0)]
    k: usize,
    /// Real part of the argument
    #[arg(long, allow_hyphen_values = true)]
    z: f64,
    /// Imaginary part of the argument
    #[arg(long = "z-im", default_value_t = 0.0, allow_hyphen_values = true)]
    z_im: f64,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self { code: if e.is_input_error() { 2 } else { 3 }, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Respond(args) => cmd_respond(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Equilibria(args) => cmd_equilibria(args),
        Command::Ml(args) => cmd_ml(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn print_json(value: &Value) {
    let mut stdout = std::io::stdout().lock();
    let _ = serde_json::to_writer_pretty(&mut stdout, value);
    let _ = stdout.write_all(b"\n");
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    let mut inputs = Map::new();
    let report = match (&args.char, &args.tf) {
        (Some(char_text), None) => {
            inputs.insert("char".into(), json!(char_text));
            let den = parse_pseudo_polynomial(char_text)?;
            analyze_characteristic(&den)?
        }
        (None, Some(tf_text)) => {
            inputs.insert("tf".into(), json!(tf_text));
            let tf = parse_transfer_function(tf_text)?;
            analyze(&tf)?
        }
        _ => return Err(Failure::input("exactly one of --char or --tf is required")),
    };
    print_json(&envelope("analyze", inputs, stability_report_json(&report), Vec::new()));
    Ok(())
}

fn parse_variant(text: &str) -> Result<ResponseVariant, Failure> {
    match text {
        "impulse" => Ok(ResponseVariant::Impulse),
        "step" => Ok(ResponseVariant::Step),
        "zero" => Ok(ResponseVariant::ZeroInput),
        other => Err(Failure::input(format!(
            "unknown variant {other:?}: expected impulse, step or zero"
        ))),
    }
}

fn cmd_respond(args: RespondArgs) -> Result<(), Failure> {
    if !(args.t_end > 0.0) {
        return Err(Failure::input(format!("--t-end must be positive, got {}", args.t_end)));
    }
    if args.points == 0 {
        return Err(Failure::input("--points must be at least 1"));
    }
    let variant = parse_variant(&args.variant)?;
    let den = parse_pseudo_polynomial(&args.char)?;
    let mut budget = SeriesBudget::default();
    if let Some(v) = args.max_outer {
        budget.max_outer = v;
    }
    if let Some(v) = args.rel_tol {
        budget.rel_tol = v;
    }
    if let Some(v) = args.cancellation_cap {
        budget.cancellation_cap = v;
    }
    let grid: Vec<f64> = (1..=args.points)
        .map(|i| args.t_end * i as f64 / args.points as f64)
        .collect();
    let points = general_fode_response(&den, variant, &grid, &budget)?;

    let mut out = String::from("t,y,converged\n");
    for p in &points {
        out.push_str(&format!("{},{},{}\n", fstr(p.t), fstr(p.value), p.converged));
    }
    print!("{out}");

    let unconverged = points.iter().filter(|p| !p.converged).count();
    if unconverged > 0 {
        eprintln!("warning: {unconverged} of {} points did not converge", points.len());
    }
    if let Some(path) = &args.svg {
        let values: Vec<f64> = points.iter().map(|p| p.value).collect();
        std::fs::write(path, polyline_svg(&grid, &[values]))
            .map_err(|e| Failure::input(format!("cannot write {path}: {e}")))?;
    }
    Ok(())
}

fn parse_f64_list(text: &str, what: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| Failure::input(format!("{what}: cannot parse {part:?} as a number")))
        })
        .collect()
}

fn load_system(system: &str, file: &Option<String>, orders: &Option<String>) -> Result<(PolynomialVectorField, String), Failure> {
    let (field, label) = match system {
        "chen" => (PolynomialVectorField::chen(), "chen".to_string()),
        "file" => {
            let path = file
                .as_ref()
                .ok_or_else(|| Failure::input("--system file needs a path argument"))?;
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::input(format!("cannot read {path}: {e}")))?;
            (parse_vector_field_file(&text)?, path.clone())
        }
        other => {
            return Err(Failure::input(format!(
                "unknown system {other:?}: expected \"chen\" or \"file\" with a path"
            )))
        }
    };
    let field = match orders {
        Some(list) => {
            let orders = fracstab_core::parse::parse_order_list(list)?;
            PolynomialVectorField::new(orders, field.components().to_vec())?
        }
        None => field,
    };
    Ok((field, label))
}

fn trajectory_csv(traj: &Trajectory) -> String {
    let n = traj.dim();
    let mut out = String::from("t");
    for i in 1..=n {
        out.push_str(&format!(",x{i}"));
    }
    out.push('\n');
    for (t, row) in traj.times.iter().zip(&traj.states) {
        out.push_str(&fstr(*t));
        for v in row {
            out.push(',');
            out.push_str(&fstr(*v));
        }
        out.push('\n');
    }
    if let Some(step) = traj.diverged_at {
        out.push_str(&format!(
            "# diverged at step {step} (t = {}); simulation stopped\n",
            fstr(traj.times[step])
        ));
    }
    out
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), Failure> {
    let (field, _) = load_system(&args.system, &args.file, &args.orders)?;
    let x0 = match &args.x0 {
        Some(list) => parse_f64_list(list, "--x0")?,
        None if args.system == "chen" => vec![-9.0, -5.0, 14.0],
        None => return Err(Failure::input("--x0 is required for file systems")),
    };
    let cfg = SimConfig { h: args.h, t_end: args.t_end, memory: args.memory, x0 };
    let traj = simulate(&field, &cfg)?;
    print!("{}", trajectory_csv(&traj));
    if traj.diverged_at.is_some() {
        eprintln!("warning: trajectory diverged; output truncated");
    }
    if let Some(path) = &args.svg {
        let n = traj.dim();
        let series: Vec<Vec<f64>> = (0..n)
            .map(|i| traj.states.iter().map(|row| row[i]).collect())
            .collect();
        std::fs::write(path, polyline_svg(&traj.times, &series))
            .map_err(|e| Failure::input(format!("cannot write {path}: {e}")))?;
    }
    Ok(())
}

fn cmd_equilibria(args: EquilibriaArgs) -> Result<(), Failure> {
    let (field, label) = load_system(&args.system, &args.file, &None)?;
    let seeds: Vec<Vec<f64>> = match &args.seeds {
        Some(text) => text
            .split(';')
            .map(|group| parse_f64_list(group, "--seeds"))
            .collect::<Result<_, _>>()?,
        None if args.system == "chen" => {
            vec![vec![0.0, 0.0, 0.0], vec![8.0, 8.0, 21.0], vec![-8.0, -8.0, 21.0]]
        }
        None => return Err(Failure::input("--seeds is required for file systems")),
    };

    let search = find_equilibria(&field, &seeds)?;
    let mut warnings: Vec<String> = search.diagnostics.clone();
    if search.equilibria.is_empty() {
        warnings.push("no seed converged to an equilibrium".into());
    }

    let mut entries = Vec::new();
    for eq in &search.equilibria {
        let j = jacobian_at(&field, &eq.x);
        let stability = nonlinear_stability(&j, field.orders())?;
        let mut entry = Map::new();
        entry.insert("x".into(), json!(eq.x.iter().map(|v| fnum(*v)).collect::<Vec<_>>()));
        entry.insert("residual".into(), fnum(eq.residual));
        let jac: Vec<Vec<Value>> = (0..j.nrows())
            .map(|r| (0..j.ncols()).map(|c| fnum(j[(r, c)])).collect())
            .collect();
        entry.insert("jacobian".into(), json!(jac));
        entry.insert("stability".into(), nonlinear_stability_json(&stability));
        match min_chaos_order(&j) {
            Ok(q) => {
                entry.insert("min_chaos_order".into(), fnum(q));
            }
            Err(Error::Domain(_)) => {}
            Err(e) => return Err(e.into()),
        }
        entries.push(Value::Object(entry));
    }

    let mut inputs = Map::new();
    inputs.insert("system".into(), json!(label));
    inputs.insert(
        "seeds".into(),
        json!(seeds
            .iter()
            .map(|s| s.iter().map(|v| fnum(*v)).collect::<Vec<_>>())
            .collect::<Vec<_>>()),
    );
    let result = json!({
        "orders": field.orders().iter().map(|q| q.to_string()).collect::<Vec<_>>(),
        "equilibria": entries,
    });
    print_json(&envelope("equilibria", inputs, result, warnings));
    Ok(())
}

fn cmd_ml(args: MlArgs) -> Result<(), Failure> {
    let params = MLParams::new(args.mu, args.nu)?;
    let value = ml_deriv(params, args.k, Complex64::new(args.z, args.z_im))?;
    println!("{}", complex_str(value.re, value.im));
    Ok(())
}
