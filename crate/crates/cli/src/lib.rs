//! Command line front end.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a failing suite, 2 for
//! unreadable or malformed input, 3 when a mathematical precondition fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use clifford_prym::exactfield::{Gf, GfField, UniPoly};
use clifford_prym::fibration::format::{parse_curve, parse_fibration, serialize_curve, serialize_fibration};
use clifford_prym::fibration::{demo_fibration, transversal_curve, ConicFibration, ParamCurve};
use clifford_prym::prymcomb::{
    build_context, chern_char, parity_rule_check, phi_lift, rep_lift_consistency, torsor_check, CurveContext,
    DegreeAccount, ModuleFiberData, MAX_ENUMERATED_POINTS,
};
use clifford_prym::spectral::{pushforward, ramification_kernel_dims, LineBundleOnCover, SpectralCover};
use clifford_prym::verify::run_all;
use clifford_prym::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub const SCHEMA: u64 = 1;
const CURVE_ATTEMPTS: usize = 500;
const DEFAULT_FIELD: (u64, usize) = (13, 1);

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Discriminant,
    Intersect,
    Lift,
    Parity,
    Spectral,
    Verify,
    Demo,
}

#[derive(Subcommand, Debug, Clone)]
enum CommandArg {
    /// Discriminant curve of a fibration.
    Discriminant,
    /// Intersection of the discriminant with a line or conic.
    Intersect,
    /// Module data, its lift to the double cover and the kernel-line check.
    Lift,
    /// Half parity and torsor checks on the fibres of e and e + 2.
    Parity,
    /// Higgs field of a line bundle on t^2 = s.
    Spectral,
    /// Every self-check suite.
    Verify,
    /// A random fibration with entry degrees [[1,1,2],[1,1,2],[2,2,3]] and smooth discriminant.
    Demo,
}

#[derive(Parser, Debug, Clone)]
#[command(name = "clifford-prym", version, about = "Even Clifford algebras of conic fibrations over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    command: CommandArg,
    /// Fibration file.
    #[arg(long = "in", global = true)]
    input: Option<PathBuf>,
    /// Output file; standard output if absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Field as `p` or `p,m`.
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Degree of the random curve when `--curve` is absent.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    d: u8,
    #[arg(long, global = true, allow_hyphen_values = true)]
    e: Option<i64>,
    /// Curve file.
    #[arg(long, global = true)]
    curve: Option<PathBuf>,
    /// Points of lambda as a string of 0 and 1, one per intersection point.
    #[arg(long, global = true)]
    lambda: Option<String>,
    /// Branch polynomial coefficients, constant term first, comma separated.
    #[arg(long, global = true, allow_hyphen_values = true)]
    s: Option<String>,
    /// `trivial`, `ramification:C0,C1,...` or `pullback:C0,C1,...`.
    #[arg(long, global = true, default_value = "trivial")]
    lb: String,
}

/// Everything a run depends on.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub input_path: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub field: Option<(u64, usize)>,
    pub seed: u64,
    pub d: usize,
    pub e: Option<i64>,
    pub curve_path: Option<PathBuf>,
    pub lambda: Option<String>,
    pub s: Option<String>,
    pub lb: String,
}

/// Failure of a run, sorted by exit code.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Math(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Math(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Math(e) => write!(f, "{}: {e}", e.name()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Math(e)
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Output of a successful run: the text to write and whether every check
/// in it passed.
#[derive(Debug)]
pub struct RunOutput {
    pub text: String,
    pub pass: bool,
}

impl Cli {
    pub fn config(&self) -> CliResult<RunConfig> {
        let command = match self.command {
            CommandArg::Discriminant => Command::Discriminant,
            CommandArg::Intersect => Command::Intersect,
            CommandArg::Lift => Command::Lift,
            CommandArg::Parity => Command::Parity,
            CommandArg::Spectral => Command::Spectral,
            CommandArg::Verify => Command::Verify,
            CommandArg::Demo => Command::Demo,
        };
        Ok(RunConfig {
            command,
            input_path: self.input.clone(),
            output_path: self.out.clone(),
            field: self.field.as_deref().map(parse_field_spec).transpose()?,
            seed: self.seed,
            d: usize::from(self.d),
            e: self.e,
            curve_path: self.curve.clone(),
            lambda: self.lambda.clone(),
            s: self.s.clone(),
            lb: self.lb.clone(),
        })
    }
}

/// Parses `p` or `p,m`.
pub fn parse_field_spec(text: &str) -> CliResult<(u64, usize)> {
    let bad = || CliError::Input(format!("--field expects 'p' or 'p,m', found '{text}'"));
    let mut parts = text.split(',').map(str::trim);
    let p = parts.next().and_then(|p| p.parse().ok()).ok_or_else(bad)?;
    let m = match parts.next() {
        Some(m) => m.parse().map_err(|_| bad())?,
        None => 1,
    };
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok((p, m))
}

fn field_of(config: &RunConfig) -> CliResult<&'static GfField> {
    let (p, m) = config.field.unwrap_or(DEFAULT_FIELD);
    Ok(GfField::canonical(p, m)?)
}

fn read(path: &PathBuf) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_fibration(config: &RunConfig) -> CliResult<ConicFibration> {
    let path = config.input_path.as_ref().ok_or_else(|| CliError::Input("--in FILE is required".into()))?;
    let fib = parse_fibration(&read(path)?)?;
    if let Some((p, m)) = config.field {
        let f = fib.field();
        if (f.p(), f.degree()) != (p, m) {
            return Err(CliError::Input(format!(
                "--field {p},{m} does not match the field {},{} of {}",
                f.p(),
                f.degree(),
                path.display()
            )));
        }
    }
    Ok(fib)
}

/// The curve from `--curve`, or a random transversal curve of degree `--d`.
fn load_curve(config: &RunConfig, fib: &ConicFibration, rng: &mut ChaCha8Rng) -> CliResult<ParamCurve> {
    match &config.curve_path {
        Some(path) => Ok(parse_curve(&read(path)?, fib.field())?),
        None => Ok(transversal_curve(fib, config.d, rng, CURVE_ATTEMPTS)?.0),
    }
}

fn context(config: &RunConfig) -> CliResult<Arc<CurveContext>> {
    let fib = load_fibration(config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let curve = load_curve(config, &fib, &mut rng)?;
    Ok(build_context(&fib, &curve, 0)?)
}

fn parse_coeffs(field: &'static GfField, text: &str, flag: &str) -> CliResult<UniPoly<Gf>> {
    let coeffs = text
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .map(|v| field.from_i64(v))
                .map_err(|_| CliError::Input(format!("{flag}: '{c}' is not an integer")))
        })
        .collect::<CliResult<Vec<Gf>>>()?;
    Ok(UniPoly::new(coeffs, field.zero()))
}

fn parse_lambda(text: &str, n: usize) -> CliResult<Vec<bool>> {
    if text.len() != n {
        return Err(CliError::Input(format!("--lambda has {} digits, expected one per point ({n})", text.len())));
    }
    text.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(CliError::Input(format!("--lambda: '{c}' is not 0 or 1"))),
        })
        .collect()
}

fn report(command: &str, body: Value) -> Value {
    let mut v = body;
    let obj = v.as_object_mut().expect("reports are objects");
    obj.insert("schema".into(), json!(SCHEMA));
    obj.insert("command".into(), json!(command));
    v
}

fn discriminant(config: &RunConfig) -> CliResult<RunOutput> {
    let fib = load_fibration(config)?;
    let disc = fib.discriminant();
    let body = json!({
        "fibration": fib.to_json(),
        "discriminant": disc.to_json(),
        "degree": disc.degree(),
        "expected_degree": fib.discriminant_degree(),
        "smooth": disc.is_smooth(),
    });
    Ok(RunOutput {
        text: pretty(&report("discriminant", body)),
        pass: true,
    })
}

fn intersect(config: &RunConfig) -> CliResult<RunOutput> {
    let fib = load_fibration(config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let curve = load_curve(config, &fib, &mut rng)?;
    let inter = fib.intersect(&curve)?;
    let body = json!({
        "curve": curve.to_json(),
        "curve_text": serialize_curve(&curve),
        "intersection": inter.to_json(),
        "count": inter.total_multiplicity(),
        "transversal": inter.transversal(),
    });
    Ok(RunOutput {
        text: pretty(&report("intersect", body)),
        pass: true,
    })
}

fn lift(config: &RunConfig) -> CliResult<RunOutput> {
    let ctx = context(config)?;
    let n = ctx.n();
    let lambda = match &config.lambda {
        Some(text) => parse_lambda(text, n)?,
        None => vec![false; n],
    };
    let weight = lambda.iter().filter(|&&b| b).count() as i64;
    let e = config.e.unwrap_or(ctx.base_e + weight);
    let diff = e - ctx.base_e - weight;
    if diff.rem_euclid(2) != 0 {
        return Err(CliError::Input(format!("--e {e} and a lambda of weight {weight} have different parity")));
    }
    let m = ModuleFiberData::new(&ctx, &lambda, diff / 2)?;
    let consistency = rep_lift_consistency(&m)?;
    let account = DegreeAccount::of(&m);
    let body = json!({
        "context": ctx.to_json(),
        "module": m.to_json(),
        "lift": phi_lift(&m).to_json(),
        "chern_character": chern_char(&m),
        "degree_account": {
            "degree": account.degree(),
            "ch2": account.ch2().to_string(),
        },
        "consistency": consistency.to_json(),
        "pass": consistency.pass,
    });
    Ok(RunOutput {
        text: pretty(&report("lift", body)),
        pass: consistency.pass,
    })
}

fn parity(config: &RunConfig) -> CliResult<RunOutput> {
    let ctx = context(config)?;
    let e = config.e.unwrap_or(ctx.base_e);
    let rule = parity_rule_check(&ctx, e..=e + 2)?;
    let (torsor, torsor_pass) = if ctx.n() <= MAX_ENUMERATED_POINTS {
        let t = torsor_check(&ctx, e)?;
        let pass = t.pass();
        (serde_json::to_value(&t).expect("serializable"), pass)
    } else {
        (Value::Null, true)
    };
    let pass = rule.pass && torsor_pass;
    let body = json!({
        "n": ctx.n(),
        "e": e,
        "parity": rule.to_json(),
        "torsor": torsor,
        "pass": pass,
    });
    Ok(RunOutput {
        text: pretty(&report("parity", body)),
        pass,
    })
}

fn spectral(config: &RunConfig) -> CliResult<RunOutput> {
    let field = field_of(config)?;
    let s_text = config.s.as_deref().ok_or_else(|| CliError::Input("--s C0,C1,... is required".into()))?;
    let cover = SpectralCover::new(parse_coeffs(field, s_text, "--s")?)?;
    let lb = match config.lb.split_once(':') {
        None if config.lb == "trivial" => LineBundleOnCover::trivial(&field.zero()),
        Some(("ramification", c)) => LineBundleOnCover::ramification(&cover, &parse_coeffs(field, c, "--lb")?)?,
        Some(("pullback", c)) => LineBundleOnCover::pullback(&parse_coeffs(field, c, "--lb")?)?,
        _ => {
            return Err(CliError::Input(format!(
                "--lb expects trivial, ramification:C0,... or pullback:C0,..., found '{}'",
                config.lb
            )))
        }
    };
    let higgs = pushforward(&cover, &lb)?;
    let dims = ramification_kernel_dims(&higgs, &cover)?;
    let mut body = higgs.to_json(&cover);
    let pass = body["pass"].as_bool().unwrap_or(false) && dims.iter().all(|&d| d == 1);
    body["ramification_kernel_dims"] = json!(dims);
    body["pass"] = json!(pass);
    Ok(RunOutput {
        text: pretty(&report("spectral", body)),
        pass,
    })
}

fn verify(config: &RunConfig) -> CliResult<RunOutput> {
    let rep = run_all(config.seed);
    Ok(RunOutput {
        text: pretty(&report("verify", rep.to_json())),
        pass: rep.pass(),
    })
}

fn demo(config: &RunConfig) -> CliResult<RunOutput> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let fib = demo_fibration(field_of(config)?, &mut rng)?;
    Ok(RunOutput {
        text: serialize_fibration(&fib),
        pass: true,
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Runs a command and returns its output without writing it anywhere.
pub fn run(config: &RunConfig) -> CliResult<RunOutput> {
    match config.command {
        Command::Discriminant => discriminant(config),
        Command::Intersect => intersect(config),
        Command::Lift => lift(config),
        Command::Parity => parity(config),
        Command::Spectral => spectral(config),
        Command::Verify => verify(config),
        Command::Demo => demo(config),
    }
}

/// Runs, writes the output, and reports errors on standard error.
pub fn execute(cli: Cli) -> ExitCode {
    let outcome = cli.config().and_then(|config| {
        let out = run(&config)?;
        match &config.output_path {
            Some(path) => std::fs::write(path, &out.text)
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?,
            None => print!("{}", out.text),
        }
        Ok(out.pass)
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
