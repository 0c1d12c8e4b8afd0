use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gegenbad::cap::{
    bilyk_dai_floor, coefficient_table, default_n_max, generate_pointset, monte_carlo_discrepancy, read_pointset,
    spectral_discrepancy, CapSpec, DiscrepancyReport, PointKind, PointSet,
};
use gegenbad::certifier::{certify, classify_quadratic};
use gegenbad::gegenbauer::{gegenbauer_eval_scaled, scale_by_envelope, GegenbauerIter};
use gegenbad::stats::loglog_slope;
use gegenbad::{Error, OrderParam};

mod literal;
mod report;

use literal::{parse_angle, parse_real, RealLiteral};
use report::{write_csv, Rendered, RunReport};

#[derive(Parser)]
#[command(name = "gegenbad", version, about = "Gegenbauer sequences, gegenbadly approximable numbers and cap discrepancy")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate C_n^λ(x) and C_n^λ(x) / n^{λ-1}.
    Eval {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        lambda: String,
        /// Decimal or cos(pi*p/q).
        #[arg(long, conflicts_with = "angle", required_unless_present = "angle", allow_hyphen_values = true)]
        x: Option<String>,
        /// x = cos(πp/q), given as p/q.
        #[arg(long)]
        angle: Option<String>,
    },
    /// Decide whether cos(πp/q) is gegenbadly approximable of order λ.
    Certify {
        p: i64,
        q: i64,
        lambda: String,
        /// Scan at least this many terms.
        #[arg(long)]
        n_max: Option<u64>,
    },
    /// |C_n^{3/2}(x)| / √n at x = 1/2 and x = 1/3.
    Figure1 {
        #[arg(long, default_value_t = 500)]
        n_max: u64,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Squared single-radius cap discrepancy of a point set.
    Discrepancy(DiscrepancyArgs),
    /// Discrepancy against the number of points, with a log-log slope.
    Scaling(ScalingArgs),
    /// Classify x from x² = a/b.
    Classify { numerator: i64, denominator: i64 },
    /// Gegenbauer coefficients of a cap indicator.
    Coefficients {
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        height: Height,
        #[arg(long, default_value_t = 100)]
        n_max: u64,
    },
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Height {
    /// Cap height as a decimal.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Cap height as cos(pi*p/q).
    #[arg(long)]
    t_height: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Spectral,
    Mc,
    Floor,
}

#[derive(Args)]
struct DiscrepancyArgs {
    /// Point-set file: a header `d N`, then N rows of d+1 coordinates.
    points: Option<PathBuf>,
    /// Generate KIND (random, fibonacci, equispaced) with N points.
    #[arg(long, num_args = 2, value_names = ["KIND", "N"], conflicts_with = "points")]
    generate: Option<Vec<String>>,
    #[arg(long)]
    d: usize,
    #[command(flatten)]
    height: Height,
    #[arg(long, value_enum, default_value_t = Method::Spectral)]
    method: Method,
    #[arg(long)]
    n_max: Option<u64>,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    /// Point count for the floor method when no point set is given.
    #[arg(long)]
    n_points: Option<u64>,
    /// Warn when d ≡ 1 (mod 4).
    #[arg(long)]
    assert_theorem3: bool,
}

#[derive(Args)]
struct ScalingArgs {
    #[arg(long)]
    d: usize,
    #[command(flatten)]
    height: Height,
    #[arg(long, value_enum, default_value_t = Method::Floor)]
    method: Method,
    #[arg(long, value_delimiter = ',', default_value = "100,1000,10000,100000,1000000")]
    n_list: Vec<u64>,
    /// Point sets for the spectral and mc methods.
    #[arg(long, default_value = "random")]
    kind: String,
    #[arg(long)]
    n_max: Option<u64>,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
}

enum Failure {
    Usage(String),
    Io(String),
    Numerical(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
            Failure::Numerical(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Io(m) | Failure::Numerical(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::MagnitudeOutOfRange
            | Error::AsymptoticRegimeNotReached(_)
            | Error::NoThreshold
            | Error::NotBracketed { .. }
            | Error::PrecisionExhausted { .. } => Failure::Numerical(e.to_string()),
            Error::InvalidPointSet(_) => Failure::Io(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn order(s: &str) -> Result<OrderParam, Failure> {
    s.parse::<OrderParam>().map_err(Failure::from)
}

type Inputs = BTreeMap<String, Value>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut inputs = Inputs::new();
    let name = command_name(&cli.command);
    let result = run(&cli.command, &mut inputs);
    let rendered = match result {
        Ok(r) => r,
        Err(f) => {
            eprintln!("error: {}", f.message());
            return ExitCode::from(f.code());
        }
    };
    let report = RunReport {
        command: name.to_string(),
        inputs,
        outputs: rendered.json,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    let out_path = match &cli.command {
        Command::Figure1 { out, .. } => out.clone(),
        _ => None,
    };
    match emit(&report, &rendered.csv, cli.format, out_path) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Eval { .. } => "eval",
        Command::Certify { .. } => "certify",
        Command::Figure1 { .. } => "figure1",
        Command::Discrepancy(_) => "discrepancy",
        Command::Scaling(_) => "scaling",
        Command::Classify { .. } => "classify",
        Command::Coefficients { .. } => "coefficients",
    }
}

fn emit(report: &RunReport, csv: &[Vec<String>], format: Format, out: Option<PathBuf>) -> Result<(), Failure> {
    let io_err = |e: io::Error| Failure::Io(e.to_string());
    let sink: Box<dyn Write> = match &out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let mut sink = sink;
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut sink, report).map_err(|e| Failure::Io(e.to_string()))?;
            writeln!(sink).map_err(io_err)?;
        }
        Format::Csv => write_csv(csv, &mut sink).map_err(io_err)?,
    }
    sink.flush().map_err(io_err)
}

fn run(command: &Command, inputs: &mut Inputs) -> Result<Rendered, Failure> {
    match command {
        Command::Eval { n, lambda, x, angle } => cmd_eval(*n, lambda, x.as_deref(), angle.as_deref(), inputs),
        Command::Certify { p, q, lambda, n_max } => cmd_certify(*p, *q, lambda, *n_max, inputs),
        Command::Figure1 { n_max, .. } => cmd_figure1(*n_max, inputs),
        Command::Discrepancy(a) => cmd_discrepancy(a, inputs),
        Command::Scaling(a) => cmd_scaling(a, inputs),
        Command::Classify { numerator, denominator } => cmd_classify(*numerator, *denominator, inputs),
        Command::Coefficients { d, height, n_max } => cmd_coefficients(*d, height, *n_max, inputs),
    }
}

fn cmd_eval(n: u64, lambda: &str, x: Option<&str>, angle: Option<&str>, inputs: &mut Inputs) -> Result<Rendered, Failure> {
    let lam = order(lambda)?;
    let lit = match (x, angle) {
        (Some(x), _) => parse_real(x).map_err(usage)?,
        (None, Some(a)) => {
            let angle = parse_angle(a).map_err(usage)?;
            RealLiteral {
                value: angle.x(),
                angle: Some(angle),
            }
        }
        (None, None) => return Err(usage("one of --x or --angle is required")),
    };
    inputs.insert("n".into(), json!(n));
    inputs.insert("lambda".into(), json!(lam.to_string()));
    inputs.insert("x".into(), json!(x.map(str::to_string).unwrap_or_else(|| format!("cos(pi*{})", angle.unwrap()))));
    let c = gegenbauer_eval_scaled(n, &lam, lit.value);
    let value = c.try_to_f64().ok_or(Error::MagnitudeOutOfRange)?;
    let scaled = scale_by_envelope(n, lam.value(), c);
    Ok(Rendered::record(json!({
        "n": n,
        "lambda": lam.value(),
        "x": lit.value,
        "value": value,
        "scaled": scaled,
    })))
}

fn cmd_certify(p: i64, q: i64, lambda: &str, n_max: Option<u64>, inputs: &mut Inputs) -> Result<Rendered, Failure> {
    let angle = gegenbad::diophantine::RationalAngle::new(p, q)?;
    let lam = order(lambda)?;
    inputs.insert("p".into(), json!(p));
    inputs.insert("q".into(), json!(q));
    inputs.insert("lambda".into(), json!(lam.to_string()));
    inputs.insert("n_max".into(), json!(n_max));
    let cert = certify(&angle, &lam, n_max);
    let json = serde_json::to_value(&cert).expect("certificate serialises");
    let mut rendered = Rendered::record(json.clone());
    let set = |rendered: &mut Rendered, column: &str, text: String| {
        let col = rendered.csv[0].iter().position(|h| h == column).expect("certificate column");
        rendered.csv[1][col] = text;
    };
    set(&mut rendered, "angle", angle.to_string());
    set(&mut rendered, "lambda", lam.to_string());
    set(&mut rendered, "verdict", verdict_text(&json["verdict"]));
    Ok(rendered)
}

/// `kind` or `kind(field=value,...)`.
fn verdict_text(v: &Value) -> String {
    let kind = v["kind"].as_str().unwrap_or_default();
    let fields: Vec<String> = v
        .as_object()
        .into_iter()
        .flatten()
        .filter(|(k, _)| k.as_str() != "kind")
        .map(|(k, x)| format!("{k}={}", report::cell(x)))
        .collect();
    if fields.is_empty() {
        kind.to_string()
    } else {
        format!("{kind}({})", fields.join(","))
    }
}

fn cmd_figure1(n_max: u64, inputs: &mut Inputs) -> Result<Rendered, Failure> {
    if n_max == 0 {
        return Err(usage("--n-max must be at least 1"));
    }
    inputs.insert("n_max".into(), json!(n_max));
    let lam = OrderParam::from_ratio(3, 2)?;
    let column = |x: f64| -> Vec<f64> {
        GegenbauerIter::new(&lam, x)
            .skip(1)
            .take(n_max as usize)
            .map(|(n, c)| scale_by_envelope(n, lam.value(), c).abs())
            .collect()
    };
    let half = column(0.5);
    let third = column(1.0 / 3.0);
    let mut csv = vec![vec!["n".to_string(), "scaled_half".into(), "scaled_third".into()]];
    let mut rows = Vec::with_capacity(n_max as usize);
    for (k, (h, t)) in half.iter().zip(&third).enumerate() {
        let n = k as u64 + 1;
        csv.push(vec![n.to_string(), h.to_string(), t.to_string()]);
        rows.push(json!({"n": n, "scaled_half": h, "scaled_third": t}));
    }
    Ok(Rendered {
        json: json!({ "rows": rows }),
        csv,
    })
}

fn height(h: &Height, inputs: &mut Inputs) -> Result<f64, Failure> {
    let (raw, lit) = match (&h.t, &h.t_height) {
        (Some(t), _) => (t, parse_real(t).map_err(usage)?),
        (None, Some(t)) => {
            let lit = parse_real(t).map_err(usage)?;
            if lit.angle.is_none() {
                return Err(usage(format!("--t-height expects cos(pi*p/q), got '{t}'")));
            }
            (t, lit)
        }
        (None, None) => return Err(usage("one of --t or --t-height is required")),
    };
    inputs.insert("t".into(), json!(raw));
    Ok(lit.value)
}

fn load_points(a: &DiscrepancyArgs, inputs: &mut Inputs) -> Result<Option<PointSet>, Failure> {
    if let Some(path) = &a.points {
        inputs.insert("points".into(), json!(path.display().to_string()));
        let f = File::open(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        return Ok(Some(read_pointset(BufReader::new(f))?));
    }
    if let Some(g) = &a.generate {
        let kind: PointKind = g[0].parse()?;
        let n: usize = g[1]
            .parse()
            .map_err(|_| usage(format!("--generate expects a point count, got '{}'", g[1])))?;
        inputs.insert("generate".into(), json!({"kind": g[0], "n": n, "seed": a.seed}));
        return Ok(Some(generate_pointset(kind, n, a.d, a.seed)?));
    }
    Ok(None)
}

fn report_json(r: &DiscrepancyReport) -> Value {
    serde_json::to_value(r).expect("report serialises")
}

fn report_record(r: &DiscrepancyReport) -> Rendered {
    let json = report_json(r);
    let method = match r.method {
        gegenbad::cap::Method::Spectral { .. } => "spectral",
        gegenbad::cap::Method::MonteCarlo { .. } => "mc",
        gegenbad::cap::Method::Floor { .. } => "floor",
    };
    let csv = vec![
        ["method", "value", "stderr", "truncation_tail", "d", "t", "n_points"]
            .map(String::from)
            .to_vec(),
        vec![
            method.to_string(),
            r.value.to_string(),
            r.stderr.map(|v| v.to_string()).unwrap_or_default(),
            r.truncation_tail.map(|v| v.to_string()).unwrap_or_default(),
            r.cap.d.to_string(),
            r.cap.t.to_string(),
            r.n_points.to_string(),
        ],
    ];
    Rendered { json, csv }
}

fn cmd_discrepancy(a: &DiscrepancyArgs, inputs: &mut Inputs) -> Result<Rendered, Failure> {
    let t = height(&a.height, inputs)?;
    let cap = CapSpec::new(a.d, t)?;
    inputs.insert("d".into(), json!(a.d));
    if a.assert_theorem3 && cap.outside_coefficient_bound() {
        eprintln!("warning: d = {} is outside Theorem 3 hypotheses (d ≡ 1 mod 4)", a.d);
    }
    let points = load_points(a, inputs)?;
    let report = match a.method {
        Method::Floor => {
            let n = match (&points, a.n_points) {
                (_, Some(n)) => n,
                (Some(z), None) => z.len() as u64,
                (None, None) => return Err(usage("the floor method needs --n-points or a point set")),
            };
            inputs.insert("method".into(), json!("floor"));
            inputs.insert("n_points".into(), json!(n));
            inputs.insert("kappa".into(), json!(a.kappa));
            bilyk_dai_floor(&cap, n, a.kappa)?
        }
        Method::Spectral => {
            let z = points.ok_or_else(|| usage("a point file or --generate is required"))?;
            let n_max = a.n_max.unwrap_or_else(|| default_n_max(z.len(), a.d));
            inputs.insert("method".into(), json!("spectral"));
            inputs.insert("n_max".into(), json!(n_max));
            spectral_discrepancy(&z, &cap, n_max)?
        }
        Method::Mc => {
            let z = points.ok_or_else(|| usage("a point file or --generate is required"))?;
            inputs.insert("method".into(), json!("mc"));
            inputs.insert("samples".into(), json!(a.samples));
            inputs.insert("seed".into(), json!(a.seed));
            monte_carlo_discrepancy(&z, &cap, a.samples, a.seed)?
        }
    };
    Ok(report_record(&report))
}

fn cmd_scaling(a: &ScalingArgs, inputs: &mut Inputs) -> Result<Rendered, Failure> {
    let t = height(&a.height, inputs)?;
    let cap = CapSpec::new(a.d, t)?;
    if a.n_list.len() < 2 {
        return Err(usage("--n-list needs at least two sizes"));
    }
    let kind: PointKind = a.kind.parse()?;
    inputs.insert("d".into(), json!(a.d));
    inputs.insert("n_list".into(), json!(a.n_list));
    let method = match a.method {
        Method::Floor => "floor",
        Method::Spectral => "spectral",
        Method::Mc => "mc",
    };
    inputs.insert("method".into(), json!(method));
    if a.method != Method::Floor {
        inputs.insert("kind".into(), json!(a.kind));
        inputs.insert("seed".into(), json!(a.seed));
    }
    let mut reports = Vec::with_capacity(a.n_list.len());
    for &n in &a.n_list {
        let r = match a.method {
            Method::Floor => bilyk_dai_floor(&cap, n, a.kappa)?,
            Method::Spectral => {
                let z = generate_pointset(kind, n as usize, a.d, a.seed)?;
                spectral_discrepancy(&z, &cap, a.n_max.unwrap_or_else(|| default_n_max(n as usize, a.d)))?
            }
            Method::Mc => {
                let z = generate_pointset(kind, n as usize, a.d, a.seed)?;
                monte_carlo_discrepancy(&z, &cap, a.samples, a.seed)?
            }
        };
        reports.push(r);
    }
    let xs: Vec<f64> = a.n_list.iter().map(|&n| n as f64).collect();
    let ys: Vec<f64> = reports.iter().map(|r| r.value).collect();
    if ys.iter().any(|&y| !(y > 0.0)) {
        return Err(Failure::Numerical("a discrepancy value is zero; no log-log slope".into()));
    }
    let slope = loglog_slope(&xs, &ys);
    let mut csv = vec![["n", "value", "stderr", "slope"].map(String::from).to_vec()];
    for r in &reports {
        csv.push(vec![
            r.n_points.to_string(),
            r.value.to_string(),
            r.stderr.map(|v| v.to_string()).unwrap_or_default(),
            slope.to_string(),
        ]);
    }
    Ok(Rendered {
        json: json!({
            "slope": slope,
            "rows": reports.iter().map(report_json).collect::<Vec<_>>(),
        }),
        csv,
    })
}

fn cmd_classify(num: i64, den: i64, inputs: &mut Inputs) -> Result<Rendered, Failure> {
    inputs.insert("numerator".into(), json!(num));
    inputs.insert("denominator".into(), json!(den));
    let c = classify_quadratic(num, den)?;
    let json = serde_json::to_value(&c).expect("classification serialises");
    let pick = |k: &str| report::cell(&json[k]);
    let (angle, lambda, verdict) = match &c {
        gegenbad::certifier::Classification::InVaronaSet { angle, lambda, certificate, .. } => (
            angle.to_string(),
            lambda.to_string(),
            verdict_text(&serde_json::to_value(&certificate.verdict).expect("verdict serialises")),
        ),
        gegenbad::certifier::Classification::Obstructed { angle, .. } => (angle.to_string(), String::new(), String::new()),
        _ => Default::default(),
    };
    let csv = vec![
        ["kind", "x_squared", "angle", "lambda", "verdict"].map(String::from).to_vec(),
        vec![pick("kind"), format!("{num}/{den}"), angle, lambda, verdict],
    ];
    Ok(Rendered { json, csv })
}

fn cmd_coefficients(d: usize, h: &Height, n_max: u64, inputs: &mut Inputs) -> Result<Rendered, Failure> {
    let t = height(h, inputs)?;
    let cap = CapSpec::new(d, t)?;
    if n_max == 0 {
        return Err(usage("--n-max must be at least 1"));
    }
    inputs.insert("d".into(), json!(d));
    inputs.insert("n_max".into(), json!(n_max));
    let table = coefficient_table(&cap, n_max);
    let power = (d as f64 + 1.0) / 2.0;
    let mut csv = vec![["n", "fhat", "scaled"].map(String::from).to_vec()];
    for &(n, f) in &table.entries {
        csv.push(vec![n.to_string(), f.to_string(), (f.abs() * (n as f64).powf(power)).to_string()]);
    }
    Ok(Rendered {
        json: serde_json::to_value(&table).expect("table serialises"),
        csv,
    })
}
