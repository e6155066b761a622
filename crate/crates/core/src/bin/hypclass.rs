use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use hypclass::areas::{area_closed, hat_area};
use hypclass::coding::{CodingFile, Mode, PrimeCoding};
use hypclass::config::{OutputFormat, RunConfig};
use hypclass::construction::{
    build, closed_form_checks, scalar_limit_sweep, verify_continuity, ConstructedCoding,
    GoldbachSpec, Lambdas,
};
use hypclass::error::{Error, Result};
use hypclass::hyperbola::{classify_number, scan_curve};
use hypclass::points::{goldbach_characterization_tol, monotonicity_report_tol};
use hypclass::regions::enumerate_regions;
use hypclass::scalar::{parse_rational, set_precision, HpFloat, Scalar};
use hypclass::sweep::goldbach_sweep;
use hypclass::BigRational;

#[derive(Parser)]
#[command(name = "hypclass", version, about = "Hyperbolic classification and essential-point experiments")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Numeric backend: exact rationals or high-precision floats.
    #[arg(long, global = true)]
    mode: Option<Mode>,
    /// Float mantissa in bits (at least 53).
    #[arg(long, global = true)]
    precision: Option<usize>,
    /// Relative tolerance for float comparisons.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    #[arg(long, global = true)]
    csv: bool,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON file with RunConfig fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Essential regions of xy = k for k0 < k < k0 + 1.
    Regions {
        #[arg(long)]
        k0: u64,
    },
    /// Areas, derivatives and deformed areas of every essential region at k.
    Areas {
        #[arg(long)]
        k0: u64,
        #[arg(long)]
        k: String,
        #[arg(long)]
        coding: Option<PathBuf>,
    },
    /// Essential points, monotonicity and the repeated-point set for alpha.
    Points {
        #[arg(long)]
        alpha: u64,
        #[arg(long)]
        coding: Option<PathBuf>,
    },
    /// Compares repeated essential points with the sieve over a range of alpha.
    GoldbachCheck {
        /// Inclusive range `a..b`.
        #[arg(long)]
        alpha_range: String,
        /// Include per-alpha wall time (makes output non-deterministic).
        #[arg(long)]
        timing: bool,
    },
    /// Builds a coding whose (A_T)'' is continuous.
    BuildG {
        #[arg(long)]
        alpha: u64,
        /// Use lambda_i = u for every free index.
        #[arg(long)]
        scalar_u: Option<String>,
        /// xi_2^2 (default 1).
        #[arg(long)]
        xi2: Option<String>,
        /// xi_{alpha/2}^2 (default drawn at random).
        #[arg(long)]
        xi_half: Option<String>,
    },
    /// Tabulates x_k0 and y_k0 of the scalar construction at u = 1 + h.
    ScalarLimit {
        #[arg(long)]
        alpha: u64,
        /// Comma-separated offsets h, e.g. 1e-1,1e-2,1e-3.
        #[arg(long, value_delimiter = ',', default_value = "1e-1,1e-2,1e-3,1e-4,1e-5,1e-6")]
        u: Vec<String>,
        #[arg(long)]
        xi2: Option<String>,
    },
    /// Classifies k as prime, composite or non-natural from its deformed hyperbola.
    Classify {
        #[arg(long)]
        k: String,
        #[arg(long)]
        coding: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Run(Error),
    /// Oracle disagreement with a machine-readable payload.
    Mismatch(serde_json::Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

type Out = std::result::Result<(), Failure>;

struct Ctx {
    cfg: RunConfig,
    format: Option<OutputFormat>,
    out: Option<PathBuf>,
}

impl Ctx {
    fn format(&self) -> OutputFormat {
        self.format.unwrap_or(self.cfg.output_format)
    }

    fn write(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(p) => std::fs::write(p, text)?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn emit<T: Serialize>(&self, value: &T, csv: impl FnOnce() -> String) -> Result<()> {
        match self.format() {
            OutputFormat::Json => self.write(&(serde_json::to_string_pretty(value)? + "\n")),
            OutputFormat::Csv => self.write(&csv()),
        }
    }

    fn load_coding<S: Scalar>(&self, path: &Option<PathBuf>, default_n: usize) -> Result<PrimeCoding<S>> {
        match path {
            Some(p) => CodingFile::load(p)?.to_coding(),
            None => PrimeCoding::<BigRational>::default_strict(default_n).convert(),
        }
    }
}

fn configure(g: &Global) -> std::result::Result<Ctx, Failure> {
    let mut cfg = match &g.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    }
    .with_env()
    .map_err(|e| Failure::Usage(e.to_string()))?;
    if let Some(m) = g.mode {
        cfg.mode = m;
    }
    if let Some(p) = g.precision {
        cfg.precision_bits = p;
    }
    if let Some(t) = g.tol {
        cfg.tolerance_rel = t;
    }
    if let Some(s) = g.seed {
        cfg.seed = s;
    }
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    set_precision(cfg.precision_bits);
    let format = if g.csv {
        Some(OutputFormat::Csv)
    } else if g.json {
        Some(OutputFormat::Json)
    } else {
        None
    };
    Ok(Ctx {
        cfg,
        format,
        out: g.out.clone(),
    })
}

fn rational_arg(s: &Option<String>, default: i64) -> Result<BigRational> {
    match s {
        Some(s) => parse_rational(s),
        None => Ok(BigRational::from_integer(default.into())),
    }
}

fn regions(ctx: &Ctx, k0: u64) -> Out {
    let set = enumerate_regions(k0)?;
    ctx.emit(&set, || {
        let mut s = String::from("n,n_prime,type\n");
        for r in set.iter() {
            s += &format!("{},{},{}\n", r.index.n, r.index.n_prime, r.kind);
        }
        s
    })?;
    Ok(())
}

fn areas(ctx: &Ctx, k0: u64, k: &str, coding: &Option<PathBuf>) -> Out {
    let kv = HpFloat::parse(k)?;
    if kv < HpFloat::from_i64(k0 as i64) || kv > HpFloat::from_i64(k0 as i64 + 1) {
        return Err(Failure::Usage(format!("k = {k} outside [{k0}, {}]", k0 + 1)));
    }
    let c: Option<PrimeCoding<HpFloat>> = match coding {
        Some(p) => Some(CodingFile::load(p)?.to_coding()?),
        None => None,
    };
    #[derive(Serialize)]
    struct Row {
        n: u64,
        n_prime: u64,
        #[serde(rename = "type")]
        kind: String,
        area: String,
        d1: String,
        d2: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        hat_area: Option<String>,
    }
    let mut rows = Vec::new();
    let mut total = HpFloat::zero();
    let mut hat_total = HpFloat::zero();
    for r in enumerate_regions(k0)?.iter() {
        let (n, m) = (r.index.n, r.index.n_prime);
        let a = area_closed(r.kind, n, m, &kv)?;
        total = total + a.area.clone();
        let hat = match &c {
            Some(c) => {
                let h = hat_area(c, r.kind, n, m, &kv)?;
                hat_total = hat_total + h.clone();
                Some(h.to_text())
            }
            None => None,
        };
        rows.push(Row {
            n,
            n_prime: m,
            kind: r.kind.to_string(),
            area: a.area.to_text(),
            d1: a.d1.to_text(),
            d2: a.d2.to_text(),
            hat_area: hat,
        });
    }
    let value = json!({
        "k0": k0,
        "k": kv.to_text(),
        "regions": rows,
        "total_area": total.to_text(),
        "total_hat_area": c.as_ref().map(|_| hat_total.to_text()),
    });
    ctx.emit(&value, || {
        let mut s = String::from("n,n_prime,type,area,d1,d2,hat_area\n");
        for r in &rows {
            s += &format!(
                "{},{},{},{},{},{},{}\n",
                r.n,
                r.n_prime,
                r.kind,
                r.area,
                r.d1,
                r.d2,
                r.hat_area.clone().unwrap_or_default()
            );
        }
        s
    })?;
    Ok(())
}

fn points_with<S: Scalar>(ctx: &Ctx, alpha: u64, coding: &Option<PathBuf>) -> Out {
    let c: PrimeCoding<S> = ctx.load_coding(coding, alpha as usize)?;
    let tol = ctx.cfg.tolerance_rel;
    let report = monotonicity_report_tol(&c, alpha, tol)?;
    let repeated = goldbach_characterization_tol(&c, alpha, tol)?;
    let value = json!({
        "alpha": alpha,
        "mode": ctx.cfg.mode,
        "points": report.points,
        "comparisons": report.entries,
        "k0_list": repeated,
        "sieve_agreement": true,
    });
    ctx.emit(&value, || {
        let mut s = String::from("k0,x_k0,y_k0\n");
        for p in &report.points {
            s += &format!("{},{},{}\n", p.k0, p.x.to_text(), p.y.to_text());
        }
        s
    })?;
    Ok(())
}

fn parse_range(s: &str) -> std::result::Result<(u64, u64), Failure> {
    let bad = || Failure::Usage(format!("alpha range {s:?} is not of the form a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (u64, u64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn goldbach_check(ctx: &Ctx, range: &str, timing: bool) -> Out {
    let (a, b) = parse_range(range)?;
    let recs = goldbach_sweep(
        a..=b,
        ctx.cfg.mode,
        ctx.cfg.precision_bits,
        ctx.cfg.tolerance_rel,
        timing,
    )?;
    ctx.emit(&recs, || {
        let mut s = String::from("alpha,characterized,sieve,outside_window,agreement\n");
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
        for r in &recs {
            s += &format!(
                "{},{},{},{},{}\n",
                r.alpha,
                join(&r.characterized_partitions),
                join(&r.sieve_partitions),
                join(&r.outside_window),
                r.agreement
            );
        }
        s
    })?;
    let bad: Vec<_> = recs.iter().filter(|r| !r.agreement).collect();
    if !bad.is_empty() {
        return Err(Failure::Mismatch(json!({
            "error": "sieve_mismatch",
            "records": bad,
        })));
    }
    Ok(())
}

fn build_g(ctx: &Ctx, alpha: u64, scalar_u: &Option<String>, xi2: &Option<String>, xi_half: &Option<String>) -> Out {
    let spec = GoldbachSpec {
        alpha,
        xi2_sq: rational_arg(xi2, 1)?,
        xi_half_sq: xi_half.as_deref().map(parse_rational).transpose()?,
        lambdas: match scalar_u {
            Some(u) => Lambdas::Scalar(parse_rational(u)?),
            None => Lambdas::Random,
        },
        seed: ctx.cfg.seed,
    };
    let g: ConstructedCoding<HpFloat> = build(&spec)?;
    let continuity = verify_continuity(&g.coding, alpha, ctx.cfg.tolerance_rel)?;
    let closed = closed_form_checks(&g);
    let file = g.to_file();
    let value = json!({
        "slopes": file.slopes,
        "mode": file.mode,
        "alpha": alpha,
        "seed": spec.seed,
        "precision_bits": ctx.cfg.precision_bits,
        "construction": g,
        "continuity": continuity,
        "closed_forms": closed,
    });
    ctx.emit(&value, || {
        let mut s = String::from("index,slope,square,provenance\n");
        for (i, (sl, p)) in g.coding.slopes().iter().zip(&g.provenance).enumerate() {
            s += &format!(
                "{i},{},{},{}\n",
                sl.to_text(),
                g.squares[i].to_text(),
                serde_json::to_value(p).unwrap_or_default().as_str().unwrap_or_default()
            );
        }
        s
    })?;
    Ok(())
}

fn scalar_limit(ctx: &Ctx, alpha: u64, offsets: &[String], xi2: &Option<String>) -> Out {
    let hs = offsets
        .iter()
        .map(|s| parse_rational(s.trim()))
        .collect::<Result<Vec<_>>>()?;
    let table = scalar_limit_sweep::<HpFloat>(alpha, &hs, &rational_arg(xi2, 1)?)?;
    let csv = || {
        let mut s = String::from("u,k0,x_k0,y_k0\n");
        for r in &table.rows {
            s += &format!("{},{},{:e},{:e}\n", r.u.to_text(), r.k0, r.x_k0, r.y_k0);
        }
        s
    };
    // this table is CSV unless JSON is asked for explicitly
    match ctx.format {
        Some(OutputFormat::Json) => ctx.write(&(serde_json::to_string_pretty(&table).map_err(Error::from)? + "\n"))?,
        _ => ctx.write(&csv())?,
    }
    Ok(())
}

fn classify_with<S: Scalar>(ctx: &Ctx, k: &str, coding: &Option<PathBuf>) -> Out {
    let kv = S::parse(k)?;
    let n = (kv.floor_i64().max(1) + 1) as usize;
    let c: PrimeCoding<S> = ctx.load_coding(coding, n)?;
    let class = classify_number(&c, &kv)?;
    let points = scan_curve(&c, &kv)?;
    #[derive(Serialize)]
    struct P {
        x: String,
        y: String,
        kind: hypclass::PointKind,
    }
    let pts: Vec<P> = points
        .iter()
        .map(|(p, kind)| P {
            x: p.x.to_text(),
            y: p.y.to_text(),
            kind: *kind,
        })
        .collect();
    let value = json!({"k": kv.to_text(), "class": class, "points": pts});
    ctx.emit(&value, || {
        let mut s = String::from("x,y,kind\n");
        for p in &pts {
            s += &format!(
                "{},{},{}\n",
                p.x,
                p.y,
                serde_json::to_value(p.kind).unwrap_or_default().as_str().unwrap_or_default()
            );
        }
        s
    })?;
    Ok(())
}

fn run(cli: Cli) -> Out {
    let ctx = configure(&cli.global)?;
    let rational = ctx.cfg.mode == Mode::Rational;
    match &cli.command {
        Command::Regions { k0 } => regions(&ctx, *k0),
        Command::Areas { k0, k, coding } => areas(&ctx, *k0, k, coding),
        Command::Points { alpha, coding } if rational => points_with::<BigRational>(&ctx, *alpha, coding),
        Command::Points { alpha, coding } => points_with::<HpFloat>(&ctx, *alpha, coding),
        Command::GoldbachCheck { alpha_range, timing } => goldbach_check(&ctx, alpha_range, *timing),
        Command::BuildG {
            alpha,
            scalar_u,
            xi2,
            xi_half,
        } => build_g(&ctx, *alpha, scalar_u, xi2, xi_half),
        Command::ScalarLimit { alpha, u, xi2 } => scalar_limit(&ctx, *alpha, u, xi2),
        Command::Classify { k, coding } if rational => classify_with::<BigRational>(&ctx, k, coding),
        Command::Classify { k, coding } => classify_with::<HpFloat>(&ctx, k, coding),
    }
}

fn report(value: serde_json::Value) {
    eprintln!("{}", serde_json::to_string(&value).unwrap_or_default());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            report(json!({"error": "usage", "message": e.to_string()}));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            report(json!({"error": "usage", "message": msg}));
            ExitCode::from(1)
        }
        Err(Failure::Mismatch(v)) => {
            report(v);
            ExitCode::from(2)
        }
        Err(Failure::Run(e)) => {
            report(json!({"error": e.kind(), "message": e.to_string()}));
            ExitCode::from(if e.is_violation() { 2 } else { 1 })
        }
    }
}
