use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hyperpoly::degree::{poly_map_degree, sphere_power_degree, DegreeReport};
use hyperpoly::jacobian::exact_jacobian;
use hyperpoly::parse::{parse_element, parse_polynomial};
use hyperpoly::roots::{factor_linear_chain, find_roots, RootKind};
use hyperpoly::verify::{run_suite, Suite, SuiteOptions};
use hyperpoly::{sample, AlgebraKind, Error, OrdinaryPolynomial, Side};

const SCHEMA: u32 = 1;

/// Polynomials over the quaternions and octonions.
#[derive(Debug, Parser)]
#[command(name = "hyperpoly", version)]
struct Cli {
    #[arg(long, value_enum, default_value = "H", global = true)]
    algebra: Algebra,
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Coefficient side of input polynomials.
    #[arg(long, value_enum, default_value = "left", global = true)]
    side: CoeffSide,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Primary tolerance of a verification suite.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a polynomial at a point.
    Eval { poly: String, point: String },
    /// Enumerate and classify roots.
    Roots { poly: String },
    /// Factor into a chain of linear factors.
    Factor { poly: String },
    /// Real Jacobian of the induced map at a point.
    Jacobian { poly: String, point: String },
    /// Topological degree of a polynomial or sphere power map.
    Degree {
        /// `poly:<expr>` or `power:<k>`.
        #[arg(long)]
        map: String,
        /// Sphere target radius for `power:<k>`.
        #[arg(long, default_value_t = 0.5)]
        r: f64,
        /// Target value for `poly:<expr>`; drawn at random when absent.
        #[arg(long)]
        target: Option<String>,
    },
    /// Run a property suite: thm2.2, lemma2.2, det-identity, prop3.1, lemma3.1, algebra.
    Verify { suite: String },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Algebra {
    #[value(name = "H", alias = "h")]
    H,
    #[value(name = "O", alias = "o")]
    O,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CoeffSide {
    Left,
    Right,
}

struct Output {
    command: &'static str,
    json: Value,
    text: String,
    success: bool,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidArgument(_) | Error::KindMismatch(..) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => {
                    let doc = json!({
                        "schema": SCHEMA,
                        "command": out.command,
                        "algebra": kind(&cli),
                        "result": out.json,
                    });
                    emit(&format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable")));
                }
                Format::Text => emit(&out.text),
            }
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

fn kind(cli: &Cli) -> AlgebraKind {
    match cli.algebra {
        Algebra::H => AlgebraKind::Quaternion,
        Algebra::O => AlgebraKind::Octonion,
    }
}

fn side(cli: &Cli) -> Side {
    match cli.side {
        CoeffSide::Left => Side::Left,
        CoeffSide::Right => Side::Right,
    }
}

fn read_input(src: &str) -> Result<String, Failure> {
    if src != "-" {
        return Ok(src.to_string());
    }
    let mut buf = String::new();
    std::io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
    Ok(buf.trim().to_string())
}

fn polynomial(cli: &Cli, src: &str) -> Result<OrdinaryPolynomial, Failure> {
    Ok(parse_polynomial(&read_input(src)?, kind(cli), side(cli))?)
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let k = kind(cli);
    match &cli.command {
        Command::Eval { poly, point } => {
            let f = polynomial(cli, poly)?;
            let t = parse_element(point, k)?;
            let v = f.evaluate(&t)?;
            Ok(Output {
                command: "eval",
                json: json!({ "polynomial": f, "point": t, "value": v }),
                text: format!("{v}\n"),
                success: true,
            })
        }
        Command::Roots { poly } => {
            let f = polynomial(cli, poly)?;
            let roots = find_roots(&f)?;
            let mut text = String::new();
            for r in &roots {
                let kind = match r.kind {
                    RootKind::Isolated => "isolated",
                    RootKind::Spherical => "spherical",
                };
                text += &format!(
                    "{kind:<9}  multiplicity {}  {}  residual {:.3e}\n",
                    r.multiplicity, r.value, r.residual
                );
            }
            Ok(Output {
                command: "roots",
                json: json!({ "polynomial": f, "roots": roots }),
                text,
                success: true,
            })
        }
        Command::Factor { poly } => {
            let f = polynomial(cli, poly)?;
            let chain = factor_linear_chain(&f)?;
            let err = chain.relative_error(&f);
            let mut text = format!("leading {}\n", chain.leading);
            for (i, c) in chain.factors.iter().enumerate() {
                text += &format!("c{} = {c}\n", i + 1);
            }
            text += &format!("reconvolution error {err:.3e}\n");
            Ok(Output {
                command: "factor",
                json: json!({ "polynomial": f, "chain": chain, "reconvolution_error": err }),
                text,
                success: true,
            })
        }
        Command::Jacobian { poly, point } => {
            let f = polynomial(cli, poly)?;
            let t = parse_element(point, k)?;
            let j = exact_jacobian(&f, &t)?;
            let (det, sign) = (j.det(), j.sign());
            Ok(Output {
                command: "jacobian",
                json: json!({ "polynomial": f, "point": t, "matrix": j.matrix, "determinant": det, "sign": sign }),
                text: format!("{}det {det:.6e}\nsign {}\n", j.matrix, sign.as_int()),
                success: true,
            })
        }
        Command::Degree { map, r, target } => {
            let report = degree(cli, map, *r, target.as_deref())?;
            let mut text = format!(
                "degree {}  method {}  preimages {}\n",
                report.degree,
                serde_json::to_value(report.method).expect("serializable").as_str().unwrap_or(""),
                report.preimages.len()
            );
            for p in &report.preimages {
                text += &format!("{:+}  {}  det {:.3e}\n", p.sign, p.point, p.determinant);
            }
            Ok(Output {
                command: "degree",
                json: serde_json::to_value(&report).expect("serializable"),
                text,
                success: true,
            })
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(
                suite,
                &SuiteOptions {
                    kind: k,
                    samples: cli.samples,
                    seed: cli.seed,
                    tol: cli.tol,
                },
            )?;
            let mut text = format!(
                "{}: {} ({} samples)\n",
                suite,
                if report.passed { "pass" } else { "FAIL" },
                report.samples
            );
            for (name, value) in &report.metrics {
                text += &format!("  {name} = {value:e}\n");
            }
            if let Some(c) = &report.counterexample {
                text += &format!("  counterexample: {c}\n");
            }
            Ok(Output {
                command: "verify",
                success: report.passed,
                json: serde_json::to_value(&report).expect("serializable"),
                text,
            })
        }
    }
}

fn degree(cli: &Cli, map: &str, r: f64, target: Option<&str>) -> Result<DegreeReport, Failure> {
    let k = kind(cli);
    if let Some(expr) = map.strip_prefix("poly:") {
        let f = polynomial(cli, expr)?;
        let h = target.map(|s| parse_element(s, k)).transpose()?;
        let mut rng = sample::seeded(cli.seed);
        Ok(poly_map_degree(&f, h.as_ref(), &mut rng)?)
    } else if let Some(exp) = map.strip_prefix("power:") {
        let n: i64 = exp
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("invalid exponent `{exp}` in --map")))?;
        if !(r > 0.0 && r < 1.0) {
            return Err(Failure::Usage(format!("--r must lie in (0, 1), got {r}")));
        }
        Ok(sphere_power_degree(k, n, r)?)
    } else {
        Err(Failure::Usage(format!("--map must be `poly:<expr>` or `power:<k>`, got `{map}`")))
    }
}
