use clap::{Args, Parser, Subcommand};
use kohn_core::bounds::{describe, epsilon_bound, epsilon_sequence, mu_sequence};
use kohn_core::kohn::verify_trace;
use kohn_core::localalg::{d_multiplicity_with, exponent_bound, local_multiplicity_with, radical_membership_power_with, Filtration};
use kohn_core::meta::{mp2_triangular_resolution, run_to_unit_with_cap};
use kohn_core::polyring::{jacobian_det, parse_poly, parse_poly_list};
use kohn_core::section8::example_section8;
use kohn_core::{Caps, Error, Poly, RandomSource, Trace};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

/// Effective Kohn multipliers for polynomial germs at the origin.
#[derive(Parser, Debug)]
#[command(name = "kohn", version)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Opts {
    /// Comma-separated polynomials in z1, z2, ...
    #[arg(long, global = true)]
    polys: Option<String>,
    /// JSON input: a list of polynomials, or a trace for verify-trace.
    #[arg(long = "in", global = true)]
    input: Option<PathBuf>,
    /// Where to write the main artifact (trace, report).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Overridden by the `KOHN_SEED` environment variable.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random trials for multiplicities of tuples.
    #[arg(long, global = true, default_value_t = 3)]
    trials: usize,
    #[arg(long = "degree-cap", global = true)]
    degree_cap: Option<u64>,
    #[arg(long = "pair-cap", global = true)]
    pair_cap: Option<usize>,
    /// Largest number of decimal digits materialized when comparing bounds.
    #[arg(long = "digit-cap", global = true)]
    digit_cap: Option<u64>,
    /// Print the full report rather than the summary.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiplicity of the tuple (generic linear forms fill up to n).
    Mult {
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Jacobian determinant with respect to the given variables.
    Jacobian {
        /// 1-based variable indices; defaults to the first k.
        #[arg(long, value_delimiter = ',')]
        vars: Vec<usize>,
    },
    /// Least r with target^r in the ideal, within n·mult.
    Nullstellensatz {
        #[arg(long)]
        target: String,
    },
    /// Triangular resolution of the prefix filtration of --polys along Γ.
    Resolve {
        #[arg(long)]
        gamma: String,
    },
    /// Full derivation to the unit multiplier.
    Run,
    /// ε(n, ν) with the μ and ε recursions.
    Bound {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        nu: u64,
    },
    /// Re-check every node of a serialized trace.
    VerifyTrace,
    /// Replay the worked example on the squares in three variables.
    ExampleSection8 {
        /// Also drive the example to the unit multiplier.
        #[arg(long)]
        terminate: bool,
    },
}

enum Failure {
    Core(Error),
    Input(String),
    Check(String, Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<Value, Failure>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource { .. } => 2,
        Error::Verification { .. } => 3,
        _ => 1,
    }
}

impl Opts {
    fn caps(&self) -> Caps {
        let mut caps = Caps::default();
        if let Some(d) = self.degree_cap {
            caps.degree = d;
        }
        if let Some(p) = self.pair_cap {
            caps.pairs = p;
        }
        caps
    }

    fn read_input(&self) -> Result<String, Failure> {
        let path = self.input.as_ref().ok_or_else(|| Failure::Input("--in is required".into()))?;
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }

    fn polys(&self, nvars: Option<usize>) -> Result<Vec<Poly>, Failure> {
        if let Some(s) = &self.polys {
            return Ok(parse_poly_list(s, nvars)?);
        }
        let text = self.read_input()?;
        let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("input JSON: {e}")))?;
        let items = value.as_array().ok_or_else(|| Failure::Input("input must be a JSON list".into()))?;
        let mut out = Vec::with_capacity(items.len());
        for item in items {
            let p = match item {
                Value::String(s) => parse_poly(s, nvars)?,
                other => serde_json::from_value(other.clone()).map_err(|e| Failure::Input(format!("polynomial: {e}")))?,
            };
            out.push(p);
        }
        if out.is_empty() {
            return Err(Failure::Input("no polynomials given".into()));
        }
        let n = out.iter().map(Poly::nvars).max().unwrap_or(1);
        if out.iter().any(|p| p.nvars() != n) {
            return Err(Failure::Core(Error::Dimension {
                left: n,
                right: out.iter().map(Poly::nvars).min().unwrap_or(n),
            }));
        }
        Ok(out)
    }

    fn write_out(&self, contents: &str) -> Result<(), Failure> {
        if let Some(path) = &self.out {
            std::fs::write(path, contents).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        }
        Ok(())
    }
}

fn multiplicity_value(m: kohn_core::Multiplicity) -> Value {
    match m.finite() {
        Some(v) => json!(v),
        None => json!("infinite"),
    }
}

fn execute(cli: &Cli) -> Outcome {
    let opts = &cli.opts;
    let caps = opts.caps();
    let mut rng = RandomSource::new(opts.seed);
    match &cli.command {
        Command::Mult { nvars } => {
            let fs = opts.polys(*nvars)?;
            let n = fs[0].nvars();
            if fs.len() > n {
                return Err(Error::domain("multiplicity", format!("{} generators in {n} variables", fs.len())).into());
            }
            let m = if fs.len() == n {
                local_multiplicity_with(&fs, &caps)?
            } else {
                d_multiplicity_with(&fs, n - fs.len(), &mut rng, opts.trials, &caps)?.value
            };
            if !m.is_finite() {
                return Err(Error::domain("multiplicity", "the tuple has infinite multiplicity").into());
            }
            Ok(json!({ "multiplicity": multiplicity_value(m) }))
        }
        Command::Jacobian { vars } => {
            let fs = opts.polys(None)?;
            let vars: Vec<usize> = if vars.is_empty() {
                (0..fs.len()).collect()
            } else {
                vars.iter().map(|&v| v.wrapping_sub(1)).collect()
            };
            let j = jacobian_det(&fs, &vars)?;
            Ok(json!({ "jacobian": j.to_string() }))
        }
        Command::Nullstellensatz { target } => {
            let fs = opts.polys(None)?;
            let g = parse_poly(target, Some(fs[0].nvars()))?;
            let Some(mu) = local_multiplicity_with(&fs, &caps)?.finite() else {
                return Err(Error::domain("effective Nullstellensatz", "the ideal has infinite multiplicity").into());
            };
            let bound = exponent_bound(g.nvars(), mu);
            match radical_membership_power_with(&g, &fs, mu, &caps)? {
                Some(root) => Ok(json!({ "root_order": root.r, "bound": bound, "certificate_verifies": root.certificate.verify() })),
                None => Err(Error::domain("effective Nullstellensatz", format!("no power up to {bound} lies in the ideal")).into()),
            }
        }
        Command::Resolve { gamma } => {
            let fs = opts.polys(None)?;
            let gamma = parse_poly_list(gamma, Some(fs[0].nvars()))?;
            let res = mp2_triangular_resolution(&gamma, &Filtration::from_prefixes(&fs), &mut rng, &caps)?;
            res.validate()?;
            let full = json!({
                "h": res.h.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
                "orders": res.mu,
                "degrees": res.degrees,
                "order_bounds": res.order_bounds,
                "stage_multiplicities": res.stage_mults,
            });
            opts.write_out(&serde_json::to_string_pretty(&res).expect("serializable"))?;
            Ok(full)
        }
        Command::Run => {
            let fs = opts.polys(None)?;
            let digit_cap = opts.digit_cap.unwrap_or(kohn_core::bounds::DIGIT_CAP);
            let out = run_to_unit_with_cap(&fs, &mut rng, &caps, digit_cap)?;
            opts.write_out(&out.trace.to_json())?;
            let verdict = if out.report.bound.passed() { "pass" } else { "fail" };
            if opts.json {
                Ok(serde_json::to_value(&out.report).expect("serializable"))
            } else {
                Ok(json!({ "unit_order": out.report.unit_order, "verdict": verdict }))
            }
        }
        Command::Bound { n, nu } => {
            let eps = epsilon_bound(*n, *nu)?;
            let mut v = json!({ "n": n, "nu": nu, "epsilon": describe(&eps) });
            if opts.json {
                v["mu_sequence"] = json!(mu_sequence(*n, *nu)?.iter().map(|m| m.to_string()).collect::<Vec<_>>());
                v["epsilon_sequence"] = json!(epsilon_sequence(*n, *nu)?.iter().map(describe).collect::<Vec<_>>());
            }
            Ok(v)
        }
        Command::VerifyTrace => {
            let trace = Trace::from_json(&opts.read_input()?)?;
            let report = verify_trace(&trace);
            let value = serde_json::to_value(&report).expect("serializable");
            if report.ok {
                Ok(value)
            } else {
                Err(Failure::Check(format!("trace nodes {:?} fail", report.failures), value))
            }
        }
        Command::ExampleSection8 { terminate } => {
            let report = example_section8(opts.seed, &caps, *terminate)?;
            let value = serde_json::to_value(&report).expect("serializable");
            opts.write_out(&serde_json::to_string_pretty(&value).expect("serializable"))?;
            if report.passed {
                Ok(value)
            } else {
                let steps = report.failed_steps().join(", ");
                Err(Failure::Check(format!("worked example: step check failed: {steps}"), value))
            }
        }
    }
}

fn print(value: &Value, pretty: bool) {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    };
    println!("{}", text.expect("serializable"));
}

fn main() -> ExitCode {
    let mut cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Ok(s) = std::env::var("KOHN_SEED") {
        match s.trim().parse() {
            Ok(seed) => cli.opts.seed = seed,
            Err(_) => {
                eprintln!("error: KOHN_SEED must be an unsigned integer, got {s:?}");
                return ExitCode::from(64);
            }
        }
    }
    match execute(&cli) {
        Ok(value) => {
            print(&value, cli.opts.json);
            ExitCode::SUCCESS
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            print(&json!({ "error": e.to_string() }), false);
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Check(msg, value)) => {
            eprintln!("error: {msg}");
            print(&value, cli.opts.json);
            ExitCode::from(3)
        }
    }
}
