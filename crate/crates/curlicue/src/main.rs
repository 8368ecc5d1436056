//! Command-line front end: every subcommand delegates to the library and
//! emits JSON (scalar results) or CSV (tables, paths).

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::fs;
use std::io::Write;
use std::time::Instant;

use curlicue::asymptotics::m_of_l;
use curlicue::bench::{bench, DEFAULT_NAIVE_CAP};
use curlicue::curve::export_curlicue;
use curlicue::dynamics::{ba_orbit, birkhoff_average, counting_norms, gauss_entropy_constant,
                         tilde_invariance_check, Phi};
use curlicue::renorm::{build_trace, naive_sum, renorm_sum};
use curlicue::report::RunReport;
use curlicue::special::{cal_f, cal_g};
use curlicue::{Error, Params, PrecisionConfig, Result};

#[derive(Parser)]
#[command(
    name = "curlicue",
    version,
    about = "Quadratic exponential sums via exact renormalization, with the dynamics behind their growth",
    after_help = "Examples:\n  curlicue sum --n 100000 --a 0.7052301 --b 0.31 --method both\n  curlicue trace --n 100000 --a 0.7052301 --b 0.31 --out cascade.csv\n  curlicue special-fn --xi 0.3 --a 0.05\n  curlicue growth --a 0.618033988 --b 0.0 --lmax 8\n  curlicue dynamics norms --phi '(l+2)^-1/6' --depth 1000 --samples 20000\n  curlicue dynamics invariance --samples 100000\n  curlicue dynamics ba-orbit --a 0.5877852 --m 3 --n 2\n  curlicue curlicue --n 100000 --a 0.01594 --b 0.0 --out path.csv\n  curlicue bench --ns 10000,1000000,100000000 --a 0.7052301 --b 0.31"
)]
struct Cli {
    /// RNG seed for stochastic commands (recorded in the report).
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Quadrature tolerance.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Mantissa bits for phase accumulation (53..=106).
    #[arg(long, global = true, default_value_t = 106)]
    bits: u32,
    /// Output file (default: stdout).
    #[arg(long, global = true)]
    out: Option<String>,
    /// Output format for tabular commands.
    #[arg(long, global = true, default_value = "csv")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct SumArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate S(N, a, b).
    Sum {
        #[command(flatten)]
        args: SumArgs,
        #[arg(long, default_value = "renorm")]
        method: MethodArg,
    },
    /// Full renormalization cascade table.
    Trace {
        #[command(flatten)]
        args: SumArgs,
    },
    /// The special function calF (and calG) at one point.
    #[command(name = "special-fn")]
    SpecialFn {
        #[arg(long)]
        xi: f64,
        #[arg(long)]
        a: f64,
    },
    /// Per-level growth envelope M(L, a, b) with the key sqrt|b_L| + a_L^(1/4).
    Growth {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long, default_value_t = 8)]
        lmax: usize,
        #[arg(long, default_value_t = 512)]
        scan_budget: usize,
    },
    /// Monte Carlo statistics of the base/fibre dynamics.
    Dynamics {
        #[command(subcommand)]
        which: DynamicsCommand,
    },
    /// Export the partial-sum path as CSV.
    Curlicue {
        #[command(flatten)]
        args: SumArgs,
        /// Append cascade depth and final-level size per point.
        #[arg(long)]
        annotate: bool,
    },
    /// Wall-time comparison of the two evaluators.
    Bench {
        /// Comma-separated list of N values.
        #[arg(long, value_delimiter = ',')]
        ns: Vec<u64>,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, clap::ValueEnum)]
enum MethodArg {
    Naive,
    Renorm,
    Both,
}

#[derive(Subcommand)]
enum DynamicsCommand {
    /// Counting-function norms under the invariant measure.
    Norms {
        /// Threshold spec, e.g. '(l+2)^-1/6' or 'const:0.3'.
        #[arg(long)]
        phi: String,
        /// Largest depth (checkpoints at depth/10, depth too).
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 10000)]
        samples: u64,
    },
    /// Invariant-measure and transfer-operator checks for the interval map.
    Invariance {
        #[arg(long, default_value_t = 100000)]
        samples: u64,
    },
    /// Exact-integer fibre orbit of b = {(m a + n)/2}_0.
    #[command(name = "ba-orbit")]
    BaOrbit {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 400)]
        jmax: usize,
    },
    /// Birkhoff averages estimating the entropy-like constant.
    Birkhoff {
        #[arg(long, default_value_t = 200)]
        depth: usize,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
    },
}

struct Output {
    target: Option<String>,
}

impl Output {
    fn write(&self, text: &str) -> Result<()> {
        match &self.target {
            Some(path) => {
                let mut f = fs::File::create(path)?;
                f.write_all(text.as_bytes())?;
                Ok(())
            }
            None => {
                print!("{text}");
                std::io::stdout().flush()?;
                Ok(())
            }
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let cfg = PrecisionConfig { working_bits: cli.bits, quad_tolerance: cli.tol };
    cfg.validate()?;
    let out = Output { target: cli.out.clone() };
    let config_json = json!({"tol": cli.tol, "bits": cli.bits});
    match cli.command {
        Command::Sum { args, method } => {
            let p = Params::new(args.a, args.b)?;
            let mut outputs = json!({"n": args.n, "a": args.a, "b": args.b});
            let o = outputs.as_object_mut().unwrap();
            if method != MethodArg::Naive {
                let t = Instant::now();
                let v = renorm_sum(args.n, p, &cfg)?;
                let tr = build_trace(args.n, p, &cfg)?;
                o.insert("renorm".into(), json!({
                    "value": [v.re, v.im],
                    "depth": tr.depth,
                    "err_bound": tr.err_bound,
                    "wall_ns": t.elapsed().as_nanos() as u64,
                }));
            }
            if method != MethodArg::Renorm {
                let t = Instant::now();
                let v = naive_sum(args.n, p, &cfg)?;
                o.insert("naive".into(), json!({
                    "value": [v.re, v.im],
                    "wall_ns": t.elapsed().as_nanos() as u64,
                }));
            }
            if method == MethodArg::Both {
                let r = o["renorm"]["value"].clone();
                let nva = o["naive"]["value"].clone();
                let d = ((r[0].as_f64().unwrap() - nva[0].as_f64().unwrap()).powi(2)
                    + (r[1].as_f64().unwrap() - nva[1].as_f64().unwrap()).powi(2))
                .sqrt();
                o.insert("residual".into(), json!(d));
            }
            let report = RunReport::new("sum", None, config_json, outputs);
            out.write(&(report.emit()? + "\n"))
        }
        Command::Trace { args } => {
            let p = Params::new(args.a, args.b)?;
            let tr = build_trace(args.n, p, &cfg)?;
            match cli.format {
                Format::Csv => {
                    let mut text = String::from("l,a_l,b_l,n_l,xi_l,theta_l,parity,term_re,term_im\n");
                    for (s, t) in tr.steps.iter().zip(&tr.terms) {
                        text.push_str(&format!(
                            "{},{:.17e},{:.17e},{},{:.17e},{:.17e},{:?},{:.17e},{:.17e}\n",
                            s.l, s.a_l, s.b_l, s.n_l, s.xi_l, s.theta_l.0, s.conj_parity, t.re, t.im
                        ));
                    }
                    out.write(&text)
                }
                Format::Json => {
                    let outputs = json!({
                        "n": args.n,
                        "depth": tr.depth,
                        "value": [tr.value.re, tr.value.im],
                        "err_bound": tr.err_bound,
                        "steps": tr.steps,
                    });
                    let report = RunReport::new("trace", None, config_json, outputs);
                    out.write(&(report.emit()? + "\n"))
                }
            }
        }
        Command::SpecialFn { xi, a } => {
            let f = cal_f(xi, a, &cfg)?;
            let g = cal_g(xi, a, &cfg)?;
            let outputs = json!({
                "xi": xi, "a": a,
                "calF": {"value": [f.value.re, f.value.im], "err_estimate": f.err_estimate},
                "calG": {"value": [g.value.re, g.value.im], "err_estimate": g.err_estimate},
            });
            let report = RunReport::new("special-fn", None, config_json, outputs);
            out.write(&(report.emit()? + "\n"))
        }
        Command::Growth { a, b, lmax, scan_budget } => {
            let p = Params::new(a, b)?;
            let mut rows = Vec::new();
            for l in 1..=lmax {
                match m_of_l(l, p, &cfg, scan_budget) {
                    Ok(g) => rows.push(g),
                    Err(Error::Overflow(_)) => break,
                    Err(e) => return Err(e),
                }
            }
            match cli.format {
                Format::Csv => {
                    let mut text =
                        String::from("L,M,key,bound_upper,bound_lower,a_L,b_L,exhaustive\n");
                    for g in &rows {
                        text.push_str(&format!(
                            "{},{:.12e},{:.12e},{:.12e},{},{:.12e},{:.12e},{}\n",
                            g.l,
                            g.m,
                            g.key,
                            g.bound_upper,
                            g.bound_lower.map_or(String::from(""), |v| format!("{v:.12e}")),
                            g.a_l,
                            g.b_l,
                            g.exhaustive
                        ));
                    }
                    out.write(&text)
                }
                Format::Json => {
                    let report =
                        RunReport::new("growth", None, config_json, serde_json::to_value(&rows)
                            .map_err(std::io::Error::other)?);
                    out.write(&(report.emit()? + "\n"))
                }
            }
        }
        Command::Dynamics { which } => match which {
            DynamicsCommand::Norms { phi, depth, samples } => {
                let phi = Phi::parse(&phi)?;
                let checkpoints = [depth / 10, depth];
                let stats = counting_norms(&phi, &checkpoints, samples, cli.seed)?;
                let report = RunReport::new(
                    "dynamics norms",
                    Some(cli.seed),
                    config_json,
                    serde_json::to_value(&stats).map_err(std::io::Error::other)?,
                );
                out.write(&(report.emit()? + "\n"))
            }
            DynamicsCommand::Invariance { samples } => {
                let rep = tilde_invariance_check(samples, cli.seed)?;
                let report = RunReport::new(
                    "dynamics invariance",
                    Some(cli.seed),
                    config_json,
                    serde_json::to_value(&rep).map_err(std::io::Error::other)?,
                );
                out.write(&(report.emit()? + "\n"))
            }
            DynamicsCommand::BaOrbit { a, m, n, jmax } => {
                let rep = ba_orbit(a, m, n, jmax)?;
                let outputs = json!({
                    "m": rep.m, "n": rep.n,
                    "j0": rep.j0,
                    "stabilized": rep.stabilized,
                    "transitions_ok": rep.transitions_ok,
                    "max_float_dev": rep.max_float_dev,
                    "steps": rep.steps.iter().take(80).collect::<Vec<_>>(),
                });
                let report = RunReport::new("dynamics ba-orbit", None, config_json, outputs);
                out.write(&(report.emit()? + "\n"))
            }
            DynamicsCommand::Birkhoff { depth, samples } => {
                let est = birkhoff_average(depth, samples, cli.seed)?;
                let a_quad = gauss_entropy_constant(1e-10)?;
                let outputs = json!({
                    "quadrature_constant": a_quad,
                    "estimate": est,
                });
                let report =
                    RunReport::new("dynamics birkhoff", Some(cli.seed), config_json, outputs);
                out.write(&(report.emit()? + "\n"))
            }
        },
        Command::Curlicue { args, annotate } => {
            let p = Params::new(args.a, args.b)?;
            let mut buf = Vec::new();
            export_curlicue(&mut buf, args.n, p, &cfg, annotate)?;
            out.write(std::str::from_utf8(&buf).expect("csv is utf8"))
        }
        Command::Bench { ns, a, b, reps } => {
            let p = Params::new(a, b)?;
            let records = bench(&ns, p, &cfg, reps, DEFAULT_NAIVE_CAP)?;
            match cli.format {
                Format::Csv => {
                    let mut text = String::from("n,method,wall_ns,value_re,value_im,residual\n");
                    for r in &records {
                        text.push_str(&format!(
                            "{},{:?},{},{:.17e},{:.17e},{}\n",
                            r.n,
                            r.method,
                            r.wall_ns,
                            r.value_re,
                            r.value_im,
                            r.residual.map_or(String::new(), |x| format!("{x:.6e}"))
                        ));
                    }
                    out.write(&text)
                }
                Format::Json => {
                    let report = RunReport::new(
                        "bench",
                        None,
                        config_json,
                        serde_json::to_value(&records).map_err(std::io::Error::other)?,
                    );
                    out.write(&(report.emit()? + "\n"))
                }
            }
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
