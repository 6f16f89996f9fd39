use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use equitiler::decider::{decide_equitable, decide_kr_factor, verify_certificate, Answer, DecideOptions, DecisionCertificate};
use equitiler::generate::{generate, Family, Params};
use equitiler::io::{self, Format};
use equitiler::partition::ConstantsConfig;
use equitiler::sweep::{sweep_connected, sweep_labeled, Mode, SweepReport};
use equitiler::{par, rational, Graph};
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "equitiler", version, about = "Equitable colorings and clique factors with checkable certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Worker threads for sweeps.
    #[arg(long, global = true, env = "EQUITILER_THREADS")]
    threads: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest order sent straight to the exact oracle.
    #[arg(long, global = true, default_value_t = 24)]
    exact_cap: usize,
    /// JSON file overriding the pipeline constants.
    #[arg(long, global = true)]
    constants: Option<PathBuf>,
    /// Graph format; inferred from the file when omitted.
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include wall-clock timings in certificates.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the graph has an equitable k-coloring.
    Decide {
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Decide whether the graph has a K_r-factor.
    Factor {
        input: PathBuf,
        #[arg(long)]
        r: usize,
    },
    /// Re-check a certificate against a graph.
    Verify { input: PathBuf, certificate: PathBuf },
    /// Generate an instance: ex1, ex2, kclique, biclique, random-ore, random-gnp.
    Gen {
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        /// Rational or decimal, e.g. 1/50 or 0.02.
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Exhaustive sweep: equivalence, agreement, kk2008, dichotomy (labeled) or clw (connected).
    Sweep {
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        mode: Mode,
    },
    /// Time a sweep sequentially and in parallel; prints CSV.
    Bench {
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value = "dichotomy")]
        mode: Mode,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn read_graph(path: &Path, format: Option<Format>) -> Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let format = format.unwrap_or_else(|| detect(path, &text));
    io::parse(&text, format).with_context(|| format!("parsing {}", path.display()))
}

fn detect(path: &Path, text: &str) -> Format {
    if path.extension().is_some_and(|e| e == "col" || e == "dimacs") {
        return Format::Dimacs;
    }
    let first = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
    if first.starts_with('p') || first.starts_with('c') {
        Format::Dimacs
    } else {
        Format::Edgelist
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{}", text.trim_end()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn options(c: &Common) -> Result<DecideOptions> {
    let constants = match &c.constants {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Some(ConstantsConfig::from_json(&text).context("constants file")?)
        }
        None => None,
    };
    Ok(DecideOptions { exact_cap: c.exact_cap, constants, seed: c.seed, timings: c.timings, ..Default::default() })
}

fn exit_for(cert: &DecisionCertificate) -> u8 {
    match cert.answer {
        Answer::Yes => 0,
        Answer::No => 1,
        Answer::Unresolved => 2,
    }
}

fn report(r: &SweepReport) -> Result<String> {
    Ok(serde_json::to_string_pretty(r)?)
}

fn sweep(mode: Mode, n_max: usize, opts: &DecideOptions, parallel: bool) -> Result<SweepReport> {
    Ok(match mode {
        Mode::Clw => sweep_connected(mode, n_max, opts, parallel)?,
        _ => sweep_labeled(mode, n_max, opts, parallel)?,
    })
}

fn run(cli: Cli) -> Result<u8> {
    let c = &cli.common;
    if let Some(t) = c.threads {
        if t == 0 {
            bail!("--threads must be positive");
        }
        par::set_threads(t);
    }
    match &cli.command {
        Command::Decide { input, k } => {
            let g = read_graph(input, c.format)?;
            let cert = decide_equitable(&g, *k, &options(c)?)?;
            emit(&c.out, &cert.to_json())?;
            Ok(exit_for(&cert))
        }
        Command::Factor { input, r } => {
            let g = read_graph(input, c.format)?;
            let cert = decide_kr_factor(&g, *r, &options(c)?)?;
            emit(&c.out, &cert.to_json())?;
            Ok(exit_for(&cert))
        }
        Command::Verify { input, certificate } => {
            let g = read_graph(input, c.format)?;
            let text = std::fs::read_to_string(certificate).with_context(|| format!("reading {}", certificate.display()))?;
            let cert = DecisionCertificate::from_json(&text).context("certificate")?;
            match verify_certificate(&g, &cert) {
                Ok(()) => {
                    emit(&c.out, "ok")?;
                    Ok(0)
                }
                Err(v) => {
                    emit(&c.out, &format!("FAIL {}: {}", v.clause, v.detail))?;
                    Ok(1)
                }
            }
        }
        Command::Gen { family, n, r, s, k, m, p, alpha } => {
            let alpha = match alpha {
                Some(a) => Some(rational::parse(a).with_context(|| format!("bad alpha {a:?}"))?),
                None => None,
            };
            let params = Params { n: *n, r: *r, s: *s, k: *k, m: *m, p: *p, alpha, seed: c.seed };
            let g = generate(*family, &params)?;
            emit(&c.out, &io::write(&g, c.format.unwrap_or(Format::Edgelist)))?;
            Ok(0)
        }
        Command::Sweep { n_max, mode } => {
            let r = sweep(*mode, *n_max, &options(c)?, true)?;
            emit(&c.out, &report(&r)?)?;
            Ok(if r.total.anomalies == 0 { 0 } else { 1 })
        }
        Command::Bench { n_max, mode } => {
            let opts = options(c)?;
            let mut csv = String::from("mode,n_max,variant,threads,instances,anomalies,wall_ms\n");
            for (variant, parallel) in [("sequential", false), ("parallel", true)] {
                let t = Instant::now();
                let r = sweep(*mode, *n_max, &opts, parallel)?;
                let threads = if parallel { par::threads() } else { 1 };
                csv.push_str(&format!(
                    "{},{n_max},{variant},{threads},{},{},{}\n",
                    format!("{mode:?}").to_lowercase(),
                    r.total.instances,
                    r.total.anomalies,
                    t.elapsed().as_millis()
                ));
            }
            emit(&c.out, &csv)?;
            Ok(0)
        }
    }
}
