use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use hprime_core::braiding::{braid_act, BraidWord};
use hprime_core::suites::{dump_element, run_suites, DumpTarget, RunConfig, Suite};
use hprime_core::text::{parse_samples, pretty_tensor};
use hprime_core::{HopfAlgebra, InstanceKind};

#[derive(Parser, Debug)]
#[command(
    name = "hprime",
    version,
    about = "Exact checks for the quantized enveloping algebra of sl2 modulo h^N"
)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Truncation order N (computations are modulo h^N).
    #[arg(long, global = true, env = "HPRIME_ORDER", default_value_t = 5)]
    order: usize,
    /// Algebra instance: uhsl2 or trivial.
    #[arg(long, global = true, default_value = "uhsl2")]
    instance: InstanceKind,
    /// Sample file in the canonical element format.
    #[arg(long, global = true)]
    samples: Option<PathBuf>,
    /// Write the JSON report to this path ("-" for standard output).
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Ambient rank n for subset checks (Σ ⊆ {1..n}).
    #[arg(long, global = true, default_value_t = 3)]
    max_rank: usize,
    /// Largest n for the E' sweep.
    #[arg(long, global = true, default_value_t = 6)]
    max_n: usize,
    /// Largest t for the binomial identities.
    #[arg(long, global = true, default_value_t = 12)]
    max_t: usize,
    /// Report wall-clock time per suite (JSON output is then not reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run suites; all of them unless --suite is given.
    Run {
        /// Suite to run (repeatable).
        #[arg(long = "suite")]
        suites: Vec<Suite>,
    },
    /// Run the named suites. Also accepts `braided`, `combinatorics` and `all`.
    Verify {
        #[arg(required = true)]
        targets: Vec<String>,
    },
    /// Apply a braid word to every sample of the input file.
    Braid {
        /// Comma-separated letters; `i` is β_i and `-i` its inverse.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Sample file; every tensor must have the same rank.
        #[arg(long)]
        input: PathBuf,
    },
    /// Print R, its inverse, or δ_n of a named H' sample.
    Dump {
        /// `R`, `Rinv` or `delta`.
        what: String,
        /// n for `delta`.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Sample name for `delta` (1, hE, hF, hH, hE*hF, hH*hE, h^2E^2, or a
        /// rank-1 name from --samples).
        #[arg(long, default_value = "hE")]
        sample: String,
    },
}

fn expand_target(name: &str) -> Result<Vec<Suite>> {
    Ok(match name {
        "all" => Suite::ALL.to_vec(),
        "braided" => vec![Suite::Braid],
        "combinatorics" => vec![Suite::Lemma33, Suite::Eprime],
        other => vec![other.parse::<Suite>().map_err(anyhow::Error::msg)?],
    })
}

fn config(opts: &GlobalOpts, suites: Vec<Suite>) -> Result<RunConfig> {
    let sample_text = match &opts.samples {
        Some(path) => Some(
            fs::read_to_string(path)
                .with_context(|| format!("reading sample file {}", path.display()))?,
        ),
        None => None,
    };
    let config = RunConfig {
        order: opts.order,
        instance: opts.instance,
        suites,
        sample_file: opts.samples.as_ref().map(|p| p.display().to_string()),
        sample_text,
        max_rank: opts.max_rank,
        max_n: opts.max_n,
        max_t: opts.max_t,
        timings: opts.timings,
    };
    config.validate()?;
    Ok(config)
}

fn write_json(target: &Option<PathBuf>, body: &str) -> Result<()> {
    match target {
        Some(p) if p.as_os_str() == "-" => println!("{body}"),
        Some(p) => {
            fs::write(p, format!("{body}\n")).with_context(|| format!("writing {}", p.display()))?
        }
        None => {}
    }
    Ok(())
}

fn run(opts: &GlobalOpts, suites: Vec<Suite>) -> Result<bool> {
    let report = run_suites(config(opts, suites)?)?;
    let to_stdout = opts.json.as_ref().is_some_and(|p| p.as_os_str() == "-");
    if !to_stdout {
        print!("{}", report.render_text());
    }
    write_json(&opts.json, &report.to_json())?;
    Ok(report.overall)
}

fn braid(opts: &GlobalOpts, word: &str, input: &PathBuf) -> Result<bool> {
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let samples = parse_samples(&text, opts.order)?;
    let Some(rank) = samples.first().map(|(_, t)| t.rank()) else {
        bail!("{} contains no samples", input.display());
    };
    if samples.iter().any(|(_, t)| t.rank() != rank) {
        bail!("all samples must have the same rank");
    }
    let word = BraidWord::parse(rank, word)?;
    let alg = HopfAlgebra::new(opts.instance, opts.order);
    let r = hprime_core::RMatrix::build(&alg)?;
    let mut results = Vec::new();
    for (name, x) in &samples {
        let y = braid_act(&r, &word, x)?;
        println!("[{name}]\n{}\n", pretty_tensor(&y));
        results.push(json!({ "sample": name, "result": y.canonical_text() }));
    }
    let body = json!({
        "word": word.to_string(),
        "order": opts.order,
        "instance": opts.instance.name(),
        "results": results,
    });
    write_json(&opts.json, &serde_json::to_string_pretty(&body)?)?;
    Ok(true)
}

fn dump(opts: &GlobalOpts, what: &str, n: usize, sample: &str) -> Result<bool> {
    let target = match what {
        "R" | "r" => DumpTarget::R,
        "Rinv" | "rinv" | "R^-1" => DumpTarget::RInverse,
        "delta" => DumpTarget::Delta {
            n,
            sample: sample.to_string(),
        },
        other => bail!("unknown dump target `{other}` (expected R, Rinv or delta)"),
    };
    println!("{}", dump_element(&config(opts, Vec::new())?, &target)?);
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run { suites } => {
            let suites = if suites.is_empty() {
                Suite::ALL.to_vec()
            } else {
                suites.clone()
            };
            run(&cli.opts, suites)
        }
        Command::Verify { targets } => targets
            .iter()
            .map(|t| expand_target(t))
            .collect::<Result<Vec<_>>>()
            .and_then(|lists| run(&cli.opts, lists.concat())),
        Command::Braid { word, input } => braid(&cli.opts, word, input),
        Command::Dump { what, n, sample } => dump(&cli.opts, what, *n, sample),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
