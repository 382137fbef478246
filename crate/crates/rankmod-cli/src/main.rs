//! Command-line front end: build code files, encode and decode words,
//! compute distances, run the certification campaigns, and drive seeded
//! channel simulations.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use rankmod::channel::{simulate, ChannelSpec};
use rankmod::error::Error;
use rankmod::kendall::kendall_distance;
use rankmod::multiset::{MultiPermutation, MultiSet, Permutation};
use rankmod::systematic::{advise_parameters, SystematicCode};
use rankmod::verify::{verify_all, Suite, VerifyConfig};

#[derive(Parser)]
#[command(name = "rankmod", version, about = "Systematic permutation codes in the Kendall tau metric")]
struct Cli {
    /// Emit machine-readable line-delimited JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a (k+r, k) t-error-correcting code and print or store it.
    Build(BuildArgs),
    /// Encode an information permutation or a data integer.
    Encode(EncodeArgs),
    /// Decode a received permutation.
    Decode(DecodeArgs),
    /// Kendall tau distance between two words.
    Distance(DistanceArgs),
    /// Run the exhaustive certification campaigns.
    Verify(VerifyArgs),
    /// Monte Carlo channel simulation against a code.
    Simulate(SimulateArgs),
    /// Search the smallest feasible redundancy for given k and t.
    Advise(AdviseArgs),
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    t: u64,
    /// Write the code file here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EncodeArgs {
    /// Code file produced by `build --out`.
    #[arg(long)]
    code: PathBuf,
    /// Data integer in [0, k!), decimal.
    #[arg(long, conflicts_with = "perm")]
    data: Option<String>,
    /// Information permutation, e.g. "2,4,1,3". With neither --data nor
    /// --perm, permutations are read from stdin, one per line.
    #[arg(long)]
    perm: Option<String>,
}

#[derive(Args)]
struct DecodeArgs {
    #[arg(long)]
    code: PathBuf,
    /// Received permutation, e.g. "2,6,4,1,5,7,3". Omitted: read words
    /// from stdin, one per line.
    #[arg(long)]
    word: Option<String>,
}

#[derive(Args)]
struct DistanceArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    /// Common alphabet, e.g. "0^4+5+6"; inferred from the words if omitted.
    #[arg(long)]
    multiset: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest word length for the exhaustive sweeps.
    #[arg(long, default_value_t = 6)]
    max_n: usize,
    /// all, core, embedding, lee, codes, systematic, or sim.
    #[arg(long, default_value = "all")]
    suite: String,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    code: PathBuf,
    /// Adjacent transpositions injected per trial.
    #[arg(long)]
    errors: u64,
    #[arg(long)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct AdviseArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    t: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Infeasible { .. } | Error::NoCheckSequence { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Build(args) => build(args, cli.json),
        Command::Encode(args) => encode(args, cli.json),
        Command::Decode(args) => decode(args, cli.json),
        Command::Distance(args) => distance(args, cli.json),
        Command::Verify(args) => verify(args, cli.json),
        Command::Simulate(args) => run_simulation(args, cli.json),
        Command::Advise(args) => advise(args, cli.json),
    }
}

fn build(args: &BuildArgs, json: bool) -> Result<ExitCode, Error> {
    let code = SystematicCode::build(args.k, args.r, args.t)?;
    match &args.out {
        Some(path) => {
            code.save(path)?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "k": args.k, "r": args.r, "t": args.t,
                        "modulus": code.modulus(),
                        "out": path.display().to_string(),
                    })
                );
            } else {
                println!(
                    "built ({}, {}) code, t = {}, modulus {}, written to {}",
                    args.k + args.r,
                    args.k,
                    args.t,
                    code.modulus(),
                    path.display()
                );
            }
        }
        None => println!("{}", code.to_json()?),
    }
    Ok(ExitCode::SUCCESS)
}

fn encode(args: &EncodeArgs, json: bool) -> Result<ExitCode, Error> {
    let code = SystematicCode::load(&args.code)?;
    match (&args.data, &args.perm) {
        (Some(data), None) => {
            let d = BigUint::from_str(data).map_err(|e| Error::Parse(e.to_string()))?;
            let word = code.encode_data(&d)?;
            let sigma = rankmod::kendall::project_down(&word, code.k())?;
            encode_one(&code, &sigma, Some(d), json)
        }
        (None, Some(perm)) => encode_one(&code, &Permutation::from_str(perm)?, None, json),
        (None, None) => {
            for line in std::io::stdin().lines() {
                let line = line?;
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                encode_one(&code, &Permutation::from_str(line)?, None, json)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        _ => Err(Error::Parse(
            "at most one of --data or --perm is accepted".into(),
        )),
    }
}

fn encode_one(
    code: &SystematicCode,
    sigma: &Permutation,
    data: Option<BigUint>,
    json: bool,
) -> Result<ExitCode, Error> {
    let word = code.encode(sigma)?;
    if json {
        println!(
            "{}",
            serde_json::json!({
                "info": sigma.to_string(),
                "data": data.map(|d| d.to_string()),
                "checksum": code.checksum(sigma)?,
                "codeword": word.to_string(),
            })
        );
    } else {
        println!("{word}");
    }
    Ok(ExitCode::SUCCESS)
}

fn decode(args: &DecodeArgs, json: bool) -> Result<ExitCode, Error> {
    let code = SystematicCode::load(&args.code)?;
    match &args.word {
        Some(word) => decode_one(&code, &Permutation::from_str(word)?, json),
        None => {
            for line in std::io::stdin().lines() {
                let line = line?;
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                decode_one(&code, &Permutation::from_str(line)?, json)?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn decode_one(code: &SystematicCode, received: &Permutation, json: bool) -> Result<ExitCode, Error> {
    match code.decode(received)? {
        Some(corrected) => {
            let data = code.data_of(&corrected.info)?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "status": "corrected",
                        "info": corrected.info.to_string(),
                        "data": data.to_string(),
                        "codeword": corrected.codeword.to_string(),
                        "errors": corrected.errors,
                    })
                );
            } else {
                println!(
                    "corrected {} error(s): info {} (data {}), codeword {}",
                    corrected.errors, corrected.info, data, corrected.codeword
                );
            }
        }
        None => {
            if json {
                println!("{}", serde_json::json!({ "status": "uncorrectable" }));
            } else {
                println!("uncorrectable: more errors than the code can repair");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn distance(args: &DistanceArgs, json: bool) -> Result<ExitCode, Error> {
    let (a, b) = match &args.multiset {
        Some(ms) => {
            let ms = MultiSet::from_str(ms)?;
            (
                MultiPermutation::parse_with(&ms, &args.a)?,
                MultiPermutation::parse_with(&ms, &args.b)?,
            )
        }
        None => (
            MultiPermutation::from_str(&args.a)?,
            MultiPermutation::from_str(&args.b)?,
        ),
    };
    let d = kendall_distance(&a, &b)?;
    if json {
        println!(
            "{}",
            serde_json::json!({ "a": a.to_string(), "b": b.to_string(), "distance": d })
        );
    } else {
        println!("{d}");
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(args: &VerifyArgs, json: bool) -> Result<ExitCode, Error> {
    let suite = Suite::from_str(&args.suite)?;
    let reports = verify_all(VerifyConfig {
        max_n: args.max_n,
        suite,
    });
    let mut failures = 0;
    for report in &reports {
        if json {
            println!("{}", serde_json::to_string(report)?);
        } else {
            let status = if report.passed { "PASS" } else { "FAIL" };
            println!("{status} {} ({})", report.property, report.details);
        }
        if !report.passed {
            failures += 1;
        }
    }
    if failures > 0 {
        eprintln!("{failures} propert{} failed", if failures == 1 { "y" } else { "ies" });
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_simulation(args: &SimulateArgs, json: bool) -> Result<ExitCode, Error> {
    let code = SystematicCode::load(&args.code)?;
    let report = simulate(
        &code,
        ChannelSpec {
            error_count: args.errors,
            seed: args.seed,
        },
        args.trials,
    )?;
    if json {
        println!("{}", serde_json::to_string(&report)?);
    } else {
        println!(
            "trials {}: corrected {}, miscorrected {}, detected uncorrectable {}",
            report.trials, report.corrected, report.miscorrected, report.detected_uncorrectable
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn advise(args: &AdviseArgs, json: bool) -> Result<ExitCode, Error> {
    let (advice, _code) = advise_parameters(args.k, args.t)?;
    if json {
        println!("{}", serde_json::to_string(&advice)?);
    } else {
        println!(
            "k = {}, t = {}: smallest feasible r = {} (modulus {}, redundancy code size {})",
            advice.k, advice.t, advice.r, advice.modulus, advice.redundancy_code_size
        );
        println!(
            "epsilon = {:.4}, mu = {:.4}, asymptotic regime satisfied: {}",
            advice.epsilon,
            advice.mu,
            advice
                .regime_satisfied
                .map_or("n/a".to_string(), |b| b.to_string())
        );
    }
    Ok(ExitCode::SUCCESS)
}
