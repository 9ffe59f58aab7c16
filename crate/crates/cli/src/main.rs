//! `kron`: JSON in, JSON out. Exit codes: 0 ok, 2 usage or input error,
//! 3 budget exceeded.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use kron_core::designs::{decide, Method};
use kron_core::json::{num, partition_from_json, triple_from_json, triple_to_json};
use kron_core::oracle::kronecker;
use kron_core::pointset::{
    count_p, count_t, is_simplex_like, recognize_lattice_form, recognize_pedestalled, Marginals,
};
use kron_core::reductions::{
    exceptional_candidate_check, generate_no_instances, parse_hex_bits, pipeline, shortlex, solve_3dm,
    solve_3partition, solve_4partition, solve_permutation, solve_rn3dm, solve_rnmts, verify_restricted, Epsilon,
    FourPartition, Permutation, Ratio, RestrictedKronecker, Rn3dm, Rnmts, ThreeDm, ThreePartition,
};
use kron_core::{Error, PartitionTriple};

#[derive(Parser)]
#[command(name = "kron", version, about = "Kronecker positivity bounds, deciders and the hardness reduction chain")]
struct Cli {
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kronecker coefficient of a triple.
    Coeff { input: PathBuf },
    /// The counts p and t and, within budget, k.
    Bounds { input: PathBuf },
    /// Simplex-like, pedestalled and lattice-permutation recognition.
    Classify { input: PathBuf },
    /// Decide t > 0 with a certificate.
    Decide {
        #[arg(long, default_value = "auto")]
        method: String,
        input: PathBuf,
    },
    /// Run a 3DM instance through the whole reduction chain.
    Reduce {
        #[arg(long)]
        epsilon: String,
        input: PathBuf,
        /// Write every intermediate instance and its checks here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Distinct 3DM no-instances from padding, optionally reduced.
    Generate {
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        epsilon: Option<String>,
        /// Hex-encoded padding bits; repeat for several instances.
        #[arg(long)]
        bits: Vec<String>,
    },
    /// Constraint report for a restricted Kronecker instance. With
    /// `--candidate-r` the input is a single partition λ checked as an
    /// exceptional candidate (λ, δ, δ) instead.
    Verify {
        #[arg(long)]
        epsilon: String,
        #[arg(long, requires = "b")]
        candidate_r: Option<String>,
        #[arg(long)]
        b: Option<String>,
        input: PathBuf,
    },
    /// Brute-force decision for small instances.
    Solve {
        #[arg(long, value_enum)]
        problem: Problem,
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    #[value(name = "3dm")]
    ThreeDm,
    #[value(name = "4partition")]
    FourPartition,
    #[value(name = "3partition")]
    ThreePartition,
    Rn3dm,
    Rnmts,
    Permutation,
}

fn read_json(path: &Path) -> Result<Value, Error> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read_triple(path: &Path) -> Result<PartitionTriple, Error> {
    triple_from_json(&read_json(path)?)
}

fn oracle_or_note(t: &PartitionTriple) -> Result<Result<BigUint, String>, Error> {
    match kronecker(t) {
        Ok(k) => Ok(Ok(k)),
        Err(e) if e.is_budget() => Ok(Err(e.to_string())),
        Err(e) => Err(e),
    }
}

fn classify(t: &PartitionTriple) -> Result<Value, Error> {
    let pedestalled = recognize_pedestalled(t).map(|p| {
        json!({ "base": triple_to_json(&p.base), "a": num(&p.a), "b": num(&p.b), "c": num(&p.c) })
    });
    let form = recognize_lattice_form(t).map(|f| {
        let d: serde_json::Map<String, Value> = f.d.iter().map(|(k, v)| (k.to_string(), num(v))).collect();
        json!({ "r": num(&f.r), "d": d })
    });
    let mut hooks = Vec::new();
    for (name, p) in ["lambda", "mu", "pi"].iter().zip(t.parts()) {
        if !p.is_empty() && p.is_hook()? {
            hooks.push(*name);
        }
    }
    Ok(json!({
        "simplex_like": is_simplex_like(t)?,
        "pedestalled": pedestalled,
        "lattice_permutation_form": form,
        "hook": hooks,
        "heights": {
            "lambda": num(t.lambda().height()),
            "mu": num(t.mu().height()),
            "pi": num(t.pi().height()),
        },
        "size": num(t.size()),
    }))
}

fn reduce_output(out: &RestrictedKronecker) -> Value {
    let report = verify_restricted(out);
    json!({
        "stats": out.summary(),
        "constraints": report.to_json(),
        "instance": out.to_json(),
    })
}

fn run(cli: Cli) -> Result<Value, Error> {
    match cli.command {
        Command::Coeff { input } => {
            let t = read_triple(&input)?;
            Ok(json!({ "k": num(kronecker(&t)?) }))
        }
        Command::Bounds { input } => {
            let t = read_triple(&input)?;
            let m = Marginals::of_triple(&t)?;
            let mut out = json!({ "p": num(count_p(&m)?), "t": num(count_t(&m)?) });
            match oracle_or_note(&t)? {
                Ok(k) => out["k"] = num(k),
                Err(note) => out["note"] = Value::String(format!("k omitted: {note}")),
            }
            Ok(out)
        }
        Command::Classify { input } => classify(&read_triple(&input)?),
        Command::Decide { method, input } => {
            let method: Method = method.parse()?;
            let t = read_triple(&input)?;
            let d = decide(&t, method)?;
            Ok(json!({ "t_positive": d.positive, "method": d.method, "certificate": d.certificate.to_json() }))
        }
        Command::Reduce { epsilon, input, trace } => {
            let epsilon: Epsilon = epsilon.parse()?;
            let inst = ThreeDm::from_json(&read_json(&input)?)?;
            let (out, tr) = pipeline(&inst, epsilon)?;
            if let Some(path) = trace {
                let text = serde_json::to_string_pretty(&tr.to_json()).expect("JSON values serialize");
                fs::write(&path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            }
            Ok(reduce_output(&out))
        }
        Command::Generate { count, epsilon, bits } => {
            let strings = if bits.is_empty() {
                shortlex(count.ok_or_else(|| Error::Parse("give --count or --bits".into()))?)
            } else {
                if count.is_some_and(|c| c != bits.len()) {
                    return Err(Error::Parse(format!("--count differs from the {} --bits values", bits.len())));
                }
                bits.iter().map(|b| parse_hex_bits(b)).collect::<Result<_, _>>()?
            };
            let epsilon: Option<Epsilon> = epsilon.map(|e| e.parse()).transpose()?;
            let mut items = Vec::new();
            for (b, inst) in strings.iter().zip(generate_no_instances(&strings)) {
                let bits: String = b.iter().map(|&x| if x { '1' } else { '0' }).collect();
                let mut item = json!({ "bits": bits, "instance": inst.to_json() });
                if let Some(e) = epsilon {
                    item["output"] = reduce_output(&pipeline(&inst, e)?.0);
                }
                items.push(item);
            }
            Ok(json!({ "instances": items }))
        }
        Command::Verify { epsilon, candidate_r, b, input } => {
            let epsilon: Epsilon = epsilon.parse()?;
            let v = read_json(&input)?;
            match (candidate_r, b) {
                (Some(r), Some(b)) => {
                    let r: BigUint = r.parse().map_err(|_| Error::Parse(format!("bad r {r:?}")))?;
                    let b: Ratio = b.parse()?;
                    let lambda = partition_from_json(v.get("lambda").unwrap_or(&v))?;
                    Ok(exceptional_candidate_check(&lambda, &r, epsilon, b)?.to_json())
                }
                _ => {
                    let inst = RestrictedKronecker::from_json(&v, Some(epsilon))?;
                    Ok(verify_restricted(&inst).to_json())
                }
            }
        }
        Command::Solve { problem, input } => {
            let v = read_json(&input)?;
            let yes = match problem {
                Problem::ThreeDm => solve_3dm(&ThreeDm::from_json(&v)?)?,
                Problem::FourPartition => solve_4partition(&FourPartition::from_json(&v)?)?,
                Problem::ThreePartition => solve_3partition(&ThreePartition::from_json(&v)?)?,
                Problem::Rn3dm => solve_rn3dm(&Rn3dm::from_json(&v)?)?,
                Problem::Rnmts => solve_rnmts(&Rnmts::from_json(&v)?)?,
                Problem::Permutation => solve_permutation(&Permutation::from_json(&v)?)?,
            };
            Ok(json!({ "yes": yes }))
        }
    }
}

fn error_json(e: &Error) -> Value {
    let kind = match e {
        Error::SizeMismatch(_) => "size_mismatch",
        Error::NotDivisible { .. } => "not_divisible",
        Error::EmptyPartition(_) => "empty_partition",
        Error::InvalidPartition(_) => "invalid_partition",
        Error::Precondition(_) => "precondition",
        Error::BudgetExceeded { .. } => "budget_exceeded",
        Error::IndexOutOfRange { .. } => "index_out_of_range",
        Error::InvalidInstance { .. } => "invalid_instance",
        Error::StageFailed { .. } => "stage_failed",
        Error::EpsilonOutOfRange(_) => "epsilon_out_of_range",
        Error::NonMonotone(_) => "non_monotone",
        Error::MalformedDesign(_) => "malformed_design",
        Error::MalformedNetwork(_) => "malformed_network",
        Error::Parse(_) => "parse",
    };
    let mut out = json!({ "status": "error", "kind": kind, "message": e.to_string() });
    match e {
        Error::StageFailed { stage, .. } => out["stage"] = json!(stage),
        Error::InvalidInstance { kind, .. } => out["stage"] = json!(kind),
        Error::BudgetExceeded { what, .. } => out["stage"] = json!(what),
        _ => {}
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pretty = cli.pretty;
    let print = |v: &Value| {
        let text = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) };
        // a closed pipe downstream is not our failure
        let _ = writeln!(std::io::stdout(), "{}", text.expect("JSON values serialize"));
    };
    match run(cli) {
        Ok(v) => {
            print(&v);
            ExitCode::SUCCESS
        }
        Err(e) => {
            print(&error_json(&e));
            ExitCode::from(if e.is_budget() { 3 } else { 2 })
        }
    }
}
