//! `qlogic`: batch front end. Reads JSON, writes a deterministic JSON report.
//!
//! Exit status is 0 on success, 1 for domain errors (reported as
//! `{"error": {"kind", "message"}}`) and 2 for malformed requests.

mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qlogic::cloning::{cloner_search, cloning_identity_check, TensorModel, UnitaryMorphism};
use qlogic::construct::{build_pair, rng_from_seed, seeded_isometry_with, ConstructionSpec};
use qlogic::json::{self as qj, OmpInput};
use qlogic::omp::{is_strong, transition_probability_lp};
use qlogic::transition::{
    classify_pair, decompose, isoclinic_analysis, trace_monotonicity_check, transition_oracle,
    transition_probability,
};
use qlogic::{Error, Hypercomplex, KMatrix, Projection, Rational, Ring, Scalar};

#[derive(Parser, Debug)]
#[command(name = "qlogic", version, about = "Transition probabilities in quantum logics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Exact rational arithmetic instead of f64.
    #[arg(long, global = true)]
    exact: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// JSON file with the request data.
    #[arg(long, short, conflicts_with = "json")]
    input: Option<PathBuf>,
    /// Inline JSON instead of a file.
    #[arg(long)]
    json: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// P(q|p) for a pair {"p", "q"}.
    Tp(Input),
    /// Algebraic value next to the spectral-compression oracle.
    Oracle(Input),
    /// Structure of the subalgebra generated by the pair.
    Classify(Input),
    /// q = q_o + q_1 together with the trace comparison.
    Decompose(Input),
    /// Generate an isoclinic pair with P(q|p) = P(p|q) = s.
    Gen {
        #[arg(long = "K", default_value = "C")]
        ring: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value = "1/2")]
        s: String,
    },
    /// Finite orthomodular posets.
    Omp {
        #[command(subcommand)]
        action: OmpAction,
    },
    /// Search for a unitary cloner of a pair with P = s in C^m ⊗ C^n.
    Noclone {
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        s: f64,
        #[arg(long, default_value_t = 10000)]
        trials: usize,
    },
    /// Run the built-in invariant suite.
    Selftest,
}

#[derive(Subcommand, Debug)]
enum OmpAction {
    /// Check the orthomodular poset axioms.
    Validate(Input),
    /// P(q|p) over the state set, by linear programming.
    Tp {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// Whether the state set is strong.
    Strong(Input),
}

enum Failure {
    Request(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(msg) => Failure::Request(msg),
            other => Failure::Domain(other),
        }
    }
}

fn load(input: &Input) -> Result<Value, Failure> {
    let text = match (&input.input, &input.json) {
        (Some(path), _) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Request(format!("cannot read {}: {e}", path.display())))?,
        (None, Some(s)) => s.clone(),
        (None, None) => return Err(Failure::Request("one of --input or --json is required".into())),
    };
    serde_json::from_str(&text).map_err(|e| Failure::Request(format!("invalid JSON: {e}")))
}

fn run<T: Scalar>(cli: &Cli) -> Result<Value, Failure> {
    let out = match &cli.command {
        Command::Tp(input) => {
            let (p, q) = qj::pair_from_json::<T>(&load(input)?)?;
            qj::transition_to_json(&transition_probability(&p, &q)?)
        }
        Command::Oracle(input) => {
            let (p, q) = qj::pair_from_json::<T>(&load(input)?)?;
            let alg = transition_probability(&p, &q)?;
            let orc = transition_oracle(&p, &q)?;
            let agree = alg.exists == orc.exists
                && match (&alg.s, &orc.s) {
                    (Some(a), Some(b)) => (a.to_f64() - b).abs() <= 1e-9,
                    _ => true,
                };
            json!({"algebraic": qj::transition_to_json(&alg), "oracle": qj::transition_to_json(&orc), "agree": agree})
        }
        Command::Classify(input) => {
            let (p, q) = qj::pair_from_json::<T>(&load(input)?)?;
            let mut v = qj::structure_to_json(&classify_pair(&p, &q)?);
            v["isoclinic"] = qj::isoclinic_to_json(&isoclinic_analysis(&p, &q)?);
            v
        }
        Command::Decompose(input) => {
            let (p, q) = qj::pair_from_json::<T>(&load(input)?)?;
            let mut v = qj::decomposition_to_json(&decompose(&p, &q)?);
            v["trace"] = qj::trace_to_json(&trace_monotonicity_check(&p, &q)?);
            v
        }
        Command::Gen { ring, m, n, s } => generate::<T>(ring, *m, *n, s, cli.seed)?,
        Command::Omp { action } => omp::<T>(action)?,
        Command::Noclone { m, n, s, trials } => noclone(*m, *n, *s, *trials, cli.seed)?,
        Command::Selftest => selftest::run(),
    };
    Ok(out)
}

fn generate<T: Scalar>(ring: &str, m: usize, n: usize, s: &str, seed: u64) -> Result<Value, Failure> {
    let ring = Ring::from_tag(ring)?;
    let s = T::from_json(&Value::String(s.into()))?;
    let mut rng = rng_from_seed(seed);
    let u = seeded_isometry_with::<T, _>(ring, m, n, &mut rng)?;
    let (p, q) = build_pair(&ConstructionSpec::new(ring, s.clone(), u))?;
    Ok(json!({
        "ring": ring.tag(),
        "m": m,
        "n": n,
        "s": s.to_json(),
        "seed": seed,
        "p": qj::projection_to_json(&p),
        "q": qj::projection_to_json(&q),
    }))
}

fn omp<T: Scalar>(action: &OmpAction) -> Result<Value, Failure> {
    let parse = |input: &Input| -> Result<OmpInput<T>, Failure> { Ok(qj::omp_from_json::<T>(&load(input)?)?) };
    Ok(match action {
        OmpAction::Validate(input) => qj::validation_to_json(&parse(input)?.omp.validate()),
        OmpAction::Tp { input, p, q } => {
            let l = parse(input)?;
            let (ip, iq) = (l.omp.element(p)?, l.omp.element(q)?);
            let mut v = qj::transition_to_json(&transition_probability_lp(&l.omp, &l.states, ip, iq)?);
            if let Some(projs) = &l.projections {
                v["jordan"] = qj::transition_to_json(&transition_probability(&projs[ip], &projs[iq])?);
            }
            v
        }
        OmpAction::Strong(input) => {
            let l = parse(input)?;
            qj::strong_to_json(&is_strong(&l.omp, &l.states)?)
        }
    })
}

/// `p1 = e_0 e_0*`, `p2 = ξξ*` with `ξ = (√s, √(1−s), 0, …)`, blank `e_0 e_0*`.
fn noclone(m: usize, n: usize, s: f64, trials: usize, seed: u64) -> Result<Value, Failure> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Failure::Domain(Error::Precondition("s must lie in [0, 1]".into())));
    }
    if m < 2 {
        return Err(Failure::Domain(Error::Precondition("two distinct projections need m ≥ 2".into())));
    }
    let model = TensorModel::new(m, n)?;
    let ring = Ring::Complex;
    let xi: Vec<f64> = (0..m).map(|k| [s.sqrt(), (1.0 - s).sqrt()].get(k).copied().unwrap_or(0.0)).collect();
    let rank_one = |v: &[f64]| {
        Projection::from_matrix(KMatrix::from_fn(ring, m, m, |i, j| Hypercomplex::real(ring, v[i] * v[j])))
    };
    let mut e0 = vec![0.0; m];
    e0[0] = 1.0;
    let p1 = rank_one(&e0)?;
    let p2 = rank_one(&xi)?;
    let report = cloner_search(&model, &p1, &p2, &p1, trials, seed)?;
    let chain = UnitaryMorphism::new(report.best_unitary.clone())
        .and_then(|u| cloning_identity_check(&model, &p1, &p2, &p1, &u))?;
    let mut v = qj::search_to_json(&report);
    v["best_candidate_chain"] = qj::chain_to_json(&chain);
    Ok(v)
}

fn emit(value: &Value, output: Option<&PathBuf>) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).expect("values serialise") + "\n";
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = if cli.exact { run::<Rational>(&cli) } else { run::<f64>(&cli) };
    let (value, code) = match result {
        Ok(v) => {
            let failed = matches!(cli.command, Command::Selftest) && v["passed"] == json!(false);
            (v, if failed { 1 } else { 0 })
        }
        Err(Failure::Domain(e)) => (qj::error_to_json(&e), 1),
        Err(Failure::Request(msg)) => (qj::error_to_json(&Error::Parse(msg)), 2),
    };
    if let Err(msg) = emit(&value, cli.output.as_ref()) {
        eprintln!("{msg}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
