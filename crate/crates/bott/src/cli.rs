use std::fs;
use std::io::Read;
use std::path::PathBuf;

use bott_core::bundles::anticanonical_character;
use bott_core::classify::classify_with_seed;
use bott_core::fan::{is_complete_with_seed, DEFAULT_PROBE_SEED};
use bott_core::{
    bott_matrix, bott_number, bott_number_moebius, build_fan, c_matrix, canonical_lambda, chart, crosspolytope_check,
    extend_sequence, is_fano, is_smooth, lambda_perp, quotient_presentation, support_function, tangent_splitting,
    xi_bundle, BinaryCode, CohomologyRing, GeneralFan, IndexSet, IntegralSequence, Polynomial, ReductionOrder,
};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::json::{self, FormatError};
use crate::svg;

/// Environment variable overriding the completeness-probe seed.
pub const SEED_VAR: &str = "BOTT_SEED";

#[derive(Debug, Parser)]
#[command(name = "bott", version, about = "Bott towers: numbers, fans, charts, bundles, cohomology, classification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Bott matrix and Bott numbers of a sequence or poset.
    Numbers {
        #[command(flatten)]
        io: Io,
        /// Recompute every Bott number by the subset sum and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Rays and cones of the stage-k fan.
    Fan {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        stage: Stage,
    },
    /// Smooth, complete, Fano and crosspolytope verdicts.
    Check {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        stage: Stage,
    },
    /// Dual cones and chart monomials for every binary code.
    Charts {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        stage: Stage,
    },
    /// Quotient presentation, named line bundles and optional sequence extension.
    Bundle {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        stage: Stage,
    },
    /// Cohomology ring presentation, Betti numbers, Chern class and Euler characteristic.
    Cohomology {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        stage: Stage,
        /// Recompute with the opposite reduction order and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Recover a sequence from a fan, or explain why none exists.
    Classify {
        #[command(flatten)]
        io: Io,
    },
    /// Draw a two-dimensional fan as SVG.
    Render {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        stage: Stage,
    },
}

impl Command {
    pub fn io(&self) -> &Io {
        match self {
            Command::Numbers { io, .. }
            | Command::Fan { io, .. }
            | Command::Check { io, .. }
            | Command::Charts { io, .. }
            | Command::Bundle { io, .. }
            | Command::Cohomology { io, .. }
            | Command::Classify { io }
            | Command::Render { io, .. } => io,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Io {
    /// Input file, inline JSON starting with '{', or '-' for standard input.
    pub input: Option<String>,
    /// Write the result here instead of standard output.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Stage {
    /// Tower stage; defaults to the sequence height.
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Validation(String),
    /// Output document describing the rejection.
    #[error("rejected")]
    Rejected(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Rejected(_) => 4,
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Invalid(e) => CliError::Validation(e.to_string()),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<bott_core::Error> for CliError {
    fn from(e: bott_core::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read_input(input: Option<&str>) -> Result<Value> {
    let text = match input {
        Some(s) if s.trim_start().starts_with('{') => s.to_string(),
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Parse(format!("standard input: {e}")))?;
            s
        }
        Some(path) => fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{path}: {e}")))?,
    };
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("malformed JSON: {e}")))
}

/// Probe seed from `BOTT_SEED` (decimal or `0x` hex), else the default.
pub fn probe_seed() -> Result<u64> {
    match std::env::var(SEED_VAR) {
        Err(_) => Ok(DEFAULT_PROBE_SEED),
        Ok(s) => {
            let parsed = match s.strip_prefix("0x") {
                Some(hex) => u64::from_str_radix(hex, 16),
                None => s.parse(),
            };
            parsed.map_err(|_| CliError::Parse(format!("{SEED_VAR}={s:?} is not an unsigned integer")))
        }
    }
}

/// A sequence from `{"n", "c"}`, a poset `{"n", "relation"}`, or either
/// nested under `"sequence"` with an optional `"k"`.
fn sequence_input(doc: &Value, flag_k: Option<usize>) -> Result<(IntegralSequence, usize)> {
    let (inner, doc_k) = match doc.get("sequence") {
        Some(s) => (s, doc.get("k").map(|k| json::parse_usize(k, "k")).transpose()?),
        None => (doc, None),
    };
    let c = if inner.get("relation").is_some() {
        json::parse_poset(inner)?.to_sequence()
    } else {
        json::parse_sequence(inner)?
    };
    let k = flag_k.or(doc_k).unwrap_or(c.height());
    if k == 0 || k > c.height() {
        return Err(CliError::Validation(format!("stage {k} out of range 1..={}", c.height())));
    }
    Ok((c, k))
}

/// A general fan if the document has `"rays"`, otherwise the fan of a sequence.
fn fan_input(doc: &Value, flag_k: Option<usize>) -> Result<GeneralFan> {
    if doc.get("rays").is_some() {
        return Ok(json::parse_general_fan(doc)?);
    }
    let (c, k) = sequence_input(doc, flag_k)?;
    Ok(build_fan(&c, k)?.to_general())
}

/// Runs one command and returns the document to print.
pub fn run(command: &Command) -> Result<String> {
    let doc = read_input(command.io().input.as_deref())?;
    match command {
        Command::Numbers { oracle, .. } => numbers(&doc, *oracle),
        Command::Fan { stage, .. } => {
            let (c, k) = sequence_input(&doc, stage.k)?;
            Ok(json::emit(&json::bott_fan(&build_fan(&c, k)?)))
        }
        Command::Check { stage, .. } => check(&fan_input(&doc, stage.k)?),
        Command::Charts { stage, .. } => charts(&doc, stage.k),
        Command::Bundle { stage, .. } => bundle(&doc, stage.k),
        Command::Cohomology { stage, oracle, .. } => cohomology(&doc, stage.k, *oracle),
        Command::Classify { .. } => classify(&doc),
        Command::Render { stage, .. } => {
            let fan = fan_input(&doc, stage.k)?;
            svg::render(&fan).map_err(|e| CliError::Validation(e.to_string()))
        }
    }
}

fn numbers(doc: &Value, oracle: bool) -> Result<String> {
    let (c, _) = sequence_input(doc, None)?;
    let n = c.height();
    let all = IndexSet::interval(1, n)?;
    let b = bott_matrix(&c, &all)?;
    let mut table = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            table.push(json!([i, j, json::int(&bott_number(&c, &IndexSet::interval(i, j)?)?)]));
        }
    }
    let mut out = json!({
        "sequence": json::sequence(&c),
        "c_matrix": json::matrix(c_matrix(&c, &all)?.as_matrix()),
        "bott_matrix": json::matrix(b.as_matrix()),
        "bott_numbers": table,
    });
    if doc.get("relation").is_some() || doc.get("sequence").and_then(|s| s.get("relation")).is_some() {
        let p = json::parse_poset(doc.get("sequence").unwrap_or(doc))?;
        out["moebius_matrix"] = json::matrix(p.moebius_matrix().as_matrix());
    }
    if oracle {
        let mut checked = 0usize;
        let mut mismatches = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let s = IndexSet::interval(i, j)?;
                checked += 1;
                if bott_number(&c, &s)? != bott_number_moebius(&c, &s)? {
                    mismatches.push(json!([i, j]));
                }
            }
        }
        let inverse_ok = c_matrix(&c, &all)?.mul(&b.neg()).is_identity();
        let agree = mismatches.is_empty() && inverse_ok;
        out["oracle"] = json!({ "checked": checked, "agree": agree, "inverse": inverse_ok, "mismatches": mismatches });
        if !agree {
            return Err(CliError::Rejected(json::emit(&out)));
        }
    }
    Ok(json::emit(&out))
}

fn check(fan: &GeneralFan) -> Result<String> {
    let seed = probe_seed()?;
    let smooth = matches!(is_smooth(fan), Ok(true));
    let degenerate = is_smooth(fan).is_err();
    let complete = !degenerate && is_complete_with_seed(fan, seed);
    let fano = complete && matches!(is_fano(fan), Ok(true));
    let crosspolytope = crosspolytope_check(fan).is_ok();
    Ok(json::emit(&json!({
        "smooth": smooth,
        "complete": complete,
        "fano": fano,
        "crosspolytope": crosspolytope,
    })))
}

fn charts(doc: &Value, k: Option<usize>) -> Result<String> {
    let (c, k) = sequence_input(doc, k)?;
    if k >= 20 {
        return Err(CliError::Validation(format!("refusing to list 2^{k} charts")));
    }
    let list = BinaryCode::all(k).map(|w| chart(&c, k, &w).map(|ch| json::chart(&ch))).collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(json::emit(&json!({ "k": k, "charts": list })))
}

fn bundle(doc: &Value, k: Option<usize>) -> Result<String> {
    let mut rest = doc.clone();
    let support = rest.as_object_mut().and_then(|m| m.remove("support"));
    let (c, k) = sequence_input(&rest, k)?;
    let mut named = json!({
        "lambda": json::character(&canonical_lambda(k)),
        "lambda_perp": json::character(&lambda_perp(&c, k)?),
        "tangent_splitting": tangent_splitting(&c, k)?.iter().map(json::character).collect::<Vec<_>>(),
        "anticanonical": json::character(&anticanonical_character(&c, k)?),
    });
    if k < c.height() {
        named["xi"] = json::character(&xi_bundle(&c, k)?);
    }
    let mut out = json!({
        "sequence": json::sequence(&c.restrict(k)?),
        "presentation": json::quotient(&quotient_presentation(&c, k)?),
        "bundles": named,
    });
    if let Some(s) = &support {
        let fan = build_fan(&c, k)?;
        let h = support_function(&fan, json::parse_support_values(s)?)?;
        let column = extend_sequence(&c, k, &h)?;
        out["support"] = json::support_function(&h);
        out["extension"] = json::vector(&column);
    }
    Ok(json::emit(&out))
}

fn cohomology(doc: &Value, k: Option<usize>, oracle: bool) -> Result<String> {
    let (c, k) = sequence_input(doc, k)?;
    let ring = CohomologyRing::new(&c, k)?;
    let total = ring.total_chern_class();
    let chi = ring.integrate(&total)?;
    let mut out = json!({
        "k": k,
        "relations": json::ring_presentation(ring.presentation())["relations"].clone(),
        "betti": ring.betti(),
        "class": json::class(&total),
        "top_chern_class": json::class(&ring.top_chern_class()),
        "euler_characteristic": json::int(&chi),
    });
    if oracle {
        let one = Polynomial::one(k);
        let mut product = one.clone();
        for j in 1..=k {
            let factor = one.add(&ring.x(j).to_polynomial()).add(&ring.z(j).to_polynomial());
            product = product.mul(&factor);
        }
        let unreduced = ring.normal_form_with(&product, ReductionOrder::LowestFirst)?;
        let cones = BigInt::from(1u64) << k;
        let agree = unreduced == total && chi == cones;
        out["oracle"] = json!({ "agree": agree, "maximal_cones": json::int(&cones) });
        if !agree {
            return Err(CliError::Rejected(json::emit(&out)));
        }
    }
    Ok(json::emit(&out))
}

fn classify(doc: &Value) -> Result<String> {
    let fan = json::parse_general_fan(doc)?;
    match classify_with_seed(&fan, probe_seed()?) {
        Ok(result) => Ok(json::emit(&json::classification(&result))),
        Err(rejection) => Err(CliError::Rejected(json::emit(&json::rejection(&rejection)))),
    }
}

/// Writes `text` to `-o` or standard output.
pub fn deliver(command: &Command, text: &str) -> std::io::Result<()> {
    match &command.io().output {
        Some(path) => fs::write(path, text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    }
}

