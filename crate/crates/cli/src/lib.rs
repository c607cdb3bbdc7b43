//! Report builders behind the `formalq` binary.
//!
//! Every command produces a `serde_json::Value`; keys serialise sorted, so
//! identical inputs give byte-identical output.

use std::path::Path;

use formalq::branching::{branch, Embedding, EmbeddingJson, EmbeddingKind};
use formalq::formalseries::radius_json;
use formalq::hamiltonian::{
    induce_formal_quantisation, induce_quantisation, semi_formal_quantisation,
    HamiltonianModel, InducedModel, InnerModel,
};
use formalq::khom::GroupModel;
use formalq::linalg::parse_rational;
use formalq::repring::tensor_decompose;
use formalq::{Error, Rational64, RootDatum, Weight};
use serde_json::{json, Value};

pub mod checks;

pub use checks::{run_check, VerifyReport, CHECKS};

/// Failures of a command, each with a fixed exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] Error),
    #[error("io: {0}")]
    Io(String),
    #[error("unknown check {0:?}; known checks: {known}", known = CHECKS.join(", "))]
    UnknownCheck(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                Error::PropernessUncertified
                | Error::MissingWitness(_)
                | Error::NoWitnessAvailable(_)
                | Error::DegreeBoundMissing => 3,
                _ => 2,
            },
            CliError::Io(_) => 2,
            CliError::UnknownCheck(_) => 4,
        }
    }

    /// The first line written to standard error.
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.name(),
            CliError::Io(_) => "Io",
            CliError::UnknownCheck(_) => "UnknownCheck",
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn parse_radius(s: &str) -> CliResult<Rational64> {
    let r = parse_rational(s.trim()).ok_or_else(|| Error::Parse(format!("bad radius {s:?}")))?;
    Ok(formalq::formalseries::check_radius(r)?)
}

/// Accepts `[1,0]`, `1,0` or `1 0`.
pub fn parse_weight(s: &str) -> CliResult<Weight> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    let coords = inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad weight {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Weight(coords))
}

pub fn load_model(path: &Path) -> CliResult<HamiltonianModel> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(HamiltonianModel::parse_json(&text)?)
}

/// Induced models keep their group; the others are read over `G = K`.
pub fn as_induced(model: &HamiltonianModel) -> CliResult<InducedModel> {
    Ok(match model {
        HamiltonianModel::Induced(m) => m.clone(),
        HamiltonianModel::Linear(m) => {
            InducedModel::new(GroupModel::compact(m.datum().clone()), InnerModel::Linear(m.clone()))?
        }
        HamiltonianModel::Coadjoint(m) => {
            InducedModel::new(GroupModel::compact(m.datum.clone()), InnerModel::Coadjoint(m.clone()))?
        }
    })
}

pub fn run_quantise(model: &HamiltonianModel, radius: Rational64) -> CliResult<Value> {
    let im = as_induced(model)?;
    let class = induce_quantisation(&im)?;
    Ok(json!({
        "model": model.to_json(),
        "radius": radius_json(radius),
        "degree": class.degree(),
        "series": class.series.truncate(radius).to_json(),
    }))
}

/// The semi-formal quantisation `Σ_λ Q(M × 𝒪_λ^−)^K [λ]^*`.
pub fn run_shift(model: &HamiltonianModel, radius: Rational64) -> CliResult<Value> {
    let m = checks::linear_inner(model)?;
    let semi = semi_formal_quantisation(&m)?;
    Ok(json!({
        "model": model.to_json(),
        "radius": radius_json(radius),
        "series": semi.truncate(radius).to_json(),
    }))
}

/// Both quantisations of `G ×_K N`, side by side.
pub fn run_induce(model: &HamiltonianModel, radius: Rational64) -> CliResult<Value> {
    let im = as_induced(model)?;
    let lifted = induce_quantisation(&im)?;
    let reduced = induce_formal_quantisation(&im)?;
    let agree = lifted.series.equal_up_to(&reduced.series, radius)?;
    Ok(json!({
        "model": model.to_json(),
        "radius": radius_json(radius),
        "quantisation": lifted.to_json(radius),
        "formal": reduced.to_json(radius),
        "agree": agree,
    }))
}

pub fn run_tensor(group: &str, lambda: &Weight, mu: &Weight) -> CliResult<Value> {
    let rd = RootDatum::parse(group)?;
    let product = tensor_decompose(&rd, lambda, mu)?;
    Ok(json!({
        "group": rd.label(),
        "lambda": lambda,
        "mu": mu,
        "result": product.to_wire(),
    }))
}

/// `torus`, `diagonal`, `circle`, or a path to an embedding JSON file.
pub fn parse_embedding(group: &RootDatum, spec: &str) -> CliResult<Embedding> {
    match spec {
        "torus" => Ok(Embedding::maximal_torus(group)),
        "diagonal" => {
            let n = group.rank();
            let half = n / 2;
            let (left, _) = group
                .split_at(half)
                .filter(|(l, r)| l == r)
                .ok_or_else(|| Error::LatticeMismatch(format!("{group} is not of the form K x K")))?;
            Ok(Embedding::diagonal(&left))
        }
        "circle" => {
            if !group.is_torus() {
                return Err(Error::LatticeMismatch(format!("{group} is not a torus")).into());
            }
            Ok(Embedding::diagonal_circle(group.rank()))
        }
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
            let j: EmbeddingJson = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let e = Embedding::try_from(j)?;
            if e.target() != group {
                return Err(Error::DatumMismatch(group.label().into(), e.target().label().into()).into());
            }
            Ok(e)
        }
    }
}

pub fn run_branch(group: &str, embedding: &str, lambda: &Weight) -> CliResult<Value> {
    let rd = RootDatum::parse(group)?;
    let e = parse_embedding(&rd, embedding)?;
    let result = branch(&e, lambda)?;
    Ok(json!({
        "embedding": serde_json::to_value(e.to_json()).expect("embedding serialises"),
        "lambda": lambda,
        "result": result.to_wire(),
    }))
}

/// The identity embedding of a datum into itself.
pub fn identity_embedding(rd: &RootDatum) -> Embedding {
    let n = rd.rank();
    let map = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let kind = if rd.is_torus() {
        EmbeddingKind::TorusInclusion
    } else {
        EmbeddingKind::BlockSubgroup
    };
    Embedding::new(rd.clone(), rd.clone(), map, kind).expect("identity is well formed")
}

/// Canonical output text: one line of JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("values serialise");
    s.push('\n');
    s
}
