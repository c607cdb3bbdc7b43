//! Restriction `Res^K_{K'}` along lattice-level embeddings, on `R(K)` and on
//! formal series carrying a restriction witness.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::cone::half_space_certificate;
use crate::error::{Error, Result};
use crate::formalseries::{FormalSeries, WitnessFn};
use crate::linalg;
use crate::repring::{decompose_character, weight_multiplicities, Character, RKElement};
use crate::rootdata::{RootDatum, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum EmbeddingKind {
    TorusInclusion,
    BlockSubgroup,
    Diagonal,
    FactorInclusion,
}

/// `K' → K`, recorded as the matrix restricting characters of the maximal
/// torus of `K` to characters of the maximal torus of `K'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    source: RootDatum,
    target: RootDatum,
    map: Vec<Vec<i64>>,
    kind: EmbeddingKind,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

impl Embedding {
    pub fn new(source: RootDatum, target: RootDatum, map: Vec<Vec<i64>>, kind: EmbeddingKind) -> Result<Self> {
        if map.len() != source.rank() || map.iter().any(|row| row.len() != target.rank()) {
            return Err(Error::LatticeMismatch(format!(
                "weight map must be {}x{} for {} -> {}",
                source.rank(),
                target.rank(),
                source,
                target
            )));
        }
        if kind == EmbeddingKind::Diagonal {
            let n = source.rank();
            let expected: Vec<Vec<i64>> = identity(n)
                .into_iter()
                .map(|mut row| {
                    row.extend(row.clone());
                    row
                })
                .collect();
            if target != source.product(&source) || map != expected {
                return Err(Error::LatticeMismatch(
                    "diagonal embedding must be X -> XxX with map [I | I]".into(),
                ));
            }
        }
        Ok(Embedding {
            source,
            target,
            map,
            kind,
        })
    }

    /// Maximal torus `T^r ⊂ K`.
    pub fn maximal_torus(target: &RootDatum) -> Self {
        let n = target.rank();
        Embedding {
            source: RootDatum::torus(n),
            target: target.clone(),
            map: identity(n),
            kind: EmbeddingKind::TorusInclusion,
        }
    }

    /// `Δ(K) ⊂ K × K`.
    pub fn diagonal(datum: &RootDatum) -> Self {
        let n = datum.rank();
        let map = identity(n)
            .into_iter()
            .map(|mut row| {
                row.extend(row.clone());
                row
            })
            .collect();
        Embedding {
            source: datum.clone(),
            target: datum.product(datum),
            map,
            kind: EmbeddingKind::Diagonal,
        }
    }

    /// The circle `t ↦ (t, …, t)` inside `T^n`.
    pub fn diagonal_circle(n: usize) -> Self {
        Embedding {
            source: RootDatum::torus(1),
            target: RootDatum::torus(n),
            map: vec![vec![1; n]],
            kind: EmbeddingKind::TorusInclusion,
        }
    }

    /// `K₁ ⊂ K₁ × K₂` (`first = true`) or `K₂ ⊂ K₁ × K₂`.
    pub fn factor(left: &RootDatum, right: &RootDatum, first: bool) -> Self {
        let (n1, n2) = (left.rank(), right.rank());
        let (source, offset, n) = if first { (left, 0, n1) } else { (right, n1, n2) };
        let map = (0..n)
            .map(|i| (0..n1 + n2).map(|j| i64::from(j == offset + i)).collect())
            .collect();
        Embedding {
            source: source.clone(),
            target: left.product(right),
            map,
            kind: EmbeddingKind::FactorInclusion,
        }
    }

    /// `self: K'' → K'` followed by `outer: K' → K`.
    pub fn then(&self, outer: &Embedding) -> Result<Embedding> {
        if self.target != outer.source {
            return Err(Error::LatticeMismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source, self.target, outer.source, outer.target
            )));
        }
        let map = self
            .map
            .iter()
            .map(|row| {
                (0..outer.target.rank())
                    .map(|j| row.iter().zip(&outer.map).map(|(a, orow)| a * orow[j]).sum())
                    .collect()
            })
            .collect();
        let kind = if self.source.is_torus() {
            EmbeddingKind::TorusInclusion
        } else {
            EmbeddingKind::BlockSubgroup
        };
        Ok(Embedding {
            source: self.source.clone(),
            target: outer.target.clone(),
            map,
            kind,
        })
    }

    pub fn source(&self) -> &RootDatum {
        &self.source
    }

    pub fn target(&self) -> &RootDatum {
        &self.target
    }

    pub fn map(&self) -> &[Vec<i64>] {
        &self.map
    }

    pub fn kind(&self) -> EmbeddingKind {
        self.kind
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.map == identity(self.source.rank())
    }

    pub fn restrict_weight(&self, w: &Weight) -> Weight {
        Weight(
            self.map
                .iter()
                .map(|row| row.iter().zip(w.coords()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    pub fn to_json(&self) -> EmbeddingJson {
        EmbeddingJson {
            source: self.source.clone(),
            target: self.target.clone(),
            map: self.map.clone(),
            kind: self.kind,
        }
    }
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {:?}", self.source, self.target, self.map)
    }
}

/// Wire form `{"source", "target", "map", "kind"}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EmbeddingJson {
    pub source: RootDatum,
    pub target: RootDatum,
    pub map: Vec<Vec<i64>>,
    pub kind: EmbeddingKind,
}

impl TryFrom<EmbeddingJson> for Embedding {
    type Error = Error;

    fn try_from(j: EmbeddingJson) -> Result<Embedding> {
        Embedding::new(j.source, j.target, j.map, j.kind)
    }
}

/// `Res^K_{K'} π_λ`: push the character through the weight map and
/// decompose over `K'`.
pub fn branch(e: &Embedding, lambda: &Weight) -> Result<RKElement> {
    let chi = weight_multiplicities(&e.target, lambda)?;
    let mut pushed = Character::new(e.source.clone());
    for (w, &m) in chi.terms() {
        pushed.add_weight(e.restrict_weight(w), m);
    }
    decompose_character(&e.source, &pushed).map_err(|err| match err {
        Error::NotWeylInvariant(w) => Error::LatticeMismatch(format!(
            "restriction along {e} is not Weyl-invariant at {w}; not a subgroup"
        )),
        other => other,
    })
}

/// `branch` extended ℤ-linearly.
pub fn branch_rk(e: &Embedding, x: &RKElement) -> Result<RKElement> {
    crate::repring::same_datum(&e.target, &x.datum)?;
    let mut out = RKElement::zero(e.source.clone());
    for (lambda, &m) in x.terms() {
        for (mu, &k) in branch(e, lambda)?.terms() {
            out.add_unchecked(mu.clone(), m * k);
        }
    }
    Ok(out)
}

/// Restricts a witnessed series, exactly, on the source window of `normSq ≤
/// radius`. The result is finitely supported on that window.
pub fn branch_series(e: &Embedding, s: &FormalSeries, radius: Rational64) -> Result<FormalSeries> {
    crate::repring::same_datum(&e.target, s.datum())?;
    let witness = s
        .witness_for(e)
        .ok_or_else(|| Error::MissingWitness(e.to_string()))?;
    let window: BTreeSet<Weight> = e.source.dominant_weights_up_to(radius).into_iter().collect();
    let mut out = RKElement::zero(e.source.clone());
    for lambda in e.target.dominant_weights_up_to(witness(radius)) {
        let c = s.coefficient_unchecked(&lambda);
        if c == 0 {
            continue;
        }
        for (mu, &m) in branch(e, &lambda)?.terms() {
            if window.contains(mu) {
                out.add_unchecked(mu.clone(), c * m);
            }
        }
    }
    Ok(FormalSeries::from_rk(&out))
}

/// Built-in generators for which a restriction witness can be derived.
#[derive(Clone, Debug)]
pub enum WitnessModel {
    /// Finitely supported series; the bound is the largest norm in the support.
    Finite { max_norm_sq: Rational64 },
    /// `Sym(V)` for a representation with the given torus weights.
    Linear { datum: RootDatum, weights: Vec<Weight> },
}

/// Derives a restriction witness for a built-in generator.
///
/// For `Sym(V)`, a weight `λ'` of the restriction of `π_λ ⊂ Symᵐ V` is a sum
/// of `m` restricted weights. If an integer functional `η` is `≥ c` on all of
/// them, then `m ≤ ⟨η, λ'⟩ / c`, and `‖λ‖ ≤ m · max ‖α_j‖`. Cauchy–Schwarz in
/// the source form turns this into `normSq(λ) ≤ r · ηᵀG'⁻¹η · max‖α‖² / c²`.
pub fn standard_witness(model: &WitnessModel, e: &Embedding) -> Result<WitnessFn> {
    match model {
        WitnessModel::Finite { max_norm_sq } => {
            let m = *max_norm_sq;
            Ok(Arc::new(move |_| m))
        }
        WitnessModel::Linear { datum, weights } => {
            if datum != e.target() {
                return Err(Error::LatticeMismatch(format!(
                    "model lives on {datum}, embedding targets {}",
                    e.target()
                )));
            }
            if weights.is_empty() {
                return Ok(Arc::new(|_| Rational64::from_integer(0)));
            }
            let restricted: Vec<Vec<i64>> = weights.iter().map(|w| e.restrict_weight(w).0).collect();
            let eta = half_space_certificate(&restricted, e.source().rank()).ok_or_else(|| {
                Error::NoWitnessAvailable(format!("restricted weights of the model along {e} are not pointed"))
            })?;
            let c_min = restricted
                .iter()
                .map(|v| v.iter().zip(&eta).map(|(a, b)| a * b).sum::<i64>())
                .min()
                .expect("weights are nonempty");
            let ginv = linalg::invert(e.source().form_matrix()).expect("form is definite");
            let eta_q: Vec<Rational64> = eta.iter().map(|&x| Rational64::from_integer(x)).collect();
            let eta_norm = linalg::quadratic_rat(&ginv, &eta_q);
            let max_alpha = weights
                .iter()
                .map(|w| datum.norm_sq_unchecked(w))
                .max()
                .expect("weights are nonempty");
            let factor = eta_norm * max_alpha / Rational64::from_integer(c_min * c_min);
            Ok(Arc::new(move |r| r * factor))
        }
    }
}
