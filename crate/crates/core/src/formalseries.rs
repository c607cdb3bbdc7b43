//! `R^{-∞}(K) = Hom_ℤ(R(K), ℤ)`: integer series over dominant weights.
//!
//! A series is a coefficient oracle, possibly with finite support. Infinite
//! series are only ever inspected through [`FormalSeries::truncate`] and
//! [`FormalSeries::pair`]; there is no unqualified equality.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use serde_json::{json, Value};

use crate::branching::Embedding;
use crate::error::{Error, Result};
use crate::linalg;
use crate::repring::{same_datum, RKElement};
use crate::rootdata::{RootDatum, Weight};

/// Certificate that restricting along an embedding only involves finitely
/// many coefficients: every target weight contributing to a source weight of
/// `normSq ≤ r` has `normSq ≤ witness(r)`.
pub type WitnessFn = Arc<dyn Fn(Rational64) -> Rational64 + Send + Sync>;

/// Supplies witnesses per embedding; `None` means "not certified".
pub type WitnessProvider = Arc<dyn Fn(&Embedding) -> Option<WitnessFn> + Send + Sync>;

pub type CoefficientFn = Arc<dyn Fn(&Weight) -> i64 + Send + Sync>;

#[derive(Clone)]
enum Coefficients {
    Finite(Arc<BTreeMap<Weight, i64>>),
    Oracle(CoefficientFn),
}

#[derive(Clone)]
pub struct FormalSeries {
    datum: RootDatum,
    coefficients: Coefficients,
    witnesses: Option<WitnessProvider>,
}

impl fmt::Debug for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("FormalSeries");
        d.field("datum", &self.datum.label());
        match &self.coefficients {
            Coefficients::Finite(terms) => d.field("terms", terms),
            Coefficients::Oracle(_) => d.field("terms", &"<oracle>"),
        };
        d.field("witnessed", &self.witnesses.is_some()).finish()
    }
}

impl FormalSeries {
    pub fn zero(datum: RootDatum) -> Self {
        FormalSeries {
            datum,
            coefficients: Coefficients::Finite(Arc::new(BTreeMap::new())),
            witnesses: None,
        }
    }

    /// A finitely supported series; zero coefficients are dropped.
    pub fn finite(datum: RootDatum, terms: impl IntoIterator<Item = (Weight, i64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (w, m) in terms {
            datum.require_dominant(&w)?;
            *map.entry(w).or_insert(0) += m;
        }
        map.retain(|_, m| *m != 0);
        Ok(FormalSeries {
            datum,
            coefficients: Coefficients::Finite(Arc::new(map)),
            witnesses: None,
        })
    }

    /// `[π_λ]^*`, dual to `[π_λ]` under the pairing.
    pub fn delta(datum: RootDatum, lambda: Weight) -> Result<Self> {
        Self::finite(datum, [(lambda, 1)])
    }

    /// The image of a finite element of `R(K)` under `[π_λ] ↦ [π_λ]^*`.
    pub fn from_rk(x: &RKElement) -> Self {
        FormalSeries {
            datum: x.datum.clone(),
            coefficients: Coefficients::Finite(Arc::new(x.terms().clone())),
            witnesses: None,
        }
    }

    /// A series given by a coefficient oracle. The oracle is only consulted
    /// at dominant weights and must be referentially transparent.
    pub fn from_oracle(datum: RootDatum, f: impl Fn(&Weight) -> i64 + Send + Sync + 'static) -> Self {
        FormalSeries {
            datum,
            coefficients: Coefficients::Oracle(Arc::new(f)),
            witnesses: None,
        }
    }

    pub fn with_witnesses(mut self, provider: WitnessProvider) -> Self {
        self.witnesses = Some(provider);
        self
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn finite_support(&self) -> Option<&BTreeMap<Weight, i64>> {
        match &self.coefficients {
            Coefficients::Finite(map) => Some(map),
            Coefficients::Oracle(_) => None,
        }
    }

    pub fn coefficient(&self, lambda: &Weight) -> Result<i64> {
        self.datum.require_dominant(lambda)?;
        Ok(self.coefficient_unchecked(lambda))
    }

    pub(crate) fn coefficient_unchecked(&self, lambda: &Weight) -> i64 {
        match &self.coefficients {
            Coefficients::Finite(map) => map.get(lambda).copied().unwrap_or(0),
            Coefficients::Oracle(f) => f(lambda),
        }
    }

    /// Restriction witness for `e`, if certified. Finite series and the
    /// identity embedding certify themselves.
    pub fn witness_for(&self, e: &Embedding) -> Option<WitnessFn> {
        if e.target() != &self.datum {
            return None;
        }
        if let Some(map) = self.finite_support() {
            let max = map
                .keys()
                .map(|w| self.datum.norm_sq_unchecked(w))
                .max()
                .unwrap_or_default();
            return Some(Arc::new(move |_| max));
        }
        if e.is_identity() {
            return Some(Arc::new(|r| r));
        }
        self.witnesses.as_ref().and_then(|p| p(e))
    }

    /// `Σ_λ x(λ)·s(λ)`: the value of the series on an element of `R(K)`.
    pub fn pair(&self, x: &RKElement) -> Result<i64> {
        same_datum(&self.datum, &x.datum)?;
        Ok(x.terms()
            .iter()
            .map(|(w, &m)| m * self.coefficient_unchecked(w))
            .sum())
    }

    /// Coefficients on every dominant weight of `normSq ≤ radius`, zeros
    /// included.
    pub fn truncate(&self, radius: Rational64) -> Truncation {
        let terms = self
            .datum
            .dominant_weights_up_to(radius)
            .into_iter()
            .map(|w| {
                let c = self.coefficient_unchecked(&w);
                (w, c)
            })
            .collect();
        Truncation { radius, terms }
    }

    /// First window weight (lexicographic order) where the series differ.
    pub fn first_difference(&self, other: &FormalSeries, radius: Rational64) -> Result<Option<Weight>> {
        same_datum(&self.datum, &other.datum)?;
        Ok(self
            .datum
            .dominant_weights_up_to(radius)
            .into_iter()
            .find(|w| self.coefficient_unchecked(w) != other.coefficient_unchecked(w)))
    }

    pub fn equal_up_to(&self, other: &FormalSeries, radius: Rational64) -> Result<bool> {
        Ok(self.first_difference(other, radius)?.is_none())
    }

    /// Pointwise sum; witnesses combine by pointwise maximum.
    pub fn add(&self, other: &FormalSeries) -> Result<FormalSeries> {
        same_datum(&self.datum, &other.datum)?;
        if let (Some(a), Some(b)) = (self.finite_support(), other.finite_support()) {
            let terms = a.iter().chain(b.iter()).map(|(w, &m)| (w.clone(), m));
            return FormalSeries::finite(self.datum.clone(), terms);
        }
        let (x, y) = (self.clone(), other.clone());
        let (wx, wy) = (self.clone(), other.clone());
        let sum = FormalSeries::from_oracle(self.datum.clone(), move |w| {
            x.coefficient_unchecked(w) + y.coefficient_unchecked(w)
        });
        Ok(sum.with_witnesses(Arc::new(move |e| {
            let (f, g) = (wx.witness_for(e)?, wy.witness_for(e)?);
            Some(Arc::new(move |r| std::cmp::max(f(r), g(r))) as WitnessFn)
        })))
    }

    pub fn scale(&self, n: i64) -> FormalSeries {
        if n == 0 {
            return FormalSeries::zero(self.datum.clone());
        }
        if let Some(map) = self.finite_support() {
            let terms = map.iter().map(|(w, &m)| (w.clone(), n * m));
            return FormalSeries::finite(self.datum.clone(), terms).expect("keys are dominant");
        }
        let x = self.clone();
        let mut out = FormalSeries::from_oracle(self.datum.clone(), move |w| n * x.coefficient_unchecked(w));
        out.witnesses = self.witnesses.clone();
        out
    }
}

/// A finite window of a series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub radius: Rational64,
    pub terms: Vec<(Weight, i64)>,
}

impl Truncation {
    pub fn nonzero(&self) -> BTreeMap<Weight, i64> {
        self.terms
            .iter()
            .filter(|(_, m)| *m != 0)
            .map(|(w, m)| (w.clone(), *m))
            .collect()
    }

    pub fn window(&self) -> Vec<Weight> {
        self.terms.iter().map(|(w, _)| w.clone()).collect()
    }

    /// `{"radius": r, "terms": [{"weight": [..], "mult": n}]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "radius": radius_json(self.radius),
            "terms": self.terms.iter().map(|(w, m)| json!({"weight": w, "mult": m})).collect::<Vec<_>>(),
        })
    }
}

/// Integral radii serialise as numbers, others as `"p/q"` strings.
pub fn radius_json(r: Rational64) -> Value {
    if r.is_integer() {
        json!(r.to_integer())
    } else {
        json!(linalg::format_rational(r))
    }
}

pub fn check_radius(r: Rational64) -> Result<Rational64> {
    if r < Rational64::from_integer(0) {
        Err(Error::Parse(format!("negative radius {}", linalg::format_rational(r))))
    } else {
        Ok(r)
    }
}
