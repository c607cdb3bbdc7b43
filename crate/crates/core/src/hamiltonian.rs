//! Combinatorial Hamiltonian models and their quantisations.
//!
//! Conventions: the quantisation of a linear model `V` is `Sym(V)`, so the
//! coefficient at `λ` is `mult(π_λ, Sym V)` with no `ρ` shift, and the
//! coadjoint orbit through `μ` quantises to `π_μ` (or its dual for the
//! reversed symplectic form).

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::branching::{standard_witness, Embedding, WitnessModel};
use crate::cone::half_space_certificate;
use crate::error::{Error, Result};
use crate::formalseries::{FormalSeries, WitnessProvider};
use crate::khom::{lift_series, EllipticRule, GroupModel, KHomologyClass};
use crate::linalg;
use crate::repring::{decompose_character, tensor_decompose, Character, RKElement};
use crate::rootdata::{RootDatum, Weight};

/// `D(λ) = ⌊⟨c, λ⟩ + c₀⌋`, an upper bound on the degrees `m` with
/// `π_λ ⊂ Symᵐ V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBound {
    pub linear: Vec<Rational64>,
    pub constant: Rational64,
}

impl DegreeBound {
    pub fn eval(&self, lambda: &Weight) -> i64 {
        (linalg::dot_rat_int(&self.linear, lambda.coords()) + self.constant)
            .floor()
            .to_integer()
    }

    fn concat(&self, other: &DegreeBound) -> DegreeBound {
        DegreeBound {
            linear: self.linear.iter().chain(&other.linear).copied().collect(),
            constant: self.constant + other.constant,
        }
    }
}

/// `V ≅ ℂⁿ` given by its torus weights.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearModel {
    datum: RootDatum,
    weights: Vec<Weight>,
    xi: Option<Vec<Rational64>>,
    degree_bound: Option<DegreeBound>,
    proper_asserted: bool,
}

impl LinearModel {
    /// Validates that the weights form a `K`-representation and that `ξ`, if
    /// given, is strictly positive on all of them.
    pub fn new(datum: RootDatum, weights: Vec<Weight>, xi: Option<Vec<Rational64>>) -> Result<Self> {
        for w in &weights {
            datum.check_dim(w)?;
        }
        let mut chi = Character::new(datum.clone());
        for w in &weights {
            chi.add_weight(w.clone(), 1);
        }
        if let Some(bad) = chi.weyl_defect() {
            return Err(Error::InvalidModel(format!(
                "weights are not closed under the Weyl group of {datum} (at {bad})"
            )));
        }
        if let Some(xi) = &xi {
            if xi.len() != datum.rank() {
                return Err(Error::DimensionMismatch {
                    expected: datum.rank(),
                    got: xi.len(),
                });
            }
            if let Some(w) = weights
                .iter()
                .find(|w| !linalg::dot_rat_int(xi, w.coords()).is_positive())
            {
                return Err(Error::InvalidModel(format!("xi is not positive on weight {w}")));
            }
        }
        let mut model = LinearModel {
            datum,
            weights,
            xi,
            degree_bound: None,
            proper_asserted: false,
        };
        if model.is_su2_standard() {
            model.degree_bound = Some(DegreeBound {
                linear: vec![Rational64::from_integer(1)],
                constant: Rational64::zero(),
            });
            model.proper_asserted = true;
        }
        Ok(model)
    }

    /// `SU(2)` acting on `ℂ²`, where `Symᵏ ℂ² = π_k` gives the exact bound `k`.
    pub fn su2_standard() -> Self {
        let a1 = RootDatum::parse("A1").expect("A1 is a known type");
        LinearModel::new(a1, vec![Weight(vec![1]), Weight(vec![-1])], None).expect("standard model is valid")
    }

    /// `T^n` acting on `ℂⁿ` by the coordinate characters.
    pub fn torus_identity(n: usize) -> Self {
        let weights = (0..n)
            .map(|i| Weight((0..n).map(|j| i64::from(i == j)).collect()))
            .collect();
        let xi = Some(vec![Rational64::from_integer(1); n]);
        LinearModel::new(RootDatum::torus(n), weights, xi).expect("identity model is valid")
    }

    fn is_su2_standard(&self) -> bool {
        let mut ws: Vec<&Weight> = self.weights.iter().collect();
        ws.sort();
        self.datum.label() == "A1" && ws == [&Weight(vec![-1]), &Weight(vec![1])]
    }

    /// Declares properness with a caller-supplied degree bound.
    pub fn with_degree_bound(mut self, bound: DegreeBound) -> Result<Self> {
        if bound.linear.len() != self.datum.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.datum.rank(),
                got: bound.linear.len(),
            });
        }
        self.degree_bound = Some(bound);
        self.proper_asserted = true;
        Ok(self)
    }

    /// Declares properness without a bound; quantisation then fails with
    /// `DegreeBoundMissing` unless a certificate is present.
    pub fn assert_proper(mut self) -> Self {
        self.proper_asserted = true;
        self
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn xi(&self) -> Option<&[Rational64]> {
        self.xi.as_deref()
    }

    /// The bound in force: derived from `ξ` when present, since `⟨ξ, λ⟩ =
    /// Σ eⱼ⟨ξ, αⱼ⟩ ≥ c_min · m` for every monomial of weight `λ`.
    pub fn degree_bound(&self) -> Result<DegreeBound> {
        let rank = self.datum.rank();
        if self.weights.is_empty() {
            return Ok(DegreeBound {
                linear: vec![Rational64::zero(); rank],
                constant: Rational64::zero(),
            });
        }
        if let Some(xi) = &self.xi {
            let c_min = self
                .weights
                .iter()
                .map(|w| linalg::dot_rat_int(xi, w.coords()))
                .min()
                .expect("weights are nonempty");
            return Ok(DegreeBound {
                linear: xi.iter().map(|x| x / c_min).collect(),
                constant: Rational64::zero(),
            });
        }
        if !self.proper_asserted {
            return Err(Error::PropernessUncertified);
        }
        self.degree_bound.clone().ok_or(Error::DegreeBoundMissing)
    }

    fn witness_model(&self) -> WitnessModel {
        WitnessModel::Linear {
            datum: self.datum.clone(),
            weights: self.weights.clone(),
        }
    }

    fn witness_provider(&self) -> WitnessProvider {
        let model = self.witness_model();
        Arc::new(move |e: &Embedding| standard_witness(&model, e).ok())
    }

    /// `Res^K_{K'} V`, certified by a fresh half-space functional when the
    /// restricted weights are pointed.
    pub fn restrict(&self, e: &Embedding) -> Result<LinearModel> {
        crate::repring::same_datum(e.target(), &self.datum)?;
        let weights: Vec<Weight> = self.weights.iter().map(|w| e.restrict_weight(w)).collect();
        let coords: Vec<Vec<i64>> = weights.iter().map(|w| w.0.clone()).collect();
        let xi = half_space_certificate(&coords, e.source().rank())
            .map(|v| v.into_iter().map(Rational64::from_integer).collect());
        LinearModel::new(e.source().clone(), weights, xi)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "kind": "linear",
            "datum": self.datum.label(),
            "weights": self.weights,
        });
        if let Some(xi) = &self.xi {
            v["xi"] = json!(xi.iter().map(|&q| rational_json(q)).collect::<Vec<_>>());
        }
        if self.xi.is_none() {
            if let Some(b) = &self.degree_bound {
                v["degree_bound"] = json!({
                    "linear": b.linear.iter().map(|&q| rational_json(q)).collect::<Vec<_>>(),
                    "const": rational_json(b.constant),
                });
            }
            if self.proper_asserted {
                v["proper"] = json!(true);
            }
        }
        v
    }
}

fn rational_json(q: Rational64) -> Value {
    crate::formalseries::radius_json(q)
}

/// `V₁ ⊕ V₂` as a `K₁ × K₂`-representation.
pub fn product_model(m1: &LinearModel, m2: &LinearModel) -> Result<LinearModel> {
    let datum = m1.datum.product(&m2.datum);
    let z1 = Weight::zero(m1.datum.rank());
    let z2 = Weight::zero(m2.datum.rank());
    let weights = m1
        .weights
        .iter()
        .map(|w| w.concat(&z2))
        .chain(m2.weights.iter().map(|w| z1.concat(w)))
        .collect();
    let pad = |m: &LinearModel| -> Option<Vec<Rational64>> {
        match &m.xi {
            Some(x) => Some(x.clone()),
            None if m.weights.is_empty() => Some(vec![Rational64::zero(); m.datum.rank()]),
            None => None,
        }
    };
    let xi = match (pad(m1), pad(m2)) {
        (Some(a), Some(b)) => Some(a.into_iter().chain(b).collect()),
        _ => None,
    };
    let certified = xi.is_some();
    let mut out = LinearModel::new(datum, weights, xi)?;
    if !certified && (m1.proper_asserted || m1.xi.is_some()) && (m2.proper_asserted || m2.xi.is_some()) {
        out.proper_asserted = true;
        out.degree_bound = match (m1.degree_bound(), m2.degree_bound()) {
            (Ok(a), Ok(b)) => Some(a.concat(&b)),
            _ => None,
        };
    }
    Ok(out)
}

/// Character of `Sym^{≤D} V`, by enumerating exponent vectors.
fn sym_character(m: &LinearModel, degree: i64) -> Character {
    let mut chi = Character::new(m.datum.clone());
    fn enumerate(ws: &[Weight], left: i64, acc: &Weight, chi: &mut Character) {
        match ws.split_first() {
            None => chi.add_weight(acc.clone(), 1),
            Some((first, rest)) => {
                let mut cur = acc.clone();
                for t in 0..=left {
                    enumerate(rest, left - t, &cur, chi);
                    cur = cur.add(first);
                }
            }
        }
    }
    if degree >= 0 {
        enumerate(&m.weights, degree, &Weight::zero(m.datum.rank()), &mut chi);
    }
    chi
}

fn sym_decomposition(m: &LinearModel, degree: i64) -> RKElement {
    decompose_character(&m.datum, &sym_character(m, degree)).expect("Sym of a representation is a representation")
}

/// `mult(π_λ, Sym V)`, by decomposing `Sym^{≤D(λ)} V`.
pub fn formal_quantisation_coefficient(m: &LinearModel, lambda: &Weight) -> Result<i64> {
    m.datum.require_dominant(lambda)?;
    let bound = m.degree_bound()?;
    Ok(sym_decomposition(m, bound.eval(lambda)).get(lambda))
}

/// `Q^{-∞}_K(V)` as a lazily evaluated series, with restriction witnesses
/// derived from the weights.
pub fn formal_quantisation_series(m: &LinearModel) -> Result<FormalSeries> {
    let bound = m.degree_bound()?;
    let model = m.clone();
    let cache: Mutex<HashMap<i64, Arc<RKElement>>> = Mutex::new(HashMap::new());
    let series = FormalSeries::from_oracle(m.datum.clone(), move |lambda| {
        let d = bound.eval(lambda);
        let hit = cache.lock().expect("cache lock").get(&d).cloned();
        let dec = match hit {
            Some(dec) => dec,
            None => {
                let dec = Arc::new(sym_decomposition(&model, d));
                cache.lock().expect("cache lock").insert(d, dec.clone());
                dec
            }
        };
        dec.get(lambda)
    });
    Ok(series.with_witnesses(m.witness_provider()))
}

/// `P_A(λ) = #{m ∈ ℕⁿ : A m = λ}` for a `k × n` matrix with columns in an
/// open half-space, by memoised recursion over the columns graded by `ξ`.
pub fn vector_partition(a: &[Vec<i64>], lambda: &[i64]) -> Result<u64> {
    let k = lambda.len();
    if a.len() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            got: a.len(),
        });
    }
    let n = a.first().map_or(0, Vec::len);
    if a.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidModel("ragged matrix".into()));
    }
    if n == 0 {
        return Ok(u64::from(lambda.iter().all(|&x| x == 0)));
    }
    let cols: Vec<Vec<i64>> = (0..n).map(|j| a.iter().map(|row| row[j]).collect()).collect();
    let xi = half_space_certificate(&cols, k).ok_or(Error::NotPointedCone)?;
    let grade = |v: &[i64]| -> i64 { v.iter().zip(&xi).map(|(x, y)| x * y).sum() };
    let col_grades: Vec<i64> = cols.iter().map(|c| grade(c)).collect();

    struct Ctx<'a> {
        cols: &'a [Vec<i64>],
        grades: &'a [i64],
        memo: HashMap<(usize, Vec<i64>), u64>,
    }
    fn count(ctx: &mut Ctx<'_>, j: usize, target: Vec<i64>, g: i64) -> u64 {
        if g < 0 {
            return 0;
        }
        if j == ctx.cols.len() {
            return u64::from(target.iter().all(|&x| x == 0));
        }
        if let Some(&v) = ctx.memo.get(&(j, target.clone())) {
            return v;
        }
        let (col, step) = (&ctx.cols[j], ctx.grades[j]);
        let mut total = 0;
        let mut cur = target.clone();
        let mut cur_g = g;
        while cur_g >= 0 {
            total += count(ctx, j + 1, cur.clone(), cur_g);
            for (c, x) in cur.iter_mut().zip(col) {
                *c -= x;
            }
            cur_g -= step;
        }
        ctx.memo.insert((j, target), total);
        total
    }
    let mut ctx = Ctx {
        cols: &cols,
        grades: &col_grades,
        memo: HashMap::new(),
    };
    Ok(count(&mut ctx, 0, lambda.to_vec(), grade(lambda)))
}

/// `Q(V_λ)` on the reduction side. For torus models with a certificate this
/// is `P_A(λ)`. Otherwise the multiplicity of `π_λ` in `Sym^{≤D} V` is the
/// alternating sum `Σ_w ε(w) #{e : A e = w(λ+ρ) − ρ, |e| ≤ D}`, counted as
/// partitions over `A` with a degree row and a slack column.
pub fn reduced_space_count(m: &LinearModel, lambda: &Weight) -> Result<i64> {
    m.datum.require_dominant(lambda)?;
    let bound = m.degree_bound()?;
    let cols: Vec<&Weight> = m.weights.iter().collect();
    let k = m.datum.rank();
    if m.datum.is_torus() && m.xi.is_some() {
        let a: Vec<Vec<i64>> = (0..k).map(|i| cols.iter().map(|w| w.0[i]).collect()).collect();
        return Ok(vector_partition(&a, lambda.coords())? as i64);
    }
    let d = bound.eval(lambda);
    if d < 0 {
        return Ok(0);
    }
    let n = cols.len();
    let mut a: Vec<Vec<i64>> = (0..k)
        .map(|i| cols.iter().map(|w| w.0[i]).chain(std::iter::once(0)).collect())
        .collect();
    a.push(vec![1; n + 1]);
    let rho = m.datum.weyl_vector();
    let mut total = 0i64;
    for (v, sign) in m.datum.signed_regular_orbit(&lambda.add(&rho)) {
        let mut target = v.sub(&rho).0;
        target.push(d);
        total += sign * vector_partition(&a, &target)? as i64;
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn parse(s: &str) -> Result<Sign> {
        match s {
            "+" => Ok(Sign::Plus),
            "-" => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("sign must be \"+\" or \"-\", got {s:?}"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// The coadjoint orbit through `μ`, with the standard form (`+`) or its
/// negative (`−`).
#[derive(Clone, Debug, PartialEq)]
pub struct CoadjointOrbitModel {
    pub datum: RootDatum,
    pub weight: Weight,
    pub sign: Sign,
}

impl CoadjointOrbitModel {
    pub fn new(datum: RootDatum, weight: Weight, sign: Sign) -> Result<Self> {
        datum.require_dominant(&weight)?;
        Ok(CoadjointOrbitModel { datum, weight, sign })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "coadjoint",
            "datum": self.datum.label(),
            "weight": self.weight,
            "sign": self.sign.as_str(),
        })
    }
}

/// `π_μ` for `+`, `π_μ^*` for `−`.
pub fn coadjoint_quantisation_series(m: &CoadjointOrbitModel) -> FormalSeries {
    let label = match m.sign {
        Sign::Plus => m.weight.clone(),
        Sign::Minus => m.datum.dual_weight(&m.weight).expect("weight is dominant"),
    };
    FormalSeries::delta(m.datum.clone(), label).expect("label is dominant")
}

#[derive(Clone, Debug, PartialEq)]
pub enum InnerModel {
    Linear(LinearModel),
    Coadjoint(CoadjointOrbitModel),
}

impl InnerModel {
    pub fn datum(&self) -> &RootDatum {
        match self {
            InnerModel::Linear(m) => &m.datum,
            InnerModel::Coadjoint(m) => &m.datum,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            InnerModel::Linear(m) => m.to_json(),
            InnerModel::Coadjoint(m) => m.to_json(),
        }
    }
}

/// `G ×_K N`.
#[derive(Clone, Debug)]
pub struct InducedModel {
    pub group: GroupModel,
    pub inner: InnerModel,
}

impl InducedModel {
    pub fn new(group: GroupModel, inner: InnerModel) -> Result<Self> {
        if &group.compact != inner.datum() {
            return Err(Error::DatumMismatch(
                group.compact.label().to_string(),
                inner.datum().label().to_string(),
            ));
        }
        Ok(InducedModel { group, inner })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "induced",
            "name": self.group.name,
            "d": self.group.d,
            "inner": self.inner.to_json(),
        })
    }
}

/// `Q_G(G ×_K N) = ((DInd)^*)⁻¹ Q_K(N)`.
pub fn induce_quantisation(im: &InducedModel) -> Result<KHomologyClass> {
    let series = match &im.inner {
        InnerModel::Linear(m) => formal_quantisation_series(m)?,
        InnerModel::Coadjoint(m) => coadjoint_quantisation_series(m),
    };
    lift_series(&im.group, series)
}

/// `Σ_λ Q(M_λ) [λ]^*` with `Q(M_λ) = Q(N_λ)` read off the reduced spaces of
/// the inner model.
pub fn induce_formal_quantisation(im: &InducedModel) -> Result<KHomologyClass> {
    let datum = im.group.compact.clone();
    let series = match &im.inner {
        InnerModel::Linear(m) => {
            m.degree_bound()?;
            let model = m.clone();
            FormalSeries::from_oracle(datum, move |l| {
                reduced_space_count(&model, l).expect("model is certified and λ dominant")
            })
            .with_witnesses(m.witness_provider())
        }
        InnerModel::Coadjoint(m) => {
            // The orbit of ±μ meets the dominant chamber in exactly one point.
            let hit = match m.sign {
                Sign::Plus => m.weight.clone(),
                Sign::Minus => datum.to_dominant(&m.weight.neg()).0,
            };
            let norm = datum.norm_sq(&hit)?;
            FormalSeries::from_oracle(datum, move |l| i64::from(*l == hit))
                .with_witnesses(Arc::new(move |_| Some(Arc::new(move |_| norm) as _)))
        }
    };
    lift_series(&im.group, series)
}

/// `R^G_λ`: the multiplicity of `[λ]^*`.
pub fn reduction_multiplicity(c: &KHomologyClass, lambda: &Weight) -> Result<i64> {
    c.series.coefficient(lambda)
}

/// `Q(V × 𝒪_λ^−)^K = Σ_μ q(μ) · mult(π_0; π_μ ⊗ π_λ^*)`. Only `μ = λ`
/// contributes, and every candidate has `normSq(μ) = normSq(λ)`.
pub fn shifted_invariant_quantisation(m: &LinearModel, lambda: &Weight) -> Result<i64> {
    m.datum.require_dominant(lambda)?;
    m.degree_bound()?;
    let orbit = CoadjointOrbitModel::new(m.datum.clone(), lambda.clone(), Sign::Minus)?;
    let orbit_q = coadjoint_quantisation_series(&orbit);
    let nu = orbit_q
        .finite_support()
        .and_then(|s| s.keys().next().cloned())
        .expect("orbit quantisation is a single term");
    let zero = Weight::zero(m.datum.rank());
    let mut total = 0;
    for mu in m.datum.dominant_weights_up_to(m.datum.norm_sq(lambda)?) {
        let invariants = tensor_decompose(&m.datum, &mu, &nu)?.get(&zero);
        if invariants != 0 {
            total += formal_quantisation_coefficient(m, &mu)? * invariants;
        }
    }
    Ok(total)
}

/// `Σ_λ Q(V × 𝒪_λ^−)^K [λ]^*`.
pub fn semi_formal_quantisation(m: &LinearModel) -> Result<FormalSeries> {
    m.degree_bound()?;
    let model = m.clone();
    Ok(FormalSeries::from_oracle(m.datum.clone(), move |l| {
        shifted_invariant_quantisation(&model, l).expect("model is certified and λ dominant")
    })
    .with_witnesses(m.witness_provider()))
}

/// A model loaded from JSON.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum HamiltonianModel {
    Linear(LinearModel),
    Coadjoint(CoadjointOrbitModel),
    Induced(InducedModel),
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn parse_weight(v: &Value) -> Result<Weight> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("bad weight {v}: {e}")))
}

fn parse_rational_value(v: &Value) -> Result<Rational64> {
    let bad = || Error::Parse(format!("bad rational {v}"));
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational64::from_integer(i)),
            None => linalg::parse_rational(&n.to_string()).ok_or_else(bad),
        },
        Value::String(s) => linalg::parse_rational(s).ok_or_else(bad),
        _ => Err(bad()),
    }
}

fn parse_rational_vec(v: &Value) -> Result<Vec<Rational64>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array, got {v}")))?
        .iter()
        .map(parse_rational_value)
        .collect()
}

fn parse_datum(v: &Value) -> Result<RootDatum> {
    match v {
        Value::String(s) => RootDatum::parse(s),
        other => serde_json::from_value(other.clone()).map_err(|e| Error::Parse(format!("bad datum: {e}"))),
    }
}

impl HamiltonianModel {
    pub fn from_json(v: &Value) -> Result<Self> {
        let kind = field(v, "kind")?
            .as_str()
            .ok_or_else(|| Error::Parse("kind must be a string".into()))?;
        match kind {
            "linear" => Ok(HamiltonianModel::Linear(Self::linear(v)?)),
            "coadjoint" => Ok(HamiltonianModel::Coadjoint(Self::coadjoint(v)?)),
            "induced" => Ok(HamiltonianModel::Induced(Self::induced(v)?)),
            other => Err(Error::Parse(format!("unknown model kind {other:?}"))),
        }
    }

    pub fn parse_json(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v)
    }

    fn linear(v: &Value) -> Result<LinearModel> {
        let datum = parse_datum(field(v, "datum")?)?;
        let weights = field(v, "weights")?
            .as_array()
            .ok_or_else(|| Error::Parse("weights must be an array".into()))?
            .iter()
            .map(parse_weight)
            .collect::<Result<Vec<_>>>()?;
        let xi = v.get("xi").map(parse_rational_vec).transpose()?;
        let mut m = LinearModel::new(datum, weights, xi)?;
        if let Some(b) = v.get("degree_bound") {
            let bound = DegreeBound {
                linear: parse_rational_vec(field(b, "linear")?)?,
                constant: b.get("const").map(parse_rational_value).transpose()?.unwrap_or_default(),
            };
            m = m.with_degree_bound(bound)?;
        }
        if v.get("proper").and_then(Value::as_bool) == Some(true) {
            m = m.assert_proper();
        }
        Ok(m)
    }

    fn coadjoint(v: &Value) -> Result<CoadjointOrbitModel> {
        let datum = parse_datum(field(v, "datum")?)?;
        let weight = match (v.get("weight"), v.get("weights")) {
            (Some(w), _) => parse_weight(w)?,
            (None, Some(Value::Array(ws))) if ws.len() == 1 => parse_weight(&ws[0])?,
            _ => return Err(Error::Parse("coadjoint model needs a single \"weight\"".into())),
        };
        let sign = match v.get("sign") {
            Some(Value::String(s)) => Sign::parse(s)?,
            None => Sign::Plus,
            Some(other) => return Err(Error::Parse(format!("bad sign {other}"))),
        };
        CoadjointOrbitModel::new(datum, weight, sign)
    }

    fn induced(v: &Value) -> Result<InducedModel> {
        let d = field(v, "d")?
            .as_u64()
            .and_then(|d| u32::try_from(d).ok())
            .ok_or_else(|| Error::Parse("d must be a nonnegative integer".into()))?;
        let inner_value = v.get("inner").unwrap_or(v);
        let inner = if inner_value.get("sign").is_some() || inner_value.get("weight").is_some() {
            InnerModel::Coadjoint(Self::coadjoint(inner_value)?)
        } else {
            InnerModel::Linear(Self::linear(inner_value)?)
        };
        let compact = inner.datum().clone();
        let name = match v.get("name").and_then(Value::as_str) {
            Some(n) => n.to_string(),
            None => format!("{} (d={d})", compact.label()),
        };
        let mut group = if d == 0 {
            GroupModel::compact(compact)
        } else {
            GroupModel::new(name.clone(), compact, d)
        };
        group.name = name;
        if let Some(rule) = v.get("elliptic").and_then(Value::as_str) {
            group = group.with_elliptic(EllipticRule::parse(rule)?);
        }
        InducedModel::new(group, inner)
    }

    pub fn datum(&self) -> &RootDatum {
        match self {
            HamiltonianModel::Linear(m) => &m.datum,
            HamiltonianModel::Coadjoint(m) => &m.datum,
            HamiltonianModel::Induced(m) => &m.group.compact,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            HamiltonianModel::Linear(m) => m.to_json(),
            HamiltonianModel::Coadjoint(m) => m.to_json(),
            HamiltonianModel::Induced(m) => m.to_json(),
        }
    }

    /// The quantisation of the model as a series over its compact datum.
    pub fn quantisation(&self) -> Result<FormalSeries> {
        match self {
            HamiltonianModel::Linear(m) => formal_quantisation_series(m),
            HamiltonianModel::Coadjoint(m) => Ok(coadjoint_quantisation_series(m)),
            HamiltonianModel::Induced(m) => Ok(induce_quantisation(m)?.series),
        }
    }
}
