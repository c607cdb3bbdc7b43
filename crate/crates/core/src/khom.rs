//! Generator-level K-theory and K-homology of reduced group C*-algebras.
//!
//! A [`GroupModel`] records only what the label algebra sees of a real
//! reductive group: its maximal compact subgroup `K` and `d = dim G/K`.
//! `K_d` classes are elements of `R(K)` relabelled `[λ]`, and `K^d` classes
//! are series in `R^{-∞}(K)` relabelled `[λ]^*`.

use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use serde_json::{json, Value};

use crate::branching::{branch_series, Embedding, EmbeddingKind};
use crate::error::{Error, Result};
use crate::formalseries::{FormalSeries, WitnessFn};
use crate::repring::{same_datum, tensor_decompose, RKElement};
use crate::rootdata::{RootDatum, Weight};

/// Which dominant weights label discrete series representations.
#[derive(Clone)]
pub enum EllipticRule {
    /// Every dominant weight.
    All,
    /// Every nonzero dominant weight.
    Nonzero,
    /// Weights strictly inside the dominant chamber, and nonzero.
    Regular,
    /// Componentwise on a product, split at the given rank.
    Product(Box<EllipticRule>, Box<EllipticRule>, usize),
    Custom(Arc<dyn Fn(&Weight) -> bool + Send + Sync>),
}

impl EllipticRule {
    pub fn holds(&self, datum: &RootDatum, w: &Weight) -> bool {
        match self {
            EllipticRule::All => true,
            EllipticRule::Nonzero => !w.is_zero(),
            EllipticRule::Regular => !w.is_zero() && datum.semisimple_coords().iter().all(|&i| w.0[i] > 0),
            EllipticRule::Product(a, b, mid) => {
                let (w1, w2) = w.split_at(*mid);
                match datum.split_at(*mid) {
                    Some((d1, d2)) => a.holds(&d1, &w1) && b.holds(&d2, &w2),
                    None => false,
                }
            }
            EllipticRule::Custom(f) => f(w),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            EllipticRule::All => "all",
            EllipticRule::Nonzero => "nonzero",
            EllipticRule::Regular => "regular",
            EllipticRule::Product(..) => "product",
            EllipticRule::Custom(_) => "custom",
        }
    }

    pub fn parse(s: &str) -> Result<EllipticRule> {
        match s {
            "all" => Ok(EllipticRule::All),
            "nonzero" => Ok(EllipticRule::Nonzero),
            "regular" => Ok(EllipticRule::Regular),
            _ => Err(Error::Parse(format!("unknown elliptic rule {s:?}"))),
        }
    }
}

impl fmt::Debug for EllipticRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EllipticRule::Product(a, b, mid) => write!(f, "Product({a:?}, {b:?}, {mid})"),
            other => f.write_str(other.name()),
        }
    }
}

/// A real reductive group seen through `(K, d)`.
#[derive(Clone, Debug)]
pub struct GroupModel {
    pub name: String,
    pub compact: RootDatum,
    pub d: u32,
    pub elliptic: Option<EllipticRule>,
}

impl PartialEq for GroupModel {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.compact == other.compact && self.d == other.d
    }
}

impl GroupModel {
    pub fn new(name: impl Into<String>, compact: RootDatum, d: u32) -> Self {
        GroupModel {
            name: name.into(),
            compact,
            d,
            elliptic: None,
        }
    }

    /// `G = K`, where every irreducible is a discrete series representation.
    pub fn compact(k: RootDatum) -> Self {
        let name = k.label().to_string();
        GroupModel {
            name,
            compact: k,
            d: 0,
            elliptic: Some(EllipticRule::All),
        }
    }

    /// `SL(2,ℝ)`: `K = SO(2)`, `d = 2`, discrete series at every nonzero weight.
    pub fn sl2r() -> Self {
        GroupModel::new("SL(2,R)", RootDatum::torus(1), 2).with_elliptic(EllipticRule::Nonzero)
    }

    pub fn with_elliptic(mut self, rule: EllipticRule) -> Self {
        self.elliptic = Some(rule);
        self
    }

    pub fn product(&self, other: &GroupModel) -> GroupModel {
        let elliptic = match (&self.elliptic, &other.elliptic) {
            (Some(a), Some(b)) => Some(EllipticRule::Product(
                Box::new(a.clone()),
                Box::new(b.clone()),
                self.compact.rank(),
            )),
            _ => None,
        };
        GroupModel {
            name: format!("{} x {}", self.name, other.name),
            compact: self.compact.product(&other.compact),
            d: self.d + other.d,
            elliptic,
        }
    }

    pub fn is_strongly_elliptic(&self, lambda: &Weight) -> bool {
        match &self.elliptic {
            Some(rule) => rule.holds(&self.compact, lambda),
            None => self.d == 0,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "compact": self.compact.label(),
            "d": self.d,
        })
    }
}

fn same_model(a: &GroupModel, b: &GroupModel) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DatumMismatch(a.name.clone(), b.name.clone()))
    }
}

/// An element of `K_d(C*_r G)`: `Σ n_λ [λ]`.
#[derive(Clone, Debug, PartialEq)]
pub struct KTheoryClass {
    pub model: GroupModel,
    pub element: RKElement,
}

/// An element of `K^d(C*_r G)`: `Σ n_λ [λ]^*`, possibly infinite.
#[derive(Clone, Debug)]
pub struct KHomologyClass {
    pub model: GroupModel,
    pub series: FormalSeries,
}

impl KTheoryClass {
    pub fn degree(&self) -> u32 {
        self.model.d
    }

    /// The image of `K_d ⊂ K^d` under `[λ] ↦ [λ]^*`.
    pub fn to_khomology(&self) -> KHomologyClass {
        KHomologyClass {
            model: self.model.clone(),
            series: FormalSeries::from_rk(&self.element),
        }
    }
}

impl KHomologyClass {
    pub fn degree(&self) -> u32 {
        self.model.d
    }

    pub fn zero(model: GroupModel) -> Self {
        let series = FormalSeries::zero(model.compact.clone());
        KHomologyClass { model, series }
    }

    /// `[λ]^*`.
    pub fn generator(model: GroupModel, lambda: Weight) -> Result<Self> {
        let series = FormalSeries::delta(model.compact.clone(), lambda)?;
        Ok(KHomologyClass { model, series })
    }

    /// Evaluates the class on a `K_d` class: `⟨[λ]^*, [μ]⟩ = δ_{λμ}`.
    pub fn pair(&self, x: &KTheoryClass) -> Result<i64> {
        same_model(&self.model, &x.model)?;
        self.series.pair(&x.element)
    }

    pub fn to_json(&self, radius: Rational64) -> Value {
        json!({
            "model": self.model.to_json(),
            "series": self.series.truncate(radius).to_json(),
            "radius": crate::formalseries::radius_json(radius),
        })
    }
}

/// `DInd: R(K) → K_d(C*_r G)`, `[π_λ] ↦ [λ]`.
pub fn dirac_induction(model: &GroupModel, x: &RKElement) -> Result<KTheoryClass> {
    same_datum(&model.compact, &x.datum)?;
    Ok(KTheoryClass {
        model: model.clone(),
        element: x.clone(),
    })
}

/// `(DInd)^*: K^d(C*_r G) → R^{-∞}(K)`, `[λ]^* ↦ [π_λ]^*`.
pub fn dirac_pullback(c: &KHomologyClass) -> FormalSeries {
    c.series.clone()
}

/// Inverse of [`dirac_pullback`].
pub fn lift_series(model: &GroupModel, s: FormalSeries) -> Result<KHomologyClass> {
    same_datum(&model.compact, s.datum())?;
    Ok(KHomologyClass {
        model: model.clone(),
        series: s,
    })
}

fn max_norm(s: &FormalSeries) -> Option<Rational64> {
    let map = s.finite_support()?;
    Some(
        map.keys()
            .map(|w| s.datum().norm_sq_unchecked(w))
            .max()
            .unwrap_or_default(),
    )
}

/// Witness for `e` into `K₁ × K₂` of a product series, where `mid` is the
/// rank of `K₁`.
fn product_witness(a: &FormalSeries, b: &FormalSeries, e: &Embedding) -> Option<WitnessFn> {
    let mid = a.datum().rank();
    let map = e.map();
    let n = e.source().rank();

    // Δ(K) ⊂ K × K. If `a` is finite with max norm A, then ν ⊂ λ₁ ⊗ λ₂ with
    // ‖ν‖² ≤ r forces ‖λ₂‖ ≤ ‖λ₁‖ + ‖ν‖, so ‖(λ₁,λ₂)‖² ≤ A + (√A + √r)² ≤ 3A + 2r.
    let diagonal = a.datum() == b.datum()
        && e.source() == a.datum()
        && (0..n).all(|i| (0..2 * n).all(|j| map[i][j] == i64::from(j == i || j == i + n)));
    if diagonal || e.kind() == EmbeddingKind::Diagonal {
        let big_a = max_norm(a).or_else(|| max_norm(b))?;
        let three = Rational64::from_integer(3);
        let two = Rational64::from_integer(2);
        return Some(Arc::new(move |r| three * big_a + two * r));
    }

    // Block-diagonal: rows below `s` only see the first factor and the rest
    // only the second. A side with no rows is summed over completely, so it
    // must be finite.
    for s in 0..=n {
        let blocks_ok = (0..n).all(|i| (0..map[i].len()).all(|j| map[i][j] == 0 || ((i < s) == (j < mid))));
        if !blocks_ok {
            continue;
        }
        let side = |series: &FormalSeries, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>| -> Option<WitnessFn> {
            if rows.is_empty() {
                let m = max_norm(series)?;
                return Some(Arc::new(move |_| m));
            }
            let source = if rows.len() == n {
                e.source().clone()
            } else if rows.start == 0 {
                e.source().split_at(s)?.0
            } else {
                e.source().split_at(s)?.1
            };
            let sub_map = rows.map(|i| map[i][cols.clone()].to_vec()).collect();
            let sub = Embedding::new(source, series.datum().clone(), sub_map, EmbeddingKind::BlockSubgroup).ok()?;
            series.witness_for(&sub)
        };
        let total = a.datum().rank() + b.datum().rank();
        if let (Some(f), Some(g)) = (side(a, 0..s, 0..mid), side(b, s..n, mid..total)) {
            return Some(Arc::new(move |r| f(r) + g(r)));
        }
    }
    None
}

/// `[λ₁]^* × [λ₂]^* = [(λ₁, λ₂)]^*`, extended to series by
/// `c(λ₁, λ₂) = c₁(λ₁) c₂(λ₂)`. Degrees add.
pub fn external_product(c1: &KHomologyClass, c2: &KHomologyClass) -> KHomologyClass {
    let model = c1.model.product(&c2.model);
    KHomologyClass {
        series: series_product(&c1.series, &c2.series),
        model,
    }
}

/// The product of series underlying [`external_product`].
pub fn series_product(a: &FormalSeries, b: &FormalSeries) -> FormalSeries {
    let datum = a.datum().product(b.datum());
    if let (Some(x), Some(y)) = (a.finite_support(), b.finite_support()) {
        let terms = x
            .iter()
            .flat_map(|(w1, m1)| y.iter().map(move |(w2, m2)| (w1.concat(w2), m1 * m2)));
        return FormalSeries::finite(datum, terms).expect("products of dominant weights are dominant");
    }
    let mid = a.datum().rank();
    let (x, y) = (a.clone(), b.clone());
    let (wx, wy) = (a.clone(), b.clone());
    FormalSeries::from_oracle(datum, move |w| {
        let (w1, w2) = w.split_at(mid);
        let c1 = x.coefficient_unchecked(&w1);
        if c1 == 0 {
            0
        } else {
            c1 * y.coefficient_unchecked(&w2)
        }
    })
    .with_witnesses(Arc::new(move |e| product_witness(&wx, &wy, e)))
}

/// `DRes^G_{G'}`: restriction of the pulled-back series along `K' → K`,
/// lifted over `G'`. Exact on the window `normSq ≤ radius`, zero outside.
pub fn dirac_restriction(
    c: &KHomologyClass,
    target: &GroupModel,
    e: &Embedding,
    radius: Rational64,
) -> Result<KHomologyClass> {
    same_datum(e.target(), &c.model.compact)?;
    same_datum(e.source(), &target.compact)?;
    let restricted = branch_series(e, &dirac_pullback(c), radius)?;
    lift_series(target, restricted)
}

/// `a · b` with coefficient at `ν` equal to `Σ a(λ₁) b(λ₂) mult(ν; λ₁ ⊗ λ₂)`,
/// computed lazily via `mult(ν; λ₁ ⊗ λ₂) = mult(λ₂; λ₁* ⊗ ν)`.
pub fn module_action(a: &KTheoryClass, b: &KHomologyClass) -> Result<KHomologyClass> {
    same_model(&a.model, &b.model)?;
    let datum = b.model.compact.clone();
    let terms: Vec<(Weight, i64)> = a
        .element
        .terms()
        .iter()
        .map(|(l, &m)| (datum.dual_weight(l).expect("support is dominant"), m))
        .collect();
    let s = b.series.clone();
    let rd = datum.clone();
    let series = FormalSeries::from_oracle(datum, move |nu| {
        let mut total = 0;
        for (dual, m) in &terms {
            let product = tensor_decompose(&rd, dual, nu).expect("dominant inputs");
            for (l2, &k) in product.terms() {
                total += m * k * s.coefficient_unchecked(l2);
            }
        }
        total
    });
    Ok(KHomologyClass {
        model: b.model.clone(),
        series,
    })
}

/// `a · b := DRes^{G×G}_{Δ(G)}(a^* × b)`, exact on `normSq ≤ radius`.
pub fn module_action_via_restriction(a: &KTheoryClass, b: &KHomologyClass, radius: Rational64) -> Result<KHomologyClass> {
    same_model(&a.model, &b.model)?;
    let product = external_product(&a.to_khomology(), b);
    let diag = Embedding::diagonal(&b.model.compact);
    dirac_restriction(&product, &b.model, &diag, radius)
}

/// `[π^G_λ] = (−1)^{d/2} [λ]` for a strongly elliptic label. Returns the sign
/// and the corresponding multiple of `[λ]^*`.
pub fn discrete_series_class(model: &GroupModel, lambda: &Weight) -> Result<(i8, KHomologyClass)> {
    model.compact.require_dominant(lambda)?;
    if model.d % 2 == 1 {
        return Err(Error::OddDimension {
            name: model.name.clone(),
            d: model.d,
        });
    }
    if !model.is_strongly_elliptic(lambda) {
        return Err(Error::NotStronglyElliptic(format!("{lambda} in {}", model.name)));
    }
    let sign: i8 = if (model.d / 2).is_multiple_of(2) { 1 } else { -1 };
    let series = FormalSeries::delta(model.compact.clone(), lambda.clone())?.scale(i64::from(sign));
    Ok((
        sign,
        KHomologyClass {
            model: model.clone(),
            series,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::branch;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    fn rd(s: &str) -> RootDatum {
        RootDatum::parse(s).unwrap()
    }

    fn ones(datum: RootDatum) -> FormalSeries {
        FormalSeries::from_oracle(datum, |_| 1)
    }

    #[test]
    fn induction_is_relabelling() {
        let g = GroupModel::new("A1 (d=2)", rd("A1"), 2);
        let x = RKElement::from_terms(rd("A1"), [(w(&[2]), 2), (w(&[1]), -1)]).unwrap();
        let c = dirac_induction(&g, &x).unwrap();
        assert_eq!(c.element, x);
        assert_eq!(c.degree(), 2);
        assert!(dirac_induction(&g, &RKElement::zero(rd("T1"))).is_err());
        let star = c.to_khomology();
        assert_eq!(star.pair(&c).unwrap(), 5);
    }

    #[test]
    fn pullback_inverts_lift() {
        let g = GroupModel::compact(rd("A2"));
        let d = FormalSeries::delta(rd("A2"), w(&[1, 0])).unwrap();
        let c = lift_series(&g, d.clone()).unwrap();
        assert!(dirac_pullback(&c).equal_up_to(&d, r(6)).unwrap());
    }

    #[test]
    fn external_product_of_generators() {
        let g1 = GroupModel::new("G1", rd("A1"), 2);
        let g2 = GroupModel::new("G2", rd("A2"), 4);
        let a = KHomologyClass::generator(g1, w(&[1])).unwrap();
        let b = KHomologyClass::generator(g2, w(&[0, 2])).unwrap();
        let p = external_product(&a, &b);
        assert_eq!(p.degree(), 6);
        assert_eq!(p.series.finite_support().unwrap().len(), 1);
        assert_eq!(p.series.coefficient(&w(&[1, 0, 2])).unwrap(), 1);
    }

    #[test]
    fn external_product_of_oracles() {
        let a = KHomologyClass {
            model: GroupModel::compact(rd("A1")),
            series: ones(rd("A1")),
        };
        let t1 = FormalSeries::from_oracle(rd("T1"), |l| if l.0[0] >= 0 { l.0[0] + 1 } else { 0 });
        let b = KHomologyClass {
            model: GroupModel::compact(rd("T1")),
            series: t1,
        };
        let p = external_product(&a, &b);
        assert_eq!(p.series.coefficient(&w(&[2, 3])).unwrap(), 4);
        let z = external_product(&KHomologyClass::zero(a.model.clone()), &b);
        assert!(z.series.truncate(r(10)).nonzero().is_empty());
    }

    #[test]
    fn factor_restriction_recovers_series() {
        // (A1 all-ones) × δ_[0] on T1, restricted to the A1 factor.
        let a = KHomologyClass {
            model: GroupModel::compact(rd("A1")),
            series: ones(rd("A1")),
        };
        let b = KHomologyClass::generator(GroupModel::compact(rd("T1")), w(&[0])).unwrap();
        let p = external_product(&a, &b);
        let e = Embedding::factor(&rd("A1"), &rd("T1"), true);
        let back = dirac_restriction(&p, &a.model, &e, r(8)).unwrap();
        assert!(back.series.equal_up_to(&a.series, r(8)).unwrap());

        // Without a finite partner there is nothing to sum against.
        let q = external_product(&a, &a);
        let e = Embedding::factor(&rd("A1"), &rd("A1"), true);
        assert!(matches!(
            dirac_restriction(&q, &a.model, &e, r(2)),
            Err(Error::MissingWitness(_))
        ));
    }

    #[test]
    fn restriction_of_zero_is_zero() {
        let g = GroupModel::compact(rd("A1"));
        let e = Embedding::maximal_torus(&rd("A1"));
        let z = dirac_restriction(&KHomologyClass::zero(g), &GroupModel::compact(rd("T1")), &e, r(5)).unwrap();
        assert!(z.series.truncate(r(5)).nonzero().is_empty());
    }

    #[test]
    fn clebsch_gordan_action() {
        let g = GroupModel::compact(rd("A1"));
        let a = dirac_induction(&g, &RKElement::irreducible(rd("A1"), w(&[1])).unwrap()).unwrap();
        let b = KHomologyClass::generator(g.clone(), w(&[1])).unwrap();
        let got = module_action(&a, &b).unwrap().series.truncate(r(8)).nonzero();
        assert_eq!(got, [(w(&[0]), 1), (w(&[2]), 1)].into());
        let via = module_action_via_restriction(&a, &b, r(8)).unwrap();
        assert_eq!(via.series.truncate(r(8)).nonzero(), got);
    }

    #[test]
    fn action_on_all_ones() {
        let g = GroupModel::compact(rd("A1"));
        let a = dirac_induction(&g, &RKElement::irreducible(rd("A1"), w(&[1])).unwrap()).unwrap();
        let b = KHomologyClass {
            model: g.clone(),
            series: ones(rd("A1")),
        };
        let c = module_action(&a, &b).unwrap();
        for k in 0..8 {
            assert_eq!(c.series.coefficient(&w(&[k])).unwrap(), if k == 0 { 1 } else { 2 });
        }
        let unit = dirac_induction(&g, &RKElement::irreducible(rd("A1"), w(&[0])).unwrap()).unwrap();
        assert!(module_action(&unit, &b).unwrap().series.equal_up_to(&b.series, r(20)).unwrap());
        let via = module_action_via_restriction(&a, &b, r(12)).unwrap();
        assert!(via.series.equal_up_to(&c.series, r(12)).unwrap());
    }

    #[test]
    fn discrete_series_signs() {
        let g = GroupModel::new("A1 (d=2)", rd("A1"), 2).with_elliptic(EllipticRule::Regular);
        let (sign, c) = discrete_series_class(&g, &w(&[1])).unwrap();
        assert_eq!(sign, -1);
        assert_eq!(c.series.coefficient(&w(&[1])).unwrap(), -1);
        assert!(matches!(
            discrete_series_class(&g, &w(&[0])),
            Err(Error::NotStronglyElliptic(_))
        ));
        let odd = GroupModel::new("odd", rd("A1"), 3).with_elliptic(EllipticRule::All);
        assert!(matches!(discrete_series_class(&odd, &w(&[1])), Err(Error::OddDimension { .. })));
        let (s0, _) = discrete_series_class(&GroupModel::compact(rd("A1")), &w(&[0])).unwrap();
        assert_eq!(s0, 1);
        let g4 = GroupModel::new("d4", rd("A1"), 4).with_elliptic(EllipticRule::Nonzero);
        assert_eq!(discrete_series_class(&g4, &w(&[3])).unwrap().0, 1);

        let e = Embedding::maximal_torus(&rd("A1"));
        let res = dirac_restriction(&c, &GroupModel::sl2r(), &e, r(9)).unwrap();
        let expect = FormalSeries::from_rk(&branch(&e, &w(&[1])).unwrap().scale(-1));
        assert!(res.series.equal_up_to(&expect, r(9)).unwrap());
        assert_eq!(res.degree(), 2);
    }

    #[test]
    fn product_models_add_degrees() {
        let p = GroupModel::sl2r().product(&GroupModel::sl2r());
        assert_eq!(p.d, 4);
        assert_eq!(p.compact.label(), "T2");
        assert!(p.is_strongly_elliptic(&w(&[1, -1])));
        assert!(!p.is_strongly_elliptic(&w(&[1, 0])));
    }

    #[test]
    fn class_json() {
        let g = GroupModel::sl2r();
        let c = KHomologyClass::generator(g, w(&[1])).unwrap();
        let s = serde_json::to_string(&c.to_json(r(1))).unwrap();
        assert_eq!(
            s,
            r#"{"model":{"compact":"T1","d":2,"name":"SL(2,R)"},"radius":1,"series":{"radius":1,"terms":[{"mult":0,"weight":[-1]},{"mult":0,"weight":[0]},{"mult":1,"weight":[1]}]}}"#
        );
    }
}
