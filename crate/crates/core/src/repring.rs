//! Characters and the representation ring `R(K)`.
//!
//! Weight multiplicities come from Freudenthal's recursion, dimensions from
//! Weyl's product formula, and tensor products from Klimyk's rule. The
//! convolution of characters followed by [`decompose_character`] gives a
//! second, independent route to tensor products.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{RootDatum, Weight};

/// A finite integer-valued function on weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub datum: RootDatum,
    terms: BTreeMap<Weight, i64>,
}

/// A virtual representation: integer multiplicities on dominant weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RKElement {
    pub datum: RootDatum,
    terms: BTreeMap<Weight, i64>,
}

/// One `{"weight": [...], "mult": n}` entry of the wire format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightMult {
    pub weight: Weight,
    pub mult: i64,
}

fn add_term(terms: &mut BTreeMap<Weight, i64>, w: Weight, m: i64) {
    if m == 0 {
        return;
    }
    match terms.entry(w) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += m;
            if *e.get() == 0 {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            e.insert(m);
        }
    }
}

fn to_wire(terms: &BTreeMap<Weight, i64>) -> Vec<WeightMult> {
    terms
        .iter()
        .map(|(w, &m)| WeightMult {
            weight: w.clone(),
            mult: m,
        })
        .collect()
}

impl Character {
    pub fn new(datum: RootDatum) -> Self {
        Character {
            datum,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(datum: RootDatum, terms: impl IntoIterator<Item = (Weight, i64)>) -> Result<Self> {
        let mut c = Character::new(datum);
        for (w, m) in terms {
            c.datum.check_dim(&w)?;
            add_term(&mut c.terms, w, m);
        }
        Ok(c)
    }

    pub fn terms(&self) -> &BTreeMap<Weight, i64> {
        &self.terms
    }

    pub fn get(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn add_weight(&mut self, w: Weight, m: i64) {
        add_term(&mut self.terms, w, m);
    }

    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }

    /// First weight (in lexicographic order) where the multiplicity is not
    /// constant along a simple reflection, if any.
    pub fn weyl_defect(&self) -> Option<Weight> {
        let rd = &self.datum;
        for (w, &m) in &self.terms {
            for k in 0..rd.semisimple_coords().len() {
                if self.get(&rd.reflect(k, w)) != m {
                    return Some(w.clone());
                }
            }
        }
        None
    }

    pub fn is_weyl_invariant(&self) -> bool {
        self.weyl_defect().is_none()
    }

    /// Pointwise convolution: the character of the tensor product.
    pub fn product(&self, other: &Character) -> Result<Character> {
        same_datum(&self.datum, &other.datum)?;
        let mut out = Character::new(self.datum.clone());
        for (a, &ma) in &self.terms {
            for (b, &mb) in &other.terms {
                out.add_weight(a.add(b), ma * mb);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Character) -> Result<Character> {
        same_datum(&self.datum, &other.datum)?;
        let mut out = self.clone();
        for (w, &m) in &other.terms {
            out.add_weight(w.clone(), m);
        }
        Ok(out)
    }

    pub fn to_wire(&self) -> Vec<WeightMult> {
        to_wire(&self.terms)
    }
}

impl RKElement {
    pub fn zero(datum: RootDatum) -> Self {
        RKElement {
            datum,
            terms: BTreeMap::new(),
        }
    }

    /// The class `[π_λ]` of an irreducible.
    pub fn irreducible(datum: RootDatum, lambda: Weight) -> Result<Self> {
        datum.require_dominant(&lambda)?;
        let mut x = RKElement::zero(datum);
        x.terms.insert(lambda, 1);
        Ok(x)
    }

    pub fn from_terms(datum: RootDatum, terms: impl IntoIterator<Item = (Weight, i64)>) -> Result<Self> {
        let mut x = RKElement::zero(datum);
        for (w, m) in terms {
            x.datum.require_dominant(&w)?;
            add_term(&mut x.terms, w, m);
        }
        Ok(x)
    }

    pub fn terms(&self) -> &BTreeMap<Weight, i64> {
        &self.terms
    }

    pub fn get(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_unchecked(&mut self, w: Weight, m: i64) {
        add_term(&mut self.terms, w, m);
    }

    pub fn add(&self, other: &RKElement) -> Result<RKElement> {
        same_datum(&self.datum, &other.datum)?;
        let mut out = self.clone();
        for (w, &m) in &other.terms {
            out.add_unchecked(w.clone(), m);
        }
        Ok(out)
    }

    pub fn scale(&self, n: i64) -> RKElement {
        let mut out = RKElement::zero(self.datum.clone());
        for (w, &m) in &self.terms {
            out.add_unchecked(w.clone(), n * m);
        }
        out
    }

    /// Ring product, extending [`tensor_decompose`] bilinearly.
    pub fn tensor(&self, other: &RKElement) -> Result<RKElement> {
        same_datum(&self.datum, &other.datum)?;
        let mut out = RKElement::zero(self.datum.clone());
        for (a, &ma) in &self.terms {
            for (b, &mb) in &other.terms {
                let t = tensor_decompose(&self.datum, a, b)?;
                for (w, &m) in &t.terms {
                    out.add_unchecked(w.clone(), ma * mb * m);
                }
            }
        }
        Ok(out)
    }

    /// Virtual dimension `Σ mult · dim`.
    pub fn dimension(&self) -> i64 {
        self.terms
            .iter()
            .map(|(w, &m)| m * dimension(&self.datum, w).expect("keys are dominant") as i64)
            .sum()
    }

    pub fn character(&self) -> Character {
        let mut c = Character::new(self.datum.clone());
        for (w, &m) in &self.terms {
            let chi = weight_multiplicities(&self.datum, w).expect("keys are dominant");
            for (v, &k) in chi.terms() {
                c.add_weight(v.clone(), m * k);
            }
        }
        c
    }

    pub fn to_wire(&self) -> Vec<WeightMult> {
        to_wire(&self.terms)
    }
}

pub(crate) fn same_datum(a: &RootDatum, b: &RootDatum) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DatumMismatch(a.label().to_string(), b.label().to_string()))
    }
}

/// Dominant weights `μ ≤ λ`, reached by subtracting positive roots while
/// staying dominant.
fn dominant_weights_below(rd: &RootDatum, lambda: &Weight) -> Vec<Weight> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(lambda.clone());
    queue.push_back(lambda.clone());
    while let Some(v) = queue.pop_front() {
        for alpha in rd.positive_roots() {
            let next = v.sub(alpha);
            if rd.is_dominant_unchecked(&next) && !seen.contains(&next) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    seen.into_iter().collect()
}

fn height(rd: &RootDatum, w: &Weight) -> Rational64 {
    rd.root_coordinates(w)
        .map(|c| c.into_iter().fold(Rational64::zero(), |a, b| a + b))
        .unwrap_or_default()
}

/// Full character of `π_λ` via Freudenthal's recursion on dominant weights.
pub fn weight_multiplicities(rd: &RootDatum, lambda: &Weight) -> Result<Character> {
    rd.require_dominant(lambda)?;
    let rho = rd.weyl_vector();
    let mut dominant = dominant_weights_below(rd, lambda);
    dominant.sort_by_key(|mu| height(rd, &lambda.sub(mu)));

    let lr = lambda.add(&rho);
    let top = rd.norm_sq_unchecked(&lr);
    let mut mult: BTreeMap<Weight, i64> = BTreeMap::new();
    for mu in &dominant {
        if mu == lambda {
            mult.insert(mu.clone(), 1);
            continue;
        }
        let mut sum = Rational64::zero();
        for alpha in rd.positive_roots() {
            let mut k = 1;
            loop {
                let shifted = mu.add(&alpha.scaled(k));
                let rep = rd.to_dominant(&shifted).0;
                let Some(&m) = mult.get(&rep) else { break };
                if m != 0 {
                    let ip = rd.inner_product(&shifted, alpha)?;
                    sum += Rational64::from_integer(m) * ip;
                }
                k += 1;
            }
        }
        let denom = top - rd.norm_sq_unchecked(&mu.add(&rho));
        let value = sum * Rational64::from_integer(2) / denom;
        debug_assert!(value.is_integer(), "Freudenthal produced {value}");
        mult.insert(mu.clone(), value.to_integer());
    }

    let mut chi = Character::new(rd.clone());
    for (mu, &m) in &mult {
        if m != 0 {
            for w in rd.weyl_orbit(mu) {
                chi.terms.insert(w, m);
            }
        }
    }
    Ok(chi)
}

/// Weyl's dimension formula `Π_{α>0} (λ+ρ, α) / (ρ, α)`.
pub fn dimension(rd: &RootDatum, lambda: &Weight) -> Result<u64> {
    rd.require_dominant(lambda)?;
    let rho = rd.weyl_vector();
    let lr = lambda.add(&rho);
    let mut d = Rational64::one();
    for alpha in rd.positive_roots() {
        d *= rd.inner_product(&lr, alpha)? / rd.inner_product(&rho, alpha)?;
    }
    debug_assert!(d.is_integer());
    Ok(d.to_integer() as u64)
}

/// `π_λ ⊗ π_μ` by Klimyk's rule: each weight `ν` of `π_μ` contributes its
/// multiplicity, with sign, at the straightened `λ + ν`.
pub fn tensor_decompose(rd: &RootDatum, lambda: &Weight, mu: &Weight) -> Result<RKElement> {
    rd.require_dominant(lambda)?;
    rd.require_dominant(mu)?;
    let chi = weight_multiplicities(rd, mu)?;
    let mut out = RKElement::zero(rd.clone());
    for (nu, &m) in chi.terms() {
        let (w, sign) = rd.straighten(&lambda.add(nu));
        if sign != 0 {
            out.add_unchecked(w, i64::from(sign) * m);
        }
    }
    debug_assert!(out.terms.values().all(|&m| m > 0));
    Ok(out)
}

/// Inverse of the character map on Weyl-invariant characters: strips the
/// dominant term of largest norm until nothing is left.
pub fn decompose_character(rd: &RootDatum, c: &Character) -> Result<RKElement> {
    same_datum(rd, &c.datum)?;
    if let Some(w) = c.weyl_defect() {
        return Err(Error::NotWeylInvariant(w.to_string()));
    }
    let mut rest = c.terms.clone();
    let mut out = RKElement::zero(rd.clone());
    loop {
        let top = rest
            .iter()
            .filter(|(w, _)| rd.is_dominant_unchecked(w))
            .map(|(w, &m)| (rd.norm_sq_unchecked(w), w.clone(), m))
            .max_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        let Some((_, lambda, m)) = top else { break };
        out.add_unchecked(lambda.clone(), m);
        for (w, k) in weight_multiplicities(rd, &lambda)?.terms {
            add_term(&mut rest, w, -m * k);
        }
    }
    // A Weyl-invariant character always has a dominant weight in its support.
    debug_assert!(rest.is_empty());
    Ok(out)
}

/// Contragredient: relabels every `λ` by `−w₀λ`.
pub fn dual_rk(x: &RKElement) -> RKElement {
    let mut out = RKElement::zero(x.datum.clone());
    for (w, &m) in &x.terms {
        out.add_unchecked(x.datum.dual_weight(w).expect("keys are dominant"), m);
    }
    out
}
