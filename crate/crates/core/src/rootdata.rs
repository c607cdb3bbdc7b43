//! Root data of compact connected groups: Cartan matrices, the invariant
//! form, Weyl group actions and dominant-chamber geometry.
//!
//! Weights are written in the fundamental-weight basis on semisimple
//! coordinates and as plain characters on torus coordinates. The simple
//! root `α_i` has coordinates given by row `i` of the Cartan matrix, where
//! `A_ij = ⟨α_i, α_j^∨⟩`. The invariant form is normalised so that short
//! roots of every simple factor have squared length 2; torus factors carry
//! the identity Gram matrix.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};

/// A weight in the coordinates of its root datum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    /// Concatenation `(λ₁, λ₂)` into a product lattice.
    pub fn concat(&self, other: &Weight) -> Weight {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Weight(v)
    }

    pub fn split_at(&self, mid: usize) -> (Weight, Weight) {
        let (a, b) = self.0.split_at(mid);
        (Weight(a.to_vec()), Weight(b.to_vec()))
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorKind {
    A,
    B,
    C,
    D,
    Torus,
}

/// One simple or torus factor of a product datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub kind: FactorKind,
    pub n: usize,
    pub offset: usize,
}

impl Factor {
    pub fn label(&self) -> String {
        let letter = match self.kind {
            FactorKind::A => "A",
            FactorKind::B => "B",
            FactorKind::C => "C",
            FactorKind::D => "D",
            FactorKind::Torus => "T",
        };
        format!("{letter}{}", self.n)
    }

    /// Gram matrix of the form on simple roots, short roots of length² 2.
    fn simple_root_form(&self) -> Vec<Vec<i64>> {
        let n = self.n;
        let mut b = vec![vec![0i64; n]; n];
        match self.kind {
            FactorKind::A => {
                for i in 0..n {
                    b[i][i] = 2;
                    if i + 1 < n {
                        b[i][i + 1] = -1;
                        b[i + 1][i] = -1;
                    }
                }
            }
            FactorKind::B if n == 1 => b[0][0] = 2,
            FactorKind::C if n == 1 => b[0][0] = 2,
            FactorKind::B => {
                for i in 0..n {
                    b[i][i] = if i + 1 < n { 4 } else { 2 };
                    if i + 1 < n {
                        b[i][i + 1] = -2;
                        b[i + 1][i] = -2;
                    }
                }
            }
            FactorKind::C => {
                for i in 0..n {
                    b[i][i] = if i + 1 < n { 2 } else { 4 };
                    if i + 1 < n {
                        let off = if i + 2 == n { -2 } else { -1 };
                        b[i][i + 1] = off;
                        b[i + 1][i] = off;
                    }
                }
            }
            FactorKind::D => {
                // D4: central node 1 joined to 0, 2, 3.
                for (i, row) in b.iter_mut().enumerate() {
                    row[i] = 2;
                }
                for j in [0, 2, 3] {
                    b[1][j] = -1;
                    b[j][1] = -1;
                }
            }
            FactorKind::Torus => {}
        }
        b
    }
}

fn parse_factor(s: &str) -> Result<(FactorKind, usize)> {
    let unknown = || Error::UnknownType(s.to_string());
    let mut chars = s.chars();
    let kind = match chars.next().ok_or_else(unknown)? {
        'A' => FactorKind::A,
        'B' => FactorKind::B,
        'C' => FactorKind::C,
        'D' => FactorKind::D,
        'T' => FactorKind::Torus,
        _ => return Err(unknown()),
    };
    let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
    let ok = match kind {
        FactorKind::A | FactorKind::Torus => (1..=4).contains(&n),
        FactorKind::B | FactorKind::C => (1..=3).contains(&n),
        FactorKind::D => n == 4,
    };
    if ok {
        Ok((kind, n))
    } else {
        Err(unknown())
    }
}

/// A compact connected group presented by its root datum.
#[derive(Clone, Debug)]
pub struct RootDatum {
    label: String,
    rank: usize,
    factors: Vec<Factor>,
    cartan: Vec<Vec<i64>>,
    form: RatMatrix,
    semisimple: Vec<usize>,
    // Inverse of the Cartan matrix restricted to semisimple coordinates.
    cartan_inverse: RatMatrix,
    positive_roots: Vec<Weight>,
    weyl_order: usize,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label && self.cartan == other.cartan && self.form == other.form
    }
}

impl Eq for RootDatum {}

impl RootDatum {
    /// Parses `"A2"`, `"T3"`, `"A1xT1"`, `"B2 x A1"`, …
    pub fn parse(spec: &str) -> Result<RootDatum> {
        let parts: Vec<&str> = spec.split('x').map(str::trim).collect();
        if parts.iter().any(|p| p.is_empty()) {
            return Err(Error::UnknownType(spec.to_string()));
        }
        let factors = parts
            .iter()
            .map(|p| parse_factor(p))
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::UnknownType(spec.to_string()))?;
        Ok(Self::from_factors(&factors))
    }

    pub fn torus(n: usize) -> RootDatum {
        Self::from_factors(&[(FactorKind::Torus, n)])
    }

    fn from_factors(spec: &[(FactorKind, usize)]) -> RootDatum {
        // Adjacent tori merge, so T1 x T1 and T2 are the same datum.
        let mut merged: Vec<(FactorKind, usize)> = Vec::new();
        for &(kind, n) in spec {
            match merged.last_mut() {
                Some((FactorKind::Torus, m)) if kind == FactorKind::Torus => *m += n,
                _ => merged.push((kind, n)),
            }
        }
        let mut factors = Vec::new();
        let mut offset = 0;
        for &(kind, n) in &merged {
            factors.push(Factor { kind, n, offset });
            offset += n;
        }
        let rank = offset;
        let label = factors.iter().map(Factor::label).collect::<Vec<_>>().join("x");

        let mut cartan = vec![vec![0i64; rank]; rank];
        let mut form = vec![vec![Rational64::zero(); rank]; rank];
        let mut semisimple = Vec::new();
        for f in &factors {
            let o = f.offset;
            if f.kind == FactorKind::Torus {
                for i in 0..f.n {
                    form[o + i][o + i] = Rational64::from_integer(1);
                }
                continue;
            }
            let b = f.simple_root_form();
            for i in 0..f.n {
                semisimple.push(o + i);
                for j in 0..f.n {
                    cartan[o + i][o + j] = 2 * b[i][j] / b[j][j];
                }
            }
            // G = D B⁻¹ D with D = diag(B_jj / 2).
            let b_inv = linalg::invert(&linalg::to_rational(&b)).expect("simple root form is definite");
            for i in 0..f.n {
                for j in 0..f.n {
                    let di = Rational64::new(b[i][i], 2);
                    let dj = Rational64::new(b[j][j], 2);
                    form[o + i][o + j] = di * b_inv[i][j] * dj;
                }
            }
        }
        let restricted: Vec<Vec<i64>> = semisimple
            .iter()
            .map(|&i| semisimple.iter().map(|&j| cartan[i][j]).collect())
            .collect();
        let cartan_inverse = linalg::invert(&linalg::to_rational(&restricted)).unwrap_or_default();

        let mut rd = RootDatum {
            label,
            rank,
            factors,
            cartan,
            form,
            semisimple,
            cartan_inverse,
            positive_roots: Vec::new(),
            weyl_order: 1,
        };
        rd.positive_roots = rd.compute_positive_roots();
        rd.weyl_order = rd.weyl_orbit(&rd.weyl_vector()).len();
        rd
    }

    /// Direct sum: rank adds, simple roots concatenate in block form.
    pub fn product(&self, other: &RootDatum) -> RootDatum {
        let spec: Vec<(FactorKind, usize)> = self
            .factors
            .iter()
            .chain(&other.factors)
            .map(|f| (f.kind, f.n))
            .collect();
        Self::from_factors(&spec)
    }

    /// Splits `K₁ × K₂` at a factor boundary of rank `mid`, both sides nonempty.
    pub fn split_at(&self, mid: usize) -> Option<(RootDatum, RootDatum)> {
        if mid == 0 || mid >= self.rank {
            return None;
        }
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for f in &self.factors {
            if f.offset + f.n <= mid {
                left.push((f.kind, f.n));
            } else if f.offset >= mid {
                right.push((f.kind, f.n));
            } else if f.kind == FactorKind::Torus {
                left.push((f.kind, mid - f.offset));
                right.push((f.kind, f.offset + f.n - mid));
            } else {
                return None;
            }
        }
        Some((Self::from_factors(&left), Self::from_factors(&right)))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn form_matrix(&self) -> &RatMatrix {
        &self.form
    }

    /// Coordinates carrying a simple root.
    pub fn semisimple_coords(&self) -> &[usize] {
        &self.semisimple
    }

    pub fn is_torus(&self) -> bool {
        self.semisimple.is_empty()
    }

    pub fn simple_roots(&self) -> Vec<Weight> {
        self.semisimple.iter().map(|&i| Weight(self.cartan[i].clone())).collect()
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    pub fn weyl_group_order(&self) -> usize {
        self.weyl_order
    }

    /// ρ: 1 on every semisimple coordinate, 0 on torus coordinates.
    pub fn weyl_vector(&self) -> Weight {
        let mut rho = vec![0; self.rank];
        for &i in &self.semisimple {
            rho[i] = 1;
        }
        Weight(rho)
    }

    pub fn check_dim(&self, w: &Weight) -> Result<()> {
        if w.len() == self.rank {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rank,
                got: w.len(),
            })
        }
    }

    pub fn is_dominant(&self, w: &Weight) -> Result<bool> {
        self.check_dim(w)?;
        Ok(self.is_dominant_unchecked(w))
    }

    pub(crate) fn is_dominant_unchecked(&self, w: &Weight) -> bool {
        self.semisimple.iter().all(|&i| w.0[i] >= 0)
    }

    pub(crate) fn require_dominant(&self, w: &Weight) -> Result<()> {
        if self.is_dominant(w)? {
            Ok(())
        } else {
            Err(Error::NotDominant(w.to_string()))
        }
    }

    pub fn inner_product(&self, a: &Weight, b: &Weight) -> Result<Rational64> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        Ok(linalg::bilinear(&self.form, &a.0, &b.0))
    }

    pub fn norm_sq(&self, w: &Weight) -> Result<Rational64> {
        self.inner_product(w, w)
    }

    pub(crate) fn norm_sq_unchecked(&self, w: &Weight) -> Rational64 {
        linalg::bilinear(&self.form, &w.0, &w.0)
    }

    /// Simple reflection `s_k` for the `k`-th simple root (index into
    /// [`semisimple_coords`](Self::semisimple_coords)).
    pub fn reflect(&self, k: usize, w: &Weight) -> Weight {
        let i = self.semisimple[k];
        let c = w.0[i];
        if c == 0 {
            return w.clone();
        }
        Weight(w.0.iter().zip(&self.cartan[i]).map(|(x, a)| x - c * a).collect())
    }

    /// Dominant representative of the orbit of `w`, with the parity of the
    /// number of reflections used (`true` for odd).
    pub fn to_dominant(&self, w: &Weight) -> (Weight, bool) {
        let mut v = w.clone();
        let mut odd = false;
        while let Some(k) = self.semisimple.iter().position(|&i| v.0[i] < 0) {
            v = self.reflect(k, &v);
            odd = !odd;
        }
        (v, odd)
    }

    pub fn weyl_orbit(&self, w: &Weight) -> BTreeSet<Weight> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.clone());
        queue.push_back(w.clone());
        while let Some(v) = queue.pop_front() {
            for k in 0..self.semisimple.len() {
                let r = self.reflect(k, &v);
                if seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        seen
    }

    /// Orbit of a regular weight paired with `det(σ)` of the element
    /// reaching it. Only meaningful when `w` has trivial stabiliser.
    pub(crate) fn signed_regular_orbit(&self, w: &Weight) -> Vec<(Weight, i64)> {
        let mut seen = std::collections::BTreeMap::new();
        let mut queue = VecDeque::new();
        seen.insert(w.clone(), 1i64);
        queue.push_back(w.clone());
        while let Some(v) = queue.pop_front() {
            let s = seen[&v];
            for k in 0..self.semisimple.len() {
                let r = self.reflect(k, &v);
                if !seen.contains_key(&r) {
                    seen.insert(r.clone(), -s);
                    queue.push_back(r);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Dot action straightening: returns `(w', det σ)` with
    /// `σ(w + ρ) = w' + ρ` dominant, or sign 0 when `w + ρ` is singular.
    pub fn straighten(&self, w: &Weight) -> (Weight, i8) {
        let rho = self.weyl_vector();
        let (v, odd) = self.to_dominant(&w.add(&rho));
        let singular = self.semisimple.iter().any(|&i| v.0[i] == 0);
        let sign = if singular {
            0
        } else if odd {
            -1
        } else {
            1
        };
        (v.sub(&rho), sign)
    }

    /// `−w₀λ`, the highest weight of the dual representation.
    pub fn dual_weight(&self, lambda: &Weight) -> Result<Weight> {
        self.require_dominant(lambda)?;
        Ok(self.to_dominant(&lambda.neg()).0)
    }

    /// Coordinates of `w` in the basis of simple roots, or `None` when `w`
    /// has a nonzero torus component.
    pub fn root_coordinates(&self, w: &Weight) -> Option<Vec<Rational64>> {
        for (i, &c) in w.0.iter().enumerate() {
            if c != 0 && !self.semisimple.contains(&i) {
                return None;
            }
        }
        let n = self.semisimple.len();
        Some(
            (0..n)
                .map(|j| {
                    self.semisimple
                        .iter()
                        .enumerate()
                        .fold(Rational64::zero(), |acc, (k, &i)| {
                            acc + Rational64::from_integer(w.0[i]) * self.cartan_inverse[k][j]
                        })
                })
                .collect(),
        )
    }

    /// `true` when `w` is a nonnegative integer combination of simple roots.
    pub fn in_positive_root_cone(&self, w: &Weight) -> bool {
        self.root_coordinates(w)
            .is_some_and(|c| c.iter().all(|x| !x.is_negative() && x.is_integer()))
    }

    fn compute_positive_roots(&self) -> Vec<Weight> {
        let mut roots = BTreeSet::new();
        for alpha in self.simple_roots() {
            for beta in self.weyl_orbit(&alpha) {
                if self.in_positive_root_cone(&beta) {
                    roots.insert(beta);
                }
            }
        }
        roots.into_iter().collect()
    }

    /// Dominant weights with `normSq ≤ radius`, sorted lexicographically.
    pub fn dominant_weights_up_to(&self, radius: Rational64) -> Vec<Weight> {
        let mut out = Vec::new();
        if radius.is_negative() {
            return out;
        }
        let mut current = vec![0i64; self.rank];
        self.enumerate_window(0, &mut current, radius, &mut out);
        out.sort();
        out
    }

    // Every entry of the Gram matrix is nonnegative on semisimple blocks and
    // torus blocks are orthonormal, so the norm of a partial assignment only
    // grows as coordinates move away from zero.
    fn enumerate_window(&self, idx: usize, cur: &mut Vec<i64>, radius: Rational64, out: &mut Vec<Weight>) {
        if idx == self.rank {
            out.push(Weight(cur.clone()));
            return;
        }
        let torus = !self.semisimple.contains(&idx);
        let directions: &[i64] = if torus { &[1, -1] } else { &[1] };
        cur[idx] = 0;
        if linalg::bilinear(&self.form, cur, cur) <= radius {
            self.enumerate_window(idx + 1, cur, radius, out);
        }
        for &dir in directions {
            let mut t = 1;
            loop {
                cur[idx] = dir * t;
                if linalg::bilinear(&self.form, cur, cur) > radius {
                    break;
                }
                self.enumerate_window(idx + 1, cur, radius, out);
                t += 1;
            }
        }
        cur[idx] = 0;
    }

    pub fn to_json(&self) -> RootDatumJson {
        RootDatumJson {
            label: self.label.clone(),
            rank: self.rank,
            cartan: self.cartan.clone(),
            form: self
                .form
                .iter()
                .map(|row| row.iter().map(|q| [*q.numer(), *q.denom()]).collect())
                .collect(),
        }
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Wire form: `{"label", "rank", "cartan", "form": [[[num, den]]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatumJson {
    pub label: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub form: Vec<Vec<[i64; 2]>>,
}

impl TryFrom<RootDatumJson> for RootDatum {
    type Error = Error;

    fn try_from(j: RootDatumJson) -> Result<RootDatum> {
        let rd = RootDatum::parse(&j.label)?;
        if rd.to_json() != j {
            return Err(Error::Parse(format!(
                "root datum data for {} does not match its label",
                j.label
            )));
        }
        Ok(rd)
    }
}

impl Serialize for RootDatum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RootDatum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Label(String),
            Full(RootDatumJson),
        }
        let parsed = match Repr::deserialize(deserializer)? {
            Repr::Label(s) => RootDatum::parse(&s),
            Repr::Full(j) => RootDatum::try_from(j),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn a1_basic_data() {
        let rd = RootDatum::parse("A1").unwrap();
        assert_eq!(rd.rank(), 1);
        assert_eq!(rd.cartan_matrix(), &[vec![2]]);
        assert_eq!(rd.norm_sq(&w(&[1])).unwrap(), q(1, 2));
        assert_eq!(rd.norm_sq(&w(&[2])).unwrap(), q(2, 1));
        assert_eq!(rd.weyl_group_order(), 2);
    }

    #[test]
    fn torus_has_no_walls() {
        let rd = RootDatum::parse("T2").unwrap();
        assert_eq!(rd.rank(), 2);
        assert!(rd.simple_roots().is_empty());
        assert!(rd.is_dominant(&w(&[-5, 3])).unwrap());
        assert_eq!(rd.weyl_orbit(&w(&[1, 1])).len(), 1);
        assert!(RootDatum::parse("T1").unwrap().is_dominant(&w(&[-5])).unwrap());
    }

    #[test]
    fn split_and_merge() {
        let rd = RootDatum::parse("A1xT1xT1").unwrap();
        assert_eq!(rd.label(), "A1xT2");
        let (l, r) = rd.split_at(2).unwrap();
        assert_eq!((l.label(), r.label()), ("A1xT1", "T1"));
        assert!(RootDatum::parse("A2").unwrap().split_at(1).is_none());
        assert!(rd.split_at(0).is_none());
    }

    #[test]
    fn block_sum_cartan() {
        let rd = RootDatum::parse("A1xA1").unwrap();
        assert_eq!(rd.cartan_matrix(), &[vec![2, 0], vec![0, 2]]);
        assert_eq!(rd, RootDatum::parse("A1").unwrap().product(&RootDatum::parse("A1").unwrap()));
        let mixed = RootDatum::parse("A1 x T1").unwrap();
        assert_eq!(mixed.label(), "A1xT1");
        assert_eq!(mixed.inner_product(&w(&[1, 3]), &w(&[1, 2])).unwrap(), q(1, 2) + q(6, 1));
    }

    #[test]
    fn known_cartan_matrices() {
        let b2 = RootDatum::parse("B2").unwrap();
        assert_eq!(b2.cartan_matrix(), &[vec![2, -2], vec![-1, 2]]);
        let c3 = RootDatum::parse("C3").unwrap();
        assert_eq!(c3.cartan_matrix(), &[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]);
        let d4 = RootDatum::parse("D4").unwrap();
        assert_eq!(d4.cartan_matrix()[1], vec![-1, 2, -1, -1]);
        assert_eq!(d4.positive_roots().len(), 12);
        assert_eq!(d4.weyl_group_order(), 192);
        assert_eq!(RootDatum::parse("A4").unwrap().weyl_group_order(), 120);
        assert_eq!(RootDatum::parse("B3").unwrap().weyl_group_order(), 48);
        assert_eq!(RootDatum::parse("C3").unwrap().positive_roots().len(), 9);
        assert_eq!(RootDatum::parse("A3").unwrap().positive_roots().len(), 6);
    }

    #[test]
    fn short_roots_have_length_two() {
        for label in ["A3", "B3", "C3", "D4", "B2", "C2"] {
            let rd = RootDatum::parse(label).unwrap();
            let min = rd
                .positive_roots()
                .iter()
                .map(|r| rd.norm_sq(r).unwrap())
                .min()
                .unwrap();
            assert_eq!(min, q(2, 1), "{label}");
        }
    }

    #[test]
    fn unsupported_types_are_rejected() {
        for bad in ["E8", "A5", "D3", "B4", "T0", "", "A1x", "a1", "G2"] {
            assert!(matches!(RootDatum::parse(bad), Err(Error::UnknownType(_))), "{bad}");
        }
    }

    #[test]
    fn dominance_and_dimension_checks() {
        let a1 = RootDatum::parse("A1").unwrap();
        assert!(a1.is_dominant(&w(&[3])).unwrap());
        assert!(!a1.is_dominant(&w(&[-1])).unwrap());
        assert_eq!(
            a1.is_dominant(&w(&[1, 2])),
            Err(Error::DimensionMismatch { expected: 1, got: 2 })
        );
    }

    #[test]
    fn orbits() {
        let a1 = RootDatum::parse("A1").unwrap();
        let orbit: Vec<_> = a1.weyl_orbit(&w(&[2])).into_iter().collect();
        assert_eq!(orbit, vec![w(&[-2]), w(&[2])]);
        let a2 = RootDatum::parse("A2").unwrap();
        assert_eq!(a2.weyl_orbit(&w(&[1, 0])).len(), 3);
        assert_eq!(a2.weyl_orbit(&w(&[1, 1])).len(), 6);
    }

    #[test]
    fn straightening_in_sl2() {
        let a1 = RootDatum::parse("A1").unwrap();
        assert_eq!(a1.straighten(&w(&[0])), (w(&[0]), 1));
        assert_eq!(a1.straighten(&w(&[-1])).1, 0);
        assert_eq!(a1.straighten(&w(&[-2])), (w(&[0]), -1));
        assert_eq!(a1.straighten(&w(&[-5])), (w(&[3]), -1));
    }

    #[test]
    fn dual_weights() {
        let a1 = RootDatum::parse("A1").unwrap();
        assert_eq!(a1.dual_weight(&w(&[3])).unwrap(), w(&[3]));
        let a2 = RootDatum::parse("A2").unwrap();
        assert_eq!(a2.dual_weight(&w(&[1, 0])).unwrap(), w(&[0, 1]));
        let t1 = RootDatum::parse("T1").unwrap();
        assert_eq!(t1.dual_weight(&w(&[4])).unwrap(), w(&[-4]));
        assert!(matches!(a1.dual_weight(&w(&[-1])), Err(Error::NotDominant(_))));
        let d4 = RootDatum::parse("D4").unwrap();
        assert_eq!(d4.dual_weight(&w(&[1, 0, 2, 3])).unwrap(), w(&[1, 0, 2, 3]));
        let a3 = RootDatum::parse("A3").unwrap();
        assert_eq!(a3.dual_weight(&w(&[1, 2, 3])).unwrap(), w(&[3, 2, 1]));
    }

    #[test]
    fn windows() {
        let a1 = RootDatum::parse("A1").unwrap();
        assert_eq!(a1.dominant_weights_up_to(q(2, 1)), vec![w(&[0]), w(&[1]), w(&[2])]);
        let t1 = RootDatum::parse("T1").unwrap();
        assert_eq!(t1.dominant_weights_up_to(q(1, 1)), vec![w(&[-1]), w(&[0]), w(&[1])]);
        for label in ["A2", "B3", "T3", "A1xT1", "D4"] {
            let rd = RootDatum::parse(label).unwrap();
            assert_eq!(rd.dominant_weights_up_to(Rational64::zero()), vec![Weight::zero(rd.rank())]);
        }
    }

    #[test]
    fn window_matches_box_enumeration() {
        for label in ["A2", "B2", "C2", "A1xT1", "T2"] {
            let rd = RootDatum::parse(label).unwrap();
            let r = q(7, 1);
            let mut brute = Vec::new();
            for a in -8..=8 {
                for b in -8..=8 {
                    let v = w(&[a, b]);
                    if rd.is_dominant(&v).unwrap() && rd.norm_sq(&v).unwrap() <= r {
                        brute.push(v);
                    }
                }
            }
            brute.sort();
            assert_eq!(rd.dominant_weights_up_to(r), brute, "{label}");
        }
    }

    #[test]
    fn json_round_trip() {
        let rd = RootDatum::parse("B2xT1").unwrap();
        let s = serde_json::to_string(&rd).unwrap();
        assert!(s.contains("\"form\":[[[2,1],[1,1],[0,1]]"));
        let back: RootDatum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, rd);
        let from_label: RootDatum = serde_json::from_str("\"A2\"").unwrap();
        assert_eq!(from_label.rank(), 2);
        let tampered = s.replace("\"cartan\":[[2,-2,0]", "\"cartan\":[[2,-1,0]");
        assert!(serde_json::from_str::<RootDatum>(&tampered).is_err());
    }
}
