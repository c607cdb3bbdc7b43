//! Pointed-cone certificates: an integer functional `ξ` with `⟨ξ, v⟩ > 0` for
//! every vector in a finite list, found exactly by Fourier–Motzkin
//! elimination on the system `⟨ξ, v⟩ ≥ 1`.

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

#[derive(Clone, PartialEq)]
struct Constraint {
    coeffs: Vec<Rational64>,
    rhs: Rational64,
}

impl Constraint {
    fn normalized(mut self) -> Self {
        let scale = self
            .coeffs
            .iter()
            .map(|c| c.abs())
            .fold(Rational64::zero(), |a, b| if b > a { b } else { a });
        if !scale.is_zero() {
            for c in &mut self.coeffs {
                *c /= scale;
            }
            self.rhs /= scale;
        }
        self
    }
}

fn dedup(constraints: Vec<Constraint>) -> Vec<Constraint> {
    let mut out: Vec<Constraint> = Vec::with_capacity(constraints.len());
    for c in constraints {
        match out.iter_mut().find(|o| o.coeffs == c.coeffs) {
            Some(o) => {
                if c.rhs > o.rhs {
                    o.rhs = c.rhs;
                }
            }
            None => out.push(c),
        }
    }
    out
}

/// Returns an integer vector `ξ` of length `dim` with `⟨ξ, v⟩ ≥ 1` for all `v`,
/// or `None` when no open half-space contains every vector (in particular
/// when some vector is zero).
pub fn half_space_certificate(vectors: &[Vec<i64>], dim: usize) -> Option<Vec<i64>> {
    if vectors.is_empty() {
        return Some(vec![0; dim]);
    }
    let initial: Vec<Constraint> = vectors
        .iter()
        .map(|v| {
            Constraint {
                coeffs: v.iter().map(|&x| Rational64::from_integer(x)).collect(),
                rhs: Rational64::from_integer(1),
            }
            .normalized()
        })
        .collect();

    // stages[k] only involves variables 0..=k.
    let mut stages: Vec<Vec<Constraint>> = vec![Vec::new(); dim];
    let mut current = dedup(initial);
    for k in (0..dim).rev() {
        stages[k] = current.clone();
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in current {
            if c.coeffs[k].is_positive() {
                pos.push(c);
            } else if c.coeffs[k].is_negative() {
                neg.push(c);
            } else {
                rest.push(c);
            }
        }
        for p in &pos {
            for q in &neg {
                let (ap, aq) = (p.coeffs[k], -q.coeffs[k]);
                let coeffs: Vec<Rational64> = p
                    .coeffs
                    .iter()
                    .zip(&q.coeffs)
                    .map(|(x, y)| aq * x + ap * y)
                    .collect();
                rest.push(
                    Constraint {
                        coeffs,
                        rhs: aq * p.rhs + ap * q.rhs,
                    }
                    .normalized(),
                );
            }
        }
        current = dedup(rest);
    }
    // With every variable eliminated the remaining rows read 0 ≥ rhs.
    if current.iter().any(|c| c.rhs.is_positive()) {
        return None;
    }

    let mut xi: Vec<Rational64> = vec![Rational64::zero(); dim];
    for k in 0..dim {
        let mut lower: Option<Rational64> = None;
        let mut upper: Option<Rational64> = None;
        for c in &stages[k] {
            let a = c.coeffs[k];
            if a.is_zero() {
                continue;
            }
            let residual = (0..k).fold(c.rhs, |acc, i| acc - c.coeffs[i] * xi[i]);
            let bound = residual / a;
            if a.is_positive() {
                lower = Some(lower.map_or(bound, |l| if bound > l { bound } else { l }));
            } else {
                upper = Some(upper.map_or(bound, |u| if bound < u { bound } else { u }));
            }
        }
        xi[k] = match (lower, upper) {
            (Some(l), u) => {
                let c = l.ceil();
                if u.is_none_or(|u| c <= u) {
                    c
                } else {
                    l
                }
            }
            (None, Some(u)) => {
                let f = u.floor();
                if f < Rational64::zero() {
                    f
                } else {
                    Rational64::zero()
                }
            }
            (None, None) => Rational64::zero(),
        };
    }

    let lcm = xi.iter().fold(1i64, |acc, q| acc.lcm(q.denom()));
    let out: Vec<i64> = xi.iter().map(|q| (q * lcm).to_integer()).collect();
    debug_assert!(vectors
        .iter()
        .all(|v| v.iter().zip(&out).map(|(a, b)| a * b).sum::<i64>() > 0));
    Some(out)
}
