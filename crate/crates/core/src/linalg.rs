//! Small exact linear algebra over `Rational64`.

use num_rational::Rational64;
use num_traits::{One, Zero};

pub type RatMatrix = Vec<Vec<Rational64>>;

pub fn to_rational(m: &[Vec<i64>]) -> RatMatrix {
    m.iter()
        .map(|row| row.iter().map(|&x| Rational64::from_integer(x)).collect())
        .collect()
}

/// Gauss-Jordan inverse. Returns `None` for singular input.
pub fn invert(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.len();
    let mut a: RatMatrix = m.clone();
    let mut inv: RatMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational64::one() } else { Rational64::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let (ac, ic) = (a[col][j], inv[col][j]);
                    a[r][j] -= f * ac;
                    inv[r][j] -= f * ic;
                }
            }
        }
    }
    Some(inv)
}

pub fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Rational64::zero(), |acc, k| acc + row[k] * b[k][j]))
                .collect()
        })
        .collect()
}

/// `xᵀ M y` for integer vectors.
pub fn bilinear(m: &RatMatrix, x: &[i64], y: &[i64]) -> Rational64 {
    let mut acc = Rational64::zero();
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            if yj != 0 {
                acc += m[i][j] * Rational64::from_integer(xi * yj);
            }
        }
    }
    acc
}

/// `xᵀ M x` for rational vectors.
pub fn quadratic_rat(m: &RatMatrix, x: &[Rational64]) -> Rational64 {
    let mut acc = Rational64::zero();
    for (i, xi) in x.iter().enumerate() {
        for (j, xj) in x.iter().enumerate() {
            acc += m[i][j] * xi * xj;
        }
    }
    acc
}

pub fn dot_rat_int(x: &[Rational64], y: &[i64]) -> Rational64 {
    x.iter()
        .zip(y)
        .fold(Rational64::zero(), |acc, (a, &b)| acc + a * Rational64::from_integer(b))
}

/// Largest integer `k ≥ 0` with `k² ≤ q`, for `q ≥ 0`.
pub fn isqrt_floor(q: Rational64) -> i64 {
    if q <= Rational64::zero() {
        return 0;
    }
    let mut k = (*q.numer() as f64 / *q.denom() as f64).sqrt().floor() as i64;
    while Rational64::from_integer((k + 1) * (k + 1)) <= q {
        k += 1;
    }
    while k > 0 && Rational64::from_integer(k * k) > q {
        k -= 1;
    }
    k
}

/// Parses `"3"`, `"-2/5"` or `"0.5"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational64> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().ok()?;
        let d: i64 = d.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        return Some(Rational64::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let int_part: i64 = if int == "-" || int.is_empty() { 0 } else { int.parse().ok()? };
        if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let den = 10i64.pow(frac.len() as u32);
        let f: i64 = frac.parse().ok()?;
        let mag = int_part.abs() * den + f;
        return Some(Rational64::new(if neg { -mag } else { mag }, den));
    }
    s.parse::<i64>().ok().map(Rational64::from_integer)
}

pub fn format_rational(q: Rational64) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
