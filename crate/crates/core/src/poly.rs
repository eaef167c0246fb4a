//! Dense univariate polynomial helpers over real or complex
//! coefficients. Coefficients are stored low-to-high: `c[j]` multiplies
//! `x^j`.

use crate::scalar::Scalar;
use num_complex::Complex64;

/// True degree after ignoring an all-zero tail; the zero polynomial
/// reports degree 0.
pub fn degree<T: Scalar>(coeffs: &[T]) -> usize {
    coeffs
        .iter()
        .rposition(|c| *c != T::ZERO)
        .unwrap_or(0)
}

/// Drop trailing coefficients with modulus at most `tol`, keeping at
/// least one entry.
pub fn trim<T: Scalar>(coeffs: &[T], tol: f64) -> Vec<T> {
    let mut end = coeffs.len();
    while end > 1 && coeffs[end - 1].abs() <= tol {
        end -= 1;
    }
    coeffs[..end].to_vec()
}

/// Horner evaluation.
pub fn eval<T: Scalar>(coeffs: &[T], x: T) -> T {
    let mut acc = T::ZERO;
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Evaluate a real-coefficient polynomial at a complex point.
pub fn eval_at_complex(coeffs: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

pub fn add<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len().max(b.len()).max(1);
    let mut out = vec![T::ZERO; n];
    for (i, &c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] += c;
    }
    out
}

pub fn sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len().max(b.len()).max(1);
    let mut out = vec![T::ZERO; n];
    for (i, &c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] -= c;
    }
    out
}

pub fn scale<T: Scalar>(a: &[T], s: T) -> Vec<T> {
    a.iter().map(|&c| c * s).collect()
}

pub fn mul<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    if a.is_empty() || b.is_empty() {
        return vec![T::ZERO];
    }
    let mut out = vec![T::ZERO; a.len() + b.len() - 1];
    for (i, &ca) in a.iter().enumerate() {
        if ca == T::ZERO {
            continue;
        }
        for (j, &cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    out
}

pub fn derivative<T: Scalar>(coeffs: &[T]) -> Vec<T> {
    if coeffs.len() <= 1 {
        return vec![T::ZERO];
    }
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, &c)| c.scale(j as f64))
        .collect()
}

/// Composition `outer(inner(x))` by Horner in the outer variable. The
/// result carries no exact-zero tail.
pub fn compose<T: Scalar>(outer: &[T], inner: &[T]) -> Vec<T> {
    let mut acc = vec![T::ZERO];
    for &c in outer.iter().rev() {
        acc = mul(&acc, inner);
        if acc.is_empty() {
            acc = vec![T::ZERO];
        }
        acc[0] += c;
    }
    trim(&acc, 0.0)
}

/// Monic polynomial with the given roots.
pub fn from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        out = mul(&out, &[-r, Complex64::new(1.0, 0.0)]);
    }
    out
}

/// Euclidean division `a = q*b + r` with `deg r < deg b`. The divisor's
/// leading coefficient must be nonzero.
pub fn div_rem<T: Scalar>(a: &[T], b: &[T]) -> (Vec<T>, Vec<T>) {
    let db = degree(b);
    let lead = b[db];
    assert!(lead != T::ZERO, "division by zero polynomial");
    let mut rem = a.to_vec();
    let da = degree(&rem);
    if da < db {
        return (vec![T::ZERO], rem);
    }
    let mut quot = vec![T::ZERO; da - db + 1];
    for k in (0..=da - db).rev() {
        let coeff = rem[k + db] / lead;
        quot[k] = coeff;
        for j in 0..=db {
            rem[k + j] -= coeff * b[j];
        }
    }
    rem.truncate(db.max(1));
    (quot, rem)
}

/// ∫ over `[a,b]` of the polynomial, in closed form.
pub fn integral<T: Scalar>(coeffs: &[T], a: f64, b: f64) -> T {
    let mut acc = T::ZERO;
    for (j, &c) in coeffs.iter().enumerate() {
        let p = (j + 1) as f64;
        acc += c.scale((b.powi(j as i32 + 1) - a.powi(j as i32 + 1)) / p);
    }
    acc
}

/// Sum of absolute coefficient values.
pub fn one_norm<T: Scalar>(coeffs: &[T]) -> f64 {
    coeffs.iter().map(|c| c.abs()).sum()
}
