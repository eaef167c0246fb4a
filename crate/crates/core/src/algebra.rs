//! Polynomial composition machinery, the moment-vanishing test for
//! parametrized curves, and the sign-change/complexity bookkeeping
//! behind finite-moment uniqueness of piecewise models.

use crate::forward;
use crate::linalg::{self, Mat};
use crate::models::{ParamCurve, PiecewisePoly};
use crate::poly;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("inner degree {inner} must properly divide deg P = {degree} (1 < e < deg P)")]
    InvalidInnerDegree { inner: usize, degree: usize },
    #[error("the function is identically zero")]
    IdenticallyZero,
}

/// Composition `outer(inner(x))` (exact polynomial arithmetic up to
/// rounding).
pub fn compose(outer: &[f64], inner: &[f64]) -> Vec<f64> {
    poly::compose(outer, inner)
}

/// A functional decomposition P = outer ∘ inner with the inner factor
/// normalized monic and vanishing at 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub outer: Vec<f64>,
    pub inner: Vec<f64>,
}

/// Search for P = P̃ ∘ W with deg W = `inner_degree`. The inner factor
/// is pinned down (monic, W(0) = 0) by solving the triangular system
/// for its coefficients from the top of P; the outer factor comes from
/// the W-adic expansion of P, which must have constant digits. Absence
/// of a decomposition is a value, not an error.
pub fn decompose(p: &[f64], inner_degree: usize) -> Result<Option<Decomposition>, AlgebraError> {
    let p = poly::trim(p, 0.0);
    let n = poly::degree(&p);
    let e = inner_degree;
    if e <= 1 || e >= n || !n.is_multiple_of(e) {
        return Err(AlgebraError::InvalidInnerDegree {
            inner: e,
            degree: n,
        });
    }
    let f = n / e;
    let lead = p[n];
    let mut w = vec![0.0; e + 1];
    w[e] = 1.0;
    for k in 1..e {
        // match the coefficient of x^{n-k} in lead * W^f
        let mut wf = vec![1.0];
        for _ in 0..f {
            wf = poly::mul(&wf, &w);
        }
        let current = wf.get(n - k).copied().unwrap_or(0.0);
        w[e - k] = (p[n - k] / lead - current) / f as f64;
    }
    // the outer factor is the expansion of P in powers of W, which the
    // least-squares fit recovers backward-stably (the W-adic division
    // cascade loses digits when the monic W has large coefficients)
    let scale = p.iter().map(|c| c.abs()).fold(1.0, f64::max);
    let Some(outer) = fit_in_powers(&p, &w) else {
        return Ok(None);
    };
    let back = compose(&outer, &w);
    let ok = (0..=n).all(|j| {
        (back.get(j).copied().unwrap_or(0.0) - p[j]).abs() <= 1e-10 * scale
    });
    Ok(if ok {
        Some(Decomposition { outer, inner: w })
    } else {
        None
    })
}

/// Witness that a curve's parametrization factors through a common
/// inner polynomial W taking equal values at the interval endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositionCertificate {
    /// Inner factor W, normalized so `normalization = W(a) = 0`.
    pub inner: Vec<f64>,
    /// P̃ with P = P̃ ∘ W.
    pub outer_p: Vec<f64>,
    /// Q̃ with Q = Q̃ ∘ W.
    pub outer_q: Vec<f64>,
    /// Value of W at the left endpoint under the chosen normalization.
    pub normalization: f64,
}

impl CompositionCertificate {
    /// Re-check the certificate against its curve: both compositions
    /// reproduce the parametrization to 1e-10 relative, and W takes
    /// equal values at the endpoints.
    pub fn verify(&self, curve: &ParamCurve) -> bool {
        let scale_p = poly::one_norm(&curve.p).max(1.0);
        let scale_q = poly::one_norm(&curve.q).max(1.0);
        let back_p = compose(&self.outer_p, &self.inner);
        let back_q = compose(&self.outer_q, &self.inner);
        let close = |a: &[f64], b: &[f64], scale: f64| {
            (0..a.len().max(b.len())).all(|j| {
                (a.get(j).copied().unwrap_or(0.0) - b.get(j).copied().unwrap_or(0.0)).abs()
                    <= 1e-10 * scale
            })
        };
        let (a, b) = curve.interval;
        let endpoint_gap = (poly::eval(&self.inner, b) - poly::eval(&self.inner, a)).abs();
        close(&back_p, &curve.p, scale_p)
            && close(&back_q, &curve.q, scale_q)
            && endpoint_gap <= 1e-9 * poly::one_norm(&self.inner).max(1.0)
    }
}

fn divisors_of(n: usize) -> Vec<usize> {
    (2..n).filter(|e| n.is_multiple_of(*e)).collect()
}

/// Express Q as a polynomial in W by a linear fit on the powers of W;
/// `None` when the residual is above tolerance. The fit runs against a
/// magnitude-normalized W so the basis columns stay comparably scaled.
fn fit_in_powers(q: &[f64], w: &[f64]) -> Option<Vec<f64>> {
    let q = poly::trim(q, 0.0);
    let dq = poly::degree(&q);
    let scale = poly::one_norm(&q).max(1.0);
    if dq == 0 {
        return Some(vec![q[0]]);
    }
    let e = poly::degree(w);
    if e == 0 || !dq.is_multiple_of(e) {
        return None;
    }
    let s = w.iter().map(|c| c.abs()).fold(0.0, f64::max);
    let w_scaled = poly::scale(w, 1.0 / s);
    let gmax = dq / e;
    let rows = dq + 1;
    let mut powers = vec![vec![1.0]];
    for i in 1..=gmax {
        powers.push(poly::mul(&powers[i - 1], &w_scaled));
    }
    let a = Mat::from_fn(rows, gmax + 1, |r, i| {
        powers[i].get(r).copied().unwrap_or(0.0)
    });
    let rhs: Vec<f64> = (0..rows).map(|r| q.get(r).copied().unwrap_or(0.0)).collect();
    let sol = linalg::lstsq(&a, &rhs).ok()?;
    let fitted = a.mul_vec(&sol.x);
    let residual = fitted
        .iter()
        .zip(rhs.iter())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    if residual <= 1e-9 * scale {
        let mut s_pow = 1.0;
        Some(
            sol.x
                .into_iter()
                .map(|c| {
                    let digit = c / s_pow;
                    s_pow *= s;
                    digit
                })
                .collect(),
        )
    } else {
        None
    }
}

/// Shift a certificate so the inner factor vanishes at the curve's left
/// endpoint: W ← W - W(a), outers re-expanded around the shift.
fn normalize_at_left_endpoint(
    mut inner: Vec<f64>,
    outer_p: Vec<f64>,
    outer_q: Vec<f64>,
    a: f64,
) -> CompositionCertificate {
    let wa = poly::eval(&inner, a);
    inner[0] -= wa;
    let shift = [wa, 1.0];
    CompositionCertificate {
        outer_p: compose(&outer_p, &shift),
        outer_q: compose(&outer_q, &shift),
        inner,
        normalization: 0.0,
    }
}

/// Search for a single-factor composition certificate: inner degrees
/// running over the proper divisors of deg P (ascending) and finally
/// deg P itself (W an affine image of P). Returns the first certificate
/// whose W takes equal endpoint values and whose Q-fit succeeds.
pub fn check_composition_condition(curve: &ParamCurve) -> Option<CompositionCertificate> {
    let p = poly::trim(&curve.p, 0.0);
    let n = poly::degree(&p);
    if n == 0 {
        return None;
    }
    let (a, b) = curve.interval;
    let w_tol = |w: &[f64]| 1e-9 * poly::one_norm(w).max(1.0);
    for e in divisors_of(n) {
        let Ok(Some(dec)) = decompose(&p, e) else {
            continue;
        };
        if (poly::eval(&dec.inner, b) - poly::eval(&dec.inner, a)).abs() > w_tol(&dec.inner) {
            continue;
        }
        if let Some(outer_q) = fit_in_powers(&curve.q, &dec.inner) {
            let cert = normalize_at_left_endpoint(dec.inner, dec.outer, outer_q, a);
            if cert.verify(curve) {
                return Some(cert);
            }
        }
    }
    // e = deg P: W is the monic normalization of P itself
    let lead = p[n];
    let mut w = poly::scale(&p, 1.0 / lead);
    let w0 = w[0];
    w[0] = 0.0;
    if (poly::eval(&w, b) - poly::eval(&w, a)).abs() <= w_tol(&w) {
        let outer_p = vec![w0 * lead, lead];
        if let Some(outer_q) = fit_in_powers(&curve.q, &w) {
            let cert = normalize_at_left_endpoint(w, outer_p, outer_q, a);
            if cert.verify(curve) {
                return Some(cert);
            }
        }
    }
    None
}

/// True iff the first M+1 curve moments ∫ P^k Q P' dt all vanish to
/// `tol` relative to scale = max(1, Σ|Q| · Σ|P'|).
pub fn vanishing_test(curve: &ParamCurve, order: usize, tol: f64) -> bool {
    let table = forward::moments_curve(curve, order, 1);
    let scale = (poly::one_norm(&curve.q) * poly::one_norm(&poly::derivative(&curve.p))).max(1.0);
    (0..=order).all(|k| table.get(k, 1).norm() <= tol * scale)
}

/// Combinatorial complexity σ(g) = Σ_q deg g_q + r (piece degrees plus
/// interior breakpoint count).
pub fn sigma(g: &PiecewisePoly) -> usize {
    let degrees: usize = (0..g.pieces.len()).map(|q| g.piece_degree(q)).sum();
    degrees + g.interior_breakpoints()
}

/// Degree bound η(d₁, d₂) = d₁ + d₂ for a sum of two polynomial pieces.
pub fn eta(d1: usize, d2: usize) -> usize {
    d1 + d2
}

/// κ(d) = 2d(η(d,d) + 1): enough moments to separate any two distinct
/// piecewise models of complexity ≤ d.
pub fn kappa(d: usize) -> usize {
    2 * d * (eta(d, d) + 1)
}

struct SignScan {
    /// Points where the sign of g flips, in increasing order.
    changes: Vec<f64>,
    /// Sign of g on its last nonzero stretch.
    last_sign: f64,
    zero_threshold: f64,
}

fn sign_scan(g: &PiecewisePoly) -> Result<SignScan, AlgebraError> {
    let scale = g
        .pieces
        .iter()
        .flat_map(|p| p.iter())
        .map(|c| c.abs())
        .fold(0.0, f64::max);
    let zero_threshold = 1e-11 * scale.max(1e-300);
    if g.is_zero(zero_threshold) {
        return Err(AlgebraError::IdenticallyZero);
    }
    // subinterval boundaries: breakpoints plus real piece roots
    let mut cuts: Vec<f64> = Vec::new();
    for (q, piece) in g.pieces.iter().enumerate() {
        let (lo, hi) = (g.breakpoints[q], g.breakpoints[q + 1]);
        cuts.push(lo);
        let trimmed = poly::trim(piece, zero_threshold);
        if poly::degree(&trimmed) >= 1 {
            if let Ok(roots) = linalg::poly_roots(&trimmed) {
                for r in roots {
                    if r.im.abs() <= 1e-9 && r.re > lo + 1e-13 && r.re < hi - 1e-13 {
                        cuts.push(r.re);
                    }
                }
            }
        }
    }
    cuts.push(1.0);
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
    let mut changes = Vec::new();
    let mut last_sign = 0.0;
    let mut last_nonzero_end = 0.0;
    for win in cuts.windows(2) {
        let mid = 0.5 * (win[0] + win[1]);
        let v = g.evaluate(mid).expect("midpoint inside [0,1]");
        if v.abs() <= zero_threshold {
            continue; // identically-zero stretch (or a grazing root)
        }
        let s = v.signum();
        if last_sign != 0.0 && s != last_sign {
            changes.push(0.5 * (last_nonzero_end + win[0]));
        }
        last_sign = s;
        last_nonzero_end = win[1];
    }
    if last_sign == 0.0 {
        return Err(AlgebraError::IdenticallyZero);
    }
    Ok(SignScan {
        changes,
        last_sign,
        zero_threshold,
    })
}

/// Number of sign alternations of g over [0,1], scanning
/// piece-root-refined subintervals and skipping zero stretches.
pub fn sign_changes(g: &PiecewisePoly) -> Result<usize, AlgebraError> {
    Ok(sign_scan(g)?.changes.len())
}

/// A positivity certificate for a nonzero model: the polynomial
/// Q(t) = ±Π (x - t_i) over the sign-change points, signed so that
/// g·Q ≥ 0, together with ∫_0^1 g Q > 0. A strictly positive value
/// witnesses that one of m_0..m_{sign_changes(g)} is nonzero.
pub fn moment_certificate(g: &PiecewisePoly) -> Result<(Vec<f64>, f64), AlgebraError> {
    let scan = sign_scan(g)?;
    let mut q = vec![scan.last_sign];
    for &t in &scan.changes {
        q = poly::mul(&q, &[-t, 1.0]);
    }
    let mut value = 0.0;
    for (idx, piece) in g.pieces.iter().enumerate() {
        let prod = poly::mul(piece, &q);
        value += poly::integral(&prod, g.breakpoints[idx], g.breakpoints[idx + 1]);
    }
    debug_assert!(value > 0.0 || value.abs() <= scan.zero_threshold);
    Ok((q, value))
}
