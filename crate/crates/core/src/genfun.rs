//! Moment generating functions I_g(z) = Σ m_k z^k = ∫ g(t)/(1-zt) dt in
//! closed form per model class, plus the bivariate exponential
//! transform used by quadrature-domain reconstruction.
//!
//! Series-at-infinity convention: a table entry m̃_{kl} pairs with
//! z^{-k-1} w̄^{-l-1}, so the transform is a power series in u = 1/z and
//! v̄ = 1/w̄ whose coefficient b_{kl} multiplies u^{k+1} v̄^{l+1}.

use crate::linalg;
use crate::models::{
    BivariateSeries, DoubleMomentTable, MomentSequence, PolynomialModel, RationalModel, SpikeTrain,
};
use crate::poly;
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GenfunError {
    #[error("z = {0} lies on the logarithm branch cut [1, ∞)")]
    BranchCut(Complex64),
    #[error("evaluation at or near a pole (z = {0})")]
    AtPole(Complex64),
    #[error("z = 0 is outside the domain of this closed form")]
    ZeroArgument,
    #[error("denominator has repeated roots; only simple poles are supported")]
    RepeatedPoles,
    #[error("table covers {have_k}x{have_l} indices, transform order {need} needs {need}x{need}")]
    InsufficientTable {
        have_k: usize,
        have_l: usize,
        need: usize,
    },
}

/// Truncated series Σ_{k≤K} m_k z^k.
pub fn i_series(m: &MomentSequence, z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &v in m.values.iter().rev() {
        acc = acc * z + v;
    }
    acc
}

/// ∫_0^1 dt/(t-s) as a difference of principal logarithms; valid for
/// every s off the segment [0,1] (the integration path never crosses
/// the cut). Signed zeros in the imaginary part are canonicalized so
/// both logarithms sit on the same side of the cut.
fn log_ratio(s: Complex64) -> Complex64 {
    let pln = |z: Complex64| {
        if z.im == 0.0 {
            Complex64::new(z.re, 0.0).ln()
        } else {
            z.ln()
        }
    };
    pln(Complex64::new(1.0, 0.0) - s) - pln(-s)
}

fn on_unit_ray(z: Complex64) -> bool {
    z.im == 0.0 && z.re >= 1.0
}

/// Closed-form I_P(z) = -w P(w) L(w) - ∫ T with w = 1/z, where T is the
/// divided difference (P(t) - P(w))/(t - w); the integral term is the
/// degree d-1 polynomial part of the proposition. Small |z| switches to
/// the series limit because the two closed-form terms cancel as w → ∞.
pub fn i_poly(p: &PolynomialModel, z: Complex64) -> Result<Complex64, GenfunError> {
    if on_unit_ray(z) {
        return Err(GenfunError::BranchCut(z));
    }
    if z.norm() < 0.1 {
        // tail below 1e-16 after 20 terms at |z| < 0.1
        let m = crate::forward::moments_polynomial(p, 20);
        return Ok(i_series(&m, z));
    }
    let w = Complex64::new(1.0, 0.0) / z;
    let pw = poly::eval_at_complex(&p.coefficients, w);
    // ∫_0^1 T(t) dt with T(t) = Σ_{j≥1} a_j Σ_{i<j} t^i w^{j-1-i}
    let mut tail = Complex64::new(0.0, 0.0);
    for (j, &a) in p.coefficients.iter().enumerate().skip(1) {
        let mut wpow = Complex64::new(1.0, 0.0);
        let mut inner = Complex64::new(0.0, 0.0);
        for i in (0..j).rev() {
            inner += wpow.scale(1.0 / ((i + 1) as f64));
            wpow *= w;
        }
        tail += inner.scale(a);
    }
    Ok(-w * (pw * log_ratio(w) + tail))
}

/// Closed-form generating function of a rational model with simple
/// poles: -w Σ A_i/(α_i - w) [L(α_i) - L(w)], w = 1/z, with residues
/// A_i from partial fractions.
pub fn i_rational(r: &RationalModel, z: Complex64) -> Result<Complex64, GenfunError> {
    if z.norm() == 0.0 {
        return Err(GenfunError::ZeroArgument);
    }
    if on_unit_ray(z) {
        return Err(GenfunError::BranchCut(z));
    }
    let roots = linalg::poly_roots(&r.denominator).map_err(|_| GenfunError::RepeatedPoles)?;
    let scale = roots.iter().map(|a| a.norm()).fold(1.0, f64::max);
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            if (roots[i] - roots[j]).norm() <= 1e-8 * scale {
                return Err(GenfunError::RepeatedPoles);
            }
        }
    }
    let w = Complex64::new(1.0, 0.0) / z;
    let dq: Vec<Complex64> = poly::derivative(&r.denominator)
        .iter()
        .map(|&c| Complex64::new(c, 0.0))
        .collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for &alpha in &roots {
        if (alpha - w).norm() <= 1e-12 * scale.max(w.norm()) {
            return Err(GenfunError::AtPole(z));
        }
        let residue = poly::eval_at_complex(&r.numerator, alpha) / poly::eval(&dq, alpha);
        acc += residue / (alpha - w) * (log_ratio(alpha) - log_ratio(w));
    }
    Ok(-w * acc)
}

/// I(z) = Σ A_i / (1 - z x_i), the rational function with poles at the
/// reciprocal spike nodes.
pub fn i_spikes(s: &SpikeTrain, z: Complex64) -> Result<Complex64, GenfunError> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (&x, &a) in s.nodes.iter().zip(s.weights.iter()) {
        let denom = Complex64::new(1.0, 0.0) - z.scale(x);
        if denom.norm() <= 1e-12 * (1.0 + z.norm() * x) {
            return Err(GenfunError::AtPole(z));
        }
        acc += Complex64::new(a, 0.0) / denom;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// truncated bivariate series arithmetic (coefficient grid [i][j] for
// u^i v^j, truncated to i ≤ K, j ≤ L)

type Grid = Vec<Vec<Complex64>>;

fn grid_zeros(k: usize, l: usize) -> Grid {
    vec![vec![Complex64::new(0.0, 0.0); l + 1]; k + 1]
}

fn grid_mul(a: &Grid, b: &Grid, k: usize, l: usize) -> Grid {
    let mut out = grid_zeros(k, l);
    for (i, row) in a.iter().enumerate().take(k + 1) {
        for (j, &ca) in row.iter().enumerate().take(l + 1) {
            if ca.norm() == 0.0 {
                continue;
            }
            for (p, brow) in b.iter().enumerate().take(k + 1 - i) {
                for (q, &cb) in brow.iter().enumerate().take(l + 1 - j) {
                    out[i + p][j + q] += ca * cb;
                }
            }
        }
    }
    out
}

/// exp of a series with zero constant term, truncated to (K, L). Exact
/// for the kept coefficients: the n-th power contributes nothing below
/// total degree n, so the sum terminates.
fn grid_exp(x: &Grid, k: usize, l: usize) -> Grid {
    let mut out = grid_zeros(k, l);
    out[0][0] = Complex64::new(1.0, 0.0);
    let mut power = out.clone();
    let mut factorial = 1.0;
    for n in 1..=(k.max(l)) {
        power = grid_mul(&power, x, k, l);
        factorial *= n as f64;
        let inv = 1.0 / factorial;
        for (row_out, row_p) in out.iter_mut().zip(power.iter()) {
            for (c_out, &c_p) in row_out.iter_mut().zip(row_p.iter()) {
                *c_out += c_p.scale(inv);
            }
        }
    }
    out
}

/// log of a series with unit constant term, truncated to (K, L).
fn grid_log(e: &Grid, k: usize, l: usize) -> Grid {
    let mut delta = e.clone();
    delta[0][0] -= Complex64::new(1.0, 0.0);
    let mut out = grid_zeros(k, l);
    let mut power = grid_zeros(k, l);
    power[0][0] = Complex64::new(1.0, 0.0);
    for n in 1..=(k.max(l)) {
        power = grid_mul(&power, &delta, k, l);
        let coeff = if n % 2 == 1 { 1.0 } else { -1.0 } / n as f64;
        for (row_out, row_p) in out.iter_mut().zip(power.iter()) {
            for (c_out, &c_p) in row_out.iter_mut().zip(row_p.iter()) {
                *c_out += c_p.scale(coeff);
            }
        }
    }
    out
}

/// Exponential transform of a double-moment table: the coefficients
/// b_{kl} of 1 - exp(-(1/π) Σ m̃_{kl} u^{k+1} v̄^{l+1}) for
/// 0 ≤ k, l ≤ N-1, where u = 1/z and v̄ = 1/w̄. The table must cover
/// indices 0..N-1 in both variables.
pub fn exp_transform(
    table: &DoubleMomentTable,
    order: usize,
) -> Result<BivariateSeries, GenfunError> {
    assert!(order >= 1, "transform order must be at least 1");
    if table.rows() < order || table.cols() < order {
        return Err(GenfunError::InsufficientTable {
            have_k: table.rows(),
            have_l: table.cols(),
            need: order,
        });
    }
    let mut x = grid_zeros(order, order);
    for k in 0..order {
        for l in 0..order {
            x[k + 1][l + 1] = -table.get(k, l).scale(1.0 / PI);
        }
    }
    let e = grid_exp(&x, order, order);
    let mut b = grid_zeros(order - 1, order - 1);
    for k in 0..order {
        for l in 0..order {
            b[k][l] = -e[k + 1][l + 1];
        }
    }
    Ok(BivariateSeries { coefficients: b })
}

/// Coefficient grid of exp(-(1/π) Σ_{k,l<N} m̃_{kl} u^{k+1} v̄^{l+1})
/// truncated to degree N in each variable: the exponential factor of
/// the quadrature-domain defining-polynomial construction. Entry [i][j]
/// multiplies z^{-i} w̄^{-j}.
pub fn exponential_factor(table: &DoubleMomentTable, order: usize) -> Vec<Vec<Complex64>> {
    let mut x = grid_zeros(order, order);
    for k in 0..order.min(table.rows()) {
        for l in 0..order.min(table.cols()) {
            x[k + 1][l + 1] = -table.get(k, l).scale(1.0 / PI);
        }
    }
    grid_exp(&x, order, order)
}

/// Inverse of [`exp_transform`]: recover the moment table from the
/// series via m̃_{kl} = -π [log(1 - Σ b u^{k+1} v̄^{l+1})]_{k+1,l+1}.
pub fn inverse_exp_transform(series: &BivariateSeries) -> DoubleMomentTable {
    let (bk, bl) = series.orders();
    let n = bk.min(bl) + 1;
    let mut e = grid_zeros(n, n);
    e[0][0] = Complex64::new(1.0, 0.0);
    for k in 0..n {
        for l in 0..n {
            e[k + 1][l + 1] = -series.get(k, l);
        }
    }
    let x = grid_log(&e, n, n);
    DoubleMomentTable {
        entries: (0..n)
            .map(|k| (0..n).map(|l| -x[k + 1][l + 1].scale(PI)).collect())
            .collect(),
    }
}
