//! Forward moment transforms: closed forms where they exist,
//! degree-exact Gauss-Legendre quadrature for polynomial integrands,
//! and adaptive bisection for rational ones. These results serve as
//! test oracles for the inversion module, so they are built to dominate
//! the inversion tolerances.

use crate::models::{
    ComplexMomentSequence, DoubleMomentTable, ModelError, MomentSequence, ParamCurve,
    PiecewisePoly, Polygon, PolynomialModel, RationalModel, SpikeTrain, Validate,
};
use crate::poly;
use num_complex::Complex64;
use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::rc::Rc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ForwardError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("disks {0} and {1} of the union overlap")]
    OverlappingDisks(usize, usize),
    #[error("disk radius must be positive, got {0}")]
    NonPositiveRadius(f64),
}

// ---------------------------------------------------------------------------
// quadrature

/// Shared node/weight table of one quadrature rule.
pub type QuadratureRule = Rc<Vec<(f64, f64)>>;

thread_local! {
    static GL_CACHE: RefCell<HashMap<usize, QuadratureRule>> = RefCell::new(HashMap::new());
}

/// Gauss-Legendre nodes and weights on [-1, 1]; exact for polynomial
/// degree ≤ 2n-1. Rules are cached per node count.
pub fn gauss_legendre(n: usize) -> QuadratureRule {
    GL_CACHE.with(|cache| {
        if let Some(rule) = cache.borrow().get(&n) {
            return Rc::clone(rule);
        }
        let rule = Rc::new(compute_gauss_legendre(n));
        cache.borrow_mut().insert(n, Rc::clone(&rule));
        rule
    })
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=n {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = next;
    }
    let dp = (n as f64) * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

fn compute_gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.push((x, w));
    }
    rule.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    rule
}

/// Fixed-rule integral of `f` over [a, b].
pub fn integrate_gl(f: &dyn Fn(f64) -> f64, a: f64, b: f64, nodes: usize) -> f64 {
    let rule = gauss_legendre(nodes);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = 0.0;
    for &(x, w) in rule.iter() {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Adaptive bisection built on a 15-point rule: a panel is accepted
/// when its estimate agrees with the sum of its halves to `rel_tol`
/// relative to an ∫|f| anchor, so near-cancelling integrals stay honest.
pub fn integrate_adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    const NODES: usize = 15;
    let anchor = integrate_gl(&|x| f(x).abs(), a, b, NODES).abs() + 1e-300;
    let whole = integrate_gl(f, a, b, NODES);
    adaptive_panel(f, a, b, whole, rel_tol * anchor / (b - a), 0)
}

fn adaptive_panel(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    whole: f64,
    tol_density: f64,
    depth: usize,
) -> f64 {
    const NODES: usize = 15;
    let mid = 0.5 * (a + b);
    let left = integrate_gl(f, a, mid, NODES);
    let right = integrate_gl(f, mid, b, NODES);
    let refined = left + right;
    if depth >= 48 || (refined - whole).abs() <= tol_density * (b - a) {
        return refined;
    }
    adaptive_panel(f, a, mid, left, tol_density, depth + 1)
        + adaptive_panel(f, mid, b, right, tol_density, depth + 1)
}

// compensated (Neumaier) summation keeps the closed-form moments at
// one-rounding quality
fn sum_compensated(terms: impl Iterator<Item = f64>) -> f64 {
    let mut s = 0.0;
    let mut c = 0.0;
    for t in terms {
        let u = s + t;
        if s.abs() >= t.abs() {
            c += (s - u) + t;
        } else {
            c += (t - u) + s;
        }
        s = u;
    }
    s + c
}

// ---------------------------------------------------------------------------
// 1D forward transforms

/// m_k = Σ_j a_j/(j+k+1), k = 0..K (exact up to rounding).
pub fn moments_polynomial(p: &PolynomialModel, order: usize) -> MomentSequence {
    let values = (0..=order)
        .map(|k| {
            sum_compensated(
                p.coefficients
                    .iter()
                    .enumerate()
                    .map(|(j, &a)| a / ((j + k + 1) as f64)),
            )
        })
        .collect();
    MomentSequence {
        values,
        interval: (0.0, 1.0),
    }
}

/// m_k = Σ_i A_i x_i^k.
pub fn moments_spikes(s: &SpikeTrain, order: usize) -> MomentSequence {
    let mut powers = vec![1.0; s.len()];
    let mut values = Vec::with_capacity(order + 1);
    for _ in 0..=order {
        values.push(sum_compensated(
            powers.iter().zip(s.weights.iter()).map(|(p, w)| p * w),
        ));
        for (p, x) in powers.iter_mut().zip(s.nodes.iter()) {
            *p *= x;
        }
    }
    MomentSequence {
        values,
        interval: (0.0, 1.0),
    }
}

/// m_k = ∫_0^1 x^k R(x) dx by adaptive quadrature (relative tolerance
/// 1e-12 against refinement). The model must be pole-free on [0,1].
pub fn moments_rational(r: &RationalModel, order: usize) -> Result<MomentSequence, ForwardError> {
    let violations = r.validate();
    if !violations.is_empty() {
        return Err(ModelError::Invalid {
            kind: "rational model",
            violations,
        }
        .into());
    }
    let values = (0..=order)
        .map(|k| {
            let f = |x: f64| {
                x.powi(k as i32) * poly::eval(&r.numerator, x) / poly::eval(&r.denominator, x)
            };
            integrate_adaptive(&f, 0.0, 1.0, 1e-12)
        })
        .collect();
    Ok(MomentSequence {
        values,
        interval: (0.0, 1.0),
    })
}

/// m_k = Σ_q ∫ x^k g_q(x) dx, each piece in closed form.
pub fn moments_piecewise(g: &PiecewisePoly, order: usize) -> MomentSequence {
    let values = (0..=order)
        .map(|k| {
            sum_compensated(g.pieces.iter().enumerate().flat_map(|(q, piece)| {
                let (a, b) = (g.breakpoints[q], g.breakpoints[q + 1]);
                piece.iter().enumerate().map(move |(j, &c)| {
                    let p = (k + j + 1) as f64;
                    c * (b.powi((k + j + 1) as i32) - a.powi((k + j + 1) as i32)) / p
                })
            }))
        })
        .collect();
    MomentSequence {
        values,
        interval: (0.0, 1.0),
    }
}

/// Curve moments m_{kl} = ∫_a^b P^k(t) Q^l(t) P'(t) dt for k ≤ K,
/// l ≤ L, by Gauss-Legendre with node count exceeding half the
/// integrand degree (hence exact up to rounding). The l = 1 column is
/// the moment sequence of the curve's moment-vanishing problem.
pub fn moments_curve(c: &ParamCurve, order_k: usize, order_l: usize) -> DoubleMomentTable {
    let dp = poly::degree(&c.p);
    let dq = poly::degree(&c.q);
    let max_degree = order_k * dp + order_l * dq + dp.saturating_sub(1);
    let nodes = max_degree / 2 + 1;
    let rule = gauss_legendre(nodes);
    let (a, b) = c.interval;
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let deriv = poly::derivative(&c.p);
    let entries: Vec<Vec<Complex64>> = {
        // accumulate all (k,l) at once from shared point evaluations
        let mut table = vec![vec![0.0; order_l + 1]; order_k + 1];
        for &(x, w) in rule.iter() {
            let t = mid + half * x;
            let pv = poly::eval(&c.p, t);
            let qv = poly::eval(&c.q, t);
            let dv = poly::eval(&deriv, t) * w * half;
            let mut pk = 1.0;
            for row in table.iter_mut() {
                let mut ql = 1.0;
                for cell in row.iter_mut() {
                    *cell += pk * ql * dv;
                    ql *= qv;
                }
                pk *= pv;
            }
        }
        table
            .into_iter()
            .map(|row| row.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
            .collect()
    };
    DoubleMomentTable { entries }
}

// ---------------------------------------------------------------------------
// 2D forward transforms

/// μ_k = ∫∫_P z^k dA via the boundary reduction ∮ z^{k+1} dz̄, closed
/// form per edge. This is the reference oracle for polygon round trips.
pub fn complex_moments_polygon(p: &Polygon, order: usize) -> ComplexMomentSequence {
    let n = p.vertices.len();
    let values = (0..=order)
        .map(|k| {
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                let a = p.vertices[j];
                let b = p.vertices[(j + 1) % n];
                // (b^{k+2} - a^{k+2})/(b - a) as the stable power sum
                let mut dd = Complex64::new(0.0, 0.0);
                let mut apow = Complex64::new(1.0, 0.0);
                let mut bpow = b.powu((k + 1) as u32);
                let binv = if b.norm() > 0.0 { Some(1.0 / b) } else { None };
                for m in 0..=(k + 1) {
                    dd += apow * bpow;
                    apow *= a;
                    match binv {
                        Some(inv) => bpow *= inv,
                        None => bpow = if m == k { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) },
                    }
                }
                s += (b.conj() - a.conj()) * dd;
            }
            Complex64::new(0.0, 0.5) * s / (((k + 1) * (k + 2)) as f64)
        })
        .collect();
    ComplexMomentSequence { values }
}

/// Disk domain description for the double-moment transform.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Disk {
    pub center: Complex64,
    pub radius: f64,
}

/// Planar domains supported by [`double_moments_domain`].
#[derive(Clone, Debug, PartialEq)]
pub enum PlanarDomain {
    Disk(Disk),
    Polygon(Polygon),
    /// Pairwise disjoint disks.
    DiskUnion(Vec<Disk>),
}

fn binomial(n: usize, k: usize) -> f64 {
    let mut acc = 1.0;
    for i in 0..k.min(n - k) {
        acc = acc * ((n - i) as f64) / ((i + 1) as f64);
    }
    acc
}

fn disk_double_moment(d: &Disk, k: usize, l: usize) -> Complex64 {
    // expand (c+w)^k (c̄+w̄)^l over the centered disk; only the radial
    // terms with equal w and w̄ powers survive
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..=k.min(l) {
        let radial = PI * d.radius.powi(2 * (i as i32) + 2) / ((i + 1) as f64);
        acc += d.center.powu((k - i) as u32)
            * d.center.conj().powu((l - i) as u32)
            * (binomial(k, i) * binomial(l, i) * radial);
    }
    acc
}

fn polygon_double_moment(p: &Polygon, k: usize, l: usize) -> Complex64 {
    // m̃_{kl} = (i/2) ∮ z^{k+1} z̄^l dz̄ / (k+1); the edge integrand is a
    // polynomial of degree k+l+1 in the edge parameter
    let nodes = (k + l).div_ceil(2) + 1;
    let rule = gauss_legendre(nodes);
    let n = p.vertices.len();
    let mut s = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let a = p.vertices[j];
        let b = p.vertices[(j + 1) % n];
        let u = b - a;
        let mut edge = Complex64::new(0.0, 0.0);
        for &(x, w) in rule.iter() {
            let t = 0.5 * (x + 1.0);
            let z = a + u * t;
            edge += z.powu((k + 1) as u32) * z.conj().powu(l as u32) * (0.5 * w);
        }
        s += edge * u.conj();
    }
    Complex64::new(0.0, 0.5) * s / ((k + 1) as f64)
}

/// m̃_{kl} = ∫∫ z^k z̄^l dA for k ≤ K, l ≤ L: disks in closed form via
/// binomial expansion around the center, polygons via boundary
/// reduction.
pub fn double_moments_domain(
    domain: &PlanarDomain,
    order_k: usize,
    order_l: usize,
) -> Result<DoubleMomentTable, ForwardError> {
    match domain {
        PlanarDomain::Disk(d) => {
            if d.radius <= 0.0 {
                return Err(ForwardError::NonPositiveRadius(d.radius));
            }
            Ok(table_from(order_k, order_l, |k, l| disk_double_moment(d, k, l)))
        }
        PlanarDomain::Polygon(p) => {
            let violations = p.validate();
            if !violations.is_empty() {
                return Err(ModelError::Invalid {
                    kind: "polygon",
                    violations,
                }
                .into());
            }
            Ok(table_from(order_k, order_l, |k, l| polygon_double_moment(p, k, l)))
        }
        PlanarDomain::DiskUnion(disks) => {
            for (i, d) in disks.iter().enumerate() {
                if d.radius <= 0.0 {
                    return Err(ForwardError::NonPositiveRadius(d.radius));
                }
                for (j, e) in disks.iter().enumerate().skip(i + 1) {
                    if (d.center - e.center).norm() <= d.radius + e.radius {
                        return Err(ForwardError::OverlappingDisks(i, j));
                    }
                }
            }
            Ok(table_from(order_k, order_l, |k, l| {
                disks.iter().map(|d| disk_double_moment(d, k, l)).sum()
            }))
        }
    }
}

fn table_from(
    order_k: usize,
    order_l: usize,
    f: impl Fn(usize, usize) -> Complex64,
) -> DoubleMomentTable {
    DoubleMomentTable {
        entries: (0..=order_k)
            .map(|k| (0..=order_l).map(|l| f(k, l)).collect())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Validate;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit_square() -> Polygon {
        Polygon::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)]).unwrap()
    }

    #[test]
    fn polynomial_constant_two() {
        let p = PolynomialModel::new(vec![2.0]).unwrap();
        let m = moments_polynomial(&p, 2);
        assert_eq!(m.values, vec![2.0, 1.0, 2.0 / 3.0]);
    }

    #[test]
    fn polynomial_linear() {
        let p = PolynomialModel::new(vec![0.0, 1.0]).unwrap();
        let m = moments_polynomial(&p, 2);
        for (k, v) in m.values.iter().enumerate() {
            assert!((v - 1.0 / (k as f64 + 2.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn polynomial_one_plus_x_squared() {
        // oracle: ∫ (1+x^2) x^k dx in closed form
        let p = PolynomialModel::new(vec![1.0, 0.0, 1.0]).unwrap();
        let m = moments_polynomial(&p, 1);
        let oracle = |k: i32| poly::integral(
            &poly::mul(&[1.0, 0.0, 1.0], &monomial(k as usize)),
            0.0,
            1.0,
        );
        assert!((m.values[0] - oracle(0)).abs() < 1e-15);
        assert!((m.values[1] - oracle(1)).abs() < 1e-15);
        assert!((m.values[0] - 4.0 / 3.0).abs() < 1e-15);
        assert!((m.values[1] - 3.0 / 4.0).abs() < 1e-15);
    }

    fn monomial(k: usize) -> Vec<f64> {
        let mut v = vec![0.0; k + 1];
        v[k] = 1.0;
        v
    }

    #[test]
    fn spikes_single_geometric() {
        let s = SpikeTrain::new(vec![0.5], vec![1.0]).unwrap();
        let m = moments_spikes(&s, 3);
        assert_eq!(m.values, vec![1.0, 0.5, 0.25, 0.125]);
    }

    #[test]
    fn spikes_two_node_example() {
        let s = SpikeTrain::new(vec![0.25, 0.75], vec![1.0, 2.0]).unwrap();
        let m = moments_spikes(&s, 3);
        let expect = [3.0, 1.75, 1.1875, 0.859375];
        for (v, e) in m.values.iter().zip(expect.iter()) {
            assert!((v - e).abs() < 1e-15);
        }
    }

    #[test]
    fn rational_log_two() {
        let r = RationalModel::new(vec![1.0], vec![1.0, 1.0]).unwrap();
        let m = moments_rational(&r, 0).unwrap();
        assert!((m.values[0] - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn rational_telescoping_identity() {
        // ∫ x^k (1+x)/(1+x) dx = 1/(k+1), i.e. m_k + m_{k+1} = 1/(k+1)
        let r = RationalModel::new(vec![1.0], vec![1.0, 1.0]).unwrap();
        let m = moments_rational(&r, 6).unwrap();
        for k in 0..=5 {
            let lhs = m.values[k] + m.values[k + 1];
            assert!((lhs - 1.0 / (k as f64 + 1.0)).abs() < 1e-11, "k={k}");
        }
    }

    #[test]
    fn rational_pole_rejected() {
        let r = RationalModel {
            numerator: vec![1.0],
            denominator: vec![-0.5, 1.0],
        };
        assert!(moments_rational(&r, 2).is_err());
    }

    #[test]
    fn piecewise_constant_one() {
        let g = PiecewisePoly::constant(1.0);
        let m = moments_piecewise(&g, 2);
        assert_eq!(m.values, vec![1.0, 0.5, 1.0 / 3.0]);
    }

    #[test]
    fn piecewise_step_example() {
        let g = PiecewisePoly::new(vec![0.0, 0.5, 1.0], vec![vec![1.0], vec![-1.0]]).unwrap();
        let m = moments_piecewise(&g, 1);
        assert!(m.values[0].abs() < 1e-15);
        assert!((m.values[1] + 0.25).abs() < 1e-15);
    }

    #[test]
    fn piecewise_ramp_example() {
        let g = PiecewisePoly::new(vec![0.0, 0.5, 1.0], vec![vec![0.0, 1.0], vec![0.0]]).unwrap();
        let m = moments_piecewise(&g, 0);
        assert!((m.values[0] - 0.125).abs() < 1e-15);
    }

    #[test]
    fn piecewise_linearity_is_exact() {
        let a = PiecewisePoly::new(
            vec![0.0, 0.3, 1.0],
            vec![vec![1.0, -2.0, 0.5], vec![0.25]],
        )
        .unwrap();
        let b = PiecewisePoly::new(vec![0.0, 0.7, 1.0], vec![vec![0.0, 1.0], vec![-1.0, 0.0, 3.0]])
            .unwrap();
        let sum = a.add(&b);
        let ma = moments_piecewise(&a, 10);
        let mb = moments_piecewise(&b, 10);
        let ms = moments_piecewise(&sum, 10);
        for k in 0..=10 {
            assert!(
                (ms.values[k] - (ma.values[k] + mb.values[k])).abs() <= 1e-14,
                "k={k}"
            );
        }
    }

    #[test]
    fn bounded_model_moment_decay() {
        // |m_k| <= sup|g| / (k+1)
        let g = PiecewisePoly::new(
            vec![0.0, 0.4, 1.0],
            vec![vec![2.0, -1.0], vec![-1.5, 0.0, 1.0]],
        )
        .unwrap();
        let sup = (0..=1000)
            .map(|i| g.evaluate(i as f64 / 1000.0).unwrap().abs())
            .fold(0.0, f64::max);
        let m = moments_piecewise(&g, 20);
        for (k, v) in m.values.iter().enumerate() {
            assert!(v.abs() <= sup / (k as f64 + 1.0) + 1e-12);
        }
    }

    #[test]
    fn curve_identity_parametrization() {
        // P=t, Q=1: m_{k,1} = 1/(k+1)
        let cu = ParamCurve::new(vec![0.0, 1.0], vec![1.0]).unwrap();
        let t = moments_curve(&cu, 5, 1);
        for k in 0..=5 {
            assert!((t.get(k, 1).re - 1.0 / (k as f64 + 1.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn curve_antisymmetric_vanishes() {
        // P = t - t^2 is symmetric about 1/2, p antisymmetric
        let cu = ParamCurve::new(vec![0.0, 1.0, -1.0], vec![1.0]).unwrap();
        let t = moments_curve(&cu, 8, 1);
        for k in 0..=8 {
            assert!(t.get(k, 1).norm() < 1e-15, "k={k}: {}", t.get(k, 1));
        }
    }

    #[test]
    fn curve_square_times_t() {
        // P=t^2, Q=t: m_{k,1} = ∫ t^{2k} t 2t dt = 2/(2k+3)
        let cu = ParamCurve::new(vec![0.0, 0.0, 1.0], vec![0.0, 1.0]).unwrap();
        let t = moments_curve(&cu, 6, 1);
        for k in 0..=6 {
            assert!((t.get(k, 1).re - 2.0 / (2.0 * k as f64 + 3.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn quadrature_exactness_plateau() {
        // beyond the exactness threshold, extra nodes change nothing
        let f = |x: f64| poly::eval(&[0.3, -1.0, 0.0, 2.0, 1.5, -0.25], x);
        let base = integrate_gl(&f, 0.0, 1.0, 4); // degree 5 -> n=3 exact, use 4
        for n in 5..12 {
            let more = integrate_gl(&f, 0.0, 1.0, n);
            assert!((more - base).abs() <= 1e-14 * base.abs().max(1.0));
        }
    }

    #[test]
    fn square_area_and_centroid() {
        let sq = unit_square();
        let m = complex_moments_polygon(&sq, 1);
        assert!((m.values[0] - c(1.0, 0.0)).norm() < 1e-14);
        assert!((m.values[1] - c(0.5, 0.5)).norm() < 1e-14);
    }

    #[test]
    fn triangle_area() {
        let tr = Polygon::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        let m = complex_moments_polygon(&tr, 0);
        assert!((m.values[0] - c(0.5, 0.0)).norm() < 1e-14);
    }

    /// Exact double moments of the unit square by binomial expansion of
    /// (x+iy)^k (x-iy)^l; an oracle independent of the boundary route.
    fn square_double_moment_oracle(k: usize, l: usize) -> Complex64 {
        let i = c(0.0, 1.0);
        let mut acc = c(0.0, 0.0);
        for a in 0..=k {
            for b in 0..=l {
                let xpow = a + b;
                let ypow = (k - a) + (l - b);
                let coeff = binomial(k, a) * binomial(l, b);
                let phase = i.powu((k - a) as u32) * (-i).powu((l - b) as u32);
                acc += phase * coeff / (((xpow + 1) * (ypow + 1)) as f64);
            }
        }
        acc
    }

    #[test]
    fn polygon_double_moments_match_expansion_oracle() {
        let sq = unit_square();
        let t = double_moments_domain(&PlanarDomain::Polygon(sq), 4, 4).unwrap();
        for k in 0..=4 {
            for l in 0..=4 {
                let want = square_double_moment_oracle(k, l);
                assert!(
                    (t.get(k, l) - want).norm() < 1e-10,
                    "({k},{l}): {} vs {want}",
                    t.get(k, l)
                );
            }
        }
        assert!(t.is_hermitian(1e-12));
    }

    #[test]
    fn disk_double_moments_polar_oracle() {
        // polar-coordinate oracle: only the diagonal survives,
        // m̃_kk = π R^{2k+2}/(k+1)
        for &r in &[0.5, 1.0, 2.0] {
            let d = Disk {
                center: c(0.0, 0.0),
                radius: r,
            };
            let t = double_moments_domain(&PlanarDomain::Disk(d), 3, 3).unwrap();
            for k in 0..=3 {
                for l in 0..=3 {
                    let want = if k == l {
                        PI * r.powi(2 * k as i32 + 2) / (k as f64 + 1.0)
                    } else {
                        0.0
                    };
                    assert!((t.get(k, l) - c(want, 0.0)).norm() < 1e-12 * want.abs().max(1.0));
                }
            }
        }
        let unit = double_moments_domain(
            &PlanarDomain::Disk(Disk {
                center: c(0.0, 0.0),
                radius: 1.0,
            }),
            0,
            0,
        )
        .unwrap();
        assert!((unit.get(0, 0).re - PI).abs() < 1e-14);
    }

    #[test]
    fn offcenter_disk_table_is_hermitian_and_matches_polygon_style_area() {
        let d = Disk {
            center: c(0.4, -0.3),
            radius: 0.7,
        };
        let t = double_moments_domain(&PlanarDomain::Disk(d), 4, 4).unwrap();
        assert!(t.is_hermitian(1e-13));
        assert!((t.get(0, 0).re - PI * 0.49).abs() < 1e-13);
        // centroid: m̃_{10} = area * center
        assert!((t.get(1, 0) - d.center * PI * 0.49).norm() < 1e-13);
    }

    #[test]
    fn overlapping_disks_rejected() {
        let u = PlanarDomain::DiskUnion(vec![
            Disk {
                center: c(0.0, 0.0),
                radius: 1.0,
            },
            Disk {
                center: c(1.0, 0.0),
                radius: 0.5,
            },
        ]);
        assert!(matches!(
            double_moments_domain(&u, 1, 1),
            Err(ForwardError::OverlappingDisks(0, 1))
        ));
    }

    #[test]
    fn davis_bridge_on_random_polygons() {
        // ν_k = k(k-1) μ_{k-2} must equal Σ a_i z_i^k for the Davis
        // coefficients of every valid polygon
        let polys = vec![
            unit_square(),
            Polygon::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]).unwrap(),
            Polygon::new(vec![
                c(1.2, 0.1),
                c(0.7, 0.9),
                c(-0.3, 1.1),
                c(-0.9, 0.2),
                c(-0.1, -0.8),
            ])
            .unwrap(),
        ];
        for p in polys {
            let order = 2 * p.len() + 1;
            let mu = complex_moments_polygon(&p, order - 2);
            let a = p.davis_coefficients();
            let scale = mu.max_abs().max(1.0);
            for k in 0..=order {
                let shift = (k as f64) * (k as f64 - 1.0);
                let nu = if k >= 2 {
                    mu.values[k - 2] * shift
                } else {
                    c(0.0, 0.0)
                };
                let rhs: Complex64 = a
                    .iter()
                    .zip(p.vertices.iter())
                    .map(|(ai, zi)| ai * zi.powu(k as u32))
                    .sum();
                assert!(
                    (nu - rhs).norm() <= 1e-10 * scale * shift.max(1.0),
                    "k={k}: {nu} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn validate_consistency_forward_inputs() {
        let s = SpikeTrain {
            nodes: vec![0.5],
            weights: vec![0.0],
        };
        assert!(!s.validate().is_empty());
    }
}
