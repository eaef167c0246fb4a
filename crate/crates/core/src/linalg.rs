//! Dense numerical kernels: SVD-backed solves with condition reporting,
//! structured Hankel systems, polynomial root finding, and symmetric
//! eigenvalues. Everything works over `f64` and `Complex64` and targets
//! the small dimensions (≲ 100) used by the inversion systems.

use crate::poly;
use crate::scalar::Scalar;
use num_complex::Complex64;
use std::ops::{Index, IndexMut};
use thiserror::Error;

/// Relative condition-number threshold beyond which a system is
/// reported singular. Inversion code interprets singularity as
/// model-order evidence, so the cutoff is explicit.
pub const SINGULARITY_THRESHOLD: f64 = 1.0 / (100.0 * f64::EPSILON);

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is numerically singular (condition estimate {condition:.3e})")]
    Singular { condition: f64 },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is empty")]
    Empty,
    #[error("matrix is not symmetric (max asymmetry {0:.3e})")]
    NotSymmetric(f64),
    #[error("polynomial has zero leading coefficient")]
    ZeroLeadingCoefficient,
    #[error("matrix has non-finite entries")]
    NonFinite,
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::ZERO; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Mat::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |r, c| if r == c { T::ONE } else { T::ZERO })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = T::ZERO;
                for c in 0..self.cols {
                    acc += self[(r, c)] * v[c];
                }
                acc
            })
            .collect()
    }

    fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    fn all_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }
}

impl<T: Scalar> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T: Scalar> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

/// Singular value decomposition `A = U diag(σ) Vᴴ`, σ descending.
pub struct Svd<T> {
    /// Left singular vectors, one per column (only the first
    /// `min(rows, cols)` are meaningful).
    pub u: Mat<T>,
    pub singular_values: Vec<f64>,
    /// Right singular vectors, one per column.
    pub v: Mat<T>,
}

impl<T: Scalar> Svd<T> {
    /// One-sided Jacobi SVD. Rotations orthogonalize the columns of a
    /// working copy of `A`; the accumulated rotations form `V` and the
    /// column norms the singular values. Chosen for its high relative
    /// accuracy on the graded matrices (Hilbert-type, Hankel windows)
    /// this crate feeds it.
    pub fn new(a: &Mat<T>) -> Result<Self, LinalgError> {
        if a.is_empty() {
            return Err(LinalgError::Empty);
        }
        if !a.all_finite() {
            return Err(LinalgError::NonFinite);
        }
        let (m, n) = (a.rows, a.cols);
        let mut w = a.clone();
        let mut v: Mat<T> = Mat::identity(n);
        let tol = 1e-15;
        let max_sweeps = 60;
        for _ in 0..max_sweeps {
            let mut rotated = false;
            for p in 0..n {
                for q in (p + 1)..n {
                    let mut app = 0.0;
                    let mut aqq = 0.0;
                    let mut g = T::ZERO;
                    for r in 0..m {
                        let wp = w[(r, p)];
                        let wq = w[(r, q)];
                        app += wp.abs() * wp.abs();
                        aqq += wq.abs() * wq.abs();
                        g += wp.conj() * wq;
                    }
                    let gn = g.abs();
                    if gn <= tol * (app * aqq).sqrt() || gn == 0.0 {
                        continue;
                    }
                    rotated = true;
                    // absorb the phase of g, then a real Jacobi rotation
                    let phase = g.scale(1.0 / gn);
                    let tau = (aqq - app) / (2.0 * gn);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = c * t;
                    let conj_phase = phase.conj();
                    for r in 0..m {
                        let wp = w[(r, p)];
                        let wq = w[(r, q)];
                        w[(r, p)] = wp.scale(c) - (conj_phase * wq).scale(s);
                        w[(r, q)] = (phase * wp).scale(s) + wq.scale(c);
                    }
                    for r in 0..n {
                        let vp = v[(r, p)];
                        let vq = v[(r, q)];
                        v[(r, p)] = vp.scale(c) - (conj_phase * vq).scale(s);
                        v[(r, q)] = (phase * vp).scale(s) + vq.scale(c);
                    }
                }
            }
            if !rotated {
                break;
            }
        }
        // column norms are the singular values; normalize to get U
        let mut order: Vec<usize> = (0..n).collect();
        let norms: Vec<f64> = (0..n)
            .map(|c| w.column(c).iter().map(|x| x.abs() * x.abs()).sum::<f64>().sqrt())
            .collect();
        order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap());
        let mut u = Mat::zeros(m, n);
        let mut vv = Mat::zeros(n, n);
        let mut sigma = Vec::with_capacity(n);
        for (dst, &src) in order.iter().enumerate() {
            let s = norms[src];
            sigma.push(s);
            for r in 0..m {
                u[(r, dst)] = if s > 0.0 {
                    w[(r, src)].scale(1.0 / s)
                } else {
                    T::ZERO
                };
            }
            for r in 0..n {
                vv[(r, dst)] = v[(r, src)];
            }
        }
        Ok(Svd {
            u,
            singular_values: sigma,
            v: vv,
        })
    }

    /// σ_max / σ_min, `f64::INFINITY` when rank deficient.
    pub fn condition(&self) -> f64 {
        let smax = self.singular_values.first().copied().unwrap_or(0.0);
        let smin = self.singular_values.last().copied().unwrap_or(0.0);
        if smin == 0.0 {
            f64::INFINITY
        } else {
            smax / smin
        }
    }

    /// Minimum-norm least-squares solution with relative cutoff on the
    /// singular values.
    pub fn solve_lstsq(&self, rhs: &[T], rel_cutoff: f64) -> Vec<T> {
        let m = self.u.rows;
        let n = self.v.rows;
        assert_eq!(rhs.len(), m);
        let smax = self.singular_values.first().copied().unwrap_or(0.0);
        let cutoff = smax * rel_cutoff;
        let mut x = vec![T::ZERO; n];
        for (k, &s) in self.singular_values.iter().enumerate() {
            if s <= cutoff || s == 0.0 {
                continue;
            }
            let mut proj = T::ZERO;
            for (r, &b) in rhs.iter().enumerate() {
                proj += self.u[(r, k)].conj() * b;
            }
            let coeff = proj.scale(1.0 / s);
            for (r, xr) in x.iter_mut().enumerate() {
                *xr += self.v[(r, k)] * coeff;
            }
        }
        x
    }
}

/// Solution of a linear system together with the spectral condition
/// estimate of its matrix.
#[derive(Clone, Debug)]
pub struct Solution<T> {
    pub x: Vec<T>,
    pub condition: f64,
}

/// Solve a square system. Reports the condition estimate and fails with
/// a singularity error when it exceeds [`SINGULARITY_THRESHOLD`].
pub fn solve<T: Scalar>(a: &Mat<T>, rhs: &[T]) -> Result<Solution<T>, LinalgError> {
    if a.rows != a.cols {
        return Err(LinalgError::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    if rhs.len() != a.rows {
        return Err(LinalgError::DimensionMismatch(format!(
            "rhs length {} vs matrix dimension {}",
            rhs.len(),
            a.rows
        )));
    }
    let svd = Svd::new(a)?;
    let condition = svd.condition();
    if !condition.is_finite() || condition > SINGULARITY_THRESHOLD {
        return Err(LinalgError::Singular { condition });
    }
    let x = svd.solve_lstsq(rhs, 0.0);
    Ok(Solution { x, condition })
}

/// Least-squares solve of a (possibly rectangular) system, with a
/// relative singular-value cutoff of 1e-12.
pub fn lstsq<T: Scalar>(a: &Mat<T>, rhs: &[T]) -> Result<Solution<T>, LinalgError> {
    if rhs.len() != a.rows {
        return Err(LinalgError::DimensionMismatch(format!(
            "rhs length {} vs row count {}",
            rhs.len(),
            a.rows
        )));
    }
    let svd = Svd::new(a)?;
    let condition = svd.condition();
    let x = svd.solve_lstsq(rhs, 1e-12);
    Ok(Solution { x, condition })
}

/// Smallest singular value and the corresponding right singular vector
/// (unit norm). By construction `‖A v‖ = σ_min` up to rounding.
pub fn min_singular_vector<T: Scalar>(a: &Mat<T>) -> Result<(f64, Vec<T>), LinalgError> {
    let svd = Svd::new(a)?;
    let k = svd.singular_values.len() - 1;
    let v = svd.v.column(k);
    Ok((svd.singular_values[k], v))
}

/// Build the n×n Hankel matrix `H[r][j] = window[r+j]` from a moment
/// window of length ≥ 2n-1.
pub fn hankel_matrix<T: Scalar>(window: &[T], n: usize) -> Mat<T> {
    assert!(
        n > 0 && window.len() >= 2 * n - 1,
        "window too short for Hankel order"
    );
    Mat::from_fn(n, n, |r, j| window[r + j])
}

/// Solve the square Hankel system built from a moment window. A
/// singular window signals an overestimated model order upstream.
pub fn hankel_solve<T: Scalar>(window: &[T], rhs: &[T]) -> Result<Solution<T>, LinalgError> {
    let n = rhs.len();
    if n == 0 {
        return Err(LinalgError::Empty);
    }
    if window.len() < 2 * n - 1 {
        return Err(LinalgError::DimensionMismatch(format!(
            "Hankel window of length {} cannot form an order-{} system",
            window.len(),
            n
        )));
    }
    solve(&hankel_matrix(window, n), rhs)
}

/// Hilbert-type moment matrix with entries `1/(j+k+1)`; symmetric,
/// positive definite, and Hankel.
#[derive(Clone, Copy, Debug)]
pub struct HilbertLikeMatrix {
    /// Matrix dimension (`degree + 1` for a degree-d fit).
    pub dim: usize,
}

impl HilbertLikeMatrix {
    pub fn for_degree(degree: usize) -> Self {
        HilbertLikeMatrix { dim: degree + 1 }
    }

    pub fn entry(&self, k: usize, j: usize) -> f64 {
        1.0 / ((k + j + 1) as f64)
    }

    pub fn to_mat(&self) -> Mat<f64> {
        Mat::from_fn(self.dim, self.dim, |k, j| self.entry(k, j))
    }

    /// Asymptotic smallest eigenvalue `K √d ρ^{-4(d+1)}` with
    /// K = 8π√(2π)·2^{1/4} and ρ = 1+√2, for dimension d+1.
    pub fn asymptotic_min_eigenvalue(degree: usize) -> f64 {
        let k = 8.0
            * std::f64::consts::PI
            * (2.0 * std::f64::consts::PI).sqrt()
            * 2.0_f64.powf(0.25);
        let rho = 1.0 + 2.0_f64.sqrt();
        let d = degree as f64;
        k * d.sqrt() * rho.powf(-4.0 * (d + 1.0))
    }
}

/// Smallest eigenvalue of a symmetric matrix via cyclic Jacobi
/// rotations (high relative accuracy on positive definite input).
pub fn min_eigenvalue_spd(a: &Mat<f64>) -> Result<f64, LinalgError> {
    if a.rows != a.cols {
        return Err(LinalgError::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    if a.is_empty() {
        return Err(LinalgError::Empty);
    }
    let scale = a.max_abs();
    let mut asym: f64 = 0.0;
    for r in 0..a.rows {
        for c in (r + 1)..a.cols {
            asym = asym.max((a[(r, c)] - a[(c, r)]).abs());
        }
    }
    if asym > 1e-12 * scale.max(1e-300) {
        return Err(LinalgError::NotSymmetric(asym));
    }
    Ok(*jacobi_eigenvalues(a)
        .iter()
        .min_by(|x, y| x.partial_cmp(y).unwrap())
        .unwrap())
}

/// All eigenvalues of a symmetric matrix, unordered.
pub fn jacobi_eigenvalues(a: &Mat<f64>) -> Vec<f64> {
    let n = a.rows;
    let mut m = a.clone();
    let tol = 1e-15;
    for _ in 0..100 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let app = m[(p, p)];
                let aqq = m[(q, q)];
                if apq.abs() <= tol * (app.abs() * aqq.abs()).sqrt() {
                    continue;
                }
                rotated = true;
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for r in 0..n {
                    let mrp = m[(r, p)];
                    let mrq = m[(r, q)];
                    m[(r, p)] = c * mrp - s * mrq;
                    m[(r, q)] = s * mrp + c * mrq;
                }
                for r in 0..n {
                    let mpr = m[(p, r)];
                    let mqr = m[(q, r)];
                    m[(p, r)] = c * mpr - s * mqr;
                    m[(q, r)] = s * mpr + c * mqr;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    (0..n).map(|i| m[(i, i)]).collect()
}

/// All complex roots of a real-coefficient polynomial.
pub fn poly_roots(coeffs: &[f64]) -> Result<Vec<Complex64>, LinalgError> {
    let c: Vec<Complex64> = coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    poly_roots_complex(&c)
}

/// All complex roots of a complex-coefficient polynomial, with
/// multiplicity. Degree 1 and 2 use closed forms; higher degrees use
/// Aberth-Ehrlich simultaneous iteration with a deterministic
/// perturbation restart on stagnation.
pub fn poly_roots_complex(coeffs: &[Complex64]) -> Result<Vec<Complex64>, LinalgError> {
    if coeffs.is_empty() {
        return Err(LinalgError::Empty);
    }
    let lead = *coeffs.last().unwrap();
    if lead == Complex64::new(0.0, 0.0) {
        return Err(LinalgError::ZeroLeadingCoefficient);
    }
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(LinalgError::NonFinite);
    }
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Ok(vec![]);
    }
    // pull out exact roots at the origin
    let zeros_at_origin = coeffs
        .iter()
        .take_while(|c| **c == Complex64::new(0.0, 0.0))
        .count();
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros_at_origin];
    let reduced: Vec<Complex64> = coeffs[zeros_at_origin..]
        .iter()
        .map(|&c| c / lead)
        .collect();
    let d = reduced.len() - 1;
    match d {
        0 => {}
        1 => roots.push(-reduced[0]),
        2 => {
            let b = reduced[1];
            let c0 = reduced[0];
            let disc = (b * b - c0.scale(4.0)).sqrt();
            // pick the sign that avoids cancellation in -b ∓ disc
            let q = if (b.conj() * disc).re >= 0.0 {
                (-b - disc).scale(0.5)
            } else {
                (-b + disc).scale(0.5)
            };
            if q.norm() > 0.0 {
                roots.push(q);
                roots.push(c0 / q);
            } else {
                roots.push(Complex64::new(0.0, 0.0));
                roots.push(-b);
            }
        }
        _ => roots.extend(aberth(&reduced)),
    }
    Ok(roots)
}

fn aberth(monic: &[Complex64]) -> Vec<Complex64> {
    let d = monic.len() - 1;
    let deriv = poly::derivative(monic);
    let radius = 1.0 + monic[..d].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|j| {
            let angle = 2.0 * std::f64::consts::PI * (j as f64) / (d as f64) + 0.39;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    let mut rng_state: u64 = 0x9e3779b97f4a7c15;
    let mut next_unit = move || {
        rng_state = rng_state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((rng_state >> 11) as f64) / ((1u64 << 53) as f64) * 2.0 - 1.0
    };
    let mut best = z.clone();
    let mut best_upd = f64::INFINITY;
    let mut stagnant = 0usize;
    for _sweep in 0..200 {
        let mut max_upd: f64 = 0.0;
        for i in 0..d {
            let p = poly::eval(monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let pd = poly::eval(&deriv, z[i]);
            let newton = if pd.norm() > 0.0 {
                p / pd
            } else {
                Complex64::new(1e-8, 1e-8)
            };
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..d {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 0.0 {
                        s += Complex64::new(1.0, 0.0) / diff;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * s;
            let w = if denom.norm() > 1e-290 {
                newton / denom
            } else {
                newton
            };
            z[i] -= w;
            max_upd = max_upd.max(w.norm() / (1.0 + z[i].norm()));
        }
        if max_upd < 1e-13 {
            return polish(monic, &deriv, z);
        }
        if max_upd < best_upd {
            best_upd = max_upd;
            best = z.clone();
            stagnant = 0;
        } else {
            stagnant += 1;
            if stagnant > 25 {
                // restart from a perturbed copy of the best iterate
                for zi in z.iter_mut() {
                    let mag = 1e-3 * (1.0 + zi.norm());
                    *zi += Complex64::new(next_unit() * mag, next_unit() * mag);
                }
                stagnant = 0;
            }
        }
    }
    polish(monic, &deriv, best)
}

fn polish(monic: &[Complex64], deriv: &[Complex64], mut z: Vec<Complex64>) -> Vec<Complex64> {
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let p = poly::eval(monic, *zi);
            let pd = poly::eval(deriv, *zi);
            if pd.norm() == 0.0 {
                break;
            }
            let step = p / pd;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            *zi -= step;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn solve_identity() {
        let a = Mat::<f64>::identity(2);
        let sol = solve(&a, &[1.0, 2.0]).unwrap();
        assert!((sol.x[0] - 1.0).abs() < 1e-14);
        assert!((sol.x[1] - 2.0).abs() < 1e-14);
        assert!((sol.condition - 1.0).abs() < 1e-10);
    }

    #[test]
    fn solve_hilbert_2x2() {
        // [[1,1/2],[1/2,1/3]] x = (1, 1/2) has solution (1, 0); det = 1/12
        let h = HilbertLikeMatrix::for_degree(1).to_mat();
        let sol = solve(&h, &[1.0, 0.5]).unwrap();
        assert!((sol.x[0] - 1.0).abs() < 1e-12, "{:?}", sol.x);
        assert!(sol.x[1].abs() < 1e-12, "{:?}", sol.x);
    }

    #[test]
    fn solve_zero_matrix_is_singular() {
        let a = Mat::<f64>::zeros(2, 2);
        match solve(&a, &[1.0, 1.0]) {
            Err(LinalgError::Singular { .. }) => {}
            other => panic!("expected singularity, got {:?}", other.map(|s| s.x)),
        }
    }

    #[test]
    fn min_singular_vector_diagonal() {
        let mut a = Mat::<f64>::zeros(2, 2);
        a[(0, 0)] = 2.0;
        let (s, v) = min_singular_vector(&a).unwrap();
        assert!(s.abs() < 1e-14);
        assert!(v[0].abs() < 1e-12 && (v[1].abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn min_singular_vector_rank_one() {
        // [[1,1],[1,1]]: sigma_min = 0, v = (1,-1)/sqrt(2)
        let a = Mat::from_fn(2, 2, |_, _| 1.0);
        let (s, v) = min_singular_vector(&a).unwrap();
        assert!(s < 1e-14);
        let dot = (v[0] - v[1]).abs() / 2.0_f64.sqrt();
        assert!((dot - 1.0).abs() < 1e-12, "v = {:?}", v);
    }

    #[test]
    fn min_singular_vector_identity() {
        let a = Mat::<f64>::identity(2);
        let (s, _) = min_singular_vector(&a).unwrap();
        assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hankel_single_spike_recurrence() {
        // moments (1, .5, .25): 1x1 system C0 * 1 = 0.5
        let sol = hankel_solve(&[1.0, 0.5, 0.25], &[0.5]).unwrap();
        assert!((sol.x[0] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn hankel_two_spike_recurrence() {
        // spikes (0.25, w=1), (0.75, w=2): node polynomial t^2 - t + 3/16
        let m = [3.0, 1.75, 1.1875, 0.859375];
        let sol = hankel_solve(&m[..3], &m[2..4]).unwrap();
        // recurrence m_{r+2} = C0 m_r + C1 m_{r+1}; node poly coeffs are (-C0, -C1, 1)
        assert!((sol.x[0] + 3.0 / 16.0).abs() < 1e-12, "{:?}", sol.x);
        assert!((sol.x[1] - 1.0).abs() < 1e-12, "{:?}", sol.x);
    }

    #[test]
    fn hankel_overestimated_order_is_singular() {
        // single spike at 0.5 with weight 1, forced into a 2x2 window
        let m = [1.0, 0.5, 0.25, 0.125];
        match hankel_solve(&m[..3], &[0.25, 0.125]) {
            Err(LinalgError::Singular { .. }) => {}
            other => panic!("expected singular window, got {:?}", other.map(|s| s.x)),
        }
    }

    #[test]
    fn roots_quadratic_spike_nodes() {
        // t^2 - t + 3/16 -> {0.25, 0.75}
        let mut r = poly_roots(&[3.0 / 16.0, -1.0, 1.0]).unwrap();
        r.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((r[0] - c(0.25, 0.0)).norm() < 1e-12);
        assert!((r[1] - c(0.75, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn roots_of_unit_circle_pair() {
        let mut r = poly_roots(&[1.0, 0.0, 1.0]).unwrap();
        r.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((r[0] - c(0.0, -1.0)).norm() < 1e-12);
        assert!((r[1] - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn roots_linear() {
        let r = poly_roots(&[-0.5, 1.0]).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0] - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn roots_zero_leading_coefficient_rejected() {
        assert!(matches!(
            poly_roots(&[1.0, 2.0, 0.0]),
            Err(LinalgError::ZeroLeadingCoefficient)
        ));
    }

    #[test]
    fn roots_degree_eight_random_monic() {
        // residual check |p(root)| <= 1e-10 * scale on a stiff-ish real poly
        let coeffs: Vec<f64> = vec![0.3, -1.2, 0.8, 2.0, -0.7, 0.1, -1.5, 0.4, 1.0];
        let roots = poly_roots(&coeffs).unwrap();
        assert_eq!(roots.len(), 8);
        for &r in &roots {
            let p = poly::eval_at_complex(&coeffs, r);
            let scale: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(j, &cf)| cf.abs() * r.norm().powi(j as i32))
                .sum();
            assert!(p.norm() <= 1e-10 * scale.max(1.0), "residual {}", p.norm());
        }
    }

    #[test]
    fn min_eigenvalue_identity_and_diag() {
        assert!((min_eigenvalue_spd(&Mat::<f64>::identity(3)).unwrap() - 1.0).abs() < 1e-12);
        let mut d = Mat::<f64>::zeros(2, 2);
        d[(0, 0)] = 3.0;
        d[(1, 1)] = 5.0;
        assert!((min_eigenvalue_spd(&d).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn min_eigenvalue_rejects_asymmetric() {
        let mut a = Mat::<f64>::zeros(2, 2);
        a[(0, 1)] = 1.0;
        assert!(matches!(
            min_eigenvalue_spd(&a),
            Err(LinalgError::NotSymmetric(_))
        ));
    }

    #[test]
    fn hilbert_5x5_min_eigenvalue_matches_reference() {
        // known lambda_min of the 5x5 Hilbert matrix
        let h = HilbertLikeMatrix::for_degree(4).to_mat();
        let lam = min_eigenvalue_spd(&h).unwrap();
        assert!(
            (lam - 3.2879e-6).abs() / 3.2879e-6 < 1e-3,
            "lambda_min = {lam:.6e}"
        );
        let asym = HilbertLikeMatrix::asymptotic_min_eigenvalue(4);
        let ratio = lam / asym;
        assert!(ratio > 1.0 / 1.5 && ratio < 1.5, "ratio = {ratio}");
    }

    #[test]
    fn complex_solve_small_system() {
        let a = Mat::from_fn(2, 2, |r, q| {
            if r == q {
                c(0.0, 1.0)
            } else {
                c(1.0, 0.0)
            }
        });
        let rhs = [c(1.0, 1.0), c(0.0, 2.0)];
        let sol = solve(&a, &rhs).unwrap();
        let back = a.mul_vec(&sol.x);
        for (u, w) in back.iter().zip(rhs.iter()) {
            assert!((u - w).norm() < 1e-12);
        }
    }

    #[test]
    fn svd_residual_on_random_well_conditioned() {
        // deterministic pseudo-random instances, condition < 1e6
        let mut state = 1u64;
        let mut rnd = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64) / ((1u64 << 53) as f64) * 2.0 - 1.0
        };
        for _ in 0..20 {
            let n = 6;
            let mut a = Mat::<f64>::zeros(n, n);
            for r in 0..n {
                for q in 0..n {
                    a[(r, q)] = rnd();
                }
                a[(r, r)] += 3.0;
            }
            let rhs: Vec<f64> = (0..n).map(|_| rnd()).collect();
            let sol = solve(&a, &rhs).unwrap();
            let back = a.mul_vec(&sol.x);
            let rnorm: f64 = back
                .iter()
                .zip(rhs.iter())
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt();
            let bnorm: f64 = rhs.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!(sol.condition < 1e6);
            assert!(rnorm <= 1e-9 * bnorm, "residual {rnorm}");
        }
    }
}
