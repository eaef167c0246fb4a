//! Reconstruction of model parameters from finite moment data: Hilbert
//! systems for polynomials and rationals, the Prony pipeline for spike
//! trains and polygon vertices, and the exponential-transform algorithm
//! for quadrature domains.

use crate::forward;
use crate::genfun;
use crate::linalg::{self, HilbertLikeMatrix, LinalgError, Mat};
use crate::models::{
    ComplexMomentSequence, DefiningPolynomial, DoubleMomentTable, ModelError, MomentSequence,
    Polygon, PolynomialModel, QuadratureData, RationalModel, SpikeTrain,
};
use crate::poly;
use crate::scalar::Scalar;
use num_complex::Complex64;
use thiserror::Error;

/// Relative σ_min/σ_max threshold for the rank tests (order detection
/// and the quadrature-domain determinant condition).
pub const RANK_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum InversionError {
    #[error("need at least {needed} moments, got {got}")]
    InsufficientMoments { needed: usize, got: usize },
    #[error("model order {0} is not supported here: {1}")]
    BadOrder(usize, &'static str),
    #[error("singular moment window (condition {condition:.3e}): the model order is overestimated")]
    OrderOverestimate { condition: f64 },
    #[error("recovered node {0} is not a real node in (0,1)")]
    InvalidNode(Complex64),
    #[error("recovered nodes collide (separation {0:.3e})")]
    NodeCollision(f64),
    #[error("recovered denominator has a root inside [0,1]: {0}")]
    PoleInInterval(String),
    #[error("round-trip residual {residual:.3e} exceeds tolerance {tolerance:.3e}: model mismatch")]
    ResidualTooLarge { residual: f64, tolerance: f64 },
    #[error("recovered weights disagree with the vertex formula by {0:.3e}: not a polygon")]
    NotAPolygon(f64),
    #[error("vertex ordering is ambiguous: {0}")]
    AmbiguousOrdering(String),
    #[error("no order N ≤ {0} makes the transform matrix singular: not a quadrature domain at this order")]
    NotQuadratureDomain(usize),
    #[error("reconstruction inconsistent: {0}")]
    ReconstructionInconsistent(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Genfun(#[from] genfun::GenfunError),
}

impl InversionError {
    /// Stable machine-readable error name (used in CLI diagnostics).
    pub fn name(&self) -> &'static str {
        match self {
            InversionError::InsufficientMoments { .. } => "insufficient-moments",
            InversionError::BadOrder(..) => "bad-order",
            InversionError::OrderOverestimate { .. } => "order-overestimate",
            InversionError::InvalidNode(_) => "invalid-node",
            InversionError::NodeCollision(_) => "node-collision",
            InversionError::PoleInInterval(_) => "pole-in-interval",
            InversionError::ResidualTooLarge { .. } => "residual-too-large",
            InversionError::NotAPolygon(_) => "not-a-polygon",
            InversionError::AmbiguousOrdering(_) => "ordering-ambiguous",
            InversionError::NotQuadratureDomain(_) => "not-a-quadrature-domain",
            InversionError::ReconstructionInconsistent(_) => "reconstruction-inconsistent",
            InversionError::Linalg(_) => "linear-algebra",
            InversionError::Model(_) => "invalid-model",
            InversionError::Genfun(_) => "generating-function",
        }
    }
}

/// Diagnostics attached to every successful inversion.
#[derive(Clone, Debug, Default)]
pub struct InversionReport {
    /// Condition estimate of the dominating linear solve.
    pub condition: f64,
    /// Relative round-trip residual of the recovered model against the
    /// input moments.
    pub residual: f64,
    /// Model order detected by a rank test, where one applies.
    pub detected_order: Option<usize>,
    pub warnings: Vec<String>,
}

fn relative_residual(got: &[f64], want: &[f64]) -> f64 {
    let scale = want.iter().map(|v| v.abs()).fold(1.0, f64::max);
    got.iter()
        .zip(want.iter())
        .map(|(g, w)| (g - w).abs())
        .fold(0.0, f64::max)
        / scale
}

fn relative_residual_c(got: &[Complex64], want: &[Complex64]) -> f64 {
    let scale = want.iter().map(|v| v.norm()).fold(1.0, f64::max);
    got.iter()
        .zip(want.iter())
        .map(|(g, w)| (g - w).norm())
        .fold(0.0, f64::max)
        / scale
}

// ---------------------------------------------------------------------------
// polynomial inversion

/// Recover a degree-d polynomial from its first d+1 moments by solving
/// the Hilbert-type system H a = m. The report carries the spectral
/// condition estimate and the round-trip residual over the whole
/// provided moment window; degrees above 10 earn a warning because the
/// smallest eigenvalue of H decays like ρ^{-4(d+1)}.
pub fn invert_polynomial(
    m: &MomentSequence,
    degree: usize,
) -> Result<(PolynomialModel, InversionReport), InversionError> {
    if m.values.len() < degree + 1 {
        return Err(InversionError::InsufficientMoments {
            needed: degree + 1,
            got: m.values.len(),
        });
    }
    let h = HilbertLikeMatrix::for_degree(degree).to_mat();
    let sol = linalg::solve(&h, &m.values[..=degree])?;
    let model = PolynomialModel::from_coefficients(sol.x)?;
    let forward = forward::moments_polynomial(&model, m.values.len() - 1);
    let residual = relative_residual(&forward.values, &m.values);
    let mut warnings = Vec::new();
    if degree > 10 {
        warnings.push(format!(
            "degree {degree} Hilbert system has condition {:.3e}; coefficient recovery degrades sharply",
            sol.condition
        ));
    }
    Ok((
        model,
        InversionReport {
            condition: sol.condition,
            residual,
            detected_order: None,
            warnings,
        },
    ))
}

// ---------------------------------------------------------------------------
// Prony pipeline

/// Shared Prony core over complex data: solve the Hankel recursion
/// system for the annihilating coefficients, take the roots of the node
/// polynomial, then solve the Vandermonde system for the weights.
fn complex_prony(
    values: &[Complex64],
    n: usize,
) -> Result<(Vec<Complex64>, Vec<Complex64>, f64), InversionError> {
    if n == 0 {
        return Err(InversionError::BadOrder(0, "need at least one node"));
    }
    if values.len() < 2 * n {
        return Err(InversionError::InsufficientMoments {
            needed: 2 * n,
            got: values.len(),
        });
    }
    let recursion = linalg::hankel_solve(&values[..2 * n - 1], &values[n..2 * n]).map_err(
        |e| match e {
            LinalgError::Singular { condition } => InversionError::OrderOverestimate { condition },
            other => InversionError::Linalg(other),
        },
    )?;
    let mut node_poly: Vec<Complex64> = recursion.x.iter().map(|&c| -c).collect();
    node_poly.push(Complex64::new(1.0, 0.0));
    let nodes = linalg::poly_roots_complex(&node_poly)?;
    let scale = nodes.iter().map(|z| z.norm()).fold(1.0, f64::max);
    for i in 0..nodes.len() {
        for j in (i + 1)..nodes.len() {
            let sep = (nodes[i] - nodes[j]).norm();
            if sep <= 1e-8 * scale {
                return Err(InversionError::NodeCollision(sep));
            }
        }
    }
    let vand = Mat::from_fn(n, n, |k, i| nodes[i].powu(k as u32));
    let weights = linalg::solve(&vand, &values[..n]).map_err(|e| match e {
        LinalgError::Singular { .. } => InversionError::NodeCollision(0.0),
        other => InversionError::Linalg(other),
    })?;
    Ok((
        nodes,
        weights.x,
        recursion.condition.max(weights.condition),
    ))
}

/// Damped Gauss-Newton polish of a spike train against its 2n moment
/// equations; accepted only while it reduces the residual norm.
fn polish_spikes(m: &[f64], nodes: &mut [f64], weights: &mut [f64]) {
    let n = nodes.len();
    let rows = m.len();
    let residual = |x: &[f64], a: &[f64]| -> Vec<f64> {
        (0..rows)
            .map(|k| {
                x.iter()
                    .zip(a.iter())
                    .map(|(xi, ai)| ai * xi.powi(k as i32))
                    .sum::<f64>()
                    - m[k]
            })
            .collect()
    };
    let norm = |r: &[f64]| r.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut r = residual(nodes, weights);
    let mut rn = norm(&r);
    for _ in 0..8 {
        if rn == 0.0 {
            break;
        }
        let jac = Mat::from_fn(rows, 2 * n, |k, col| {
            if col < n {
                nodes[col].powi(k as i32)
            } else if k == 0 {
                0.0
            } else {
                weights[col - n] * k as f64 * nodes[col - n].powi(k as i32 - 1)
            }
        });
        let Ok(step) = linalg::lstsq(&jac, &r) else {
            break;
        };
        let mut t = 1.0;
        let mut improved = false;
        for _ in 0..20 {
            let cand_w: Vec<f64> = weights
                .iter()
                .zip(step.x[..n].iter())
                .map(|(w, d)| w - t * d)
                .collect();
            let cand_x: Vec<f64> = nodes
                .iter()
                .zip(step.x[n..].iter())
                .map(|(x, d)| x - t * d)
                .collect();
            let still_ordered = cand_x.windows(2).all(|w| w[0] < w[1])
                && cand_x.iter().all(|&x| 0.0 < x && x < 1.0);
            if still_ordered {
                let r2 = residual(&cand_x, &cand_w);
                let rn2 = norm(&r2);
                if rn2 < rn {
                    nodes.copy_from_slice(&cand_x);
                    weights.copy_from_slice(&cand_w);
                    r = r2;
                    rn = rn2;
                    improved = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !improved {
            break;
        }
    }
}

/// Prony recovery of an n-spike train from its first 2n moments,
/// followed by a Gauss-Newton polish of the full nonlinear system that
/// runs the recovery down to the conditioning floor of the data.
pub fn prony(
    m: &MomentSequence,
    n: usize,
) -> Result<(SpikeTrain, InversionReport), InversionError> {
    let values: Vec<Complex64> = m.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let (roots, raw_weights, condition) = complex_prony(&values, n)?;
    let mut nodes = Vec::with_capacity(n);
    for &z in &roots {
        if z.im.abs() > 1e-8 {
            return Err(InversionError::InvalidNode(z));
        }
        if !(0.0 < z.re && z.re < 1.0) {
            return Err(InversionError::InvalidNode(z));
        }
        nodes.push(z.re);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| nodes[i].partial_cmp(&nodes[j]).unwrap());
    let mut nodes: Vec<f64> = order.iter().map(|&i| nodes[i]).collect();
    let mut weights: Vec<f64> = order.iter().map(|&i| raw_weights[i].re).collect();
    polish_spikes(&m.values[..2 * n], &mut nodes, &mut weights);
    let train = SpikeTrain::new(nodes, weights)?;
    let forward = forward::moments_spikes(&train, m.values.len() - 1);
    let residual = relative_residual(&forward.values, &m.values);
    Ok((
        train,
        InversionReport {
            condition,
            residual,
            detected_order: None,
            warnings: Vec::new(),
        },
    ))
}

/// Smallest n whose (n+1)×(n+1) Hankel matrix is numerically rank
/// deficient (σ_min/σ_max < 1e-10); `None` when every order up to
/// `n_max` (capped by the available window) looks regular.
pub fn estimate_order<T: Scalar>(values: &[T], n_max: usize) -> Option<usize> {
    let effective = n_max.min(values.len().saturating_sub(1) / 2);
    for n in 0..=effective {
        let h = linalg::hankel_matrix(&values[..2 * n + 1], n + 1);
        let Ok(svd) = linalg::Svd::new(&h) else {
            continue;
        };
        let smax = svd.singular_values[0];
        let smin = *svd.singular_values.last().unwrap();
        if smax == 0.0 || smin / smax < RANK_THRESHOLD {
            return Some(n);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// rational inversion

/// Recover a degree-d rational model from 3d+1 moments by the linear
/// system Σ_j h_{kj} a_j - Σ_j m_{k+j} b_j = 0, k = 0..2d, with the
/// monic normalization b_d = 1, solved in the least-squares sense. The
/// result must be pole-free on [0,1] and round-trip its moments to
/// 1e-7 relative.
pub fn invert_rational(
    m: &MomentSequence,
    degree: usize,
) -> Result<(RationalModel, InversionReport), InversionError> {
    const ROUND_TRIP_TOL: f64 = 1e-7;
    if degree == 0 {
        return Err(InversionError::BadOrder(0, "rational degree must be ≥ 1"));
    }
    let needed = 3 * degree + 1;
    if m.values.len() < needed {
        return Err(InversionError::InsufficientMoments {
            needed,
            got: m.values.len(),
        });
    }
    let d = degree;
    let rows = 2 * d + 1;
    let a = Mat::from_fn(rows, 2 * d, |k, col| {
        if col < d {
            1.0 / ((k + col + 1) as f64)
        } else {
            -m.values[k + (col - d)]
        }
    });
    let rhs: Vec<f64> = (0..rows).map(|k| m.values[k + d]).collect();
    let sol = linalg::lstsq(&a, &rhs)?;
    let numerator = poly::trim(&sol.x[..d], 0.0);
    let mut denominator = sol.x[d..].to_vec();
    denominator.push(1.0);
    let model = RationalModel::new(numerator, denominator).map_err(|e| match &e {
        ModelError::Invalid { violations, .. }
            if violations.iter().any(|v| v.contains("pole inside")) =>
        {
            InversionError::PoleInInterval(violations.join("; "))
        }
        _ => InversionError::Model(e),
    })?;
    let forward = forward::moments_rational(&model, m.values.len() - 1)
        .map_err(|e| InversionError::ReconstructionInconsistent(e.to_string()))?;
    let residual = relative_residual(&forward.values, &m.values);
    if residual > ROUND_TRIP_TOL {
        return Err(InversionError::ResidualTooLarge {
            residual,
            tolerance: ROUND_TRIP_TOL,
        });
    }
    Ok((
        model,
        InversionReport {
            condition: sol.condition,
            residual,
            detected_order: None,
            warnings: Vec::new(),
        },
    ))
}

// ---------------------------------------------------------------------------
// polygon inversion

/// Recover an n-gon from its first 2n complex moments via the shifted
/// moments ν_k = k(k-1) μ_{k-2} and the complex Prony pipeline, order
/// the vertices counterclockwise around their centroid, and verify the
/// recovered weights against the closed-form vertex coefficients.
pub fn invert_polygon(
    mu: &ComplexMomentSequence,
    n: usize,
) -> Result<(Polygon, Vec<Complex64>, InversionReport), InversionError> {
    const DAVIS_TOL: f64 = 1e-6;
    if n < 3 {
        return Err(InversionError::BadOrder(n, "a polygon needs ≥ 3 vertices"));
    }
    if mu.values.len() < 2 * n {
        return Err(InversionError::InsufficientMoments {
            needed: 2 * n,
            got: mu.values.len(),
        });
    }
    // shifted moments: ν_0 = ν_1 = 0 by construction
    let nu: Vec<Complex64> = (0..2 * n + 2)
        .map(|k| {
            if k < 2 {
                Complex64::new(0.0, 0.0)
            } else {
                mu.values[k - 2] * ((k * (k - 1)) as f64)
            }
        })
        .collect();
    let (vertices, weights, condition) = complex_prony(&nu, n)?;
    // counterclockwise order by angle around the vertex centroid
    let centroid = vertices.iter().sum::<Complex64>() / (n as f64);
    let mut order: Vec<usize> = (0..n).collect();
    let angle = |z: Complex64| (z - centroid).arg();
    order.sort_by(|&i, &j| angle(vertices[i]).partial_cmp(&angle(vertices[j])).unwrap());
    for w in order.windows(2) {
        let gap = angle(vertices[w[1]]) - angle(vertices[w[0]]);
        if gap.abs() < 1e-9 {
            return Err(InversionError::AmbiguousOrdering(format!(
                "vertices {} and {} subtend the same centroid angle",
                w[0], w[1]
            )));
        }
    }
    // canonical start: lexicographically smallest vertex
    let start = (0..n)
        .min_by(|&i, &j| {
            let a = vertices[order[i]];
            let b = vertices[order[j]];
            (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap()
        })
        .unwrap();
    order.rotate_left(start);
    let ordered_vertices: Vec<Complex64> = order.iter().map(|&i| vertices[i]).collect();
    let ordered_weights: Vec<Complex64> = order.iter().map(|&i| weights[i]).collect();
    let polygon = Polygon::new(ordered_vertices).map_err(|e| match e {
        ModelError::Invalid { violations, .. } => {
            InversionError::ReconstructionInconsistent(violations.join("; "))
        }
        other => InversionError::Model(other),
    })?;
    let davis = polygon.davis_coefficients();
    let weight_gap = davis
        .iter()
        .zip(ordered_weights.iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    if weight_gap > DAVIS_TOL {
        return Err(InversionError::NotAPolygon(weight_gap));
    }
    let forward = forward::complex_moments_polygon(&polygon, mu.values.len() - 1);
    let residual = relative_residual_c(&forward.values, &mu.values);
    Ok((
        polygon,
        ordered_weights,
        InversionReport {
            condition,
            residual,
            detected_order: None,
            warnings: Vec::new(),
        },
    ))
}

// ---------------------------------------------------------------------------
// quadrature domains

fn falling_factorial(k: usize, j: usize) -> f64 {
    if j > k {
        return 0.0;
    }
    ((k - j + 1)..=k).map(|v| v as f64).product::<f64>().max(1.0)
}

/// Reconstruct a quadrature domain from its double-moment table:
/// (1) build the exponential transform, (2) find the minimal N whose
/// (N+1)×(N+1) coefficient matrix is rank deficient and read the node
/// polynomial off its null vector, (3) multiply p(z) p̄(w) against the
/// exponential factor and keep the part without negative powers as the
/// defining polynomial q(z, w̄). Nodes come with multiplicities from
/// root clustering; point coefficients from the confluent Vandermonde
/// fit of the l = 0 moment column. The sign of q is checked at the
/// supplied interior point, or at the recovered nodes when none is
/// given.
pub fn invert_quadrature_domain(
    table: &DoubleMomentTable,
    n_max: usize,
    interior: Option<Complex64>,
) -> Result<(QuadratureData, DefiningPolynomial, InversionReport), InversionError> {
    if table.rows() <= n_max || table.cols() <= n_max {
        return Err(InversionError::InsufficientMoments {
            needed: n_max + 1,
            got: table.rows().min(table.cols()),
        });
    }
    let b = genfun::exp_transform(table, n_max + 1)?;
    // step 2: minimal N with a numerically singular coefficient matrix
    let mut found: Option<(usize, f64)> = None;
    for n in 0..=n_max {
        let bn = Mat::from_fn(n + 1, n + 1, |k, l| b.get(k, l));
        let svd = linalg::Svd::new(&bn)?;
        let smax = svd.singular_values[0];
        let smin = *svd.singular_values.last().unwrap();
        let ratio = if smax == 0.0 { 0.0 } else { smin / smax };
        if ratio < RANK_THRESHOLD {
            found = Some((n, ratio));
            break;
        }
    }
    let Some((order, rank_gap)) = found else {
        return Err(InversionError::NotQuadratureDomain(n_max));
    };
    let bn = Mat::from_fn(order + 1, order + 1, |k, l| b.get(k, l));
    let (_, null_vector) = linalg::min_singular_vector(&bn)?;
    let last = null_vector[order];
    if last.norm() < 1e-8 {
        return Err(InversionError::ReconstructionInconsistent(
            "null vector has a vanishing leading coefficient".into(),
        ));
    }
    let node_poly: Vec<Complex64> = null_vector.iter().map(|&c| c / last).collect();

    // step 3: q(z, w̄) = nonnegative-power part of p(z) p̄(w) E(1/z, 1/w̄)
    let e = genfun::exponential_factor(table, order);
    let mut q = vec![vec![Complex64::new(0.0, 0.0); order + 1]; order + 1];
    for (c_row, q_row) in q.iter_mut().enumerate() {
        for (d_col, q_cell) in q_row.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (a_idx, pa) in node_poly.iter().enumerate().skip(c_row) {
                for (b_idx, pb) in node_poly.iter().enumerate().skip(d_col) {
                    acc += pa * pb.conj() * e[a_idx - c_row][b_idx - d_col];
                }
            }
            *q_cell = acc;
        }
    }
    // Hermitian postcondition, then symmetrize away the rounding skew
    let scale = q
        .iter()
        .flatten()
        .map(|v| v.norm())
        .fold(1e-300, f64::max);
    #[allow(clippy::needless_range_loop)] // paired (k,l)/(l,k) accesses
    let herm_gap = {
        let mut gap: f64 = 0.0;
        for k in 0..=order {
            for l in 0..=order {
                gap = gap.max((q[k][l] - q[l][k].conj()).norm());
            }
        }
        gap
    };
    if herm_gap > 1e-8 * scale {
        return Err(InversionError::ReconstructionInconsistent(format!(
            "defining polynomial deviates from Hermitian symmetry by {herm_gap:.3e}"
        )));
    }
    #[allow(clippy::needless_range_loop)]
    for k in 0..=order {
        for l in k..=order {
            let avg = (q[k][l] + q[l][k].conj()).scale(0.5);
            q[k][l] = avg;
            q[l][k] = avg.conj();
        }
    }

    // nodes with multiplicities from root clustering
    let mut roots = linalg::poly_roots_complex(&node_poly)?;
    roots.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    let cluster_tol = 1e-6 * roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut nodes: Vec<Complex64> = Vec::new();
    let mut multiplicities: Vec<usize> = Vec::new();
    for &r in &roots {
        match nodes.last() {
            Some(&prev) if (prev - r).norm() <= cluster_tol => {
                let s = *multiplicities.last().unwrap();
                let merged = (prev.scale(s as f64) + r).scale(1.0 / (s as f64 + 1.0));
                *nodes.last_mut().unwrap() = merged;
                *multiplicities.last_mut().unwrap() += 1;
            }
            _ => {
                nodes.push(r);
                multiplicities.push(1);
            }
        }
    }

    // coefficients from the complex-moment column m̃_{k0} = Σ c_ij (z^k)^{(j)}(z_i)
    let unknowns: usize = multiplicities.iter().sum();
    let rows = table.rows();
    let design = Mat::from_fn(rows, unknowns, |k, col| {
        let mut idx = col;
        for (z, &s) in nodes.iter().zip(multiplicities.iter()) {
            if idx < s {
                let j = idx;
                return if j > k {
                    Complex64::new(0.0, 0.0)
                } else {
                    z.powu((k - j) as u32).scale(falling_factorial(k, j))
                };
            }
            idx -= s;
        }
        unreachable!()
    });
    let column: Vec<Complex64> = (0..rows).map(|k| table.get(k, 0)).collect();
    let coeff_sol = linalg::lstsq(&design, &column)?;
    let fitted = design.mul_vec(&coeff_sol.x);
    let residual = relative_residual_c(&fitted, &column);
    let mut coefficients = Vec::with_capacity(nodes.len());
    let mut offset = 0;
    for &s in &multiplicities {
        coefficients.push(coeff_sol.x[offset..offset + s].to_vec());
        offset += s;
    }

    let data = QuadratureData::new(nodes.clone(), multiplicities, coefficients)?;
    let defining = DefiningPolynomial::new(q, node_poly)?;
    // interior sign check: q < 0 inside the domain
    let probes: Vec<Complex64> = match interior {
        Some(p) => vec![p],
        None => nodes,
    };
    for z in probes {
        let v = defining.evaluate(z);
        if v >= 0.0 {
            return Err(InversionError::ReconstructionInconsistent(format!(
                "q(z, z̄) = {v:.3e} ≥ 0 at the interior point {z}"
            )));
        }
    }
    Ok((
        data,
        defining,
        InversionReport {
            condition: coeff_sol.condition,
            residual,
            detected_order: Some(order),
            warnings: vec![format!(
                "rank gap at order {order}: σ_min/σ_max = {rank_gap:.3e}"
            )],
        },
    ))
}

/// Recover simple quadrature nodes and coefficients straight from the
/// complex moments m_k = Σ c_i z_i^k (the l = 0 column of the double
/// moments) by the complex Prony pipeline.
pub fn quadrature_nodes_from_complex_moments(
    mu: &ComplexMomentSequence,
    count: usize,
) -> Result<(QuadratureData, InversionReport), InversionError> {
    let (nodes, weights, condition) = complex_prony(&mu.values, count)?;
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by(|&i, &j| {
        (nodes[i].re, nodes[i].im)
            .partial_cmp(&(nodes[j].re, nodes[j].im))
            .unwrap()
    });
    let nodes: Vec<Complex64> = order.iter().map(|&i| nodes[i]).collect();
    let weights: Vec<Complex64> = order.iter().map(|&i| weights[i]).collect();
    let forward: Vec<Complex64> = (0..mu.values.len())
        .map(|k| {
            nodes
                .iter()
                .zip(weights.iter())
                .map(|(z, c)| c * z.powu(k as u32))
                .sum()
        })
        .collect();
    let residual = relative_residual_c(&forward, &mu.values);
    let data = QuadratureData::new(
        nodes,
        vec![1; count],
        weights.iter().map(|&c| vec![c]).collect(),
    )?;
    Ok((
        data,
        InversionReport {
            condition,
            residual,
            detected_order: None,
            warnings: Vec::new(),
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::{complex_moments_polygon, double_moments_domain, Disk, PlanarDomain};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn seq(values: Vec<f64>) -> MomentSequence {
        MomentSequence::new(values).unwrap()
    }

    #[test]
    fn polynomial_constant_recovery() {
        let (model, report) = invert_polynomial(&seq(vec![2.0, 1.0, 2.0 / 3.0]), 2).unwrap();
        for (j, want) in [(0, 2.0), (1, 0.0), (2, 0.0)] {
            assert!((model.coefficient(j) - want).abs() < 1e-10);
        }
        assert!(report.residual < 1e-12);
    }

    #[test]
    fn polynomial_linear_recovery() {
        let (model, _) = invert_polynomial(&seq(vec![0.5, 1.0 / 3.0]), 1).unwrap();
        assert!(model.coefficient(0).abs() < 1e-12);
        assert!((model.coefficient(1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn polynomial_degree_mismatch_is_visible_in_higher_moments() {
        // the first two moments of 1 + x^2 fit a degree-1 model exactly,
        // so the mismatch only shows beyond the provided window
        let (model, report) = invert_polynomial(&seq(vec![4.0 / 3.0, 0.75]), 1).unwrap();
        assert!(report.residual < 1e-12);
        let extended = forward::moments_polynomial(&model, 2);
        let true_m2 = 8.0 / 15.0;
        assert!(
            (extended.values[2] - true_m2).abs() > 1e-3,
            "best-effort fit must disagree with the true model at m_2"
        );
    }

    #[test]
    fn polynomial_condition_tracks_min_eigenvalue_asymptote() {
        for d in 3..=7 {
            let m = forward::moments_polynomial(
                &PolynomialModel::new(vec![1.0; d + 1]).unwrap(),
                d,
            );
            let (_, report) = invert_polynomial(&m, d).unwrap();
            let h = HilbertLikeMatrix::for_degree(d).to_mat();
            let lambda_max = linalg::jacobi_eigenvalues(&h)
                .into_iter()
                .fold(0.0, f64::max);
            let implied_min = lambda_max / report.condition;
            let ratio = implied_min / HilbertLikeMatrix::asymptotic_min_eigenvalue(d);
            assert!(
                (0.5..2.0).contains(&ratio),
                "d={d}: implied λ_min off the asymptote by {ratio}"
            );
        }
    }

    #[test]
    fn polynomial_inversion_beyond_threshold_is_singular() {
        // past degree ~10 the Hilbert-type condition crosses the
        // singularity threshold, so the solve errors with the estimate
        // rather than returning digits it does not have
        let truth = PolynomialModel::new(vec![1.0; 13]).unwrap();
        let m = forward::moments_polynomial(&truth, 12);
        match invert_polynomial(&m, 12) {
            Err(InversionError::Linalg(LinalgError::Singular { condition })) => {
                assert!(condition > 1e13);
            }
            other => panic!("expected a singularity report, got {other:?}"),
        }
    }

    #[test]
    fn prony_single_geometric() {
        let (train, report) = prony(&seq(vec![1.0, 0.5, 0.25, 0.125]), 1).unwrap();
        assert!((train.nodes[0] - 0.5).abs() < 1e-12);
        assert!((train.weights[0] - 1.0).abs() < 1e-12);
        assert!(report.residual < 1e-12);
    }

    #[test]
    fn prony_two_spikes() {
        let (train, _) = prony(&seq(vec![3.0, 1.75, 1.1875, 0.859375]), 2).unwrap();
        assert!((train.nodes[0] - 0.25).abs() < 1e-10);
        assert!((train.nodes[1] - 0.75).abs() < 1e-10);
        assert!((train.weights[0] - 1.0).abs() < 1e-10);
        assert!((train.weights[1] - 2.0).abs() < 1e-10);
    }

    #[test]
    fn prony_overestimated_order() {
        let m = seq(forward::moments_spikes(&SpikeTrain::new(vec![0.5], vec![1.0]).unwrap(), 3).values);
        assert!(matches!(
            prony(&m, 2),
            Err(InversionError::OrderOverestimate { .. })
        ));
    }

    #[test]
    fn prony_permutation_invariance() {
        // the generating order of the spikes must not matter
        let a = SpikeTrain::new(vec![0.2, 0.5, 0.8], vec![1.0, -2.0, 0.7]).unwrap();
        let m = forward::moments_spikes(&a, 5);
        let (rec, _) = prony(&m, 3).unwrap();
        for (x, w) in [(0.2, 1.0), (0.5, -2.0), (0.8, 0.7)] {
            let i = rec.nodes.iter().position(|v| (v - x).abs() < 1e-9).unwrap();
            assert!((rec.weights[i] - w).abs() < 1e-9);
        }
        assert!(rec.nodes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn order_estimation_examples() {
        let one = forward::moments_spikes(&SpikeTrain::new(vec![0.5], vec![1.0]).unwrap(), 7);
        let two = forward::moments_spikes(
            &SpikeTrain::new(vec![0.25, 0.75], vec![1.0, 2.0]).unwrap(),
            7,
        );
        assert_eq!(estimate_order(&one.values, 3), Some(1));
        assert_eq!(estimate_order(&two.values, 3), Some(2));
        assert_eq!(estimate_order(&[0.0_f64; 7], 3), Some(0));
        // regular window up to n_max: no detection
        assert_eq!(estimate_order(&two.values[..4], 1), None);
    }

    #[test]
    fn order_estimation_is_monotone_under_extension() {
        let s = SpikeTrain::new(vec![0.3, 0.6, 0.9], vec![1.0, 1.0, 1.0]).unwrap();
        let long = forward::moments_spikes(&s, 11);
        let mut last = 0;
        for len in [7, 9, 12] {
            let est = estimate_order(&long.values[..len], 5).unwrap_or(usize::MAX);
            assert!(est >= last);
            last = est;
        }
        assert_eq!(last, 3);
    }

    #[test]
    fn rational_inverse_of_geometric_kernel() {
        let r = RationalModel::new(vec![1.0], vec![1.0, 1.0]).unwrap();
        let m = forward::moments_rational(&r, 3).unwrap();
        let (rec, report) = invert_rational(&m, 1).unwrap();
        assert!((rec.numerator[0] - 1.0).abs() < 1e-8, "{:?}", rec.numerator);
        assert!((rec.denominator[0] - 1.0).abs() < 1e-8);
        assert!((rec.denominator[1] - 1.0).abs() < 1e-12);
        assert!(report.residual < 1e-9);
    }

    #[test]
    fn rational_rejects_degree_zero() {
        assert!(matches!(
            invert_rational(&seq(vec![1.0]), 0),
            Err(InversionError::BadOrder(0, _))
        ));
    }

    #[test]
    fn rational_detects_model_mismatch() {
        // moments of a polynomial are not the moments of a degree-1 rational
        let p = PolynomialModel::new(vec![0.3, 0.0, 1.0, -0.4]).unwrap();
        let m = forward::moments_polynomial(&p, 3);
        match invert_rational(&m, 1) {
            Err(InversionError::ResidualTooLarge { .. })
            | Err(InversionError::PoleInInterval(_)) => {}
            other => panic!("expected mismatch signal, got {other:?}"),
        }
    }

    fn cyclic_gap(recovered: &[Complex64], truth: &[Complex64]) -> f64 {
        let n = truth.len();
        (0..n)
            .map(|rot| {
                (0..n)
                    .map(|i| (recovered[(i + rot) % n] - truth[i]).norm())
                    .fold(0.0, f64::max)
            })
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn polygon_square_round_trip() {
        let square =
            Polygon::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)]).unwrap();
        let mu = complex_moments_polygon(&square, 7);
        let (rec, weights, report) = invert_polygon(&mu, 4).unwrap();
        assert!(cyclic_gap(&rec.vertices, &square.vertices) < 1e-8);
        let s0: Complex64 = weights.iter().sum();
        let s1: Complex64 = weights
            .iter()
            .zip(rec.vertices.iter())
            .map(|(a, z)| a * z)
            .sum();
        assert!(s0.norm() < 1e-10 && s1.norm() < 1e-10);
        assert!(report.residual < 1e-9);
    }

    #[test]
    fn polygon_triangle_round_trip() {
        let tri = Polygon::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        let mu = complex_moments_polygon(&tri, 5);
        let (rec, _, _) = invert_polygon(&mu, 3).unwrap();
        assert!(cyclic_gap(&rec.vertices, &tri.vertices) < 1e-9);
    }

    #[test]
    fn polygon_requires_enough_moments() {
        let mu = ComplexMomentSequence::new(vec![c(1.0, 0.0); 5]).unwrap();
        assert!(matches!(
            invert_polygon(&mu, 3),
            Err(InversionError::InsufficientMoments { needed: 6, got: 5 })
        ));
    }

    #[test]
    fn quadrature_domain_disks() {
        for &radius in &[0.5, 1.0, 2.0] {
            let t = double_moments_domain(
                &PlanarDomain::Disk(Disk {
                    center: c(0.0, 0.0),
                    radius,
                }),
                4,
                4,
            )
            .unwrap();
            let (data, defining, report) = invert_quadrature_domain(&t, 4, None).unwrap();
            assert_eq!(report.detected_order, Some(1));
            assert_eq!(data.order(), 1);
            assert!((data.nodes[0]).norm() < 1e-9);
            // p(z) = z
            assert!((defining.node_polynomial[0]).norm() < 1e-9);
            assert!((defining.node_polynomial[1] - c(1.0, 0.0)).norm() < 1e-12);
            // q = z z̄ - R^2
            let r2 = radius * radius;
            assert!((defining.coefficients[0][0] + c(r2, 0.0)).norm() < 1e-8 * r2.max(1.0));
            assert!((defining.coefficients[1][1] - c(1.0, 0.0)).norm() < 1e-8);
            assert!(defining.coefficients[0][1].norm() < 1e-8);
            assert!(defining.coefficients[1][0].norm() < 1e-8);
            // c_0 = area
            assert!((data.coefficients[0][0] - c(PI * r2, 0.0)).norm() < 1e-8 * r2.max(1.0));
        }
    }

    #[test]
    fn quadrature_domain_two_disk_union() {
        let disks = vec![
            Disk {
                center: c(0.8, 0.0),
                radius: 0.3,
            },
            Disk {
                center: c(-0.8, 0.0),
                radius: 0.3,
            },
        ];
        let t = double_moments_domain(&PlanarDomain::DiskUnion(disks), 4, 4).unwrap();
        let (data, defining, report) = invert_quadrature_domain(&t, 4, None).unwrap();
        assert_eq!(report.detected_order, Some(2));
        assert_eq!(data.order(), 2);
        assert!((data.nodes[0] - c(-0.8, 0.0)).norm() < 1e-5, "{}", data.nodes[0]);
        assert!((data.nodes[1] - c(0.8, 0.0)).norm() < 1e-5, "{}", data.nodes[1]);
        let area = PI * 0.09;
        for row in &data.coefficients {
            assert!((row[0] - c(area, 0.0)).norm() < 1e-6);
        }
        assert!((defining.node_polynomial.last().unwrap() - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn square_is_not_a_quadrature_domain() {
        let square =
            Polygon::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)]).unwrap();
        let t = double_moments_domain(&PlanarDomain::Polygon(square), 4, 4).unwrap();
        assert!(matches!(
            invert_quadrature_domain(&t, 3, None),
            Err(InversionError::NotQuadratureDomain(3))
        ));
    }

    #[test]
    fn quadrature_nodes_of_single_disk() {
        // μ_0 = π, higher complex moments vanish for the unit disk
        let mut values = vec![c(0.0, 0.0); 4];
        values[0] = c(PI, 0.0);
        let mu = ComplexMomentSequence::new(values).unwrap();
        let (data, _) = quadrature_nodes_from_complex_moments(&mu, 1).unwrap();
        assert!(data.nodes[0].norm() < 1e-10);
        assert!((data.coefficients[0][0] - c(PI, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn quadrature_nodes_two_disk_union() {
        let area = PI * 0.04;
        let c1 = c(0.5, 0.2);
        let c2 = c(-0.4, -0.1);
        let mu = ComplexMomentSequence::new(
            (0..6)
                .map(|k| (c1.powu(k) + c2.powu(k)).scale(area))
                .collect(),
        )
        .unwrap();
        let (data, report) = quadrature_nodes_from_complex_moments(&mu, 2).unwrap();
        assert!((data.nodes[0] - c2).norm() < 1e-9);
        assert!((data.nodes[1] - c1).norm() < 1e-9);
        assert!(report.residual < 1e-10);
    }

    #[test]
    fn quadrature_nodes_overestimated_order() {
        let mut values = vec![c(0.0, 0.0); 4];
        values[0] = c(PI, 0.0);
        let mu = ComplexMomentSequence::new(values).unwrap();
        assert!(matches!(
            quadrature_nodes_from_complex_moments(&mu, 2),
            Err(InversionError::OrderOverestimate { .. })
        ));
    }

    #[test]
    fn spike_round_trip_forward_of_inverse() {
        let m = seq(vec![2.5, 1.3, 0.71, 0.406, 0.2402, 0.14576]);
        if let Ok((train, report)) = prony(&m, 3) {
            let back = forward::moments_spikes(&train, 5);
            assert!(relative_residual(&back.values, &m.values) <= report.residual + 1e-12);
        }
    }
}
