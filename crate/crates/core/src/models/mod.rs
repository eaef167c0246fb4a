//! Domain types for the signal models and their moment data, with
//! validation, pointwise evaluation, and the text serialization format
//! (see [`document`]).

pub mod document;

use crate::linalg;
use crate::poly;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("invalid {kind}: {}", violations.join("; "))]
    Invalid {
        kind: &'static str,
        violations: Vec<String>,
    },
    #[error("a spike train has no pointwise values")]
    SpikeTrainPointwise,
    #[error("evaluation point {0} outside the model domain [0,1]")]
    OutsideDomain(f64),
    #[error("evaluation point {0} is within tolerance of a denominator root")]
    NearPole(f64),
}

/// Invariant checking shared by every model and moment type. An empty
/// list means the value satisfies all of its type invariants.
pub trait Validate {
    fn validate(&self) -> Vec<String>;
}

fn checked<T: Validate>(value: T, kind: &'static str) -> Result<T, ModelError> {
    let violations = value.validate();
    if violations.is_empty() {
        Ok(value)
    } else {
        Err(ModelError::Invalid { kind, violations })
    }
}

fn all_finite(values: &[f64]) -> bool {
    values.iter().all(|v| v.is_finite())
}

fn all_finite_c(values: &[Complex64]) -> bool {
    values.iter().all(|v| v.re.is_finite() && v.im.is_finite())
}

// ---------------------------------------------------------------------------
// moment data

/// Real moment sequence m_0..m_K over a support interval (default [0,1]).
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSequence {
    pub values: Vec<f64>,
    pub interval: (f64, f64),
}

impl MomentSequence {
    pub fn new(values: Vec<f64>) -> Result<Self, ModelError> {
        checked(
            MomentSequence {
                values,
                interval: (0.0, 1.0),
            },
            "moment sequence",
        )
    }

    /// Highest moment order K (length is K+1).
    pub fn order(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }
}

impl Validate for MomentSequence {
    fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.values.is_empty() {
            v.push("moment list is empty".into());
        }
        if !all_finite(&self.values) {
            v.push("non-finite moment value".into());
        }
        if self.interval.0.partial_cmp(&self.interval.1) != Some(std::cmp::Ordering::Less) {
            v.push("interval endpoints out of order".into());
        }
        v
    }
}

/// Complex moments μ_0..μ_K of a planar set.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMomentSequence {
    pub values: Vec<Complex64>,
}

impl ComplexMomentSequence {
    pub fn new(values: Vec<Complex64>) -> Result<Self, ModelError> {
        checked(ComplexMomentSequence { values }, "complex moment sequence")
    }

    pub fn order(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

impl Validate for ComplexMomentSequence {
    fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.values.is_empty() {
            v.push("moment list is empty".into());
        }
        if !all_finite_c(&self.values) {
            v.push("non-finite moment value".into());
        }
        v
    }
}

/// Double moment table with entry (k,l) = m̃_{kl} = ∫∫ z^k z̄^l dA.
///
/// Tables produced by the forward transforms of real domains are
/// Hermitian (`m̃_{lk} = conj(m̃_{kl})`); perturbed tables need not be,
/// so Hermitian symmetry is exposed as [`DoubleMomentTable::is_hermitian`]
/// rather than enforced by `validate`.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleMomentTable {
    pub entries: Vec<Vec<Complex64>>,
}

impl DoubleMomentTable {
    pub fn new(entries: Vec<Vec<Complex64>>) -> Result<Self, ModelError> {
        checked(DoubleMomentTable { entries }, "double moment table")
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map(|r| r.len()).unwrap_or(0)
    }

    pub fn get(&self, k: usize, l: usize) -> Complex64 {
        self.entries[k][l]
    }

    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let n = self.rows().min(self.cols());
        let scale = self.max_abs().max(1e-300);
        for k in 0..n {
            for l in 0..n {
                if (self.entries[k][l] - self.entries[l][k].conj()).norm() > tol * scale {
                    return false;
                }
            }
        }
        true
    }
}

impl Validate for DoubleMomentTable {
    fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.entries.is_empty() || self.entries[0].is_empty() {
            v.push("table is empty".into());
        }
        let w = self.cols();
        if self.entries.iter().any(|r| r.len() != w) {
            v.push("table rows have unequal lengths".into());
        }
        if self.entries.iter().any(|r| !all_finite_c(r)) {
            v.push("non-finite table entry".into());
        }
        v
    }
}

// ---------------------------------------------------------------------------
// 1D models

/// Polynomial on [0,1], coefficients low-to-high.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialModel {
    pub coefficients: Vec<f64>,
}

impl PolynomialModel {
    pub fn new(coefficients: Vec<f64>) -> Result<Self, ModelError> {
        checked(PolynomialModel { coefficients }, "polynomial model")
    }

    /// Build from a raw coefficient vector, dropping a numerically-zero
    /// tail (relative threshold 1e-12) as inversion output can carry one.
    pub fn from_coefficients(coefficients: Vec<f64>) -> Result<Self, ModelError> {
        let scale = coefficients.iter().map(|c| c.abs()).fold(0.0, f64::max);
        Self::new(poly::trim(&coefficients, 1e-12 * scale))
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Coefficient of x^j, zero beyond the stored degree.
    pub fn coefficient(&self, j: usize) -> f64 {
        self.coefficients.get(j).copied().unwrap_or(0.0)
    }

    pub fn evaluate(&self, x: f64) -> Result<f64, ModelError> {
        if !(0.0..=1.0).contains(&x) {
            return Err(ModelError::OutsideDomain(x));
        }
        Ok(poly::eval(&self.coefficients, x))
    }
}

impl Validate for PolynomialModel {
    fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.coefficients.is_empty() {
            v.push("coefficient list is empty".into());
            return v;
        }
        if !all_finite(&self.coefficients) {
            v.push("non-finite coefficient".into());
        }
        if self.coefficients.len() > 1 && *self.coefficients.last().unwrap() == 0.0 {
            v.push("leading coefficient is zero".into());
        }
        v
    }
}

/// Rational function P/Q on [0,1] with monic denominator (b_d = 1),
/// deg P ≤ d-1, and no denominator roots on the closed interval.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalModel {
    pub numerator: Vec<f64>,
    pub denominator: Vec<f64>,
}

impl RationalModel {
    /// The denominator is normalized monic (dividing through by its
    /// leading coefficient) before validation.
    pub fn new(numerator: Vec<f64>, denominator: Vec<f64>) -> Result<Self, ModelError> {
        let denominator = normalize_monic(denominator);
        checked(
            RationalModel {
                numerator,
                denominator,
            },
            "rational model",
        )
    }

    pub fn degree(&self) -> usize {
        self.denominator.len() - 1
    }

    pub fn denominator_roots(&self) -> Vec<Complex64> {
        linalg::poly_roots(&self.denominator).unwrap_or_default()
    }

    pub fn evaluate(&self, x: f64) -> Result<f64, ModelError> {
        if !(0.0..=1.0).contains(&x) {
            return Err(ModelError::OutsideDomain(x));
        }
        let q = poly::eval(&self.denominator, x);
        let scale = poly::one_norm(&self.denominator).max(1.0);
        if q.abs() <= 1e-12 * scale {
            return Err(ModelError::NearPole(x));
        }
        Ok(poly::eval(&self.numerator, x) / q)
    }
}

fn normalize_monic(mut denominator: Vec<f64>) -> Vec<f64> {
    if let Some(&lead) = denominator.last() {
        if lead != 0.0 && lead.is_finite() && lead != 1.0 {
            for c in denominator.iter_mut() {
                *c /= lead;
            }
            *denominator.last_mut().unwrap() = 1.0;
        }
    }
    denominator
}

impl Validate for RationalModel {
    fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.denominator.len() < 2 {
            v.push("denominator degree must be at least 1".into());
            return v;
        }
        if !all_finite(&self.numerator) || !all_finite(&self.denominator) {
            v.push("non-finite coefficient".into());
            return v;
        }
        if *self.denominator.last().unwrap() != 1.0 {
            v.push("denominator is not monic".into());
        }
        let d = self.denominator.len() - 1;
        if poly::degree(&self.numerator) > d.saturating_sub(1) && poly::one_norm(&self.numerator) > 0.0
        {
            v.push("numerator degree exceeds denominator degree minus one".into());
        }
        for root in self.denominator_roots() {
            if root.im.abs() <= 1e-9 && (-1e-9..=1.0 + 1e-9).contains(&root.re) {
                v.push(format!("pole inside [0,1] at x = {:.6}", root.re));
            }
        }
        v
    }
}

/// Linear combination of Dirac spikes Σ A_i δ(x - x_i) with strictly
/// increasing nodes in the open interval (0,1). Boundary spikes are
/// excluded because they make the moment integrals convention-dependent.
#[derive(Clone, Debug, PartialEq)]
pub struct SpikeTrain {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl SpikeTrain {
    pub fn new(nodes: Vec<f64>, weights: Vec<f64>) -> Result<Self, ModelError> {
        checked(SpikeTrain { nodes, weights }, "spike train")
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Distributions have no pointwise values; evaluation is an error.
    pub fn evaluate(&self, _x: f64) -> Result<f64, ModelError> {
        Err(ModelError::SpikeTrainPointwise)
    }
}

impl Validate for SpikeTrain {
    fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.nodes.is_empty() {
            v.push("no spikes".into());
        }
        if self.nodes.len() != self.weights.len() {
            v.push("node and weight counts differ".into());
            return v;
        }
        if !all_finite(&self.nodes) || !all_finite(&self.weights) {
            v.push("non-finite node or weight".into());
        }
        for (i, &x) in self.nodes.iter().enumerate() {
            if !(0.0 < x && x < 1.0) {
                v.push(format!("node {x} outside the open interval (0,1)"));
            }
            if i > 0 && self.nodes[i - 1] >= x {
                v.push(if self.nodes[i - 1] == x {
                    "duplicate node".into()
                } else {
                    "nodes are not strictly increasing".into()
                });
            }
        }
        if self.weights.contains(&0.0) {
            v.push("zero weight".into());
        }
        v
    }
}

/// Piecewise polynomial on [0,1]: breakpoints 0 = x_0 < … < x_{r+1} = 1
/// with one coefficient list per gap.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewisePoly {
    pub breakpoints: Vec<f64>,
    pub pieces: Vec<Vec<f64>>,
}

impl PiecewisePoly {
    pub fn new(breakpoints: Vec<f64>, pieces: Vec<Vec<f64>>) -> Result<Self, ModelError> {
        checked(
            PiecewisePoly {
                breakpoints,
                pieces,
            },
            "piecewise polynomial",
        )
    }

    /// Constant-1 model on a single piece.
    pub fn constant(value: f64) -> Self {
        PiecewisePoly {
            breakpoints: vec![0.0, 1.0],
            pieces: vec![vec![value]],
        }
    }

    /// Number of interior breakpoints r.
    pub fn interior_breakpoints(&self) -> usize {
        self.breakpoints.len() - 2
    }

    /// True polynomial degree of piece q (0 for a zero piece).
    pub fn piece_degree(&self, q: usize) -> usize {
        poly::degree(&self.pieces[q])
    }

    pub fn evaluate(&self, x: f64) -> Result<f64, ModelError> {
        if !(0.0..=1.0).contains(&x) {
            return Err(ModelError::OutsideDomain(x));
        }
        let q = self.piece_index(x);
        Ok(poly::eval(&self.pieces[q], x))
    }

    fn piece_index(&self, x: f64) -> usize {
        // pieces live on [x_q, x_{q+1}); the last piece is closed at 1
        match self
            .breakpoints
            .iter()
            .rposition(|&b| b <= x)
        {
            Some(i) if i + 1 < self.breakpoints.len() => i,
            _ => self.pieces.len() - 1,
        }
    }

    /// Pointwise sum with merged breakpoints.
    pub fn add(&self, other: &PiecewisePoly) -> PiecewisePoly {
        self.combine(other, 1.0)
    }

    /// Pointwise difference with merged breakpoints.
    pub fn sub(&self, other: &PiecewisePoly) -> PiecewisePoly {
        self.combine(other, -1.0)
    }

    fn combine(&self, other: &PiecewisePoly, sign: f64) -> PiecewisePoly {
        let mut points: Vec<f64> = self
            .breakpoints
            .iter()
            .chain(other.breakpoints.iter())
            .copied()
            .collect();
        points.sort_by(|a, b| a.partial_cmp(b).unwrap());
        points.dedup();
        // drop near-coincident interior points so pieces stay well formed
        let mut merged = vec![points[0]];
        for &p in &points[1..] {
            if p - merged.last().unwrap() > 1e-13 {
                merged.push(p);
            }
        }
        if *merged.last().unwrap() != 1.0 {
            *merged.last_mut().unwrap() = 1.0;
        }
        let mut pieces = Vec::with_capacity(merged.len() - 1);
        for w in merged.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            let a = &self.pieces[self.piece_index(mid)];
            let b = &other.pieces[other.piece_index(mid)];
            pieces.push(poly::add(a, &poly::scale(b, sign)));
        }
        PiecewisePoly {
            breakpoints: merged,
            pieces,
        }
    }

    /// True when every piece is numerically zero at the given absolute
    /// coefficient threshold.
    pub fn is_zero(&self, tol: f64) -> bool {
        self.pieces
            .iter()
            .all(|p| p.iter().all(|c| c.abs() <= tol))
    }
}

impl Validate for PiecewisePoly {
    fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.breakpoints.len() < 2 {
            v.push("need at least the two endpoint breakpoints".into());
            return v;
        }
        if self.breakpoints[0] != 0.0 {
            v.push("first breakpoint must be 0".into());
        }
        if *self.breakpoints.last().unwrap() != 1.0 {
            v.push("last breakpoint must be 1".into());
        }
        if self.breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            v.push("breakpoints are not strictly increasing".into());
        }
        if self.pieces.len() != self.breakpoints.len() - 1 {
            v.push("piece count does not match breakpoint gaps".into());
        }
        if self.pieces.iter().any(|p| p.is_empty() || !all_finite(p)) {
            v.push("empty or non-finite piece".into());
        }
        v
    }
}

// ---------------------------------------------------------------------------
// 2D shapes

/// Simple planar polygon with counterclockwise vertices. Degenerate
/// vertices (coincident neighbors or parallel incident edges) are
/// rejected; the latter is exactly the condition that makes a Davis
/// vertex coefficient vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    pub vertices: Vec<Complex64>,
}

impl Polygon {
    pub fn new(vertices: Vec<Complex64>) -> Result<Self, ModelError> {
        checked(Polygon { vertices }, "polygon")
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn signed_area(&self) -> f64 {
        let n = self.vertices.len();
        let mut acc = 0.0;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            acc += (a.conj() * b).im;
        }
        0.5 * acc
    }

    /// Davis vertex coefficients a_j with
    /// `∫∫_P φ''(z) dA = Σ a_j φ(z_j)` for analytic φ, computed as
    /// `a_j = (i/2)(ū_{j-1}/u_{j-1} - ū_j/u_j)` with edge vectors
    /// `u_j = z_{j+1} - z_j`. The i/2 prefactor is the one consistent
    /// with counterclockwise orientation and dA = dx dy; it is verified
    /// against the boundary-exact area oracle in the forward tests.
    pub fn davis_coefficients(&self) -> Vec<Complex64> {
        let n = self.vertices.len();
        let q = |j: usize| {
            let u = self.vertices[(j + 1) % n] - self.vertices[j];
            u.conj() / u
        };
        (0..n)
            .map(|j| {
                let prev = q((j + n - 1) % n);
                let next = q(j);
                Complex64::new(0.0, 0.5) * (prev - next)
            })
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.vertices.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl Validate for Polygon {
    fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        let n = self.vertices.len();
        if n < 3 {
            v.push("polygon needs at least 3 vertices".into());
            return v;
        }
        if !all_finite_c(&self.vertices) {
            v.push("non-finite vertex".into());
            return v;
        }
        let scale = self.max_abs().max(1e-300);
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            if (b - a).norm() <= 1e-12 * scale {
                v.push(format!("vertices {i} and {} coincide", (i + 1) % n));
            }
        }
        if !v.is_empty() {
            return v;
        }
        if self.signed_area() <= 0.0 {
            v.push("vertices are not counterclockwise (signed area <= 0)".into());
        }
        for j in 0..n {
            let u = self.vertices[j] - self.vertices[(j + n - 1) % n];
            let w = self.vertices[(j + 1) % n] - self.vertices[j];
            if (u.conj() * w).im.abs() <= 1e-12 * u.norm() * w.norm() {
                v.push(format!("incident edges at vertex {j} are parallel"));
            }
        }
        v
    }
}

/// Polynomial pair (P, Q) parametrizing the curve x = P(t), y = Q(t)
/// over [a,b]; the carrier of the moment-vanishing machinery.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamCurve {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub interval: (f64, f64),
}

impl ParamCurve {
    pub fn new(p: Vec<f64>, q: Vec<f64>) -> Result<Self, ModelError> {
        checked(
            ParamCurve {
                p,
                q,
                interval: (0.0, 1.0),
            },
            "parametrized curve",
        )
    }
}

impl Validate for ParamCurve {
    fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.p.is_empty() || self.q.is_empty() {
            v.push("empty coefficient list".into());
            return v;
        }
        if !all_finite(&self.p) || !all_finite(&self.q) {
            v.push("non-finite coefficient".into());
        }
        if poly::degree(&self.p) == 0 {
            v.push("P must be nonconstant".into());
        }
        if self.interval.0.partial_cmp(&self.interval.1) != Some(std::cmp::Ordering::Less) {
            v.push("interval endpoints out of order".into());
        }
        v
    }
}

/// Truncated bivariate power series with coefficients c_{kl},
/// 0 ≤ k ≤ K, 0 ≤ l ≤ L.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariateSeries {
    pub coefficients: Vec<Vec<Complex64>>,
}

impl BivariateSeries {
    pub fn new(coefficients: Vec<Vec<Complex64>>) -> Result<Self, ModelError> {
        checked(BivariateSeries { coefficients }, "bivariate series")
    }

    pub fn zeros(order_k: usize, order_l: usize) -> Self {
        BivariateSeries {
            coefficients: vec![vec![Complex64::new(0.0, 0.0); order_l + 1]; order_k + 1],
        }
    }

    /// Truncation orders (K, L).
    pub fn orders(&self) -> (usize, usize) {
        (
            self.coefficients.len() - 1,
            self.coefficients[0].len() - 1,
        )
    }

    pub fn get(&self, k: usize, l: usize) -> Complex64 {
        self.coefficients
            .get(k)
            .and_then(|r| r.get(l))
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn max_abs(&self) -> f64 {
        self.coefficients
            .iter()
            .flatten()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let (k, l) = self.orders();
        let n = k.min(l);
        let scale = self.max_abs().max(1e-300);
        for a in 0..=n {
            for b in 0..=n {
                if (self.get(a, b) - self.get(b, a).conj()).norm() > tol * scale {
                    return false;
                }
            }
        }
        true
    }
}

impl Validate for BivariateSeries {
    fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.coefficients.is_empty() || self.coefficients[0].is_empty() {
            v.push("series is empty".into());
            return v;
        }
        let w = self.coefficients[0].len();
        if self.coefficients.iter().any(|r| r.len() != w) {
            v.push("rows have unequal lengths".into());
        }
        if self.coefficients.iter().any(|r| !all_finite_c(r)) {
            v.push("non-finite coefficient".into());
        }
        v
    }
}

/// Quadrature nodes with multiplicities and the point-evaluation
/// coefficients c_{ij} of Σ c_{ij} f^{(j)}(z_i); order N = Σ s_i.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureData {
    pub nodes: Vec<Complex64>,
    pub multiplicities: Vec<usize>,
    /// Row i holds c_{i0}..c_{i,s_i-1}.
    pub coefficients: Vec<Vec<Complex64>>,
}

impl QuadratureData {
    pub fn new(
        nodes: Vec<Complex64>,
        multiplicities: Vec<usize>,
        coefficients: Vec<Vec<Complex64>>,
    ) -> Result<Self, ModelError> {
        checked(
            QuadratureData {
                nodes,
                multiplicities,
                coefficients,
            },
            "quadrature data",
        )
    }

    /// Order N = Σ s_i of the quadrature identity.
    pub fn order(&self) -> usize {
        self.multiplicities.iter().sum()
    }
}

impl Validate for QuadratureData {
    fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.nodes.is_empty() {
            v.push("no quadrature nodes".into());
        }
        if self.nodes.len() != self.multiplicities.len()
            || self.nodes.len() != self.coefficients.len()
        {
            v.push("node, multiplicity, and coefficient counts differ".into());
            return v;
        }
        if !all_finite_c(&self.nodes) {
            v.push("non-finite node".into());
        }
        if self.multiplicities.contains(&0) {
            v.push("zero multiplicity".into());
        }
        for (i, row) in self.coefficients.iter().enumerate() {
            if row.len() != self.multiplicities[i] {
                v.push(format!(
                    "coefficient row {i} has {} entries for multiplicity {}",
                    row.len(),
                    self.multiplicities[i]
                ));
            }
        }
        let scale = self.nodes.iter().map(|z| z.norm()).fold(1e-12, f64::max);
        for i in 0..self.nodes.len() {
            for j in (i + 1)..self.nodes.len() {
                if (self.nodes[i] - self.nodes[j]).norm() <= 1e-9 * scale {
                    v.push(format!("nodes {i} and {j} coincide"));
                }
            }
        }
        v
    }
}

/// Defining polynomial data of a quadrature domain: the Hermitian
/// coefficient matrix of q(z, z̄) = Σ q_{kl} z^k z̄^l and the monic node
/// polynomial p(z). The domain is the sublevel set q(z, z̄) < 0.
#[derive(Clone, Debug, PartialEq)]
pub struct DefiningPolynomial {
    /// q_{kl}, indexed by (power of z, power of z̄).
    pub coefficients: Vec<Vec<Complex64>>,
    /// Monic node polynomial p(z), low-to-high coefficients.
    pub node_polynomial: Vec<Complex64>,
}

impl DefiningPolynomial {
    pub fn new(
        coefficients: Vec<Vec<Complex64>>,
        node_polynomial: Vec<Complex64>,
    ) -> Result<Self, ModelError> {
        checked(
            DefiningPolynomial {
                coefficients,
                node_polynomial,
            },
            "defining polynomial",
        )
    }

    pub fn max_abs(&self) -> f64 {
        self.coefficients
            .iter()
            .flatten()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    /// Evaluate q(z, z̄); real up to rounding by Hermitian symmetry.
    pub fn evaluate(&self, z: Complex64) -> f64 {
        let zb = z.conj();
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, row) in self.coefficients.iter().enumerate() {
            for (l, &c) in row.iter().enumerate() {
                acc += c * z.powu(k as u32) * zb.powu(l as u32);
            }
        }
        acc.re
    }
}

impl Validate for DefiningPolynomial {
    fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        let n = self.coefficients.len();
        if n == 0 || self.coefficients.iter().any(|r| r.len() != n) {
            v.push("coefficient matrix must be square and nonempty".into());
            return v;
        }
        if self.coefficients.iter().any(|r| !all_finite_c(r)) {
            v.push("non-finite coefficient".into());
            return v;
        }
        let scale = self.max_abs().max(1e-300);
        for k in 0..n {
            for l in 0..n {
                if (self.coefficients[k][l] - self.coefficients[l][k].conj()).norm()
                    > 1e-8 * scale
                {
                    v.push(format!("coefficient matrix not Hermitian at ({k},{l})"));
                }
            }
        }
        if self.node_polynomial.is_empty() {
            v.push("node polynomial is empty".into());
        } else if (self.node_polynomial.last().unwrap() - Complex64::new(1.0, 0.0)).norm() > 1e-9 {
            v.push("node polynomial is not monic".into());
        }
        // realness spot check, implied by Hermitian symmetry
        for &z in &[
            Complex64::new(0.3, -0.7),
            Complex64::new(-1.1, 0.4),
            Complex64::new(0.9, 1.3),
        ] {
            let zb = z.conj();
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, row) in self.coefficients.iter().enumerate() {
                for (l, &c) in row.iter().enumerate() {
                    acc += c * z.powu(k as u32) * zb.powu(l as u32);
                }
            }
            if acc.im.abs() > 1e-6 * scale * (1.0 + z.norm().powi(2 * (n as i32 - 1))) {
                v.push(format!("q(z, z̄) has imaginary part {:.3e} at z = {z}", acc.im));
                break;
            }
        }
        v
    }
}
