//! Moment transforms and inversion for finite-parametric signal models.
//!
//! The crate computes power moments of structured 1D and 2D models —
//! polynomials, rational functions, spike trains, piecewise polynomials,
//! polygons, quadrature domains, and parametrized curves — and
//! reconstructs model parameters back from finite moment data. Forward
//! transforms ([`forward`]) are closed-form or degree-exact quadrature
//! so they can serve as oracles for the reconstruction routines in
//! [`inversion`]. Generating functions and the bivariate exponential
//! transform live in [`genfun`]; polynomial composition and the
//! moment-vanishing machinery in [`algebra`]; the shared numerical
//! kernels in [`linalg`].
//!
//! Everything is a plain immutable value and every operation is pure,
//! so values can be shared or sent across threads freely.

pub mod algebra;
pub mod forward;
pub mod genfun;
pub mod inversion;
pub mod linalg;
pub mod models;
pub mod poly;
pub mod scalar;

pub use num_complex::Complex64;
