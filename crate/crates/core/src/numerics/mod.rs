//! Numerical building blocks: Gauss–Legendre quadrature, an adaptive
//! Dormand–Prince integrator, bracketed root finding and natural cubic
//! splines.

mod ode;
mod quadrature;
mod roots;
mod spline;

pub use ode::{ode_solve, OdeOptions, OdeSolution};
pub use quadrature::{gauss_legendre, QuadratureRule};
pub use roots::find_root;
pub use spline::{spline_fit, SplineFunction};

/// Default relative tolerance for adaptive routines.
pub const DEFAULT_REL_TOL: f64 = 1e-10;
/// Default absolute tolerance for adaptive routines.
pub const DEFAULT_ABS_TOL: f64 = 1e-12;
