//! Tracy–Widom largest-eigenvalue distributions F₁, F₂, F₄.
//!
//! Two independent evaluation routes are provided: the Hastings–McLeod
//! solution of Painlevé II ([`painleve`]) and a Nyström discretisation of
//! the Airy-kernel Fredholm determinant ([`fredholm`]). [`distributions`]
//! exposes CDF, density, quantiles and moments built on the Painlevé table.
//!
//! [`ensembles`] samples the stochastic models whose fluctuations converge
//! to F_β (Gaussian and Wigner matrices, longest increasing subsequences,
//! tandem queues, growth in a random environment) and [`gof`] measures how
//! close the samples are.

pub mod airy;
pub mod distributions;
pub mod ensembles;
mod error;
pub mod fredholm;
pub mod gof;
pub mod numerics;
pub mod painleve;

pub use distributions::{Beta, DistributionEvaluator, F4Convention, SummaryStats, TracyWidom};
pub use error::{Error, Result};
pub use painleve::PainleveTable;
