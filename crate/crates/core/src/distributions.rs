//! CDF, density, quantiles and moments of F₁, F₂, F₄ built from a
//! [`PainleveTable`]:
//!
//! * F₂(s) = exp(−E(s))
//! * F₁(s) = exp(−J(s)/2)·F₂(s)^{1/2}
//! * F₄ in the convention whose moments are μ = −2.30688, σ = 0.7195:
//!   F₄(s) = cosh(J(√2·s)/2)·F₂(√2·s)^{1/2}. [`F4Convention::Unscaled`]
//!   selects the same expression without the √2 argument scaling.
//!
//! Outside the table window the CDF is clamped to exactly 0 or 1 and the
//! clamp is reported through [`Evaluation::clamped`].

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{find_root, spline_fit, SplineFunction};
use crate::painleve::PainleveTable;

/// Symmetry class index β.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub enum Beta {
    One,
    Two,
    Four,
}

impl Beta {
    pub const ALL: [Beta; 3] = [Beta::One, Beta::Two, Beta::Four];

    pub fn value(self) -> u32 {
        match self {
            Beta::One => 1,
            Beta::Two => 2,
            Beta::Four => 4,
        }
    }
}

impl TryFrom<u32> for Beta {
    type Error = Error;
    fn try_from(v: u32) -> Result<Self> {
        match v {
            1 => Ok(Beta::One),
            2 => Ok(Beta::Two),
            4 => Ok(Beta::Four),
            _ => Err(Error::InvalidArgument(format!("beta must be 1, 2 or 4, got {v}"))),
        }
    }
}

impl From<Beta> for u32 {
    fn from(b: Beta) -> u32 {
        b.value()
    }
}

impl fmt::Display for Beta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Argument convention for F₄.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum F4Convention {
    /// cosh(J(√2 s)/2)·√F₂(√2 s); reproduces the standard moment table.
    #[default]
    Scaled,
    /// cosh(J(s)/2)·√F₂(s).
    Unscaled,
}

/// Mean, standard deviation, skewness and excess kurtosis.
///
/// Moments use the population (1/n) convention. `n` is `None` for exact
/// distribution moments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub mean: f64,
    pub sd: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    /// Set when the spread is zero, in which case skewness and kurtosis are
    /// reported as 0.
    #[serde(default)]
    pub degenerate: bool,
}

impl SummaryStats {
    /// Builds the summary from raw moments m0..m4 (m0 normalises).
    pub(crate) fn from_raw_moments(m: [f64; 5], n: Option<usize>) -> Self {
        let mean = m[1] / m[0];
        let e2 = m[2] / m[0];
        let e3 = m[3] / m[0];
        let e4 = m[4] / m[0];
        let var = (e2 - mean * mean).max(0.0);
        let c3 = e3 - 3.0 * mean * e2 + 2.0 * mean.powi(3);
        let c4 = e4 - 4.0 * mean * e3 + 6.0 * mean * mean * e2 - 3.0 * mean.powi(4);
        Self::from_central(mean, var, c3, c4, n)
    }

    pub(crate) fn from_central(mean: f64, var: f64, c3: f64, c4: f64, n: Option<usize>) -> Self {
        let sd = var.sqrt();
        let degenerate = !(sd > 1e-300) || var <= 1e-28 * mean.abs().max(1.0).powi(2);
        let (skewness, excess_kurtosis) = if degenerate {
            (0.0, 0.0)
        } else {
            (c3 / (var * sd), c4 / (var * var) - 3.0)
        };
        Self {
            mean,
            sd: if degenerate { 0.0 } else { sd },
            skewness,
            excess_kurtosis,
            n,
            degenerate,
        }
    }
}

/// A CDF value with the out-of-window clamp flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub clamped: bool,
}

/// Interpolants of the Painlevé columns, shared by all β.
#[derive(Debug)]
struct Columns {
    table: Arc<PainleveTable>,
    q: SplineFunction,
    e: SplineFunction,
    r: SplineFunction,
    j: SplineFunction,
}

impl Columns {
    fn new(table: Arc<PainleveTable>) -> Result<Self> {
        let g = table.grid();
        Ok(Self {
            q: spline_fit(g, table.q())?,
            e: spline_fit(g, table.e())?,
            r: spline_fit(g, table.r())?,
            j: spline_fit(g, table.j())?,
            table,
        })
    }
}

/// Values needed at one Painlevé abscissa.
#[derive(Clone, Copy)]
struct Point {
    q: f64,
    e: f64,
    r: f64,
    j: f64,
}

/// F_β evaluator for a single β.
#[derive(Debug, Clone)]
pub struct DistributionEvaluator {
    beta: Beta,
    convention: F4Convention,
    cols: Arc<Columns>,
}

impl DistributionEvaluator {
    pub fn new(table: Arc<PainleveTable>, beta: Beta) -> Result<Self> {
        Self::with_convention(table, beta, F4Convention::default())
    }

    pub fn with_convention(
        table: Arc<PainleveTable>,
        beta: Beta,
        convention: F4Convention,
    ) -> Result<Self> {
        Ok(Self {
            beta,
            convention,
            cols: Arc::new(Columns::new(table)?),
        })
    }

    /// Evaluator for another β sharing the same interpolants.
    pub fn for_beta(&self, beta: Beta) -> Self {
        Self {
            beta,
            convention: self.convention,
            cols: Arc::clone(&self.cols),
        }
    }

    pub fn beta(&self) -> Beta {
        self.beta
    }

    pub fn convention(&self) -> F4Convention {
        self.convention
    }

    pub fn table(&self) -> &PainleveTable {
        &self.cols.table
    }

    /// Factor mapping this distribution's argument to the Painlevé abscissa.
    fn arg_scale(&self) -> f64 {
        match (self.beta, self.convention) {
            (Beta::Four, F4Convention::Scaled) => std::f64::consts::SQRT_2,
            _ => 1.0,
        }
    }

    /// Support window `[lo, hi]` in this distribution's argument.
    pub fn window(&self) -> (f64, f64) {
        let k = self.arg_scale();
        (self.table().s_min() / k, self.table().s_max() / k)
    }

    fn point(&self, x: f64) -> Result<Point> {
        let c = &self.cols;
        Ok(Point {
            q: c.q.eval(x)?,
            e: c.e.eval(x)?,
            r: c.r.eval(x)?,
            j: c.j.eval(x)?,
        })
    }

    fn cdf_at(&self, p: Point) -> f64 {
        let f2 = (-p.e).exp();
        match self.beta {
            Beta::Two => f2,
            Beta::One => (-0.5 * p.j).exp() * f2.sqrt(),
            Beta::Four => (0.5 * p.j).cosh() * f2.sqrt(),
        }
    }

    /// Density with respect to the Painlevé abscissa.
    fn pdf_at(&self, p: Point) -> f64 {
        let f2 = (-p.e).exp();
        let v = match self.beta {
            Beta::Two => f2 * p.r,
            Beta::One => (-0.5 * p.j).exp() * f2.sqrt() * 0.5 * (p.r + p.q),
            Beta::Four => {
                let h = 0.5 * p.j;
                f2.sqrt() * 0.5 * (h.cosh() * p.r - h.sinh() * p.q)
            }
        };
        v.max(0.0)
    }

    /// F_β(s) together with the clamp flag.
    pub fn cdf_flagged(&self, s: f64) -> Result<Evaluation> {
        if !s.is_finite() {
            return Err(Error::InvalidArgument(format!("cdf argument must be finite, got {s}")));
        }
        let x = s * self.arg_scale();
        let t = self.table();
        if x < t.s_min() {
            return Ok(Evaluation { value: 0.0, clamped: true });
        }
        if x > t.s_max() {
            return Ok(Evaluation { value: 1.0, clamped: true });
        }
        Ok(Evaluation {
            value: self.cdf_at(self.point(x)?).clamp(0.0, 1.0),
            clamped: false,
        })
    }

    pub fn cdf(&self, s: f64) -> Result<f64> {
        self.cdf_flagged(s).map(|e| e.value)
    }

    /// dF_β/ds; zero outside the window.
    pub fn pdf(&self, s: f64) -> Result<f64> {
        if !s.is_finite() {
            return Err(Error::InvalidArgument(format!("pdf argument must be finite, got {s}")));
        }
        let k = self.arg_scale();
        let x = s * k;
        let t = self.table();
        if x < t.s_min() || x > t.s_max() {
            return Ok(0.0);
        }
        Ok(k * self.pdf_at(self.point(x)?))
    }

    /// Inverse CDF for `p ∈ (1e−7, 1 − 1e−7)`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        const EDGE: f64 = 1e-7;
        if !(p > EDGE && p < 1.0 - EDGE) {
            return Err(Error::Domain { value: p, lo: EDGE, hi: 1.0 - EDGE });
        }
        let (lo, hi) = self.window();
        find_root(|s| self.cdf(s).unwrap_or(f64::NAN) - p, lo, hi, 1e-13)
    }

    /// Exact moments by spline quadrature of s^k·f_β(s) on the table grid.
    pub fn moments(&self) -> Result<SummaryStats> {
        let t = self.table();
        let k = self.arg_scale();
        let xs: Vec<f64> = t.grid().iter().map(|g| g / k).collect();
        let dens: Vec<f64> = (0..t.len())
            .map(|i| {
                k * self.pdf_at(Point {
                    q: t.q()[i],
                    e: t.e()[i],
                    r: t.r()[i],
                    j: t.j()[i],
                })
            })
            .collect();
        let (a, b) = (xs[0], xs[xs.len() - 1]);
        let mut m = [0.0; 5];
        let mut integrand = dens.clone();
        m[0] = spline_fit(&xs, &integrand)?.integrate(a, b)?;
        for (p, slot) in m.iter_mut().enumerate().skip(1) {
            for (v, (&d, &x)) in integrand.iter_mut().zip(dens.iter().zip(&xs)) {
                *v = d * x.powi(p as i32);
            }
            *slot = spline_fit(&xs, &integrand)?.integrate(a, b)?;
        }
        Ok(SummaryStats::from_raw_moments(m, None))
    }

    /// ∫ f_β over the window.
    pub fn total_mass(&self) -> Result<f64> {
        let (lo, hi) = self.window();
        Ok(self.cdf(hi)? - self.cdf(lo)?)
    }
}

/// Evaluators for all three β over one table.
#[derive(Debug, Clone)]
pub struct TracyWidom {
    one: DistributionEvaluator,
    two: DistributionEvaluator,
    four: DistributionEvaluator,
}

impl TracyWidom {
    pub fn new(table: Arc<PainleveTable>) -> Result<Self> {
        Self::with_convention(table, F4Convention::default())
    }

    pub fn with_convention(table: Arc<PainleveTable>, convention: F4Convention) -> Result<Self> {
        let two = DistributionEvaluator::with_convention(table, Beta::Two, convention)?;
        Ok(Self {
            one: two.for_beta(Beta::One),
            four: two.for_beta(Beta::Four),
            two,
        })
    }

    /// Builds the default table ([−13, 10], tol 1e−10).
    pub fn build_default() -> Result<Self> {
        Self::new(Arc::new(PainleveTable::build_default()?))
    }

    pub fn get(&self, beta: Beta) -> &DistributionEvaluator {
        match beta {
            Beta::One => &self.one,
            Beta::Two => &self.two,
            Beta::Four => &self.four,
        }
    }

    pub fn tw_cdf(&self, beta: Beta, s: f64) -> Result<f64> {
        self.get(beta).cdf(s)
    }

    pub fn tw_pdf(&self, beta: Beta, s: f64) -> Result<f64> {
        self.get(beta).pdf(s)
    }

    pub fn tw_quantile(&self, beta: Beta, p: f64) -> Result<f64> {
        self.get(beta).quantile(p)
    }

    pub fn tw_moments(&self, beta: Beta) -> Result<SummaryStats> {
        self.get(beta).moments()
    }

    pub fn table(&self) -> &PainleveTable {
        self.two.table()
    }
}
