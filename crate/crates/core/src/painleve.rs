//! Hastings–McLeod solution of Painlevé II, q'' = s·q + 2q³ with
//! q(s) ~ Ai(s) as s → +∞, and the integrals that build F₁, F₂, F₄.
//!
//! The solution is a separatrix, so it is computed as a two-point boundary
//! value problem on `[s_min, s_max]` rather than by shooting. The equation
//! is discretised with the fourth-order Numerov scheme and the resulting
//! tridiagonal nonlinear system is solved by Newton's method. Boundary
//! values come from Ai at the right end and from the left asymptotic series
//! q(s) = √(−s/2)·(1 + 1/(8s³) − 73/(128s⁶) + 10657/(1024s⁹) + …).

use crate::airy::{airy_eval, AIRY_MAX};
use crate::error::{Error, Result};
use crate::numerics::{gauss_legendre, spline_fit};

pub const DEFAULT_S_MIN: f64 = -13.0;
pub const DEFAULT_S_MAX: f64 = 10.0;
pub const DEFAULT_TOL: f64 = 1e-10;

const MAX_NEWTON: usize = 60;

/// Grid values of the Hastings–McLeod function before integration.
#[derive(Debug, Clone, PartialEq)]
pub struct PainleveSolution {
    pub grid: Vec<f64>,
    pub q: Vec<f64>,
    pub q_prime: Vec<f64>,
    pub tol: f64,
    /// Number of Newton iterations taken.
    pub iterations: usize,
}

/// Hastings–McLeod q, q′ and the tail integrals
/// E(s) = ∫_s^∞ (x−s) q(x)² dx, R(s) = ∫_s^∞ q(x)² dx, J(s) = ∫_s^∞ q(x) dx
/// on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PainleveTable {
    grid: Vec<f64>,
    q: Vec<f64>,
    q_prime: Vec<f64>,
    e: Vec<f64>,
    r: Vec<f64>,
    j: Vec<f64>,
    tol: f64,
}

/// Left boundary value from the asymptotic series at −∞.
pub fn left_asymptote(s: f64) -> f64 {
    let c = 1.0 / (s * s * s);
    (-s / 2.0).sqrt() * (1.0 + c * (1.0 / 8.0 + c * (-73.0 / 128.0 + c * 10657.0 / 1024.0)))
}

/// Grid intervals used for a given window and tolerance: the step is about
/// `(10·tol)^{1/4}` (Numerov is fourth order), rounded so that a whole
/// number of steps fits in each unit length.
pub fn default_steps(s_min: f64, s_max: f64, tol: f64) -> usize {
    let h = (10.0 * tol).powf(0.25).min(0.05);
    let per_unit = (1.0 / h).ceil();
    ((s_max - s_min) * per_unit - 1e-9).ceil() as usize
}

fn check_window(s_min: f64, s_max: f64, tol: f64) -> Result<()> {
    if !(s_min.is_finite() && s_min <= -8.0) {
        return Err(Error::InvalidArgument(format!("s_min must be <= -8, got {s_min}")));
    }
    if !(s_max.is_finite() && (6.0..=AIRY_MAX - 50.0).contains(&s_max)) {
        return Err(Error::InvalidArgument(format!(
            "s_max must lie in [6, {}], got {s_max}",
            AIRY_MAX - 50.0
        )));
    }
    if !(1e-12..=1e-6).contains(&tol) {
        return Err(Error::InvalidArgument(format!(
            "tol must lie in [1e-12, 1e-6], got {tol}"
        )));
    }
    Ok(())
}

/// Solves the boundary-value problem on the default grid for `tol`.
pub fn solve_hastings_mcleod(s_min: f64, s_max: f64, tol: f64) -> Result<PainleveSolution> {
    check_window(s_min, s_max, tol)?;
    solve_hastings_mcleod_with_steps(s_min, s_max, tol, default_steps(s_min, s_max, tol))
}

/// Solves on a uniform grid with exactly `steps` intervals.
pub fn solve_hastings_mcleod_with_steps(
    s_min: f64,
    s_max: f64,
    tol: f64,
    steps: usize,
) -> Result<PainleveSolution> {
    check_window(s_min, s_max, tol)?;
    if steps < 16 {
        return Err(Error::InvalidArgument(format!("need at least 16 steps, got {steps}")));
    }
    let m = steps;
    let grid: Vec<f64> = (0..=m)
        .map(|i| (s_min * (m - i) as f64 + s_max * i as f64) / m as f64)
        .collect();
    let h = (s_max - s_min) / m as f64;
    let h2 = h * h / 12.0;

    let right = airy_eval(s_max)?;
    let mut q: Vec<f64> = grid
        .iter()
        .map(|&s| {
            let w = 0.5 * (1.0 + s.tanh());
            let ai = airy_eval(s.max(-40.0)).map(|p| p.ai).unwrap_or(0.0);
            w * ai + (1.0 - w) * (s.min(0.0) / -2.0).sqrt()
        })
        .collect();
    q[0] = left_asymptote(s_min);
    q[m] = right.ai;

    let n = m - 1;
    let mut sub = vec![0.0; n];
    let mut diag = vec![0.0; n];
    let mut sup = vec![0.0; n];
    let mut rhs = vec![0.0; n];
    let mut iterations = 0;
    let mut best = f64::INFINITY;
    let mut stalled = 0;
    let mut converged = false;
    while iterations < MAX_NEWTON {
        iterations += 1;
        let f: Vec<f64> = grid.iter().zip(&q).map(|(&s, &v)| s * v + 2.0 * v * v * v).collect();
        let fp: Vec<f64> = grid.iter().zip(&q).map(|(&s, &v)| s + 6.0 * v * v).collect();
        for k in 0..n {
            let i = k + 1;
            rhs[k] = -(q[i + 1] - 2.0 * q[i] + q[i - 1] - h2 * (f[i + 1] + 10.0 * f[i] + f[i - 1]));
            diag[k] = -2.0 - 10.0 * h2 * fp[i];
            sub[k] = 1.0 - h2 * fp[i - 1];
            sup[k] = 1.0 - h2 * fp[i + 1];
        }
        let dq = solve_tridiagonal(&sub, &diag, &sup, &rhs);
        let mut step = 0.0f64;
        for (k, d) in dq.iter().enumerate() {
            q[k + 1] += d;
            step = step.max(d.abs());
        }
        if !step.is_finite() {
            return Err(Error::Convergence { iterations, residual: step });
        }
        if step <= 1e-14 {
            converged = true;
            break;
        }
        // stagnation at the rounding floor counts as converged
        if step < best {
            best = step;
            stalled = 0;
        } else {
            stalled += 1;
            if best <= 1e-11 && stalled >= 3 {
                converged = true;
                break;
            }
        }
    }
    if !converged {
        return Err(Error::Convergence { iterations, residual: best });
    }
    if let Some(i) = q.iter().position(|&v| v <= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "Newton left the positive branch at s = {}",
            grid[i]
        )));
    }

    let f: Vec<f64> = grid.iter().zip(&q).map(|(&s, &v)| s * v + 2.0 * v * v * v).collect();
    let mut q_prime = vec![0.0; m + 1];
    for i in 1..m {
        // fourth-order centred derivative corrected with q''' ≈ Δf/(2h)
        q_prime[i] = (q[i + 1] - q[i - 1]) / (2.0 * h) - h * (f[i + 1] - f[i - 1]) / 12.0;
    }
    q_prime[0] = (-25.0 * q[0] + 48.0 * q[1] - 36.0 * q[2] + 16.0 * q[3] - 3.0 * q[4]) / (12.0 * h);
    q_prime[m] =
        (25.0 * q[m] - 48.0 * q[m - 1] + 36.0 * q[m - 2] - 16.0 * q[m - 3] + 3.0 * q[m - 4])
            / (12.0 * h);

    Ok(PainleveSolution { grid, q, q_prime, tol, iterations })
}

fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = sup[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let denom = diag[i] - sub[i] * c[i - 1];
        c[i] = sup[i] / denom;
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / denom;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

/// Tail contributions beyond `s_max`, where q is replaced by Ai:
/// ∫ Ai² = Ai′² − s·Ai², ∫(x−s)Ai² = (2s²Ai² − 2s·Ai′² − Ai·Ai′)/3, and ∫ Ai
/// by Gauss–Legendre over the next 40 units.
pub fn airy_tails(s: f64) -> Result<(f64, f64, f64)> {
    let p = airy_eval(s)?;
    let (a, d) = (p.ai, p.ai_prime);
    let r = d * d - s * a * a;
    let e = (2.0 * s * s * a * a - 2.0 * s * d * d - a * d) / 3.0;
    let upper = (s + 40.0).min(AIRY_MAX);
    let rule = gauss_legendre(120, s, upper)?;
    let mut j = 0.0;
    for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
        j += w * airy_eval(x)?.ai;
    }
    Ok((e.max(0.0), r.max(0.0), j.max(0.0)))
}

/// Fills in E, R and J by spline quadrature from `s_max` downward, seeded
/// with the Airy tails beyond the window.
pub fn painleve_integrals(sol: PainleveSolution) -> Result<PainleveTable> {
    let s_max = *sol.grid.last().expect("non-empty grid");
    let (e_tail, r_tail, j_tail) = airy_tails(s_max)?;

    let q2: Vec<f64> = sol.q.iter().map(|v| v * v).collect();
    let r: Vec<f64> = spline_fit(&sol.grid, &q2)?
        .tail_integrals()
        .into_iter()
        .map(|v| v + r_tail)
        .collect();
    let e: Vec<f64> = spline_fit(&sol.grid, &r)?
        .tail_integrals()
        .into_iter()
        .map(|v| v + e_tail)
        .collect();
    let j: Vec<f64> = spline_fit(&sol.grid, &sol.q)?
        .tail_integrals()
        .into_iter()
        .map(|v| v + j_tail)
        .collect();

    Ok(PainleveTable {
        grid: sol.grid,
        q: sol.q,
        q_prime: sol.q_prime,
        e,
        r,
        j,
        tol: sol.tol,
    })
}

impl PainleveTable {
    /// Solves and integrates on `[s_min, s_max]`.
    pub fn build(s_min: f64, s_max: f64, tol: f64) -> Result<Self> {
        painleve_integrals(solve_hastings_mcleod(s_min, s_max, tol)?)
    }

    /// The default window [−13, 10] at tolerance 1e−10.
    pub fn build_default() -> Result<Self> {
        Self::build(DEFAULT_S_MIN, DEFAULT_S_MAX, DEFAULT_TOL)
    }

    /// Reassembles a table from stored columns, checking shape and the
    /// structural invariants.
    pub fn from_columns(
        grid: Vec<f64>,
        q: Vec<f64>,
        q_prime: Vec<f64>,
        e: Vec<f64>,
        r: Vec<f64>,
        j: Vec<f64>,
        tol: f64,
    ) -> Result<Self> {
        let n = grid.len();
        if n < 16 || [&q, &q_prime, &e, &r, &j].iter().any(|c| c.len() != n) {
            return Err(Error::InvalidArgument("table columns have inconsistent lengths".into()));
        }
        let table = Self { grid, q, q_prime, e, r, j, tol };
        table.check_invariants()?;
        Ok(table)
    }

    /// Structural checks: increasing grid, finite columns, q > 0, and
    /// nonnegative nonincreasing integrals.
    pub fn check_invariants(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidArgument(format!("painleve table: {msg}")));
        if self.grid.windows(2).any(|w| w[1] <= w[0]) {
            return bad("grid not strictly increasing");
        }
        let cols = [&self.q, &self.q_prime, &self.e, &self.r, &self.j];
        if cols.iter().any(|c| c.iter().any(|v| !v.is_finite())) {
            return bad("non-finite entry");
        }
        if self.q.iter().any(|&v| v <= 0.0) {
            return bad("q not positive");
        }
        for c in [&self.e, &self.r, &self.j] {
            if c.iter().any(|&v| v < 0.0) || c.windows(2).any(|w| w[1] > w[0]) {
                return bad("integrals must be nonnegative and nonincreasing");
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }
    pub fn q(&self) -> &[f64] {
        &self.q
    }
    pub fn q_prime(&self) -> &[f64] {
        &self.q_prime
    }
    pub fn e(&self) -> &[f64] {
        &self.e
    }
    pub fn r(&self) -> &[f64] {
        &self.r
    }
    pub fn j(&self) -> &[f64] {
        &self.j
    }
    pub fn tol(&self) -> f64 {
        self.tol
    }
    pub fn s_min(&self) -> f64 {
        self.grid[0]
    }
    pub fn s_max(&self) -> f64 {
        self.grid[self.grid.len() - 1]
    }
    pub fn len(&self) -> usize {
        self.grid.len()
    }
    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }
    /// Uniform grid spacing.
    pub fn step(&self) -> f64 {
        (self.s_max() - self.s_min()) / (self.len() - 1) as f64
    }
    /// Index of the grid point nearest to `s`.
    pub fn nearest_index(&self, s: f64) -> usize {
        let i = ((s - self.s_min()) / self.step()).round();
        (i.max(0.0) as usize).min(self.len() - 1)
    }
}
