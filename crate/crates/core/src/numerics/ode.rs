use crate::error::{Error, Result};

use super::{DEFAULT_ABS_TOL, DEFAULT_REL_TOL};

/// Tolerances and step limits for [`ode_solve`].
#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Initial step magnitude; chosen automatically when `None`.
    pub initial_step: Option<f64>,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rel_tol: DEFAULT_REL_TOL,
            abs_tol: DEFAULT_ABS_TOL,
            initial_step: None,
            max_steps: 1_000_000,
        }
    }
}

impl OdeOptions {
    pub fn with_tolerances(rel_tol: f64, abs_tol: f64) -> Self {
        Self {
            rel_tol,
            abs_tol,
            ..Self::default()
        }
    }
}

/// Accepted steps of an integration, with derivatives for Hermite
/// interpolation between them.
#[derive(Debug, Clone)]
pub struct OdeSolution {
    abscissae: Vec<f64>,
    states: Vec<Vec<f64>>,
    derivatives: Vec<Vec<f64>>,
    tolerance_used: f64,
}

impl OdeSolution {
    pub fn abscissae(&self) -> &[f64] {
        &self.abscissae
    }

    pub fn states(&self) -> &[Vec<f64>] {
        &self.states
    }

    pub fn tolerance_used(&self) -> f64 {
        self.tolerance_used
    }

    pub fn final_state(&self) -> &[f64] {
        self.states.last().expect("solution holds the initial state")
    }

    /// Cubic Hermite interpolation of the trajectory at `t`.
    pub fn eval(&self, t: f64) -> Result<Vec<f64>> {
        let ts = &self.abscissae;
        let (first, last) = (ts[0], ts[ts.len() - 1]);
        let (lo, hi) = if first <= last { (first, last) } else { (last, first) };
        if !(lo..=hi).contains(&t) {
            return Err(Error::Domain { value: t, lo, hi });
        }
        if ts.len() == 1 {
            return Ok(self.states[0].clone());
        }
        let forward = last >= first;
        // first index whose abscissa lies past t in the direction of travel
        let k = ts.partition_point(|&x| if forward { x < t } else { x > t });
        let k = k.clamp(1, ts.len() - 1);
        let (t0, t1) = (ts[k - 1], ts[k]);
        let h = t1 - t0;
        let th = (t - t0) / h;
        let h00 = (1.0 + 2.0 * th) * (1.0 - th) * (1.0 - th);
        let h10 = th * (1.0 - th) * (1.0 - th);
        let h01 = th * th * (3.0 - 2.0 * th);
        let h11 = th * th * (th - 1.0);
        let (y0, y1) = (&self.states[k - 1], &self.states[k]);
        let (d0, d1) = (&self.derivatives[k - 1], &self.derivatives[k]);
        Ok((0..y0.len())
            .map(|i| h00 * y0[i] + h10 * h * d0[i] + h01 * y1[i] + h11 * h * d1[i])
            .collect())
    }
}

// Dormand–Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// fifth-order weights minus embedded fourth-order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrates y' = f(t, y) from `t0` to `t1` with an embedded Runge–Kutta
/// 5(4) pair (first-same-as-last) and PI step-size control.
///
/// `t1 < t0` integrates backwards.
pub fn ode_solve<F>(rhs: F, t0: f64, y0: &[f64], t1: f64, opts: OdeOptions) -> Result<OdeSolution>
where
    F: Fn(f64, &[f64]) -> Vec<f64>,
{
    if !(opts.rel_tol > 0.0 && opts.abs_tol > 0.0) {
        return Err(Error::InvalidArgument(
            "ode tolerances must be positive".into(),
        ));
    }
    if !t0.is_finite() || !t1.is_finite() || y0.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(
            "ode endpoints and initial state must be finite".into(),
        ));
    }

    let dim = y0.len();
    let dir = if t1 >= t0 { 1.0 } else { -1.0 };
    let span = (t1 - t0).abs();
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut f = rhs(t, &y);

    let mut sol = OdeSolution {
        abscissae: vec![t0],
        states: vec![y.clone()],
        derivatives: vec![f.clone()],
        tolerance_used: opts.rel_tol,
    };
    if span == 0.0 {
        return Ok(sol);
    }

    let err_norm = |y_old: &[f64], y_new: &[f64], err: &[f64]| -> f64 {
        let s: f64 = (0..dim)
            .map(|i| {
                let sc = opts.abs_tol + opts.rel_tol * y_old[i].abs().max(y_new[i].abs());
                (err[i] / sc).powi(2)
            })
            .sum();
        (s / dim.max(1) as f64).sqrt()
    };

    let mut h = match opts.initial_step {
        Some(h) => h.abs().min(span),
        None => {
            // Hairer–Wanner starting-step heuristic
            let d0 = err_norm(&y, &y, &y).max(1e-300);
            let d1 = err_norm(&y, &y, &f).max(1e-300);
            let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
            h0.min(span)
        }
    };

    const SAFETY: f64 = 0.9;
    const ALPHA: f64 = 0.7 / 5.0;
    const BETA: f64 = 0.4 / 5.0;
    let mut err_prev: f64 = 1e-4;
    let mut k = vec![vec![0.0; dim]; 7];
    let mut ytmp = vec![0.0; dim];
    let mut steps = 0usize;

    while (t1 - t) * dir > 0.0 {
        steps += 1;
        if steps > opts.max_steps {
            return Err(Error::Divergence { at: t });
        }
        let remaining = (t1 - t).abs();
        let last = h >= remaining;
        if last {
            h = remaining;
        }
        if h <= 1e-14 * t.abs().max(1.0) && !last {
            return Err(Error::Divergence { at: t });
        }
        let hs = h * dir;

        k[0].clone_from(&f);
        for stage in 1..7 {
            for i in 0..dim {
                let mut acc = y[i];
                for (j, kj) in k.iter().enumerate().take(stage) {
                    acc += hs * A[stage][j] * kj[i];
                }
                ytmp[i] = acc;
            }
            k[stage] = rhs(t + C[stage] * hs, &ytmp);
        }
        // the last stage was evaluated at the fifth-order solution (FSAL)
        let y_new = ytmp.clone();
        let err: Vec<f64> = (0..dim)
            .map(|i| hs * (0..7).map(|j| E[j] * k[j][i]).sum::<f64>())
            .collect();
        let en = err_norm(&y, &y_new, &err);

        if !en.is_finite() || y_new.iter().any(|v| !v.is_finite()) {
            h *= 0.2;
            continue;
        }

        if en <= 1.0 {
            t = if last { t1 } else { t + hs };
            y = y_new;
            f = k[6].clone();
            sol.abscissae.push(t);
            sol.states.push(y.clone());
            sol.derivatives.push(f.clone());

            let factor = if en == 0.0 {
                5.0
            } else {
                (SAFETY * en.powf(-ALPHA) * err_prev.powf(BETA)).clamp(0.2, 5.0)
            };
            err_prev = en.max(1e-4);
            h *= factor;
        } else {
            let factor = (SAFETY * en.powf(-ALPHA)).clamp(0.2, 1.0);
            h *= factor;
        }
    }

    Ok(sol)
}
