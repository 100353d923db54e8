use crate::error::{Error, Result};

/// Natural cubic spline through `(knots[i], values[i])`.
///
/// On `[x_i, x_{i+1}]` the spline is
/// `y_i + b_i·dx + c_i·dx² + d_i·dx³` with `dx = x − x_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplineFunction {
    knots: Vec<f64>,
    values: Vec<f64>,
    b: Vec<f64>,
    c: Vec<f64>,
    d: Vec<f64>,
}

/// Fits a natural cubic spline (zero second derivative at both ends).
pub fn spline_fit(xs: &[f64], ys: &[f64]) -> Result<SplineFunction> {
    let n = xs.len();
    if n < 4 {
        return Err(Error::InvalidArgument(format!(
            "spline needs at least 4 knots, got {n}"
        )));
    }
    if ys.len() != n {
        return Err(Error::InvalidArgument(format!(
            "spline got {n} knots but {} values",
            ys.len()
        )));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("spline data must be finite".into()));
    }
    if let Some(w) = xs.windows(2).find(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(format!(
            "spline knots must be strictly increasing ({} then {})",
            w[0], w[1]
        )));
    }

    let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
    // tridiagonal system for the second derivatives m_1..m_{n-2}
    let m_inner = n - 2;
    let mut diag = vec![0.0; m_inner];
    let mut rhs = vec![0.0; m_inner];
    for i in 0..m_inner {
        diag[i] = 2.0 * (h[i] + h[i + 1]);
        rhs[i] = 6.0 * ((ys[i + 2] - ys[i + 1]) / h[i + 1] - (ys[i + 1] - ys[i]) / h[i]);
    }
    // Thomas algorithm; off-diagonals are h[i+1]
    for i in 1..m_inner {
        let w = h[i] / diag[i - 1];
        diag[i] -= w * h[i];
        rhs[i] -= w * rhs[i - 1];
    }
    let mut m = vec![0.0; n];
    for i in (0..m_inner).rev() {
        let upper = if i + 1 < m_inner { h[i + 1] * m[i + 2] } else { 0.0 };
        m[i + 1] = (rhs[i] - upper) / diag[i];
    }

    let mut b = Vec::with_capacity(n - 1);
    let mut c = Vec::with_capacity(n - 1);
    let mut d = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        b.push((ys[i + 1] - ys[i]) / h[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0);
        c.push(0.5 * m[i]);
        d.push((m[i + 1] - m[i]) / (6.0 * h[i]));
    }
    Ok(SplineFunction {
        knots: xs.to_vec(),
        values: ys.to_vec(),
        b,
        c,
        d,
    })
}

impl SplineFunction {
    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.knots[0], self.knots[self.knots.len() - 1])
    }

    /// Index `i` of the interval `[x_i, x_{i+1}]` containing `x`; the last
    /// knot belongs to the final interval.
    pub fn locate(&self, x: f64) -> Result<usize> {
        let (lo, hi) = self.domain();
        if !(lo..=hi).contains(&x) {
            return Err(Error::Domain { value: x, lo, hi });
        }
        let k = self.knots.partition_point(|&t| t <= x);
        Ok(k.saturating_sub(1).min(self.knots.len() - 2))
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let i = self.locate(x)?;
        if x == self.knots[i + 1] {
            return Ok(self.values[i + 1]);
        }
        let dx = x - self.knots[i];
        Ok(self.values[i] + dx * (self.b[i] + dx * (self.c[i] + dx * self.d[i])))
    }

    pub fn derivative(&self, x: f64) -> Result<f64> {
        let i = self.locate(x)?;
        let dx = x - self.knots[i];
        Ok(self.b[i] + dx * (2.0 * self.c[i] + 3.0 * dx * self.d[i]))
    }

    fn piece_integral(&self, i: usize, dx: f64) -> f64 {
        dx * (self.values[i]
            + dx * (self.b[i] / 2.0 + dx * (self.c[i] / 3.0 + dx * self.d[i] / 4.0)))
    }

    /// Exact integral of the spline over `[a, b]` (both inside the domain).
    pub fn integrate(&self, a: f64, b: f64) -> Result<f64> {
        if a > b {
            return Ok(-self.integrate(b, a)?);
        }
        let ia = self.locate(a)?;
        let ib = self.locate(b)?;
        let from_knot = |i: usize, x: f64| self.piece_integral(i, x - self.knots[i]);
        if ia == ib {
            return Ok(from_knot(ia, b) - from_knot(ia, a));
        }
        let mut total = self.piece_integral(ia, self.knots[ia + 1] - self.knots[ia])
            - from_knot(ia, a);
        for i in ia + 1..ib {
            total += self.piece_integral(i, self.knots[i + 1] - self.knots[i]);
        }
        Ok(total + from_knot(ib, b))
    }

    /// `out[i] = ∫_{x_i}^{x_last} S(x) dx`, accumulated from the right end.
    pub fn tail_integrals(&self) -> Vec<f64> {
        let n = self.knots.len();
        let mut out = vec![0.0; n];
        let mut acc = 0.0;
        for i in (0..n - 1).rev() {
            acc += self.piece_integral(i, self.knots[i + 1] - self.knots[i]);
            out[i] = acc;
        }
        out
    }
}
