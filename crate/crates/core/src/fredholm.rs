//! F₂(s) = det(I − K_Airy) on L²(s, ∞) by Nyström discretisation.
//!
//! The half line is mapped onto (−1, 1) by x = s + L·(1+u)/(1−u) and the
//! Gauss–Legendre rule is applied in u. The matrix is symmetrised with √w
//! weights, so I − K is symmetric positive definite and a Cholesky
//! factorisation yields the determinant together with a positivity check.

use crate::airy::{airy_eval, AiryPair, AIRY_MAX};
use crate::error::{Error, Result};
use crate::numerics::gauss_legendre;

pub const DEFAULT_NODES: usize = 100;
pub const DEFAULT_MAP_SCALE: f64 = 10.0;
/// Inside this distance the kernel uses its diagonal limit.
pub const DIAGONAL_EPS: f64 = 1e-6;

pub const S_RANGE: (f64, f64) = (-13.0, 10.0);

fn airy_or_zero(x: f64) -> Result<AiryPair> {
    if x > AIRY_MAX {
        Ok(AiryPair { x, ai: 0.0, ai_prime: 0.0 })
    } else {
        airy_eval(x)
    }
}

fn kernel_from_pairs(a: &AiryPair, b: &AiryPair) -> f64 {
    let d = b.x - a.x;
    if d.abs() < DIAGONAL_EPS {
        // K(x, x+d) = Ai′(x)² − x·Ai(x)² − d·Ai(x)²/2 + O(d²)
        a.ai_prime * a.ai_prime - a.x * a.ai * a.ai - 0.5 * d * a.ai * a.ai
    } else {
        (a.ai * b.ai_prime - a.ai_prime * b.ai) / (a.x - b.x)
    }
}

/// The Airy kernel (Ai(x)Ai′(y) − Ai′(x)Ai(y)) / (x − y).
pub fn airy_kernel(x: f64, y: f64) -> Result<f64> {
    Ok(kernel_from_pairs(&airy_or_zero(x)?, &airy_or_zero(y)?))
}

/// Symmetric Nyström matrix √w_i·K(x_i, x_j)·√w_j on the mapped nodes.
#[derive(Debug, Clone)]
pub struct KernelMatrix {
    s: f64,
    n: usize,
    map_scale: f64,
    nodes: Vec<f64>,
    matrix: Vec<f64>,
}

impl KernelMatrix {
    pub fn assemble(s: f64, n: usize, map_scale: f64) -> Result<Self> {
        if !(S_RANGE.0..=S_RANGE.1).contains(&s) {
            return Err(Error::Domain { value: s, lo: S_RANGE.0, hi: S_RANGE.1 });
        }
        if n < 20 {
            return Err(Error::InvalidArgument(format!("need at least 20 nodes, got {n}")));
        }
        if !(map_scale > 0.0 && map_scale.is_finite()) {
            return Err(Error::InvalidArgument(format!("map scale must be positive, got {map_scale}")));
        }
        Self::assemble_unchecked(s, n, map_scale)
    }

    fn assemble_unchecked(s: f64, n: usize, map_scale: f64) -> Result<Self> {
        let rule = gauss_legendre(n, -1.0, 1.0)?;
        let mut nodes = Vec::with_capacity(n);
        let mut sqrt_w = Vec::with_capacity(n);
        for (&u, &w) in rule.nodes().iter().zip(rule.weights()) {
            let x = s + map_scale * (1.0 + u) / (1.0 - u);
            let jac = 2.0 * map_scale / ((1.0 - u) * (1.0 - u));
            nodes.push(x);
            sqrt_w.push((w * jac).sqrt());
        }
        let pairs = nodes.iter().map(|&x| airy_or_zero(x)).collect::<Result<Vec<_>>>()?;
        let mut matrix = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let k = sqrt_w[i] * kernel_from_pairs(&pairs[i], &pairs[j]) * sqrt_w[j];
                matrix[i * n + j] = k;
                matrix[j * n + i] = k;
            }
        }
        Ok(Self { s, n, map_scale, nodes, matrix })
    }

    pub fn s(&self) -> f64 {
        self.s
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn map_scale(&self) -> f64 {
        self.map_scale
    }
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }
    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.matrix
    }

    pub fn max_asymmetry(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..i {
                worst = worst.max((self.matrix[i * n + j] - self.matrix[j * n + i]).abs());
            }
        }
        worst
    }

    /// det(I − K) via Cholesky. A non-positive pivot means the discretised
    /// operator is not resolved (K must satisfy 0 ≤ K < I).
    pub fn det_i_minus(&self) -> Result<f64> {
        let n = self.n;
        let mut a: Vec<f64> = self.matrix.iter().map(|v| -v).collect();
        for i in 0..n {
            a[i * n + i] += 1.0;
        }
        let mut log_det = 0.0;
        for j in 0..n {
            let mut d = a[j * n + j];
            for k in 0..j {
                d -= a[j * n + k] * a[j * n + k];
            }
            if !(d > 0.0) {
                return Err(Error::Resolution { s: self.s, nodes: n });
            }
            let l = d.sqrt();
            a[j * n + j] = l;
            log_det += 2.0 * l.ln();
            for i in j + 1..n {
                let mut v = a[i * n + j];
                for k in 0..j {
                    v -= a[i * n + k] * a[j * n + k];
                }
                a[i * n + j] = v / l;
            }
        }
        Ok(log_det.exp().min(1.0))
    }
}

/// F₂(s) by the Fredholm determinant with `n` nodes and the default map.
pub fn fredholm_det_f2(s: f64, n: usize) -> Result<f64> {
    fredholm_det_f2_with_scale(s, n, DEFAULT_MAP_SCALE)
}

pub fn fredholm_det_f2_with_scale(s: f64, n: usize, map_scale: f64) -> Result<f64> {
    KernelMatrix::assemble(s, n, map_scale)?.det_i_minus()
}
