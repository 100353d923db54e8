//! Largest eigenvalues of dense symmetric and Hermitian matrices via
//! Householder tridiagonalisation and Sturm-sequence bisection, plus an
//! implicit QL sweep for the full tridiagonal spectrum.

/// Real symmetric tridiagonal matrix with diagonal `diag` and
/// sub-diagonal `off` (`off.len() == diag.len() − 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert_eq!(off.len() + 1, diag.len().max(1), "off-diagonal length");
        Self { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `x` (Sturm count via the LDLᵀ
    /// pivots of T − xI).
    pub fn count_below(&self, x: f64) -> usize {
        let tiny = f64::MIN_POSITIVE.sqrt();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            let pq = if q.abs() < tiny { -tiny } else { q };
            q = self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / pq;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// The `k`-th largest eigenvalue (`k = 0` is the maximum) by bisection.
    pub fn kth_largest(&self, k: usize) -> f64 {
        let n = self.diag.len();
        assert!(k < n, "k out of range");
        if n == 1 {
            return self.diag[0];
        }
        let target = n - 1 - k; // eigenvalue with exactly `target` below it
        let (mut lo, mut hi) = self.gershgorin();
        let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
        lo -= 1e-12 * scale;
        hi += 1e-12 * scale;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || hi - lo <= 2.0 * f64::EPSILON * scale {
                break;
            }
            if self.count_below(mid) > target {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    pub fn largest(&self) -> f64 {
        self.kth_largest(0)
    }

    /// All eigenvalues in ascending order by implicit QL with Wilkinson
    /// shifts.
    pub fn eigenvalues_ql(&self) -> Vec<f64> {
        let n = self.diag.len();
        let mut d = self.diag.clone();
        let mut e = vec![0.0; n];
        e[..n.saturating_sub(1)].copy_from_slice(&self.off);
        for l in 0..n {
            let mut iter = 0;
            loop {
                let mut m = l;
                while m + 1 < n {
                    let dd = d[m].abs() + d[m + 1].abs();
                    if e[m].abs() <= f64::EPSILON * dd {
                        break;
                    }
                    m += 1;
                }
                if m == l {
                    break;
                }
                iter += 1;
                assert!(iter < 100, "QL iteration did not converge");
                let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                let mut r = g.hypot(1.0);
                g = d[m] - d[l] + e[l] / (g + r.copysign(g));
                let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
                let mut i = m;
                let mut deflated = false;
                while i > l {
                    i -= 1;
                    let f = s * e[i];
                    let b = c * e[i];
                    r = f.hypot(g);
                    e[i + 1] = r;
                    if r == 0.0 {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        deflated = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if deflated {
                    continue;
                }
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        }
        d.sort_by(f64::total_cmp);
        d
    }
}

/// Householder reduction of a real symmetric matrix (row-major, full
/// storage; overwritten).
pub fn tridiagonalize_symmetric(a: &mut [f64], n: usize) -> SymTridiagonal {
    assert_eq!(a.len(), n * n);
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n.saturating_sub(1)];
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    for k in 0..n.saturating_sub(1) {
        let m = k + 1;
        let norm2: f64 = (m..n).map(|i| a[i * n + k] * a[i * n + k]).sum();
        let x0 = a[m * n + k];
        if norm2 == 0.0 || (norm2 - x0 * x0) <= f64::MIN_POSITIVE {
            diag[k] = a[k * n + k];
            off[k] = x0;
            continue;
        }
        let alpha = -norm2.sqrt().copysign(x0);
        for i in m..n {
            v[i] = a[i * n + k];
        }
        v[m] -= alpha;
        let vtv = norm2 - x0 * x0 + v[m] * v[m];
        let beta = 2.0 / vtv;
        // p = beta·A·v on the trailing block
        for i in m..n {
            let row = &a[i * n + m..i * n + n];
            let s: f64 = row.iter().zip(&v[m..n]).map(|(x, y)| x * y).sum();
            p[i] = beta * s;
        }
        let kk = 0.5 * beta * (m..n).map(|i| v[i] * p[i]).sum::<f64>();
        for i in m..n {
            p[i] -= kk * v[i];
        }
        for i in m..n {
            let (vi, wi) = (v[i], p[i]);
            let row = &mut a[i * n + m..i * n + n];
            for ((x, &vj), &wj) in row.iter_mut().zip(&v[m..n]).zip(&p[m..n]) {
                *x -= vi * wj + wi * vj;
            }
        }
        diag[k] = a[k * n + k];
        off[k] = alpha;
    }
    if n > 0 {
        diag[n - 1] = a[(n - 1) * n + (n - 1)];
    }
    SymTridiagonal { diag, off }
}

/// Householder reduction of a complex Hermitian matrix given as separate
/// real and imaginary parts (row-major, overwritten). The complex
/// sub-diagonal is replaced by its moduli, which a diagonal unitary
/// similarity makes real without changing the spectrum.
pub fn tridiagonalize_hermitian(re: &mut [f64], im: &mut [f64], n: usize) -> SymTridiagonal {
    assert_eq!(re.len(), n * n);
    assert_eq!(im.len(), n * n);
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n.saturating_sub(1)];
    let (mut vr, mut vi) = (vec![0.0; n], vec![0.0; n]);
    let (mut pr, mut pi) = (vec![0.0; n], vec![0.0; n]);
    for k in 0..n.saturating_sub(1) {
        let m = k + 1;
        let norm2: f64 = (m..n)
            .map(|i| re[i * n + k] * re[i * n + k] + im[i * n + k] * im[i * n + k])
            .sum();
        let (x0r, x0i) = (re[m * n + k], im[m * n + k]);
        let x0abs = x0r.hypot(x0i);
        if norm2 == 0.0 || (norm2 - x0abs * x0abs) <= f64::MIN_POSITIVE {
            diag[k] = re[k * n + k];
            off[k] = x0abs;
            continue;
        }
        let norm = norm2.sqrt();
        // alpha = −e^{i·arg x0}·‖x‖
        let (ur, ui) = if x0abs > 0.0 { (x0r / x0abs, x0i / x0abs) } else { (1.0, 0.0) };
        let (ar, ai) = (-ur * norm, -ui * norm);
        for i in m..n {
            vr[i] = re[i * n + k];
            vi[i] = im[i * n + k];
        }
        vr[m] -= ar;
        vi[m] -= ai;
        let vtv: f64 = (m..n).map(|i| vr[i] * vr[i] + vi[i] * vi[i]).sum();
        let beta = 2.0 / vtv;
        // p = beta·A·v
        for i in m..n {
            let rr = &re[i * n + m..i * n + n];
            let ri = &im[i * n + m..i * n + n];
            let (mut sr, mut si) = (0.0, 0.0);
            for j in 0..n - m {
                let (a, b) = (rr[j], ri[j]);
                let (c, d) = (vr[m + j], vi[m + j]);
                sr += a * c - b * d;
                si += a * d + b * c;
            }
            pr[i] = beta * sr;
            pi[i] = beta * si;
        }
        // K = beta/2 · vᴴp (real for Hermitian A)
        let kk = 0.5 * beta * (m..n).map(|i| vr[i] * pr[i] + vi[i] * pi[i]).sum::<f64>();
        for i in m..n {
            pr[i] -= kk * vr[i];
            pi[i] -= kk * vi[i];
        }
        // A −= v wᴴ + w vᴴ
        for i in m..n {
            let (a_r, a_i) = (vr[i], vi[i]);
            let (b_r, b_i) = (pr[i], pi[i]);
            let rr = &mut re[i * n + m..i * n + n];
            let ri = &mut im[i * n + m..i * n + n];
            for j in 0..n - m {
                let (wr, wi) = (pr[m + j], pi[m + j]);
                let (cr, ci) = (vr[m + j], vi[m + j]);
                // v_i·conj(w_j) + w_i·conj(v_j)
                rr[j] -= a_r * wr + a_i * wi + b_r * cr + b_i * ci;
                ri[j] -= a_i * wr - a_r * wi + b_i * cr - b_r * ci;
            }
        }
        diag[k] = re[k * n + k];
        off[k] = norm;
    }
    if n > 0 {
        diag[n - 1] = re[(n - 1) * n + (n - 1)];
    }
    SymTridiagonal { diag, off }
}
