use crate::error::{Error, Result};

/// Finds a root of `f` in `[a, b]` by Brent's method.
///
/// Requires `f(a)·f(b) ≤ 0`. The returned abscissa lies in the initial
/// bracket and the final bracket is no wider than `tol`.
pub fn find_root<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "root bracket [{a}, {b}] with tol {tol}"
        )));
    }
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::Bracket { a, b, fa, fb });
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.25 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // inverse quadratic / secant step
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
    }
    Err(Error::Convergence {
        iterations: 200,
        residual: fb.abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn linear_root() {
        let x = find_root(|x| x - 1.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((x - 1.0).abs() < 1e-14);
    }

    #[test]
    fn square_root_of_two() {
        let x = find_root(|x| x * x - 2.0, 1.0, 2.0, 1e-12).unwrap();
        assert!((x - 1.414_213_562_373_095).abs() < 1e-12);
    }

    #[test]
    fn endpoint_root() {
        assert_eq!(find_root(|x| x, 0.0, 1.0, 1e-12).unwrap(), 0.0);
        assert_eq!(find_root(|x| x - 1.0, 0.0, 1.0, 1e-12).unwrap(), 1.0);
    }

    #[test]
    fn missing_sign_change() {
        assert!(matches!(
            find_root(|x| x * x + 1.0, -1.0, 1.0, 1e-12),
            Err(Error::Bracket { .. })
        ));
    }

    proptest! {
        #[test]
        fn root_stays_in_bracket(r in -5.0f64..5.0, wl in 0.01f64..3.0, wr in 0.01f64..3.0, k in 1i32..4) {
            let (a, b) = (r - wl, r + wr);
            let f = |x: f64| (x - r).powi(2 * k - 1);
            let x = find_root(f, a, b, 1e-10).unwrap();
            prop_assert!(x >= a && x <= b);
            prop_assert!((x - r).abs() <= 1e-9);
        }
    }
}
