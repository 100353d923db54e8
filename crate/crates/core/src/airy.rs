//! The Airy function Ai and its derivative on the real line.
//!
//! For `-10 ≤ x ≤ 8` the Maclaurin series is summed in double-double
//! arithmetic, which absorbs the cancellation between the two auxiliary
//! series (it grows like `exp(4/3·|x|^{3/2})` on the positive side).
//! Outside that band the large-argument expansions take over: the
//! exponential form for `x > 8` and the modulus–phase form for `x < -10`.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{Error, Result};

/// Lower end of the supported argument range.
pub const AIRY_MIN: f64 = -40.0;
/// Upper end of the supported argument range; Ai underflows well before.
pub const AIRY_MAX: f64 = 200.0;

const SERIES_LO: f64 = -10.0;
const SERIES_HI: f64 = 8.0;

/// Ai(0) = 3^{-2/3}/Γ(2/3) as an unevaluated sum hi + lo.
const AI0: Dd = Dd::new(0.3550280538878172, 2.05233632436212e-17);
/// −Ai′(0) = 3^{-1/3}/Γ(1/3).
const NEG_AIP0: Dd = Dd::new(0.2588194037928068, -2.522243111610832e-17);

/// Ai(x) and Ai′(x) at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryPair {
    pub x: f64,
    pub ai: f64,
    pub ai_prime: f64,
}

/// Evaluates Ai and Ai′ at `x ∈ [-40, 200]`.
pub fn airy_eval(x: f64) -> Result<AiryPair> {
    if !(AIRY_MIN..=AIRY_MAX).contains(&x) {
        return Err(Error::Domain {
            value: x,
            lo: AIRY_MIN,
            hi: AIRY_MAX,
        });
    }
    let (ai, ai_prime) = if x > SERIES_HI {
        asymptotic_positive(x)
    } else if x < SERIES_LO {
        asymptotic_negative(-x)
    } else {
        maclaurin(x)
    };
    Ok(AiryPair { x, ai, ai_prime })
}

/// Shorthand for `airy_eval(x)?.ai`.
pub fn airy_ai(x: f64) -> Result<f64> {
    airy_eval(x).map(|p| p.ai)
}

fn maclaurin(x: f64) -> (f64, f64) {
    let x3 = Dd::from(x) * x * x;
    let xd = Dd::from(x);

    // f = Σ x^{3k}·1·4·…(3k-2)/(3k)!,  g = Σ x^{3k+1}·2·5·…(3k-1)/(3k+1)!
    let mut f = Dd::from(1.0);
    let mut g = xd;
    let mut fp = xd * x * 0.5;
    let mut gp = Dd::from(1.0);
    let (mut tf, mut tg, mut tfp, mut tgp) = (f, g, fp, gp);
    for k in 1..200 {
        let kf = k as f64;
        tf = tf * x3 / ((3.0 * kf - 1.0) * (3.0 * kf));
        tg = tg * x3 / ((3.0 * kf) * (3.0 * kf + 1.0));
        tgp = tgp * x3 / ((3.0 * kf) * (3.0 * kf - 2.0));
        if k >= 2 {
            tfp = tfp * x3 / ((3.0 * kf - 1.0) * (3.0 * kf - 3.0));
            fp = fp + tfp;
        }
        f = f + tf;
        g = g + tg;
        gp = gp + tgp;
        let small = |t: Dd, s: Dd| t.hi.abs() <= 1e-33 * s.hi.abs().max(1e-300);
        if k > 3 && small(tf, f) && small(tg, g) && small(tfp, fp) && small(tgp, gp) {
            break;
        }
        if tf.hi == 0.0 && tg.hi == 0.0 {
            break;
        }
    }
    let ai = AI0 * f - NEG_AIP0 * g;
    let aip = AI0 * fp - NEG_AIP0 * gp;
    (ai.hi + ai.lo, aip.hi + aip.lo)
}

/// u_k coefficients of the large-argument expansions, u_0 = 1.
fn u_coefficient(prev: f64, k: usize) -> f64 {
    let k = k as f64;
    prev * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k)
}

fn v_from_u(u: f64, k: usize) -> f64 {
    let k = k as f64;
    -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u
}

fn asymptotic_positive(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let inv = 1.0 / zeta;
    let (mut su, mut sv) = (1.0, 1.0);
    let mut u = 1.0;
    let mut pw = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..60 {
        u = u_coefficient(u, k);
        pw *= -inv;
        let tu = u * pw;
        let tv = v_from_u(u, k) * pw;
        if tu.abs() >= last {
            break;
        }
        last = tu.abs();
        su += tu;
        sv += tv;
        if tu.abs() < 1e-17 * su.abs() && tv.abs() < 1e-17 * sv.abs() {
            break;
        }
    }
    let x14 = x.sqrt().sqrt();
    let e = (-zeta).exp() / (2.0 * PI.sqrt());
    (e / x14 * su, -e * x14 * sv)
}

fn asymptotic_negative(z: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    let inv = 1.0 / zeta;
    // even and odd parts of Σ(-1)^k u_k ζ^{-k} with the sign pattern of the
    // oscillatory expansion: Σ(-1)^m u_{2m} ζ^{-2m} and Σ(-1)^m u_{2m+1} ζ^{-2m-1}
    let (mut ue, mut uo, mut ve, mut vo) = (1.0, 0.0, 1.0, 0.0);
    let mut u = 1.0;
    let mut pw = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..80 {
        u = u_coefficient(u, k);
        pw *= inv;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let tu = sign * u * pw;
        let tv = sign * v_from_u(u, k) * pw;
        if tu.abs() >= last {
            break;
        }
        last = tu.abs();
        if k % 2 == 0 {
            ue += tu;
            ve += tv;
        } else {
            uo += tu;
            vo += tv;
        }
        if tu.abs() < 1e-18 {
            break;
        }
    }
    let theta = zeta - FRAC_PI_4;
    let (sin, cos) = theta.sin_cos();
    let z14 = z.sqrt().sqrt();
    let rp = 1.0 / PI.sqrt();
    let ai = rp / z14 * (cos * ue + sin * uo);
    let aip = rp * z14 * (sin * ve - cos * vo);
    (ai, aip)
}

/// Double-double number `hi + lo` with |lo| ≤ ulp(hi)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    const fn new(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }
}

impl From<f64> for Dd {
    fn from(v: f64) -> Self {
        Self { hi: v, lo: 0.0 }
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl std::ops::Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl std::ops::Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + Dd::new(-o.hi, -o.lo)
    }
}

impl std::ops::Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl std::ops::Mul<f64> for Dd {
    type Output = Dd;
    fn mul(self, o: f64) -> Dd {
        let (p, e) = two_prod(self.hi, o);
        let (hi, lo) = quick_two_sum(p, e + self.lo * o);
        Dd { hi, lo }
    }
}

impl std::ops::Div<f64> for Dd {
    type Output = Dd;
    fn div(self, d: f64) -> Dd {
        let q1 = self.hi / d;
        let r = self - Dd::from(d) * q1;
        let q2 = r.hi / d;
        let r = r - Dd::from(d) * q2;
        let q3 = r.hi / d;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from(q3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{ode_solve, OdeOptions};

    // (x, Ai(x), Ai'(x)) from a 60-term Maclaurin sum in 50-digit arithmetic,
    // cross-checked against an independent arbitrary-precision Airy routine.
    const SERIES_REFERENCE: &[(f64, f64, f64)] = &[
        (0.0, 0.35502805388781723926, -0.25881940379280679841),
        (6.0, 9.9476943602528895702e-6, -0.000024765200397034954754),
        (-3.5, -0.37553382314043191193, -0.34344343345404814629),
        (2.5, 0.015725923380470489995, -0.026250881035903230365),
        (-7.25, 0.32374057321118614622, -0.30022899504735408146),
        (1.0, 0.13529241631288141552, -0.15914744129679321279),
        (-1.0, 0.5355608832923521188, -0.010160567116645209395),
    ];

    // large-|x| values from the same arbitrary-precision routine
    const FAR_REFERENCE: &[(f64, f64, f64)] = &[
        (-40.0, -0.045933923437957249632, -1.389090875260718381),
        (-25.5, -0.24407246181912132932, -0.29955061147614896254),
        (-12.0, -0.066555175054373129474, 1.0231104533679707299),
        (-10.0, 0.040241238486443190689, 0.9962650441327900559),
        (-9.0, -0.022133721547341403674, -0.97566398092633159471),
        (8.0, 4.6922076160992316256e-8, -1.3414392979067865743e-7),
        (10.0, 1.1047532552898685934e-10, -3.5206336767389236366e-10),
        (15.0, 2.164962520737992299e-18, -8.4205679540177727661e-18),
        (30.0, 3.2082175915504955711e-49, -1.7598765814327259821e-48),
        (60.0, 2.7831487094969355371e-136, -2.1569758112094737872e-135),
        (100.0, 2.6344821520881844896e-291, -2.6351403616044099336e-290),
    ];

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn values_at_origin() {
        let p = airy_eval(0.0).unwrap();
        assert!(rel(p.ai, 0.3550280538878172) < 1e-15);
        assert!(rel(p.ai_prime, -0.2588194037928068) < 1e-15);
    }

    #[test]
    fn matches_series_reference() {
        for &(x, ai, aip) in SERIES_REFERENCE {
            let p = airy_eval(x).unwrap();
            assert!(rel(p.ai, ai) <= 1e-11, "Ai({x}) = {} vs {ai}", p.ai);
            assert!(rel(p.ai_prime, aip) <= 1e-11, "Ai'({x}) = {} vs {aip}", p.ai_prime);
        }
    }

    #[test]
    fn matches_far_reference() {
        for &(x, ai, aip) in FAR_REFERENCE {
            let p = airy_eval(x).unwrap();
            let tol = if x >= -10.0 { 1e-11 } else { 1e-9 };
            assert!(rel(p.ai, ai) <= tol, "Ai({x}) = {} vs {ai}", p.ai);
            assert!(rel(p.ai_prime, aip) <= tol, "Ai'({x}) = {} vs {aip}", p.ai_prime);
        }
    }

    #[test]
    fn switchover_bands_agree() {
        // series and asymptotic forms evaluated on both sides of each switch
        for &x in &[7.5, 8.0, 8.5, 9.0] {
            let (a1, d1) = maclaurin(x);
            let (a2, d2) = asymptotic_positive(x);
            assert!(rel(a1, a2) < 1e-12, "x={x}");
            assert!(rel(d1, d2) < 1e-12, "x={x}");
        }
        for &z in &[9.0, 9.5, 10.0, 10.5, 11.0] {
            let (a1, d1) = maclaurin(-z);
            let (a2, d2) = asymptotic_negative(z);
            // scale by the envelope, not the (possibly vanishing) value
            let env = 1.0 / (PI.sqrt() * z.sqrt().sqrt());
            assert!((a1 - a2).abs() < 1e-12 * env, "x={}", -z);
            assert!((d1 - d2).abs() < 1e-12 * env * z.sqrt(), "x={}", -z);
        }
    }

    #[test]
    fn sign_pattern_and_monotone_decay() {
        let mut prev = f64::INFINITY;
        for i in 0..=1000 {
            let x = i as f64 * 0.1;
            let p = airy_eval(x).unwrap();
            assert!(p.ai > 0.0 && p.ai_prime < 0.0, "x={x}");
            assert!(p.ai < prev);
            prev = p.ai;
        }
    }

    #[test]
    fn underflow_is_benign() {
        let p = airy_eval(150.0).unwrap();
        assert!(p.ai >= 0.0 && p.ai.is_finite());
        assert!(p.ai_prime <= 0.0 && p.ai_prime.is_finite());
    }

    #[test]
    fn domain_checks() {
        assert!(matches!(airy_eval(-40.5), Err(Error::Domain { .. })));
        assert!(matches!(airy_eval(200.5), Err(Error::Domain { .. })));
        assert!(airy_eval(f64::NAN).is_err());
        assert!(airy_eval(-40.0).is_ok());
        assert!(airy_eval(200.0).is_ok());
    }

    #[test]
    fn ode_residual_by_second_differences() {
        let h = 1e-3;
        for i in 0..=400 {
            let x = -10.0 + i as f64 * 0.05;
            let a = |t: f64| airy_eval(t).unwrap().ai;
            let second = (a(x + h) - 2.0 * a(x) + a(x - h)) / (h * h);
            let resid = second - x * a(x);
            assert!(resid.abs() <= 1e-5 * (1.0 + (x * a(x)).abs()), "x={x} resid={resid}");
        }
    }

    #[test]
    fn derivative_consistent_with_values() {
        let h = 1e-5;
        for i in 0..=200 {
            let x = -10.0 + i as f64 * 0.1;
            let a = |t: f64| airy_eval(t).unwrap().ai;
            let fd = (a(x + h) - a(x - h)) / (2.0 * h);
            assert!((fd - airy_eval(x).unwrap().ai_prime).abs() < 1e-8, "x={x}");
        }
    }

    #[test]
    fn agrees_with_integrated_airy_equation() {
        let p0 = airy_eval(0.0).unwrap();
        let opts = OdeOptions::with_tolerances(1e-13, 1e-16);
        let sol = ode_solve(
            |t, y| vec![y[1], t * y[0]],
            0.0,
            &[p0.ai, p0.ai_prime],
            2.0,
            opts,
        )
        .unwrap();
        let end = sol.final_state();
        let p2 = airy_eval(2.0).unwrap();
        assert!((end[0] - p2.ai).abs() < 1e-8);
        assert!((end[1] - p2.ai_prime).abs() < 1e-8);

        // forward integration of a decaying solution loses digits to the
        // growing Bi component; 1e-8 absolute still holds on [0, 8]
        let sol = ode_solve(
            |t, y| vec![y[1], t * y[0]],
            0.0,
            &[p0.ai, p0.ai_prime],
            8.0,
            opts,
        )
        .unwrap();
        for k in 0..=80 {
            let x = k as f64 * 0.1;
            let y = sol.eval(x).unwrap();
            assert!((y[0] - airy_eval(x).unwrap().ai).abs() < 1e-8, "x={x}");
        }
    }
}
