use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::IntPoly;
use crate::arith::ln_abs;
use crate::error::{Error, Result};

/// Naive height data of an integer polynomial together with the
/// Mahler-measure sandwich 2^{-d} H ≤ M ≤ √(d+1) H.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeightReport {
    #[serde(serialize_with = "crate::serde_util::bigint_str")]
    pub big_h: BigInt,
    pub h: f64,
    pub mahler_lower: f64,
    pub mahler_upper: f64,
}

impl HeightReport {
    pub fn of(f: &IntPoly) -> Self {
        let big_h = f.height_max();
        let h = f.log_height();
        let d = f.deg() as f64;
        let ln_h = if big_h.is_zero() {
            f64::NEG_INFINITY
        } else {
            ln_abs(&big_h)
        };
        HeightReport {
            big_h,
            h,
            mahler_lower: (ln_h - d * std::f64::consts::LN_2).exp(),
            mahler_upper: (ln_h + 0.5 * (d + 1.0).ln()).exp(),
        }
    }

    /// log of the lower sandwich bound, usable when H overflows f64.
    pub fn ln_mahler_lower(&self, degree: usize) -> f64 {
        ln_abs(&self.big_h) - degree as f64 * std::f64::consts::LN_2
    }

    pub fn ln_mahler_upper(&self, degree: usize) -> f64 {
        ln_abs(&self.big_h) + 0.5 * ((degree + 1) as f64).ln()
    }
}

impl IntPoly {
    pub fn height(&self) -> HeightReport {
        HeightReport::of(self)
    }
}

/// Σ (h(f_i) + deg f_i), the bound on h(∏ f_i).
pub fn product_height_bound(fs: &[IntPoly]) -> Result<f64> {
    let mut total = 0.0;
    for f in fs {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial("product_height_bound"));
        }
        total += f.log_height() + f.deg() as f64;
    }
    Ok(total)
}

/// Numerical Mahler measure |lc| ∏ max(1, |root|), via the squarefree
/// decomposition and simultaneous root iteration on each simple-root factor.
/// Intended for modest degrees and coefficient sizes.
pub fn mahler_measure(f: &IntPoly) -> Result<f64> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("mahler_measure"));
    }
    let mut log_m = ln_abs(&f.content());
    for (factor, mult) in f.squarefree_decomposition()? {
        log_m += mult as f64 * log_mahler_squarefree(&factor);
    }
    Ok(log_m.exp())
}

fn log_mahler_squarefree(f: &IntPoly) -> f64 {
    let lc = f.leading().expect("nonzero");
    let mut log_m = ln_abs(lc);
    for z in roots(f) {
        let r = z.norm();
        if r > 1.0 {
            log_m += r.ln();
        }
    }
    log_m
}

/// Complex roots of a squarefree polynomial by Aberth–Ehrlich iteration.
fn roots(f: &IntPoly) -> Vec<Complex64> {
    let n = f.deg();
    if n == 0 {
        return Vec::new();
    }
    let lc = f.leading().unwrap();
    // Monic f64 coefficients; ratios stay representable for the sizes we use.
    let coeffs: Vec<f64> = f
        .coeffs()
        .iter()
        .map(|c| ratio_f64(c, lc))
        .collect();
    if n == 1 {
        return vec![Complex64::new(-coeffs[0], 0.0)];
    }
    // Fujiwara bound for the initial circle.
    let radius = (0..n)
        .map(|i| coeffs[i].abs().powf(1.0 / (n - i) as f64))
        .fold(0.0f64, f64::max)
        * 2.0;
    let radius = radius.max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(1.0, 0.0);
        let mut dp = Complex64::zero();
        for c in coeffs[..n].iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };

    for _ in 0..1000 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step < 1e-15 {
            break;
        }
    }
    // Newton polish.
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval(*zi);
            if dp.norm() > 0.0 {
                *zi -= p / dp;
            }
        }
    }
    z
}

fn ratio_f64(a: &BigInt, b: &BigInt) -> f64 {
    match (a.to_f64(), b.to_f64()) {
        (Some(x), Some(y)) if x.is_finite() && y.is_finite() => x / y,
        _ => {
            if a.is_zero() {
                0.0
            } else {
                let s = if a.is_negative() != b.is_negative() { -1.0 } else { 1.0 };
                s * (ln_abs(a) - ln_abs(b)).exp()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn height_examples() {
        let r = p("3*X^4+6*X^2-1").height();
        assert_eq!(r.big_h, BigInt::from(6));
        assert!((r.h - 6f64.ln()).abs() < 1e-15);
        let one = p("1").height();
        assert_eq!(one.big_h, BigInt::from(1));
        assert_eq!(one.h, 0.0);
        let zero = IntPoly::zero().height();
        assert_eq!(zero.big_h, BigInt::from(0));
        assert_eq!(zero.h, 0.0);
        let q = p("X^2+1").height();
        assert!((q.mahler_lower - 0.25).abs() < 1e-15);
        assert!((q.mahler_upper - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn mahler_values() {
        assert!((mahler_measure(&p("X^2+1")).unwrap() - 1.0).abs() < 1e-12);
        assert!((mahler_measure(&p("2*X-6")).unwrap() - 6.0).abs() < 1e-12);
        // (X-3)^2 (X+1/2 scaled) : M = 3^2 * 2
        assert!((mahler_measure(&p("(X-3)^2*(2*X+1)")).unwrap() - 18.0).abs() < 1e-9);
        // Lehmer's polynomial
        let lehmer = p("X^10+X^9-X^7-X^6-X^5-X^4-X^3+X+1");
        assert!((mahler_measure(&lehmer).unwrap() - 1.176_280_818_259_917).abs() < 1e-9);
    }

    #[test]
    fn product_bound_examples() {
        let b = product_height_bound(&[p("X-1"), p("X+1")]).unwrap();
        assert_eq!(b, 2.0);
        let b = product_height_bound(&[p("2*X+3")]).unwrap();
        assert!((b - (3f64.ln() + 1.0)).abs() < 1e-15);
        let fs = [p("3*X^4+6*X^2-1"), p("X^2+1")];
        let b = product_height_bound(&fs).unwrap();
        assert!((b - (6f64.ln() + 6.0)).abs() < 1e-12);
        assert!((&fs[0] * &fs[1]).log_height() <= b);
        assert_eq!(product_height_bound(&[]).unwrap(), 0.0);
        assert!(product_height_bound(&[IntPoly::zero()]).is_err());
    }
}
