use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

/// Largest degree for which [`resultant`] uses the Sylvester determinant.
const SYLVESTER_MAX_DEGREE: usize = 8;

/// Res(f, g) = lc(f)^{deg g} ∏_{f(α)=0} g(α), the Sylvester determinant.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial("resultant"));
    }
    if f.deg().max(g.deg()) <= SYLVESTER_MAX_DEGREE {
        resultant_sylvester(f, g)
    } else {
        resultant_subresultant(f, g)
    }
}

/// Upper bound (√(deg f+1)·H(f))^{deg g} (√(deg g+1)·H(g))^{deg f} for |Res(f, g)|,
/// as a natural logarithm.
pub fn hadamard_bound_ln(f: &IntPoly, g: &IntPoly) -> f64 {
    let (df, dg) = (f.deg() as f64, g.deg() as f64);
    let side = |p: &IntPoly, d: f64| 0.5 * (d + 1.0).ln() + crate::arith::ln_abs(&p.height_max());
    dg * side(f, df) + df * side(g, dg)
}

/// Exact check of |r| against the Hadamard-type bound, compared in squares.
pub fn within_hadamard_bound(f: &IntPoly, g: &IntPoly, r: &BigInt) -> bool {
    let (df, dg) = (f.deg() as u32, g.deg() as u32);
    let hf = f.height_max();
    let hg = g.height_max();
    let bound = BigInt::from(df + 1).pow(dg)
        * hf.pow(2 * dg)
        * BigInt::from(dg + 1).pow(df)
        * hg.pow(2 * df);
    r * r <= bound
}

fn constant_case(f: &IntPoly, g: &IntPoly) -> Option<BigInt> {
    if f.deg() == 0 {
        return Some(f.coeff(0).pow(g.deg() as u32));
    }
    if g.deg() == 0 {
        return Some(g.coeff(0).pow(f.deg() as u32));
    }
    None
}

/// Resultant as the fraction-free (Bareiss) determinant of the Sylvester matrix.
pub fn resultant_sylvester(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial("resultant"));
    }
    if let Some(r) = constant_case(f, g) {
        return Ok(r);
    }
    Ok(bareiss_det(sylvester_matrix(f, g)))
}

pub fn sylvester_matrix(f: &IntPoly, g: &IntPoly) -> Vec<Vec<BigInt>> {
    let m = f.deg();
    let n = g.deg();
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (shifts, p, d) in [(n, f, m), (m, g, n)] {
        for i in 0..shifts {
            let mut row = vec![BigInt::zero(); size];
            for j in 0..=d {
                row[i + j] = p.coeff(d - j);
            }
            rows.push(row);
        }
    }
    rows
}

pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Resultant by the subresultant pseudo-remainder sequence.
pub fn resultant_subresultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial("resultant"));
    }
    if let Some(r) = constant_case(f, g) {
        return Ok(r);
    }
    let (mut a, mut b, mut negate) = if f.deg() < g.deg() {
        (g.clone(), f.clone(), f.deg() % 2 == 1 && g.deg() % 2 == 1)
    } else {
        (f.clone(), g.clone(), false)
    };
    let ca = a.content();
    let cb = b.content();
    a = a.div_scalar_exact(&ca);
    b = b.div_scalar_exact(&cb);
    let t = ca.pow(b.deg() as u32) * cb.pow(a.deg() as u32);
    let mut gg = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.deg();
        let db = b.deg();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        let divisor = &gg * h.clone().pow(delta as u32);
        b = r.div_scalar_exact(&divisor);
        gg = a.leading().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            let num = gg.clone().pow(delta as u32);
            let den = h.pow((delta - 1) as u32);
            exact_div(num, &den)
        };
        if b.deg() == 0 {
            let da = a.deg() as u32;
            let lb = b.leading().unwrap().clone();
            let res = exact_div(lb.pow(da), &h.pow(da - 1));
            let res = res * t;
            return Ok(if negate { -res } else { res });
        }
    }
}

fn exact_div(a: BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    debug_assert!(r.is_zero(), "inexact division in subresultant sequence");
    q
}
