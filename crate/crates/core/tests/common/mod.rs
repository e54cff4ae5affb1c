//! Test-local reference implementations, kept deliberately naive and
//! independent of the library's fast paths.
#![allow(dead_code)]

use std::collections::BTreeMap;

use multdep_core::poly::IntPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Determinant by Gaussian elimination over Q.
pub fn rational_det(rows: Vec<Vec<BigInt>>) -> BigInt {
    let n = rows.len();
    let mut m: Vec<Vec<BigRational>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigInt::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let v = &f * &m[col][c];
                m[r][c] -= v;
            }
        }
    }
    assert!(det.is_integer());
    det.to_integer()
}

/// Sylvester matrix of coefficient lists given lowest degree first.
pub fn sylvester(f: &[BigInt], g: &[BigInt]) -> Vec<Vec<BigInt>> {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let mut rows = Vec::new();
    for i in 0..n {
        let mut row = vec![BigInt::zero(); m + n];
        for (j, c) in f.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); m + n];
        for (j, c) in g.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

pub fn oracle_resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    rational_det(sylvester(f.coeffs(), g.coeffs()))
}

/// Multiplicative order by repeated multiplication.
pub fn naive_order(a: u64, p: u64) -> u64 {
    assert!(a % p != 0);
    let mut x = a % p;
    let mut k = 1;
    while x != 1 {
        x = x * a % p;
        k += 1;
    }
    k
}

pub fn eval_mod(f: &IntPoly, x: u64, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let mut acc = BigInt::zero();
    for c in f.coeffs().iter().rev() {
        acc = (acc * BigInt::from(x) + c) % &pb;
    }
    if acc.is_negative() {
        acc += &pb;
    }
    u64::try_from(acc).unwrap()
}

/// Sparse multivariate polynomial keyed by exponent vectors.
pub type Sparse = BTreeMap<Vec<u32>, BigInt>;

pub fn sparse_var(nvars: usize, i: usize) -> Sparse {
    let mut e = vec![0; nvars];
    e[i] = 1;
    Sparse::from([(e, BigInt::one())])
}

pub fn sparse_const(nvars: usize, c: i64) -> Sparse {
    Sparse::from([(vec![0; nvars], BigInt::from(c))])
}

pub fn sparse_add(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = a.clone();
    for (e, c) in b {
        *out.entry(e.clone()).or_insert_with(BigInt::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn sparse_scale(a: &Sparse, k: i64) -> Sparse {
    let mut out: Sparse = a.iter().map(|(e, c)| (e.clone(), c * k)).collect();
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn sparse_mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}
