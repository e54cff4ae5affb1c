//! Dense polynomials over a finite field, stored as coefficient codes
//! (index i = coefficient of X^i, trailing zeros trimmed).
//!
//! The field is supplied through [`FieldOps`], implemented both by the prime
//! field [`PrimeField`] and by extension contexts in [`crate::ffield`].

use crate::arith::{inv_mod, mul_mod};

/// Arithmetic on field elements encoded as integers in `[0, q)`.
pub trait FieldOps {
    fn characteristic(&self) -> u64;
    fn order(&self) -> u64;
    fn add(&self, a: u64, b: u64) -> u64;
    fn sub(&self, a: u64, b: u64) -> u64;
    fn neg(&self, a: u64) -> u64;
    fn mul(&self, a: u64, b: u64) -> u64;
    /// Inverse of a nonzero element.
    fn inv(&self, a: u64) -> u64;

    /// Image of an integer under Z -> F_p -> F_q.
    fn from_u64(&self, n: u64) -> u64 {
        n % self.characteristic()
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        PrimeField { p }
    }
}

impl FieldOps for PrimeField {
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> u64 {
        self.p
    }
    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }
    fn inv(&self, a: u64) -> u64 {
        inv_mod(a, self.p)
    }
}

pub fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn add<F: FieldOps>(f: &F, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| f.add(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect();
    trim(&mut out);
    out
}

pub fn sub<F: FieldOps>(f: &F, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| f.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect();
    trim(&mut out);
    out
}

pub fn scale<F: FieldOps>(f: &F, a: &[u64], c: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().map(|&x| f.mul(x, c)).collect();
    trim(&mut out);
    out
}

pub fn mul<F: FieldOps>(f: &F, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem<F: FieldOps>(f: &F, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r: Vec<u64> = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv_lc = f.inv(b[db]);
    let mut q = vec![0u64; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], inv_lc);
        let shift = dr - db;
        q[shift] = c;
        for (j, &bj) in b[..=db].iter().enumerate() {
            r[shift + j] = f.sub(r[shift + j], f.mul(c, bj));
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn rem<F: FieldOps>(f: &F, a: &[u64], b: &[u64]) -> Vec<u64> {
    divrem(f, a, b).1
}

pub fn monic<F: FieldOps>(f: &F, a: &[u64]) -> Vec<u64> {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = f.inv(a[d]);
            scale(f, &a[..=d], inv)
        }
    }
}

/// Monic gcd; gcd(0, 0) = 0.
pub fn gcd<F: FieldOps>(f: &F, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn derivative<F: FieldOps>(f: &F, a: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| f.mul(f.from_u64(i as u64), c))
        .collect();
    trim(&mut out);
    out
}

pub fn eval<F: FieldOps>(f: &F, a: &[u64], x: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

pub fn mulmod<F: FieldOps>(f: &F, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    rem(f, &mul(f, a, b), m)
}

/// base^exp mod m, with exp given as little-endian u64 limbs.
pub fn powmod_big<F: FieldOps>(f: &F, base: &[u64], exp: &[u64], m: &[u64]) -> Vec<u64> {
    let mut acc = rem(f, &[1], m);
    let base = rem(f, base, m);
    for &limb in exp.iter().rev() {
        for bit in (0..64).rev() {
            acc = mulmod(f, &acc, &acc, m);
            if (limb >> bit) & 1 == 1 {
                acc = mulmod(f, &acc, &base, m);
            }
        }
    }
    acc
}

pub fn powmod<F: FieldOps>(f: &F, base: &[u64], exp: u64, m: &[u64]) -> Vec<u64> {
    powmod_big(f, base, &[exp], m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_over_f7() {
        let f = PrimeField::new(7);
        // (X-1)(X-2) and (X-1)(X+3)
        let a = mul(&f, &[6, 1], &[5, 1]);
        let b = mul(&f, &[6, 1], &[3, 1]);
        assert_eq!(gcd(&f, &a, &b), vec![6, 1]);
        assert_eq!(gcd(&f, &a, &[]), monic(&f, &a));
    }

    #[test]
    fn divrem_reconstructs() {
        let f = PrimeField::new(11);
        let a = vec![3, 0, 5, 7, 1, 9];
        let b = vec![2, 4, 6];
        let (q, r) = divrem(&f, &a, &b);
        assert!(degree(&r).map_or(true, |d| d < 2));
        assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
    }

    #[test]
    fn frobenius_power() {
        // X^7 = X mod any polynomial over F_7 with distinct roots in F_7
        let f = PrimeField::new(7);
        let m = mul(&f, &[6, 1], &[4, 1]);
        assert_eq!(powmod(&f, &[0, 1], 7, &m), vec![0, 1]);
    }
}
