//! Machine-word modular arithmetic, primality, factorization and p-adic
//! valuations of big integers.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Trial division bound used before switching to Pollard rho.
pub const TRIAL_BOUND: u64 = 1_000_000;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p`; `a` must be nonzero mod `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &b in &MR_BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin on arbitrary integers; deterministic below 3.3e24, and with
/// 20 fixed bases beyond that.
pub fn is_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    const BASES: [u32; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    'witness: for &a in &BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn push_factor<T: PartialEq>(out: &mut Vec<(T, u32)>, f: T) {
    if let Some(entry) = out.iter_mut().find(|(g, _)| *g == f) {
        entry.1 += 1;
    } else {
        out.push((f, 1));
    }
}

/// Brent's variant of Pollard rho on a composite 64-bit integer.
fn rho_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        while g == 1 {
            x = f(x);
            y = f(f(y));
            g = x.abs_diff(y).gcd(&n);
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn rho_big(n: &BigUint) -> BigUint {
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut g = BigUint::one();
        while g.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            g = diff.gcd(n);
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

fn split_big(n: BigUint, out: &mut Vec<(BigUint, u32)>) {
    if n.is_one() {
        return;
    }
    if let Some(small) = n.to_u64() {
        let mut tmp = Vec::new();
        split_u64(small, &mut tmp);
        for (f, e) in tmp {
            for _ in 0..e {
                push_factor(out, BigUint::from(f));
            }
        }
        return;
    }
    if is_prime_big(&n) {
        push_factor(out, n);
        return;
    }
    let d = rho_big(&n);
    let rest = &n / &d;
    split_big(d, out);
    split_big(rest, out);
}

fn split_u64(n: u64, out: &mut Vec<(u64, u32)>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        push_factor(out, n);
        return;
    }
    let d = rho_u64(n);
    split_u64(d, out);
    split_u64(n / d, out);
}

/// Complete factorization of a 64-bit integer, primes ascending.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    let mut p = 2u64;
    while p * p <= n && p <= TRIAL_BOUND {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        split_u64(n, &mut out);
    }
    out.sort();
    out
}

/// Complete factorization of a nonzero integer of absolute value below
/// 2^128: trial division to 10^6, then Pollard rho on the cofactor.
pub fn factor_bigint(n: &BigInt) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    let mag = n.magnitude().clone();
    if mag.bits() > 128 {
        return Err(Error::FactorizationTooLarge(n.to_string()));
    }
    let (small, cofactor) = trial_factor(&mag, TRIAL_BOUND);
    let mut out: Vec<(BigUint, u32)> = small
        .into_iter()
        .map(|(p, e)| (BigUint::from(p), e))
        .collect();
    split_big(cofactor, &mut out);
    out.sort();
    Ok(out)
}

/// Partial factorization by trial division up to `bound`; returns the
/// prime powers found and the unfactored cofactor.
pub fn trial_factor(n: &BigUint, bound: u64) -> (Vec<(u64, u32)>, BigUint) {
    let mut rest = n.clone();
    let mut out = Vec::new();
    if rest.is_zero() {
        return (out, rest);
    }
    let mut p = 2u64;
    while p <= bound {
        if let Some(r) = rest.to_u64() {
            if p.saturating_mul(p) > r {
                break;
            }
        }
        // cheap remainder test via u64 digits
        if (&rest % p).is_zero() {
            let mut e = 0u32;
            while (&rest % p).is_zero() {
                rest /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // loop stopped below sqrt(rest): what is left is prime
    if let Some(r) = rest.to_u64() {
        if r > 1 && p.saturating_mul(p) > r {
            out.push((r, 1));
            out.sort();
            rest = BigUint::one();
        }
    }
    (out, rest)
}

/// p-adic valuation, with v_p(0) = infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    /// True when `m <= self`.
    pub fn bounds(self, m: u64) -> bool {
        match self {
            Valuation::Finite(v) => m <= v,
            Valuation::Infinite => true,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_u64(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Largest v with p^v | n.
pub fn vp(n: &BigInt, p: u64) -> Result<Valuation> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if n.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let mut m = n.magnitude().clone();
    let mut v = 0u64;
    // strip p^32 chunks first when p is small
    let chunk = BigUint::from(p).pow(16);
    while (&m % &chunk).is_zero() {
        m /= &chunk;
        v += 16;
    }
    while (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    Ok(Valuation::Finite(v))
}

/// Natural logarithm of |n|; `n` must be nonzero.
pub fn ln_abs(n: &BigInt) -> f64 {
    ln_biguint(n.magnitude())
}

pub fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap_or(0.0);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Reduce a signed big integer into [0, p).
pub fn reduce_mod(n: &BigInt, p: u64) -> u64 {
    let r = (n.magnitude() % p).to_u64().unwrap_or(0);
    if n.sign() == Sign::Minus && r != 0 {
        p - r
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(vp(&BigInt::from(9), 3).unwrap(), Valuation::Finite(2));
        assert_eq!(vp(&BigInt::from(7), 5).unwrap(), Valuation::Finite(0));
        assert_eq!(vp(&BigInt::from(0), 5).unwrap(), Valuation::Infinite);
        assert_eq!(vp(&BigInt::from(-7), 7).unwrap(), Valuation::Finite(1));
        assert!(matches!(vp(&BigInt::from(9), 4), Err(Error::NotPrime(_))));
        let big = BigInt::from(3).pow(100) * 10;
        assert_eq!(vp(&big, 3).unwrap(), Valuation::Finite(100));
    }

    #[test]
    fn primality_small_and_large() {
        let primes: Vec<u64> = (0..100).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes.len(), 25);
        assert!(is_prime_u64(4_294_967_291));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        let m127 = (BigUint::one() << 127) - 1u32;
        assert!(is_prime_big(&m127));
        assert!(!is_prime_big(&(&m127 * 3u32)));
    }

    #[test]
    fn factorization_round_trip() {
        let n = BigInt::from(2u64.pow(10) * 3 * 1_000_003 * 1_000_033);
        let f = factor_bigint(&n).unwrap();
        let back: BigUint = f.iter().map(|(p, e)| p.pow(*e)).product();
        assert_eq!(&back, n.magnitude());
        assert!(f.iter().all(|(p, _)| is_prime_big(p)));
        // two factors beyond the trial bound
        let n = BigInt::from(4_294_967_291u64) * BigInt::from(4_294_967_279u64);
        let f = factor_bigint(&n).unwrap();
        assert_eq!(f.len(), 2);
        assert!(factor_bigint(&(BigInt::one() << 130)).is_err());
        assert_eq!(factor_u64(360), vec![(2, 3), (3, 2), (5, 1)]);
    }

    #[test]
    fn trial_factor_keeps_cofactor() {
        let n = BigUint::from(12u32) * BigUint::from(1_000_000_007u64);
        let (small, rest) = trial_factor(&n, 1000);
        assert_eq!(small, vec![(2, 2), (3, 1)]);
        assert_eq!(rest, BigUint::from(1_000_000_007u64));
    }

    #[test]
    fn log_of_huge_integer() {
        let n = BigInt::from(10).pow(2000);
        let l = ln_abs(&n);
        assert!((l - 2000.0 * 10f64.ln()).abs() < 1e-9 * l);
    }
}
