//! Univariate polynomials over Z and Q.

mod height;
mod parse;
mod rat;
mod resultant;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_prime_u64, reduce_mod, vp, Valuation};
use crate::error::{Error, Result};
use crate::ffpoly::{self, PrimeField};

pub use height::{mahler_measure, product_height_bound, HeightReport};
pub use parse::parse_expression;
pub use rat::{RatFunc, RatPoly};
pub use resultant::{
    hadamard_bound_ln, resultant, resultant_subresultant, resultant_sylvester,
    within_hadamard_bound,
};

/// Dense polynomial with arbitrary-precision integer coefficients.
/// `coeffs[i]` is the coefficient of X^i; the leading coefficient is nonzero
/// (the zero polynomial has no coefficients).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// Below this length (of the shorter factor) products use the schoolbook method.
const KRONECKER_THRESHOLD: usize = 24;

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// c * X^deg
    pub fn monomial(c: BigInt, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c;
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Divides every coefficient by `c`, which must divide them all.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|x| {
                    let (q, r) = x.div_rem(c);
                    debug_assert!(r.is_zero(), "inexact scalar division");
                    q
                })
                .collect(),
        }
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// f(g(X)) by Horner's rule.
    pub fn compose(&self, g: &IntPoly) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(c.clone());
        }
        acc
    }

    /// X^deg f(1/X) padded to degree `n` (n ≥ deg f): Σ c_i X^{n-i}.
    pub fn reverse_to(&self, n: usize) -> Self {
        assert!(self.is_zero() || self.deg() <= n);
        let mut coeffs = vec![BigInt::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c.clone();
        }
        Self::new(coeffs)
    }

    /// Nonnegative gcd of the coefficients; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        if c.is_one() {
            self.clone()
        } else {
            self.div_scalar_exact(&c)
        }
    }

    /// Same polynomial with positive leading coefficient.
    pub fn with_positive_leading(&self) -> Self {
        match self.leading() {
            Some(lc) if lc.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// Maximum absolute coefficient H(f).
    pub fn height_max(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    /// Logarithmic height h(f) = max(0, log H(f)).
    pub fn log_height(&self) -> f64 {
        let h = self.height_max();
        if h <= BigInt::one() {
            0.0
        } else {
            crate::arith::ln_abs(&h)
        }
    }

    /// Division with remainder when `b` has unit leading coefficient or the
    /// quotient happens to be integral; returns `None` if some step is inexact.
    pub fn divrem_exact(&self, b: &IntPoly) -> Option<(IntPoly, IntPoly)> {
        let db = b.degree().expect("division by zero polynomial");
        let lc = b.leading().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Some((Self::zero(), self.clone()));
        }
        let mut q = vec![BigInt::zero(); r.len() - db];
        for i in (db..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let (c, rem) = r[i].div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                r[i - db + j] -= &c * bj;
            }
            q[i - db] = c;
        }
        Some((Self::new(q), Self::new(r)))
    }

    /// Exact quotient self / b over Z, or `None` if b does not divide self.
    pub fn div_exact(&self, b: &IntPoly) -> Option<IntPoly> {
        match self.divrem_exact(b) {
            Some((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Pseudo-remainder lc(b)^{deg a − deg b + 1}·a mod b.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        let db = b.degree().expect("pseudo-division by zero polynomial");
        let lc = b.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return self.clone();
        }
        let mut steps = r.len() - db;
        let mut top = r.len() - 1;
        loop {
            // r <- lc*r - r[top] X^{top-db} b
            let c = r[top].clone();
            for x in r.iter_mut().take(top) {
                *x *= &lc;
            }
            if !c.is_zero() {
                for (j, bj) in b.coeffs.iter().enumerate().take(db) {
                    r[top - db + j] -= &c * bj;
                }
            }
            r.truncate(top);
            steps -= 1;
            if top == db {
                break;
            }
            top -= 1;
        }
        debug_assert_eq!(steps, 0);
        Self::new(r)
    }

    /// Primitive gcd over Z with positive leading coefficient.
    /// gcd(0, 0) = 0; gcd(f, 0) = primitive part of f.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.is_constant() {
                return Self::one();
            }
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Primitive polynomial with positive leading coefficient, same distinct
    /// complex roots as `self`, all simple.
    pub fn squarefree_part(&self) -> Result<IntPoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("squarefree_part"));
        }
        if self.is_constant() {
            return Ok(Self::one());
        }
        let f = self.primitive_part();
        let g = f.gcd(&f.derivative());
        Ok(f.div_exact(&g).expect("gcd divides f").primitive_part())
    }

    /// Yun's squarefree decomposition of the primitive part:
    /// pp(f) = ∏ a_i^i with a_i squarefree, pairwise coprime, primitive.
    /// Returned as (a_i, i) pairs with nonconstant a_i.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(IntPoly, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("squarefree_decomposition"));
        }
        let mut out = Vec::new();
        if self.is_constant() {
            return Ok(out);
        }
        let f = self.primitive_part();
        let fp = f.derivative();
        let c = f.gcd(&fp);
        let mut w = f.div_exact(&c).expect("gcd divides f");
        let mut y = fp.div_exact(&c).expect("gcd divides f'");
        let mut z = &y - &w.derivative();
        let mut i = 1;
        while !w.is_constant() {
            let g = w.gcd(&z);
            if !g.is_constant() {
                out.push((g.clone(), i));
            }
            w = w.div_exact(&g).expect("gcd divides w");
            y = z.div_exact(&g).expect("gcd divides z");
            z = &y - &w.derivative();
            i += 1;
        }
        Ok(out)
    }

    /// Coefficients reduced into [0, p).
    pub fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let mut v: Vec<u64> = self.coeffs.iter().map(|c| reduce_mod(c, p)).collect();
        ffpoly::trim(&mut v);
        v
    }

    /// Number of common roots of f and g modulo p in the algebraic closure,
    /// each counted with min(mult_f, mult_g): the degree of gcd(f mod p, g mod p).
    pub fn common_roots_mod_p(&self, g: &IntPoly, p: u64) -> Result<usize> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        let fp = self.reduce_mod(p);
        let gp = g.reduce_mod(p);
        if fp.is_empty() && gp.is_empty() {
            return Err(Error::BothVanishModP(p));
        }
        let field = PrimeField::new(p);
        Ok(ffpoly::degree(&ffpoly::gcd(&field, &fp, &gp)).unwrap_or(0))
    }

    /// v_p of the resultant, the quantity bounding [`Self::common_roots_mod_p`].
    pub fn resultant_valuation(&self, g: &IntPoly, p: u64) -> Result<Valuation> {
        vp(&resultant(self, g)?, p)
    }

    fn add_ref(&self, other: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        IntPoly::new(coeffs)
    }

    fn sub_ref(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, BigInt::zero());
        for (c, s) in coeffs.iter_mut().zip(&other.coeffs) {
            *c -= s;
        }
        IntPoly::new(coeffs)
    }

    fn mul_ref(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        if self.coeffs.len().min(other.coeffs.len()) >= KRONECKER_THRESHOLD {
            return kronecker_mul(self, other);
        }
        schoolbook_mul(self, other)
    }
}

fn schoolbook_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    IntPoly::new(out)
}

/// Packs the coefficients into one big integer at `slot` 32-bit words per
/// coefficient, multiplies once, and unpacks with balanced digits.
fn kronecker_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let bits_a = a.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0);
    let bits_b = b.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0);
    let terms = a.coeffs.len().min(b.coeffs.len()) as u64;
    let need = bits_a + bits_b + (64 - terms.leading_zeros() as u64) + 2;
    let slot = need.div_ceil(32) as usize;

    let packed_a = pack(&a.coeffs, slot);
    let packed_b = pack(&b.coeffs, slot);
    let product = packed_a * packed_b;
    let out_len = a.coeffs.len() + b.coeffs.len() - 1;
    IntPoly::new(unpack(&product, slot, out_len))
}

fn pack(coeffs: &[BigInt], slot: usize) -> BigInt {
    let mut pos = vec![0u32; coeffs.len() * slot];
    let mut neg = vec![0u32; coeffs.len() * slot];
    for (i, c) in coeffs.iter().enumerate() {
        let (sign, digits) = c.to_u32_digits();
        let target = if sign == Sign::Minus { &mut neg } else { &mut pos };
        target[i * slot..i * slot + digits.len()].copy_from_slice(&digits);
    }
    BigInt::from(BigUint::new(pos)) - BigInt::from(BigUint::new(neg))
}

fn unpack(n: &BigInt, slot: usize, len: usize) -> Vec<BigInt> {
    let (sign, mut words) = n.to_u32_digits();
    words.resize(len * slot + 1, 0);
    let half = BigUint::one() << (32 * slot - 1);
    let full = BigInt::one() << (32 * slot);
    let mut carry = false;
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let mut v = BigUint::new(words[i * slot..(i + 1) * slot].to_vec());
        if carry {
            v += 1u32;
        }
        let digit = if v >= half {
            carry = true;
            BigInt::from(v) - &full
        } else {
            carry = false;
            BigInt::from(v)
        };
        out.push(if sign == Sign::Minus { -digit } else { digit });
    }
    debug_assert!(!carry || words[len * slot..].iter().all(|&w| w == 0));
    out
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait<&IntPoly> for &IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                self.$inner(rhs)
            }
        }
        impl $trait<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$inner(&rhs)
            }
        }
        impl $trait<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                (&self).$inner(rhs)
            }
        }
        impl $trait<IntPoly> for &IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                self.$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl From<BigInt> for IntPoly {
    fn from(c: BigInt) -> Self {
        IntPoly::constant(c)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.to_string()))
            .collect();
        f.write_str(&parse::format_terms(terms))
    }
}

impl FromStr for IntPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let r = parse_expression(s)?;
        if !r.den().is_one() {
            return Err(crate::error::parse_err(s, "not an integer polynomial"));
        }
        Ok(r.num().clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_basics() {
        let a = p("X^2+2*X+1");
        let b = p("X+1");
        assert_eq!(&b * &b, a);
        assert_eq!(&a - &a, IntPoly::zero());
        assert_eq!(a.div_exact(&b), Some(b.clone()));
        assert_eq!(p("X^2+1").div_exact(&b), None);
        assert_eq!(a.derivative(), p("2*X+2"));
        assert_eq!(b.pow(3), p("X^3+3*X^2+3*X+1"));
        assert_eq!(p("X^2").compose(&b), a);
    }

    #[test]
    fn content_and_primitive() {
        let f = p("-6*X^2+4");
        assert_eq!(f.content(), BigInt::from(2));
        assert_eq!(f.primitive_part(), p("3*X^2-2"));
        assert_eq!(IntPoly::zero().content(), BigInt::zero());
    }

    #[test]
    fn gcd_of_products() {
        let f = p("(X-1)^2*(X+2)*(2*X+1)");
        let g = p("(X-1)*(2*X+1)*(X^2+5)");
        assert_eq!(f.gcd(&g), p("2*X^2-X-1"));
        assert_eq!(f.gcd(&IntPoly::zero()), f.primitive_part());
        assert_eq!(p("X").gcd(&p("X+1")), IntPoly::one());
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = p("3*X^5-2*X^3+X-7");
        let b = p("2*X^2+3*X+1");
        let r = a.pseudo_rem(&b);
        // lc(b)^(5-2+1) a - r must be divisible by b
        let lhs = a.scale(&BigInt::from(16)) - r.clone();
        assert!(lhs.div_exact(&b).is_some());
        assert!(r.deg() < 2);
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(p("(X-1)^2*(X+2)").squarefree_part().unwrap(), p("(X-1)*(X+2)"));
        assert_eq!(p("X^2+X+1").squarefree_part().unwrap(), p("X^2+X+1"));
        assert_eq!(p("4*(X-1)^4").squarefree_part().unwrap(), p("X-1"));
        assert_eq!(p("7").squarefree_part().unwrap(), IntPoly::one());
        assert!(IntPoly::zero().squarefree_part().is_err());
    }

    #[test]
    fn yun_decomposition() {
        let f = p("3*(X-1)^3*(X+2)^2*(X^2+1)*(2*X-3)^2");
        let dec = f.squarefree_decomposition().unwrap();
        assert_eq!(
            dec,
            vec![
                (p("X^2+1"), 1),
                (p("(X+2)*(2*X-3)"), 2),
                (p("X-1"), 3)
            ]
        );
    }

    #[test]
    fn common_roots_examples() {
        let x1 = p("X-1");
        assert_eq!(x1.common_roots_mod_p(&p("X-8"), 7).unwrap(), 1);
        assert_eq!(x1.common_roots_mod_p(&p("X-2"), 5).unwrap(), 0);
        let sq = p("(X-1)^2");
        assert_eq!(sq.common_roots_mod_p(&p("X^2-1"), 3).unwrap(), 1);
        assert!(p("3*X").common_roots_mod_p(&p("6"), 3).is_err());
        assert!(x1.common_roots_mod_p(&p("X"), 4).is_err());
    }

    #[test]
    fn kronecker_matches_schoolbook() {
        let a = IntPoly::new(
            (0..40)
                .map(|i| BigInt::from((i * 7919 % 211) as i64 - 105) << (i % 70))
                .collect(),
        );
        let b = IntPoly::new(
            (0..33)
                .map(|i| BigInt::from((i * 104729 % 97) as i64 - 48) << (i % 50))
                .collect(),
        );
        assert_eq!(kronecker_mul(&a, &b), schoolbook_mul(&a, &b));
        assert_eq!(kronecker_mul(&a, &-&b), schoolbook_mul(&-&a, &b));
    }
}
