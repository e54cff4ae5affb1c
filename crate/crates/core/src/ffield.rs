//! Finite fields F_{p^d} with q = p^d ≤ 2^32.
//!
//! An element is stored as its code Σ c_i p^i, where c_0 + c_1 t + … is its
//! representative modulo the context's monic irreducible polynomial. For
//! d = 1 the code is the residue itself.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{factor_u64, inv_mod, is_prime_u64, mul_mod, reduce_mod};
use crate::error::{parse_err, Error, Result};
use crate::ffpoly::{self, FieldOps, PrimeField};
use crate::poly::IntPoly;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 32;
/// Largest field order for which roots are found by exhaustive evaluation.
pub const EXHAUSTIVE_ROOT_LIMIT: u64 = 1 << 20;
/// Largest order for which discrete log / antilog tables are built (d ≥ 2).
const TABLE_LIMIT: u64 = 1 << 20;

#[derive(Debug)]
pub struct FieldCtx {
    p: u64,
    d: u32,
    q: u64,
    /// Monic irreducible modulus, little-endian, length d + 1.
    modulus: Vec<u64>,
    /// Prime factorization of q − 1.
    unit_factors: Vec<(u64, u32)>,
    generator: u64,
    /// exp[i] = g^i for i < q − 1 and log[exp[i]] = i; only for d ≥ 2, q ≤ TABLE_LIMIT.
    tables: Option<(Vec<u32>, Vec<u32>)>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// F_{p^d} with the lexicographically least monic irreducible modulus
    /// (lower coefficients ordered as the base-p number c_{d-1} … c_0).
    pub fn new(p: u64, d: u32) -> Result<Arc<FieldCtx>> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        if d == 0 {
            return Err(Error::InvalidArgument("extension degree must be ≥ 1".into()));
        }
        let q = order_of(p, d)?;
        let prime = PrimeField::new(p);
        for t in 0..q {
            let mut modulus = Vec::with_capacity(d as usize + 1);
            let mut rest = t;
            for _ in 0..d {
                modulus.push(rest % p);
                rest /= p;
            }
            modulus.push(1);
            if is_irreducible(&prime, &modulus) {
                return Ok(Arc::new(Self::build(p, d, q, modulus)));
            }
        }
        Err(Error::NoIrreducible { p, d })
    }

    /// F_{p^d} with an explicit monic modulus of degree d, verified irreducible.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Arc<FieldCtx>> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        let mut modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        ffpoly::trim(&mut modulus);
        let d = match ffpoly::degree(&modulus) {
            Some(d) if d >= 1 && modulus[d] == 1 => d as u32,
            _ => {
                return Err(Error::InvalidArgument(
                    "modulus must be monic of degree ≥ 1".into(),
                ))
            }
        };
        let q = order_of(p, d)?;
        if !is_irreducible(&PrimeField::new(p), &modulus) {
            return Err(Error::InvalidArgument("modulus is reducible".into()));
        }
        Ok(Arc::new(Self::build(p, d, q, modulus)))
    }

    fn build(p: u64, d: u32, q: u64, modulus: Vec<u64>) -> FieldCtx {
        let mut ctx = FieldCtx {
            p,
            d,
            q,
            modulus,
            unit_factors: factor_u64(q - 1),
            generator: 0,
            tables: None,
        };
        ctx.generator = (1..q)
            .find(|&c| ctx.is_generator(c))
            .expect("multiplicative group is cyclic");
        if d >= 2 && q <= TABLE_LIMIT {
            let n = (q - 1) as usize;
            let mut exp = vec![0u32; n];
            let mut log = vec![0u32; q as usize];
            let mut x = 1u64;
            for (i, slot) in exp.iter_mut().enumerate() {
                *slot = x as u32;
                log[x as usize] = i as u32;
                x = ctx.mul_poly(x, ctx.generator);
            }
            ctx.tables = Some((exp, log));
        }
        ctx
    }

    fn is_generator(&self, c: u64) -> bool {
        self.unit_factors
            .iter()
            .all(|&(r, _)| self.pow(c, (self.q - 1) / r) != 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn modulus_poly(&self) -> IntPoly {
        IntPoly::new(self.modulus.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Least-code generator of the multiplicative group.
    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// Prime factorization of q − 1.
    pub fn unit_factors(&self) -> &[(u64, u32)] {
        &self.unit_factors
    }

    pub fn digits(&self, code: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.d as usize);
        let mut rest = code;
        for _ in 0..self.d {
            out.push(rest % self.p);
            rest /= self.p;
        }
        out
    }

    /// Code of Σ c_i t^i; coefficients beyond degree d − 1 are reduced.
    pub fn from_digits(&self, digits: &[u64]) -> u64 {
        let mut v: Vec<u64> = digits.iter().map(|&c| c % self.p).collect();
        ffpoly::trim(&mut v);
        if v.len() > self.d as usize {
            v = ffpoly::rem(&PrimeField::new(self.p), &v, &self.modulus);
        }
        v.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn elem(self: &Arc<Self>, code: u64) -> FqElem {
        assert!(code < self.q, "code out of range");
        FqElem {
            ctx: Arc::clone(self),
            code,
        }
    }

    pub fn int_code(&self, n: &BigInt) -> u64 {
        reduce_mod(n, self.p)
    }

    /// Reduction of a rational number, `None` if p divides the denominator.
    pub fn rational_code(&self, r: &BigRational) -> Option<u64> {
        let den = reduce_mod(r.denom(), self.p);
        if den == 0 {
            return None;
        }
        Some(mul_mod(reduce_mod(r.numer(), self.p), inv_mod(den, self.p), self.p))
    }

    fn mul_poly(&self, a: u64, b: u64) -> u64 {
        let prime = PrimeField::new(self.p);
        let prod = ffpoly::mul(&prime, &self.digits(a), &self.digits(b));
        self.from_digits(&ffpoly::rem(&prime, &prod, &self.modulus))
    }

    /// Multiplicative order of a nonzero element code.
    pub fn order_of_code(&self, a: u64) -> u64 {
        assert!(a != 0);
        if let Some((_, log)) = &self.tables {
            let n = self.q - 1;
            let l = log[a as usize] as u64;
            return n / gcd_u64(n, l);
        }
        let mut t = self.q - 1;
        for &(r, e) in &self.unit_factors {
            for _ in 0..e {
                if self.pow(a, t / r) == 1 {
                    t /= r;
                } else {
                    break;
                }
            }
        }
        t
    }

    /// A square root of `a`, if one exists in this field.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return Some(0);
        }
        if self.p == 2 {
            return Some(self.pow(a, self.q / 2));
        }
        if let Some((exp, log)) = &self.tables {
            let l = log[a as usize];
            return (l % 2 == 0).then(|| exp[(l / 2) as usize] as u64);
        }
        // Tonelli–Shanks with the generator as non-residue.
        let n = self.q - 1;
        if self.pow(a, n / 2) != 1 {
            return None;
        }
        let s = n.trailing_zeros();
        let t = n >> s;
        let mut m = s;
        let mut c = self.pow(self.generator, t);
        let mut x = self.pow(a, t.div_ceil(2));
        let mut b = self.pow(a, t);
        while b != 1 {
            let mut i = 0;
            let mut b2 = b;
            while b2 != 1 {
                b2 = self.mul(b2, b2);
                i += 1;
            }
            let mut f = c;
            for _ in 0..m - i - 1 {
                f = self.mul(f, f);
            }
            x = self.mul(x, f);
            c = self.mul(f, f);
            b = self.mul(b, c);
            m = i;
        }
        Some(x)
    }

    pub fn is_square(&self, a: u64) -> bool {
        a == 0 || self.p == 2 || self.pow(a, (self.q - 1) / 2) == 1
    }

    /// Roots in this field of an integer polynomial reduced mod p, ascending by code.
    pub fn roots(&self, f: &IntPoly) -> Result<Vec<u64>> {
        let fp = f.reduce_mod(self.p);
        if fp.is_empty() {
            return Err(Error::VanishesModP(self.p));
        }
        self.roots_of_codes(&fp)
    }

    /// Roots of a polynomial with coefficient codes in this field.
    pub fn roots_of_codes(&self, f: &[u64]) -> Result<Vec<u64>> {
        let mut f = f.to_vec();
        ffpoly::trim(&mut f);
        if f.is_empty() {
            return Err(Error::VanishesModP(self.p));
        }
        if f.len() == 1 {
            return Ok(Vec::new());
        }
        let mut roots = if self.q <= EXHAUSTIVE_ROOT_LIMIT {
            (0..self.q)
                .filter(|&x| ffpoly::eval(self, &f, x) == 0)
                .collect()
        } else {
            self.roots_by_splitting(&f)
        };
        roots.sort_unstable();
        Ok(roots)
    }

    fn roots_by_splitting(&self, f: &[u64]) -> Vec<u64> {
        let f = ffpoly::monic(self, f);
        let xq = ffpoly::powmod(self, &[0, 1], self.q, &f);
        let g = ffpoly::gcd(self, &ffpoly::sub(self, &xq, &[0, 1]), &f);
        let mut out = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f_f1e1d);
        self.split_linear(&g, &mut rng, &mut out);
        out
    }

    /// Equal-degree splitting of a product of distinct linear factors.
    fn split_linear(&self, g: &[u64], rng: &mut ChaCha8Rng, out: &mut Vec<u64>) {
        match ffpoly::degree(g) {
            None | Some(0) => {}
            Some(1) => out.push(self.neg(self.mul(g[0], self.inv(g[1])))),
            Some(_) => loop {
                let a = rng.gen_range(0..self.q);
                let probe = if self.p == 2 {
                    // Trace of a·X over F_2: Σ_{i<k} (aX)^{2^i}.
                    let k = self.d;
                    let mut term = ffpoly::rem(self, &[0, a], g);
                    let mut acc = term.clone();
                    for _ in 1..k {
                        term = ffpoly::mulmod(self, &term, &term, g);
                        acc = ffpoly::add(self, &acc, &term);
                    }
                    acc
                } else {
                    let h = ffpoly::powmod(self, &[a, 1], (self.q - 1) / 2, g);
                    ffpoly::sub(self, &h, &[1])
                };
                let d = ffpoly::gcd(self, &probe, g);
                let dd = ffpoly::degree(&d).unwrap_or(0);
                if dd > 0 && dd < ffpoly::degree(g).unwrap() {
                    let (other, _) = ffpoly::divrem(self, g, &d);
                    self.split_linear(&d, rng, out);
                    self.split_linear(&ffpoly::monic(self, &other), rng, out);
                    return;
                }
            },
        }
    }

    /// The degree-2 extension together with the embedding of this field into it.
    pub fn quadratic_extension(self: &Arc<Self>) -> Result<Embedding> {
        let big = FieldCtx::new(self.p, 2 * self.d)?;
        let theta = if self.d == 1 {
            0
        } else {
            *big
                .roots_of_codes(&self.modulus)?
                .first()
                .expect("an irreducible of degree d splits in F_{p^{2d}}")
        };
        let mut powers = Vec::with_capacity(self.d as usize);
        let mut acc = 1u64;
        for _ in 0..self.d {
            powers.push(acc);
            acc = big.mul(acc, theta);
        }
        Ok(Embedding {
            small: Arc::clone(self),
            big,
            theta_powers: powers,
        })
    }
}

fn order_of(p: u64, d: u32) -> Result<u64> {
    let q = (p as u128).checked_pow(d).unwrap_or(u128::MAX);
    if q > MAX_FIELD_ORDER as u128 {
        return Err(Error::FieldTooLarge(q));
    }
    Ok(q as u64)
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Rabin's test for a monic polynomial over F_p.
fn is_irreducible(f: &PrimeField, m: &[u64]) -> bool {
    let d = ffpoly::degree(m).unwrap_or(0);
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x = vec![0, 1];
    // frob[k] = X^{p^k} mod m
    let mut frob = vec![ffpoly::rem(f, &x, m)];
    for k in 1..=d {
        let prev = &frob[k - 1];
        frob.push(ffpoly::powmod(f, prev, f.p, m));
    }
    if !ffpoly::sub(f, &frob[d], &x).is_empty() {
        return false;
    }
    factor_u64(d as u64).iter().all(|&(r, _)| {
        let h = ffpoly::sub(f, &frob[d / r as usize], &x);
        ffpoly::degree(&ffpoly::gcd(f, &h, m)) == Some(0)
    })
}

impl FieldOps for FieldCtx {
    fn characteristic(&self) -> u64 {
        self.p
    }

    fn order(&self) -> u64 {
        self.q
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        if self.d == 1 {
            return PrimeField::new(self.p).add(a, b);
        }
        let (mut x, mut y, mut out, mut scale) = (a, b, 0, 1);
        for _ in 0..self.d {
            let s = (x % self.p + y % self.p) % self.p;
            out += s * scale;
            scale *= self.p;
            x /= self.p;
            y /= self.p;
        }
        out
    }

    fn neg(&self, a: u64) -> u64 {
        if self.d == 1 {
            return PrimeField::new(self.p).neg(a);
        }
        let (mut x, mut out, mut scale) = (a, 0, 1);
        for _ in 0..self.d {
            let c = x % self.p;
            out += ((self.p - c) % self.p) * scale;
            scale *= self.p;
            x /= self.p;
        }
        out
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        if self.d == 1 {
            return PrimeField::new(self.p).sub(a, b);
        }
        self.add(a, self.neg(b))
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        if self.d == 1 {
            return mul_mod(a, b, self.p);
        }
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some((exp, log)) = &self.tables {
            let n = (self.q - 1) as usize;
            let mut i = log[a as usize] as usize + log[b as usize] as usize;
            if i >= n {
                i -= n;
            }
            return exp[i] as u64;
        }
        self.mul_poly(a, b)
    }

    fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        if self.d == 1 {
            return inv_mod(a, self.p);
        }
        if let Some((exp, log)) = &self.tables {
            let l = log[a as usize] as usize;
            return if l == 0 { 1 } else { exp[(self.q - 1) as usize - l] as u64 };
        }
        self.pow(a, self.q - 2)
    }

    fn from_u64(&self, n: u64) -> u64 {
        n % self.p
    }
}

/// Embedding of F_{p^d} into F_{p^{2d}} sending the generator t of the small
/// field to a fixed root of its modulus in the big field.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub small: Arc<FieldCtx>,
    pub big: Arc<FieldCtx>,
    theta_powers: Vec<u64>,
}

impl Embedding {
    pub fn apply(&self, code: u64) -> u64 {
        if self.small.d == 1 {
            return code;
        }
        self.small
            .digits(code)
            .iter()
            .zip(&self.theta_powers)
            .fold(0, |acc, (&c, &t)| {
                self.big.add(acc, self.big.mul(self.big.from_u64(c), t))
            })
    }
}

/// An element of a finite field context.
#[derive(Clone)]
pub struct FqElem {
    ctx: Arc<FieldCtx>,
    code: u64,
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && self.ctx == other.ctx
    }
}

impl Eq for FqElem {}

impl std::hash::Hash for FqElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.p.hash(state);
        self.ctx.modulus.hash(state);
        self.code.hash(state);
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in F_{}^{}", self, self.ctx.p, self.ctx.d)
    }
}

impl FqElem {
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn code(&self) -> u64 {
        self.code
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn digits(&self) -> Vec<u64> {
        self.ctx.digits(self.code)
    }

    fn same_ctx(&self, other: &FqElem) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn with(&self, code: u64) -> FqElem {
        FqElem {
            ctx: Arc::clone(&self.ctx),
            code,
        }
    }

    pub fn add(&self, other: &FqElem) -> Result<FqElem> {
        self.same_ctx(other)?;
        Ok(self.with(self.ctx.add(self.code, other.code)))
    }

    pub fn sub(&self, other: &FqElem) -> Result<FqElem> {
        self.same_ctx(other)?;
        Ok(self.with(self.ctx.sub(self.code, other.code)))
    }

    pub fn mul(&self, other: &FqElem) -> Result<FqElem> {
        self.same_ctx(other)?;
        Ok(self.with(self.ctx.mul(self.code, other.code)))
    }

    pub fn div(&self, other: &FqElem) -> Result<FqElem> {
        self.same_ctx(other)?;
        Ok(self.mul(&other.inv()?)?)
    }

    pub fn neg(&self) -> FqElem {
        self.with(self.ctx.neg(self.code))
    }

    pub fn inv(&self) -> Result<FqElem> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.with(self.ctx.inv(self.code)))
    }

    /// self^e for any integer e (negative exponents need a unit).
    pub fn pow(&self, e: i64) -> Result<FqElem> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok(self.with(self.ctx.pow(base.code, e.unsigned_abs())))
    }

    pub fn mult_order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.ctx.order_of_code(self.code))
    }

    pub fn frobenius(&self) -> FqElem {
        self.with(self.ctx.pow(self.code, self.ctx.p))
    }
}

/// Least e ≥ 0 with base^e = x, or `None` if x ∉ ⟨base⟩ (baby-step giant-step).
pub fn discrete_log(base: &FqElem, x: &FqElem) -> Result<Option<u64>> {
    base.same_ctx(x)?;
    if base.is_zero() || x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let ctx = &base.ctx;
    let n = ctx.order_of_code(base.code);
    let m = (n as f64).sqrt().ceil() as u64;
    let mut baby = HashMap::with_capacity(m as usize);
    let mut cur = 1u64;
    for j in 0..m {
        baby.entry(cur).or_insert(j);
        cur = ctx.mul(cur, base.code);
    }
    // cur = base^m
    let giant = ctx.inv(cur);
    let mut gamma = x.code;
    for i in 0..=m {
        if let Some(&j) = baby.get(&gamma) {
            let e = i * m + j;
            if e < n {
                return Ok(Some(e));
            }
        }
        gamma = ctx.mul(gamma, giant);
    }
    Ok(None)
}

/// All roots of f mod p lying in the context, ascending by code.
pub fn roots_in_ctx(f: &IntPoly, ctx: &Arc<FieldCtx>) -> Result<Vec<FqElem>> {
    Ok(ctx.roots(f)?.into_iter().map(|c| ctx.elem(c)).collect())
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ctx.d == 1 {
            return write!(f, "{}", self.code);
        }
        let parts: Vec<String> = self.digits().iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.d)
    }
}

/// Parses a context string "p^d" (or "p" for d = 1).
pub fn parse_ctx(s: &str) -> Result<Arc<FieldCtx>> {
    let t = s.trim();
    let (p, d) = match t.split_once('^') {
        Some((p, d)) => (p.trim(), d.trim()),
        None => (t, "1"),
    };
    let p: u64 = p.parse().map_err(|_| parse_err(s, "bad characteristic"))?;
    let d: u32 = d.parse().map_err(|_| parse_err(s, "bad degree"))?;
    FieldCtx::new(p, d)
}

/// Parses an element literal "[c0,c1,...]" (or a bare integer) in `ctx`.
pub fn parse_elem(ctx: &Arc<FieldCtx>, s: &str) -> Result<FqElem> {
    let t = s.trim();
    let body = match t.strip_prefix('[') {
        Some(rest) => rest
            .strip_suffix(']')
            .ok_or_else(|| parse_err(s, "missing ']'"))?,
        None => t,
    };
    let mut digits = Vec::new();
    for part in body.split(',').filter(|x| !x.trim().is_empty()) {
        let c: i64 = part
            .trim()
            .parse()
            .map_err(|_| parse_err(s, "bad coefficient"))?;
        digits.push(c.rem_euclid(ctx.p as i64) as u64);
    }
    if digits.len() > ctx.d as usize {
        return Err(parse_err(s, "too many coefficients"));
    }
    Ok(ctx.elem(ctx.from_digits(&digits)))
}

impl FromStr for FqElem {
    type Err = Error;
    /// "<elem>@<p^d>", e.g. "[1,2]@7^2".
    fn from_str(s: &str) -> Result<Self> {
        let (e, c) = s
            .split_once('@')
            .ok_or_else(|| parse_err(s, "expected <element>@<p^d>"))?;
        parse_elem(&parse_ctx(c)?, e)
    }
}

impl FqElem {
    pub fn from_int(ctx: &Arc<FieldCtx>, n: &BigInt) -> FqElem {
        ctx.elem(ctx.int_code(n))
    }

    pub fn zero(ctx: &Arc<FieldCtx>) -> FqElem {
        ctx.elem(0)
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> FqElem {
        ctx.elem(1)
    }

    pub fn is_one(&self) -> bool {
        self.code == 1
    }
}

/// Reduces a rational to a field element, `None` if p divides its denominator.
pub fn reduce_rational(ctx: &Arc<FieldCtx>, r: &BigRational) -> Option<FqElem> {
    ctx.rational_code(r).map(|c| ctx.elem(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> Arc<FieldCtx> {
        FieldCtx::new(7, 1).unwrap()
    }

    #[test]
    fn orders_in_f7() {
        let k = f7();
        assert_eq!(k.elem(2).mult_order().unwrap(), 3);
        assert_eq!(k.elem(3).mult_order().unwrap(), 6);
        assert_eq!(k.elem(1).mult_order().unwrap(), 1);
        assert!(k.elem(0).mult_order().is_err());
        assert_eq!(k.generator(), 3);
    }

    #[test]
    fn logs_in_f7() {
        let k = f7();
        assert_eq!(discrete_log(&k.elem(3), &k.elem(2)).unwrap(), Some(2));
        assert_eq!(discrete_log(&k.elem(3), &k.elem(1)).unwrap(), Some(0));
        assert_eq!(discrete_log(&k.elem(2), &k.elem(3)).unwrap(), None);
        assert!(discrete_log(&k.elem(0), &k.elem(3)).is_err());
    }

    #[test]
    fn moduli_are_least_irreducible() {
        assert_eq!(FieldCtx::new(7, 2).unwrap().modulus(), &[1, 0, 1]);
        // X^2+X+1 is the only irreducible quadratic over F_2
        assert_eq!(FieldCtx::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FieldCtx::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FieldCtx::new(5, 2).unwrap().modulus(), &[2, 0, 1]);
        assert!(FieldCtx::new(7, 0).is_err());
        assert!(FieldCtx::new(9, 1).is_err());
        assert!(matches!(FieldCtx::new(2, 40), Err(Error::FieldTooLarge(_))));
        assert!(FieldCtx::with_modulus(5, vec![1, 0, 1]).is_err());
    }

    #[test]
    fn roots_examples() {
        let cyc: IntPoly = "X^2+X+1".parse().unwrap();
        let k = f7();
        let r: Vec<u64> = roots_in_ctx(&cyc, &k).unwrap().iter().map(|e| e.code()).collect();
        assert_eq!(r, vec![2, 4]);
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert!(roots_in_ctx(&cyc, &f5).unwrap().is_empty());
        let f25 = FieldCtx::new(5, 2).unwrap();
        assert_eq!(roots_in_ctx(&cyc, &f25).unwrap().len(), 2);
        let lin: IntPoly = "X-1".parse().unwrap();
        assert_eq!(k.roots(&lin).unwrap(), vec![1]);
        assert!(k.roots(&"7*X".parse().unwrap()).is_err());
    }

    #[test]
    fn splitting_matches_exhaustive() {
        // q = 1031^2 > 2^20 forces the splitting path.
        let big = FieldCtx::new(1031, 2).unwrap();
        let f: IntPoly = "(X^2+X+1)*(X-5)*(X^2+3)*(X^3-2)".parse().unwrap();
        let roots = big.roots(&f).unwrap();
        for &r in &roots {
            assert_eq!(ffpoly::eval(&*big, &f.reduce_mod(1031), r), 0);
        }
        // Every factor splits over F_{p^2}: 1031 ≡ 2 mod 3, so X^3-2 is a
        // linear factor times an irreducible quadratic over F_p.
        assert_eq!(roots.len(), 8);
        let f2 = FieldCtx::new(2, 21).unwrap();
        let g: IntPoly = "X^4+X+1".parse().unwrap();
        // X^4+X+1 is irreducible over F_2 and 4 ∤ 21
        assert!(f2.roots(&g).unwrap().is_empty());
        let h: IntPoly = "X^2+X".parse().unwrap();
        assert_eq!(f2.roots(&h).unwrap(), vec![0, 1]);
    }

    #[test]
    fn extension_arithmetic() {
        let k = FieldCtx::new(3, 2).unwrap();
        for a in 1..9 {
            assert_eq!(k.mul(a, k.inv(a)), 1);
            assert_eq!(k.mul_poly(a, 5), k.mul(a, 5));
            assert_eq!(k.add(a, k.neg(a)), 0);
        }
        // Frobenius closure on roots of X^2+1 in F_9
        let roots = k.roots(&"X^2+1".parse().unwrap()).unwrap();
        assert_eq!(roots.len(), 2);
        for r in roots {
            let e = k.elem(r);
            assert!(k.roots(&"X^2+1".parse().unwrap()).unwrap().contains(&e.frobenius().code()));
        }
    }

    #[test]
    fn square_roots() {
        for (p, d) in [(7, 1), (13, 1), (5, 2), (1009, 2), (2, 3)] {
            let k = FieldCtx::new(p, d).unwrap();
            let step = (k.q() / 500).max(1);
            let mut a = 0;
            while a < k.q() {
                match k.sqrt(a) {
                    Some(r) => assert_eq!(k.mul(r, r), a),
                    None => assert!(!k.is_square(a)),
                }
                a += step;
            }
        }
    }

    #[test]
    fn embedding_is_homomorphism() {
        let k = FieldCtx::new(3, 2).unwrap();
        let emb = k.quadratic_extension().unwrap();
        assert_eq!(emb.big.q(), 81);
        for a in 0..9 {
            for b in 0..9 {
                assert_eq!(emb.apply(k.mul(a, b)), emb.big.mul(emb.apply(a), emb.apply(b)));
                assert_eq!(emb.apply(k.add(a, b)), emb.big.add(emb.apply(a), emb.apply(b)));
            }
        }
    }

    #[test]
    fn literals() {
        let k = parse_ctx("7^2").unwrap();
        assert_eq!(k.q(), 49);
        let e = parse_elem(&k, "[3,-1]").unwrap();
        assert_eq!(e.digits(), vec![3, 6]);
        assert_eq!(e.to_string(), "[3,6]");
        let x: FqElem = "5@7".parse().unwrap();
        assert_eq!(x.to_string(), "5");
        assert!(parse_elem(&k, "[1,2,3]").is_err());
        let other = FieldCtx::new(7, 1).unwrap();
        assert_eq!(e.add(&other.elem(1)), Err(Error::ContextMismatch));
    }
}
