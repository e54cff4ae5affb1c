//! Short Weierstrass curves y² = x³ + ax + b over Q and over finite fields.

mod divpoly;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{factor_bigint, factor_u64};
use crate::error::{parse_err, Error, Result};
use crate::ffield::{Embedding, FieldCtx};
use crate::ffpoly::FieldOps;

pub use divpoly::{
    divpoly_height_profile, DivPoly, DivPolyTable, FqDivPolyTable, HeightRow, XOfMultiple,
};

/// Curves with at most this many field elements get an exhaustive point
/// count, used for point orders.
pub const EXHAUSTIVE_COUNT_LIMIT: u64 = 10_000;

/// y² = x³ + ax + b over Q with 4a³ + 27b² ≠ 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveQ {
    a: BigRational,
    b: BigRational,
}

/// Integral model y² = x³ + a'x + b' with a' = u⁴a, b' = u⁶b, isomorphic
/// over Q via (x, y) ↦ (u²x, u³y).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralModel {
    pub a: BigInt,
    pub b: BigInt,
    pub u: BigInt,
}

impl CurveQ {
    pub fn new(a: BigRational, b: BigRational) -> Result<Self> {
        let c = CurveQ { a, b };
        if c.discriminant_factor().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(c)
    }

    pub fn from_ints(a: i64, b: i64) -> Result<Self> {
        Self::new(
            BigRational::from_integer(a.into()),
            BigRational::from_integer(b.into()),
        )
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    /// 4a³ + 27b².
    pub fn discriminant_factor(&self) -> BigRational {
        let four = BigRational::from_integer(4.into());
        let tt = BigRational::from_integer(27.into());
        four * &self.a * &self.a * &self.a + tt * &self.b * &self.b
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    /// The integral model with the least positive scaling u.
    pub fn integral_model(&self) -> IntegralModel {
        if self.is_integral() {
            return IntegralModel {
                a: self.a.to_integer(),
                b: self.b.to_integer(),
                u: BigInt::one(),
            };
        }
        let mut exps: HashMap<BigInt, u32> = HashMap::new();
        for (den, weight) in [(self.a.denom(), 4u32), (self.b.denom(), 6u32)] {
            if den.is_one() {
                continue;
            }
            let factors = factor_bigint(den).expect("denominator within factoring range");
            for (prime, e) in factors {
                let need = e.div_ceil(weight);
                let slot = exps.entry(BigInt::from(prime)).or_insert(0);
                *slot = (*slot).max(need);
            }
        }
        let u = exps
            .iter()
            .fold(BigInt::one(), |acc, (prime, &e)| acc * num_traits::pow(prime.clone(), e as usize));
        let u2 = &u * &u;
        let u4 = &u2 * &u2;
        let u6 = &u4 * &u2;
        let a = &self.a * BigRational::from_integer(u4);
        let b = &self.b * BigRational::from_integer(u6);
        debug_assert!(a.is_integer() && b.is_integer());
        IntegralModel {
            a: a.to_integer(),
            b: b.to_integer(),
            u,
        }
    }

    /// Reduction to a finite field of characteristic p.
    pub fn reduce(&self, ctx: &Arc<FieldCtx>) -> Result<CurveFq> {
        let p = ctx.p();
        let bad = |reason: &str| Error::BadReduction {
            p,
            reason: reason.to_string(),
        };
        let (a, b) = match (ctx.rational_code(&self.a), ctx.rational_code(&self.b)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(bad("p divides a denominator of the coefficients")),
        };
        if p == 2 {
            return Err(bad("short Weierstrass models are singular in characteristic 2"));
        }
        CurveFq::new(ctx, a, b).map_err(|_| bad("4a^3 + 27b^2 vanishes modulo p"))
    }

    /// True when the curve has good reduction at p (p odd).
    pub fn has_good_reduction(&self, p: u64) -> bool {
        if p == 2 {
            return false;
        }
        FieldCtx::new(p, 1).map_or(false, |ctx| self.reduce(&ctx).is_ok())
    }
}

impl fmt::Display for CurveQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={},b={}", self.a, self.b)
    }
}

impl FromStr for CurveQ {
    type Err = Error;
    /// "a=<rational>,b=<rational>", spaces allowed, either order.
    fn from_str(s: &str) -> Result<Self> {
        let mut a = None;
        let mut b = None;
        for part in s.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| parse_err(s, "expected key=value"))?;
            let value: BigRational = value
                .trim()
                .parse()
                .map_err(|_| parse_err(s, "bad rational coefficient"))?;
            match key.trim() {
                "a" if a.is_none() => a = Some(value),
                "b" if b.is_none() => b = Some(value),
                _ => return Err(parse_err(s, "expected exactly the keys a and b")),
            }
        }
        match (a, b) {
            (Some(a), Some(b)) => CurveQ::new(a, b),
            _ => Err(parse_err(s, "missing coefficient")),
        }
    }
}

/// A point on a curve over a finite field, coordinates as element codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointFq {
    Infinity,
    Affine(u64, u64),
}

impl PointFq {
    pub fn is_infinity(&self) -> bool {
        matches!(self, PointFq::Infinity)
    }
}

/// y² = x³ + ax + b over F_q (q odd) with 4a³ + 27b² ≠ 0.
#[derive(Debug, Clone)]
pub struct CurveFq {
    ctx: Arc<FieldCtx>,
    a: u64,
    b: u64,
    count: Arc<OnceLock<u64>>,
}

impl PartialEq for CurveFq {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && self.ctx == other.ctx
    }
}

impl Eq for CurveFq {}

impl CurveFq {
    pub fn new(ctx: &Arc<FieldCtx>, a: u64, b: u64) -> Result<Self> {
        if ctx.p() == 2 {
            return Err(Error::InvalidArgument(
                "characteristic 2 is not supported for short Weierstrass curves".into(),
            ));
        }
        let c = CurveFq {
            ctx: Arc::clone(ctx),
            a,
            b,
            count: Arc::new(OnceLock::new()),
        };
        let k = &c.ctx;
        let a3 = k.mul(a, k.mul(a, a));
        let disc = k.add(k.mul(k.from_u64(4), a3), k.mul(k.from_u64(27), k.mul(b, b)));
        if disc == 0 {
            return Err(Error::SingularCurve);
        }
        Ok(c)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// x³ + ax + b.
    pub fn rhs(&self, x: u64) -> u64 {
        let k = &*self.ctx;
        k.add(k.mul(k.add(k.mul(x, x), self.a), x), self.b)
    }

    pub fn is_on_curve(&self, p: PointFq) -> bool {
        match p {
            PointFq::Infinity => true,
            PointFq::Affine(x, y) => {
                x < self.ctx.q() && y < self.ctx.q() && self.ctx.mul(y, y) == self.rhs(x)
            }
        }
    }

    pub fn neg(&self, p: PointFq) -> PointFq {
        match p {
            PointFq::Infinity => p,
            PointFq::Affine(x, y) => PointFq::Affine(x, self.ctx.neg(y)),
        }
    }

    pub fn add(&self, p: PointFq, q: PointFq) -> PointFq {
        let k = &*self.ctx;
        let (x1, y1, x2, y2) = match (p, q) {
            (PointFq::Infinity, _) => return q,
            (_, PointFq::Infinity) => return p,
            (PointFq::Affine(x1, y1), PointFq::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if k.add(y1, y2) == 0 {
                return PointFq::Infinity;
            }
            let num = k.add(k.mul(k.from_u64(3), k.mul(x1, x1)), self.a);
            k.mul(num, k.inv(k.add(y1, y1)))
        } else {
            k.mul(k.sub(y2, y1), k.inv(k.sub(x2, x1)))
        };
        let x3 = k.sub(k.sub(k.mul(lambda, lambda), x1), x2);
        let y3 = k.sub(k.mul(lambda, k.sub(x1, x3)), y1);
        PointFq::Affine(x3, y3)
    }

    /// Group addition that rejects points not on this curve.
    pub fn checked_add(&self, p: PointFq, q: PointFq) -> Result<PointFq> {
        if !self.is_on_curve(p) || !self.is_on_curve(q) {
            return Err(Error::NotOnCurve);
        }
        Ok(self.add(p, q))
    }

    /// kP by double-and-add; negative k uses −P = (x, −y).
    pub fn scalar_mul(&self, k: i64, p: PointFq) -> PointFq {
        let mut base = if k < 0 { self.neg(p) } else { p };
        let mut n = k.unsigned_abs();
        let mut acc = PointFq::Infinity;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(acc, base);
            }
            n >>= 1;
            if n > 0 {
                base = self.add(base, base);
            }
        }
        acc
    }

    /// All affine points, ascending by (x, y).
    pub fn affine_points(&self) -> Vec<PointFq> {
        let k = &*self.ctx;
        let mut out = Vec::new();
        for x in 0..k.q() {
            if let Some(y) = k.sqrt(self.rhs(x)) {
                let ny = k.neg(y);
                let (lo, hi) = if y <= ny { (y, ny) } else { (ny, y) };
                out.push(PointFq::Affine(x, lo));
                if hi != lo {
                    out.push(PointFq::Affine(x, hi));
                }
            }
        }
        out
    }

    /// #E(F_q) by exhaustive character sum (cached).
    pub fn group_order(&self) -> u64 {
        *self.count.get_or_init(|| {
            let k = &*self.ctx;
            let mut n = 1u64;
            for x in 0..k.q() {
                let r = self.rhs(x);
                n += if r == 0 {
                    1
                } else if k.is_square(r) {
                    2
                } else {
                    0
                };
            }
            n
        })
    }

    /// Least t ≥ 1 with tP = O.
    pub fn point_order(&self, p: PointFq) -> u64 {
        if p.is_infinity() {
            return 1;
        }
        let multiple = if self.ctx.q() <= EXHAUSTIVE_COUNT_LIMIT {
            self.group_order()
        } else {
            self.hasse_multiple(p)
        };
        let mut t = multiple;
        for (r, e) in factor_u64(multiple) {
            for _ in 0..e {
                if self.scalar_mul_u(t / r, p).is_infinity() {
                    t /= r;
                } else {
                    break;
                }
            }
        }
        t
    }

    fn scalar_mul_u(&self, k: u64, p: PointFq) -> PointFq {
        let mut base = p;
        let mut n = k;
        let mut acc = PointFq::Infinity;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(acc, base);
            }
            n >>= 1;
            if n > 0 {
                base = self.add(base, base);
            }
        }
        acc
    }

    /// Some M in the Hasse interval [q+1−2√q, q+1+2√q] with MP = O, by
    /// baby-step giant-step.
    fn hasse_multiple(&self, p: PointFq) -> u64 {
        let q = self.ctx.q();
        let w = 2 * ((q as f64).sqrt().ceil() as u64) + 1;
        let lo = (q + 1).saturating_sub(w).max(1);
        let span = 2 * w;
        let s = ((span as f64).sqrt().ceil() as u64).max(1);
        let mut baby: HashMap<PointFq, u64> = HashMap::new();
        let mut cur = PointFq::Infinity;
        for j in 0..s {
            baby.entry(cur).or_insert(j);
            cur = self.add(cur, p);
        }
        let step = self.neg(cur); // −sP
        // want k with kP = −lo·P
        let mut target = self.neg(self.scalar_mul_u(lo, p));
        for i in 0..=s {
            if let Some(&j) = baby.get(&target) {
                return lo + i * s + j;
            }
            target = self.add(target, step);
        }
        unreachable!("Hasse bound guarantees a multiple in the window")
    }

    /// Canonical square root of x³ + ax + b: the root whose little-endian
    /// coefficient list is lexicographically least.
    pub fn canonical_y(&self, x: u64) -> Option<u64> {
        let y = self.ctx.sqrt(self.rhs(x))?;
        let ny = self.ctx.neg(y);
        Some(match cmp_digits(&self.ctx, y, ny) {
            Ordering::Greater => ny,
            _ => y,
        })
    }

    /// The same curve over the quadratic extension.
    pub fn over_extension(&self, emb: &Embedding) -> CurveFq {
        CurveFq::new(&emb.big, emb.apply(self.a), emb.apply(self.b))
            .expect("nonsingular curves stay nonsingular in extensions")
    }

    /// ord of (α, β) for the canonical β, extending the field by degree 2
    /// when x³ + ax + b is not a square.
    pub fn ord_ep(&self, alpha: u64) -> Result<OrdEp> {
        if let Some(beta) = self.canonical_y(alpha) {
            let pt = PointFq::Affine(alpha, beta);
            return Ok(OrdEp {
                order: self.point_order(pt),
                beta: beta_digits(&self.ctx, beta),
                extension_degree: self.ctx.d(),
                extended: false,
            });
        }
        let emb = self.ctx.quadratic_extension()?;
        let big = self.over_extension(&emb);
        let x = emb.apply(alpha);
        let beta = big.canonical_y(x).expect("every element is a square after extension");
        Ok(OrdEp {
            order: big.point_order(PointFq::Affine(x, beta)),
            beta: beta_digits(&emb.big, beta),
            extension_degree: emb.big.d(),
            extended: true,
        })
    }
}

fn beta_digits(ctx: &FieldCtx, code: u64) -> Vec<u64> {
    ctx.digits(code)
}

/// Lexicographic comparison of little-endian coefficient lists.
pub fn cmp_digits(ctx: &FieldCtx, a: u64, b: u64) -> Ordering {
    ctx.digits(a).cmp(&ctx.digits(b))
}

/// Result of [`CurveFq::ord_ep`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrdEp {
    pub order: u64,
    /// Coordinates of β (little-endian) in the field where it lives.
    pub beta: Vec<u64>,
    /// Degree over F_p of the field containing β.
    pub extension_degree: u32,
    pub extended: bool,
}

/// Reduction helper mirroring [`CurveQ::reduce`].
pub fn reduce_mod_p(e: &CurveQ, ctx: &Arc<FieldCtx>) -> Result<CurveFq> {
    e.reduce(ctx)
}

/// Least common multiple of the denominators of a and b.
pub fn denominator_lcm(e: &CurveQ) -> BigInt {
    e.a.denom().lcm(e.b.denom())
}

/// |numerator of 4a³+27b²|, whose prime divisors (with those of the
/// denominators) are the bad primes.
pub fn discriminant_numerator(e: &CurveQ) -> BigInt {
    e.discriminant_factor().numer().abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y2x3p1(p: u64) -> CurveFq {
        let ctx = FieldCtx::new(p, 1).unwrap();
        CurveQ::from_ints(0, 1).unwrap().reduce(&ctx).unwrap()
    }

    #[test]
    fn reduction_rules() {
        let e: CurveQ = "a=0,b=1".parse().unwrap();
        let f3 = FieldCtx::new(3, 1).unwrap();
        assert!(matches!(e.reduce(&f3), Err(Error::BadReduction { p: 3, .. })));
        assert!(e.reduce(&FieldCtx::new(5, 1).unwrap()).is_ok());
        let half: CurveQ = "a=1/2, b=0".parse().unwrap();
        let f2 = FieldCtx::new(2, 1).unwrap();
        assert!(matches!(half.reduce(&f2), Err(Error::BadReduction { p: 2, .. })));
        assert!("a=0,b=0".parse::<CurveQ>().is_err());
        assert!("a=1".parse::<CurveQ>().is_err());
        assert_eq!(half.to_string(), "a=1/2,b=0");
    }

    #[test]
    fn integral_models() {
        let e: CurveQ = "a=1/4,b=-3/8".parse().unwrap();
        let m = e.integral_model();
        // u = 2: a' = 16/4 = 4, b' = 64*(-3/8) = -24
        assert_eq!(m.u, BigInt::from(2));
        assert_eq!(m.a, BigInt::from(4));
        assert_eq!(m.b, BigInt::from(-24));
        let e: CurveQ = "a=1/81,b=0".parse().unwrap();
        assert_eq!(e.integral_model().u, BigInt::from(3));
    }

    #[test]
    fn group_law_on_small_curve() {
        let e = y2x3p1(5);
        let p = PointFq::Affine(0, 1);
        assert_eq!(e.scalar_mul(2, p), PointFq::Affine(0, 4));
        assert_eq!(e.scalar_mul(3, p), PointFq::Infinity);
        assert_eq!(e.scalar_mul(0, p), PointFq::Infinity);
        assert_eq!(e.scalar_mul(-1, p), PointFq::Affine(0, 4));
        assert_eq!(e.point_order(p), 3);
        assert_eq!(e.point_order(PointFq::Infinity), 1);
        assert_eq!(e.point_order(PointFq::Affine(2, 3)), 6);
        assert_eq!(e.group_order(), 6);
        assert_eq!(e.affine_points().len(), 5);
        assert!(e.checked_add(p, PointFq::Affine(1, 1)).is_err());
    }

    #[test]
    fn ord_ep_examples() {
        let e = y2x3p1(5);
        assert_eq!(e.ord_ep(0).unwrap().order, 3);
        let r = e.ord_ep(2).unwrap();
        assert_eq!(r.order, 6);
        assert_eq!(r.beta, vec![2]);
        assert!(!r.extended);
        // 1^3+1 = 2 is a non-residue mod 5, so β lives in F_25
        let r = e.ord_ep(1).unwrap();
        assert!(r.extended);
        assert_eq!(r.extension_degree, 2);
    }

    #[test]
    fn bsgs_orders_match_exhaustive() {
        // p = 10007 > the exhaustive limit; compare against naive stepping.
        let ctx = FieldCtx::new(10007, 1).unwrap();
        let e = CurveFq::new(&ctx, 3, 7).unwrap();
        let mut checked = 0;
        for x in 0..200 {
            if let Some(y) = e.canonical_y(x) {
                let p = PointFq::Affine(x, y);
                let t = e.point_order(p);
                assert!(e.scalar_mul(t as i64, p).is_infinity());
                for (r, _) in factor_u64(t) {
                    assert!(!e.scalar_mul((t / r) as i64, p).is_infinity());
                }
                checked += 1;
            }
        }
        assert!(checked > 50);
    }

    #[test]
    fn order_in_extension_fields() {
        let ctx = FieldCtx::new(3, 2).unwrap();
        let e = CurveFq::new(&ctx, 1, 1).unwrap();
        let n = e.group_order();
        for p in e.affine_points() {
            assert!(e.is_on_curve(p));
            let t = e.point_order(p);
            assert_eq!(n % t, 0);
            assert!(e.scalar_mul(t as i64, p).is_infinity());
        }
        assert_eq!(e.affine_points().len() as u64 + 1, n);
    }
}
