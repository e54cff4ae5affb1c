use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{parse, parse_expression, IntPoly};
use crate::error::{parse_err, Error, Result};

/// Polynomial with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_int(f: &IntPoly) -> Self {
        RatPoly {
            coeffs: f
                .coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Multiplies by the least common denominator: returns (integer
    /// polynomial, lcm) with `self = poly / lcm`.
    pub fn clear_denominators(&self) -> (IntPoly, BigInt) {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let poly = IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect(),
        );
        (poly, lcm)
    }

    /// Primitive integer polynomial with positive leading coefficient that
    /// is a rational multiple of `self`.
    pub fn to_primitive(&self) -> IntPoly {
        self.clear_denominators().0.primitive_part()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        RatPoly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::default();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.to_string()))
            .collect();
        f.write_str(&parse::format_terms(terms))
    }
}

impl FromStr for RatPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let r = parse_expression(s)?;
        if !r.den().is_constant() {
            return Err(parse_err(s, "not a polynomial"));
        }
        let d = r.den().coeff(0);
        Ok(RatPoly::new(
            r.num()
                .coeffs()
                .iter()
                .map(|c| BigRational::new(c.clone(), d.clone()))
                .collect(),
        ))
    }
}

/// Rational function num/den in lowest terms: num and den coprime over Q,
/// den with positive leading coefficient, and no common integer factor
/// between the contents of num and den. Zero is 0/1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial("rational function denominator"));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(mut num: IntPoly, mut den: IntPoly) -> Self {
        if num.is_zero() {
            return RatFunc {
                num,
                den: IntPoly::one(),
            };
        }
        let g = num.gcd(&den);
        if !g.is_constant() {
            num = num.div_exact(&g).expect("gcd divides numerator");
            den = den.div_exact(&g).expect("gcd divides denominator");
        }
        let mut c = num.content().gcd(&den.content());
        if den.leading().unwrap().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(f: IntPoly) -> Self {
        RatFunc {
            num: f,
            den: IntPoly::one(),
        }
    }

    pub fn x() -> Self {
        Self::from_poly(IntPoly::x())
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// max(deg num, deg den)
    pub fn degree(&self) -> usize {
        self.num.deg().max(self.den.deg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        Self::normalized(
            &self.num * &other.den + &other.num * &self.den,
            &self.den * &other.den,
        )
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        Self::normalized(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("inverse of rational function"));
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn powi(&self, e: i64) -> Result<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = u32::try_from(e.unsigned_abs())
            .map_err(|_| Error::InvalidArgument("exponent too large".into()))?;
        Ok(RatFunc {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = RatPoly::from_int(&self.den).eval(x);
        if d.is_zero() {
            return None;
        }
        Some(RatPoly::from_int(&self.num).eval(x) / d)
    }

    /// self ∘ g.
    pub fn compose(&self, g: &RatFunc) -> RatFunc {
        let n = self.num.deg();
        let d = self.den.deg();
        let top = homogenize(&self.num, &g.num, &g.den, n);
        let bottom = homogenize(&self.den, &g.num, &g.den, d);
        let (top, bottom) = if n >= d {
            (top, &bottom * &g.den.pow((n - d) as u32))
        } else {
            (&top * &g.den.pow((d - n) as u32), bottom)
        };
        Self::normalized(top, bottom)
    }
}

/// Σ c_i a^i b^{deg−i} for f = Σ c_i X^i, so that f(a/b) = result / b^deg.
pub fn homogenize(f: &IntPoly, a: &IntPoly, b: &IntPoly, deg: usize) -> IntPoly {
    let mut acc = IntPoly::zero();
    let mut b_pow = IntPoly::one();
    let coeffs = f.coeffs();
    // Horner in a with b powers accumulating from the top coefficient.
    for i in (0..=deg).rev() {
        let c = coeffs.get(i).cloned().unwrap_or_default();
        acc = &acc * a + &(&b_pow * &IntPoly::constant(c));
        b_pow = &b_pow * b;
    }
    acc
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl FromStr for RatFunc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_expression(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn normal_form() {
        let f = rf("(2*X^2-2)/(4*X+4)");
        assert_eq!(f.to_string(), "(X-1)/(2)");
        let g = rf("X/(-X-1)");
        assert_eq!(g.to_string(), "(-X)/(X+1)");
        assert_eq!(rf("(X+1)/(X+1)").to_string(), "1");
        assert_eq!(rf("0/(X+3)").to_string(), "0");
    }

    #[test]
    fn composition() {
        let f = rf("X/(X+1)");
        let g = rf("1/X");
        assert_eq!(f.compose(&g).to_string(), "(1)/(X+1)");
        let h = rf("X^2+1");
        assert_eq!(h.compose(&rf("X-1")), rf("X^2-2X+2"));
        assert_eq!(rf("1/X").compose(&rf("X^2")), rf("X^-2"));
    }

    #[test]
    fn evaluation() {
        let f = rf("(X^2+1)/(X-2)");
        let x = BigRational::from_integer(BigInt::from(3));
        assert_eq!(f.eval(&x), Some(BigRational::from_integer(BigInt::from(10))));
        assert_eq!(f.eval(&BigRational::from_integer(BigInt::from(2))), None);
    }

    #[test]
    fn rational_polys() {
        let f: RatPoly = "3/2*X^2-X/3+1".parse().unwrap();
        assert_eq!(f.to_string(), "3/2*X^2-1/3*X+1");
        let (g, l) = f.clear_denominators();
        assert_eq!(g.to_string(), "9*X^2-2*X+6");
        assert_eq!(l, BigInt::from(6));
        assert_eq!(f.to_primitive(), g);
        assert!("1/X".parse::<RatPoly>().is_err());
        assert_eq!(f.mul(&RatPoly::from_int(&IntPoly::x())).to_string(), "3/2*X^3-1/3*X^2+X");
    }
}
