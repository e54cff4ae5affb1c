//! Sparse multivariate polynomials over Z in graded-lex order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::arith::ln_abs;
use crate::error::{parse_err, Error, Result};

pub type Exponents = SmallVec<[u16; 8]>;

/// Exponent vector ordered by total degree, then lexicographically with the
/// first variable most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Exponents);

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Terms are kept sorted from the largest monomial down, without zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: Vec<(Monomial, BigInt)>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.push((Monomial(SmallVec::from_elem(0, nvars)), c));
        }
        p
    }

    /// The variable X_{i+1} (0-based index i).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e: Exponents = SmallVec::from_elem(0, nvars);
        e[i] = 1;
        MultiPoly {
            nvars,
            terms: vec![(Monomial(e), BigInt::one())],
        }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, BigInt)>) -> Self {
        let mut map: HashMap<Exponents, BigInt> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            *map.entry(e).or_default() += c;
        }
        Self::from_map(nvars, map)
    }

    fn from_map(nvars: usize, map: HashMap<Exponents, BigInt>) -> Self {
        let mut terms: Vec<(Monomial, BigInt)> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (Monomial(e), c))
            .collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MultiPoly { nvars, terms }
    }

    /// Builds from terms already sorted descending with no zero coefficients
    /// and no repeated monomials.
    pub(crate) fn from_sorted_terms(nvars: usize, terms: Vec<(Monomial, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        MultiPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u16]) -> BigInt {
        let m = Monomial(SmallVec::from_slice(e));
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    pub fn partial_degree(&self, i: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[i] as u32).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |(m, _)| m.total_degree())
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.combine(other, true)
    }

    fn combine(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if negate { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &self.terms[i].1 - &other.terms[j].1
                    } else {
                        &self.terms[i].1 + &other.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MultiPoly {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut map: HashMap<Exponents, BigInt> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e: Exponents = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                *map.entry(e).or_default() += ca * cb;
            }
        }
        Self::from_map(self.nvars, map)
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(&BigInt::from(-1))
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::constant(self.nvars, BigInt::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Renames variables: variable i of `self` becomes variable `map[i]` of a
    /// polynomial in `nvars` variables.
    pub fn relabel(&self, nvars: usize, map: &[usize]) -> MultiPoly {
        assert_eq!(map.len(), self.nvars);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e: Exponents = SmallVec::from_elem(0, nvars);
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            (e, c.clone())
        });
        Self::from_terms(nvars, terms)
    }

    /// Coefficients with respect to variable `i`: entry j is the coefficient
    /// of X_i^j, a polynomial in the remaining variables (order preserved).
    pub fn coefficients_in(&self, i: usize) -> Vec<MultiPoly> {
        let d = self.partial_degree(i) as usize;
        let mut maps: Vec<HashMap<Exponents, BigInt>> = vec![HashMap::new(); d + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let j = e.remove(i) as usize;
            maps[j].insert(e, c.clone());
        }
        maps.into_iter()
            .map(|map| Self::from_map(self.nvars - 1, map))
            .collect()
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub fn canonical(&self) -> MultiPoly {
        let Some((_, lc)) = self.terms.first() else {
            return self.clone();
        };
        let mut c = self.content();
        if lc.is_negative() {
            c = -c;
        }
        if c.is_one() {
            return self.clone();
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x / &c))
                .collect(),
        }
    }

    pub fn height_max(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c.abs()).max().unwrap_or_default()
    }

    /// max(0, log max |coeff|)
    pub fn log_height(&self) -> f64 {
        let h = self.height_max();
        if h <= BigInt::one() {
            0.0
        } else {
            ln_abs(&h)
        }
    }

    /// The polynomial with its variables permuted: variable i moves to perm[i].
    pub fn permute(&self, perm: &[usize]) -> MultiPoly {
        self.relabel(self.nvars, perm)
    }

    /// Evaluation at integer points.
    pub fn eval(&self, xs: &[BigInt]) -> BigInt {
        assert_eq!(xs.len(), self.nvars);
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in xs.iter().zip(m.0.iter()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes integer values for some variables (`None` keeps the variable).
    pub fn specialize(&self, values: &[Option<BigInt>]) -> MultiPoly {
        assert_eq!(values.len(), self.nvars);
        let kept: Vec<usize> = (0..self.nvars).filter(|&i| values[i].is_none()).collect();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut t = c.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    t *= num_traits::pow(v.clone(), m.0[i] as usize);
                }
            }
            let e: Exponents = kept.iter().map(|&i| m.0[i]).collect();
            (e, t)
        });
        Self::from_terms(kept.len(), terms)
    }

    /// "coeff:e1,...,en" per line, leading term first.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (m, c) in &self.terms {
            out.push_str(&c.to_string());
            out.push(':');
            let parts: Vec<String> = m.0.iter().map(|e| e.to_string()).collect();
            out.push_str(&parts.join(","));
            out.push('\n');
        }
        out
    }

    pub fn deserialize(nvars: usize, text: &str) -> Result<MultiPoly> {
        let mut terms = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (c, e) = line
                .split_once(':')
                .ok_or_else(|| parse_err(line, "expected coeff:exponents"))?;
            let c: BigInt = c.parse().map_err(|_| parse_err(line, "bad coefficient"))?;
            let e: Exponents = e
                .split(',')
                .map(|x| x.trim().parse::<u16>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| parse_err(line, "bad exponent"))?;
            if e.len() != nvars {
                return Err(Error::InvalidArgument(format!(
                    "term {line:?} has {} exponents, expected {nvars}",
                    e.len()
                )));
            }
            terms.push((e, c));
        }
        Ok(Self::from_terms(nvars, terms))
    }

    /// Dense coefficient tensor modulo p, index Σ e_i (D+1)^{n-1-i} with
    /// D = `side` − 1 (row-major, first variable slowest).
    pub fn dense_mod_p(&self, p: u64, side: usize) -> Vec<u64> {
        let n = self.nvars;
        let mut out = vec![0u64; side.pow(n as u32)];
        for (m, c) in &self.terms {
            let mut idx = 0usize;
            for &e in m.0.iter() {
                assert!((e as usize) < side);
                idx = idx * side + e as usize;
            }
            out[idx] = crate::arith::reduce_mod(c, p);
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if neg {
                f.write_str("-")?;
            } else if idx > 0 {
                f.write_str("+")?;
            }
            let mag = c.abs();
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("X{}", i + 1)
                    } else {
                        format!("X{}^{}", i + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial(SmallVec::from_slice(&[0, 2]));
        let b = Monomial(SmallVec::from_slice(&[1, 0]));
        let c = Monomial(SmallVec::from_slice(&[1, 1]));
        let d = Monomial(SmallVec::from_slice(&[2, 0]));
        assert!(a > b);
        assert!(d > c && c > a);
    }

    #[test]
    fn arithmetic_and_serialization() {
        let p = x(2, 0).sub(&x(2, 1)); // X1 - X2
        let sq = p.mul(&p);
        assert_eq!(sq.to_string(), "X1^2-2*X1*X2+X2^2");
        assert_eq!(sq.serialize(), "1:2,0\n-2:1,1\n1:0,2\n");
        assert_eq!(MultiPoly::deserialize(2, &sq.serialize()).unwrap(), sq);
        assert_eq!(sq.coeff(&[1, 1]), BigInt::from(-2));
        assert_eq!(sq.partial_degree(1), 2);
        assert!(p.add(&p.neg()).is_zero());
        let swapped = sq.permute(&[1, 0]);
        assert_eq!(swapped, sq);
        assert_eq!(p.permute(&[1, 0]), p.neg());
    }

    #[test]
    fn coefficients_and_specialization() {
        // (X1 + 2) X2^2 - 3
        let f = x(2, 0)
            .add(&MultiPoly::constant(2, 2.into()))
            .mul(&x(2, 1).pow(2))
            .sub(&MultiPoly::constant(2, 3.into()));
        let cs = f.coefficients_in(1);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0].to_string(), "-3");
        assert!(cs[1].is_zero());
        assert_eq!(cs[2].to_string(), "X1+2");
        let g = f.specialize(&[Some(BigInt::from(1)), None]);
        assert_eq!(g.to_string(), "3*X1^2-3");
        assert_eq!(f.eval(&[1.into(), 2.into()]), BigInt::from(9));
        assert_eq!(f.scale(&BigInt::from(-4)).canonical(), f);
    }
}
