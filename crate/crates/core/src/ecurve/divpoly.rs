//! Division polynomials. With F = X³ + aX + b, ψ_n = Ψ_n(X) for odd n and
//! ψ_n = Y·Ψ_n(X) for even n; every Y² is replaced by F, so all objects here
//! are univariate in X.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{CurveFq, CurveQ};
use crate::ffield::FieldCtx;
use crate::ffpoly::{self, FieldOps};
use crate::poly::{IntPoly, RatPoly};

/// Polynomial arithmetic needed by the recurrences.
pub(crate) trait DivPolyRing {
    type Poly: Clone;
    fn constant(&self, c: i64) -> Self::Poly;
    fn x(&self) -> Self::Poly;
    fn coeff_a(&self) -> Self::Poly;
    fn coeff_b(&self) -> Self::Poly;
    fn add(&self, f: &Self::Poly, g: &Self::Poly) -> Self::Poly;
    fn sub(&self, f: &Self::Poly, g: &Self::Poly) -> Self::Poly;
    fn mul(&self, f: &Self::Poly, g: &Self::Poly) -> Self::Poly;
    fn half(&self, f: &Self::Poly) -> Self::Poly;

    fn scale(&self, f: &Self::Poly, c: i64) -> Self::Poly {
        self.mul(f, &self.constant(c))
    }

    /// X³ + aX + b
    fn weierstrass(&self) -> Self::Poly {
        let x = self.x();
        let x3 = self.mul(&self.mul(&x, &x), &x);
        self.add(&self.add(&x3, &self.mul(&self.coeff_a(), &x)), &self.coeff_b())
    }
}

pub(crate) struct IntRing {
    a: BigInt,
    b: BigInt,
}

impl DivPolyRing for IntRing {
    type Poly = IntPoly;
    fn constant(&self, c: i64) -> IntPoly {
        IntPoly::constant(BigInt::from(c))
    }
    fn x(&self) -> IntPoly {
        IntPoly::x()
    }
    fn coeff_a(&self) -> IntPoly {
        IntPoly::constant(self.a.clone())
    }
    fn coeff_b(&self) -> IntPoly {
        IntPoly::constant(self.b.clone())
    }
    fn add(&self, f: &IntPoly, g: &IntPoly) -> IntPoly {
        f + g
    }
    fn sub(&self, f: &IntPoly, g: &IntPoly) -> IntPoly {
        f - g
    }
    fn mul(&self, f: &IntPoly, g: &IntPoly) -> IntPoly {
        f * g
    }
    fn half(&self, f: &IntPoly) -> IntPoly {
        f.div_scalar_exact(&BigInt::from(2))
    }
    fn scale(&self, f: &IntPoly, c: i64) -> IntPoly {
        f.scale(&BigInt::from(c))
    }
}

pub(crate) struct FqRing {
    ctx: Arc<FieldCtx>,
    a: u64,
    b: u64,
}

impl FqRing {
    fn code(&self, c: i64) -> u64 {
        let p = self.ctx.p() as i64;
        self.ctx.from_u64(c.rem_euclid(p) as u64)
    }
}

impl DivPolyRing for FqRing {
    type Poly = Vec<u64>;
    fn constant(&self, c: i64) -> Vec<u64> {
        let mut v = vec![self.code(c)];
        ffpoly::trim(&mut v);
        v
    }
    fn x(&self) -> Vec<u64> {
        vec![0, 1]
    }
    fn coeff_a(&self) -> Vec<u64> {
        let mut v = vec![self.a];
        ffpoly::trim(&mut v);
        v
    }
    fn coeff_b(&self) -> Vec<u64> {
        let mut v = vec![self.b];
        ffpoly::trim(&mut v);
        v
    }
    fn add(&self, f: &Vec<u64>, g: &Vec<u64>) -> Vec<u64> {
        ffpoly::add(&*self.ctx, f, g)
    }
    fn sub(&self, f: &Vec<u64>, g: &Vec<u64>) -> Vec<u64> {
        ffpoly::sub(&*self.ctx, f, g)
    }
    fn mul(&self, f: &Vec<u64>, g: &Vec<u64>) -> Vec<u64> {
        ffpoly::mul(&*self.ctx, f, g)
    }
    fn half(&self, f: &Vec<u64>) -> Vec<u64> {
        let inv2 = self.ctx.inv(self.ctx.from_u64(2));
        ffpoly::scale(&*self.ctx, f, inv2)
    }
}

/// Ψ_0, …, Ψ_nmax.
pub(crate) fn psi_table<R: DivPolyRing>(r: &R, nmax: usize) -> Vec<R::Poly> {
    let x = r.x();
    let a = r.coeff_a();
    let b = r.coeff_b();
    let x2 = r.mul(&x, &x);
    let x3 = r.mul(&x2, &x);
    let x4 = r.mul(&x2, &x2);
    let x6 = r.mul(&x3, &x3);
    let a2 = r.mul(&a, &a);
    let f = r.weierstrass();
    let f2 = r.mul(&f, &f);

    let mut t: Vec<R::Poly> = Vec::with_capacity(nmax + 1);
    t.push(r.constant(0));
    t.push(r.constant(1));
    t.push(r.constant(2));
    // 3X⁴ + 6aX² + 12bX − a²
    let psi3 = {
        let s = r.add(&r.scale(&x4, 3), &r.scale(&r.mul(&a, &x2), 6));
        let s = r.add(&s, &r.scale(&r.mul(&b, &x), 12));
        r.sub(&s, &a2)
    };
    t.push(psi3);
    // 4(X⁶ + 5aX⁴ + 20bX³ − 5a²X² − 4abX − 8b² − a³)
    let psi4 = {
        let mut s = r.add(&x6, &r.scale(&r.mul(&a, &x4), 5));
        s = r.add(&s, &r.scale(&r.mul(&b, &x3), 20));
        s = r.sub(&s, &r.scale(&r.mul(&a2, &x2), 5));
        s = r.sub(&s, &r.scale(&r.mul(&r.mul(&a, &b), &x), 4));
        s = r.sub(&s, &r.scale(&r.mul(&b, &b), 8));
        s = r.sub(&s, &r.mul(&a2, &a));
        r.scale(&s, 4)
    };
    t.push(psi4);
    t.truncate(nmax + 1);

    for n in 5..=nmax {
        let m = n / 2;
        let next = if n % 2 == 1 {
            let cube = |i: usize| r.mul(&r.mul(&t[i], &t[i]), &t[i]);
            let left = r.mul(&t[m + 2], &cube(m));
            let right = r.mul(&t[m - 1], &cube(m + 1));
            if m % 2 == 0 {
                r.sub(&r.mul(&f2, &left), &right)
            } else {
                r.sub(&left, &r.mul(&f2, &right))
            }
        } else {
            let sq = |i: usize| r.mul(&t[i], &t[i]);
            let inner = r.sub(
                &r.mul(&t[m + 2], &sq(m - 1)),
                &r.mul(&t[m - 2], &sq(m + 1)),
            );
            r.half(&r.mul(&t[m], &inner))
        };
        t.push(next);
    }
    t
}

/// ψ_n² from the Ψ table (needs index n).
pub(crate) fn psi_sq<R: DivPolyRing>(r: &R, t: &[R::Poly], n: usize) -> R::Poly {
    let s = r.mul(&t[n], &t[n]);
    if n % 2 == 0 {
        r.mul(&r.weierstrass(), &s)
    } else {
        s
    }
}

/// φ_n = Xψ_n² − ψ_{n+1}ψ_{n−1} (needs indices up to n + 1); φ_0 = 0.
pub(crate) fn phi<R: DivPolyRing>(r: &R, t: &[R::Poly], n: usize) -> R::Poly {
    if n == 0 {
        return r.constant(0);
    }
    let f = r.weierstrass();
    let sq = r.mul(&t[n], &t[n]);
    let cross = r.mul(&t[n + 1], &t[n - 1]);
    if n % 2 == 1 {
        r.sub(&r.mul(&r.x(), &sq), &r.mul(&f, &cross))
    } else {
        r.sub(&r.mul(&r.mul(&r.x(), &f), &sq), &cross)
    }
}

/// Division-polynomial data for one index n over Q, each polynomial stored
/// as an integer polynomial: the rational polynomial times the least positive
/// integer clearing its denominators (1 for integral curves).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivPoly {
    pub n: usize,
    pub odd: bool,
    #[serde(serialize_with = "crate::serde_util::display_str")]
    pub poly: IntPoly,
    #[serde(serialize_with = "crate::serde_util::display_str")]
    pub phi: IntPoly,
    #[serde(serialize_with = "crate::serde_util::display_str")]
    pub psi_sq: IntPoly,
    #[serde(serialize_with = "crate::serde_util::bigint_str")]
    pub poly_clearing: BigInt,
    #[serde(serialize_with = "crate::serde_util::bigint_str")]
    pub phi_clearing: BigInt,
    #[serde(serialize_with = "crate::serde_util::bigint_str")]
    pub psi_sq_clearing: BigInt,
}

impl DivPoly {
    /// Degree and leading coefficient predicted for Ψ_n of an integral curve:
    /// ((n²−1)/2, n) for odd n, ((n²−4)/2, n) for even n.
    pub fn expected_shape(n: usize) -> (usize, i64) {
        let deg = if n % 2 == 1 {
            (n * n - 1) / 2
        } else {
            (n * n - 4) / 2
        };
        (deg, n as i64)
    }
}

/// Ψ_n over Q for n = 0..=nmax, computed once and shared read-only.
#[derive(Debug, Clone)]
pub struct DivPolyTable {
    curve: CurveQ,
    /// u from the integral model; Ψ_n(X) = u^{−e}·Ψ'_n(u²X).
    u: BigInt,
    /// Ψ'_n of the integral model, n = 0..=nmax+1.
    psi: Vec<IntPoly>,
}

impl DivPolyTable {
    pub fn new(curve: &CurveQ, nmax: usize) -> Self {
        let model = curve.integral_model();
        let ring = IntRing {
            a: model.a,
            b: model.b,
        };
        DivPolyTable {
            curve: curve.clone(),
            u: model.u,
            psi: psi_table(&ring, nmax + 1),
        }
    }

    pub fn nmax(&self) -> usize {
        self.psi.len() - 2
    }

    pub fn curve(&self) -> &CurveQ {
        &self.curve
    }

    fn ring(&self) -> IntRing {
        let model = self.curve.integral_model();
        IntRing {
            a: model.a,
            b: model.b,
        }
    }

    /// Rescales g(X) ↦ u^{−e} g(u² X) and clears denominators.
    fn descend(&self, g: &IntPoly, e: usize) -> (IntPoly, BigInt) {
        if self.u.is_one() {
            return (g.clone(), BigInt::one());
        }
        let u2 = &self.u * &self.u;
        let ue = num_traits::pow(self.u.clone(), e);
        let mut scale = BigInt::one();
        let coeffs: Vec<BigRational> = g
            .coeffs()
            .iter()
            .map(|c| {
                let r = BigRational::new(c * &scale, ue.clone());
                scale *= &u2;
                r
            })
            .collect();
        RatPoly::new(coeffs).clear_denominators()
    }

    /// Ψ_n in integer form together with its clearing factor.
    pub fn psi(&self, n: usize) -> (IntPoly, BigInt) {
        let e = if n % 2 == 1 { n * n - 1 } else { (n * n).saturating_sub(4) };
        self.descend(&self.psi[n], e)
    }

    pub fn get(&self, n: usize) -> DivPoly {
        assert!(n <= self.nmax(), "index beyond table");
        let ring = self.ring();
        let (poly, poly_clearing) = self.psi(n);
        let (phi, phi_clearing) = self.descend(&phi(&ring, &self.psi, n), 2 * n * n);
        let (psi_sq, psi_sq_clearing) =
            self.descend(&psi_sq(&ring, &self.psi, n), (2 * n * n).saturating_sub(2));
        DivPoly {
            n,
            odd: n % 2 == 1,
            poly,
            phi,
            psi_sq,
            poly_clearing,
            phi_clearing,
            psi_sq_clearing,
        }
    }

    /// x(nP) for a rational x-coordinate, or the torsion marker.
    pub fn x_of_multiple(&self, n: usize, x: &BigRational) -> XOfMultiple<BigRational> {
        let d = self.get(n);
        let num = RatPoly::from_int(&d.phi).eval(x) / BigRational::from_integer(d.phi_clearing);
        let den =
            RatPoly::from_int(&d.psi_sq).eval(x) / BigRational::from_integer(d.psi_sq_clearing);
        if den.is_zero() {
            XOfMultiple::Torsion
        } else {
            XOfMultiple::Value(num / den)
        }
    }
}

/// x(nP) = φ_n(x)/ψ_n²(x), or `Torsion` when ψ_n²(x) = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum XOfMultiple<T> {
    Value(T),
    Torsion,
}

/// Ψ_n over a finite field, n = 0..=nmax+1.
#[derive(Debug, Clone)]
pub struct FqDivPolyTable {
    ring_ctx: Arc<FieldCtx>,
    a: u64,
    b: u64,
    psi: Vec<Vec<u64>>,
}

impl FqDivPolyTable {
    pub fn new(curve: &CurveFq, nmax: usize) -> Self {
        let ring = FqRing {
            ctx: Arc::clone(curve.ctx()),
            a: curve.a(),
            b: curve.b(),
        };
        let psi = psi_table(&ring, nmax + 1);
        FqDivPolyTable {
            ring_ctx: ring.ctx,
            a: ring.a,
            b: ring.b,
            psi,
        }
    }

    fn ring(&self) -> FqRing {
        FqRing {
            ctx: Arc::clone(&self.ring_ctx),
            a: self.a,
            b: self.b,
        }
    }

    pub fn psi(&self, n: usize) -> &[u64] {
        &self.psi[n]
    }

    pub fn phi(&self, n: usize) -> Vec<u64> {
        phi(&self.ring(), &self.psi, n)
    }

    pub fn psi_sq(&self, n: usize) -> Vec<u64> {
        psi_sq(&self.ring(), &self.psi, n)
    }

    /// x(nP) from the x-coordinate of P, or `Torsion` if nP = O.
    pub fn x_of_multiple(&self, n: usize, x: u64) -> XOfMultiple<u64> {
        let k = &*self.ring_ctx;
        let den = ffpoly::eval(k, &self.psi_sq(n), x);
        if den == 0 {
            return XOfMultiple::Torsion;
        }
        XOfMultiple::Value(k.mul(ffpoly::eval(k, &self.phi(n), x), k.inv(den)))
    }
}

/// One row of a height profile: h(Ψ_n) and h(φ_n) of the stored integer forms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeightRow {
    pub n: usize,
    pub h_psi: f64,
    pub h_phi: f64,
}

/// (n, h(Ψ_n), h(φ_n)) for 1 ≤ n ≤ nmax.
pub fn divpoly_height_profile(curve: &CurveQ, nmax: usize) -> Vec<HeightRow> {
    let table = DivPolyTable::new(curve, nmax);
    (1..=nmax)
        .map(|n| {
            let d = table.get(n);
            HeightRow {
                n,
                h_psi: d.poly.log_height(),
                h_phi: d.phi.log_height(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::PointFq;
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn small_division_polynomials() {
        let e = CurveQ::from_ints(-1, 0).unwrap();
        let t = DivPolyTable::new(&e, 5);
        assert_eq!(t.get(3).poly, p("3*X^4-6*X^2-1"));
        assert_eq!(t.get(1).poly, IntPoly::one());
        assert_eq!(t.get(2).poly, p("2"));
        assert_eq!(t.get(1).phi, p("X"));
        assert_eq!(t.get(0).phi, IntPoly::zero());
        let e = CurveQ::from_ints(0, 1).unwrap();
        let t = DivPolyTable::new(&e, 5);
        assert_eq!(t.get(3).poly, p("3*X^4+12*X"));
        assert!((t.get(3).poly.log_height() - 12f64.ln()).abs() < 1e-15);
        // φ_2 = X⁴ − 2aX² − 8bX + a²
        assert_eq!(t.get(2).phi, p("X^4-8*X"));
        assert_eq!(t.get(2).psi_sq, p("4*X^3+4"));
        let d5 = t.get(5);
        assert_eq!(d5.poly.degree(), Some(12));
        assert_eq!(d5.poly.leading(), Some(&BigInt::from(5)));
    }

    #[test]
    fn shapes_up_to_twenty() {
        let e = CurveQ::from_ints(2, -3).unwrap();
        let t = DivPolyTable::new(&e, 20);
        for n in 1..=20 {
            let d = t.get(n);
            let (deg, lc) = DivPoly::expected_shape(n);
            assert_eq!(d.poly.degree(), Some(deg), "n={n}");
            assert_eq!(d.poly.leading(), Some(&BigInt::from(lc)));
            assert_eq!(d.phi.degree(), Some(n * n));
            assert_eq!(d.psi_sq.degree(), Some(n * n - 1));
        }
    }

    #[test]
    fn rational_curve_matches_direct_substitution() {
        // y² = x³ + x/4 − 3/8: Ψ_3 = 3X⁴ + (3/2)X² − (9/2)X − 1/16
        let e: CurveQ = "a=1/4,b=-3/8".parse().unwrap();
        let t = DivPolyTable::new(&e, 4);
        let d = t.get(3);
        assert_eq!(d.poly, p("48*X^4+24*X^2-72*X-1"));
        assert_eq!(d.poly_clearing, BigInt::from(16));
        // x(2P) at x = 1 compared with the tangent construction over Q:
        // y² = 1 + 1/4 − 3/8 = 7/8, λ = (3 + 1/4)/(2y), x(2P) = λ² − 2
        let one = BigRational::one();
        let lambda_sq = BigRational::new(169.into(), 16.into()) / BigRational::new(7.into(), 2.into());
        let expected = lambda_sq - BigRational::from_integer(2.into());
        assert_eq!(t.x_of_multiple(2, &one), XOfMultiple::Value(expected));
    }

    #[test]
    fn finite_field_examples() {
        let ctx = FieldCtx::new(5, 1).unwrap();
        let e = CurveQ::from_ints(0, 1).unwrap().reduce(&ctx).unwrap();
        let t = FqDivPolyTable::new(&e, 4);
        assert_eq!(t.x_of_multiple(2, 0), XOfMultiple::Value(0));
        assert_eq!(t.x_of_multiple(3, 0), XOfMultiple::Torsion);
        assert_eq!(t.x_of_multiple(1, 3), XOfMultiple::Value(3));
        assert_eq!(e.scalar_mul(2, PointFq::Affine(0, 1)), PointFq::Affine(0, 4));
    }

    #[test]
    fn profile_starts_at_zero() {
        let rows = divpoly_height_profile(&CurveQ::from_ints(0, 1).unwrap(), 3);
        assert_eq!(rows[0].h_psi, 0.0);
        assert!((rows[2].h_psi - 12f64.ln()).abs() < 1e-15);
    }
}
