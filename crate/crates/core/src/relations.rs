//! Relation polynomials and the resultant products bounding the primes at
//! which dependence relations can acquire new common solutions.
//!
//! A multiplicative relation k gives F_k − G_k where Ω_k = ∏ φ_i^{k_i} = F_k/G_k
//! in lowest terms. A linear relation ℓ on the points (ϱ_i(X), ·) gives the
//! numerator U_ℓ of Θ_ℓ. Pairs of relations are combined through
//! R_{k,ℓ} = Res(first, squarefree part of second with W's factors removed),
//! where W collects the common factors witnessed inside the boxes.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{ln_abs, trial_factor, vp, Valuation};
use crate::ecurve::{CurveQ, DivPolyTable};
use crate::error::{Error, Result};
use crate::poly::{hadamard_bound_ln, resultant, IntPoly, RatFunc, RatPoly};
use crate::semaev::SummationBuilder;

/// Largest number of (k, ℓ) pairs processed by one table.
pub const PAIR_BUDGET: u128 = 2_000_000;

/// Trial-division bound for factoring T.
pub const T_FACTOR_BOUND: u64 = 1_000_000;

/// Integer exponent (or coefficient) vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(entries: Vec<i64>) -> Self {
        ExponentVector(entries)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The box size max |k_i|.
    pub fn max_abs(&self) -> u64 {
        self.0.iter().map(|k| k.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    pub fn neg(&self) -> Self {
        ExponentVector(self.0.iter().map(|k| -k).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// ±self with the first nonzero entry positive.
    pub fn canonical(&self) -> Self {
        if self.is_canonical() {
            self.clone()
        } else {
            self.neg()
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.0.iter().find(|&&k| k != 0).is_none_or(|&k| k > 0)
    }

    /// Indices with nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] != 0).collect()
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

/// All nonzero vectors of {−bound, …, bound}^m in lexicographic order.
pub fn box_vectors(m: usize, bound: u64) -> Vec<ExponentVector> {
    let b = bound as i64;
    let side = 2 * bound + 1;
    let total = (side as u128).pow(m as u32);
    let mut out = Vec::with_capacity(total.saturating_sub(1) as usize);
    let mut cur = vec![-b; m];
    if m == 0 {
        return out;
    }
    loop {
        let v = ExponentVector(cur.clone());
        if !v.is_zero() {
            out.push(v);
        }
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < b {
                cur[i] += 1;
                break;
            }
            cur[i] = -b;
        }
    }
}

/// Nonzero vectors of the box with first nonzero entry positive, in
/// lexicographic order. Each ±pair appears once.
pub fn canonical_box(m: usize, bound: u64) -> Vec<ExponentVector> {
    box_vectors(m, bound)
        .into_iter()
        .filter(ExponentVector::is_canonical)
        .collect()
}

/// Rank 2 test for the 2×m integer matrix with rows a and b.
pub fn linearly_independent(a: &ExponentVector, b: &ExponentVector) -> bool {
    let (a, b) = (a.entries(), b.entries());
    assert_eq!(a.len(), b.len());
    (0..a.len()).any(|i| (i + 1..a.len()).any(|j| a[i] * b[j] != a[j] * b[i]))
}

/// Which kinds of relation are paired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SystemKind {
    /// Two multiplicative relations among the φ_i.
    MultMult,
    /// A multiplicative relation among the φ_i and a linear one among the
    /// points (ϱ_i(X), ·).
    MultLin,
    /// Two linear relations among the points (ϱ_i(X), ·).
    LinLin,
}

impl SystemKind {
    pub fn involves_curve(self) -> bool {
        !matches!(self, SystemKind::MultMult)
    }
}

impl std::str::FromStr for SystemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "MULT_MULT" => Ok(SystemKind::MultMult),
            "MULT_LIN" => Ok(SystemKind::MultLin),
            "LIN_LIN" => Ok(SystemKind::LinLin),
            _ => Err(crate::error::parse_err(s, "expected MULT_MULT, MULT_LIN or LIN_LIN")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSystem {
    phis: Vec<RatFunc>,
    kind: SystemKind,
    curve: Option<CurveQ>,
    rhos: Option<Vec<RatFunc>>,
}

impl RelationSystem {
    pub fn new(
        phis: Vec<RatFunc>,
        kind: SystemKind,
        curve: Option<CurveQ>,
        rhos: Option<Vec<RatFunc>>,
    ) -> Result<Self> {
        if kind.involves_curve() != (curve.is_some() && rhos.is_some()) {
            return Err(Error::InvalidArgument(
                "curve and rhos are required exactly for systems with linear relations".into(),
            ));
        }
        if kind != SystemKind::LinLin && phis.is_empty() {
            return Err(Error::InvalidArgument("at least one phi is required".into()));
        }
        if rhos.as_ref().is_some_and(|r| r.is_empty()) {
            return Err(Error::InvalidArgument("at least one rho is required".into()));
        }
        if phis.iter().chain(rhos.iter().flatten()).any(RatFunc::is_zero) {
            return Err(Error::ZeroPolynomial("relation system function"));
        }
        Ok(RelationSystem {
            phis,
            kind,
            curve,
            rhos,
        })
    }

    pub fn mult_mult(phis: Vec<RatFunc>) -> Result<Self> {
        Self::new(phis, SystemKind::MultMult, None, None)
    }

    pub fn mult_lin(phis: Vec<RatFunc>, curve: CurveQ, rhos: Vec<RatFunc>) -> Result<Self> {
        Self::new(phis, SystemKind::MultLin, Some(curve), Some(rhos))
    }

    pub fn lin_lin(curve: CurveQ, rhos: Vec<RatFunc>) -> Result<Self> {
        Self::new(Vec::new(), SystemKind::LinLin, Some(curve), Some(rhos))
    }

    pub fn phis(&self) -> &[RatFunc] {
        &self.phis
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn curve(&self) -> Option<&CurveQ> {
        self.curve.as_ref()
    }

    pub fn rhos(&self) -> &[RatFunc] {
        self.rhos.as_deref().unwrap_or(&[])
    }

    /// Vector lengths of the first and second relation.
    fn dims(&self) -> (usize, usize) {
        match self.kind {
            SystemKind::MultMult => (self.phis.len(), self.phis.len()),
            SystemKind::MultLin => (self.phis.len(), self.rhos().len()),
            SystemKind::LinLin => (self.rhos().len(), self.rhos().len()),
        }
    }

    fn needs_independence(&self) -> bool {
        self.kind != SystemKind::MultLin
    }
}

/// (F_k, G_k) with Ω_k = F_k / G_k in lowest terms.
pub fn omega_parts(phis: &[RatFunc], k: &ExponentVector) -> Result<(IntPoly, IntPoly)> {
    if phis.len() != k.len() {
        return Err(Error::InvalidArgument(format!(
            "{} functions but exponent vector of length {}",
            phis.len(),
            k.len()
        )));
    }
    if phis.iter().any(RatFunc::is_zero) {
        return Err(Error::ZeroPolynomial("phi"));
    }
    let mut omega = RatFunc::from_poly(IntPoly::one());
    for (phi, &e) in phis.iter().zip(k.entries()) {
        if e != 0 {
            omega = omega.mul(&phi.powi(e)?);
        }
    }
    Ok((omega.num().clone(), omega.den().clone()))
}

/// F_k − G_k; zero means the φ_i are multiplicatively dependent.
pub fn relation_poly(phis: &[RatFunc], k: &ExponentVector) -> Result<IntPoly> {
    let (f, g) = omega_parts(phis, k)?;
    let r = &f - &g;
    if r.is_zero() {
        return Err(Error::MultiplicativelyDependent);
    }
    Ok(r)
}

/// Numerators U_ℓ for one curve and one list of ϱ_i, with the division and
/// summation polynomials cached across calls.
pub struct ThetaBuilder {
    curve: CurveQ,
    rhos: Vec<RatFunc>,
    u_sq: BigInt,
    weierstrass: IntPoly,
    divpoly: DivPolyTable,
    summation: SummationBuilder,
}

impl ThetaBuilder {
    pub fn new(curve: &CurveQ, rhos: &[RatFunc], max_multiple: usize) -> Self {
        let model = curve.integral_model();
        let rhs = RatPoly::new(vec![
            curve.b().clone(),
            curve.a().clone(),
            BigRational::zero(),
            BigRational::one(),
        ]);
        ThetaBuilder {
            curve: curve.clone(),
            rhos: rhos.to_vec(),
            u_sq: &model.u * &model.u,
            weierstrass: rhs.clear_denominators().0,
            divpoly: DivPolyTable::new(curve, max_multiple.max(2)),
            summation: SummationBuilder::new(curve),
        }
    }

    pub fn curve(&self) -> &CurveQ {
        &self.curve
    }

    fn ensure_table(&mut self, n: usize) {
        if n > self.divpoly.nmax() {
            self.divpoly = DivPolyTable::new(&self.curve, n.max(2 * self.divpoly.nmax()));
        }
    }

    /// x(nP) in integral-model coordinates as a function of x(P).
    fn model_x_of_multiple(&mut self, n: usize) -> Result<RatFunc> {
        self.ensure_table(n);
        let d = self.divpoly.get(n);
        let num = d.phi.scale(&(&d.psi_sq_clearing * &self.u_sq));
        let den = d.psi_sq.scale(&d.phi_clearing);
        RatFunc::new(num, den)
    }

    /// Numerator of Θ_ℓ, primitive with positive leading coefficient.
    /// Entries ℓ_i = 0 drop out (ℓ_i P_i = O); a single remaining index
    /// gives the torsion polynomial of that multiple, times the 2-torsion
    /// factor X³ + aX + b when the multiple is even.
    pub fn numerator(&mut self, l: &ExponentVector) -> Result<IntPoly> {
        if l.len() != self.rhos.len() {
            return Err(Error::InvalidArgument(format!(
                "{} rhos but coefficient vector of length {}",
                self.rhos.len(),
                l.len()
            )));
        }
        let support = l.support();
        let theta = match support.len() {
            0 => return Err(Error::InvalidArgument("zero coefficient vector".into())),
            1 => {
                let i = support[0];
                let n = l.entries()[i].unsigned_abs() as usize;
                self.ensure_table(n);
                let (mut psi, _) = self.divpoly.psi(n);
                if n % 2 == 0 {
                    psi = &psi * &self.weierstrass;
                }
                RatFunc::from_poly(psi).compose(&self.rhos[i])
            }
            n => {
                let sigma = self.summation.get(n)?;
                let mut args = Vec::with_capacity(n);
                for &i in &support {
                    let m = l.entries()[i].unsigned_abs() as usize;
                    args.push(self.model_x_of_multiple(m)?.compose(&self.rhos[i]));
                }
                substitute(&sigma, &args)?
            }
        };
        if theta.is_zero() {
            return Err(Error::GenericallyDependent);
        }
        Ok(theta.num().primitive_part())
    }
}

/// σ(r_1, …, r_n) for rational functions r_i = N_i / D_i.
fn substitute(sigma: &crate::semaev::MultiPoly, args: &[RatFunc]) -> Result<RatFunc> {
    let n = args.len();
    let degs: Vec<usize> = (0..n).map(|i| sigma.partial_degree(i) as usize).collect();
    let powers = |f: &IntPoly, d: usize| {
        let mut v = vec![IntPoly::one()];
        for e in 1..=d {
            v.push(&v[e - 1] * f);
        }
        v
    };
    let num_pows: Vec<Vec<IntPoly>> = (0..n).map(|i| powers(args[i].num(), degs[i])).collect();
    let den_pows: Vec<Vec<IntPoly>> = (0..n).map(|i| powers(args[i].den(), degs[i])).collect();
    let mut total = IntPoly::zero();
    for (mono, c) in sigma.terms() {
        let mut t = IntPoly::constant(c.clone());
        for i in 0..n {
            let e = mono.0[i] as usize;
            t = &t * &num_pows[i][e];
            t = &t * &den_pows[i][degs[i] - e];
        }
        total = &total + &t;
    }
    let mut den = IntPoly::one();
    for i in 0..n {
        den = &den * &den_pows[i][degs[i]];
    }
    RatFunc::new(total, den)
}

/// Numerator of Θ_ℓ for a one-off evaluation.
pub fn theta_numerator(curve: &CurveQ, rhos: &[RatFunc], l: &ExponentVector) -> Result<IntPoly> {
    ThetaBuilder::new(curve, rhos, l.max_abs() as usize).numerator(l)
}

/// Squarefree part of f with every factor shared with W removed.
pub fn squarefree_reduced(f: &IntPoly, w: &IntPoly) -> Result<IntPoly> {
    if w.is_zero() {
        return Err(Error::ZeroPolynomial("W"));
    }
    let s = f.squarefree_part()?;
    let g = s.gcd(w);
    if g.is_constant() {
        return Ok(s);
    }
    Ok(s.div_exact(&g).expect("gcd divides").with_positive_leading())
}

/// Relation polynomials on both sides of a system, indexed by canonical vectors.
struct Sides {
    first: Vec<(ExponentVector, IntPoly)>,
    second: Vec<(ExponentVector, IntPoly)>,
}

fn pair_count(system: &RelationSystem, k_box: u64, l_box: u64) -> u128 {
    let (m, n) = system.dims();
    let half = |dim: usize, b: u64| ((2 * b as u128 + 1).pow(dim as u32) - 1) / 2;
    half(m, k_box) * half(n, l_box)
}

fn build_sides(system: &RelationSystem, k_box: u64, l_box: u64) -> Result<Sides> {
    if k_box == 0 || l_box == 0 {
        return Err(Error::InvalidArgument("box sizes must be at least 1".into()));
    }
    let needed = pair_count(system, k_box, l_box);
    if needed > PAIR_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "relation pairs".into(),
            needed,
            budget: PAIR_BUDGET,
        });
    }
    let (m, n) = system.dims();
    let mult = |b: u64| -> Result<Vec<(ExponentVector, IntPoly)>> {
        canonical_box(m, b)
            .into_par_iter()
            .map(|k| relation_poly(system.phis(), &k).map(|r| (k, r)))
            .collect()
    };
    let lin = |b: u64| -> Result<Vec<(ExponentVector, IntPoly)>> {
        let curve = system.curve().expect("validated");
        let mut theta = ThetaBuilder::new(curve, system.rhos(), b as usize);
        canonical_box(n, b)
            .into_iter()
            .map(|l| theta.numerator(&l).map(|u| (l, u)))
            .collect()
    };
    Ok(match system.kind() {
        SystemKind::MultMult => Sides {
            first: mult(k_box)?,
            second: mult(l_box)?,
        },
        SystemKind::MultLin => Sides {
            first: mult(k_box)?,
            second: lin(l_box)?,
        },
        SystemKind::LinLin => Sides {
            first: lin(k_box)?,
            second: lin(l_box)?,
        },
    })
}

fn admissible_pairs<'a>(
    system: &RelationSystem,
    sides: &'a Sides,
) -> Vec<(&'a (ExponentVector, IntPoly), &'a (ExponentVector, IntPoly))> {
    let indep = system.needs_independence();
    sides
        .first
        .iter()
        .flat_map(|a| sides.second.iter().map(move |b| (a, b)))
        .filter(|(a, b)| !indep || linearly_independent(&a.0, &b.0))
        .collect()
}

fn candidate_w_from(system: &RelationSystem, sides: &Sides) -> Result<IntPoly> {
    let gcds: Vec<IntPoly> = admissible_pairs(system, sides)
        .into_par_iter()
        .map(|(a, b)| a.1.gcd(&b.1))
        .collect();
    let mut w = IntPoly::one();
    for g in gcds {
        if g.is_constant() {
            continue;
        }
        let s = g.squarefree_part()?;
        let shared = w.gcd(&s);
        let fresh = if shared.is_constant() {
            s
        } else {
            s.div_exact(&shared).expect("gcd divides")
        };
        if !fresh.is_constant() {
            w = (&w * &fresh).with_positive_leading();
        }
    }
    Ok(w)
}

/// Squarefree product of the common factors gcd(first_k, second_ℓ) over all
/// admissible pairs in the boxes.
pub fn candidate_w(system: &RelationSystem, k_box: u64, l_box: u64) -> Result<IntPoly> {
    let sides = build_sides(system, k_box, l_box)?;
    candidate_w_from(system, &sides)
}

/// One resultant R_{k,ℓ}.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultantRecord {
    pub k: ExponentVector,
    pub l: ExponentVector,
    #[serde(rename = "abs_r", serialize_with = "crate::serde_util::bigint_str")]
    pub r: BigInt,
    pub log_r: f64,
    /// Logarithm of the Hadamard-type bound for this pair.
    pub log_bound: f64,
    pub deg_first: usize,
    pub deg_second: usize,
}

/// Empirical growth ratios max log|R| / (box products).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundRatios {
    pub max_log_r: f64,
    pub per_kl: f64,
    pub per_kl2: f64,
    pub per_k2l2: f64,
}

/// All resultants for one system and box pair, with T = ∏ |R_{k,ℓ}|.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultantTable {
    pub kind: SystemKind,
    pub k_box: u64,
    pub l_box: u64,
    #[serde(serialize_with = "crate::serde_util::display_str")]
    pub w: IntPoly,
    pub records: Vec<ResultantRecord>,
    #[serde(serialize_with = "crate::serde_util::bigint_str")]
    pub t: BigInt,
    pub log_t: f64,
    /// |a| for relation polynomials equal to a nonzero constant a.
    #[serde(serialize_with = "crate::serde_util::bigint_vec_str")]
    pub constants: Vec<BigInt>,
    /// Integer contents > 1 of nonconstant relation polynomials; such a
    /// polynomial vanishes identically modulo every prime dividing it.
    #[serde(serialize_with = "crate::serde_util::bigint_vec_str")]
    pub contents: Vec<BigInt>,
    pub ratios: BoundRatios,
    pub skipped_dependent: usize,
}

impl ResultantTable {
    pub fn vp_t(&self, p: u64) -> u64 {
        self.records
            .iter()
            .map(|r| match vp(&r.r, p) {
                Ok(Valuation::Finite(v)) => v,
                _ => 0,
            })
            .sum()
    }

    pub fn divides_t(&self, p: u64) -> bool {
        self.vp_t(p) > 0
    }

    /// p divides T, a constant relation, or the content of a relation.
    pub fn is_exceptional(&self, p: u64) -> bool {
        let pb = BigInt::from(p);
        self.divides_t(p)
            || self
                .constants
                .iter()
                .chain(&self.contents)
                .any(|c| (c % &pb).is_zero())
    }

    /// Trial-division factorization of T up to `bound`, with cofactor.
    pub fn t_factorization(&self, bound: u64) -> (Vec<(u64, u32)>, BigUint) {
        let mut acc: BTreeMap<u64, u32> = BTreeMap::new();
        let mut cofactor = BigUint::one();
        for r in &self.records {
            let (f, rest) = trial_factor(r.r.magnitude(), bound);
            for (p, e) in f {
                *acc.entry(p).or_default() += e;
            }
            cofactor *= rest;
        }
        (acc.into_iter().collect(), cofactor)
    }

    pub fn all_within_bounds(&self) -> bool {
        self.records.iter().all(|r| r.log_r <= r.log_bound + 1e-9)
    }
}

/// Factorization of T for serialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TFactorization {
    pub bound: u64,
    pub factors: Vec<(u64, u32)>,
    #[serde(serialize_with = "crate::serde_util::biguint_str")]
    pub cofactor: BigUint,
}

impl ResultantTable {
    pub fn factorization(&self) -> TFactorization {
        let (factors, cofactor) = self.t_factorization(T_FACTOR_BOUND);
        TFactorization {
            bound: T_FACTOR_BOUND,
            factors,
            cofactor,
        }
    }
}

pub fn resultant_table(system: &RelationSystem, k_box: u64, l_box: u64) -> Result<ResultantTable> {
    let sides = build_sides(system, k_box, l_box)?;
    let w = candidate_w_from(system, &sides)?;

    let mut constants = Vec::new();
    let mut contents = Vec::new();
    for (_, f) in sides.first.iter().chain(&sides.second) {
        let c = f.content().abs();
        if f.is_constant() {
            constants.push(c);
        } else if !c.is_one() {
            contents.push(c);
        }
    }
    constants.sort();
    constants.dedup();
    contents.sort();
    contents.dedup();

    let reduced: Vec<IntPoly> = sides
        .second
        .par_iter()
        .map(|(_, u)| squarefree_reduced(u, &w))
        .collect::<Result<_>>()?;
    let reduced_of = |l: &ExponentVector| {
        let i = sides
            .second
            .binary_search_by(|(v, _)| v.cmp(l))
            .expect("vector from the second side");
        &reduced[i]
    };

    let pairs = admissible_pairs(system, &sides);
    let total_pairs = sides.first.len() * sides.second.len();
    let skipped_dependent = total_pairs - pairs.len();
    let records: Vec<ResultantRecord> = pairs
        .into_par_iter()
        .filter(|(a, _)| !a.1.is_constant())
        .map(|(a, b)| {
            let second = reduced_of(&b.0);
            let r = resultant(&a.1, second)?;
            if r.is_zero() {
                return Err(Error::ZeroResultant {
                    k: a.0.entries().to_vec(),
                    l: b.0.entries().to_vec(),
                });
            }
            let r = r.abs();
            Ok(ResultantRecord {
                k: a.0.clone(),
                l: b.0.clone(),
                log_r: ln_abs(&r),
                log_bound: hadamard_bound_ln(&a.1, second),
                r,
                deg_first: a.1.deg(),
                deg_second: second.deg(),
            })
        })
        .collect::<Result<_>>()?;

    let t = records
        .iter()
        .fold(BigInt::one(), |acc, r| acc * &r.r);
    let max_log_r = records.iter().map(|r| r.log_r).fold(0.0, f64::max);
    let (k, l) = (k_box as f64, l_box as f64);
    let ratios = BoundRatios {
        max_log_r,
        per_kl: max_log_r / (k * l),
        per_kl2: max_log_r / (k * l * l),
        per_k2l2: max_log_r / (k * k * l * l),
    };
    debug_assert!(t.sign() == Sign::Plus);
    Ok(ResultantTable {
        kind: system.kind(),
        k_box,
        l_box,
        w,
        records,
        log_t: ln_abs(&t),
        t,
        constants,
        contents,
        ratios,
        skipped_dependent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    fn ip(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn omega_parts_examples() {
        let (f, g) = omega_parts(&[rf("X/(X+1)"), rf("X-1")], &ev(&[1, -1])).unwrap();
        assert_eq!((f, g), (ip("X"), ip("X^2-1")));
        let (f, g) = omega_parts(&[rf("X")], &ev(&[2])).unwrap();
        assert_eq!((f, g), (ip("X^2"), ip("1")));
        let (f, g) = omega_parts(&[rf("X"), rf("X+1")], &ev(&[1, -2])).unwrap();
        assert_eq!((f, g), (ip("X"), ip("X^2+2*X+1")));
        assert!(omega_parts(&[rf("0")], &ev(&[1])).is_err());
    }

    #[test]
    fn relation_poly_examples() {
        let phis = [rf("X"), rf("X+1")];
        assert_eq!(relation_poly(&phis, &ev(&[1, -2])).unwrap(), ip("-X^2-X-1"));
        let r = relation_poly(&phis, &ev(&[2, 2])).unwrap();
        assert_eq!(r, &ip("X^2+X-1") * &ip("X^2+X+1"));
        assert_eq!(relation_poly(&[rf("X")], &ev(&[1])).unwrap(), ip("X-1"));
        let dependent = [rf("X"), rf("X^2")];
        assert_eq!(
            relation_poly(&dependent, &ev(&[2, -1])),
            Err(Error::MultiplicativelyDependent)
        );
    }

    #[test]
    fn theta_examples() {
        let e = CurveQ::from_ints(1, 1).unwrap();
        let u3 = theta_numerator(&e, &[rf("X")], &ev(&[3])).unwrap();
        assert_eq!(u3, ip("3*X^4+6*X^2+12*X-1"));
        let e01 = CurveQ::from_ints(0, 1).unwrap();
        assert_eq!(theta_numerator(&e01, &[rf("X")], &ev(&[3])).unwrap(), ip("X^4+4*X"));
        assert!(theta_numerator(&e, &[rf("X")], &ev(&[1])).unwrap().is_one());
        assert_eq!(
            theta_numerator(&e, &[rf("X"), rf("X")], &ev(&[1, 1])),
            Err(Error::GenericallyDependent)
        );
        // 2-torsion of y² = x³ + 1 is x = −1
        let u2 = theta_numerator(&e01, &[rf("X")], &ev(&[2])).unwrap();
        assert_eq!(u2, ip("X^3+1"));
    }

    #[test]
    fn theta_two_points_vanishes_on_sums() {
        // (0, 1) + (2, 3) + (−1, 0) = O on y² = x³ + 1, so with
        // ϱ = (X, X + 2, −1) the numerator vanishes at X = 0.
        let e = CurveQ::from_ints(0, 1).unwrap();
        let rhos = [rf("X"), rf("X+2"), rf("-1")];
        let u = theta_numerator(&e, &rhos, &ev(&[1, 1, 1])).unwrap();
        assert!(u.eval(&BigInt::zero()).is_zero());
    }

    #[test]
    fn squarefree_reduced_examples() {
        let w = ip("X^2+X+1");
        let f = &w * &ip("X-5");
        assert_eq!(squarefree_reduced(&f, &w).unwrap(), ip("X-5"));
        assert_eq!(squarefree_reduced(&ip("X-1"), &IntPoly::one()).unwrap(), ip("X-1"));
        let cube = ip("X-1").pow(3);
        assert!(squarefree_reduced(&cube, &ip("X-1")).unwrap().is_one());
        assert!(squarefree_reduced(&IntPoly::zero(), &w).is_err());
    }

    #[test]
    fn boxes_and_independence() {
        let all = box_vectors(2, 1);
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], ev(&[-1, -1]));
        let canon = canonical_box(2, 2);
        assert_eq!(canon.len(), 12);
        assert_eq!(canon[0], ev(&[0, 1]));
        assert_eq!(canon[2], ev(&[1, -2]));
        assert!(!linearly_independent(&ev(&[1, -2]), &ev(&[-1, 2])));
        assert!(linearly_independent(&ev(&[1, -2]), &ev(&[2, 2])));
        assert!(!linearly_independent(&ev(&[3]), &ev(&[1])));
    }

    #[test]
    fn candidate_w_examples() {
        let sys = RelationSystem::mult_mult(vec![rf("X"), rf("X+1")]).unwrap();
        let w = candidate_w(&sys, 2, 2).unwrap();
        assert!(w.div_exact(&ip("X^2+X+1")).is_some());
        let single = RelationSystem::mult_mult(vec![rf("X")]).unwrap();
        assert!(candidate_w(&single, 1, 1).unwrap().is_one());
    }

    #[test]
    fn resultant_table_small() {
        let sys = RelationSystem::mult_mult(vec![rf("X"), rf("X+1")]).unwrap();
        let table = resultant_table(&sys, 1, 1).unwrap();
        let rec = table
            .records
            .iter()
            .find(|r| r.k == ev(&[1, 0]) && r.l == ev(&[0, 1]))
            .unwrap();
        assert!(rec.r.is_one());
        assert!(table.all_within_bounds());
        assert!(table.records.iter().all(|r| linearly_independent(&r.k, &r.l)));
    }

    #[test]
    fn system_validation() {
        let e = CurveQ::from_ints(0, 1).unwrap();
        assert!(RelationSystem::new(vec![rf("X")], SystemKind::MultLin, None, None).is_err());
        assert!(RelationSystem::new(
            vec![rf("X")],
            SystemKind::MultMult,
            Some(e.clone()),
            Some(vec![rf("X")])
        )
        .is_err());
        assert!(RelationSystem::mult_lin(vec![rf("X")], e, vec![rf("X")]).is_ok());
    }
}
