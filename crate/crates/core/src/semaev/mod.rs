//! Summation polynomials σ_n of y² = x³ + ax + b: σ_n(x_1, …, x_n) = 0
//! exactly when there are y_i with Σ (x_i, y_i) = O.
//!
//! σ_2 and σ_3 are explicit; for n ≥ 4,
//! σ_n = Res_X(σ_{n−k}(X_1, …, X_{n−k−1}, X), σ_{k+2}(X_{n−k}, …, X_n, X)),
//! canonicalized (content removed, leading graded-lex term positive).

mod multipoly;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use smallvec::SmallVec;

use crate::ecurve::{CurveFq, CurveQ, PointFq};
use crate::error::{Error, Result};
use crate::ffield::FieldCtx;
use crate::ffpoly::FieldOps;

pub use multipoly::{Exponents, Monomial, MultiPoly};

/// Default cap on the number of candidate output monomials of one
/// resultant step.
pub const DEFAULT_TERM_BUDGET: u128 = 60_000_000;

/// Largest tuple space q^n accepted by [`verify_zero_set`].
pub const ZERO_SET_BUDGET: u64 = 10_000_000;

/// The canonical split k = ⌊(n−1)/2⌋.
pub fn canonical_split(n: usize) -> usize {
    (n - 1) / 2
}

/// Builds and caches σ_n for one curve (integral model coefficients).
#[derive(Debug, Clone)]
pub struct SummationBuilder {
    a: BigInt,
    b: BigInt,
    budget: u128,
    cache: BTreeMap<usize, Arc<MultiPoly>>,
}

impl SummationBuilder {
    pub fn new(curve: &CurveQ) -> Self {
        let m = curve.integral_model();
        Self::from_ints(m.a, m.b)
    }

    pub fn from_ints(a: BigInt, b: BigInt) -> Self {
        SummationBuilder {
            a,
            b,
            budget: DEFAULT_TERM_BUDGET,
            cache: BTreeMap::new(),
        }
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    /// σ_n with the canonical split at every level.
    pub fn get(&mut self, n: usize) -> Result<Arc<MultiPoly>> {
        if n < 2 {
            return Err(Error::InvalidArgument(
                "summation polynomials start at n = 2".into(),
            ));
        }
        if let Some(p) = self.cache.get(&n) {
            return Ok(Arc::clone(p));
        }
        let p = match n {
            2 => MultiPoly::var(2, 0).sub(&MultiPoly::var(2, 1)),
            3 => self.sigma3(),
            _ => self.split(n, canonical_split(n))?,
        };
        let p = Arc::new(p);
        self.cache.insert(n, Arc::clone(&p));
        Ok(p)
    }

    /// σ_n from the split k (1 ≤ k ≤ n−3), with canonical sub-polynomials.
    pub fn split(&mut self, n: usize, k: usize) -> Result<MultiPoly> {
        if n < 4 || k < 1 || k > n - 3 {
            return Err(Error::InvalidArgument(format!(
                "split k = {k} not admissible for n = {n}"
            )));
        }
        let left = self.get(n - k)?;
        let right = self.get(k + 2)?;
        let nu = left.nvars() - 1;
        let lhs = left.coefficients_in(nu);
        let rhs = right.coefficients_in(right.nvars() - 1);
        let r = resultant_disjoint(&lhs, &rhs, self.budget)?;
        debug_assert_eq!(r.nvars(), n);
        Ok(r.canonical())
    }

    /// (X1−X2)²X3² − 2((X1+X2)(X1X2+a) + 2b)X3 + (X1X2−a)² − 4b(X1+X2)
    fn sigma3(&self) -> MultiPoly {
        let n = 3;
        let x1 = MultiPoly::var(n, 0);
        let x2 = MultiPoly::var(n, 1);
        let x3 = MultiPoly::var(n, 2);
        let a = MultiPoly::constant(n, self.a.clone());
        let b = MultiPoly::constant(n, self.b.clone());
        let two = BigInt::from(2);
        let four = BigInt::from(4);
        let s = x1.add(&x2);
        let p = x1.mul(&x2);
        let diff = x1.sub(&x2);
        let t1 = diff.mul(&diff).mul(&x3.mul(&x3));
        let t2 = s
            .mul(&p.add(&a))
            .add(&b.scale(&two))
            .mul(&x3)
            .scale(&two);
        let pa = p.sub(&a);
        let t3 = pa.mul(&pa).sub(&b.mul(&s).scale(&four));
        t1.sub(&t2).add(&t3).canonical()
    }
}

/// σ_n for a rational curve, computed on its integral model.
pub fn summation_poly(curve: &CurveQ, n: usize) -> Result<Arc<MultiPoly>> {
    SummationBuilder::new(curve).get(n)
}

/// All minors of a Sylvester block: `rows` shifted copies of the polynomial
/// with coefficients `coeffs` (index j = coefficient of X^j) across `cols`
/// columns. Keys are column bitmasks of size `rows`.
fn block_minors(coeffs: &[MultiPoly], rows: usize, cols: usize) -> HashMap<u32, MultiPoly> {
    let d = coeffs.len() - 1;
    let nv = coeffs[0].nvars();
    let mut states: HashMap<u32, MultiPoly> = HashMap::new();
    states.insert(0, MultiPoly::constant(nv, BigInt::one()));
    for i in 0..rows {
        let mut next: HashMap<u32, MultiPoly> = HashMap::new();
        for (&mask, poly) in &states {
            for c in i..=(i + d).min(cols - 1) {
                if mask >> c & 1 == 1 {
                    continue;
                }
                let entry = &coeffs[d - (c - i)];
                if entry.is_zero() {
                    continue;
                }
                let inversions = (mask >> (c + 1)).count_ones();
                let mut term = poly.mul(entry);
                if inversions % 2 == 1 {
                    term = term.neg();
                }
                let key = mask | 1 << c;
                match next.get_mut(&key) {
                    Some(acc) => *acc = acc.add(&term),
                    None => {
                        next.insert(key, term);
                    }
                }
            }
        }
        next.retain(|_, p| !p.is_zero());
        states = next;
    }
    states
}

/// Res_X(A, B) where A has coefficients in variables U and B in disjoint
/// variables V; the result lives in (U, V) with U first. Computed by Laplace
/// expansion of the Sylvester matrix along the rows built from A.
fn resultant_disjoint(a: &[MultiPoly], b: &[MultiPoly], budget: u128) -> Result<MultiPoly> {
    let da = a.len() - 1;
    let db = b.len() - 1;
    let nu = a[0].nvars();
    let nv = b[0].nvars();
    let cols = da + db;
    assert!(cols <= 32);
    // deg_{u}(Res) ≤ deg_X(B)·deg_u(A), and symmetrically for V.
    let box_size = |side: &[MultiPoly], other_deg: usize| -> u128 {
        (0..side[0].nvars())
            .map(|i| {
                let d = side.iter().map(|c| c.partial_degree(i)).max().unwrap_or(0) as u128;
                other_deg as u128 * d + 1
            })
            .product()
    };
    let bound = box_size(a, db).saturating_mul(box_size(b, da));
    if bound > budget {
        return Err(Error::BudgetExceeded {
            what: "summation polynomial resultant terms".into(),
            needed: bound,
            budget,
        });
    }
    let top = block_minors(a, db, cols);
    let bottom = block_minors(b, da, cols);
    let full: u32 = if cols == 32 { u32::MAX } else { (1u32 << cols) - 1 };

    // Pairs (sign, M_S, N_{S^c}) in a fixed order.
    let mut pairs: Vec<(bool, &MultiPoly, &MultiPoly)> = Vec::new();
    let mut masks: Vec<&u32> = top.keys().collect();
    masks.sort_unstable();
    for &mask in masks {
        if let Some(n_poly) = bottom.get(&(full ^ mask)) {
            let col_sum: u32 = (0..cols as u32).filter(|c| mask >> c & 1 == 1).sum();
            let parity = (db * db.saturating_sub(1) / 2) as u32 + col_sum;
            pairs.push((parity % 2 == 1, &top[&mask], n_poly));
        }
    }

    // Distinct monomials on each side.
    let mut u_index: HashMap<&Exponents, usize> = HashMap::new();
    let mut u_list: Vec<&Exponents> = Vec::new();
    let mut v_index: HashMap<&Exponents, usize> = HashMap::new();
    let mut v_list: Vec<&Exponents> = Vec::new();
    for (_, m, n) in &pairs {
        for (mono, _) in m.terms() {
            u_index.entry(&mono.0).or_insert_with(|| {
                u_list.push(&mono.0);
                u_list.len() - 1
            });
        }
        for (mono, _) in n.terms() {
            v_index.entry(&mono.0).or_insert_with(|| {
                v_list.push(&mono.0);
                v_list.len() - 1
            });
        }
    }
    let candidates = u_list.len() as u128 * v_list.len() as u128;
    if candidates > budget {
        return Err(Error::BudgetExceeded {
            what: "summation polynomial resultant terms".into(),
            needed: candidates,
            budget,
        });
    }

    // For each U-monomial, the (pair, coefficient) list; each N as dense
    // (v index, coefficient) lists.
    let mut by_u: Vec<Vec<(usize, &BigInt)>> = vec![Vec::new(); u_list.len()];
    for (pi, (_, m, _)) in pairs.iter().enumerate() {
        for (mono, c) in m.terms() {
            by_u[u_index[&mono.0]].push((pi, c));
        }
    }
    let n_terms: Vec<Vec<(usize, &BigInt)>> = pairs
        .iter()
        .map(|(_, _, n)| n.terms().iter().map(|(m, c)| (v_index[&m.0], c)).collect())
        .collect();

    let mut out: Vec<(Monomial, BigInt)> = Vec::new();
    let mut row = vec![BigInt::zero(); v_list.len()];
    let mut touched: Vec<usize> = Vec::new();
    for (ui, uses) in by_u.iter().enumerate() {
        for &(pi, cu) in uses {
            let negate = pairs[pi].0;
            for &(vi, cv) in &n_terms[pi] {
                if row[vi].is_zero() {
                    touched.push(vi);
                }
                let prod = cu * cv;
                if negate {
                    row[vi] -= prod;
                } else {
                    row[vi] += prod;
                }
            }
        }
        for &vi in &touched {
            let c = std::mem::take(&mut row[vi]);
            if !c.is_zero() {
                let mut e: Exponents = SmallVec::with_capacity(nu + nv);
                e.extend_from_slice(u_list[ui]);
                e.extend_from_slice(v_list[vi]);
                out.push((Monomial(e), c));
            }
        }
        touched.clear();
    }
    // `touched` may list an index twice if its value returned to zero and was
    // touched again; merge duplicates while sorting.
    out.sort_unstable_by(|x, y| y.0.cmp(&x.0));
    out.dedup_by(|later, earlier| {
        if later.0 == earlier.0 {
            earlier.1 += &later.1;
            true
        } else {
            false
        }
    });
    out.retain(|(_, c)| !c.is_zero());
    Ok(MultiPoly::from_sorted_terms(nu + nv, out))
}

/// Height row for one n.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummationHeight {
    pub n: usize,
    pub terms: usize,
    #[serde(serialize_with = "crate::serde_util::bigint_str")]
    pub max_coeff: BigInt,
    pub h: f64,
    /// log h(σ_n) / n, for n ≥ 3.
    pub log_h_over_n: Option<f64>,
}

/// h(σ_n) for 2 ≤ n ≤ nmax.
pub fn summation_height_profile(curve: &CurveQ, nmax: usize) -> Result<Vec<SummationHeight>> {
    summation_height_profile_with(&mut SummationBuilder::new(curve), nmax)
}

pub fn summation_height_profile_with(
    builder: &mut SummationBuilder,
    nmax: usize,
) -> Result<Vec<SummationHeight>> {
    let mut rows = Vec::new();
    for n in 2..=nmax {
        let s = builder.get(n)?;
        let h = s.log_height();
        rows.push(SummationHeight {
            n,
            terms: s.term_count(),
            max_coeff: s.height_max(),
            h,
            log_h_over_n: (n >= 3 && h > 0.0).then(|| h.ln() / n as f64),
        });
    }
    Ok(rows)
}

/// Outcome of an exhaustive zero-set comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroSetReport {
    pub q: u64,
    pub n: usize,
    pub tuples: u64,
    pub zeros: u64,
    /// Tuples where σ_n(x) = 0 disagrees with the existence of a zero sum.
    pub mismatches: Vec<Vec<u64>>,
}

/// Compares σ_n = 0 against "some choice of y_i in F_{q²} gives Σ(x_i, y_i) = O"
/// for every tuple in F_q^n. Prime fields only; σ_n is the polynomial of the
/// integer lift of (a, b).
pub fn verify_zero_set(curve: &CurveFq, n: usize) -> Result<ZeroSetReport> {
    let mut builder = SummationBuilder::from_ints(BigInt::from(curve.a()), BigInt::from(curve.b()));
    let sigma = builder.get(n)?;
    verify_zero_set_with(curve, n, &sigma)
}

pub fn verify_zero_set_with(curve: &CurveFq, n: usize, sigma: &MultiPoly) -> Result<ZeroSetReport> {
    let ctx = curve.ctx();
    if ctx.d() != 1 {
        return Err(Error::InvalidArgument(
            "zero-set verification is implemented over prime fields".into(),
        ));
    }
    let q = ctx.q();
    let tuples = q.checked_pow(n as u32).unwrap_or(u64::MAX);
    if tuples > ZERO_SET_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "zero-set tuples".into(),
            needed: tuples as u128,
            budget: ZERO_SET_BUDGET as u128,
        });
    }
    let values = eval_all_tuples(sigma, ctx, n);
    let sums = PointSums::new(curve)?;

    let mut mismatches = Vec::new();
    let mut zeros = 0;
    let mut xs = vec![0u64; n];
    for (idx, &v) in values.iter().enumerate() {
        let mut rest = idx as u64;
        for slot in xs.iter_mut().rev() {
            *slot = rest % q;
            rest /= q;
        }
        let poly_zero = v == 0;
        if poly_zero {
            zeros += 1;
        }
        if poly_zero != sums.zero_sum_exists(&xs) {
            mismatches.push(xs.clone());
        }
    }
    Ok(ZeroSetReport {
        q,
        n,
        tuples,
        zeros,
        mismatches,
    })
}

/// σ(x) mod p for all x ∈ F_p^n, index Σ x_i p^{n−1−i}, by contracting the
/// dense coefficient tensor one variable at a time.
fn eval_all_tuples(sigma: &MultiPoly, ctx: &FieldCtx, n: usize) -> Vec<u64> {
    let p = ctx.p();
    let side = (0..n).map(|i| sigma.partial_degree(i)).max().unwrap_or(0) as usize + 1;
    // tensor layout: [x_1..x_j evaluated (base p)] × [remaining exponents (base side)]
    let mut tensor = sigma.dense_mod_p(p, side);
    let mut evaluated = 0usize;
    let powers: Vec<Vec<u64>> = (0..p)
        .map(|x| {
            let mut v = vec![1u64; side];
            for e in 1..side {
                v[e] = ctx.mul(v[e - 1], x);
            }
            v
        })
        .collect();
    while evaluated < n {
        let remaining = n - evaluated;
        let inner = side.pow((remaining - 1) as u32);
        let outer = (p as usize).pow(evaluated as u32);
        let mut next = vec![0u64; outer * p as usize * inner];
        for o in 0..outer {
            let block = &tensor[o * side * inner..(o + 1) * side * inner];
            for x in 0..p as usize {
                let dst = &mut next[(o * p as usize + x) * inner..(o * p as usize + x + 1) * inner];
                for e in 0..side {
                    let w = powers[x][e];
                    if w == 0 {
                        continue;
                    }
                    let src = &block[e * inner..(e + 1) * inner];
                    for (d, &s) in dst.iter_mut().zip(src) {
                        if s != 0 {
                            *d = ctx.add(*d, ctx.mul(w, s));
                        }
                    }
                }
            }
        }
        tensor = next;
        evaluated += 1;
    }
    tensor
}

/// Points (x, ±y) of E(F_{q²}) for x ∈ F_q with a full addition table.
struct PointSums {
    /// index of the point (x, y_x) for each x ∈ F_q (y_x a fixed root)
    base: Vec<usize>,
    neg: Vec<usize>,
    table: Vec<Vec<usize>>,
    infinity: usize,
}

impl PointSums {
    fn new(curve: &CurveFq) -> Result<Self> {
        let emb = curve.ctx().quadratic_extension()?;
        let big = curve.over_extension(&emb);
        let mut points = vec![PointFq::Infinity];
        points.extend(big.affine_points());
        let index: HashMap<PointFq, usize> =
            points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let table: Vec<Vec<usize>> = points
            .iter()
            .map(|&p| points.iter().map(|&q| index[&big.add(p, q)]).collect())
            .collect();
        let neg = points.iter().map(|&p| index[&big.neg(p)]).collect();
        let base = (0..curve.ctx().q())
            .map(|x| {
                let bx = emb.apply(x);
                let y = big.ctx().sqrt(big.rhs(bx)).expect("square in F_{q^2}");
                index[&PointFq::Affine(bx, y)]
            })
            .collect();
        Ok(PointSums {
            base,
            neg,
            table,
            infinity: 0,
        })
    }

    fn zero_sum_exists(&self, xs: &[u64]) -> bool {
        let size = self.table.len();
        let mut reach = vec![false; size];
        reach[self.infinity] = true;
        for &x in xs {
            let p = self.base[x as usize];
            let np = self.neg[p];
            let mut next = vec![false; size];
            for (s, _) in reach.iter().enumerate().filter(|(_, &r)| r) {
                next[self.table[s][p]] = true;
                next[self.table[s][np]] = true;
            }
            reach = next;
        }
        reach[self.infinity]
    }
}

/// σ_n is symmetric: every transposition of adjacent variables fixes it.
pub fn is_symmetric(sigma: &MultiPoly) -> bool {
    let n = sigma.nvars();
    (0..n.saturating_sub(1)).all(|i| {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, i + 1);
        sigma.permute(&perm) == *sigma
    })
}

/// Compares two polynomials up to a nonzero rational factor.
pub fn proportional(f: &MultiPoly, g: &MultiPoly) -> bool {
    f.canonical() == g.canonical() || f.canonical() == g.neg().canonical()
}

/// Frozen golden text for σ_n (serialization format).
pub fn golden_text(sigma: &MultiPoly) -> String {
    sigma.serialize()
}

/// Reduces σ_n coefficients modulo p for quick evaluation at a tuple.
pub fn eval_mod_p(sigma: &MultiPoly, xs: &[u64], ctx: &Arc<FieldCtx>) -> u64 {
    let mut acc = 0u64;
    for (m, c) in sigma.terms() {
        let mut t = ctx.int_code(c);
        for (&x, &e) in xs.iter().zip(m.0.iter()) {
            t = ctx.mul(t, ctx.pow(x, e as u64));
        }
        acc = ctx.add(acc, t);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn builder(a: i64, b: i64) -> SummationBuilder {
        SummationBuilder::from_ints(a.into(), b.into())
    }

    #[test]
    fn sigma2_and_sigma3() {
        let mut s = builder(0, 1);
        assert_eq!(s.get(2).unwrap().to_string(), "X1-X2");
        let s3 = s.get(3).unwrap();
        // σ_3(0, 0, X3) = −4X3 up to the canonical sign
        let restricted = s3.specialize(&[Some(0.into()), Some(0.into()), None]);
        assert!(proportional(&restricted, &MultiPoly::var(1, 0)));
        assert_eq!(restricted.terms().len(), 1);
        assert_eq!(restricted.terms()[0].1.magnitude().to_string(), "4");
        assert!(is_symmetric(&s3));
        assert!(s.get(1).is_err());
    }

    #[test]
    fn sigma4_shape_and_splits() {
        let mut s = builder(2, -3);
        let s4 = s.get(4).unwrap();
        assert!(is_symmetric(&s4));
        for i in 0..4 {
            assert_eq!(s4.partial_degree(i), 4);
        }
        let s5 = s.get(5).unwrap();
        assert!(is_symmetric(&s5));
        for i in 0..5 {
            assert_eq!(s5.partial_degree(i), 8);
        }
        let alt = s.split(5, 1).unwrap();
        assert!(proportional(&alt, &s5));
    }

    #[test]
    fn zero_set_small() {
        let ctx = FieldCtx::new(5, 1).unwrap();
        let e = CurveQ::from_ints(0, 1).unwrap().reduce(&ctx).unwrap();
        for n in [2, 3] {
            let r = verify_zero_set(&e, n).unwrap();
            assert!(r.mismatches.is_empty(), "{:?}", r.mismatches);
        }
        let mut s = builder(0, 1);
        let s3 = s.get(3).unwrap();
        assert_eq!(eval_mod_p(&s3, &[0, 0, 0], &ctx), 0);
    }

    #[test]
    fn budget_is_enforced() {
        let mut s = builder(1, 1).with_budget(10);
        assert!(matches!(s.get(4), Err(Error::BudgetExceeded { .. })));
    }
}

