//! Exhaustive dependence loci over F_q: for every α, decide whether the
//! values φ_i(α) are K-multiplicatively dependent and whether the points
//! (ϱ_i(α), β_i) are L-linearly dependent, and collect the sets
//!
//! - A: two independent multiplicative relations among the φ_i(α),
//! - B: a multiplicative relation among the φ_i(α) and a linear one among
//!   the points (ϱ_i(α), ·),
//! - C: two independent linear relations among the points (ϱ_i(α), ·),
//! - D: a multiplicative relation among the φ_i(α) and one among the ϱ_i(α),
//! - E: a linear relation among the points (φ_i(α), ·) and one among the
//!   points (ϱ_i(α), ·).

use std::fmt;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::is_prime_u64;
use crate::ecurve::{CurveFq, CurveQ, PointFq};
use crate::error::{Error, Result};
use crate::ffield::{discrete_log, Embedding, FieldCtx, FqElem};
use crate::ffpoly::FieldOps;
use crate::poly::{IntPoly, RatFunc};
use crate::relations::{canonical_box, linearly_independent, ExponentVector, ResultantTable};

/// Largest |box|·q handled by one enumeration call.
pub const ENUMERATION_BUDGET: u128 = 100_000_000;

/// Largest prime accepted by [`order_sweep`].
pub const SWEEP_PMAX: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Multiplicative,
    Elliptic,
}

/// A relation vector (or two, for the sets needing two independent ones).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DependenceWitness {
    pub kind: WitnessKind,
    pub vector: ExponentVector,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second: Option<ExponentVector>,
}

impl DependenceWitness {
    fn single(kind: WitnessKind, vector: ExponentVector) -> Self {
        DependenceWitness {
            kind,
            vector,
            second: None,
        }
    }

    fn pair(kind: WitnessKind, vector: ExponentVector, second: ExponentVector) -> Self {
        DependenceWitness {
            kind,
            vector,
            second: Some(second),
        }
    }
}

impl fmt::Display for DependenceWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.second {
            Some(s) => write!(f, "{}&{}", self.vector, s),
            None => write!(f, "{}", self.vector),
        }
    }
}

/// ∏ x_i^{k_i} over the field; all x_i must be nonzero.
pub fn mult_product(ctx: &FieldCtx, xs: &[u64], k: &ExponentVector) -> u64 {
    xs.iter().zip(k.entries()).fold(1, |acc, (&x, &e)| {
        let base = if e < 0 { ctx.inv(x) } else { x };
        ctx.mul(acc, ctx.pow(base, e.unsigned_abs()))
    })
}

/// Σ k_i P_i on the curve.
pub fn point_combination(curve: &CurveFq, points: &[PointFq], k: &ExponentVector) -> PointFq {
    points
        .iter()
        .zip(k.entries())
        .fold(PointFq::Infinity, |acc, (&p, &e)| curve.add(acc, curve.scalar_mul(e, p)))
}

/// All canonical k in the box with ∏ x_i^{k_i} = 1, in lexicographic order.
fn mult_relations(ctx: &FieldCtx, xs: &[u64], vectors: &[ExponentVector], bound: u64) -> Vec<usize> {
    // powers[i][j] = x_i^{j − bound}
    let b = bound as usize;
    let powers: Vec<Vec<u64>> = xs
        .iter()
        .map(|&x| {
            let inv = ctx.inv(x);
            let mut row = vec![1u64; 2 * b + 1];
            for j in 1..=b {
                row[b + j] = ctx.mul(row[b + j - 1], x);
                row[b - j] = ctx.mul(row[b - j + 1], inv);
            }
            row
        })
        .collect();
    vectors
        .iter()
        .enumerate()
        .filter(|(_, k)| {
            let prod = k
                .entries()
                .iter()
                .enumerate()
                .fold(1, |acc, (i, &e)| ctx.mul(acc, powers[i][(e + bound as i64) as usize]));
            prod == 1
        })
        .map(|(i, _)| i)
        .collect()
}

/// All canonical k in the box with Σ k_i P_i = O, in lexicographic order.
fn linear_relations(
    curve: &CurveFq,
    points: &[PointFq],
    vectors: &[ExponentVector],
    bound: u64,
) -> Vec<usize> {
    let b = bound as i64;
    let multiples: Vec<Vec<PointFq>> = points
        .iter()
        .map(|&p| (-b..=b).map(|j| curve.scalar_mul(j, p)).collect())
        .collect();
    vectors
        .iter()
        .enumerate()
        .filter(|(_, k)| {
            let sum = k
                .entries()
                .iter()
                .enumerate()
                .fold(PointFq::Infinity, |acc, (i, &e)| {
                    curve.add(acc, multiples[i][(e + b) as usize])
                });
            sum.is_infinity()
        })
        .map(|(i, _)| i)
        .collect()
}

fn codes_of(xs: &[FqElem]) -> Result<(Arc<FieldCtx>, Vec<u64>)> {
    let ctx = xs
        .first()
        .map(|x| Arc::clone(x.ctx()))
        .ok_or_else(|| Error::InvalidArgument("empty element list".into()))?;
    let mut codes = Vec::with_capacity(xs.len());
    for x in xs {
        if !Arc::ptr_eq(x.ctx(), &ctx) && **x.ctx() != *ctx {
            return Err(Error::ContextMismatch);
        }
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        codes.push(x.code());
    }
    Ok((ctx, codes))
}

/// The lexicographically first canonical k with max |k_i| ≤ K and
/// ∏ x_i^{k_i} = 1, by enumerating the box.
pub fn is_k_mult_dependent(xs: &[FqElem], bound: u64) -> Result<Option<ExponentVector>> {
    let (ctx, codes) = codes_of(xs)?;
    let vectors = canonical_box(codes.len(), bound);
    Ok(mult_relations(&ctx, &codes, &vectors, bound)
        .first()
        .map(|&i| vectors[i].clone()))
}

/// Same answer as [`is_k_mult_dependent`] computed from discrete logarithms:
/// with x_i = g^{e_i}, k is a relation iff Σ k_i e_i ≡ 0 (mod q − 1).
pub fn mult_dependence_by_dlog(xs: &[FqElem], bound: u64) -> Result<Option<ExponentVector>> {
    let (ctx, _) = codes_of(xs)?;
    let g = ctx.elem(ctx.generator());
    let n = (ctx.q() - 1) as i128;
    let mut logs = Vec::with_capacity(xs.len());
    for x in xs {
        let e = discrete_log(&g, x)?.expect("generator spans the unit group");
        logs.push(e as i128);
    }
    Ok(canonical_box(xs.len(), bound).into_iter().find(|k| {
        let s: i128 = k
            .entries()
            .iter()
            .zip(&logs)
            .map(|(&k, &e)| k as i128 * e)
            .sum();
        s.rem_euclid(n) == 0
    }))
}

/// Points (α_i, β_i) with canonical β_i, all in one field: the base field
/// when every β_i lies there, otherwise its quadratic extension.
pub struct LiftedPoints<'a> {
    pub curve: &'a CurveFq,
    pub points: Vec<PointFq>,
    pub extended: bool,
}

/// Lifts x-coordinates to curve points, building the quadratic extension
/// once on first need.
pub struct PointLifter {
    base: CurveFq,
    ext: OnceLock<Result<(Embedding, CurveFq)>>,
}

impl PointLifter {
    pub fn new(curve: &CurveFq) -> Self {
        PointLifter {
            base: curve.clone(),
            ext: OnceLock::new(),
        }
    }

    pub fn base(&self) -> &CurveFq {
        &self.base
    }

    fn extension(&self) -> Result<&(Embedding, CurveFq)> {
        self.ext
            .get_or_init(|| {
                let emb = self.base.ctx().quadratic_extension()?;
                let big = self.base.over_extension(&emb);
                Ok((emb, big))
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn lift(&self, alphas: &[u64]) -> Result<LiftedPoints<'_>> {
        let betas: Vec<Option<u64>> = alphas.iter().map(|&a| self.base.canonical_y(a)).collect();
        if betas.iter().all(Option::is_some) {
            let points = alphas
                .iter()
                .zip(betas)
                .map(|(&a, b)| PointFq::Affine(a, b.unwrap()))
                .collect();
            return Ok(LiftedPoints {
                curve: &self.base,
                points,
                extended: false,
            });
        }
        let (emb, big) = self.extension()?;
        let points = alphas
            .iter()
            .zip(betas)
            .map(|(&a, b)| {
                let x = emb.apply(a);
                let y = match b {
                    Some(y) => emb.apply(y),
                    None => big.canonical_y(x).expect("square after extension"),
                };
                PointFq::Affine(x, y)
            })
            .collect();
        Ok(LiftedPoints {
            curve: big,
            points,
            extended: true,
        })
    }

    /// Order of (α, β) for the canonical β.
    pub fn point_order(&self, alpha: u64) -> Result<u64> {
        let lifted = self.lift(&[alpha])?;
        Ok(lifted.curve.point_order(lifted.points[0]))
    }
}

/// The lexicographically first canonical k with max |k_i| ≤ L and
/// Σ k_i (α_i, β_i) = O for the canonical β_i.
pub fn is_l_linear_dependent(
    alphas: &[FqElem],
    curve: &CurveFq,
    bound: u64,
) -> Result<Option<ExponentVector>> {
    for a in alphas {
        if **a.ctx() != **curve.ctx() {
            return Err(Error::ContextMismatch);
        }
    }
    let codes: Vec<u64> = alphas.iter().map(FqElem::code).collect();
    let lifter = PointLifter::new(curve);
    let lifted = lifter.lift(&codes)?;
    linear_dependence_of_points(lifted.curve, &lifted.points, bound)
}

/// As [`is_l_linear_dependent`] for explicitly given points.
pub fn linear_dependence_of_points(
    curve: &CurveFq,
    points: &[PointFq],
    bound: u64,
) -> Result<Option<ExponentVector>> {
    for &p in points {
        if !curve.is_on_curve(p) {
            return Err(Error::NotOnCurve);
        }
    }
    let vectors = canonical_box(points.len(), bound);
    Ok(linear_relations(curve, points, &vectors, bound)
        .first()
        .map(|&i| vectors[i].clone()))
}

/// Which dependence locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LocusSet {
    A,
    B,
    C,
    D,
    E,
}

impl fmt::Display for LocusSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for LocusSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(LocusSet::A),
            "B" => Ok(LocusSet::B),
            "C" => Ok(LocusSet::C),
            "D" => Ok(LocusSet::D),
            "E" => Ok(LocusSet::E),
            _ => Err(crate::error::parse_err(s, "expected one of A, B, C, D, E")),
        }
    }
}

/// Why an α was left out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exclusion {
    Zero,
    Pole,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExcludedPoint {
    pub alpha: String,
    #[serde(skip)]
    pub code: u64,
    pub reason: Exclusion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocusElement {
    pub alpha: String,
    #[serde(skip)]
    pub code: u64,
    pub witnesses: Vec<DependenceWitness>,
}

/// Comparison of an enumerated set with a resultant table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub vp_t: u64,
    pub deg_w: usize,
    pub bound: u64,
    pub exceptional_prime: bool,
    /// Roots of W modulo p in the field.
    pub w_roots: Vec<String>,
    /// Elements that are not roots of W modulo p.
    pub unexplained: Vec<String>,
    pub within_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocusReport {
    pub set: LocusSet,
    pub p: u64,
    pub d: u32,
    pub k_box: u64,
    pub l_box: u64,
    pub elements: Vec<LocusElement>,
    pub excluded: Vec<ExcludedPoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prediction: Option<Prediction>,
}

impl LocusReport {
    pub fn codes(&self) -> Vec<u64> {
        self.elements.iter().map(|e| e.code).collect()
    }

    /// Fills in the comparison with v_p(T) + deg W and the roots of W mod p.
    pub fn compare_with(&mut self, ctx: &Arc<FieldCtx>, table: &ResultantTable) -> Result<()> {
        let roots = if table.w.reduce_mod(ctx.p()).is_empty() {
            (0..ctx.q()).collect()
        } else {
            ctx.roots(&table.w)?
        };
        let unexplained = self
            .elements
            .iter()
            .filter(|e| roots.binary_search(&e.code).is_err())
            .map(|e| e.alpha.clone())
            .collect();
        let vp_t = table.vp_t(ctx.p());
        let deg_w = table.w.deg();
        let bound = vp_t + deg_w as u64;
        self.prediction = Some(Prediction {
            vp_t,
            deg_w,
            bound,
            exceptional_prime: table.is_exceptional(ctx.p()),
            w_roots: roots.iter().map(|&c| ctx.elem(c).to_string()).collect(),
            unexplained,
            within_bound: self.elements.len() as u64 <= bound,
        });
        Ok(())
    }

    /// CSV rows p,d,alpha,set,witness1,witness2 (no header).
    pub fn csv_rows(&self) -> Vec<String> {
        self.elements
            .iter()
            .map(|e| {
                let w1 = e.witnesses.first().map(|w| w.to_string()).unwrap_or_default();
                let w2 = e.witnesses.get(1).map(|w| w.to_string()).unwrap_or_default();
                format!("{},{},{},{},\"{}\",\"{}\"", self.p, self.d, e.alpha, self.set, w1, w2)
            })
            .collect()
    }
}

pub const CSV_HEADER: &str = "p,d,alpha,set,witness1,witness2";

/// Reduction of a rational function modulo p.
#[derive(Clone, Debug)]
struct ReducedFunc {
    num: Vec<u64>,
    den: Vec<u64>,
}

/// f(α) when defined.
enum Value {
    Defined(u64),
    Pole,
}

impl ReducedFunc {
    fn new(f: &RatFunc, ctx: &FieldCtx) -> Result<Self> {
        let reduce = |g: &IntPoly| -> Vec<u64> { g.coeffs().iter().map(|c| ctx.int_code(c)).collect() };
        let num = reduce(f.num());
        let den = reduce(f.den());
        let p = ctx.p();
        if den.iter().all(|&c| c == 0) {
            return Err(Error::BadReduction {
                p,
                reason: format!("denominator of {f} vanishes"),
            });
        }
        if num.iter().all(|&c| c == 0) {
            return Err(Error::BadReduction {
                p,
                reason: format!("{f} reduces to zero"),
            });
        }
        Ok(ReducedFunc { num, den })
    }

    fn eval(&self, ctx: &FieldCtx, x: u64) -> Value {
        let horner = |c: &[u64]| c.iter().rev().fold(0, |acc, &a| ctx.add(ctx.mul(acc, x), a));
        let d = horner(&self.den);
        if d == 0 {
            return Value::Pole;
        }
        Value::Defined(ctx.mul(horner(&self.num), ctx.inv(d)))
    }
}

/// The functions and curve a locus is computed for.
#[derive(Clone, Debug, Default)]
pub struct LocusProblem {
    pub phis: Vec<RatFunc>,
    pub rhos: Vec<RatFunc>,
    pub curve: Option<CurveQ>,
}

impl LocusProblem {
    pub fn new(phis: Vec<RatFunc>, rhos: Vec<RatFunc>, curve: Option<CurveQ>) -> Self {
        LocusProblem { phis, rhos, curve }
    }
}

/// How a list of functions is tested at α.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Mult,
    Linear,
}

struct Side {
    funcs: Vec<ReducedFunc>,
    mode: Mode,
    bound: u64,
    vectors: Vec<ExponentVector>,
}

struct Evaluated {
    /// indices into `Side::vectors` of the relations holding at α
    relations: Vec<usize>,
}

impl Side {
    fn new(funcs: &[RatFunc], mode: Mode, bound: u64, ctx: &FieldCtx) -> Result<Self> {
        let funcs = funcs
            .iter()
            .map(|f| ReducedFunc::new(f, ctx))
            .collect::<Result<Vec<_>>>()?;
        Ok(Side {
            vectors: canonical_box(funcs.len(), bound),
            funcs,
            mode,
            bound,
        })
    }

    fn values(&self, ctx: &FieldCtx, alpha: u64) -> std::result::Result<Vec<u64>, Exclusion> {
        let mut out = Vec::with_capacity(self.funcs.len());
        for f in &self.funcs {
            match f.eval(ctx, alpha) {
                Value::Pole => return Err(Exclusion::Pole),
                Value::Defined(0) if self.mode == Mode::Mult => return Err(Exclusion::Zero),
                Value::Defined(v) => out.push(v),
            }
        }
        Ok(out)
    }

    fn evaluate(&self, ctx: &FieldCtx, curve: Option<&PointLifter>, values: &[u64]) -> Result<Evaluated> {
        let relations = match self.mode {
            Mode::Mult => mult_relations(ctx, values, &self.vectors, self.bound),
            Mode::Linear => {
                let lifted = curve.expect("curve for linear relations").lift(values)?;
                linear_relations(lifted.curve, &lifted.points, &self.vectors, self.bound)
            }
        };
        Ok(Evaluated { relations })
    }

    fn kind(&self) -> WitnessKind {
        match self.mode {
            Mode::Mult => WitnessKind::Multiplicative,
            Mode::Linear => WitnessKind::Elliptic,
        }
    }
}

/// The lexicographically first pair (k, ℓ), k from the first list and ℓ
/// from the second, that is linearly independent.
fn first_independent_pair(
    first: &[usize],
    first_vecs: &[ExponentVector],
    second: &[usize],
    second_vecs: &[ExponentVector],
) -> Option<(ExponentVector, ExponentVector)> {
    first.iter().find_map(|&i| {
        second
            .iter()
            .find(|&&j| linearly_independent(&first_vecs[i], &second_vecs[j]))
            .map(|&j| (first_vecs[i].clone(), second_vecs[j].clone()))
    })
}

/// Enumerates one of the sets A–E over the field of `ctx`.
pub fn enumerate(
    set: LocusSet,
    problem: &LocusProblem,
    ctx: &Arc<FieldCtx>,
    k_box: u64,
    l_box: u64,
) -> Result<LocusReport> {
    if k_box == 0 || l_box == 0 {
        return Err(Error::InvalidArgument("box sizes must be at least 1".into()));
    }
    let needs_curve = matches!(set, LocusSet::B | LocusSet::C | LocusSet::E);
    let curve = match (&problem.curve, needs_curve) {
        (Some(e), true) => Some(PointLifter::new(&e.reduce(ctx)?)),
        (None, true) => return Err(Error::InvalidArgument(format!("set {set} needs a curve"))),
        _ => None,
    };
    let (first_funcs, first_mode, second_funcs, second_mode) = match set {
        LocusSet::A => (&problem.phis, Mode::Mult, &problem.phis, Mode::Mult),
        LocusSet::D => (&problem.phis, Mode::Mult, &problem.rhos, Mode::Mult),
        LocusSet::B => (&problem.phis, Mode::Mult, &problem.rhos, Mode::Linear),
        LocusSet::C => (&problem.rhos, Mode::Linear, &problem.rhos, Mode::Linear),
        LocusSet::E => (&problem.phis, Mode::Linear, &problem.rhos, Mode::Linear),
    };
    if first_funcs.is_empty() || second_funcs.is_empty() {
        return Err(Error::InvalidArgument(format!("set {set} needs nonempty function lists")));
    }
    let first = Side::new(first_funcs, first_mode, k_box, ctx)?;
    let second = Side::new(second_funcs, second_mode, l_box, ctx)?;
    let work = (first.vectors.len() + second.vectors.len()) as u128 * ctx.q() as u128;
    if work > ENUMERATION_BUDGET {
        return Err(Error::BudgetExceeded {
            what: format!("enumeration of set {set}"),
            needed: work,
            budget: ENUMERATION_BUDGET,
        });
    }
    let two_relations = matches!(set, LocusSet::A | LocusSet::C);
    let mut report = LocusReport {
        set,
        p: ctx.p(),
        d: ctx.d(),
        k_box,
        l_box,
        elements: Vec::new(),
        excluded: Vec::new(),
        prediction: None,
    };
    if two_relations && first_funcs.len() < 2 {
        // no two independent vectors exist in Z^1
        return Ok(report);
    }

    let outcomes: Vec<Result<Option<std::result::Result<LocusElement, ExcludedPoint>>>> = (0
        ..ctx.q())
        .into_par_iter()
        .map(|alpha| {
            let label = || ctx.elem(alpha).to_string();
            let v1 = first.values(ctx, alpha);
            let v2 = second.values(ctx, alpha);
            let (v1, v2) = match (v1, v2) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(r), _) | (_, Err(r)) => {
                    return Ok(Some(Err(ExcludedPoint {
                        alpha: label(),
                        code: alpha,
                        reason: r,
                    })))
                }
            };
            let e1 = first.evaluate(ctx, curve.as_ref(), &v1)?;
            if e1.relations.is_empty() {
                return Ok(None);
            }
            let e2 = second.evaluate(ctx, curve.as_ref(), &v2)?;
            if e2.relations.is_empty() {
                return Ok(None);
            }
            let witnesses = if two_relations {
                match first_independent_pair(
                    &e1.relations,
                    &first.vectors,
                    &e2.relations,
                    &second.vectors,
                ) {
                    Some((k, l)) => vec![DependenceWitness::pair(first.kind(), k, l)],
                    None => return Ok(None),
                }
            } else {
                vec![
                    DependenceWitness::single(first.kind(), first.vectors[e1.relations[0]].clone()),
                    DependenceWitness::single(second.kind(), second.vectors[e2.relations[0]].clone()),
                ]
            };
            Ok(Some(Ok(LocusElement {
                alpha: label(),
                code: alpha,
                witnesses,
            })))
        })
        .collect();
    for o in outcomes {
        match o? {
            Some(Ok(e)) => report.elements.push(e),
            Some(Err(x)) => report.excluded.push(x),
            None => {}
        }
    }
    Ok(report)
}

pub fn enumerate_a(phis: &[RatFunc], ctx: &Arc<FieldCtx>, k_box: u64, l_box: u64) -> Result<LocusReport> {
    let problem = LocusProblem::new(phis.to_vec(), Vec::new(), None);
    enumerate(LocusSet::A, &problem, ctx, k_box, l_box)
}

pub fn enumerate_d(
    phis: &[RatFunc],
    rhos: &[RatFunc],
    ctx: &Arc<FieldCtx>,
    k_box: u64,
    l_box: u64,
) -> Result<LocusReport> {
    let problem = LocusProblem::new(phis.to_vec(), rhos.to_vec(), None);
    enumerate(LocusSet::D, &problem, ctx, k_box, l_box)
}

pub fn enumerate_b(
    phis: &[RatFunc],
    rhos: &[RatFunc],
    curve: &CurveQ,
    ctx: &Arc<FieldCtx>,
    k_box: u64,
    l_box: u64,
) -> Result<LocusReport> {
    let problem = LocusProblem::new(phis.to_vec(), rhos.to_vec(), Some(curve.clone()));
    enumerate(LocusSet::B, &problem, ctx, k_box, l_box)
}

pub fn enumerate_c(
    rhos: &[RatFunc],
    curve: &CurveQ,
    ctx: &Arc<FieldCtx>,
    k_box: u64,
    l_box: u64,
) -> Result<LocusReport> {
    let problem = LocusProblem::new(Vec::new(), rhos.to_vec(), Some(curve.clone()));
    enumerate(LocusSet::C, &problem, ctx, k_box, l_box)
}

pub fn enumerate_e(
    phis: &[RatFunc],
    rhos: &[RatFunc],
    curve: &CurveQ,
    ctx: &Arc<FieldCtx>,
    k_box: u64,
    l_box: u64,
) -> Result<LocusReport> {
    let problem = LocusProblem::new(phis.to_vec(), rhos.to_vec(), Some(curve.clone()));
    enumerate(LocusSet::E, &problem, ctx, k_box, l_box)
}

/// Which orders an order sweep compares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SweepMode {
    /// ord φ(α) and ord ϱ(α) in the multiplicative group.
    MultMult,
    /// ord φ(α) and the order of the point (ϱ(α), β).
    MultLin,
    /// Orders of the points (φ(α), ·) and (ϱ(α), ·).
    LinLin,
}

/// Threshold t(p) below which α is reported.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Threshold {
    Fixed(u64),
    /// ⌊c·(log p)^e⌋
    LogPower { c: f64, e: f64 },
}

impl Threshold {
    pub fn at(&self, p: u64) -> u64 {
        match *self {
            Threshold::Fixed(t) => t,
            Threshold::LogPower { c, e } => (c * (p as f64).ln().powf(e)).floor().max(0.0) as u64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepHit {
    pub alpha: u64,
    pub ord_phi: u64,
    pub ord_rho: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub p: u64,
    pub threshold: u64,
    pub count: usize,
    pub hits: Vec<SweepHit>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub mode: SweepMode,
    pub threshold: Threshold,
    pub rows: Vec<SweepRow>,
    /// Primes skipped for bad reduction of the functions or the curve.
    pub skipped: Vec<u64>,
}

impl SweepReport {
    pub fn total_hits(&self) -> usize {
        self.rows.iter().map(|r| r.count).sum()
    }

    /// CSV with header p,threshold,alpha,ord_phi,ord_rho.
    pub fn csv(&self) -> String {
        let mut out = String::from("p,threshold,alpha,ord_phi,ord_rho\n");
        for r in &self.rows {
            for h in &r.hits {
                out.push_str(&format!("{},{},{},{},{}\n", r.p, r.threshold, h.alpha, h.ord_phi, h.ord_rho));
            }
        }
        out
    }
}

/// Primes p in [pmin, pmax] and α ∈ F_p with max of the two orders at most
/// t(p); zeros and poles excluded as in the enumerators.
pub fn order_sweep(
    phi: &RatFunc,
    rho: &RatFunc,
    curve: Option<&CurveQ>,
    mode: SweepMode,
    threshold: Threshold,
    pmin: u64,
    pmax: u64,
) -> Result<SweepReport> {
    if pmax > SWEEP_PMAX {
        return Err(Error::BudgetExceeded {
            what: "order sweep primes".into(),
            needed: pmax as u128,
            budget: SWEEP_PMAX as u128,
        });
    }
    if mode != SweepMode::MultMult && curve.is_none() {
        return Err(Error::InvalidArgument("elliptic orders need a curve".into()));
    }
    let primes: Vec<u64> = (pmin.max(2)..=pmax).filter(|&p| is_prime_u64(p)).collect();
    let rows: Vec<Result<Option<SweepRow>>> = primes
        .par_iter()
        .map(|&p| sweep_prime(phi, rho, curve, mode, threshold.at(p), p))
        .collect();
    let mut report = SweepReport {
        mode,
        threshold,
        rows: Vec::new(),
        skipped: Vec::new(),
    };
    for (p, row) in primes.into_iter().zip(rows) {
        match row? {
            Some(r) => report.rows.push(r),
            None => report.skipped.push(p),
        }
    }
    Ok(report)
}

fn sweep_prime(
    phi: &RatFunc,
    rho: &RatFunc,
    curve: Option<&CurveQ>,
    mode: SweepMode,
    t: u64,
    p: u64,
) -> Result<Option<SweepRow>> {
    let ctx = FieldCtx::new(p, 1)?;
    let (fphi, frho) = match (ReducedFunc::new(phi, &ctx), ReducedFunc::new(rho, &ctx)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return Ok(None),
    };
    let lifter = match (mode, curve) {
        (SweepMode::MultMult, _) | (_, None) => None,
        (_, Some(e)) => match e.reduce(&ctx) {
            Ok(c) => Some(PointLifter::new(&c)),
            Err(Error::BadReduction { .. }) => return Ok(None),
            Err(err) => return Err(err),
        },
    };
    let phi_mult = mode != SweepMode::LinLin;
    let rho_mult = mode == SweepMode::MultMult;
    let order = |f: &ReducedFunc, mult: bool, alpha: u64| -> Result<Option<u64>> {
        match f.eval(&ctx, alpha) {
            Value::Pole => Ok(None),
            Value::Defined(0) if mult => Ok(None),
            Value::Defined(v) if mult => Ok(Some(ctx.order_of_code(v))),
            Value::Defined(v) => lifter.as_ref().expect("curve").point_order(v).map(Some),
        }
    };
    let mut hits = Vec::new();
    if t > 0 {
        for alpha in 0..p {
            let Some(a) = order(&fphi, phi_mult, alpha)? else {
                continue;
            };
            if a > t {
                continue;
            }
            let Some(b) = order(&frho, rho_mult, alpha)? else {
                continue;
            };
            if b <= t {
                hits.push(SweepHit {
                    alpha,
                    ord_phi: a,
                    ord_rho: b,
                });
            }
        }
    }
    Ok(Some(SweepRow {
        p,
        threshold: t,
        count: hits.len(),
        hits,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    fn elems(ctx: &Arc<FieldCtx>, codes: &[u64]) -> Vec<FqElem> {
        codes.iter().map(|&c| ctx.elem(c)).collect()
    }

    #[test]
    fn mult_dependence_examples() {
        let f7 = FieldCtx::new(7, 1).unwrap();
        let w = is_k_mult_dependent(&elems(&f7, &[2, 4]), 2).unwrap().unwrap();
        assert_eq!(w, ev(&[1, -2]));
        assert_eq!(mult_product(&f7, &[2, 4], &w), 1);
        assert_eq!(mult_product(&f7, &[2, 4], &ev(&[2, -1])), 1);
        assert_eq!(is_k_mult_dependent(&elems(&f7, &[1]), 1).unwrap(), Some(ev(&[1])));
        assert_eq!(is_k_mult_dependent(&elems(&f7, &[3]), 2).unwrap(), None);
        assert_eq!(mult_dependence_by_dlog(&elems(&f7, &[2, 4]), 2).unwrap(), Some(w));
        assert_eq!(
            is_k_mult_dependent(&elems(&f7, &[0]), 1),
            Err(Error::ZeroElement)
        );
    }

    #[test]
    fn linear_dependence_examples() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        let e = CurveQ::from_ints(0, 1).unwrap().reduce(&f5).unwrap();
        let pts = [PointFq::Affine(0, 1), PointFq::Affine(0, 4)];
        assert_eq!(linear_dependence_of_points(&e, &pts, 1).unwrap(), Some(ev(&[1, 1])));
        let zero = elems(&f5, &[0]);
        assert_eq!(is_l_linear_dependent(&zero, &e, 3).unwrap(), Some(ev(&[3])));
        assert_eq!(is_l_linear_dependent(&zero, &e, 2).unwrap(), None);
    }

    #[test]
    fn set_a_small() {
        let f7 = FieldCtx::new(7, 1).unwrap();
        let rep = enumerate_a(&[rf("X"), rf("X+1")], &f7, 2, 2).unwrap();
        let two = rep.elements.iter().find(|e| e.code == 2).expect("2 ∈ A");
        let w = &two.witnesses[0];
        assert_eq!(w.kind, WitnessKind::Multiplicative);
        let (k, l) = (&w.vector, w.second.as_ref().unwrap());
        assert!(linearly_independent(k, l));
        for v in [k, l] {
            assert_eq!(mult_product(&f7, &[2, 3], v), 1);
        }
        // 2 is a root of X² + X + 1 mod 7
        assert_eq!((4 + 2 + 1) % 7, 0);
        let excluded: Vec<u64> = rep.excluded.iter().map(|x| x.code).collect();
        assert_eq!(excluded, vec![0, 6]);

        let f11 = FieldCtx::new(11, 1).unwrap();
        assert!(enumerate_a(&[rf("X")], &f11, 1, 1).unwrap().elements.is_empty());
    }

    #[test]
    fn set_b_small() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        let e = CurveQ::from_ints(0, 1).unwrap();
        let rep = enumerate_b(&[rf("X")], &[rf("X")], &e, &f5, 3, 3).unwrap();
        assert!(rep.codes().contains(&4));
        let four = rep.elements.iter().find(|x| x.code == 4).unwrap();
        assert_eq!(four.witnesses[0].vector, ev(&[2]));
        assert_eq!(four.witnesses[1].vector, ev(&[2]));
    }

    #[test]
    fn sweep_examples() {
        let rep = order_sweep(
            &rf("X"),
            &rf("X+1"),
            None,
            SweepMode::MultMult,
            Threshold::Fixed(2),
            7,
            7,
        )
        .unwrap();
        assert_eq!(rep.rows.len(), 1);
        assert_eq!(rep.rows[0].count, 0);
        let none = order_sweep(
            &rf("X"),
            &rf("X+1"),
            None,
            SweepMode::MultMult,
            Threshold::Fixed(0),
            2,
            50,
        )
        .unwrap();
        assert_eq!(none.total_hits(), 0);
        assert!(order_sweep(
            &rf("X"),
            &rf("X"),
            None,
            SweepMode::MultMult,
            Threshold::Fixed(1),
            2,
            20_000
        )
        .is_err());
    }

    #[test]
    fn extension_field_sets() {
        let f49 = FieldCtx::new(7, 2).unwrap();
        let rep = enumerate_a(&[rf("X"), rf("X+1")], &f49, 2, 2).unwrap();
        for el in &rep.elements {
            let w = &el.witnesses[0];
            let x = el.code;
            let xs = [x, f49.add(x, 1)];
            assert_eq!(mult_product(&f49, &xs, &w.vector), 1);
            assert_eq!(mult_product(&f49, &xs, w.second.as_ref().unwrap()), 1);
        }
        let e = CurveQ::from_ints(0, 1).unwrap();
        let c = enumerate_c(&[rf("X"), rf("X+1")], &e, &f49, 2, 2).unwrap();
        assert_eq!(c.d, 2);
    }
}
