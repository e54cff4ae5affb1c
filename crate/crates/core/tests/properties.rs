//! Invariants over randomized inputs.

mod common;

use common::*;
use multdep_core::ecurve::{CurveFq, CurveQ, PointFq};
use multdep_core::ffield::FieldCtx;
use multdep_core::locus::{
    enumerate_a, enumerate_b, is_k_mult_dependent, linear_dependence_of_points,
    mult_dependence_by_dlog, mult_product, point_combination, PointLifter, WitnessKind,
};
use multdep_core::poly::{IntPoly, RatFunc};
use multdep_core::relations::{
    omega_parts, relation_poly, resultant_table, ExponentVector, RelationSystem,
};
use multdep_core::semaev::{is_symmetric, proportional, verify_zero_set, SummationBuilder};
use multdep_core::Error;
use proptest::prelude::*;

const SMALL_PRIMES: [u64; 8] = [5, 7, 11, 13, 17, 19, 23, 29];

fn nonconstant_poly() -> impl Strategy<Value = IntPoly> {
    (prop::collection::vec(-6i64..=6, 1..=2), 1i64..=4)
        .prop_map(|(mut low, lead)| {
            low.push(lead);
            IntPoly::from_i64s(&low)
        })
}

fn rat_func() -> impl Strategy<Value = RatFunc> {
    (nonconstant_poly(), prop::option::of(nonconstant_poly())).prop_map(|(n, d)| match d {
        Some(d) => RatFunc::new(n, d).unwrap(),
        None => RatFunc::from_poly(n),
    })
}

fn exponent_vector(m: usize, bound: i64) -> impl Strategy<Value = ExponentVector> {
    prop::collection::vec(-bound..=bound, m).prop_map(ExponentVector::new)
}

fn omega(phis: &[RatFunc], k: &ExponentVector) -> RatFunc {
    let (f, g) = omega_parts(phis, k).unwrap();
    RatFunc::new(f, g).unwrap()
}

fn eval_rat_mod(f: &RatFunc, x: u64, p: u64) -> Option<u64> {
    let (n, d) = (eval_mod(f.num(), x, p), eval_mod(f.den(), x, p));
    (d != 0 && n != 0).then(|| n * multdep_core::arith::inv_mod(d, p) % p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn omega_is_multiplicative(
        phis in prop::collection::vec(rat_func(), 2),
        k in exponent_vector(2, 3),
        l in exponent_vector(2, 3),
    ) {
        prop_assert_eq!(omega(&phis, &k.add(&l)), omega(&phis, &k).mul(&omega(&phis, &l)));
    }

    #[test]
    fn relations_vanish_only_on_dependence(
        phis in prop::collection::vec(rat_func(), 2),
        k in exponent_vector(2, 3),
        pi in 0usize..SMALL_PRIMES.len(),
    ) {
        prop_assume!(!k.is_zero());
        let p = SMALL_PRIMES[pi];
        let r = match relation_poly(&phis, &k) {
            Err(Error::MultiplicativelyDependent) => return Ok(()),
            other => other.unwrap(),
        };
        let (_, g) = omega_parts(&phis, &k).unwrap();
        let ctx = FieldCtx::new(p, 1).unwrap();
        for alpha in 0..p {
            let values: Option<Vec<u64>> = phis.iter().map(|f| eval_rat_mod(f, alpha, p)).collect();
            let Some(values) = values else { continue };
            if eval_mod(&g, alpha, p) == 0 {
                continue;
            }
            let product_is_one = mult_product(&ctx, &values, &k) == 1;
            prop_assert_eq!(eval_mod(&r, alpha, p) == 0, product_is_one, "alpha={}", alpha);
        }
    }

    #[test]
    fn records_respect_hadamard_and_oracle(phis in prop::collection::vec(nonconstant_poly(), 2)) {
        let phis: Vec<RatFunc> = phis.into_iter().map(RatFunc::from_poly).collect();
        let system = RelationSystem::mult_mult(phis.clone()).unwrap();
        let table = match resultant_table(&system, 1, 1) {
            Err(Error::MultiplicativelyDependent | Error::ZeroResultant { .. }) => return Ok(()),
            other => other.unwrap(),
        };
        prop_assert!(table.all_within_bounds());
        for rec in &table.records {
            prop_assert!(rec.log_r <= rec.log_bound + 1e-9);
        }
        let product: num_bigint::BigInt = table.records.iter().map(|r| r.r.clone()).product();
        prop_assert_eq!(product, table.t.clone());
    }

    #[test]
    fn box_search_matches_dlog(
        p in prop::sample::select(vec![2u64, 3, 101, 997, 4099, 9973]),
        codes in prop::collection::vec(1u64..u64::MAX, 1..=3),
        bound in 1u64..=5,
    ) {
        let ctx = FieldCtx::new(p, 1).unwrap();
        let xs: Vec<_> = codes.iter().map(|&c| ctx.elem(1 + c % (p - 1))).collect();
        prop_assert_eq!(
            is_k_mult_dependent(&xs, bound).unwrap(),
            mult_dependence_by_dlog(&xs, bound).unwrap()
        );
    }

    #[test]
    fn box_search_matches_dlog_in_extensions(
        field in prop::sample::select(vec![(2u64, 5u32), (3, 4), (7, 2), (31, 2), (97, 2)]),
        codes in prop::collection::vec(any::<u64>(), 1..=3),
        bound in 1u64..=4,
    ) {
        let ctx = FieldCtx::new(field.0, field.1).unwrap();
        let xs: Vec<_> = codes.iter().map(|&c| ctx.elem(1 + c % (ctx.q() - 1))).collect();
        prop_assert_eq!(
            is_k_mult_dependent(&xs, bound).unwrap(),
            mult_dependence_by_dlog(&xs, bound).unwrap()
        );
    }

    #[test]
    fn negating_points_preserves_dependence(
        pi in 0usize..SMALL_PRIMES.len(),
        a in 0u64..29,
        b in 0u64..29,
        picks in prop::collection::vec(any::<prop::sample::Index>(), 2),
        flip in any::<bool>(),
        bound in 1u64..=3,
    ) {
        let p = SMALL_PRIMES[pi];
        let ctx = FieldCtx::new(p, 1).unwrap();
        let Ok(curve) = CurveFq::new(&ctx, a % p, b % p) else { return Ok(()) };
        let affine = curve.affine_points();
        prop_assume!(!affine.is_empty());
        let points: Vec<PointFq> = picks.iter().map(|i| affine[i.index(affine.len())]).collect();
        let mut flipped = points.clone();
        if flip {
            flipped[0] = curve.neg(flipped[0]);
        } else {
            flipped = flipped.iter().map(|&q| curve.neg(q)).collect();
        }
        let before = linear_dependence_of_points(&curve, &points, bound).unwrap();
        let after = linear_dependence_of_points(&curve, &flipped, bound).unwrap();
        prop_assert_eq!(before.is_some(), after.is_some());
        if let Some(k) = before {
            let mut e = k.entries().to_vec();
            if flip {
                e[0] = -e[0];
            }
            let moved = ExponentVector::new(e);
            prop_assert!(point_combination(&curve, &flipped, &moved).is_infinity());
        }
    }

    #[test]
    fn zero_sets_agree_for_three_points(pi in 0usize..3, a in 0u64..11, b in 0u64..11) {
        let p = [5u64, 7, 11][pi];
        let ctx = FieldCtx::new(p, 1).unwrap();
        let Ok(curve) = CurveFq::new(&ctx, a % p, b % p) else { return Ok(()) };
        let report = verify_zero_set(&curve, 3).unwrap();
        prop_assert!(report.mismatches.is_empty(), "{:?}", report.mismatches);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn locus_witnesses_replay(
        phis in prop::collection::vec(nonconstant_poly(), 2),
        pi in 0usize..SMALL_PRIMES.len(),
    ) {
        let p = SMALL_PRIMES[pi];
        let ctx = FieldCtx::new(p, 1).unwrap();
        let phis: Vec<RatFunc> = phis.into_iter().map(RatFunc::from_poly).collect();
        let Ok(report) = enumerate_a(&phis, &ctx, 2, 2) else { return Ok(()) };
        for el in &report.elements {
            let values: Vec<u64> = phis.iter().map(|f| eval_rat_mod(f, el.code, p).unwrap()).collect();
            for w in &el.witnesses {
                prop_assert_eq!(w.kind, WitnessKind::Multiplicative);
                let second = w.second.as_ref().unwrap();
                prop_assert_eq!(mult_product(&ctx, &values, &w.vector), 1);
                prop_assert_eq!(mult_product(&ctx, &values, second), 1);
            }
        }

        let curve = CurveQ::from_ints(0, 1).unwrap();
        let rhos = vec![RatFunc::x()];
        let Ok(report) = enumerate_b(&phis[..1], &rhos, &curve, &ctx, 3, 3) else { return Ok(()) };
        let lifter = PointLifter::new(&curve.reduce(&ctx).unwrap());
        for el in &report.elements {
            let lifted = lifter.lift(&[el.code]).unwrap();
            for w in &el.witnesses {
                match w.kind {
                    WitnessKind::Multiplicative => {
                        let v = eval_rat_mod(&phis[0], el.code, p).unwrap();
                        prop_assert_eq!(mult_product(&ctx, &[v], &w.vector), 1);
                    }
                    WitnessKind::Elliptic => {
                        let sum = point_combination(lifted.curve, &lifted.points, &w.vector);
                        prop_assert!(sum.is_infinity());
                    }
                }
            }
        }
    }
}

#[test]
fn summation_polynomials_are_symmetric_with_expected_degrees() {
    for (a, b) in [(0, 1), (2, -3), (-1, 1)] {
        let mut builder = SummationBuilder::from_ints(a.into(), b.into());
        for n in 2..=5 {
            let sigma = builder.get(n).unwrap();
            // σ_2 = X_1 − X_2 is only symmetric up to sign
            assert_eq!(is_symmetric(&sigma), n >= 3, "σ_{n} for a={a}, b={b}");
            for i in 0..n {
                assert_eq!(sigma.partial_degree(i), 1 << (n - 2), "σ_{n} variable {i}");
            }
        }
    }
}

#[test]
fn every_split_gives_the_same_summation_polynomial() {
    let mut builder = SummationBuilder::from_ints(0.into(), 1.into());
    for n in 4..=6 {
        let canonical = builder.get(n).unwrap();
        let last = if n == 6 { 1 } else { n - 3 };
        for k in 1..=last {
            let other = builder.split(n, k).unwrap();
            assert!(proportional(&canonical, &other), "n={n}, k={k}");
        }
    }
}

#[test]
fn zero_sets_agree_for_four_points() {
    for p in [5, 7] {
        let ctx = FieldCtx::new(p, 1).unwrap();
        for (a, b) in [(0, 1), (1, 1), (2, 3)] {
            let Ok(curve) = CurveFq::new(&ctx, a, b) else { continue };
            let report = verify_zero_set(&curve, 4).unwrap();
            assert!(report.mismatches.is_empty(), "p={p}, a={a}, b={b}");
            assert!(report.zeros > 0);
        }
    }
}

/// h(U_ℓ) grows at most quadratically in ℓ: the ratio h/ℓ² stays within
/// twice its early maximum.
#[test]
fn theta_heights_grow_quadratically() {
    let curve = CurveQ::from_ints(0, 1).unwrap();
    let rhos = vec!["X+2".parse::<RatFunc>().unwrap()];
    let mut builder = multdep_core::relations::ThetaBuilder::new(&curve, &rhos, 16);
    let ratios: Vec<f64> = (1..=16)
        .map(|l| {
            let u = builder.numerator(&ExponentVector::new(vec![l])).unwrap();
            u.log_height() / (l * l) as f64
        })
        .collect();
    let early = ratios[..8].iter().cloned().fold(0.0, f64::max);
    assert!(early > 0.0);
    for (i, r) in ratios.iter().enumerate().skip(8) {
        assert!(*r <= 2.0 * early, "ℓ={}: {r} vs {early}", i + 1);
    }
}
