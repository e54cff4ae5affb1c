//! One runner per subcommand. Each returns its artifacts as text.

use multdep_core::arith::ln_abs;
use multdep_core::ecurve::{CurveFq, CurveQ, DivPoly, DivPolyTable};
use multdep_core::ffield::FieldCtx;
use multdep_core::locus::{enumerate, LocusProblem, LocusReport, LocusSet, CSV_HEADER};
use multdep_core::relations::{resultant_table, RelationSystem, ResultantTable, TFactorization};
use multdep_core::semaev::{
    canonical_split, golden_text, is_symmetric, summation_height_profile_with, verify_zero_set_with,
    SummationBuilder, SummationHeight,
};
use multdep_core::Error;
use serde::Serialize;

use crate::job::{JobSpec, Task};
use crate::{json_document, text_document, verify, Artifact, Failure, RunOutput};

/// Polynomials are printed in full only up to this index.
pub const POLY_TEXT_NMAX: usize = 12;

/// Mismatching tuples listed per zero-set check.
const MISMATCH_SAMPLE: usize = 10;

pub fn execute(job: &JobSpec, task: Task) -> Result<RunOutput, Failure> {
    match task {
        Task::Divpoly { curve, nmax } => divpoly(job, &curve, nmax),
        Task::Semaev { curve, n, primes } => semaev(job, &curve, n, &primes),
        Task::Relate {
            system,
            k_box,
            l_box,
        } => relate(job, &system, k_box, l_box),
        Task::Locus {
            set,
            phis,
            rhos,
            curve,
            k_box,
            l_box,
            primes,
            degree,
        } => {
            let problem = LocusProblem::new(phis, rhos, curve);
            locus(job, set, &problem, k_box, l_box, &primes, degree)
        }
        Task::Sweep {
            phi,
            rho,
            curve,
            mode,
            threshold,
            pmin,
            pmax,
        } => {
            let report =
                multdep_core::locus::order_sweep(&phi, &rho, curve.as_ref(), mode, threshold, pmin, pmax)?;
            let summary = json_document(job, &report);
            Ok(finish(job, summary, vec![("sweep.csv", report.csv())], true))
        }
        Task::Verify { criteria, seed } => {
            let report = verify::run(&criteria, seed);
            let summary = json_document(job, &report);
            let success = report.passed;
            Ok(finish(job, summary, vec![("verify.csv", report.csv())], success))
        }
    }
}

fn finish(job: &JobSpec, summary: String, extra: Vec<(&str, String)>, success: bool) -> RunOutput {
    let mut artifacts = vec![Artifact {
        name: format!("{}.json", job.subcommand),
        contents: summary.clone(),
    }];
    artifacts.extend(extra.into_iter().map(|(name, body)| Artifact {
        name: name.to_string(),
        contents: text_document(job, &body),
    }));
    RunOutput {
        summary,
        artifacts,
        success,
    }
}

#[derive(Serialize)]
struct DivpolyRow {
    n: usize,
    degree: usize,
    leading: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected_leading: Option<i64>,
    /// Least positive integer clearing the denominators of Ψ_n.
    clearing: String,
    h_psi: f64,
    h_phi: f64,
    h_psi_over_n2: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    psi: Option<String>,
}

#[derive(Serialize)]
struct DivpolyResult {
    curve: String,
    integral: bool,
    nmax: usize,
    /// Degree and leading coefficient as predicted, for integral curves.
    #[serde(skip_serializing_if = "Option::is_none")]
    shape_ok: Option<bool>,
    rows: Vec<DivpolyRow>,
}

fn divpoly(job: &JobSpec, curve: &CurveQ, nmax: usize) -> Result<RunOutput, Failure> {
    let table = DivPolyTable::new(curve, nmax);
    let integral = curve.is_integral();
    let rows: Vec<DivpolyRow> = (1..=nmax)
        .map(|n| {
            let d = table.get(n);
            let (deg, lc) = DivPoly::expected_shape(n);
            let h_psi = d.poly.log_height();
            DivpolyRow {
                n,
                degree: d.poly.deg(),
                leading: d.poly.leading().map(|c| c.to_string()).unwrap_or_default(),
                expected_degree: integral.then_some(deg),
                expected_leading: integral.then_some(lc),
                clearing: d.poly_clearing.to_string(),
                h_psi,
                h_phi: d.phi.log_height(),
                h_psi_over_n2: h_psi / (n * n) as f64,
                psi: (n <= POLY_TEXT_NMAX).then(|| d.poly.to_string()),
            }
        })
        .collect();
    let shape_ok = integral.then(|| {
        rows.iter().all(|r| {
            let (deg, lc) = DivPoly::expected_shape(r.n);
            r.degree == deg && r.leading == lc.to_string()
        })
    });
    let mut csv = String::from("n,degree,h_psi,h_phi,h_psi_over_n2\n");
    for r in &rows {
        csv.push_str(&format!("{},{},{},{},{}\n", r.n, r.degree, r.h_psi, r.h_phi, r.h_psi_over_n2));
    }
    let result = DivpolyResult {
        curve: curve.to_string(),
        integral,
        nmax,
        shape_ok,
        rows,
    };
    Ok(finish(job, json_document(job, &result), vec![("divpoly_heights.csv", csv)], true))
}

#[derive(Serialize)]
struct ZeroSetRow {
    q: u64,
    tuples: u64,
    zeros: u64,
    mismatches: usize,
    sample_mismatches: Vec<Vec<u64>>,
}

#[derive(Serialize)]
struct Skipped {
    p: u64,
    reason: String,
}

#[derive(Serialize)]
struct SemaevResult {
    curve: String,
    /// Coefficients of the integral model σ_n is built for.
    model_a: String,
    model_b: String,
    n: usize,
    split: usize,
    terms: usize,
    total_degree: u32,
    partial_degrees: Vec<u32>,
    symmetric: bool,
    max_coeff: String,
    h: f64,
    profile: Vec<SummationHeight>,
    zero_sets: Vec<ZeroSetRow>,
    skipped: Vec<Skipped>,
}

fn semaev(job: &JobSpec, curve: &CurveQ, n: usize, primes: &[u64]) -> Result<RunOutput, Failure> {
    let model = curve.integral_model();
    let mut builder = SummationBuilder::from_ints(model.a.clone(), model.b.clone());
    let profile = summation_height_profile_with(&mut builder, n)?;
    let sigma = builder.get(n)?;
    let mut zero_sets = Vec::new();
    let mut skipped = Vec::new();
    for &p in primes {
        let ctx = FieldCtx::new(p, 1)?;
        let reduced = CurveFq::new(&ctx, ctx.int_code(&model.a), ctx.int_code(&model.b));
        let Ok(reduced) = reduced else {
            skipped.push(Skipped {
                p,
                reason: "bad reduction".into(),
            });
            continue;
        };
        let report = verify_zero_set_with(&reduced, n, &sigma)?;
        zero_sets.push(ZeroSetRow {
            q: report.q,
            tuples: report.tuples,
            zeros: report.zeros,
            mismatches: report.mismatches.len(),
            sample_mismatches: report.mismatches.into_iter().take(MISMATCH_SAMPLE).collect(),
        });
    }
    let result = SemaevResult {
        curve: curve.to_string(),
        model_a: model.a.to_string(),
        model_b: model.b.to_string(),
        n,
        split: if n >= 4 { canonical_split(n) } else { 0 },
        terms: sigma.term_count(),
        total_degree: sigma.total_degree(),
        partial_degrees: (0..n).map(|i| sigma.partial_degree(i)).collect(),
        symmetric: is_symmetric(&sigma),
        max_coeff: sigma.height_max().to_string(),
        h: sigma.log_height(),
        profile,
        zero_sets,
        skipped,
    };
    let text = golden_text(&sigma);
    Ok(finish(job, json_document(job, &result), vec![(&format!("sigma_{n}.txt"), text)], true))
}

#[derive(Serialize)]
struct RelateResult<'a> {
    table: &'a ResultantTable,
    factorization: TFactorization,
    all_within_hadamard: bool,
}

fn relate(job: &JobSpec, system: &RelationSystem, k_box: u64, l_box: u64) -> Result<RunOutput, Failure> {
    let table = resultant_table(system, k_box, l_box)?;
    let result = RelateResult {
        factorization: table.factorization(),
        all_within_hadamard: table.all_within_bounds(),
        table: &table,
    };
    let mut csv = String::from("k,l,abs_r,log_r,log_bound,deg_first,deg_second\n");
    for r in &table.records {
        csv.push_str(&format!(
            "\"{}\",\"{}\",{},{},{},{},{}\n",
            r.k, r.l, r.r, r.log_r, r.log_bound, r.deg_first, r.deg_second
        ));
    }
    Ok(finish(job, json_document(job, &result), vec![("relate_records.csv", csv)], true))
}

#[derive(Serialize)]
struct TableSummary {
    t: String,
    log_t: f64,
    w: String,
    records: usize,
}

#[derive(Serialize)]
struct LocusSummary {
    primes: usize,
    elements: usize,
    /// Primes where #set exceeds v_p(T) + deg W.
    bound_violations: Vec<u64>,
    /// Non-exceptional primes with elements outside the roots of W.
    unexplained_good_primes: Vec<u64>,
}

#[derive(Serialize)]
struct LocusResult {
    set: LocusSet,
    k_box: u64,
    l_box: u64,
    degree: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<TableSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    comparison_error: Option<String>,
    summary: LocusSummary,
    skipped: Vec<Skipped>,
    reports: Vec<LocusReport>,
}

/// The relation system whose resultant table predicts a set, if any.
fn predicting_system(set: LocusSet, problem: &LocusProblem) -> Option<Result<RelationSystem, Error>> {
    let curve = || problem.curve.clone().ok_or(Error::InvalidArgument("curve required".into()));
    let system = match set {
        LocusSet::A => RelationSystem::mult_mult(problem.phis.clone()),
        LocusSet::B => curve().and_then(|e| RelationSystem::mult_lin(problem.phis.clone(), e, problem.rhos.clone())),
        LocusSet::C => curve().and_then(|e| RelationSystem::lin_lin(e, problem.rhos.clone())),
        LocusSet::D | LocusSet::E => return None,
    };
    Some(system)
}

fn locus(
    job: &JobSpec,
    set: LocusSet,
    problem: &LocusProblem,
    k_box: u64,
    l_box: u64,
    primes: &[u64],
    degree: u32,
) -> Result<RunOutput, Failure> {
    let table = predicting_system(set, problem).map(|s| s.and_then(|s| resultant_table(&s, k_box, l_box)));
    let (table, comparison_error) = match table {
        Some(Ok(t)) => (Some(t), None),
        Some(Err(e)) => (None, Some(e.to_string())),
        None => (None, None),
    };
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for &p in primes {
        let ctx = FieldCtx::new(p, degree)?;
        let mut report = match enumerate(set, problem, &ctx, k_box, l_box) {
            Ok(r) => r,
            Err(Error::BadReduction { reason, .. }) => {
                skipped.push(Skipped { p, reason });
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        if let Some(t) = &table {
            report.compare_with(&ctx, t)?;
        }
        reports.push(report);
    }
    let prediction_of = |r: &LocusReport| r.prediction.clone();
    let summary = LocusSummary {
        primes: reports.len(),
        elements: reports.iter().map(|r| r.elements.len()).sum(),
        bound_violations: reports
            .iter()
            .filter(|r| prediction_of(r).is_some_and(|p| !p.within_bound))
            .map(|r| r.p)
            .collect(),
        unexplained_good_primes: reports
            .iter()
            .filter(|r| prediction_of(r).is_some_and(|p| !p.exceptional_prime && !p.unexplained.is_empty()))
            .map(|r| r.p)
            .collect(),
    };
    let mut csv = format!("{CSV_HEADER}\n");
    for r in &reports {
        for row in r.csv_rows() {
            csv.push_str(&row);
            csv.push('\n');
        }
    }
    let result = LocusResult {
        set,
        k_box,
        l_box,
        degree,
        table: table.as_ref().map(|t| TableSummary {
            t: t.t.to_string(),
            log_t: ln_abs(&t.t),
            w: t.w.to_string(),
            records: t.records.len(),
        }),
        comparison_error,
        summary,
        skipped,
        reports,
    };
    Ok(finish(job, json_document(job, &result), vec![("locus.csv", csv)], true))
}
