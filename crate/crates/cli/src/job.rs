//! Job specifications: the TOML/flag input of every run, validated into a
//! typed task before anything is computed.

use std::fmt;

use multdep_core::arith::is_prime_u64;
use multdep_core::ecurve::CurveQ;
use multdep_core::locus::{LocusSet, SweepMode, Threshold};
use multdep_core::poly::{parse_expression, RatFunc};
use multdep_core::relations::{RelationSystem, SystemKind};
use serde::{Deserialize, Serialize};

/// Largest n accepted by `divpoly`.
pub const DIVPOLY_NMAX: usize = 100;

/// Largest n accepted by `semaev`.
pub const SEMAEV_NMAX: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Subcommand {
    Divpoly,
    Semaev,
    Relate,
    Locus,
    Sweep,
    Verify,
}

impl fmt::Display for Subcommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Subcommand::Divpoly => "divpoly",
            Subcommand::Semaev => "semaev",
            Subcommand::Relate => "relate",
            Subcommand::Locus => "locus",
            Subcommand::Sweep => "sweep",
            Subcommand::Verify => "verify",
        };
        f.write_str(name)
    }
}

/// One run, as read from TOML or assembled from flags. Echoed into every
/// artifact header exactly as serialized here.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub subcommand: Subcommand,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub phis: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rhos: Vec<String>,
    #[serde(default, rename = "K", skip_serializing_if = "Option::is_none")]
    pub k_box: Option<u64>,
    #[serde(default, rename = "L", skip_serializing_if = "Option::is_none")]
    pub l_box: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pmin: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pmax: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// divpoly: largest index.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nmax: Option<usize>,
    /// semaev: number of points.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// relate: MULT_MULT, MULT_LIN or LIN_LIN.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    /// locus: one of A–E.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set: Option<String>,
    /// sweep: MULT_MULT, MULT_LIN or LIN_LIN.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    /// sweep: fixed threshold t.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<u64>,
    /// sweep: threshold ⌊c·(log p)^e⌋.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<f64>,
    /// verify: "all" or a comma-separated list of criterion numbers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
}

/// A rejected job: the field at fault and why.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecError {
    pub field: String,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

impl std::error::Error for SpecError {}

fn bad(field: &str, message: impl Into<String>) -> SpecError {
    SpecError {
        field: field.to_string(),
        message: message.into(),
    }
}

/// Validated work for one subcommand.
#[derive(Clone, Debug)]
pub enum Task {
    Divpoly {
        curve: CurveQ,
        nmax: usize,
    },
    Semaev {
        curve: CurveQ,
        n: usize,
        primes: Vec<u64>,
    },
    Relate {
        system: RelationSystem,
        k_box: u64,
        l_box: u64,
    },
    Locus {
        set: LocusSet,
        phis: Vec<RatFunc>,
        rhos: Vec<RatFunc>,
        curve: Option<CurveQ>,
        k_box: u64,
        l_box: u64,
        primes: Vec<u64>,
        degree: u32,
    },
    Sweep {
        phi: RatFunc,
        rho: RatFunc,
        curve: Option<CurveQ>,
        mode: SweepMode,
        threshold: Threshold,
        pmin: u64,
        pmax: u64,
    },
    Verify {
        criteria: Vec<u8>,
        seed: u64,
    },
}

impl JobSpec {
    pub fn new(subcommand: Subcommand) -> Self {
        JobSpec {
            subcommand,
            curve: None,
            phis: Vec::new(),
            rhos: Vec::new(),
            k_box: None,
            l_box: None,
            pmin: None,
            pmax: None,
            degree: None,
            out: None,
            seed: None,
            nmax: None,
            n: None,
            kind: None,
            set: None,
            mode: None,
            t: None,
            c: None,
            e: None,
            suite: None,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, SpecError> {
        toml::from_str(text).map_err(|e| bad("spec", e.message().to_string()))
    }

    /// Single-line JSON echo used in artifact headers.
    pub fn echo(&self) -> String {
        serde_json::to_string(self).expect("job spec serializes")
    }

    /// Names of the optional fields that are set.
    fn present(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let mut note = |name: &'static str, set: bool| {
            if set {
                out.push(name);
            }
        };
        note("curve", self.curve.is_some());
        note("phis", !self.phis.is_empty());
        note("rhos", !self.rhos.is_empty());
        note("K", self.k_box.is_some());
        note("L", self.l_box.is_some());
        note("pmin", self.pmin.is_some());
        note("pmax", self.pmax.is_some());
        note("degree", self.degree.is_some());
        note("seed", self.seed.is_some());
        note("nmax", self.nmax.is_some());
        note("n", self.n.is_some());
        note("kind", self.kind.is_some());
        note("set", self.set.is_some());
        note("mode", self.mode.is_some());
        note("t", self.t.is_some());
        note("c", self.c.is_some());
        note("e", self.e.is_some());
        note("suite", self.suite.is_some());
        out
    }

    fn allowed(&self) -> &'static [&'static str] {
        match self.subcommand {
            Subcommand::Divpoly => &["curve", "nmax"],
            Subcommand::Semaev => &["curve", "n", "pmin", "pmax", "degree"],
            Subcommand::Relate => &["curve", "phis", "rhos", "K", "L", "kind"],
            Subcommand::Locus => &["curve", "phis", "rhos", "K", "L", "pmin", "pmax", "degree", "set"],
            Subcommand::Sweep => &["curve", "phis", "rhos", "pmin", "pmax", "mode", "t", "c", "e"],
            Subcommand::Verify => &["seed", "suite"],
        }
    }

    pub fn validate(&self) -> Result<Task, SpecError> {
        let allowed = self.allowed();
        if let Some(extra) = self.present().into_iter().find(|f| !allowed.contains(f)) {
            return Err(bad(extra, format!("does not apply to {}", self.subcommand)));
        }
        match self.subcommand {
            Subcommand::Divpoly => {
                let nmax = self.nmax.unwrap_or(10);
                if !(1..=DIVPOLY_NMAX).contains(&nmax) {
                    return Err(bad("nmax", format!("must lie in 1..={DIVPOLY_NMAX}")));
                }
                Ok(Task::Divpoly {
                    curve: self.required_curve()?,
                    nmax,
                })
            }
            Subcommand::Semaev => {
                let n = self.n.unwrap_or(4);
                if !(2..=SEMAEV_NMAX).contains(&n) {
                    return Err(bad("n", format!("must lie in 2..={SEMAEV_NMAX}")));
                }
                if self.degree.unwrap_or(1) != 1 {
                    return Err(bad("degree", "zero-set checks run over prime fields only"));
                }
                let primes = match (self.pmin, self.pmax) {
                    (None, None) => Vec::new(),
                    _ => self.prime_range()?,
                };
                Ok(Task::Semaev {
                    curve: self.required_curve()?,
                    n,
                    primes,
                })
            }
            Subcommand::Relate => {
                let curve = self.optional_curve()?;
                let phis = parse_functions("phis", &self.phis)?;
                let rhos = parse_functions("rhos", &self.rhos)?;
                let kind = match &self.kind {
                    Some(k) => k.parse().map_err(|e| bad("kind", format!("{e}")))?,
                    None if rhos.is_empty() => SystemKind::MultMult,
                    None if phis.is_empty() => SystemKind::LinLin,
                    None => SystemKind::MultLin,
                };
                let rhos = (!rhos.is_empty()).then_some(rhos);
                let system = RelationSystem::new(phis, kind, curve, rhos)
                    .map_err(|e| bad("kind", e.to_string()))?;
                Ok(Task::Relate {
                    system,
                    k_box: self.box_size("K", self.k_box)?,
                    l_box: self.box_size("L", self.l_box)?,
                })
            }
            Subcommand::Locus => {
                let set: LocusSet = self
                    .set
                    .as_deref()
                    .ok_or_else(|| bad("set", "required"))?
                    .parse()
                    .map_err(|e| bad("set", format!("{e}")))?;
                let degree = self.degree.unwrap_or(1);
                if degree == 0 {
                    return Err(bad("degree", "must be at least 1"));
                }
                Ok(Task::Locus {
                    set,
                    phis: parse_functions("phis", &self.phis)?,
                    rhos: parse_functions("rhos", &self.rhos)?,
                    curve: self.optional_curve()?,
                    k_box: self.box_size("K", self.k_box)?,
                    l_box: self.box_size("L", self.l_box)?,
                    primes: self.prime_range()?,
                    degree,
                })
            }
            Subcommand::Sweep => {
                let phi = single_function("phis", &self.phis)?;
                let rho = single_function("rhos", &self.rhos)?;
                let mode = match self.mode.as_deref().map(|m| m.to_ascii_uppercase().replace('-', "_")) {
                    None => SweepMode::MultMult,
                    Some(m) if m == "MULT_MULT" => SweepMode::MultMult,
                    Some(m) if m == "MULT_LIN" => SweepMode::MultLin,
                    Some(m) if m == "LIN_LIN" => SweepMode::LinLin,
                    Some(other) => return Err(bad("mode", format!("unknown mode {other:?}"))),
                };
                let threshold = match (self.t, self.c, self.e) {
                    (Some(t), None, None) => Threshold::Fixed(t),
                    (None, Some(c), Some(e)) if c.is_finite() && e.is_finite() && c >= 0.0 => {
                        Threshold::LogPower { c, e }
                    }
                    _ => return Err(bad("t", "give either t or both c and e (finite, c ≥ 0)")),
                };
                let pmax = self.pmax.ok_or_else(|| bad("pmax", "required"))?;
                Ok(Task::Sweep {
                    phi,
                    rho,
                    curve: self.optional_curve()?,
                    mode,
                    threshold,
                    pmin: self.pmin.unwrap_or(2),
                    pmax,
                })
            }
            Subcommand::Verify => Ok(Task::Verify {
                criteria: parse_suite(self.suite.as_deref().unwrap_or("all"))?,
                seed: self.seed.unwrap_or(0),
            }),
        }
    }

    fn optional_curve(&self) -> Result<Option<CurveQ>, SpecError> {
        self.curve
            .as_deref()
            .map(|s| s.parse().map_err(|e| bad("curve", format!("{e}"))))
            .transpose()
    }

    fn required_curve(&self) -> Result<CurveQ, SpecError> {
        self.optional_curve()?.ok_or_else(|| bad("curve", "required"))
    }

    fn box_size(&self, field: &str, value: Option<u64>) -> Result<u64, SpecError> {
        match value {
            Some(0) => Err(bad(field, "must be at least 1")),
            Some(v) => Ok(v),
            None => Err(bad(field, "required")),
        }
    }

    fn prime_range(&self) -> Result<Vec<u64>, SpecError> {
        let pmax = self.pmax.ok_or_else(|| bad("pmax", "required"))?;
        let pmin = self.pmin.unwrap_or(2);
        if pmin > pmax {
            return Err(bad("pmin", "exceeds pmax"));
        }
        let primes: Vec<u64> = (pmin.max(2)..=pmax).filter(|&p| is_prime_u64(p)).collect();
        if primes.is_empty() {
            return Err(bad("pmax", "no primes in range"));
        }
        Ok(primes)
    }
}

fn parse_functions(field: &str, texts: &[String]) -> Result<Vec<RatFunc>, SpecError> {
    texts
        .iter()
        .map(|s| parse_expression(s).map_err(|e| bad(field, format!("{s:?}: {e}"))))
        .collect()
}

fn single_function(field: &str, texts: &[String]) -> Result<RatFunc, SpecError> {
    match parse_functions(field, texts)?.as_slice() {
        [f] => Ok(f.clone()),
        _ => Err(bad(field, "exactly one function required")),
    }
}

/// Criterion numbers run by `verify`.
pub const CRITERIA: [u8; 9] = [1, 2, 3, 4, 5, 6, 7, 8, 9];

fn parse_suite(text: &str) -> Result<Vec<u8>, SpecError> {
    if text.trim() == "all" {
        return Ok(CRITERIA.to_vec());
    }
    let mut ids = Vec::new();
    for part in text.split(',') {
        let id: u8 = part
            .trim()
            .parse()
            .map_err(|_| bad("suite", format!("{part:?} is not a criterion number")))?;
        if !CRITERIA.contains(&id) {
            return Err(bad("suite", format!("no criterion {id}")));
        }
        ids.push(id);
    }
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}

/// Splits a comma-separated function list, keeping commas inside parentheses.
pub fn split_functions(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(current.trim().to_string());
                current.clear();
                continue;
            }
            _ => {}
        }
        current.push(ch);
    }
    if !current.trim().is_empty() {
        out.push(current.trim().to_string());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_round_trip() {
        let text = r#"
            subcommand = "relate"
            phis = ["X", "X+1"]
            K = 2
            L = 2
        "#;
        let job = JobSpec::from_toml(text).unwrap();
        assert_eq!(job.k_box, Some(2));
        assert_eq!(job.echo(), r#"{"subcommand":"relate","phis":["X","X+1"],"K":2,"L":2}"#);
        assert!(matches!(job.validate().unwrap(), Task::Relate { k_box: 2, l_box: 2, .. }));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(JobSpec::from_toml("subcommand = \"divpoly\"\nbogus = 1").is_err());
        let mut job = JobSpec::new(Subcommand::Divpoly);
        assert_eq!(job.validate().unwrap_err().field, "curve");
        job.curve = Some("a=0,b=0".into());
        assert_eq!(job.validate().unwrap_err().field, "curve");
        job.curve = Some("a=0,b=1".into());
        job.k_box = Some(2);
        assert_eq!(job.validate().unwrap_err().field, "K");
        let mut job = JobSpec::new(Subcommand::Verify);
        job.suite = Some("1,11".into());
        assert_eq!(job.validate().unwrap_err().field, "suite");
        let mut job = JobSpec::new(Subcommand::Locus);
        job.set = Some("A".into());
        job.phis = vec!["X".into()];
        job.k_box = Some(1);
        job.l_box = Some(1);
        job.pmin = Some(24);
        job.pmax = Some(28);
        assert_eq!(job.validate().unwrap_err().field, "pmax");
    }

    #[test]
    fn function_lists_split_at_top_level() {
        assert_eq!(split_functions("X, X+1"), vec!["X", "X+1"]);
        assert_eq!(split_functions("(X+1)/(X-2),X^2"), vec!["(X+1)/(X-2)", "X^2"]);
        assert!(split_functions("").is_empty());
    }
}
