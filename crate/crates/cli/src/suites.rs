//! Verification suites over the corpus, registered by name.

use rayon::prelude::*;
use serde_json::{json, Value};

use logls_core::abgroup::Dim;
use logls_core::field::Field;
use logls_core::fpmodule::Coefficients;
use logls_core::kcomplex::check_prop12;
use logls_core::logls::{check_compatibility_sequence, check_strict_reduction, LogPipeline};
use logls_core::logsurj::{check_edge_identity, LogSurjection};
use logls_core::monoids::{choose_log_factorization, Choices};

use crate::commands::{CliError, CliResult};
use crate::corpus::{golden_report, CorpusEntry};
use crate::input::build_spec;
use crate::report::canonical_json;

/// What a suite concluded about one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass(String),
    Fail(String),
    /// The suite does not apply to the instance.
    Skip,
}

pub trait VerifySuite: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn check(&self, e: &CorpusEntry) -> Status;
}

fn run<T>(r: CliResult<T>, ok: impl FnOnce(T) -> Status) -> Status {
    match r {
        Ok(v) => ok(v),
        Err(e) => Status::Fail(e.to_string()),
    }
}

struct Strict;

impl VerifySuite for Strict {
    fn name(&self) -> &'static str {
        "strict"
    }
    fn description(&self) -> &'static str {
        "strict morphisms: log homology equals classical homology"
    }
    fn check(&self, e: &CorpusEntry) -> Status {
        let f = &e.spec.morphism;
        if !f.is_strict() {
            return Status::Skip;
        }
        let mut parts = Vec::new();
        for t in [Coefficients::Algebra, Coefficients::Residue] {
            match check_strict_reduction(f, &t) {
                Ok(r) if r.passed() => {
                    parts.push(format!("{}: {}", t.name(), r.log.iter().map(|h| h.summary()).collect::<Vec<_>>().join(", ")))
                }
                Ok(r) => {
                    return Status::Fail(format!(
                        "{}: log {:?} vs classical {:?}",
                        t.name(),
                        r.log.iter().map(|h| h.summary()).collect::<Vec<_>>(),
                        r.classical.iter().map(|h| h.summary()).collect::<Vec<_>>()
                    ))
                }
                Err(err) => return Status::Fail(err.to_string()),
            }
        }
        Status::Pass(parts.join("; "))
    }
}

/// The fields every instance of the `prop12` suite is checked over.
pub const PROP12_FIELDS: [u32; 2] = [0, 2];

struct Prop12;

impl VerifySuite for Prop12 {
    fn name(&self) -> &'static str {
        "prop12"
    }
    fn description(&self) -> &'static str {
        "homology of K equals its closed form in ker and coker of the group map, over Q and F2"
    }
    fn check(&self, e: &CorpusEntry) -> Status {
        let mut ran = Vec::new();
        for c in PROP12_FIELDS {
            let field = if c == 0 { Field::Rationals } else { Field::prime(c).expect("prime") };
            let Ok(spec) = build_spec(&e.spec.raw, Some(field)) else {
                continue;
            };
            let fd = match choose_log_factorization(&spec.morphism, Choices::default()) {
                Ok(fd) => fd,
                Err(err) => return Status::Fail(err.to_string()),
            };
            for t in [Coefficients::Algebra, Coefficients::Residue] {
                if t.module(&spec.morphism.target.algebra).dim_over_k() == Dim::Infinite {
                    continue;
                }
                match check_prop12(&fd, &t) {
                    Ok(r) if r.passed() => ran.push(format!("{field}/{}", t.name())),
                    Ok(r) => return Status::Fail(format!("{field}, {}: direct {:?} vs closed {:?}", t.name(), r.direct, r.closed)),
                    Err(err) => return Status::Fail(err.to_string()),
                }
            }
        }
        if ran.is_empty() {
            Status::Skip
        } else {
            Status::Pass(ran.join(" "))
        }
    }
}

struct Compatibility;

impl VerifySuite for Compatibility {
    fn name(&self) -> &'static str {
        "jz"
    }
    fn description(&self) -> &'static str {
        "diagram squares commute, legs split, cokernels and Euler characteristics agree"
    }
    fn check(&self, e: &CorpusEntry) -> Status {
        run(
            LogPipeline::new(&e.spec.morphism, Choices::default())
                .and_then(|p| check_compatibility_sequence(&p))
                .map_err(CliError::from),
            |r| {
                if r.passed() {
                    let euler = r.euler.iter().filter(|x| x.is_some()).count();
                    Status::Pass(format!("squares, splittings, cokernels; Euler identity in {euler} degrees"))
                } else {
                    Status::Fail(format!("{r:?}"))
                }
            },
        )
    }
}

struct Edge;

impl VerifySuite for Edge {
    fn name(&self) -> &'static str {
        "edge"
    }
    fn description(&self) -> &'static str {
        "log surjections: H_1 of the log complex equals the conormal module"
    }
    fn check(&self, e: &CorpusEntry) -> Status {
        if !e.has_tag("edge") {
            return Status::Skip;
        }
        run(
            LogSurjection::new(&e.spec.morphism).and_then(|s| check_edge_identity(&s)).map_err(CliError::from),
            |r| {
                if r.passed() {
                    Status::Pass(format!("H_1 = conormal = {}", r.conormal.summary()))
                } else {
                    Status::Fail(format!("H_1 {} vs conormal {}", r.log_h1.summary(), r.conormal.summary()))
                }
            },
        )
    }
}

struct AltChoices;

impl VerifySuite for AltChoices {
    fn name(&self) -> &'static str {
        "alt"
    }
    fn description(&self) -> &'static str {
        "designated instances: alternative X, free cover and orderings give the same homology"
    }
    fn check(&self, e: &CorpusEntry) -> Status {
        if !e.has_tag("alt") {
            return Status::Skip;
        }
        let f = &e.spec.morphism;
        let pair = LogPipeline::new(f, Choices::default()).and_then(|a| Ok((a, LogPipeline::new(f, Choices::alternative())?)));
        run(pair.map_err(CliError::from), |(a, b)| {
            for t in [Coefficients::Algebra, Coefficients::Residue] {
                for i in 0..3 {
                    let (x, y) = (a.homology(i, &t), b.homology(i, &t));
                    if !x.proxy_eq(&y) {
                        return Status::Fail(format!("H_{i} with {} coefficients: {} vs {}", t.name(), x.summary(), y.summary()));
                    }
                }
            }
            Status::Pass("proxies agree in degrees 0 to 2".into())
        })
    }
}

struct Golden;

impl VerifySuite for Golden {
    fn name(&self) -> &'static str {
        "golden"
    }
    fn description(&self) -> &'static str {
        "recomputed reports match the golden files byte for byte"
    }
    fn check(&self, e: &CorpusEntry) -> Status {
        let Some(expected) = e.golden() else {
            return Status::Fail(format!("missing golden report {}", e.golden_path.display()));
        };
        run(golden_report(e), |v| {
            if canonical_json(&v) == expected {
                Status::Pass("matches".into())
            } else {
                Status::Fail(format!("report differs from {}", e.golden_path.display()))
            }
        })
    }
}

/// All suites, in the order `verify all` runs them.
pub fn registry() -> Vec<Box<dyn VerifySuite>> {
    vec![Box::new(Strict), Box::new(Prop12), Box::new(Compatibility), Box::new(Edge), Box::new(AltChoices), Box::new(Golden)]
}

/// The suites selected by `name`; `all` selects every suite.
pub fn select(name: &str) -> Option<Vec<Box<dyn VerifySuite>>> {
    let all = registry();
    if name == "all" {
        return Some(all);
    }
    let chosen: Vec<_> = all.into_iter().filter(|s| s.name() == name).collect();
    (!chosen.is_empty()).then_some(chosen)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub suite: String,
    pub instance: String,
    pub status: Status,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    /// Sorted by instance name, then by registry order.
    pub outcomes: Vec<Outcome>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &Outcome> {
        self.outcomes.iter().filter(|o| matches!(o.status, Status::Fail(_)))
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn count(&self, suite: &str) -> usize {
        self.outcomes.iter().filter(|o| o.suite == suite && matches!(o.status, Status::Pass(_))).count()
    }

    pub fn json(&self) -> Value {
        let mut per = serde_json::Map::new();
        for o in &self.outcomes {
            let (status, detail) = match &o.status {
                Status::Pass(d) => ("pass", d.as_str()),
                Status::Fail(d) => ("fail", d.as_str()),
                Status::Skip => continue,
            };
            let entry = per.entry(o.instance.clone()).or_insert_with(|| json!({}));
            entry[o.suite.as_str()] = json!({ "status": status, "detail": detail });
        }
        json!({ "passed": self.passed(), "instances": per })
    }

    pub fn text(&self) -> Vec<String> {
        let mut out = Vec::new();
        for o in &self.outcomes {
            match &o.status {
                Status::Pass(d) => out.push(format!("PASS {:<7} {:<28} {d}", o.suite, o.instance)),
                Status::Fail(d) => out.push(format!("FAIL {:<7} {:<28} {d}", o.suite, o.instance)),
                Status::Skip => {}
            }
        }
        let n = self.outcomes.iter().filter(|o| o.status != Status::Skip).count();
        let failed = self.failures().count();
        out.push(format!("{} checks, {} failed", n, failed));
        out
    }
}

/// Runs `suites` over `entries` in parallel; the result does not depend on
/// the schedule.
pub fn run_suites(suites: &[Box<dyn VerifySuite>], entries: &[CorpusEntry]) -> VerifyReport {
    let jobs: Vec<(usize, usize)> = (0..entries.len()).flat_map(|e| (0..suites.len()).map(move |s| (e, s))).collect();
    let mut results: Vec<(usize, usize, Status)> = jobs.par_iter().map(|&(e, s)| (e, s, suites[s].check(&entries[e]))).collect();
    results.sort_by_key(|(e, s, _)| (*e, *s));
    let outcomes = results
        .into_iter()
        .map(|(e, s, status)| Outcome { suite: suites[s].name().to_string(), instance: entries[e].name.clone(), status })
        .collect();
    VerifyReport { outcomes }
}
