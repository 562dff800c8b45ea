//! The computations behind each subcommand, returning renderable output.

use serde_json::{json, Value};
use thiserror::Error;

use logls_core::fpmodule::{Coefficients, HomologyReport};
use logls_core::kcomplex::{check_prop12, KData};
use logls_core::logls::{check_compatibility_sequence, LogPipeline};
use logls_core::logsurj::{check_edge_identity, tor_over_c, w_terms, LogSurjection, MAX_TOR};
use logls_core::monoids::Choices;

use crate::input::{CoefficientChoice, InputError, InputSpec};
use crate::report::{canonical_json, choices_json, degrees_json, dim_json, homology_json, homology_lines, Format};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("verification failed: {0}")]
    Verify(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<logls_core::Error> for CliError {
    fn from(e: logls_core::Error) -> Self {
        match e {
            logls_core::Error::CommutationFailure(_) => CliError::Internal(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// A report in both renderings.
#[derive(Clone, Debug)]
pub struct Output {
    pub json: Value,
    pub text: Vec<String>,
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => canonical_json(&self.json),
            Format::Text => {
                let mut s = self.text.join("\n");
                s.push('\n');
                s
            }
        }
    }
}

fn coefficients(spec: &InputSpec, choice: &CoefficientChoice) -> CliResult<Coefficients> {
    Ok(choice.resolve(&spec.morphism.target.algebra)?)
}

fn degree_reports(pipe: &LogPipeline, degrees: &[usize], t: &Coefficients) -> Vec<(usize, HomologyReport)> {
    degrees.iter().map(|&i| (i, pipe.homology(i, t))).collect()
}

/// Log homology in the requested degrees, with the structural checks.
pub fn cmd_homology(spec: &InputSpec, degrees: &[usize], choice: &CoefficientChoice, alt_choices: bool) -> CliResult<Output> {
    if let Some(d) = degrees.iter().find(|&&d| d > 2) {
        return Err(CliError::Input(format!("degree {d} is out of range (0 to 2)")));
    }
    let t = coefficients(spec, choice)?;
    let pipe = LogPipeline::new(&spec.morphism, Choices::default())?;
    let reports = degree_reports(&pipe, degrees, &t);
    let compat = check_compatibility_sequence(&pipe)?;
    if !compat.passed() {
        return Err(CliError::Internal(format!("compatibility checks failed: {compat:?}")));
    }
    let mut json = json!({
        "field": spec.field.name(),
        "coefficients": choice.name(),
        "strict": spec.morphism.is_strict(),
        "degrees": degrees_json(&reports),
        "choices": choices_json(&pipe.diagram.fd),
        "checks": {
            "squares_commute": true,
            "epsilon_split": compat.split.to_vec(),
            "cokernels_agree": compat.cokernels.to_vec(),
            "euler": compat.euler.to_vec(),
        },
    });
    let mut text = vec![format!("field {}, coefficients {}", spec.field, choice.name())];
    text.extend(homology_lines(&reports));
    text.push("checks: squares commute, legs split, cokernels agree".into());
    if alt_choices {
        let alt = LogPipeline::new(&spec.morphism, Choices::alternative())?;
        let alt_reports = degree_reports(&alt, degrees, &t);
        let mut agree = serde_json::Map::new();
        for ((i, a), (_, b)) in reports.iter().zip(&alt_reports) {
            if !a.proxy_eq(b) {
                return Err(CliError::Internal(format!("H_{i} depends on the choices: {} vs {}", a.summary(), b.summary())));
            }
            agree.insert(i.to_string(), Value::Bool(true));
        }
        json["alt_choices"] = json!({ "choices": choices_json(&alt.diagram.fd), "agree": agree });
        text.push("alternative choices give the same homology".into());
    }
    Ok(Output { json, text })
}

/// The complex `K` computed directly and through the closed forms.
pub fn cmd_kcomplex(spec: &InputSpec, choice: &CoefficientChoice) -> CliResult<Output> {
    let t = coefficients(spec, choice)?;
    let fd = logls_core::monoids::choose_log_factorization(&spec.morphism, Choices::default())?;
    let kd = KData::new(&fd);
    let r = check_prop12(&fd, &t)?;
    let dims = |d: &(logls_core::abgroup::Dim, logls_core::abgroup::Dim, logls_core::abgroup::Dim)| {
        vec![dim_json(d.0), dim_json(d.1), dim_json(d.2)]
    };
    if !r.passed() {
        return Err(CliError::Internal(format!("direct {:?} differs from closed form {:?}", r.direct, r.closed)));
    }
    let json = json!({
        "field": spec.field.name(),
        "coefficients": choice.name(),
        "w0": kd.w0.to_string(),
        "q1_rank": kd.q1_rank,
        "w1_rank": kd.w1_rank(),
        "direct": dims(&r.direct),
        "closed_form": dims(&r.closed),
    });
    let text = vec![
        format!("field {}, coefficients {}", spec.field, choice.name()),
        format!("W0 = {}, rank Q1 = {}, rank W1 = {}", kd.w0, kd.q1_rank, kd.w1_rank()),
        format!("dims of H_0, H_1, H_2: {} {} {} (closed form agrees)", r.direct.0, r.direct.1, r.direct.2),
    ];
    Ok(Output { json, text })
}

/// The conormal module of a log surjection next to `H_1` of its log complex.
pub fn cmd_conormal(spec: &InputSpec) -> CliResult<Output> {
    let s = LogSurjection::new(&spec.morphism)?;
    let e = check_edge_identity(&s)?;
    if !e.passed() {
        return Err(CliError::Internal(format!("H_1 is {} but the conormal module is {}", e.log_h1.summary(), e.conormal.summary())));
    }
    let w: Vec<HomologyReport> = (1..=2).map(|n| w_terms(&s, n)).collect();
    let json = json!({
        "field": spec.field.name(),
        "kernel_gp": s.kergp.to_string(),
        "conormal": homology_json(&e.conormal),
        "log_h1": homology_json(&e.log_h1),
        "w_terms": { "1": homology_json(&w[0]), "2": homology_json(&w[1]) },
    });
    let text = vec![
        format!("conormal module: {}", e.conormal.summary()),
        format!("H_1 of the log complex: {}", e.log_h1.summary()),
        format!("W_1 = {}, W_2 = {}", w[0].summary(), w[1].summary()),
    ];
    Ok(Output { json, text })
}

/// `Tor_n^C(B, B)` for a log surjection `C -> B`.
pub fn cmd_tor(spec: &InputSpec, max: usize) -> CliResult<Output> {
    if max > MAX_TOR {
        return Err(CliError::Input(format!("Tor is available up to degree {MAX_TOR}")));
    }
    let s = LogSurjection::new(&spec.morphism)?;
    let mut reports = Vec::new();
    for n in 0..=max {
        reports.push((n, tor_over_c(&s, n)?));
    }
    let json = json!({ "field": spec.field.name(), "tor": degrees_json(&reports) });
    let text = reports.iter().map(|(n, r)| format!("Tor_{n} = {}", r.summary())).collect();
    Ok(Output { json, text })
}
