//! Canonical reports. JSON output is a tree with sorted keys and no timing,
//! so it is byte-identical across runs and thread counts.

use serde_json::{json, Map, Value};

use logls_core::abgroup::Dim;
use logls_core::fpmodule::HomologyReport;
use logls_core::monoids::FactorizationData;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

pub fn dim_json(d: Dim) -> Value {
    match d {
        Dim::Finite(n) => json!(n),
        Dim::Infinite => json!("infinite"),
    }
}

pub fn homology_json(r: &HomologyReport) -> Value {
    json!({
        "generators": r.n_gens,
        "presentation": r.presentation,
        "k_dim": dim_json(r.k_dim),
        "hilbert_series": r.hilbert.as_ref().map(|h| h.to_string()),
        "fitting_ideals": r.fitting,
        "free_rank": r.free_rank,
        "summary": r.summary(),
    })
}

/// The choices behind a factorization: the adjoined generators `X`, the
/// variables `Y`, and the variable order of the polynomial ring `R`.
pub fn choices_json(fd: &FactorizationData) -> Value {
    let nm = fd.morphism.source.monoid.n_gens();
    let r = &fd.r.ring;
    json!({
        "x": fd.p0.gens[nm..].to_vec(),
        "y": fd.y_vars.iter().map(|&v| r.names[v].clone()).collect::<Vec<_>>(),
        "r_variables": r.names,
        "extra_x": fd.choices.extra_x,
        "reverse_orders": fd.choices.reverse_orders,
        "redundant_cover": fd.choices.redundant_cover,
    })
}

/// Pretty JSON with a trailing newline. Object keys are sorted because
/// `serde_json::Map` is ordered by key.
pub fn canonical_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn degrees_json(reports: &[(usize, HomologyReport)]) -> Value {
    let mut m = Map::new();
    for (i, r) in reports {
        m.insert(i.to_string(), homology_json(r));
    }
    Value::Object(m)
}

/// One line per degree for human output.
pub fn homology_lines(reports: &[(usize, HomologyReport)]) -> Vec<String> {
    let mut out = Vec::new();
    for (i, r) in reports {
        out.push(format!("H_{i} = {}", r.summary()));
        if let Some(h) = &r.hilbert {
            if r.k_dim != Dim::Finite(0) {
                out.push(format!("    Hilbert series {h}"));
            }
        }
    }
    out
}
