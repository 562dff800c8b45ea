//! The bundled corpus: one `.toml` input and one `.json` golden report per instance.

use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use logls_core::fpmodule::Coefficients;
use logls_core::logls::LogPipeline;
use logls_core::monoids::Choices;

use crate::commands::{CliError, CliResult};
use crate::input::{parse_input, InputSpec};
use crate::report::degrees_json;

/// Location of the corpus shipped with the crate.
pub fn default_corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    /// File stem of the input.
    pub name: String,
    pub input_path: PathBuf,
    pub spec: InputSpec,
    pub golden_path: PathBuf,
}

impl CorpusEntry {
    pub fn has_tag(&self, tag: &str) -> bool {
        self.spec.raw.tags.iter().any(|t| t == tag)
    }

    pub fn golden(&self) -> Option<String> {
        std::fs::read_to_string(&self.golden_path).ok()
    }
}

/// Loads every `.toml` file of `dir`, sorted by name.
pub fn load_corpus(dir: &Path) -> CliResult<Vec<CorpusEntry>> {
    let rd = std::fs::read_dir(dir).map_err(|e| CliError::Input(format!("cannot read corpus {}: {e}", dir.display())))?;
    let mut entries = Vec::new();
    for item in rd {
        let path = item.map_err(|e| CliError::Input(e.to_string()))?.path();
        if path.extension().and_then(|e| e.to_str()) != Some("toml") {
            continue;
        }
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
        let text = std::fs::read_to_string(&path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let spec = parse_input(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        entries.push(CorpusEntry { name, golden_path: path.with_extension("json"), input_path: path, spec });
    }
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(entries)
}

/// The golden report of an entry: log homology in degrees 0 to 2 with
/// coefficients in the target algebra and in its residue field.
pub fn golden_report(e: &CorpusEntry) -> CliResult<Value> {
    let pipe = LogPipeline::new(&e.spec.morphism, Choices::default())?;
    let per = |t: &Coefficients| degrees_json(&(0..3).map(|i| (i, pipe.homology(i, t))).collect::<Vec<_>>());
    Ok(json!({
        "instance": e.name,
        "field": e.spec.field.name(),
        "strict": e.spec.morphism.is_strict(),
        "homology": {
            "self": per(&Coefficients::Algebra),
            "residue": per(&Coefficients::Residue),
        },
    }))
}
