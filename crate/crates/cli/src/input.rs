//! The TOML input language for prelog morphisms and coefficient modules.
//!
//! ```toml
//! field = "Q"
//!
//! [source.ring]
//! vars = ["t"]
//! relations = []
//!
//! [source.monoid]
//! gens = ["a"]
//! relations = []          # pairs of exponent vectors, e.g. [[[2, 0], [0, 2]]]
//!
//! [source.alpha]
//! a = "t"
//!
//! [morphism.ring_map]
//! t = "t^2"
//!
//! [morphism.monoid_map]
//! a = [2]
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use logls_core::field::Field;
use logls_core::fpmodule::{Coefficients, FpModule};
use logls_core::groebner::PresentedAlgebra;
use logls_core::monoids::{FpMonoid, MonoidHom, PrelogMorphism, PrelogRing};
use logls_core::poly::{MonomialOrder, Poly, PolyRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0}")]
    Semantic(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawRing {
    #[serde(default)]
    pub vars: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u32>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMonoid {
    #[serde(default)]
    pub gens: Vec<String>,
    #[serde(default)]
    pub relations: Vec<[Vec<u32>; 2]>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPrelog {
    #[serde(default)]
    pub ring: RawRing,
    #[serde(default)]
    pub monoid: RawMonoid,
    #[serde(default)]
    pub alpha: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMorphism {
    #[serde(default)]
    pub ring_map: BTreeMap<String, String>,
    #[serde(default)]
    pub monoid_map: BTreeMap<String, Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSpec {
    pub field: String,
    /// Free-form labels; the verification suites use `edge` and `alt`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<String>,
    #[serde(default)]
    pub source: RawPrelog,
    #[serde(default)]
    pub target: RawPrelog,
    #[serde(default)]
    pub morphism: RawMorphism,
}

/// A parsed and validated input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputSpec {
    /// The input in canonical form: polynomials reprinted, field name normalized.
    pub raw: RawSpec,
    pub field: Field,
    pub morphism: PrelogMorphism,
    pub coefficients: CoefficientChoice,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientChoice {
    Algebra,
    Residue,
    Module(RawModule),
}

/// A coefficient module over the target algebra: `generators` and relation
/// columns, each a list of `generators` polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawModule {
    pub generators: usize,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

pub fn parse_field(name: &str) -> Result<Field, InputError> {
    let unsupported = || InputError::Semantic(format!("unsupported field {name:?}"));
    let s = name.trim();
    if matches!(s, "Q" | "QQ") {
        return Ok(Field::Rationals);
    }
    let digits = s
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| s.strip_prefix("F_"))
        .or_else(|| s.strip_prefix('F'))
        .ok_or_else(unsupported)?;
    let p: u32 = digits.parse().map_err(|_| unsupported())?;
    Field::prime(p).map_err(|_| unsupported())
}

/// The field of characteristic `c`: `Q` for 0, `F_c` otherwise.
pub fn field_of_char(c: u32) -> Result<Field, InputError> {
    if c == 0 {
        Ok(Field::Rationals)
    } else {
        Field::prime(c).map_err(|_| InputError::Semantic(format!("unsupported field: characteristic {c} is not prime")))
    }
}

fn syntax_error(text: &str, e: toml::de::Error) -> InputError {
    let offset = e.span().map(|s| s.start).unwrap_or(0).min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map(|l| l.chars().count()).unwrap_or(0) + 1;
    InputError::Syntax { line, column, message: e.message().trim().to_string() }
}

pub fn parse_raw(text: &str) -> Result<RawSpec, InputError> {
    toml::from_str(text).map_err(|e| syntax_error(text, e))
}

/// Parses and validates an input file.
pub fn parse_input(text: &str) -> Result<InputSpec, InputError> {
    build_spec(&parse_raw(text)?, None)
}

/// Validates `raw`, optionally over a different field than the one it names.
pub fn build_spec(raw: &RawSpec, field_override: Option<Field>) -> Result<InputSpec, InputError> {
    let field = match field_override {
        Some(f) => f,
        None => parse_field(&raw.field)?,
    };
    let (src, src_raw) = build_prelog(&raw.source, field, "source")?;
    let (tgt, tgt_raw) = build_prelog(&raw.target, field, "target")?;
    let sem = |e: logls_core::Error| InputError::Semantic(e.to_string());

    let a_ring = &src.algebra.ring;
    let b_ring = &tgt.algebra.ring;
    check_keys(raw.morphism.ring_map.keys(), &a_ring.names, "morphism.ring_map", "source variable")?;
    let mut ring_map = Vec::new();
    let mut ring_map_raw = BTreeMap::new();
    for v in &a_ring.names {
        let text = &raw.morphism.ring_map[v];
        let p = parse_poly(b_ring, text, &format!("morphism.ring_map.{v}"))?;
        ring_map_raw.insert(v.clone(), b_ring.format(&p));
        ring_map.push(p);
    }
    check_keys(raw.morphism.monoid_map.keys(), &src.monoid.gens, "morphism.monoid_map", "source monoid generator")?;
    let images: Vec<Vec<u32>> = src.monoid.gens.iter().map(|g| raw.morphism.monoid_map[g].clone()).collect();
    for (g, img) in src.monoid.gens.iter().zip(&images) {
        if img.len() != tgt.monoid.n_gens() {
            return Err(InputError::Semantic(format!(
                "morphism.monoid_map.{g} has {} entries, expected {}",
                img.len(),
                tgt.monoid.n_gens()
            )));
        }
    }
    let hom = MonoidHom::new(src.monoid.clone(), tgt.monoid.clone(), images).map_err(sem)?;
    let morphism = PrelogMorphism::new(src, tgt, ring_map, hom).map_err(sem)?;

    let coefficients = match raw.coefficients.as_deref() {
        None | Some("self") => CoefficientChoice::Algebra,
        Some("residue") => CoefficientChoice::Residue,
        Some(other) => return Err(InputError::Semantic(format!("unknown coefficients {other:?} (expected self or residue)"))),
    };
    let canonical = RawSpec {
        field: field.name(),
        tags: raw.tags.clone(),
        coefficients: raw.coefficients.clone(),
        source: src_raw,
        target: tgt_raw,
        morphism: RawMorphism { ring_map: ring_map_raw, monoid_map: raw.morphism.monoid_map.clone() },
    };
    Ok(InputSpec { raw: canonical, field, morphism, coefficients })
}

fn parse_poly(ring: &PolyRing, text: &str, at: &str) -> Result<Poly, InputError> {
    ring.parse(text).map_err(|e| InputError::Semantic(format!("{at}: {e}")))
}

fn check_keys<'a>(keys: impl Iterator<Item = &'a String>, names: &[String], at: &str, what: &str) -> Result<(), InputError> {
    let keys: Vec<&String> = keys.collect();
    for k in &keys {
        if !names.contains(k) {
            return Err(InputError::Semantic(format!("{at}: {k} is not a {what}")));
        }
    }
    for n in names {
        if !keys.contains(&n) {
            return Err(InputError::Semantic(format!("{at}: missing entry for {what} {n}")));
        }
    }
    Ok(())
}

fn build_prelog(raw: &RawPrelog, field: Field, side: &str) -> Result<(PrelogRing, RawPrelog), InputError> {
    let names = raw.ring.vars.clone();
    let mut seen = std::collections::HashSet::new();
    for n in &names {
        let ok = !n.is_empty()
            && n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
        if !ok {
            return Err(InputError::Semantic(format!("{side}.ring: invalid variable name {n:?}")));
        }
        if !seen.insert(n) {
            return Err(InputError::Semantic(format!("{side}.ring: duplicate variable {n}")));
        }
    }
    let ring = PolyRing::new(field, names, MonomialOrder::DegRevLex);
    let mut rels = Vec::new();
    for (i, r) in raw.ring.relations.iter().enumerate() {
        rels.push(parse_poly(&ring, r, &format!("{side}.ring.relations[{}]", i + 1))?);
    }
    let algebra = match &raw.ring.weights {
        None => PresentedAlgebra::new(ring.clone(), rels.clone()),
        Some(w) => {
            if w.len() != ring.nvars() || w.contains(&0) {
                return Err(InputError::Semantic(format!("{side}.ring.weights: expected one positive weight per variable")));
            }
            PresentedAlgebra::with_weights(ring.clone(), rels.clone(), w.clone())
        }
    };
    if algebra.is_unit_ideal() {
        return Err(InputError::Semantic(format!("{side}.ring: the relations generate the unit ideal")));
    }
    let monoid = FpMonoid::new(raw.monoid.gens.clone(), raw.monoid.relations.iter().map(|[a, b]| (a.clone(), b.clone())).collect())
        .map_err(|e| InputError::Semantic(format!("{side}.monoid: {e}")))?;
    check_keys(raw.alpha.keys(), &monoid.gens, &format!("{side}.alpha"), "monoid generator")?;
    let mut alpha = Vec::new();
    let mut alpha_raw = BTreeMap::new();
    for g in &monoid.gens {
        let p = parse_poly(&ring, &raw.alpha[g], &format!("{side}.alpha.{g}"))?;
        alpha_raw.insert(g.clone(), ring.format(&p));
        alpha.push(p);
    }
    let pr = PrelogRing::new(algebra, monoid, alpha).map_err(|e| InputError::Semantic(format!("{side}: {e}")))?;
    let canonical = RawPrelog {
        ring: RawRing {
            vars: raw.ring.vars.clone(),
            relations: rels.iter().map(|p| ring.format(p)).collect(),
            weights: raw.ring.weights.clone(),
        },
        monoid: raw.monoid.clone(),
        alpha: alpha_raw,
    };
    Ok((pr, canonical))
}

/// Canonical text of a spec; parsing it again yields an equal spec.
pub fn print_spec(spec: &InputSpec) -> String {
    toml::to_string(&spec.raw).expect("specs serialize")
}

impl CoefficientChoice {
    /// Reads `self`, `residue`, or the path of a module file.
    pub fn from_arg(arg: &str) -> Result<CoefficientChoice, InputError> {
        match arg {
            "self" => Ok(CoefficientChoice::Algebra),
            "residue" => Ok(CoefficientChoice::Residue),
            path => {
                let text = std::fs::read_to_string(path).map_err(|e| InputError::Semantic(format!("cannot read {path}: {e}")))?;
                let m: RawModule = toml::from_str(&text).map_err(|e| syntax_error(&text, e))?;
                Ok(CoefficientChoice::Module(m))
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CoefficientChoice::Algebra => "self",
            CoefficientChoice::Residue => "residue",
            CoefficientChoice::Module(_) => "module",
        }
    }

    /// The coefficients as a module over `b`.
    pub fn resolve(&self, b: &Arc<PresentedAlgebra>) -> Result<Coefficients, InputError> {
        match self {
            CoefficientChoice::Algebra => Ok(Coefficients::Algebra),
            CoefficientChoice::Residue => Ok(Coefficients::Residue),
            CoefficientChoice::Module(m) => {
                let mut rels = Vec::new();
                for (i, col) in m.relations.iter().enumerate() {
                    if col.len() != m.generators {
                        return Err(InputError::Semantic(format!(
                            "coefficient module: relation {} has {} entries, expected {}",
                            i + 1,
                            col.len(),
                            m.generators
                        )));
                    }
                    let v = col
                        .iter()
                        .map(|s| parse_poly(&b.ring, s, &format!("coefficient module relation {}", i + 1)))
                        .collect::<Result<Vec<_>, _>>()?;
                    rels.push(v);
                }
                Ok(Coefficients::Module(FpModule::new(b.clone(), m.generators, rels)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LOG_POINT: &str = r#"
field = "Q"

[target.monoid]
gens = ["n"]

[target.alpha]
n = "0"
"#;

    #[test]
    fn log_point_parses() {
        let s = parse_input(LOG_POINT).unwrap();
        assert_eq!(s.morphism.target.monoid.gens, vec!["n".to_string()]);
        assert_eq!(s.field, Field::Rationals);
    }

    #[test]
    fn round_trip() {
        let text = r#"
field = "F_3"
[source.ring]
vars = ["u"]
[source.monoid]
gens = ["a"]
[source.alpha]
a = "u"
[target.ring]
vars = ["t"]
relations = ["  t^3 -  1 * t^3 + t^2 "]
[target.monoid]
gens = ["n"]
[target.alpha]
n = "t"
[morphism.ring_map]
u = "4*t"
[morphism.monoid_map]
a = [1]
"#;
        let s = parse_input(text).unwrap();
        assert_eq!(s.raw.target.ring.relations, vec!["t^2".to_string()]);
        assert_eq!(s.raw.morphism.ring_map["u"], "t");
        let again = parse_input(&print_spec(&s)).unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn alpha_violating_a_relation() {
        let text = r#"
field = "Q"
[target.ring]
vars = ["x", "y"]
[target.monoid]
gens = ["a", "b"]
relations = [[[2, 0], [0, 2]]]
[target.alpha]
a = "x"
b = "y"
"#;
        let e = parse_input(text).unwrap_err();
        assert!(e.to_string().contains("alpha does not respect relation 1"), "{e}");
    }

    #[test]
    fn unknown_field() {
        let e = parse_input("field = \"R\"\n").unwrap_err();
        assert!(e.to_string().contains("unsupported field"), "{e}");
        assert!(parse_input("field = \"F4\"\n").unwrap_err().to_string().contains("unsupported field"));
    }

    #[test]
    fn syntax_error_has_a_position() {
        let e = parse_input("field = \"Q\"\n[source.ring]\nvars = [x]\n").unwrap_err();
        match e {
            InputError::Syntax { line, .. } => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_ring_map_entry() {
        let text = "field = \"Q\"\n[source.ring]\nvars = [\"x\"]\n";
        assert!(parse_input(text).unwrap_err().to_string().contains("missing entry for source variable x"));
    }

    #[test]
    fn field_names() {
        assert_eq!(parse_field("GF(5)").unwrap(), Field::prime(5).unwrap());
        assert_eq!(parse_field("F2").unwrap(), Field::prime(2).unwrap());
        assert_eq!(parse_field("QQ").unwrap(), Field::Rationals);
    }
}
