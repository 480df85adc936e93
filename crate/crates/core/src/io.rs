//! JSON documents for systems of fans, bundle data and piecewise-linear
//! maps. Every writer is deterministic: maps are ordered and vectors are in
//! canonical form, so equal inputs give byte-identical output.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cone::{Cone, ConeError, ConeGenerators};
use crate::fan::{Fan, FanError, GluedSystem, SystemOfFans};
use crate::linalg::{Rational, Subspace};
use crate::sheaf::{BundleData, Filtration, SheafError};
use crate::tits::{PLMap, Piece};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("at {key:?}: {message}")]
    Schema { key: String, message: String },
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn schema(key: impl Into<String>, message: impl ToString) -> IoError {
    IoError::Schema {
        key: key.into(),
        message: message.to_string(),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemDoc {
    ambient_rank: usize,
    index: Vec<String>,
    /// `"i"` for `Δ_ii`, `"i|j"` for `Δ_ij`; each fan is a list of cones
    /// given by generators. Absent pairs are the origin fan.
    fans: BTreeMap<String, Vec<ConeGenerators>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JumpDoc {
    s: i64,
    basis: Vec<Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleDoc {
    rank: usize,
    filtrations: BTreeMap<String, Vec<JumpDoc>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PieceDoc {
    basis: Vec<Vec<Rational>>,
    weights: Vec<Vec<Value>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PLMapDoc {
    pieces: BTreeMap<String, PieceDoc>,
}

fn fan_from_doc(key: &str, n: usize, cones: &[ConeGenerators]) -> Result<Fan, IoError> {
    let cones = cones
        .iter()
        .map(|g| Cone::from_generators(&g.0, n))
        .collect::<Result<Vec<_>, ConeError>>()
        .map_err(|e| schema(format!("fans.{key}"), e))?;
    // No fan check here: a non-fan is reported by validation, not parsing.
    Ok(Fan::closure(n, &cones))
}

fn fan_to_doc(fan: &Fan) -> Vec<ConeGenerators> {
    fan.maximal_cones()
        .into_iter()
        .filter(|c| !c.is_zero())
        .map(|c| ConeGenerators(c.rays().to_vec()))
        .collect()
}

pub fn parse_system(text: &str) -> Result<SystemOfFans, IoError> {
    let doc: SystemDoc = serde_json::from_str(text)?;
    let n = doc.ambient_rank;
    let mut diagonal = Vec::with_capacity(doc.index.len());
    for label in &doc.index {
        let cones = doc
            .fans
            .get(label)
            .ok_or_else(|| schema(format!("fans.{label}"), "missing diagonal fan"))?;
        diagonal.push(fan_from_doc(label, n, cones)?);
    }
    let mut offdiag = Vec::new();
    for (key, cones) in &doc.fans {
        if let Some((a, b)) = key.split_once('|') {
            offdiag.push(((a.to_string(), b.to_string()), fan_from_doc(key, n, cones)?));
        } else if !doc.index.contains(key) {
            return Err(schema(format!("fans.{key}"), "label not in index"));
        }
    }
    Ok(SystemOfFans::new(n, doc.index, diagonal, offdiag)?)
}

pub fn write_system(system: &SystemOfFans) -> String {
    let mut fans = BTreeMap::new();
    for i in 0..system.len() {
        fans.insert(system.label(i).to_string(), fan_to_doc(system.fan(i, i)));
    }
    for (&(i, j), fan) in system.stored_pairs() {
        let key = format!("{}|{}", system.label(i), system.label(j));
        fans.insert(key, fan_to_doc(fan));
    }
    let doc = SystemDoc {
        ambient_rank: system.ambient_rank(),
        index: system.labels().to_vec(),
        fans,
    };
    to_pretty(&doc)
}

pub fn parse_bundle(system: Arc<GluedSystem>, text: &str) -> Result<BundleData, IoError> {
    let doc: BundleDoc = serde_json::from_str(text)?;
    let r = doc.rank;
    let mut filtrations = Vec::new();
    for (name, jumps) in &doc.filtrations {
        let key = format!("filtrations.{name}");
        let class = system
            .class_by_name(name)
            .ok_or_else(|| schema(&key, "no such class in the system"))?;
        let jumps = jumps
            .iter()
            .map(|j| Subspace::rref(&j.basis, r).map(|v| (j.s, v)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| schema(&key, e))?;
        let f = Filtration::new(r, jumps).map_err(|e| schema(&key, e))?;
        filtrations.push((class, f));
    }
    BundleData::new(system, r, filtrations).map_err(|e| match e {
        SheafError::MissingRayFiltration(c) | SheafError::UnknownClass(c) => {
            schema(format!("filtrations.{c}"), "missing or unknown ray class")
        }
        other => schema("filtrations", other),
    })
}

pub fn write_bundle(bundle: &BundleData) -> String {
    let g = bundle.system();
    let filtrations = bundle
        .filtrations()
        .map(|(c, f)| {
            let jumps = f
                .jumps()
                .iter()
                .map(|(s, v)| JumpDoc {
                    s: *s,
                    basis: v.basis().to_vec(),
                })
                .collect();
            (g.class_name(c), jumps)
        })
        .collect();
    to_pretty(&BundleDoc {
        rank: bundle.rank(),
        filtrations,
    })
}

pub fn parse_plmap(system: Arc<GluedSystem>, text: &str) -> Result<PLMap, IoError> {
    let doc: PLMapDoc = serde_json::from_str(text)?;
    let mut pieces = BTreeMap::new();
    let mut rank = None;
    for (name, p) in doc.pieces {
        let key = format!("pieces.{name}");
        let class = system
            .class_by_name(&name)
            .ok_or_else(|| schema(&key, "no such class in the system"))?;
        let weights = p
            .weights
            .iter()
            .map(|m| m.iter().map(|x| serde_json::from_value(x.clone())).collect())
            .collect::<Result<Vec<Vec<Rational>>, _>>()
            .map_err(|e| schema(format!("{key}.weights"), e))?;
        rank.get_or_insert(p.basis.len());
        pieces.insert(
            class,
            Piece {
                basis: p.basis,
                weights,
            },
        );
    }
    Ok(PLMap::new(system, rank.unwrap_or(0), pieces))
}

pub fn write_plmap(map: &PLMap) -> String {
    let g = map.system();
    let pieces = map
        .pieces()
        .iter()
        .map(|(&c, p)| {
            let weights = p
                .weights
                .iter()
                .map(|m| m.iter().map(rational_value).collect())
                .collect();
            (
                g.class_name(c),
                PieceDoc {
                    basis: p.basis.clone(),
                    weights,
                },
            )
        })
        .collect();
    to_pretty(&PLMapDoc { pieces })
}

/// Integers as JSON numbers, anything else as a `"p/q"` string.
fn rational_value(x: &Rational) -> Value {
    match x.to_i64().filter(|_| x.is_integer()) {
        Some(k) => Value::from(k),
        None => Value::from(x.to_string()),
    }
}

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden;
    use crate::sheaf::tangent_bundle;
    use crate::tits::plmap_from_bundle;

    #[test]
    fn system_round_trip() {
        for s in [
            golden::double_origin(),
            golden::two_charts(),
            golden::homogeneous_spectra(),
            golden::a3_doubled_axes(),
            golden::broken_chain(),
        ] {
            let text = write_system(&s);
            let back = parse_system(&text).unwrap();
            assert_eq!(back, s);
            assert_eq!(write_system(&back), text);
        }
    }

    #[test]
    fn double_origin_document() {
        let text = write_system(&golden::double_origin());
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["fans"]["1"], serde_json::json!([[[1]]]));
        assert_eq!(v["fans"]["1|2"], serde_json::json!([]));
    }

    #[test]
    fn bundle_and_plmap_round_trip() {
        let g = Arc::new(GluedSystem::new(golden::two_charts()).unwrap());
        let t = tangent_bundle(g.clone()).unwrap();
        let text = write_bundle(&t);
        assert!(text.contains("\"2:-1,-1\""));
        let back = parse_bundle(g.clone(), &text).unwrap();
        assert!(back.filtrations().eq(t.filtrations()));

        let pl = plmap_from_bundle(&t).unwrap();
        let text = write_plmap(&pl);
        let back = parse_plmap(g, &text).unwrap();
        assert_eq!(back.pieces(), pl.pieces());
    }

    #[test]
    fn schema_errors_name_the_key() {
        let g = Arc::new(GluedSystem::new(golden::double_origin()).unwrap());
        let truncated = r#"{"rank": 2, "filtrations": {
            "1:1": [{"s": -1, "basis": [["1", "0"]]}],
            "2:1": [{"s": 0, "basis": [[1, 0], [0, 1]]}]}}"#;
        match parse_bundle(g.clone(), truncated) {
            Err(IoError::Schema { key, .. }) => assert_eq!(key, "filtrations.1:1"),
            other => panic!("{other:?}"),
        }
        let missing = r#"{"rank": 1, "filtrations": {"1:1": [{"s": 0, "basis": [[1]]}]}}"#;
        assert!(matches!(parse_bundle(g.clone(), missing), Err(IoError::Schema { .. })));
        match parse_system("{\"ambient_rank\": 1,\n \"index\": [\"1\"], \"fans\": {\"1\": [[[1]]], }}") {
            Err(IoError::Json(e)) => assert_eq!(e.line(), 2),
            other => panic!("{other:?}"),
        }
        let stray = r#"{"ambient_rank": 1, "index": ["1"], "fans": {"1": [], "7": []}}"#;
        match parse_system(stray) {
            Err(IoError::Schema { key, .. }) => assert_eq!(key, "fans.7"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_fan_input_parses_and_fails_validation() {
        let doc = r#"{"ambient_rank": 2, "index": ["1"],
            "fans": {"1": [[[1, 0], [0, 1]], [[1, 1], [1, -1]]]}}"#;
        let s = parse_system(doc).unwrap();
        assert!(s.validate().has_kind("not_a_fan"));
    }
}
