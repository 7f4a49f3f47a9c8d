//! Explicit-weight documents.
//!
//! ```json
//! {
//!   "blocks": [{"kind": "GL", "n": 2}, {"kind": "torus", "scale": "1/25"}],
//!   "weights": [{"label": "x_1", "coords": ["1", "-1", "4"]},
//!               {"label": "x_2", "coords": ["-1", "1", "4"]}],
//!   "metric_scales": ["1", "1"]
//! }
//! ```
//!
//! Rationals are strings `"p/q"` or `"p"`. Coordinates follow the order of
//! `blocks`; `GL` blocks must precede torus blocks, and the weights must be
//! closed under permuting coordinates inside each `GL` block. `metric_scales`, when
//! present, has one positive entry per block and multiplies that block's
//! metric.

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{BlockStructure, RepError, WeightSystem};
use crate::geometry::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightDocument {
    pub blocks: Vec<BlockSpec>,
    pub weights: Vec<WeightEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric_scales: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum BlockSpec {
    #[serde(rename = "GL")]
    Gl { n: usize },
    #[serde(rename = "torus")]
    Torus { scale: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightEntry {
    pub label: String,
    pub coords: Vec<String>,
}

fn rational_at(text: &str, location: impl FnOnce() -> String) -> Result<Rational, RepError> {
    parse_rational(text).map_err(|e| RepError::Schema(format!("{}: {e}", location())))
}

/// Validates a document and builds its weight system.
pub fn load_weight_system(doc: &WeightDocument) -> Result<WeightSystem, RepError> {
    let mut gl = Vec::new();
    let mut torus = Vec::new();
    for (i, block) in doc.blocks.iter().enumerate() {
        match block {
            BlockSpec::Gl { n } => {
                if !torus.is_empty() {
                    return Err(RepError::Schema(format!(
                        "blocks[{i}]: GL blocks must precede torus blocks"
                    )));
                }
                gl.push(*n);
            }
            BlockSpec::Torus { scale } => {
                torus.push(rational_at(scale, || format!("blocks[{i}].scale"))?);
            }
        }
    }
    let mut gl_scales = vec![Rational::one(); gl.len()];
    if let Some(scales) = &doc.metric_scales {
        if scales.len() != doc.blocks.len() {
            return Err(RepError::Schema(format!(
                "metric_scales has {} entries, expected one per block ({})",
                scales.len(),
                doc.blocks.len()
            )));
        }
        let parsed = scales
            .iter()
            .enumerate()
            .map(|(i, s)| rational_at(s, || format!("metric_scales[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        for (i, s) in parsed.into_iter().enumerate() {
            if i < gl.len() {
                gl_scales[i] = s;
            } else {
                torus[i - gl.len()] *= s;
            }
        }
    }
    let blocks = BlockStructure::new(gl, torus)?;
    let entries = doc
        .weights
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let coords = w
                .coords
                .iter()
                .enumerate()
                .map(|(k, c)| rational_at(c, || format!("weights[{i}] ({:?}) coordinate {k}", w.label)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((w.label.clone(), coords))
        })
        .collect::<Result<Vec<_>, RepError>>()?;
    WeightSystem::with_scales(blocks, gl_scales, entries)
}

impl WeightSystem {
    /// Document that [`load_weight_system`] maps back to this system.
    pub fn to_document(&self) -> WeightDocument {
        let blocks = self
            .blocks()
            .gl_blocks()
            .iter()
            .map(|&n| BlockSpec::Gl { n })
            .chain(self.blocks().extra_torus().iter().map(|s| BlockSpec::Torus { scale: s.to_string() }))
            .collect();
        let metric_scales = self.gl_scales().iter().any(|s| !s.is_one()).then(|| {
            self.gl_scales()
                .iter()
                .map(ToString::to_string)
                .chain(self.blocks().extra_torus().iter().map(|_| "1".to_string()))
                .collect()
        });
        WeightDocument {
            blocks,
            weights: self
                .entries()
                .iter()
                .map(|(label, w)| WeightEntry {
                    label: label.clone(),
                    coords: w.coords().iter().map(ToString::to_string).collect(),
                })
                .collect(),
            metric_scales,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vector;

    fn doc(json: &str) -> WeightDocument {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn explicit_binary_cubic() {
        let d = doc(r#"{"blocks":[{"kind":"GL","n":2}],"weights":[
            {"label":"a","coords":["3","-3"]},{"label":"b","coords":["1","-1"]},
            {"label":"c","coords":["-1","1"]},{"label":"d","coords":["-3","3"]}]}"#);
        let ws = load_weight_system(&d).unwrap();
        assert_eq!(ws.len(), 4);
        assert_eq!(ws.weight(3).coords(), &vector(&[(-3, 1), (3, 1)])[..]);
    }

    #[test]
    fn reports_trace_violation() {
        let d = doc(r#"{"blocks":[{"kind":"GL","n":2}],"weights":[{"label":"a","coords":["1","0"]}]}"#);
        assert_eq!(
            load_weight_system(&d).unwrap_err().to_string(),
            "block 1 coordinates sum to 1, expected 0"
        );
    }

    #[test]
    fn reports_bad_literals_and_labels() {
        let d = doc(r#"{"blocks":[{"kind":"GL","n":2}],"weights":[{"label":"a","coords":["0.5","-1/2"]}]}"#);
        let msg = load_weight_system(&d).unwrap_err().to_string();
        assert!(msg.contains("weights[0]") && msg.contains("coordinate 0"), "{msg}");
        let d = doc(r#"{"blocks":[{"kind":"GL","n":1}],"weights":[
            {"label":"a","coords":["0"]},{"label":"a","coords":["0"]}]}"#);
        assert_eq!(load_weight_system(&d).unwrap_err(), RepError::DuplicateLabel("a".into()));
    }

    #[test]
    fn schema_is_strict() {
        assert!(serde_json::from_str::<WeightDocument>(r#"{"blocks":[],"weights":[],"extra":1}"#).is_err());
        assert!(serde_json::from_str::<WeightDocument>(r#"{"blocks":[{"kind":"GL","n":2,"m":1}],"weights":[]}"#).is_err());
        assert!(serde_json::from_str::<WeightDocument>(r#"{"blocks":[{"kind":"SL","n":2}],"weights":[]}"#).is_err());
        let d = doc(r#"{"blocks":[{"kind":"torus","scale":"1"},{"kind":"GL","n":2}],"weights":[]}"#);
        assert!(matches!(load_weight_system(&d), Err(RepError::Schema(_))));
    }

    #[test]
    fn rejects_non_invariant_weights() {
        let d = doc(r#"{"blocks":[{"kind":"GL","n":2}],"weights":[{"label":"a","coords":["1","-1"]}]}"#);
        let err = load_weight_system(&d).unwrap_err();
        assert_eq!(
            err.to_string(),
            "weights are not invariant under permuting coordinates 1 and 2 (block 1); no weight maps to (-1, 1)"
        );
    }

    #[test]
    fn scales_round_trip() {
        let d = doc(r#"{"blocks":[{"kind":"GL","n":2},{"kind":"torus","scale":"1/25"}],
            "weights":[{"label":"a","coords":["1","-1","4"]},{"label":"b","coords":["-1","1","4"]}],
            "metric_scales":["2","3"]}"#);
        let ws = load_weight_system(&d).unwrap();
        assert_eq!(ws.metric().diagonal_scales().unwrap()[0], crate::geometry::int(2));
        assert_eq!(ws.metric().diagonal_scales().unwrap()[2], crate::geometry::rat(3, 25));
        let again = load_weight_system(&ws.to_document()).unwrap();
        assert_eq!(again, ws);
    }
}
