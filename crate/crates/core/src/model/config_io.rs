//! JSON configuration documents. Field names are a fixed interface; parsers
//! reject unknown keys.

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::potential::PiecewisePotential;
use super::seq::{CustomSeq, SymbolicSequence};
use super::support::Support;
use super::{HamiltonianConfig, InteractionKind, ModelError};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigDoc {
    kind: InteractionKind,
    support: SupportDoc,
    strengths: StrengthsDoc,
    #[serde(default)]
    potential: PotentialDoc,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SupportDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rule: Option<RuleDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StrengthsDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<Vec<StrengthValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rule: Option<RuleDoc>,
}

/// A strength entry: a number, or the string "inf" (δ' decoupling).
#[derive(Debug, Clone, Copy)]
struct StrengthValue(f64);

impl Serialize for StrengthValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for StrengthValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(StrengthValue(v)),
            Raw::Str(s) if s == "inf" => Ok(StrengthValue(f64::INFINITY)),
            Raw::Str(s) => Err(D::Error::custom(format!("unexpected strength literal {s:?}"))),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum RuleDoc {
    /// x_k (or value_k) = c·k^p
    Power { c: f64, p: f64 },
    /// value_k = c0 + c1·k + c2·k^p
    AffinePower { c0: f64, c1: f64, c2: f64, p: f64 },
    /// value_k = c·r^k
    Geometric { c: f64, r: f64 },
    /// gaps d_k = c·k^p
    SpacingPower { c: f64, p: f64 },
    /// gaps d_k = c·r^k
    SpacingGeometric { c: f64, r: f64 },
    /// paired family with parameter a > 1
    Brasche { a: f64 },
}

#[derive(Debug, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct PotentialDoc {
    #[serde(default)]
    breakpoints: Vec<f64>,
    #[serde(default)]
    values: Vec<f64>,
    #[serde(default)]
    tail: f64,
}

/// Parse a JSON configuration document and validate it.
pub fn config_from_json(text: &str) -> Result<HamiltonianConfig, String> {
    let doc: ConfigDoc = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let config = doc_to_config(doc)?;
    config.validate().map_err(|e: ModelError| e.to_string())?;
    Ok(config)
}

/// Serialize a configuration back to the JSON document form, when the
/// configuration is expressible in the document vocabulary.
pub fn config_to_json(config: &HamiltonianConfig) -> Result<String, String> {
    let support = match &config.support {
        Support::Points(xs) => SupportDoc { points: Some(xs.clone()), rule: None },
        Support::PowerPositions { c, p } => {
            SupportDoc { points: None, rule: Some(RuleDoc::Power { c: *c, p: *p }) }
        }
        Support::SpacingRule(SymbolicSequence::PowerLaw { c, p }) => {
            SupportDoc { points: None, rule: Some(RuleDoc::SpacingPower { c: *c, p: *p }) }
        }
        Support::SpacingRule(SymbolicSequence::Geometric { c, r }) => {
            SupportDoc { points: None, rule: Some(RuleDoc::SpacingGeometric { c: *c, r: *r }) }
        }
        Support::BraschePair { a } => {
            SupportDoc { points: None, rule: Some(RuleDoc::Brasche { a: *a }) }
        }
        other => return Err(format!("support not expressible in the document form: {other:?}")),
    };
    let strengths = match &config.strengths {
        SymbolicSequence::Finite(v) => StrengthsDoc {
            values: Some(v.iter().map(|&x| StrengthValue(x)).collect()),
            rule: None,
        },
        SymbolicSequence::PowerLaw { c, p } => {
            StrengthsDoc { values: None, rule: Some(RuleDoc::Power { c: *c, p: *p }) }
        }
        SymbolicSequence::AffinePower { c0, c1, c2, p } => StrengthsDoc {
            values: None,
            rule: Some(RuleDoc::AffinePower { c0: *c0, c1: *c1, c2: *c2, p: *p }),
        },
        SymbolicSequence::Geometric { c, r } => {
            StrengthsDoc { values: None, rule: Some(RuleDoc::Geometric { c: *c, r: *r }) }
        }
        SymbolicSequence::Custom(c) if c.label.starts_with("brasche:") => {
            let a: f64 = c.label["brasche:".len()..].parse().map_err(|_| "bad label")?;
            StrengthsDoc { values: None, rule: Some(RuleDoc::Brasche { a }) }
        }
        other => {
            return Err(format!("strengths not expressible in the document form: {other:?}"))
        }
    };
    let doc = ConfigDoc {
        kind: config.kind,
        support,
        strengths,
        potential: PotentialDoc {
            breakpoints: config.potential.breakpoints.clone(),
            values: config.potential.values.clone(),
            tail: config.potential.tail,
        },
    };
    serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())
}

/// Alternating strengths α_{2k-1} = a^k, α_{2k} = -a^k used with the paired
/// support family.
pub fn brasche_strengths(a: f64) -> SymbolicSequence {
    SymbolicSequence::Custom(CustomSeq::new(
        format!("brasche:{a}"),
        move |k| {
            let m = k.div_ceil(2) as f64;
            let v = a.powf(m);
            if k % 2 == 1 {
                v
            } else {
                -v
            }
        },
        None,
    ))
}

fn doc_to_config(doc: ConfigDoc) -> Result<HamiltonianConfig, String> {
    let support = match (doc.support.points, doc.support.rule) {
        (Some(points), None) => Support::Points(points),
        (None, Some(rule)) => match rule {
            RuleDoc::Power { c, p } => Support::PowerPositions { c, p },
            RuleDoc::SpacingPower { c, p } => {
                Support::SpacingRule(SymbolicSequence::PowerLaw { c, p })
            }
            RuleDoc::SpacingGeometric { c, r } => {
                Support::SpacingRule(SymbolicSequence::Geometric { c, r })
            }
            RuleDoc::Brasche { a } => Support::BraschePair { a },
            other => return Err(format!("rule {other:?} is not a support rule")),
        },
        _ => return Err("support requires exactly one of points/rule".into()),
    };
    let strengths = match (doc.strengths.values, doc.strengths.rule) {
        (Some(values), None) => {
            SymbolicSequence::Finite(values.into_iter().map(|v| v.0).collect())
        }
        (None, Some(rule)) => match rule {
            RuleDoc::Power { c, p } => SymbolicSequence::PowerLaw { c, p },
            RuleDoc::AffinePower { c0, c1, c2, p } => {
                SymbolicSequence::AffinePower { c0, c1, c2, p }
            }
            RuleDoc::Geometric { c, r } => SymbolicSequence::Geometric { c, r },
            RuleDoc::Brasche { a } => brasche_strengths(a),
            other => return Err(format!("rule {other:?} is not a strengths rule")),
        },
        _ => return Err("strengths requires exactly one of values/rule".into()),
    };
    Ok(HamiltonianConfig {
        kind: doc.kind,
        support,
        strengths,
        potential: PiecewisePotential::new(
            doc.potential.breakpoints,
            doc.potential.values,
            doc.potential.tail,
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_finite_delta() {
        let text = r#"{
            "kind": "delta",
            "support": {"points": [1.0, 2.0]},
            "strengths": {"values": [-1.0, 3.0]},
            "potential": {"breakpoints": [], "values": [], "tail": 0.0}
        }"#;
        let c = config_from_json(text).unwrap();
        assert_eq!(c.kind, InteractionKind::Delta);
        assert_eq!(c.finite_len(), Some(2));
    }

    #[test]
    fn parses_inf_beta() {
        let text = r#"{
            "kind": "delta_prime",
            "support": {"points": [1.0, 2.0]},
            "strengths": {"values": ["inf", -2.0]}
        }"#;
        let c = config_from_json(text).unwrap();
        let (_, betas) = c.finite_data().unwrap();
        assert!(betas[0].is_infinite());
    }

    #[test]
    fn rejects_unknown_keys() {
        let text = r#"{
            "kind": "delta",
            "support": {"points": [1.0]},
            "strengths": {"values": [1.0]},
            "potential": {"breakpoints": [], "values": [], "tail": 0.0},
            "extra": 1
        }"#;
        assert!(config_from_json(text).is_err());
        let text = r#"{
            "kind": "delta",
            "support": {"points": [1.0], "weird": 2},
            "strengths": {"values": [1.0]}
        }"#;
        assert!(config_from_json(text).is_err());
    }

    #[test]
    fn parses_rules() {
        let text = r#"{
            "kind": "delta",
            "support": {"rule": {"type": "power", "c": 2.0, "p": 0.5}},
            "strengths": {"rule": {"type": "power", "c": -5.0, "p": 0.5}}
        }"#;
        let c = config_from_json(text).unwrap();
        assert!(matches!(c.support, Support::PowerPositions { .. }));
    }

    #[test]
    fn round_trips() {
        let text = r#"{
            "kind": "delta_prime",
            "support": {"rule": {"type": "spacing_power", "c": 1.0, "p": -1.0}},
            "strengths": {"rule": {"type": "power", "c": 1.0, "p": 3.0}}
        }"#;
        let c = config_from_json(text).unwrap();
        let back = config_to_json(&c).unwrap();
        let c2 = config_from_json(&back).unwrap();
        assert_eq!(c, c2);
    }
}
