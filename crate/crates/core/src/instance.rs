//! The instance file format.
//!
//! An instance file is a JSON document carrying one finite metric space plus
//! named laws, random variables, and sequences over it. All rationals are
//! encoded as canonical strings (`"p/q"` reduced, `"p"` when integral).
//! Printing is canonical — sorted names, sorted pieces, reduced fractions,
//! two-space indentation — and `parse ∘ print` is the identity on canonical
//! documents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauges::SequenceSpec;
use crate::rat::{format_rat, parse_rat};
use crate::rv::{Law, Piece, RandomVariable};
use crate::space::{FinMetricSpace, SpaceRef};

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SpaceDoc {
    points: Vec<String>,
    dist: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SequenceDoc {
    #[serde(default)]
    prefix: Vec<String>,
    cycle: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct InstanceDoc {
    space: SpaceDoc,
    #[serde(default)]
    laws: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    random_variables: BTreeMap<String, Vec<(String, String, usize)>>,
    #[serde(default)]
    sequences: BTreeMap<String, SequenceDoc>,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    provenance: String,
}

/// A validated instance: one space and named members over it.
#[derive(Debug, Clone)]
pub struct InstanceBundle {
    pub space: SpaceRef,
    pub laws: BTreeMap<String, Law>,
    pub random_variables: BTreeMap<String, RandomVariable>,
    pub sequences: BTreeMap<String, SequenceSpec>,
    pub seed: u64,
    pub provenance: String,
}

impl InstanceBundle {
    /// A bundle holding just a space.
    pub fn bare(space: SpaceRef, seed: u64, provenance: String) -> Self {
        InstanceBundle {
            space,
            laws: BTreeMap::new(),
            random_variables: BTreeMap::new(),
            sequences: BTreeMap::new(),
            seed,
            provenance,
        }
    }

    pub fn law(&self, name: &str) -> Result<&Law> {
        self.laws.get(name).ok_or_else(|| Error::MissingEntry {
            kind: "law",
            name: name.to_string(),
        })
    }

    pub fn random_variable(&self, name: &str) -> Result<&RandomVariable> {
        self.random_variables
            .get(name)
            .ok_or_else(|| Error::MissingEntry {
                kind: "random variable",
                name: name.to_string(),
            })
    }

    pub fn sequence(&self, name: &str) -> Result<&SequenceSpec> {
        self.sequences.get(name).ok_or_else(|| Error::MissingEntry {
            kind: "sequence",
            name: name.to_string(),
        })
    }

    /// Canonical JSON document.
    pub fn to_json(&self) -> String {
        let doc = InstanceDoc {
            space: SpaceDoc {
                points: self.space.points().to_vec(),
                dist: self
                    .space
                    .dist_matrix()
                    .iter()
                    .map(|row| row.iter().map(format_rat).collect())
                    .collect(),
            },
            laws: self
                .laws
                .iter()
                .map(|(name, law)| {
                    (
                        name.clone(),
                        law.weights().iter().map(format_rat).collect(),
                    )
                })
                .collect(),
            random_variables: self
                .random_variables
                .iter()
                .map(|(name, rv)| {
                    (
                        name.clone(),
                        rv.pieces()
                            .iter()
                            .map(|p| (format_rat(&p.start), format_rat(&p.end), p.point))
                            .collect(),
                    )
                })
                .collect(),
            sequences: self
                .sequences
                .iter()
                .map(|(name, seq)| {
                    (
                        name.clone(),
                        SequenceDoc {
                            prefix: seq
                                .prefix()
                                .iter()
                                .map(|rv| self.name_of_rv(rv))
                                .collect(),
                            cycle: seq.cycle().iter().map(|rv| self.name_of_rv(rv)).collect(),
                        },
                    )
                })
                .collect(),
            seed: self.seed,
            provenance: self.provenance.clone(),
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("instance documents serialize");
        out.push('\n');
        out
    }

    fn name_of_rv(&self, rv: &RandomVariable) -> String {
        self.random_variables
            .iter()
            .find(|(_, candidate)| *candidate == rv)
            .map(|(name, _)| name.clone())
            .expect("sequence members are named random variables of the bundle")
    }

    /// Parses and validates an instance document.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: InstanceDoc = serde_json::from_str(text)?;
        let dist = doc
            .space
            .dist
            .iter()
            .map(|row| row.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let space = FinMetricSpace::new(doc.space.points, dist)?;

        let mut laws = BTreeMap::new();
        for (name, weights) in doc.laws {
            let weights = weights
                .iter()
                .map(|s| parse_rat(s))
                .collect::<Result<Vec<_>>>()?;
            laws.insert(name, Law::new(space.clone(), weights)?);
        }

        let mut random_variables = BTreeMap::new();
        for (name, pieces) in doc.random_variables {
            let pieces = pieces
                .iter()
                .map(|(a, b, point)| {
                    Ok(Piece {
                        start: parse_rat(a)?,
                        end: parse_rat(b)?,
                        point: *point,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            random_variables.insert(name, RandomVariable::new(space.clone(), pieces)?);
        }

        let mut sequences = BTreeMap::new();
        for (name, seq) in doc.sequences {
            let resolve = |rv_name: &String| -> Result<RandomVariable> {
                random_variables
                    .get(rv_name)
                    .cloned()
                    .ok_or_else(|| Error::MissingEntry {
                        kind: "random variable",
                        name: rv_name.clone(),
                    })
            };
            let prefix = seq.prefix.iter().map(resolve).collect::<Result<Vec<_>>>()?;
            let cycle = seq.cycle.iter().map(resolve).collect::<Result<Vec<_>>>()?;
            sequences.insert(name, SequenceSpec::new(prefix, cycle)?);
        }

        Ok(InstanceBundle {
            space,
            laws,
            random_variables,
            sequences,
            seed: doc.seed,
            provenance: doc.provenance,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, ratio};

    fn sample_bundle() -> InstanceBundle {
        let space = FinMetricSpace::new(
            vec!["a".into(), "b".into()],
            vec![vec![int(0), int(1)], vec![int(1), int(0)]],
        )
        .unwrap();
        let mut bundle = InstanceBundle::bare(space.clone(), 42, "hand-written".into());
        bundle.laws.insert(
            "P".into(),
            Law::new(space.clone(), vec![ratio(1, 2), ratio(1, 2)]).unwrap(),
        );
        bundle.random_variables.insert(
            "xi".into(),
            RandomVariable::new(
                space.clone(),
                vec![
                    Piece { start: int(0), end: ratio(1, 2), point: 0 },
                    Piece { start: ratio(1, 2), end: int(1), point: 1 },
                ],
            )
            .unwrap(),
        );
        bundle.random_variables.insert(
            "eta".into(),
            RandomVariable::constant(space, 1).unwrap(),
        );
        bundle.sequences.insert(
            "s".into(),
            SequenceSpec::new(
                vec![bundle.random_variables["xi"].clone()],
                vec![bundle.random_variables["eta"].clone()],
            )
            .unwrap(),
        );
        bundle
    }

    #[test]
    fn canonical_round_trip_is_identity() {
        let bundle = sample_bundle();
        let text = bundle.to_json();
        let parsed = InstanceBundle::from_json(&text).unwrap();
        assert_eq!(parsed.to_json(), text);
        assert_eq!(parsed.space, bundle.space);
        assert_eq!(parsed.laws, bundle.laws);
        assert_eq!(parsed.random_variables, bundle.random_variables);
        assert_eq!(parsed.seed, 42);
    }

    #[test]
    fn parse_rejects_invalid_members() {
        let bundle = sample_bundle();
        let text = bundle.to_json();
        // corrupt a law weight
        let bad = text.replace("\"1/2\",\n      \"1/2\"", "\"1/2\",\n      \"1/3\"");
        assert!(bad != text);
        assert!(InstanceBundle::from_json(&bad).is_err());
        // unknown rv in a sequence
        let bad2 = text.replace("\"cycle\": [\n        \"eta\"\n      ]", "\"cycle\": [\n        \"ghost\"\n      ]");
        assert!(bad2 != text);
        assert!(InstanceBundle::from_json(&bad2).is_err());
    }

    #[test]
    fn nonexistent_names_error() {
        let bundle = sample_bundle();
        assert!(bundle.law("P").is_ok());
        assert!(bundle.law("nope").is_err());
        assert!(bundle.random_variable("xi").is_ok());
        assert!(bundle.sequence("missing").is_err());
    }
}
