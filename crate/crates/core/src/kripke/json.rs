//! JSON model/frame files.
//!
//! ```json
//! {"worlds":3,"agents":[1,2],"r_k":{"1":[[0,1]],"2":[]},"r_c":[[0,0]],"valuation":{"p":[0,2]}}
//! ```
//!
//! Relations are lists of `[from, to]` pairs. A frame file is a model file
//! without `valuation`. Files written by [`ModelFile::to_json`] list pairs and
//! worlds in ascending order, so reading and re-writing is byte-identical.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Frame, KripkeError, KripkeModel, Relation};
use crate::formula::{Agent, AgentSet, AgentSetError};

#[derive(Debug, Error)]
pub enum ModelFileError {
    #[error("invalid JSON")]
    Json(#[from] serde_json::Error),
    #[error("invalid agent list")]
    Agents(#[from] AgentSetError),
    #[error("no relation given for agent {0}")]
    MissingRelation(Agent),
    #[error("relation key `{0}` does not name an agent")]
    UnknownRelation(String),
    #[error("pair ({}, {}) in relation `{relation}` is out of range", .pair.0, .pair.1)]
    PairOutOfRange {
        relation: String,
        pair: (usize, usize),
    },
    #[error("world {world} in valuation of `{var}` is out of range")]
    WorldOutOfRange { var: String, world: usize },
    #[error(transparent)]
    Kripke(#[from] KripkeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub worlds: usize,
    pub agents: Vec<Agent>,
    pub r_k: BTreeMap<String, Vec<(usize, usize)>>,
    pub r_c: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub valuation: BTreeMap<String, Vec<usize>>,
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<Self, ModelFileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model files always serialize")
    }

    pub fn from_frame(frame: &Frame) -> Self {
        let r_k = frame
            .agents()
            .iter()
            .zip(frame.agent_relations())
            .map(|(a, r)| (a.to_string(), r.pairs().collect()))
            .collect();
        ModelFile {
            worlds: frame.world_count(),
            agents: frame.agents().as_slice().to_vec(),
            r_k,
            r_c: frame.common_relation().pairs().collect(),
            valuation: BTreeMap::new(),
        }
    }

    pub fn from_model(model: &KripkeModel) -> Self {
        let mut file = ModelFile::from_frame(model.frame());
        file.valuation = model
            .valuation()
            .iter()
            .map(|(k, v)| (k.clone(), v.ones().collect()))
            .collect();
        file
    }

    /// The frame described by the file; any valuation is ignored.
    pub fn to_frame(&self) -> Result<Frame, ModelFileError> {
        let agents = AgentSet::new(self.agents.iter().copied())?;
        if let Some(key) = self
            .r_k
            .keys()
            .find(|k| k.parse::<Agent>().map_or(true, |a| !agents.contains(a)))
        {
            return Err(ModelFileError::UnknownRelation(key.clone()));
        }
        let relation = |name: &str, pairs: &[(usize, usize)]| {
            Relation::from_pairs(self.worlds, pairs.iter().copied()).map_err(|pair| {
                ModelFileError::PairOutOfRange {
                    relation: name.to_string(),
                    pair,
                }
            })
        };
        let mut r_k = Vec::with_capacity(agents.len());
        for a in agents.iter() {
            let key = a.to_string();
            let pairs = self
                .r_k
                .get(&key)
                .ok_or(ModelFileError::MissingRelation(a))?;
            r_k.push(relation(&key, pairs)?);
        }
        let r_c = relation("c", &self.r_c)?;
        Ok(Frame::new(agents, r_k, r_c)?)
    }

    pub fn to_model(&self) -> Result<KripkeModel, ModelFileError> {
        let frame = self.to_frame()?;
        let mut valuation = BTreeMap::new();
        for (var, worlds) in &self.valuation {
            let mut set = FixedBitSet::with_capacity(self.worlds);
            for &w in worlds {
                if w >= self.worlds {
                    return Err(ModelFileError::WorldOutOfRange {
                        var: var.clone(),
                        world: w,
                    });
                }
                set.insert(w);
            }
            valuation.insert(var.clone(), set);
        }
        Ok(KripkeModel::new(frame, valuation)?)
    }
}
