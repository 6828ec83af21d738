//! Finite Kripke frames and models.
//!
//! A frame has one accessibility relation per agent plus a separate relation
//! for `C`. It is a CKL-frame when the `C` relation is exactly the
//! reflexive-transitive closure of the union of the agent relations.

mod enumerate;
mod json;
mod relation;

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::formula::{expand, Agent, AgentSet, Formula};

pub use enumerate::{FrameSpace, MAX_EXHAUSTIVE_BITS};
pub use json::{ModelFile, ModelFileError};
pub use relation::{Relation, WorldSet};

/// Largest `|vars| * |W|` for which [`valid_in_frame`] enumerates valuations.
pub const VALUATION_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KripkeError {
    #[error("a frame needs at least one world")]
    NoWorlds,
    #[error("expected {expected} agent relations, got {got}")]
    RelationCount { expected: usize, got: usize },
    #[error("relation ranges over {got} worlds, frame has {expected}")]
    RelationSize { expected: usize, got: usize },
    #[error("agent {0} is not part of the frame")]
    UnknownAgent(Agent),
    #[error("world {world} out of range for variable `{var}`")]
    WorldOutOfRange { var: String, world: usize },
    #[error("{bits} relation bits exceeds the exhaustive enumeration cap of {cap}")]
    EnumerationCap { bits: usize, cap: usize },
    #[error("{vars} variables over {worlds} worlds exceeds the valuation cap of {cap} bits")]
    ValuationCap { vars: usize, worlds: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    agents: AgentSet,
    r_k: Vec<Relation>,
    r_c: Relation,
}

impl Frame {
    /// `r_k` holds one relation per agent, in the agent set's order.
    pub fn new(agents: AgentSet, r_k: Vec<Relation>, r_c: Relation) -> Result<Self, KripkeError> {
        let n = r_c.size();
        if n == 0 {
            return Err(KripkeError::NoWorlds);
        }
        if r_k.len() != agents.len() {
            return Err(KripkeError::RelationCount {
                expected: agents.len(),
                got: r_k.len(),
            });
        }
        if let Some(r) = r_k.iter().find(|r| r.size() != n) {
            return Err(KripkeError::RelationSize {
                expected: n,
                got: r.size(),
            });
        }
        Ok(Frame { agents, r_k, r_c })
    }

    /// The CKL-frame with the given agent relations: `r_c` is set to the closure.
    pub fn with_closure(agents: AgentSet, r_k: Vec<Relation>) -> Result<Self, KripkeError> {
        let n = r_k.first().map_or(0, Relation::size);
        let mut frame = Frame::new(agents, r_k, Relation::empty(n))?;
        frame.r_c = frame.r_e().rtc();
        Ok(frame)
    }

    pub fn world_count(&self) -> usize {
        self.r_c.size()
    }

    pub fn agents(&self) -> &AgentSet {
        &self.agents
    }

    pub fn relation(&self, agent: Agent) -> Option<&Relation> {
        self.agents.index_of(agent).map(|i| &self.r_k[i])
    }

    /// Agent relations in agent order.
    pub fn agent_relations(&self) -> &[Relation] {
        &self.r_k
    }

    pub fn common_relation(&self) -> &Relation {
        &self.r_c
    }

    /// `R_E`, the union of the agent relations.
    pub fn r_e(&self) -> Relation {
        let mut acc = Relation::empty(self.world_count());
        for r in &self.r_k {
            acc.union_with(r);
        }
        acc
    }

    pub fn is_ckl_frame(&self) -> bool {
        self.r_c == self.r_e().rtc()
    }

    pub fn all_worlds(&self) -> WorldSet {
        let mut s = FixedBitSet::with_capacity(self.world_count());
        s.insert_range(..);
        s
    }
}

/// A frame together with a valuation. Variables missing from the valuation denote the empty set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel {
    frame: Frame,
    valuation: BTreeMap<String, WorldSet>,
}

impl KripkeModel {
    pub fn new(frame: Frame, valuation: BTreeMap<String, WorldSet>) -> Result<Self, KripkeError> {
        let n = frame.world_count();
        for (var, set) in &valuation {
            if let Some(world) = set.ones().find(|&w| w >= n) {
                return Err(KripkeError::WorldOutOfRange {
                    var: var.clone(),
                    world,
                });
            }
        }
        let valuation = valuation
            .into_iter()
            .map(|(k, v)| {
                let mut s = FixedBitSet::with_capacity(n);
                s.extend(v.ones());
                (k, s)
            })
            .collect();
        Ok(KripkeModel { frame, valuation })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn valuation(&self) -> &BTreeMap<String, WorldSet> {
        &self.valuation
    }

    /// The extension of `f`: the set of worlds where it holds.
    pub fn eval(&self, f: &Formula) -> Result<WorldSet, KripkeError> {
        eval_with(&self.frame, &self.valuation, f)
    }
}

fn eval_with(
    frame: &Frame,
    valuation: &BTreeMap<String, WorldSet>,
    f: &Formula,
) -> Result<WorldSet, KripkeError> {
    eval_core(frame, valuation, &expand(f, frame.agents()))
}

fn eval_core(
    frame: &Frame,
    valuation: &BTreeMap<String, WorldSet>,
    f: &Formula,
) -> Result<WorldSet, KripkeError> {
    let n = frame.world_count();
    Ok(match f {
        Formula::Var(v) => valuation
            .get(v)
            .cloned()
            .unwrap_or_else(|| FixedBitSet::with_capacity(n)),
        Formula::Top => frame.all_worlds(),
        Formula::Bot => FixedBitSet::with_capacity(n),
        Formula::Not(g) => {
            let mut s = eval_core(frame, valuation, g)?;
            s.toggle_range(..);
            s
        }
        Formula::And(g, h) => {
            let mut s = eval_core(frame, valuation, g)?;
            s.intersect_with(&eval_core(frame, valuation, h)?);
            s
        }
        Formula::K(a, g) => {
            let r = frame.relation(*a).ok_or(KripkeError::UnknownAgent(*a))?;
            r.box_of(&eval_core(frame, valuation, g)?)
        }
        Formula::C(g) => frame.r_c.box_of(&eval_core(frame, valuation, g)?),
        Formula::Or(..) | Formula::Implies(..) | Formula::Iff(..) | Formula::E(_) => {
            unreachable!("formula was expanded")
        }
    })
}

/// Whether `f` holds at every world under every valuation of its variables.
///
/// Valuations are enumerated exhaustively, so `|vars(f)| * |W|` is capped at
/// [`VALUATION_CAP`].
pub fn valid_in_frame(frame: &Frame, f: &Formula) -> Result<bool, KripkeError> {
    let vars: Vec<String> = f.vars().into_iter().collect();
    let n = frame.world_count();
    let bits = vars.len() * n;
    if bits > VALUATION_CAP {
        return Err(KripkeError::ValuationCap {
            vars: vars.len(),
            worlds: n,
            cap: VALUATION_CAP,
        });
    }
    let expanded = expand(f, frame.agents());
    for code in 0u64..(1u64 << bits) {
        let valuation: BTreeMap<String, WorldSet> = vars
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut s = FixedBitSet::with_capacity(n);
                for w in 0..n {
                    if code >> (i * n + w) & 1 == 1 {
                        s.insert(w);
                    }
                }
                (v.clone(), s)
            })
            .collect();
        let ext = eval_core(frame, &valuation, &expanded)?;
        if ext.count_ones(..) != n {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The three common-knowledge schemas instantiated with one variable `p`:
/// reflexivity `C p -> p`, the fixpoint axiom `C p -> E C p` and the
/// induction axiom `C (p -> E p) -> p -> C p`.
pub fn ckl_schema_instances() -> [Formula; 3] {
    let p = Formula::var("p");
    [
        Formula::c(p.clone()).implies(p.clone()),
        Formula::c(p.clone()).implies(Formula::e(Formula::c(p.clone()))),
        Formula::c(p.clone().implies(Formula::e(p.clone())))
            .implies(p.clone().implies(Formula::c(p))),
    ]
}
