//! Hilbert-style derivations in the finitary axiom system for common
//! knowledge.
//!
//! Axioms: all tautologies, the K-schema for every primitive modal operator,
//! `C φ -> φ`, `C φ -> E C φ` and `C (φ -> E φ) -> φ -> C φ`. Rules: modus
//! ponens, uniform substitution and necessitation for every primitive
//! operator. The primitive operators are the `K_i` and `C`; `E` is only an
//! abbreviation, so it has no K-schema or necessitation instance of its own.
//!
//! Formulas are compared after expanding `E` and nothing else.

mod script;
mod tautology;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::formula::{expand_everyone, Agent, AgentSet, Formula, Modality};

pub use script::{parse_script, ScriptError};
pub use tautology::{is_tautology, TautologyError, MAX_TAUTOLOGY_ATOMS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AxiomId {
    /// `□(φ -> ψ) -> □φ -> □ψ`
    K(Modality),
    /// `C φ -> φ`
    C1,
    /// `C φ -> E C φ`
    C2,
    /// `C (φ -> E φ) -> φ -> C φ`
    C3,
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomId::K(op) => write!(f, "axK {op}"),
            AxiomId::C1 => f.write_str("axC1"),
            AxiomId::C2 => f.write_str("axC2"),
            AxiomId::C3 => f.write_str("axC3"),
        }
    }
}

/// Line references are 1-based, as in proof scripts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Taut,
    Axiom(AxiomId),
    /// `Mp(i, j)`: line `j` is `line i -> this line`.
    Mp(usize, usize),
    Subst(usize, Vec<(String, Formula)>),
    Nec(Modality, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proof {
    pub agents: AgentSet,
    pub lines: Vec<ProofLine>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum RejectReason {
    NoLines,
    UnknownAgent { agent: Agent },
    NotATautology,
    TautologyTooLarge { atoms: usize },
    NotAnInstance { axiom: String },
    BadReference { target: usize },
    MpMismatch { premise: usize, implication: usize },
    SubstMismatch { source: usize },
    NecMismatch { source: usize },
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::NoLines => f.write_str("no lines"),
            RejectReason::UnknownAgent { agent } => write!(f, "unknown agent {agent}"),
            RejectReason::NotATautology => f.write_str("not a tautology"),
            RejectReason::TautologyTooLarge { atoms } => {
                write!(f, "too many propositional atoms ({atoms}) to check")
            }
            RejectReason::NotAnInstance { axiom } => write!(f, "not an instance of {axiom}"),
            RejectReason::BadReference { target } => {
                write!(f, "line {target} is not an earlier line")
            }
            RejectReason::MpMismatch {
                premise,
                implication,
            } => write!(
                f,
                "line {implication} is not line {premise} -> this line"
            ),
            RejectReason::SubstMismatch { source } => {
                write!(f, "not a substitution instance of line {source}")
            }
            RejectReason::NecMismatch { source } => {
                write!(f, "not the necessitation of line {source}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ProofVerdict {
    Accepted,
    /// `line` is 1-based; 0 when the proof has no lines.
    Rejected { line: usize, reason: RejectReason },
}

impl ProofVerdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, ProofVerdict::Accepted)
    }
}

fn strip(op: Modality, f: &Formula) -> Option<&Formula> {
    match (op, f) {
        (Modality::K(a), Formula::K(b, g)) if a == *b => Some(g),
        (Modality::C, Formula::C(g)) => Some(g),
        _ => None,
    }
}

fn split_implies(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Implies(a, b) => Some((a, b)),
        _ => None,
    }
}

/// Whether `f` is an instance of the given axiom schema.
pub fn match_axiom(f: &Formula, which: AxiomId, agents: &AgentSet) -> bool {
    if let AxiomId::K(Modality::K(a)) = which {
        if !agents.contains(a) {
            return false;
        }
    }
    let e = |g: &Formula| expand_everyone(&Formula::e(g.clone()), agents);
    let f = expand_everyone(f, agents);
    let Some((lhs, rhs)) = split_implies(&f) else {
        return false;
    };
    let matched = match which {
        AxiomId::K(op) => (|| {
            let (phi, psi) = split_implies(strip(op, lhs)?)?;
            let (box_phi, box_psi) = split_implies(rhs)?;
            Some(strip(op, box_phi)? == phi && strip(op, box_psi)? == psi)
        })(),
        AxiomId::C1 => strip(Modality::C, lhs).map(|phi| phi == rhs),
        AxiomId::C2 => strip(Modality::C, lhs).map(|_| *rhs == e(lhs)),
        AxiomId::C3 => (|| {
            let (phi, e_phi) = split_implies(strip(Modality::C, lhs)?)?;
            let (phi2, c_phi) = split_implies(rhs)?;
            Some(*e_phi == e(phi) && phi2 == phi && strip(Modality::C, c_phi)? == phi)
        })(),
    };
    matched.unwrap_or(false)
}

fn unknown_agent(f: &Formula, agents: &AgentSet) -> Option<Agent> {
    f.agents().into_iter().find(|a| !agents.contains(*a))
}

/// Checks every line of `proof` in order and reports the first failure.
pub fn check_proof(proof: &Proof) -> ProofVerdict {
    if proof.lines.is_empty() {
        return ProofVerdict::Rejected {
            line: 0,
            reason: RejectReason::NoLines,
        };
    }
    let agents = &proof.agents;
    let mut normal: Vec<Formula> = Vec::with_capacity(proof.lines.len());
    for (idx, line) in proof.lines.iter().enumerate() {
        let number = idx + 1;
        if let Err(reason) = check_line(line, &normal, agents) {
            return ProofVerdict::Rejected {
                line: number,
                reason,
            };
        }
        normal.push(expand_everyone(&line.formula, agents));
    }
    ProofVerdict::Accepted
}

fn check_line(
    line: &ProofLine,
    earlier: &[Formula],
    agents: &AgentSet,
) -> Result<(), RejectReason> {
    if let Some(agent) = unknown_agent(&line.formula, agents) {
        return Err(RejectReason::UnknownAgent { agent });
    }
    let here = expand_everyone(&line.formula, agents);
    let fetch = |target: usize| {
        target
            .checked_sub(1)
            .and_then(|i| earlier.get(i))
            .ok_or(RejectReason::BadReference { target })
    };
    let check_op = |op: Modality| match op {
        Modality::K(agent) if !agents.contains(agent) => Err(RejectReason::UnknownAgent { agent }),
        _ => Ok(()),
    };
    match &line.justification {
        Justification::Taut => match is_tautology(&line.formula, agents) {
            Ok(true) => Ok(()),
            Ok(false) => Err(RejectReason::NotATautology),
            Err(TautologyError::TooManyAtoms { atoms, .. }) => {
                Err(RejectReason::TautologyTooLarge { atoms })
            }
        },
        Justification::Axiom(axiom) => {
            if let AxiomId::K(op) = axiom {
                check_op(*op)?;
            }
            if match_axiom(&line.formula, *axiom, agents) {
                Ok(())
            } else {
                Err(RejectReason::NotAnInstance {
                    axiom: axiom.to_string(),
                })
            }
        }
        Justification::Mp(premise, implication) => {
            let p = fetch(*premise)?;
            let imp = fetch(*implication)?;
            match split_implies(imp) {
                Some((a, b)) if a == p && *b == here => Ok(()),
                _ => Err(RejectReason::MpMismatch {
                    premise: *premise,
                    implication: *implication,
                }),
            }
        }
        Justification::Subst(source, map) => {
            let src = fetch(*source)?;
            for (_, g) in map {
                if let Some(agent) = unknown_agent(g, agents) {
                    return Err(RejectReason::UnknownAgent { agent });
                }
            }
            let map: BTreeMap<String, Formula> = map
                .iter()
                .map(|(v, g)| (v.clone(), expand_everyone(g, agents)))
                .collect();
            if src.substitute(&map) == here {
                Ok(())
            } else {
                Err(RejectReason::SubstMismatch { source: *source })
            }
        }
        Justification::Nec(op, source) => {
            check_op(*op)?;
            let src = fetch(*source)?;
            if strip(*op, &here) == Some(src) {
                Ok(())
            } else {
                Err(RejectReason::NecMismatch { source: *source })
            }
        }
    }
}
