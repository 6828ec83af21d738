//! The language of common knowledge logic.
//!
//! Formulas are built from propositional variables, `top`/`bot`, conjunction,
//! negation, one knowledge operator `K_i` per agent and the common knowledge
//! operator `C`. Disjunction, implication, equivalence and the "everyone
//! knows" operator `E` are kept as AST nodes so that printed formulas and
//! proof scripts look the way they were written; every semantic operation
//! calls [`expand`] (or [`expand_everyone`]) first.

mod display;
mod parser;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use parser::{parse, ParseError};

/// Agent identifier. Agents are small positive integers, written `K1`, `K2`, ...
pub type Agent = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AgentSetError {
    #[error("agent set must be nonempty")]
    Empty,
    #[error("duplicate agent {0}")]
    Duplicate(Agent),
}

/// A nonempty finite set of agents, kept in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Agent>", into = "Vec<Agent>")]
pub struct AgentSet(Vec<Agent>);

impl AgentSet {
    pub fn new(agents: impl IntoIterator<Item = Agent>) -> Result<Self, AgentSetError> {
        let mut agents: Vec<Agent> = agents.into_iter().collect();
        agents.sort_unstable();
        if agents.is_empty() {
            return Err(AgentSetError::Empty);
        }
        if let Some(w) = agents.windows(2).find(|w| w[0] == w[1]) {
            return Err(AgentSetError::Duplicate(w[0]));
        }
        Ok(AgentSet(agents))
    }

    /// The agents `1..=n`.
    ///
    /// # Panics
    /// Panics if `n == 0`.
    pub fn first_n(n: u32) -> Self {
        assert!(n > 0, "agent set must be nonempty");
        AgentSet((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, agent: Agent) -> bool {
        self.0.binary_search(&agent).is_ok()
    }

    /// Position of `agent` in the canonical order, used to index per-agent relations.
    pub fn index_of(&self, agent: Agent) -> Option<usize> {
        self.0.binary_search(&agent).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Agent> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Agent] {
        &self.0
    }
}

impl TryFrom<Vec<Agent>> for AgentSet {
    type Error = AgentSetError;

    fn try_from(value: Vec<Agent>) -> Result<Self, Self::Error> {
        AgentSet::new(value)
    }
}

impl From<AgentSet> for Vec<Agent> {
    fn from(value: AgentSet) -> Self {
        value.0
    }
}

/// A primitive modal operator: one of the `K_i`, or `C`.
///
/// `E` is deliberately absent; it abbreviates a conjunction of `K_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Modality {
    K(Agent),
    C,
}

impl Modality {
    pub fn apply(self, f: Formula) -> Formula {
        match self {
            Modality::K(a) => Formula::K(a, Box::new(f)),
            Modality::C => Formula::C(Box::new(f)),
        }
    }
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modality::K(a) => write!(f, "K{a}"),
            Modality::C => f.write_str("C"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Top,
    Bot,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    K(Agent, Box<Formula>),
    E(Box<Formula>),
    C(Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Self {
        Formula::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, rhs: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: Formula) -> Self {
        Formula::Implies(Box::new(self), Box::new(rhs))
    }

    pub fn iff(self, rhs: Formula) -> Self {
        Formula::Iff(Box::new(self), Box::new(rhs))
    }

    pub fn k(agent: Agent, f: Formula) -> Self {
        Formula::K(agent, Box::new(f))
    }

    pub fn e(f: Formula) -> Self {
        Formula::E(Box::new(f))
    }

    pub fn c(f: Formula) -> Self {
        Formula::C(Box::new(f))
    }

    /// True if the formula uses only `Var`, `Top`, `Bot`, `And`, `Not`, `K` and `C`.
    pub fn is_core(&self) -> bool {
        match self {
            Formula::Var(_) | Formula::Top | Formula::Bot => true,
            Formula::Not(f) | Formula::K(_, f) | Formula::C(f) => f.is_core(),
            Formula::And(f, g) => f.is_core() && g.is_core(),
            Formula::Or(..) | Formula::Implies(..) | Formula::Iff(..) | Formula::E(_) => false,
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::Top | Formula::Bot => {}
            Formula::Not(f) | Formula::K(_, f) | Formula::E(f) | Formula::C(f) => {
                f.collect_vars(out)
            }
            Formula::And(f, g) | Formula::Or(f, g) | Formula::Implies(f, g) | Formula::Iff(f, g) => {
                f.collect_vars(out);
                g.collect_vars(out);
            }
        }
    }

    /// Agents mentioned by `K` nodes.
    pub fn agents(&self) -> BTreeSet<Agent> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::K(a, _) = f {
                out.insert(*a);
            }
        });
        out
    }

    fn visit(&self, visitor: &mut impl FnMut(&Formula)) {
        visitor(self);
        match self {
            Formula::Var(_) | Formula::Top | Formula::Bot => {}
            Formula::Not(f) | Formula::K(_, f) | Formula::E(f) | Formula::C(f) => f.visit(visitor),
            Formula::And(f, g) | Formula::Or(f, g) | Formula::Implies(f, g) | Formula::Iff(f, g) => {
                f.visit(visitor);
                g.visit(visitor);
            }
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Top | Formula::Bot => 0,
            Formula::Not(f) | Formula::K(_, f) | Formula::E(f) | Formula::C(f) => 1 + f.depth(),
            Formula::And(f, g) | Formula::Or(f, g) | Formula::Implies(f, g) | Formula::Iff(f, g) => {
                1 + f.depth().max(g.depth())
            }
        }
    }

    /// Simultaneous uniform substitution of formulas for variables.
    pub fn substitute(&self, map: &BTreeMap<String, Formula>) -> Formula {
        self.map_leaves(&|f| match f {
            Formula::Var(v) => map.get(v).cloned(),
            _ => None,
        })
    }

    fn map_leaves(&self, leaf: &impl Fn(&Formula) -> Option<Formula>) -> Formula {
        if let Some(out) = leaf(self) {
            return out;
        }
        let bx = |f: &Formula| Box::new(f.map_leaves(leaf));
        match self {
            Formula::Var(_) | Formula::Top | Formula::Bot => self.clone(),
            Formula::Not(f) => Formula::Not(bx(f)),
            Formula::K(a, f) => Formula::K(*a, bx(f)),
            Formula::E(f) => Formula::E(bx(f)),
            Formula::C(f) => Formula::C(bx(f)),
            Formula::And(f, g) => Formula::And(bx(f), bx(g)),
            Formula::Or(f, g) => Formula::Or(bx(f), bx(g)),
            Formula::Implies(f, g) => Formula::Implies(bx(f), bx(g)),
            Formula::Iff(f, g) => Formula::Iff(bx(f), bx(g)),
        }
    }
}

/// `K_{i1} f & K_{i2} f & ...`, left-nested, in agent order.
fn everyone_knows(f: &Formula, agents: &AgentSet) -> Formula {
    let mut it = agents.iter().map(|a| Formula::k(a, f.clone()));
    let first = it.next().expect("agent set is nonempty");
    it.fold(first, Formula::and)
}

/// Eliminates `E`, `|`, `->` and `<->`, leaving only core connectives.
///
/// `f | g` becomes `~(~f & ~g)`, `f -> g` becomes `~f | g` (then expanded),
/// `f <-> g` becomes `(f -> g) & (g -> f)` (then expanded) and `E f` becomes
/// the conjunction of `K_i f` over all agents.
pub fn expand(f: &Formula, agents: &AgentSet) -> Formula {
    match f {
        Formula::Var(_) | Formula::Top | Formula::Bot => f.clone(),
        Formula::Not(g) => expand(g, agents).not(),
        Formula::K(a, g) => Formula::k(*a, expand(g, agents)),
        Formula::C(g) => Formula::c(expand(g, agents)),
        Formula::E(g) => everyone_knows(&expand(g, agents), agents),
        Formula::And(g, h) => expand(g, agents).and(expand(h, agents)),
        Formula::Or(g, h) => de_morgan_or(expand(g, agents), expand(h, agents)),
        Formula::Implies(g, h) => de_morgan_or(expand(g, agents).not(), expand(h, agents)),
        Formula::Iff(g, h) => {
            let (g, h) = (expand(g, agents), expand(h, agents));
            de_morgan_or(g.clone().not(), h.clone()).and(de_morgan_or(h.not(), g))
        }
    }
}

fn de_morgan_or(f: Formula, g: Formula) -> Formula {
    f.not().and(g.not()).not()
}

/// Eliminates only `E`, keeping the other abbreviations as written.
///
/// This is the normal form used when comparing formulas during proof checking.
pub fn expand_everyone(f: &Formula, agents: &AgentSet) -> Formula {
    let rec = |g: &Formula| Box::new(expand_everyone(g, agents));
    match f {
        Formula::Var(_) | Formula::Top | Formula::Bot => f.clone(),
        Formula::E(g) => everyone_knows(&expand_everyone(g, agents), agents),
        Formula::Not(g) => Formula::Not(rec(g)),
        Formula::K(a, g) => Formula::K(*a, rec(g)),
        Formula::C(g) => Formula::C(rec(g)),
        Formula::And(g, h) => Formula::And(rec(g), rec(h)),
        Formula::Or(g, h) => Formula::Or(rec(g), rec(h)),
        Formula::Implies(g, h) => Formula::Implies(rec(g), rec(h)),
        Formula::Iff(g, h) => Formula::Iff(rec(g), rec(h)),
    }
}

/// `E^n f`: `n` nested `E` nodes around `f`.
pub fn e_power(f: Formula, n: usize) -> Formula {
    (0..n).fold(f, |acc, _| Formula::e(acc))
}
