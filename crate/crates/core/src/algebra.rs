//! Finite modal algebras presented by relations on their atoms.
//!
//! Every finite Boolean algebra with normal operators is the complex algebra
//! of a frame, so an algebra here is a set of atoms `0..n` with one relation
//! per agent and one for `C`. Elements are subsets of the atoms stored as
//! `u64` masks. Boxes are computed from predecessor masks through the dual
//! diamond, `box x = -dia(-x)`, which is a different route from the
//! successor-row test used by [`crate::kripke`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::formula::{expand, Agent, AgentSet, Formula, Modality};
use crate::kripke::Frame;

/// An element of a finite modal algebra: a set of atoms as a bit mask.
pub type Element = u64;

/// Largest number of atoms an algebra can have.
pub const MAX_ATOMS: usize = 64;
/// Largest number of atoms for which axiom checks sweep every element.
pub const MAX_SWEEP_ATOMS: usize = 20;
/// Largest `|vars| * atoms` for which [`FiniteModalAlgebra::validates`] enumerates valuations.
pub const VALUATION_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("an algebra needs at least one atom")]
    NoAtoms,
    #[error("{atoms} atoms exceeds the maximum of {max}")]
    TooManyAtoms { atoms: usize, max: usize },
    #[error("element sweep over {atoms} atoms exceeds the cap of {cap}")]
    SweepCap { atoms: usize, cap: usize },
    #[error("{vars} variables over {atoms} atoms exceeds the valuation cap of {cap} bits")]
    ValuationCap { vars: usize, atoms: usize, cap: usize },
    #[error("expected {expected} agent relations, got {got}")]
    RelationCount { expected: usize, got: usize },
    #[error("successor mask mentions atoms beyond {atoms}")]
    SuccessorOutOfRange { atoms: usize },
    #[error("agent {0} is not part of the algebra")]
    UnknownAgent(Agent),
}

/// The individual inequalities checked by [`FiniteModalAlgebra::check_mh`] and
/// [`FiniteModalAlgebra::check_ckl`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraAxiom {
    /// `C x <= x`
    MhReflexivity,
    /// `C x <= E C x`
    MhFixpoint,
    /// `C (x -> E x) <= x -> C x`
    MhInduction,
    /// `C x <= E C x`, as part of the CKL definition
    CklFixpoint,
    /// `C x` is the meet of `{E^n x}`
    CklMeet,
}

impl fmt::Display for AlgebraAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraAxiom::MhReflexivity => "C x <= x",
            AlgebraAxiom::MhFixpoint | AlgebraAxiom::CklFixpoint => "C x <= E C x",
            AlgebraAxiom::MhInduction => "C (x -> E x) <= x -> C x",
            AlgebraAxiom::CklMeet => "C x = meet of E^n x",
        })
    }
}

/// An axiom together with an element on which it fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: AlgebraAxiom,
    pub witness: Element,
}

/// The orbit `x, E x, E² x, ...` of an element.
///
/// `prefix` lists every distinct iterate in order; applying `E` to the last
/// one gives `prefix[cycle_start]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EIterates {
    pub prefix: Vec<Element>,
    pub cycle_start: usize,
    pub cycle_len: usize,
}

impl EIterates {
    /// `E^n x`.
    pub fn nth(&self, n: usize) -> Element {
        if n < self.prefix.len() {
            self.prefix[n]
        } else {
            self.prefix[self.cycle_start + (n - self.cycle_start) % self.cycle_len]
        }
    }

    /// The greatest lower bound of all iterates.
    pub fn meet(&self) -> Element {
        self.prefix.iter().fold(Element::MAX, |acc, &e| acc & e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteModalAlgebra {
    agents: AgentSet,
    atoms: usize,
    /// Per agent, per atom: the atoms that see it.
    k_pred: Vec<Vec<Element>>,
    c_pred: Vec<Element>,
}

fn predecessors(atoms: usize, succ: &[Element]) -> Vec<Element> {
    let mut pred = vec![0; atoms];
    for (w, &s) in succ.iter().enumerate() {
        for (v, p) in pred.iter_mut().enumerate() {
            if s >> v & 1 == 1 {
                *p |= 1 << w;
            }
        }
    }
    pred
}

impl FiniteModalAlgebra {
    /// Builds an algebra from successor masks: `k_succ[i][w]` is the set of
    /// atoms agent `i` (in agent order) relates `w` to.
    pub fn from_successors(
        agents: AgentSet,
        atoms: usize,
        k_succ: &[Vec<Element>],
        c_succ: &[Element],
    ) -> Result<Self, AlgebraError> {
        if atoms == 0 {
            return Err(AlgebraError::NoAtoms);
        }
        if atoms > MAX_ATOMS {
            return Err(AlgebraError::TooManyAtoms {
                atoms,
                max: MAX_ATOMS,
            });
        }
        if k_succ.len() != agents.len() {
            return Err(AlgebraError::RelationCount {
                expected: agents.len(),
                got: k_succ.len(),
            });
        }
        let top = top_of(atoms);
        let rows_ok = |rows: &[Element]| rows.len() == atoms && rows.iter().all(|&r| r & !top == 0);
        if !k_succ.iter().all(|r| rows_ok(r)) || !rows_ok(c_succ) {
            return Err(AlgebraError::SuccessorOutOfRange { atoms });
        }
        Ok(FiniteModalAlgebra {
            agents,
            atoms,
            k_pred: k_succ.iter().map(|r| predecessors(atoms, r)).collect(),
            c_pred: predecessors(atoms, c_succ),
        })
    }

    /// The complex algebra `F⁺` of a frame: atoms are worlds and the boxes
    /// come from the frame's relations.
    pub fn complex_algebra(frame: &Frame) -> Result<Self, AlgebraError> {
        let mask = |row: &fixedbitset::FixedBitSet| row.ones().fold(0, |m, v| m | 1 << v);
        let n = frame.world_count();
        if n > MAX_ATOMS {
            return Err(AlgebraError::TooManyAtoms {
                atoms: n,
                max: MAX_ATOMS,
            });
        }
        let rows = |r: &crate::kripke::Relation| (0..n).map(|w| mask(r.successors(w))).collect();
        let k_succ: Vec<Vec<Element>> = frame.agent_relations().iter().map(rows).collect();
        let c_succ: Vec<Element> = rows(frame.common_relation());
        FiniteModalAlgebra::from_successors(frame.agents().clone(), n, &k_succ, &c_succ)
    }

    pub fn atoms(&self) -> usize {
        self.atoms
    }

    pub fn agents(&self) -> &AgentSet {
        &self.agents
    }

    pub fn top(&self) -> Element {
        top_of(self.atoms)
    }

    pub fn complement(&self, x: Element) -> Element {
        self.top() & !x
    }

    /// `-x | y`.
    pub fn implies(&self, x: Element, y: Element) -> Element {
        self.complement(x) | y
    }

    fn diamond(pred: &[Element], y: Element) -> Element {
        let mut out = 0;
        let mut rest = y;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            out |= pred[v];
            rest &= rest - 1;
        }
        out
    }

    fn pred_of(&self, op: Modality) -> Result<&[Element], AlgebraError> {
        match op {
            Modality::C => Ok(&self.c_pred),
            Modality::K(a) => self
                .agents
                .index_of(a)
                .map(|i| self.k_pred[i].as_slice())
                .ok_or(AlgebraError::UnknownAgent(a)),
        }
    }

    /// Applies the box of `op` to `x`.
    pub fn box_op(&self, op: Modality, x: Element) -> Result<Element, AlgebraError> {
        let pred = self.pred_of(op)?;
        Ok(self.complement(Self::diamond(pred, self.complement(x))))
    }

    fn box_c(&self, x: Element) -> Element {
        self.complement(Self::diamond(&self.c_pred, self.complement(x)))
    }

    /// `E x`: the meet of all agent boxes.
    pub fn e_of(&self, x: Element) -> Element {
        let nx = self.complement(x);
        self.k_pred
            .iter()
            .fold(self.top(), |acc, pred| acc & self.complement(Self::diamond(pred, nx)))
    }

    /// The eventually periodic orbit of `x` under `E`.
    pub fn e_iterates(&self, x: Element) -> EIterates {
        let mut seen: HashMap<Element, usize> = HashMap::new();
        let mut prefix = Vec::new();
        let mut cur = x;
        loop {
            if let Some(&start) = seen.get(&cur) {
                return EIterates {
                    cycle_len: prefix.len() - start,
                    cycle_start: start,
                    prefix,
                };
            }
            seen.insert(cur, prefix.len());
            prefix.push(cur);
            cur = self.e_of(cur);
        }
    }

    fn ensure_sweepable(&self) -> Result<(), AlgebraError> {
        if self.atoms > MAX_SWEEP_ATOMS {
            return Err(AlgebraError::SweepCap {
                atoms: self.atoms,
                cap: MAX_SWEEP_ATOMS,
            });
        }
        Ok(())
    }

    /// Every element, in mask order.
    pub fn elements(&self) -> Result<impl Iterator<Item = Element>, AlgebraError> {
        self.ensure_sweepable()?;
        Ok(0..=self.top())
    }

    /// First failure of `C x <= x`, `C x <= E C x` or
    /// `C (x -> E x) <= x -> C x`, if any.
    pub fn check_mh(&self) -> Result<Option<Violation>, AlgebraError> {
        for x in self.elements()? {
            let cx = self.box_c(x);
            let fail = if cx & !x != 0 {
                Some(AlgebraAxiom::MhReflexivity)
            } else if cx & !self.e_of(cx) != 0 {
                Some(AlgebraAxiom::MhFixpoint)
            } else if self.box_c(self.implies(x, self.e_of(x))) & !self.implies(x, cx) != 0 {
                Some(AlgebraAxiom::MhInduction)
            } else {
                None
            };
            if let Some(axiom) = fail {
                return Ok(Some(Violation { axiom, witness: x }));
            }
        }
        Ok(None)
    }

    pub fn is_mh_algebra(&self) -> Result<bool, AlgebraError> {
        Ok(self.check_mh()?.is_none())
    }

    /// First failure of `C x <= E C x` or of `C x` being the meet of the
    /// `E`-iterates of `x`, if any.
    pub fn check_ckl(&self) -> Result<Option<Violation>, AlgebraError> {
        for x in self.elements()? {
            let cx = self.box_c(x);
            let fail = if cx & !self.e_of(cx) != 0 {
                Some(AlgebraAxiom::CklFixpoint)
            } else if cx != self.e_iterates(x).meet() & self.top() {
                Some(AlgebraAxiom::CklMeet)
            } else {
                None
            };
            if let Some(axiom) = fail {
                return Ok(Some(Violation { axiom, witness: x }));
            }
        }
        Ok(None)
    }

    pub fn is_ckl_algebra(&self) -> Result<bool, AlgebraError> {
        Ok(self.check_ckl()?.is_none())
    }

    /// Decides the premises of the ω-rule `gamma -> E^n phi` (all `n`) by
    /// walking the finite orbit of `phi`.
    pub fn omega_rule_oracle(&self, gamma: Element, phi: Element) -> Result<bool, AlgebraError> {
        self.ensure_sweepable()?;
        Ok(self
            .e_iterates(phi)
            .prefix
            .iter()
            .all(|&e| gamma & !e == 0))
    }

    /// Evaluates `f` under `valuation`; missing variables denote `0`.
    pub fn eval(
        &self,
        f: &Formula,
        valuation: &BTreeMap<String, Element>,
    ) -> Result<Element, AlgebraError> {
        self.eval_core(&expand(f, &self.agents), valuation)
    }

    fn eval_core(
        &self,
        f: &Formula,
        valuation: &BTreeMap<String, Element>,
    ) -> Result<Element, AlgebraError> {
        Ok(match f {
            Formula::Var(v) => valuation.get(v).copied().unwrap_or(0) & self.top(),
            Formula::Top => self.top(),
            Formula::Bot => 0,
            Formula::Not(g) => self.complement(self.eval_core(g, valuation)?),
            Formula::And(g, h) => self.eval_core(g, valuation)? & self.eval_core(h, valuation)?,
            Formula::K(a, g) => self.box_op(Modality::K(*a), self.eval_core(g, valuation)?)?,
            Formula::C(g) => self.box_c(self.eval_core(g, valuation)?),
            Formula::Or(..) | Formula::Implies(..) | Formula::Iff(..) | Formula::E(_) => {
                unreachable!("formula was expanded")
            }
        })
    }

    /// Whether `f` evaluates to `1` under every valuation.
    pub fn validates(&self, f: &Formula) -> Result<bool, AlgebraError> {
        let vars: Vec<String> = f.vars().into_iter().collect();
        let bits = vars.len() * self.atoms;
        if bits > VALUATION_CAP {
            return Err(AlgebraError::ValuationCap {
                vars: vars.len(),
                atoms: self.atoms,
                cap: VALUATION_CAP,
            });
        }
        let expanded = expand(f, &self.agents);
        let top = self.top();
        let mut valuation: BTreeMap<String, Element> = vars.iter().map(|v| (v.clone(), 0)).collect();
        // Odometer over one element per variable.
        loop {
            if self.eval_core(&expanded, &valuation)? != top {
                return Ok(false);
            }
            let mut carried = true;
            for v in &vars {
                let slot = valuation.get_mut(v).expect("every variable has a slot");
                if *slot == top {
                    *slot = 0;
                } else {
                    *slot += 1;
                    carried = false;
                    break;
                }
            }
            if carried {
                return Ok(true);
            }
        }
    }
}

fn top_of(atoms: usize) -> Element {
    if atoms >= 64 {
        Element::MAX
    } else {
        (1 << atoms) - 1
    }
}

/// The atoms of an element, in ascending order.
pub fn atoms_of(x: Element) -> Vec<usize> {
    (0..64).filter(|&i| x >> i & 1 == 1).collect()
}
