//! The algebra `S` of finite and cofinite subsets of ω with the knowledge
//! operators that make it an MH-algebra which is not a CKL-algebra.
//!
//! Elements are exact: a kind plus the finite set of positions that carry the
//! minority value (the ones of a finite element, the zeros of a cofinite
//! one). Nothing here truncates ω.
//!
//! For cofinite `x != 1`, `k(x)` is the least even `i` such that every even
//! position `>= i` is set. With `N` agents, `K_n x` clears the even positions
//! below `k(x)`, or up to and including `k(x)` when `n ≡ k(x) (mod N)`.
//! Finite elements go to `0`, `1` to `1`, and `C` is `1` on `1` and `0`
//! everywhere else.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

pub type Position = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CofiniteError {
    #[error("k(x) is only defined for cofinite x other than 1, got {0}")]
    KUndefined(SElem),
    #[error("the algebra needs at least one agent")]
    NoAgents,
    #[error("cannot parse `{0}` as F{{..}} or C{{..}}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Finite,
    Cofinite,
}

/// An element of `S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SElem {
    kind: Kind,
    support: BTreeSet<Position>,
}

impl SElem {
    pub fn zero() -> Self {
        SElem::finite([])
    }

    pub fn one() -> Self {
        SElem::cofinite([])
    }

    /// The finite element whose ones are `ones`.
    pub fn finite(ones: impl IntoIterator<Item = Position>) -> Self {
        SElem {
            kind: Kind::Finite,
            support: ones.into_iter().collect(),
        }
    }

    /// The cofinite element whose zeros are `zeros`.
    pub fn cofinite(zeros: impl IntoIterator<Item = Position>) -> Self {
        SElem {
            kind: Kind::Cofinite,
            support: zeros.into_iter().collect(),
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn support(&self) -> &BTreeSet<Position> {
        &self.support
    }

    pub fn is_finite(&self) -> bool {
        self.kind == Kind::Finite
    }

    pub fn is_zero(&self) -> bool {
        self.is_finite() && self.support.is_empty()
    }

    pub fn is_one(&self) -> bool {
        !self.is_finite() && self.support.is_empty()
    }

    /// The value at position `i`.
    pub fn bit(&self, i: Position) -> bool {
        match self.kind {
            Kind::Finite => self.support.contains(&i),
            Kind::Cofinite => !self.support.contains(&i),
        }
    }

    pub fn complement(&self) -> Self {
        SElem {
            kind: match self.kind {
                Kind::Finite => Kind::Cofinite,
                Kind::Cofinite => Kind::Finite,
            },
            support: self.support.clone(),
        }
    }

    pub fn meet(&self, other: &SElem) -> Self {
        use Kind::*;
        match (self.kind, other.kind) {
            (Finite, Finite) => SElem::finite(self.support.intersection(&other.support).copied()),
            (Finite, Cofinite) => SElem::finite(self.support.difference(&other.support).copied()),
            (Cofinite, Finite) => SElem::finite(other.support.difference(&self.support).copied()),
            (Cofinite, Cofinite) => SElem::cofinite(self.support.union(&other.support).copied()),
        }
    }

    pub fn join(&self, other: &SElem) -> Self {
        self.complement().meet(&other.complement()).complement()
    }

    /// `-self | other`.
    pub fn implies(&self, other: &SElem) -> Self {
        self.complement().join(other)
    }

    /// Pointwise order.
    pub fn leq(&self, other: &SElem) -> bool {
        self.meet(other) == *self
    }

    pub fn lt(&self, other: &SElem) -> bool {
        self != other && self.leq(other)
    }

    /// The least even position from which every even position is set.
    pub fn k(&self) -> Result<Position, CofiniteError> {
        if self.is_finite() || self.is_one() {
            return Err(CofiniteError::KUndefined(self.clone()));
        }
        Ok(self
            .support
            .iter()
            .rev()
            .find(|&&z| z % 2 == 0)
            .map_or(0, |&z| z + 2))
    }

    /// Clears every even position `<= limit`.
    fn clear_evens_through(&self, limit: Position) -> Self {
        debug_assert_eq!(self.kind, Kind::Cofinite);
        let mut zeros = self.support.clone();
        zeros.extend((0..=limit).step_by(2));
        SElem::cofinite(zeros)
    }
}

impl fmt::Display for SElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            Kind::Finite => 'F',
            Kind::Cofinite => 'C',
        };
        write!(f, "{tag}{{")?;
        for (i, p) in self.support.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for SElem {
    type Err = CofiniteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || CofiniteError::Parse(s.to_string());
        let s = s.trim();
        let (kind, rest) = match s.chars().next() {
            Some('F') => (Kind::Finite, &s[1..]),
            Some('C') => (Kind::Cofinite, &s[1..]),
            _ => return Err(err()),
        };
        let body = rest
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(err)?;
        let support = if body.trim().is_empty() {
            BTreeSet::new()
        } else {
            body.split(',')
                .map(|p| p.trim().parse().map_err(|_| err()))
                .collect::<Result<_, _>>()?
        };
        Ok(SElem { kind, support })
    }
}

impl Serialize for SElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Why a candidate is not the greatest lower bound of `{E^n a}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum GlbVerdict {
    /// The candidate is not below `E^n a`.
    NotLowerBound { n: u64 },
    /// `better` is a lower bound strictly above the candidate.
    StrictlyBetter { better: SElem },
}

/// `S` with `N` agents, numbered `1..=N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SAlgebra {
    n_agents: u32,
}

impl SAlgebra {
    pub fn new(n_agents: u32) -> Result<Self, CofiniteError> {
        if n_agents == 0 {
            return Err(CofiniteError::NoAgents);
        }
        Ok(SAlgebra { n_agents })
    }

    pub fn n_agents(&self) -> u32 {
        self.n_agents
    }

    /// `K_agent x`.
    ///
    /// # Panics
    /// Panics if `agent` is not in `1..=N`.
    pub fn box_k(&self, agent: u32, x: &SElem) -> SElem {
        assert!(
            (1..=self.n_agents).contains(&agent),
            "agent {agent} outside 1..={}",
            self.n_agents
        );
        if x.is_finite() {
            return SElem::zero();
        }
        if x.is_one() {
            return SElem::one();
        }
        let k = x.k().expect("cofinite and not 1");
        let n = Position::from(self.n_agents);
        if Position::from(agent) % n == k % n {
            x.clear_evens_through(k)
        } else if k == 0 {
            x.clone()
        } else {
            x.clear_evens_through(k - 2)
        }
    }

    /// `E x`, the meet of `K_n x` over all agents.
    pub fn e_of(&self, x: &SElem) -> SElem {
        (1..=self.n_agents).fold(SElem::one(), |acc, n| acc.meet(&self.box_k(n, x)))
    }

    /// `E x` from its closed form: clear every even position up to `k(x)`.
    pub fn e_closed_form(x: &SElem) -> SElem {
        if x.is_finite() {
            SElem::zero()
        } else if x.is_one() {
            SElem::one()
        } else {
            x.clear_evens_through(x.k().expect("cofinite and not 1"))
        }
    }

    pub fn box_c(x: &SElem) -> SElem {
        if x.is_one() {
            SElem::one()
        } else {
            SElem::zero()
        }
    }

    /// The element `a`, zero exactly at position 0.
    pub fn a() -> SElem {
        SElem::cofinite([0])
    }

    /// `E^n a` by iterating [`SAlgebra::e_of`].
    pub fn e_power(&self, x: &SElem, n: u64) -> SElem {
        (0..n).fold(x.clone(), |acc, _| self.e_of(&acc))
    }

    /// Shows that `candidate` is not a greatest lower bound of `{E^n a}`.
    ///
    /// The lower bounds of `{E^n a}` in `S` are exactly the finite sets of odd
    /// positions. Such a candidate is beaten by adding its least missing odd
    /// position; any other candidate has a set even position `2m` and so is
    /// not below `E^m a`.
    pub fn no_glb_witness(candidate: &SElem) -> GlbVerdict {
        let first_even_one = match candidate.kind() {
            Kind::Finite => candidate.support().iter().copied().find(|p| p % 2 == 0),
            Kind::Cofinite => (0..)
                .step_by(2)
                .find(|p| !candidate.support().contains(p)),
        };
        match first_even_one {
            Some(p) => GlbVerdict::NotLowerBound { n: p / 2 },
            None => {
                let missing = (1..)
                    .step_by(2)
                    .find(|p| !candidate.support().contains(p))
                    .expect("support is finite");
                let mut better = candidate.support().clone();
                better.insert(missing);
                GlbVerdict::StrictlyBetter {
                    better: SElem::finite(better),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(ones: &[Position]) -> SElem {
        SElem::finite(ones.iter().copied())
    }

    fn c(zeros: &[Position]) -> SElem {
        SElem::cofinite(zeros.iter().copied())
    }

    #[test]
    fn boolean_examples() {
        assert_eq!(SElem::zero().complement(), SElem::one());
        assert_eq!(c(&[0]).meet(&c(&[2])), c(&[0, 2]));
        assert_eq!(f(&[1, 2]).meet(&c(&[2])), f(&[1]));
        assert_eq!(f(&[1]).join(&c(&[1, 3])), c(&[3]));
        assert!(f(&[1]).leq(&c(&[0])));
        assert!(!c(&[0]).leq(&f(&[1])));
    }

    #[test]
    fn k_examples() {
        assert_eq!(c(&[0]).k(), Ok(2));
        assert_eq!(c(&[1]).k(), Ok(0));
        assert_eq!(c(&[4]).k(), Ok(6));
        assert_eq!(c(&[0, 3, 8, 9]).k(), Ok(10));
        assert!(matches!(f(&[1]).k(), Err(CofiniteError::KUndefined(_))));
        assert!(matches!(SElem::one().k(), Err(CofiniteError::KUndefined(_))));
    }

    #[test]
    fn box_k_cases() {
        let s = SAlgebra::new(2).unwrap();
        assert_eq!(s.box_k(1, &f(&[0, 2])), SElem::zero());
        assert_eq!(s.box_k(1, &SElem::one()), SElem::one());
        // k = 2 and 2 ≡ 2 (mod 2): clear evens <= 2.
        assert_eq!(s.box_k(2, &c(&[0])), c(&[0, 2]));
        // 1 ≢ 2: clear evens < 2.
        assert_eq!(s.box_k(1, &c(&[0])), c(&[0]));
    }

    #[test]
    #[should_panic(expected = "outside")]
    fn box_k_rejects_unknown_agent() {
        SAlgebra::new(2).unwrap().box_k(3, &SElem::one());
    }

    #[test]
    fn e_and_c_examples() {
        let s = SAlgebra::new(2).unwrap();
        assert_eq!(s.e_of(&c(&[0])), c(&[0, 2]));
        assert_eq!(s.e_of(&SElem::one()), SElem::one());
        assert_eq!(s.e_of(&f(&[3, 4])), SElem::zero());
        assert_eq!(SAlgebra::box_c(&SElem::one()), SElem::one());
        assert_eq!(SAlgebra::box_c(&SElem::zero()), SElem::zero());
        assert_eq!(SAlgebra::box_c(&c(&[5])), SElem::zero());
    }

    #[test]
    fn glb_witness_examples() {
        assert_eq!(
            SAlgebra::no_glb_witness(&f(&[1, 3])),
            GlbVerdict::StrictlyBetter {
                better: f(&[1, 3, 5])
            }
        );
        assert_eq!(
            SAlgebra::no_glb_witness(&c(&[0])),
            GlbVerdict::NotLowerBound { n: 1 }
        );
        assert_eq!(
            SAlgebra::no_glb_witness(&f(&[0])),
            GlbVerdict::NotLowerBound { n: 0 }
        );
        assert_eq!(
            SAlgebra::no_glb_witness(&SElem::zero()),
            GlbVerdict::StrictlyBetter { better: f(&[1]) }
        );
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(c(&[0, 2]).to_string(), "C{0,2}");
        assert_eq!(SElem::zero().to_string(), "F{}");
        assert_eq!("F{0, 3}".parse::<SElem>(), Ok(f(&[0, 3])));
        assert_eq!("C{}".parse::<SElem>(), Ok(SElem::one()));
        assert!("X{1}".parse::<SElem>().is_err());
        assert!("F{a}".parse::<SElem>().is_err());
        assert_eq!(
            serde_json::to_string(&GlbVerdict::NotLowerBound { n: 1 }).unwrap(),
            r#"{"verdict":"not_lower_bound","n":1}"#
        );
    }

    #[test]
    fn no_agents_is_an_error() {
        assert_eq!(SAlgebra::new(0), Err(CofiniteError::NoAgents));
    }
}
