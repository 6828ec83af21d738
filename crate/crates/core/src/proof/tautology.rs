//! Propositional tautology checking for modal formulas.
//!
//! `E` is expanded first; then every maximal `K_i` or `C` subformula is
//! replaced by an atom (structurally equal subformulas share one atom) and the
//! resulting propositional skeleton is evaluated on all rows of its truth
//! table at once, 64 rows per machine word.

use std::collections::HashMap;

use thiserror::Error;

use crate::formula::{expand_everyone, AgentSet, Formula};

/// Largest number of distinct atoms after abstraction.
pub const MAX_TAUTOLOGY_ATOMS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TautologyError {
    #[error("{atoms} propositional atoms exceeds the cap of {cap}")]
    TooManyAtoms { atoms: usize, cap: usize },
}

enum Prop {
    Atom(usize),
    Const(bool),
    Not(Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
    Implies(Box<Prop>, Box<Prop>),
    Iff(Box<Prop>, Box<Prop>),
}

#[derive(Default)]
struct Abstraction {
    atoms: HashMap<Formula, usize>,
}

impl Abstraction {
    fn atom(&mut self, f: &Formula) -> Prop {
        let next = self.atoms.len();
        Prop::Atom(*self.atoms.entry(f.clone()).or_insert(next))
    }

    fn skeleton(&mut self, f: &Formula) -> Prop {
        let mut bin = |g: &Formula, h: &Formula, mk: fn(Box<Prop>, Box<Prop>) -> Prop| {
            let l = Box::new(self.skeleton(g));
            mk(l, Box::new(self.skeleton(h)))
        };
        match f {
            Formula::Top => Prop::Const(true),
            Formula::Bot => Prop::Const(false),
            Formula::Not(g) => Prop::Not(Box::new(self.skeleton(g))),
            Formula::And(g, h) => bin(g, h, Prop::And),
            Formula::Or(g, h) => bin(g, h, Prop::Or),
            Formula::Implies(g, h) => bin(g, h, Prop::Implies),
            Formula::Iff(g, h) => bin(g, h, Prop::Iff),
            Formula::Var(_) | Formula::K(..) | Formula::C(_) | Formula::E(_) => self.atom(f),
        }
    }
}

/// Truth table columns, one bit per row.
struct Table {
    atoms: usize,
    words: usize,
}

impl Table {
    fn column(&self, atom: usize) -> Vec<u64> {
        const PATTERNS: [u64; 6] = [
            0xAAAA_AAAA_AAAA_AAAA,
            0xCCCC_CCCC_CCCC_CCCC,
            0xF0F0_F0F0_F0F0_F0F0,
            0xFF00_FF00_FF00_FF00,
            0xFFFF_0000_FFFF_0000,
            0xFFFF_FFFF_0000_0000,
        ];
        if atom < 6 {
            vec![PATTERNS[atom]; self.words]
        } else {
            let period = 1usize << (atom - 6);
            (0..self.words)
                .map(|w| if w / period % 2 == 1 { u64::MAX } else { 0 })
                .collect()
        }
    }

    fn eval(&self, p: &Prop) -> Vec<u64> {
        let zip = |a: Vec<u64>, b: Vec<u64>, op: fn(u64, u64) -> u64| {
            a.into_iter().zip(b).map(|(x, y)| op(x, y)).collect()
        };
        match p {
            Prop::Atom(i) => self.column(*i),
            Prop::Const(b) => vec![if *b { u64::MAX } else { 0 }; self.words],
            Prop::Not(g) => self.eval(g).into_iter().map(|x| !x).collect(),
            Prop::And(g, h) => zip(self.eval(g), self.eval(h), |x, y| x & y),
            Prop::Or(g, h) => zip(self.eval(g), self.eval(h), |x, y| x | y),
            Prop::Implies(g, h) => zip(self.eval(g), self.eval(h), |x, y| !x | y),
            Prop::Iff(g, h) => zip(self.eval(g), self.eval(h), |x, y| !(x ^ y)),
        }
    }

    fn all_true(&self, v: &[u64]) -> bool {
        let mask = if self.atoms >= 6 {
            u64::MAX
        } else {
            (1u64 << (1 << self.atoms)) - 1
        };
        v.iter().all(|&w| w & mask == mask)
    }
}

/// Whether `f` is an instance of a propositional tautology.
pub fn is_tautology(f: &Formula, agents: &AgentSet) -> Result<bool, TautologyError> {
    let mut abs = Abstraction::default();
    let skeleton = abs.skeleton(&expand_everyone(f, agents));
    let atoms = abs.atoms.len();
    if atoms > MAX_TAUTOLOGY_ATOMS {
        return Err(TautologyError::TooManyAtoms {
            atoms,
            cap: MAX_TAUTOLOGY_ATOMS,
        });
    }
    let table = Table {
        atoms,
        words: (1usize << atoms.saturating_sub(6)).max(1),
    };
    Ok(table.all_true(&table.eval(&skeleton)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn taut(s: &str) -> bool {
        let agents = AgentSet::first_n(2);
        is_tautology(&parse(s, &agents).unwrap(), &agents).unwrap()
    }

    #[test]
    fn examples() {
        assert!(taut("K1 p | ~K1 p"));
        assert!(taut("((p -> q) -> p) -> p"));
        assert!(!taut("C (p -> E p) -> p -> C p"));
        assert!(taut("p | ~p"));
        assert!(!taut("p"));
        assert!(taut("top"));
        assert!(!taut("bot"));
    }

    #[test]
    fn everyone_knows_is_expanded_before_abstraction() {
        assert!(taut("E p -> K2 p"));
        assert!(taut("E C p <-> K1 C p & K2 C p"));
        assert!(!taut("K1 p -> E p"));
    }

    #[test]
    fn wide_formulas_use_several_words() {
        // 8 atoms: 256 rows, four words.
        assert!(taut("a & b & c & d & e & f & g & h -> h"));
        assert!(!taut("a & b & c & d & e & f & g -> h"));
        assert!(!taut("a | b | c | d | e | f | g | h"));
    }

    #[test]
    fn atom_cap() {
        let agents = AgentSet::first_n(1);
        let vars: Vec<String> = (0..21).map(|i| format!("v{i}")).collect();
        let f = parse(&vars.join(" | "), &agents).unwrap();
        assert_eq!(
            is_tautology(&f, &agents),
            Err(TautologyError::TooManyAtoms { atoms: 21, cap: 20 })
        );
    }
}
