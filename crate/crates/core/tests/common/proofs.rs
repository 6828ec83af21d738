//! Proof fixtures, mutation and axiom-instance generators.

use ckl_core::formula::{AgentSet, Formula};
use ckl_core::proof::AxiomId;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{fixture, random_formula};

pub const FIXTURES: [&str; 3] = [
    "proofs/common_implies_k1.proof",
    "proofs/common_implies_e2.proof",
    "proofs/common_top.proof",
];

pub fn read(rel: &str) -> String {
    std::fs::read_to_string(fixture(rel)).unwrap()
}

pub const VOCAB: &[&str] = &[
    "p", "q", "C", "E", "K1", "K2", "~", "->", "&", "|", "(", ")", "top", "bot", "1", "2", "7",
    "mp", "nec", "taut", "axC1", "axC2", "axC3", "axK", "subst", "p:=q", "p:=C p", ";",
];

pub fn mutate<R: Rng>(rng: &mut R, text: &str) -> String {
    let mut lines: Vec<Vec<String>> = text
        .lines()
        .map(|l| l.split_whitespace().map(str::to_string).collect())
        .collect();
    let candidates: Vec<usize> = (0..lines.len())
        .filter(|&i| !lines[i].is_empty() && !lines[i][0].starts_with('#'))
        .collect();
    let li = *candidates.choose(rng).unwrap();
    let line = &mut lines[li];
    // Keep the step number so most mutants still parse.
    let ti = rng.gen_range(1..line.len());
    let tok = VOCAB.choose(rng).unwrap().to_string();
    match rng.gen_range(0..3) {
        0 => line[ti] = tok,
        1 => line.insert(ti, tok),
        _ => {
            line.remove(ti);
        }
    }
    lines
        .iter()
        .map(|l| l.join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn instance<R: Rng>(rng: &mut R, which: AxiomId, agents: &AgentSet) -> Formula {
    let phi = random_formula(rng, 2, &["p", "q", "r"], agents);
    let psi = random_formula(rng, 2, &["p", "q", "r"], agents);
    let e = Formula::e;
    match which {
        AxiomId::K(op) => op
            .apply(phi.clone().implies(psi.clone()))
            .implies(op.apply(phi).implies(op.apply(psi))),
        AxiomId::C1 => Formula::c(phi.clone()).implies(phi),
        AxiomId::C2 => Formula::c(phi.clone()).implies(e(Formula::c(phi))),
        AxiomId::C3 => Formula::c(phi.clone().implies(e(phi.clone())))
            .implies(phi.clone().implies(Formula::c(phi))),
    }
}
