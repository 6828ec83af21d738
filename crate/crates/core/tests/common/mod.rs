//! Generators and brute-force oracles shared by the integration tests.
//!
//! The oracles here deliberately avoid the library's evaluation code: they
//! work world by world (or row by row) on plain vectors.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use ckl_core::formula::{AgentSet, Formula};
use ckl_core::kripke::{Frame, FrameSpace, Relation};
use rand::seq::SliceRandom;
use rand::Rng;

pub mod cofinite;
pub mod proofs;

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel)
}

pub fn two_agents() -> AgentSet {
    AgentSet::first_n(2)
}

/// Random formula over `vars` using every connective, of depth at most `depth`.
pub fn random_formula<R: Rng>(rng: &mut R, depth: usize, vars: &[&str], agents: &AgentSet) -> Formula {
    if depth == 0 || rng.gen_ratio(1, 4) {
        return match rng.gen_range(0..10) {
            0 => Formula::Top,
            1 => Formula::Bot,
            _ => Formula::var(*vars.choose(rng).unwrap()),
        };
    }
    let sub = |rng: &mut R| random_formula(rng, depth - 1, vars, agents);
    match rng.gen_range(0..9) {
        0 => sub(rng).not(),
        1 => sub(rng).and(sub(rng)),
        2 => sub(rng).or(sub(rng)),
        3 => sub(rng).implies(sub(rng)),
        4 => sub(rng).iff(sub(rng)),
        5 | 6 => {
            let a = *agents.as_slice().choose(rng).unwrap();
            Formula::k(a, sub(rng))
        }
        7 => Formula::e(sub(rng)),
        _ => Formula::c(sub(rng)),
    }
}

/// A CKL-frame with `worlds` worlds and agent relations of the given edge density.
pub fn random_ckl_frame<R: Rng>(rng: &mut R, worlds: usize, agents: &AgentSet, density: f64) -> Frame {
    let r_k = agents
        .iter()
        .map(|_| {
            let mut r = Relation::empty(worlds);
            for a in 0..worlds {
                for b in 0..worlds {
                    if rng.gen_bool(density) {
                        r.insert(a, b);
                    }
                }
            }
            r
        })
        .collect();
    Frame::with_closure(agents.clone(), r_k).unwrap()
}

/// Frames for the duality and definability sweeps: all frames over one and
/// two worlds with two agents, then `samples` seeded frames over three.
pub fn sweep_frames(samples: usize, seed: u64) -> Vec<(String, Frame)> {
    let agents = two_agents();
    let mut out = Vec::new();
    for n in 1..=2 {
        let space = FrameSpace::new(n, agents.clone()).unwrap();
        for (i, f) in space.exhaustive().unwrap().enumerate() {
            out.push((format!("W={n} #{i}"), f));
        }
    }
    let space = FrameSpace::new(3, agents).unwrap();
    for (i, f) in space.sampled(seed, samples).enumerate() {
        out.push((format!("W=3 sample #{i}"), f));
    }
    out
}

/// All CKL-frames over at most two worlds for the given agents.
pub fn small_ckl_frames(agents: &AgentSet) -> Vec<Frame> {
    (1..=2)
        .flat_map(|n| {
            FrameSpace::new(n, agents.clone())
                .unwrap()
                .ckl_frames()
                .unwrap()
                .collect::<Vec<_>>()
        })
        .collect()
}

/// World-by-world truth of `f` under `val`, straight from the satisfaction
/// clauses. `C` is read as "true at every world reachable in zero or more
/// agent steps", computed by explicit graph search rather than from the
/// frame's `C` relation, so the result only agrees with the library on
/// CKL-frames.
pub fn satisfies_ckl(frame: &Frame, val: &BTreeMap<String, Vec<bool>>, f: &Formula, w: usize) -> bool {
    let agents = frame.agents();
    let n = frame.world_count();
    fn succ(r: &Relation, n: usize, w: usize) -> impl Iterator<Item = usize> + '_ {
        (0..n).filter(move |&v| r.contains(w, v))
    }
    match f {
        Formula::Var(v) => val.get(v).is_some_and(|bits| bits[w]),
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Not(g) => !satisfies_ckl(frame, val, g, w),
        Formula::And(g, h) => satisfies_ckl(frame, val, g, w) && satisfies_ckl(frame, val, h, w),
        Formula::Or(g, h) => satisfies_ckl(frame, val, g, w) || satisfies_ckl(frame, val, h, w),
        Formula::Implies(g, h) => !satisfies_ckl(frame, val, g, w) || satisfies_ckl(frame, val, h, w),
        Formula::Iff(g, h) => satisfies_ckl(frame, val, g, w) == satisfies_ckl(frame, val, h, w),
        Formula::K(a, g) => {
            let r = frame.relation(*a).unwrap();
            succ(r, n, w).all(|v| satisfies_ckl(frame, val, g, v))
        }
        Formula::E(g) => agents
            .iter()
            .all(|a| succ(frame.relation(a).unwrap(), n, w).all(|v| satisfies_ckl(frame, val, g, v))),
        Formula::C(g) => {
            let mut seen = vec![false; frame.world_count()];
            let mut stack = vec![w];
            seen[w] = true;
            while let Some(u) = stack.pop() {
                if !satisfies_ckl(frame, val, g, u) {
                    return false;
                }
                for a in agents.iter() {
                    for v in succ(frame.relation(a).unwrap(), n, u) {
                        if !seen[v] {
                            seen[v] = true;
                            stack.push(v);
                        }
                    }
                }
            }
            true
        }
    }
}

/// Truth-table oracle: assigns every distinct atom (variable or modal
/// subformula after `E` expansion) each truth value in turn.
pub fn brute_force_tautology(f: &Formula, agents: &AgentSet) -> bool {
    fn collect(f: &Formula, atoms: &mut Vec<Formula>) {
        match f {
            Formula::Top | Formula::Bot => {}
            Formula::Not(g) => collect(g, atoms),
            Formula::And(g, h) | Formula::Or(g, h) | Formula::Implies(g, h) | Formula::Iff(g, h) => {
                collect(g, atoms);
                collect(h, atoms);
            }
            _ => {
                if !atoms.contains(f) {
                    atoms.push(f.clone());
                }
            }
        }
    }
    fn truth(f: &Formula, row: &HashMap<&Formula, bool>) -> bool {
        match f {
            Formula::Top => true,
            Formula::Bot => false,
            Formula::Not(g) => !truth(g, row),
            Formula::And(g, h) => truth(g, row) && truth(h, row),
            Formula::Or(g, h) => truth(g, row) || truth(h, row),
            Formula::Implies(g, h) => !truth(g, row) || truth(h, row),
            Formula::Iff(g, h) => truth(g, row) == truth(h, row),
            _ => row[f],
        }
    }
    let f = ckl_core::formula::expand_everyone(f, agents);
    let mut atoms = Vec::new();
    collect(&f, &mut atoms);
    (0u64..1 << atoms.len()).all(|code| {
        let row: HashMap<&Formula, bool> = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a, code >> i & 1 == 1))
            .collect();
        truth(&f, &row)
    })
}

/// Random propositional combination of modal and propositional atoms, with
/// at most `max_atoms` atoms once `E` is expanded (each `E v` counts once per
/// agent).
pub fn random_abstraction<R: Rng>(rng: &mut R, max_atoms: usize, agents: &AgentSet) -> Formula {
    let budget = rng.gen_range(1..=max_atoms);
    let mut used = 0;
    let mut pool = Vec::new();
    while used < budget {
        let v = Formula::var(format!("v{}", pool.len()));
        let (atom, cost) = match rng.gen_range(0..4) {
            0 => (Formula::k(*agents.as_slice().choose(rng).unwrap(), v), 1),
            1 => (Formula::c(v), 1),
            2 if used + agents.len() <= budget => (Formula::e(v), agents.len()),
            _ => (v, 1),
        };
        used += cost;
        pool.push(atom);
    }
    fn build<R: Rng>(rng: &mut R, pool: &[Formula], depth: usize) -> Formula {
        if depth == 0 || rng.gen_ratio(1, 5) {
            return pool.choose(rng).unwrap().clone();
        }
        let sub = |rng: &mut R| build(rng, pool, depth - 1);
        match rng.gen_range(0..6) {
            0 => sub(rng).not(),
            1 => sub(rng).and(sub(rng)),
            2 => sub(rng).or(sub(rng)),
            3 => sub(rng).implies(sub(rng)),
            4 => sub(rng).iff(sub(rng)),
            _ => {
                // Bias towards tautologies so both answers are exercised.
                let g = sub(rng);
                g.clone().or(g.not())
            }
        }
    }
    build(rng, &pool, 5)
}
