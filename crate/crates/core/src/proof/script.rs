//! Text format for proofs.
//!
//! One step per line, numbered from 1:
//!
//! ```text
//! # comment
//! 1. C p -> p ; axC1
//! 2. K1 (C p -> p) ; nec K1 1
//! 3. C q -> q ; subst 1 p:=q
//! ```
//!
//! Justifications: `taut`, `axK K<i>`, `axK C`, `axC1`, `axC2`, `axC3`,
//! `mp <i> <j>`, `subst <i> v:=<formula>,...`, `nec K<i> <i>`, `nec C <i>`.

use thiserror::Error;

use super::{AxiomId, Justification, Proof, ProofLine};
use crate::formula::{parse, AgentSet, Formula, Modality};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("proof script line {line}: {message}")]
pub struct ScriptError {
    /// 1-based line in the script text.
    pub line: usize,
    pub message: String,
}

fn parse_modality(tok: &str, agents: &AgentSet) -> Result<Modality, String> {
    if tok == "C" {
        return Ok(Modality::C);
    }
    let agent = tok
        .strip_prefix('K')
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| format!("expected `K<i>` or `C`, found `{tok}`"))?;
    if !agents.contains(agent) {
        return Err(format!("unknown agent {agent}"));
    }
    Ok(Modality::K(agent))
}

fn parse_index(tok: Option<&str>) -> Result<usize, String> {
    let tok = tok.ok_or("missing line reference")?;
    tok.parse()
        .map_err(|_| format!("expected a line number, found `{tok}`"))
}

fn parse_justification(text: &str, agents: &AgentSet) -> Result<Justification, String> {
    let text = text.trim();
    let (head, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
    let mut toks = rest.split_whitespace();
    let just = match head {
        "taut" => Justification::Taut,
        "axC1" => Justification::Axiom(AxiomId::C1),
        "axC2" => Justification::Axiom(AxiomId::C2),
        "axC3" => Justification::Axiom(AxiomId::C3),
        "axK" => {
            let op = toks.next().ok_or("`axK` needs an operator")?;
            Justification::Axiom(AxiomId::K(parse_modality(op, agents)?))
        }
        "mp" => {
            let i = parse_index(toks.next())?;
            let j = parse_index(toks.next())?;
            Justification::Mp(i, j)
        }
        "nec" => {
            let op = toks.next().ok_or("`nec` needs an operator")?;
            let op = parse_modality(op, agents)?;
            Justification::Nec(op, parse_index(toks.next())?)
        }
        "subst" => {
            let rest = rest.trim_start();
            let (idx, map) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            let idx = parse_index(Some(idx))?;
            let mut pairs = Vec::new();
            for item in map.split(',').filter(|s| !s.trim().is_empty()) {
                let (var, formula) = item
                    .split_once(":=")
                    .ok_or_else(|| format!("expected `var:=formula`, found `{}`", item.trim()))?;
                let var = var.trim();
                match parse(var, agents) {
                    Ok(Formula::Var(_)) => {}
                    _ => return Err(format!("`{var}` is not a variable")),
                }
                let formula = parse(formula, agents).map_err(|e| e.to_string())?;
                pairs.push((var.to_string(), formula));
            }
            if pairs.is_empty() {
                return Err("`subst` needs at least one `var:=formula`".into());
            }
            return Ok(Justification::Subst(idx, pairs));
        }
        other => return Err(format!("unknown justification `{other}`")),
    };
    if let Some(extra) = toks.next() {
        return Err(format!("unexpected `{extra}` after justification"));
    }
    Ok(just)
}

/// Parses a proof script. Step numbers must run 1, 2, 3, ... in order.
pub fn parse_script(text: &str, agents: &AgentSet) -> Result<Proof, ScriptError> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let err = |message: String| ScriptError {
            line: i + 1,
            message,
        };
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let (number, rest) = body
            .split_once('.')
            .ok_or_else(|| err("expected `<n>. <formula> ; <justification>`".into()))?;
        let number: usize = number
            .trim()
            .parse()
            .map_err(|_| err(format!("bad step number `{}`", number.trim())))?;
        if number != lines.len() + 1 {
            return Err(err(format!(
                "expected step {}, found {number}",
                lines.len() + 1
            )));
        }
        let (formula, just) = rest
            .split_once(';')
            .ok_or_else(|| err("missing `;` before the justification".into()))?;
        let formula = parse(formula, agents).map_err(|e| err(e.to_string()))?;
        let justification = parse_justification(just, agents).map_err(err)?;
        lines.push(ProofLine {
            formula,
            justification,
        });
    }
    Ok(Proof {
        agents: agents.clone(),
        lines,
    })
}
