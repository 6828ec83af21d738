use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use ckl_core::algebra::{atoms_of, FiniteModalAlgebra};
use ckl_core::cofinite::{GlbVerdict, SAlgebra, SElem};
use ckl_core::formula::{expand, parse, AgentSet};
use ckl_core::kripke::{
    ckl_schema_instances, valid_in_frame, Frame, FrameSpace, ModelFile, WorldSet,
    MAX_EXHAUSTIVE_BITS,
};
use ckl_core::proof::{check_proof, parse_script, ProofVerdict};
use serde_json::{json, Value};

use crate::report::Report;

const DEFAULT_SAMPLES: usize = 10_000;
/// Law failures reported by `counterexample` before it stops collecting.
const MAX_LAW_WITNESSES: usize = 20;

fn load_model_file(path: &Path) -> Result<ModelFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ModelFile::from_json(&text).with_context(|| format!("loading {}", path.display()))
}

fn set_string(set: &WorldSet) -> String {
    let items: Vec<String> = set.ones().map(|w| w.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

struct FrameCheck {
    ckl_frame: bool,
    failing_schemas: Vec<String>,
    ckl_algebra: Option<Value>,
    mh_algebra: Option<Value>,
}

impl FrameCheck {
    fn run(frame: &Frame) -> Result<Self> {
        let mut failing_schemas = Vec::new();
        for schema in ckl_schema_instances() {
            if !valid_in_frame(frame, &schema)? {
                failing_schemas.push(schema.to_string());
            }
        }
        let alg = FiniteModalAlgebra::complex_algebra(frame)?;
        let violation = |v: Option<ckl_core::algebra::Violation>| {
            v.map(|v| json!({ "axiom": v.axiom, "witness": atoms_of(v.witness) }))
        };
        Ok(FrameCheck {
            ckl_frame: frame.is_ckl_frame(),
            failing_schemas,
            ckl_algebra: violation(alg.check_ckl()?),
            mh_algebra: violation(alg.check_mh()?),
        })
    }

    fn agree(&self) -> bool {
        let c = self.ckl_frame;
        c == self.failing_schemas.is_empty()
            && c == self.ckl_algebra.is_none()
            && c == self.mh_algebra.is_none()
    }

    fn disagreement(&self) -> Value {
        json!({
            "kind": "disagreement",
            "ckl_frame": self.ckl_frame,
            "schemas_valid": self.failing_schemas.is_empty(),
            "ckl_algebra": self.ckl_algebra.is_none(),
            "mh_algebra": self.mh_algebra.is_none(),
        })
    }
}

pub fn check_frame(path: &Path) -> Result<Report> {
    let frame = load_model_file(path)?.to_frame()?;
    let check = FrameCheck::run(&frame)?;
    let mut witnesses = Vec::new();
    if !check.ckl_frame {
        let closure = frame.r_e().rtc();
        witnesses.push(json!({
            "kind": "closure_diff",
            "missing": closure.difference(frame.common_relation()),
            "extra": frame.common_relation().difference(&closure),
        }));
    }
    for f in &check.failing_schemas {
        witnesses.push(json!({ "kind": "schema", "formula": f }));
    }
    if let Some(v) = &check.ckl_algebra {
        witnesses.push(json!({ "kind": "ckl_algebra", "violation": v }));
    }
    if let Some(v) = &check.mh_algebra {
        witnesses.push(json!({ "kind": "mh_algebra", "violation": v }));
    }
    if !check.agree() {
        witnesses.push(check.disagreement());
    }
    let summary = match (check.ckl_frame, check.agree()) {
        (true, true) => "CKL-frame; schemas and complex algebra agree",
        (false, true) => "not a CKL-frame; schemas and complex algebra agree",
        (_, false) => "frame condition, schemas and complex algebra disagree",
    };
    Ok(Report::new("check-frame", summary, witnesses))
}

pub fn model_check(path: &Path, formula: &str) -> Result<Report> {
    let model = load_model_file(path)?.to_model()?;
    let f = parse(formula, model.frame().agents())?;
    let extension = model.eval(&f)?;
    let n = model.frame().world_count();
    let witnesses = (0..n)
        .filter(|&w| !extension.contains(w))
        .map(|w| json!({ "world": w }))
        .collect();
    let summary = format!(
        "{f} holds at {} of {n} worlds: {}",
        extension.count_ones(..),
        set_string(&extension)
    );
    Ok(Report::new("model-check", summary, witnesses))
}

pub fn sweep(worlds: usize, agents: u32, seed: u64, samples: Option<usize>) -> Result<Report> {
    let space = FrameSpace::new(worlds, AgentSet::first_n(agents))?;
    let exhaustive = samples.is_none() && space.bits() <= MAX_EXHAUSTIVE_BITS;
    let frames: Box<dyn Iterator<Item = Frame> + '_> = if exhaustive {
        Box::new(space.exhaustive()?)
    } else {
        Box::new(space.sampled(seed, samples.unwrap_or(DEFAULT_SAMPLES)))
    };
    let (mut total, mut ckl) = (0, 0);
    let mut witnesses = Vec::new();
    for (i, frame) in frames.enumerate() {
        let check = FrameCheck::run(&frame)?;
        total += 1;
        ckl += usize::from(check.ckl_frame);
        if !check.agree() {
            let mut w = check.disagreement();
            w["frame"] = json!(i);
            w["model"] = serde_json::from_str(&ModelFile::from_frame(&frame).to_json())?;
            witnesses.push(w);
        }
    }
    let mode = if exhaustive {
        "exhaustive".to_string()
    } else {
        format!("sampled, seed {seed}")
    };
    let summary = format!(
        "{}/{total} frames agree ({ckl} CKL-frames; {mode})",
        total - witnesses.len()
    );
    Ok(Report::new("sweep", summary, witnesses))
}

fn even_row(x: &SElem, width: u64) -> String {
    (0..width)
        .map(|i| format!("{:>3}", u8::from(x.bit(2 * i))))
        .collect::<String>()
}

pub fn counterexample(bound: u64, agents: u32) -> Result<Report> {
    if bound == 0 {
        bail!("bound must be at least 1");
    }
    let alg = SAlgebra::new(agents)?;
    let mut witnesses = Vec::new();
    let mut fail = |law: &str, x: &SElem, y: Option<&SElem>| {
        if witnesses.len() < MAX_LAW_WITNESSES {
            let mut w = json!({ "law": law, "x": x });
            if let Some(y) = y {
                w["y"] = json!(y);
            }
            witnesses.push(w);
        }
    };

    let elems: Vec<SElem> = (0u32..256)
        .flat_map(|m| {
            let supp = (0..8).filter(move |&i| m >> i & 1 == 1);
            [SElem::finite(supp.clone()), SElem::cofinite(supp)]
        })
        .collect();
    for x in &elems {
        for n in 1..=agents {
            if !alg.box_k(n, x).leq(x) {
                fail("K_n x <= x", x, None);
            }
        }
        let e = alg.e_of(x);
        if e != SAlgebra::e_closed_form(x) {
            fail("E x closed form", x, None);
        }
        let c = SAlgebra::box_c(x);
        if !c.leq(x) {
            fail("C x <= x", x, None);
        }
        if !c.leq(&alg.e_of(&c)) {
            fail("C x <= E C x", x, None);
        }
        if !SAlgebra::box_c(&x.implies(&e)).leq(&x.implies(&c)) {
            fail("C (x -> E x) <= x -> C x", x, None);
        }
        for y in &elems {
            let xy = x.meet(y);
            for n in 1..=agents {
                if alg.box_k(n, &xy) != alg.box_k(n, x).meet(&alg.box_k(n, y)) {
                    fail("K_n (x & y) = K_n x & K_n y", x, Some(y));
                }
            }
            if SAlgebra::box_c(&xy) != SAlgebra::box_c(x).meet(&SAlgebra::box_c(y)) {
                fail("C (x & y) = C x & C y", x, Some(y));
            }
        }
    }
    for n in 1..=agents {
        if !alg.box_k(n, &SElem::one()).is_one() || !alg.box_k(n, &SElem::zero()).is_zero() {
            fail("K_n 1 = 1 and K_n 0 = 0", &SElem::one(), None);
        }
    }

    let a = SAlgebra::a();
    let powers: Vec<SElem> = (0..=bound).map(|n| alg.e_power(&a, n)).collect();
    let width = bound + 3;
    let mut text = vec![
        format!("{:>7} |{}", "i", (0..width).map(|i| format!("{:>3}", 2 * i)).collect::<String>()),
        format!("{}+{}", "-".repeat(8), "-".repeat(3 * width as usize)),
    ];
    for (n, en) in powers.iter().enumerate() {
        let label = if n == 0 {
            "a".to_string()
        } else {
            format!("E^{n} a")
        };
        text.push(format!("{label:>7} |{} ...   {label} = {en}", even_row(en, width)));
        let want = SElem::cofinite((0..=n as u64).map(|i| 2 * i));
        if *en != want {
            fail("E^n a = C{0,2,...,2n}", en, Some(&want));
        }
    }

    let lower_bound = |x: &SElem| powers.iter().all(|p| x.leq(p));
    let candidates = [
        SAlgebra::box_c(&a),
        SElem::finite([1, 3]),
        SElem::finite([2]),
        powers[powers.len() - 1].clone(),
    ];
    for cand in &candidates {
        let verdict = SAlgebra::no_glb_witness(cand);
        let ok = match &verdict {
            GlbVerdict::NotLowerBound { n } => !cand.leq(&alg.e_power(&a, *n)),
            GlbVerdict::StrictlyBetter { better } => {
                lower_bound(cand) && cand.lt(better) && lower_bound(better)
            }
        };
        text.push(match &verdict {
            GlbVerdict::NotLowerBound { n } => format!("glb candidate {cand}: not below E^{n} a"),
            GlbVerdict::StrictlyBetter { better } => {
                format!("glb candidate {cand}: {better} is a strictly greater lower bound")
            }
        });
        if !ok {
            fail("no greatest lower bound", cand, None);
        }
    }

    let summary = format!(
        "finite/cofinite algebra with {agents} agent(s): MH axioms hold, C a = {} but {{E^n a}} has no greatest lower bound",
        SAlgebra::box_c(&a)
    );
    Ok(Report::new("counterexample", summary, witnesses).with_text(text))
}

pub fn check_proof_file(path: &Path, agents: u32) -> Result<Report> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let proof = parse_script(&text, &AgentSet::first_n(agents))?;
    let report = match check_proof(&proof) {
        ProofVerdict::Accepted => {
            let last = proof.lines.last().expect("accepted proofs have lines");
            Report::new(
                "check-proof",
                format!("accepted: {} lines, concludes {}", proof.lines.len(), last.formula),
                Vec::new(),
            )
        }
        ProofVerdict::Rejected { line, reason } => {
            let summary = if line == 0 {
                reason.to_string()
            } else {
                format!("rejected at line {line}: {reason}")
            };
            let witness = json!({ "line": line, "reason": reason, "message": reason.to_string() });
            Report::new("check-proof", summary, vec![witness])
        }
    };
    Ok(report)
}

pub fn parse_formula(formula: &str, agents: u32) -> Result<Report> {
    let agents = AgentSet::first_n(agents);
    let f = parse(formula, &agents)?;
    let text = vec![
        format!("core: {}", expand(&f, &agents)),
        format!("size {}, depth {}", f.size(), f.depth()),
    ];
    Ok(Report::new("parse", f.to_string(), Vec::new()).with_text(text))
}
