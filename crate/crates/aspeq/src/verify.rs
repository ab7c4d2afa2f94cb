//! Equivalence verification.
//!
//! Three deciders for visible equivalence with complementary trust models:
//!
//! * [`verify_translation`] runs the counter-example translation in both
//!   directions and searches each for a single stable model. Sound and
//!   complete when both programs have enough visible atoms, which is gated
//!   up front.
//! * [`verify_naive`] enumerates one side's stable models and probes the
//!   other side with a compute statement per visible projection. Matches
//!   the translation verdict when both programs have enough visible atoms,
//!   but nothing gates that here.
//! * [`verify_oracle`] enumerates both sides and compares, per visible
//!   projection, how many stable models project there. Equal counts in
//!   every fiber are exactly the existence of a projection-preserving
//!   bijection, so this is the ground truth, at exponential cost.

use std::fmt;

use crate::ast::{Atom, Program, Rule};
use crate::enumerate::{enumerate, find_one, DEFAULT_ORACLE_CAP};
use crate::eqt::{decode, eqt, CounterExample, Reason};
use crate::interp::Interpretation;
use crate::semantics::{least_model, reduce};
use crate::visibility::{
    eval_hidden, has_enough_visible_exact_capped, has_enough_visible_overapprox, EvaStatus,
    DEFAULT_EVA_CAP,
};

/// Which program supplied the unmatched stable model of a
/// [`Verdict::NotEquivalent`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    LeftToRight,
    RightToLeft,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::LeftToRight => write!(f, "left-to-right"),
            Direction::RightToLeft => write!(f, "right-to-left"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equivalent,
    /// `witness.m` is a stable model of the direction's source program and
    /// no stable model of the target program matches it on visible atoms.
    NotEquivalent { direction: Direction, witness: CounterExample },
    /// The method's preconditions failed; no judgement either way.
    Inapplicable { why: String },
}

/// How to establish that hidden parts have unique completions before
/// trusting the translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvaMode {
    /// Syntactic check first; on an inconclusive answer fall back to the
    /// exact check when the visible base is small enough.
    Overapprox,
    /// Always run the exponential exact check.
    Exact,
    /// Trust the caller. The verdict is unreliable if the assumption fails.
    Assume,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub eva: EvaMode,
    /// Search both directions even after the first witness is found; the
    /// left-to-right witness is still the one reported.
    pub both_directions: bool,
    /// Translate choice rules with one auxiliary atom per rule instead of
    /// repeating the body per head.
    pub linear_choice: bool,
    /// Visible-base size limit for the exact hidden-part check.
    pub eva_exact_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            eva: EvaMode::Overapprox,
            both_directions: false,
            linear_choice: true,
            eva_exact_cap: DEFAULT_EVA_CAP,
        }
    }
}

fn base_mismatch_why(p: &Program, q: &Program) -> Option<String> {
    let pv = p.visible_names();
    let qv = q.visible_names();
    if pv == qv {
        return None;
    }
    let mut parts = Vec::new();
    for (side, extra) in [("left", pv.difference(&qv)), ("right", qv.difference(&pv))] {
        let extra: Vec<&str> = extra.copied().collect();
        if !extra.is_empty() {
            parts.push(format!("only {side} has [{}]", extra.join(", ")));
        }
    }
    Some(format!("visible bases differ: {}", parts.join(", ")))
}

fn exact_gate(prog: &Program, side: &str, cap: usize) -> Result<(), String> {
    match has_enough_visible_exact_capped(prog, cap) {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!(
            "{side} program does not have enough visible atoms: some visible context \
             admits zero or several hidden completions"
        )),
        Err(e) => Err(format!("{side} program: {e}")),
    }
}

fn eva_gate(prog: &Program, side: &str, opts: &VerifyOptions) -> Result<(), String> {
    match opts.eva {
        EvaMode::Assume => Ok(()),
        EvaMode::Exact => exact_gate(prog, side, opts.eva_exact_cap),
        EvaMode::Overapprox => {
            if has_enough_visible_overapprox(prog) == EvaStatus::Guaranteed {
                Ok(())
            } else if prog.hbv().len() <= opts.eva_exact_cap {
                exact_gate(prog, side, opts.eva_exact_cap)
            } else {
                Err(format!(
                    "{side} program: the hidden-part analysis is inconclusive and the visible \
                     base ({} atoms) exceeds the exact-check cap ({})",
                    prog.hbv().len(),
                    opts.eva_exact_cap
                ))
            }
        }
    }
}

/// Builds the canonical failing candidate over `tgt` for a source model
/// `m` whose visible part no stable model of `tgt` matches: the visible
/// part of `m` mapped by name, completed with a stable model of `tgt`'s
/// hidden part when one exists.
fn candidate_counter_example(src: &Program, m: &Interpretation, tgt: &Program) -> CounterExample {
    let mv = src.project_visible(m).expect("models stay inside the base");
    let mut n = Interpretation::new();
    for a in mv.iter() {
        let img = tgt.atom(src.name(a)).expect("equal visible bases were checked");
        n.insert(img);
    }
    let hidden = eval_hidden(tgt, &n);
    if let Some(completion) = find_one(&hidden) {
        n = n.union(&completion);
    }
    let l = least_model(&reduce(tgt, &n));
    let reason = if l == n { Reason::ComputeViolation } else { Reason::ReductMismatch };
    CounterExample { m: m.clone(), n, l, reason }
}

fn translation_direction(
    src: &Program,
    tgt: &Program,
    opts: &VerifyOptions,
) -> Result<Option<CounterExample>, String> {
    let (t, map) = eqt(src, tgt, opts.linear_choice).map_err(|e| e.to_string())?;
    match find_one(&t) {
        Some(k) => {
            let ce = decode(&t, &k, &map, src, tgt).expect("the engine only yields stable models");
            Ok(Some(ce))
        }
        None => Ok(None),
    }
}

/// Decides visible equivalence through the counter-example translation.
/// Left-to-right is searched first and, unless `both_directions` is set,
/// the second translation is skipped once a witness is found.
pub fn verify_translation(p: &Program, q: &Program, opts: &VerifyOptions) -> Verdict {
    if let Some(why) = base_mismatch_why(p, q) {
        return Verdict::Inapplicable { why };
    }
    for (prog, side) in [(p, "left"), (q, "right")] {
        if let Err(why) = eva_gate(prog, side, opts) {
            return Verdict::Inapplicable { why };
        }
    }
    let forward = match translation_direction(p, q, opts) {
        Err(why) => return Verdict::Inapplicable { why },
        Ok(w) => w,
    };
    if let (false, Some(witness)) = (opts.both_directions, forward.clone()) {
        return Verdict::NotEquivalent { direction: Direction::LeftToRight, witness };
    }
    let backward = match translation_direction(q, p, opts) {
        Err(why) => return Verdict::Inapplicable { why },
        Ok(w) => w,
    };
    match (forward, backward) {
        (Some(witness), _) => Verdict::NotEquivalent { direction: Direction::LeftToRight, witness },
        (None, Some(witness)) => {
            Verdict::NotEquivalent { direction: Direction::RightToLeft, witness }
        }
        (None, None) => Verdict::Equivalent,
    }
}

fn naive_direction(src: &Program, tgt: &Program) -> Option<CounterExample> {
    for m in enumerate(src) {
        let mv = src.project_visible(&m).expect("models stay inside the base");
        let mut pos = Vec::new();
        for a in mv.iter() {
            pos.push(tgt.atom(src.name(a)).expect("equal visible bases were checked"));
        }
        let on: Interpretation = pos.iter().copied().collect();
        let neg: Vec<Atom> = tgt.hbv().difference(&on).iter().collect();
        let probe = tgt.with_extra_rules(vec![Rule::compute(pos, neg)]);
        if find_one(&probe).is_none() {
            return Some(candidate_counter_example(src, &m, tgt));
        }
    }
    None
}

/// Decides visible equivalence by enumerating each side and probing the
/// other with one compute statement per stable model. Reliable only when
/// both programs have enough visible atoms; no gate enforces that here.
pub fn verify_naive(p: &Program, q: &Program) -> Verdict {
    if let Some(why) = base_mismatch_why(p, q) {
        return Verdict::Inapplicable { why };
    }
    if let Some(witness) = naive_direction(p, q) {
        return Verdict::NotEquivalent { direction: Direction::LeftToRight, witness };
    }
    if let Some(witness) = naive_direction(q, p) {
        return Verdict::NotEquivalent { direction: Direction::RightToLeft, witness };
    }
    Verdict::Equivalent
}

/// Ground-truth decision by fiber counting: for every visible projection,
/// both programs must have the same number of stable models projecting
/// there, which holds exactly when a projection-preserving bijection
/// exists. Exponential in the base sizes, hence capped.
pub fn verify_oracle(p: &Program, q: &Program) -> Verdict {
    verify_oracle_capped(p, q, DEFAULT_ORACLE_CAP)
}

pub fn verify_oracle_capped(p: &Program, q: &Program, cap: usize) -> Verdict {
    if let Some(why) = base_mismatch_why(p, q) {
        return Verdict::Inapplicable { why };
    }
    for (prog, side) in [(p, "left"), (q, "right")] {
        let size = prog.hb().len();
        if size > cap {
            return Verdict::Inapplicable {
                why: format!("{side} program has {size} atoms, above the enumeration cap {cap}"),
            };
        }
    }
    let mut fibers: std::collections::BTreeMap<
        Vec<String>,
        (Vec<Interpretation>, Vec<Interpretation>),
    > = std::collections::BTreeMap::new();
    let key = |prog: &Program, m: &Interpretation| -> Vec<String> {
        let mv = prog.project_visible(m).expect("models stay inside the base");
        let mut names: Vec<String> = mv.iter().map(|a| prog.name(a).to_string()).collect();
        names.sort();
        names
    };
    for m in enumerate(p) {
        fibers.entry(key(p, &m)).or_default().0.push(m);
    }
    for n in enumerate(q) {
        fibers.entry(key(q, &n)).or_default().1.push(n);
    }
    for (_, (left, right)) in fibers {
        if left.len() == right.len() {
            continue;
        }
        return if left.len() > right.len() {
            Verdict::NotEquivalent {
                direction: Direction::LeftToRight,
                witness: candidate_counter_example(p, &left[0], q),
            }
        } else {
            Verdict::NotEquivalent {
                direction: Direction::RightToLeft,
                witness: candidate_counter_example(q, &right[0], p),
            }
        };
    }
    Verdict::Equivalent
}
