//! Rule satisfaction, reducts, and least models.
//!
//! The stable-model test is the classic two-step check: reduce the program
//! by the candidate interpretation, take the least model of the resulting
//! negation-free program, and compare; compute statements then act as a
//! model filter.

use crate::ast::{Atom, AtomSet, Program, Rule, WeightedLits};
use crate::error::{Error, Result};
use crate::interp::Interpretation;

/// Union of the literals of a program's compute statements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LiteralSet {
    pub pos: Interpretation,
    pub neg: Interpretation,
}

impl LiteralSet {
    pub fn satisfied_by(&self, i: &Interpretation) -> bool {
        self.pos.is_subset(i) && self.neg.is_disjoint(i)
    }

    pub fn is_empty(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty()
    }
}

/// Weight sum of a body under `i`: weights of positive literals whose atom
/// is in `i` plus weights of negative literals whose atom is not.
///
/// Checked against the 64-bit range; individual weights always fit but a
/// sum may not.
pub fn wsum(i: &Interpretation, pos: &[(Atom, u64)], neg: &[(Atom, u64)]) -> Result<u64> {
    u64::try_from(wsum_wide(i, pos, neg)).map_err(|_| Error::Overflow)
}

/// Widened weight sum for internal comparisons; cannot overflow.
pub(crate) fn wsum_wide(i: &Interpretation, pos: &[(Atom, u64)], neg: &[(Atom, u64)]) -> u128 {
    let p: u128 = pos.iter().filter(|&&(a, _)| i.contains(a)).map(|&(_, w)| w as u128).sum();
    let n: u128 = neg.iter().filter(|&&(a, _)| !i.contains(a)).map(|&(_, w)| w as u128).sum();
    p + n
}

/// Satisfied-literal count of a cardinality body: positive atoms in `i`
/// plus negative atoms not in `i`.
pub(crate) fn count_sat(i: &Interpretation, pos: &[Atom], neg: &[Atom]) -> u64 {
    let p = pos.iter().filter(|&&a| i.contains(a)).count();
    let n = neg.iter().filter(|&&a| !i.contains(a)).count();
    (p + n) as u64
}

fn body_holds(i: &Interpretation, pos: &[Atom], neg: &[Atom]) -> bool {
    pos.iter().all(|&a| i.contains(a)) && neg.iter().all(|&a| !i.contains(a))
}

/// Classical satisfaction of a single rule.
pub fn satisfies(i: &Interpretation, rule: &Rule) -> bool {
    match rule {
        Rule::Basic { head, pos, neg } => !body_holds(i, pos, neg) || i.contains(*head),
        Rule::Constraint { head, bound, pos, neg } => {
            count_sat(i, pos, neg) < *bound || i.contains(*head)
        }
        Rule::Choice { .. } => true,
        Rule::Weight { head, bound, pos, neg } => {
            wsum_wide(i, pos, neg) < *bound as u128 || i.contains(*head)
        }
        Rule::Compute { pos, neg } => body_holds(i, pos, neg),
    }
}

/// Classical satisfaction of every rule, compute statements included.
pub fn satisfies_program(p: &Program, i: &Interpretation) -> bool {
    p.rules().iter().all(|r| satisfies(i, r))
}

/// Union of the compute statements' literals.
pub fn compst(p: &Program) -> LiteralSet {
    let mut set = LiteralSet::default();
    for r in p.rules() {
        if let Rule::Compute { pos, neg } = r {
            pos.iter().for_each(|&a| set.pos.insert(a));
            neg.iter().for_each(|&a| set.neg.insert(a));
        }
    }
    set
}

/// Negation-free rules produced by a reduct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReducedRule {
    Basic { head: Atom, pos: AtomSet },
    Constraint { head: Atom, bound: u64, pos: AtomSet },
    Weight { head: Atom, bound: u64, pos: WeightedLits },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReducedProgram {
    pub rules: Vec<ReducedRule>,
}

/// The reduct of `p` by `i`.
///
/// Basic rules survive when their negative body holds; choice rules leave
/// one positive rule per chosen head under the same condition; constraint
/// and weight rules always survive with the bound lowered by what the
/// negative body already contributes; compute statements are dropped.
pub fn reduce(p: &Program, i: &Interpretation) -> ReducedProgram {
    let mut rules = Vec::new();
    for r in p.rules() {
        match r {
            Rule::Basic { head, pos, neg } => {
                if neg.iter().all(|&b| !i.contains(b)) {
                    rules.push(ReducedRule::Basic { head: *head, pos: pos.clone() });
                }
            }
            Rule::Constraint { head, bound, pos, neg } => {
                let false_negs = neg.iter().filter(|&&b| !i.contains(b)).count() as u64;
                rules.push(ReducedRule::Constraint {
                    head: *head,
                    bound: bound.saturating_sub(false_negs),
                    pos: pos.clone(),
                });
            }
            Rule::Choice { heads, pos, neg } => {
                if neg.iter().all(|&b| !i.contains(b)) {
                    for &h in heads.iter().filter(|&&h| i.contains(h)) {
                        rules.push(ReducedRule::Basic { head: h, pos: pos.clone() });
                    }
                }
            }
            Rule::Weight { head, bound, pos, neg } => {
                let neg_sum = wsum_wide(i, &[], neg);
                let bound = u64::try_from((*bound as u128).saturating_sub(neg_sum))
                    .expect("lowered bound fits: it never exceeds the original");
                rules.push(ReducedRule::Weight { head: *head, bound, pos: pos.clone() });
            }
            Rule::Compute { .. } => {}
        }
    }
    ReducedProgram { rules }
}

/// Atoms derivable from `i` by one application of the reduced rules.
pub fn nec_step(r: &ReducedProgram, i: &Interpretation) -> Interpretation {
    let mut out = Interpretation::new();
    for rule in &r.rules {
        let fires = match rule {
            ReducedRule::Basic { pos, .. } => pos.iter().all(|&a| i.contains(a)),
            ReducedRule::Constraint { bound, pos, .. } => {
                (pos.iter().filter(|&&a| i.contains(a)).count() as u64) >= *bound
            }
            ReducedRule::Weight { bound, pos, .. } => wsum_wide(i, pos, &[]) >= *bound as u128,
        };
        if fires {
            let head = match rule {
                ReducedRule::Basic { head, .. }
                | ReducedRule::Constraint { head, .. }
                | ReducedRule::Weight { head, .. } => *head,
            };
            out.insert(head);
        }
    }
    out
}

/// Least model of a reduced program via count-down propagation: each rule
/// tracks how much of its requirement is still missing, and a newly true
/// atom pays into every rule whose positive body mentions it.
pub fn least_model(r: &ReducedProgram) -> Interpretation {
    let mut max_id = 0usize;
    for rule in &r.rules {
        let mut see = |a: Atom| max_id = max_id.max(a.index() + 1);
        match rule {
            ReducedRule::Basic { head, pos } => {
                see(*head);
                pos.iter().for_each(|&a| see(a));
            }
            ReducedRule::Constraint { head, pos, .. } => {
                see(*head);
                pos.iter().for_each(|&a| see(a));
            }
            ReducedRule::Weight { head, pos, .. } => {
                see(*head);
                pos.iter().for_each(|&(a, _)| see(a));
            }
        }
    }

    let mut need: Vec<u128> = Vec::with_capacity(r.rules.len());
    let mut by_atom: Vec<Vec<(u32, u64)>> = vec![Vec::new(); max_id];
    for (idx, rule) in r.rules.iter().enumerate() {
        let idx32 = idx as u32;
        match rule {
            ReducedRule::Basic { pos, .. } => {
                need.push(pos.len() as u128);
                pos.iter().for_each(|&a| by_atom[a.index()].push((idx32, 1)));
            }
            ReducedRule::Constraint { bound, pos, .. } => {
                need.push(*bound as u128);
                pos.iter().for_each(|&a| by_atom[a.index()].push((idx32, 1)));
            }
            ReducedRule::Weight { bound, pos, .. } => {
                need.push(*bound as u128);
                pos.iter().for_each(|&(a, w)| by_atom[a.index()].push((idx32, w)));
            }
        }
    }

    let head_of = |rule: &ReducedRule| match rule {
        ReducedRule::Basic { head, .. }
        | ReducedRule::Constraint { head, .. }
        | ReducedRule::Weight { head, .. } => *head,
    };

    let mut model = Interpretation::new();
    let mut queue: Vec<Atom> = Vec::new();
    let push = |a: Atom, model: &mut Interpretation, queue: &mut Vec<Atom>| {
        if !model.contains(a) {
            model.insert(a);
            queue.push(a);
        }
    };
    for (idx, rule) in r.rules.iter().enumerate() {
        if need[idx] == 0 {
            push(head_of(rule), &mut model, &mut queue);
        }
    }
    while let Some(a) = queue.pop() {
        for &(idx, contrib) in &by_atom[a.index()] {
            let idx = idx as usize;
            if need[idx] > 0 {
                need[idx] = need[idx].saturating_sub(contrib as u128);
                if need[idx] == 0 {
                    push(head_of(&r.rules[idx]), &mut model, &mut queue);
                }
            }
        }
    }
    model
}

/// Stability test: `m` reproduces itself through the reduct and satisfies
/// the compute statements.
pub fn is_stable(p: &Program, m: &Interpretation) -> bool {
    debug_assert!(m.is_subset(p.hb()));
    compst(p).satisfied_by(m) && least_model(&reduce(p, m)) == *m
}
