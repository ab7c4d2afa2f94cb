//! Hidden-atom analysis.
//!
//! Visible equivalence only behaves like a congruence when each program's
//! hidden part pins down a unique completion for every visible context.
//! This module evaluates hidden parts against a visible interpretation and
//! decides, exactly or by a safe overapproximation, whether a program has
//! that property.

use crate::ast::{build_program, Atom, Program, Rule};
use crate::error::{Error, Result};
use crate::interp::Interpretation;
use crate::semantics::wsum_wide;

/// Default limit on the visible base size for the exact check.
pub const DEFAULT_EVA_CAP: usize = 20;

/// Verdict of the syntactic overapproximation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvaStatus {
    /// The hidden part is guaranteed to have exactly one stable model for
    /// every visible context.
    Guaranteed,
    /// The syntactic test cannot tell; only the exact check can decide.
    Unknown,
}

/// Specializes the hidden part of `p` to the visible context `iv`: keeps
/// hidden-head rules whose visible body part `iv` settles, drops their
/// visible literals, and lowers constraint and weight bounds by the visible
/// contribution. The result is a program over the hidden base only.
pub fn eval_hidden(p: &Program, iv: &Interpretation) -> Program {
    debug_assert!(iv.is_subset(p.hbv()));
    let hidden = |a: Atom| p.hbh().contains(a);
    let mut rules = Vec::new();
    for r in p.rules() {
        match r {
            Rule::Basic { head, pos, neg } => {
                if !hidden(*head) {
                    continue;
                }
                let vis_ok = pos.iter().all(|&a| hidden(a) || iv.contains(a))
                    && neg.iter().all(|&a| hidden(a) || !iv.contains(a));
                if vis_ok {
                    rules.push(Rule::basic(
                        *head,
                        pos.iter().copied().filter(|&a| hidden(a)).collect(),
                        neg.iter().copied().filter(|&a| hidden(a)).collect(),
                    ));
                }
            }
            Rule::Choice { heads, pos, neg } => {
                let hh: Vec<Atom> = heads.iter().copied().filter(|&a| hidden(a)).collect();
                if hh.is_empty() {
                    continue;
                }
                let vis_ok = pos.iter().all(|&a| hidden(a) || iv.contains(a))
                    && neg.iter().all(|&a| hidden(a) || !iv.contains(a));
                if vis_ok {
                    rules.push(Rule::choice(
                        hh,
                        pos.iter().copied().filter(|&a| hidden(a)).collect(),
                        neg.iter().copied().filter(|&a| hidden(a)).collect(),
                    ));
                }
            }
            Rule::Constraint { head, bound, pos, neg } => {
                if !hidden(*head) {
                    continue;
                }
                let vis_sat = pos.iter().filter(|&&a| !hidden(a) && iv.contains(a)).count()
                    + neg.iter().filter(|&&a| !hidden(a) && !iv.contains(a)).count();
                rules.push(Rule::constraint(
                    *head,
                    bound.saturating_sub(vis_sat as u64),
                    pos.iter().copied().filter(|&a| hidden(a)).collect(),
                    neg.iter().copied().filter(|&a| hidden(a)).collect(),
                ));
            }
            Rule::Weight { head, bound, pos, neg } => {
                if !hidden(*head) {
                    continue;
                }
                let vis_pos: Vec<(Atom, u64)> =
                    pos.iter().copied().filter(|&(a, _)| !hidden(a)).collect();
                let vis_neg: Vec<(Atom, u64)> =
                    neg.iter().copied().filter(|&(a, _)| !hidden(a)).collect();
                let vis_sum = wsum_wide(iv, &vis_pos, &vis_neg);
                let lowered = bound.saturating_sub(u64::try_from(vis_sum).unwrap_or(u64::MAX));
                rules.push(Rule::weight(
                    *head,
                    lowered,
                    pos.iter().copied().filter(|&(a, _)| hidden(a)).collect(),
                    neg.iter().copied().filter(|&(a, _)| hidden(a)).collect(),
                ));
            }
            Rule::Compute { .. } => {}
        }
    }
    let extras: Vec<Atom> = p.hbh().iter().collect();
    build_program(p.symbols().clone(), rules, None, None, &extras)
        .expect("hidden part reuses validated atoms")
}

/// Exact check: the hidden part must have exactly one stable model for every
/// subset of the visible base. Exponential in `|Hbv|`, hence capped.
pub fn has_enough_visible_exact(p: &Program) -> Result<bool> {
    has_enough_visible_exact_capped(p, DEFAULT_EVA_CAP)
}

pub fn has_enough_visible_exact_capped(p: &Program, cap: usize) -> Result<bool> {
    let vis: Vec<Atom> = p.hbv().iter().collect();
    if vis.len() > cap {
        return Err(Error::CapExceeded { what: "visible base", size: vis.len(), cap });
    }
    for mask in 0u64..(1u64 << vis.len()) {
        let iv: Interpretation = vis
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &a)| a)
            .collect();
        let hidden = eval_hidden(p, &iv);
        if crate::enumerate::count_up_to(&hidden, 2) != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Syntactic overapproximation: `Guaranteed` when no choice rule has a
/// hidden head and the dependency graph over hidden atoms has no negative
/// edge inside a strongly connected component. Such hidden parts are
/// choice-free and stratified, so they have exactly one stable model under
/// every visible context. Compute statements never matter here: evaluating
/// a hidden part drops them.
pub fn has_enough_visible_overapprox(p: &Program) -> EvaStatus {
    let hidden = |a: Atom| p.hbh().contains(a);
    for r in p.rules() {
        if let Rule::Choice { heads, .. } = r {
            if heads.iter().any(|&h| hidden(h)) {
                return EvaStatus::Unknown;
            }
        }
    }

    // Dependency graph restricted to hidden atoms, edges head -> body atom
    // tagged with the literal's polarity as written.
    let n = p.symbols().len();
    let mut pos_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut neg_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
    let add = |from: Atom, pos: &[Atom], neg: &[Atom], pe: &mut Vec<Vec<usize>>, ne: &mut Vec<Vec<usize>>| {
        for &a in pos {
            if hidden(a) {
                pe[from.index()].push(a.index());
            }
        }
        for &a in neg {
            if hidden(a) {
                ne[from.index()].push(a.index());
            }
        }
    };
    for r in p.rules() {
        match r {
            Rule::Basic { head, pos, neg } if hidden(*head) => {
                add(*head, pos, neg, &mut pos_edges, &mut neg_edges);
            }
            Rule::Constraint { head, bound: _, pos, neg } if hidden(*head) => {
                add(*head, pos, neg, &mut pos_edges, &mut neg_edges);
            }
            Rule::Weight { head, bound: _, pos, neg } if hidden(*head) => {
                let pa: Vec<Atom> = pos.iter().map(|&(a, _)| a).collect();
                let na: Vec<Atom> = neg.iter().map(|&(a, _)| a).collect();
                add(*head, &pa, &na, &mut pos_edges, &mut neg_edges);
            }
            _ => {}
        }
    }

    let scc = scc_ids(n, |v, out| {
        out.extend(pos_edges[v].iter().copied());
        out.extend(neg_edges[v].iter().copied());
    });
    for v in 0..n {
        if neg_edges[v].iter().any(|&w| scc[v] == scc[w]) {
            return EvaStatus::Unknown;
        }
    }
    EvaStatus::Guaranteed
}

/// Whether every stable model of `p` is recoverable from its visible part:
/// no two stable models share a visible projection.
pub fn is_separable(p: &Program) -> Result<bool> {
    let size = p.hb().len();
    if size > crate::enumerate::DEFAULT_ORACLE_CAP {
        return Err(Error::CapExceeded {
            what: "Herbrand base",
            size,
            cap: crate::enumerate::DEFAULT_ORACLE_CAP,
        });
    }
    let mut seen: Vec<Interpretation> = Vec::new();
    for m in crate::enumerate::enumerate(p) {
        let v = p.project_visible(&m).expect("models stay inside the base");
        if seen.contains(&v) {
            return Ok(false);
        }
        seen.push(v);
    }
    Ok(true)
}

/// Iterative Tarjan strongly connected components; returns a component id
/// per vertex.
fn scc_ids(n: usize, mut neighbours: impl FnMut(usize, &mut Vec<usize>)) -> Vec<usize> {
    const UNSET: usize = usize::MAX;
    let mut index = vec![UNSET; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSET; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut next_comp = 0usize;

    // call frames: (vertex, neighbour list, next neighbour offset)
    let mut frames: Vec<(usize, Vec<usize>, usize)> = Vec::new();
    let mut visit = |v: usize,
                     frames: &mut Vec<(usize, Vec<usize>, usize)>,
                     index: &mut Vec<usize>,
                     low: &mut Vec<usize>,
                     stack: &mut Vec<usize>,
                     on_stack: &mut Vec<bool>,
                     next_index: &mut usize| {
        index[v] = *next_index;
        low[v] = *next_index;
        *next_index += 1;
        stack.push(v);
        on_stack[v] = true;
        let mut adj = Vec::new();
        neighbours(v, &mut adj);
        frames.push((v, adj, 0));
    };

    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        visit(root, &mut frames, &mut index, &mut low, &mut stack, &mut on_stack, &mut next_index);
        while !frames.is_empty() {
            let fi = frames.len() - 1;
            let v = frames[fi].0;
            let i = frames[fi].2;
            if i < frames[fi].1.len() {
                let w = frames[fi].1[i];
                frames[fi].2 += 1;
                if index[w] == UNSET {
                    visit(
                        w,
                        &mut frames,
                        &mut index,
                        &mut low,
                        &mut stack,
                        &mut on_stack,
                        &mut next_index,
                    );
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
                if let Some(f) = frames.last() {
                    let u = f.0;
                    low[u] = low[u].min(low[v]);
                }
            }
        }
    }
    comp
}
