//! Stable-model enumeration.
//!
//! Two engines with identical semantics: a subset-table oracle that tests
//! every candidate interpretation (capped, used as ground truth in tests),
//! and a backtracking searcher that interleaves sound propagation with
//! chronological search. Every leaf is confirmed with the full stability
//! test, so pruning can only ever skip non-models.

use std::ops::ControlFlow;

use crate::ast::{Atom, Program, Rule};
use crate::error::{Error, Result};
use crate::interp::Interpretation;
use crate::semantics::is_stable;

/// Default limit on the base size for the subset oracle.
pub const DEFAULT_ORACLE_CAP: usize = 22;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// Branch decisions taken by the backtracking engine (0 for the oracle).
    pub choice_points: u64,
    /// Stable models yielded.
    pub models: u64,
}

/// A fully drained enumeration result.
#[derive(Clone, Debug)]
pub struct ModelStream {
    models: Vec<Interpretation>,
    stats: Stats,
}

impl ModelStream {
    pub fn models(&self) -> &[Interpretation] {
        &self.models
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn into_models(self) -> Vec<Interpretation> {
        self.models
    }
}

impl IntoIterator for ModelStream {
    type Item = Interpretation;
    type IntoIter = std::vec::IntoIter<Interpretation>;

    fn into_iter(self) -> Self::IntoIter {
        self.models.into_iter()
    }
}

/// Tests every subset of the base for stability, in ascending bitmask order
/// over atoms sorted by id.
pub fn enumerate_oracle(p: &Program) -> Result<ModelStream> {
    enumerate_oracle_capped(p, DEFAULT_ORACLE_CAP)
}

pub fn enumerate_oracle_capped(p: &Program, cap: usize) -> Result<ModelStream> {
    let atoms: Vec<Atom> = p.hb().iter().collect();
    if atoms.len() > cap {
        return Err(Error::CapExceeded { what: "Herbrand base", size: atoms.len(), cap });
    }
    let mut models = Vec::new();
    for mask in 0u64..(1u64 << atoms.len()) {
        let m: Interpretation = atoms
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &a)| a)
            .collect();
        if is_stable(p, &m) {
            models.push(m);
        }
    }
    let stats = Stats { choice_points: 0, models: models.len() as u64 };
    Ok(ModelStream { models, stats })
}

/// Enumerates all stable models with the backtracking engine.
pub fn enumerate(p: &Program) -> ModelStream {
    let mut models = Vec::new();
    let mut stats = search(p, |m| {
        models.push(m.clone());
        ControlFlow::Continue(())
    });
    stats.models = models.len() as u64;
    ModelStream { models, stats }
}

/// First stable model in the engine's deterministic order, if any.
pub fn find_one(p: &Program) -> Option<Interpretation> {
    find_one_with_stats(p).0
}

/// Like [`find_one`], but also reports the effort the search spent.
pub fn find_one_with_stats(p: &Program) -> (Option<Interpretation>, Stats) {
    let mut found = None;
    let mut stats = search(p, |m| {
        found = Some(m.clone());
        ControlFlow::Break(())
    });
    stats.models = if found.is_some() { 1 } else { 0 };
    (found, stats)
}

/// Counts stable models, stopping early once `limit` have been seen.
pub(crate) fn count_up_to(p: &Program, limit: usize) -> usize {
    let mut n = 0usize;
    if limit == 0 {
        return 0;
    }
    search(p, |_| {
        n += 1;
        if n >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    n
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Val {
    Unknown,
    True,
    False,
}

/// Backtracking search: branch on the lowest-id unassigned atom, false
/// branch first; propagate between decisions; verify stability at leaves.
pub(crate) fn search<F: FnMut(&Interpretation) -> ControlFlow<()>>(
    p: &Program,
    mut yield_model: F,
) -> Stats {
    let mut s = Search {
        p,
        hb_atoms: p.hb().iter().collect(),
        value: vec![Val::Unknown; p.symbols().len()],
        trail: Vec::new(),
        supported: vec![false; p.symbols().len()],
        stats: Stats::default(),
    };
    let _ = s.run(&mut yield_model);
    s.stats
}

struct Search<'p> {
    p: &'p Program,
    hb_atoms: Vec<Atom>,
    value: Vec<Val>,
    trail: Vec<Atom>,
    supported: Vec<bool>,
    stats: Stats,
}

impl<'p> Search<'p> {
    fn run<F: FnMut(&Interpretation) -> ControlFlow<()>>(&mut self, f: &mut F) -> ControlFlow<()> {
        let mark = self.trail.len();
        if !self.propagate() {
            self.undo_to(mark);
            return ControlFlow::Continue(());
        }
        let next = self.hb_atoms.iter().copied().find(|&a| self.value[a.index()] == Val::Unknown);
        let flow = match next {
            None => {
                let m: Interpretation = self
                    .hb_atoms
                    .iter()
                    .copied()
                    .filter(|&a| self.value[a.index()] == Val::True)
                    .collect();
                if is_stable(self.p, &m) {
                    f(&m)
                } else {
                    ControlFlow::Continue(())
                }
            }
            Some(a) => {
                self.stats.choice_points += 1;
                let mut flow = ControlFlow::Continue(());
                for v in [Val::False, Val::True] {
                    let branch_mark = self.trail.len();
                    let ok = self.assign(a, v);
                    debug_assert!(ok);
                    flow = self.run(f);
                    self.undo_to(branch_mark);
                    if flow.is_break() {
                        break;
                    }
                }
                flow
            }
        };
        self.undo_to(mark);
        flow
    }

    fn assign(&mut self, a: Atom, v: Val) -> bool {
        match self.value[a.index()] {
            Val::Unknown => {
                self.value[a.index()] = v;
                self.trail.push(a);
                true
            }
            old => old == v,
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let a = self.trail.pop().unwrap();
            self.value[a.index()] = Val::Unknown;
        }
    }

    /// Closes the assignment under consequences every stable completion must
    /// satisfy. Returns false when some rule or compute statement is already
    /// violated under every completion.
    fn propagate(&mut self) -> bool {
        loop {
            let before = self.trail.len();
            if !self.propagate_rules() {
                return false;
            }
            if !self.propagate_support() {
                return false;
            }
            if self.trail.len() == before {
                return true;
            }
        }
    }

    fn propagate_rules(&mut self) -> bool {
        for r in self.p.rules() {
            let ok = match r {
                Rule::Basic { head, pos, neg } => self.rule_weighted(
                    *head,
                    pos.len() as u128 + neg.len() as u128,
                    pos.iter().map(|&a| (a, 1u64)),
                    neg.iter().map(|&a| (a, 1u64)),
                ),
                Rule::Constraint { head, bound, pos, neg } => {
                    self.rule_weighted(
                        *head,
                        *bound as u128,
                        pos.iter().map(|&a| (a, 1u64)),
                        neg.iter().map(|&a| (a, 1u64)),
                    )
                }
                Rule::Weight { head, bound, pos, neg } => self.rule_weighted(
                    *head,
                    *bound as u128,
                    pos.iter().copied(),
                    neg.iter().copied(),
                ),
                Rule::Choice { .. } => true,
                Rule::Compute { pos, neg } => {
                    pos.iter().all(|&a| self.assign(a, Val::True))
                        && neg.iter().all(|&a| self.assign(a, Val::False))
                }
            };
            if !ok {
                return false;
            }
        }
        true
    }

    /// Shared propagation for bodies read as weighted literal lists: a basic
    /// body is the special case where the bound equals the literal count.
    fn rule_weighted(
        &mut self,
        head: Atom,
        bound: u128,
        pos: impl Iterator<Item = (Atom, u64)> + Clone,
        neg: impl Iterator<Item = (Atom, u64)> + Clone,
    ) -> bool {
        // A head occurring negatively in its own body folds into the bound:
        // were the head false with the rest of the body satisfied, the
        // reduct would keep the rule with the self-literal's weight already
        // paid and derive the head anyway. So the remaining literals alone
        // decide, and reaching the lowered bound forces the head true.
        let mut bound = bound;
        let mut sure: u128 = 0;
        let mut open: u128 = 0;
        for (a, w) in pos.clone() {
            match self.value[a.index()] {
                Val::True => sure += w as u128,
                Val::Unknown => open += w as u128,
                Val::False => {}
            }
        }
        for (a, w) in neg.clone() {
            if a == head {
                bound = bound.saturating_sub(w as u128);
                continue;
            }
            match self.value[a.index()] {
                Val::False => sure += w as u128,
                Val::Unknown => open += w as u128,
                Val::True => {}
            }
        }
        if sure >= bound {
            // body holds in every completion, so the head must hold too
            if !self.assign(head, Val::True) {
                return false;
            }
        } else if sure + open >= bound && self.value[head.index()] == Val::False {
            // a false head forbids completing the body: falsify any open
            // literal that would on its own push the body over the bound
            for (a, w) in pos {
                if self.value[a.index()] == Val::Unknown
                    && sure + w as u128 >= bound
                    && !self.assign(a, Val::False)
                {
                    return false;
                }
            }
            for (a, w) in neg {
                if a == head {
                    continue;
                }
                if self.value[a.index()] == Val::Unknown
                    && sure + w as u128 >= bound
                    && !self.assign(a, Val::True)
                {
                    return false;
                }
            }
        }
        true
    }

    /// Atoms every potential deriving rule of which is already dead cannot
    /// appear in any stable completion: falsify them, and fail on a true one.
    fn propagate_support(&mut self) -> bool {
        self.supported.iter_mut().for_each(|s| *s = false);
        for r in self.p.rules() {
            match r {
                Rule::Basic { head, pos, neg } => {
                    if self.body_possible(pos.iter().map(|&a| (a, 1)), neg.iter().map(|&a| (a, 1)), pos.len() as u128 + neg.len() as u128) {
                        self.supported[head.index()] = true;
                    }
                }
                Rule::Constraint { head, bound, pos, neg } => {
                    if self.body_possible(pos.iter().map(|&a| (a, 1)), neg.iter().map(|&a| (a, 1)), *bound as u128) {
                        self.supported[head.index()] = true;
                    }
                }
                Rule::Weight { head, bound, pos, neg } => {
                    if self.body_possible(pos.iter().copied(), neg.iter().copied(), *bound as u128) {
                        self.supported[head.index()] = true;
                    }
                }
                Rule::Choice { heads, pos, neg } => {
                    if self.body_possible(pos.iter().map(|&a| (a, 1)), neg.iter().map(|&a| (a, 1)), pos.len() as u128 + neg.len() as u128) {
                        for &h in heads {
                            self.supported[h.index()] = true;
                        }
                    }
                }
                Rule::Compute { .. } => {}
            }
        }
        for i in 0..self.hb_atoms.len() {
            let a = self.hb_atoms[i];
            if !self.supported[a.index()] && !self.assign(a, Val::False) {
                return false;
            }
        }
        true
    }

    /// Whether some completion satisfies the body to the given bound.
    fn body_possible(
        &self,
        pos: impl Iterator<Item = (Atom, u64)>,
        neg: impl Iterator<Item = (Atom, u64)>,
        bound: u128,
    ) -> bool {
        let mut best: u128 = 0;
        for (a, w) in pos {
            if self.value[a.index()] != Val::False {
                best += w as u128;
            }
        }
        for (a, w) in neg {
            if self.value[a.index()] != Val::True {
                best += w as u128;
            }
        }
        best >= bound
    }
}
