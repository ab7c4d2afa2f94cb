//! The counter-example translation.
//!
//! `eqt(P, Q)` builds a single program whose stable models are exactly the
//! witnesses against visible equivalence of `P` and `Q` in the direction
//! from `P` to `Q`: each one encodes a stable model M of `P` together with
//! evidence that no stable model of `Q` shares M's visible part. The
//! translation embeds `P` unchanged and adds three groups of rules over
//! fresh atoms:
//!
//! * `TrHID(Q)` completes M's visible part with a hidden completion of `Q`,
//!   rewriting hidden atoms `a` to ring atoms `__h.a`;
//! * `TrLM(Q)` computes the least model of `Q`'s reduct under that
//!   completion in bullet atoms `__lm.a`;
//! * `UNSTABLE(Q)` derives `__d` when the completion and the least model
//!   disagree, `__c` when a compute statement of `Q` is violated, and
//!   requires `__e`, the disjunction of the two.

use crate::ast::{build_program, Atom, Program, Rule, SymbolTable};
use crate::error::{Error, Result};
use crate::interp::Interpretation;
use crate::semantics::{compst, is_stable};

/// Why a counter-example candidate fails to be a stable model of the target
/// program.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reason {
    /// The candidate is not the least model of the target's reduct.
    ReductMismatch,
    /// The candidate is that least model but violates a compute statement.
    ComputeViolation,
}

/// A decoded witness against visible equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterExample {
    /// Stable model of the source program, over its base.
    pub m: Interpretation,
    /// The candidate over the target program's base: it matches `m` on the
    /// visible part and fails to be stable however the hidden part is set.
    pub n: Interpretation,
    /// Least model of the target's reduct under `n`, over the target's base.
    pub l: Interpretation,
    pub reason: Reason,
}

/// Maps the target program's atoms into the combined symbol table.
#[derive(Clone, Debug)]
pub struct RenamingMap {
    visible: Vec<Option<Atom>>,
    ring: Vec<Option<Atom>>,
    bullet: Vec<Option<Atom>>,
    aux: Vec<Option<Atom>>,
    c: Atom,
    d: Atom,
    e: Atom,
    linear: bool,
}

impl RenamingMap {
    /// Extends `table` (a clone of the source program's table) with every
    /// fresh atom the translation of `q` needs. Visible atoms of `q` map to
    /// the source atoms carrying the same name.
    fn build(table: &mut SymbolTable, q: &Program, linear: bool) -> Result<Self> {
        let qn = q.symbols().len();
        let mut visible = vec![None; qn];
        let mut ring = vec![None; qn];
        let mut bullet = vec![None; qn];
        for a in q.hb().iter() {
            if q.hbv().contains(a) {
                let img = table
                    .lookup(q.name(a))
                    .expect("equal visible bases were checked before renaming");
                visible[a.index()] = Some(img);
            } else {
                ring[a.index()] = Some(table.fresh(format!("__h.{}", q.name(a)))?);
            }
        }
        for a in q.hb().iter() {
            bullet[a.index()] = Some(table.fresh(format!("__lm.{}", q.name(a)))?);
        }
        let c = table.fresh("__c".to_string())?;
        let d = table.fresh("__d".to_string())?;
        let e = table.fresh("__e".to_string())?;
        let mut aux = vec![None; q.rules().len()];
        if linear {
            let mut k = 0usize;
            for (ri, r) in q.rules().iter().enumerate() {
                if matches!(r, Rule::Choice { .. }) {
                    aux[ri] = Some(table.fresh(format!("__br.{k}"))?);
                    k += 1;
                }
            }
        }
        Ok(RenamingMap { visible, ring, bullet, aux, c, d, e, linear })
    }

    /// Ring atom standing for the hidden target atom `a`.
    pub fn ring(&self, a: Atom) -> Option<Atom> {
        self.ring.get(a.index()).copied().flatten()
    }

    /// Bullet atom standing for the target atom `a` in the least model.
    pub fn bullet(&self, a: Atom) -> Option<Atom> {
        self.bullet.get(a.index()).copied().flatten()
    }

    /// Combined atom carrying the same name as the visible target atom `a`.
    pub fn visible(&self, a: Atom) -> Option<Atom> {
        self.visible.get(a.index()).copied().flatten()
    }

    pub fn c(&self) -> Atom {
        self.c
    }

    pub fn d(&self) -> Atom {
        self.d
    }

    pub fn e(&self) -> Atom {
        self.e
    }

    /// The atom standing for the truth of target atom `a` in the candidate:
    /// its ring atom when hidden, the same-named source atom when visible.
    fn ctx(&self, a: Atom) -> Atom {
        self.ring(a).or_else(|| self.visible(a)).expect("atom is in the target base")
    }

    fn blt(&self, a: Atom) -> Atom {
        self.bullet(a).expect("atom is in the target base")
    }
}

fn hidden_compute_atom(q: &Program) -> Option<Atom> {
    for r in q.rules() {
        if let Rule::Compute { pos, neg } = r {
            if let Some(&a) = pos.iter().chain(neg.iter()).find(|&&a| q.hbh().contains(a)) {
                return Some(a);
            }
        }
    }
    None
}

/// Rewrites the hidden-head rules of `q` over ring atoms, leaving visible
/// body literals and bounds untouched. Fails when a compute statement of
/// `q` mentions a hidden atom, since computes have no hidden counterpart.
pub fn tr_hid(q: &Program, map: &RenamingMap) -> Result<Vec<Rule>> {
    if let Some(a) = hidden_compute_atom(q) {
        return Err(Error::HiddenComputeAtom(q.name(a).to_string()));
    }
    let hidden = |a: Atom| q.hbh().contains(a);
    let mut out = Vec::new();
    for r in q.rules() {
        match r {
            Rule::Basic { head, pos, neg } if hidden(*head) => {
                out.push(Rule::basic(
                    map.ctx(*head),
                    pos.iter().map(|&a| map.ctx(a)).collect(),
                    neg.iter().map(|&a| map.ctx(a)).collect(),
                ));
            }
            Rule::Constraint { head, bound, pos, neg } if hidden(*head) => {
                out.push(Rule::constraint(
                    map.ctx(*head),
                    *bound,
                    pos.iter().map(|&a| map.ctx(a)).collect(),
                    neg.iter().map(|&a| map.ctx(a)).collect(),
                ));
            }
            Rule::Weight { head, bound, pos, neg } if hidden(*head) => {
                out.push(Rule::weight(
                    map.ctx(*head),
                    *bound,
                    pos.iter().map(|&(a, w)| (map.ctx(a), w)).collect(),
                    neg.iter().map(|&(a, w)| (map.ctx(a), w)).collect(),
                ));
            }
            Rule::Choice { heads, pos, neg } => {
                let hh: Vec<Atom> =
                    heads.iter().copied().filter(|&h| hidden(h)).map(|h| map.ctx(h)).collect();
                if !hh.is_empty() {
                    out.push(Rule::choice(
                        hh,
                        pos.iter().map(|&a| map.ctx(a)).collect(),
                        neg.iter().map(|&a| map.ctx(a)).collect(),
                    ));
                }
            }
            _ => {}
        }
    }
    Ok(out)
}

/// Rewrites every rule of `q` over bullet atoms so that the bullet part of
/// any stable model of the translation equals the least model of `q`'s
/// reduct under the encoded candidate. Negative literals test the candidate
/// itself, so they stay on visible and ring atoms.
pub fn tr_lm(q: &Program, map: &RenamingMap) -> Vec<Rule> {
    let mut out = Vec::new();
    for (ri, r) in q.rules().iter().enumerate() {
        match r {
            Rule::Basic { head, pos, neg } => {
                out.push(Rule::basic(
                    map.blt(*head),
                    pos.iter().map(|&a| map.blt(a)).collect(),
                    neg.iter().map(|&a| map.ctx(a)).collect(),
                ));
            }
            Rule::Constraint { head, bound, pos, neg } => {
                out.push(Rule::constraint(
                    map.blt(*head),
                    *bound,
                    pos.iter().map(|&a| map.blt(a)).collect(),
                    neg.iter().map(|&a| map.ctx(a)).collect(),
                ));
            }
            Rule::Weight { head, bound, pos, neg } => {
                out.push(Rule::weight(
                    map.blt(*head),
                    *bound,
                    pos.iter().map(|&(a, w)| (map.blt(a), w)).collect(),
                    neg.iter().map(|&(a, w)| (map.ctx(a), w)).collect(),
                ));
            }
            Rule::Choice { heads, pos, neg } => {
                if map.linear {
                    let br = map.aux[ri].expect("aux atom exists for each choice rule");
                    for &h in heads {
                        out.push(Rule::basic(map.blt(h), vec![map.ctx(h), br], vec![]));
                    }
                    out.push(Rule::basic(
                        br,
                        pos.iter().map(|&a| map.blt(a)).collect(),
                        neg.iter().map(|&a| map.ctx(a)).collect(),
                    ));
                } else {
                    for &h in heads {
                        let mut body: Vec<Atom> = pos.iter().map(|&a| map.blt(a)).collect();
                        body.push(map.ctx(h));
                        out.push(Rule::basic(
                            map.blt(h),
                            body,
                            neg.iter().map(|&a| map.ctx(a)).collect(),
                        ));
                    }
                }
            }
            Rule::Compute { .. } => {}
        }
    }
    out
}

/// Derives `__d` from any disagreement between the candidate and the least
/// model, `__c` from any violated compute literal of `q`, and requires
/// `__e`, which collects the two.
pub fn unstable(q: &Program, map: &RenamingMap) -> Vec<Rule> {
    let mut out = Vec::new();
    for a in q.hbv().iter() {
        let at = map.ctx(a);
        let bl = map.blt(a);
        out.push(Rule::basic(map.d, vec![at], vec![bl]));
        out.push(Rule::basic(map.d, vec![bl], vec![at]));
    }
    for a in q.hbh().iter() {
        let rg = map.ctx(a);
        let bl = map.blt(a);
        out.push(Rule::basic(map.d, vec![rg], vec![bl]));
        out.push(Rule::basic(map.d, vec![bl], vec![rg]));
    }
    let cs = compst(q);
    for a in cs.pos.iter() {
        out.push(Rule::basic(map.c, vec![], vec![map.blt(a), map.d]));
    }
    for b in cs.neg.iter() {
        out.push(Rule::basic(map.c, vec![map.blt(b)], vec![map.d]));
    }
    out.push(Rule::basic(map.e, vec![map.c], vec![]));
    out.push(Rule::basic(map.e, vec![map.d], vec![]));
    out.push(Rule::compute(vec![map.e], vec![]));
    out
}

/// Builds the counter-example translation for the direction `p` to `q`.
/// With `linear_choice` the least-model image of an n-head choice rule uses
/// one auxiliary body atom and n+1 rules instead of n quadratic-size rules.
pub fn eqt(p: &Program, q: &Program, linear_choice: bool) -> Result<(Program, RenamingMap)> {
    let pv = p.visible_names();
    let qv = q.visible_names();
    if pv != qv {
        return Err(Error::VisibleBaseMismatch {
            only_left: pv.difference(&qv).map(|s| s.to_string()).collect(),
            only_right: qv.difference(&pv).map(|s| s.to_string()).collect(),
        });
    }
    if let Some(a) = hidden_compute_atom(q) {
        return Err(Error::HiddenComputeAtom(q.name(a).to_string()));
    }
    let mut table = p.symbols().clone();
    let map = RenamingMap::build(&mut table, q, linear_choice)?;
    let mut rules = p.rules().to_vec();
    rules.extend(tr_hid(q, &map)?);
    rules.extend(tr_lm(q, &map));
    rules.extend(unstable(q, &map));

    let mut extras: Vec<Atom> = p.hb().iter().collect();
    extras.extend(map.ring.iter().flatten().copied());
    extras.extend(map.bullet.iter().flatten().copied());
    extras.extend([map.c, map.d, map.e]);
    extras.extend(map.aux.iter().flatten().copied());
    let t = build_program(table, rules, None, None, &extras)?;
    Ok((t, map))
}

/// Reads a stable model `k` of the translation back into a witness: the
/// stable model `m` of `p` it embeds, the non-stable candidate `n` over `q`
/// with the same visible part, the least model `l` of `q`'s reduct under
/// `n`, and which stability condition broke.
pub fn decode(
    t: &Program,
    k: &Interpretation,
    map: &RenamingMap,
    p: &Program,
    q: &Program,
) -> Result<CounterExample> {
    if !is_stable(t, k) {
        return Err(Error::NotAStableModel);
    }
    let m = k.intersection(p.hb());
    let mut n = Interpretation::new();
    let mut l = Interpretation::new();
    for a in q.hb().iter() {
        match map.visible(a) {
            Some(img) => {
                if k.contains(img) {
                    n.insert(a);
                }
            }
            None => {
                if k.contains(map.ring(a).expect("non-visible target atoms have ring atoms")) {
                    n.insert(a);
                }
            }
        }
        if k.contains(map.blt(a)) {
            l.insert(a);
        }
    }
    let reason = if k.contains(map.d) { Reason::ReductMismatch } else { Reason::ComputeViolation };
    Ok(CounterExample { m, n, l, reason })
}
