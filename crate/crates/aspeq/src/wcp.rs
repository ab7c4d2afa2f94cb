//! Weight constraint programs.
//!
//! Rules here are built from weight constraints `l <= {A=W_A, not B=W_B}
//! <= u` on both sides of the arrow, generalizing the smodels rule forms.
//! The module provides satisfaction, the reduct, stable models, and the
//! embedding of smodels programs that makes the two semantics comparable.

use std::collections::BTreeSet;

use crate::ast::{Atom, Program, Rule, SymbolTable, WeightedLits};
use crate::error::{Error, Result};
use crate::interp::Interpretation;
use crate::semantics::wsum_wide;

/// `lower <= { pos=w.., not neg=w.. } <= upper`, with the upper bound
/// optional. Bounds and weights are naturals; a lower bound above a present
/// upper bound is rejected at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightConstraint {
    lower: u64,
    upper: Option<u64>,
    pos: WeightedLits,
    neg: WeightedLits,
}

impl WeightConstraint {
    pub fn new(
        lower: u64,
        upper: Option<u64>,
        pos: WeightedLits,
        neg: WeightedLits,
    ) -> Result<WeightConstraint> {
        if let Some(u) = upper {
            if lower > u {
                return Err(Error::BoundOrder { lower, upper: u });
            }
        }
        Ok(WeightConstraint { lower, upper, pos, neg })
    }

    pub fn lower(&self) -> u64 {
        self.lower
    }

    pub fn upper(&self) -> Option<u64> {
        self.upper
    }

    pub fn pos(&self) -> &WeightedLits {
        &self.pos
    }

    pub fn neg(&self) -> &WeightedLits {
        &self.neg
    }

    /// Atoms of the positive literals, deduplicated in first-occurrence
    /// order. For a head constraint this is the set of derivable atoms.
    pub fn pos_atoms(&self) -> Vec<Atom> {
        let mut seen = Interpretation::new();
        let mut out = Vec::new();
        for &(a, _) in &self.pos {
            if !seen.contains(a) {
                seen.insert(a);
                out.push(a);
            }
        }
        out
    }

    pub fn for_each_atom(&self, mut f: impl FnMut(Atom)) {
        self.pos.iter().chain(self.neg.iter()).for_each(|&(a, _)| f(a));
    }
}

/// `head <- body[0], ..., body[r-1]`, every part a weight constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WCRule {
    pub head: WeightConstraint,
    pub body: Vec<WeightConstraint>,
}

/// A weight constraint program with the same symbol-table and visibility
/// conventions as [`Program`].
#[derive(Clone, Debug)]
pub struct WCProgram {
    symbols: SymbolTable,
    rules: Vec<WCRule>,
    hbv: Interpretation,
    hbh: Interpretation,
    hb: Interpretation,
}

impl WCProgram {
    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn rules(&self) -> &[WCRule] {
        &self.rules
    }

    pub fn hbv(&self) -> &Interpretation {
        &self.hbv
    }

    pub fn hbh(&self) -> &Interpretation {
        &self.hbh
    }

    pub fn hb(&self) -> &Interpretation {
        &self.hb
    }

    pub fn name(&self, a: Atom) -> &str {
        self.symbols.name(a)
    }

    pub fn atom(&self, name: &str) -> Option<Atom> {
        self.symbols.lookup(name)
    }

    pub fn visible_names(&self) -> BTreeSet<&str> {
        self.hbv.iter().map(|a| self.symbols.name(a)).collect()
    }
}

/// Mirrors `build_program`: the base is every atom occurring in rules plus
/// `extra_atoms` plus declared atoms, partitioned by the declarations.
pub fn build_wc_program(
    symbols: SymbolTable,
    rules: Vec<WCRule>,
    visible_decl: Option<&[Atom]>,
    hidden_decl: Option<&[Atom]>,
    extra_atoms: &[Atom],
) -> Result<WCProgram> {
    let mut occurring = Interpretation::new();
    let mut note = |a: Atom| {
        if a.index() >= symbols.len() {
            return Err(Error::UnknownAtom(a.index()));
        }
        occurring.insert(a);
        Ok(())
    };
    for r in &rules {
        let mut bad = None;
        let mut see = |a: Atom| {
            if let Err(e) = note(a) {
                bad.get_or_insert(e);
            }
        };
        r.head.for_each_atom(&mut see);
        for c in &r.body {
            c.for_each_atom(&mut see);
        }
        if let Some(e) = bad {
            return Err(e);
        }
    }
    let mut hb = occurring;
    for &a in extra_atoms {
        if a.index() >= symbols.len() {
            return Err(Error::UnknownAtom(a.index()));
        }
        hb.insert(a);
    }
    for decl in [visible_decl, hidden_decl].into_iter().flatten() {
        for &a in decl {
            if a.index() >= symbols.len() {
                return Err(Error::UnknownAtom(a.index()));
            }
            hb.insert(a);
        }
    }
    let (hbv, hbh) = match (visible_decl, hidden_decl) {
        (Some(vis), Some(hid)) => {
            let v: Interpretation = vis.iter().copied().collect();
            let h: Interpretation = hid.iter().copied().collect();
            if let Some(a) = v.intersection(&h).iter().next() {
                return Err(Error::OverlappingDeclarations(symbols.name(a).to_string()));
            }
            (hb.difference(&h), h)
        }
        (None, Some(hid)) => {
            let h: Interpretation = hid.iter().copied().collect();
            (hb.difference(&h), h)
        }
        (Some(vis), None) => {
            let v: Interpretation = vis.iter().copied().collect();
            (v.clone(), hb.difference(&v))
        }
        (None, None) => (hb.clone(), Interpretation::new()),
    };
    Ok(WCProgram { symbols, rules, hbv, hbh, hb })
}

/// `lower <= wsum(I) <= upper`, the upper check skipped when absent.
pub fn wc_satisfies(i: &Interpretation, c: &WeightConstraint) -> bool {
    let s = wsum_wide(i, &c.pos, &c.neg);
    u128::from(c.lower) <= s && c.upper.map_or(true, |u| s <= u128::from(u))
}

/// A rule holds when a satisfied body implies a satisfied head.
pub fn wc_satisfies_rule(i: &Interpretation, r: &WCRule) -> bool {
    !r.body.iter().all(|c| wc_satisfies(i, c)) || wc_satisfies(i, &r.head)
}

pub fn wc_satisfies_program(p: &WCProgram, i: &Interpretation) -> bool {
    p.rules.iter().all(|r| wc_satisfies_rule(i, r))
}

/// A body constraint of the reduct: positive weighted literals under a
/// lower bound only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornConstraint {
    pub lower: u64,
    pub pos: WeightedLits,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornRule {
    pub head: Atom,
    pub body: Vec<HornConstraint>,
}

/// The reduct of a weight constraint program: a positive program of Horn
/// constraint rules.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WcReduct {
    pub rules: Vec<HornRule>,
}

/// Drops the negative literals and lowers the bound by their satisfied
/// weight; the upper bound disappears.
pub fn wc_reduce_constraint(i: &Interpretation, c: &WeightConstraint) -> HornConstraint {
    let negsum = wsum_wide(i, &[], &c.neg);
    let lower = u64::try_from(u128::from(c.lower).saturating_sub(negsum)).unwrap_or(u64::MAX);
    HornConstraint { lower, pos: c.pos.clone() }
}

/// One Horn rule per rule of `p` and derivable head atom in `i`, provided
/// every body constraint's upper bound holds under `i`; lower bounds are
/// deferred to the reduced body constraints.
pub fn wc_reduce_program(p: &WCProgram, i: &Interpretation) -> WcReduct {
    let mut rules = Vec::new();
    for r in &p.rules {
        let uppers_ok = r.body.iter().all(|c| {
            c.upper.map_or(true, |u| wsum_wide(i, &c.pos, &c.neg) <= u128::from(u))
        });
        if !uppers_ok {
            continue;
        }
        for h in r.head.pos_atoms() {
            if i.contains(h) {
                rules.push(HornRule {
                    head: h,
                    body: r.body.iter().map(|c| wc_reduce_constraint(i, c)).collect(),
                });
            }
        }
    }
    WcReduct { rules }
}

/// Least model of a positive program by fixpoint iteration.
pub fn wc_least_model(r: &WcReduct) -> Interpretation {
    let mut m = Interpretation::new();
    loop {
        let mut changed = false;
        for rule in &r.rules {
            if m.contains(rule.head) {
                continue;
            }
            if rule.body.iter().all(|c| wsum_wide(&m, &c.pos, &[]) >= u128::from(c.lower)) {
                m.insert(rule.head);
                changed = true;
            }
        }
        if !changed {
            return m;
        }
    }
}

/// `m` is wc-stable when it satisfies the program and equals the least
/// model of the reduct; satisfaction does not follow from the fixpoint here,
/// so both conjuncts are real.
pub fn wc_is_stable(p: &WCProgram, m: &Interpretation) -> bool {
    debug_assert!(m.is_subset(p.hb()));
    wc_satisfies_program(p, m) && wc_least_model(&wc_reduce_program(p, m)) == *m
}

/// Every subset of the base, tested for wc-stability, in ascending bitmask
/// order over atoms sorted by id.
pub fn wc_enumerate_oracle(p: &WCProgram) -> Result<Vec<Interpretation>> {
    wc_enumerate_oracle_capped(p, crate::enumerate::DEFAULT_ORACLE_CAP)
}

pub fn wc_enumerate_oracle_capped(p: &WCProgram, cap: usize) -> Result<Vec<Interpretation>> {
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
        if wc_is_stable(p, &m) {
            models.push(m);
        }
    }
    Ok(models)
}

/// Rewrites an smodels program as a weight constraint program: choice rules
/// become `0 <= {H=1} <- (n+m) <= {A=1, not B=1}` and the other rule forms,
/// lowered to weight rules first, become `1 <= {h=1} <- w <= {A=W_A, not
/// B=W_B}`. Stable models coincide for compute-free programs, so computes
/// are rejected.
pub fn embed_smodels(p: &Program) -> Result<WCProgram> {
    let unit = |atoms: &[Atom]| -> WeightedLits { atoms.iter().map(|&a| (a, 1)).collect() };
    let mut rules = Vec::new();
    for r in p.rules() {
        let rule = match r {
            Rule::Compute { .. } => return Err(Error::ComputePresent),
            Rule::Choice { heads, pos, neg } => WCRule {
                head: WeightConstraint::new(0, None, unit(heads), vec![])?,
                body: vec![WeightConstraint::new(
                    (pos.len() + neg.len()) as u64,
                    None,
                    unit(pos),
                    unit(neg),
                )?],
            },
            Rule::Basic { head, pos, neg } => WCRule {
                head: WeightConstraint::new(1, None, vec![(*head, 1)], vec![])?,
                body: vec![WeightConstraint::new(
                    (pos.len() + neg.len()) as u64,
                    None,
                    unit(pos),
                    unit(neg),
                )?],
            },
            Rule::Constraint { head, bound, pos, neg } => WCRule {
                head: WeightConstraint::new(1, None, vec![(*head, 1)], vec![])?,
                body: vec![WeightConstraint::new(*bound, None, unit(pos), unit(neg))?],
            },
            Rule::Weight { head, bound, pos, neg } => WCRule {
                head: WeightConstraint::new(1, None, vec![(*head, 1)], vec![])?,
                body: vec![WeightConstraint::new(*bound, None, pos.clone(), neg.clone())?],
            },
        };
        rules.push(rule);
    }
    let visible: Vec<Atom> = p.hbv().iter().collect();
    let hidden: Vec<Atom> = p.hbh().iter().collect();
    let extras: Vec<Atom> = p.hb().iter().collect();
    build_wc_program(p.symbols().clone(), rules, Some(&visible), Some(&hidden), &extras)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::build_program;
    use crate::semantics::is_stable;

    fn atoms(t: &mut SymbolTable, names: &[&str]) -> Vec<Atom> {
        names.iter().map(|n| t.intern(n)).collect()
    }

    #[test]
    fn constraint_construction_validates_bounds() {
        assert!(WeightConstraint::new(2, Some(1), vec![], vec![]).is_err());
        assert!(WeightConstraint::new(2, Some(2), vec![], vec![]).is_ok());
        assert!(WeightConstraint::new(2, None, vec![], vec![]).is_ok());
    }

    #[test]
    fn satisfaction_checks_both_bounds() {
        let mut t = SymbolTable::new();
        let [a, b] = atoms(&mut t, &["a", "b"])[..] else { unreachable!() };
        let c = WeightConstraint::new(1, Some(1), vec![(a, 1)], vec![(b, 1)]).unwrap();
        assert!(wc_satisfies(&Interpretation::from_atoms([a, b]), &c));
        assert!(wc_satisfies(&Interpretation::new(), &c));
        assert!(!wc_satisfies(&Interpretation::from_atoms([a]), &c));

        let two = WeightConstraint::new(2, None, vec![(a, 1), (b, 1)], vec![]).unwrap();
        assert!(!wc_satisfies(&Interpretation::from_atoms([a]), &two));

        let empty = WeightConstraint::new(0, Some(0), vec![], vec![]).unwrap();
        assert!(wc_satisfies(&Interpretation::from_atoms([a, b]), &empty));
    }

    #[test]
    fn constraint_reduct_lowers_and_strips() {
        let mut t = SymbolTable::new();
        let [a, b] = atoms(&mut t, &["a", "b"])[..] else { unreachable!() };
        let c = WeightConstraint::new(2, None, vec![(a, 1)], vec![(b, 1)]).unwrap();
        assert_eq!(
            wc_reduce_constraint(&Interpretation::new(), &c),
            HornConstraint { lower: 1, pos: vec![(a, 1)] }
        );
        let no_neg = WeightConstraint::new(2, Some(3), vec![(a, 1)], vec![]).unwrap();
        assert_eq!(
            wc_reduce_constraint(&Interpretation::new(), &no_neg),
            HornConstraint { lower: 2, pos: vec![(a, 1)] }
        );
        let saturating = WeightConstraint::new(1, None, vec![], vec![(b, 3)]).unwrap();
        assert_eq!(
            wc_reduce_constraint(&Interpretation::new(), &saturating),
            HornConstraint { lower: 0, pos: vec![] }
        );
    }

    #[test]
    fn program_reduct_keeps_heads_in_the_interpretation() {
        let mut t = SymbolTable::new();
        let [a, b, c] = atoms(&mut t, &["a", "b", "c"])[..] else { unreachable!() };
        let rule = WCRule {
            head: WeightConstraint::new(0, Some(2), vec![(a, 1), (b, 1)], vec![]).unwrap(),
            body: vec![WeightConstraint::new(0, Some(1), vec![(c, 1)], vec![]).unwrap()],
        };
        let p = build_wc_program(t, vec![rule], None, None, &[]).unwrap();

        assert_eq!(wc_reduce_program(&p, &Interpretation::new()), WcReduct::default());

        let i = Interpretation::from_atoms([a]);
        let r = wc_reduce_program(&p, &i);
        assert_eq!(
            r.rules,
            vec![HornRule {
                head: a,
                body: vec![HornConstraint { lower: 0, pos: vec![(c, 1)] }],
            }]
        );

        let both = Interpretation::from_atoms([a, b]);
        assert_eq!(wc_reduce_program(&p, &both).rules.len(), 2);

        // violated body upper bound suppresses the rule
        let with_c = Interpretation::from_atoms([a, b, c]);
        let c2 = WeightConstraint::new(0, Some(0), vec![(c, 1)], vec![]).unwrap();
        let mut t2 = SymbolTable::new();
        let _ = atoms(&mut t2, &["a", "b", "c"]);
        let p2 = build_wc_program(
            t2,
            vec![WCRule {
                head: WeightConstraint::new(0, Some(2), vec![(a, 1), (b, 1)], vec![]).unwrap(),
                body: vec![c2],
            }],
            None,
            None,
            &[],
        )
        .unwrap();
        assert_eq!(wc_reduce_program(&p2, &with_c), WcReduct::default());
    }

    #[test]
    fn least_model_respects_weighted_bodies() {
        let mut t = SymbolTable::new();
        let [a, b, c] = atoms(&mut t, &["a", "b", "c"])[..] else { unreachable!() };
        let _ = t;
        let r = WcReduct {
            rules: vec![
                HornRule { head: a, body: vec![] },
                HornRule {
                    head: b,
                    body: vec![HornConstraint { lower: 2, pos: vec![(a, 1), (c, 1)] }],
                },
                HornRule { head: c, body: vec![HornConstraint { lower: 1, pos: vec![(a, 2)] }] },
            ],
        };
        assert_eq!(wc_least_model(&r), Interpretation::from_atoms([a, b, c]));
    }

    #[test]
    fn self_blocking_rule_has_no_wc_stable_models() {
        let mut t = SymbolTable::new();
        let a = t.intern("a");
        let p = build_program(t, vec![Rule::basic(a, vec![], vec![a])], None, None, &[]).unwrap();
        let w = embed_smodels(&p).unwrap();
        assert_eq!(wc_enumerate_oracle(&w).unwrap(), vec![]);
    }

    #[test]
    fn empty_program_has_the_empty_wc_model() {
        let w = build_wc_program(SymbolTable::new(), vec![], None, None, &[]).unwrap();
        assert_eq!(wc_enumerate_oracle(&w).unwrap(), vec![Interpretation::new()]);
    }

    #[test]
    fn embedding_produces_the_expected_shapes() {
        let mut t = SymbolTable::new();
        let [h, a, b] = atoms(&mut t, &["h", "a", "b"])[..] else { unreachable!() };
        let p = build_program(
            t,
            vec![
                Rule::choice(vec![a], vec![], vec![]),
                Rule::weight(h, 2, vec![(a, 1), (b, 2)], vec![]),
                Rule::basic(h, vec![a], vec![b]),
            ],
            None,
            None,
            &[],
        )
        .unwrap();
        let w = embed_smodels(&p).unwrap();
        assert_eq!(
            w.rules()[0],
            WCRule {
                head: WeightConstraint::new(0, None, vec![(a, 1)], vec![]).unwrap(),
                body: vec![WeightConstraint::new(0, None, vec![], vec![]).unwrap()],
            }
        );
        assert_eq!(
            w.rules()[1],
            WCRule {
                head: WeightConstraint::new(1, None, vec![(h, 1)], vec![]).unwrap(),
                body: vec![WeightConstraint::new(2, None, vec![(a, 1), (b, 2)], vec![]).unwrap()],
            }
        );
        assert_eq!(
            w.rules()[2],
            WCRule {
                head: WeightConstraint::new(1, None, vec![(h, 1)], vec![]).unwrap(),
                body: vec![
                    WeightConstraint::new(2, None, vec![(a, 1)], vec![(b, 1)]).unwrap()
                ],
            }
        );
    }

    #[test]
    fn embedding_preserves_stable_models_on_a_mixed_program() {
        let mut t = SymbolTable::new();
        let [a, b, c] = atoms(&mut t, &["a", "b", "c"])[..] else { unreachable!() };
        let p = build_program(
            t,
            vec![
                Rule::choice(vec![a, b], vec![], vec![]),
                Rule::constraint(c, 1, vec![a], vec![b]),
                Rule::weight(b, 2, vec![(a, 1), (c, 1)], vec![]),
            ],
            None,
            None,
            &[],
        )
        .unwrap();
        let w = embed_smodels(&p).unwrap();
        let atoms: Vec<Atom> = p.hb().iter().collect();
        for mask in 0u32..(1 << atoms.len()) {
            let m: Interpretation = atoms
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask & (1 << i) != 0)
                .map(|(_, &a)| a)
                .collect();
            assert_eq!(is_stable(&p, &m), wc_is_stable(&w, &m), "mask {mask}");
        }
    }

    #[test]
    fn computes_are_rejected_by_the_embedding() {
        let mut t = SymbolTable::new();
        let a = t.intern("a");
        let p = build_program(t, vec![Rule::compute(vec![a], vec![])], None, None, &[]).unwrap();
        assert!(matches!(embed_smodels(&p), Err(Error::ComputePresent)));
    }

    #[test]
    fn wc_satisfaction_is_required_on_top_of_the_fixpoint() {
        // {} <- with an unsatisfiable head lower bound: the reduct is empty
        // for M = {}, so the fixpoint holds, but satisfaction fails
        let mut t = SymbolTable::new();
        let a = t.intern("a");
        let rule = WCRule {
            head: WeightConstraint::new(1, None, vec![(a, 1)], vec![]).unwrap(),
            body: vec![],
        };
        let p = build_wc_program(t, vec![rule], None, None, &[]).unwrap();
        let empty = Interpretation::new();
        assert_eq!(wc_least_model(&wc_reduce_program(&p, &empty)), empty);
        assert!(!wc_satisfies_program(&p, &empty));
        assert!(!wc_is_stable(&p, &empty));
        assert_eq!(wc_enumerate_oracle(&p).unwrap(), vec![Interpretation::from_atoms([a])]);
    }
}
