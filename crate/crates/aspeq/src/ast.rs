//! Ground rules, symbol tables, and programs.
//!
//! A program is a list of rules over interned atoms together with a split of
//! its Herbrand base into visible and hidden parts. Rules come in the five
//! smodels forms: basic, cardinality-constraint, choice, weight, and compute.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::interp::Interpretation;

/// Index into a program's symbol table.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Atom(u32);

impl Atom {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        Atom(u32::try_from(i).expect("atom id out of range"))
    }
}

/// Atom list in source order, deduplicated keeping the first occurrence.
pub type AtomSet = Vec<Atom>;

/// Weighted literals in source order; repeated entries each contribute.
pub type WeightedLits = Vec<(Atom, u64)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    /// `head :- pos, not neg.`
    Basic { head: Atom, pos: AtomSet, neg: AtomSet },
    /// `head :- bound { pos, not neg }.`
    Constraint { head: Atom, bound: u64, pos: AtomSet, neg: AtomSet },
    /// `{ heads } :- pos, not neg.`
    Choice { heads: AtomSet, pos: AtomSet, neg: AtomSet },
    /// `head :- bound [ pos=w, not neg=w ].`
    Weight { head: Atom, bound: u64, pos: WeightedLits, neg: WeightedLits },
    /// `compute { pos, not neg }.`
    Compute { pos: AtomSet, neg: AtomSet },
}

fn dedup(atoms: Vec<Atom>) -> AtomSet {
    let mut seen = Interpretation::new();
    let mut out = Vec::with_capacity(atoms.len());
    for a in atoms {
        if !seen.contains(a) {
            seen.insert(a);
            out.push(a);
        }
    }
    out
}

impl Rule {
    pub fn basic(head: Atom, pos: Vec<Atom>, neg: Vec<Atom>) -> Rule {
        Rule::Basic { head, pos: dedup(pos), neg: dedup(neg) }
    }

    pub fn constraint(head: Atom, bound: u64, pos: Vec<Atom>, neg: Vec<Atom>) -> Rule {
        Rule::Constraint { head, bound, pos: dedup(pos), neg: dedup(neg) }
    }

    pub fn choice(heads: Vec<Atom>, pos: Vec<Atom>, neg: Vec<Atom>) -> Rule {
        Rule::Choice { heads: dedup(heads), pos: dedup(pos), neg: dedup(neg) }
    }

    pub fn weight(head: Atom, bound: u64, pos: WeightedLits, neg: WeightedLits) -> Rule {
        Rule::Weight { head, bound, pos, neg }
    }

    pub fn compute(pos: Vec<Atom>, neg: Vec<Atom>) -> Rule {
        Rule::Compute { pos: dedup(pos), neg: dedup(neg) }
    }

    pub fn is_compute(&self) -> bool {
        matches!(self, Rule::Compute { .. })
    }

    /// Calls `f` on every atom the rule mentions, head(s) included.
    pub fn for_each_atom(&self, mut f: impl FnMut(Atom)) {
        match self {
            Rule::Basic { head, pos, neg } | Rule::Constraint { head, pos, neg, .. } => {
                f(*head);
                pos.iter().chain(neg).for_each(|&a| f(a));
            }
            Rule::Choice { heads, pos, neg } => {
                heads.iter().chain(pos).chain(neg).for_each(|&a| f(a));
            }
            Rule::Weight { head, pos, neg, .. } => {
                f(*head);
                pos.iter().chain(neg).for_each(|&(a, _)| f(a));
            }
            Rule::Compute { pos, neg } => {
                pos.iter().chain(neg).for_each(|&a| f(a));
            }
        }
    }

    fn normalized(self) -> Rule {
        match self {
            Rule::Basic { head, pos, neg } => Rule::basic(head, pos, neg),
            Rule::Constraint { head, bound, pos, neg } => Rule::constraint(head, bound, pos, neg),
            Rule::Choice { heads, pos, neg } => Rule::choice(heads, pos, neg),
            r @ Rule::Weight { .. } => r,
            Rule::Compute { pos, neg } => Rule::compute(pos, neg),
        }
    }
}

/// Interned atom names. Names are unique; ids are dense and stable.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolTable {
    names: Vec<String>,
    index: HashMap<String, Atom>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the atom for `name`, creating it on first sight.
    pub fn intern(&mut self, name: &str) -> Atom {
        if let Some(&a) = self.index.get(name) {
            return a;
        }
        let a = Atom::from_index(self.names.len());
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), a);
        a
    }

    /// Creates an atom that must not exist yet.
    pub fn fresh(&mut self, name: String) -> Result<Atom> {
        if self.index.contains_key(&name) {
            return Err(Error::ReservedNameCollision(name));
        }
        let a = Atom::from_index(self.names.len());
        self.index.insert(name.clone(), a);
        self.names.push(name);
        Ok(a)
    }

    pub fn lookup(&self, name: &str) -> Option<Atom> {
        self.index.get(name).copied()
    }

    pub fn name(&self, a: Atom) -> &str {
        &self.names[a.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = Atom> {
        (0..self.names.len()).map(Atom::from_index)
    }
}

/// A ground program: rules plus the visible/hidden split of its base.
#[derive(Clone, Debug)]
pub struct Program {
    symbols: SymbolTable,
    rules: Vec<Rule>,
    hbv: Interpretation,
    hbh: Interpretation,
    hb: Interpretation,
    occurring: Interpretation,
}

/// Assembles a program and computes its base split.
///
/// The base is every atom occurring in a rule plus `extra_atoms` plus any
/// declared atom. With no declarations everything is visible. A hidden
/// declaration fixes the hidden part and leaves the rest visible. A visible
/// declaration alone fixes the visible part (extras included) and hides the
/// rest. Declaring an atom both ways is an error, as is an empty choice head.
pub fn build_program(
    symbols: SymbolTable,
    rules: Vec<Rule>,
    visible_decl: Option<&[Atom]>,
    hidden_decl: Option<&[Atom]>,
    extra_atoms: &[Atom],
) -> Result<Program> {
    let rules: Vec<Rule> = rules.into_iter().map(Rule::normalized).collect();
    let mut occurring = Interpretation::new();
    for r in &rules {
        if let Rule::Choice { heads, .. } = r {
            if heads.is_empty() {
                return Err(Error::EmptyChoiceHeads);
            }
        }
        r.for_each_atom(|a| occurring.insert(a));
    }
    let check = |atoms: &[Atom]| -> Result<Interpretation> {
        let mut s = Interpretation::new();
        for &a in atoms {
            if a.index() >= symbols.len() {
                return Err(Error::UnknownAtom(a.index()));
            }
            s.insert(a);
        }
        Ok(s)
    };
    let extra = check(extra_atoms)?;
    let vis = visible_decl.map(check).transpose()?;
    let hid = hidden_decl.map(check).transpose()?;

    let mut hb = occurring.union(&extra);
    if let Some(v) = &vis {
        hb = hb.union(v);
    }
    if let Some(h) = &hid {
        hb = hb.union(h);
    }

    let (hbv, hbh) = match (&vis, &hid) {
        (_, Some(h)) => {
            if let Some(v) = &vis {
                if let Some(a) = v.intersection(h).iter().next() {
                    return Err(Error::OverlappingDeclarations(symbols.name(a).to_string()));
                }
            }
            (hb.difference(h), h.clone())
        }
        (Some(v), None) => {
            let hbv = v.union(&extra);
            (hbv.clone(), hb.difference(&hbv))
        }
        (None, None) => (hb.clone(), Interpretation::new()),
    };

    Ok(Program { symbols, rules, hbv, hbh, hb, occurring })
}

impl Program {
    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Visible part of the Herbrand base.
    pub fn hbv(&self) -> &Interpretation {
        &self.hbv
    }

    /// Hidden part of the Herbrand base.
    pub fn hbh(&self) -> &Interpretation {
        &self.hbh
    }

    /// The full Herbrand base (visible plus hidden).
    pub fn hb(&self) -> &Interpretation {
        &self.hb
    }

    /// Atoms in the base that occur in no rule.
    pub fn hba(&self) -> Interpretation {
        self.hb.difference(&self.occurring)
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

    /// Restriction of `i` to the visible base. `i` must stay inside the base.
    pub fn project_visible(&self, i: &Interpretation) -> Result<Interpretation> {
        if !i.is_subset(&self.hb) {
            return Err(Error::NotInHerbrandBase);
        }
        Ok(i.intersection(&self.hbv))
    }

    /// Restriction of `i` to the hidden base. `i` must stay inside the base.
    pub fn project_hidden(&self, i: &Interpretation) -> Result<Interpretation> {
        if !i.is_subset(&self.hb) {
            return Err(Error::NotInHerbrandBase);
        }
        Ok(i.intersection(&self.hbh))
    }

    /// Same program with rules appended; the base split is kept. Every atom
    /// in the new rules must already be in the base.
    pub(crate) fn with_extra_rules(&self, extra: Vec<Rule>) -> Program {
        let mut p = self.clone();
        for r in extra {
            let r = r.normalized();
            r.for_each_atom(|a| {
                debug_assert!(p.hb.contains(a));
                p.occurring.insert(a);
            });
            p.rules.push(r);
        }
        p
    }

    /// Structural equality keyed by atom names instead of ids.
    pub fn same_modulo_ids(&self, other: &Program) -> bool {
        let names = |s: &Interpretation, t: &SymbolTable| -> BTreeSet<String> {
            s.iter().map(|a| t.name(a).to_string()).collect()
        };
        if names(&self.hbv, &self.symbols) != names(&other.hbv, &other.symbols)
            || names(&self.hbh, &self.symbols) != names(&other.hbh, &other.symbols)
        {
            return false;
        }
        if self.rules.len() != other.rules.len() {
            return false;
        }
        self.rules
            .iter()
            .zip(&other.rules)
            .all(|(a, b)| rules_eq_by_name(a, &self.symbols, b, &other.symbols))
    }
}

fn rules_eq_by_name(a: &Rule, sa: &SymbolTable, b: &Rule, sb: &SymbolTable) -> bool {
    let atoms = |xs: &[Atom], s: &SymbolTable, ys: &[Atom], t: &SymbolTable| {
        xs.len() == ys.len() && xs.iter().zip(ys).all(|(&x, &y)| s.name(x) == t.name(y))
    };
    let wl = |xs: &WeightedLits, s: &SymbolTable, ys: &WeightedLits, t: &SymbolTable| {
        xs.len() == ys.len()
            && xs
                .iter()
                .zip(ys)
                .all(|(&(x, wx), &(y, wy))| wx == wy && s.name(x) == t.name(y))
    };
    match (a, b) {
        (Rule::Basic { head: h1, pos: p1, neg: n1 }, Rule::Basic { head: h2, pos: p2, neg: n2 }) => {
            sa.name(*h1) == sb.name(*h2) && atoms(p1, sa, p2, sb) && atoms(n1, sa, n2, sb)
        }
        (
            Rule::Constraint { head: h1, bound: b1, pos: p1, neg: n1 },
            Rule::Constraint { head: h2, bound: b2, pos: p2, neg: n2 },
        ) => {
            b1 == b2 && sa.name(*h1) == sb.name(*h2) && atoms(p1, sa, p2, sb) && atoms(n1, sa, n2, sb)
        }
        (Rule::Choice { heads: h1, pos: p1, neg: n1 }, Rule::Choice { heads: h2, pos: p2, neg: n2 }) => {
            atoms(h1, sa, h2, sb) && atoms(p1, sa, p2, sb) && atoms(n1, sa, n2, sb)
        }
        (
            Rule::Weight { head: h1, bound: b1, pos: p1, neg: n1 },
            Rule::Weight { head: h2, bound: b2, pos: p2, neg: n2 },
        ) => b1 == b2 && sa.name(*h1) == sb.name(*h2) && wl(p1, sa, p2, sb) && wl(n1, sa, n2, sb),
        (Rule::Compute { pos: p1, neg: n1 }, Rule::Compute { pos: p2, neg: n2 }) => {
            atoms(p1, sa, p2, sb) && atoms(n1, sa, n2, sb)
        }
        _ => false,
    }
}
