//! Compilation of weight constraint programs into smodels programs.
//!
//! Each weight constraint occurrence gets two fresh hidden atoms deriving
//! that its lower bound is met (`__sat.k`) or its upper bound is exceeded
//! (`__unsat.k`). Each rule becomes a choice over its head's derivable
//! atoms guarded by the body's sat/unsat atoms, plus rules deriving a
//! shared hidden atom `__f` whenever a satisfied body meets a violated
//! head; `compute { not __f }` forbids exactly that. Stable models of the
//! source and the compilation correspond one-to-one through [`SnsTranslation::ext`].

use crate::ast::{build_program, Atom, Program, Rule, SymbolTable};
use crate::error::{Error, Result};
use crate::interp::Interpretation;
use crate::semantics::wsum_wide;
use crate::wcp::{WCProgram, WeightConstraint};

/// The sat/unsat pair minted for one weight constraint occurrence.
#[derive(Clone, Debug)]
pub struct SnsOccurrence {
    pub sat: Atom,
    pub unsat: Atom,
    pub constraint: WeightConstraint,
}

#[derive(Clone, Debug)]
pub struct SnsTranslation {
    pub program: Program,
    /// One entry per constraint occurrence, in reading order (head
    /// constraint first within each rule).
    pub occurrences: Vec<SnsOccurrence>,
    /// The shared failure atom; absent when the source had no rules.
    pub f: Option<Atom>,
    pub warnings: Vec<String>,
}

impl SnsTranslation {
    /// Extends a source interpretation to the compilation's base: adds
    /// `sat` where the occurrence's lower bound holds and `unsat` where a
    /// present upper bound is exceeded, never `f`. Maps stable models to
    /// stable models bijectively.
    pub fn ext(&self, m: &Interpretation) -> Interpretation {
        let mut out = m.clone();
        for occ in &self.occurrences {
            let s = wsum_wide(m, occ.constraint.pos(), occ.constraint.neg());
            if s >= u128::from(occ.constraint.lower()) {
                out.insert(occ.sat);
            }
            if let Some(u) = occ.constraint.upper() {
                if s >= u128::from(u) + 1 {
                    out.insert(occ.unsat);
                }
            }
        }
        out
    }
}

/// Emits the weight rules deriving the sat/unsat pair of one constraint
/// occurrence `k`. Without an upper bound the unsat atom is still minted
/// but no rule can derive it.
pub fn tr_sns_constraint(
    c: &WeightConstraint,
    k: usize,
    table: &mut SymbolTable,
) -> Result<(Vec<Rule>, Atom, Atom)> {
    let sat = table.fresh(format!("__sat.{k}"))?;
    let unsat = table.fresh(format!("__unsat.{k}"))?;
    let mut rules = vec![Rule::weight(sat, c.lower(), c.pos().clone(), c.neg().clone())];
    if let Some(u) = c.upper() {
        let bound = u.checked_add(1).ok_or(Error::Overflow)?;
        rules.push(Rule::weight(unsat, bound, c.pos().clone(), c.neg().clone()));
    }
    Ok((rules, sat, unsat))
}

/// Compiles a weight constraint program into an smodels program over the
/// same visible base; sat/unsat/f atoms are hidden. Hidden source atoms are
/// tolerated with a warning, since downstream equivalence checking is only
/// guaranteed for fully visible sources.
pub fn tr_sns(p: &WCProgram) -> Result<SnsTranslation> {
    let mut warnings = Vec::new();
    if !p.hbh().is_empty() {
        warnings.push(format!(
            "the source program hides {} atom(s); the compilation is only known to have \
             enough visible atoms for fully visible sources",
            p.hbh().len()
        ));
    }
    let extras: Vec<Atom> = p.hb().iter().collect();
    let mut hidden: Vec<Atom> = p.hbh().iter().collect();
    if p.rules().is_empty() {
        let program = build_program(p.symbols().clone(), vec![], None, Some(&hidden), &extras)?;
        return Ok(SnsTranslation { program, occurrences: vec![], f: None, warnings });
    }

    let mut table = p.symbols().clone();
    let f = table.fresh("__f".to_string())?;
    let mut rules = Vec::new();
    let mut occurrences: Vec<SnsOccurrence> = Vec::new();
    for r in p.rules() {
        let head_at = occurrences.len();
        for c in std::iter::once(&r.head).chain(r.body.iter()) {
            let (mut pair, sat, unsat) = tr_sns_constraint(c, occurrences.len(), &mut table)?;
            rules.append(&mut pair);
            occurrences.push(SnsOccurrence { sat, unsat, constraint: c.clone() });
        }
        let head = occurrences[head_at].clone();
        let body = &occurrences[head_at + 1..];
        let body_sats: Vec<Atom> = body.iter().map(|o| o.sat).collect();
        let body_unsats: Vec<Atom> =
            body.iter().filter(|o| o.constraint.upper().is_some()).map(|o| o.unsat).collect();

        let derivable = r.head.pos_atoms();
        if !derivable.is_empty() {
            rules.push(Rule::choice(derivable, body_sats.clone(), body_unsats.clone()));
        }
        let mut guard_neg = vec![head.sat];
        guard_neg.extend(body_unsats.iter().copied());
        rules.push(Rule::basic(f, body_sats.clone(), guard_neg));
        if head.constraint.upper().is_some() {
            let mut guard_pos = vec![head.unsat];
            guard_pos.extend(body_sats.iter().copied());
            rules.push(Rule::basic(f, guard_pos, body_unsats.clone()));
        }
    }
    rules.push(Rule::compute(vec![], vec![f]));

    let mut all_extras = extras;
    for occ in &occurrences {
        hidden.push(occ.sat);
        hidden.push(occ.unsat);
        all_extras.push(occ.sat);
        all_extras.push(occ.unsat);
    }
    hidden.push(f);
    all_extras.push(f);
    let program = build_program(table, rules, None, Some(&hidden), &all_extras)?;
    Ok(SnsTranslation { program, occurrences, f: Some(f), warnings })
}
