//! Seeded generators and small helpers shared by the integration suites.
//!
//! Everything here is deterministic in the seed, so a failing case can be
//! replayed by number.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use aspeq::{
    build_program, build_wc_program, parse_program, Atom, Interpretation, Program, Rule,
    SymbolTable, WCProgram, WCRule, WeightConstraint,
};

pub const NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

pub fn golden(name: &str) -> String {
    std::fs::read_to_string(golden_path(name)).expect("golden file exists")
}

pub fn parse(text: &str) -> Program {
    let parsed = parse_program(text, "test.lp").expect("test program parses");
    assert!(parsed.warnings.is_empty(), "unexpected warnings: {:?}", parsed.warnings);
    parsed.program
}

fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pick(rng: &mut ChaCha8Rng, pool: &[Atom], max: usize) -> Vec<Atom> {
    let cap = max.min(pool.len());
    let k = rng.gen_range(0..=cap);
    let mut all = pool.to_vec();
    all.shuffle(rng);
    all.truncate(k);
    all
}

fn pick_weighted(rng: &mut ChaCha8Rng, pool: &[Atom], max: usize) -> Vec<(Atom, u64)> {
    let atoms = pick(rng, pool, max);
    atoms.into_iter().map(|a| (a, rng.gen_range(0..=3))).collect()
}

fn random_rule(
    rng: &mut ChaCha8Rng,
    pool: &[Atom],
    choices: bool,
    negation: bool,
    computes: bool,
) -> Rule {
    let head = pool[rng.gen_range(0..pool.len())];
    let pos = pick(rng, pool, 3);
    let neg = if negation { pick(rng, pool, 3) } else { Vec::new() };
    match rng.gen_range(0..20u32) {
        0..=8 => Rule::basic(head, pos, neg),
        9..=12 => {
            let bound = rng.gen_range(0..=(pos.len() + neg.len() + 1) as u64);
            Rule::constraint(head, bound, pos, neg)
        }
        13..=16 if choices => {
            let mut heads = pick(rng, pool, 3);
            if heads.is_empty() {
                heads.push(head);
            }
            Rule::choice(heads, pos, neg)
        }
        13..=16 => Rule::basic(head, pos, neg),
        17..=18 => {
            let wpos = pick_weighted(rng, pool, 3);
            let wneg = if negation { pick_weighted(rng, pool, 3) } else { Vec::new() };
            let total: u64 = wpos.iter().chain(wneg.iter()).map(|&(_, w)| w).sum();
            let bound = rng.gen_range(0..=total + 1);
            Rule::weight(head, bound, wpos, wneg)
        }
        _ if computes => Rule::compute(pos, neg),
        _ => Rule::basic(head, pos, neg),
    }
}

fn build_random(
    seed: u64,
    max_atoms: usize,
    choices: bool,
    negation: bool,
    computes: bool,
    hide: bool,
) -> Program {
    let mut rng = seeded(seed);
    let n = rng.gen_range(1..=max_atoms);
    let mut table = SymbolTable::new();
    let pool: Vec<Atom> = NAMES[..n].iter().map(|name| table.intern(name)).collect();
    let count = rng.gen_range(0..=7);
    let rules: Vec<Rule> =
        (0..count).map(|_| random_rule(&mut rng, &pool, choices, negation, computes)).collect();
    let hidden: Vec<Atom> =
        if hide { pool.iter().copied().filter(|_| rng.gen_bool(0.25)).collect() } else { Vec::new() };
    let hidden_decl = if hidden.is_empty() { None } else { Some(hidden.as_slice()) };
    build_program(table, rules, None, hidden_decl, &[]).expect("generated programs are well formed")
}

/// Full feature mix over up to eight atoms, with a random subset hidden.
pub fn random_program(seed: u64) -> Program {
    build_random(seed, 8, true, true, true, true)
}

/// Like [`random_program`] but without compute statements and small enough
/// to enumerate every interpretation of the base.
pub fn random_compute_free_program(seed: u64) -> Program {
    build_random(seed, 6, true, true, false, true)
}

/// Negation-free, choice-free, compute-free: exactly one stable model.
pub fn random_positive_program(seed: u64) -> Program {
    build_random(seed, 8, false, false, false, false)
}

/// Two programs over one atom pool with the same declared visible base,
/// the raw material for equivalence comparisons.
pub fn random_visible_pair(seed: u64) -> (Program, Program) {
    let mut rng = seeded(seed);
    let n = rng.gen_range(1..=6usize);
    let visible = rng.gen_range(1..=n);
    let side = |rng: &mut ChaCha8Rng| {
        let mut table = SymbolTable::new();
        let pool: Vec<Atom> = NAMES[..n].iter().map(|name| table.intern(name)).collect();
        let count = rng.gen_range(0..=6);
        let rules: Vec<Rule> =
            (0..count).map(|_| random_rule(rng, &pool, true, true, true)).collect();
        let hidden = pool[visible..].to_vec();
        let hidden_decl = if hidden.is_empty() { None } else { Some(hidden) };
        build_program(table, rules, None, hidden_decl.as_deref(), &pool)
            .expect("generated programs are well formed")
    };
    let p = side(&mut rng);
    let q = side(&mut rng);
    (p, q)
}

fn random_wc(rng: &mut ChaCha8Rng, pool: &[Atom]) -> WeightConstraint {
    let pos = pick_weighted(rng, pool, 3);
    let neg = pick_weighted(rng, pool, 3);
    let total: u64 = pos.iter().chain(neg.iter()).map(|&(_, w)| w).sum();
    let lower = rng.gen_range(0..=total + 1);
    let upper = if rng.gen_bool(0.5) { Some(rng.gen_range(lower..=total + 1)) } else { None };
    WeightConstraint::new(lower, upper, pos, neg).expect("bounds are ordered")
}

/// Random weight-constraint program over up to six atoms.
pub fn random_wcp(seed: u64, fully_visible: bool) -> WCProgram {
    let mut rng = seeded(seed);
    let n = rng.gen_range(1..=6usize);
    let mut table = SymbolTable::new();
    let pool: Vec<Atom> = NAMES[..n].iter().map(|name| table.intern(name)).collect();
    let count = rng.gen_range(0..=4);
    let rules: Vec<WCRule> = (0..count)
        .map(|_| WCRule {
            head: random_wc(&mut rng, &pool),
            body: (0..rng.gen_range(0..=3)).map(|_| random_wc(&mut rng, &pool)).collect(),
        })
        .collect();
    let hidden: Vec<Atom> = if fully_visible {
        Vec::new()
    } else {
        pool.iter().copied().filter(|_| rng.gen_bool(0.25)).collect()
    };
    let hidden_decl = if hidden.is_empty() { None } else { Some(hidden.as_slice()) };
    build_wc_program(table, rules, None, hidden_decl, &pool)
        .expect("generated programs are well formed")
}

/// Random subset of the base, half density.
pub fn random_subset(seed: u64, p: &Program) -> Interpretation {
    let mut rng = seeded(seed);
    p.hb().iter().filter(|_| rng.gen_bool(0.5)).collect()
}

/// Atom names of an interpretation within its program.
pub fn names(p: &Program, i: &Interpretation) -> BTreeSet<String> {
    i.iter().map(|a| p.name(a).to_string()).collect()
}

/// Order-insensitive view of a model list, as sorted atom-name sets.
pub fn model_set(p: &Program, models: &[Interpretation]) -> BTreeSet<Vec<String>> {
    models
        .iter()
        .map(|m| {
            let mut v: Vec<String> = m.iter().map(|a| p.name(a).to_string()).collect();
            v.sort();
            v
        })
        .collect()
}

/// True when no compute statement mentions a hidden atom, the syntactic
/// translatability requirement.
pub fn hidden_compute_free(p: &Program) -> bool {
    p.rules().iter().all(|r| match r {
        Rule::Compute { pos, neg } => {
            pos.iter().chain(neg.iter()).all(|&a| !p.hbh().contains(a))
        }
        _ => true,
    })
}
