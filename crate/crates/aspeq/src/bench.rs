//! Deterministic generators for benchmark program families.
//!
//! Three families: n-queens in three encodings that are visibly equivalent
//! by construction, random 3-SAT instances whose hidden machinery probes
//! the enough-visible-atoms property, and the even-subsets pair where one
//! side is exponentially larger than the other. `shuffle` and `drop_rule`
//! derive equivalent and (usually) non-equivalent variants of any program.
//! All randomness comes from a caller-provided seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ast::{build_program, Atom, Program, Rule, SymbolTable};
use crate::error::{Error, Result};

/// The three queens encodings: `X1` places queens column-wise through a
/// negative loop over hidden `negq` atoms, `X2` does the same with a choice
/// rule plus cardinality guards, and `Y` is the row-wise mirror of `X1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QueensVariant {
    X1,
    X2,
    Y,
}

/// The two even-subsets encodings: `P` names every odd-cardinality subset
/// in its own rule, `Q` threads a parity chain through hidden `odd<i>`
/// atoms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvenSubsetsVariant {
    P,
    Q,
}

/// Attack constraints shared by the column-wise encodings: no two queens
/// on one row, none on a diagonal. Violations derive the self-blocked
/// `bad`.
fn row_and_diagonal_attacks(rules: &mut Vec<Rule>, n: u64, d: &[Atom], q: &[Vec<Atom>], bad: Atom) {
    let da = |i: u64| d[(i - 1) as usize];
    let qa = |x: u64, y: u64| q[(x - 1) as usize][(y - 1) as usize];
    for y in 1..=n {
        for x in 1..=n {
            for x1 in x + 1..=n {
                rules.push(Rule::basic(
                    bad,
                    vec![da(x), da(y), da(x1), qa(x, y), qa(x1, y)],
                    vec![bad],
                ));
            }
        }
    }
    diagonal_attacks(rules, n, d, q, bad);
}

/// Attack constraints for the row-wise encoding: no two queens in one
/// column, none on a diagonal.
fn column_and_diagonal_attacks(
    rules: &mut Vec<Rule>,
    n: u64,
    d: &[Atom],
    q: &[Vec<Atom>],
    bad: Atom,
) {
    let da = |i: u64| d[(i - 1) as usize];
    let qa = |x: u64, y: u64| q[(x - 1) as usize][(y - 1) as usize];
    for x in 1..=n {
        for y in 1..=n {
            for y1 in y + 1..=n {
                rules.push(Rule::basic(
                    bad,
                    vec![da(x), da(y), da(y1), qa(x, y), qa(x, y1)],
                    vec![bad],
                ));
            }
        }
    }
    diagonal_attacks(rules, n, d, q, bad);
}

fn diagonal_attacks(rules: &mut Vec<Rule>, n: u64, d: &[Atom], q: &[Vec<Atom>], bad: Atom) {
    let da = |i: u64| d[(i - 1) as usize];
    let qa = |x: u64, y: u64| q[(x - 1) as usize][(y - 1) as usize];
    for x in 1..=n {
        for x1 in x + 1..=n {
            let dx = x1 - x;
            for y in 1..=n {
                for y1 in 1..=n {
                    if y1 != y && y.abs_diff(y1) == dx {
                        rules.push(Rule::basic(
                            bad,
                            vec![da(x), da(y), da(x1), da(y1), qa(x, y), qa(x1, y1)],
                            vec![bad],
                        ));
                    }
                }
            }
        }
    }
}

/// Generates an n-queens program over atoms `d(i)`, `q(x,y)`, and `bad`,
/// plus hidden `negq(x,y)` atoms in the `X1` and `Y` variants. All three
/// variants share the visible base, so any pair is a candidate for
/// equivalence checking.
pub fn gen_queens(variant: QueensVariant, n: u64) -> Result<Program> {
    if n == 0 {
        return Err(Error::EmptyInstance);
    }
    let mut t = SymbolTable::new();
    let d: Vec<Atom> = (1..=n).map(|i| t.intern(&format!("d({i})"))).collect();
    let q: Vec<Vec<Atom>> = (1..=n)
        .map(|x| (1..=n).map(|y| t.intern(&format!("q({x},{y})"))).collect())
        .collect();
    let bad = t.intern("bad");
    let da = |i: u64| d[(i - 1) as usize];
    let qa = |x: u64, y: u64| q[(x - 1) as usize][(y - 1) as usize];

    let mut rules: Vec<Rule> = d.iter().map(|&a| Rule::basic(a, vec![], vec![])).collect();
    let mut hidden: Vec<Atom> = Vec::new();

    match variant {
        QueensVariant::X1 => {
            let negq: Vec<Vec<Atom>> = (1..=n)
                .map(|x| (1..=n).map(|y| t.intern(&format!("negq({x},{y})"))).collect())
                .collect();
            let nqa = |x: u64, y: u64| negq[(x - 1) as usize][(y - 1) as usize];
            for x in 1..=n {
                for y in 1..=n {
                    for y2 in 1..=n {
                        if y2 != y {
                            rules.push(Rule::basic(
                                nqa(x, y2),
                                vec![qa(x, y), da(x), da(y), da(y2)],
                                vec![],
                            ));
                        }
                    }
                }
            }
            for x in 1..=n {
                for y in 1..=n {
                    let mut neg = vec![nqa(x, y)];
                    neg.extend((1..=n).filter(|&y2| y2 != y).map(|y2| qa(x, y2)));
                    rules.push(Rule::basic(qa(x, y), vec![da(x), da(y)], neg));
                }
            }
            row_and_diagonal_attacks(&mut rules, n, &d, &q, bad);
            hidden = negq.into_iter().flatten().collect();
        }
        QueensVariant::X2 => {
            for x in 1..=n {
                rules.push(Rule::choice(q[(x - 1) as usize].clone(), vec![da(x)], vec![]));
            }
            for x in 1..=n {
                for y in 1..=n {
                    for y2 in y + 1..=n {
                        rules.push(Rule::basic(
                            bad,
                            vec![da(x), da(y), da(y2), qa(x, y), qa(x, y2)],
                            vec![bad],
                        ));
                    }
                }
            }
            for x in 1..=n {
                let mut neg: Vec<Atom> = q[(x - 1) as usize].clone();
                neg.push(bad);
                rules.push(Rule::constraint(bad, n + 1, vec![], neg));
            }
            row_and_diagonal_attacks(&mut rules, n, &d, &q, bad);
        }
        QueensVariant::Y => {
            let negq: Vec<Vec<Atom>> = (1..=n)
                .map(|x| (1..=n).map(|y| t.intern(&format!("negq({x},{y})"))).collect())
                .collect();
            let nqa = |x: u64, y: u64| negq[(x - 1) as usize][(y - 1) as usize];
            for x in 1..=n {
                for y in 1..=n {
                    for x2 in 1..=n {
                        if x2 != x {
                            rules.push(Rule::basic(
                                nqa(x2, y),
                                vec![qa(x, y), da(x), da(y), da(x2)],
                                vec![],
                            ));
                        }
                    }
                }
            }
            for x in 1..=n {
                for y in 1..=n {
                    let mut neg = vec![nqa(x, y)];
                    neg.extend((1..=n).filter(|&x2| x2 != x).map(|x2| qa(x2, y)));
                    rules.push(Rule::basic(qa(x, y), vec![da(x), da(y)], neg));
                }
            }
            column_and_diagonal_attacks(&mut rules, n, &d, &q, bad);
            hidden = negq.into_iter().flatten().collect();
        }
    }
    build_program(t, rules, None, Some(&hidden), &[bad])
}

/// Generates a random 3-SAT instance over `v` variables as a program.
///
/// Each clause contributes `u <- f1, f2, f3` where a positive literal
/// becomes `not a` and a negative one becomes `a`, so `u` marks a falsified
/// clause. The default shape adds `s <- not u` and the self-blocked
/// `x <- s, not x` with `{u, s, x}` hidden: its hidden part has a unique
/// completion exactly under falsifying assignments, so the program has
/// enough visible atoms iff the formula is unsatisfiable. `plain` instead
/// keeps everything visible and ends with `compute { not u }`, leaving the
/// satisfying assignments as stable models.
pub fn gen_3sat(v: u64, c: u64, seed: u64, plain: bool) -> Result<Program> {
    if v < 3 {
        return Err(Error::TooFewVariables(v));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = SymbolTable::new();
    let vars: Vec<Atom> = (1..=v).map(|i| t.intern(&format!("a{i}"))).collect();
    let u = t.intern("u");
    let mut rules: Vec<Rule> = vars.iter().map(|&a| Rule::choice(vec![a], vec![], vec![])).collect();
    for _ in 0..c {
        let mut idx = [0u64; 3];
        idx[0] = rng.gen_range(0..v);
        idx[1] = loop {
            let i = rng.gen_range(0..v);
            if i != idx[0] {
                break i;
            }
        };
        idx[2] = loop {
            let i = rng.gen_range(0..v);
            if i != idx[0] && i != idx[1] {
                break i;
            }
        };
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for &i in &idx {
            if rng.gen_bool(0.5) {
                neg.push(vars[i as usize]);
            } else {
                pos.push(vars[i as usize]);
            }
        }
        rules.push(Rule::basic(u, pos, neg));
    }
    if plain {
        rules.push(Rule::compute(vec![], vec![u]));
        build_program(t, rules, None, None, &[])
    } else {
        let s = t.intern("s");
        let x = t.intern("x");
        rules.push(Rule::basic(s, vec![], vec![u]));
        rules.push(Rule::basic(x, vec![s], vec![x]));
        build_program(t, rules, None, Some(&[u, s, x]), &[])
    }
}

/// Generates one side of the even-subsets pair for odd `n`: subsets of
/// `{bit1..bitn}` with even cardinality. Variant `P` spells out all
/// 2^(n-1) odd subsets as rules deriving `odd`; variant `Q` computes the
/// running parity in 2n rules over hidden `odd<i>` atoms. Both hide the
/// parity machinery and end with `compute { not odd }`.
pub fn gen_even_subsets(which: EvenSubsetsVariant, n: u64) -> Result<Program> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::EvenSizeRequested(n));
    }
    if n > 63 {
        return Err(Error::CapExceeded {
            what: "even-subsets generator",
            size: n as usize,
            cap: 63,
        });
    }
    let mut t = SymbolTable::new();
    let bits: Vec<Atom> = (1..=n).map(|i| t.intern(&format!("bit{i}"))).collect();
    let mut rules = vec![Rule::choice(bits.clone(), vec![], vec![])];
    match which {
        EvenSubsetsVariant::P => {
            let odd = t.intern("odd");
            for mask in 1u64..(1 << n) {
                if mask.count_ones() % 2 == 1 {
                    let mut pos = Vec::new();
                    let mut neg = Vec::new();
                    for (i, &b) in bits.iter().enumerate() {
                        if mask & (1 << i) != 0 {
                            pos.push(b);
                        } else {
                            neg.push(b);
                        }
                    }
                    rules.push(Rule::basic(odd, pos, neg));
                }
            }
            rules.push(Rule::compute(vec![], vec![odd]));
        }
        EvenSubsetsVariant::Q => {
            let layers: Vec<Atom> = (1..=n).map(|i| t.intern(&format!("odd{i}"))).collect();
            let odd = t.intern("odd");
            rules.push(Rule::basic(layers[0], vec![bits[0]], vec![]));
            for i in 1..n as usize {
                rules.push(Rule::basic(layers[i], vec![bits[i]], vec![layers[i - 1]]));
                rules.push(Rule::basic(layers[i], vec![layers[i - 1]], vec![bits[i]]));
            }
            rules.push(Rule::basic(odd, vec![layers[n as usize - 1]], vec![]));
            rules.push(Rule::compute(vec![], vec![odd]));
        }
    }
    build_program(t, rules, Some(&bits), None, &[])
}

fn rebuild(p: &Program, rules: Vec<Rule>) -> Program {
    let hidden: Vec<Atom> = p.hbh().iter().collect();
    let extras: Vec<Atom> = p.hb().iter().collect();
    build_program(p.symbols().clone(), rules, None, Some(&hidden), &extras)
        .expect("rebuilding over the same base cannot fail")
}

/// Permutes rule order and within-rule literal order without touching the
/// semantics. Seed 0 is the identity by convention.
pub fn shuffle(p: &Program, seed: u64) -> Program {
    if seed == 0 {
        return p.clone();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rules: Vec<Rule> = p
        .rules()
        .iter()
        .map(|r| match r.clone() {
            Rule::Basic { head, mut pos, mut neg } => {
                pos.shuffle(&mut rng);
                neg.shuffle(&mut rng);
                Rule::Basic { head, pos, neg }
            }
            Rule::Constraint { head, bound, mut pos, mut neg } => {
                pos.shuffle(&mut rng);
                neg.shuffle(&mut rng);
                Rule::Constraint { head, bound, pos, neg }
            }
            Rule::Choice { mut heads, mut pos, mut neg } => {
                heads.shuffle(&mut rng);
                pos.shuffle(&mut rng);
                neg.shuffle(&mut rng);
                Rule::Choice { heads, pos, neg }
            }
            Rule::Weight { head, bound, mut pos, mut neg } => {
                pos.shuffle(&mut rng);
                neg.shuffle(&mut rng);
                Rule::Weight { head, bound, pos, neg }
            }
            Rule::Compute { mut pos, mut neg } => {
                pos.shuffle(&mut rng);
                neg.shuffle(&mut rng);
                Rule::Compute { pos, neg }
            }
        })
        .collect();
    rules.shuffle(&mut rng);
    rebuild(p, rules)
}

/// Removes one seed-chosen rule, keeping the base and visibility split
/// intact. The usual way to manufacture near-miss inequivalent pairs.
pub fn drop_rule(p: &Program, seed: u64) -> Result<Program> {
    if p.rules().is_empty() {
        return Err(Error::NoRulesToDrop);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let victim = rng.gen_range(0..p.rules().len());
    let rules: Vec<Rule> = p
        .rules()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != victim)
        .map(|(_, r)| r.clone())
        .collect();
    Ok(rebuild(p, rules))
}
