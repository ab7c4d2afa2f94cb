//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line (visible with `cargo test --test acceptance -- --nocapture`).

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use common::*;

use aspeq::bench::{drop_rule, gen_even_subsets, gen_queens, EvenSubsetsVariant, QueensVariant};
use aspeq::{
    decode, embed_smodels, enumerate, enumerate_oracle, eqt, eval_hidden,
    has_enough_visible_exact, has_enough_visible_exact_capped, has_enough_visible_overapprox,
    is_stable, least_model, parse_program, parse_wc_program, print_program, print_wc_program,
    reduce, satisfies_program, tr_sns, verify_naive, verify_oracle, verify_oracle_capped,
    verify_translation, wc_enumerate_oracle, wc_is_stable, Atom, Direction, EvaStatus,
    Interpretation, Program, Reason, ReducedProgram, ReducedRule, Rule, Verdict, VerifyOptions,
};

fn verdict(n: u32, what: &str, r: Result<(), String>) {
    match r {
        Ok(()) => println!("criterion {n}: pass - {what}"),
        Err(e) => {
            println!("criterion {n}: FAIL - {what}: {e}");
            panic!("criterion {n} failed: {e}");
        }
    }
}

fn check(ok: bool, msg: impl Fn() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn kind(v: &Verdict) -> &'static str {
    match v {
        Verdict::Equivalent => "equivalent",
        Verdict::NotEquivalent { .. } => "not-equivalent",
        Verdict::Inapplicable { .. } => "inapplicable",
    }
}

/// Checks a reported counter-example against ground truth: its model is
/// stable in the source, nothing in the target matches it visibly, and the
/// least-model and reason fields are internally consistent.
fn validate_witness(src: &Program, tgt: &Program, v: &Verdict) -> Result<(), String> {
    let Verdict::NotEquivalent { direction, witness } = v else {
        return Ok(());
    };
    let (src, tgt) = match direction {
        Direction::LeftToRight => (src, tgt),
        Direction::RightToLeft => (tgt, src),
    };
    check(is_stable(src, &witness.m), || "witness model is not stable in its source".into())?;
    let mv = names(src, &src.project_visible(&witness.m).unwrap());
    for n in enumerate(tgt) {
        let nv = names(tgt, &tgt.project_visible(&n).unwrap());
        check(nv != mv, || "a target model matches the witness on visible atoms".into())?;
    }
    let nv = names(tgt, &tgt.project_visible(&witness.n).unwrap());
    check(nv == mv, || "witness candidate disagrees with the model on visible atoms".into())?;
    check(witness.l == least_model(&reduce(tgt, &witness.n)), || {
        "witness least model is not the least model of the reduct".into()
    })?;
    let expect = if witness.l == witness.n { Reason::ComputeViolation } else { Reason::ReductMismatch };
    check(witness.reason == expect, || "witness reason does not match its sets".into())
}

fn atoms(p: &Program, names: &[&str]) -> Interpretation {
    names.iter().map(|n| p.atom(n).unwrap_or_else(|| panic!("atom `{n}` exists"))).collect()
}

#[test]
fn c01_two_rule_pair_translation_matches_the_worked_example() {
    verdict(1, "two-rule pair: translation has exactly the two expected counter-example models", (|| {
        let start = Instant::now();
        let p = parse(&golden("fig2_p.lp"));
        let q = parse(&golden("fig2_q.lp"));
        let (t, map) = eqt(&p, &q, true).map_err(|e| e.to_string())?;
        check(print_program(&t) == golden("fig2_eqt.lp"), || {
            "printed translation differs from the reviewed golden file".into()
        })?;
        let models = enumerate(&t);
        check(models.len() == 2, || format!("expected 2 translation models, got {}", models.len()))?;
        let mut found = BTreeSet::new();
        for k in models.models() {
            let ce = decode(&t, k, &map, &p, &q).map_err(|e| e.to_string())?;
            found.insert((names(&p, &ce.m), names(&q, &ce.n), names(&q, &ce.l)));
        }
        let a = || BTreeSet::from(["a".to_string()]);
        let ab = || BTreeSet::from(["a".to_string(), "b".to_string()]);
        let b = || BTreeSet::from(["b".to_string()]);
        let expected = BTreeSet::from([(a(), a(), BTreeSet::new()), (b(), b(), ab())]);
        check(found == expected, || format!("decoded witnesses {found:?}"))?;
        check(start.elapsed().as_secs_f64() < 1.0, || "took a second or more".into())
    })());
}

#[test]
fn c02_cafe_program_has_33_orders_and_the_printed_reduct() {
    verdict(2, "cafe program: 33 stable models and the expected reduct of the seventh order", (|| {
        let start = Instant::now();
        let p = parse(&golden("cafe.lp"));
        let models = enumerate(&p);
        check(models.len() == 33, || format!("expected 33 stable models, got {}", models.len()))?;
        let m7 = atoms(&p, &["acceptable", "happy", "lemon", "tea", "biscuit"]);
        check(models.models().contains(&m7), || "the seventh order is not among the models".into())?;
        let a = |n: &str| p.atom(n).unwrap();
        let expected = ReducedProgram {
            rules: vec![
                ReducedRule::Basic { head: a("tea"), pos: vec![] },
                ReducedRule::Basic { head: a("biscuit"), pos: vec![] },
                ReducedRule::Basic { head: a("cognac"), pos: vec![a("coffee")] },
                ReducedRule::Basic { head: a("lemon"), pos: vec![a("tea")] },
                ReducedRule::Basic { head: a("mess"), pos: vec![a("milk"), a("lemon")] },
                ReducedRule::Constraint {
                    head: a("happy"),
                    bound: 1,
                    pos: vec![a("biscuit"), a("cake"), a("cognac")],
                },
                ReducedRule::Weight {
                    head: a("bankrupt"),
                    bound: 6,
                    pos: vec![
                        (a("coffee"), 1),
                        (a("tea"), 1),
                        (a("biscuit"), 1),
                        (a("cake"), 2),
                        (a("cognac"), 4),
                    ],
                },
                ReducedRule::Basic { head: a("acceptable"), pos: vec![a("happy")] },
            ],
        };
        check(reduce(&p, &m7) == expected, || "reduct shape differs".into())?;
        check(start.elapsed().as_secs_f64() < 1.0, || "took a second or more".into())
    })());
}

#[test]
fn c03_queens_model_counts_for_boards_up_to_eight() {
    verdict(3, "queens counts 1..8 are 1, 0, 0, 2, 10, 4, 40, 92", (|| {
        let expected = [1usize, 0, 0, 2, 10, 4, 40, 92];
        for (i, &want) in expected.iter().enumerate() {
            let n = i as u64 + 1;
            let p = gen_queens(QueensVariant::X1, n).map_err(|e| e.to_string())?;
            let got = enumerate(&p).len();
            check(got == want, || format!("n={n}: expected {want} models, got {got}"))?;
        }
        Ok(())
    })());
}

#[test]
fn c04_queens_variants_verify_equivalent_and_drops_match_the_oracle() {
    verdict(4, "queens variants equivalent for n=4..6; dropped-rule verdicts match the oracle", (|| {
        let opts = VerifyOptions::default();
        for n in [4u64, 5, 6] {
            let x1 = gen_queens(QueensVariant::X1, n).map_err(|e| e.to_string())?;
            let x2 = gen_queens(QueensVariant::X2, n).map_err(|e| e.to_string())?;
            let y = gen_queens(QueensVariant::Y, n).map_err(|e| e.to_string())?;
            for (tag, other) in [("x2", &x2), ("y", &y)] {
                let v = verify_translation(&x1, other, &opts);
                check(v == Verdict::Equivalent, || format!("n={n}: x1 vs {tag} gave {v:?}"))?;
            }
        }
        let x1 = gen_queens(QueensVariant::X1, 4).map_err(|e| e.to_string())?;
        let y = gen_queens(QueensVariant::Y, 4).map_err(|e| e.to_string())?;
        for seed in 1..=5u64 {
            let broken = drop_rule(&y, seed).map_err(|e| e.to_string())?;
            let vt = verify_translation(&x1, &broken, &opts);
            let vo = verify_oracle_capped(&x1, &broken, 64);
            check(kind(&vt) == kind(&vo), || {
                format!("seed {seed}: translation says {}, oracle says {}", kind(&vt), kind(&vo))
            })?;
            validate_witness(&x1, &broken, &vt)?;
            validate_witness(&x1, &broken, &vo)?;
        }
        Ok(())
    })());
}

#[test]
fn c05_even_subset_programs_are_equivalent_with_the_expected_counts() {
    verdict(5, "even-subsets pairs for n=3,5 count 2^(n-1) models and verify equivalent", (|| {
        for n in [3u64, 5] {
            let p = gen_even_subsets(EvenSubsetsVariant::P, n).map_err(|e| e.to_string())?;
            let q = gen_even_subsets(EvenSubsetsVariant::Q, n).map_err(|e| e.to_string())?;
            let want = 1usize << (n - 1);
            for (tag, prog) in [("p", &p), ("q", &q)] {
                let got = enumerate(prog).len();
                check(got == want, || format!("n={n} variant {tag}: {got} models, wanted {want}"))?;
            }
            let v = verify_oracle(&p, &q);
            check(v == Verdict::Equivalent, || format!("n={n}: oracle gave {v:?}"))?;
            let vt = verify_translation(&p, &q, &VerifyOptions::default());
            check(matches!(vt, Verdict::Inapplicable { .. }), || {
                format!("n={n}: the translation should refuse the hidden compute atom, gave {vt:?}")
            })?;
        }
        Ok(())
    })());
}

#[test]
fn c06_semantics_properties_hold_on_the_random_corpus() {
    verdict(6, "500 random programs: engines agree, models are classical, positives unique, reducts shaped", (|| {
        for seed in 0..500u64 {
            let p = random_program(seed);
            let brute = enumerate_oracle(&p).map_err(|e| e.to_string())?;
            let searched = enumerate(&p);
            check(model_set(&p, brute.models()) == model_set(&p, searched.models()), || {
                format!("seed {seed}: engines disagree")
            })?;
            for m in searched.models() {
                check(satisfies_program(&p, m), || {
                    format!("seed {seed}: a stable model is not a classical model")
                })?;
            }

            let positive = random_positive_program(seed);
            let ms = enumerate(&positive);
            let lm = least_model(&reduce(&positive, &Interpretation::new()));
            check(ms.models() == [lm], || {
                format!("seed {seed}: positive program does not have exactly its least model")
            })?;

            reduct_shape(seed, &p)?;
        }
        Ok(())
    })());
}

/// Recomputes the expected reduct rule by rule and compares.
fn reduct_shape(seed: u64, p: &Program) -> Result<(), String> {
    let i = random_subset(seed, p);
    let got = reduce(p, &i);
    let mut expected = Vec::new();
    for r in p.rules() {
        match r {
            Rule::Basic { head, pos, neg } => {
                if neg.iter().all(|&b| !i.contains(b)) {
                    expected.push(ReducedRule::Basic { head: *head, pos: pos.clone() });
                }
            }
            Rule::Choice { heads, pos, neg } => {
                if neg.iter().all(|&b| !i.contains(b)) {
                    for &h in heads.iter().filter(|&&h| i.contains(h)) {
                        expected.push(ReducedRule::Basic { head: h, pos: pos.clone() });
                    }
                }
            }
            Rule::Constraint { head, bound, pos, neg } => {
                let paid = neg.iter().filter(|&&b| !i.contains(b)).count() as u64;
                expected.push(ReducedRule::Constraint {
                    head: *head,
                    bound: bound.saturating_sub(paid),
                    pos: pos.clone(),
                });
            }
            Rule::Weight { head, bound, pos, neg } => {
                let paid: u64 =
                    neg.iter().filter(|&&(b, _)| !i.contains(b)).map(|&(_, w)| w).sum();
                expected.push(ReducedRule::Weight {
                    head: *head,
                    bound: bound.saturating_sub(paid),
                    pos: pos.clone(),
                });
            }
            Rule::Compute { .. } => {}
        }
    }
    check(got.rules == expected, || format!("seed {seed}: reduct shape differs"))
}

#[test]
fn c07_visibility_properties_hold_on_the_random_corpus() {
    verdict(7, "hidden projections stay stable, visible-uniqueness implies separability", (|| {
        for seed in 0..500u64 {
            let p = random_program(seed);
            for m in enumerate(&p) {
                let mv = p.project_visible(&m).map_err(|e| e.to_string())?;
                let mh = p.project_hidden(&m).map_err(|e| e.to_string())?;
                let hidden = eval_hidden(&p, &mv);
                check(is_stable(&hidden, &mh), || {
                    format!("seed {seed}: hidden projection is not stable in the hidden part")
                })?;
            }
            if has_enough_visible_exact(&p).map_err(|e| e.to_string())? {
                check(is_separable(&p)?, || {
                    format!("seed {seed}: enough visible atoms but inseparable models")
                })?;
            }
        }
        let p = parse("a :- not a.\nb :- a, not b.\n#hide b.\n");
        check(is_separable(&p)?, || "the two-rule instance should be separable".into())?;
        check(!has_enough_visible_exact(&p).map_err(|e| e.to_string())?, || {
            "the two-rule instance should not have enough visible atoms".into()
        })
    })());
}

fn is_separable(p: &Program) -> Result<bool, String> {
    aspeq::is_separable(p).map_err(|e| e.to_string())
}

/// Pairs over a shared visible base where both sides pass the exact
/// hidden-uniqueness check and keep computes visible, in seed order.
fn qualifying_pairs(count: usize) -> Vec<(u64, Program, Program)> {
    let mut out = Vec::new();
    for seed in 0..20_000u64 {
        if out.len() == count {
            break;
        }
        let (p, q) = random_visible_pair(seed);
        if !hidden_compute_free(&p) || !hidden_compute_free(&q) {
            continue;
        }
        if !has_enough_visible_exact(&p).unwrap() || !has_enough_visible_exact(&q).unwrap() {
            continue;
        }
        out.push((seed, p, q));
    }
    assert_eq!(out.len(), count, "not enough qualifying pairs below the seed limit");
    out
}

#[test]
fn c08_all_three_methods_agree_on_translatable_pairs() {
    verdict(8, "300 checked pairs: translation, direct probing, and the counting oracle agree", (|| {
        let opts = VerifyOptions::default();
        for (seed, p, q) in qualifying_pairs(300) {
            let vt = verify_translation(&p, &q, &opts);
            let vn = verify_naive(&p, &q);
            let vo = verify_oracle(&p, &q);
            check(kind(&vt) == kind(&vn) && kind(&vn) == kind(&vo), || {
                format!(
                    "seed {seed}: translation={}, probing={}, oracle={}",
                    kind(&vt),
                    kind(&vn),
                    kind(&vo)
                )
            })?;
            check(kind(&vo) != "inapplicable", || format!("seed {seed}: oracle inapplicable"))?;
            for v in [&vt, &vn, &vo] {
                validate_witness(&p, &q, v).map_err(|e| format!("seed {seed}: {e}"))?;
            }
        }
        Ok(())
    })());
}

#[test]
fn c09_weight_constraint_semantics_compile_faithfully() {
    verdict(9, "embeddings match on all interpretations; compilations map models one-to-one and stay checkable", (|| {
        for seed in 0..300u64 {
            let p = random_compute_free_program(seed);
            let pw = embed_smodels(&p).map_err(|e| e.to_string())?;
            let base: Vec<Atom> = p.hb().iter().collect();
            for mask in 0u32..(1u32 << base.len()) {
                let m: Interpretation = base
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &a)| a)
                    .collect();
                let fixpoint = least_model(&reduce(&p, &m)) == m;
                let wc = wc_is_stable(&pw, &m);
                check(fixpoint == wc, || {
                    format!("seed {seed}: embedding disagrees on mask {mask:#b}")
                })?;
            }
        }

        for seed in 0..200u64 {
            let w = random_wcp(seed, false);
            let src = wc_enumerate_oracle(&w).map_err(|e| e.to_string())?;
            let t = tr_sns(&w).map_err(|e| e.to_string())?;
            let tgt = enumerate(&t.program);
            check(src.len() == tgt.len(), || {
                format!("seed {seed}: {} source models vs {} compiled", src.len(), tgt.len())
            })?;
            let mapped: BTreeSet<Vec<u32>> = src
                .iter()
                .map(|m| t.ext(m).iter().map(|a| a.index() as u32).collect())
                .collect();
            let target: BTreeSet<Vec<u32>> = tgt
                .models()
                .iter()
                .map(|m| m.iter().map(|a| a.index() as u32).collect())
                .collect();
            check(mapped.len() == src.len(), || format!("seed {seed}: extension collides"))?;
            check(mapped == target, || {
                format!("seed {seed}: extension does not map models onto the compilation")
            })?;
            for m in &src {
                check(t.ext(m).intersection(w.hb()) == *m, || {
                    format!("seed {seed}: extension changes source atoms")
                })?;
            }

            let fully_visible = random_wcp(seed, true);
            let t = tr_sns(&fully_visible).map_err(|e| e.to_string())?;
            check(has_enough_visible_overapprox(&t.program) == EvaStatus::Guaranteed, || {
                format!("seed {seed}: compiled program not syntactically deterministic")
            })?;
            check(
                has_enough_visible_exact_capped(&t.program, 20).map_err(|e| e.to_string())?,
                || format!("seed {seed}: compiled program fails the exact check"),
            )?;
        }
        Ok(())
    })());
}

#[test]
fn c10_round_trips_hold_and_the_cli_matches_the_library() {
    verdict(10, "round-trips hold on the corpus; scripted runs match library verdicts and exits", (|| {
        round_trips()?;
        let runs = cli_scenarios()?;
        check(runs >= 50, || format!("only {runs} command-line scenarios ran"))
    })());
}

fn round_trip(p: &Program) -> Result<(), String> {
    let text = print_program(p);
    let back = parse_program(&text, "roundtrip.lp").map_err(|e| e.to_string())?.program;
    check(back.same_modulo_ids(p), || format!("round-trip changed the program:\n{text}"))
}

fn round_trips() -> Result<(), String> {
    for seed in 0..500u64 {
        round_trip(&random_program(seed))?;
        round_trip(&random_positive_program(seed))?;
    }
    for seed in 0..300u64 {
        let (p, q) = random_visible_pair(seed);
        round_trip(&p)?;
        round_trip(&q)?;
        round_trip(&aspeq::bench::shuffle(&p, seed))?;
    }
    for seed in 0..200u64 {
        for fully_visible in [false, true] {
            let w = random_wcp(seed, fully_visible);
            let text = print_wc_program(&w);
            let back = parse_wc_program(&text, "roundtrip.wlp").map_err(|e| e.to_string())?;
            check(print_wc_program(&back.program) == text, || {
                format!("weight-constraint round-trip changed the text:\n{text}")
            })?;
        }
    }
    for n in 1..=4u64 {
        for v in [QueensVariant::X1, QueensVariant::X2, QueensVariant::Y] {
            round_trip(&gen_queens(v, n).map_err(|e| e.to_string())?)?;
        }
    }
    for n in [1u64, 3, 5] {
        for v in [EvenSubsetsVariant::P, EvenSubsetsVariant::Q] {
            round_trip(&gen_even_subsets(v, n).map_err(|e| e.to_string())?)?;
        }
    }
    for seed in 0..4u64 {
        for plain in [false, true] {
            round_trip(&aspeq::bench::gen_3sat(3, 2, seed, plain).map_err(|e| e.to_string())?)?;
        }
    }
    for name in ["fig2_p.lp", "fig2_q.lp", "cafe.lp"] {
        let text = golden(name);
        let p = parse(&text);
        check(print_program(&p) == text, || format!("golden file {name} is not print-stable"))?;
    }
    Ok(())
}

struct Cli {
    dir: tempfile::TempDir,
    runs: usize,
}

struct Output {
    code: i32,
    stdout: String,
}

impl Cli {
    fn new() -> Cli {
        Cli { dir: tempfile::tempdir().expect("temp dir"), runs: 0 }
    }

    fn file(&self, name: &str, text: &str) -> String {
        let path = self.dir.path().join(name);
        std::fs::write(&path, text).expect("test file writes");
        path.display().to_string()
    }

    fn run(&mut self, args: &[&str]) -> Output {
        self.runs += 1;
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_aspeq"))
            .args(args)
            .output()
            .expect("binary runs");
        Output {
            code: out.status.code().expect("binary exits normally"),
            stdout: String::from_utf8(out.stdout).expect("stdout is text"),
        }
    }
}

/// What the binary is expected to print for a library verdict, and the
/// exit code that goes with it.
fn render(p: &Program, q: &Program, v: &Verdict) -> (i32, String) {
    match v {
        Verdict::Equivalent => (0, "equivalent\n".to_string()),
        Verdict::NotEquivalent { direction, witness } => {
            let (src, tgt) = match direction {
                Direction::LeftToRight => (p, q),
                Direction::RightToLeft => (q, p),
            };
            let reason = match witness.reason {
                Reason::ReductMismatch => "reduct-mismatch",
                Reason::ComputeViolation => "compute-violation",
            };
            let text = format!(
                "M = {}\nN = {}\nL = {}\nreason = {reason}\n",
                aspeq::format_model(src, &witness.m),
                aspeq::format_model(tgt, &witness.n),
                aspeq::format_model(tgt, &witness.l),
            );
            (1, text)
        }
        Verdict::Inapplicable { why } => (2, format!("inapplicable: {why}\n")),
    }
}

fn cli_scenarios() -> Result<usize, String> {
    let mut cli = Cli::new();

    // Verdict parity on a spread of checked pairs, all three methods. The
    // library side parses the same text the binary reads so the engines
    // walk identical programs.
    for (i, (_, p, q)) in qualifying_pairs(14).into_iter().enumerate() {
        let pf = cli.file(&format!("p{i}.lp"), &print_program(&p));
        let qf = cli.file(&format!("q{i}.lp"), &print_program(&q));
        let p = parse(&std::fs::read_to_string(&pf).unwrap());
        let q = parse(&std::fs::read_to_string(&qf).unwrap());
        let opts = VerifyOptions::default();
        for (flags, expected) in [
            (&[][..], verify_translation(&p, &q, &opts)),
            (&["--naive"][..], verify_naive(&p, &q)),
            (&["--oracle"][..], verify_oracle(&p, &q)),
        ] {
            let (code, stdout) = render(&p, &q, &expected);
            let mut args = vec!["verify", pf.as_str(), qf.as_str()];
            args.extend_from_slice(flags);
            let out = cli.run(&args);
            check(out.code == code && out.stdout == stdout, || {
                format!(
                    "pair {i} {flags:?}: expected exit {code} with {stdout:?}, \
                     got exit {} with {:?}",
                    out.code, out.stdout
                )
            })?;
        }
    }

    // Solving: full enumeration, first-model mode, and the stats line.
    let cafe = cli.file("cafe.lp", &golden("cafe.lp"));
    let parsed = parse(&golden("cafe.lp"));
    let all = enumerate(&parsed);
    let expected: String =
        all.models().iter().map(|m| aspeq::format_model(&parsed, m) + "\n").collect();
    let out = cli.run(&["solve", &cafe, "--all"]);
    check(out.code == 0 && out.stdout == expected, || "cafe enumeration differs".into())?;
    let out = cli.run(&["solve", &cafe, "--all", "--stats"]);
    let stats = all.stats();
    let tail = format!("choice_points={} models={}\n", stats.choice_points, stats.models);
    check(out.code == 0 && out.stdout == expected.clone() + &tail, || {
        "cafe stats line differs".into()
    })?;
    let out = cli.run(&["solve", &cafe]);
    check(out.code == 0 && out.stdout == expected.lines().next().unwrap().to_string() + "\n", || {
        "first cafe model differs".into()
    })?;
    let none = cli.file("none.lp", "a :- not a.\n");
    let out = cli.run(&["solve", &none, "--all"]);
    check(out.code == 1 && out.stdout.is_empty(), || "inconsistent solve should exit 1".into())?;

    // Translation output, both to stdout and to a file.
    let pf = cli.file("fig2_p.lp", &golden("fig2_p.lp"));
    let qf = cli.file("fig2_q.lp", &golden("fig2_q.lp"));
    let out = cli.run(&["eqt", &pf, &qf]);
    check(out.code == 0 && out.stdout == golden("fig2_eqt.lp"), || {
        "translation stdout differs from the golden file".into()
    })?;
    let target = cli.dir.path().join("out.lp").display().to_string();
    let out = cli.run(&["eqt", &pf, &qf, "-o", &target]);
    check(out.code == 0 && out.stdout.is_empty(), || "file output should print nothing".into())?;
    check(std::fs::read_to_string(&target).unwrap() == golden("fig2_eqt.lp"), || {
        "written translation differs from the golden file".into()
    })?;

    // Inapplicable inputs: mismatched bases and hidden compute atoms.
    let af = cli.file("a.lp", "a.\n");
    let bf = cli.file("b.lp", "b.\n");
    let out = cli.run(&["eqt", &af, &bf]);
    check(out.code == 2, || "mismatched bases should exit 2".into())?;
    let out = cli.run(&["verify", &af, &bf]);
    check(out.code == 2 && out.stdout.starts_with("inapplicable:"), || {
        "mismatched bases should verify inapplicable".into()
    })?;
    let pn = gen_even_subsets(EvenSubsetsVariant::P, 3).unwrap();
    let qn = gen_even_subsets(EvenSubsetsVariant::Q, 3).unwrap();
    let pnf = cli.file("even_p.lp", &print_program(&pn));
    let qnf = cli.file("even_q.lp", &print_program(&qn));
    let out = cli.run(&["eqt", &pnf, &qnf]);
    check(out.code == 2, || "hidden compute atoms should exit 2".into())?;
    let out = cli.run(&["verify", &pnf, &qnf, "--oracle"]);
    check(out.code == 0 && out.stdout == "equivalent\n", || {
        "the counting oracle should accept the parity pair".into()
    })?;

    // Hidden-part checks through the dedicated subcommand.
    let out = cli.run(&["eva-check", &pf]);
    check(out.code == 0 && out.stdout.contains("guaranteed"), || {
        "the two-rule program should check as deterministic".into()
    })?;
    let sep = cli.file("separable.lp", "a :- not a.\nb :- a, not b.\n#hide b.\n");
    let out = cli.run(&["eva-check", &sep, "--exact"]);
    check(out.code == 1 && out.stdout.contains("no"), || {
        "the separable instance should fail the exact check".into()
    })?;
    let loops = cli.file("loop.lp", "a :- not b.\nb :- not a.\n#hide a, b.\n");
    let out = cli.run(&["eva-check", &loops]);
    check(out.code == 2 && out.stdout.contains("unknown"), || {
        "the hidden loop should be inconclusive".into()
    })?;
    let out = cli.run(&["eva-check", &loops, "--exact"]);
    check(out.code == 1, || "the hidden loop has two completions, so exact says no".into())?;

    // Weight-constraint compilation.
    let wlp = cli.file("one.wlp", "1 { a=1 } 1.\n");
    let w = parse_wc_program("1 { a=1 } 1.\n", "one.wlp").unwrap().program;
    let compiled = print_program(&tr_sns(&w).unwrap().program);
    let out = cli.run(&["sns", &wlp]);
    check(out.code == 0 && out.stdout == compiled, || "compilation stdout differs".into())?;

    // Generators are deterministic and validate their arguments.
    let queens = print_program(&gen_queens(QueensVariant::X2, 3).unwrap());
    let out = cli.run(&["bench", "gen", "queens-x2", "3"]);
    check(out.code == 0 && out.stdout == queens, || "generated queens differ".into())?;
    let first = cli.run(&["bench", "gen", "3sat", "4", "6", "11"]);
    let second = cli.run(&["bench", "gen", "3sat", "4", "6", "11"]);
    check(first.code == 0 && first.stdout == second.stdout, || {
        "same seed should generate the same instance".into()
    })?;
    let out = cli.run(&["bench", "gen", "even-subsets", "p", "2"]);
    check(out.code == 3, || "even sizes should be usage errors".into())?;
    let out = cli.run(&["bench", "gen", "queens-x1", "0"]);
    check(out.code == 3, || "an empty board should be a usage error".into())?;

    // Error paths: parse failures, missing files, bad usage.
    let broken = cli.file("broken.lp", "a :- not .\n");
    let out = cli.run(&["solve", &broken]);
    check(out.code == 3, || "parse errors should exit 3".into())?;
    let out = cli.run(&["solve", "no-such-file.lp"]);
    check(out.code == 3, || "missing files should exit 3".into())?;
    let out = cli.run(&["frobnicate"]);
    check(out.code == 3, || "unknown subcommands should exit 3".into())?;
    let out = cli.run(&["--help"]);
    check(out.code == 0, || "help should exit 0".into())?;

    Ok(cli.runs)
}
