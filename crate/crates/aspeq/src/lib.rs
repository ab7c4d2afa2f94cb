//! Ground answer-set programming toolkit centered on program equivalence.
//!
//! The core supports the smodels rule forms (basic, cardinality-constraint,
//! choice, weight, and compute statements), stable-model semantics, and two
//! notions of correspondence between programs: weak equivalence, which
//! compares full stable models, and visible equivalence, which compares
//! only a declared visible part and lets hidden atoms differ, provided the
//! hidden parts stay deterministic.
//!
//! Equivalence can be decided two ways: by enumerating and matching stable
//! models directly, or through a counter-example translation that combines
//! the two programs into one whose stable models are exactly the witnesses
//! against their equivalence, so a single search settles one direction.
//!
//! Around the core sit a weight-constraint front-end with a compilation
//! into the plain rule forms, a line-oriented text format with a parser
//! and printer, and seeded generators for benchmark families.

pub mod ast;
pub mod bench;
pub mod enumerate;
pub mod eqt;
pub mod error;
pub mod interp;
pub mod semantics;
pub mod sns;
pub mod textio;
pub mod verify;
pub mod visibility;
pub mod wcp;

pub use ast::{build_program, Atom, AtomSet, Program, Rule, SymbolTable, WeightedLits};
pub use enumerate::{
    enumerate, enumerate_oracle, enumerate_oracle_capped, find_one, find_one_with_stats,
    ModelStream, Stats, DEFAULT_ORACLE_CAP,
};
pub use eqt::{decode, eqt, CounterExample, Reason, RenamingMap};
pub use error::{Error, Result};
pub use interp::Interpretation;
pub use semantics::{
    compst, is_stable, least_model, reduce, satisfies, satisfies_program, wsum, LiteralSet,
    ReducedProgram, ReducedRule,
};
pub use sns::{tr_sns, SnsOccurrence, SnsTranslation};
pub use textio::{
    format_model, parse_program, parse_wc_program, print_program, print_wc_program, Parsed,
    SourceSpan,
};
pub use verify::{
    verify_naive, verify_oracle, verify_oracle_capped, verify_translation, Direction, EvaMode,
    Verdict, VerifyOptions,
};
pub use visibility::{
    eval_hidden, has_enough_visible_exact, has_enough_visible_exact_capped,
    has_enough_visible_overapprox, is_separable, EvaStatus, DEFAULT_EVA_CAP,
};
pub use wcp::{
    build_wc_program, embed_smodels, wc_enumerate_oracle, wc_enumerate_oracle_capped, wc_is_stable,
    wc_satisfies, wc_satisfies_program, wc_satisfies_rule, WCProgram, WCRule, WeightConstraint,
};
