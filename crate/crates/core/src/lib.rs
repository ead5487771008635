//! G-dependence over teams.
//!
//! A team is a table whose rows may repeat. `⋈(x, y)` holds in a team when
//! any two rows differing in exactly one variable of `x` also differ
//! somewhere in `y`. The crate provides:
//!
//! - [`team`]: teams, CSV I/O, and the semantic checks for G-dependence and
//!   functional dependence, plus dependency mining;
//! - [`atoms`]: atom syntax and reduction to single-antecedent atoms;
//! - [`calculus`]: a decision procedure for `Σ ⊢ σ` returning derivations or
//!   two-row counter-models, a derivation checker, and a brute-force oracle;
//! - [`armstrong`]: Armstrong relations over a finite universe;
//! - [`translate`]: rewriting between `dep` and `gdep` atoms and formulas;
//! - [`logic`]: formulas, finite structures and the team-semantics evaluator.

pub mod armstrong;
pub mod atoms;
pub mod calculus;
pub mod error;
pub mod logic;
pub mod sample;
pub mod team;
pub mod translate;

pub use armstrong::{build_armstrong, verify_armstrong, ArmstrongSpec, Violation};
pub use atoms::{normalize, normalize_set, parse_atom, Atom, AtomSet, FAtom, GAtom};
pub use calculus::{
    check_derivation, deductive_closure, entails, reach_set, semantic_oracle, CounterModel, Derivation,
    EntailmentResult, Rule, Witness,
};
pub use error::{Error, Result};
pub use logic::{eval, parse_formula, EvalContext, EvalLimits, Formula, Structure};
pub use team::{check_fdep, check_gdep, mine_gdeps, Team, Value, VarSet, Variable};
pub use translate::{fdep_to_gdeps, gdep_to_fdeps, rewrite_formula, translate_text, Direction};
