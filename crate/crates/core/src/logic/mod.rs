//! G-dependence logic and dependence logic: formulas in negation normal form
//! over a relational vocabulary, finite structures, and team semantics.

mod eval;
mod parse;
mod structure;

use std::fmt;

use crate::atoms::{FAtom, GAtom};
use crate::team::{VarSet, Variable};

pub use eval::{eval, eval_first_order_oracle, sentence_team, EvalContext, EvalLimits};
pub use parse::parse_formula;
pub use structure::{Structure, Vocabulary};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    /// `P(x, y)` or `~P(x, y)`.
    Rel {
        positive: bool,
        name: String,
        args: Vec<Variable>,
    },
    /// `x = y` or `x != y`.
    Eq {
        positive: bool,
        left: Variable,
        right: Variable,
    },
    GDep(GAtom),
    FDep(FAtom),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(Variable, Box<Formula>),
    Forall(Variable, Box<Formula>),
}

impl Formula {
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn exists(v: Variable, body: Formula) -> Formula {
        Formula::Exists(v, Box::new(body))
    }

    pub fn forall(v: Variable, body: Formula) -> Formula {
        Formula::Forall(v, Box::new(body))
    }

    pub fn eq(positive: bool, left: Variable, right: Variable) -> Formula {
        Formula::Eq {
            positive,
            left,
            right,
        }
    }

    pub fn rel(positive: bool, name: impl Into<String>, args: Vec<Variable>) -> Formula {
        Formula::Rel {
            positive,
            name: name.into(),
            args,
        }
    }

    /// Left-nested conjunction of `parts`; `None` when `parts` is empty.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        parts.into_iter().reduce(Formula::and)
    }

    pub fn free_vars(&self) -> VarSet {
        match self {
            Formula::Rel { args, .. } => args.iter().cloned().collect(),
            Formula::Eq { left, right, .. } => [left.clone(), right.clone()].into_iter().collect(),
            Formula::GDep(a) => a.variables(),
            Formula::FDep(a) => a.variables(),
            Formula::And(a, b) | Formula::Or(a, b) => a.free_vars().union(&b.free_vars()),
            Formula::Exists(v, body) | Formula::Forall(v, body) => body.free_vars().without(v),
        }
    }

    /// Connective nesting depth; literals and atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Rel { .. } | Formula::Eq { .. } | Formula::GDep(_) | Formula::FDep(_) => 0,
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.depth().max(b.depth()),
            Formula::Exists(_, body) | Formula::Forall(_, body) => 1 + body.depth(),
        }
    }

    pub fn has_dependence_atoms(&self) -> bool {
        match self {
            Formula::GDep(_) | Formula::FDep(_) => true,
            Formula::Rel { .. } | Formula::Eq { .. } => false,
            Formula::And(a, b) | Formula::Or(a, b) => a.has_dependence_atoms() || b.has_dependence_atoms(),
            Formula::Exists(_, body) | Formula::Forall(_, body) => body.has_dependence_atoms(),
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
        match self {
            Formula::Rel {
                positive,
                name,
                args,
            } => {
                if !positive {
                    f.write_str("~")?;
                }
                let args: Vec<&str> = args.iter().map(Variable::as_str).collect();
                write!(f, "{name}({})", args.join(", "))
            }
            Formula::Eq {
                positive,
                left,
                right,
            } => write!(f, "{left} {} {right}", if *positive { "=" } else { "!=" }),
            Formula::GDep(a) => write!(f, "{a}"),
            Formula::FDep(a) => write!(f, "{a}"),
            Formula::Or(a, b) => {
                if level > 0 {
                    f.write_str("(")?;
                }
                a.fmt_at(f, 0)?;
                f.write_str(" | ")?;
                b.fmt_at(f, 1)?;
                if level > 0 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Formula::And(a, b) => {
                if level > 1 {
                    f.write_str("(")?;
                }
                a.fmt_at(f, 1)?;
                f.write_str(" & ")?;
                b.fmt_at(f, 2)?;
                if level > 1 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Formula::Exists(v, body) => {
                write!(f, "E {v}. ")?;
                body.fmt_at(f, 2)
            }
            Formula::Forall(v, body) => {
                write!(f, "A {v}. ")?;
                body.fmt_at(f, 2)
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}
