//! Armstrong relations: one team satisfying exactly the atoms derivable from
//! a premise set, over a declared finite universe.
//!
//! Every non-derivable single-antecedent atom `⋈(v, W)` contributes a
//! two-row block refuting it. Block `k` draws all its values from
//! `{2k, 2k + 1}`, so rows from different blocks differ on every column that
//! is not forced constant. Columns whose constancy atom `⋈(v, ∅)` is
//! derivable hold `0` everywhere.

use std::fmt;

use crate::atoms::{AtomSet, GAtom};
use crate::calculus::{derivable_from, entails, DEFAULT_UNIVERSE_BOUND};
use crate::error::{Error, Result};
use crate::team::{check_gdep, Team, Value, VarSet, Variable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArmstrongSpec {
    pub sigma: AtomSet,
    pub universe: VarSet,
    pub bound: usize,
}

impl ArmstrongSpec {
    pub fn new(sigma: AtomSet, universe: VarSet) -> Self {
        ArmstrongSpec {
            sigma,
            universe,
            bound: DEFAULT_UNIVERSE_BOUND,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.universe.len() > self.bound {
            return Err(Error::size(
                "armstrong (universe)",
                self.bound as u128,
                self.universe.len() as u128,
            ));
        }
        let outside = self.sigma.variables().difference(&self.universe);
        if !outside.is_empty() {
            return Err(Error::Contract(format!(
                "premise variables outside the universe: {outside}"
            )));
        }
        Ok(())
    }
}

pub fn build_armstrong(spec: &ArmstrongSpec) -> Result<Team> {
    spec.validate()?;
    let reach = derivable_from(&spec.sigma);
    let columns: Vec<Variable> = spec.universe.iter().cloned().collect();
    let constant = reach(&VarSet::new());

    let mut rows: Vec<Vec<Value>> = Vec::new();
    let mut block = 0u64;
    for target in spec.universe.subsets() {
        let closed = reach(&target);
        for v in &spec.universe {
            if closed.contains(v) {
                continue;
            }
            // ⋈(v, target) is not derivable; differing side is everything outside `closed`
            let (low, high) = (2 * block, 2 * block + 1);
            let cell = |c: &Variable, row_high: bool| {
                let n = if constant.contains(c) {
                    0
                } else if row_high && !closed.contains(c) {
                    high
                } else {
                    low
                };
                Value::new(n.to_string()).unwrap()
            };
            rows.push(columns.iter().map(|c| cell(c, false)).collect());
            rows.push(columns.iter().map(|c| cell(c, true)).collect());
            block += 1;
        }
    }
    if rows.is_empty() && !columns.is_empty() {
        rows.push(vec![Value::new("0").unwrap(); columns.len()]);
    }
    Team::new(columns, rows)
}

/// A disagreement between a team and derivability for one atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub atom: GAtom,
    /// Whether `sigma` derives the atom.
    pub expected: bool,
    /// Whether the team satisfies it.
    pub got: bool,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: expected {}, got {}", self.atom, self.expected, self.got)
    }
}

/// Compares `team ⊨ σ` with `sigma ⊢ σ` for every single-antecedent atom over
/// the team's domain, which decides the comparison for all atoms.
pub fn verify_armstrong(team: &Team, sigma: &AtomSet) -> Result<Vec<Violation>> {
    let domain = team.domain();
    if domain.len() > DEFAULT_UNIVERSE_BOUND {
        return Err(Error::size(
            "armstrong verification (domain)",
            DEFAULT_UNIVERSE_BOUND as u128,
            domain.len() as u128,
        ));
    }
    let mut out = Vec::new();
    for target in domain.subsets() {
        for v in &domain {
            let atom = GAtom::new(VarSet::singleton(v.clone()), target.clone());
            let expected = entails(sigma, &atom).verdict();
            let got = check_gdep(team, atom.lhs(), atom.rhs())?;
            if expected != got {
                out.push(Violation { atom, expected, got });
            }
        }
    }
    Ok(out)
}
