//! Team semantics.
//!
//! Teams are evaluated as lists of rows of element ids. Disjunction searches
//! covers `J ∪ K = I` (overlap allowed), existentials search one witness per
//! row, and universals expand every row by every element.

use crate::error::{Error, Result};
use crate::logic::{Formula, Structure};
use crate::team::{fdep_holds, gdep_holds, Team, Variable};

/// Search bounds. A bound that would be exceeded is reported as a size
/// error naming the connective.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalLimits {
    /// Largest team a disjunction splits, counted in distinct assignments.
    pub max_split_rows: usize,
    /// Largest number of choice functions an existential enumerates, over
    /// distinct assignments.
    pub max_choice_functions: u128,
    /// Largest team a universal may produce.
    pub max_team_rows: usize,
}

impl Default for EvalLimits {
    fn default() -> Self {
        EvalLimits {
            max_split_rows: 10,
            max_choice_functions: 1_000_000,
            max_team_rows: 100_000,
        }
    }
}

/// Hard ceiling on `max_split_rows`; split search keeps a table per subteam.
pub const MAX_SPLIT_ROWS_CAP: usize = 24;

#[derive(Debug, Clone)]
pub struct EvalContext<'a> {
    pub structure: &'a Structure,
    pub team: Team,
    pub limits: EvalLimits,
}

impl<'a> EvalContext<'a> {
    pub fn new(structure: &'a Structure, team: Team) -> Self {
        EvalContext {
            structure,
            team,
            limits: EvalLimits::default(),
        }
    }

    /// Context for a sentence: one row over the empty domain.
    pub fn for_sentence(structure: &'a Structure) -> Self {
        EvalContext::new(structure, sentence_team())
    }
}

/// The team with one empty assignment.
pub fn sentence_team() -> Team {
    Team::new(Vec::new(), vec![Vec::new()]).expect("empty header is valid")
}

#[derive(Debug, Clone)]
struct Frame {
    columns: Vec<Variable>,
    rows: Vec<Vec<u32>>,
}

impl Frame {
    fn column(&self, v: &Variable) -> Result<usize> {
        self.columns
            .iter()
            .position(|c| c == v)
            .ok_or_else(|| Error::MissingVariable(v.to_string()))
    }

    fn columns_of<'v>(&self, vars: impl IntoIterator<Item = &'v Variable>) -> Result<Vec<usize>> {
        vars.into_iter().map(|v| self.column(v)).collect()
    }

    /// Teams are sets of assignments; the split and choice searches run on
    /// distinct rows only.
    fn distinct(&self) -> Frame {
        let mut rows = self.rows.clone();
        rows.sort_unstable();
        rows.dedup();
        Frame {
            columns: self.columns.clone(),
            rows,
        }
    }

    fn subteam(&self, mask: u64) -> Frame {
        Frame {
            columns: self.columns.clone(),
            rows: self
                .rows
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, r)| r.clone())
                .collect(),
        }
    }

    /// Same rows with column `v` set from `values`, appending `v` if absent.
    fn with_column(&self, v: &Variable, values: impl Iterator<Item = u32>) -> Frame {
        let existing = self.columns.iter().position(|c| c == v);
        let mut columns = self.columns.clone();
        if existing.is_none() {
            columns.push(v.clone());
        }
        let rows = self
            .rows
            .iter()
            .zip(values)
            .map(|(r, x)| {
                let mut r = r.clone();
                match existing {
                    Some(c) => r[c] = x,
                    None => r.push(x),
                }
                r
            })
            .collect();
        Frame { columns, rows }
    }
}

fn frame_of(structure: &Structure, team: &Team) -> Result<Frame> {
    let rows = team
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    structure.element(v.as_str()).ok_or_else(|| {
                        Error::Vocabulary(format!("team value `{v}` is not in the structure's universe"))
                    })
                })
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Frame {
        columns: team.columns().to_vec(),
        rows,
    })
}

/// Rejects formulas using relations the structure lacks or with the wrong arity.
fn check_vocabulary(structure: &Structure, phi: &Formula) -> Result<()> {
    match phi {
        Formula::Rel { name, args, .. } => match structure.relation(name) {
            None => Err(Error::Vocabulary(format!("unknown relation `{name}`"))),
            Some(r) if r.arity != args.len() => Err(Error::Vocabulary(format!(
                "relation `{name}` has arity {}, used with {} argument(s)",
                r.arity,
                args.len()
            ))),
            Some(_) => Ok(()),
        },
        Formula::Eq { .. } | Formula::GDep(_) | Formula::FDep(_) => Ok(()),
        Formula::And(a, b) | Formula::Or(a, b) => {
            check_vocabulary(structure, a)?;
            check_vocabulary(structure, b)
        }
        Formula::Exists(_, body) | Formula::Forall(_, body) => check_vocabulary(structure, body),
    }
}

fn prepare(ctx: &EvalContext<'_>, phi: &Formula) -> Result<Frame> {
    let domain = ctx.team.domain();
    if let Some(v) = phi.free_vars().difference(&domain).first() {
        return Err(Error::MissingVariable(v.to_string()));
    }
    check_vocabulary(ctx.structure, phi)?;
    frame_of(ctx.structure, &ctx.team)
}

/// Team-semantics satisfaction `M ⊨_X φ`.
pub fn eval(ctx: &EvalContext<'_>, phi: &Formula) -> Result<bool> {
    let frame = prepare(ctx, phi)?;
    Evaluator {
        structure: ctx.structure,
        limits: ctx.limits,
    }
    .sat(phi, &frame)
}

struct Evaluator<'a> {
    structure: &'a Structure,
    limits: EvalLimits,
}

impl Evaluator<'_> {
    fn literal_holds(&self, phi: &Formula, frame: &Frame, row: &[u32]) -> Result<bool> {
        Ok(match phi {
            Formula::Rel {
                positive,
                name,
                args,
            } => {
                let rel = self.structure.relation(name).expect("vocabulary checked");
                let tuple: Vec<u32> = frame.columns_of(args)?.into_iter().map(|c| row[c]).collect();
                rel.tuples.contains(&tuple) == *positive
            }
            Formula::Eq {
                positive,
                left,
                right,
            } => (row[frame.column(left)?] == row[frame.column(right)?]) == *positive,
            _ => unreachable!("not a literal"),
        })
    }

    fn sat(&self, phi: &Formula, frame: &Frame) -> Result<bool> {
        match phi {
            Formula::Rel { .. } | Formula::Eq { .. } => {
                for row in &frame.rows {
                    if !self.literal_holds(phi, frame, row)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::GDep(a) => {
                let lhs = frame.columns_of(a.lhs())?;
                let rhs = frame.columns_of(a.rhs())?;
                Ok(gdep_holds(&frame.rows, &lhs, &rhs))
            }
            Formula::FDep(a) => {
                let lhs = frame.columns_of(a.lhs())?;
                let rhs = frame.columns_of(a.rhs())?;
                Ok(fdep_holds(&frame.rows, &lhs, &rhs))
            }
            Formula::And(a, b) => Ok(self.sat(a, frame)? && self.sat(b, frame)?),
            Formula::Or(a, b) => self.sat_or(a, b, frame),
            Formula::Exists(v, body) => self.sat_exists(v, body, frame),
            Formula::Forall(v, body) => {
                let m = self.structure.size();
                let n = frame.rows.len() * m;
                if n > self.limits.max_team_rows {
                    return Err(Error::size(
                        format!("universal quantifier (∀{v}) team rows"),
                        self.limits.max_team_rows as u128,
                        n as u128,
                    ));
                }
                let expanded = Frame {
                    columns: frame.columns.clone(),
                    rows: frame
                        .rows
                        .iter()
                        .flat_map(|r| std::iter::repeat_n(r.clone(), m))
                        .collect(),
                };
                let values = (0..frame.rows.len()).flat_map(|_| 0..m as u32);
                self.sat(body, &expanded.with_column(v, values))
            }
        }
    }

    /// Searches covers `J ∪ K = I`. Each side's verdict on a given subteam is
    /// computed at most once.
    fn sat_or(&self, left: &Formula, right: &Formula, frame: &Frame) -> Result<bool> {
        let frame = &frame.distinct();
        let n = frame.rows.len();
        let limit = self.limits.max_split_rows.min(MAX_SPLIT_ROWS_CAP);
        if n > limit {
            return Err(Error::size(
                "disjunction (∨) rows to split",
                limit as u128,
                n as u128,
            ));
        }
        let full: u64 = (1u64 << n) - 1;
        let mut left_memo: Vec<Option<bool>> = vec![None; 1 << n];
        let mut right_memo: Vec<Option<bool>> = vec![None; 1 << n];
        for j in (0..=full).rev() {
            let left_ok = match left_memo[j as usize] {
                Some(b) => b,
                None => {
                    let b = self.sat(left, &frame.subteam(j))?;
                    left_memo[j as usize] = Some(b);
                    b
                }
            };
            if !left_ok {
                continue;
            }
            // K must contain I − J and may share any rows of J
            let rest = full & !j;
            let mut extra = 0u64;
            loop {
                let k = rest | extra;
                let right_ok = match right_memo[k as usize] {
                    Some(b) => b,
                    None => {
                        let b = self.sat(right, &frame.subteam(k))?;
                        right_memo[k as usize] = Some(b);
                        b
                    }
                };
                if right_ok {
                    return Ok(true);
                }
                if extra == j {
                    break;
                }
                extra = (extra.wrapping_sub(j)) & j;
            }
        }
        Ok(false)
    }

    fn sat_exists(&self, v: &Variable, body: &Formula, frame: &Frame) -> Result<bool> {
        let frame = &frame.distinct();
        let n = frame.rows.len();
        let m = self.structure.size() as u128;
        let count = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(m)).unwrap_or(u128::MAX);
        if count > self.limits.max_choice_functions {
            return Err(Error::size(
                format!("existential quantifier (∃{v}) choice functions"),
                self.limits.max_choice_functions,
                count,
            ));
        }
        let m = m as u32;
        let mut choice = vec![0u32; n];
        loop {
            let next = frame.with_column(v, choice.iter().copied());
            if self.sat(body, &next)? {
                return Ok(true);
            }
            // odometer, last row fastest
            let mut i = n;
            loop {
                if i == 0 {
                    return Ok(false);
                }
                i -= 1;
                choice[i] += 1;
                if choice[i] < m {
                    break;
                }
                choice[i] = 0;
            }
        }
    }
}

/// Classical evaluation row by row, for formulas without dependence atoms.
pub fn eval_first_order_oracle(ctx: &EvalContext<'_>, phi: &Formula) -> Result<bool> {
    if phi.has_dependence_atoms() {
        return Err(Error::Contract(
            "first-order oracle applies only to formulas without dependence atoms".into(),
        ));
    }
    let frame = prepare(ctx, phi)?;
    for row in &frame.rows {
        let mut assignment: Vec<(Variable, u32)> =
            frame.columns.iter().cloned().zip(row.iter().copied()).collect();
        if !classical(ctx.structure, phi, &mut assignment)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn lookup(assignment: &[(Variable, u32)], v: &Variable) -> Result<u32> {
    assignment
        .iter()
        .rev()
        .find(|(w, _)| w == v)
        .map(|(_, x)| *x)
        .ok_or_else(|| Error::MissingVariable(v.to_string()))
}

fn classical(structure: &Structure, phi: &Formula, assignment: &mut Vec<(Variable, u32)>) -> Result<bool> {
    match phi {
        Formula::Rel {
            positive,
            name,
            args,
        } => {
            let names: Vec<&str> = args
                .iter()
                .map(|a| lookup(assignment, a).map(|x| structure.element_name(x)))
                .collect::<Result<_>>()?;
            let holds = structure.holds(name, &names).expect("vocabulary checked");
            Ok(holds == *positive)
        }
        Formula::Eq {
            positive,
            left,
            right,
        } => Ok((lookup(assignment, left)? == lookup(assignment, right)?) == *positive),
        Formula::GDep(_) | Formula::FDep(_) => unreachable!("checked by caller"),
        Formula::And(a, b) => Ok(classical(structure, a, assignment)? && classical(structure, b, assignment)?),
        Formula::Or(a, b) => Ok(classical(structure, a, assignment)? || classical(structure, b, assignment)?),
        Formula::Exists(v, body) | Formula::Forall(v, body) => {
            let universal = matches!(phi, Formula::Forall(..));
            for x in 0..structure.size() as u32 {
                assignment.push((v.clone(), x));
                let r = classical(structure, body, assignment);
                assignment.pop();
                if r? != universal {
                    return Ok(!universal);
                }
            }
            Ok(universal)
        }
    }
}
