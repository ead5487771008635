//! Rewriting between functional-dependence and G-dependence atoms.
//!
//! `dep(x, y)` holds iff `⋈(yᵢ, x)` holds for every `yᵢ ∈ y`, and `⋈(x, y)`
//! holds iff `dep((x − xᵢ) ∪ y, xᵢ)` holds for every `xᵢ ∈ x`. Both
//! rewrites lift to formulas atom by atom.

use std::collections::BTreeSet;

use crate::atoms::{parse_atom, Atom, AtomSet, FAtom, GAtom};
use crate::error::Result;
use crate::logic::{parse_formula, Formula};
use crate::team::{VarSet, Variable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Replace every `dep` atom by G-dependence atoms.
    ToGDep,
    /// Replace every `gdep` atom by functional-dependence atoms.
    ToFDep,
}

pub fn fdep_to_gdeps(atom: &FAtom) -> AtomSet {
    atom.rhs()
        .iter()
        .map(|yi| GAtom::new(VarSet::singleton(yi.clone()), atom.lhs().clone()))
        .collect()
}

pub fn gdep_to_fdeps(atom: &GAtom) -> BTreeSet<FAtom> {
    atom.lhs()
        .iter()
        .map(|xi| FAtom::new(atom.lhs().without(xi).union(atom.rhs()), VarSet::singleton(xi.clone())))
        .collect()
}

/// Replaces dependence atoms of one kind by conjunctions of the other kind.
///
/// An atom whose replacement is the empty conjunction holds in every team.
/// Inside a conjunction it is dropped; elsewhere it becomes `v = v` for a
/// variable `v` in scope at that point.
pub fn rewrite_formula(phi: &Formula, direction: Direction) -> Formula {
    let free = phi.free_vars();
    let mut scope: Vec<Variable> = free.into_iter().collect();
    match rewrite(phi, direction, &mut scope) {
        Some(f) => f,
        None => tautology(phi, &scope),
    }
}

fn tautology(original: &Formula, scope: &[Variable]) -> Formula {
    let own = match original {
        Formula::GDep(a) => a.variables(),
        Formula::FDep(a) => a.variables(),
        _ => VarSet::new(),
    };
    match own.first().or_else(|| scope.last()) {
        Some(v) => Formula::eq(true, v.clone(), v.clone()),
        None => {
            // nothing in scope: quantify a fresh variable
            let fresh = fresh_variable(original);
            Formula::forall(fresh.clone(), Formula::eq(true, fresh.clone(), fresh))
        }
    }
}

fn fresh_variable(phi: &Formula) -> Variable {
    let used = all_variables(phi);
    (0..)
        .map(|i| Variable::new(format!("t{i}")).unwrap())
        .find(|v| !used.contains(v))
        .unwrap()
}

fn all_variables(phi: &Formula) -> VarSet {
    match phi {
        Formula::Exists(v, body) | Formula::Forall(v, body) => {
            let mut out = all_variables(body);
            out.insert(v.clone());
            out
        }
        Formula::And(a, b) | Formula::Or(a, b) => all_variables(a).union(&all_variables(b)),
        other => other.free_vars(),
    }
}

/// `None` stands for an empty conjunction, i.e. a formula true in every team.
fn rewrite(phi: &Formula, direction: Direction, scope: &mut Vec<Variable>) -> Option<Formula> {
    match (phi, direction) {
        (Formula::FDep(a), Direction::ToGDep) => {
            Formula::conjunction(fdep_to_gdeps(a).into_iter().map(Formula::GDep))
        }
        (Formula::GDep(a), Direction::ToFDep) => {
            Formula::conjunction(gdep_to_fdeps(a).into_iter().map(Formula::FDep))
        }
        (Formula::And(a, b), _) => {
            let a2 = rewrite(a, direction, scope);
            let b2 = rewrite(b, direction, scope);
            match (a2, b2) {
                (Some(x), Some(y)) => Some(Formula::and(x, y)),
                (Some(x), None) | (None, Some(x)) => Some(x),
                (None, None) => None,
            }
        }
        (Formula::Or(a, b), _) => {
            let a2 = rewrite(a, direction, scope).unwrap_or_else(|| tautology(a, scope));
            let b2 = rewrite(b, direction, scope).unwrap_or_else(|| tautology(b, scope));
            Some(Formula::or(a2, b2))
        }
        (Formula::Exists(v, body), _) | (Formula::Forall(v, body), _) => {
            scope.push(v.clone());
            let body2 = rewrite(body, direction, scope).unwrap_or_else(|| tautology(body, scope));
            scope.pop();
            Some(match phi {
                Formula::Exists(..) => Formula::exists(v.clone(), body2),
                _ => Formula::forall(v.clone(), body2),
            })
        }
        (other, _) => Some(other.clone()),
    }
}

/// Rewrites text that is either a single atom or a formula.
///
/// An atom becomes its replacement atoms, one per entry, possibly none; an
/// atom already of the target kind is echoed canonically. A formula becomes
/// a single entry.
pub fn translate_text(input: &str, direction: Direction) -> Result<Vec<String>> {
    if let Ok(atom) = parse_atom(input) {
        return Ok(match (atom, direction) {
            (Atom::F(a), Direction::ToGDep) => fdep_to_gdeps(&a).iter().map(|g| g.to_string()).collect(),
            (Atom::G(a), Direction::ToFDep) => gdep_to_fdeps(&a).iter().map(|f| f.to_string()).collect(),
            (other, _) => vec![other.to_string()],
        });
    }
    let phi = parse_formula(input)?;
    Ok(vec![rewrite_formula(&phi, direction).to_string()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;
    use crate::team::{check_fdep, check_gdep, Team};

    fn vs(names: &[&str]) -> VarSet {
        VarSet::from_names(names.iter().copied()).unwrap()
    }

    #[test]
    fn functional_to_g() {
        let out = fdep_to_gdeps(&FAtom::new(vs(&["x"]), vs(&["y0", "y1"])));
        let expected: AtomSet = [
            GAtom::new(vs(&["y0"]), vs(&["x"])),
            GAtom::new(vs(&["y1"]), vs(&["x"])),
        ]
        .into_iter()
        .collect();
        assert_eq!(out, expected);
        assert!(fdep_to_gdeps(&FAtom::new(vs(&["x"]), vs(&[]))).is_empty());
    }

    #[test]
    fn g_to_functional() {
        let out = gdep_to_fdeps(&GAtom::new(vs(&["x0", "x1"]), vs(&["y"])));
        let expected: BTreeSet<FAtom> = [
            FAtom::new(vs(&["x1", "y"]), vs(&["x0"])),
            FAtom::new(vs(&["x0", "y"]), vs(&["x1"])),
        ]
        .into_iter()
        .collect();
        assert_eq!(out, expected);
        assert!(gdep_to_fdeps(&GAtom::new(vs(&[]), vs(&["y"]))).is_empty());
    }

    #[test]
    fn salary_and_figure_two_agree() {
        let salary = Team::from_csv_str(
            "Name,Title,YearsOfExperience,Salary\nJohn,PhD,1,€2200\nMarie,PhD,10,€2200\nPaolo,Professor,5,€3500\nSara,Professor,7,€3500\n",
        )
        .unwrap();
        assert!(check_fdep(&salary, &vs(&["Title"]), &vs(&["Salary"])).unwrap());
        assert!(check_gdep(&salary, &vs(&["Salary"]), &vs(&["Title"])).unwrap());

        let fig2 = Team::from_csv_str("x0,x1,y0,y1\n0,0,0,0\n1,0,1,0\n0,0,0,0\n0,0,0,0\n").unwrap();
        assert!(check_gdep(&fig2, &vs(&["x0"]), &vs(&["y0"])).unwrap());
        assert!(check_fdep(&fig2, &vs(&["y0"]), &vs(&["x0"])).unwrap());
    }

    #[test]
    fn rewrites_inside_quantifier() {
        let phi = parse_formula("E z. (gdep(x ; z) & P(z))").unwrap();
        let out = rewrite_formula(&phi, Direction::ToFDep);
        assert_eq!(out, parse_formula("E z. (dep(z ; x) & P(z))").unwrap());
    }

    #[test]
    fn no_dependence_atoms_is_identity() {
        let phi = parse_formula("A v. (P(v) | v != w)").unwrap();
        assert_eq!(rewrite_formula(&phi, Direction::ToFDep), phi);
        assert_eq!(rewrite_formula(&phi, Direction::ToGDep), phi);
    }

    #[test]
    fn text_inputs() {
        assert_eq!(translate_text("dep(x ; y0 y1)", Direction::ToGDep).unwrap(), ["gdep(y0 ; x)", "gdep(y1 ; x)"]);
        assert_eq!(translate_text("dep(x ; y)", Direction::ToFDep).unwrap(), ["dep(x ; y)"]);
        assert!(translate_text("dep(x ; )", Direction::ToGDep).unwrap().is_empty());
        assert_eq!(translate_text("gdep(x ; z) | P(x)", Direction::ToFDep).unwrap(), ["dep(z ; x) | P(x)"]);
        assert!(translate_text("gdep(x ; ", Direction::ToFDep).is_err());
    }

    #[test]
    fn empty_conjunctions() {
        let phi = parse_formula("P(x) & dep(x ; )").unwrap();
        assert_eq!(rewrite_formula(&phi, Direction::ToGDep), parse_formula("P(x)").unwrap());
        let phi = parse_formula("dep(x ; ) | P(y)").unwrap();
        assert_eq!(rewrite_formula(&phi, Direction::ToGDep), parse_formula("x = x | P(y)").unwrap());
        let phi = parse_formula("gdep( ; )").unwrap();
        assert_eq!(rewrite_formula(&phi, Direction::ToFDep), parse_formula("A t0. t0 = t0").unwrap());
        let phi = parse_formula("E z. gdep( ; )").unwrap();
        assert_eq!(rewrite_formula(&phi, Direction::ToFDep), parse_formula("E z. z = z").unwrap());
    }
}
