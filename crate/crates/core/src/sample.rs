//! Seeded random generators for teams and atoms, shared by the randomized
//! validation suites and the `validate` command.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::atoms::{AtomSet, GAtom};
use crate::team::{Team, Value, VarSet, Variable};

/// Variables `v0 .. v{n-1}`.
pub fn variables(n: usize) -> Vec<Variable> {
    (0..n).map(|i| Variable::new(format!("v{i}")).unwrap()).collect()
}

/// A team over `columns` with `rows` rows and values drawn from `0..values`.
pub fn team<R: Rng>(rng: &mut R, columns: &[Variable], rows: usize, values: u32) -> Team {
    let data = (0..rows)
        .map(|_| {
            columns
                .iter()
                .map(|_| Value::new(rng.gen_range(0..values).to_string()).unwrap())
                .collect()
        })
        .collect();
    Team::new(columns.to_vec(), data).expect("distinct columns")
}

/// A random subset of `vars`, each member included with probability `p`.
pub fn subset<R: Rng>(rng: &mut R, vars: &[Variable], p: f64) -> VarSet {
    vars.iter().filter(|_| rng.gen_bool(p)).cloned().collect()
}

/// An atom with between `min_lhs` and `max_lhs` antecedent variables and a
/// random right-hand side.
pub fn gatom<R: Rng>(rng: &mut R, vars: &[Variable], min_lhs: usize, max_lhs: usize) -> GAtom {
    let k = rng.gen_range(min_lhs..=max_lhs.min(vars.len()).max(min_lhs));
    let lhs: VarSet = vars.choose_multiple(rng, k).cloned().collect();
    let rhs = subset(rng, vars, 0.35);
    GAtom::new(lhs, rhs)
}

/// Up to `max_atoms` random atoms.
pub fn atom_set<R: Rng>(rng: &mut R, vars: &[Variable], max_atoms: usize, max_lhs: usize) -> AtomSet {
    let n = rng.gen_range(0..=max_atoms);
    (0..n).map(|_| gatom(rng, vars, 1, max_lhs)).collect()
}
