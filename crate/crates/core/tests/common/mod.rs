#![allow(dead_code)]

pub mod logic;

use std::path::PathBuf;

use gdep::{GAtom, Team, Value, VarSet, Variable};
use proptest::prelude::*;

pub fn vs(names: &[&str]) -> VarSet {
    VarSet::from_names(names.iter().copied()).unwrap()
}

pub fn g(lhs: &[&str], rhs: &[&str]) -> GAtom {
    GAtom::new(vs(lhs), vs(rhs))
}

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn columns(n: usize) -> Vec<Variable> {
    (0..n).map(|i| Variable::new(format!("c{i}")).unwrap()).collect()
}

/// Members of `vars` selected by the bits of `mask`.
pub fn pick(vars: &[Variable], mask: u32) -> VarSet {
    vars.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, v)| v.clone())
        .collect()
}

pub fn team_from_cells(cols: &[Variable], cells: &[Vec<u8>]) -> Team {
    let rows = cells
        .iter()
        .map(|r| r.iter().map(|c| Value::new(c.to_string()).unwrap()).collect())
        .collect();
    Team::new(cols.to_vec(), rows).unwrap()
}

/// Every two-row binary team over `vars` in the canonical form: row 0 all
/// zeros, row 1 equal to 1 on the differing set. Every two-row team is
/// equivalent to one of these for atom satisfaction.
pub fn two_row_binary_teams(vars: &[Variable]) -> Vec<Team> {
    (0u32..1 << vars.len())
        .map(|mask| {
            let row1: Vec<u8> = (0..vars.len()).map(|i| (mask >> i & 1) as u8).collect();
            team_from_cells(vars, &[vec![0; vars.len()], row1])
        })
        .collect()
}

/// A team with 1..=max_cols columns, 0..=max_rows rows, values below `values`.
pub fn arb_team(max_cols: usize, max_rows: usize, values: u8) -> impl Strategy<Value = Team> {
    (1..=max_cols).prop_flat_map(move |k| {
        prop::collection::vec(prop::collection::vec(0..values, k), 0..=max_rows)
            .prop_map(move |cells| team_from_cells(&columns(k), &cells))
    })
}

/// A team together with an atom over its columns, as bitmasks.
pub fn arb_team_and_sides(max_cols: usize, max_rows: usize, values: u8) -> impl Strategy<Value = (Team, VarSet, VarSet)> {
    arb_team(max_cols, max_rows, values).prop_flat_map(|t| {
        let k = t.columns().len() as u32;
        (Just(t), 0u32..1 << k, 0u32..1 << k).prop_map(|(t, a, b)| {
            let cols = t.columns().to_vec();
            (t, pick(&cols, a), pick(&cols, b))
        })
    })
}

pub fn mask_of(vars: &[Variable], s: &VarSet) -> u32 {
    vars.iter()
        .enumerate()
        .filter(|(_, v)| s.contains(v))
        .fold(0, |m, (i, _)| m | 1 << i)
}

/// G-dependence on a two-row team whose rows differ exactly on `d`: it fails
/// iff the rows differ on exactly one member of `x` and agree on `y`.
pub fn two_row_holds(d: u32, x: u32, y: u32) -> bool {
    !((d & x).count_ones() == 1 && d & y == 0)
}

/// Entailment by enumerating every differing set over `vars`; written
/// against bitmasks so it shares no code with the library.
pub fn oracle_entails(vars: &[Variable], sigma: &gdep::AtomSet, goal: &GAtom) -> bool {
    let premises: Vec<(u32, u32)> = sigma
        .iter()
        .map(|a| (mask_of(vars, a.lhs()), mask_of(vars, a.rhs())))
        .collect();
    let (gx, gy) = (mask_of(vars, goal.lhs()), mask_of(vars, goal.rhs()));
    (0u32..1 << vars.len()).all(|d| {
        !premises.iter().all(|&(x, y)| two_row_holds(d, x, y)) || two_row_holds(d, gx, gy)
    })
}

/// G-dependence straight from the definition, over all ordered row pairs.
pub fn naive_gdep(team: &Team, x: &VarSet, y: &VarSet) -> bool {
    let rows = team.rows();
    for s in 0..rows.len() {
        for t in 0..rows.len() {
            let cell = |r: usize, v: &Variable| &rows[r][team.column_of(v).unwrap()];
            let differing = x.iter().filter(|v| cell(s, v) != cell(t, v)).count();
            let agree = y.iter().all(|v| cell(s, v) == cell(t, v));
            if differing == 1 && agree {
                return false;
            }
        }
    }
    true
}

pub fn naive_fdep(team: &Team, x: &VarSet, y: &VarSet) -> bool {
    let rows = team.rows();
    let cell = |r: usize, v: &Variable| &rows[r][team.column_of(v).unwrap()];
    (0..rows.len()).all(|s| {
        (0..rows.len()).all(|t| !x.iter().all(|v| cell(s, v) == cell(t, v)) || y.iter().all(|v| cell(s, v) == cell(t, v)))
    })
}

/// All single-antecedent atoms over `vars`, trivial ones included.
pub fn single_antecedent_atoms(vars: &[Variable]) -> Vec<GAtom> {
    let mut out = Vec::new();
    for v in vars {
        for w in 0u32..1 << vars.len() {
            out.push(GAtom::new(VarSet::singleton(v.clone()), pick(vars, w)));
        }
    }
    out
}

/// Goals whose antecedent has one or two variables.
pub fn small_goals(vars: &[Variable]) -> Vec<GAtom> {
    let mut out = Vec::new();
    for x in 1u32..1 << vars.len() {
        if x.count_ones() > 2 {
            continue;
        }
        for y in 0u32..1 << vars.len() {
            out.push(GAtom::new(pick(vars, x), pick(vars, y)));
        }
    }
    out
}

/// Every subset of `items` with at most `k` members.
pub fn subsets_up_to<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(items: &[T], start: usize, k: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        out.push(cur.clone());
        if cur.len() == k {
            return;
        }
        for i in start..items.len() {
            cur.push(items[i].clone());
            go(items, i + 1, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, 0, k, &mut Vec::new(), &mut out);
    out
}

pub fn arb_atom_set(vars: usize, max_atoms: usize, max_lhs: usize) -> impl Strategy<Value = gdep::AtomSet> {
    prop::collection::vec((1u32..1 << vars, 0u32..1 << vars), 0..=max_atoms).prop_map(move |ms| {
        let cols = columns(vars);
        ms.into_iter()
            .map(|(x, y)| {
                // trim the antecedent to at most max_lhs members
                let x: VarSet = pick(&cols, x).iter().take(max_lhs).cloned().collect();
                GAtom::new(x, pick(&cols, y))
            })
            .collect()
    })
}

pub fn arb_goal(vars: usize, max_lhs: usize) -> impl Strategy<Value = GAtom> {
    (1u32..1 << vars, 0u32..1 << vars).prop_map(move |(x, y)| {
        let cols = columns(vars);
        GAtom::new(pick(&cols, x).iter().take(max_lhs).cloned().collect(), pick(&cols, y))
    })
}
