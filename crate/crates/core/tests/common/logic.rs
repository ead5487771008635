//! The small evaluator suite: structures with at most two elements, teams
//! over `{x, y}` with at most three rows, formulas of depth at most two.
//! Also a direct team-semantics evaluator that shares no code with the
//! library.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use gdep::{parse_formula, Formula, Structure, Team, Value, Variable};

pub struct Small {
    pub size: usize,
    pub p: Vec<bool>,
}

impl Small {
    pub fn structure(&self) -> Structure {
        let mut s = Structure::new((0..self.size).map(|i| i.to_string())).unwrap();
        let tuples: Vec<Vec<String>> =
            (0..self.size).filter(|&i| self.p[i]).map(|i| vec![i.to_string()]).collect();
        s.add_relation("P", 1, tuples).unwrap();
        s
    }
}

/// Universes `{0}` and `{0, 1}` with every interpretation of a unary `P`.
pub fn small_structures() -> Vec<Small> {
    let mut out = Vec::new();
    for size in 1..=2usize {
        for mask in 0u32..1 << size {
            out.push(Small {
                size,
                p: (0..size).map(|i| mask >> i & 1 == 1).collect(),
            });
        }
    }
    out
}

pub type Assignment = BTreeMap<String, usize>;

/// Every assignment of `vars` into `0..size`, in a fixed order.
pub fn assignments(size: usize, vars: &[&str]) -> Vec<Assignment> {
    let mut out = vec![Assignment::new()];
    for v in vars {
        out = out
            .into_iter()
            .flat_map(|a| {
                (0..size).map(move |e| {
                    let mut a = a.clone();
                    a.insert(v.to_string(), e);
                    a
                })
            })
            .collect();
    }
    out
}

pub fn to_team(vars: &[&str], rows: &[Assignment]) -> Team {
    let columns = vars.iter().map(|v| Variable::new(*v).unwrap()).collect();
    let data = rows
        .iter()
        .map(|a| vars.iter().map(|v| Value::new(a[*v].to_string()).unwrap()).collect())
        .collect();
    Team::new(columns, data).unwrap()
}

/// Teams over `{x, y}` as bitmasks over `assignments(size, ["x", "y"])`,
/// every mask with at most three bits, the empty team included.
pub fn small_team_masks(size: usize) -> Vec<u32> {
    let n = size * size;
    (0u32..1 << n).filter(|m| m.count_ones() <= 3).collect()
}

pub fn rows_of(all: &[Assignment], mask: u32) -> Vec<Assignment> {
    all.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, a)| a.clone())
        .collect()
}

const ATOMS: &[&str] = &[
    "P(x)",
    "~P(y)",
    "x = y",
    "x != y",
    "gdep(x ; y)",
    "gdep(y ; )",
    "dep(x ; y)",
    "dep( ; x)",
    "~P(z)",
    "y != z",
    "gdep(z ; x)",
    "gdep(x y ; z)",
    "dep(y ; z)",
    "dep( ; z)",
];

pub fn atom_pool() -> Vec<Formula> {
    ATOMS.iter().map(|s| parse_formula(s).unwrap()).collect()
}

fn closed_over_xy(phi: &Formula) -> bool {
    phi.free_vars().iter().all(|v| v.as_str() == "x" || v.as_str() == "y")
}

/// Formulas of depth at most two built from [`atom_pool`], with quantifiers
/// binding `z`, kept when their free variables lie in `{x, y}`. Depth-two
/// conjunctions and disjunctions pair a depth-one formula with an atom.
pub fn small_formulas() -> Vec<Formula> {
    let atoms = atom_pool();
    let z = Variable::new("z").unwrap();
    let mut depth1 = Vec::new();
    for a in &atoms {
        for b in &atoms {
            depth1.push(Formula::and(a.clone(), b.clone()));
            depth1.push(Formula::or(a.clone(), b.clone()));
        }
        depth1.push(Formula::exists(z.clone(), a.clone()));
        depth1.push(Formula::forall(z.clone(), a.clone()));
    }
    let mut seen = HashSet::new();
    let mut depth2 = Vec::new();
    for d in &depth1 {
        for a in &atoms {
            depth2.push(Formula::and(d.clone(), a.clone()));
            depth2.push(Formula::or(d.clone(), a.clone()));
        }
        depth2.push(Formula::exists(z.clone(), d.clone()));
        depth2.push(Formula::forall(z.clone(), d.clone()));
    }
    atoms
        .into_iter()
        .chain(depth1)
        .chain(depth2)
        .filter(closed_over_xy)
        .filter(|f| seen.insert(f.clone()))
        .collect()
}

fn dedup(team: Vec<Assignment>) -> Vec<Assignment> {
    team.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

/// Team semantics by exhaustive search: disjunction over all covers,
/// existentials over all nonempty sets of witnesses per row.
pub fn naive_eval(s: &Small, team: &[Assignment], phi: &Formula) -> bool {
    let team = dedup(team.to_vec());
    match phi {
        Formula::Rel { positive, args, .. } => team.iter().all(|a| s.p[a[args[0].as_str()]] == *positive),
        Formula::Eq { positive, left, right } => {
            team.iter().all(|a| (a[left.as_str()] == a[right.as_str()]) == *positive)
        }
        Formula::GDep(atom) => pairs(&team).all(|(a, b)| {
            let differ = atom.lhs().iter().filter(|v| a[v.as_str()] != b[v.as_str()]).count();
            let agree = atom.rhs().iter().all(|v| a[v.as_str()] == b[v.as_str()]);
            !(differ == 1 && agree)
        }),
        Formula::FDep(atom) => pairs(&team).all(|(a, b)| {
            let same = |vs: &gdep::VarSet| vs.iter().all(|v| a[v.as_str()] == b[v.as_str()]);
            !same(atom.lhs()) || same(atom.rhs())
        }),
        Formula::And(l, r) => naive_eval(s, &team, l) && naive_eval(s, &team, r),
        Formula::Or(l, r) => {
            // each row goes left, right, or both
            let n = team.len() as u32;
            (0..3u32.pow(n)).any(|code| {
                let (mut left, mut right) = (Vec::new(), Vec::new());
                let mut c = code;
                for a in &team {
                    match c % 3 {
                        0 => left.push(a.clone()),
                        1 => right.push(a.clone()),
                        _ => {
                            left.push(a.clone());
                            right.push(a.clone());
                        }
                    }
                    c /= 3;
                }
                naive_eval(s, &left, l) && naive_eval(s, &right, r)
            })
        }
        Formula::Exists(v, body) => {
            let options = (1u32 << s.size) - 1;
            let n = team.len() as u32;
            (0..options.pow(n)).any(|code| {
                let mut c = code;
                let mut out = Vec::new();
                for a in &team {
                    let chosen = c % options + 1;
                    c /= options;
                    for e in 0..s.size {
                        if chosen >> e & 1 == 1 {
                            let mut a = a.clone();
                            a.insert(v.as_str().to_string(), e);
                            out.push(a);
                        }
                    }
                }
                naive_eval(s, &out, body)
            })
        }
        Formula::Forall(v, body) => {
            let mut out = Vec::new();
            for a in &team {
                for e in 0..s.size {
                    let mut a = a.clone();
                    a.insert(v.as_str().to_string(), e);
                    out.push(a);
                }
            }
            naive_eval(s, &out, body)
        }
    }
}

fn pairs(team: &[Assignment]) -> impl Iterator<Item = (&Assignment, &Assignment)> {
    team.iter().flat_map(move |a| team.iter().map(move |b| (a, b)))
}
