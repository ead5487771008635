//! Teams: finite indexed multisets of assignments, stored as a table whose
//! rows may repeat. This module owns the CSV dialect and the pairwise
//! semantic checks for G-dependence and functional dependence.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::io::{Read, Write};

use crate::atoms::{FAtom, GAtom};
use crate::error::{Error, Result};

fn is_token(s: &str) -> bool {
    !s.is_empty()
        && !s
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ';' | '(' | ')' | ','))
}

/// An attribute name. Compared by exact string equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(String);

impl Variable {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if is_token(&name) {
            Ok(Variable(name))
        } else {
            Err(Error::InvalidVariable(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite set of variables. Iteration and printing are in lexicographic order.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarSet(BTreeSet<Variable>);

impl VarSet {
    pub fn new() -> Self {
        VarSet(BTreeSet::new())
    }

    pub fn singleton(v: Variable) -> Self {
        VarSet(BTreeSet::from([v]))
    }

    /// Builds a set from names, validating each one.
    pub fn from_names<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        names
            .into_iter()
            .map(Variable::new)
            .collect::<Result<BTreeSet<_>>>()
            .map(VarSet)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: &Variable) -> bool {
        self.0.contains(v)
    }

    pub fn insert(&mut self, v: Variable) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: &Variable) -> bool {
        self.0.remove(v)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Variable> + ExactSizeIterator + Clone {
        self.0.iter()
    }

    pub fn first(&self) -> Option<&Variable> {
        self.0.first()
    }

    pub fn union(&self, other: &VarSet) -> VarSet {
        VarSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn difference(&self, other: &VarSet) -> VarSet {
        VarSet(self.0.difference(&other.0).cloned().collect())
    }

    pub fn intersection(&self, other: &VarSet) -> VarSet {
        VarSet(self.0.intersection(&other.0).cloned().collect())
    }

    pub fn without(&self, v: &Variable) -> VarSet {
        let mut out = self.clone();
        out.0.remove(v);
        out
    }

    pub fn is_subset(&self, other: &VarSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &VarSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    /// All subsets, ordered by size and then lexicographically. Callers bound
    /// the size of `self` before calling.
    pub fn subsets(&self) -> Vec<VarSet> {
        let members: Vec<&Variable> = self.0.iter().collect();
        let mut out: Vec<VarSet> = (0u64..1 << members.len())
            .map(|mask| {
                VarSet(
                    members
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, v)| (*v).clone())
                        .collect(),
                )
            })
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

impl FromIterator<Variable> for VarSet {
    fn from_iter<T: IntoIterator<Item = Variable>>(iter: T) -> Self {
        VarSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a VarSet {
    type Item = &'a Variable;
    type IntoIter = std::collections::btree_set::Iter<'a, Variable>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl IntoIterator for VarSet {
    type Item = Variable;
    type IntoIter = std::collections::btree_set::IntoIter<Variable>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// An opaque cell value. Equality is exact string equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Value(String);

impl Value {
    pub fn new(repr: impl Into<String>) -> Result<Self> {
        let repr = repr.into();
        if repr.is_empty() || repr.chars().any(|c| c.is_whitespace() || c == ',') {
            return Err(Error::Contract(format!("invalid value token `{repr}`")));
        }
        Ok(Value(repr))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A team: a domain of variables and an ordered list of total rows over it.
///
/// Row `i` has index `i`. Duplicate rows are kept. Column order is the order
/// the domain was declared in, which is what CSV emission reproduces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Team {
    columns: Vec<Variable>,
    index: HashMap<Variable, usize>,
    rows: Vec<Vec<Value>>,
}

impl Team {
    pub fn new(columns: Vec<Variable>, rows: Vec<Vec<Value>>) -> Result<Self> {
        let mut index = HashMap::with_capacity(columns.len());
        for (i, v) in columns.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::format(1, format!("duplicate variable `{v}`")));
            }
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != columns.len() {
                return Err(Error::format(
                    i + 2,
                    format!("row has {} cells, expected {}", row.len(), columns.len()),
                ));
            }
        }
        Ok(Team {
            columns,
            index,
            rows,
        })
    }

    /// Convenience constructor from string slices.
    pub fn from_str_rows(header: &[&str], rows: &[&[&str]]) -> Result<Self> {
        let columns = header
            .iter()
            .map(|h| Variable::new(*h))
            .collect::<Result<Vec<_>>>()?;
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|c| Value::new(*c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Team::new(columns, rows)
    }

    /// The team with an empty domain and no rows.
    pub fn empty() -> Self {
        Team {
            columns: Vec::new(),
            index: HashMap::new(),
            rows: Vec::new(),
        }
    }

    pub fn columns(&self) -> &[Variable] {
        &self.columns
    }

    pub fn domain(&self) -> VarSet {
        self.columns.iter().cloned().collect()
    }

    pub fn rows(&self) -> &[Vec<Value>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column_of(&self, v: &Variable) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn value(&self, row: usize, v: &Variable) -> Option<&Value> {
        let c = self.column_of(v)?;
        self.rows.get(row).map(|r| &r[c])
    }

    fn column_indices(&self, vars: &VarSet) -> Result<Vec<usize>> {
        vars.iter()
            .map(|v| {
                self.column_of(v)
                    .ok_or_else(|| Error::MissingVariable(v.to_string()))
            })
            .collect()
    }

    /// The subteam made of the given row indices, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> Team {
        Team {
            columns: self.columns.clone(),
            index: self.index.clone(),
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    /// The duplicate-free companion: first occurrence of each row, in order.
    pub fn dedup(&self) -> Team {
        let mut seen = std::collections::HashSet::new();
        let rows = self
            .rows
            .iter()
            .filter(|r| seen.insert(*r))
            .cloned()
            .collect();
        Team {
            columns: self.columns.clone(),
            index: self.index.clone(),
            rows,
        }
    }

    /// Reads a team from the comma-separated dialect: a header of distinct
    /// variable names, then one row per line. No quoting; cells are bare
    /// tokens and surrounding whitespace is rejected.
    pub fn load<R: Read>(source: R) -> Result<Team> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .quoting(false)
            .flexible(true)
            .from_reader(source);
        let mut columns: Option<Vec<Variable>> = None;
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line() as usize);
                Error::format(line, e.to_string())
            })?;
            let line = record.position().map_or(0, |p| p.line() as usize);
            let cells: Vec<&str> = record.iter().collect();
            for cell in &cells {
                if cell.trim() != *cell {
                    return Err(Error::format(line, format!("whitespace around cell `{cell}`")));
                }
                if cell.is_empty() {
                    return Err(Error::format(line, "empty cell"));
                }
            }
            match &columns {
                None => {
                    let mut header = Vec::with_capacity(cells.len());
                    for cell in cells {
                        let v = Variable::new(cell)
                            .map_err(|e| Error::format(line, e.to_string()))?;
                        if header.contains(&v) {
                            return Err(Error::format(line, format!("duplicate variable `{v}`")));
                        }
                        header.push(v);
                    }
                    columns = Some(header);
                }
                Some(header) => {
                    if cells.len() != header.len() {
                        return Err(Error::format(
                            line,
                            format!("row has {} cells, expected {}", cells.len(), header.len()),
                        ));
                    }
                    let row = cells
                        .into_iter()
                        .map(|c| Value::new(c).map_err(|e| Error::format(line, e.to_string())))
                        .collect::<Result<Vec<_>>>()?;
                    rows.push(row);
                }
            }
        }
        let columns = columns.ok_or_else(|| Error::format(1, "missing header"))?;
        Team::new(columns, rows)
    }

    pub fn from_csv_str(text: &str) -> Result<Team> {
        Team::load(text.as_bytes())
    }

    /// Writes the team in the dialect read by [`Team::load`].
    pub fn emit<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let header: Vec<&str> = self.columns.iter().map(Variable::as_str).collect();
        writeln!(out, "{}", header.join(","))?;
        for row in &self.rows {
            let cells: Vec<&str> = row.iter().map(Value::as_str).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.emit(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("team cells are UTF-8")
    }

    pub fn satisfies_gdep(&self, atom: &GAtom) -> Result<bool> {
        check_gdep(self, atom.lhs(), atom.rhs())
    }

    pub fn satisfies_fdep(&self, atom: &FAtom) -> Result<bool> {
        check_fdep(self, atom.lhs(), atom.rhs())
    }
}

/// Pairwise G-dependence check over rows given as column-indexed slices.
///
/// Fails iff some pair of rows differs on exactly one `lhs` column and
/// agrees on every `rhs` column.
pub(crate) fn gdep_holds<T: PartialEq, R: AsRef<[T]>>(rows: &[R], lhs: &[usize], rhs: &[usize]) -> bool {
    if lhs.is_empty() {
        return true;
    }
    for (i, a) in rows.iter().enumerate() {
        let a = a.as_ref();
        for b in &rows[i + 1..] {
            let b = b.as_ref();
            let mut differing = 0;
            for &c in lhs {
                if a[c] != b[c] {
                    differing += 1;
                    if differing > 1 {
                        break;
                    }
                }
            }
            if differing == 1 && rhs.iter().all(|&c| a[c] == b[c]) {
                return false;
            }
        }
    }
    true
}

/// Pairwise functional-dependence check: rows agreeing on `lhs` agree on `rhs`.
pub(crate) fn fdep_holds<T: PartialEq, R: AsRef<[T]>>(rows: &[R], lhs: &[usize], rhs: &[usize]) -> bool {
    for (i, a) in rows.iter().enumerate() {
        let a = a.as_ref();
        for b in &rows[i + 1..] {
            let b = b.as_ref();
            if lhs.iter().all(|&c| a[c] == b[c]) && rhs.iter().any(|&c| a[c] != b[c]) {
                return false;
            }
        }
    }
    true
}

/// Does `y` G-depend on `x` in `team`?
pub fn check_gdep(team: &Team, x: &VarSet, y: &VarSet) -> Result<bool> {
    let lhs = team.column_indices(x)?;
    let rhs = team.column_indices(y)?;
    Ok(gdep_holds(&team.rows, &lhs, &rhs))
}

/// Does `y` functionally depend on `x` in `team`?
pub fn check_fdep(team: &Team, x: &VarSet, y: &VarSet) -> Result<bool> {
    let lhs = team.column_indices(x)?;
    let rhs = team.column_indices(y)?;
    Ok(fdep_holds(&team.rows, &lhs, &rhs))
}

/// Largest number of candidate right-hand-side columns [`mine_gdeps`] will
/// enumerate subsets of.
pub const MINE_MAX_RHS_COLUMNS: usize = 20;

/// Lists every G-dependence `⋈(x, y)` holding in `team` with
/// `1 <= |x| <= max_lhs`, `x ∩ y = ∅` and `y` minimal for its `x`.
///
/// For a fixed `x`, `y` works iff it meets the set of differing columns of
/// every row pair that differs on exactly one member of `x`, so the minimal
/// right-hand sides are the minimal transversals of those sets.
pub fn mine_gdeps(team: &Team, max_lhs: usize) -> Result<Vec<GAtom>> {
    if max_lhs == 0 {
        return Err(Error::Contract("antecedent bound must be at least 1".into()));
    }
    let vars: Vec<Variable> = team.domain().into_iter().collect();
    let n = vars.len();
    if n > 64 {
        return Err(Error::size("mine (domain columns)", 64, n as u128));
    }
    let cols: Vec<usize> = vars.iter().map(|v| team.column_of(v).unwrap()).collect();
    // diff[s][t] bitmask of differing columns, in sorted-variable bit order
    let rows = team.rows();
    let mut diffs: Vec<u64> = Vec::new();
    for (i, a) in rows.iter().enumerate() {
        for b in &rows[i + 1..] {
            let mut mask = 0u64;
            for (bit, &c) in cols.iter().enumerate() {
                if a[c] != b[c] {
                    mask |= 1 << bit;
                }
            }
            diffs.push(mask);
        }
    }
    diffs.sort_unstable();
    diffs.dedup();

    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let to_set = |mask: u64| -> VarSet {
        (0..n)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| vars[b].clone())
            .collect()
    };

    let mut out = Vec::new();
    for size in 1..=max_lhs.min(n) {
        for lhs in masks_of_size(n, size) {
            let rest = full & !lhs;
            let rest_bits = rest.count_ones() as usize;
            if rest_bits > MINE_MAX_RHS_COLUMNS {
                return Err(Error::size(
                    "mine (candidate right-hand-side columns)",
                    MINE_MAX_RHS_COLUMNS as u128,
                    rest_bits as u128,
                ));
            }
            let mut must_hit: Vec<u64> = diffs
                .iter()
                .filter(|&&d| (d & lhs).count_ones() == 1)
                .map(|&d| d & rest)
                .collect();
            if must_hit.contains(&0) {
                continue;
            }
            must_hit.sort_unstable();
            must_hit.dedup();
            let minimal = minimal_transversals(rest, &must_hit);
            for rhs in minimal {
                out.push(GAtom::new(to_set(lhs), to_set(rhs)));
            }
        }
    }
    out.sort();
    Ok(out)
}

fn masks_of_size(n: usize, size: usize) -> Vec<u64> {
    (0u64..1 << n).filter(|m| m.count_ones() as usize == size).collect()
}

/// Minimal subsets of `universe` meeting every mask in `sets`, by increasing size.
fn minimal_transversals(universe: u64, sets: &[u64]) -> Vec<u64> {
    let bits: Vec<u32> = (0..64).filter(|b| universe >> b & 1 == 1).collect();
    let mut found: Vec<u64> = Vec::new();
    let mut candidates: Vec<u64> = (0u64..1 << bits.len())
        .map(|local| {
            bits.iter()
                .enumerate()
                .filter(|(i, _)| local >> i & 1 == 1)
                .fold(0u64, |m, (_, &b)| m | 1 << b)
        })
        .collect();
    candidates.sort_by_key(|m| m.count_ones());
    for cand in candidates {
        if found.iter().any(|&f| f & !cand == 0) {
            continue;
        }
        if sets.iter().all(|&s| s & cand != 0) {
            found.push(cand);
        }
    }
    found
}
