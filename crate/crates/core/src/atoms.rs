//! Dependence atoms, their textual syntax, and reduction of G-dependence
//! atoms to single-antecedent form.
//!
//! Syntax: `gdep(x0 x1 ; y0)` and `dep(Title ; Salary)`. Names inside a side
//! are whitespace-separated and repeated names collapse. Either side may be
//! empty.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::team::{VarSet, Variable};

/// G-dependence atom `⋈(lhs, rhs)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GAtom {
    lhs: VarSet,
    rhs: VarSet,
}

impl GAtom {
    pub fn new(lhs: VarSet, rhs: VarSet) -> Self {
        GAtom { lhs, rhs }
    }

    pub fn lhs(&self) -> &VarSet {
        &self.lhs
    }

    pub fn rhs(&self) -> &VarSet {
        &self.rhs
    }

    pub fn variables(&self) -> VarSet {
        self.lhs.union(&self.rhs)
    }

    /// The single left-hand variable, if there is exactly one.
    pub fn single_antecedent(&self) -> Option<&Variable> {
        if self.lhs.len() == 1 {
            self.lhs.first()
        } else {
            None
        }
    }

    pub fn parse(text: &str) -> Result<GAtom> {
        match parse_atom(text)? {
            Atom::G(a) => Ok(a),
            Atom::F(_) => Err(Error::syntax(1, "expected a gdep atom, found dep")),
        }
    }
}

impl fmt::Display for GAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gdep({} ; {})", self.lhs, self.rhs)
    }
}

/// Functional-dependence atom `dep(lhs, rhs)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FAtom {
    lhs: VarSet,
    rhs: VarSet,
}

impl FAtom {
    pub fn new(lhs: VarSet, rhs: VarSet) -> Self {
        FAtom { lhs, rhs }
    }

    pub fn lhs(&self) -> &VarSet {
        &self.lhs
    }

    pub fn rhs(&self) -> &VarSet {
        &self.rhs
    }

    pub fn variables(&self) -> VarSet {
        self.lhs.union(&self.rhs)
    }
}

impl fmt::Display for FAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dep({} ; {})", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    G(GAtom),
    F(FAtom),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::G(a) => a.fmt(f),
            Atom::F(a) => a.fmt(f),
        }
    }
}

/// A deduplicated set of G-dependence atoms, iterated in canonical order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct AtomSet(BTreeSet<GAtom>);

impl AtomSet {
    pub fn new() -> Self {
        AtomSet(BTreeSet::new())
    }

    pub fn insert(&mut self, atom: GAtom) -> bool {
        self.0.insert(atom)
    }

    pub fn contains(&self, atom: &GAtom) -> bool {
        self.0.contains(atom)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &GAtom> + ExactSizeIterator + Clone {
        self.0.iter()
    }

    pub fn variables(&self) -> VarSet {
        self.0
            .iter()
            .flat_map(|a| a.lhs.iter().chain(a.rhs.iter()))
            .cloned()
            .collect()
    }

    /// Parses an atom-set file: one `gdep(...)` atom per line, `#` starts a
    /// comment line, blank lines are ignored.
    pub fn parse(text: &str) -> Result<AtomSet> {
        let mut out = AtomSet::new();
        for (i, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let atom = match parse_atom(trimmed) {
                Ok(Atom::G(a)) => a,
                Ok(Atom::F(a)) => {
                    return Err(Error::format(
                        i + 1,
                        format!("`{a}` is a functional-dependence atom; atom sets hold gdep atoms (see `translate`)"),
                    ))
                }
                Err(e) => return Err(Error::format(i + 1, e.to_string())),
            };
            out.insert(atom);
        }
        Ok(out)
    }
}

impl FromIterator<GAtom> for AtomSet {
    fn from_iter<T: IntoIterator<Item = GAtom>>(iter: T) -> Self {
        AtomSet(iter.into_iter().collect())
    }
}

impl IntoIterator for AtomSet {
    type Item = GAtom;
    type IntoIter = std::collections::btree_set::IntoIter<GAtom>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a AtomSet {
    type Item = &'a GAtom;
    type IntoIter = std::collections::btree_set::Iter<'a, GAtom>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl Extend<GAtom> for AtomSet {
    fn extend<T: IntoIterator<Item = GAtom>>(&mut self, iter: T) {
        self.0.extend(iter)
    }
}

impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.0 {
            writeln!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Splits `⋈(x, y)` into `{ ⋈(xᵢ, (x − xᵢ) ∪ y) : xᵢ ∈ x }`. An empty
/// antecedent yields the empty set, since such atoms hold in every team.
pub fn normalize(atom: &GAtom) -> AtomSet {
    atom.lhs
        .iter()
        .map(|xi| GAtom::new(VarSet::singleton(xi.clone()), atom.lhs.without(xi).union(&atom.rhs)))
        .collect()
}

pub fn normalize_set(sigma: &AtomSet) -> AtomSet {
    sigma.iter().flat_map(normalize).collect()
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn column(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::syntax(self.column(), format!("expected `{c}`")))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let end = rest
            .find(|c: char| c.is_whitespace() || matches!(c, ';' | '(' | ')' | ','))
            .unwrap_or(rest.len());
        self.pos += end;
        &rest[..end]
    }

    fn names_until(&mut self, stop: char) -> Result<VarSet> {
        let mut out = VarSet::new();
        loop {
            if self.eat(stop) {
                return Ok(out);
            }
            let col = self.column();
            let w = self.word();
            if w.is_empty() {
                return Err(Error::syntax(col, format!("expected variable name or `{stop}`")));
            }
            out.insert(Variable::new(w).map_err(|e| Error::syntax(col, e.to_string()))?);
        }
    }
}

/// Parses `gdep(x* ; y*)` or `dep(x* ; y*)`.
pub fn parse_atom(text: &str) -> Result<Atom> {
    let mut cur = Cursor { text, pos: 0 };
    let col = {
        cur.skip_ws();
        cur.column()
    };
    let kind = cur.word();
    if kind != "gdep" && kind != "dep" {
        return Err(Error::syntax(col, "expected `gdep` or `dep`"));
    }
    cur.expect('(')?;
    let lhs = cur.names_until(';')?;
    let rhs = cur.names_until(')')?;
    cur.skip_ws();
    if cur.pos != text.len() {
        return Err(Error::syntax(cur.column(), "unexpected trailing input"));
    }
    Ok(if kind == "gdep" {
        Atom::G(GAtom::new(lhs, rhs))
    } else {
        Atom::F(FAtom::new(lhs, rhs))
    })
}
