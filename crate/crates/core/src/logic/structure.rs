use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::Read;

use crate::error::{Error, Result};

/// Relation names and their arities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    pub relations: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Relation {
    pub(crate) arity: usize,
    pub(crate) tuples: HashSet<Vec<u32>>,
}

/// A finite relational structure. Elements are opaque tokens; internally
/// they are numbered by their position in the universe list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    universe: Vec<String>,
    index: HashMap<String, u32>,
    relations: BTreeMap<String, Relation>,
}

fn is_element_token(s: &str) -> bool {
    !s.is_empty()
        && !s
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '(' | ')' | ','))
}

impl Structure {
    pub fn new<I, S>(universe: I) -> Result<Structure>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let universe: Vec<String> = universe.into_iter().map(Into::into).collect();
        if universe.is_empty() {
            return Err(Error::Vocabulary("universe must be nonempty".into()));
        }
        let mut index = HashMap::new();
        for (i, e) in universe.iter().enumerate() {
            if !is_element_token(e) {
                return Err(Error::Vocabulary(format!("invalid element token `{e}`")));
            }
            if index.insert(e.clone(), i as u32).is_some() {
                return Err(Error::Vocabulary(format!("duplicate element `{e}`")));
            }
        }
        Ok(Structure {
            universe,
            index,
            relations: BTreeMap::new(),
        })
    }

    pub fn add_relation<T, E>(&mut self, name: &str, arity: usize, tuples: T) -> Result<()>
    where
        T: IntoIterator<Item = Vec<E>>,
        E: AsRef<str>,
    {
        if self.relations.contains_key(name) {
            return Err(Error::Vocabulary(format!("duplicate relation `{name}`")));
        }
        let mut set = HashSet::new();
        for tuple in tuples {
            if tuple.len() != arity {
                return Err(Error::Vocabulary(format!(
                    "tuple of length {} in `{name}/{arity}`",
                    tuple.len()
                )));
            }
            let ids = tuple
                .iter()
                .map(|e| {
                    self.element(e.as_ref()).ok_or_else(|| {
                        Error::Vocabulary(format!("`{}` in `{name}` is not in the universe", e.as_ref()))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            set.insert(ids);
        }
        self.relations
            .insert(name.to_string(), Relation { arity, tuples: set });
        Ok(())
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn size(&self) -> usize {
        self.universe.len()
    }

    pub fn element(&self, token: &str) -> Option<u32> {
        self.index.get(token).copied()
    }

    pub fn element_name(&self, id: u32) -> &str {
        &self.universe[id as usize]
    }

    pub(crate) fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.get(name)
    }

    /// Does the relation hold of the given tuple of element tokens?
    pub fn holds(&self, name: &str, tuple: &[&str]) -> Option<bool> {
        let rel = self.relations.get(name)?;
        let ids: Option<Vec<u32>> = tuple.iter().map(|e| self.element(e)).collect();
        Some(ids.is_some_and(|ids| rel.tuples.contains(&ids)))
    }

    pub fn vocabulary(&self) -> Vocabulary {
        Vocabulary {
            relations: self
                .relations
                .iter()
                .map(|(n, r)| (n.clone(), r.arity))
                .collect(),
        }
    }

    /// Reads the line format:
    ///
    /// ```text
    /// # comment
    /// universe: 0 1
    /// relation P/1: (0)
    /// relation R/2: (0,1) (1,0)
    /// ```
    pub fn load<R: Read>(mut source: R) -> Result<Structure> {
        let mut text = String::new();
        source
            .read_to_string(&mut text)
            .map_err(|e| Error::format(0, e.to_string()))?;
        Structure::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Structure> {
        let mut structure: Option<Structure> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let at = |e: Error| match e {
                Error::Vocabulary(m) => Error::format(line_no, m),
                other => other,
            };
            match &mut structure {
                None => {
                    let rest = line
                        .strip_prefix("universe:")
                        .ok_or_else(|| Error::format(line_no, "expected `universe:` line first"))?;
                    structure = Some(Structure::new(rest.split_whitespace()).map_err(at)?);
                }
                Some(s) => {
                    let rest = line.strip_prefix("relation").ok_or_else(|| {
                        Error::format(line_no, "expected `relation NAME/ARITY: ...`")
                    })?;
                    let (head, body) = rest
                        .split_once(':')
                        .ok_or_else(|| Error::format(line_no, "missing `:` after relation header"))?;
                    let (name, arity) = head
                        .trim()
                        .split_once('/')
                        .ok_or_else(|| Error::format(line_no, "expected NAME/ARITY"))?;
                    let name = name.trim();
                    if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                        return Err(Error::format(line_no, format!("invalid relation name `{name}`")));
                    }
                    let arity: usize = arity
                        .trim()
                        .parse()
                        .map_err(|_| Error::format(line_no, format!("invalid arity `{}`", arity.trim())))?;
                    let tuples = parse_tuples(body).map_err(|m| Error::format(line_no, m))?;
                    s.add_relation(name, arity, tuples).map_err(at)?;
                }
            }
        }
        structure.ok_or_else(|| Error::format(1, "missing `universe:` line"))
    }
}

fn parse_tuples(body: &str) -> std::result::Result<Vec<Vec<String>>, String> {
    let mut out = Vec::new();
    let mut rest = body.trim();
    while !rest.is_empty() {
        let inner_start = rest
            .strip_prefix('(')
            .ok_or_else(|| format!("expected `(` at `{rest}`"))?;
        let close = inner_start
            .find(')')
            .ok_or_else(|| "unclosed tuple".to_string())?;
        let inner = inner_start[..close].trim();
        let tuple = if inner.is_empty() {
            Vec::new()
        } else {
            inner.split(',').map(|e| e.trim().to_string()).collect()
        };
        out.push(tuple);
        rest = inner_start[close + 1..].trim_start();
    }
    Ok(out)
}
