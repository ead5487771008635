//! Recursive-descent parser for formulas.
//!
//! ```text
//! formula := disj
//! disj    := conj ("|" conj)*
//! conj    := unit ("&" unit)*
//! unit    := "E" var "." unit | "A" var "." unit | "(" formula ")" | atom
//! atom    := "~"? name "(" var ("," var)* ")" | "~"? var ("=" | "!=") var
//!          | "gdep(" var* ";" var* ")" | "dep(" var* ";" var* ")"
//! ```

use crate::atoms::{FAtom, GAtom};
use crate::error::{Error, Result};
use crate::logic::Formula;
use crate::team::{VarSet, Variable};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Semi,
    Dot,
    Amp,
    Bar,
    Tilde,
    Eq,
    Neq,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Semi => "`;`".into(),
        Tok::Dot => "`.`".into(),
        Tok::Amp => "`&`".into(),
        Tok::Bar => "`|`".into(),
        Tok::Tilde => "`~`".into(),
        Tok::Eq => "`=`".into(),
        Tok::Neq => "`!=`".into(),
        Tok::End => "end of input".into(),
    }
}

fn is_ident_char(c: char) -> bool {
    !c.is_whitespace() && !"(),;.&|~=!".contains(c)
}

/// Tokens paired with their 1-based character column.
fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '.' => Tok::Dot,
            '&' => Tok::Amp,
            '|' => Tok::Bar,
            '~' => Tok::Tilde,
            '=' => Tok::Eq,
            '!' => {
                if chars.get(i + 1) == Some(&'=') {
                    i += 1;
                    Tok::Neq
                } else {
                    return Err(Error::syntax(col, "expected `!=`"));
                }
            }
            _ => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
                continue;
            }
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> Error {
        Error::syntax(self.column(), format!("expected {wanted}, found {}", describe(self.peek())))
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&describe(&t)))
        }
    }

    fn var(&mut self) -> Result<Variable> {
        let col = self.column();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Variable::new(name).map_err(|e| Error::syntax(col, e.to_string()))
            }
            _ => Err(self.unexpected("a variable")),
        }
    }

    fn disj(&mut self) -> Result<Formula> {
        let mut left = self.conj()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            let right = self.conj()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn conj(&mut self) -> Result<Formula> {
        let mut left = self.unit()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let right = self.unit()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn is_quantifier(&self) -> bool {
        matches!(self.peek(), Tok::Ident(q) if q == "E" || q == "A")
            && matches!(self.peek_at(1), Tok::Ident(_))
            && *self.peek_at(2) == Tok::Dot
    }

    fn unit(&mut self) -> Result<Formula> {
        if self.is_quantifier() {
            let universal = matches!(self.bump(), Tok::Ident(q) if q == "A");
            let v = self.var()?;
            self.expect(Tok::Dot)?;
            let body = self.unit()?;
            return Ok(if universal {
                Formula::forall(v, body)
            } else {
                Formula::exists(v, body)
            });
        }
        match self.peek() {
            Tok::LParen => {
                self.bump();
                let inner = self.disj()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Tilde => {
                let col = self.column();
                self.bump();
                let negated = self.literal(false)?;
                negated.ok_or_else(|| Error::syntax(col, "negation only on literals"))
            }
            _ => match self.literal(true)? {
                Some(f) => Ok(f),
                None => self.dependence_atom(),
            },
        }
    }

    /// A relational or identity literal, or `None` when the input does not
    /// start one (so the caller can try a dependence atom or report misuse
    /// of `~`).
    fn literal(&mut self, positive: bool) -> Result<Option<Formula>> {
        let Tok::Ident(name) = self.peek().clone() else {
            return Ok(None);
        };
        match self.peek_at(1) {
            Tok::LParen if name == "gdep" || name == "dep" => Ok(None),
            Tok::LParen => {
                self.bump();
                self.bump();
                let mut args = Vec::new();
                if *self.peek() != Tok::RParen {
                    args.push(self.var()?);
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        args.push(self.var()?);
                    }
                }
                self.expect(Tok::RParen)?;
                Ok(Some(Formula::rel(positive, name, args)))
            }
            Tok::Eq | Tok::Neq => {
                let left = self.var()?;
                let equal = self.bump() == Tok::Eq;
                let right = self.var()?;
                Ok(Some(Formula::eq(equal == positive, left, right)))
            }
            _ => Ok(None),
        }
    }

    fn dependence_atom(&mut self) -> Result<Formula> {
        let functional = match self.peek() {
            Tok::Ident(k) if k == "gdep" => false,
            Tok::Ident(k) if k == "dep" => true,
            _ => return Err(self.unexpected("a formula")),
        };
        self.bump();
        self.expect(Tok::LParen)?;
        let lhs = self.var_list(Tok::Semi)?;
        let rhs = self.var_list(Tok::RParen)?;
        Ok(if functional {
            Formula::FDep(FAtom::new(lhs, rhs))
        } else {
            Formula::GDep(GAtom::new(lhs, rhs))
        })
    }

    fn var_list(&mut self, stop: Tok) -> Result<VarSet> {
        let mut out = VarSet::new();
        loop {
            if *self.peek() == stop {
                self.bump();
                return Ok(out);
            }
            match self.peek() {
                Tok::Ident(_) => {
                    out.insert(self.var()?);
                }
                _ => return Err(self.unexpected(&format!("a variable or {}", describe(&stop)))),
            }
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = p.disj()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("end of input"));
    }
    Ok(f)
}
