//! Propositional formulas over a finite atom universe.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! formula  := disj ( "->" formula )?        right-associative
//! disj     := conj ( "|" conj )*
//! conj     := unary ( "&" unary )*
//! unary    := "!" unary | primary
//! primary  := atom | "true" | "false" | "(" formula ")"
//! ```
//!
//! A formula denotes the event of its models: the states whose atom labelling
//! satisfies it.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::space::{Event, Mask, StateSpace, MAX_RELATION_STATES};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Const(bool),
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Self {
        Formula::Atom(name.to_string())
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Const(_) | Formula::Atom(_) => 0,
            Formula::Not(f) => 1 + f.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    fn is_binary(&self) -> bool {
        matches!(
            self,
            Formula::And(..) | Formula::Or(..) | Formula::Implies(..)
        )
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Binary children are always parenthesized, so printing never depends
        // on precedence or associativity.
        let child = |f: &mut fmt::Formatter<'_>, c: &Formula| {
            if c.is_binary() {
                write!(f, "({c})")
            } else {
                write!(f, "{c}")
            }
        };
        match self {
            Formula::Const(true) => write!(f, "true"),
            Formula::Const(false) => write!(f, "false"),
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Not(c) => {
                write!(f, "!")?;
                child(f, c)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                let op = match self {
                    Formula::And(..) => "&",
                    Formula::Or(..) => "|",
                    _ => "->",
                };
                child(f, a)?;
                write!(f, " {op} ")?;
                child(f, b)
            }
        }
    }
}

/// Atoms together with the state space they label.
#[derive(Debug, Clone)]
pub struct AtomUniverse {
    atoms: Vec<String>,
    space: StateSpace,
    /// For each atom, the states where it is true.
    truth: Vec<Mask>,
}

impl AtomUniverse {
    /// Universe whose states are all valuations of `atoms`. State names are
    /// bit strings with one character per atom in declaration order, so with
    /// atoms `[b, f]` the state `"10"` makes `b` true and `f` false.
    pub fn new<S: AsRef<str>>(atoms: &[S]) -> Result<Self> {
        Self::with_limit(atoms, MAX_RELATION_STATES)
    }

    pub fn with_limit<S: AsRef<str>>(atoms: &[S], max_states: usize) -> Result<Self> {
        let atoms = checked_atoms(atoms)?;
        let k = atoms.len();
        if k >= usize::BITS as usize || (1usize << k) > max_states.max(1) {
            return Err(Error::TooLarge {
                n: 1usize.checked_shl(k as u32).unwrap_or(usize::MAX),
                limit: max_states,
            });
        }
        let names: Vec<String> = (0..1usize << k)
            .map(|v| {
                if k == 0 {
                    "-".to_string()
                } else {
                    format!("{v:0k$b}")
                }
            })
            .collect();
        let space = StateSpace::with_limit(&names, max_states.max(1))?;
        let truth = (0..k)
            .map(|i| {
                let bit = k - 1 - i;
                (0..1usize << k)
                    .filter(|v| v >> bit & 1 == 1)
                    .fold(0, |acc, v| acc | (1 << v))
            })
            .collect();
        Ok(Self {
            atoms,
            space,
            truth,
        })
    }

    /// Universe over arbitrary named states with an explicit labelling:
    /// `labels[i]` lists the atoms true in state `i`.
    pub fn labelled<S: AsRef<str>>(
        space: StateSpace,
        atoms: &[S],
        labels: &[Vec<String>],
    ) -> Result<Self> {
        let atoms = checked_atoms(atoms)?;
        if labels.len() != space.len() {
            return Err(Error::Format(format!(
                "{} labellings for {} states",
                labels.len(),
                space.len()
            )));
        }
        let mut truth = vec![0; atoms.len()];
        for (state, label) in labels.iter().enumerate() {
            for atom in label {
                let i = atoms
                    .iter()
                    .position(|a| a == atom)
                    .ok_or_else(|| Error::UnknownAtom(atom.clone()))?;
                truth[i] |= 1 << state;
            }
        }
        Ok(Self {
            atoms,
            space,
            truth,
        })
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn atom_mask(&self, name: &str) -> Result<Mask> {
        self.atoms
            .iter()
            .position(|a| a == name)
            .map(|i| self.truth[i])
            .ok_or_else(|| Error::UnknownAtom(name.to_string()))
    }

    pub fn parse(&self, text: &str) -> Result<Formula> {
        parse(text, self)
    }

    pub fn models(&self, f: &Formula) -> Event {
        self.space.event(self.models_mask(f))
    }

    pub fn models_mask(&self, f: &Formula) -> Mask {
        let full = self.space.full_mask();
        match f {
            Formula::Const(true) => full,
            Formula::Const(false) => 0,
            // Formulas are validated at parse time; a hand-built formula with
            // a stray atom has no models.
            Formula::Atom(a) => self.atom_mask(a).unwrap_or(0),
            Formula::Not(g) => !self.models_mask(g) & full,
            Formula::And(a, b) => self.models_mask(a) & self.models_mask(b),
            Formula::Or(a, b) => self.models_mask(a) | self.models_mask(b),
            Formula::Implies(a, b) => (!self.models_mask(a) & full) | self.models_mask(b),
        }
    }
}

fn checked_atoms<S: AsRef<str>>(atoms: &[S]) -> Result<Vec<String>> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(atoms.len());
    for a in atoms {
        let a = a.as_ref();
        if !is_identifier(a) || a == "true" || a == "false" {
            return Err(Error::Format(format!("invalid atom name `{a}`")));
        }
        if !seen.insert(a) {
            return Err(Error::DuplicateAtom(a.to_string()));
        }
        out.push(a.to_string());
    }
    Ok(out)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    LParen,
    RParen,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(s) => format!("`{s}`"),
            Token::Not => "`!`".into(),
            Token::And => "`&`".into(),
            Token::Or => "`|`".into(),
            Token::Implies => "`->`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            c if c.is_whitespace() => i += 1,
            '!' => {
                out.push((i, Token::Not));
                i += 1;
            }
            '&' => {
                out.push((i, Token::And));
                i += 1;
            }
            '|' => {
                out.push((i, Token::Or));
                i += 1;
            }
            '(' => {
                out.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Token::RParen));
                i += 1;
            }
            '-' if bytes.get(i + 1) == Some(&b'>') => {
                out.push((i, Token::Implies));
                i += 2;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
            }
            _ => {
                let found = text[i..].chars().next().unwrap_or(c);
                return Err(Error::Syntax {
                    position: i,
                    expected: vec!["a token".into()],
                    found: format!("`{found}`"),
                });
            }
        }
    }
    out.push((text.len(), Token::End));
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    universe: &'a AtomUniverse,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn error(&self, expected: &[&str]) -> Error {
        let (position, tok) = &self.tokens[self.pos];
        Error::Syntax {
            position: *position,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: tok.describe(),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Token::Implies {
            self.pos += 1;
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Token::Or {
            self.pos += 1;
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut acc = self.unary()?;
        while *self.peek() == Token::And {
            self.pos += 1;
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula> {
        if *self.peek() == Token::Not {
            self.pos += 1;
            return Ok(Formula::not(self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Token::Ident(name) => {
                self.pos += 1;
                match name.as_str() {
                    "true" => Ok(Formula::Const(true)),
                    "false" => Ok(Formula::Const(false)),
                    _ => {
                        self.universe.atom_mask(&name)?;
                        Ok(Formula::Atom(name))
                    }
                }
            }
            Token::LParen => {
                self.pos += 1;
                let inner = self.formula()?;
                if *self.peek() != Token::RParen {
                    return Err(self.error(&["`)`", "`&`", "`|`", "`->`"]));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.error(&["atom", "`true`", "`false`", "`!`", "`(`"])),
        }
    }
}

/// Parses `text` against the atoms of `universe`.
pub fn parse(text: &str, universe: &AtomUniverse) -> Result<Formula> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        universe,
    };
    let f = p.formula()?;
    if *p.peek() != Token::End {
        return Err(p.error(&["`&`", "`|`", "`->`", "end of input"]));
    }
    Ok(f)
}

/// The event `[f]`.
pub fn models(f: &Formula, universe: &AtomUniverse) -> Event {
    universe.models(f)
}
