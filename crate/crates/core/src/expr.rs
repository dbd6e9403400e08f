//! A small expression language for writing regular languages as one-liners.
//!
//! Grammar, tightest to loosest: atoms are letters `a`–`z`, `_` (the empty
//! word), `0` (the empty language) and parenthesized expressions; postfix
//! `*`; prefix `!` (complement); juxtaposition or `.` (concatenation); `&`
//! (shuffle); `^` (intersection); `|` (union). All infix operators associate
//! to the left. The alphabet is declared, not inferred, so complement and
//! `Σ*` are well-defined.

use crate::alphabet::Alphabet;
use crate::dfa::{BooleanOp, Dfa};
use crate::error::{Error, Result};
use crate::minimize::minimize;
use crate::nfa::Nfa;
use crate::DEFAULT_STATE_GUARD;

/// Abstract syntax of a language expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LangExpr {
    Letter(char),
    Epsilon,
    Empty,
    Union(Box<LangExpr>, Box<LangExpr>),
    Concat(Box<LangExpr>, Box<LangExpr>),
    Star(Box<LangExpr>),
    Shuffle(Box<LangExpr>, Box<LangExpr>),
    Intersect(Box<LangExpr>, Box<LangExpr>),
    Complement(Box<LangExpr>),
}

struct Parser<'a> {
    src: &'a [char],
    pos: usize,
    alphabet: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn union(&mut self) -> Result<LangExpr> {
        let mut lhs = self.intersect()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('|') {
                self.bump();
                let rhs = self.intersect()?;
                lhs = LangExpr::Union(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn intersect(&mut self) -> Result<LangExpr> {
        let mut lhs = self.shuffle()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('^') {
                self.bump();
                let rhs = self.shuffle()?;
                lhs = LangExpr::Intersect(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn shuffle(&mut self) -> Result<LangExpr> {
        let mut lhs = self.concat()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('&') {
                self.bump();
                let rhs = self.concat()?;
                lhs = LangExpr::Shuffle(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn starts_term(c: char) -> bool {
        c.is_ascii_lowercase() || c == '_' || c == '0' || c == '(' || c == '!'
    }

    fn concat(&mut self) -> Result<LangExpr> {
        let mut lhs = self.prefix()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('.') => {
                    self.bump();
                    let rhs = self.prefix()?;
                    lhs = LangExpr::Concat(Box::new(lhs), Box::new(rhs));
                }
                Some(c) if Self::starts_term(c) => {
                    let rhs = self.prefix()?;
                    lhs = LangExpr::Concat(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn prefix(&mut self) -> Result<LangExpr> {
        self.skip_ws();
        if self.peek() == Some('!') {
            self.bump();
            let inner = self.prefix()?;
            return Ok(LangExpr::Complement(Box::new(inner)));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<LangExpr> {
        let mut node = self.atom()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.bump();
                node = LangExpr::Star(Box::new(node));
            } else {
                return Ok(node);
            }
        }
    }

    fn atom(&mut self) -> Result<LangExpr> {
        self.skip_ws();
        let pos = self.pos;
        match self.bump() {
            Some('(') => {
                let inner = self.union()?;
                self.skip_ws();
                if self.bump() != Some(')') {
                    return Err(Error::Syntax {
                        pos: self.pos.saturating_sub(1),
                        msg: "expected ')'".into(),
                    });
                }
                Ok(inner)
            }
            Some('_') => Ok(LangExpr::Epsilon),
            Some('0') => Ok(LangExpr::Empty),
            Some(c) if c.is_ascii_lowercase() => {
                if self.alphabet.index_of(c).is_none() {
                    return Err(Error::UndeclaredLetter { letter: c, pos });
                }
                Ok(LangExpr::Letter(c))
            }
            Some(c) => Err(Error::Syntax {
                pos,
                msg: format!("unexpected character '{c}'"),
            }),
            None => Err(Error::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

/// Parses an expression against a declared alphabet.
pub fn parse(src: &str, alphabet: &Alphabet) -> Result<LangExpr> {
    let chars: Vec<char> = src.chars().collect();
    let mut parser = Parser {
        src: &chars,
        pos: 0,
        alphabet,
    };
    let expr = parser.union()?;
    parser.skip_ws();
    if parser.pos != chars.len() {
        return Err(Error::Syntax {
            pos: parser.pos,
            msg: "trailing input".into(),
        });
    }
    Ok(expr)
}

// precedence levels for printing: union 0, intersect 1, shuffle 2, concat 3,
// prefix 4, postfix/atom 5
fn level(e: &LangExpr) -> u8 {
    match e {
        LangExpr::Union(..) => 0,
        LangExpr::Intersect(..) => 1,
        LangExpr::Shuffle(..) => 2,
        LangExpr::Concat(..) => 3,
        LangExpr::Complement(..) => 4,
        LangExpr::Star(..) | LangExpr::Letter(_) | LangExpr::Epsilon | LangExpr::Empty => 5,
    }
}

fn print_at(e: &LangExpr, min: u8, out: &mut String) {
    let mine = level(e);
    let parens = mine < min;
    if parens {
        out.push('(');
    }
    match e {
        LangExpr::Letter(c) => out.push(*c),
        LangExpr::Epsilon => out.push('_'),
        LangExpr::Empty => out.push('0'),
        LangExpr::Union(a, b) => {
            print_at(a, 0, out);
            out.push('|');
            print_at(b, 1, out);
        }
        LangExpr::Intersect(a, b) => {
            print_at(a, 1, out);
            out.push('^');
            print_at(b, 2, out);
        }
        LangExpr::Shuffle(a, b) => {
            print_at(a, 2, out);
            out.push('&');
            print_at(b, 3, out);
        }
        LangExpr::Concat(a, b) => {
            print_at(a, 3, out);
            print_at(b, 4, out);
        }
        LangExpr::Complement(a) => {
            out.push('!');
            print_at(a, 4, out);
        }
        LangExpr::Star(a) => {
            print_at(a, 5, out); // parens around anything below postfix level
            out.push('*');
        }
    }
    if parens {
        out.push(')');
    }
}

impl std::fmt::Display for LangExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut out = String::new();
        print_at(self, 0, &mut out);
        write!(f, "{out}")
    }
}

/// Compiles an expression to the minimal DFA of its language.
pub fn eval(e: &LangExpr, alphabet: &Alphabet) -> Result<Dfa> {
    eval_with_guard(e, alphabet, DEFAULT_STATE_GUARD)
}

pub fn eval_with_guard(e: &LangExpr, alphabet: &Alphabet, guard: usize) -> Result<Dfa> {
    let d = match e {
        LangExpr::Letter(c) => {
            let j = alphabet.require(*c)?;
            let mut n = Nfa::empty(alphabet.clone(), 2);
            n.add_start(0);
            n.add_edge(0, j, 1);
            n.add_final(1);
            n.determinize_with_guard(guard)?
        }
        LangExpr::Epsilon => {
            let mut n = Nfa::empty(alphabet.clone(), 1);
            n.add_start(0);
            n.add_final(0);
            n.determinize_with_guard(guard)?
        }
        LangExpr::Empty => Dfa::trivial(alphabet.clone(), false),
        LangExpr::Union(a, b) => {
            let (da, db) = (
                eval_with_guard(a, alphabet, guard)?,
                eval_with_guard(b, alphabet, guard)?,
            );
            da.boolean_product(&db, BooleanOp::Union)?
        }
        LangExpr::Intersect(a, b) => {
            let (da, db) = (
                eval_with_guard(a, alphabet, guard)?,
                eval_with_guard(b, alphabet, guard)?,
            );
            da.boolean_product(&db, BooleanOp::Intersection)?
        }
        LangExpr::Concat(a, b) => {
            let (da, db) = (
                eval_with_guard(a, alphabet, guard)?,
                eval_with_guard(b, alphabet, guard)?,
            );
            Nfa::from_dfa(&da)
                .concat(&Nfa::from_dfa(&db))?
                .determinize_with_guard(guard)?
        }
        LangExpr::Star(a) => {
            let da = eval_with_guard(a, alphabet, guard)?;
            Nfa::from_dfa(&da).star().determinize_with_guard(guard)?
        }
        LangExpr::Shuffle(a, b) => {
            let (da, db) = (
                eval_with_guard(a, alphabet, guard)?,
                eval_with_guard(b, alphabet, guard)?,
            );
            return crate::shuffle::shuffle_nfa_with_guard(&da, &db, guard);
        }
        LangExpr::Complement(a) => eval_with_guard(a, alphabet, guard)?.complement(),
    };
    Ok(minimize(&d))
}

/// Parses and evaluates in one step; `alphabet` is the declared letter list.
pub fn eval_str(src: &str, alphabet: &str) -> Result<Dfa> {
    let alphabet = Alphabet::new(alphabet)?;
    let expr = parse(src, &alphabet)?;
    eval(&expr, &alphabet)
}
