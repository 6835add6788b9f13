//! Source syntax: tokens, terms, programs and pretty printing.

mod lexer;
mod parser;

pub use lexer::{tokenize, LexError, LexErrorKind, Token, TokenKind};
pub use parser::{parse_program, ParseError, ParseErrorKind};

use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// 1-based line and column in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl Pos {
    pub fn new(line: u32, col: u32) -> Self {
        Pos { line, col }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

pub type Name = String;

/// One arm of a `case`: `C x => body`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub con: Name,
    pub binder: Name,
    pub body: Rc<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(Name),
    /// `[x]body`
    Lam(Name, Rc<Term>),
    /// Juxtaposition `f a`, left associative.
    App(Rc<Term>, Rc<Term>),
    /// `C(t)`; a constructor always carries exactly one argument, the
    /// zero-argument form `C()` carries the empty tuple.
    Con(Name, Rc<Term>),
    /// `case t of { C1 x1 => t1 | ... }`
    Case(Rc<Term>, Vec<Branch>),
    /// `(L1=t1, ..., Ln=tn)`; `()` when empty.
    Tuple(Vec<(Name, Rc<Term>)>),
    /// `t.L`
    Proj(Rc<Term>, Name),
    /// `let x1 = t1, ..., xn = tn in t`; bindings are simultaneously
    /// recursive.
    Let(Vec<(Name, Rc<Term>)>, Rc<Term>),
}

/// One binding of a top-level definition statement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefBinding {
    pub name: Name,
    pub pos: Pos,
    pub term: Rc<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    /// `x1 = t1, ..., xn = tn;` — names defined simultaneously, so they
    /// can refer to each other.
    Define(Vec<DefBinding>),
    /// A bare `term;` to evaluate.
    Evaluate(Rc<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Program {
    pub statements: Vec<Statement>,
}

fn write_entries(f: &mut fmt::Formatter<'_>, entries: &[(Name, Rc<Term>)]) -> fmt::Result {
    for (i, (label, term)) in entries.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{}={}", label, term)?;
    }
    Ok(())
}

/// Fully parenthesized rendering; re-parsing the output yields an
/// identical term.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => f.write_str(x),
            Term::Lam(param, body) => write!(f, "([{}]{})", param, body),
            Term::App(fun, arg) => write!(f, "({} {})", fun, arg),
            Term::Con(con, arg) => match &**arg {
                Term::Tuple(entries) => {
                    write!(f, "{}(", con)?;
                    write_entries(f, entries)?;
                    f.write_str(")")
                }
                other => write!(f, "{}({})", con, other),
            },
            Term::Case(scrutinee, branches) => {
                write!(f, "(case {} of {{ ", scrutinee)?;
                for (i, br) in branches.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    write!(f, "{} {} => {}", br.con, br.binder, br.body)?;
                }
                f.write_str(" })")
            }
            Term::Tuple(entries) => {
                f.write_str("(")?;
                write_entries(f, entries)?;
                f.write_str(")")
            }
            Term::Proj(tuple, label) => write!(f, "({}.{})", tuple, label),
            Term::Let(bindings, body) => {
                f.write_str("(let ")?;
                for (i, (name, term)) in bindings.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{} = {}", name, term)?;
                }
                write!(f, " in {})", body)
            }
        }
    }
}
