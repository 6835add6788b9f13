//! Recursive descent parser.
//!
//! Projection `.L` binds tightest, application is left-associative
//! juxtaposition, and lambda, `case` and `let` bodies extend as far right
//! as possible. A statement starting with an identifier followed by `=`
//! is a definition; anything else is a term to evaluate.

use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::lexer::{Token, TokenKind};
use super::{Branch, DefBinding, Name, Pos, Program, Statement, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Unexpected {
        expected: &'static str,
        found: String,
    },
    DuplicateBranchConstant(Name),
    DuplicateTupleLabel(Name),
    DuplicateBinding(Name),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Unexpected { expected, found } => {
                write!(f, "{}: expected {}, found {}", self.pos, expected, found)
            }
            ParseErrorKind::DuplicateBranchConstant(c) => {
                write!(f, "{}: duplicate branch constant '{}'", self.pos, c)
            }
            ParseErrorKind::DuplicateTupleLabel(l) => {
                write!(f, "{}: duplicate tuple label '{}'", self.pos, l)
            }
            ParseErrorKind::DuplicateBinding(n) => {
                write!(f, "{}: duplicate binding '{}'", self.pos, n)
            }
        }
    }
}

/// Expects the token list to end in `Eof`, as produced by `tokenize`.
pub fn parse_program(tokens: &[Token]) -> Result<Program, ParseError> {
    let mut parser = Parser { tokens, at: 0 };
    parser.program()
}

struct Parser<'a> {
    tokens: &'a [Token],
    at: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &TokenKind {
        &self.tokens[self.at].kind
    }

    fn peek2(&self) -> &TokenKind {
        let next = (self.at + 1).min(self.tokens.len() - 1);
        &self.tokens[next].kind
    }

    fn pos(&self) -> Pos {
        self.tokens[self.at].pos
    }

    fn bump(&mut self) -> Token {
        let token = self.tokens[self.at].clone();
        if !matches!(token.kind, TokenKind::Eof) {
            self.at += 1;
        }
        token
    }

    fn unexpected<T>(&self, expected: &'static str) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            kind: ParseErrorKind::Unexpected {
                expected,
                found: self.peek().describe(),
            },
        })
    }

    fn expect(&mut self, kind: TokenKind, expected: &'static str) -> Result<(), ParseError> {
        if *self.peek() == kind {
            self.bump();
            Ok(())
        } else {
            self.unexpected(expected)
        }
    }

    fn expect_ident(&mut self, expected: &'static str) -> Result<(Name, Pos), ParseError> {
        match self.peek() {
            TokenKind::Ident(_) => {
                let token = self.bump();
                match token.kind {
                    TokenKind::Ident(name) => Ok((name, token.pos)),
                    _ => unreachable!(),
                }
            }
            _ => self.unexpected(expected),
        }
    }

    fn expect_const(&mut self, expected: &'static str) -> Result<(Name, Pos), ParseError> {
        match self.peek() {
            TokenKind::Const(_) => {
                let token = self.bump();
                match token.kind {
                    TokenKind::Const(name) => Ok((name, token.pos)),
                    _ => unreachable!(),
                }
            }
            _ => self.unexpected(expected),
        }
    }

    fn program(&mut self) -> Result<Program, ParseError> {
        let mut statements = Vec::new();
        while !matches!(self.peek(), TokenKind::Eof) {
            let statement = if matches!(self.peek(), TokenKind::Ident(_))
                && matches!(self.peek2(), TokenKind::Equals)
            {
                Statement::Define(self.define_bindings()?)
            } else {
                Statement::Evaluate(self.term()?)
            };
            self.expect(TokenKind::Semi, "';'")?;
            statements.push(statement);
        }
        Ok(Program { statements })
    }

    fn define_bindings(&mut self) -> Result<Vec<DefBinding>, ParseError> {
        let mut bindings: Vec<DefBinding> = Vec::new();
        loop {
            let (name, pos) = self.expect_ident("a binding name")?;
            if bindings.iter().any(|b| b.name == name) {
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::DuplicateBinding(name),
                });
            }
            self.expect(TokenKind::Equals, "'='")?;
            let term = self.term()?;
            bindings.push(DefBinding { name, pos, term });
            if matches!(self.peek(), TokenKind::Comma) {
                self.bump();
            } else {
                break;
            }
        }
        Ok(bindings)
    }

    fn term(&mut self) -> Result<Rc<Term>, ParseError> {
        match self.peek() {
            TokenKind::LBracket => {
                self.bump();
                let (param, _) = self.expect_ident("a parameter name")?;
                self.expect(TokenKind::RBracket, "']'")?;
                let body = self.term()?;
                Ok(Rc::new(Term::Lam(param, body)))
            }
            TokenKind::Case => {
                self.bump();
                let scrutinee = self.term()?;
                self.expect(TokenKind::Of, "'of'")?;
                self.expect(TokenKind::LBrace, "'{'")?;
                let branches = self.branches()?;
                self.expect(TokenKind::RBrace, "'}'")?;
                Ok(Rc::new(Term::Case(scrutinee, branches)))
            }
            TokenKind::Let => {
                self.bump();
                let bindings = self.let_bindings()?;
                self.expect(TokenKind::In, "'in'")?;
                let body = self.term()?;
                Ok(Rc::new(Term::Let(bindings, body)))
            }
            _ => self.application(),
        }
    }

    fn branches(&mut self) -> Result<Vec<Branch>, ParseError> {
        let mut branches: Vec<Branch> = Vec::new();
        loop {
            let (con, pos) = self.expect_const("a constructor pattern")?;
            if branches.iter().any(|b| b.con == con) {
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::DuplicateBranchConstant(con),
                });
            }
            let (binder, _) = self.expect_ident("a pattern variable")?;
            self.expect(TokenKind::Arrow, "'=>'")?;
            let body = self.term()?;
            branches.push(Branch { con, binder, body });
            if matches!(self.peek(), TokenKind::Bar) {
                self.bump();
            } else {
                break;
            }
        }
        Ok(branches)
    }

    fn let_bindings(&mut self) -> Result<Vec<(Name, Rc<Term>)>, ParseError> {
        let mut bindings: Vec<(Name, Rc<Term>)> = Vec::new();
        loop {
            let (name, pos) = self.expect_ident("a binding name")?;
            if bindings.iter().any(|(n, _)| *n == name) {
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::DuplicateBinding(name),
                });
            }
            self.expect(TokenKind::Equals, "'='")?;
            let term = self.term()?;
            bindings.push((name, term));
            if matches!(self.peek(), TokenKind::Comma) {
                self.bump();
            } else {
                break;
            }
        }
        Ok(bindings)
    }

    fn starts_primary(&self) -> bool {
        matches!(
            self.peek(),
            TokenKind::Ident(_) | TokenKind::Const(_) | TokenKind::LParen
        )
    }

    fn application(&mut self) -> Result<Rc<Term>, ParseError> {
        let mut term = self.primary()?;
        while self.starts_primary() {
            let arg = self.primary()?;
            term = Rc::new(Term::App(term, arg));
        }
        Ok(term)
    }

    fn primary(&mut self) -> Result<Rc<Term>, ParseError> {
        let mut term = self.atom()?;
        while matches!(self.peek(), TokenKind::Dot) {
            self.bump();
            let (label, _) = self.expect_const("a projection label")?;
            term = Rc::new(Term::Proj(term, label));
        }
        Ok(term)
    }

    fn atom(&mut self) -> Result<Rc<Term>, ParseError> {
        match self.peek() {
            TokenKind::Ident(_) => {
                let (name, _) = self.expect_ident("a term")?;
                Ok(Rc::new(Term::Var(name)))
            }
            TokenKind::Const(_) => {
                let (con, _) = self.expect_const("a term")?;
                if matches!(self.peek(), TokenKind::LParen) {
                    self.bump();
                    let arg = self.con_argument()?;
                    Ok(Rc::new(Term::Con(con, arg)))
                } else {
                    // bare constructor application, as in `O z`
                    let arg = self.primary()?;
                    Ok(Rc::new(Term::Con(con, arg)))
                }
            }
            TokenKind::LParen => {
                self.bump();
                if matches!(self.peek(), TokenKind::RParen) {
                    self.bump();
                    return Ok(Rc::new(Term::Tuple(Vec::new())));
                }
                if matches!(self.peek(), TokenKind::Const(_))
                    && matches!(self.peek2(), TokenKind::Equals)
                {
                    let entries = self.tuple_entries()?;
                    self.expect(TokenKind::RParen, "')'")?;
                    return Ok(Rc::new(Term::Tuple(entries)));
                }
                let term = self.term()?;
                self.expect(TokenKind::RParen, "')'")?;
                Ok(term)
            }
            _ => self.unexpected("a term"),
        }
    }

    /// The `...)` part of `C(...)`: empty, a labeled tuple, or one term.
    fn con_argument(&mut self) -> Result<Rc<Term>, ParseError> {
        if matches!(self.peek(), TokenKind::RParen) {
            self.bump();
            return Ok(Rc::new(Term::Tuple(Vec::new())));
        }
        if matches!(self.peek(), TokenKind::Const(_)) && matches!(self.peek2(), TokenKind::Equals)
        {
            let entries = self.tuple_entries()?;
            self.expect(TokenKind::RParen, "')'")?;
            return Ok(Rc::new(Term::Tuple(entries)));
        }
        let term = self.term()?;
        self.expect(TokenKind::RParen, "')'")?;
        Ok(term)
    }

    fn tuple_entries(&mut self) -> Result<Vec<(Name, Rc<Term>)>, ParseError> {
        let mut entries: Vec<(Name, Rc<Term>)> = Vec::new();
        loop {
            let (label, pos) = self.expect_const("a tuple label")?;
            if entries.iter().any(|(l, _)| *l == label) {
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::DuplicateTupleLabel(label),
                });
            }
            self.expect(TokenKind::Equals, "'='")?;
            let term = self.term()?;
            entries.push((label, term));
            if matches!(self.peek(), TokenKind::Comma) {
                self.bump();
            } else {
                break;
            }
        }
        Ok(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tokenize;
    use super::*;
    use alloc::format;

    fn parse(src: &str) -> Program {
        parse_program(&tokenize(src).unwrap()).unwrap()
    }

    fn parse_err(src: &str) -> ParseError {
        parse_program(&tokenize(src).unwrap()).unwrap_err()
    }

    fn eval_term(src: &str) -> Rc<Term> {
        match &parse(src).statements[0] {
            Statement::Evaluate(t) => t.clone(),
            other => panic!("expected evaluate, got {:?}", other),
        }
    }

    #[test]
    fn empty_program() {
        assert!(parse("").statements.is_empty());
        assert!(parse("(* nothing *)").statements.is_empty());
    }

    #[test]
    fn addition_program_shape() {
        let p = parse(
            "add = [x][y]case x of { O z => y | S x' => S(add x' y) };\n\
             one = S(O());\n\
             add one one;",
        );
        assert_eq!(p.statements.len(), 3);
        assert!(matches!(p.statements[0], Statement::Define(_)));
        assert!(matches!(p.statements[1], Statement::Define(_)));
        assert!(matches!(p.statements[2], Statement::Evaluate(_)));
    }

    #[test]
    fn grouping_is_identity() {
        assert_eq!(*eval_term("((x));"), Term::Var("x".into()));
    }

    #[test]
    fn projection_binds_tighter_than_application() {
        let t = eval_term("f x y.L;");
        let expected = Term::App(
            Rc::new(Term::App(
                Rc::new(Term::Var("f".into())),
                Rc::new(Term::Var("x".into())),
            )),
            Rc::new(Term::Proj(Rc::new(Term::Var("y".into())), "L".into())),
        );
        assert_eq!(*t, expected);
    }

    #[test]
    fn zero_argument_constructor_carries_empty_tuple() {
        assert_eq!(
            *eval_term("O();"),
            Term::Con("O".into(), Rc::new(Term::Tuple(Vec::new())))
        );
    }

    #[test]
    fn labeled_constructor_argument_is_a_tuple() {
        let t = eval_term("Cons(HD=h,TL=t);");
        match &*t {
            Term::Con(c, arg) => {
                assert_eq!(c, "Cons");
                match &**arg {
                    Term::Tuple(entries) => {
                        assert_eq!(entries.len(), 2);
                        assert_eq!(entries[0].0, "HD");
                        assert_eq!(entries[1].0, "TL");
                    }
                    other => panic!("expected tuple, got {:?}", other),
                }
            }
            other => panic!("expected constructor, got {:?}", other),
        }
    }

    #[test]
    fn parenthesized_tuple_inside_constructor_is_equivalent() {
        assert_eq!(eval_term("C((X=t));"), eval_term("C(X=t);"));
    }

    #[test]
    fn bare_constructor_argument_in_term_position() {
        // branch bodies like `O z => O z` use this form
        let t = eval_term("case x of { O z => O z | S x' => x' };");
        match &*t {
            Term::Case(_, branches) => {
                assert_eq!(
                    *branches[0].body,
                    Term::Con("O".into(), Rc::new(Term::Var("z".into())))
                );
            }
            other => panic!("expected case, got {:?}", other),
        }
    }

    #[test]
    fn lambda_body_extends_right() {
        let t = eval_term("[x]f x;");
        match &*t {
            Term::Lam(p, body) => {
                assert_eq!(p, "x");
                assert!(matches!(&**body, Term::App(_, _)));
            }
            other => panic!("expected lambda, got {:?}", other),
        }
    }

    #[test]
    fn let_bindings_are_simultaneous_in_one_statement() {
        let t = eval_term("let a = b, b = a in a;");
        match &*t {
            Term::Let(bindings, _) => assert_eq!(bindings.len(), 2),
            other => panic!("expected let, got {:?}", other),
        }
    }

    #[test]
    fn duplicate_branch_constant_rejected() {
        let err = parse_err("case x of { O z => x | O y => x };");
        assert!(matches!(err.kind, ParseErrorKind::DuplicateBranchConstant(ref c) if c == "O"));
    }

    #[test]
    fn duplicate_tuple_label_rejected() {
        let err = parse_err("(X=a, X=b);");
        assert!(matches!(err.kind, ParseErrorKind::DuplicateTupleLabel(ref l) if l == "X"));
    }

    #[test]
    fn duplicate_define_binding_rejected() {
        let err = parse_err("f = x, f = y;");
        assert!(matches!(err.kind, ParseErrorKind::DuplicateBinding(ref n) if n == "f"));
    }

    #[test]
    fn duplicate_let_binding_rejected() {
        let err = parse_err("let a = x, a = y in a;");
        assert!(matches!(err.kind, ParseErrorKind::DuplicateBinding(ref n) if n == "a"));
    }

    #[test]
    fn error_reports_position_and_expectation() {
        let err = parse_err("add = ;");
        assert_eq!(err.pos, Pos::new(1, 7));
        let msg = format!("{}", err);
        assert!(msg.contains("expected a term"), "message was {msg:?}");
    }

    #[test]
    fn complex_case_scrutinee() {
        let t = eval_term("case (le p1.HD p2.HD) of { True z => x | False z => y };");
        match &*t {
            Term::Case(scrutinee, branches) => {
                assert!(matches!(&**scrutinee, Term::App(_, _)));
                assert_eq!(branches.len(), 2);
            }
            other => panic!("expected case, got {:?}", other),
        }
    }

    #[test]
    fn define_lookahead_needs_equals() {
        let p = parse("f x;");
        assert!(matches!(p.statements[0], Statement::Evaluate(_)));
    }
}
