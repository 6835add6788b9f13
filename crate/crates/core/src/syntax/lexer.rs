//! Tokenizer. Identifiers may contain letters, digits, apostrophes and
//! underscores; a name starting with a lowercase letter is a variable,
//! anything else is a constant. `(* ... *)` comments nest.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{Name, Pos};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(Name),
    Const(Name),
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Bar,
    Dot,
    Comma,
    Semi,
    Equals,
    /// `=>`
    Arrow,
    Case,
    Of,
    Let,
    In,
    Eof,
}

impl TokenKind {
    /// Short description used in error messages.
    pub fn describe(&self) -> String {
        use TokenKind::*;
        match self {
            Ident(n) => alloc::format!("identifier '{}'", n),
            Const(n) => alloc::format!("constant '{}'", n),
            LParen => "'('".into(),
            RParen => "')'".into(),
            LBracket => "'['".into(),
            RBracket => "']'".into(),
            LBrace => "'{'".into(),
            RBrace => "'}'".into(),
            Bar => "'|'".into(),
            Dot => "'.'".into(),
            Comma => "','".into(),
            Semi => "';'".into(),
            Equals => "'='".into(),
            Arrow => "'=>'".into(),
            Case => "'case'".into(),
            Of => "'of'".into(),
            Let => "'let'".into(),
            In => "'in'".into(),
            Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexError {
    pub pos: Pos,
    pub kind: LexErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LexErrorKind {
    IllegalChar(char),
    UnterminatedComment,
}

impl fmt::Display for LexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            LexErrorKind::IllegalChar(c) => {
                write!(f, "{}: illegal character '{}'", self.pos, c.escape_default())
            }
            LexErrorKind::UnterminatedComment => {
                write!(f, "{}: unterminated comment", self.pos)
            }
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '\'' || c == '_'
}

struct Lexer {
    src: Vec<char>,
    at: usize,
    line: u32,
    col: u32,
}

impl Lexer {
    fn peek(&self) -> Option<char> {
        self.src.get(self.at).copied()
    }

    fn peek2(&self) -> Option<char> {
        self.src.get(self.at + 1).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.at += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn pos(&self) -> Pos {
        Pos::new(self.line, self.col)
    }

    fn skip_comment(&mut self) -> Result<(), LexError> {
        let open = self.pos();
        self.bump();
        self.bump();
        let mut depth = 1u32;
        while depth > 0 {
            match (self.peek(), self.peek2()) {
                (Some('('), Some('*')) => {
                    self.bump();
                    self.bump();
                    depth += 1;
                }
                (Some('*'), Some(')')) => {
                    self.bump();
                    self.bump();
                    depth -= 1;
                }
                (Some(_), _) => {
                    self.bump();
                }
                (None, _) => {
                    return Err(LexError {
                        pos: open,
                        kind: LexErrorKind::UnterminatedComment,
                    })
                }
            }
        }
        Ok(())
    }
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    let mut lx = Lexer {
        src: source.chars().collect(),
        at: 0,
        line: 1,
        col: 1,
    };
    let mut tokens = Vec::new();
    loop {
        match lx.peek() {
            None => break,
            Some(c) if c.is_whitespace() => {
                lx.bump();
            }
            Some('(') if lx.peek2() == Some('*') => lx.skip_comment()?,
            Some(c) => {
                let pos = lx.pos();
                let kind = match c {
                    '(' => {
                        lx.bump();
                        TokenKind::LParen
                    }
                    ')' => {
                        lx.bump();
                        TokenKind::RParen
                    }
                    '[' => {
                        lx.bump();
                        TokenKind::LBracket
                    }
                    ']' => {
                        lx.bump();
                        TokenKind::RBracket
                    }
                    '{' => {
                        lx.bump();
                        TokenKind::LBrace
                    }
                    '}' => {
                        lx.bump();
                        TokenKind::RBrace
                    }
                    '|' => {
                        lx.bump();
                        TokenKind::Bar
                    }
                    '.' => {
                        lx.bump();
                        TokenKind::Dot
                    }
                    ',' => {
                        lx.bump();
                        TokenKind::Comma
                    }
                    ';' => {
                        lx.bump();
                        TokenKind::Semi
                    }
                    '=' => {
                        lx.bump();
                        if lx.peek() == Some('>') {
                            lx.bump();
                            TokenKind::Arrow
                        } else {
                            TokenKind::Equals
                        }
                    }
                    c if is_ident_char(c) => {
                        let mut name = String::new();
                        while let Some(c) = lx.peek() {
                            if !is_ident_char(c) {
                                break;
                            }
                            name.push(c);
                            lx.bump();
                        }
                        match name.as_str() {
                            "case" => TokenKind::Case,
                            "of" => TokenKind::Of,
                            "let" => TokenKind::Let,
                            "in" => TokenKind::In,
                            _ if c.is_ascii_lowercase() => TokenKind::Ident(name),
                            _ => TokenKind::Const(name),
                        }
                    }
                    c => {
                        return Err(LexError {
                            pos,
                            kind: LexErrorKind::IllegalChar(c),
                        })
                    }
                };
                tokens.push(Token { kind, pos });
            }
        }
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        pos: lx.pos(),
    });
    Ok(tokens)
}
