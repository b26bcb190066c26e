//! Text syntax for instruction sequences.
//!
//! ```text
//! seq   := item (';' item)*
//! item  := atom | '(' seq ')' | '(' seq ')' '*'
//! atom  := '!' | '#' N | '+' basic | '-' basic | basic
//! basic := OP ':' ARG ':' ARG [':' ARG] | identifier
//! ```
//!
//! Whitespace is insignificant. `(X)*` is the repetition of `X`.

use std::fmt;

use thiserror::Error;

use super::{BasicInstruction, InstructionSequence, PrimitiveInstruction};
use crate::isa::{BinOp, CmpOp, InstructionParseError, SrramInstruction, UnOp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected {0:?}")]
    Unexpected(String),
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("invalid jump {0:?}")]
    BadJump(String),
    #[error("invalid instruction name {0:?}")]
    BadIdentifier(String),
    #[error(transparent)]
    Instruction(#[from] InstructionParseError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok<'a> {
    Semi,
    Open,
    Close,
    Star,
    Word(&'a str),
}

struct Token<'a> {
    tok: Tok<'a>,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let mut chars = line.char_indices().peekable();
        while let Some((start, c)) = chars.next() {
            let column = line[..start].chars().count() + 1;
            let tok = match c {
                c if c.is_whitespace() => continue,
                ';' => Tok::Semi,
                '(' => Tok::Open,
                ')' => Tok::Close,
                '*' => Tok::Star,
                _ => {
                    let mut end = start + c.len_utf8();
                    while let Some(&(i, d)) = chars.peek() {
                        if d.is_whitespace() || matches!(d, ';' | '(' | ')' | '*') {
                            break;
                        }
                        end = i + d.len_utf8();
                        chars.next();
                    }
                    Tok::Word(&line[start..end])
                }
            };
            out.push(Token { tok, line: ln + 1, column });
        }
    }
    out
}

struct Parser<'a> {
    tokens: Vec<Token<'a>>,
    pos: usize,
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn error(&self, kind: ParseErrorKind) -> ParseError {
        let (line, column) = self.tokens.get(self.pos).map_or(self.end, |t| (t.line, t.column));
        ParseError { line, column, kind }
    }

    fn peek(&self) -> Option<&Tok<'a>> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn seq(&mut self) -> Result<InstructionSequence, ParseError> {
        let mut acc = self.item()?;
        while self.peek() == Some(&Tok::Semi) {
            self.pos += 1;
            let next = self.item()?;
            acc = acc.concat(&next);
        }
        Ok(acc)
    }

    fn item(&mut self) -> Result<InstructionSequence, ParseError> {
        match self.peek().cloned() {
            None => Err(self.error(ParseErrorKind::UnexpectedEnd)),
            Some(Tok::Open) => {
                self.pos += 1;
                let body = self.seq()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(self.error(ParseErrorKind::Expected("')'")));
                }
                self.pos += 1;
                if self.peek() == Some(&Tok::Star) {
                    self.pos += 1;
                    // The body is kept as written; `repeat` would also reduce
                    // it to its primitive root.
                    if body.is_finite() {
                        return Ok(InstructionSequence { prefix: Vec::new(), period: body.prefix });
                    }
                }
                Ok(body)
            }
            Some(Tok::Word(w)) => {
                let u = atom(w).map_err(|k| self.error(k))?;
                self.pos += 1;
                Ok(InstructionSequence::single(u))
            }
            Some(t) => Err(self.error(ParseErrorKind::Unexpected(tok_text(&t).to_string()))),
        }
    }
}

fn tok_text<'a>(t: &Tok<'a>) -> &'a str {
    match t {
        Tok::Semi => ";",
        Tok::Open => "(",
        Tok::Close => ")",
        Tok::Star => "*",
        Tok::Word(w) => w,
    }
}

fn atom(w: &str) -> Result<PrimitiveInstruction, ParseErrorKind> {
    if w == "!" {
        return Ok(PrimitiveInstruction::Halt);
    }
    if let Some(digits) = w.strip_prefix('#') {
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseErrorKind::BadJump(w.to_string()));
        }
        return digits.parse().map(PrimitiveInstruction::Jump).map_err(|_| ParseErrorKind::BadJump(w.to_string()));
    }
    if let Some(rest) = w.strip_prefix('+') {
        return basic(rest).map(PrimitiveInstruction::PosTest);
    }
    if let Some(rest) = w.strip_prefix('-') {
        return basic(rest).map(PrimitiveInstruction::NegTest);
    }
    basic(w).map(PrimitiveInstruction::Plain)
}

fn is_op_name(name: &str) -> bool {
    BinOp::ALL.iter().any(|o| o.name() == name)
        || UnOp::ALL.iter().any(|o| o.name() == name)
        || CmpOp::ALL.iter().any(|o| o.name() == name)
}

fn basic(w: &str) -> Result<BasicInstruction, ParseErrorKind> {
    if w.contains(':') || is_op_name(w) {
        return Ok(BasicInstruction::Symbolic(w.parse::<SrramInstruction>()?));
    }
    let mut chars = w.chars();
    let valid = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !valid {
        return Err(ParseErrorKind::BadIdentifier(w.to_string()));
    }
    Ok(BasicInstruction::named(w))
}

pub fn parse_sequence(text: &str) -> Result<InstructionSequence, ParseError> {
    let tokens = lex(text);
    let end = match text.lines().enumerate().last() {
        Some((i, l)) => (i + 1, l.chars().count() + 1),
        None => (1, 1),
    };
    let mut p = Parser { tokens, pos: 0, end };
    let s = p.seq()?;
    if let Some(t) = p.peek().cloned() {
        return Err(p.error(ParseErrorKind::Unexpected(tok_text(&t).to_string())));
    }
    Ok(s)
}

struct Joined<'a>(&'a [PrimitiveInstruction]);

impl fmt::Display for Joined<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, u) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{u}")?;
        }
        Ok(())
    }
}

pub(super) fn print_sequence(s: &InstructionSequence) -> String {
    match (s.prefix.is_empty(), s.period.is_empty()) {
        (_, true) => Joined(&s.prefix).to_string(),
        (true, false) => format!("({})*", Joined(&s.period)),
        (false, false) => format!("{};({})*", Joined(&s.prefix), Joined(&s.period)),
    }
}
