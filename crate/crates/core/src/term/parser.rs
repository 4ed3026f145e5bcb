//! Lexer and precedence-climbing parser for terms and identities.

use std::fmt;

use thiserror::Error;

use super::{Atom, Hypothesis, Identity, Relation, Term, MAX_ROOT_DEGREE, VARIABLES};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownSymbol(String),
    UndeclaredVariable(char),
    UnknownHypothesis(String),
    Unbalanced,
    Unexpected(String),
    UnexpectedEnd,
    BadExponent,
    BadRootDegree,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnknownSymbol(s) => write!(f, "unknown symbol `{s}`"),
            ParseErrorKind::UndeclaredVariable(c) => {
                write!(f, "undeclared variable `{c}` (variables are x, y, z, w)")
            }
            ParseErrorKind::UnknownHypothesis(s) => write!(f, "unknown hypothesis `{s}`"),
            ParseErrorKind::Unbalanced => write!(f, "unbalanced parentheses"),
            ParseErrorKind::Unexpected(s) => write!(f, "unexpected `{s}`"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::BadExponent => write!(f, "exponent must be a positive integer"),
            ParseErrorKind::BadRootDegree => {
                write!(f, "root degree must be between 1 and {MAX_ROOT_DEGREE}")
            }
        }
    }
}

/// A parse failure at a byte offset of the input.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("at byte {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Var(usize),
    Int(u32),
    Sqrt,
    Root(u32),
    Star,
    Arrow,
    Meet,
    Join,
    Prime,
    Caret,
    LParen,
    RParen,
    Eq,
    Le,
    Implies,
    Comma,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Var(i) => write!(f, "{}", VARIABLES[*i]),
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Sqrt => write!(f, "s"),
            Tok::Root(n) => write!(f, "r{n}"),
            Tok::Star => write!(f, "*"),
            Tok::Arrow => write!(f, "->"),
            Tok::Meet => write!(f, "/\\"),
            Tok::Join => write!(f, "\\/"),
            Tok::Prime => write!(f, "'"),
            Tok::Caret => write!(f, "^"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
            Tok::Eq => write!(f, "="),
            Tok::Le => write!(f, "<="),
            Tok::Implies => write!(f, "=>"),
            Tok::Comma => write!(f, ","),
        }
    }
}

fn err(offset: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { offset, kind }
}

/// Tokens with their byte offsets, `base` added to every offset.
fn lex(src: &str, base: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let at = base + i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let two = src.get(i..i + 2).unwrap_or("");
        let (tok, len) = match two {
            "->" => (Tok::Arrow, 2),
            "/\\" => (Tok::Meet, 2),
            "\\/" => (Tok::Join, 2),
            "<=" => (Tok::Le, 2),
            "=>" => (Tok::Implies, 2),
            _ => match c {
                b'*' => (Tok::Star, 1),
                b'\'' => (Tok::Prime, 1),
                b'^' => (Tok::Caret, 1),
                b'(' => (Tok::LParen, 1),
                b')' => (Tok::RParen, 1),
                b'=' => (Tok::Eq, 1),
                b',' => (Tok::Comma, 1),
                b'0'..=b'9' => {
                    let len = bytes[i..].iter().take_while(|b| b.is_ascii_digit()).count();
                    let n = src[i..i + len]
                        .parse()
                        .map_err(|_| err(at, ParseErrorKind::BadExponent))?;
                    (Tok::Int(n), len)
                }
                c if c.is_ascii_alphabetic() => {
                    let len = bytes[i..]
                        .iter()
                        .take_while(|b| b.is_ascii_alphanumeric())
                        .count();
                    let word = &src[i..i + len];
                    (ident(word, at)?, len)
                }
                _ => {
                    let ch = src[i..].chars().next().unwrap();
                    return Err(err(at, ParseErrorKind::UnknownSymbol(ch.to_string())));
                }
            },
        };
        out.push((tok, at));
        i += len;
    }
    Ok(out)
}

fn ident(word: &str, at: usize) -> Result<Tok, ParseError> {
    if word == "s" {
        return Ok(Tok::Sqrt);
    }
    if let Some(i) = VARIABLES
        .iter()
        .position(|v| word.len() == 1 && word.starts_with(*v))
    {
        return Ok(Tok::Var(i));
    }
    if let Some(digits) = word.strip_prefix('r') {
        if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
            return match digits.parse::<u32>() {
                Ok(n) if (1..=MAX_ROOT_DEGREE).contains(&n) => Ok(Tok::Root(n)),
                _ => Err(err(at, ParseErrorKind::BadRootDegree)),
            };
        }
    }
    let mut chars = word.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) if c.is_ascii_lowercase() => {
            Err(err(at, ParseErrorKind::UndeclaredVariable(c)))
        }
        _ => Err(err(at, ParseErrorKind::UnknownSymbol(word.to_string()))),
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some(Tok::RParen) => err(self.offset(), ParseErrorKind::Unbalanced),
            Some(t) => err(self.offset(), ParseErrorKind::Unexpected(t.to_string())),
            None => err(self.end, ParseErrorKind::UnexpectedEnd),
        }
    }

    fn binary_op(tok: &Tok) -> Option<(u8, bool)> {
        match tok {
            Tok::Arrow => Some((1, true)),
            Tok::Join => Some((2, false)),
            Tok::Meet => Some((3, false)),
            Tok::Star => Some((4, false)),
            _ => None,
        }
    }

    fn term(&mut self, min_prec: u8) -> Result<Term, ParseError> {
        let mut lhs = self.postfix()?;
        while let Some((prec, right)) = self.peek().and_then(Self::binary_op) {
            if prec < min_prec {
                break;
            }
            let op = self.bump().unwrap();
            let rhs = self.term(if right { prec } else { prec + 1 })?;
            let (a, b) = (Box::new(lhs), Box::new(rhs));
            lhs = match op {
                Tok::Arrow => Term::Imp(a, b),
                Tok::Join => Term::Join(a, b),
                Tok::Meet => Term::Meet(a, b),
                _ => Term::Mul(a, b),
            };
        }
        Ok(lhs)
    }

    fn postfix(&mut self) -> Result<Term, ParseError> {
        let mut t = self.primary()?;
        loop {
            match self.peek() {
                Some(Tok::Prime) => {
                    self.bump();
                    t = Term::Neg(Box::new(t));
                }
                Some(Tok::Caret) => {
                    self.bump();
                    let at = self.offset();
                    match self.bump() {
                        Some(Tok::Int(k)) if k > 0 => t = Term::Pow(Box::new(t), k),
                        _ => return Err(err(at, ParseErrorKind::BadExponent)),
                    }
                }
                _ => return Ok(t),
            }
        }
    }

    fn parenthesized(&mut self) -> Result<Term, ParseError> {
        let open = self.offset();
        match self.bump() {
            Some(Tok::LParen) => {}
            _ => {
                self.pos -= 1;
                return Err(self.unexpected());
            }
        }
        let t = self.term(1)?;
        match self.peek() {
            Some(Tok::RParen) => {
                self.bump();
                Ok(t)
            }
            None => Err(err(open, ParseErrorKind::Unbalanced)),
            Some(_) => Err(self.unexpected()),
        }
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Var(i)) => {
                self.bump();
                Ok(Term::Var(i))
            }
            Some(Tok::Int(0)) => {
                self.bump();
                Ok(Term::Zero)
            }
            Some(Tok::Int(1)) => {
                self.bump();
                Ok(Term::One)
            }
            Some(Tok::Int(n)) => Err(err(at, ParseErrorKind::UnknownSymbol(n.to_string()))),
            Some(Tok::Sqrt) => {
                self.bump();
                Ok(Term::Sqrt(Box::new(self.parenthesized()?)))
            }
            Some(Tok::Root(n)) => {
                self.bump();
                Ok(Term::Root(n, Box::new(self.parenthesized()?)))
            }
            Some(Tok::LParen) => self.parenthesized(),
            _ => Err(self.unexpected()),
        }
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let lhs = self.term(1)?;
        let rel = match self.peek() {
            Some(Tok::Eq) => Relation::Eq,
            Some(Tok::Le) => Relation::Le,
            _ => return Err(self.unexpected()),
        };
        self.bump();
        let rhs = self.term(1)?;
        Ok(Atom { lhs, rel, rhs })
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            Err(self.unexpected())
        } else {
            Ok(())
        }
    }
}

/// Parse a single term.
pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser {
        toks: lex(src, 0)?,
        pos: 0,
        end: src.len(),
    };
    let t = p.term(1)?;
    p.finish()?;
    Ok(t)
}

/// Parse `{hyps} p1, p2 => lhs = rhs`; the hypothesis list and premises are
/// optional.
pub fn parse_identity(src: &str) -> Result<Identity, ParseError> {
    let mut hypotheses = Vec::new();
    let mut body_start = 0;
    let trimmed = src.trim_start();
    if trimmed.starts_with('{') {
        let open = src.len() - trimmed.len();
        let close = src[open..]
            .find('}')
            .map(|c| open + c)
            .ok_or_else(|| err(open, ParseErrorKind::Unbalanced))?;
        let mut at = open + 1;
        for part in src[open + 1..close].split(',') {
            let name = part.trim();
            let lead = part.len() - part.trim_start().len();
            if !name.is_empty() {
                let h: Hypothesis = name
                    .parse()
                    .map_err(|n| err(at + lead, ParseErrorKind::UnknownHypothesis(n)))?;
                if !hypotheses.contains(&h) {
                    hypotheses.push(h);
                }
            }
            at += part.len() + 1;
        }
        body_start = close + 1;
    }
    let mut p = Parser {
        toks: lex(&src[body_start..], body_start)?,
        pos: 0,
        end: src.len(),
    };
    let mut atoms = vec![p.atom()?];
    while p.peek() == Some(&Tok::Comma) {
        p.bump();
        atoms.push(p.atom()?);
    }
    let (premises, conclusion) = if p.peek() == Some(&Tok::Implies) {
        p.bump();
        (atoms, p.atom()?)
    } else if atoms.len() == 1 {
        (Vec::new(), atoms.pop().unwrap())
    } else {
        return Err(p.unexpected());
    };
    p.finish()?;
    Ok(Identity {
        hypotheses,
        premises,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> Box<Term> {
        Box::new(Term::Var(i))
    }

    #[test]
    fn precedence_and_associativity() {
        let t = parse_term("x * y -> z").unwrap();
        assert_eq!(t, Term::Imp(Box::new(Term::Mul(v(0), v(1))), v(2)));
        let t = parse_term("x -> y -> z").unwrap();
        assert_eq!(t, Term::Imp(v(0), Box::new(Term::Imp(v(1), v(2)))));
        let t = parse_term("x \\/ y /\\ z").unwrap();
        assert_eq!(t, Term::Join(v(0), Box::new(Term::Meet(v(1), v(2)))));
        let t = parse_term("x * y'^2").unwrap();
        assert_eq!(
            t,
            Term::Mul(v(0), Box::new(Term::Pow(Box::new(Term::Neg(v(1))), 2)))
        );
    }

    #[test]
    fn printer_uses_minimal_parentheses() {
        for src in [
            "x * y -> z",
            "(x -> y) -> z",
            "x * (y * z)",
            "(x * y)'",
            "s(x)^2 <= r3(y')",
        ] {
            let text = match parse_term(src) {
                Ok(t) => t.to_string(),
                Err(_) => parse_identity(src).unwrap().to_string(),
            };
            assert_eq!(text, src);
        }
    }

    #[test]
    fn identities_with_hypotheses_and_premises() {
        let id = parse_identity("{bounded, sqrt} x <= y, y <= z => s(x) <= s(z)").unwrap();
        assert_eq!(id.hypotheses.len(), 2);
        assert_eq!(id.premises.len(), 2);
        assert_eq!(
            id.to_string(),
            "{bounded, sqrt} x <= y, y <= z => s(x) <= s(z)"
        );
    }

    #[test]
    fn error_offsets() {
        assert_eq!(
            parse_term("x * q").unwrap_err(),
            err(4, ParseErrorKind::UndeclaredVariable('q'))
        );
        assert_eq!(
            parse_term("(x * y").unwrap_err(),
            err(0, ParseErrorKind::Unbalanced)
        );
        assert_eq!(
            parse_term("x * y)").unwrap_err(),
            err(5, ParseErrorKind::Unbalanced)
        );
        assert_eq!(
            parse_term("x # y").unwrap_err(),
            err(2, ParseErrorKind::UnknownSymbol("#".into()))
        );
        assert_eq!(
            parse_term("x ^ 0").unwrap_err().kind,
            ParseErrorKind::BadExponent
        );
        assert_eq!(
            parse_term("r12(x)").unwrap_err().kind,
            ParseErrorKind::BadRootDegree
        );
        assert_eq!(
            parse_identity("{sqrt, shiny} x = x").unwrap_err(),
            err(7, ParseErrorKind::UnknownHypothesis("shiny".into()))
        );
        assert_eq!(
            parse_identity("x = y, y = z").unwrap_err().kind,
            ParseErrorKind::UnexpectedEnd
        );
    }
}
