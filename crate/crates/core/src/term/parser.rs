//! Recursive-descent parser for the ASCII term syntax.
//!
//! ```text
//! join  := meet ('\/' meet)*
//! meet  := add ('/\' add)*
//! add   := mul (('(+)' | '(-)') mul)*
//! mul   := unary ('(*)' unary)*
//! unary := '~' unary | NUM '*' unary | atom
//! atom  := '0' | '1' | 'x'K | 'd' '(' join ',' join ')' | '(' join ')'
//! ```
//!
//! Variables are 1-based in the surface syntax (`x1`) and 0-based in [`Term`].

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use super::Term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at byte {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("line {line}: {source}")]
    Line {
        line: usize,
        #[source]
        source: alloc::boxed::Box<ParseError>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(u64),
    Var(usize),
    Dist,
    Oplus,
    Odot,
    Ominus,
    Neg,
    Join,
    Meet,
    Star,
    LParen,
    RParen,
    Comma,
    End,
}

fn syntax(pos: usize, msg: &str) -> ParseError {
    ParseError::Syntax {
        pos,
        msg: msg.to_string(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'(' if i + 2 < bytes.len()
                && matches!(bytes[i + 1], b'+' | b'*' | b'-')
                && bytes[i + 2] == b')' =>
            {
                i += 3;
                match bytes[start + 1] {
                    b'+' => Tok::Oplus,
                    b'*' => Tok::Odot,
                    _ => Tok::Ominus,
                }
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b',' => {
                i += 1;
                Tok::Comma
            }
            b'~' => {
                i += 1;
                Tok::Neg
            }
            b'*' => {
                i += 1;
                Tok::Star
            }
            b'\\' if bytes.get(i + 1) == Some(&b'/') => {
                i += 2;
                Tok::Join
            }
            b'/' if bytes.get(i + 1) == Some(&b'\\') => {
                i += 2;
                Tok::Meet
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i]
                    .parse()
                    .map_err(|_| syntax(start, "number too large"))?;
                Tok::Num(n)
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &text[start..i];
                if word == "d" {
                    Tok::Dist
                } else if let Some(k) = word
                    .strip_prefix('x')
                    .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&k| k >= 1)
                {
                    Tok::Var(k - 1)
                } else {
                    return Err(ParseError::UnknownIdentifier {
                        pos: start,
                        name: word.to_string(),
                    });
                }
            }
            _ => return Err(syntax(start, "unexpected character")),
        };
        out.push((start, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn peek2(&self) -> &Tok {
        self.toks.get(self.pos + 1).map_or(&Tok::End, |t| &t.1)
    }

    fn at(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.at(), what))
        }
    }

    fn join(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.meet()?;
        while *self.peek() == Tok::Join {
            self.bump();
            lhs = Term::join(lhs, self.meet()?);
        }
        Ok(lhs)
    }

    fn meet(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.add()?;
        while *self.peek() == Tok::Meet {
            self.bump();
            lhs = Term::meet(lhs, self.add()?);
        }
        Ok(lhs)
    }

    fn add(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.mul()?;
        loop {
            match self.peek() {
                Tok::Oplus => {
                    self.bump();
                    lhs = Term::oplus(lhs, self.mul()?);
                }
                Tok::Ominus => {
                    self.bump();
                    lhs = Term::ominus(lhs, self.mul()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn mul(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Odot {
            self.bump();
            lhs = Term::odot(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Term, ParseError> {
        match (self.peek().clone(), self.peek2()) {
            (Tok::Neg, _) => {
                self.bump();
                Ok(Term::neg(self.unary()?))
            }
            (Tok::Num(n), Tok::Star) => {
                self.bump();
                self.bump();
                Ok(Term::scalar(n, self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let at = self.at();
        match self.bump() {
            Tok::Num(0) => Ok(Term::Zero),
            Tok::Num(1) => Ok(Term::one()),
            Tok::Num(_) => Err(syntax(
                at,
                "only 0 and 1 are constants; use n*t for multiples",
            )),
            Tok::Var(i) => Ok(Term::Var(i)),
            Tok::Dist => {
                self.expect(Tok::LParen, "expected `(` after d")?;
                let a = self.join()?;
                self.expect(Tok::Comma, "expected `,` in d(a, b)")?;
                let b = self.join()?;
                self.expect(Tok::RParen, "expected `)` closing d(a, b)")?;
                Ok(Term::dist(a, b))
            }
            Tok::LParen => {
                let t = self.join()?;
                self.expect(Tok::RParen, "expected `)`")?;
                Ok(t)
            }
            Tok::End => Err(syntax(at, "unexpected end of input")),
            _ => Err(syntax(at, "expected a term")),
        }
    }
}

/// Parses one term; derived connectives are desugared on the way.
pub fn parse(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let t = p.join()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.at(), "trailing input"));
    }
    Ok(t)
}

/// Parses one term per line, skipping blank lines and `#` comments.
pub fn parse_lines(text: &str) -> Result<Vec<Term>, ParseError> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        out.push(parse(body).map_err(|e| ParseError::Line {
            line: n + 1,
            source: alloc::boxed::Box::new(e),
        })?);
    }
    Ok(out)
}
