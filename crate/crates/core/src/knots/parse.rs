//! Recursive-descent parser for knot expressions.
//!
//! ```text
//! expr := "unknot"
//!       | "torus(" int "," int ")"
//!       | "pretzel(" int ")"
//!       | "cable(" expr ";" int "," int ")"
//! ```
//!
//! Whitespace is ignored between tokens.

use num_integer::Integer;
use thiserror::Error;

use super::KnotExpr;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column} (byte {offset}): {message}")]
    Syntax { offset: usize, line: usize, column: usize, message: String },
    #[error("`{name}` takes {expected} integer argument(s), got {found} (line {line}, column {column})")]
    Arity { name: String, expected: usize, found: usize, line: usize, column: usize },
    #[error("parameters ({p}, {q}) of `{name}` are not coprime (line {line}, column {column})")]
    NotCoprime { name: String, p: u64, q: u64, line: usize, column: usize },
    #[error("`{name}` parameters must be positive (line {line}, column {column})")]
    NonPositive { name: String, line: usize, column: usize },
}

impl ParseError {
    pub fn location(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, column, .. }
            | ParseError::Arity { line, column, .. }
            | ParseError::NotCoprime { line, column, .. }
            | ParseError::NonPositive { line, column, .. } => (*line, *column),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn location(&self, offset: usize) -> (usize, usize) {
        let before = &self.src[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map_or(offset, |nl| offset - nl - 1) + 1;
        (line, column)
    }

    fn syntax(&self, offset: usize, message: impl Into<String>) -> ParseError {
        let (line, column) = self.location(offset);
        ParseError::Syntax { offset, line, column, message: message.into() }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(found) if found == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(found) => Err(self.syntax(self.pos, format!("expected `{c}`, found `{found}`"))),
            None => Err(self.syntax(self.pos, format!("expected `{c}`, found end of input"))),
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..].chars().take_while(|c| c.is_ascii_alphabetic()).count();
        if len == 0 {
            return Err(match self.src[start..].chars().next() {
                Some(c) => self.syntax(start, format!("expected a knot name, found `{c}`")),
                None => self.syntax(start, "expected a knot name, found end of input"),
            });
        }
        self.pos += len;
        Ok((start, &self.src[start..start + len]))
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..].chars().take_while(|c| c.is_ascii_digit()).count();
        if len == 0 {
            return Err(self.syntax(start, "expected a non-negative integer"));
        }
        self.pos += len;
        self.src[start..start + len].parse().map_err(|_| self.syntax(start, "integer too large"))
    }

    /// Comma-separated integers up to (not including) the closing `)`.
    fn int_list(&mut self) -> Result<Vec<u64>, ParseError> {
        let mut out = Vec::new();
        if self.peek() == Some(')') {
            return Ok(out);
        }
        out.push(self.int()?);
        while self.peek() == Some(',') {
            self.pos += 1;
            out.push(self.int()?);
        }
        Ok(out)
    }

    fn args<const N: usize>(&mut self, name: &str, start: usize) -> Result<[u64; N], ParseError> {
        let list = self.int_list()?;
        self.expect(')')?;
        let (line, column) = self.location(start);
        let args: [u64; N] = list.clone().try_into().map_err(|_| ParseError::Arity {
            name: name.to_string(),
            expected: N,
            found: list.len(),
            line,
            column,
        })?;
        if args.contains(&0) {
            return Err(ParseError::NonPositive { name: name.to_string(), line, column });
        }
        if let [p, q] = list[..] {
            if p.gcd(&q) != 1 {
                return Err(ParseError::NotCoprime { name: name.to_string(), p, q, line, column });
            }
        }
        Ok(args)
    }

    fn expr(&mut self) -> Result<KnotExpr, ParseError> {
        let (start, name) = self.ident()?;
        match name {
            "unknot" => Ok(KnotExpr::Unknot),
            "torus" => {
                self.expect('(')?;
                let [p, q] = self.args::<2>(name, start)?;
                Ok(KnotExpr::Torus { p, q })
            }
            "pretzel" => {
                self.expect('(')?;
                let [n] = self.args::<1>(name, start)?;
                Ok(KnotExpr::Pretzel { n })
            }
            "cable" => {
                self.expect('(')?;
                let companion = self.expr()?;
                self.expect(';')?;
                let [p, q] = self.args::<2>(name, start)?;
                Ok(KnotExpr::Cable { companion: Box::new(companion), p, q })
            }
            other => Err(self.syntax(start, format!("unknown knot `{other}`"))),
        }
    }
}

pub fn parse_knot(text: &str) -> Result<KnotExpr, ParseError> {
    let mut parser = Parser { src: text, pos: 0 };
    let expr = parser.expr()?;
    if let Some(c) = parser.peek() {
        return Err(parser.syntax(parser.pos, format!("unexpected trailing `{c}`")));
    }
    Ok(expr)
}
