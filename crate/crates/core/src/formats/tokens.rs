use num_bigint::BigInt;

use crate::pb::{normalize, Constraint, Lit, Relation, VarTable};

/// A syntax error at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tok {
    pub col: usize,
    pub text: String,
}

/// Splits on whitespace and separates every `;`.
pub fn tokenize(line: &str) -> Vec<Tok> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let flush = |out: &mut Vec<Tok>, start: &mut Option<usize>, end: usize| {
        if let Some(s) = start.take() {
            out.push(Tok { col: line[..s].chars().count() + 1, text: line[s..end].to_string() });
        }
    };
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            flush(&mut out, &mut start, i);
        } else if ch == ';' {
            flush(&mut out, &mut start, i);
            out.push(Tok { col: line[..i].chars().count() + 1, text: ";".into() });
        } else if start.is_none() {
            start = Some(i);
        }
    }
    flush(&mut out, &mut start, line.len());
    out
}

/// Terms, relation and right-hand side as written.
pub type RawConstraint = (Vec<(BigInt, Lit)>, Relation, BigInt);

/// A tokenized line with a cursor.
pub struct Cursor<'a> {
    pub line: usize,
    toks: &'a [Tok],
    pos: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(line: usize, toks: &'a [Tok]) -> Cursor<'a> {
        let end_col = toks.last().map_or(1, |t| t.col + t.text.chars().count());
        Cursor { line, toks, pos: 0, end_col }
    }

    pub fn peek(&self) -> Option<&'a str> {
        self.toks.get(self.pos).map(|t| t.text.as_str())
    }

    pub fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn next(&mut self) -> Option<&'a str> {
        let t = self.peek()?;
        self.pos += 1;
        Some(t)
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, col: self.col(), message: message.into() }
    }

    /// Error pointing at the token just consumed.
    pub fn error_prev(&self, message: impl Into<String>) -> ParseError {
        let col = self.pos.checked_sub(1).and_then(|p| self.toks.get(p)).map_or(self.col(), |t| t.col);
        ParseError { line: self.line, col, message: message.into() }
    }

    pub fn expect(&mut self, what: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if t == what => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.error(format!("expected `{what}`, found `{t}`"))),
            None => Err(self.error(format!("expected `{what}` at end of line"))),
        }
    }

    pub fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(format!("unexpected `{t}`"))),
        }
    }

    pub fn integer(&mut self, what: &str) -> Result<BigInt, ParseError> {
        let t = self.next().ok_or_else(|| self.error(format!("expected {what}")))?;
        parse_int(t).ok_or_else(|| self.error_prev(format!("expected {what}, found `{t}`")))
    }

    pub fn usize(&mut self, what: &str) -> Result<usize, ParseError> {
        let t = self.next().ok_or_else(|| self.error(format!("expected {what}")))?;
        t.parse().map_err(|_| self.error_prev(format!("expected {what}, found `{t}`")))
    }

    pub fn lit(&mut self, vars: &mut VarTable) -> Result<Lit, ParseError> {
        let t = self.next().ok_or_else(|| self.error("expected a literal"))?;
        vars.parse_lit(t).map_err(|e| self.error_prev(e.to_string()))
    }

    /// `<coef> <lit> … <rel> <rhs>` up to, not including, a trailing `;`.
    pub fn raw_constraint(&mut self, vars: &mut VarTable) -> Result<RawConstraint, ParseError> {
        let mut terms = Vec::new();
        loop {
            let t = self.peek().ok_or_else(|| self.error("expected a term or relation"))?;
            let rel = match t {
                ">=" => Some(Relation::Ge),
                "<=" => Some(Relation::Le),
                "=" => Some(Relation::Eq),
                _ => None,
            };
            if let Some(rel) = rel {
                self.pos += 1;
                let rhs = self.integer("a right-hand side")?;
                return Ok((terms, rel, rhs));
            }
            let coef = self.integer("a coefficient")?;
            let lit = self.lit(vars)?;
            terms.push((coef, lit));
        }
    }

    /// A single inequality (`>=` or `<=`), normalized.
    pub fn constraint(&mut self, vars: &mut VarTable) -> Result<Constraint, ParseError> {
        let col = self.col();
        let (terms, rel, rhs) = self.raw_constraint(vars)?;
        if rel == Relation::Eq {
            return Err(ParseError { line: self.line, col, message: "equality is not allowed here".into() });
        }
        Ok(normalize(&terms, rel, &rhs).pop().unwrap())
    }
}

pub fn parse_int(t: &str) -> Option<BigInt> {
    let digits = t.strip_prefix('+').unwrap_or(t);
    let body = digits.strip_prefix('-').unwrap_or(digits);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}
