//! Text formats: the polynomial grammar, linear-form files and matrix files.
//!
//! ```text
//! poly   := sign? term (('+'|'-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := var ('^' nat)?
//! var    := 'x' nat          (1-based)
//! coeff  := int ('/' nat)?
//! ```
//!
//! Whitespace is ignored everywhere. A leading sign is accepted so that every
//! formatted polynomial parses back.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::Matrix;
use crate::poly::{LinearForm, Monomial, Polynomial};
use crate::scalar::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
}

impl ParseError {
    fn at(offset: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            offset,
            message: message.into(),
        }
    }

    fn line(line: usize, err: impl std::fmt::Display) -> Self {
        ParseError::Line {
            line,
            message: err.to_string(),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::at(start, "expected a natural number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn small_nat(&mut self, what: &str) -> Result<usize, ParseError> {
        let start = self.pos;
        let n = self.nat()?;
        n.to_string()
            .parse::<usize>()
            .ok()
            .filter(|&v| v <= u16::MAX as usize)
            .ok_or_else(|| ParseError::at(start, format!("{what} out of range")))
    }

    fn factor(&mut self) -> Result<(usize, u16), ParseError> {
        let start = self.pos;
        if !self.eat(b'x') {
            return Err(ParseError::at(start, "expected a variable `x<n>`"));
        }
        let idx_at = self.pos;
        let idx = self.small_nat("variable index")?;
        if idx == 0 {
            return Err(ParseError::at(idx_at, "variables are numbered from x1"));
        }
        let exp = if self.eat(b'^') {
            self.small_nat("exponent")? as u16
        } else {
            1
        };
        Ok((idx - 1, exp))
    }

    fn term(&mut self) -> Result<(Monomial, Rational), ParseError> {
        let mut coeff = Rational::one();
        let mut exps: Vec<u16> = Vec::new();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.nat()?;
                let den = if self.eat(b'/') {
                    let at = self.pos;
                    let d = self.nat()?;
                    if d.is_zero() {
                        return Err(ParseError::at(at, "zero denominator"));
                    }
                    d
                } else {
                    BigInt::one()
                };
                coeff = Rational::new(num, den);
            }
            Some(b'x') => {
                let (i, e) = self.factor()?;
                add_exp(&mut exps, i, e);
            }
            _ => {
                self.skip_ws();
                return Err(ParseError::at(self.pos, "expected a term"));
            }
        }
        while self.eat(b'*') {
            let (i, e) = self.factor()?;
            add_exp(&mut exps, i, e);
        }
        Ok((Monomial::from_exponents(&exps), coeff))
    }

    fn poly(&mut self) -> Result<Polynomial, ParseError> {
        let mut out = Polynomial::zero(0);
        let mut negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let (m, c) = self.term()?;
            out.add_term(m, if negate { -c } else { c });
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                break;
            }
        }
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(ParseError::at(self.pos, "unexpected trailing input"));
        }
        Ok(out)
    }
}

fn add_exp(exps: &mut Vec<u16>, i: usize, e: u16) {
    if exps.len() <= i {
        exps.resize(i + 1, 0);
    }
    exps[i] += e;
}

/// Parses a polynomial; errors carry the byte offset of the problem.
pub fn parse_polynomial(text: &str) -> Result<Polynomial, ParseError> {
    let p = Parser::new(text).poly()?;
    let n = p.used_nvars();
    Ok(p.with_nvars(n))
}

/// Formats terms in descending lex order; parses back to the same value.
pub fn format_polynomial(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&format_rational(&mag));
        } else if mag.is_one() {
            out.push_str(&m.to_string());
        } else {
            out.push_str(&format_rational(&mag));
            out.push('*');
            out.push_str(&m.to_string());
        }
    }
    out
}

pub fn parse_linear_form(text: &str) -> Result<LinearForm, ParseError> {
    let p = parse_polynomial(text)?;
    LinearForm::from_polynomial(&p).map_err(|e| ParseError::at(0, e.to_string()))
}

/// One form per non-empty line; `#` starts a comment.
pub fn parse_linear_forms(text: &str) -> Result<Vec<LinearForm>, ParseError> {
    content_lines(text)
        .map(|(no, line)| parse_linear_form(line).map_err(|e| ParseError::line(no, e)))
        .collect()
}

pub fn format_linear_forms(forms: &[LinearForm]) -> String {
    forms.iter().map(|f| format!("{f}\n")).collect()
}

/// One row per non-empty line, whitespace-separated rationals.
pub fn parse_matrix(text: &str) -> Result<Matrix, ParseError> {
    let mut rows = Vec::new();
    for (no, line) in content_lines(text) {
        let row = line
            .split_whitespace()
            .map(|tok| {
                parse_rational(tok)
                    .ok_or_else(|| ParseError::line(no, format!("bad rational `{tok}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push((no, row));
    }
    if let Some((_, first)) = rows.first() {
        let width = first.len();
        if let Some((no, _)) = rows.iter().find(|(_, r)| r.len() != width) {
            return Err(ParseError::line(*no, "ragged matrix row"));
        }
    }
    Matrix::from_rows(rows.into_iter().map(|(_, r)| r).collect())
        .map_err(|e| ParseError::line(0, e))
}

pub fn format_matrix(m: &Matrix) -> String {
    m.rows()
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(format_rational).collect();
            cells.join(" ") + "\n"
        })
        .collect()
}

/// Non-empty, comment-stripped lines with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}
