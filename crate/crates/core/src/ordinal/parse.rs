//! Text form: `ord := "0" | term ("+" term)*`,
//! `term := nat | "w" ("^" "(" ord ")")? ("*" nat)?`.
//!
//! Terms are summed with ordinal addition, so non-normal input such as
//! `1+w` is accepted and denotes `w`. Formatting always yields the normal form.

use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use super::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseOrdinalError {
    pub position: usize,
    pub message: &'static str,
}

impl fmt::Display for ParseOrdinalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid ordinal at byte {}: {}", self.position, self.message)
    }
}

impl core::error::Error for ParseOrdinalError {}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: &'static str) -> ParseOrdinalError {
        ParseOrdinalError {
            position: self.pos,
            message,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8, message: &'static str) -> Result<(), ParseOrdinalError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(message))
        }
    }

    fn nat(&mut self) -> Result<u64, ParseOrdinalError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a natural number"));
        }
        let digits = core::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| ParseOrdinalError {
            position: start,
            message: "natural number out of range",
        })
    }

    fn ord(&mut self) -> Result<Ordinal, ParseOrdinalError> {
        if self.peek() == Some(b'0') {
            let next = self.bytes.get(self.pos + 1).copied();
            if !matches!(next, Some(b'0'..=b'9')) {
                self.pos += 1;
                return Ok(Ordinal::zero());
            }
        }
        let mut acc = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            let t = self.term()?;
            acc = &acc + &t;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal, ParseOrdinalError> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                let mut exponent = Ordinal::one();
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.expect(b'(', "expected '(' after '^'")?;
                    exponent = self.ord()?;
                    self.expect(b')', "expected ')'")?;
                }
                let mut coefficient = 1;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    coefficient = self.nat()?;
                    if coefficient == 0 {
                        return Err(self.err("coefficient must be positive"));
                    }
                }
                Ok(Ordinal::monomial(exponent, coefficient))
            }
            Some(b'1'..=b'9') => Ok(Ordinal::nat(self.nat()?)),
            _ => Err(self.err("expected 'w' or a positive natural")),
        }
    }
}

impl FromStr for Ordinal {
    type Err = ParseOrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            bytes: s.trim().as_bytes(),
            pos: 0,
        };
        let value = p.ord()?;
        if p.pos != p.bytes.len() {
            return Err(p.err("trailing input"));
        }
        Ok(value)
    }
}

/// Comma-separated list of ordinals; empty input gives an empty list.
pub fn parse_list(s: &str) -> Result<alloc::vec::Vec<Ordinal>, ParseOrdinalError> {
    s.split(',')
        .map(str::trim)
        .filter(|part| !part.is_empty())
        .map(str::parse)
        .collect()
}

pub fn format_list(items: &[Ordinal]) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write!(out, "{x}").expect("write to string");
    }
    out
}
