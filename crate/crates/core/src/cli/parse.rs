//! Parser for family expressions:
//! `gh(n,m)` | `qgh(n,m)` | `L(n,m)` | `LH(n,m,s)` | `H(n)`.

use std::fmt;
use std::ops::Range;

use crate::families::{Family, FamilySpec};

/// Largest accepted degree; exponents are stored in 16 bits.
pub const MAX_DEGREE: u32 = 1000;
/// Largest accepted shape index `m` or `s`.
pub const MAX_INDEX: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    /// Byte range into the source.
    pub span: Range<usize>,
}

impl ParseError {
    fn new(message: impl Into<String>, span: Range<usize>) -> Self {
        ParseError { message: message.into(), span }
    }

    /// The message with the source line and a caret marker under the span.
    pub fn render(&self, source: &str) -> String {
        let start = source[..self.span.start.min(source.len())].chars().count();
        let width = source.get(self.span.clone()).map(|s| s.chars().count()).unwrap_or(0).max(1);
        format!("error: {}\n  {}\n  {}{}", self.message, source, " ".repeat(start), "^".repeat(width))
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}..{}", self.message, self.span.start, self.span.end)
    }
}

impl std::error::Error for ParseError {}

/// A parsed family expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyExpr {
    pub spec: FamilySpec,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn here(&self) -> Range<usize> {
        let len = self.peek().map(char::len_utf8).unwrap_or(0);
        self.pos..self.pos + len
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(ParseError::new(format!("expected `{want}`, found `{c}`"), self.here())),
            None => Err(ParseError::new(format!("expected `{want}`, found end of input"), self.here())),
        }
    }

    fn ident(&mut self) -> Result<(&'a str, Range<usize>), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if !c.is_ascii_alphabetic() {
                break;
            }
            self.pos += 1;
        }
        if start == self.pos {
            let found = self.peek().map(|c| format!("`{c}`")).unwrap_or_else(|| "end of input".into());
            return Err(ParseError::new(format!("expected a family name, found {found}"), self.here()));
        }
        Ok((&self.src[start..self.pos], start..self.pos))
    }

    fn integer(&mut self) -> Result<(u32, Range<usize>), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let span = start..self.pos;
        if span.is_empty() {
            let found = self.peek().map(|c| format!("`{c}`")).unwrap_or_else(|| "end of input".into());
            return Err(ParseError::new(format!("expected a nonnegative integer, found {found}"), self.here()));
        }
        let value =
            self.src[span.clone()].parse::<u32>().map_err(|_| ParseError::new("integer out of range", span.clone()))?;
        Ok((value, span))
    }
}

fn degree(value: (u32, Range<usize>)) -> Result<u32, ParseError> {
    if value.0 > MAX_DEGREE {
        return Err(ParseError::new(format!("degree must be at most {MAX_DEGREE}"), value.1));
    }
    Ok(value.0)
}

fn index(value: (u32, Range<usize>), name: &str) -> Result<u32, ParseError> {
    if value.0 == 0 || value.0 > MAX_INDEX {
        return Err(ParseError::new(format!("{name} must lie in 1..={MAX_INDEX}"), value.1));
    }
    Ok(value.0)
}

/// Parses a whole family expression; trailing input is an error.
pub fn parse_family(src: &str) -> Result<FamilyExpr, ParseError> {
    let mut cur = Cursor { src, pos: 0 };
    let (name, name_span) = cur.ident()?;
    let arity = match name {
        "gh" | "qgh" | "L" => 2,
        "LH" => 3,
        "H" => 1,
        _ => return Err(ParseError::new(format!("unknown family `{name}` (expected gh, qgh, L, LH or H)"), name_span)),
    };
    cur.expect('(')?;
    let mut args = Vec::with_capacity(arity);
    for i in 0..arity {
        if i > 0 {
            cur.expect(',')?;
        }
        args.push(cur.integer()?);
    }
    cur.expect(')')?;
    cur.skip_ws();
    if cur.pos < src.len() {
        return Err(ParseError::new("unexpected trailing input", cur.pos..src.len()));
    }
    let mut args = args.into_iter();
    let n = degree(args.next().expect("arity >= 1"))?;
    let family = match name {
        "gh" => Family::ClassicalGh { m: index(args.next().expect("arity 2"), "m")? },
        "qgh" => Family::QGh { m: index(args.next().expect("arity 2"), "m")? },
        "L" => Family::Q2dlp { m: index(args.next().expect("arity 2"), "m")? },
        "LH" => {
            let m = index(args.next().expect("arity 3"), "m")?;
            Family::QLghp { m, s: index(args.next().expect("arity 3"), "s")? }
        }
        _ => Family::QHermite,
    };
    Ok(FamilyExpr { spec: FamilySpec::new(family, n) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_family() {
        assert_eq!(parse_family("LH(2,2,2)").unwrap().spec, FamilySpec::new(Family::QLghp { m: 2, s: 2 }, 2));
        assert_eq!(parse_family(" gh( 2 , 2 ) ").unwrap().spec, FamilySpec::new(Family::ClassicalGh { m: 2 }, 2));
        assert_eq!(parse_family("qgh(3,1)").unwrap().spec, FamilySpec::new(Family::QGh { m: 1 }, 3));
        assert_eq!(parse_family("L(0,1)").unwrap().spec, FamilySpec::new(Family::Q2dlp { m: 1 }, 0));
        assert_eq!(parse_family("H(4)").unwrap().spec, FamilySpec::new(Family::QHermite, 4));
    }

    #[test]
    fn errors_carry_spans() {
        let e = parse_family("LH(2 2,2)").unwrap_err();
        assert_eq!(e.span, 5..6);
        assert_eq!(e.render("LH(2 2,2)"), "error: expected `,`, found `2`\n  LH(2 2,2)\n       ^");
        assert_eq!(parse_family("Q(1)").unwrap_err().span, 0..1);
        assert_eq!(parse_family("L(1,0)").unwrap_err().span, 4..5);
        assert_eq!(parse_family("H(1))").unwrap_err().span, 4..5);
        assert_eq!(parse_family("H(").unwrap_err().span, 2..2);
        assert!(parse_family("").is_err());
        assert!(parse_family("L(99999999999,1)").is_err());
        assert!(parse_family("L(-1,1)").is_err());
    }

    #[test]
    fn caret_under_multibyte_input() {
        let src = "ξ(1)";
        let e = parse_family(src).unwrap_err();
        assert!(e.render(src).ends_with("\n  ^"));
    }
}
