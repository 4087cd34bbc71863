//! Recursive-descent parser for identity sources.
//!
//! ```text
//! identity := ["cyc"] side "=" (side | "0")
//! side     := term ["*" term]
//! term     := var | "1" | "a(" side ")" | "(" side ")" | "[" side "," side "]"
//! var      := "x" | "y" | "z"
//! ```
//!
//! A bare product is only accepted at the top of a side or directly inside
//! `a(..)`; every other product must be grouped.

use super::term::{Form, Identity, ProductSymbol, Term, Var};
use crate::error::{Error, Result};

pub fn parse_identity(text: &str) -> Result<Identity> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, symbol: None };
    p.identity()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    symbol: Option<(ProductSymbol, usize)>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { offset: self.pos, message: message.into() })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => self.err(format!("expected `{}`, found `{}`", c as char, got as char)),
            None => self.err(format!("expected `{}`, found end of input", c as char)),
        }
    }

    fn note_symbol(&mut self, s: ProductSymbol, offset: usize) -> Result<()> {
        match self.symbol {
            None => {
                self.symbol = Some((s, offset));
                Ok(())
            }
            Some((prev, _)) if prev == s => Ok(()),
            Some(_) => Err(Error::MixedProductSymbols { offset }),
        }
    }

    fn identity(&mut self) -> Result<Identity> {
        self.skip_ws();
        let cyclic = self.src[self.pos..].starts_with(b"cyc")
            && !self.src.get(self.pos + 3).is_some_and(|c| c.is_ascii_alphanumeric());
        if cyclic {
            self.pos += 3;
        }
        let lhs = self.side()?;
        self.expect(b'=')?;
        let zero = self.peek() == Some(b'0');
        let form = match (cyclic, zero) {
            (true, true) => {
                self.pos += 1;
                Form::CyclicZero(lhs)
            }
            (true, false) => return self.err("cyclic identity must have right-hand side `0`"),
            (false, true) => return self.err("`= 0` requires the `cyc` prefix"),
            (false, false) => Form::Equation { lhs, rhs: self.side()? },
        };
        if let Some(c) = self.peek() {
            return self.err(format!("unexpected `{}` after identity", c as char));
        }
        let symbol = self.symbol.map_or(ProductSymbol::Star, |(s, _)| s);
        Ok(Identity { form, symbol })
    }

    fn side(&mut self) -> Result<Term> {
        let left = self.term()?;
        if self.peek() == Some(b'*') {
            let at = self.pos;
            self.note_symbol(ProductSymbol::Star, at)?;
            self.pos += 1;
            let right = self.term()?;
            if self.peek() == Some(b'*') {
                return self.err("ambiguous product; add parentheses");
            }
            return Ok(Term::prod(left, right));
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<Term> {
        let Some(c) = self.peek() else {
            return self.err("expected a term, found end of input");
        };
        match c {
            b'1' => {
                self.pos += 1;
                Ok(Term::Unit)
            }
            b'(' => {
                self.pos += 1;
                let t = self.side()?;
                self.expect(b')')?;
                Ok(t)
            }
            b'[' => {
                let at = self.pos;
                self.note_symbol(ProductSymbol::Bracket, at)?;
                self.pos += 1;
                let l = self.side()?;
                self.expect(b',')?;
                let r = self.side()?;
                self.expect(b']')?;
                Ok(Term::prod(l, r))
            }
            c if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("?");
                if name == "a" && self.peek() == Some(b'(') {
                    self.pos += 1;
                    let inner = self.side()?;
                    self.expect(b')')?;
                    return Ok(Term::twist(inner));
                }
                let mut chars = name.chars();
                match (chars.next().and_then(Var::from_char), chars.next()) {
                    (Some(v), None) => Ok(Term::var(v)),
                    _ => Err(Error::UnknownVariable { offset: start, name: name.to_string() }),
                }
            }
            other => self.err(format!("unexpected `{}`", other as char)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::term::Var::*;

    fn v(x: Var) -> Term {
        Term::var(x)
    }

    #[test]
    fn assoc_i1_source() {
        let id = parse_identity("a(x)*(y*z) = (x*y)*a(z)").unwrap();
        let expected = Identity::equation(
            Term::prod(Term::twist(v(X)), Term::prod(v(Y), v(Z))),
            Term::prod(Term::prod(v(X), v(Y)), Term::twist(v(Z))),
        );
        assert_eq!(id, expected);
    }

    #[test]
    fn lie_i1_source() {
        let id = parse_identity("cyc [a(x),[y,z]] = 0").unwrap();
        assert_eq!(id, Identity::cyclic(Term::prod(Term::twist(v(X)), Term::prod(v(Y), v(Z)))));
    }

    #[test]
    fn trailing_star_reports_offset() {
        assert_eq!(
            parse_identity("x*"),
            Err(Error::Syntax { offset: 2, message: "expected a term, found end of input".into() })
        );
    }

    #[test]
    fn rejects_unknown_variable() {
        assert!(matches!(parse_identity("w*x = x*w"), Err(Error::UnknownVariable { offset: 0, .. })));
    }

    #[test]
    fn rejects_ungrouped_chain() {
        assert!(matches!(parse_identity("x*y*z = x"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn zero_needs_cyc() {
        assert!(parse_identity("[x,y] = 0").is_err());
        assert!(parse_identity("cyc [x,y] = x").is_err());
    }

    #[test]
    fn mixed_symbols() {
        assert!(matches!(parse_identity("[x,y]*z = z"), Err(Error::MixedProductSymbols { .. })));
    }

    #[test]
    fn whitespace_insignificant_and_unit() {
        let a = parse_identity("  x * a ( 1 ) =a(x)").unwrap();
        let b = parse_identity("x*a(1)=a(x)").unwrap();
        assert_eq!(a, b);
        assert!(a.uses_unit());
    }
}
