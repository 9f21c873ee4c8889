//! Parser for the term language `e | s(A,B,...) | p(A,B,...) | path(n) | cycle(n) | theta(l1,...,lk)`.
//!
//! `s` and `p` accept two or more arguments and fold them to the left.
//! Whitespace is allowed between tokens.

use super::SpExpr;
use crate::{Error, Result};

const MAX_NESTING: usize = 2048;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nesting: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a term");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match text.parse::<u64>() {
            Ok(n) => Ok(n),
            Err(_) => {
                self.pos = start;
                self.err("expected a non-negative integer")
            }
        }
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        self.expect(b'(')?;
        let mut out = vec![item(self)?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            out.push(item(self)?);
        }
        self.expect(b')')?;
        Ok(out)
    }

    fn term(&mut self) -> Result<SpExpr> {
        self.nesting += 1;
        if self.nesting > MAX_NESTING {
            return self.err("nesting too deep");
        }
        let start = self.pos;
        let name = self.ident()?;
        let located = |r: Result<SpExpr>| {
            r.map_err(|e| match e {
                Error::Argument(msg) => Error::Parse { pos: start, msg },
                other => other,
            })
        };
        let out = match name {
            "e" => Ok(SpExpr::edge()),
            "s" | "p" => {
                let args = self.list(Self::term)?;
                if args.len() < 2 {
                    return self.err(format!("'{name}' needs at least two arguments"));
                }
                let op = if name == "s" { SpExpr::series } else { SpExpr::parallel };
                Ok(args[1..].iter().fold(args[0].clone(), |acc, g| op(&acc, g)))
            }
            "path" | "cycle" => {
                let args = self.list(Self::integer)?;
                if args.len() != 1 {
                    return self.err(format!("'{name}' takes exactly one integer"));
                }
                located(if name == "path" { SpExpr::path(args[0]) } else { SpExpr::cycle(args[0]) })
            }
            "theta" => {
                let args = self.list(Self::integer)?;
                located(SpExpr::theta(&args))
            }
            other => {
                self.pos = start;
                self.err(format!("unknown term '{other}'"))
            }
        };
        self.nesting -= 1;
        out
    }
}

/// Parse a term into an [`SpExpr`].
pub fn parse(text: &str) -> Result<SpExpr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, nesting: 0 };
    let g = p.term()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(g)
}

impl std::str::FromStr for SpExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<SpExpr> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_macros() {
        assert_eq!(parse("theta(2,2)").unwrap(), SpExpr::theta(&[2, 2]).unwrap());
        assert_eq!(parse(" path( 3 ) ").unwrap(), SpExpr::path(3).unwrap());
        assert_eq!(parse("cycle(4)").unwrap(), SpExpr::cycle(4).unwrap());
        assert_eq!(parse("s(e,e)").unwrap(), SpExpr::path(2).unwrap());
        let g = parse("p(e, s(e,e), e)").unwrap();
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn round_trip() {
        let g = parse("p(s(e,p(e,e)),theta(1,3))").unwrap();
        assert_eq!(parse(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse("s(e)"), Err(Error::Parse { .. })));
        assert!(matches!(parse("q(e,e)"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse("path(0)"), Err(Error::Parse { .. })));
        assert!(matches!(parse("e e"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse("theta()"), Err(Error::Parse { .. })));
        assert!(matches!(parse(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn deep_nesting_is_refused() {
        let text = format!("{}e{}", "s(e,".repeat(5000), ")".repeat(5000));
        assert!(matches!(parse(&text), Err(Error::Parse { .. })));
    }
}
