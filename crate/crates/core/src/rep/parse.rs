//! Recursive-descent parser for representation expressions.
//!
//! ```text
//! rep    := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := 'std(' INT ')' | 'dual(std(' INT '))' | 'sym(' INT ',std(' INT '))' | '(' rep ')'
//! ```
//!
//! Whitespace is ignored between tokens. Block indices are 1-based.

use std::collections::BTreeSet;

use super::{RepError, RepExpr};

pub fn parse_rep(text: &str) -> Result<RepExpr, RepError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let expr = p.rep()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> RepError {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, offset: usize, message: impl Into<String>) -> RepError {
        RepError::Syntax {
            offset,
            message: message.into(),
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

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), RepError> {
        if self.eat(byte) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", byte as char)))
        }
    }

    fn keyword(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        let mut end = start;
        while end < self.src.len() && self.src[end].is_ascii_alphabetic() {
            end += 1;
        }
        if end == start {
            return None;
        }
        self.pos = end;
        Some((start, String::from_utf8_lossy(&self.src[start..end]).into_owned()))
    }

    fn integer(&mut self) -> Result<usize, RepError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| self.error_at(start, "integer out of range"))
    }

    fn rep(&mut self) -> Result<RepExpr, RepError> {
        let mut terms = vec![self.term()?];
        while self.eat(b'+') {
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().expect("one term")
        } else {
            RepExpr::DirectSum(terms)
        })
    }

    fn term(&mut self) -> Result<RepExpr, RepError> {
        let start = self.pos;
        let mut factors = vec![self.factor()?];
        while self.eat(b'*') {
            factors.push(self.factor()?);
        }
        if factors.len() == 1 {
            return Ok(factors.pop().expect("one factor"));
        }
        let mut seen = BTreeSet::new();
        for f in &factors {
            for block in f.blocks() {
                if !seen.insert(block) {
                    return Err(self.error_at(
                        start,
                        format!("block {block} appears twice in one tensor product"),
                    ));
                }
            }
        }
        Ok(RepExpr::Tensor(factors))
    }

    /// `std(i)` at the current position, reporting `context` otherwise.
    fn std_argument(&mut self, context: &str) -> Result<usize, RepError> {
        let arg_start = {
            self.skip_ws();
            self.pos
        };
        let arg = self.rep()?;
        match arg {
            RepExpr::Std(i) => Ok(i),
            _ => Err(self.error_at(arg_start, format!("{context} argument must be std(i)"))),
        }
    }

    fn factor(&mut self) -> Result<RepExpr, RepError> {
        if self.eat(b'(') {
            let inner = self.rep()?;
            self.expect(b')')?;
            return Ok(inner);
        }
        let Some((start, word)) = self.keyword() else {
            return Err(self.error("expected std, dual, sym or '('"));
        };
        match word.as_str() {
            "std" => {
                self.expect(b'(')?;
                let at = self.pos;
                let i = self.integer()?;
                if i == 0 {
                    return Err(self.error_at(at, "block indices are 1-based"));
                }
                self.expect(b')')?;
                Ok(RepExpr::Std(i))
            }
            "dual" => {
                self.expect(b'(')?;
                let i = self.std_argument("dual")?;
                self.expect(b')')?;
                Ok(RepExpr::Dual(i))
            }
            "sym" => {
                self.expect(b'(')?;
                let at = self.pos;
                let degree = self.integer()?;
                if degree == 0 {
                    return Err(self.error_at(at, "sym degree must be at least 1"));
                }
                self.expect(b',')?;
                let i = self.std_argument("sym")?;
                self.expect(b')')?;
                Ok(RepExpr::Sym(degree, i))
            }
            other => Err(self.error_at(start, format!("unknown constructor {other:?}"))),
        }
    }
}
