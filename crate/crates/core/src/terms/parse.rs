use super::{Identity, Term};
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
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

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    /// `term := atom (('*' | '\') term)?`, so both operators associate to the right.
    fn term(&mut self) -> Result<Term> {
        let left = self.atom()?;
        match self.peek() {
            Some(b'*') => {
                self.pos += 1;
                Ok(Term::mul(left, self.term()?))
            }
            Some(b'\\') => {
                self.pos += 1;
                Ok(Term::ldiv(left, self.term()?))
            }
            _ => Ok(left),
        }
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let t = self.term()?;
                if self.peek() != Some(b')') {
                    return self.error("expected `)`");
                }
                self.pos += 1;
                Ok(t)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(Term::var(name))
            }
            Some(_) => self.error("expected a variable or `(`"),
            None => self.error("unexpected end of input"),
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => self.error("unexpected trailing input"),
        }
    }
}

pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_identity(text: &str) -> Result<Identity> {
    let Some(eq) = text.find('=') else {
        return Err(Error::Syntax {
            pos: text.len(),
            msg: "expected `lhs = rhs`".into(),
        });
    };
    let lhs = parse_term(&text[..eq]).map_err(|e| shift(e, 0))?;
    let rhs = parse_term(&text[eq + 1..]).map_err(|e| shift(e, eq + 1))?;
    Ok(Identity { lhs, rhs })
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Syntax { pos, msg } => Error::Syntax { pos: pos + by, msg },
        other => other,
    }
}
