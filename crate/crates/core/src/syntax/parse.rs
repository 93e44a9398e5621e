use thiserror::Error;

use super::{Formula, Sequent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Zero,
    One,
    Ident(String),
    Star,
    Imp,
    Half,
    Caret,
    LParen,
    RParen,
    Comma,
    Turnstile,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, msg: &str| ParseError {
        pos,
        msg: msg.to_string(),
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'*' | b'+' => {
                out.push((start, Tok::Star));
                i += 1;
            }
            b'^' => {
                out.push((start, Tok::Caret));
                i += 1;
            }
            b'(' => {
                out.push((start, Tok::LParen));
                i += 1;
            }
            b')' => {
                out.push((start, Tok::RParen));
                i += 1;
            }
            b',' => {
                out.push((start, Tok::Comma));
                i += 1;
            }
            b'-' => match bytes.get(i + 1) {
                Some(b'o') | Some(b'>') => {
                    out.push((start, Tok::Imp));
                    i += 2;
                }
                _ => return Err(err(start, "expected `-o` or `->`")),
            },
            b'|' => {
                if bytes.get(i + 1) == Some(&b'-') {
                    out.push((start, Tok::Turnstile));
                    i += 2;
                } else {
                    return Err(err(start, "expected `|-`"));
                }
            }
            b'/' => {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                    i += 1;
                }
                if bytes.get(i) == Some(&b'2')
                    && !bytes.get(i + 1).is_some_and(|b| b.is_ascii_alphanumeric())
                {
                    out.push((start, Tok::Half));
                    i += 1;
                } else {
                    return Err(err(start, "expected `/2`"));
                }
            }
            b'0' | b'1' => {
                if bytes.get(i + 1).is_some_and(|b| b.is_ascii_alphanumeric()) {
                    return Err(err(start, "malformed constant"));
                }
                out.push((start, if c == b'0' { Tok::Zero } else { Tok::One }));
                i += 1;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(err(start, &format!("unexpected character `{ch}`")));
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.here(),
            msg: msg.into(),
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.conj()?;
        if self.eat(&Tok::Imp) {
            let rhs = self.formula()?;
            Ok(Formula::imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.postfix()?;
        while self.eat(&Tok::Star) {
            let rhs = self.postfix()?;
            acc = Formula::conj(acc, rhs);
        }
        Ok(acc)
    }

    fn postfix(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.atom()?;
        loop {
            if self.eat(&Tok::Half) {
                acc = Formula::half(acc);
            } else if self.eat(&Tok::Caret) {
                acc = Formula::neg(acc);
            } else {
                return Ok(acc);
            }
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.error("unexpected end of input"));
        };
        match tok {
            Tok::Zero => {
                self.pos += 1;
                Ok(Formula::Zero)
            }
            Tok::One => {
                self.pos += 1;
                Ok(Formula::One)
            }
            Tok::Ident(name) => {
                self.pos += 1;
                Ok(Formula::Var(name))
            }
            Tok::LParen => {
                self.pos += 1;
                let f = self.formula()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.error("expected `)`"));
                }
                Ok(f)
            }
            other => Err(self.error(format!("unexpected token {other:?}"))),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(format!("trailing input at {t:?}"))),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        end: text.len(),
    };
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        end: text.len(),
    };
    let mut ante = Vec::new();
    if !p.eat(&Tok::Turnstile) {
        loop {
            ante.push(p.formula()?);
            if p.eat(&Tok::Comma) {
                continue;
            }
            if p.eat(&Tok::Turnstile) {
                break;
            }
            return Err(p.error("expected `,` or `|-`"));
        }
    }
    let succ = p.formula()?;
    p.finish()?;
    Ok(Sequent::new(ante, succ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Formula {
        Formula::var(s)
    }

    #[test]
    fn implication_is_right_associative() {
        assert_eq!(
            parse_formula("P -o (Q -o P)").unwrap(),
            Formula::imp(v("P"), Formula::imp(v("Q"), v("P")))
        );
        assert_eq!(
            parse_formula("P -o Q -o P").unwrap(),
            parse_formula("P -o (Q -o P)").unwrap()
        );
    }

    #[test]
    fn caret_is_negation_sugar() {
        assert_eq!(parse_formula("P^").unwrap(), Formula::imp(v("P"), Formula::One));
        assert_eq!(
            parse_formula("P^^").unwrap(),
            Formula::neg(Formula::neg(v("P")))
        );
    }

    #[test]
    fn halving_binds_tightest() {
        assert_eq!(
            parse_formula("P/2 * P/2").unwrap(),
            Formula::conj(Formula::half(v("P")), Formula::half(v("P")))
        );
        assert_eq!(
            parse_formula("P / 2 -o P").unwrap(),
            Formula::imp(Formula::half(v("P")), v("P"))
        );
        assert_eq!(
            parse_formula("P/2^").unwrap(),
            Formula::neg(Formula::half(v("P")))
        );
    }

    #[test]
    fn conjunction_is_left_associative() {
        assert_eq!(
            parse_formula("P * Q * R").unwrap(),
            Formula::conj(Formula::conj(v("P"), v("Q")), v("R"))
        );
    }

    #[test]
    fn alternative_spellings() {
        assert_eq!(
            parse_formula("x + (x -> y)").unwrap(),
            parse_formula("x * (x -o y)").unwrap()
        );
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_formula("P -o").unwrap_err();
        assert_eq!(e.pos, 4);
        let e = parse_formula("P & Q").unwrap_err();
        assert_eq!(e.pos, 2);
        assert!(parse_formula("(P").is_err());
        assert!(parse_formula("P Q").is_err());
        assert!(parse_formula("P/3").is_err());
        assert!(parse_formula("").is_err());
        assert!(parse_formula("12").is_err());
    }

    #[test]
    fn sequents() {
        let s = parse_sequent("Q, P |- P").unwrap();
        assert_eq!(s.antecedent().len(), 2);
        assert_eq!(s.succedent(), &v("P"));
        let e = parse_sequent("|- P -o P").unwrap();
        assert!(e.antecedent().is_empty());
        assert!(parse_sequent("P, |- P").is_err());
        assert!(parse_sequent("P").is_err());
    }
}
