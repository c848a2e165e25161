use num_bigint::BigInt;
use num_traits::Zero;

use crate::scalar::Rational;

use super::{DslError, Span};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    Number(Rational),
    /// `x<i>`, index as written (1-based).
    Var(usize),
    /// `dx<i>`
    Covec(usize),
    /// `@<i>`
    Vec(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Semi,
    Eof,
}

impl Token {
    pub fn describe(&self) -> String {
        match self {
            Token::Number(r) => format!("number {r}"),
            Token::Var(i) => format!("x{i}"),
            Token::Covec(i) => format!("dx{i}"),
            Token::Vec(i) => format!("@{i}"),
            Token::Plus => "'+'".into(),
            Token::Minus => "'-'".into(),
            Token::Star => "'*'".into(),
            Token::Caret => "'^'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::Semi => "';'".into(),
            Token::Eof => "end of input".into(),
        }
    }
}

pub fn tokenize(text: &str) -> Result<Vec<(Token, Span)>, DslError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        let start = pos;
        let single = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'+' => Some(Token::Plus),
            b'-' => Some(Token::Minus),
            b'*' => Some(Token::Star),
            b'^' => Some(Token::Caret),
            b'(' => Some(Token::LParen),
            b')' => Some(Token::RParen),
            b';' => Some(Token::Semi),
            _ => None,
        };
        if let Some(tok) = single {
            pos += 1;
            out.push((tok, Span::new(start, pos)));
            continue;
        }
        let tok = match c {
            b'0'..=b'9' => {
                let (num, end) = digits(bytes, pos);
                pos = end;
                let mut value = Rational::from_integer(num);
                if bytes.get(pos) == Some(&b'/') && bytes.get(pos + 1).is_some_and(u8::is_ascii_digit) {
                    let (den, end) = digits(bytes, pos + 1);
                    if den.is_zero() {
                        return Err(DslError::Lex {
                            pos: start,
                            message: "zero denominator".into(),
                        });
                    }
                    pos = end;
                    value /= Rational::from_integer(den);
                }
                Token::Number(value)
            }
            b'x' => {
                pos += 1;
                Token::Var(index(bytes, &mut pos, start)?)
            }
            b'd' if bytes.get(pos + 1) == Some(&b'x') => {
                pos += 2;
                Token::Covec(index(bytes, &mut pos, start)?)
            }
            b'@' => {
                pos += 1;
                Token::Vec(index(bytes, &mut pos, start)?)
            }
            _ => {
                let ch = text[pos..].chars().next().unwrap_or('?');
                return Err(DslError::Lex {
                    pos,
                    message: format!("unexpected character '{ch}'"),
                });
            }
        };
        out.push((tok, Span::new(start, pos)));
    }
    out.push((Token::Eof, Span::new(bytes.len(), bytes.len())));
    Ok(out)
}

fn digits(bytes: &[u8], start: usize) -> (BigInt, usize) {
    let mut end = start;
    while end < bytes.len() && bytes[end].is_ascii_digit() {
        end += 1;
    }
    let text = std::str::from_utf8(&bytes[start..end]).expect("ascii digits");
    (text.parse().expect("nonempty digit run"), end)
}

fn index(bytes: &[u8], pos: &mut usize, start: usize) -> Result<usize, DslError> {
    let mut end = *pos;
    while end < bytes.len() && bytes[end].is_ascii_digit() {
        end += 1;
    }
    if end == *pos {
        return Err(DslError::Lex {
            pos: start,
            message: "expected a coordinate index after the symbol".into(),
        });
    }
    let text = std::str::from_utf8(&bytes[*pos..end]).expect("ascii digits");
    let value = text.parse().map_err(|_| DslError::Lex {
        pos: start,
        message: "coordinate index too large".into(),
    })?;
    *pos = end;
    Ok(value)
}
