//! Parser for polynomial expressions such as `a*z`, `4*b`, `h1^3 + 2*b^-1`.
//! Factors may be joined by `*`, `·` or juxtaposition with whitespace.

use num_bigint::BigInt;
use num_traits::One;

use super::monomial::{Monomial, Polynomial};
use super::RingError;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Times,
    Caret,
}

fn tokenize(src: &str) -> Result<Vec<Token>, RingError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' | '·' => {
                out.push(Token::Times);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token::Num(s.parse().expect("digits")));
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => {
                return Err(RingError::Parse(format!(
                    "unexpected character {other:?} in {src:?}"
                )))
            }
        }
    }
    Ok(out)
}

/// Parses `src` against the ordered generator names.
pub fn parse_polynomial(src: &str, names: &[String]) -> Result<Polynomial, RingError> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(RingError::Parse("empty expression".into()));
    }
    let mut pos = 0;
    let mut poly = Polynomial::zero();
    let mut first = true;
    while pos < tokens.len() {
        let mut sign = BigInt::one();
        match tokens.get(pos) {
            Some(Token::Plus) if !first => pos += 1,
            Some(Token::Minus) => {
                sign = -sign;
                pos += 1;
            }
            _ if first => {}
            Some(t) => return Err(RingError::Parse(format!("expected + or -, found {t:?}"))),
            None => unreachable!(),
        }
        first = false;
        let (m, c) = parse_term(&tokens, &mut pos, names, src)?;
        poly.add_term(m, c * sign);
    }
    Ok(poly)
}

fn parse_term(
    tokens: &[Token],
    pos: &mut usize,
    names: &[String],
    src: &str,
) -> Result<(Monomial, BigInt), RingError> {
    let mut coeff = BigInt::one();
    let mut exps = vec![0i64; names.len()];
    loop {
        match tokens.get(*pos) {
            Some(Token::Num(n)) => {
                coeff *= n;
                *pos += 1;
            }
            Some(Token::Ident(name)) => {
                let idx = names
                    .iter()
                    .position(|g| g == name)
                    .ok_or_else(|| RingError::UnknownGenerator(name.clone()))?;
                *pos += 1;
                let mut e = 1i64;
                if tokens.get(*pos) == Some(&Token::Caret) {
                    *pos += 1;
                    let neg = if tokens.get(*pos) == Some(&Token::Minus) {
                        *pos += 1;
                        true
                    } else {
                        false
                    };
                    match tokens.get(*pos) {
                        Some(Token::Num(n)) => {
                            e = i64::try_from(n.clone()).map_err(|_| {
                                RingError::Parse(format!("exponent too large in {src:?}"))
                            })?;
                            if neg {
                                e = -e;
                            }
                            *pos += 1;
                        }
                        _ => return Err(RingError::Parse(format!("missing exponent in {src:?}"))),
                    }
                }
                exps[idx] += e;
            }
            _ => {
                return Err(RingError::Parse(format!(
                    "expected a coefficient or generator in {src:?}"
                )))
            }
        }
        match tokens.get(*pos) {
            Some(Token::Times) => {
                *pos += 1;
            }
            Some(Token::Num(_)) | Some(Token::Ident(_)) => {}
            _ => break,
        }
    }
    Ok((Monomial::new(exps), coeff))
}
