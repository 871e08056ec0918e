//! Element expression grammar: `term (('+'|'-') term)*`, `term = [rational] name*`.

use std::sync::Arc;

use num_traits::One;

use super::scalar::parse_rational;
use super::word::{add_term, Terms};
use super::{AlgebraError, Element, Presentation, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct RawTerm {
    pub coeff: Scalar,
    pub names: Vec<String>,
}

#[derive(Debug, PartialEq)]
enum Token {
    Number(String),
    Name(String),
    Plus,
    Minus,
}

fn malformed(position: usize, message: impl Into<String>) -> AlgebraError {
    AlgebraError::MalformedExpression {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, AlgebraError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, ch)) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
        } else if ch == '+' {
            chars.next();
            out.push((pos, Token::Plus));
        } else if ch == '-' {
            chars.next();
            out.push((pos, Token::Minus));
        } else if ch.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_ascii_digit() || c == '/' || c == '.' {
                    s.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push((pos, Token::Number(s)));
        } else if ch.is_alphabetic() || ch == '_' {
            let mut s = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_alphanumeric() || c == '_' {
                    s.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push((pos, Token::Name(s)));
        } else {
            return Err(malformed(pos, format!("unexpected character `{ch}`")));
        }
    }
    Ok(out)
}

/// Parses into unresolved terms; names are checked later against a presentation.
pub(crate) fn parse_raw_expression(text: &str) -> Result<Vec<RawTerm>, AlgebraError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(malformed(0, "empty expression"));
    }
    let mut terms = Vec::new();
    let mut i = 0;
    let mut first = true;
    while i < tokens.len() {
        let mut negative = false;
        match &tokens[i].1 {
            Token::Plus | Token::Minus => {
                negative = tokens[i].1 == Token::Minus;
                i += 1;
            }
            _ if !first => {
                return Err(malformed(tokens[i].0, "expected `+` or `-` between terms"));
            }
            _ => {}
        }
        first = false;
        let start = tokens.get(i).map_or(text.len(), |t| t.0);
        let mut coeff = Scalar::one();
        let mut has_content = false;
        if let Some((pos, Token::Number(s))) = tokens.get(i) {
            coeff = parse_rational(s).map_err(|_| malformed(*pos, format!("malformed rational `{s}`")))?;
            has_content = true;
            i += 1;
        }
        let mut names = Vec::new();
        while let Some((_, Token::Name(n))) = tokens.get(i) {
            names.push(n.clone());
            has_content = true;
            i += 1;
        }
        if let Some((pos, Token::Number(_))) = tokens.get(i) {
            return Err(malformed(*pos, "coefficient must precede generator names"));
        }
        if !has_content {
            return Err(malformed(start, "empty term"));
        }
        if negative {
            coeff = -coeff;
        }
        terms.push(RawTerm { coeff, names });
    }
    Ok(terms)
}

pub(crate) fn resolve_terms(p: &Presentation, raw: &[RawTerm]) -> Result<Terms, AlgebraError> {
    let mut terms = Terms::new();
    for t in raw {
        let w = p.resolve_names(&t.names)?;
        p.check_len(w.len())?;
        add_term(&mut terms, w, t.coeff.clone());
    }
    Ok(terms)
}

/// Parses an element expression such as `-2 x y x` or `1/2 x + 3 x y` and rewrites it.
pub fn parse_element(text: &str, p: &Arc<Presentation>) -> Result<Element, AlgebraError> {
    let raw = parse_raw_expression(text)?;
    let terms = resolve_terms(p, &raw)?;
    Ok(Element::from_terms(p, terms))
}
