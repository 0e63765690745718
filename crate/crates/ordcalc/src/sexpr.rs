//! Minimal s-expression reader shared by the term parsers.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexpr {
    Atom(String),
    List(Vec<Sexpr>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SexprError {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected `)` at byte {0}")]
    UnexpectedClose(usize),
    #[error("trailing input after expression: `{0}`")]
    Trailing(String),
}

impl Sexpr {
    pub fn atom(&self) -> Option<&str> {
        match self {
            Sexpr::Atom(s) => Some(s),
            Sexpr::List(_) => None,
        }
    }

    pub fn list(&self) -> Option<&[Sexpr]> {
        match self {
            Sexpr::Atom(_) => None,
            Sexpr::List(items) => Some(items),
        }
    }
}

/// Parses exactly one expression; rejects trailing input.
pub fn parse(input: &str) -> Result<Sexpr, SexprError> {
    let bytes = input.as_bytes();
    let mut pos = 0;
    let expr = parse_at(bytes, &mut pos)?;
    skip_ws(bytes, &mut pos);
    if pos < bytes.len() {
        return Err(SexprError::Trailing(input[pos..].to_string()));
    }
    Ok(expr)
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_at(bytes: &[u8], pos: &mut usize) -> Result<Sexpr, SexprError> {
    skip_ws(bytes, pos);
    match bytes.get(*pos) {
        None => Err(SexprError::UnexpectedEnd),
        Some(b')') => Err(SexprError::UnexpectedClose(*pos)),
        Some(b'(') => {
            *pos += 1;
            let mut items = Vec::new();
            loop {
                skip_ws(bytes, pos);
                match bytes.get(*pos) {
                    None => return Err(SexprError::UnexpectedEnd),
                    Some(b')') => {
                        *pos += 1;
                        return Ok(Sexpr::List(items));
                    }
                    _ => items.push(parse_at(bytes, pos)?),
                }
            }
        }
        Some(_) => {
            let start = *pos;
            while *pos < bytes.len()
                && !bytes[*pos].is_ascii_whitespace()
                && bytes[*pos] != b'('
                && bytes[*pos] != b')'
            {
                *pos += 1;
            }
            Ok(Sexpr::Atom(String::from_utf8_lossy(&bytes[start..*pos]).into_owned()))
        }
    }
}

impl std::fmt::Display for Sexpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sexpr::Atom(s) => write!(f, "{s}"),
            Sexpr::List(items) => {
                write!(f, "(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{item}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atoms_and_lists() {
        assert_eq!(parse("0").unwrap(), Sexpr::Atom("0".into()));
        let e = parse("(sum (mono 0 (cs (v 0))) )").unwrap();
        assert_eq!(e.to_string(), "(sum (mono 0 (cs (v 0))))");
    }

    #[test]
    fn rejects_trailing_and_unbalanced() {
        assert!(matches!(parse("(v 0) x"), Err(SexprError::Trailing(_))));
        assert!(matches!(parse("(v 0"), Err(SexprError::UnexpectedEnd)));
        assert!(matches!(parse(")"), Err(SexprError::UnexpectedClose(_))));
    }
}
