use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::Word;

/// A table generator: a Dehn twist about a named curve, or the push of a
/// marked point along a loop. `around = 0` is the basepoint `p₀`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TwistGen {
    Curve(String),
    Push { around: usize, loop_word: Word },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistLetter {
    pub gen: TwistGen,
    pub exp: i32,
}

impl TwistLetter {
    pub fn curve(name: &str, exp: i32) -> Self {
        Self { gen: TwistGen::Curve(name.into()), exp }
    }

    pub fn push(around: usize, loop_word: Word, exp: i32) -> Self {
        Self { gen: TwistGen::Push { around, loop_word }, exp }
    }

    pub fn inverse(&self) -> Self {
        Self { gen: self.gen.clone(), exp: -self.exp }
    }
}

impl fmt::Display for TwistLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.gen {
            TwistGen::Curve(name) => write!(f, "T{name}")?,
            TwistGen::Push { around: 0, loop_word } => write!(f, "Push({loop_word})")?,
            TwistGen::Push { around, loop_word } => write!(f, "Push@{around}({loop_word})")?,
        }
        if self.exp != 1 {
            write!(f, "^{}", self.exp)?;
        }
        Ok(())
    }
}

/// Parses `Ta1,Tb1^-1,Push(a1 b1),Push@2(b2)^-1`. Exponents other than ±1
/// are expanded into repeated letters. The empty string is the identity.
pub fn parse_twist_word(s: &str) -> Result<Vec<TwistLetter>> {
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (body, exp) = match tok.rsplit_once('^') {
            Some((b, e)) if !b.ends_with('(') => {
                let e: i32 = e.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?;
                (b.trim(), e)
            }
            _ => (tok, 1),
        };
        if exp == 0 {
            continue;
        }
        let gen = parse_gen(body)?;
        for _ in 0..exp.unsigned_abs() {
            out.push(TwistLetter { gen: gen.clone(), exp: exp.signum() });
        }
    }
    Ok(out)
}

fn parse_gen(body: &str) -> Result<TwistGen> {
    if let Some(rest) = body.strip_prefix("Push") {
        let (around, rest) = match rest.strip_prefix('@') {
            Some(r) => {
                let open = r.find('(').ok_or_else(|| Error::Parse(format!("missing `(` in `{body}`")))?;
                let k: usize = r[..open].parse().map_err(|_| Error::Parse(format!("bad point index in `{body}`")))?;
                (k, &r[open..])
            }
            None => (0, rest),
        };
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected Push(<word>) in `{body}`")))?;
        let loop_word: Word = inner.parse()?;
        if loop_word.contains_arc() {
            return Err(Error::Parse(format!("push loop may not contain arcs: `{body}`")));
        }
        return Ok(TwistGen::Push { around, loop_word });
    }
    match body.strip_prefix('T') {
        Some(name) if !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric()) => {
            Ok(TwistGen::Curve(name.into()))
        }
        _ => Err(Error::Parse(format!("unknown twist-word letter `{body}`"))),
    }
}

pub fn format_twist_word(w: &[TwistLetter]) -> String {
    w.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let w = parse_twist_word("Ta1,Tb1^-1,Push(a1 b1)").unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w[1], TwistLetter::curve("b1", -1));
        assert_eq!(w[2], TwistLetter::push(0, "a1 b1".parse().unwrap(), 1));
        assert_eq!(parse_twist_word("").unwrap(), vec![]);
        assert_eq!(parse_twist_word("Tc1^3").unwrap().len(), 3);
        let w = parse_twist_word("Push@2(B2)^-1").unwrap();
        assert_eq!(w[0], TwistLetter::push(2, "B2".parse().unwrap(), -1));
    }

    #[test]
    fn roundtrip_text() {
        let s = "Ta1,Tb2^-1,Push(a1 B2),Push@1(a2)^-1,Ts";
        assert_eq!(format_twist_word(&parse_twist_word(s).unwrap()), s);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_twist_word("Xa1").is_err());
        assert!(parse_twist_word("Push(a1").is_err());
        assert!(parse_twist_word("Ta1^x").is_err());
        assert!(parse_twist_word("Push(q1)").is_err());
    }
}
