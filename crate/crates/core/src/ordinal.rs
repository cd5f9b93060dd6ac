//! Ordinal notations below ω^ω in Cantor normal form.
//!
//! An ordinal is a list of `(exponent, coefficient)` terms with strictly
//! decreasing exponents and positive coefficients. The empty list is 0.
//! The derived ordering on the term list coincides with ordinal order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "OrdinalRepr", into = "String")]
pub struct Ordinal {
    terms: Vec<(u32, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Class {
    Zero,
    Successor(Ordinal),
    Limit,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrdinalError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("not a limit ordinal: {0}")]
    NotALimit(Ordinal),
    #[error("term list is not in Cantor normal form")]
    NotNormal,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal { terms: vec![(0, n)] }
        }
    }

    pub fn omega() -> Self {
        Self::omega_pow(1, 1)
    }

    /// ω^k · c
    pub fn omega_pow(k: u32, c: u64) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Ordinal { terms: vec![(k, c)] }
        }
    }

    /// Builds from an arbitrary term list, normalizing it: zero coefficients are
    /// dropped and terms absorbed by a later larger exponent disappear.
    pub fn from_terms(terms: &[(u32, u64)]) -> Self {
        let mut acc = Ordinal::zero();
        for &(e, c) in terms {
            acc = acc.add(&Ordinal::omega_pow(e, c));
        }
        acc
    }

    pub fn terms(&self) -> &[(u32, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|&(e, _)| e == 0)
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(0, c)] => Some(*c),
            _ => None,
        }
    }

    pub fn is_limit(&self) -> bool {
        matches!(self.terms.last(), Some(&(e, _)) if e > 0)
    }

    pub fn is_successor(&self) -> bool {
        matches!(self.terms.last(), Some(&(0, _)))
    }

    pub fn classify(&self) -> Class {
        match self.terms.last() {
            None => Class::Zero,
            Some(&(0, _)) => Class::Successor(self.pred().expect("successor has predecessor")),
            Some(_) => Class::Limit,
        }
    }

    /// Predecessor of a successor ordinal.
    pub fn pred(&self) -> Option<Ordinal> {
        let mut terms = self.terms.clone();
        match terms.last_mut() {
            Some((0, c)) => {
                *c -= 1;
                if *c == 0 {
                    terms.pop();
                }
                Some(Ordinal { terms })
            }
            _ => None,
        }
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::nat(1))
    }

    /// Ordinal sum `self + other`.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some(&(lead, _)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(u32, u64)> =
            self.terms.iter().copied().filter(|&(e, _)| e >= lead).collect();
        let mut rest = other.terms.iter().copied();
        if let Some((e, c)) = terms.last_mut() {
            if *e == lead {
                *c += other.terms[0].1;
                rest.next();
            }
        }
        terms.extend(rest);
        Ordinal { terms }
    }

    /// `1 + self`: finite ordinals grow by one, infinite ones absorb the 1.
    pub fn one_plus(&self) -> Ordinal {
        Ordinal::nat(1).add(self)
    }

    /// Canonical fundamental sequence: the last term ω^k·c becomes
    /// ω^k·(c−1) + ω^(k−1)·n.
    pub fn fund_seq(&self, n: u64) -> Result<Ordinal, OrdinalError> {
        let Some(&(k, c)) = self.terms.last() else {
            return Err(OrdinalError::NotALimit(self.clone()));
        };
        if k == 0 {
            return Err(OrdinalError::NotALimit(self.clone()));
        }
        let mut terms = self.terms[..self.terms.len() - 1].to_vec();
        if c > 1 {
            terms.push((k, c - 1));
        }
        if n > 0 {
            terms.push((k - 1, n));
        }
        Ok(Ordinal { terms })
    }

    /// Index of `self` in the fundamental sequence of `limit`, if it occurs.
    pub fn fund_index(&self, limit: &Ordinal) -> Option<u64> {
        let base = limit.fund_seq(0).ok()?;
        let (k, _) = *limit.terms.last()?;
        if *self == base {
            return Some(0);
        }
        if self.terms.len() < base.terms.len() || self.terms[..base.terms.len()] != base.terms[..] {
            return None;
        }
        let tail = &self.terms[base.terms.len()..];
        match tail {
            [(e, n)] if *e == k - 1 => Some(*n),
            _ => None,
        }
    }

    /// Ordinals `< self` that a finite-support coordinate map may use, listed
    /// in increasing order, restricted to finite parts below `bound` in each
    /// block (used by enumerators).
    pub fn positions_below(&self, bound: u64) -> Vec<Ordinal> {
        let mut out = Vec::new();
        self.collect_below(&mut out, bound);
        out
    }

    fn collect_below(&self, out: &mut Vec<Ordinal>, bound: u64) {
        match self.classify() {
            Class::Zero => {}
            Class::Successor(p) => {
                p.collect_below(out, bound);
                out.push(p);
            }
            Class::Limit => {
                let top = self.fund_seq(bound).expect("limit");
                top.collect_below(out, bound);
            }
        }
    }
}

impl From<Ordinal> for String {
    fn from(o: Ordinal) -> Self {
        o.to_string()
    }
}

/// Ordinals are written in the text form and read from it or from CNF
/// term pairs.
#[derive(Deserialize)]
#[serde(untagged)]
enum OrdinalRepr {
    Pairs(Vec<(u32, u64)>),
    Text(String),
}

impl TryFrom<OrdinalRepr> for Ordinal {
    type Error = OrdinalError;

    fn try_from(r: OrdinalRepr) -> Result<Self, Self::Error> {
        match r {
            OrdinalRepr::Pairs(terms) => terms.try_into(),
            OrdinalRepr::Text(text) => ord_parse(&text),
        }
    }
}

impl TryFrom<Vec<(u32, u64)>> for Ordinal {
    type Error = OrdinalError;

    fn try_from(terms: Vec<(u32, u64)>) -> Result<Self, Self::Error> {
        let normal = terms.iter().all(|&(_, c)| c > 0)
            && terms.windows(2).all(|w| w[0].0 > w[1].0);
        if normal {
            Ok(Ordinal { terms })
        } else {
            Err(OrdinalError::NotNormal)
        }
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, &(e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "w")?,
                (1, c) => write!(f, "w*{c}")?,
                (e, 1) => write!(f, "w^{e}")?,
                (e, c) => write!(f, "w^{e}*{c}")?,
            }
        }
        Ok(())
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: &str) -> OrdinalError {
        OrdinalError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn number(&mut self) -> Result<u64, OrdinalError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| OrdinalError::Syntax { pos: start, msg: "number too large".into() })
    }

    // term := nat | 'w' ['^' nat] ['*' nat] | nat '*' 'w' ...
    fn term(&mut self) -> Result<(u32, u64), OrdinalError> {
        match self.peek() {
            Some(b'w') | Some(b'W') => {
                self.pos += 1;
                let mut exp = 1u64;
                if self.eat(b'^') {
                    exp = self.number()?;
                }
                let mut coef = 1u64;
                if self.eat(b'*') {
                    coef = self.number()?;
                }
                let exp = u32::try_from(exp).map_err(|_| self.err("exponent too large"))?;
                Ok((exp, coef))
            }
            Some(c) if c.is_ascii_digit() => Ok((0, self.number()?)),
            _ => Err(self.err("expected 'w' or a number")),
        }
    }
}

pub fn ord_parse(text: &str) -> Result<Ordinal, OrdinalError> {
    let mut cur = Cursor { src: text.as_bytes(), pos: 0 };
    let mut terms = vec![cur.term()?];
    while cur.eat(b'+') {
        terms.push(cur.term()?);
    }
    if cur.peek().is_some() {
        return Err(cur.err("unexpected trailing input"));
    }
    Ok(Ordinal::from_terms(&terms))
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ord_parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(o("0").terms(), &[]);
        assert_eq!(o("w+3").terms(), &[(1, 1), (0, 3)]);
        assert_eq!(o("w^2*3+w+4").terms(), &[(2, 3), (1, 1), (0, 4)]);
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(o("3+w"), o("w"));
        assert_eq!(o("w+w"), o("w*2"));
        assert_eq!(o("w+w^2"), o("w^2"));
        assert_eq!(o("0+0"), Ordinal::zero());
    }

    #[test]
    fn parse_errors_report_position() {
        match ord_parse("w+x") {
            Err(OrdinalError::Syntax { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(ord_parse("").is_err());
        assert!(ord_parse("w^").is_err());
    }

    #[test]
    fn print_round_trip() {
        for s in ["0", "7", "w", "w*2", "w^3", "w^2*3+w+4", "w^5+w^2*7+1"] {
            assert_eq!(o(s).to_string(), s);
        }
    }

    #[test]
    fn one_plus_examples() {
        assert_eq!(o("3").one_plus(), o("4"));
        assert_eq!(o("w").one_plus(), o("w"));
        assert_eq!(o("w+1").one_plus(), o("w+1"));
        assert_eq!(o("0").one_plus(), o("1"));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(o("0").classify(), Class::Zero);
        assert_eq!(o("5").classify(), Class::Successor(o("4")));
        assert_eq!(o("w*2").classify(), Class::Limit);
        assert_eq!(o("w+1").classify(), Class::Successor(o("w")));
    }

    #[test]
    fn fund_seq_examples() {
        assert_eq!(o("w").fund_seq(3).unwrap(), o("3"));
        assert_eq!(o("w*2").fund_seq(4).unwrap(), o("w+4"));
        assert_eq!(o("w^2").fund_seq(2).unwrap(), o("w*2"));
        assert!(matches!(o("w+1").fund_seq(0), Err(OrdinalError::NotALimit(_))));
        assert!(matches!(o("0").fund_seq(0), Err(OrdinalError::NotALimit(_))));
    }

    #[test]
    fn fund_index_inverts_fund_seq() {
        for a in ["w", "w*3", "w^2", "w^2+w", "w^3*2"] {
            let a = o(a);
            for n in 0..20 {
                assert_eq!(a.fund_seq(n).unwrap().fund_index(&a), Some(n));
            }
        }
        assert_eq!(o("w+5").fund_index(&o("w")), None);
    }

    #[test]
    fn addition() {
        assert_eq!(o("w+2").add(&o("3")), o("w+5"));
        assert_eq!(o("w+2").add(&o("w")), o("w*2"));
        assert_eq!(o("w^2+w").add(&o("w^2")), o("w^2*2"));
    }

    #[test]
    fn positions_below_lists_increasing() {
        let ps = o("3").positions_below(2);
        assert_eq!(ps, vec![o("0"), o("1"), o("2")]);
        let ps = o("w+1").positions_below(2);
        assert_eq!(ps, vec![o("0"), o("1"), o("w")]);
        assert!(ps.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn serde_forms() {
        let a = o("w^2*3+4");
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, "\"w^2*3+4\"");
        assert_eq!(serde_json::from_str::<Ordinal>(&s).unwrap(), a);
        assert_eq!(serde_json::from_str::<Ordinal>("[[2,3],[0,4]]").unwrap(), a);
        assert!(serde_json::from_str::<Ordinal>("[[0,4],[2,3]]").is_err());
        assert!(serde_json::from_str::<Ordinal>("\"w+\"").is_err());
    }
}
