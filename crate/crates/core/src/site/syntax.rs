//! Text syntax `(x3,1,x1^x5^x2,0):5->4` for formal cubical products.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::morphism::{Entry, Morphism};
use crate::error::{Error, Result};

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Zero => write!(f, "0"),
            Entry::One => write!(f, "1"),
            Entry::Conj(s) => {
                for (k, x) in s.iter().enumerate() {
                    if k > 0 {
                        write!(f, "^")?;
                    }
                    write!(f, "x{x}")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.entries().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "):{}->{}", self.src(), self.dst())
    }
}

impl FromStr for Morphism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_morphism(s)
    }
}

pub fn parse_morphism(text: &str) -> Result<Morphism> {
    let t = text.trim();
    let open = t.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected '(' at start of {t:?}")))?;
    let close = open.find(')').ok_or_else(|| Error::Parse(format!("missing ')' in {t:?}")))?;
    let body = &open[..close];
    let arity = open[close + 1..].trim();
    let arity =
        arity.strip_prefix(':').ok_or_else(|| Error::Parse(format!("missing arity annotation ': m -> n' in {t:?}")))?;
    let (m, n) = arity.split_once("->").ok_or_else(|| Error::Parse(format!("arity must read 'm -> n' in {t:?}")))?;
    let m = parse_usize(m)?;
    let n = parse_usize(n)?;
    let entries: Vec<Entry> =
        if body.trim().is_empty() { Vec::new() } else { body.split(',').map(parse_entry).collect::<Result<_>>()? };
    if entries.len() != n {
        return Err(Error::Parse(format!("{} entries but target arity {n}", entries.len())));
    }
    Morphism::new(m, entries)
}

fn parse_entry(s: &str) -> Result<Entry> {
    let s = s.trim();
    match s {
        "0" => return Ok(Entry::Zero),
        "1" => return Ok(Entry::One),
        _ => {}
    }
    let syms = s
        .split('^')
        .map(|w| {
            let w = w.trim();
            let digits = w.strip_prefix('x').ok_or_else(|| Error::Parse(format!("bad entry {s:?}")))?;
            let v = parse_usize(digits)?;
            if v == 0 {
                return Err(Error::Parse(format!("symbols start at x1, got {w:?}")));
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Entry::Conj(syms))
}

fn parse_usize(s: &str) -> Result<usize> {
    let s = s.trim();
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("expected a number, got {s:?}")));
    }
    s.parse().map_err(|_| Error::Parse(format!("number out of range: {s}")))
}

#[cfg(feature = "serde")]
impl serde::Serialize for Morphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Morphism {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        let text = <alloc::borrow::Cow<'de, str>>::deserialize(d)?;
        parse_morphism(&text).map_err(serde::de::Error::custom)
    }
}
