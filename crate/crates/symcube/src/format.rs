//! Presheaf files.
//!
//! The text form is line based:
//!
//! ```text
//! site: QSigma
//! truncation: 1
//! kind: skeletal
//!
//! level 0:
//!   a
//!   b
//! level 1:
//!   e
//!   ...
//!
//! delta(1,0)@0: e -> a
//! ```
//!
//! A section may carry a label, `e = (x1):1->1`. Names made of anything other
//! than letters, digits, `_`, `.` and `'` are written in double quotes with
//! JSON escapes. Lines starting with `#` are comments. A file whose first
//! non-blank character is `{` is read as JSON instead.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use symcube_core::presheaf::Gen;
use symcube_core::site::parse_morphism;
use symcube_core::{Error, Kind, Morphism, Presheaf, Result, Site};

/// JSON mirror of the text format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresheafDoc {
    pub site: String,
    pub kind: String,
    pub truncation: usize,
    pub levels: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Vec<Morphism>>>,
    /// Generator to `source -> target` pairs.
    pub actions: BTreeMap<String, BTreeMap<String, String>>,
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Skeletal => "skeletal",
        Kind::Truncated => "truncated",
    }
}

fn parse_kind(s: &str) -> Result<Kind> {
    match s {
        "skeletal" => Ok(Kind::Skeletal),
        "truncated" => Ok(Kind::Truncated),
        _ => Err(Error::Parse(format!("unknown kind {s:?}, expected skeletal or truncated"))),
    }
}

impl PresheafDoc {
    pub fn from_presheaf(x: &Presheaf) -> PresheafDoc {
        let top = x.truncation();
        let levels: Vec<Vec<String>> = (0..=top).map(|k| x.names(k).to_vec()).collect();
        let labels = x.labels(0).map(|_| (0..=top).map(|k| x.labels(k).unwrap_or_default().to_vec()).collect());
        let actions = x
            .actions()
            .iter()
            .map(|(g, t)| {
                let pairs = t
                    .iter()
                    .enumerate()
                    .map(|(s, &d)| (x.name(g.from_level(), s).to_string(), x.name(g.to_level(), d).to_string()))
                    .collect();
                (g.to_string(), pairs)
            })
            .collect();
        PresheafDoc {
            site: x.site().to_string(),
            kind: kind_name(x.kind()).into(),
            truncation: top,
            levels,
            labels,
            actions,
        }
    }

    pub fn to_presheaf(&self) -> Result<Presheaf> {
        let site: Site = self.site.parse()?;
        let kind = parse_kind(&self.kind)?;
        if self.levels.len() != self.truncation + 1 {
            return Err(Error::Parse(format!(
                "truncation {} needs {} levels, found {}",
                self.truncation,
                self.truncation + 1,
                self.levels.len()
            )));
        }
        let index: Vec<BTreeMap<&str, usize>> = self
            .levels
            .iter()
            .enumerate()
            .map(|(k, names)| {
                let mut m = BTreeMap::new();
                for (i, n) in names.iter().enumerate() {
                    check_name(n)?;
                    if m.insert(n.as_str(), i).is_some() {
                        return Err(Error::Parse(format!("section {n:?} repeated at level {k}")));
                    }
                }
                Ok(m)
            })
            .collect::<Result<_>>()?;
        let mut actions = BTreeMap::new();
        for (g, pairs) in &self.actions {
            let gen: Gen = g.parse()?;
            let (from, to) = (gen.from_level(), gen.to_level());
            if from > self.truncation || to > self.truncation {
                return Err(Error::Parse(format!("generator {g} reaches beyond truncation {}", self.truncation)));
            }
            let mut table = vec![None; self.levels[from].len()];
            for (s, d) in pairs {
                let s_idx = *index[from]
                    .get(s.as_str())
                    .ok_or_else(|| Error::Parse(format!("{g}: unknown section {s:?} at level {from}")))?;
                let d_idx = *index[to]
                    .get(d.as_str())
                    .ok_or_else(|| Error::Parse(format!("{g}: unknown section {d:?} at level {to}")))?;
                if table[s_idx].replace(d_idx).is_some() {
                    return Err(Error::Parse(format!("{g}: section {s:?} given twice")));
                }
            }
            let table = table
                .into_iter()
                .enumerate()
                .map(|(i, t)| t.ok_or_else(|| Error::Parse(format!("{g}: no value for {:?}", self.levels[from][i]))))
                .collect::<Result<Vec<usize>>>()?;
            actions.insert(gen, table);
        }
        let x = Presheaf::new(site, kind, self.truncation, self.levels.clone(), actions)?;
        match &self.labels {
            Some(l) => x.labelled(l.clone()),
            None => Ok(x),
        }
    }
}

fn check_name(n: &str) -> Result<()> {
    if n.is_empty() {
        return Err(Error::Parse("empty section name".into()));
    }
    Ok(())
}

fn is_bare(n: &str) -> bool {
    !n.is_empty()
        && n.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '\''))
        && !matches!(n, "level" | "site" | "kind" | "truncation")
}

fn quote(n: &str) -> String {
    if is_bare(n) {
        n.to_string()
    } else {
        serde_json::to_string(n).expect("strings serialize")
    }
}

/// Canonical text form.
pub fn print_presheaf(x: &Presheaf) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "site: {}", x.site());
    let _ = writeln!(out, "truncation: {}", x.truncation());
    let _ = writeln!(out, "kind: {}", kind_name(x.kind()));
    for k in 0..=x.truncation() {
        let _ = writeln!(out, "\nlevel {k}:");
        for (i, n) in x.names(k).iter().enumerate() {
            match x.labels(k) {
                Some(l) => {
                    let _ = writeln!(out, "  {} = {}", quote(n), l[i]);
                }
                None => {
                    let _ = writeln!(out, "  {}", quote(n));
                }
            }
        }
    }
    for (g, t) in x.actions() {
        out.push('\n');
        for (s, &d) in t.iter().enumerate() {
            let _ = writeln!(out, "{g}: {} -> {}", quote(x.name(g.from_level(), s)), quote(x.name(g.to_level(), d)));
        }
    }
    out
}

#[derive(Debug, PartialEq, Eq)]
struct Token {
    text: String,
    quoted: bool,
}

impl Token {
    fn is(&self, s: &str) -> bool {
        !self.quoted && self.text == s
    }
}

fn tokenize(line: &str) -> std::result::Result<Vec<Token>, String> {
    let mut out = Vec::new();
    let mut rest = line.trim_start();
    while !rest.is_empty() {
        if rest.starts_with('"') {
            let mut de = serde_json::Deserializer::from_str(rest).into_iter::<String>();
            let text = match de.next() {
                Some(Ok(s)) => s,
                _ => return Err("unterminated or malformed quoted name".into()),
            };
            rest = &rest[de.byte_offset()..];
            if !rest.is_empty() && !rest.starts_with(char::is_whitespace) {
                return Err("quoted name must be followed by whitespace".into());
            }
            out.push(Token { text, quoted: true });
        } else {
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            out.push(Token { text: rest[..end].to_string(), quoted: false });
            rest = &rest[end..];
        }
        rest = rest.trim_start();
    }
    Ok(out)
}

/// Reads either form, validating the result.
pub fn parse_presheaf(text: &str) -> Result<Presheaf> {
    if text.trim_start().starts_with('{') {
        let doc: PresheafDoc = serde_json::from_str(text).map_err(|e| Error::Parse(format!("JSON: {e}")))?;
        return doc.to_presheaf();
    }
    parse_text(text)?.to_presheaf()
}

fn parse_text(text: &str) -> Result<PresheafDoc> {
    let mut site = None;
    let mut kind = None;
    let mut truncation = None;
    let mut levels: Vec<Vec<String>> = Vec::new();
    let mut labels: Vec<Vec<Option<Morphism>>> = Vec::new();
    let mut actions: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
    let mut in_level = false;
    for (no, line) in text.lines().enumerate() {
        let err = |msg: String| Error::Parse(format!("line {}: {msg}", no + 1));
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let t = tokenize(trimmed).map_err(err)?;
        if t.len() == 2 && ["site:", "kind:", "truncation:"].iter().any(|h| t[0].is(h)) {
            if !levels.is_empty() {
                return Err(err("header after the first level block".into()));
            }
            let v = t[1].text.as_str();
            match t[0].text.as_str() {
                "site:" => site = Some(v.to_string()),
                "kind:" => kind = Some(v.to_string()),
                _ => truncation = Some(v.parse::<usize>().map_err(|_| err(format!("bad truncation {v:?}")))?),
            }
        } else if t.len() == 2 && t[0].is("level") && !t[1].quoted && t[1].text.ends_with(':') {
            let k: usize =
                t[1].text[..t[1].text.len() - 1].parse().map_err(|_| err(format!("bad level header {trimmed:?}")))?;
            if k != levels.len() {
                return Err(err(format!("expected level {}, found level {k}", levels.len())));
            }
            levels.push(Vec::new());
            labels.push(Vec::new());
            in_level = true;
        } else if t.len() == 4 && !t[0].quoted && t[0].text.ends_with(':') && t[2].is("->") {
            in_level = false;
            let g = t[0].text[..t[0].text.len() - 1].to_string();
            let gen: Gen = g.parse().map_err(|e: Error| err(e.to_string()))?;
            let pairs = actions.entry(gen.to_string()).or_default();
            if pairs.insert(t[1].text.clone(), t[3].text.clone()).is_some() {
                return Err(err(format!("{g}: section {:?} given twice", t[1].text)));
            }
        } else if in_level && (t.len() == 1 || (t.len() == 3 && t[1].is("="))) {
            let label = match t.get(2) {
                Some(l) => Some(parse_morphism(&l.text).map_err(|e| err(e.to_string()))?),
                None => None,
            };
            levels.last_mut().expect("inside a level").push(t[0].text.clone());
            labels.last_mut().expect("inside a level").push(label);
        } else {
            return Err(err(format!("cannot read {trimmed:?}")));
        }
    }
    let site = site.ok_or_else(|| Error::Parse("missing 'site:' header".into()))?;
    if levels.is_empty() {
        return Err(Error::Parse("no level blocks".into()));
    }
    let truncation = truncation.unwrap_or(levels.len() - 1);
    let flat: Vec<&Option<Morphism>> = labels.iter().flatten().collect();
    let labels = if flat.iter().all(|l| l.is_some()) && !flat.is_empty() {
        Some(labels.into_iter().map(|l| l.into_iter().map(Option::unwrap).collect()).collect())
    } else if flat.iter().all(|l| l.is_none()) {
        None
    } else {
        return Err(Error::Parse("either every section carries a label or none does".into()));
    };
    Ok(PresheafDoc { site, kind: kind.unwrap_or_else(|| "skeletal".into()), truncation, levels, labels, actions })
}

pub fn presheaf_json(x: &Presheaf) -> serde_json::Value {
    serde_json::to_value(PresheafDoc::from_presheaf(x)).expect("documents serialize")
}

pub fn load_presheaf(path: &Path) -> Result<Presheaf> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_presheaf(&text)
}
