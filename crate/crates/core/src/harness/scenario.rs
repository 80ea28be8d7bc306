//! Scenario files.
//!
//! ```text
//! # comment
//! id: d4
//! group: semidirect:Z4,Z2,inv
//! action: b : a -> a^-1        (repeatable; `@file` reads entries from a file)
//! check: direct_factor_32, cyclicB_37     (or `all`)
//! c: 1..2                     (list or inclusive range)
//! cap: 6
//! trunc: +2, +3               (absolute classes or offsets from c)
//! ```
//!
//! A file holds one or more blocks, each opened by `id:`. A file without any
//! `id:` line is a single scenario named after the file.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

pub const MAX_C: usize = 6;
pub const MAX_CAP: usize = 12;
pub const MAX_TRUNC: usize = 9;
pub const DEFAULT_CAP: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScenarioError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Invalid(String),
}

fn syntax(line: usize, msg: impl Into<String>) -> ScenarioError {
    ScenarioError::Syntax { line, msg: msg.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    DirectFactor,
    Decomposition,
    CyclicB,
    CyclicAB,
    Trunc41,
    Trunc51,
    Epimorphism,
    Wreath,
    NormalForm,
    Identity211,
    QuotientEmbed,
    OracleAgreement,
}

impl Check {
    pub const ALL: [Check; 12] = [
        Check::DirectFactor,
        Check::Decomposition,
        Check::CyclicB,
        Check::CyclicAB,
        Check::Trunc41,
        Check::Trunc51,
        Check::Epimorphism,
        Check::Wreath,
        Check::NormalForm,
        Check::Identity211,
        Check::QuotientEmbed,
        Check::OracleAgreement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::DirectFactor => "direct_factor_32",
            Check::Decomposition => "decomposition_23",
            Check::CyclicB => "cyclicB_37",
            Check::CyclicAB => "cyclicAB_311",
            Check::Trunc41 => "trunc_41",
            Check::Trunc51 => "trunc_51",
            Check::Epimorphism => "epi_36_45_53",
            Check::Wreath => "wreath_42_46",
            Check::NormalForm => "normalform_24",
            Check::Identity211 => "identity_211",
            Check::QuotientEmbed => "quotient_embed_212",
            Check::OracleAgreement => "oracle_agreement",
        }
    }

    /// Runs once per value of `c` (the others run once per scenario).
    pub fn per_c(self) -> bool {
        !matches!(self, Check::NormalForm | Check::Identity211 | Check::OracleAgreement)
    }

    /// Runs once per truncation class as well.
    pub fn per_trunc(self) -> bool {
        matches!(self, Check::Trunc41 | Check::Trunc51)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown check `{s}`"))
    }
}

/// A truncation class, absolute or relative to `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trunc {
    Absolute(usize),
    Offset(usize),
}

impl Trunc {
    pub fn class(self, c: usize) -> usize {
        match self {
            Trunc::Absolute(j) => j,
            Trunc::Offset(k) => c + k,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub id: String,
    pub group: String,
    /// `b : a -> word` entries overriding the outermost action.
    pub actions: Vec<String>,
    pub checks: Vec<Check>,
    pub cs: Vec<usize>,
    pub cap: usize,
    pub truncs: Vec<Trunc>,
}

impl Scenario {
    pub fn new(id: &str, group: &str) -> Self {
        Scenario {
            id: id.to_string(),
            group: group.to_string(),
            actions: Vec::new(),
            checks: Check::ALL.to_vec(),
            cs: vec![1],
            cap: DEFAULT_CAP,
            truncs: vec![Trunc::Offset(2)],
        }
    }

    fn validate(&self) -> Result<(), ScenarioError> {
        let bad = |m: String| Err(ScenarioError::Invalid(format!("scenario `{}`: {m}", self.id)));
        if self.group.is_empty() {
            return bad("missing `group:`".into());
        }
        if let Some(c) = self.cs.iter().find(|&&c| c == 0 || c > MAX_C) {
            return bad(format!("c = {c} outside 1..={MAX_C}"));
        }
        if self.cap == 0 || self.cap > MAX_CAP {
            return bad(format!("cap = {} outside 1..={MAX_CAP}", self.cap));
        }
        for &c in &self.cs {
            for t in &self.truncs {
                let j = t.class(c);
                if j <= c || j > MAX_TRUNC {
                    return bad(format!("truncation class {j} for c = {c} outside {}..={MAX_TRUNC}", c + 1));
                }
            }
        }
        Ok(())
    }
}

fn parse_usize(s: &str, line: usize) -> Result<usize, ScenarioError> {
    s.trim().parse().map_err(|_| syntax(line, format!("expected a number, got `{}`", s.trim())))
}

fn parse_cs(v: &str, line: usize) -> Result<Vec<usize>, ScenarioError> {
    let mut out = Vec::new();
    for part in v.split(',') {
        match part.split_once("..") {
            Some((lo, hi)) => {
                let hi = hi.strip_prefix('=').unwrap_or(hi);
                let (lo, hi) = (parse_usize(lo, line)?, parse_usize(hi, line)?);
                if lo > hi {
                    return Err(syntax(line, format!("empty range {lo}..{hi}")));
                }
                out.extend(lo..=hi);
            }
            None => out.push(parse_usize(part, line)?),
        }
    }
    out.dedup();
    Ok(out)
}

fn parse_truncs(v: &str, line: usize) -> Result<Vec<Trunc>, ScenarioError> {
    v.split(',')
        .map(|t| match t.trim().strip_prefix('+') {
            Some(k) => parse_usize(k, line).map(Trunc::Offset),
            None => parse_usize(t, line).map(Trunc::Absolute),
        })
        .collect()
}

/// Parses every block of a scenario file. `base` resolves `action: @file`
/// references. Errors are per block: the id (or a placeholder) is kept so a
/// batch can report them.
pub fn parse_scenarios(text: &str, default_id: &str, base: Option<&Path>) -> Vec<(String, Result<Scenario, ScenarioError>)> {
    let mut blocks: Vec<(String, Vec<(usize, &str, &str)>)> = Vec::new();
    let mut stray = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once(':') else {
            stray.get_or_insert(syntax(line, format!("expected `key: value`, got `{content}`")));
            continue;
        };
        let (key, value) = (key.trim(), value.trim());
        if key == "id" {
            blocks.push((value.to_string(), Vec::new()));
            continue;
        }
        if blocks.is_empty() {
            blocks.push((String::new(), Vec::new()));
        }
        blocks.last_mut().expect("pushed").1.push((line, key, value));
    }
    let has_ids = blocks.iter().any(|(id, _)| !id.is_empty());
    let mut out = Vec::new();
    for (n, (id, lines)) in blocks.into_iter().enumerate() {
        let id = match (id.is_empty(), has_ids) {
            (false, _) => id,
            (true, false) => default_id.to_string(),
            (true, true) => {
                let line = lines.first().map_or(1, |l| l.0);
                out.push((format!("{default_id}#{n}"), Err(syntax(line, "lines before the first `id:`"))));
                continue;
            }
        };
        let r = match stray.clone() {
            Some(e) => Err(e),
            None => parse_block(&id, &lines, base),
        };
        out.push((id, r));
    }
    if out.is_empty() {
        out.push((default_id.to_string(), Err(stray.unwrap_or(ScenarioError::Invalid("empty scenario file".into())))));
    }
    out
}

fn parse_block(id: &str, lines: &[(usize, &str, &str)], base: Option<&Path>) -> Result<Scenario, ScenarioError> {
    let mut s = Scenario::new(id, "");
    for &(line, key, value) in lines {
        match key {
            "group" => s.group = value.to_string(),
            "action" | "act" => match value.strip_prefix('@') {
                Some(file) => {
                    let path = base.map_or_else(|| Path::new(file.trim()).to_path_buf(), |b| b.join(file.trim()));
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| ScenarioError::Io(format!("{}: {e}", path.display())))?;
                    for entry in text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty()) {
                        let entry = entry.strip_prefix("act:").or_else(|| entry.strip_prefix("action:")).unwrap_or(entry);
                        s.actions.push(entry.trim().to_string());
                    }
                }
                None => s.actions.push(value.to_string()),
            },
            "check" | "checks" => {
                s.checks = if value == "all" {
                    Check::ALL.to_vec()
                } else {
                    value
                        .split(',')
                        .map(|c| c.trim().parse::<Check>().map_err(|e| syntax(line, e)))
                        .collect::<Result<_, _>>()?
                };
            }
            "c" => s.cs = parse_cs(value, line)?,
            "cap" => s.cap = parse_usize(value, line)?,
            "trunc" => s.truncs = parse_truncs(value, line)?,
            other => return Err(syntax(line, format!("unknown key `{other}`"))),
        }
    }
    s.validate()?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_and_defaults() {
        let text = "# two scenarios\nid: d4\ngroup: dihedral:4\ncheck: cyclicB_37, oracle_agreement\nc: 1..3\ntrunc: +2, 6\n\nid: z\ngroup: Z5\n";
        let v = parse_scenarios(text, "file", None);
        assert_eq!(v.len(), 2);
        let d4 = v[0].1.as_ref().unwrap();
        assert_eq!(d4.checks, vec![Check::CyclicB, Check::OracleAgreement]);
        assert_eq!(d4.cs, vec![1, 2, 3]);
        assert_eq!(d4.truncs, vec![Trunc::Offset(2), Trunc::Absolute(6)]);
        let z = v[1].1.as_ref().unwrap();
        assert_eq!((z.id.as_str(), z.cap, z.checks.len()), ("z", DEFAULT_CAP, 12));
        let single = parse_scenarios("group: Z2\naction: b : a -> a", "stem", None);
        assert_eq!(single[0].0, "stem");
        assert_eq!(single[0].1.as_ref().unwrap().actions, vec!["b : a -> a"]);
    }

    #[test]
    fn errors_stay_in_their_block() {
        let v = parse_scenarios("id: bad\ngroup: Z2\ncheck: nope\nid: ok\ngroup: Z3\nid: c0\ngroup: Z2\nc: 0", "f", None);
        assert!(matches!(v[0].1, Err(ScenarioError::Syntax { line: 3, .. })));
        assert!(v[1].1.is_ok());
        assert!(matches!(v[2].1, Err(ScenarioError::Invalid(_))));
        assert!(parse_scenarios("", "f", None)[0].1.is_err());
        assert!(parse_scenarios("group: Z2\ncap: 99", "f", None)[0].1.is_err());
        assert!(parse_scenarios("group: Z2\nc: 2\ntrunc: 2", "f", None)[0].1.is_err());
        assert!(parse_scenarios("group: Z2\naction: @/nonexistent/file", "f", None)[0].1.is_err());
    }
}
