//! Group expressions:
//!
//! ```text
//! expr := Zn | Z | dihedral:n | Q8 | trivial
//!       | product:arg,arg | wreath:arg,arg | freewreath:arg,arg
//!       | semidirect:arg,arg[,inv|pow:k]
//! arg  := expr | (expr)
//! ```
//!
//! `semidirect:A,B,…` is `B ⋉ A` with every generator of `B` acting on every
//! generator of `A` the same way (trivially by default). Generators are named
//! `a, b, c, …` in leaf order. `Z` is infinite cyclic and has no finite model.

use std::fmt;

use thiserror::Error;

use crate::presentations::{
    free_product_presentation, semidirect_presentation, standard_wreath_presentation, ActionSpec,
    FinitePresentation, PresentationError,
};
use crate::words::{nth_letter, parse_word_in, GenSym, Word};

use super::{FiniteError, FiniteGroup};

/// Largest finite model built for a group expression.
pub const MODEL_CAP: usize = 512;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("cannot parse group expression `{0}`")]
    Syntax(String),
    #[error("{0}")]
    Presentation(#[from] PresentationError),
    #[error("{0}")]
    Model(#[from] FiniteError),
    #[error("standard wreath product needs a finite top group, got `{0}`")]
    InfiniteTop(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionKind {
    Trivial,
    Inverse,
    Power(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupExpr {
    Cyclic(u64),
    InfiniteCyclic,
    Dihedral(u64),
    Quaternion,
    Trivial,
    Product(Box<GroupExpr>, Box<GroupExpr>),
    Wreath(Box<GroupExpr>, Box<GroupExpr>),
    FreeWreath(Box<GroupExpr>, Box<GroupExpr>),
    Semidirect(Box<GroupExpr>, Box<GroupExpr>, ActionKind),
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arg = |e: &GroupExpr| match e {
            GroupExpr::Product(..) | GroupExpr::Wreath(..) | GroupExpr::FreeWreath(..) | GroupExpr::Semidirect(..) => {
                format!("({e})")
            }
            _ => e.to_string(),
        };
        match self {
            GroupExpr::Cyclic(n) => write!(f, "Z{n}"),
            GroupExpr::InfiniteCyclic => write!(f, "Z"),
            GroupExpr::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupExpr::Quaternion => write!(f, "Q8"),
            GroupExpr::Trivial => write!(f, "trivial"),
            GroupExpr::Product(x, y) => write!(f, "product:{},{}", arg(x), arg(y)),
            GroupExpr::Wreath(x, y) => write!(f, "wreath:{},{}", arg(x), arg(y)),
            GroupExpr::FreeWreath(x, y) => write!(f, "freewreath:{},{}", arg(x), arg(y)),
            GroupExpr::Semidirect(x, y, k) => {
                write!(f, "semidirect:{},{}", arg(x), arg(y))?;
                match k {
                    ActionKind::Trivial => Ok(()),
                    ActionKind::Inverse => write!(f, ",inv"),
                    ActionKind::Power(k) => write!(f, ",pow:{k}"),
                }
            }
        }
    }
}

pub fn parse_group_expr(text: &str) -> Result<GroupExpr, ExprError> {
    let err = || ExprError::Syntax(text.to_string());
    let s = strip_parens(text.trim());
    let (head, rest) = match s.split_once(':') {
        Some((h, r)) => (h.trim(), Some(r)),
        None => (s, None),
    };
    match (head, rest) {
        ("trivial", None) => Ok(GroupExpr::Trivial),
        ("Q8", None) => Ok(GroupExpr::Quaternion),
        ("Z", None) => Ok(GroupExpr::InfiniteCyclic),
        ("dihedral", Some(n)) => n.trim().parse().ok().filter(|&n| n > 0).map(GroupExpr::Dihedral).ok_or_else(err),
        (h, None) if h.starts_with('Z') => h[1..].parse().ok().filter(|&n| n > 0).map(GroupExpr::Cyclic).ok_or_else(err),
        (h @ ("product" | "wreath" | "freewreath" | "semidirect"), Some(r)) => {
            let args = split_top_level(r).ok_or_else(err)?;
            let two = |args: &[&str]| -> Result<(Box<GroupExpr>, Box<GroupExpr>), ExprError> {
                Ok((Box::new(parse_group_expr(args[0])?), Box::new(parse_group_expr(args[1])?)))
            };
            match (h, args.len()) {
                ("product", 2) => two(&args).map(|(x, y)| GroupExpr::Product(x, y)),
                ("wreath", 2) => two(&args).map(|(x, y)| GroupExpr::Wreath(x, y)),
                ("freewreath", 2) => two(&args).map(|(x, y)| GroupExpr::FreeWreath(x, y)),
                ("semidirect", 2) => two(&args).map(|(x, y)| GroupExpr::Semidirect(x, y, ActionKind::Trivial)),
                ("semidirect", 3) => {
                    let kind = match args[2].trim() {
                        "inv" => ActionKind::Inverse,
                        "trivial" => ActionKind::Trivial,
                        k => ActionKind::Power(
                            k.strip_prefix("pow:").and_then(|k| k.trim().parse().ok()).ok_or_else(err)?,
                        ),
                    };
                    two(&args).map(|(x, y)| GroupExpr::Semidirect(x, y, kind))
                }
                _ => Err(err()),
            }
        }
        _ => Err(err()),
    }
}

fn strip_parens(mut s: &str) -> &str {
    while s.starts_with('(') && s.ends_with(')') && matching_close(s) == Some(s.len() - 1) {
        s = s[1..s.len() - 1].trim();
    }
    s
}

fn matching_close(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn split_top_level(s: &str) -> Option<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    (depth == 0).then(|| {
        out.push(&s[start..]);
        out
    })
}

/// How a built group splits as `B ⋉ A`.
#[derive(Clone, Debug)]
pub enum SplitKind {
    Semidirect(ActionSpec),
    StandardWreath,
    FreeWreath,
}

#[derive(Clone, Debug)]
pub struct Split {
    pub a: Box<BuiltGroup>,
    pub b: Box<BuiltGroup>,
    pub kind: SplitKind,
}

/// A presentation, an optional finite model with the same generator names,
/// and the outermost splitting if the expression has one.
#[derive(Clone, Debug)]
pub struct BuiltGroup {
    pub expr: String,
    pub presentation: FinitePresentation,
    pub model: Option<FiniteGroup>,
    pub split: Option<Split>,
}

impl GroupExpr {
    pub fn build(&self) -> Result<BuiltGroup, ExprError> {
        let mut next = 0;
        self.build_from(&mut next)
    }

    fn build_from(&self, next: &mut usize) -> Result<BuiltGroup, ExprError> {
        let mut fresh = || {
            let g = nth_letter(*next);
            *next += 1;
            g
        };
        let leaf = |gens: Vec<GenSym>, rels: &[&str], model: Option<FiniteGroup>| -> Result<BuiltGroup, ExprError> {
            let rels = rels
                .iter()
                .map(|r| parse_word_in(r, &gens).map_err(PresentationError::from))
                .collect::<Result<Vec<Word>, _>>()?;
            Ok(BuiltGroup {
                expr: self.to_string(),
                presentation: FinitePresentation::new(gens, rels)?,
                model,
                split: None,
            })
        };
        match self {
            GroupExpr::Trivial => leaf(vec![], &[], Some(FiniteGroup::trivial())),
            GroupExpr::InfiniteCyclic => leaf(vec![fresh()], &[], None),
            GroupExpr::Cyclic(n) => {
                let a = fresh();
                let model = (*n as usize <= MODEL_CAP).then(|| FiniteGroup::cyclic(*n as usize, &a));
                leaf(vec![a.clone()], &[&format!("{a}^{n}")], model)
            }
            GroupExpr::Quaternion => {
                let (a, b) = (fresh(), fresh());
                let rels = [format!("{a}^4"), format!("{a}^2*{b}^-2"), format!("{b}^-1*{a}*{b}*{a}")];
                let model = FiniteGroup::quaternion(&a, &b);
                leaf(vec![a, b], &rels.iter().map(String::as_str).collect::<Vec<_>>(), Some(model))
            }
            GroupExpr::Dihedral(n) => {
                let (a, b) = (fresh(), fresh());
                let rels = [format!("{a}^{n}"), format!("{b}^2"), format!("({a}*{b})^2")];
                let model = (2 * *n as usize <= MODEL_CAP).then(|| FiniteGroup::dihedral(*n as usize, &a, &b));
                let mut built = leaf(vec![a.clone(), b.clone()], &rels.iter().map(String::as_str).collect::<Vec<_>>(), model)?;
                let part_a = leaf(vec![a.clone()], &[&format!("{a}^{n}")], (*n as usize <= MODEL_CAP).then(|| FiniteGroup::cyclic(*n as usize, &a)))?;
                let part_b = leaf(vec![b.clone()], &[&format!("{b}^2")], Some(FiniteGroup::cyclic(2, &b)))?;
                let action = ActionSpec::uniform(&part_a.presentation, &part_b.presentation, |x| Word::gen_pow(x, -1));
                built.split = Some(Split { a: Box::new(part_a), b: Box::new(part_b), kind: SplitKind::Semidirect(action) });
                Ok(built)
            }
            GroupExpr::Product(x, y) | GroupExpr::Semidirect(x, y, _) => {
                let pa = x.build_from(next)?;
                let pb = y.build_from(next)?;
                let kind = match self {
                    GroupExpr::Semidirect(_, _, k) => k.clone(),
                    _ => ActionKind::Trivial,
                };
                let action = ActionSpec::uniform(&pa.presentation, &pb.presentation, |g| match kind {
                    ActionKind::Trivial => Word::gen(g),
                    ActionKind::Inverse => Word::gen_pow(g, -1),
                    ActionKind::Power(k) => Word::gen_pow(g, k),
                });
                let presentation = semidirect_presentation(&pa.presentation, &pb.presentation, &action)?;
                let model = match (&pa.model, &pb.model) {
                    (Some(ma), Some(mb)) if ma.order() * mb.order() <= MODEL_CAP => {
                        Some(FiniteGroup::semidirect(ma, mb, &action)?)
                    }
                    _ => None,
                };
                Ok(BuiltGroup {
                    expr: self.to_string(),
                    presentation,
                    model,
                    split: Some(Split { a: Box::new(pa), b: Box::new(pb), kind: SplitKind::Semidirect(action) }),
                })
            }
            GroupExpr::Wreath(x, y) => {
                let pa = x.build_from(next)?;
                let pb = y.build_from(next)?;
                let mb = pb.model.as_ref().ok_or_else(|| ExprError::InfiniteTop(y.to_string()))?;
                let presentation = standard_wreath_presentation(&pa.presentation, &pb.presentation, mb)?;
                let model = match &pa.model {
                    Some(ma) => match FiniteGroup::standard_wreath(ma, mb) {
                        Ok(m) if m.order() <= MODEL_CAP => Some(m),
                        Ok(_) | Err(FiniteError::CapExceeded { .. }) => None,
                        Err(e) => return Err(e.into()),
                    },
                    None => None,
                };
                Ok(BuiltGroup {
                    expr: self.to_string(),
                    presentation,
                    model,
                    split: Some(Split { a: Box::new(pa), b: Box::new(pb), kind: SplitKind::StandardWreath }),
                })
            }
            GroupExpr::FreeWreath(x, y) => {
                let pa = x.build_from(next)?;
                let pb = y.build_from(next)?;
                let presentation = free_product_presentation(&pa.presentation, &pb.presentation)?;
                let model = (pa.model.as_ref().is_some_and(|m| m.order() == 1) || pb.model.as_ref().is_some_and(|m| m.order() == 1))
                    .then(|| match (&pa.model, &pb.model) {
                        (Some(ma), Some(mb)) => Some(FiniteGroup::direct_product(ma, mb)),
                        _ => None,
                    })
                    .flatten();
                Ok(BuiltGroup {
                    expr: self.to_string(),
                    presentation,
                    model,
                    split: Some(Split { a: Box::new(pa), b: Box::new(pb), kind: SplitKind::FreeWreath }),
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::check_model;

    #[test]
    fn parse_and_print() {
        for s in ["Z4", "dihedral:4", "wreath:Z2,Z2", "semidirect:Z4,Z2,inv", "product:(wreath:Z2,Z2),Z3", "semidirect:Z7,Z3,pow:2", "freewreath:Z2,Z3", "Q8", "trivial", "Z"] {
            assert_eq!(parse_group_expr(s).unwrap().to_string(), s);
        }
        assert_eq!(parse_group_expr("((Z4))").unwrap(), GroupExpr::Cyclic(4));
        for bad in ["Z0", "wreath:Z2", "semidirect:Z2,Z2,foo", "product:(Z2,Z3", "dihedral:x"] {
            assert!(parse_group_expr(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn models_match_presentations() {
        for s in ["Z6", "dihedral:4", "wreath:Z2,Z2", "semidirect:Z4,Z2,inv", "product:Z2,(dihedral:3)", "semidirect:Z7,Z3,pow:2", "Q8", "wreath:Z3,Z3"] {
            let b = parse_group_expr(s).unwrap().build().unwrap();
            let m = b.model.as_ref().unwrap();
            check_model(&b.presentation, m).unwrap();
            assert!(m.is_generated(), "{s}");
        }
        let d = parse_group_expr("dihedral:4").unwrap().build().unwrap();
        assert_eq!(d.model.unwrap().order(), 8);
        let w = parse_group_expr("wreath:Z3,Z3").unwrap().build().unwrap();
        assert_eq!(w.model.unwrap().order(), 81);
        assert!(parse_group_expr("semidirect:Z3,Z2,pow:2").unwrap().build().is_ok());
        assert!(parse_group_expr("semidirect:Z4,Z3,inv").unwrap().build().is_err());
        assert!(parse_group_expr("freewreath:Z2,Z2").unwrap().build().unwrap().model.is_none());
    }
}
