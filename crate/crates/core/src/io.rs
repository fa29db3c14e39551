//! Text formats for configurations (`ccfg`), tournaments (`trn`), groups
//! (`grp`), seed relations (`rels`) and point-set families (`pi`).

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::algo::Tournament;
use crate::ccfg::{CoherentConfiguration, ColorMatrix};
use crate::error::{Error, GroupError};
use crate::permgrp::{Permutation, PermutationGroup};
use crate::wl::{Relation, RelationSet};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("{invariant} violated: {source}")]
    Validation { invariant: &'static str, source: Error },
}

fn parse_err<T>(line: usize, reason: impl Into<String>) -> Result<T, IoError> {
    Err(IoError::Parse {
        line,
        reason: reason.into(),
    })
}

/// Name of the invariant an error reports on.
pub fn invariant_name(e: &Error) -> &'static str {
    match e {
        Error::Group(_) => "group",
        Error::MalformedMatrix(_) | Error::ColorOutOfRange { .. } => "color matrix",
        Error::DiagonalMixed { .. } => "diagonal union of colors",
        Error::NotTransposeClosed { .. } => "transpose closure",
        Error::NotCoherent(_) => "coherence",
        Error::NotATournament(_) => "tournament",
        Error::PointOutOfRange { .. } | Error::DegreeMismatch { .. } => "point range",
        _ => "precondition",
    }
}

fn invalid(e: Error) -> IoError {
    IoError::Validation {
        invariant: invariant_name(&e),
        source: e,
    }
}

/// Non-blank lines that are not comments, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers(line: usize, fields: &[&str]) -> Result<Vec<u32>, IoError> {
    fields
        .iter()
        .map(|f| f.parse::<u32>().or_else(|_| parse_err(line, format!("`{f}` is not a number"))))
        .collect()
}

/// Parses a header `keyword a b ...` with `count` numeric fields.
fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    keyword: &str,
    count: usize,
) -> Result<(usize, Vec<u32>), IoError> {
    let Some((line, text)) = lines.next() else {
        return parse_err(1, format!("missing `{keyword}` header"));
    };
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields[0] != keyword || fields.len() != count + 1 {
        return parse_err(line, format!("expected header `{keyword}` with {count} numbers"));
    }
    Ok((line, numbers(line, &fields[1..])?))
}

fn no_trailing<'a>(mut lines: impl Iterator<Item = (usize, &'a str)>) -> Result<(), IoError> {
    match lines.next() {
        Some((line, _)) => parse_err(line, "unexpected trailing content"),
        None => Ok(()),
    }
}

pub fn parse_ccfg(text: &str) -> Result<CoherentConfiguration, IoError> {
    let mut lines = content_lines(text);
    let (head, h) = header(&mut lines, "ccfg", 2)?;
    let (n, k) = (h[0] as usize, h[1] as usize);
    let mut colors = Vec::with_capacity(n * n);
    let mut used = vec![false; k];
    for row in 0..n {
        let Some((line, text)) = lines.next() else {
            return parse_err(head, format!("expected {n} rows, found {row}"));
        };
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != n {
            return parse_err(line, format!("expected {n} colors, found {}", fields.len()));
        }
        for c in numbers(line, &fields)? {
            if c as usize >= k {
                return parse_err(line, format!("color {c} is not below {k}"));
            }
            used[c as usize] = true;
            colors.push(c);
        }
    }
    no_trailing(lines)?;
    if let Some(c) = used.iter().position(|u| !u) {
        return parse_err(head, format!("colors are not contiguous: {c} never occurs"));
    }
    let m = ColorMatrix::new(n, colors).map_err(invalid)?;
    CoherentConfiguration::new(m).map_err(invalid)
}

pub fn write_ccfg(x: &CoherentConfiguration) -> String {
    let mut out = format!("ccfg {} {}\n", x.n(), x.rank());
    for row in x.matrix().rows() {
        let row: Vec<String> = row.iter().map(u32::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_trn(text: &str) -> Result<Tournament, IoError> {
    let mut lines = content_lines(text);
    let (head, h) = header(&mut lines, "trn", 2)?;
    let (n, k) = (h[0] as usize, h[1] as usize);
    let mut arcs = Vec::new();
    for (line, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 3 {
            return parse_err(line, "expected `i j c`");
        }
        let v = numbers(line, &fields)?;
        if v[2] as usize >= k {
            return parse_err(line, format!("color {} is not below {k}", v[2]));
        }
        arcs.push((v[0], v[1], v[2]));
    }
    let t = Tournament::new(n, &arcs).map_err(invalid)?;
    if t.colors() != k {
        return parse_err(head, format!("header declares {k} colors, arcs use {}", t.colors()));
    }
    Ok(t)
}

pub fn write_trn(t: &Tournament) -> String {
    let mut out = format!("trn {} {}\n", t.n(), t.colors());
    for (i, j, c) in t.arcs() {
        let _ = writeln!(out, "{i} {j} {c}");
    }
    out
}

fn parse_cycles(line: usize, n: usize, text: &str) -> Result<Permutation, IoError> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return parse_err(line, "expected `(`");
        };
        let Some(end) = body.find(')') else {
            return parse_err(line, "unclosed cycle");
        };
        let fields: Vec<&str> = body[..end].split_whitespace().collect();
        let cycle = numbers(line, &fields)?;
        if let Some(&p) = cycle.iter().find(|&&p| p as usize >= n) {
            return parse_err(line, format!("point {p} is not below {n}"));
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = body[end + 1..].trim_start();
    }
    Permutation::from_cycles(n, &cycles).or_else(|_| parse_err(line, "cycles are not disjoint"))
}

pub fn parse_grp(text: &str) -> Result<PermutationGroup, IoError> {
    let mut lines = content_lines(text);
    let (_, h) = header(&mut lines, "degree", 1)?;
    let n = h[0] as usize;
    let mut gens = Vec::new();
    for (line, text) in lines {
        let g = if let Some(images) = text.strip_prefix("img") {
            let fields: Vec<&str> = images.split_whitespace().collect();
            if fields.len() != n {
                return parse_err(line, format!("expected {n} images, found {}", fields.len()));
            }
            Permutation::from_images(numbers(line, &fields)?)
                .or_else(|_| parse_err(line, "image list is not a bijection"))?
        } else {
            parse_cycles(line, n, text)?
        };
        gens.push(g);
    }
    PermutationGroup::new(n, gens).map_err(|e: GroupError| invalid(e.into()))
}

pub fn write_grp(g: &PermutationGroup) -> String {
    let mut out = format!("degree {}\n# order = {}\n", g.degree(), g.order());
    for p in g.generators() {
        let _ = writeln!(out, "{p}");
    }
    out
}

pub fn parse_rels(text: &str) -> Result<RelationSet, IoError> {
    let mut lines = content_lines(text);
    let (_, h) = header(&mut lines, "rels", 2)?;
    let (n, m) = (h[0] as usize, h[1] as usize);
    let mut relations = Vec::with_capacity(m);
    for r in 0..m {
        let Some((line, text)) = lines.next() else {
            return parse_err(0, format!("expected {m} relations, found {r}"));
        };
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 3 || fields[0] != "rel" {
            return parse_err(line, "expected `rel name count`");
        }
        let count = numbers(line, &fields[2..])?[0] as usize;
        let mut pairs = Vec::with_capacity(count);
        for _ in 0..count {
            let Some((line, text)) = lines.next() else {
                return parse_err(line, format!("relation `{}` needs {count} pairs", fields[1]));
            };
            let fields: Vec<&str> = text.split_whitespace().collect();
            if fields.len() != 2 {
                return parse_err(line, "expected `i j`");
            }
            let v = numbers(line, &fields)?;
            if let Some(&p) = v.iter().find(|&&p| p as usize >= n) {
                return parse_err(line, format!("point {p} is not below {n}"));
            }
            pairs.push((v[0], v[1]));
        }
        relations.push(Relation {
            name: fields[1].to_string(),
            pairs,
        });
    }
    no_trailing(lines)?;
    Ok(RelationSet { n, relations })
}

pub fn write_rels(s: &RelationSet) -> String {
    let mut out = format!("rels {} {}\n", s.n, s.relations.len());
    for r in &s.relations {
        let _ = writeln!(out, "rel {} {}", r.name, r.pairs.len());
        for (i, j) in &r.pairs {
            let _ = writeln!(out, "{i} {j}");
        }
    }
    out
}

/// One point set per line, points below `n`.
pub fn parse_pi(text: &str, n: usize) -> Result<Vec<Vec<u32>>, IoError> {
    content_lines(text)
        .map(|(line, text)| {
            let fields: Vec<&str> = text.split_whitespace().collect();
            let mut set = numbers(line, &fields)?;
            if let Some(&p) = set.iter().find(|&&p| p as usize >= n) {
                return parse_err(line, format!("point {p} is not below {n}"));
            }
            set.sort_unstable();
            set.dedup();
            Ok(set)
        })
        .collect()
}

pub fn write_pi(pi: &[Vec<u32>]) -> String {
    let mut out = String::new();
    for set in pi {
        let set: Vec<String> = set.iter().map(u32::to_string).collect();
        out.push_str(&set.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileKind {
    Ccfg,
    Trn,
    Grp,
    Rels,
}

#[derive(Clone, Debug)]
pub enum Parsed {
    Config(CoherentConfiguration),
    Tournament(Tournament),
    Group(PermutationGroup),
    Relations(RelationSet),
}

pub fn read_text(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })
}

/// Reads `path` as `kind`, checking every invariant of the target type.
pub fn parse_and_validate(path: &Path, kind: FileKind) -> Result<Parsed, IoError> {
    let text = read_text(path)?;
    Ok(match kind {
        FileKind::Ccfg => Parsed::Config(parse_ccfg(&text)?),
        FileKind::Trn => Parsed::Tournament(parse_trn(&text)?),
        FileKind::Grp => Parsed::Group(parse_grp(&text)?),
        FileKind::Rels => Parsed::Relations(parse_rels(&text)?),
    })
}
