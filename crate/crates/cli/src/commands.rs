use std::fmt::Write as _;
use std::path::Path;

use cohcfg_core::algo::{list_isomorphisms, recognize_schurity_with_budget, tournament_pipeline, Schurity, Tournament};
use cohcfg_core::bases::{base_number_search, BaseKind, DEFAULT_BUDGET};
use cohcfg_core::constructions::{cartesian_power, exponentiation, glue_disjoint_union, wreath_product};
use cohcfg_core::io::{self, IoError};
use cohcfg_core::permgrp::color_aut_backtrack;
use cohcfg_core::wl::{coherent_closure, AlgebraicIsomorphism};
use cohcfg_core::{CoherentConfiguration, Error, PermutationGroup};
use serde_json::{json, Value};
use thiserror::Error;

use crate::Mode;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn to_json(&self) -> Value {
        let mut body = json!({ "message": self.to_string() });
        let kind = match self {
            CliError::Io(IoError::Read { .. }) => "read",
            CliError::Io(IoError::Parse { line, .. }) => {
                body["line"] = json!(line);
                "parse"
            }
            CliError::Io(IoError::Validation { invariant, .. }) => {
                body["invariant"] = json!(invariant);
                "validation"
            }
            CliError::Core(Error::BudgetExceeded { .. }) => "budget_exceeded",
            CliError::Core(_) => "precondition",
            CliError::Usage(_) => "usage",
        };
        body["kind"] = json!(kind);
        json!({ "error": body })
    }
}

/// A finished command: the JSON report, its text rendering and the exit
/// code (0 for a positive verdict or no verdict, 1 for a negative one).
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub code: u8,
}

/// `--budget`, else `COHCFG_BUDGET`, else the library default.
pub fn budget(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("COHCFG_BUDGET") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("COHCFG_BUDGET=`{s}` is not a number"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn read_config(path: &Path) -> Result<CoherentConfiguration, CliError> {
    Ok(io::parse_ccfg(&io::read_text(path)?)?)
}

fn read_group(path: &Path) -> Result<PermutationGroup, CliError> {
    Ok(io::parse_grp(&io::read_text(path)?)?)
}

fn read_tournament(path: &Path) -> Result<Tournament, CliError> {
    Ok(io::parse_trn(&io::read_text(path)?)?)
}

fn config_report(command: &str, x: &CoherentConfiguration) -> Value {
    json!({
        "command": command,
        "n": x.n(),
        "rank": x.rank(),
        "fibers": x.fibers().len(),
        "homogeneous": x.is_homogeneous(),
        "antisymmetric": x.is_antisymmetric(),
        "ccfg": io::write_ccfg(x),
    })
}

fn config_outcome(command: &str, x: &CoherentConfiguration) -> Outcome {
    Outcome {
        json: config_report(command, x),
        text: io::write_ccfg(x),
        code: 0,
    }
}

pub fn wl_close(rels: &Path) -> Result<Outcome, CliError> {
    let seeds = io::parse_rels(&io::read_text(rels)?)?;
    Ok(config_outcome("wl-close", &coherent_closure(&seeds)?))
}

pub fn fission(config: &Path, pi: &Path) -> Result<Outcome, CliError> {
    let x = read_config(config)?;
    let pi = io::parse_pi(&io::read_text(pi)?, x.n())?;
    let y = cohcfg_core::wl::fission(&x, &pi);
    let mut out = config_outcome("fission", &y);
    out.json["complete"] = json!(y.fibers().len() == y.n());
    Ok(out)
}

pub fn aut(config: &Path) -> Result<Outcome, CliError> {
    let x = read_config(config)?;
    let g = color_aut_backtrack(x.matrix(), None).map_err(Error::from)?;
    Ok(Outcome {
        json: json!({ "command": "aut", "n": x.n(), "group": g }),
        text: io::write_grp(&g),
        code: 0,
    })
}

pub fn schurian(config: &Path, budget: u64) -> Result<Outcome, CliError> {
    let x = read_config(config)?;
    let verdict = recognize_schurity_with_budget(&x, budget)?;
    let mut report = json!({ "command": "schurian", "n": x.n(), "rank": x.rank() });
    let (text, code) = match &verdict {
        Schurity::Schurian { group } => {
            report["schurian"] = json!(true);
            report["group"] = json!(group);
            (format!("schurian, |Aut| = {}\n{}", group.order(), io::write_grp(group)), 0)
        }
        Schurity::NotSchurian { rejection } => {
            report["schurian"] = json!(false);
            report["rejection"] = json!(rejection);
            (format!("not schurian: {}\n", serde_json::to_string(rejection).unwrap()), 1)
        }
    };
    Ok(Outcome { json: report, text, code })
}

pub fn base(config: &Path, mode: Mode, budget: u64) -> Result<Outcome, CliError> {
    let x = read_config(config)?;
    let kind = match mode {
        Mode::Base => BaseKind::Base,
        Mode::Gb => BaseKind::Generalized,
    };
    let cert = base_number_search(&x, kind, budget)?;
    let mut text = format!("size {}\n", cert.size());
    for set in &cert.sets {
        let points: Vec<String> = set.iter().map(u32::to_string).collect();
        writeln!(text, "{}", points.join(" ")).unwrap();
    }
    Ok(Outcome {
        json: json!({
            "command": "base",
            "mode": match mode { Mode::Base => "base", Mode::Gb => "gb" },
            "size": cert.size(),
            "witness": cert.sets,
            "rank": x.rank(),
            "fission_rank": cert.fission_rank,
            "complete": cert.complete,
        }),
        text,
        code: 0,
    })
}

fn header_keyword(text: &str) -> Option<&str> {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.split_whitespace().next())
}

fn mapping_lines(maps: &[Vec<u32>]) -> String {
    let mut text = String::new();
    for m in maps {
        let images: Vec<String> = m.iter().map(u32::to_string).collect();
        writeln!(text, "{}", images.join(" ")).unwrap();
    }
    text
}

pub fn iso(first: &Path, second: &Path) -> Result<Outcome, CliError> {
    let (a, b) = (io::read_text(first)?, io::read_text(second)?);
    match (header_keyword(&a), header_keyword(&b)) {
        (Some("trn"), Some("trn")) => iso_tournaments(&io::parse_trn(&a)?, &io::parse_trn(&b)?),
        (Some("ccfg"), Some("ccfg")) => iso_configs(&io::parse_ccfg(&a)?, &io::parse_ccfg(&b)?),
        _ => Err(CliError::Usage("iso needs two .trn files or two .ccfg files".into())),
    }
}

fn iso_tournaments(t1: &Tournament, t2: &Tournament) -> Result<Outcome, CliError> {
    let report = match tournament_pipeline(t1, Some(t2)) {
        Ok(r) => r,
        Err(Error::NotSchurian) => {
            let reason = "a tournament is not schurian; the search is not applicable";
            return Ok(Outcome {
                json: json!({
                    "command": "iso",
                    "kind": "tournament",
                    "isomorphic": null,
                    "undecided": reason,
                    "count": 0,
                    "mappings": [],
                }),
                text: format!("undecided: {reason}\n"),
                code: 1,
            });
        }
        Err(e) => return Err(e.into()),
    };
    let iso = report.iso.expect("two tournaments were given");
    let maps: Vec<Vec<u32>> = iso.direct.iter().map(|p| p.images().to_vec()).collect();
    let mut text = match &iso.refused_by {
        Some(reason) => format!("not isomorphic: {reason}\n"),
        None if iso.isomorphic => format!("isomorphic: {} mappings\n", maps.len()),
        None => "not isomorphic\n".to_string(),
    };
    text.push_str(&mapping_lines(&maps));
    Ok(Outcome {
        json: json!({
            "command": "iso",
            "kind": "tournament",
            "isomorphic": iso.isomorphic,
            "count": maps.len(),
            "mappings": maps,
            "refused_by": iso.refused_by,
            "routes_agree": iso.routes_agree,
            "automorphisms": report.automorphisms,
        }),
        text,
        code: if iso.isomorphic { 0 } else { 1 },
    })
}

fn iso_configs(x: &CoherentConfiguration, y: &CoherentConfiguration) -> Result<Outcome, CliError> {
    let maps: Vec<Vec<u32>> = match AlgebraicIsomorphism::new(x, y, (0..x.rank() as u32).collect()) {
        Ok(id) if x.n() == y.n() => list_isomorphisms(x, y, &id)?
            .iter()
            .map(|p| p.images().to_vec())
            .collect(),
        _ => Vec::new(),
    };
    let isomorphic = !maps.is_empty();
    let mut text = if isomorphic {
        format!("isomorphic: {} mappings\n", maps.len())
    } else {
        "not isomorphic\n".to_string()
    };
    text.push_str(&mapping_lines(&maps));
    Ok(Outcome {
        json: json!({
            "command": "iso",
            "kind": "ccfg",
            "isomorphic": isomorphic,
            "count": maps.len(),
            "mappings": maps,
        }),
        text,
        code: if isomorphic { 0 } else { 1 },
    })
}

pub fn wreath(first: &Path, second: &Path) -> Result<Outcome, CliError> {
    let (x1, x2) = (read_config(first)?, read_config(second)?);
    Ok(config_outcome("wreath", &wreath_product(&x1, &x2)))
}

pub fn power(config: &Path, m: usize) -> Result<Outcome, CliError> {
    if m == 0 {
        return Err(CliError::Usage("the exponent must be positive".into()));
    }
    Ok(config_outcome("power", &cartesian_power(&read_config(config)?, m)))
}

pub fn exp(config: &Path, group: &Path) -> Result<Outcome, CliError> {
    let (y, l) = (read_config(config)?, read_group(group)?);
    if !l.is_transitive() {
        return Err(CliError::Usage("the exponent group must be transitive".into()));
    }
    Ok(config_outcome("exp", &exponentiation(&y, &l)))
}

pub fn glue(parts: &[std::path::PathBuf], q: Option<&Path>) -> Result<Outcome, CliError> {
    let xs: Vec<CoherentConfiguration> = parts.iter().map(|p| read_config(p)).collect::<Result<_, _>>()?;
    let q = match q {
        Some(path) => read_group(path)?,
        None => PermutationGroup::trivial(xs.len()),
    };
    let psi: Vec<Vec<Option<AlgebraicIsomorphism>>> = xs
        .iter()
        .map(|a| {
            xs.iter()
                .map(|b| AlgebraicIsomorphism::new(a, b, (0..a.rank() as u32).collect()).ok())
                .collect()
        })
        .collect();
    let glued = glue_disjoint_union(&xs, &psi, &q)?;
    let mut out = config_outcome("glue", &glued.config);
    out.json["parts"] = json!(glued.parts);
    Ok(out)
}

pub fn tournament_check(path: &Path) -> Result<Outcome, CliError> {
    let t = read_tournament(path)?;
    let report = tournament_pipeline(&t, None)?;
    let g = &report.automorphisms;
    let mut text = if report.schurian {
        format!("schurian, |Aut| = {}\n", g.order())
    } else {
        format!(
            "not schurian: {}; |Aut| = {}\n",
            serde_json::to_string(&report.rejection).unwrap(),
            g.order()
        )
    };
    text.push_str(&io::write_grp(g));
    Ok(Outcome {
        json: json!({
            "command": "tournament-check",
            "n": report.n,
            "colors": t.colors(),
            "closure_rank": report.closure_rank,
            "schurian": report.schurian,
            "rejection": report.rejection,
            "automorphisms": report.automorphisms,
        }),
        text,
        code: if report.schurian { 0 } else { 1 },
    })
}
