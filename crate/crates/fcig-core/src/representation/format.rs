//! Text form of representations.
//!
//! ```text
//! rep <circular|linear> <P>
//! v <vertex> <point>      one per vertex, 1-based vertex ids
//! i <start> <end>         one per interval, 0-based points
//! f <u> <v>               one per chosen fuzzy edge
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use super::{Arc, Kind, Representation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct RepParseError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> RepParseError {
    RepParseError { line, msg: msg.into() }
}

impl Representation {
    /// Canonical text form; sections in order, each sorted.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "rep {} {}", self.kind, self.point_count).unwrap();
        for (v, pt) in self.phi.iter().enumerate() {
            writeln!(s, "v {} {}", v + 1, pt).unwrap();
        }
        let mut intervals = self.intervals.clone();
        intervals.sort_unstable();
        for a in intervals {
            writeln!(s, "i {} {}", a.start, a.end).unwrap();
        }
        let mut fuzzy = self.fuzzy_edges.clone();
        fuzzy.sort_unstable();
        for (u, v) in fuzzy {
            writeln!(s, "f {} {}", u + 1, v + 1).unwrap();
        }
        s
    }

    /// Parses the text form. Only syntax is checked here; use
    /// [`Representation::validate`] for the semantic invariants.
    pub fn parse(text: &str) -> Result<Representation, RepParseError> {
        let mut header: Option<(Kind, usize)> = None;
        let mut phi: Vec<Option<usize>> = Vec::new();
        let mut intervals = Vec::new();
        let mut fuzzy = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let t = raw.trim();
            if t.is_empty() || t.starts_with('c') || t.starts_with('#') {
                continue;
            }
            let mut parts = t.split_whitespace();
            let tag = parts.next().unwrap();
            let rest: Vec<&str> = parts.collect();
            if tag == "rep" {
                if header.is_some() {
                    return Err(err(line, "duplicate header"));
                }
                if rest.len() != 2 {
                    return Err(err(line, "header must be `rep <kind> <P>`"));
                }
                let kind = match rest[0] {
                    "circular" => Kind::Circular,
                    "linear" => Kind::Linear,
                    _ => return Err(err(line, "kind must be `circular` or `linear`")),
                };
                let p = rest[1].parse().map_err(|_| err(line, "point count must be an integer"))?;
                header = Some((kind, p));
                continue;
            }
            if header.is_none() {
                return Err(err(line, "record before `rep` header"));
            }
            let nums: Vec<usize> = rest
                .iter()
                .map(|x| x.parse::<usize>().map_err(|_| err(line, "expected a nonnegative integer")))
                .collect::<Result<_, _>>()?;
            if nums.len() != 2 {
                return Err(err(line, format!("`{tag}` takes two integers")));
            }
            match tag {
                "v" => {
                    if nums[0] == 0 {
                        return Err(err(line, "vertex ids are 1-based"));
                    }
                    let v = nums[0] - 1;
                    if phi.len() <= v {
                        phi.resize(v + 1, None);
                    }
                    if phi[v].replace(nums[1]).is_some() {
                        return Err(err(line, "vertex placed twice"));
                    }
                }
                "i" => intervals.push(Arc::new(nums[0], nums[1])),
                "f" => {
                    if nums[0] == 0 || nums[1] == 0 {
                        return Err(err(line, "vertex ids are 1-based"));
                    }
                    fuzzy.push((nums[0] - 1, nums[1] - 1));
                }
                _ => return Err(err(line, "unknown line tag")),
            }
        }
        let (kind, p) = header.ok_or_else(|| err(0, "missing `rep` header"))?;
        let phi = phi
            .into_iter()
            .enumerate()
            .map(|(v, x)| x.ok_or_else(|| err(0, format!("vertex {} has no point", v + 1))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Representation::new(kind, p, phi, intervals, fuzzy))
    }
}
