//! Line-oriented genome files:
//!
//! ```text
//! states 3
//! init 10
//! 1 0 2
//! 01 1 1
//! 0 2 0
//! ```
//!
//! The first line gives the state count, the second the initial emission and
//! each following line one state as `<emission> <next on 0> <next on 1>`.

use std::fmt::Write;

use crate::error::{DwpError, Result};
use crate::sda::{Emission, SdaGenome, StateRecord};

pub fn serialize_genome(g: &SdaGenome) -> String {
    let mut out = String::new();
    writeln!(out, "states {}", g.num_states()).unwrap();
    writeln!(out, "init {}", g.initial_emission()).unwrap();
    for s in g.states() {
        writeln!(out, "{} {} {}", s.emission, s.next_on_0, s.next_on_1).unwrap();
    }
    out
}

fn keyword_line<'a>(line: Option<(usize, &'a str)>, key: &str, at: usize) -> Result<(usize, &'a str)> {
    let (n, text) = line.ok_or_else(|| DwpError::parse(at, format!("missing `{key}` line")))?;
    let mut parts = text.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some(k), Some(v), None) if k == key => Ok((n, v)),
        _ => Err(DwpError::parse(n, format!("expected `{key} <value>`"))),
    }
}

fn parse_emission(s: &str, line: usize) -> Result<Emission> {
    s.parse().map_err(|e: DwpError| DwpError::parse(line, e.to_string()))
}

pub fn parse_genome(text: &str) -> Result<SdaGenome> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (n_line, n_text) = keyword_line(lines.next(), "states", 1)?;
    let n: usize = n_text
        .parse()
        .map_err(|_| DwpError::parse(n_line, format!("bad state count {n_text:?}")))?;
    if n == 0 {
        return Err(DwpError::parse(n_line, "state count must be at least 1"));
    }
    let (i_line, i_text) = keyword_line(lines.next(), "init", 2)?;
    let init = parse_emission(i_text, i_line)?;

    let mut states = Vec::with_capacity(n);
    for k in 0..n {
        let (line, text) = lines
            .next()
            .ok_or_else(|| DwpError::parse(k + 3, format!("expected {n} state lines, found {k}")))?;
        let parts: Vec<&str> = text.split_whitespace().collect();
        let [emission, on0, on1] = parts[..] else {
            return Err(DwpError::parse(line, "expected `<emission> <next_on_0> <next_on_1>`"));
        };
        let emission = parse_emission(emission, line)?;
        let target = |s: &str| -> Result<usize> {
            let t: usize = s.parse().map_err(|_| DwpError::parse(line, format!("bad state index {s:?}")))?;
            if t >= n {
                return Err(DwpError::parse(line, format!("transition to {t} but only {n} states")));
            }
            Ok(t)
        };
        states.push(StateRecord { emission, next_on_0: target(on0)?, next_on_1: target(on1)? });
    }
    if let Some((line, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(DwpError::parse(line, "trailing data after last state"));
    }
    SdaGenome::new(init, states)
}
