//! Line-oriented text formats.
//!
//! Diagram files (`.q4d`):
//!
//! ```text
//! # comment
//! label: spun trefoil
//! mode: plat
//! bridges: 2
//! tangle1: s2 s2 s2
//! tangle2: s2' s1
//! tangle3:
//! tangle4: s3
//! ```
//!
//! In plat mode a tangle is a braid word; `sK` is the Artin generator
//! `σ_K` and `sK'` its inverse. In relator mode each tangle line lists `b`
//! relators separated by `;`, letters `xK` or `xK^-1`:
//!
//! ```text
//! mode: relators
//! bridges: 1
//! tangle1: x0 x1
//! ```
//!
//! Representation files (`.rho`) give the number of sheets and one line per
//! puncture in cycle notation, `()` for the identity:
//!
//! ```text
//! sheets: 3
//! x0: (1 2)
//! x1: (1 2)(3)
//! x2: ()
//! ```

use crate::algebra::{Letter, Permutation, Word};
use crate::braid::{BraidLetter, BraidWord};
use crate::cover::PermutationRep;
use crate::error::{Error, Result};
use crate::tangle::{FourPlaneDiagram, RelatorTangle, Tangle, TrivialTangle};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Plat,
    Relators,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// A meaningful line: 1-based line number, key, value and value column.
struct Entry<'a> {
    line: usize,
    key: &'a str,
    value: &'a str,
    value_col: usize,
}

fn entries(text: &str) -> Result<Vec<Entry<'_>>> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            let col = content.len() - content.trim_start().len() + 1;
            return Err(parse_err(line, col, "expected `key: value`"));
        };
        let key = content[..colon].trim();
        let after = &content[colon + 1..];
        let value = after.trim();
        let value_col = colon + 2 + (after.len() - after.trim_start().len());
        out.push(Entry {
            line,
            key,
            value,
            value_col,
        });
    }
    Ok(out)
}

/// Whitespace-separated tokens with their 1-based columns, offset by `base`.
fn tokens(s: &str, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(b)) => {
                out.push((base + b, &s[b..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(b) = start {
        out.push((base + b, &s[b..]));
    }
    out
}

fn parse_index(digits: &str, line: usize, col: usize, what: &str) -> Result<usize> {
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return Err(parse_err(line, col, format!("malformed {what}")));
    }
    digits
        .parse()
        .map_err(|_| parse_err(line, col, format!("{what} index too large")))
}

fn parse_braid(value: &str, col: usize, line: usize, strands: usize) -> Result<BraidWord> {
    let mut letters = Vec::new();
    for (c, tok) in tokens(value, col) {
        let Some(body) = tok.strip_prefix('s') else {
            return Err(parse_err(
                line,
                c,
                format!("expected braid letter like s1 or s1', found `{tok}`"),
            ));
        };
        let (digits, inverse) = if let Some(d) = body.strip_suffix('\'') {
            (d, true)
        } else if let Some(d) = body.strip_suffix("^-1") {
            (d, true)
        } else {
            (body, false)
        };
        let index = parse_index(digits, line, c, "braid letter")?;
        if index == 0 || index >= strands {
            return Err(parse_err(
                line,
                c,
                format!("generator index out of range: s{index} needs 1 <= index < {strands}"),
            ));
        }
        letters.push(BraidLetter::new(index, inverse));
    }
    BraidWord::new(strands, letters)
}

/// A single braid word such as `s1 s2' s3^-1`, reported as line 1.
pub fn parse_braid_word(text: &str, strands: usize) -> Result<BraidWord> {
    let trimmed = text.trim_start();
    parse_braid(trimmed.trim_end(), 1 + text.len() - trimmed.len(), 1, strands)
}

fn parse_relators(value: &str, col: usize, line: usize, punctures: usize) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for chunk in value.split(';') {
        let chunk_col = col + offset;
        offset += chunk.len() + 1;
        let mut letters = Vec::new();
        for (c, tok) in tokens(chunk, chunk_col) {
            let Some(body) = tok.strip_prefix('x') else {
                return Err(parse_err(
                    line,
                    c,
                    format!("expected letter like x3 or x3^-1, found `{tok}`"),
                ));
            };
            let (digits, inverse) = match body.split_once('^') {
                Some((d, "-1")) => (d, true),
                Some((d, "1")) => (d, false),
                Some(_) => return Err(parse_err(line, c, "exponent must be 1 or -1")),
                None => (body, false),
            };
            let gen = parse_index(digits, line, c, "generator")?;
            if gen >= punctures {
                return Err(parse_err(
                    line,
                    c,
                    format!("generator index out of range: x{gen} with {punctures} punctures"),
                ));
            }
            letters.push(Letter::new(gen, inverse));
        }
        if letters.is_empty() {
            return Err(parse_err(line, chunk_col, "empty relator"));
        }
        out.push(Word::from_letters(letters));
    }
    Ok(out)
}

pub fn parse_diagram(text: &str) -> Result<FourPlaneDiagram> {
    let mut mode = None;
    let mut bridges: Option<usize> = None;
    let mut label = None;
    let mut tangle_lines: [Option<Entry>; 4] = Default::default();
    for e in entries(text)? {
        match e.key {
            "mode" => {
                mode = Some(match e.value {
                    "plat" => Mode::Plat,
                    "relators" => Mode::Relators,
                    other => {
                        return Err(parse_err(e.line, e.value_col, format!("unknown mode `{other}`")));
                    }
                })
            }
            "bridges" => {
                let b = parse_index(e.value, e.line, e.value_col, "bridge number")?;
                if b == 0 {
                    return Err(parse_err(e.line, e.value_col, "bridge number must be positive"));
                }
                bridges = Some(b);
            }
            "label" => label = Some(e.value.to_string()),
            key => {
                let slot = match key {
                    "tangle1" => 0,
                    "tangle2" => 1,
                    "tangle3" => 2,
                    "tangle4" => 3,
                    _ => return Err(parse_err(e.line, 1, format!("unknown key `{key}`"))),
                };
                if tangle_lines[slot].is_some() {
                    return Err(parse_err(e.line, 1, format!("duplicate `{key}`")));
                }
                tangle_lines[slot] = Some(e);
            }
        }
    }
    let mode = mode.ok_or_else(|| parse_err(1, 1, "missing `mode:` line"))?;
    let b = bridges.ok_or_else(|| parse_err(1, 1, "missing `bridges:` line"))?;

    let mut tangles = Vec::with_capacity(4);
    for (i, slot) in tangle_lines.iter().enumerate() {
        let Some(e) = slot else {
            return Err(parse_err(1, 1, format!("missing `tangle{}:` line", i + 1)));
        };
        let t = match mode {
            Mode::Plat => {
                let w = parse_braid(e.value, e.value_col, e.line, 2 * b)?;
                Tangle::Plat(TrivialTangle::new(b, w)?)
            }
            Mode::Relators => {
                let rel = if e.value.is_empty() {
                    Vec::new()
                } else {
                    parse_relators(e.value, e.value_col, e.line, 2 * b)?
                };
                if rel.len() != b {
                    return Err(parse_err(
                        e.line,
                        e.value_col,
                        format!("bridge inconsistency: {} relators for {b} bridges", rel.len()),
                    ));
                }
                let t = RelatorTangle::new(b, rel).map_err(|err| match err {
                    Error::InvalidTangle { message, .. } => parse_err(e.line, e.value_col, message),
                    other => other,
                })?;
                Tangle::Relators(t)
            }
        };
        tangles.push(t);
    }
    let tangles: [Tangle; 4] = tangles.try_into().expect("four tangles");
    let d = FourPlaneDiagram::new(b, tangles)?;
    Ok(match label {
        Some(l) => d.with_label(l),
        None => d,
    })
}

/// Canonical text form; mixed plat/relator diagrams are written in relator mode.
pub fn write_diagram(d: &FourPlaneDiagram) -> String {
    let mut s = String::new();
    if let Some(l) = d.label() {
        s.push_str(&format!("label: {l}\n"));
    }
    let plat = d.is_plat();
    s.push_str(if plat { "mode: plat\n" } else { "mode: relators\n" });
    s.push_str(&format!("bridges: {}\n", d.bridges()));
    for (i, t) in d.tangles().iter().enumerate() {
        let body = match (plat, t) {
            (true, Tangle::Plat(p)) => p.braid().to_string(),
            _ => {
                let names: Vec<String> = (0..d.punctures()).map(|k| format!("x{k}")).collect();
                let parts: Vec<String> = t.relators().iter().map(|r| r.render(&names)).collect();
                parts.join(" ; ")
            }
        };
        if body.is_empty() {
            s.push_str(&format!("tangle{}:\n", i + 1));
        } else {
            s.push_str(&format!("tangle{}: {body}\n", i + 1));
        }
    }
    s
}

fn parse_cycles(value: &str, col: usize, line: usize, n: usize) -> Result<Permutation> {
    let mut cycles = Vec::new();
    let mut rest = value;
    let mut pos = col;
    loop {
        let trimmed = rest.trim_start();
        pos += rest.len() - trimmed.len();
        rest = trimmed;
        if rest.is_empty() {
            break;
        }
        if !rest.starts_with('(') {
            return Err(parse_err(line, pos, "expected `(` starting a cycle"));
        }
        let Some(close) = rest.find(')') else {
            return Err(parse_err(line, pos, "unclosed cycle"));
        };
        let inner = &rest[1..close];
        let mut cycle = Vec::new();
        for (c, tok) in tokens(&inner.replace(',', " "), pos + 1) {
            let p = parse_index(tok, line, c, "sheet")?;
            if p == 0 || p > n {
                return Err(parse_err(line, c, format!("sheet {p} outside 1..{n}")));
            }
            cycle.push(p);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        pos += close + 1;
        rest = &rest[close + 1..];
    }
    Permutation::from_cycles(n, &cycles).map_err(|e| parse_err(line, col, e.to_string()))
}

/// Parses a representation; every puncture `x0..x{2b-1}` must be listed
/// exactly once.
pub fn parse_rho(text: &str, punctures: usize) -> Result<PermutationRep> {
    let mut sheets = None;
    let mut images: Vec<Option<Permutation>> = vec![None; punctures];
    for e in entries(text)? {
        if e.key == "sheets" {
            let n = parse_index(e.value, e.line, e.value_col, "sheet count")?;
            if n == 0 {
                return Err(parse_err(e.line, e.value_col, "sheet count must be positive"));
            }
            sheets = Some(n);
            continue;
        }
        let Some(n) = sheets else {
            return Err(parse_err(e.line, 1, "`sheets:` must come first"));
        };
        let Some(digits) = e.key.strip_prefix('x') else {
            return Err(parse_err(e.line, 1, format!("unknown key `{}`", e.key)));
        };
        let i = parse_index(digits, e.line, 1, "generator")?;
        if i >= punctures {
            return Err(parse_err(
                e.line,
                1,
                format!("generator index out of range: x{i} with {punctures} punctures"),
            ));
        }
        if images[i].is_some() {
            return Err(parse_err(e.line, 1, format!("duplicate image for x{i}")));
        }
        images[i] = Some(parse_cycles(e.value, e.value_col, e.line, n)?);
    }
    let n = sheets.ok_or_else(|| parse_err(1, 1, "missing `sheets:` line"))?;
    let mut out = Vec::with_capacity(punctures);
    for (i, p) in images.into_iter().enumerate() {
        out.push(p.ok_or_else(|| parse_err(1, 1, format!("missing image for x{i}")))?);
    }
    PermutationRep::new(n, out)
}

pub fn write_rho(rho: &PermutationRep) -> String {
    let mut s = format!("sheets: {}\n", rho.sheets());
    for (i, p) in rho.images().iter().enumerate() {
        s.push_str(&format!("x{i}: {p}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_bridge_plat() {
        let d = parse_diagram("mode: plat\nbridges: 1\ntangle1:\ntangle2:\ntangle3:\ntangle4:\n").unwrap();
        assert_eq!(d.bridges(), 1);
        assert!(d.is_plat());
    }

    #[test]
    fn out_of_range_braid_letter() {
        let err = parse_diagram("mode: plat\nbridges: 2\ntangle1: s9\ntangle2:\ntangle3:\ntangle4:\n").unwrap_err();
        match err {
            Error::Parse { line, column, message } => {
                assert_eq!((line, column), (3, 10));
                assert!(message.contains("out of range"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn relator_columns() {
        let text = "mode: relators\nbridges: 1\ntangle1: x0 x1\ntangle2: x0 x1\ntangle3: x0 x1\ntangle4: x0 x7\n";
        match parse_diagram(text).unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (6, 13)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn round_trip() {
        let text = "label: demo\nmode: plat\nbridges: 2\ntangle1: s2 s2 s2\ntangle2: s1' s3\ntangle3:\ntangle4: s2\n";
        let d = parse_diagram(text).unwrap();
        assert_eq!(write_diagram(&d), text);
        assert_eq!(parse_diagram(&write_diagram(&d)).unwrap(), d);
    }

    #[test]
    fn rho_parsing() {
        let rho = parse_rho("sheets: 2\nx0: (1 2)\nx1: (1,2)\n", 2).unwrap();
        assert_eq!(write_rho(&rho), "sheets: 2\nx0: (1 2)\nx1: (1 2)\n");
        assert!(parse_rho("sheets: 2\nx0: (1 2)\n", 2).is_err());
        assert!(parse_rho("sheets: 2\nx0: (1 3)\nx1: (1 2)\n", 2).is_err());
    }
}
