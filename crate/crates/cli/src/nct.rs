//! Line-oriented certificate files (`.nct`). See `docs/nct.md` for the schema.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use cotame_core::cert::{Certificate, Claim, Item, NodeRef, Seed, Step};
use cotame_core::Field;

use crate::error::{CliError, ParseError, Result};
use crate::text::{fmt_field, fmt_tuple, fmt_word, parse_field, parse_tuple, parse_word};

pub const MAGIC: &str = "NCT 1";

pub fn serialize(cert: &Certificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{MAGIC}");
    let _ = writeln!(out, "FIELD {}", fmt_field(&cert.field));
    let _ = writeln!(out, "N {}", cert.n);
    let _ = writeln!(out, "CLAIM {}", cert.claim.as_str());
    for (k, v) in &cert.meta {
        let _ = writeln!(out, "META {k} {v}");
    }
    for s in &cert.seeds {
        let _ = writeln!(out, "SEED {} {}", s.label, fmt_word(&s.map));
    }
    for s in &cert.steps {
        let _ = writeln!(out, "STEP {}", s.label);
        for it in &s.items {
            let sign = if it.exponent < 0 { '-' } else { '+' };
            let _ = write!(out, "ITEM {sign}{} {}", it.exponent.unsigned_abs(), cert.label(it.base));
            if let Some(g) = &it.conjugator {
                let _ = write!(out, " BY {}", fmt_word(g));
            }
            out.push('\n');
        }
        if let Some(f) = &s.form {
            let _ = writeln!(out, "FORM {}", fmt_word(f));
        }
        let _ = writeln!(out, "VALUE {}", fmt_tuple(&s.claimed));
        for note in &s.notes {
            let _ = writeln!(out, "NOTE {note}");
        }
        let _ = writeln!(out, "END");
    }
    let _ = writeln!(out, "TERMINAL {}", cert.label(cert.terminal));
    out
}

struct Line<'a> {
    no: usize,
    key: &'a str,
    rest: &'a str,
    /// Byte offset of `rest` within the line.
    offset: usize,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse(ParseError { line, col, msg: msg.into() })
}

/// Shifts errors from a parser run on `rest` to the right place in the file.
fn relocate(e: CliError, l: &Line) -> CliError {
    match e {
        CliError::Parse(p) => CliError::Parse(p.on_line(l.no, l.offset)),
        CliError::Arity { expected, found } => {
            err(l.no, l.offset + 1, format!("expected {expected} components, found {found}"))
        }
        other => err(l.no, l.offset + 1, other.to_string()),
    }
}

fn lines(src: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let trimmed = raw.trim_end();
        if trimmed.trim_start().is_empty() || trimmed.trim_start().starts_with('#') {
            continue;
        }
        let lead = trimmed.len() - trimmed.trim_start().len();
        let body = &trimmed[lead..];
        let (key, rest, offset) = match body.find(' ') {
            Some(k) => (&body[..k], &body[k + 1..], lead + k + 1),
            None => (body, "", lead + body.len()),
        };
        out.push(Line { no: i + 1, key, rest, offset });
    }
    out
}

struct Reader<'a> {
    lines: Vec<Line<'a>>,
    next: usize,
    eof_line: usize,
}

impl<'a> Reader<'a> {
    fn peek(&self) -> Option<&Line<'a>> {
        self.lines.get(self.next)
    }

    fn take(&mut self, what: &str) -> Result<&Line<'a>> {
        match self.lines.get(self.next) {
            Some(l) => {
                self.next += 1;
                Ok(l)
            }
            None => Err(err(self.eof_line, 1, format!("unexpected end of file, expected {what}"))),
        }
    }

    fn keyed(&mut self, key: &str) -> Result<&Line<'a>> {
        let l = self.take(key)?;
        if l.key != key {
            return Err(err(l.no, 1, format!("expected `{key}`, found `{}`", l.key)));
        }
        Ok(l)
    }
}

fn label_token(l: &Line) -> Result<String> {
    let t = l.rest;
    if t.is_empty() || t.contains(char::is_whitespace) {
        return Err(err(l.no, l.offset + 1, "expected a single label"));
    }
    Ok(t.to_string())
}

pub fn parse(src: &str) -> Result<Certificate> {
    let all = lines(src);
    let mut r = Reader { eof_line: src.lines().count() + 1, lines: all, next: 0 };
    let first = r.take("header")?;
    if format!("{} {}", first.key, first.rest) != MAGIC {
        return Err(err(first.no, 1, format!("expected `{MAGIC}`")));
    }
    let l = r.keyed("FIELD")?;
    let field: Field = parse_field(l.rest).map_err(|e| relocate(e, l))?;
    let l = r.keyed("N")?;
    let n: usize = l
        .rest
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| err(l.no, l.offset + 1, "expected a positive dimension"))?;
    let l = r.keyed("CLAIM")?;
    let claim = match l.rest {
        "COTAME" => Claim::Cotame,
        "SLIN" => Claim::Slin,
        _ => return Err(err(l.no, l.offset + 1, "expected `COTAME` or `SLIN`")),
    };

    let mut meta = Vec::new();
    let mut seeds: Vec<Seed> = Vec::new();
    let mut steps: Vec<Step> = Vec::new();
    let mut labels: BTreeMap<String, NodeRef> = BTreeMap::new();
    let terminal;
    loop {
        let l = r.take("TERMINAL")?;
        match l.key {
            "META" => {
                let (k, v) = l.rest.split_once(' ').unwrap_or((l.rest, ""));
                if k.is_empty() {
                    return Err(err(l.no, l.offset + 1, "expected a key"));
                }
                meta.push((k.to_string(), v.to_string()));
            }
            "SEED" => {
                let (label, word) = l
                    .rest
                    .split_once(' ')
                    .ok_or_else(|| err(l.no, l.offset + 1, "expected `SEED <label> <word>`"))?;
                let at = Line { no: l.no, key: "", rest: word, offset: l.offset + label.len() + 1 };
                let map = parse_word(word, &field, n).map_err(|e| relocate(e, &at))?;
                if labels.insert(label.to_string(), NodeRef::Seed(seeds.len())).is_some() {
                    return Err(err(l.no, l.offset + 1, format!("duplicate label `{label}`")));
                }
                seeds.push(Seed { label: label.to_string(), map });
            }
            "STEP" => {
                let label = label_token(l)?;
                let step_line = l.no;
                let mut items = Vec::new();
                let mut form = None;
                let mut value = None;
                let mut notes = Vec::new();
                loop {
                    let l = r.take("END")?;
                    match l.key {
                        "ITEM" => {
                            if value.is_some() || form.is_some() {
                                return Err(err(l.no, 1, "ITEM must precede FORM and VALUE"));
                            }
                            let (word_part, conj) = match l.rest.find(" BY ") {
                                Some(k) => (&l.rest[..k], Some((&l.rest[k + 4..], l.offset + k + 4))),
                                None => (l.rest, None),
                            };
                            let mut parts = word_part.split(' ');
                            let e = parts.next().unwrap_or("");
                            let exponent: i8 = match e {
                                "+1" => 1,
                                "-1" => -1,
                                _ => return Err(err(l.no, l.offset + 1, "expected exponent `+1` or `-1`")),
                            };
                            let base_label = parts.next().unwrap_or("");
                            let col = l.offset + e.len() + 2;
                            if parts.next().is_some() {
                                return Err(err(l.no, col, "expected `ITEM <exp> <label> [BY <word>]`"));
                            }
                            let base = *labels
                                .get(base_label)
                                .ok_or_else(|| err(l.no, col, format!("unknown label `{base_label}`")))?;
                            let conjugator = match conj {
                                None => None,
                                Some((w, off)) => {
                                    let at = Line { no: l.no, key: "", rest: w, offset: off };
                                    Some(parse_word(w, &field, n).map_err(|e| relocate(e, &at))?)
                                }
                            };
                            items.push(Item { conjugator, base, exponent });
                        }
                        "FORM" => {
                            if form.is_some() || value.is_some() {
                                return Err(err(l.no, 1, "FORM must appear once, before VALUE"));
                            }
                            form = Some(parse_word(l.rest, &field, n).map_err(|e| relocate(e, l))?);
                        }
                        "VALUE" => {
                            if value.is_some() {
                                return Err(err(l.no, 1, "duplicate VALUE"));
                            }
                            value = Some(parse_tuple(l.rest, &field, n).map_err(|e| relocate(e, l))?);
                        }
                        "NOTE" => notes.push(l.rest.to_string()),
                        "END" => break,
                        other => return Err(err(l.no, 1, format!("unexpected `{other}` inside STEP"))),
                    }
                }
                if items.is_empty() {
                    return Err(err(step_line, 1, "step has no ITEM lines"));
                }
                let claimed = value.ok_or_else(|| err(step_line, 1, "step has no VALUE line"))?;
                if labels.insert(label.clone(), NodeRef::Step(steps.len())).is_some() {
                    return Err(err(step_line, 6, format!("duplicate label `{label}`")));
                }
                steps.push(Step { label, items, claimed, form, notes });
            }
            "TERMINAL" => {
                let label = label_token(l)?;
                terminal = *labels.get(&label).ok_or_else(|| err(l.no, l.offset + 1, format!("unknown label `{label}`")))?;
                break;
            }
            other => return Err(err(l.no, 1, format!("unexpected `{other}`"))),
        }
    }
    if let Some(l) = r.peek() {
        return Err(err(l.no, 1, "content after TERMINAL"));
    }
    Ok(Certificate { field, n, claim, seeds, steps, terminal, meta })
}

#[cfg(all(test, feature = "engine"))]
mod tests {
    use super::*;
    use cotame_core::{BasicFactor, FactoredAuto, Poly};
    use cotame_engine::cotame::certify_normally_cotame;

    fn sample() -> Certificate {
        let f = Field::rationals();
        let x1 = Poly::var(&f, 2, 0);
        let w = FactoredAuto::from_factor(&f, BasicFactor::Elementary { i: 1, f: x1.pow(2) });
        certify_normally_cotame(&w).unwrap()
    }

    #[test]
    fn round_trip_is_byte_stable() {
        let c = sample();
        let s = serialize(&c);
        let back = parse(&s).unwrap();
        assert_eq!(back, c);
        assert_eq!(serialize(&back), s);
    }

    #[test]
    fn truncation_is_reported_with_a_line() {
        let s = serialize(&sample());
        let cut = &s[..s.len() / 2];
        match parse(cut) {
            Err(CliError::Parse(p)) => assert!(p.line >= 1),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }
}
