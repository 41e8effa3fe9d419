//! Line-oriented catalog text format. Grammar in `docs/catalog.md`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permcore::{CycleType, Permutation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassLabel {
    pub label: String,
    pub element_order: u64,
    pub cycle_type: CycleType,
    pub centralizer_order: u64,
    pub power: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutData {
    pub out_order: u64,
    /// Degree of the overgroup; equals the entry's degree unless `embedding` is set.
    pub degree: usize,
    pub overgroup_generators: Vec<String>,
    /// Images of the entry's generators in the overgroup's degree.
    pub embedding: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<String>,
    pub order_hint: Option<String>,
    pub class_labels: Vec<ClassLabel>,
    pub out_data: Option<OutData>,
    pub notes: Vec<String>,
}

/// Parses `(1 2 3)(4 5)`; `()` is the identity.
pub fn parse_cycles(degree: usize, s: &str) -> std::result::Result<Permutation, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty permutation".into());
    }
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let r = rest.trim_start();
        if r.is_empty() {
            break;
        }
        if !r.starts_with('(') {
            return Err(format!("expected '(' at '{}'", r));
        }
        let close = r.find(')').ok_or_else(|| "unclosed cycle".to_string())?;
        let inner = &r[1..close];
        if inner.contains('(') {
            return Err("unclosed cycle".into());
        }
        let mut cyc = Vec::new();
        for tok in inner.split_whitespace() {
            let x: usize = tok.parse().map_err(|_| format!("bad point '{}'", tok))?;
            if x == 0 || x > degree {
                return Err(format!("point {} outside 1..={}", x, degree));
            }
            cyc.push(x);
        }
        if cyc.len() == 1 {
            return Err("cycle of length 1".into());
        }
        if !cyc.is_empty() {
            cycles.push(cyc);
        }
        rest = &r[close + 1..];
    }
    let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
    Permutation::from_cycles(degree, &refs).map_err(|e| e.to_string())
}

#[derive(PartialEq)]
enum Section {
    None,
    Group,
    Classes,
    Out,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn key_value(line: usize, s: &str) -> Result<(String, String)> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| perr(line, "expected 'key = value'"))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

fn parse_class(line: usize, label: &str, v: &str) -> Result<ClassLabel> {
    let mut order = None;
    let mut cycles = None;
    let mut cent = None;
    let mut power = None;
    for part in v.split(';') {
        let part = part.trim();
        let (k, rest) = part
            .split_once(' ')
            .ok_or_else(|| perr(line, format!("bad class field '{}'", part)))?;
        let rest = rest.trim();
        match k {
            "order" => order = Some(rest.parse::<u64>().map_err(|_| perr(line, "bad order"))?),
            "cycles" => {
                cycles = Some(CycleType::parse(rest).ok_or_else(|| perr(line, "bad cycle type"))?)
            }
            "centralizer" => {
                cent = Some(rest.parse::<u64>().map_err(|_| perr(line, "bad centralizer order"))?)
            }
            "power" => power = Some(rest.to_string()),
            _ => return Err(perr(line, format!("unknown class field '{}'", k))),
        }
    }
    Ok(ClassLabel {
        label: label.to_string(),
        element_order: order.ok_or_else(|| perr(line, "missing order"))?,
        cycle_type: cycles.ok_or_else(|| perr(line, "missing cycles"))?,
        centralizer_order: cent.ok_or_else(|| perr(line, "missing centralizer"))?,
        power,
    })
}

/// Syntax-level parse; group-theoretic checks happen in `load`.
pub fn parse_str(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut out: Vec<CatalogEntry> = Vec::new();
    let mut section = Section::None;
    let mut out_degree: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        match s {
            "[group]" => {
                out.push(CatalogEntry {
                    name: String::new(),
                    degree: 0,
                    generators: Vec::new(),
                    order_hint: None,
                    class_labels: Vec::new(),
                    out_data: None,
                    notes: Vec::new(),
                });
                section = Section::Group;
                continue;
            }
            "[classes]" | "[out]" => {
                if out.is_empty() {
                    return Err(perr(line, "section before [group]"));
                }
                if s == "[out]" {
                    let e = out.last_mut().unwrap();
                    if e.out_data.is_some() {
                        return Err(perr(line, "duplicate [out]"));
                    }
                    e.out_data = Some(OutData {
                        out_order: 0,
                        degree: e.degree,
                        overgroup_generators: Vec::new(),
                        embedding: Vec::new(),
                    });
                    out_degree = None;
                    section = Section::Out;
                } else {
                    section = Section::Classes;
                }
                continue;
            }
            _ if s.starts_with('[') => return Err(perr(line, format!("unknown section {}", s))),
            _ => {}
        }
        let (k, v) = key_value(line, s)?;
        let e = match out.last_mut() {
            Some(e) => e,
            None => return Err(perr(line, "entry before [group]")),
        };
        match section {
            Section::None => return Err(perr(line, "entry before [group]")),
            Section::Group => match k.as_str() {
                "name" => e.name = v,
                "degree" => {
                    e.degree = v.parse().map_err(|_| perr(line, "bad degree"))?;
                    if e.degree == 0 {
                        return Err(perr(line, "degree must be positive"));
                    }
                }
                "order" => {
                    if v.is_empty() || !v.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(perr(line, "bad order"));
                    }
                    e.order_hint = Some(v)
                }
                "gen" => {
                    if e.degree == 0 {
                        return Err(perr(line, "gen before degree"));
                    }
                    parse_cycles(e.degree, &v).map_err(|m| perr(line, m))?;
                    e.generators.push(v);
                }
                "note" => e.notes.push(v),
                _ => return Err(perr(line, format!("unknown key '{}'", k))),
            },
            Section::Classes => {
                let c = parse_class(line, &k, &v)?;
                e.class_labels.push(c);
            }
            Section::Out => {
                let degree = e.degree;
                let od = e.out_data.as_mut().unwrap();
                match k.as_str() {
                    "order" => od.out_order = v.parse().map_err(|_| perr(line, "bad out order"))?,
                    "degree" => {
                        let d: usize = v.parse().map_err(|_| perr(line, "bad degree"))?;
                        if d < degree {
                            return Err(perr(line, "overgroup degree below group degree"));
                        }
                        od.degree = d;
                        out_degree = Some(d);
                    }
                    "gen" => {
                        parse_cycles(out_degree.unwrap_or(degree), &v).map_err(|m| perr(line, m))?;
                        od.overgroup_generators.push(v);
                    }
                    "embed" => {
                        parse_cycles(out_degree.unwrap_or(degree), &v).map_err(|m| perr(line, m))?;
                        od.embedding.push(v);
                    }
                    _ => return Err(perr(line, format!("unknown key '{}'", k))),
                }
            }
        }
    }
    for e in &out {
        if e.name.is_empty() {
            return Err(perr(0, "entry without name"));
        }
        if e.degree == 0 {
            return Err(perr(0, format!("{}: missing degree", e.name)));
        }
        if let Some(od) = &e.out_data {
            if od.out_order == 0 {
                return Err(perr(0, format!("{}: [out] needs order", e.name)));
            }
            if od.degree != e.degree && od.embedding.len() != e.generators.len() {
                return Err(perr(
                    0,
                    format!("{}: overgroup of other degree needs one embed per gen", e.name),
                ));
            }
        }
    }
    Ok(out)
}

/// Canonical text; `parse_str(render(x)) == x`.
pub fn render(entries: &[CatalogEntry]) -> String {
    let mut s = String::new();
    for (i, e) in entries.iter().enumerate() {
        if i > 0 {
            s.push('\n');
        }
        s.push_str("[group]\n");
        let _ = writeln!(s, "name = {}", e.name);
        let _ = writeln!(s, "degree = {}", e.degree);
        if let Some(o) = &e.order_hint {
            let _ = writeln!(s, "order = {}", o);
        }
        for g in &e.generators {
            let _ = writeln!(s, "gen = {}", g);
        }
        for n in &e.notes {
            let _ = writeln!(s, "note = {}", n);
        }
        if !e.class_labels.is_empty() {
            s.push_str("\n[classes]\n");
            for c in &e.class_labels {
                let _ = write!(
                    s,
                    "{} = order {}; cycles {}; centralizer {}",
                    c.label, c.element_order, c.cycle_type, c.centralizer_order
                );
                if let Some(p) = &c.power {
                    let _ = write!(s, "; power {}", p);
                }
                s.push('\n');
            }
        }
        if let Some(od) = &e.out_data {
            s.push_str("\n[out]\n");
            let _ = writeln!(s, "order = {}", od.out_order);
            if od.degree != e.degree {
                let _ = writeln!(s, "degree = {}", od.degree);
            }
            for g in &od.overgroup_generators {
                let _ = writeln!(s, "gen = {}", g);
            }
            for g in &od.embedding {
                let _ = writeln!(s, "embed = {}", g);
            }
        }
    }
    s
}
