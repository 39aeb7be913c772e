//! Plain-text system format:
//!
//! ```text
//! vars 2
//! v 0 -
//! v 1 1:1
//! eq NORM : 1*0 = | 1
//! eq CONT1 : 1*0 = 1*1 | 0
//! ```
//!
//! Boolean systems prefix every tag with `b` and use unit coefficients.

use super::{BoolEquation, BooleanSystem, Equation, LinearSystem, PartialMap, SystemError, SystemKind, Tag, VarIndex};
use std::fmt::{self, Write};

fn terms(out: &mut String, t: &[(usize, i64)]) {
    for (v, c) in t {
        let _ = write!(out, " {c}*{v}");
    }
}

fn header(f: &mut fmt::Formatter<'_>, vars: &VarIndex) -> fmt::Result {
    writeln!(f, "vars {}", vars.len())?;
    for (i, p) in vars.keys().iter().enumerate() {
        writeln!(f, "v {i} {p}")?;
    }
    Ok(())
}

impl fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        header(f, &self.vars)?;
        for eq in &self.equations {
            let mut line = format!("eq {} :", eq.tag);
            terms(&mut line, &eq.lhs);
            line.push_str(" =");
            terms(&mut line, &eq.rhs);
            writeln!(f, "{line} | {}", eq.constant)?;
        }
        Ok(())
    }
}

impl fmt::Display for BooleanSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        header(f, &self.vars)?;
        for eq in &self.equations {
            let unit: Vec<(usize, i64)> = eq.lhs.iter().map(|&v| (v, 1)).collect();
            let mut line = format!("eq b{} :", eq.tag);
            terms(&mut line, &unit);
            line.push_str(" =");
            let unit: Vec<(usize, i64)> = eq.rhs.iter().map(|&v| (v, 1)).collect();
            terms(&mut line, &unit);
            writeln!(f, "{line} | {}", u8::from(eq.constant))?;
        }
        Ok(())
    }
}

type Terms = Vec<(usize, i64)>;

struct Raw {
    vars: VarIndex,
    /// Line number, tag, both sides and right-hand side.
    eqs: Vec<(usize, String, Terms, Terms, i64)>,
}

fn err(line: usize, msg: impl Into<String>) -> SystemError {
    SystemError::Parse { line, msg: msg.into() }
}

fn parse_raw(text: &str) -> Result<Raw, SystemError> {
    let mut count: Option<usize> = None;
    let mut keys: Vec<Option<PartialMap>> = Vec::new();
    let mut eqs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("vars") => {
                let c: usize = tok.next().and_then(|t| t.parse().ok()).ok_or_else(|| err(ln, "expected `vars <count>`"))?;
                if count.is_some() {
                    return Err(err(ln, "duplicate header"));
                }
                count = Some(c);
                keys = vec![None; c];
            }
            Some("v") => {
                let c = count.ok_or_else(|| err(ln, "variable before header"))?;
                let id: usize = tok.next().and_then(|t| t.parse().ok()).ok_or_else(|| err(ln, "bad variable id"))?;
                let key = tok.next().and_then(PartialMap::parse_key).ok_or_else(|| err(ln, "bad variable key"))?;
                if id >= c || keys[id].is_some() {
                    return Err(err(ln, format!("variable id {id} out of range or repeated")));
                }
                keys[id] = Some(key);
            }
            Some("eq") => {
                let c = count.ok_or_else(|| err(ln, "equation before header"))?;
                let tag = tok.next().ok_or_else(|| err(ln, "missing tag"))?.to_string();
                if tok.next() != Some(":") {
                    return Err(err(ln, "expected `:` after tag"));
                }
                let rest: Vec<&str> = tok.collect();
                let eqpos = rest.iter().position(|&t| t == "=").ok_or_else(|| err(ln, "missing `=`"))?;
                let barpos = rest.iter().position(|&t| t == "|").ok_or_else(|| err(ln, "missing `|`"))?;
                if barpos < eqpos || barpos + 2 != rest.len() {
                    return Err(err(ln, "expected `... = ... | <rhs>`"));
                }
                let term = |t: &str| -> Result<(usize, i64), SystemError> {
                    let (co, v) = t.split_once('*').ok_or_else(|| err(ln, format!("bad term `{t}`")))?;
                    let co: i64 = co.parse().map_err(|_| err(ln, format!("bad coefficient `{co}`")))?;
                    let v: usize = v.parse().map_err(|_| err(ln, format!("bad variable `{v}`")))?;
                    if v >= c {
                        return Err(err(ln, format!("unknown variable {v}")));
                    }
                    Ok((v, co))
                };
                let lhs = rest[..eqpos].iter().map(|t| term(t)).collect::<Result<Vec<_>, _>>()?;
                let rhs = rest[eqpos + 1..barpos].iter().map(|t| term(t)).collect::<Result<Vec<_>, _>>()?;
                let constant: i64 = rest[barpos + 1].parse().map_err(|_| err(ln, "bad right-hand side"))?;
                eqs.push((ln, tag, lhs, rhs, constant));
            }
            Some(t) => return Err(err(ln, format!("unexpected `{t}`"))),
            None => {}
        }
    }
    let count = count.ok_or_else(|| err(0, "missing `vars` header"))?;
    let keys: Vec<PartialMap> = keys
        .into_iter()
        .enumerate()
        .map(|(i, k)| k.ok_or_else(|| err(0, format!("variable {i} undeclared"))))
        .collect::<Result<_, _>>()?;
    let vars = VarIndex::new(keys.clone());
    if vars.len() != count {
        return Err(err(0, "repeated variable key"));
    }
    // renumber to key order
    let remap: Vec<usize> = keys.iter().map(|p| vars.id(p).expect("indexed")).collect();
    let eqs = eqs
        .into_iter()
        .map(|(ln, tag, l, r, c)| {
            let re = |t: Vec<(usize, i64)>| t.into_iter().map(|(v, co)| (remap[v], co)).collect();
            (ln, tag, re(l), re(r), c)
        })
        .collect();
    Ok(Raw { vars, eqs })
}

pub fn parse_linear_system(text: &str) -> Result<LinearSystem, SystemError> {
    let raw = parse_raw(text)?;
    let mut equations = Vec::new();
    for (ln, tag, lhs, rhs, constant) in raw.eqs {
        let tag: Tag = tag.parse().map_err(|e: String| err(ln, e))?;
        let diff = Equation { tag, lhs, rhs, constant }.difference();
        equations.extend(Equation::from_difference(tag, diff, constant));
    }
    Ok(LinearSystem { kind: SystemKind::Parsed, vars: raw.vars, equations, graphs: None })
}

pub fn parse_boolean_system(text: &str) -> Result<BooleanSystem, SystemError> {
    let raw = parse_raw(text)?;
    let mut equations = Vec::new();
    for (ln, tag, lhs, rhs, constant) in raw.eqs {
        let tag = tag.strip_prefix('b').ok_or_else(|| err(ln, format!("boolean tag `{tag}` lacks the `b` prefix")))?;
        let tag: Tag = tag.parse().map_err(|e: String| err(ln, e))?;
        if lhs.iter().chain(&rhs).any(|&(_, c)| c != 1) {
            return Err(err(ln, "boolean coefficients must be 1"));
        }
        let constant = match constant {
            0 => false,
            1 => true,
            _ => return Err(err(ln, "boolean right-hand side must be 0 or 1")),
        };
        let unit = |t: Vec<(usize, i64)>| t.into_iter().map(|(v, _)| v).collect();
        if let Some(e) = BoolEquation::new(tag, unit(lhs), unit(rhs), constant) {
            if e.shape().is_none() {
                return Err(err(ln, "equation is not of the form ⋁ = ⋁, ⋁ = 0 or ⋁ = 1"));
            }
            equations.push(e);
        }
    }
    Ok(BooleanSystem { kind: SystemKind::Parsed, vars: raw.vars, equations, graphs: None })
}
