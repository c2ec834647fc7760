//! Reading and writing complexes, modules, bimodules and cancellation scripts.
//!
//! Every document is JSON wrapped in an envelope
//! `{"format_version": "1", "kind": ..., "payload": ...}`. Knot complexes and
//! scripts also have a line format for hand-written files:
//!
//! ```text
//! # right-handed trefoil
//! a: A=1 M=0
//! b: A=0 M=-1
//! c: A=-1 M=-2
//! b -> U a
//! b -> c
//! ```
//!
//! and `FROM -> TO` per line for scripts. Output is always the canonical JSON
//! form: sorted, pretty-printed, LF-terminated.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::Idempotent;
use crate::cfk::{KnotArrow, KnotComplex, KnotGenerator};
use crate::error::{Error, Result};
use crate::type_d::{ColumnTag, DArrow, TypeDModule};
use crate::type_da::{DAAction, TypeDAModule};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Cfk,
    TypeD,
    TypeDa,
    Script,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Cfk => "cfk",
            Kind::TypeD => "type_d",
            Kind::TypeDa => "type_da",
            Kind::Script => "script",
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope<T> {
    format_version: String,
    kind: Kind,
    payload: T,
}

#[derive(Deserialize)]
struct Header {
    kind: Kind,
}

#[derive(Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CfkPayload {
    #[serde(default)]
    generators: Vec<KnotGenerator>,
    #[serde(default)]
    arrows: Vec<KnotArrow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    shift: Option<(i64, i64)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DGenerator {
    name: String,
    idempotent: Idempotent,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tag: Option<ColumnTag>,
}

#[derive(Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DPayload {
    #[serde(default)]
    generators: Vec<DGenerator>,
    #[serde(default)]
    arrows: Vec<DArrow>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DAGenerator {
    name: String,
    left: Idempotent,
    right: Idempotent,
}

#[derive(Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DAPayload {
    #[serde(default)]
    generators: Vec<DAGenerator>,
    #[serde(default)]
    actions: Vec<DAAction>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Step {
    from: String,
    to: String,
}

fn json_error(e: serde_json::Error) -> Error {
    let message = e.to_string();
    // serde_json appends " at line L column C"; the position is reported separately.
    let message = match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message,
    };
    Error::parse(e.line(), e.column(), message)
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

fn read_envelope<T: DeserializeOwned>(text: &str, kind: Kind) -> Result<T> {
    let env: Envelope<T> = serde_json::from_str(text).map_err(json_error)?;
    if env.format_version != FORMAT_VERSION {
        return Err(Error::parse(
            1,
            1,
            format!("unsupported format_version `{}`", env.format_version),
        ));
    }
    if env.kind != kind {
        return Err(Error::parse(
            1,
            1,
            format!("expected a {} document, found {}", kind.as_str(), env.kind.as_str()),
        ));
    }
    Ok(env.payload)
}

fn write_envelope<T: Serialize>(kind: Kind, payload: T) -> String {
    let env = Envelope {
        format_version: FORMAT_VERSION.to_string(),
        kind,
        payload,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("documents serialize");
    s.push('\n');
    s
}

/// The kind of a JSON document, or `None` for line-format text.
pub fn detect_kind(text: &str) -> Result<Option<Kind>> {
    if !is_json(text) {
        return Ok(None);
    }
    let h: Header = serde_json::from_str(text).map_err(json_error)?;
    Ok(Some(h.kind))
}

fn strict_complex(c: KnotComplex, strict: bool) -> Result<KnotComplex> {
    if strict {
        if let Some(v) = c.validate().first() {
            return Err(Error::InvalidComplex(v.to_string()));
        }
    }
    Ok(c)
}

/// Parses a knot complex from JSON or the line format. With `strict`, the
/// complex must also pass validation.
pub fn parse_cfk(text: &str, strict: bool) -> Result<KnotComplex> {
    if !is_json(text) {
        return strict_complex(parse_cfk_lines(text)?, strict);
    }
    let p: CfkPayload = read_envelope(text, Kind::Cfk)?;
    let mut c = KnotComplex::new();
    for g in p.generators {
        c.add_generator(g.name, g.alexander, g.maslov)?;
    }
    for a in p.arrows {
        if c.arrows().any(|b| *b == a) {
            return Err(Error::InvalidComplex(format!("duplicate arrow {} -> {}", a.from, a.to)));
        }
        c.toggle_arrow(a.from, a.to, a.u_power);
    }
    c.set_shift(p.shift);
    strict_complex(c, strict)
}

pub fn write_cfk(c: &KnotComplex) -> String {
    write_envelope(
        Kind::Cfk,
        CfkPayload {
            generators: c.generators().cloned().collect(),
            arrows: c.arrows().cloned().collect(),
            shift: c.shift(),
        },
    )
}

/// Content lines with their 1-based numbers, comments and blanks removed.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        (!line.trim().is_empty()).then_some((i + 1, line))
    })
}

fn column_of(line: &str, part: &str) -> usize {
    line[..part.as_ptr() as usize - line.as_ptr() as usize].chars().count() + 1
}

fn parse_cfk_lines(text: &str) -> Result<KnotComplex> {
    let mut c = KnotComplex::new();
    let mut arrows = Vec::new();
    for (n, line) in content_lines(text) {
        let err = |part: &str, msg: String| Error::parse(n, column_of(line, part), msg);
        if let Some((from, rest)) = line.split_once("->") {
            let from = from.trim();
            let mut words: Vec<&str> = rest.split_whitespace().collect();
            let to = words.pop().ok_or_else(|| err(rest, "missing arrow target".into()))?;
            let u_power = match words.as_slice() {
                [] => 0,
                ["U"] => 1,
                [u] if u.starts_with("U^") => u[2..]
                    .parse::<u32>()
                    .map_err(|_| err(u, format!("bad U power `{u}`")))?,
                [w, ..] => return Err(err(w, format!("unexpected `{w}`"))),
            };
            if from.is_empty() || from.contains(char::is_whitespace) {
                return Err(err(line, format!("bad arrow source `{from}`")));
            }
            arrows.push((n, line, from.to_string(), to.to_string(), u_power));
        } else if let Some((name, rest)) = line.split_once(':') {
            let name = name.trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(err(line, format!("bad generator name `{name}`")));
            }
            let (mut a, mut m) = (None, None);
            for w in rest.split_whitespace() {
                let (key, value) = w.split_once('=').ok_or_else(|| err(w, format!("expected KEY=VALUE, found `{w}`")))?;
                let v = value.parse::<i64>().map_err(|_| err(value, format!("bad integer `{value}`")))?;
                match key {
                    "A" if a.is_none() => a = Some(v),
                    "M" if m.is_none() => m = Some(v),
                    _ => return Err(err(w, format!("unexpected `{key}`"))),
                }
            }
            let (Some(a), Some(m)) = (a, m) else {
                return Err(err(rest, format!("generator `{name}` needs both A= and M=")));
            };
            c.add_generator(name, a, m).map_err(|e| err(line, e.to_string()))?;
        } else {
            return Err(err(line, "expected `name: A=.. M=..` or `from -> [U^k] to`".into()));
        }
    }
    for (n, line, from, to, r) in arrows {
        let a = KnotArrow::new(from.as_str(), to.as_str(), r);
        if c.arrows().any(|b| *b == a) {
            return Err(Error::parse(n, 1, format!("duplicate arrow in `{}`", line.trim())));
        }
        c.toggle_arrow(from, to, r);
    }
    Ok(c)
}

fn strict_module(m: TypeDModule, strict: bool) -> Result<TypeDModule> {
    if strict {
        if let Some(v) = m.validate().first() {
            return Err(Error::InvalidModule(v.to_string()));
        }
    }
    Ok(m)
}

pub fn parse_type_d(text: &str, strict: bool) -> Result<TypeDModule> {
    let p: DPayload = read_envelope(text, Kind::TypeD)?;
    let mut m = TypeDModule::new();
    for g in p.generators {
        m.add_generator(g.name.as_str(), g.idempotent)?;
        if let Some(tag) = g.tag {
            m.set_tag(g.name, tag);
        }
    }
    for a in p.arrows {
        if m.has_arrow(&a.from, &a.to, a.label) {
            return Err(Error::InvalidModule(format!("duplicate arrow {} -> {} ({})", a.from, a.to, a.label)));
        }
        m.toggle_arrow(a.from, a.to, a.label);
    }
    strict_module(m, strict)
}

pub fn write_type_d(m: &TypeDModule) -> String {
    write_envelope(
        Kind::TypeD,
        DPayload {
            generators: m
                .generators()
                .iter()
                .map(|(name, idem)| DGenerator {
                    name: name.clone(),
                    idempotent: *idem,
                    tag: m.tag(name).cloned(),
                })
                .collect(),
            arrows: m.arrows().cloned().collect(),
        },
    )
}

pub fn parse_type_da(text: &str, strict: bool) -> Result<TypeDAModule> {
    let p: DAPayload = read_envelope(text, Kind::TypeDa)?;
    let mut m = TypeDAModule::new();
    for g in p.generators {
        m.add_generator(g.name, g.left, g.right)?;
    }
    for a in p.actions {
        if m.contains(&a) {
            return Err(Error::InvalidBimodule(format!("duplicate action {a}")));
        }
        m.toggle_action(a);
    }
    if strict {
        if let Some(v) = m.validate(m.default_check_bound()).first() {
            return Err(Error::InvalidBimodule(v.to_string()));
        }
    }
    Ok(m)
}

pub fn write_type_da(m: &TypeDAModule) -> String {
    write_envelope(
        Kind::TypeDa,
        DAPayload {
            generators: m
                .generators()
                .iter()
                .map(|(name, i)| DAGenerator {
                    name: name.clone(),
                    left: i.left,
                    right: i.right,
                })
                .collect(),
            actions: m.actions().cloned().collect(),
        },
    )
}

/// Parses a cancellation script: JSON, or one `FROM -> TO` per line.
pub fn parse_script(text: &str) -> Result<Vec<(String, String)>> {
    if is_json(text) {
        let steps: Vec<Step> = read_envelope(text, Kind::Script)?;
        return Ok(steps.into_iter().map(|s| (s.from, s.to)).collect());
    }
    content_lines(text)
        .map(|(n, line)| {
            let parts = line.split_once("->").map(|(a, b)| (a.trim(), b.trim()));
            match parts {
                Some((a, b)) if !a.is_empty() && !b.is_empty() && !a.contains(char::is_whitespace) && !b.contains(char::is_whitespace) => {
                    Ok((a.to_string(), b.to_string()))
                }
                _ => Err(Error::parse(n, column_of(line, line.trim_start()), "expected `FROM -> TO`")),
            }
        })
        .collect()
}

pub fn write_script(steps: &[(String, String)]) -> String {
    write_envelope(
        Kind::Script,
        steps
            .iter()
            .map(|(from, to)| Step {
                from: from.clone(),
                to: to.clone(),
            })
            .collect::<Vec<_>>(),
    )
}

/// Line-format text of a script.
pub fn script_lines(steps: &[(String, String)]) -> String {
    steps.iter().map(|(a, b)| format!("{a} -> {b}\n")).collect()
}
