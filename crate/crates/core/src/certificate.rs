//! Line-oriented certificate files.
//!
//! ```text
//! # comment
//! group: G150_ABELIAN_QUOT
//! gen a = (1,0,1,0)
//! gen b = (0,1,0,0)
//! figure: xv1,y
//! provenance: figure
//! expect 3 = (1,1,1,0) xy(1,0)
//! tokens:
//! a b a- ...
//! ```
//!
//! `expect` lines pin the vertex reached after a given number of steps and
//! may carry the vertex label printed in the source figure.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::cayley::{valid_name, CayleyError, GeneratorSet};
use crate::group::{parse_element, parse_group_spec, Element, Group, GroupError};
use crate::hamilton::{verify_hamiltonian_cycle, walk_vertices, Token, VerificationReport, Walk};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> CertificateError {
    CertificateError::Parse { line, col, msg: msg.into() }
}

/// How a certificate was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Figure,
    FglConstruction,
    ParametricWalk,
    SearchFallback,
}

impl Provenance {
    pub const ALL: [Provenance; 4] =
        [Provenance::Figure, Provenance::FglConstruction, Provenance::ParametricWalk, Provenance::SearchFallback];

    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Figure => "figure",
            Provenance::FglConstruction => "fgl-construction",
            Provenance::ParametricWalk => "parametric-walk",
            Provenance::SearchFallback => "search-fallback",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Provenance {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Provenance::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| format!("unknown provenance '{s}'"))
    }
}

/// Expected vertex after `step` tokens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub step: usize,
    pub element: Element,
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub group: String,
    pub generators: Vec<(String, Element)>,
    pub walk: Walk,
    pub figure: Option<String>,
    pub provenance: Option<Provenance>,
    pub expect: Vec<Expectation>,
}

impl Certificate {
    pub fn new(g: &Group, gens: &GeneratorSet, walk: Walk, provenance: Provenance) -> Self {
        Certificate {
            group: g.name().map(str::to_string).unwrap_or_else(|| g.spec_text()),
            generators: gens.describe(g),
            walk,
            figure: None,
            provenance: Some(provenance),
            expect: Vec::new(),
        }
    }

    pub fn with_figure(mut self, id: &str) -> Self {
        self.figure = Some(id.to_string());
        self
    }

    /// Compile the group and generator set named by the certificate.
    pub fn compile(&self) -> Result<(Group, GeneratorSet), CertificateError> {
        let g = Group::parse(&self.group)?;
        let named: Vec<(&str, Element)> = self.generators.iter().map(|(n, e)| (n.as_str(), e.clone())).collect();
        let gens = GeneratorSet::from_elements(&g, &named)?;
        Ok((g, gens))
    }

    /// Recompute validity from scratch.
    pub fn verify(&self) -> Result<VerificationReport, CertificateError> {
        let (g, gens) = self.compile()?;
        Ok(verify_hamiltonian_cycle(&g, &gens, &self.walk))
    }

    /// Expectations that disagree with the walk, as `(step, expected, actual)`.
    pub fn expectation_mismatches(&self, g: &Group, gens: &GeneratorSet) -> Vec<(usize, Element, Option<Element>)> {
        let verts = walk_vertices(g, gens, &self.walk);
        self.expect
            .iter()
            .filter_map(|x| {
                let actual = verts.as_ref().and_then(|v| v.get(x.step)).map(|&i| g.element(i));
                (actual.as_ref() != Some(&x.element)).then(|| (x.step, x.element.clone(), actual))
            })
            .collect()
    }

    pub fn emit(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<Certificate, CertificateError> {
        parse_certificate(text)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group: {}", self.group)?;
        for (name, e) in &self.generators {
            writeln!(f, "gen {name} = {}", coords(e))?;
        }
        if let Some(fig) = &self.figure {
            writeln!(f, "figure: {fig}")?;
        }
        if let Some(p) = self.provenance {
            writeln!(f, "provenance: {p}")?;
        }
        for x in &self.expect {
            write!(f, "expect {} = {}", x.step, coords(&x.element))?;
            if let Some(l) = &x.label {
                write!(f, " {l}")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "tokens:")?;
        for chunk in self.walk.tokens.chunks(30) {
            let line: Vec<String> = chunk.iter().map(Token::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

fn coords(e: &Element) -> String {
    let parts: Vec<String> = e.0.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

/// 1-based column of `sub` inside `line`; `sub` must be a subslice.
fn col_of(line: &str, sub: &str) -> usize {
    sub.as_ptr() as usize - line.as_ptr() as usize + 1
}

fn header<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    line.trim_start().strip_prefix(key)?.strip_prefix(':')
}

fn push_tokens(
    raw: &str,
    segment: &str,
    ln: usize,
    generators: &[(String, Element)],
    out: &mut Vec<Token>,
) -> Result<(), CertificateError> {
    for word in segment.split_whitespace() {
        let col = col_of(raw, word);
        let t = Token::parse(word).ok_or_else(|| perr(ln, col, format!("malformed token '{word}'")))?;
        if !generators.iter().any(|(n, _)| *n == t.name) {
            return Err(perr(ln, col, format!("unknown-token: no generator named '{}'", t.name)));
        }
        out.push(t);
    }
    Ok(())
}

pub fn parse_certificate(text: &str) -> Result<Certificate, CertificateError> {
    let mut group: Option<String> = None;
    let mut radices: Vec<u32> = Vec::new();
    let mut generators: Vec<(String, Element)> = Vec::new();
    let mut figure = None;
    let mut provenance = None;
    let mut expect = Vec::new();
    let mut tokens: Option<Vec<Token>> = None;

    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        if let Some(toks) = tokens.as_mut() {
            push_tokens(raw, line, ln, &generators, toks)?;
            continue;
        }
        if let Some(rest) = header(line, "group") {
            if group.is_some() {
                return Err(perr(ln, 1, "duplicate group line"));
            }
            let spec_text = rest.trim();
            let spec = parse_group_spec(spec_text).map_err(|e| match e {
                GroupError::Parse { col, msg } => perr(ln, col_of(raw, spec_text) + col.saturating_sub(1), msg),
                other => perr(ln, col_of(raw, spec_text), other.to_string()),
            })?;
            radices = spec.radices();
            group = Some(spec_text.to_string());
        } else if let Some(rest) = header(line, "figure") {
            figure = Some(rest.trim().to_string());
        } else if let Some(rest) = header(line, "provenance") {
            let p = rest.trim();
            provenance = Some(p.parse().map_err(|m: String| perr(ln, col_of(raw, p), m))?);
        } else if header(line, "tokens").is_some() {
            if group.is_none() {
                return Err(perr(ln, 1, "tokens before group line"));
            }
            let mut toks = Vec::new();
            push_tokens(raw, header(line, "tokens").unwrap_or(""), ln, &generators, &mut toks)?;
            tokens = Some(toks);
        } else if let Some(rest) = line.trim_start().strip_prefix("gen ") {
            if group.is_none() {
                return Err(perr(ln, 1, "gen line before group line"));
            }
            let (name, value) = rest
                .split_once('=')
                .ok_or_else(|| perr(ln, col_of(raw, rest), "expected 'gen NAME = (coords)'"))?;
            let name = name.trim();
            if !valid_name(name) {
                return Err(perr(ln, col_of(raw, rest), format!("invalid generator name '{name}'")));
            }
            if generators.iter().any(|(n, _)| n == name) {
                return Err(perr(ln, col_of(raw, rest), format!("duplicate generator '{name}'")));
            }
            let value = value.trim();
            let e = parse_element(value, &radices).map_err(|e| perr(ln, col_of(raw, value), e.to_string()))?;
            generators.push((name.to_string(), e));
        } else if let Some(rest) = line.trim_start().strip_prefix("expect ") {
            let (step, tail) = rest
                .split_once('=')
                .ok_or_else(|| perr(ln, col_of(raw, rest), "expected 'expect STEP = (coords) [label]'"))?;
            let step: usize = step
                .trim()
                .parse()
                .map_err(|_| perr(ln, col_of(raw, rest), format!("bad step '{}'", step.trim())))?;
            let tail = tail.trim();
            let close = tail
                .find(')')
                .ok_or_else(|| perr(ln, col_of(raw, tail), "expected a coordinate tuple"))?;
            let (value, label) = tail.split_at(close + 1);
            let element = parse_element(value, &radices).map_err(|e| perr(ln, col_of(raw, value), e.to_string()))?;
            let label = label.trim();
            expect.push(Expectation { step, element, label: (!label.is_empty()).then(|| label.to_string()) });
        } else {
            let body = line.trim_start();
            return Err(perr(ln, col_of(raw, body), format!("unrecognised line '{}'", body.trim_end())));
        }
    }

    let line_count = text.lines().count().max(1);
    let group = group.ok_or_else(|| perr(1, 1, "missing group line"))?;
    let tokens = tokens.ok_or_else(|| perr(line_count, 1, "missing tokens section"))?;
    Ok(Certificate { group, generators, walk: Walk::new(tokens), figure, provenance, expect })
}

/// Canonical certificate text.
pub fn emit_certificate(cert: &Certificate) -> String {
    cert.emit()
}
