//! Text grammar for group specs.
//!
//! ```text
//! spec   := term [ "ltimes" term "via" action ]
//! term   := factor ( "x" factor )*
//! factor := "Z" n [ "^" k ] | "D" m | "Q" m | "(" spec ")" | PRESET
//! action := "matrix" p mat ("," mat)*
//!         | "unit" u ("," u)*
//!         | "images" "[" tuple ("," tuple)* "]" ("," "[" ... "]")*
//! ```

use super::presets;
use super::spec::{ActionMap, Element, GroupSpec};
use super::GroupError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(i64),
    Sym(char),
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

fn err(col: usize, msg: impl Into<String>) -> GroupError {
    GroupError::Parse {
        col,
        msg: msg.into(),
    }
}

impl Lexer {
    fn new(text: &str) -> Result<Self, GroupError> {
        let chars: Vec<char> = text.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s.parse::<i64>().map_err(|_| err(col, "number too large"))?;
                toks.push((Tok::Num(n), col));
            } else if "()[],^-".contains(c) {
                toks.push((Tok::Sym(c), col));
                i += 1;
            } else {
                return Err(err(col, format!("unexpected character '{c}'")));
            }
        }
        Ok(Lexer {
            toks,
            pos: 0,
            end_col: chars.len() + 1,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn peek_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn peek_word(&self, w: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == w)
    }

    fn expect_sym(&mut self, c: char) -> Result<(), GroupError> {
        let col = self.col();
        match self.next() {
            Some(Tok::Sym(s)) if s == c => Ok(()),
            other => Err(err(col, format!("expected '{c}', found {}", describe(other.as_ref())))),
        }
    }

    fn expect_word(&mut self, w: &str) -> Result<(), GroupError> {
        let col = self.col();
        match self.next() {
            Some(Tok::Ident(s)) if s == w => Ok(()),
            other => Err(err(col, format!("expected '{w}', found {}", describe(other.as_ref())))),
        }
    }

    fn int(&mut self) -> Result<i64, GroupError> {
        let col = self.col();
        let neg = if self.peek_sym('-') {
            self.next();
            true
        } else {
            false
        };
        match self.next() {
            Some(Tok::Num(n)) => Ok(if neg { -n } else { n }),
            other => Err(err(col, format!("expected number, found {}", describe(other.as_ref())))),
        }
    }

    fn positive(&mut self) -> Result<u32, GroupError> {
        let col = self.col();
        let n = self.int()?;
        u32::try_from(n)
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| err(col, format!("expected positive integer, found {n}")))
    }
}

fn describe(t: Option<&Tok>) -> String {
    match t {
        None => "end of input".into(),
        Some(Tok::Ident(s)) => format!("'{s}'"),
        Some(Tok::Num(n)) => format!("'{n}'"),
        Some(Tok::Sym(c)) => format!("'{c}'"),
    }
}

/// Parse a group spec from its text form. Preset names are accepted anywhere
/// a factor may appear.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec, GroupError> {
    let mut lx = Lexer::new(text)?;
    let spec = parse_spec(&mut lx)?;
    if lx.peek().is_some() {
        return Err(err(lx.col(), format!("unexpected trailing {}", describe(lx.peek()))));
    }
    Ok(spec)
}

fn parse_spec(lx: &mut Lexer) -> Result<GroupSpec, GroupError> {
    let acting = parse_term(lx)?;
    if !lx.peek_word("ltimes") {
        return Ok(acting);
    }
    lx.next();
    let acted = parse_term(lx)?;
    lx.expect_word("via")?;
    let action = parse_action(lx, &acted)?;
    Ok(GroupSpec::semidirect(acting, acted, action))
}

fn parse_term(lx: &mut Lexer) -> Result<GroupSpec, GroupError> {
    let mut parts = vec![parse_factor(lx)?];
    while lx.peek_word("x") {
        lx.next();
        parts.push(parse_factor(lx)?);
    }
    Ok(if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        GroupSpec::Direct(parts)
    })
}

fn parse_factor(lx: &mut Lexer) -> Result<GroupSpec, GroupError> {
    let col = lx.col();
    match lx.next() {
        Some(Tok::Sym('(')) => {
            let s = parse_spec(lx)?;
            lx.expect_sym(')')?;
            Ok(s)
        }
        Some(Tok::Ident(word)) => {
            if let Some(n) = leaf_modulus(&word, 'Z') {
                if n == 0 {
                    return Err(err(col, "cyclic modulus must be at least 1"));
                }
                if lx.peek_sym('^') {
                    lx.next();
                    let k = lx.positive()? as usize;
                    return Ok(if k == 1 { GroupSpec::Cyclic(n) } else { GroupSpec::power(n, k) });
                }
                Ok(GroupSpec::Cyclic(n))
            } else if let Some(m) = leaf_modulus(&word, 'D') {
                if m < 4 || m % 2 != 0 {
                    return Err(err(col, format!("dihedral order must be even and at least 4, got {m}")));
                }
                Ok(GroupSpec::Dihedral(m))
            } else if let Some(m) = leaf_modulus(&word, 'Q') {
                if m < 8 || m % 4 != 0 {
                    return Err(err(col, format!("dicyclic order must be a multiple of 4 and at least 8, got {m}")));
                }
                Ok(GroupSpec::Dicyclic(m))
            } else if let Some(spec) = presets::preset(&word) {
                Ok(spec)
            } else {
                Err(err(col, format!("unknown group '{word}'")))
            }
        }
        other => Err(err(col, format!("expected a group, found {}", describe(other.as_ref())))),
    }
}

fn leaf_modulus(word: &str, prefix: char) -> Option<u32> {
    let rest = word.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

fn parse_action(lx: &mut Lexer, acted: &GroupSpec) -> Result<ActionMap, GroupError> {
    let col = lx.col();
    match lx.next() {
        Some(Tok::Ident(w)) if w == "matrix" => {
            let p = lx.positive()?;
            let mut images = vec![parse_matrix(lx, p)?];
            while lx.peek_sym(',') {
                lx.next();
                images.push(parse_matrix(lx, p)?);
            }
            Ok(ActionMap::Matrix { p, images })
        }
        Some(Tok::Ident(w)) if w == "unit" => {
            let n = match acted {
                GroupSpec::Cyclic(n) => *n as i64,
                _ => return Err(err(col, "unit action requires a cyclic acted group")),
            };
            let mut units = vec![lx.int()?.rem_euclid(n) as u32];
            while lx.peek_sym(',') {
                lx.next();
                units.push(lx.int()?.rem_euclid(n) as u32);
            }
            Ok(ActionMap::Unit(units))
        }
        Some(Tok::Ident(w)) if w == "images" => {
            let mut per_gen = vec![parse_image_list(lx)?];
            while lx.peek_sym(',') {
                lx.next();
                per_gen.push(parse_image_list(lx)?);
            }
            Ok(ActionMap::Images(per_gen))
        }
        other => Err(err(
            col,
            format!("expected 'matrix', 'unit' or 'images', found {}", describe(other.as_ref())),
        )),
    }
}

fn parse_matrix(lx: &mut Lexer, p: u32) -> Result<[[u32; 2]; 2], GroupError> {
    let mut m = [[0u32; 2]; 2];
    lx.expect_sym('[')?;
    for (r, row) in m.iter_mut().enumerate() {
        if r > 0 {
            lx.expect_sym(',')?;
        }
        lx.expect_sym('[')?;
        row[0] = lx.int()?.rem_euclid(p as i64) as u32;
        lx.expect_sym(',')?;
        row[1] = lx.int()?.rem_euclid(p as i64) as u32;
        lx.expect_sym(']')?;
    }
    lx.expect_sym(']')?;
    Ok(m)
}

fn parse_image_list(lx: &mut Lexer) -> Result<Vec<Element>, GroupError> {
    lx.expect_sym('[')?;
    let mut out = vec![parse_tuple(lx)?];
    while lx.peek_sym(',') {
        lx.next();
        out.push(parse_tuple(lx)?);
    }
    lx.expect_sym(']')?;
    Ok(out)
}

fn parse_tuple(lx: &mut Lexer) -> Result<Element, GroupError> {
    if !lx.peek_sym('(') {
        let col = lx.col();
        let n = lx.int()?;
        return u32::try_from(n)
            .map(|n| Element(vec![n]))
            .map_err(|_| err(col, "negative coordinate"));
    }
    lx.next();
    let mut coords = Vec::new();
    loop {
        let col = lx.col();
        let n = lx.int()?;
        coords.push(u32::try_from(n).map_err(|_| err(col, "negative coordinate"))?);
        if lx.peek_sym(',') {
            lx.next();
        } else {
            break;
        }
    }
    lx.expect_sym(')')?;
    Ok(Element(coords))
}

/// Parse an element literal such as `3`, `(1,0,4)` or `(1,0,-1)`, reducing
/// negative residues modulo the given radices.
pub fn parse_element(text: &str, radices: &[u32]) -> Result<Element, GroupError> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(t);
    let mut coords = Vec::new();
    for (i, part) in inner.split(',').enumerate() {
        let part = part.trim();
        let v: i64 = part.parse().map_err(|_| GroupError::Shape {
            element: t.to_string(),
            reason: format!("coordinate {} ('{part}') is not an integer", i + 1),
        })?;
        let m = *radices.get(i).ok_or_else(|| GroupError::Shape {
            element: t.to_string(),
            reason: format!("expected {} coordinates", radices.len()),
        })?;
        coords.push(v.rem_euclid(m as i64) as u32);
    }
    if coords.len() != radices.len() {
        return Err(GroupError::Shape {
            element: t.to_string(),
            reason: format!("expected {} coordinates, found {}", radices.len(), coords.len()),
        });
    }
    Ok(Element(coords))
}
