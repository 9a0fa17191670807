//! Exact arithmetic for finite groups given by a [`GroupSpec`].
//!
//! A [`Group`] compiles a spec into index arithmetic. Elements are numbered
//! `0..order` in lexicographic order of their coordinates, so index `0` is
//! the identity and the numbering is deterministic.

mod auto;
mod parse;
pub mod presets;
mod spec;
mod subgroup;

pub use auto::{automorphisms, extend_homomorphism, find_isomorphism, is_isomorphic, Automorphism, AUTOMORPHISM_CAP};
pub use parse::{parse_element, parse_group_spec};
pub use spec::{ActionMap, Element, GroupSpec};
pub use subgroup::{
    center, centralizer, derived_subgroup, generate, is_generating, is_minimal_generating, is_normal,
    normal_closure, sylow_subgroup, Subgroup,
};

use std::fmt;
use thiserror::Error;

/// Default cap on the order of a compiled group.
pub const ENUMERATION_CAP: usize = 10_000;

/// Groups up to this order keep a full multiplication table.
const TABLE_CAP: usize = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("invalid group spec: {0}")]
    Invalid(String),
    #[error("group order {order} exceeds the cap of {cap}")]
    CapExceeded { order: u64, cap: u64 },
    #[error("element {element} does not fit the group: {reason}")]
    Shape { element: String, reason: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// Index-level view of a finite group. Elements are `0..order()`, and `0` is
/// the identity.
pub trait FiniteGroup: Sync {
    fn order(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;

    fn identity(&self) -> usize {
        0
    }

    /// Human-readable name of an element.
    fn label(&self, a: usize) -> String {
        a.to_string()
    }

    /// A generating set of the whole group.
    fn generators(&self) -> Vec<usize> {
        greedy_generators(self)
    }

    fn pow(&self, a: usize, k: i64) -> usize {
        let (mut base, mut k) = if k < 0 { (self.inv(a), k.unsigned_abs()) } else { (a, k as u64) };
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    fn element_order(&self, a: usize) -> usize {
        let e = self.identity();
        let mut x = a;
        let mut k = 1;
        while x != e {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `x^-1 g x`.
    fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), g), x)
    }

    /// `a^-1 b^-1 a b`.
    fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// Product of a word of elements.
    fn product(&self, word: &[usize]) -> usize {
        word.iter().fold(self.identity(), |acc, &x| self.mul(acc, x))
    }
}

/// Pick generators greedily: repeatedly add the element that enlarges the
/// generated subgroup the most.
pub fn greedy_generators<G: FiniteGroup + ?Sized>(g: &G) -> Vec<usize> {
    let n = g.order();
    let mut gens = Vec::new();
    let mut current = generate(g, &gens);
    while current.order() < n {
        let mut best = None;
        let mut best_size = 0;
        for x in 0..n {
            if current.contains(x) {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(x);
            let size = generate(g, &trial).order();
            if size > best_size {
                best_size = size;
                best = Some(x);
                if size == n {
                    break;
                }
            }
        }
        gens.push(best.expect("a proper subgroup has a non-member"));
        current = generate(g, &gens);
    }
    gens
}

#[derive(Clone, Debug)]
enum Node {
    Cyclic(usize),
    Dihedral(usize),
    Dicyclic(usize),
    Direct { parts: Vec<Node>, strides: Vec<usize> },
    Semidirect { acting: Box<Node>, acted: Box<Node>, acted_order: usize, act: Vec<u32> },
}

impl Node {
    fn order(&self) -> usize {
        match self {
            Node::Cyclic(n) => *n,
            Node::Dihedral(n) | Node::Dicyclic(n) => 2 * n,
            Node::Direct { parts, .. } => parts.iter().map(Node::order).product(),
            Node::Semidirect { acting, acted_order, .. } => acting.order() * acted_order,
        }
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        match self {
            Node::Cyclic(n) => (a + b) % n,
            Node::Dihedral(n) => {
                let (fa, ra) = (a / n, a % n);
                let (fb, rb) = (b / n, b % n);
                let ra = if fb == 1 { (n - ra) % n } else { ra };
                ((fa ^ fb) * n) + (ra + rb) % n
            }
            Node::Dicyclic(n) => {
                let (ya, xa) = (a / n, a % n);
                let (yb, xb) = (b / n, b % n);
                let xa = if yb == 1 { (n - xa) % n } else { xa };
                let wrap = if ya == 1 && yb == 1 { n / 2 } else { 0 };
                ((ya ^ yb) * n) + (xa + xb + wrap) % n
            }
            Node::Direct { parts, strides } => {
                let mut out = 0;
                for (p, &s) in parts.iter().zip(strides) {
                    let o = p.order();
                    let (ca, cb) = ((a / s) % o, (b / s) % o);
                    out += p.mul(ca, cb) * s;
                }
                out
            }
            Node::Semidirect { acting, acted, acted_order, act } => {
                let k = *acted_order;
                let (u, v) = (a / k, a % k);
                let (u2, v2) = (b / k, b % k);
                let moved = act[u2 * k + v] as usize;
                acting.mul(u, u2) * k + acted.mul(moved, v2)
            }
        }
    }

    fn inv(&self, a: usize) -> usize {
        match self {
            Node::Cyclic(n) => (n - a) % n,
            Node::Dihedral(n) => {
                if a >= *n {
                    a
                } else {
                    (n - a) % n
                }
            }
            Node::Dicyclic(n) => {
                if a >= *n {
                    n + (a - n + n / 2) % n
                } else {
                    (n - a) % n
                }
            }
            Node::Direct { parts, strides } => {
                let mut out = 0;
                for (p, &s) in parts.iter().zip(strides) {
                    out += p.inv((a / s) % p.order()) * s;
                }
                out
            }
            Node::Semidirect { acting, acted, acted_order, act } => {
                let k = *acted_order;
                let (u, v) = (a / k, a % k);
                let ui = acting.inv(u);
                ui * k + act[ui * k + acted.inv(v)] as usize
            }
        }
    }
}

fn compile(spec: &GroupSpec) -> Result<Node, GroupError> {
    match spec {
        GroupSpec::Cyclic(n) => {
            if *n == 0 {
                return Err(GroupError::Invalid("cyclic modulus must be at least 1".into()));
            }
            Ok(Node::Cyclic(*n as usize))
        }
        GroupSpec::Dihedral(m) => {
            if *m < 4 || m % 2 != 0 {
                return Err(GroupError::Invalid(format!("dihedral order must be even and at least 4, got {m}")));
            }
            Ok(Node::Dihedral(*m as usize / 2))
        }
        GroupSpec::Dicyclic(m) => {
            if *m < 8 || m % 4 != 0 {
                return Err(GroupError::Invalid(format!("dicyclic order must be a multiple of 4 and at least 8, got {m}")));
            }
            Ok(Node::Dicyclic(*m as usize / 2))
        }
        GroupSpec::Direct(parts) => {
            if parts.is_empty() {
                return Err(GroupError::Invalid("empty direct product".into()));
            }
            let nodes = parts.iter().map(compile).collect::<Result<Vec<_>, _>>()?;
            let mut strides = vec![1usize; nodes.len()];
            for i in (0..nodes.len().saturating_sub(1)).rev() {
                strides[i] = strides[i + 1] * nodes[i + 1].order();
            }
            Ok(Node::Direct { parts: nodes, strides })
        }
        GroupSpec::Semidirect { acting, acted, action } => {
            let a = compile(acting)?;
            let k = compile(acted)?;
            let act = action_table(acting, &a, acted, &k, action)?;
            Ok(Node::Semidirect {
                acted_order: k.order(),
                acting: Box::new(a),
                acted: Box::new(k),
                act,
            })
        }
    }
}

/// Automorphism of the acted group induced by each standard generator of
/// the acting group, as an image table over acted indices.
fn generator_automorphisms(acted_spec: &GroupSpec, acted: &Node, action: &ActionMap) -> Result<Vec<Vec<u32>>, GroupError> {
    let k = acted.order();
    match action {
        ActionMap::Matrix { p, images } => {
            let p = *p as usize;
            if *acted_spec != GroupSpec::power(p as u32, 2) {
                return Err(GroupError::Invalid(format!("matrix action needs acted group Z{p}^2, got {acted_spec}")));
            }
            images
                .iter()
                .map(|m| {
                    let det = (m[0][0] as usize * m[1][1] as usize + p * p - (m[0][1] as usize * m[1][0] as usize) % p) % p;
                    if det == 0 {
                        return Err(GroupError::Invalid(format!("matrix {m:?} is singular mod {p}")));
                    }
                    Ok((0..k)
                        .map(|v| {
                            let (x, y) = (v / p, v % p);
                            let nx = (x * m[0][0] as usize + y * m[1][0] as usize) % p;
                            let ny = (x * m[0][1] as usize + y * m[1][1] as usize) % p;
                            (nx * p + ny) as u32
                        })
                        .collect())
                })
                .collect()
        }
        ActionMap::Unit(units) => {
            let n = match acted_spec {
                GroupSpec::Cyclic(n) => *n as usize,
                other => return Err(GroupError::Invalid(format!("unit action needs a cyclic acted group, got {other}"))),
            };
            units
                .iter()
                .map(|&u| {
                    if gcd(u as usize % n.max(1), n) != 1 && n > 1 {
                        return Err(GroupError::Invalid(format!("{u} is not a unit mod {n}")));
                    }
                    Ok((0..k).map(|v| ((v * u as usize) % n) as u32).collect())
                })
                .collect()
        }
        ActionMap::Images(per_gen) => {
            let gens = acted_spec.standard_generators();
            let radices = acted_spec.radices();
            let gen_idx: Vec<usize> = gens.iter().map(|g| encode(&radices, &g.0)).collect();
            per_gen
                .iter()
                .map(|imgs| {
                    if imgs.len() != gens.len() {
                        return Err(GroupError::Invalid(format!(
                            "expected {} generator images, found {}",
                            gens.len(),
                            imgs.len()
                        )));
                    }
                    let img_idx = imgs
                        .iter()
                        .map(|e| check_coords(&radices, e).map(|_| encode(&radices, &e.0)))
                        .collect::<Result<Vec<_>, _>>()?;
                    let view = NodeView(acted);
                    let map = extend_homomorphism(&view, &gen_idx, &view, &img_idx)
                        .ok_or_else(|| GroupError::Invalid(format!("images {imgs:?} do not define a homomorphism")))?;
                    let mut seen = vec![false; k];
                    for &x in &map {
                        if std::mem::replace(&mut seen[x], true) {
                            return Err(GroupError::Invalid(format!("images {imgs:?} do not define a bijection")));
                        }
                    }
                    Ok(map.into_iter().map(|x| x as u32).collect())
                })
                .collect()
        }
    }
}

fn action_table(
    acting_spec: &GroupSpec,
    acting: &Node,
    acted_spec: &GroupSpec,
    acted: &Node,
    action: &ActionMap,
) -> Result<Vec<u32>, GroupError> {
    let per_gen = generator_automorphisms(acted_spec, acted, action)?;
    let gens: Vec<usize> = acting_spec
        .standard_generators()
        .iter()
        .map(|g| encode(&acting_spec.radices(), &g.0))
        .collect();
    if per_gen.len() != gens.len() {
        return Err(GroupError::Invalid(format!(
            "action lists {} images but the acting group {acting_spec} has {} standard generators",
            per_gen.len(),
            gens.len()
        )));
    }
    let m = acting.order();
    let k = acted.order();
    let mut table: Vec<Option<Vec<u32>>> = vec![None; m];
    table[0] = Some((0..k as u32).collect());
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let cur = table[u].clone().expect("queued elements have tables");
        for (g, img) in gens.iter().zip(&per_gen) {
            let w = acting.mul(u, *g);
            let composed: Vec<u32> = cur.iter().map(|&v| img[v as usize]).collect();
            match &table[w] {
                None => {
                    table[w] = Some(composed);
                    queue.push(w);
                }
                Some(existing) => {
                    if *existing != composed {
                        return Err(GroupError::Invalid(format!(
                            "the action of {acting_spec} is not a homomorphism"
                        )));
                    }
                }
            }
        }
    }
    let mut out = Vec::with_capacity(m * k);
    for t in table {
        out.extend(t.expect("standard generators generate the acting group"));
    }
    Ok(out)
}

struct NodeView<'a>(&'a Node);

impl FiniteGroup for NodeView<'_> {
    fn order(&self) -> usize {
        self.0.order()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.0.mul(a, b)
    }
    fn inv(&self, a: usize) -> usize {
        self.0.inv(a)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn encode(radices: &[u32], coords: &[u32]) -> usize {
    coords
        .iter()
        .zip(radices)
        .fold(0usize, |acc, (&c, &r)| acc * r as usize + c as usize)
}

fn check_coords(radices: &[u32], e: &Element) -> Result<(), GroupError> {
    if e.0.len() != radices.len() {
        return Err(GroupError::Shape {
            element: e.to_string(),
            reason: format!("expected {} coordinates, found {}", radices.len(), e.0.len()),
        });
    }
    for (i, (&c, &r)) in e.0.iter().zip(radices).enumerate() {
        if c >= r {
            return Err(GroupError::Shape {
                element: e.to_string(),
                reason: format!("coordinate {} is {c}, outside 0..{r}", i + 1),
            });
        }
    }
    Ok(())
}

/// A compiled finite group.
#[derive(Clone)]
pub struct Group {
    spec: GroupSpec,
    name: Option<String>,
    node: Node,
    order: usize,
    radices: Vec<u32>,
    table: Option<Vec<u32>>,
    inverses: Vec<u32>,
    std_gens: Vec<usize>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("spec", &self.spec.to_string())
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

impl Group {
    pub fn new(spec: GroupSpec) -> Result<Self, GroupError> {
        Self::with_cap(spec, ENUMERATION_CAP)
    }

    pub fn with_cap(spec: GroupSpec, cap: usize) -> Result<Self, GroupError> {
        let order = spec
            .order()
            .ok_or_else(|| GroupError::CapExceeded { order: u64::MAX, cap: cap as u64 })?;
        if order > cap as u64 {
            return Err(GroupError::CapExceeded { order, cap: cap as u64 });
        }
        let node = compile(&spec)?;
        let order = order as usize;
        debug_assert_eq!(node.order(), order);
        let radices = spec.radices();
        let table = (order <= TABLE_CAP).then(|| {
            let mut t = Vec::with_capacity(order * order);
            for a in 0..order {
                for b in 0..order {
                    t.push(node.mul(a, b) as u32);
                }
            }
            t
        });
        let inverses = (0..order).map(|a| node.inv(a) as u32).collect();
        let std_gens = spec
            .standard_generators()
            .iter()
            .map(|g| encode(&radices, &g.0))
            .filter(|&g| g != 0)
            .collect();
        Ok(Group { spec, name: None, node, order, radices, table, inverses, std_gens })
    }

    /// Parse and compile a group from its text form or a preset name.
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let trimmed = text.trim();
        let mut g = Group::new(parse_group_spec(trimmed)?)?;
        if presets::preset_text(trimmed).is_some() {
            g.name = Some(trimmed.to_string());
        }
        Ok(g)
    }

    /// Compile a named preset.
    pub fn preset(name: &str) -> Result<Self, GroupError> {
        let spec = presets::preset(name).ok_or_else(|| GroupError::Invalid(format!("unknown preset '{name}'")))?;
        Ok(Group::new(spec)?.with_name(name))
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// Spec text that re-parses to this group.
    pub fn spec_text(&self) -> String {
        self.spec.to_string()
    }

    pub fn radices(&self) -> &[u32] {
        &self.radices
    }

    pub fn element(&self, idx: usize) -> Element {
        let mut coords = vec![0u32; self.radices.len()];
        let mut rest = idx;
        for (c, &r) in coords.iter_mut().zip(&self.radices).rev() {
            *c = (rest % r as usize) as u32;
            rest /= r as usize;
        }
        Element(coords)
    }

    pub fn index(&self, e: &Element) -> Result<usize, GroupError> {
        check_coords(&self.radices, e)?;
        Ok(encode(&self.radices, &e.0))
    }

    /// Parse an element literal in this group's coordinates.
    pub fn parse_element(&self, text: &str) -> Result<Element, GroupError> {
        parse_element(text, &self.radices)
    }

    pub fn identity_element(&self) -> Element {
        self.element(0)
    }

    pub fn multiply(&self, g: &Element, h: &Element) -> Result<Element, GroupError> {
        Ok(self.element(self.mul(self.index(g)?, self.index(h)?)))
    }

    pub fn inverse(&self, g: &Element) -> Result<Element, GroupError> {
        Ok(self.element(self.inv(self.index(g)?)))
    }

    pub fn order_of(&self, g: &Element) -> Result<usize, GroupError> {
        Ok(self.element_order(self.index(g)?))
    }

    /// `x^-1 g x`.
    pub fn conjugate(&self, g: &Element, x: &Element) -> Result<Element, GroupError> {
        Ok(self.element(self.conj(self.index(g)?, self.index(x)?)))
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator_of(&self, a: &Element, b: &Element) -> Result<Element, GroupError> {
        Ok(self.element(self.commutator(self.index(a)?, self.index(b)?)))
    }

    /// Every element in lexicographic coordinate order.
    pub fn enumerate_elements(&self) -> Vec<Element> {
        (0..self.order).map(|i| self.element(i)).collect()
    }

    /// Indices of the standard generators (identity entries dropped).
    pub fn standard_generators(&self) -> &[usize] {
        &self.std_gens
    }

    /// Nested rendering that mirrors the group structure, e.g. `(0,(0,(1,2)))`.
    pub fn tree_string(&self, e: &Element) -> String {
        fn go(spec: &GroupSpec, coords: &[u32], pos: &mut usize, out: &mut String) {
            match spec {
                GroupSpec::Cyclic(_) => {
                    out.push_str(&coords[*pos].to_string());
                    *pos += 1;
                }
                GroupSpec::Dihedral(_) | GroupSpec::Dicyclic(_) => {
                    out.push_str(&format!("({},{})", coords[*pos], coords[*pos + 1]));
                    *pos += 2;
                }
                GroupSpec::Direct(parts) => {
                    out.push('(');
                    for (i, p) in parts.iter().enumerate() {
                        if i > 0 {
                            out.push(',');
                        }
                        go(p, coords, pos, out);
                    }
                    out.push(')');
                }
                GroupSpec::Semidirect { acting, acted, .. } => {
                    out.push('(');
                    go(acting, coords, pos, out);
                    out.push(',');
                    go(acted, coords, pos, out);
                    out.push(')');
                }
            }
        }
        let mut out = String::new();
        go(&self.spec, &e.0, &mut 0, &mut out);
        out
    }
}

impl FiniteGroup for Group {
    fn order(&self) -> usize {
        self.order
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order + b] as usize,
            None => self.node.mul(a, b),
        }
    }

    #[inline]
    fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    fn label(&self, a: usize) -> String {
        self.element(a).to_string()
    }

    fn generators(&self) -> Vec<usize> {
        self.std_gens.clone()
    }
}

impl<G: FiniteGroup + ?Sized> FiniteGroup for &G {
    fn order(&self) -> usize {
        (**self).order()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        (**self).mul(a, b)
    }
    fn inv(&self, a: usize) -> usize {
        (**self).inv(a)
    }
    fn identity(&self) -> usize {
        (**self).identity()
    }
    fn label(&self, a: usize) -> String {
        (**self).label(a)
    }
    fn generators(&self) -> Vec<usize> {
        (**self).generators()
    }
}

/// A subgroup presented as a group in its own right, with elements
/// renumbered `0..|H|` in ambient order.
pub struct SubgroupView<'a, G: FiniteGroup + ?Sized> {
    ambient: &'a G,
    members: Vec<usize>,
    local: Vec<u32>,
}

impl<'a, G: FiniteGroup + ?Sized> SubgroupView<'a, G> {
    pub fn new(ambient: &'a G, h: &Subgroup) -> Self {
        let members = h.members().to_vec();
        let mut local = vec![u32::MAX; ambient.order()];
        for (i, &m) in members.iter().enumerate() {
            local[m] = i as u32;
        }
        SubgroupView { ambient, members, local }
    }

    /// Ambient index of a local element.
    pub fn to_ambient(&self, local: usize) -> usize {
        self.members[local]
    }

    /// Local index of an ambient element, if it lies in the subgroup.
    pub fn to_local(&self, ambient: usize) -> Option<usize> {
        self.local.get(ambient).copied().filter(|&l| l != u32::MAX).map(|l| l as usize)
    }
}

impl<G: FiniteGroup + ?Sized> FiniteGroup for SubgroupView<'_, G> {
    fn order(&self) -> usize {
        self.members.len()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.local[self.ambient.mul(self.members[a], self.members[b])] as usize
    }
    fn inv(&self, a: usize) -> usize {
        self.local[self.ambient.inv(self.members[a])] as usize
    }
    fn label(&self, a: usize) -> String {
        self.ambient.label(self.members[a])
    }
}
