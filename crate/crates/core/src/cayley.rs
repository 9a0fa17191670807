//! Cayley graphs `Cay(G; S)`: vertices are group elements and `g` is joined
//! to `gs` for every `s` in `S`.

use std::io::{self, Write};

use thiserror::Error;

use crate::group::{Element, FiniteGroup, Group, GroupError};
use crate::hamilton::Token;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CayleyError {
    #[error("generating set is empty")]
    Empty,
    #[error("generator '{0}' is the identity")]
    IdentityGenerator(String),
    #[error("generator name '{0}' is used twice")]
    DuplicateName(String),
    #[error("'{0}' is not a valid generator name")]
    BadName(String),
    #[error("generator '{name}' is not an element of the group")]
    NotAnElement { name: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Whether `name` can be used as a generator name in walks and certificates.
pub fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Default generator names `a, b, c, ...`.
pub fn default_names(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("g{i}")
            }
        })
        .collect()
}

/// Named generators, stored as element indices of some group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    names: Vec<String>,
    elems: Vec<usize>,
}

impl GeneratorSet {
    /// Validated generator set: names unique and well formed, no identity.
    pub fn new<G: FiniteGroup + ?Sized>(g: &G, named: Vec<(String, usize)>) -> Result<Self, CayleyError> {
        if named.is_empty() {
            return Err(CayleyError::Empty);
        }
        for (i, (name, x)) in named.iter().enumerate() {
            if !valid_name(name) {
                return Err(CayleyError::BadName(name.clone()));
            }
            if named[..i].iter().any(|(n, _)| n == name) {
                return Err(CayleyError::DuplicateName(name.clone()));
            }
            if *x >= g.order() {
                return Err(CayleyError::NotAnElement { name: name.clone() });
            }
            if *x == g.identity() {
                return Err(CayleyError::IdentityGenerator(name.clone()));
            }
        }
        let (names, elems) = named.into_iter().unzip();
        Ok(GeneratorSet { names, elems })
    }

    /// Generators named `a, b, c, ...` in order.
    pub fn with_default_names<G: FiniteGroup + ?Sized>(g: &G, elems: &[usize]) -> Result<Self, CayleyError> {
        Self::new(g, default_names(elems.len()).into_iter().zip(elems.iter().copied()).collect())
    }

    /// Named elements of a compiled group given by coordinates.
    pub fn from_elements(g: &Group, named: &[(&str, Element)]) -> Result<Self, CayleyError> {
        let pairs = named
            .iter()
            .map(|(n, e)| Ok(((*n).to_string(), g.index(e)?)))
            .collect::<Result<Vec<_>, GroupError>>()?;
        Self::new(g, pairs)
    }

    /// Generator set whose elements may be trivial; used for images in a
    /// quotient, where a generator can fall into the kernel.
    pub fn images(names: Vec<String>, elems: Vec<usize>) -> Self {
        assert_eq!(names.len(), elems.len());
        GeneratorSet { names, elems }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn element_named(&self, name: &str) -> Option<usize> {
        self.position(name).map(|i| self.elems[i])
    }

    /// The group element a token steps by, or `None` for an unknown name.
    pub fn resolve<G: FiniteGroup + ?Sized>(&self, g: &G, tok: &Token) -> Option<usize> {
        let x = self.element_named(&tok.name)?;
        Some(if tok.inverse { g.inv(x) } else { x })
    }

    /// One signed token per distinct non-identity element of `S ∪ S^-1`,
    /// in generator order with the positive token first.
    pub fn signed_tokens<G: FiniteGroup + ?Sized>(&self, g: &G) -> Vec<(Token, usize)> {
        let mut out: Vec<(Token, usize)> = Vec::new();
        for (name, &x) in self.names.iter().zip(&self.elems) {
            for (inverse, y) in [(false, x), (true, g.inv(x))] {
                if y != g.identity() && !out.iter().any(|(_, z)| *z == y) {
                    out.push((Token::new(name, inverse), y));
                }
            }
        }
        out
    }

    /// Coordinate view, for display and certificates.
    pub fn describe(&self, g: &Group) -> Vec<(String, Element)> {
        self.names.iter().cloned().zip(self.elems.iter().map(|&x| g.element(x))).collect()
    }
}

/// A Cayley graph with a flat, token-labelled adjacency array.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    order: usize,
    tokens: Vec<Token>,
    token_elems: Vec<usize>,
    token_inv: Vec<usize>,
    adj: Vec<u32>,
    gens: GeneratorSet,
}

impl CayleyGraph {
    /// Build `Cay(G; S)`. Rejects generators equal to the identity.
    pub fn build<G: FiniteGroup + ?Sized>(g: &G, gens: &GeneratorSet) -> Result<Self, CayleyError> {
        if gens.is_empty() {
            return Err(CayleyError::Empty);
        }
        for (name, &x) in gens.names().iter().zip(gens.elements()) {
            if x == g.identity() {
                return Err(CayleyError::IdentityGenerator(name.clone()));
            }
        }
        Ok(Self::build_allowing_trivial(g, gens))
    }

    /// Build the graph while ignoring generators that are the identity (they
    /// would only contribute loops). Used for quotient graphs.
    pub fn build_allowing_trivial<G: FiniteGroup + ?Sized>(g: &G, gens: &GeneratorSet) -> Self {
        let signed = gens.signed_tokens(g);
        let n = g.order();
        let deg = signed.len();
        let token_elems: Vec<usize> = signed.iter().map(|(_, x)| *x).collect();
        let token_inv = token_elems
            .iter()
            .map(|&x| {
                let y = g.inv(x);
                token_elems.iter().position(|&z| z == y).expect("S ∪ S^-1 is closed under inverses")
            })
            .collect();
        let mut adj = Vec::with_capacity(n * deg);
        for v in 0..n {
            for &s in &token_elems {
                adj.push(g.mul(v, s) as u32);
            }
        }
        CayleyGraph {
            order: n,
            tokens: signed.into_iter().map(|(t, _)| t).collect(),
            token_elems,
            token_inv,
            adj,
            gens: gens.clone(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.tokens.len()
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn token(&self, k: usize) -> &Token {
        &self.tokens[k]
    }

    /// Group element that token `k` steps by.
    pub fn token_element(&self, k: usize) -> usize {
        self.token_elems[k]
    }

    /// Index of the token stepping by the inverse of token `k`.
    pub fn inverse_token(&self, k: usize) -> usize {
        self.token_inv[k]
    }

    /// Neighbours of `v`, one per token, in token order.
    pub fn neighbors(&self, v: usize) -> &[u32] {
        let d = self.degree();
        &self.adj[v * d..(v + 1) * d]
    }

    pub fn neighbor(&self, v: usize, k: usize) -> usize {
        self.adj[v * self.degree() + k] as usize
    }

    /// The token leading from `u` to `v`, if they are adjacent.
    pub fn token_between(&self, u: usize, v: usize) -> Option<usize> {
        self.neighbors(u).iter().position(|&w| w as usize == v)
    }

    /// Vertices reachable from the identity (vertex 0).
    pub fn component_of_identity(&self) -> Vec<bool> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w as usize);
                }
            }
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.component_of_identity().iter().all(|&b| b)
    }

    /// Undirected edges `(u, v, token)` with `u < v`, each listed once.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::with_capacity(self.order * self.degree() / 2);
        for u in 0..self.order {
            for (k, &v) in self.neighbors(u).iter().enumerate() {
                if u < v as usize {
                    out.push((u, v as usize, k));
                }
            }
        }
        out
    }

    /// Write the graph in DOT format, labelling vertices by `g.label`.
    pub fn export_dot<G: FiniteGroup + ?Sized, W: Write>(&self, g: &G, sink: &mut W) -> io::Result<()> {
        writeln!(sink, "graph cayley {{")?;
        for v in 0..self.order {
            writeln!(sink, "  {v} [label=\"{}\"];", g.label(v))?;
        }
        for (u, v, k) in self.edges() {
            writeln!(sink, "  {u} -- {v} [label=\"{}\"];", self.tokens[k])?;
        }
        writeln!(sink, "}}")
    }
}
