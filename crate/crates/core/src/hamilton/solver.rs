//! Exact backtracking search for hamiltonian cycles and paths.
//!
//! Pruning after every move:
//! - every unvisited vertex keeps at least two usable neighbours, counting
//!   the current head and the start vertex as usable;
//! - the unvisited vertices stay connected to the head;
//! - the start keeps an unvisited neighbour to close the cycle with.
//!
//! An unvisited neighbour of the head with exactly two usable neighbours must
//! be the next vertex, so it is taken without branching.

use thiserror::Error;

use super::verify::{verify_hamiltonian_cycle, verify_hamiltonian_path};
use super::{Token, Walk};
use crate::cayley::CayleyGraph;
use crate::group::FiniteGroup;

/// Node budget used when neither the caller nor `CAYLEYHAM_BUDGET` sets one.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// Largest graph accepted by [`is_hamiltonian_connected`].
pub const HAMILTONIAN_CONNECTED_CAP: usize = 100;

/// Budget from `CAYLEYHAM_BUDGET`, falling back to [`DEFAULT_BUDGET`].
pub fn default_budget() -> u64 {
    std::env::var("CAYLEYHAM_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("the graph is disconnected")]
    Disconnected,
    #[error("search exceeded its budget of {budget} nodes")]
    BudgetExceeded { budget: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("graph of order {order} exceeds the cap of {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

/// Restriction on how often a generator (either sign) appears in a cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UseConstraint {
    /// The generator is used an odd number of times.
    Odd(String),
    /// The generator is used at least once.
    AtLeastOnce(String),
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub budget: u64,
    pub constraints: Vec<UseConstraint>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: default_budget(), constraints: Vec::new() }
    }
}

impl SearchOptions {
    pub fn with_budget(budget: u64) -> Self {
        SearchOptions { budget, constraints: Vec::new() }
    }

    pub fn constrain(mut self, c: UseConstraint) -> Self {
        self.constraints.push(c);
        self
    }
}

const VIRTUAL: u32 = u32::MAX;

/// Graph in compressed adjacency form with neighbours sorted by index.
struct Csr {
    n: usize,
    offs: Vec<u32>,
    nbrs: Vec<u32>,
    toks: Vec<u32>,
    bits: Option<Vec<u64>>,
    words: usize,
}

impl Csr {
    fn from_lists(lists: Vec<Vec<(u32, u32)>>) -> Self {
        let n = lists.len();
        let mut offs = Vec::with_capacity(n + 1);
        let mut nbrs = Vec::new();
        let mut toks = Vec::new();
        offs.push(0);
        for mut l in lists {
            l.sort_unstable();
            for (w, t) in l {
                nbrs.push(w);
                toks.push(t);
            }
            offs.push(nbrs.len() as u32);
        }
        let words = n.div_ceil(64);
        let bits = (n <= 4096).then(|| {
            let mut b = vec![0u64; n * words];
            for v in 0..n {
                for &w in &nbrs[offs[v] as usize..offs[v + 1] as usize] {
                    b[v * words + w as usize / 64] |= 1 << (w % 64);
                }
            }
            b
        });
        Csr { n, offs, nbrs, toks, bits, words }
    }

    /// Graph on `0..g.order()` with an edge `v -- v*s` per step; loops are
    /// dropped and parallel edges kept.
    fn from_steps<G: FiniteGroup + ?Sized>(g: &G, steps: &[usize]) -> Self {
        let lists = (0..g.order())
            .map(|v| {
                steps
                    .iter()
                    .enumerate()
                    .map(|(k, &s)| (g.mul(v, s) as u32, k as u32))
                    .filter(|&(w, _)| w as usize != v)
                    .collect()
            })
            .collect();
        Csr::from_lists(lists)
    }

    /// Adds a vertex joined only to `u` and `v`.
    fn with_virtual(self, u: usize, v: usize) -> Self {
        let n = self.n;
        let mut lists: Vec<Vec<(u32, u32)>> =
            (0..n).map(|x| self.nbrs(x).0.iter().copied().zip(self.nbrs(x).1.iter().copied()).collect()).collect();
        lists[u].push((n as u32, VIRTUAL));
        lists[v].push((n as u32, VIRTUAL));
        lists.push(vec![(u as u32, VIRTUAL), (v as u32, VIRTUAL)]);
        Csr::from_lists(lists)
    }

    #[inline]
    fn nbrs(&self, v: usize) -> (&[u32], &[u32]) {
        let (a, b) = (self.offs[v] as usize, self.offs[v + 1] as usize);
        (&self.nbrs[a..b], &self.toks[a..b])
    }

    #[inline]
    fn adjacent(&self, a: usize, b: usize) -> bool {
        match &self.bits {
            Some(bits) => bits[a * self.words + b / 64] >> (b % 64) & 1 == 1,
            None => self.nbrs(a).0.contains(&(b as u32)),
        }
    }

    fn tokens_between(&self, a: usize, b: usize) -> impl Iterator<Item = u32> + '_ {
        let (ns, ts) = self.nbrs(a);
        ns.iter().zip(ts).filter(move |(&w, _)| w as usize == b).map(|(_, &t)| t)
    }
}

struct Frame {
    cands: Vec<(u32, u32)>,
    next: usize,
    moved: bool,
}

struct Engine<'a> {
    g: &'a Csr,
    start: usize,
    visited: Vec<bool>,
    free: Vec<u32>,
    path: Vec<u32>,
    path_tok: Vec<u32>,
    nodes: u64,
    budget: u64,
    /// Try the most constrained neighbour first instead of index order.
    constrained_first: bool,
    mark: Vec<u32>,
    stamp: u32,
    queue: Vec<u32>,
}

impl<'a> Engine<'a> {
    fn new(g: &'a Csr, start: usize, budget: u64, constrained_first: bool) -> Self {
        let n = g.n;
        let free = (0..n).map(|v| g.nbrs(v).0.len() as u32).collect();
        let mut e = Engine {
            g,
            start,
            visited: vec![false; n],
            free,
            path: Vec::with_capacity(n),
            path_tok: Vec::with_capacity(n),
            nodes: 0,
            budget,
            constrained_first,
            mark: vec![0; n],
            stamp: 0,
            queue: Vec::with_capacity(n),
        };
        e.visit(start);
        e.path.push(start as u32);
        e
    }

    fn visit(&mut self, v: usize) {
        self.visited[v] = true;
        for &w in self.g.nbrs(v).0 {
            self.free[w as usize] -= 1;
        }
    }

    fn unvisit(&mut self, v: usize) {
        self.visited[v] = false;
        for &w in self.g.nbrs(v).0 {
            self.free[w as usize] += 1;
        }
    }

    fn push(&mut self, w: usize, tok: u32) {
        self.visit(w);
        self.path.push(w as u32);
        self.path_tok.push(tok);
    }

    fn pop(&mut self) {
        let w = self.path.pop().expect("pop follows push") as usize;
        self.path_tok.pop();
        self.unvisit(w);
    }

    /// Usable neighbours of the unvisited vertex `x` with head `head`.
    #[inline]
    fn avail(&self, x: usize, head: usize) -> u32 {
        let mut a = self.free[x];
        if self.g.adjacent(x, head) {
            a += 1;
        }
        if head != self.start && self.g.adjacent(x, self.start) {
            a += 1;
        }
        a
    }

    fn remaining(&self) -> usize {
        self.g.n - self.path.len()
    }

    /// Moves out of `head`, or `None` if the position is dead.
    fn candidates(&self, head: usize) -> Option<Vec<(u32, u32)>> {
        let remaining = self.remaining();
        let (ns, ts) = self.g.nbrs(head);
        let mut forced = None;
        let mut all = Vec::with_capacity(ns.len());
        for (&w, &t) in ns.iter().zip(ts) {
            let w = w as usize;
            if self.visited[w] {
                continue;
            }
            all.push((w as u32, t));
            if head == self.start {
                continue;
            }
            let av = self.avail(w, head);
            if av < 2 {
                return None;
            }
            if av == 2 {
                if self.free[w] == 0 && remaining > 1 {
                    return None;
                }
                match forced {
                    Some((f, _)) if f != w as u32 => return None,
                    Some(_) => {}
                    None => forced = Some((w as u32, t)),
                }
            }
        }
        Some(match forced {
            Some((f, _)) => all.into_iter().filter(|&(w, _)| w == f).collect(),
            None => {
                if self.constrained_first {
                    all.sort_by_key(|&(w, _)| (self.free[w as usize], w));
                }
                all
            }
        })
    }

    /// Checks after moving from `prev` to the new head `w`.
    fn feasible(&mut self, prev: usize, w: usize) -> bool {
        let remaining = self.remaining();
        if remaining == 0 {
            return self.g.adjacent(w, self.start);
        }
        if self.free[self.start] == 0 || self.free[w] == 0 {
            return false;
        }
        for v in [prev, w] {
            for &x in self.g.nbrs(v).0 {
                let x = x as usize;
                if !self.visited[x] && self.avail(x, w) < 2 {
                    return false;
                }
            }
        }
        self.unvisited_connected(w, remaining)
    }

    fn unvisited_connected(&mut self, head: usize, remaining: usize) -> bool {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.stamp = 1;
        }
        let stamp = self.stamp;
        self.queue.clear();
        for &x in self.g.nbrs(head).0 {
            let x = x as usize;
            if !self.visited[x] && self.mark[x] != stamp {
                self.mark[x] = stamp;
                self.queue.push(x as u32);
            }
        }
        let mut i = 0;
        while i < self.queue.len() {
            let v = self.queue[i] as usize;
            i += 1;
            for &x in self.g.nbrs(v).0 {
                let x = x as usize;
                if !self.visited[x] && self.mark[x] != stamp {
                    self.mark[x] = stamp;
                    self.queue.push(x as u32);
                }
            }
        }
        self.queue.len() == remaining
    }

    /// Depth-first search; on success `path_tok` holds the cycle's tokens
    /// including the closing one.
    fn run(&mut self, first: Option<usize>, accept: &mut dyn FnMut(&[u32]) -> bool) -> Result<bool, u64> {
        let n = self.g.n;
        let root = match self.candidates(self.start) {
            Some(mut c) => {
                if let Some(f) = first {
                    c.retain(|&(w, _)| w as usize == f);
                }
                c
            }
            None => return Ok(false),
        };
        let mut stack = vec![Frame { cands: root, next: 0, moved: false }];
        while let Some(frame) = stack.last_mut() {
            if frame.moved {
                frame.moved = false;
                self.pop();
            }
            if frame.next == frame.cands.len() {
                stack.pop();
                continue;
            }
            let (w, t) = frame.cands[frame.next];
            frame.next += 1;
            frame.moved = true;
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(self.nodes);
            }
            let prev = *self.path.last().expect("path holds the start") as usize;
            let w = w as usize;
            self.push(w, t);
            if !self.feasible(prev, w) {
                continue;
            }
            if self.path.len() == n {
                let closings: Vec<u32> = self.g.tokens_between(w, self.start).collect();
                for closing in closings {
                    self.path_tok.push(closing);
                    if accept(&self.path_tok) {
                        return Ok(true);
                    }
                    self.path_tok.pop();
                }
                continue;
            }
            if let Some(c) = self.candidates(w) {
                stack.push(Frame { cands: c, next: 0, moved: false });
            }
        }
        Ok(false)
    }
}

/// Per-constraint token masks and whether the count must be odd.
type UseChecks = Vec<(Vec<bool>, bool)>;

fn use_checks(steps: &[(Token, usize)], constraints: &[UseConstraint]) -> Result<UseChecks, SearchError> {
    constraints
        .iter()
        .map(|c| {
            let (name, odd) = match c {
                UseConstraint::Odd(n) => (n, true),
                UseConstraint::AtLeastOnce(n) => (n, false),
            };
            if !steps.iter().any(|(t, _)| &t.name == name) {
                return Err(SearchError::Precondition(format!("constraint names unknown generator '{name}'")));
            }
            Ok((steps.iter().map(|(t, _)| &t.name == name).collect(), odd))
        })
        .collect()
}

fn satisfies(checks: &UseChecks, toks: &[u32]) -> bool {
    checks.iter().all(|(hits, odd)| {
        let count = toks.iter().filter(|&&t| t != VIRTUAL && hits[t as usize]).count();
        if *odd {
            count % 2 == 1
        } else {
            count > 0
        }
    })
}

fn connected(csr: &Csr) -> bool {
    let mut seen = vec![false; csr.n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in csr.nbrs(v).0 {
            if !std::mem::replace(&mut seen[w as usize], true) {
                count += 1;
                stack.push(w as usize);
            }
        }
    }
    count == csr.n
}

/// Enumerate hamiltonian cycles through the identity of the graph on `g`
/// with an edge `x -- x*s` for every step `(token, s)`, until `accept`
/// approves one. Parallel edges with different tokens are distinct, so this
/// also serves quotient graphs where several generators coincide.
///
/// The returned walk is not re-verified here.
pub fn search_cycles<G: FiniteGroup + ?Sized>(
    g: &G,
    steps: &[(Token, usize)],
    opts: &SearchOptions,
    accept: &mut dyn FnMut(&Walk) -> bool,
) -> Result<Option<Walk>, SearchError> {
    let checks = use_checks(steps, &opts.constraints)?;
    let elems: Vec<usize> = steps.iter().map(|(_, s)| *s).collect();
    let csr = Csr::from_steps(g, &elems);
    if !connected(&csr) {
        return Err(SearchError::Disconnected);
    }
    let to_walk = |toks: &[u32]| -> Walk { toks.iter().map(|&t| steps[t as usize].0.clone()).collect() };
    let mut inner = |toks: &[u32]| satisfies(&checks, toks) && accept(&to_walk(toks));
    Ok(two_pass(&csr, g.identity(), None, opts.budget, &mut inner)?.map(|toks| to_walk(&toks)))
}

/// Run the search in index order on half the budget, then, if that pass
/// ran out, most-constrained-first on the rest. Each pass is exhaustive, so
/// `Ok(None)` from either is final. Returns the token path on success.
fn two_pass(
    csr: &Csr,
    start: usize,
    first: Option<usize>,
    budget: u64,
    accept: &mut dyn FnMut(&[u32]) -> bool,
) -> Result<Option<Vec<u32>>, SearchError> {
    let half = (budget / 2).max(1);
    let mut engine = Engine::new(csr, start, half, false);
    match engine.run(first, accept) {
        Ok(true) => return Ok(Some(engine.path_tok)),
        Ok(false) => return Ok(None),
        Err(_) => {}
    }
    let mut engine = Engine::new(csr, start, budget.saturating_sub(half).max(1), true);
    match engine.run(first, accept) {
        Ok(true) => Ok(Some(engine.path_tok)),
        Ok(false) => Ok(None),
        Err(_) => Err(SearchError::BudgetExceeded { budget }),
    }
}

fn graph_steps(graph: &CayleyGraph) -> Vec<(Token, usize)> {
    (0..graph.degree()).map(|k| (graph.token(k).clone(), graph.token_element(k))).collect()
}

/// Find a hamiltonian cycle through the identity, as a walk of `|G|` tokens.
/// `Ok(None)` means the search space was exhausted.
pub fn find_hamiltonian_cycle<G: FiniteGroup + ?Sized>(
    g: &G,
    graph: &CayleyGraph,
    opts: &SearchOptions,
) -> Result<Option<Walk>, SearchError> {
    if !graph.is_connected() {
        return Err(SearchError::Disconnected);
    }
    let found = search_cycles(g, &graph_steps(graph), opts, &mut |_| true)?;
    if let Some(walk) = &found {
        let report = verify_hamiltonian_cycle(g, graph.generators(), walk);
        if !report.ok {
            return Err(SearchError::Internal(format!("search produced an invalid cycle: {report}")));
        }
    }
    Ok(found)
}

/// Find a hamiltonian path from `u` to `v`, as a walk of `|G| - 1` tokens.
pub fn find_hamiltonian_path<G: FiniteGroup + ?Sized>(
    g: &G,
    graph: &CayleyGraph,
    u: usize,
    v: usize,
    opts: &SearchOptions,
) -> Result<Option<Walk>, SearchError> {
    let n = graph.order();
    if u == v {
        return Err(SearchError::Precondition("path endpoints must differ".into()));
    }
    if u >= n || v >= n {
        return Err(SearchError::Precondition("path endpoint outside the graph".into()));
    }
    if !graph.is_connected() {
        return Err(SearchError::Disconnected);
    }
    let steps = graph_steps(graph);
    let elems: Vec<usize> = steps.iter().map(|(_, s)| *s).collect();
    let csr = Csr::from_steps(g, &elems).with_virtual(u, v);
    match two_pass(&csr, n, Some(u), opts.budget, &mut |_| true)? {
        None => Ok(None),
        Some(toks) => {
            let inner = &toks[1..toks.len() - 1];
            let walk: Walk = inner.iter().map(|&t| steps[t as usize].0.clone()).collect();
            let report = verify_hamiltonian_path(g, graph.generators(), &walk, u, v);
            if !report.ok {
                return Err(SearchError::Internal(format!("search produced an invalid path: {report}")));
            }
            Ok(Some(walk))
        }
    }
}

/// Whether every pair of distinct vertices is joined by a hamiltonian path.
/// Cayley graphs are vertex-transitive and undirected, so paths from the
/// identity to every other vertex suffice.
pub fn is_hamiltonian_connected<G: FiniteGroup + ?Sized>(
    g: &G,
    graph: &CayleyGraph,
    opts: &SearchOptions,
) -> Result<bool, SearchError> {
    let n = graph.order();
    if n > HAMILTONIAN_CONNECTED_CAP {
        return Err(SearchError::CapExceeded { order: n, cap: HAMILTONIAN_CONNECTED_CAP });
    }
    if !graph.is_connected() {
        return Ok(false);
    }
    for v in 1..n {
        if find_hamiltonian_path(g, graph, 0, v, opts)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Tokens of a vertex sequence in a Cayley graph.
pub fn tokens_along(graph: &CayleyGraph, vertices: &[usize]) -> Option<Vec<Token>> {
    vertices
        .windows(2)
        .map(|w| graph.token_between(w[0], w[1]).map(|k| graph.token(k).clone()))
        .collect()
}
