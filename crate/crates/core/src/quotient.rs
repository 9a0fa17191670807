//! Quotients `G/N`, voltages of quotient walks, and the two lifting results:
//! the Factor Group Lemma and its double-edge corollary.

use thiserror::Error;

use crate::cayley::{CayleyError, CayleyGraph, GeneratorSet};
use crate::certificate::{Certificate, Provenance};
use crate::group::{generate, is_normal, FiniteGroup, Group, Subgroup};
use crate::hamilton::{search_cycles, verify_hamiltonian_cycle, SearchError, SearchOptions, Token, VerificationReport, Walk};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("walk is not closed in the quotient (product lies in coset {coset})")]
    NotClosed { coset: usize },
    #[error("voltage {voltage} does not generate N; lift refused")]
    LiftRefused { voltage: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

/// Voltage of a closed quotient walk: its product in `G`, which lies in `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VoltageResult {
    pub element: usize,
    pub generates_n: bool,
}

/// `G/N` for a normal subgroup `N`. Cosets are numbered in order of their
/// smallest member, so coset 0 is `N` itself.
#[derive(Clone, Debug)]
pub struct QuotientContext<'a> {
    ambient: &'a Group,
    n: Subgroup,
    coset_of: Vec<u32>,
    reps: Vec<usize>,
    table: Vec<u32>,
    inverses: Vec<u32>,
}

impl<'a> QuotientContext<'a> {
    pub fn new(ambient: &'a Group, n: Subgroup) -> Result<Self, QuotientError> {
        if !is_normal(ambient, &n) {
            return Err(QuotientError::NotNormal);
        }
        let order = ambient.order();
        let mut coset_of = vec![u32::MAX; order];
        let mut reps = Vec::with_capacity(order / n.order());
        for x in 0..order {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &m in n.members() {
                coset_of[ambient.mul(x, m)] = c;
            }
        }
        let m = reps.len();
        if m * n.order() != order {
            return Err(QuotientError::Internal("coset sizes do not add up".into()));
        }
        let mut table = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                table.push(coset_of[ambient.mul(a, b)]);
            }
        }
        let inverses = reps.iter().map(|&a| coset_of[ambient.inv(a)]).collect();
        Ok(QuotientContext { ambient, n, coset_of, reps, table, inverses })
    }

    /// Quotient by the normal subgroup generated by `gens` (not its closure).
    pub fn by_generators(ambient: &'a Group, gens: &[usize]) -> Result<Self, QuotientError> {
        Self::new(ambient, generate(ambient, gens))
    }

    pub fn ambient(&self) -> &Group {
        self.ambient
    }

    pub fn normal_subgroup(&self) -> &Subgroup {
        &self.n
    }

    pub fn project(&self, x: usize) -> usize {
        self.coset_of[x] as usize
    }

    /// Smallest member of coset `c`.
    pub fn representative(&self, c: usize) -> usize {
        self.reps[c]
    }

    pub fn coset_members(&self, c: usize) -> Vec<usize> {
        self.n.members().iter().map(|&m| self.ambient.mul(self.reps[c], m)).collect()
    }

    /// Images of the generators in `G/N`; a generator inside `N` maps to the
    /// identity coset.
    pub fn project_generators(&self, gens: &GeneratorSet) -> GeneratorSet {
        GeneratorSet::images(gens.names().to_vec(), gens.elements().iter().map(|&x| self.project(x)).collect())
    }

    /// `Cay(G/N; S)`.
    pub fn quotient_graph(&self, gens: &GeneratorSet) -> CayleyGraph {
        CayleyGraph::build_allowing_trivial(self, &self.project_generators(gens))
    }

    /// Check `walk` as a hamiltonian cycle of `Cay(G/N; S)`.
    pub fn verify_quotient_cycle(&self, walk: &Walk, gens: &GeneratorSet) -> VerificationReport {
        verify_hamiltonian_cycle(self, &self.project_generators(gens), walk)
    }

    /// Steps of the quotient multigraph: one per distinct element of
    /// `S ∪ S^-1` in `G`, mapped to its coset. Generators that agree modulo
    /// `N` give parallel edges with different voltages.
    pub fn quotient_steps(&self, gens: &GeneratorSet) -> Vec<(Token, usize)> {
        gens.signed_tokens(self.ambient)
            .into_iter()
            .map(|(t, x)| (t, self.project(x)))
            .filter(|&(_, c)| c != 0)
            .collect()
    }

    /// Search `Cay(G/N; S)` for a hamiltonian cycle whose voltage generates
    /// `N` and lift it. `extra` can reject cycles on other grounds.
    pub fn search_lift(
        &self,
        gens: &GeneratorSet,
        opts: &SearchOptions,
        extra: &mut dyn FnMut(&Walk) -> bool,
    ) -> Result<Option<Certificate>, QuotientError> {
        if !self.is_cyclic_n() {
            return Err(QuotientError::Precondition("N is not cyclic".into()));
        }
        let steps = self.quotient_steps(gens);
        let mut accept = |w: &Walk| matches!(self.voltage(w, gens), Ok(v) if v.generates_n) && extra(w);
        match search_cycles(self, &steps, opts, &mut accept)? {
            None => Ok(None),
            Some(w) => self.fgl_lift(&w, gens).map(Some),
        }
    }

    fn generates_n(&self, v: usize) -> bool {
        generate(self.ambient, &[v]).order() == self.n.order()
    }

    pub fn is_cyclic_n(&self) -> bool {
        self.n.members().iter().any(|&x| self.ambient.element_order(x) == self.n.order())
    }

    /// Product of the walk in `G`, checked to lie in `N`.
    pub fn voltage(&self, walk: &Walk, gens: &GeneratorSet) -> Result<VoltageResult, QuotientError> {
        let g = self.ambient;
        let mut v = g.identity();
        for t in &walk.tokens {
            let s = gens
                .resolve(g, t)
                .ok_or_else(|| QuotientError::Precondition(format!("unknown generator '{}'", t.name)))?;
            v = g.mul(v, s);
        }
        if !self.n.contains(v) {
            return Err(QuotientError::NotClosed { coset: self.project(v) });
        }
        Ok(VoltageResult { element: v, generates_n: self.generates_n(v) })
    }

    fn check_quotient_cycle(&self, walk: &Walk, gens: &GeneratorSet) -> Result<(), QuotientError> {
        let report = self.verify_quotient_cycle(walk, gens);
        if report.ok {
            Ok(())
        } else {
            Err(QuotientError::Precondition(format!("not a hamiltonian cycle of the quotient: {report}")))
        }
    }

    /// Factor Group Lemma: repeat a quotient hamiltonian cycle `|N|` times.
    pub fn fgl_lift(&self, quotient_cycle: &Walk, gens: &GeneratorSet) -> Result<Certificate, QuotientError> {
        self.check_quotient_cycle(quotient_cycle, gens)?;
        if !self.is_cyclic_n() {
            return Err(QuotientError::Precondition("N is not cyclic".into()));
        }
        let v = self.voltage(quotient_cycle, gens)?;
        if !v.generates_n {
            return Err(QuotientError::LiftRefused { voltage: self.ambient.label(v.element) });
        }
        self.lift_checked(quotient_cycle, gens)
    }

    fn lift_checked(&self, quotient_cycle: &Walk, gens: &GeneratorSet) -> Result<Certificate, QuotientError> {
        let lifted = quotient_cycle.repeat(self.n.order());
        let report = verify_hamiltonian_cycle(self.ambient, gens, &lifted);
        if !report.ok {
            return Err(QuotientError::Internal(format!("lift failed verification: {report}")));
        }
        Ok(Certificate::new(self.ambient, gens, lifted, Provenance::FglConstruction))
    }

    /// Double-edge corollary. `s` and `t` are distinct elements of
    /// `S ∪ S^-1` that agree modulo `N`, and `|N|` is prime. Replacing one
    /// occurrence of `s` by `t` (or `s^-1` by `t^-1`) changes the voltage, so
    /// one of the two cycles lifts.
    pub fn double_edge_lift(
        &self,
        quotient_cycle: &Walk,
        s: &Token,
        t: &Token,
        gens: &GeneratorSet,
    ) -> Result<Certificate, QuotientError> {
        let g = self.ambient;
        if !is_prime(self.n.order()) {
            return Err(QuotientError::Precondition(format!("|N| = {} is not prime", self.n.order())));
        }
        let unknown = |tok: &Token| QuotientError::Precondition(format!("unknown generator '{}'", tok.name));
        let se = gens.resolve(g, s).ok_or_else(|| unknown(s))?;
        let te = gens.resolve(g, t).ok_or_else(|| unknown(t))?;
        if se == te {
            return Err(QuotientError::Precondition("s and t are the same element".into()));
        }
        if self.project(se) != self.project(te) {
            return Err(QuotientError::Precondition("s and t differ modulo N".into()));
        }
        self.check_quotient_cycle(quotient_cycle, gens)?;
        let pos = quotient_cycle.tokens.iter().position(|x| gens.resolve(g, x) == Some(se));
        let neg = quotient_cycle.tokens.iter().position(|x| gens.resolve(g, x) == Some(g.inv(se)));
        let swapped = match (pos, neg) {
            (Some(i), _) => replace_at(quotient_cycle, i, t.clone()),
            (None, Some(i)) => replace_at(quotient_cycle, i, t.inverted()),
            (None, None) => return Err(QuotientError::Precondition("the cycle never uses s".into())),
        };
        let v1 = self.voltage(quotient_cycle, gens)?;
        let v2 = self.voltage(&swapped, gens)?;
        if v1.element == v2.element {
            return Err(QuotientError::Internal("swapping s for t left the voltage unchanged".into()));
        }
        let chosen = if v1.generates_n {
            quotient_cycle
        } else if v2.generates_n {
            &swapped
        } else {
            return Err(QuotientError::Internal("neither voltage generates N".into()));
        };
        self.lift_checked(chosen, gens)
    }
    fn cyclic_generator(&self, s: &str, gens: &GeneratorSet) -> Result<usize, QuotientError> {
        let x = gens
            .element_named(s)
            .ok_or_else(|| QuotientError::Precondition(format!("unknown generator '{s}'")))?;
        if generate(self.ambient, &[x]).members() != self.n.members() {
            return Err(QuotientError::Precondition(format!("N is not generated by {s}")));
        }
        Ok(x)
    }

    /// Directions for the coset lift of a quotient cycle: entry `i` is true
    /// when coset `i` is covered by `s^-(|N|-1)` rather than `s^(|N|-1)`.
    fn coset_directions(&self, quotient_cycle: &Walk, s: usize, gens: &GeneratorSet) -> Option<Vec<bool>> {
        let g = self.ambient;
        let steps: Vec<usize> = quotient_cycle.tokens.iter().map(|t| gens.resolve(g, t)).collect::<Option<_>>()?;
        // s^(|N|-1) = s^-1 and s^-(|N|-1) = s.
        let moves = [g.inv(s), s];
        let mut layers: Vec<std::collections::BTreeMap<usize, (usize, bool)>> = Vec::with_capacity(steps.len());
        let mut frontier = vec![g.identity()];
        for &t in &steps {
            let mut next = std::collections::BTreeMap::new();
            for &x in &frontier {
                for (dir, &m) in moves.iter().enumerate() {
                    next.entry(g.mul(g.mul(x, m), t)).or_insert((x, dir == 1));
                }
            }
            frontier = next.keys().copied().collect();
            layers.push(next);
        }
        let mut at = g.identity();
        let mut dirs = vec![false; steps.len()];
        for (i, layer) in layers.iter().enumerate().rev() {
            let &(prev, dir) = layer.get(&at)?;
            dirs[i] = dir;
            at = prev;
        }
        Some(dirs)
    }

    /// Lift a quotient cycle for `N = <s>`: cover each coset by a path of
    /// `s`-edges, choosing its direction so that the walk closes up.
    pub fn coset_lift(&self, quotient_cycle: &Walk, s: &str, gens: &GeneratorSet) -> Result<Option<Walk>, QuotientError> {
        let se = self.cyclic_generator(s, gens)?;
        self.check_quotient_cycle(quotient_cycle, gens)?;
        let Some(dirs) = self.coset_directions(quotient_cycle, se, gens) else { return Ok(None) };
        let k = self.n.order() - 1;
        let mut out = Vec::with_capacity(quotient_cycle.len() * self.n.order());
        for (t, back) in quotient_cycle.tokens.iter().zip(dirs) {
            let step = Token::new(s, back);
            out.extend(std::iter::repeat(step).take(k));
            out.push(t.clone());
        }
        let walk = Walk::new(out);
        let report = verify_hamiltonian_cycle(self.ambient, gens, &walk);
        if !report.ok {
            return Err(QuotientError::Internal(format!("coset lift failed verification: {report}")));
        }
        Ok(Some(walk))
    }

    /// Search `Cay(G/<s>; S)` for a cycle whose coset lift closes, and lift it.
    pub fn coset_search_lift(&self, s: &str, gens: &GeneratorSet, opts: &SearchOptions) -> Result<Option<Walk>, QuotientError> {
        let se = self.cyclic_generator(s, gens)?;
        let steps = self.quotient_steps(gens);
        let mut accept = |w: &Walk| self.coset_directions(w, se, gens).is_some();
        match search_cycles(self, &steps, opts, &mut accept)? {
            None => Ok(None),
            Some(w) => self.coset_lift(&w, s, gens),
        }
    }
}


fn replace_at(w: &Walk, i: usize, t: Token) -> Walk {
    let mut out = w.clone();
    out.tokens[i] = t;
    out
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl FiniteGroup for QuotientContext<'_> {
    fn order(&self) -> usize {
        self.reps.len()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.reps.len() + b] as usize
    }

    fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    fn label(&self, a: usize) -> String {
        format!("{}N", self.ambient.label(self.reps[a]))
    }
}

/// Quotient of `g` by `n`.
pub fn make_quotient(g: &Group, n: Subgroup) -> Result<QuotientContext<'_>, QuotientError> {
    QuotientContext::new(g, n)
}
