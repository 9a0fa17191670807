//! Search used where the case analysis defers to a cited theorem.

use std::fmt;

use crate::cayley::{CayleyGraph, GeneratorSet};
use crate::group::{generate, is_normal, FiniteGroup, Group, Subgroup};
use crate::hamilton::{find_hamiltonian_cycle, SearchError, SearchOptions, Walk};
use crate::quotient::{QuotientContext, QuotientError};

use super::StrategyError;

/// Node budget of the first, cheap direct attempt and of each quotient attempt.
pub const PROBE_BUDGET: u64 = 200_000;

/// How the fallback found its cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FallbackRoute {
    Direct,
    Lift { n_order: usize },
    Cosets { generator: String, n_order: usize },
}

impl fmt::Display for FallbackRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FallbackRoute::Direct => f.write_str("direct search"),
            FallbackRoute::Lift { n_order } => write!(f, "quotient search lifted over a cyclic normal subgroup of order {n_order}"),
            FallbackRoute::Cosets { generator, n_order } => {
                write!(f, "quotient search by <{generator}> (order {n_order}) lifted along {generator}-cosets")
            }
        }
    }
}

/// Nontrivial proper cyclic normal subgroups, largest first.
pub fn cyclic_normal_subgroups(g: &Group) -> Vec<Subgroup> {
    let mut out: Vec<Subgroup> = Vec::new();
    for x in 1..g.order() {
        let h = generate(g, &[x]);
        if h.order() == g.order() || out.iter().any(|k| k.members() == h.members()) {
            continue;
        }
        if is_normal(g, &h) {
            out.push(h);
        }
    }
    out.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.members().cmp(b.members())));
    out
}

/// Direct search with a small budget; then, for a generator `s` with
/// `<s>` normal, a search of `G/<s>` lifted along `s`-cosets; then a
/// quotient search lifted by the Factor Group Lemma for each cyclic normal
/// subgroup; then direct search with the full budget.
pub fn fallback_search(g: &Group, gens: &GeneratorSet, budget: u64) -> Result<(Walk, FallbackRoute), StrategyError> {
    let graph = CayleyGraph::build(g, gens)?;
    let probe = budget.min(PROBE_BUDGET);
    match find_hamiltonian_cycle(g, &graph, &SearchOptions::with_budget(probe)) {
        Ok(Some(w)) => return Ok((w, FallbackRoute::Direct)),
        Ok(None) => return Err(StrategyError::Internal("the Cayley graph has no hamiltonian cycle".into())),
        Err(SearchError::BudgetExceeded { .. }) => {}
        Err(e) => return Err(e.into()),
    }
    for (name, &x) in gens.names().iter().zip(gens.elements()) {
        let n = generate(g, &[x]);
        if n.order() == g.order() || !is_normal(g, &n) {
            continue;
        }
        let q = QuotientContext::new(g, n.clone())?;
        match q.coset_search_lift(name, gens, &SearchOptions::with_budget(probe)) {
            Ok(Some(w)) => return Ok((w, FallbackRoute::Cosets { generator: name.clone(), n_order: n.order() })),
            Ok(None) => {}
            Err(QuotientError::Search(SearchError::BudgetExceeded { .. } | SearchError::Disconnected)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    for n in cyclic_normal_subgroups(g) {
        let q = QuotientContext::new(g, n.clone())?;
        match q.search_lift(gens, &SearchOptions::with_budget(probe), &mut |_| true) {
            Ok(Some(cert)) => return Ok((cert.walk, FallbackRoute::Lift { n_order: n.order() })),
            Ok(None) => {}
            Err(QuotientError::Search(SearchError::BudgetExceeded { .. } | SearchError::Disconnected)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    match find_hamiltonian_cycle(g, &graph, &SearchOptions::with_budget(budget))? {
        Some(w) => Ok((w, FallbackRoute::Direct)),
        None => Err(StrategyError::Internal("the Cayley graph has no hamiltonian cycle".into())),
    }
}
