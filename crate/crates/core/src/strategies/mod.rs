//! The order-150 case analysis: classify `(G, S)`, bring `S` to a canonical
//! form, and produce a verified hamiltonian cycle through a figure, a lift,
//! a parametric walk, or search.

mod fallback;
mod normalize;
mod parametric;
mod structure;
mod sweep;
mod tree;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cayley::{CayleyError, GeneratorSet};
use crate::certificate::{Certificate, Provenance};
use crate::group::{generate, is_generating, Element, FiniteGroup, Group, GroupError};
use crate::hamilton::{verify_hamiltonian_cycle, SearchError, Walk};
use crate::quotient::QuotientError;

pub use fallback::{cyclic_normal_subgroups, fallback_search, FallbackRoute, PROBE_BUDGET};
pub use normalize::{normalize_genset, NormalizationWitness, WitnessStep};
pub use parametric::{build_parametric_walk, substitute, PARAMETRIC_WALKS};
pub use structure::{identify_preset, Identified};
pub use sweep::{minimal_generating_sets, reproduce, reproduce_order_150, SweepOptions, SweepRecord, SweepReport};
pub use tree::{classify, DECISION_TREE};

#[derive(Debug, Error)]
pub enum StrategyError {
    #[error("the case analysis covers groups of order 150 only, got {0}")]
    UnsupportedOrder(usize),
    #[error("generating set is not minimal")]
    NotMinimal,
    #[error("S does not generate G")]
    NotGenerating,
    #[error("no canonical form matches: {0}")]
    NoCanonicalForm(String),
    #[error("parameter constraint violated: {0}")]
    Constraint(String),
    #[error("unknown parametric walk '{0}'")]
    UnknownWalk(String),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error("internal error: {0}")]
    Internal(String),
}

impl StrategyError {
    /// Whether the failure is an exhausted search budget.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            StrategyError::Search(SearchError::BudgetExceeded { .. })
                | StrategyError::Quotient(QuotientError::Search(SearchError::BudgetExceeded { .. }))
        )
    }
}

/// Position in the decision tree, as a list of tags from the root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CaseLabel {
    pub path: Vec<String>,
}

impl CaseLabel {
    pub fn new<S: AsRef<str>>(tags: &[S]) -> Self {
        CaseLabel { path: tags.iter().map(|t| t.as_ref().to_string()).collect() }
    }

    pub fn push(mut self, tag: impl Into<String>) -> Self {
        self.path.push(tag.into());
        self
    }

    /// Whether the path is a leaf of [`DECISION_TREE`]. A `*` in the tree
    /// matches any single trailing tag.
    pub fn is_leaf(&self) -> bool {
        DECISION_TREE.iter().any(|leaf| {
            leaf.len() == self.path.len() && leaf.iter().zip(&self.path).all(|(pat, tag)| *pat == "*" || pat == tag)
        })
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.path.join(", "))
    }
}

/// Parameters of a construction: primes, small integers, a sign, and the
/// named elements and sub-walks it uses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StrategyParams {
    pub p: Option<u32>,
    pub q: Option<u32>,
    pub r: Option<u32>,
    pub i: Option<i64>,
    pub j: Option<i64>,
    pub k: Option<i64>,
    pub l: Option<i64>,
    pub lambda: Option<u32>,
    pub eps: Option<i8>,
    pub d: Option<u32>,
    /// Named elements (`a`, `b`, `c`, `s`, `v`, `z`, `t0`, ...), in coordinates.
    pub elements: BTreeMap<String, Element>,
    /// Sub-walks spliced into a parametric walk, such as the path `L`.
    #[serde(skip)]
    pub walks: BTreeMap<String, Walk>,
}

impl StrategyParams {
    pub fn with_p(p: u32) -> Self {
        StrategyParams { p: Some(p), ..Default::default() }
    }

    pub fn element(mut self, name: &str, e: Element) -> Self {
        self.elements.insert(name.to_string(), e);
        self
    }
}

/// A produced certificate with the proof branch that produced it.
#[derive(Clone, Debug)]
pub struct StrategyOutcome {
    /// Certificate for the original group and generating set.
    pub certificate: Certificate,
    pub provenance: Provenance,
    pub case: CaseLabel,
    /// Preset the group was identified with, if any.
    pub preset: Option<String>,
    pub witness: NormalizationWitness,
    pub params: StrategyParams,
    /// Surplus generators removed before the case analysis.
    pub dropped: Vec<String>,
    /// Extra detail, e.g. which search route succeeded.
    pub note: Option<String>,
}

/// Greedily drop generators that are not needed to generate `g`.
pub fn reduce_to_minimal(g: &Group, gens: &GeneratorSet) -> Result<(GeneratorSet, Vec<String>), StrategyError> {
    if !is_generating(g, gens.elements())? {
        return Err(StrategyError::NotGenerating);
    }
    let mut keep: Vec<usize> = (0..gens.len()).collect();
    let mut dropped = Vec::new();
    let mut i = 0;
    while i < keep.len() {
        let trial: Vec<usize> =
            keep.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &j)| gens.elements()[j]).collect();
        if !trial.is_empty() && generate(g, &trial).order() == g.order() {
            dropped.push(gens.names()[keep[i]].clone());
            keep.remove(i);
        } else {
            i += 1;
        }
    }
    let named = keep.iter().map(|&j| (gens.names()[j].clone(), gens.elements()[j])).collect();
    Ok((GeneratorSet::new(g, named)?, dropped))
}

/// Produce a verified hamiltonian cycle of `Cay(g; gens)`.
///
/// Order-150 groups go through the case analysis in the coordinates of the
/// matching preset; other groups go straight to search.
pub fn produce_certificate(g: &Group, gens: &GeneratorSet) -> Result<StrategyOutcome, StrategyError> {
    let (minimal, dropped) = reduce_to_minimal(g, gens)?;
    let mut outcome = if g.order() == 150 {
        tree::solve(g, &minimal)?
    } else {
        let (walk, route) = fallback_search(g, &minimal, crate::hamilton::default_budget())?;
        tree::Solved {
            walk,
            provenance: Provenance::SearchFallback,
            case: CaseLabel::new(&["generic"]),
            preset: None,
            witness: NormalizationWitness::default(),
            params: StrategyParams::default(),
            figure: None,
            note: Some(route.to_string()),
        }
    };
    let mut cert = Certificate::new(g, gens, std::mem::take(&mut outcome.walk), outcome.provenance);
    if let Some(fig) = &outcome.figure {
        cert = cert.with_figure(fig);
    }
    let report = verify_hamiltonian_cycle(g, gens, &cert.walk);
    if !report.ok {
        return Err(StrategyError::Internal(format!(
            "{} produced an invalid cycle: {report}",
            outcome.case
        )));
    }
    Ok(StrategyOutcome {
        certificate: cert,
        provenance: outcome.provenance,
        case: outcome.case,
        preset: outcome.preset,
        witness: outcome.witness,
        params: outcome.params,
        dropped,
        note: outcome.note,
    })
}
