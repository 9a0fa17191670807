use std::fmt;

use serde::Serialize;

use super::Walk;
use crate::cayley::GeneratorSet;
use crate::group::FiniteGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationReason {
    RepeatVertex,
    NotClosed,
    UnknownToken,
    WrongLength,
}

impl fmt::Display for ViolationReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationReason::RepeatVertex => "repeat-vertex",
            ViolationReason::NotClosed => "not-closed",
            ViolationReason::UnknownToken => "unknown-token",
            ViolationReason::WrongLength => "wrong-length",
        })
    }
}

/// Step numbers are 1-based: step `i` is the vertex reached after token `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub step: usize,
    pub reason: ViolationReason,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub length: usize,
    pub first_violation: Option<Violation>,
}

impl VerificationReport {
    fn pass(length: usize) -> Self {
        VerificationReport { ok: true, length, first_violation: None }
    }

    fn fail(length: usize, step: usize, reason: ViolationReason) -> Self {
        VerificationReport { ok: false, length, first_violation: Some(Violation { step, reason }) }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_violation {
            None => write!(f, "ok (length {})", self.length),
            Some(v) => write!(f, "FAIL at step {}: {} (length {})", v.step, v.reason, self.length),
        }
    }
}

fn resolve_all<G: FiniteGroup + ?Sized>(g: &G, gens: &GeneratorSet, walk: &Walk) -> Result<Vec<usize>, usize> {
    walk.tokens
        .iter()
        .enumerate()
        .map(|(i, t)| gens.resolve(g, t).ok_or(i + 1))
        .collect()
}

/// Check that `walk` is a hamiltonian cycle of `Cay(G; S)` starting at the
/// identity: `|G|` steps, pairwise distinct partial products, and a total
/// product equal to the identity.
pub fn verify_hamiltonian_cycle<G: FiniteGroup + ?Sized>(g: &G, gens: &GeneratorSet, walk: &Walk) -> VerificationReport {
    let len = walk.len();
    let steps = match resolve_all(g, gens, walk) {
        Ok(s) => s,
        Err(step) => return VerificationReport::fail(len, step, ViolationReason::UnknownToken),
    };
    let n = g.order();
    if len != n {
        return VerificationReport::fail(len, len.min(n), ViolationReason::WrongLength);
    }
    let mut seen = vec![false; n];
    let mut cur = g.identity();
    seen[cur] = true;
    for (i, &s) in steps.iter().enumerate() {
        cur = g.mul(cur, s);
        if i + 1 == len {
            break;
        }
        if std::mem::replace(&mut seen[cur], true) {
            return VerificationReport::fail(len, i + 1, ViolationReason::RepeatVertex);
        }
    }
    if cur != g.identity() {
        return VerificationReport::fail(len, len, ViolationReason::NotClosed);
    }
    VerificationReport::pass(len)
}

/// Check that `walk` is a hamiltonian path of `Cay(G; S)` from `from` to
/// `to`: `|G| - 1` steps visiting every element once.
pub fn verify_hamiltonian_path<G: FiniteGroup + ?Sized>(
    g: &G,
    gens: &GeneratorSet,
    walk: &Walk,
    from: usize,
    to: usize,
) -> VerificationReport {
    let len = walk.len();
    let steps = match resolve_all(g, gens, walk) {
        Ok(s) => s,
        Err(step) => return VerificationReport::fail(len, step, ViolationReason::UnknownToken),
    };
    let n = g.order();
    if len + 1 != n {
        return VerificationReport::fail(len, len.min(n), ViolationReason::WrongLength);
    }
    let mut seen = vec![false; n];
    let mut cur = from;
    seen[cur] = true;
    for (i, &s) in steps.iter().enumerate() {
        cur = g.mul(cur, s);
        if std::mem::replace(&mut seen[cur], true) {
            return VerificationReport::fail(len, i + 1, ViolationReason::RepeatVertex);
        }
    }
    if cur != to {
        return VerificationReport::fail(len, len, ViolationReason::NotClosed);
    }
    VerificationReport::pass(len)
}

/// Vertices visited by a walk from the identity, including the start.
pub fn walk_vertices<G: FiniteGroup + ?Sized>(g: &G, gens: &GeneratorSet, walk: &Walk) -> Option<Vec<usize>> {
    let mut cur = g.identity();
    let mut out = vec![cur];
    for t in &walk.tokens {
        cur = g.mul(cur, gens.resolve(g, t)?);
        out.push(cur);
    }
    Some(out)
}

/// Product of the walk's steps.
pub fn walk_product<G: FiniteGroup + ?Sized>(g: &G, gens: &GeneratorSet, walk: &Walk) -> Option<usize> {
    walk.tokens
        .iter()
        .try_fold(g.identity(), |acc, t| Some(g.mul(acc, gens.resolve(g, t)?)))
}
