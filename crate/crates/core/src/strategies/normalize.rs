//! Canonical forms of generating sets and the witnesses that relate them.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::cayley::GeneratorSet;
use crate::group::{extend_homomorphism, Element, FiniteGroup, Group};
use crate::hamilton::{Token, Walk};

use super::structure::{identify_preset, Facts};
use super::{tree, StrategyError};

/// One step of a normalization, applied to a generating set in preset
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum WitnessStep {
    /// Replace a generator by its inverse.
    InvertGenerator { name: String },
    /// Conjugate every generator: `x -> element^-1 x element`.
    ConjugateBy { element: Element },
    /// Multiply the Sylow 5-coordinates by a scalar.
    ScalarMultiplyCoordinate { scalar: u32 },
    /// An automorphism given by the images of the current generators.
    ApplyAutomorphism { images: Vec<(String, Element)> },
    /// Simultaneous renaming, `(from, to)` pairs.
    Rename { pairs: Vec<(String, String)> },
}

impl fmt::Display for WitnessStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessStep::InvertGenerator { name } => write!(f, "invert {name}"),
            WitnessStep::ConjugateBy { element } => write!(f, "conjugate by {element}"),
            WitnessStep::ScalarMultiplyCoordinate { scalar } => write!(f, "scale P by {scalar}"),
            WitnessStep::ApplyAutomorphism { images } => {
                let parts: Vec<String> = images.iter().map(|(n, e)| format!("{n}->{e}")).collect();
                write!(f, "automorphism {}", parts.join(" "))
            }
            WitnessStep::Rename { pairs } => {
                let parts: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}->{b}")).collect();
                write!(f, "rename {}", parts.join(" "))
            }
        }
    }
}

/// Steps taking a generating set to its canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NormalizationWitness {
    /// Preset whose coordinates the steps act in.
    pub preset: Option<String>,
    pub steps: Vec<WitnessStep>,
}

impl fmt::Display for NormalizationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return f.write_str("identity");
        }
        let parts: Vec<String> = self.steps.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

/// Multiply the last two coordinates by `lambda` mod 5, if that is an
/// automorphism of `g`.
pub(crate) fn scalar_map(g: &Group, lambda: u32) -> Option<Vec<usize>> {
    let r = g.radices();
    let n = r.len();
    if n < 2 || r[n - 1] != 5 || r[n - 2] != 5 {
        return None;
    }
    let map: Vec<usize> = (0..g.order())
        .map(|x| {
            let mut e = g.element(x);
            e.0[n - 1] = e.0[n - 1] * lambda % 5;
            e.0[n - 2] = e.0[n - 2] * lambda % 5;
            g.index(&e).expect("coordinates stay in range")
        })
        .collect();
    let gens = g.standard_generators();
    let images: Vec<usize> = gens.iter().map(|&s| map[s]).collect();
    (extend_homomorphism(g, gens, g, &images)? == map).then_some(map)
}

impl NormalizationWitness {
    /// Apply the steps to a generating set in preset coordinates.
    pub fn apply(&self, g: &Group, gens: &GeneratorSet) -> Result<GeneratorSet, StrategyError> {
        let mut named: Vec<(String, usize)> =
            gens.names().iter().cloned().zip(gens.elements().iter().copied()).collect();
        for step in &self.steps {
            match step {
                WitnessStep::InvertGenerator { name } => {
                    let slot = named
                        .iter_mut()
                        .find(|(n, _)| n == name)
                        .ok_or_else(|| StrategyError::Internal(format!("witness names unknown generator {name}")))?;
                    slot.1 = g.inv(slot.1);
                }
                WitnessStep::ConjugateBy { element } => {
                    let x = g.index(element)?;
                    for slot in &mut named {
                        slot.1 = g.conj(slot.1, x);
                    }
                }
                WitnessStep::ScalarMultiplyCoordinate { scalar } => {
                    let map = scalar_map(g, *scalar).ok_or_else(|| {
                        StrategyError::Internal(format!("scaling by {scalar} is not an automorphism"))
                    })?;
                    for slot in &mut named {
                        slot.1 = map[slot.1];
                    }
                }
                WitnessStep::ApplyAutomorphism { images } => {
                    for (name, e) in images {
                        let slot = named.iter_mut().find(|(n, _)| n == name).ok_or_else(|| {
                            StrategyError::Internal(format!("witness names unknown generator {name}"))
                        })?;
                        slot.1 = g.index(e)?;
                    }
                }
                WitnessStep::Rename { pairs } => {
                    let map: BTreeMap<&str, &str> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
                    for slot in &mut named {
                        if let Some(to) = map.get(slot.0.as_str()) {
                            slot.0 = to.to_string();
                        }
                    }
                }
            }
        }
        Ok(GeneratorSet::new(g, named)?)
    }

    /// Carry a walk over the canonical generators back to the original ones.
    pub fn pullback(&self, walk: &Walk) -> Walk {
        walk.tokens.iter().map(|t| self.pull_token(t)).collect()
    }

    fn pull_token(&self, t: &Token) -> Token {
        let mut t = t.clone();
        for step in self.steps.iter().rev() {
            match step {
                WitnessStep::Rename { pairs } => {
                    if let Some((from, _)) = pairs.iter().find(|(_, to)| *to == t.name) {
                        t.name = from.clone();
                    }
                }
                WitnessStep::InvertGenerator { name } if *name == t.name => t = t.inverted(),
                _ => {}
            }
        }
        t
    }
}

/// A canonical generating set, in preset coordinates.
#[derive(Clone, Debug)]
pub(crate) struct Target {
    pub names: Vec<String>,
    pub elems: Vec<usize>,
    /// Tags appended to the case label when this target matches.
    pub tags: Vec<String>,
    pub kind: TargetKind,
}

#[derive(Clone, Debug)]
pub(crate) enum TargetKind {
    Figure(String),
    /// `(L, t)^3` with `L` a path `e -> v` in `<f, v>`.
    Lt3,
    /// `(L, f, L^(-eps), f)` with `L` a path `e -> v` in `<t, v>`.
    LfLf { eps: i8 },
    /// `(L, r2)^3` with `L` a path `e -> r1` in `<r1, v>`.
    Reflections { r1: String, r2: String },
}

/// A successful match of `S` against one of the targets.
#[derive(Clone, Debug)]
pub(crate) struct Matched {
    pub target: usize,
    pub steps: Vec<WitnessStep>,
}

/// Search for a relabelling, inversion pattern and automorphism taking `S`
/// to one of the targets. Identity and scalar maps are preferred to
/// conjugations, and those to general automorphisms; fewer inversions win
/// ties.
pub(crate) fn match_targets(g: &Group, gens: &GeneratorSet, targets: &[Target]) -> Option<Matched> {
    let k = gens.len();
    let src0 = gens.elements();
    let orders: Vec<usize> = src0.iter().map(|&x| g.element_order(x)).collect();
    let scalars: Vec<(u32, Vec<usize>)> = (2..5).filter_map(|l| scalar_map(g, l).map(|m| (l, m))).collect();
    let mut best: Option<((u8, u32), Matched)> = None;
    for (ti, t) in targets.iter().enumerate() {
        if t.elems.len() != k {
            continue;
        }
        for perm in (0..k).permutations(k) {
            let dst: Vec<usize> = perm.iter().map(|&j| t.elems[j]).collect();
            if (0..k).any(|i| g.element_order(dst[i]) != orders[i]) {
                continue;
            }
            for mask in 0u32..(1 << k) {
                let src: Vec<usize> =
                    (0..k).map(|i| if mask >> i & 1 == 1 { g.inv(src0[i]) } else { src0[i] }).collect();
                if mask != 0 && (0..k).any(|i| mask >> i & 1 == 1 && src[i] == src0[i]) {
                    continue;
                }
                let class = if src == dst {
                    Some((0u8, None))
                } else if let Some((l, _)) = scalars.iter().find(|(_, m)| (0..k).all(|i| m[src[i]] == dst[i])) {
                    Some((1, Some(WitnessStep::ScalarMultiplyCoordinate { scalar: *l })))
                } else if let Some(x) = (0..g.order()).find(|&x| (0..k).all(|i| g.conj(src[i], x) == dst[i])) {
                    Some((2, Some(WitnessStep::ConjugateBy { element: g.element(x) })))
                } else {
                    extend_homomorphism(g, &src, g, &dst).filter(|m| is_bijective(m)).map(|_| {
                        let images = (0..k).map(|i| (gens.names()[i].clone(), g.element(dst[i]))).collect();
                        (3, Some(WitnessStep::ApplyAutomorphism { images }))
                    })
                };
                let Some((cls, step)) = class else { continue };
                let score = (cls, mask.count_ones());
                if best.as_ref().is_some_and(|(s, _)| *s <= score) {
                    continue;
                }
                let mut steps: Vec<WitnessStep> = (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| WitnessStep::InvertGenerator { name: gens.names()[i].clone() })
                    .collect();
                steps.extend(step);
                let pairs: Vec<(String, String)> = (0..k)
                    .map(|i| (gens.names()[i].clone(), t.names[perm[i]].clone()))
                    .filter(|(a, b)| a != b)
                    .collect();
                if !pairs.is_empty() {
                    steps.push(WitnessStep::Rename { pairs });
                }
                best = Some((score, Matched { target: ti, steps }));
                if score == (0, 0) {
                    return best.map(|(_, m)| m);
                }
            }
        }
    }
    best.map(|(_, m)| m)
}

fn is_bijective(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    map.iter().all(|&y| y < seen.len() && !std::mem::replace(&mut seen[y], true))
}

/// Bring a minimal generating set of an order-150 group to its canonical
/// form. The result is in the coordinates of the matching preset; the
/// witness records the preset and the steps from the transported set.
pub fn normalize_genset(g: &Group, gens: &GeneratorSet) -> Result<(GeneratorSet, NormalizationWitness), StrategyError> {
    if g.order() != 150 {
        return Err(StrategyError::UnsupportedOrder(g.order()));
    }
    let id = identify_preset(g)?.ok_or_else(|| StrategyError::Internal("no preset matches the group".into()))?;
    let pg = &id.preset;
    let moved = GeneratorSet::new(pg, gens.names().iter().cloned().zip(gens.elements().iter().map(|&x| id.map[x])).collect())?;
    let facts = Facts::of(pg)?;
    let decision = tree::decide(pg, &facts, &moved)?;
    let mut witness = NormalizationWitness { preset: Some(id.name.clone()), steps: decision.steps.clone() };
    if let tree::Action::Match { targets } = &decision.action {
        let m = match_targets(pg, &decision.gens, targets)
            .ok_or_else(|| StrategyError::NoCanonicalForm(decision.case.to_string()))?;
        witness.steps.extend(m.steps);
    }
    let canonical = witness.apply(pg, &moved)?;
    Ok((canonical, witness))
}
