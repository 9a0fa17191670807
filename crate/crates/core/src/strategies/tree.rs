//! The decision tree for order 150 and the constructions at its leaves.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::cayley::{CayleyGraph, GeneratorSet};
use crate::certificate::Provenance;
use crate::corpus::{load_corpus, CorpusEntry};
use crate::group::{generate, Element, FiniteGroup, Group, Subgroup, SubgroupView};
use crate::hamilton::{
    default_budget, find_hamiltonian_cycle, find_hamiltonian_path, search_cycles, verify_hamiltonian_cycle, SearchError, SearchOptions, Token,
    UseConstraint, Walk, WalkExpr,
};
use crate::quotient::{is_prime, QuotientContext};

use super::normalize::{match_targets, Target, TargetKind, WitnessStep};
use super::parametric::{build_parametric_walk, substitute};
use super::structure::{identify_preset, Facts};
use super::{fallback_search, CaseLabel, PROBE_BUDGET, NormalizationWitness, StrategyError, StrategyParams};

/// Every leaf of the decision tree. `*` stands for a detail tag naming the
/// canonical form that matched.
pub const DECISION_TREE: &[&[&str]] = &[
    &["P-cyclic", "KeatingWitte"],
    &["P-cyclic", "Dihedral2pqr"],
    &["G/P-abelian", "KeatingWitte"],
    &["G/P-abelian", "Case1", "NormalEasy-Z"],
    &["G/P-abelian", "Case1", "#S≠2"],
    &["G/P-abelian", "Case1", "both-nontrivial"],
    &["G/P-abelian", "Case1", "Subcase-S∩(Z2×P)=∅"],
    &["G/P-abelian", "Case1", "Subcase-a∈Z2×P"],
    &["G/P-abelian", "Case1", "Subcase-b∈P"],
    &["G/P-abelian", "Case2", "c∉Z3×P", "DoubleEdge"],
    &["G/P-abelian", "Case2", "Subcase1", "NormalEasy-p"],
    &["G/P-abelian", "Case2", "Subcase1", "DoubleEdge"],
    &["G/P-abelian", "Case2", "Subcase2", "NormalEasy-p"],
    &["G/P-abelian", "Case2", "Subcase2", "DoubleEdge"],
    &["G/P-abelian", "Case3", "Subcase-order6", "*"],
    &["G/P-abelian", "Case3", "#S=2"],
    &["G/P-abelian", "Case3", "#S=3"],
    &["G/P-nonabelian", "P-central", "KeatingWitte"],
    &["G/P-nonabelian", "Case1", "NormalEasy-notZ"],
    &["G/P-nonabelian", "Case1", "AlspachZhang"],
    &["G/P-nonabelian", "Case2", "reflection-with-Zp-part", "DoubleEdge"],
    &["G/P-nonabelian", "Case2", "NormalEasy-Z"],
    &["G/P-nonabelian", "Case2", "Subcase-⟨t0⟩=T"],
    &["G/P-nonabelian", "Case2", "Subcase-⟨t0⟩≠T", "HamConnInSubgrp"],
    &["G/P-nonabelian", "Case2", "Subcase-⟨t0⟩≠T", "DoubleEdge"],
    &["G/P-nonabelian", "Case2", "Subcase-⟨t0⟩≠T", "|fs|=3p"],
    &["G/P-nonabelian", "Case3", "#S=2", "b-rotation", "*"],
    &["G/P-nonabelian", "Case3", "#S=2", "b-reflection", "*"],
    &["G/P-nonabelian", "Case3", "#S=3", "b=t", "g=e", "*"],
    &["G/P-nonabelian", "Case3", "#S=3", "b=t", "g=t"],
    &["G/P-nonabelian", "Case3", "#S=3", "b=ft", "c=v", "*"],
    &["G/P-nonabelian", "Case3", "#S=3", "b=ft", "c=fv"],
    &["G/P-nonabelian", "Case3", "#S=3", "b=ft", "c=ft2v"],
];

/// What to do at a leaf.
#[derive(Clone, Debug)]
pub(crate) enum Action {
    /// A cited theorem covers the leaf; search stands in for its proof.
    Search,
    /// Search `G/N` for a cycle whose voltage generates `N`, then lift.
    FglSearch { n: Subgroup, constraint: Option<UseConstraint> },
    /// Search `G/N` for a cycle using `s`, then apply the double-edge lift.
    DoubleEdge { n: Subgroup, s: Token, t: Token },
    /// Match a canonical form and use its construction.
    Match { targets: Vec<Target> },
    /// FGL lift of `(c^(3p-1), f)^2` over `N`.
    C3pF { f: String, c: String, n: Subgroup },
    /// `(L, f)^2` with `L` a hamiltonian path of `<S \ {f}>` ending in `T`.
    HamConn { f: String, t: Subgroup },
    /// `(f, c^(p-1), s, c^(p-1))^(3p)`.
    Fcsc { f: String, c: String, s: String },
}

#[derive(Clone, Debug)]
pub(crate) struct Decision {
    pub case: CaseLabel,
    /// The generating set after `steps`.
    pub gens: GeneratorSet,
    pub steps: Vec<WitnessStep>,
    pub action: Action,
    pub params: StrategyParams,
}

/// Result of the case analysis, before it is wrapped in a certificate.
#[derive(Clone, Debug)]
pub(crate) struct Solved {
    pub walk: Walk,
    pub provenance: Provenance,
    pub case: CaseLabel,
    pub preset: Option<String>,
    pub witness: NormalizationWitness,
    pub params: StrategyParams,
    pub figure: Option<String>,
    pub note: Option<String>,
}

fn corpus() -> Result<&'static [CorpusEntry], StrategyError> {
    static CACHE: OnceLock<Result<Vec<CorpusEntry>, String>> = OnceLock::new();
    CACHE
        .get_or_init(|| load_corpus().map_err(|e| e.to_string()))
        .as_deref()
        .map_err(|e| StrategyError::Internal(format!("figure corpus: {e}")))
}

fn el(g: &Group, coords: &[u32]) -> usize {
    g.index(&Element(coords.to_vec())).expect("coordinates of a preset element")
}

fn figure_target(g: &Group, id: &str, tags: &[&str]) -> Result<Target, StrategyError> {
    let entry = corpus()?
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| StrategyError::Internal(format!("figure {id} is missing from the corpus")))?;
    let mut names = Vec::new();
    let mut elems = Vec::new();
    for (n, e) in &entry.cert.generators {
        names.push(n.clone());
        elems.push(g.index(e)?);
    }
    Ok(Target { names, elems, tags: tags.iter().map(|t| t.to_string()).collect(), kind: TargetKind::Figure(id.into()) })
}

fn search_leaf(case: CaseLabel, gens: &GeneratorSet) -> Decision {
    Decision { case, gens: gens.clone(), steps: Vec::new(), action: Action::Search, params: StrategyParams::default() }
}

fn leaf(case: CaseLabel, gens: &GeneratorSet, action: Action, params: StrategyParams) -> Decision {
    Decision { case, gens: gens.clone(), steps: Vec::new(), action, params }
}

fn label(tags: &[&str]) -> CaseLabel {
    CaseLabel::new(tags)
}

fn is_cyclic_prime_power(g: &Group, h: &Subgroup) -> bool {
    let n = h.order();
    let cyclic = h.members().iter().any(|&x| g.element_order(x) == n);
    let prime_power = n == 1 || (2..=n).find(|d| n % d == 0).is_some_and(|p| {
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        m == 1
    });
    cyclic && prime_power
}

/// Walk down the tree for a minimal generating set of a preset.
pub(crate) fn decide(g: &Group, facts: &Facts, gens: &GeneratorSet) -> Result<Decision, StrategyError> {
    if facts.p_cyclic {
        let tag = if is_cyclic_prime_power(g, &facts.derived) { "KeatingWitte" } else { "Dihedral2pqr" };
        return Ok(search_leaf(label(&["P-cyclic", tag]), gens));
    }
    if facts.quotient_abelian {
        if facts.derived.order() != facts.p.order() {
            return Ok(search_leaf(label(&["G/P-abelian", "KeatingWitte"]), gens));
        }
        return match facts.centralizer_p.order() {
            50 => abelian_case1(g, facts, gens),
            75 => abelian_case2(g, facts, gens),
            25 => abelian_case3(g, facts, gens),
            n => Err(StrategyError::Internal(format!("unexpected |C_G(P)| = {n}"))),
        };
    }
    match facts.centralizer_p.order() {
        150 => Ok(search_leaf(label(&["G/P-nonabelian", "P-central", "KeatingWitte"]), gens)),
        75 => {
            let inverter = (0..g.order())
                .filter(|&h| !facts.centralizer_p.contains(h))
                .any(|h| facts.p.members().iter().all(|&x| g.conj(x, h) == g.inv(x)));
            if inverter {
                let tag = if gens.elements().iter().any(|&x| facts.centralizer_p.contains(x)) {
                    "NormalEasy-notZ"
                } else {
                    "AlspachZhang"
                };
                Ok(search_leaf(label(&["G/P-nonabelian", "Case1", tag]), gens))
            } else {
                nonabelian_case2(g, facts, gens)
            }
        }
        25 => nonabelian_case3(g, facts, gens),
        n => Err(StrategyError::Internal(format!("unexpected |C_G(P)| = {n}"))),
    }
}

fn abelian_case1(g: &Group, facts: &Facts, gens: &GeneratorSet) -> Result<Decision, StrategyError> {
    let base = ["G/P-abelian", "Case1"];
    let z2 = &facts.center;
    let s = gens.elements();
    if s.iter().any(|&x| z2.contains(x)) {
        return Ok(search_leaf(label(&base).push("NormalEasy-Z"), gens));
    }
    if s.len() != 2 {
        return Ok(search_leaf(label(&base).push("#S≠2"), gens));
    }
    let even = |x: usize| g.element_order(x) % 2 == 0;
    let names = gens.names();
    if even(s[0]) && even(s[1]) {
        let action = Action::FglSearch { n: z2.clone(), constraint: None };
        return Ok(leaf(label(&base).push("both-nontrivial"), gens, action, StrategyParams::default()));
    }
    let (ai, bi) = match (even(s[0]), even(s[1])) {
        (true, false) => (0, 1),
        (false, true) => (1, 0),
        _ => return Err(StrategyError::Internal("no generator has even order".into())),
    };
    let c = &facts.centralizer_p;
    let params = StrategyParams::default()
        .element("a", g.element(s[ai]))
        .element("b", g.element(s[bi]));
    if !c.contains(s[ai]) && !c.contains(s[bi]) {
        let action = Action::FglSearch { n: z2.clone(), constraint: Some(UseConstraint::Odd(names[ai].clone())) };
        return Ok(leaf(label(&base).push("Subcase-S∩(Z2×P)=∅"), gens, action, params));
    }
    let (tag, fig) = if c.contains(s[ai]) { ("Subcase-a∈Z2×P", "xv1,y") } else { ("Subcase-b∈P", "xy,v1") };
    let targets = vec![figure_target(g, fig, &[])?];
    Ok(leaf(label(&base).push(tag), gens, Action::Match { targets }, params))
}

fn abelian_case2(g: &Group, facts: &Facts, gens: &GeneratorSet) -> Result<Decision, StrategyError> {
    let base = ["G/P-abelian", "Case2"];
    let z3 = &facts.center;
    let c = &facts.centralizer_p;
    let s = gens.elements();
    let names = gens.names();
    let three = |x: usize| g.element_order(x) % 3 == 0;
    if let Some(i) = (0..s.len()).find(|&i| three(s[i]) && !c.contains(s[i])) {
        let action = Action::DoubleEdge { n: z3.clone(), s: Token::pos(&names[i]), t: Token::neg(&names[i]) };
        let params = StrategyParams::default().element("c", g.element(s[i]));
        return Ok(leaf(label(&base).push("c∉Z3×P").push("DoubleEdge"), gens, action, params));
    }
    let ci = (0..s.len())
        .find(|&i| three(s[i]))
        .ok_or_else(|| StrategyError::Internal("no generator projects onto Z3".into()))?;
    let in_c: Vec<usize> = (0..s.len()).filter(|&i| i != ci && c.contains(s[i])).collect();
    if in_c.is_empty() {
        let sub = label(&base).push("Subcase1");
        if (0..s.len()).any(|i| i != ci && g.element_order(s[i]) == 5) {
            return Ok(search_leaf(sub.push("NormalEasy-p"), gens));
        }
        let inv: Vec<usize> = (0..s.len()).filter(|&i| i != ci && g.element_order(s[i]) == 2).collect();
        if inv.len() < 2 {
            return Err(StrategyError::Internal("expected two involutions outside C_G(P)".into()));
        }
        let (a, b) = (inv[0], inv[1]);
        let n = generate(g, &[g.mul(s[a], s[b])]);
        let action = Action::DoubleEdge { n, s: Token::pos(&names[a]), t: Token::pos(&names[b]) };
        let params = StrategyParams::default()
            .element("a", g.element(s[a]))
            .element("b", g.element(s[b]))
            .element("c", g.element(s[ci]));
        return Ok(leaf(sub.push("DoubleEdge"), gens, action, params));
    }
    let sub = label(&base).push("Subcase2");
    let bi = in_c[0];
    if facts.p.contains(s[bi]) {
        return Ok(search_leaf(sub.push("NormalEasy-p"), gens));
    }
    let b = s[bi];
    let same = facts.p.contains(g.mul(g.inv(b), s[ci]));
    let (t, bb) = if same { (Token::pos(&names[bi]), b) } else { (Token::neg(&names[bi]), g.inv(b)) };
    let n = generate(g, &[g.mul(g.inv(bb), s[ci])]);
    let action = Action::DoubleEdge { n, s: Token::pos(&names[ci]), t };
    let params = StrategyParams::default().element("b", g.element(b)).element("c", g.element(s[ci]));
    Ok(leaf(sub.push("DoubleEdge"), gens, action, params))
}

fn abelian_case3(g: &Group, facts: &Facts, gens: &GeneratorSet) -> Result<Decision, StrategyError> {
    let base = label(&["G/P-abelian", "Case3"]);
    let s = gens.elements();
    if s.iter().any(|&x| facts.order_mod_p(g, x) == 6) {
        let ids = ["(1,0)inZ6x(Z5)2", "x(1,0)inZ6x(Z5)2", "y(1,0)inZ6x(Z5)2", "xy(1,0)inZ6x(Z5)2"];
        let targets = ids.iter().map(|id| figure_target(g, id, &[id])).collect::<Result<_, _>>()?;
        return Ok(leaf(base.push("Subcase-order6"), gens, Action::Match { targets }, StrategyParams::default()));
    }
    let (tag, fig) = match s.len() {
        2 => ("#S=2", "x,y(10)"),
        3 => ("#S=3", "x,y,(10)"),
        k => return Err(StrategyError::Internal(format!("unexpected #S = {k}"))),
    };
    let targets = vec![figure_target(g, fig, &[])?];
    Ok(leaf(base.push(tag), gens, Action::Match { targets }, StrategyParams::default()))
}

fn nonabelian_case2(g: &Group, facts: &Facts, gens: &GeneratorSet) -> Result<Decision, StrategyError> {
    let base = ["G/P-nonabelian", "Case2"];
    let c = &facts.centralizer_p;
    let zp = &facts.center;
    let t = &facts.derived;
    let names = gens.names().to_vec();
    let s = gens.elements();
    let params = StrategyParams::with_p(5);
    if let Some(i) = (0..s.len()).find(|&i| !c.contains(s[i]) && g.element_order(s[i]) != 2) {
        let action = Action::DoubleEdge { n: zp.clone(), s: Token::pos(&names[i]), t: Token::neg(&names[i]) };
        let params = params.element("s", g.element(s[i]));
        return Ok(leaf(label(&base).push("reflection-with-Zp-part").push("DoubleEdge"), gens, action, params));
    }
    if s.iter().any(|&x| zp.contains(x)) {
        return Ok(search_leaf(label(&base).push("NormalEasy-Z"), gens));
    }
    let fi = (0..s.len())
        .find(|&i| !c.contains(s[i]))
        .ok_or_else(|| StrategyError::Internal("no reflection in S".into()))?;
    let f0 = el(g, &[1, 0, 0]);
    let x = (0..g.order())
        .find(|&x| g.conj(s[fi], x) == f0)
        .ok_or_else(|| StrategyError::Internal("reflection not conjugate to f".into()))?;
    let mut steps = Vec::new();
    let gens = if x == g.identity() {
        gens.clone()
    } else {
        steps.push(WitnessStep::ConjugateBy { element: g.element(x) });
        GeneratorSet::new(g, names.iter().cloned().zip(s.iter().map(|&y| g.conj(y, x))).collect())?
    };
    let s = gens.elements();
    let rot = |y: usize| g.element(y).0[1];
    let cands: Vec<usize> = (0..s.len()).filter(|&i| c.contains(s[i]) && !t.contains(s[i])).collect();
    let ci = cands
        .iter()
        .copied()
        .find(|&i| gcd(rot(s[i]), 15) == 1)
        .or_else(|| cands.first().copied())
        .ok_or_else(|| StrategyError::Internal("no generator of C_G(P) outside T".into()))?;
    let t0 = el(g, &[0, rot(s[ci]), 0]);
    let mut params = params
        .element("f", g.element(s[fi]))
        .element("c", g.element(s[ci]))
        .element("t0", g.element(t0));
    let full = generate(g, &[t0]).order() == t.order();
    let (f, cn) = (names[fi].clone(), names[ci].clone());
    if full {
        let d = Decision {
            case: label(&base).push("Subcase-⟨t0⟩=T"),
            gens,
            steps,
            action: Action::C3pF { f, c: cn, n: zp.clone() },
            params,
        };
        return Ok(d);
    }
    let sub = label(&base).push("Subcase-⟨t0⟩≠T");
    let others: Vec<usize> = (0..s.len()).filter(|&i| i != fi && i != ci).collect();
    let (case, action) = if others.iter().any(|&i| c.contains(s[i])) {
        (sub.push("HamConnInSubgrp"), Action::HamConn { f, t: t.clone() })
    } else {
        let si = *others.first().ok_or_else(|| StrategyError::Internal("#S = 2 with ⟨t0⟩ ≠ T".into()))?;
        params = params.element("s", g.element(s[si]));
        let fs = g.mul(s[fi], s[si]);
        if is_prime(g.element_order(fs)) {
            let n = generate(g, &[fs]);
            (sub.push("DoubleEdge"), Action::DoubleEdge { n, s: Token::pos(&f), t: Token::pos(&names[si]) })
        } else {
            (sub.push("|fs|=3p"), Action::Fcsc { f, c: cn, s: names[si].clone() })
        }
    };
    Ok(Decision { case, gens, steps, action, params })
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

const D6_VECTORS: [[u32; 2]; 6] = [[1, 0], [1, 1], [1, 2], [1, 3], [1, 4], [0, 1]];

fn vtag(v: [u32; 2]) -> String {
    format!("v=({},{})", v[0], v[1])
}

fn nonabelian_case3(g: &Group, facts: &Facts, gens: &GeneratorSet) -> Result<Decision, StrategyError> {
    let base = label(&["G/P-nonabelian", "Case3"]);
    let s = gens.elements();
    let rotation = s.iter().any(|&x| facts.order_mod_p(g, x) == 3);
    let strings = |v: &[&str]| v.iter().map(|t| t.to_string()).collect::<Vec<_>>();
    let (case, targets) = match (s.len(), rotation) {
        (2, true) => {
            let figs = [("10", [1, 0]), ("11", [1, 1]), ("12", [1, 2]), ("01", [0, 1])];
            let targets = figs
                .iter()
                .map(|(k, v)| figure_target(g, &format!("fInvertst+tNotCent-b=t-{k}"), &[&vtag(*v)]))
                .collect::<Result<Vec<_>, _>>()?;
            (base.push("#S=2").push("b-rotation"), targets)
        }
        (2, false) => {
            let targets = (0..3)
                .map(|l| figure_target(g, &format!("fInvertst+tNotCent-lambda={l}"), &[&format!("λ={l}")]))
                .collect::<Result<Vec<_>, _>>()?;
            (base.push("#S=2").push("b-reflection"), targets)
        }
        (3, true) => {
            let f = el(g, &[1, 0, 0, 0]);
            let t = el(g, &[0, 1, 0, 0]);
            let mut targets: Vec<Target> = D6_VECTORS
                .iter()
                .map(|&v| {
                    let kind = match v {
                        [1, 0] => TargetKind::LfLf { eps: 1 },
                        [0, 1] => TargetKind::LfLf { eps: -1 },
                        _ => TargetKind::Lt3,
                    };
                    Target {
                        names: strings(&["f", "t", "v"]),
                        elems: vec![f, t, el(g, &[0, 0, v[0], v[1]])],
                        tags: vec!["b=t".into(), "g=e".into(), vtag(v)],
                        kind,
                    }
                })
                .collect();
            targets.push(figure_target(g, "tNotCent-S=3-g=t", &["b=t", "g=t"])?);
            (base.push("#S=3"), targets)
        }
        (3, false) => {
            let f = el(g, &[1, 0, 0, 0]);
            let ft = el(g, &[1, 1, 0, 0]);
            let mut targets: Vec<Target> = D6_VECTORS
                .iter()
                .map(|&v| {
                    // r1 is the reflection without v as an eigenvector.
                    let (r1, r2) = if matches!(v, [1, 0] | [0, 1]) { ("ft", "f") } else { ("f", "ft") };
                    Target {
                        names: strings(&["f", "ft", "v"]),
                        elems: vec![f, ft, el(g, &[0, 0, v[0], v[1]])],
                        tags: vec!["b=ft".into(), "c=v".into(), vtag(v)],
                        kind: TargetKind::Reflections { r1: r1.into(), r2: r2.into() },
                    }
                })
                .collect();
            targets.push(figure_target(g, "S=3-b=ft-c=fv", &["b=ft", "c=fv"])?);
            targets.push(figure_target(g, "S=3-b=ft-c=ft2v", &["b=ft", "c=ft2v"])?);
            (base.push("#S=3"), targets)
        }
        (k, _) => return Err(StrategyError::Internal(format!("unexpected #S = {k}"))),
    };
    Ok(leaf(case, gens, Action::Match { targets }, StrategyParams::default()))
}

struct Prepared {
    preset: String,
    group: Group,
    gens: GeneratorSet,
    facts: Facts,
}

fn prepare(g: &Group, gens: &GeneratorSet) -> Result<Prepared, StrategyError> {
    if g.order() != 150 {
        return Err(StrategyError::UnsupportedOrder(g.order()));
    }
    let id = identify_preset(g)?.ok_or_else(|| StrategyError::Internal("no preset matches the group".into()))?;
    let moved: Vec<(String, usize)> =
        gens.names().iter().cloned().zip(gens.elements().iter().map(|&x| id.map[x])).collect();
    let pg = id.preset;
    let gens = GeneratorSet::new(&pg, moved)?;
    let facts = Facts::of(&pg)?;
    Ok(Prepared { preset: id.name, group: pg, gens, facts })
}

/// Leaf of the decision tree reached by a minimal generating set of an
/// order-150 group.
pub fn classify(g: &Group, gens: &GeneratorSet) -> Result<CaseLabel, StrategyError> {
    if g.order() != 150 {
        return Err(StrategyError::UnsupportedOrder(g.order()));
    }
    if !crate::group::is_minimal_generating(g, gens.elements())? {
        return Err(if crate::group::is_generating(g, gens.elements())? {
            StrategyError::NotMinimal
        } else {
            StrategyError::NotGenerating
        });
    }
    let p = prepare(g, gens)?;
    let d = decide(&p.group, &p.facts, &p.gens)?;
    match &d.action {
        Action::Match { targets } => {
            let m = match_targets(&p.group, &d.gens, targets)
                .ok_or_else(|| StrategyError::NoCanonicalForm(format!("{} in {}", d.case, p.preset)))?;
            Ok(targets[m.target].tags.iter().fold(d.case, |c, t| c.push(t.clone())))
        }
        _ => Ok(d.case),
    }
}

fn subgroup_path(
    g: &Group,
    gens: &GeneratorSet,
    within: &[&str],
    to: usize,
    budget: u64,
) -> Result<Option<Walk>, StrategyError> {
    let named: Vec<(String, usize)> =
        within.iter().map(|n| (n.to_string(), gens.element_named(n).expect("generator present"))).collect();
    let elems: Vec<usize> = named.iter().map(|(_, x)| *x).collect();
    let h = generate(g, &elems);
    let view = SubgroupView::new(g, &h);
    let local: Vec<(String, usize)> =
        named.iter().map(|(n, x)| (n.clone(), view.to_local(*x).expect("generator in its own subgroup"))).collect();
    let lgens = GeneratorSet::new(&view, local)?;
    let graph = CayleyGraph::build(&view, &lgens)?;
    let target = view.to_local(to).ok_or_else(|| StrategyError::Internal("path target outside the subgroup".into()))?;
    match find_hamiltonian_path(&view, &graph, view.to_local(g.identity()).expect("identity"), target, &SearchOptions::with_budget(budget)) {
        Ok(w) => Ok(w),
        Err(SearchError::BudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn path_from_cycle(
    g: &Group,
    gens: &GeneratorSet,
    within: &[&str],
    t: &Subgroup,
    budget: u64,
) -> Result<Option<Walk>, StrategyError> {
    let named: Vec<(String, usize)> =
        within.iter().map(|n| (n.to_string(), gens.element_named(n).expect("generator present"))).collect();
    let elems: Vec<usize> = named.iter().map(|(_, x)| *x).collect();
    let h = generate(g, &elems);
    let view = SubgroupView::new(g, &h);
    let local: Vec<(String, usize)> =
        named.iter().map(|(n, x)| (n.clone(), view.to_local(*x).expect("generator in its own subgroup"))).collect();
    let lgens = GeneratorSet::new(&view, local)?;
    let graph = CayleyGraph::build(&view, &lgens)?;
    let cycle = match find_hamiltonian_cycle(&view, &graph, &SearchOptions::with_budget(budget)) {
        Ok(Some(c)) => c,
        Ok(None) | Err(SearchError::BudgetExceeded { .. }) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let Some(i) = cycle.tokens.iter().position(|tok| {
        let x = gens.resolve(g, tok).expect("token of a generator");
        x != g.identity() && t.contains(x)
    }) else {
        return Ok(None);
    };
    let rotated = cycle.rotate(i);
    Ok(Some(Walk::new(rotated.tokens[1..].to_vec()).reverse_inverse()))
}

fn roles(pairs: &[(&str, &str)]) -> BTreeMap<String, Token> {
    pairs.iter().map(|(r, n)| (r.to_string(), Token::pos(n))).collect()
}

fn verified(g: &Group, gens: &GeneratorSet, walk: &Walk) -> bool {
    verify_hamiltonian_cycle(g, gens, walk).ok
}

/// Run the case analysis and produce a walk over the names of `gens`.
pub(crate) fn solve(g: &Group, gens: &GeneratorSet) -> Result<Solved, StrategyError> {
    let prep = prepare(g, gens)?;
    let pg = &prep.group;
    let d = decide(pg, &prep.facts, &prep.gens)?;
    let mut witness = NormalizationWitness { preset: Some(prep.preset.clone()), steps: d.steps.clone() };
    let mut params = d.params.clone();
    let mut case = d.case.clone();
    let mut figure = None;
    let mut note = None;
    let budget = default_budget();
    // The generating set in current (possibly conjugated) coordinates; the
    // walks below are over its names, which never change.
    let cur = &d.gens;
    let (walk, provenance) = match &d.action {
        Action::Search => {
            let (w, route) = fallback_search(pg, cur, budget)?;
            note = Some(route.to_string());
            (w, Provenance::SearchFallback)
        }
        Action::FglSearch { n, constraint } => {
            let q = QuotientContext::new(pg, n.clone())?;
            let mut opts = SearchOptions::with_budget(budget);
            if let Some(c) = constraint {
                opts = opts.constrain(c.clone());
            }
            let cert = q
                .search_lift(cur, &opts, &mut |_| true)?
                .ok_or_else(|| StrategyError::Internal(format!("{case}: no quotient cycle lifts")))?;
            (cert.walk, Provenance::FglConstruction)
        }
        Action::DoubleEdge { n, s, t } => {
            let q = QuotientContext::new(pg, n.clone())?;
            let opts = SearchOptions::with_budget(budget).constrain(UseConstraint::AtLeastOnce(s.name.clone()));
            let cycle = search_cycles(&q, &q.quotient_steps(cur), &opts, &mut |_| true)?
                .ok_or_else(|| StrategyError::Internal(format!("{case}: quotient has no cycle through {}", s.name)))?;
            let cert = q.double_edge_lift(&cycle, s, t, cur)?;
            (cert.walk, Provenance::FglConstruction)
        }
        Action::C3pF { f, c, n } => {
            let expr = build_parametric_walk("c3p-f", &params)?;
            let walk = substitute(&expr.flatten(), &roles(&[("f", f), ("c", c)]));
            let q = QuotientContext::new(pg, n.clone())?;
            let cert = q.fgl_lift(&walk, cur)?;
            (cert.walk, Provenance::FglConstruction)
        }
        Action::HamConn { f, t } => {
            let within: Vec<&str> = cur.names().iter().filter(|n| *n != f).map(String::as_str).collect();
            let s0: Vec<usize> = within.iter().map(|n| cur.element_named(n).expect("generator present")).collect();
            let span = generate(pg, &s0).order();
            let mut found = None;
            if 2 * span != pg.order() {
                let (w, route) = fallback_search(pg, cur, budget)?;
                note = Some(format!(
                    "<S \\ {{{f}}}> has order {span}, so G is not <{f}> ⋉ <S \\ {{{f}}}>; {route}"
                ));
                found = Some((w, Provenance::SearchFallback));
            }
            // A hamiltonian cycle of <S0> through an edge labelled by an
            // element of T gives such a path by deleting that edge.
            if found.is_none() {
                if let Some(l) = path_from_cycle(pg, cur, &within, t, budget)? {
                    let w = WalkExpr::seq(vec![WalkExpr::from_walk(&l), WalkExpr::atom(f)]).pow(2).flatten();
                    if verified(pg, cur, &w) {
                        params.walks.insert("L".into(), l);
                        found = Some((w, Provenance::ParametricWalk));
                    }
                }
            }
            // Cheap attempts at every endpoint first, then full-budget ones.
            let tries = t.members().iter().filter(|&&h| h != pg.identity());
            for (&h, b) in tries.clone().map(|h| (h, PROBE_BUDGET)).chain(tries.map(|h| (h, budget))) {
                if found.is_some() {
                    break;
                }
                let Some(l) = subgroup_path(pg, cur, &within, h, b)? else { continue };
                params.walks.insert("L".into(), l.clone());
                let w = WalkExpr::seq(vec![WalkExpr::from_walk(&l), WalkExpr::atom(f)]).pow(2).flatten();
                if verified(pg, cur, &w) {
                    params.elements.insert("h".into(), pg.element(h));
                    found = Some((w, Provenance::ParametricWalk));
                }
            }
            found.ok_or_else(|| StrategyError::Internal(format!("{case}: no path L closes up")))?
        }
        Action::Fcsc { f, c, s } => {
            let expr = build_parametric_walk("fcsc", &params)?;
            let flat = expr.flatten();
            let mut hit = None;
            'orient: for (ff, ss) in [(f, s), (s, f)] {
                for cc in [Token::pos(c), Token::neg(c)] {
                    let map: BTreeMap<String, Token> =
                        [("f".to_string(), Token::pos(ff)), ("c".to_string(), cc.clone()), ("s".to_string(), Token::pos(ss))]
                            .into_iter()
                            .collect();
                    let w = substitute(&flat, &map);
                    if verified(pg, cur, &w) {
                        hit = Some((w, format!("f = {ff}, c = {cc}, s = {ss}")));
                        break 'orient;
                    }
                }
            }
            if let Some((w, how)) = hit {
                note = Some(how);
                (w, Provenance::ParametricWalk)
            } else {
                let (w, route) = fallback_search(pg, cur, budget)?;
                note = Some(format!("(f, c^(p-1), s, c^(p-1))^(3p) is not hamiltonian here; {route}"));
                (w, Provenance::SearchFallback)
            }
        }
        Action::Match { targets } => {
            let m = match_targets(pg, cur, targets)
                .ok_or_else(|| StrategyError::NoCanonicalForm(format!("{case} in {}", prep.preset)))?;
            let target = &targets[m.target];
            for tag in &target.tags {
                case = case.push(tag.clone());
            }
            witness.steps.extend(m.steps.iter().cloned());
            let pull = NormalizationWitness { preset: None, steps: m.steps.clone() };
            let canon = pull.apply(pg, cur)?;
            let (w, prov) = match &target.kind {
                TargetKind::Figure(id) => {
                    figure = Some(id.clone());
                    let entry = corpus()?.iter().find(|e| &e.id == id).expect("figure target from the corpus");
                    (entry.cert.walk.clone(), Provenance::Figure)
                }
                TargetKind::Lt3 => {
                    let l = subgroup_path(pg, &canon, &["f", "v"], canon.element_named("v").expect("v"), budget)?
                        .ok_or_else(|| StrategyError::Internal(format!("{case}: no path e -> v in <f, v>")))?;
                    params.walks.insert("L".into(), l);
                    (build_parametric_walk("Lt3", &params)?.flatten(), Provenance::ParametricWalk)
                }
                TargetKind::LfLf { eps } => {
                    let l = subgroup_path(pg, &canon, &["t", "v"], canon.element_named("v").expect("v"), budget)?
                        .ok_or_else(|| StrategyError::Internal(format!("{case}: no path e -> v in <t, v>")))?;
                    params.walks.insert("L".into(), l);
                    params.eps = Some(*eps);
                    (build_parametric_walk("LfLf", &params)?.flatten(), Provenance::ParametricWalk)
                }
                TargetKind::Reflections { r1, r2 } => {
                    let to = canon.element_named(r1).expect("r1");
                    let l = subgroup_path(pg, &canon, &[r1, "v"], to, budget)?
                        .ok_or_else(|| StrategyError::Internal(format!("{case}: no path e -> {r1} in <{r1}, v>")))?;
                    params.walks.insert("L".into(), l);
                    let w = WalkExpr::seq(vec![WalkExpr::from_walk(&params.walks["L"]), WalkExpr::atom(r2)]).pow(3);
                    (w.flatten(), Provenance::ParametricWalk)
                }
            };
            if !verified(pg, &canon, &w) {
                return Err(StrategyError::Internal(format!("{case}: construction fails on the canonical form")));
            }
            (pull.pullback(&w), prov)
        }
    };
    Ok(Solved { walk, provenance, case, preset: Some(prep.preset), witness, params, figure, note })
}
