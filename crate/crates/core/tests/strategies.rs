mod common;

use cayleyham::cayley::GeneratorSet;
use cayleyham::corpus::load_corpus;
use cayleyham::group::{automorphisms, derived_subgroup, generate, is_generating, Element, FiniteGroup, Group};
use cayleyham::hamilton::{verify_hamiltonian_cycle, walk_product, Walk};
use cayleyham::quotient::QuotientContext;
use cayleyham::strategies::{
    build_parametric_walk, classify, normalize_genset, produce_certificate, StrategyParams, WitnessStep,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

fn el(g: &Group, s: &str) -> usize {
    g.index(&g.parse_element(s).unwrap()).unwrap()
}

fn gens(g: &Group, named: &[(&str, &str)]) -> GeneratorSet {
    let els: Vec<(&str, Element)> = named.iter().map(|(n, e)| (*n, g.parse_element(e).unwrap())).collect();
    GeneratorSet::from_elements(g, &els).unwrap()
}

/// Random automorphism, random inversions, shuffled order and fresh names.
fn perturb(g: &Group, s: &GeneratorSet, auts: &[cayleyham::group::Automorphism], rng: &mut ChaCha8Rng) -> GeneratorSet {
    let a = auts.choose(rng).unwrap();
    let mut elems: Vec<usize> = s
        .elements()
        .iter()
        .map(|&x| {
            let y = a.apply(x);
            if rng.gen_bool(0.5) {
                g.inv(y)
            } else {
                y
            }
        })
        .collect();
    elems.shuffle(rng);
    let mut names = ["p", "q", "r", "u", "w", "g1", "g2", "h"].map(String::from).to_vec();
    names.shuffle(rng);
    GeneratorSet::new(g, names.into_iter().zip(elems).collect()).unwrap()
}

#[test]
fn witness_pullback_round_trips() {
    let corpus = load_corpus().unwrap();
    assert_eq!(corpus.len(), 18);
    corpus.par_iter().enumerate().for_each(|(i, entry)| {
        let (g, s) = entry.cert.compile().unwrap();
        let auts = automorphisms(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
        for _ in 0..100 {
            let perturbed = perturb(&g, &s, &auts, &mut rng);
            let (canonical, witness) = normalize_genset(&g, &perturbed).unwrap();
            let preset = Group::preset(witness.preset.as_deref().unwrap()).unwrap();
            let cert = produce_certificate(&preset, &canonical).unwrap();
            let pulled = witness.pullback(&cert.certificate.walk);
            let report = verify_hamiltonian_cycle(&g, &perturbed, &pulled);
            assert!(report.ok, "{}: {report} via {witness}", entry.id);
        }
    });
}

#[test]
fn fcsc_closes_in_the_group() {
    for p in [5u32, 7] {
        let g = Group::parse(&format!("D{} x Z{p}", 6 * p)).unwrap();
        let s = gens(&g, &[("f", "(1,0,0)"), ("c", "(0,1,1)"), ("s", "(1,1,0)")]);
        let w = build_parametric_walk("fcsc", &StrategyParams::with_p(p)).unwrap().flatten();
        assert_eq!(w.len() as u32, 3 * p * 2 * p);
        assert_eq!(walk_product(&g, &s, &w), Some(g.identity()), "p = {p}");
    }
}

#[test]
fn c3p_f_is_hamiltonian_in_the_quotient() {
    for p in [5u32, 7] {
        let g = Group::parse(&format!("D{} x Z{p}", 6 * p)).unwrap();
        let s = gens(&g, &[("c", "(0,1,1)"), ("f", "(1,0,0)")]);
        let q = QuotientContext::by_generators(&g, &[el(&g, "(0,0,1)")]).unwrap();
        let w = build_parametric_walk("c3p-f", &StrategyParams::with_p(p)).unwrap().flatten();
        assert_eq!(w.len() as u32, 6 * p);
        assert!(q.verify_quotient_cycle(&w, &s).ok, "p = {p}");
        let v = q.voltage(&w, &s).unwrap();
        // voltage z^(2(3p-1))
        assert_eq!(v.element, el(&g, &format!("(0,0,{})", 2 * (3 * p - 1) % p)));
        assert!(q.fgl_lift(&w, &s).unwrap().verify().unwrap().ok);
    }
}

#[test]
fn dihedral_x_zr_voltages_differ() {
    for (q, r, p) in [(3u32, 5u32, 7u32), (5, 3, 7)] {
        let g = Group::parse(&format!("D{} x Z{r}", 2 * q * p)).unwrap();
        let s = gens(&g, &[("a", "(1,0,0)"), ("b", &format!("(1,{p},0)")), ("c", &format!("(0,{q},1)"))]);
        let quo = QuotientContext::by_generators(&g, &[el(&g, &format!("(0,{q},0)"))]).unwrap();
        assert_eq!(quo.order() as u32, 2 * q * r);
        let params = StrategyParams { q: Some(q), r: Some(r), ..Default::default() };
        let walks: Vec<Walk> = ["dihedral-x-zr", "dihedral-x-zr-swap"]
            .iter()
            .map(|n| build_parametric_walk(n, &params).unwrap().flatten())
            .collect();
        for w in &walks {
            assert!(quo.verify_quotient_cycle(w, &s).ok, "({q},{r},{p}): {}", quo.verify_quotient_cycle(w, &s));
        }
        let v: Vec<_> = walks.iter().map(|w| quo.voltage(w, &s).unwrap()).collect();
        assert_ne!(v[0].element, v[1].element, "({q},{r},{p})");
        let k = v.iter().position(|x| x.generates_n).unwrap();
        assert!(quo.fgl_lift(&walks[k], &s).unwrap().verify().unwrap().ok);
    }
}

#[test]
fn commutator_voltage_generates_derived_subgroup() {
    for (q, r, p) in [(5u32, 3u32, 7u32), (3, 5, 11)] {
        let g = Group::parse(&common::z2r_zqp(q, r, p)).unwrap();
        // |a| = rq is odd and a has order r modulo G'
        let (a, b) = (el(&g, "(2,1,0)"), el(&g, "(1,0,1)"));
        assert!(is_generating(&g, &[a, b]).unwrap());
        assert_eq!(g.element_order(a) as u32, r * q);
        let s = GeneratorSet::with_default_names(&g, &[a, b]).unwrap();
        let derived = derived_subgroup(&g);
        assert_eq!(derived.order() as u32, q * p);
        let quo = QuotientContext::new(&g, derived.clone()).unwrap();
        let w = build_parametric_walk("commutator", &StrategyParams { r: Some(r), ..Default::default() })
            .unwrap()
            .flatten();
        assert_eq!(w.len() as u32, 2 * r);
        assert!(quo.verify_quotient_cycle(&w, &s).ok);
        let expected = g.commutator(g.pow(a, (r - 1) as i64), b);
        assert_eq!(walk_product(&g, &s, &w), Some(expected));
        assert_eq!(generate(&g, &[expected]).members(), derived.members());
        let cert = quo.fgl_lift(&w, &s).unwrap();
        assert_eq!(cert.walk.len(), g.order());
        assert!(cert.verify().unwrap().ok);
    }
}

#[test]
fn classification_examples() {
    let g = Group::preset("G150_CYCLIC").unwrap();
    let s = GeneratorSet::with_default_names(&g, &[1]).unwrap();
    assert_eq!(classify(&g, &s).unwrap().path[0], "P-cyclic");

    let g = Group::preset("G150_ABELIAN_QUOT").unwrap();
    let label = classify(&g, &gens(&g, &[("a", "(1,0,1,0)"), ("b", "(0,1,0,0)")])).unwrap();
    assert_eq!(label.path[..3], ["G/P-abelian", "Case1", "Subcase-a∈Z2×P"], "{label}");

    let g = Group::preset("G150_D6").unwrap();
    let label = classify(&g, &gens(&g, &[("f", "(1,0,1,0)"), ("t", "(0,1,0,0)")])).unwrap();
    assert_eq!(label.path[..5], ["G/P-nonabelian", "Case3", "#S=2", "b-rotation", "v=(1,0)"], "{label}");

    let s = gens(&g, &[("f", "(1,0,1,0)"), ("t", "(0,1,0,0)"), ("u", "(0,0,1,0)")]);
    assert!(classify(&g, &s).is_err());
    assert!(classify(&Group::parse("Z6").unwrap(), &GeneratorSet::with_default_names(&Group::parse("Z6").unwrap(), &[1]).unwrap()).is_err());
}

fn sorted(xs: &[usize]) -> Vec<usize> {
    let mut v = xs.to_vec();
    v.sort();
    v
}

#[test]
fn normalization_examples() {
    let g = Group::preset("G150_D6").unwrap();
    let (canon, witness) = normalize_genset(&g, &gens(&g, &[("f", "(1,0,2,0)"), ("t", "(0,1,0,0)")])).unwrap();
    assert!(witness.steps.contains(&WitnessStep::ScalarMultiplyCoordinate { scalar: 3 }), "{witness}");
    assert_eq!(sorted(canon.elements()), sorted(&[el(&g, "(1,0,1,0)"), el(&g, "(0,1,0,0)")]), "{witness}");

    let (canon, witness) = normalize_genset(&g, &gens(&g, &[("f", "(1,0,1,1)"), ("t", "(0,1,0,0)")])).unwrap();
    assert_eq!(sorted(canon.elements()), sorted(&[el(&g, "(1,0,1,1)"), el(&g, "(0,1,0,0)")]), "{witness}");

    let g = Group::preset("G150_ABELIAN_QUOT").unwrap();
    let xv1 = el(&g, "(1,0,1,0)");
    let s = GeneratorSet::new(&g, vec![("a".into(), g.inv(xv1)), ("b".into(), el(&g, "(0,1,0,0)"))]).unwrap();
    let (canon, witness) = normalize_genset(&g, &s).unwrap();
    assert!(witness.steps.contains(&WitnessStep::InvertGenerator { name: "a".into() }), "{witness}");
    assert!(canon.elements().contains(&xv1));
}

#[test]
fn non_minimal_sets_are_reduced_first() {
    let g = Group::preset("G150_D6").unwrap();
    let s = gens(&g, &[("f", "(1,0,1,0)"), ("t", "(0,1,0,0)"), ("u", "(0,0,1,0)")]);
    let out = produce_certificate(&g, &s).unwrap();
    assert_eq!(out.dropped.len(), 1);
    assert!(verify_hamiltonian_cycle(&g, &s, &out.certificate.walk).ok);
}
