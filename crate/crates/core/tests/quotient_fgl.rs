mod common;

use cayleyham::cayley::GeneratorSet;
use cayleyham::group::{generate, is_generating, is_normal, Element, FiniteGroup, Group};
use cayleyham::hamilton::{search_cycles, verify_hamiltonian_cycle, SearchOptions, Token, Walk};
use cayleyham::quotient::{QuotientContext, QuotientError};
use cayleyham::strategies::{build_parametric_walk, StrategyParams};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn el(g: &Group, s: &str) -> usize {
    g.index(&g.parse_element(s).unwrap()).unwrap()
}

fn gens(g: &Group, named: &[(&str, &str)]) -> GeneratorSet {
    let els: Vec<(&str, Element)> = named.iter().map(|(n, e)| (*n, g.parse_element(e).unwrap())).collect();
    GeneratorSet::from_elements(g, &els).unwrap()
}

const FGL_GROUPS: &[&str] = &[
    "D18",
    "Z3 x D6",
    "Q20",
    "Z4 ltimes Z5 via unit 2",
    "Z2 x (Z3 ltimes Z2^2 via matrix 2 [[0,1],[1,1]])",
    "Z3 x Q8",
    "Z6 ltimes Z7 via unit 3",
    "Z3 ltimes Z7 via unit 2",
    "Z3 x D10",
    "D30",
    "D42",
    "Z2 x D10",
    "Z2^2 x D6",
    "Z5 x D8",
    "Q24",
    "Z2 ltimes Z5^2 via matrix 5 [[4,0],[0,4]]",
    "Z6 ltimes (Z3 x Z7) via images [(2,0),(0,6)]",
];

fn prime_normal_subgroups(g: &Group) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    let mut seen = Vec::new();
    for x in 1..g.order() {
        let o = g.element_order(x);
        if !(2..o).all(|d| o % d != 0) {
            continue;
        }
        let h = generate(g, &[x]);
        if seen.contains(&h.members().to_vec()) || !is_normal(g, &h) || g.order() / o < 3 {
            continue;
        }
        seen.push(h.members().to_vec());
        out.push(x);
    }
    out
}

fn random_generating_set(g: &Group, rng: &mut ChaCha8Rng) -> Vec<usize> {
    loop {
        let k = rng.gen_range(2..=4);
        let mut s: Vec<usize> = (1..g.order()).collect();
        s.shuffle(rng);
        s.truncate(k);
        if is_generating(g, &s).unwrap() {
            return s;
        }
    }
}

/// Up to `k` hamiltonian cycles of `Cay(G/N; S)`, found by search.
fn quotient_cycles(q: &QuotientContext, s: &GeneratorSet, k: usize) -> Vec<Walk> {
    let mut found = Vec::new();
    let steps = q.quotient_steps(s);
    let _ = search_cycles(q, &steps, &SearchOptions::with_budget(2_000_000), &mut |w| {
        found.push(w.clone());
        found.len() >= k
    });
    found
}

#[test]
fn lift_verifies_iff_voltage_generates_n() {
    let mut rng = ChaCha8Rng::seed_from_u64(48);
    let groups: Vec<Group> = common::small::SMALL_GROUPS
        .iter()
        .chain(FGL_GROUPS)
        .map(|s| Group::parse(s).unwrap())
        .filter(|g| g.order() <= 48 && !prime_normal_subgroups(g).is_empty())
        .collect();
    let (mut instances, mut lifted, mut refused) = (0, 0, 0);
    while instances < 240 {
        let g = groups.choose(&mut rng).unwrap();
        let ns = prime_normal_subgroups(g);
        let n = *ns.choose(&mut rng).unwrap();
        let q = QuotientContext::by_generators(g, &[n]).unwrap();
        let elems = random_generating_set(g, &mut rng);
        let s = GeneratorSet::with_default_names(g, &elems).unwrap();
        for w in quotient_cycles(&q, &s, 3) {
            instances += 1;
            assert!(q.verify_quotient_cycle(&w, &s).ok);
            let v = q.voltage(&w, &s).unwrap();
            assert_eq!(v.generates_n, v.element != g.identity(), "|N| is prime");
            let lift = w.repeat(q.normal_subgroup().order());
            let lift_ok = verify_hamiltonian_cycle(g, &s, &lift).ok;
            assert_eq!(lift_ok, v.generates_n, "{} with {elems:?}, N = <{}>, cycle {w}", g.spec_text(), g.label(n));
            match q.fgl_lift(&w, &s) {
                Ok(cert) => {
                    assert!(v.generates_n);
                    assert!(cert.verify().unwrap().ok);
                    lifted += 1;
                }
                Err(QuotientError::LiftRefused { .. }) => {
                    assert!(!v.generates_n);
                    refused += 1;
                }
                Err(e) => panic!("unexpected {e}"),
            }
        }
    }
    eprintln!("{instances} instances: {lifted} lifted, {refused} refused");
    assert!(lifted > 0 && refused > 0, "lifted {lifted}, refused {refused}");
}

#[test]
fn voltage_of_c14_f_squared() {
    let g = Group::preset("G150_D30_Z5").unwrap();
    let s = gens(&g, &[("c", "(0,1,1)"), ("f", "(1,0,0)")]);
    let q = QuotientContext::by_generators(&g, &[el(&g, "(0,0,1)")]).unwrap();
    assert_eq!(q.order(), 30);
    let w = build_parametric_walk("c3p-f", &StrategyParams::with_p(5)).unwrap().flatten();
    assert_eq!(w.len(), 30);
    assert!(q.verify_quotient_cycle(&w, &s).ok);
    let v = q.voltage(&w, &s).unwrap();
    // z^(2(3p-1)) = z^28 = z^3
    assert_eq!(v.element, el(&g, "(0,0,3)"));
    assert_eq!(28 % 5, 3);
    assert!(v.generates_n);
    let cert = q.fgl_lift(&w, &s).unwrap();
    assert_eq!(cert.walk.len(), 150);
    assert!(cert.verify().unwrap().ok);
}

#[test]
fn dihedral_x_zr_cycles_have_different_voltages() {
    let g = Group::parse("D42 x Z5").unwrap();
    assert_eq!(g.order(), 210);
    let s = gens(&g, &[("a", "(1,0,0)"), ("b", "(1,7,0)"), ("c", "(0,3,1)")]);
    let q = QuotientContext::by_generators(&g, &[el(&g, "(0,3,0)")]).unwrap();
    assert_eq!(q.order(), 30);
    let params = StrategyParams { q: Some(3), r: Some(5), ..Default::default() };
    let w1 = build_parametric_walk("dihedral-x-zr", &params).unwrap().flatten();
    let w2 = build_parametric_walk("dihedral-x-zr-swap", &params).unwrap().flatten();
    assert!(q.verify_quotient_cycle(&w1, &s).ok, "{}", q.verify_quotient_cycle(&w1, &s));
    assert!(q.verify_quotient_cycle(&w2, &s).ok, "{}", q.verify_quotient_cycle(&w2, &s));
    let (v1, v2) = (q.voltage(&w1, &s).unwrap(), q.voltage(&w2, &s).unwrap());
    assert_ne!(v1.element, v2.element);
    let good = if v1.generates_n { &w1 } else { &w2 };
    assert!(v1.generates_n || v2.generates_n);
    let cert = q.fgl_lift(good, &s).unwrap();
    assert_eq!(cert.walk.len(), 210);
    assert!(cert.verify().unwrap().ok);
}

#[test]
fn ab5_walk_lifts_at_p_7() {
    let g = Group::parse("Z6 ltimes (Z5 x Z7) via images [(4,0),(0,3)]").unwrap();
    assert_eq!(g.order(), 210);
    let s = gens(&g, &[("a", "(3,0,0)"), ("b", "(1,1,1)")]);
    let q = QuotientContext::by_generators(&g, &[el(&g, "(0,0,1)")]).unwrap();
    let w = build_parametric_walk("ab5", &StrategyParams::default()).unwrap().flatten();
    assert_eq!(w.len(), 30);
    let v = q.voltage(&w, &s).unwrap();
    assert!(q.verify_quotient_cycle(&w, &s).ok);
    assert_ne!(v.element, g.identity());
    assert!(q.fgl_lift(&w, &s).unwrap().verify().unwrap().ok);
}

#[test]
fn cyclic_group_of_order_9() {
    let g = Group::parse("Z9").unwrap();
    let q = QuotientContext::by_generators(&g, &[3]).unwrap();
    let s = GeneratorSet::with_default_names(&g, &[1]).unwrap();
    let w = Walk::parse("a a a").unwrap();
    let v = q.voltage(&w, &s).unwrap();
    assert_eq!((v.element, v.generates_n), (3, true));
    assert_eq!(q.fgl_lift(&w, &s).unwrap().walk, w.repeat(3));

    // 1 and 4 agree modulo <3>; swapping one edge changes the voltage
    let s = GeneratorSet::with_default_names(&g, &[1, 4]).unwrap();
    let swapped = Walk::parse("b a a").unwrap();
    assert_ne!(q.voltage(&w, &s).unwrap().element, q.voltage(&swapped, &s).unwrap().element);
    let cert = q.double_edge_lift(&w, &Token::pos("a"), &Token::pos("b"), &s).unwrap();
    assert!(cert.verify().unwrap().ok);
}

#[test]
fn non_normal_and_unclosed_inputs_are_rejected() {
    let g = Group::parse("D10").unwrap();
    let flip = el(&g, "(1,0)");
    assert!(matches!(QuotientContext::by_generators(&g, &[flip]), Err(QuotientError::NotNormal)));
    let q = QuotientContext::by_generators(&g, &[el(&g, "(0,1)")]).unwrap();
    let s = gens(&g, &[("f", "(1,0)"), ("t", "(0,1)")]);
    assert!(matches!(q.voltage(&Walk::parse("f").unwrap(), &s), Err(QuotientError::NotClosed { .. })));
    // f f has trivial voltage, so the lift is refused
    assert!(matches!(q.fgl_lift(&Walk::parse("f f").unwrap(), &s), Err(QuotientError::LiftRefused { .. })));
}

#[test]
fn quotient_projection_is_a_homomorphism() {
    for spec in FGL_GROUPS {
        let g = Group::parse(spec).unwrap();
        for n in prime_normal_subgroups(&g) {
            let q = QuotientContext::by_generators(&g, &[n]).unwrap();
            assert_eq!(q.order() * q.normal_subgroup().order(), g.order());
            for a in (0..g.order()).step_by(3) {
                for b in (0..g.order()).step_by(5) {
                    assert_eq!(q.project(g.mul(a, b)), q.mul(q.project(a), q.project(b)), "{spec}");
                }
            }
        }
    }
}
