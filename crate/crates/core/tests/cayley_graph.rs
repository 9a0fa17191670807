mod common;

use cayleyham::cayley::{CayleyError, CayleyGraph, GeneratorSet};
use cayleyham::group::{is_generating, Element, FiniteGroup, Group};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gens(g: &Group, named: &[(&str, &str)]) -> GeneratorSet {
    let els: Vec<(&str, Element)> = named.iter().map(|(n, e)| (*n, g.parse_element(e).unwrap())).collect();
    GeneratorSet::from_elements(g, &els).unwrap()
}

#[test]
fn five_cycle() {
    let g = Group::parse("Z5").unwrap();
    let graph = CayleyGraph::build(&g, &gens(&g, &[("a", "(1)")])).unwrap();
    assert_eq!(graph.order(), 5);
    assert_eq!(graph.degree(), 2);
    assert!(graph.is_connected());
    let mut dot = Vec::new();
    graph.export_dot(&g, &mut dot).unwrap();
    let dot = String::from_utf8(dot).unwrap();
    assert_eq!(dot.lines().filter(|l| l.contains("--")).count(), 5);
    assert_eq!(dot.lines().filter(|l| l.contains("[label=") && !l.contains("--")).count(), 5);
}

#[test]
fn figure_generators_have_degree_four() {
    let g = Group::preset("G150_ABELIAN_QUOT").unwrap();
    let graph = CayleyGraph::build(&g, &gens(&g, &[("a", "(1,0,1,0)"), ("b", "(0,1,0,0)")])).unwrap();
    assert_eq!(graph.order(), 150);
    assert_eq!(graph.degree(), 4);
    assert!(graph.is_connected());
    let mut dot = Vec::new();
    graph.export_dot(&g, &mut dot).unwrap();
    assert!(dot.len() < 1 << 20);
}

#[test]
fn two_involutions_do_not_generate() {
    let g = Group::preset("G150_D6").unwrap();
    let s = gens(&g, &[("a", "(1,0,0,1)"), ("b", "(1,1,0,0)")]);
    let graph = CayleyGraph::build(&g, &s).unwrap();
    assert_eq!(graph.degree(), 2);
    assert!(!graph.is_connected());
    let ft = gens(&g, &[("f", "(1,0,0,0)"), ("t", "(0,1,0,0)")]);
    let graph = CayleyGraph::build(&g, &ft).unwrap();
    assert!(!graph.is_connected());
    assert_eq!(graph.component_of_identity().iter().filter(|&&b| b).count(), 6);
}

#[test]
fn connectivity_in_z6() {
    let g = Group::parse("Z6").unwrap();
    assert!(CayleyGraph::build(&g, &gens(&g, &[("a", "(2)"), ("b", "(3)")])).unwrap().is_connected());
    assert!(!CayleyGraph::build(&g, &gens(&g, &[("a", "(2)")])).unwrap().is_connected());
}

#[test]
fn identity_and_duplicate_names_are_rejected() {
    let g = Group::parse("Z6").unwrap();
    let e = g.parse_element("(0)").unwrap();
    assert!(matches!(GeneratorSet::from_elements(&g, &[("a", e)]), Err(CayleyError::IdentityGenerator(_))));
    let one = g.parse_element("(1)").unwrap();
    assert!(GeneratorSet::from_elements(&g, &[("a", one.clone()), ("a", one)]).is_err());
    assert!(GeneratorSet::from_elements(&g, &[]).is_err());
}

#[test]
fn graphs_are_regular_symmetric_and_vertex_transitive() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let specs = common::small::SMALL_GROUPS.iter().copied().chain(["G150_D6", "G150_Z3_INV", "G150_D30_Z5"]);
    for spec in specs {
        let g = Group::parse(spec).unwrap();
        for _ in 0..5 {
            let k = rng.gen_range(1..=3).min(g.order() - 1);
            let mut elems: Vec<usize> = Vec::new();
            while elems.len() < k {
                let x = rng.gen_range(1..g.order());
                if !elems.contains(&x) {
                    elems.push(x);
                }
            }
            let s = GeneratorSet::with_default_names(&g, &elems).unwrap();
            let graph = CayleyGraph::build(&g, &s).unwrap();
            let degree = s.signed_tokens(&g).len();
            assert_eq!(graph.degree(), degree);
            for v in 0..g.order() {
                let nbrs = graph.neighbors(v);
                assert_eq!(nbrs.len(), degree, "{spec}");
                for &w in nbrs {
                    assert!(graph.neighbors(w as usize).contains(&(v as u32)), "{spec}: edge not symmetric");
                }
            }
            assert_eq!(graph.is_connected(), is_generating(&g, &elems).unwrap(), "{spec}");
            for _ in 0..20 {
                let h = rng.gen_range(0..g.order());
                for v in 0..g.order() {
                    for &w in graph.neighbors(v) {
                        let (hv, hw) = (g.mul(h, v), g.mul(h, w as usize));
                        assert!(graph.neighbors(hv).contains(&(hw as u32)), "{spec}: left translation breaks adjacency");
                    }
                }
            }
        }
    }
}
