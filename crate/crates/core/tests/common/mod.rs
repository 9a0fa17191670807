#![allow(dead_code)]

pub mod oracle;
pub mod small;

use std::collections::HashSet;

use cayleyham::cayley::GeneratorSet;
use cayleyham::group::{automorphisms, is_generating, Automorphism, FiniteGroup, Group};
use cayleyham::hamilton::{Token, Walk};

/// Plain depth-first search over token sequences from the identity, with no
/// pruning: a hamiltonian cycle is `|G|` steps through distinct vertices
/// ending back at the identity.
pub fn naive_hamiltonian<G: FiniteGroup>(g: &G, gens: &GeneratorSet) -> Option<Walk> {
    let steps: Vec<(Token, usize)> = gens.signed_tokens(g);
    let n = g.order();
    let mut seen = vec![false; n];
    seen[g.identity()] = true;
    let mut path = Vec::new();
    fn go<G: FiniteGroup>(
        g: &G,
        steps: &[(Token, usize)],
        at: usize,
        seen: &mut [bool],
        path: &mut Vec<usize>,
        n: usize,
    ) -> bool {
        if path.len() + 1 == n {
            return steps.iter().enumerate().any(|(i, &(_, s))| {
                if g.mul(at, s) == g.identity() {
                    path.push(i);
                    true
                } else {
                    false
                }
            });
        }
        for (i, &(_, s)) in steps.iter().enumerate() {
            let next = g.mul(at, s);
            if seen[next] {
                continue;
            }
            seen[next] = true;
            path.push(i);
            if go(g, steps, next, seen, path, n) {
                return true;
            }
            path.pop();
            seen[next] = false;
        }
        false
    }
    go(g, &steps, g.identity(), &mut seen, &mut path, n)
        .then(|| path.iter().map(|&i| steps[i].0.clone()).collect())
}

/// `Z_(2r) ltimes (Z_q x Z_p)` with the generator inverting `Z_q` and acting
/// on `Z_p` by a unit of the largest order dividing `2r`.
pub fn z2r_zqp(q: u32, r: u32, p: u32) -> String {
    let u = (1..p)
        .filter(|&u| {
            let order = (1..=p).find(|&k| pow_mod(u, k, p) == 1).unwrap();
            (2 * r) % order == 0
        })
        .max_by_key(|&u| ((1..=p).find(|&k| pow_mod(u, k, p) == 1).unwrap(), u))
        .unwrap();
    format!("Z{} ltimes (Z{q} x Z{p}) via images [({},0),(0,{u})]", 2 * r, q - 1)
}

pub fn pow_mod(b: u32, e: u32, m: u32) -> u32 {
    (0..e).fold(1u64, |acc, _| acc * b as u64 % m as u64) as u32
}

/// One representative of each `Aut(G)` orbit of symmetric generating
/// connection sets, listing one element from each inverse pair.
pub fn connection_sets(g: &Group) -> Vec<Vec<usize>> {
    let n = g.order();
    // class index for every non-identity element; a class is {x, x^-1}
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 1..n {
        if class[x] == usize::MAX {
            class[x] = reps.len();
            class[g.inv(x)] = reps.len();
            reps.push(x);
        }
    }
    let c = reps.len();
    let auts = automorphisms(g).unwrap();
    let image = |a: &Automorphism, mask: u32| -> u32 {
        (0..c).filter(|&i| mask >> i & 1 == 1).map(|i| 1u32 << class[a.apply(reps[i])]).sum()
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 1u32..(1 << c) {
        if seen.contains(&mask) {
            continue;
        }
        for a in &auts {
            seen.insert(image(a, mask));
        }
        let elems: Vec<usize> = (0..c).filter(|&i| mask >> i & 1 == 1).map(|i| reps[i]).collect();
        if is_generating(g, &elems).unwrap() {
            out.push(elems);
        }
    }
    out
}
