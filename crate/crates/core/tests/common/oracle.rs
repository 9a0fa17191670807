//! Reference arithmetic written straight from the coordinate conventions,
//! sharing nothing with the compiled group tables.

use cayleyham::group::{ActionMap, GroupSpec};

/// Product of two coordinate tuples.
pub fn mul(spec: &GroupSpec, a: &[u32], b: &[u32]) -> Vec<u32> {
    match spec {
        GroupSpec::Cyclic(n) => vec![(a[0] + b[0]) % n],
        GroupSpec::Dihedral(m) => {
            // f^i t^j . f^k t^l = f^(i+k) t^((-1)^k j + l)
            let n = m / 2;
            let j = if b[0] == 1 { (n - a[1]) % n } else { a[1] };
            vec![(a[0] + b[0]) % 2, (j + b[1]) % n]
        }
        GroupSpec::Dicyclic(m) => {
            // y^i x^j . y^k x^l with x^y = x^-1 and y^2 = x^(n/2)
            let n = m / 2;
            let j = if b[0] == 1 { (n - a[1]) % n } else { a[1] };
            let carry = if a[0] == 1 && b[0] == 1 { n / 2 } else { 0 };
            vec![(a[0] + b[0]) % 2, (j + b[1] + carry) % n]
        }
        GroupSpec::Direct(parts) => {
            let mut out = Vec::new();
            let mut at = 0;
            for p in parts {
                let w = p.arity();
                out.extend(mul(p, &a[at..at + w], &b[at..at + w]));
                at += w;
            }
            out
        }
        GroupSpec::Semidirect { acting, acted, action } => {
            // (h1, k1)(h2, k2) = (h1 h2, k1^h2 k2)
            let w = acting.arity();
            let mut out = mul(acting, &a[..w], &b[..w]);
            let moved = act(acting, acted, action, &a[w..], &b[..w]);
            out.extend(mul(acted, &moved, &b[w..]));
            out
        }
    }
}

/// `k^h`, applying the generator images once per unit of each exponent
/// coordinate of `h`.
fn act(acting: &GroupSpec, acted: &GroupSpec, action: &ActionMap, k: &[u32], h: &[u32]) -> Vec<u32> {
    assert!(
        !matches!(acting, GroupSpec::Semidirect { .. }),
        "the oracle reads acting coordinates as generator exponents"
    );
    let arity = acting.arity();
    let gens = acting.standard_generators();
    let mut v = k.to_vec();
    for (gi, g) in gens.iter().enumerate() {
        let pos = (0..arity).find(|&i| g.0[i] == 1).expect("unit generators");
        for _ in 0..h[pos] {
            v = apply(acted, action, gi, &v);
        }
    }
    v
}

fn apply(acted: &GroupSpec, action: &ActionMap, gi: usize, v: &[u32]) -> Vec<u32> {
    match action {
        ActionMap::Matrix { p, images } => {
            let m = images[gi];
            vec![(v[0] * m[0][0] + v[1] * m[1][0]) % p, (v[0] * m[0][1] + v[1] * m[1][1]) % p]
        }
        ActionMap::Unit(units) => {
            let GroupSpec::Cyclic(n) = acted else { panic!("unit action on a non-cyclic group") };
            vec![(v[0] * units[gi]) % n]
        }
        ActionMap::Images(per_gen) => {
            // acted coordinates are exponents of its standard generators
            let gens = acted.standard_generators();
            let mut out = vec![0u32; acted.arity()];
            for (j, g) in gens.iter().enumerate() {
                let pos = (0..g.0.len()).find(|&i| g.0[i] == 1).expect("unit generators");
                for _ in 0..v[pos] {
                    out = mul(acted, &out, &per_gen[gi][j].0);
                }
            }
            out
        }
    }
}
