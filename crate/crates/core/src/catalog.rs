//! Isomorphism classes of groups of order 150.
//!
//! Every such group is `H ⋉ P` with `|P| = 25` normal and `H` of order 6, so
//! the catalog runs over `H ∈ {Z6, S3}`, `P ∈ {Z25, Z5^2}` and every action
//! `H -> Aut(P)`. Actions are first reduced modulo conjugation in `Aut(P)`,
//! then the resulting groups are deduplicated with an isomorphism test.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::group::{
    center, derived_subgroup, is_isomorphic, presets::PRESETS, ActionMap, FiniteGroup, Group, GroupError, GroupSpec,
};
use crate::quotient::QuotientContext;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unsupported order {0}; only 150 is catalogued")]
    UnsupportedOrder(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Isomorphism invariants used to bucket groups before the full test.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    /// `(element order, number of elements)`, ascending.
    pub order_profile: Vec<(usize, usize)>,
    pub center_order: usize,
    pub derived_order: usize,
    /// Invariant factors of `G/G'`, each dividing the next.
    pub abelianization: Vec<usize>,
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let profile: Vec<String> = self.order_profile.iter().map(|(o, c)| format!("{o}:{c}")).collect();
        let ab: Vec<String> = self.abelianization.iter().map(|d| format!("Z{d}")).collect();
        let ab = if ab.is_empty() { "1".to_string() } else { ab.join(" x ") };
        write!(
            f,
            "orders [{}] |Z|={} |G'|={} G/G'={}",
            profile.join(" "),
            self.center_order,
            self.derived_order,
            ab
        )
    }
}

pub fn fingerprint(g: &Group) -> Fingerprint {
    let mut counts = BTreeMap::new();
    for x in 0..g.order() {
        *counts.entry(g.element_order(x)).or_insert(0) += 1;
    }
    let derived = derived_subgroup(g);
    let abelianization = match QuotientContext::new(g, derived.clone()) {
        Ok(q) => abelian_invariants(&q),
        Err(_) => Vec::new(),
    };
    Fingerprint {
        order_profile: counts.into_iter().collect(),
        center_order: center(g).order(),
        derived_order: derived.order(),
        abelianization,
    }
}

/// Invariant factors of an abelian group, read off from how many elements
/// have order dividing each prime power.
pub fn abelian_invariants<G: FiniteGroup + ?Sized>(g: &G) -> Vec<usize> {
    let n = g.order();
    let orders: Vec<usize> = (0..n).map(|x| g.element_order(x)).collect();
    // elementary divisors grouped by prime
    let mut per_prime: Vec<Vec<usize>> = Vec::new();
    for p in prime_factors(n) {
        let mut exps = Vec::new();
        let mut prev = 0u32;
        let mut k = 1u32;
        loop {
            let pk = p.pow(k);
            let count = orders.iter().filter(|&&o| pk % o == 0).count();
            let a = count.ilog(p);
            if a == prev {
                break;
            }
            // (a - prev) cyclic factors have exponent at least k
            exps.push((a - prev) as usize);
            prev = a;
            k += 1;
        }
        let mut divisors = Vec::new();
        for (i, &at_least) in exps.iter().enumerate() {
            let next = exps.get(i + 1).copied().unwrap_or(0);
            for _ in 0..(at_least - next) {
                divisors.push(p.pow(i as u32 + 1));
            }
        }
        divisors.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push(divisors);
    }
    let width = per_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut factors: Vec<usize> = (0..width)
        .map(|i| per_prime.iter().map(|d| d.get(i).copied().unwrap_or(1)).product())
        .collect();
    factors.reverse();
    factors
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Clone, Debug)]
pub struct GroupCatalogEntry {
    /// Preset name of the class.
    pub id: String,
    /// Spec of the preset, whose coordinates the strategies use.
    pub spec: GroupSpec,
    /// The first split extension found in this class.
    pub extension: GroupSpec,
    pub fingerprint: Fingerprint,
}

type Mat = [[u32; 2]; 2];
const P: u32 = 5;
const IDENTITY: Mat = [[1, 0], [0, 1]];

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = (a[i][0] * b[0][j] + a[i][1] * b[1][j]) % P;
        }
    }
    c
}

fn mat_pow(a: &Mat, k: u32) -> Mat {
    (0..k).fold(IDENTITY, |acc, _| mat_mul(&acc, a))
}

fn gl2() -> Vec<Mat> {
    let mut out = Vec::new();
    for a in 0..P {
        for b in 0..P {
            for c in 0..P {
                for d in 0..P {
                    if (a * d + P * P - b * c) % P != 0 {
                        out.push([[a, b], [c, d]]);
                    }
                }
            }
        }
    }
    out
}

fn mat_inv(a: &Mat, group: &[Mat]) -> Mat {
    *group.iter().find(|b| mat_mul(a, b) == IDENTITY).expect("invertible")
}

/// Every split extension of order 150, one per `Aut(P)`-conjugacy class of
/// actions. Different entries may still be isomorphic.
pub fn candidate_extensions() -> Vec<GroupSpec> {
    let z6 = GroupSpec::Cyclic(6);
    let s3 = GroupSpec::Dihedral(6);
    let z25 = GroupSpec::Cyclic(25);
    let p2 = GroupSpec::power(5, 2);
    let mut out = Vec::new();
    // Aut(Z25) is abelian, so conjugation is trivial there
    let units_of_order: Vec<u32> = (1..25).filter(|u| u % 5 != 0).collect();
    for &u in &units_of_order {
        if (0..6).fold(1u32, |acc, _| acc * u % 25) == 1 {
            out.push(GroupSpec::semidirect(z6.clone(), z25.clone(), ActionMap::Unit(vec![u])));
        }
    }
    for &f in &units_of_order {
        for &t in &units_of_order {
            let f2 = f * f % 25;
            let t3 = t * t % 25 * t % 25;
            let t_inv = (1..25).find(|x| x * t % 25 == 1).expect("unit");
            if f2 == 1 && t3 == 1 && f * t % 25 * f % 25 == t_inv {
                out.push(GroupSpec::semidirect(s3.clone(), z25.clone(), ActionMap::Unit(vec![f, t])));
            }
        }
    }
    let gl = gl2();
    let conj = |m: &Mat, x: &Mat| mat_mul(&mat_mul(&mat_inv(x, &gl), m), x);
    let mut seen = HashSet::new();
    for m in &gl {
        if mat_pow(m, 6) != IDENTITY || seen.contains(m) {
            continue;
        }
        for x in &gl {
            seen.insert(conj(m, x));
        }
        out.push(GroupSpec::semidirect(z6.clone(), p2.clone(), ActionMap::Matrix { p: P, images: vec![*m] }));
    }
    let mut seen = HashSet::new();
    for f in &gl {
        if mat_pow(f, 2) != IDENTITY {
            continue;
        }
        for t in &gl {
            if mat_pow(t, 3) != IDENTITY || mat_mul(&mat_mul(f, t), f) != mat_inv(t, &gl) || seen.contains(&(*f, *t)) {
                continue;
            }
            for x in &gl {
                seen.insert((conj(f, x), conj(t, x)));
            }
            out.push(GroupSpec::semidirect(
                s3.clone(),
                p2.clone(),
                ActionMap::Matrix { p: P, images: vec![*f, *t] },
            ));
        }
    }
    out
}

/// All isomorphism classes of groups of the given order, in preset order.
pub fn enumerate_groups(order: usize) -> Result<Vec<GroupCatalogEntry>, CatalogError> {
    if order != 150 {
        return Err(CatalogError::UnsupportedOrder(order));
    }
    let mut reps: Vec<(Group, Fingerprint)> = Vec::new();
    for spec in candidate_extensions() {
        let g = Group::new(spec)?;
        let fp = fingerprint(&g);
        let mut fresh = true;
        for (h, hfp) in &reps {
            if *hfp == fp && is_isomorphic(&g, h)? {
                fresh = false;
                break;
            }
        }
        if fresh {
            reps.push((g, fp));
        }
    }
    let presets: Vec<(Group, Fingerprint)> = PRESETS
        .iter()
        .filter_map(|(name, _)| Group::preset(name).ok())
        .filter(|g| g.order() == order)
        .map(|g| {
            let fp = fingerprint(&g);
            (g, fp)
        })
        .collect();
    let mut entries = Vec::with_capacity(reps.len());
    let mut unnamed = 0;
    for (g, fp) in reps {
        let mut preset = None;
        for (k, (h, hfp)) in presets.iter().enumerate() {
            if *hfp == fp && is_isomorphic(&g, h)? {
                preset = Some(k);
                break;
            }
        }
        let (rank, id, spec) = match preset {
            Some(k) => {
                let h = &presets[k].0;
                (k, h.name().unwrap_or_default().to_string(), h.spec().clone())
            }
            None => {
                unnamed += 1;
                (usize::MAX, format!("G{order}_UNNAMED_{unnamed}"), g.spec().clone())
            }
        };
        entries.push((rank, GroupCatalogEntry { id, spec, extension: g.spec().clone(), fingerprint: fp }));
    }
    entries.sort_by_key(|(rank, _)| *rank);
    let mut ids = HashSet::new();
    for (_, e) in &entries {
        if !ids.insert(e.id.clone()) {
            return Err(CatalogError::Internal(format!("two classes matched preset {}", e.id)));
        }
    }
    Ok(entries.into_iter().map(|(_, e)| e).collect())
}

/// Independent count of the classes: orbits of `Hom(H, Aut P)` under
/// `Aut(H) x Aut(P)`, summed over the four `(H, P)` pairs. Orders of `H` and
/// `P` are coprime, so these orbits are exactly the isomorphism classes.
/// Uses only residue and matrix arithmetic, no group tables.
pub fn oracle_class_count() -> usize {
    let gl = gl2();
    let mut total = 0;

    // Z6 -> Z25^x: the image of the generator is a unit u with u^6 = 1;
    // Aut(Z6) sends u to u^-1, and Aut(Z25) acts trivially.
    let units: Vec<u32> = (1..25).filter(|u| u % 5 != 0).collect();
    let pw = |u: u32, k: u32| (0..k).fold(1u32, |acc, _| acc * u % 25);
    let homs: Vec<u32> = units.iter().copied().filter(|&u| pw(u, 6) == 1).collect();
    total += count_orbits(&homs, |&u| vec![pw(u, 5)]);

    // S3 -> Z25^x: pairs (f, t); Aut(S3) is generated by f -> ft, t -> t and
    // f -> f, t -> t^-1.
    let homs: Vec<(u32, u32)> = units
        .iter()
        .flat_map(|&f| units.iter().map(move |&t| (f, t)))
        .filter(|&(f, t)| pw(f, 2) == 1 && pw(t, 3) == 1 && f * t % 25 * f % 25 == pw(t, 2))
        .collect();
    total += count_orbits(&homs, |&(f, t)| vec![(f * t % 25, t), (f, pw(t, 2))]);

    // Z6 -> GL2(5): M with M^6 = I, under M -> M^-1 and conjugation.
    let inv = |m: &Mat| mat_inv(m, &gl);
    let homs: Vec<Mat> = gl.iter().copied().filter(|m| mat_pow(m, 6) == IDENTITY).collect();
    total += count_orbits(&homs, |m| {
        let mut out = vec![inv(m)];
        out.extend(gl.iter().map(|x| mat_mul(&mat_mul(&inv(x), m), x)));
        out
    });

    // S3 -> GL2(5)
    let homs: Vec<(Mat, Mat)> = gl
        .iter()
        .flat_map(|f| gl.iter().map(move |t| (*f, *t)))
        .filter(|(f, t)| {
            mat_pow(f, 2) == IDENTITY && mat_pow(t, 3) == IDENTITY && mat_mul(&mat_mul(f, t), f) == mat_pow(t, 2)
        })
        .collect();
    total += count_orbits(&homs, |(f, t)| {
        let mut out = vec![(mat_mul(f, t), *t), (*f, mat_pow(t, 2))];
        out.extend(gl.iter().map(|x| (mat_mul(&mat_mul(&inv(x), f), x), mat_mul(&mat_mul(&inv(x), t), x))));
        out
    });
    total
}

/// Orbits of `items` under the group generated by the moves `step` returns.
fn count_orbits<T: Clone + Eq + std::hash::Hash>(items: &[T], step: impl Fn(&T) -> Vec<T>) -> usize {
    let index: std::collections::HashMap<T, usize> = items.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
    let mut parent: Vec<usize> = (0..items.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, x) in items.iter().enumerate() {
        for y in step(x) {
            let j = index[&y];
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a] = b;
            }
        }
    }
    (0..items.len()).filter(|&i| find(&mut parent, i) == i).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_of_small_abelian_groups() {
        let g = Group::parse("Z6 x Z5^2").unwrap();
        assert_eq!(abelian_invariants(&g), vec![5, 30]);
        let g = Group::parse("Z4 x Z2 x Z3").unwrap();
        assert_eq!(abelian_invariants(&g), vec![2, 12]);
        let g = Group::parse("Z1").unwrap();
        assert_eq!(abelian_invariants(&g), Vec::<usize>::new());
    }

    #[test]
    fn oracle_matches_catalog() {
        let cat = enumerate_groups(150).unwrap();
        assert_eq!(cat.len(), oracle_class_count());
        assert!(cat.iter().all(|e| !e.id.contains("UNNAMED")));
    }

    #[test]
    fn other_orders_are_rejected() {
        assert!(matches!(enumerate_groups(120), Err(CatalogError::UnsupportedOrder(120))));
    }
}
