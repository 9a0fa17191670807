use super::subgroup::generate;
use super::{FiniteGroup, GroupError};

/// Largest group order accepted by the automorphism and isomorphism search.
pub const AUTOMORPHISM_CAP: usize = 512;

/// An automorphism stored as the full image table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    images: Vec<usize>,
}

impl Automorphism {
    pub fn from_images(images: Vec<usize>) -> Self {
        Automorphism { images }
    }

    pub fn identity(order: usize) -> Self {
        Automorphism { images: (0..order).collect() }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Automorphism { images: inv }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Automorphism) -> Self {
        Automorphism { images: self.images.iter().map(|&y| other.images[y]).collect() }
    }
}

/// Extend `src_gens[i] -> images[i]` to a homomorphism on the subgroup the
/// generators span. Returns the visited source elements, or `None` when the
/// assignment is inconsistent (or not injective, if requested).
fn extend_on_span<A, B>(
    src: &A,
    src_gens: &[usize],
    dst: &B,
    images: &[usize],
    map: &mut [usize],
    used: Option<&mut [bool]>,
) -> Option<Vec<usize>>
where
    A: FiniteGroup + ?Sized,
    B: FiniteGroup + ?Sized,
{
    const UNSET: usize = usize::MAX;
    let mut used = used;
    let e = src.identity();
    map[e] = dst.identity();
    if let Some(u) = used.as_deref_mut() {
        u[dst.identity()] = true;
    }
    let mut queue = vec![e];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let mx = map[x];
        for (&s, &t) in src_gens.iter().zip(images) {
            let y = src.mul(x, s);
            let my = dst.mul(mx, t);
            if map[y] == UNSET {
                if let Some(u) = used.as_deref_mut() {
                    if u[my] {
                        return None;
                    }
                    u[my] = true;
                }
                map[y] = my;
                queue.push(y);
            } else if map[y] != my {
                return None;
            }
        }
    }
    Some(queue)
}

/// Extend a generator assignment to a homomorphism `src -> dst`. Returns the
/// full image table, or `None` if the assignment does not define a
/// homomorphism or the generators do not generate `src`.
pub fn extend_homomorphism<A, B>(src: &A, src_gens: &[usize], dst: &B, images: &[usize]) -> Option<Vec<usize>>
where
    A: FiniteGroup + ?Sized,
    B: FiniteGroup + ?Sized,
{
    assert_eq!(src_gens.len(), images.len());
    let mut map = vec![usize::MAX; src.order()];
    let visited = extend_on_span(src, src_gens, dst, images, &mut map, None)?;
    (visited.len() == src.order()).then_some(map)
}

/// Per-element invariants preserved by isomorphisms: order and centralizer size.
fn invariants<G: FiniteGroup + ?Sized>(g: &G) -> Vec<(usize, usize)> {
    let n = g.order();
    (0..n)
        .map(|x| {
            let c = (0..n).filter(|&y| g.mul(x, y) == g.mul(y, x)).count();
            (g.element_order(x), c)
        })
        .collect()
}

/// Generators chosen so that each new one enlarges the span as much as
/// possible, preferring elements whose invariant class is small.
fn search_generators<G: FiniteGroup + ?Sized>(g: &G, inv: &[(usize, usize)]) -> Vec<usize> {
    let n = g.order();
    let mut class_size = std::collections::HashMap::new();
    for k in inv {
        *class_size.entry(*k).or_insert(0usize) += 1;
    }
    let mut gens = Vec::new();
    let mut span = generate(g, &gens);
    while span.order() < n {
        let mut best: Option<(usize, usize, usize)> = None;
        for x in 0..n {
            if span.contains(x) {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(x);
            let size = generate(g, &trial).order();
            let cls = class_size[&inv[x]];
            let better = match best {
                None => true,
                Some((bs, bc, _)) => size > bs || (size == bs && cls < bc),
            };
            if better {
                best = Some((size, cls, x));
            }
        }
        gens.push(best.expect("proper span has a non-member").2);
        span = generate(g, &gens);
    }
    gens
}

struct IsoSearch<'a, A: ?Sized, B: ?Sized> {
    src: &'a A,
    dst: &'a B,
    gens: Vec<usize>,
    cands: Vec<Vec<usize>>,
    images: Vec<usize>,
    found: Vec<Vec<usize>>,
    first_only: bool,
}

impl<A: FiniteGroup + ?Sized, B: FiniteGroup + ?Sized> IsoSearch<'_, A, B> {
    fn run(&mut self, depth: usize) -> bool {
        if depth == self.gens.len() {
            let mut map = vec![usize::MAX; self.src.order()];
            let mut used = vec![false; self.dst.order()];
            if let Some(v) = extend_on_span(self.src, &self.gens, self.dst, &self.images, &mut map, Some(&mut used)) {
                if v.len() == self.src.order() {
                    self.found.push(map);
                    return self.first_only;
                }
            }
            return false;
        }
        let cands = self.cands[depth].clone();
        for y in cands {
            self.images.push(y);
            let ok = {
                let mut map = vec![usize::MAX; self.src.order()];
                let mut used = vec![false; self.dst.order()];
                extend_on_span(
                    self.src,
                    &self.gens[..=depth],
                    self.dst,
                    &self.images,
                    &mut map,
                    Some(&mut used),
                )
                .is_some()
            };
            if ok && self.run(depth + 1) {
                return true;
            }
            self.images.pop();
        }
        false
    }
}

fn iso_search<A, B>(a: &A, b: &B, first_only: bool) -> Result<Vec<Vec<usize>>, GroupError>
where
    A: FiniteGroup + ?Sized,
    B: FiniteGroup + ?Sized,
{
    for n in [a.order(), b.order()] {
        if n > AUTOMORPHISM_CAP {
            return Err(GroupError::CapExceeded { order: n as u64, cap: AUTOMORPHISM_CAP as u64 });
        }
    }
    if a.order() != b.order() {
        return Ok(Vec::new());
    }
    let inv_a = invariants(a);
    let inv_b = invariants(b);
    let mut sa = inv_a.clone();
    let mut sb = inv_b.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(Vec::new());
    }
    let gens = search_generators(a, &inv_a);
    let cands = gens
        .iter()
        .map(|&x| (0..b.order()).filter(|&y| inv_b[y] == inv_a[x]).collect())
        .collect();
    let mut s = IsoSearch {
        src: a,
        dst: b,
        images: Vec::with_capacity(gens.len()),
        gens,
        cands,
        found: Vec::new(),
        first_only,
    };
    s.run(0);
    Ok(s.found)
}

/// Every automorphism of `g`, the identity first.
pub fn automorphisms<G: FiniteGroup + ?Sized>(g: &G) -> Result<Vec<Automorphism>, GroupError> {
    let mut all: Vec<Automorphism> = iso_search(g, g, false)?
        .into_iter()
        .map(Automorphism::from_images)
        .collect();
    all.sort_by(|x, y| x.images.cmp(&y.images));
    Ok(all)
}

/// An isomorphism `a -> b` as an image table, if one exists.
pub fn find_isomorphism<A, B>(a: &A, b: &B) -> Result<Option<Vec<usize>>, GroupError>
where
    A: FiniteGroup + ?Sized,
    B: FiniteGroup + ?Sized,
{
    Ok(iso_search(a, b, true)?.into_iter().next())
}

pub fn is_isomorphic<A, B>(a: &A, b: &B) -> Result<bool, GroupError>
where
    A: FiniteGroup + ?Sized,
    B: FiniteGroup + ?Sized,
{
    Ok(find_isomorphism(a, b)?.is_some())
}
