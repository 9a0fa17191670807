use super::{FiniteGroup, GroupError};

/// A subgroup given by its sorted member indices and a generating list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
    generators: Vec<usize>,
}

impl Subgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    /// Membership mask over the ambient group.
    pub fn mask(&self, ambient_order: usize) -> Vec<bool> {
        let mut m = vec![false; ambient_order];
        for &x in &self.members {
            m[x] = true;
        }
        m
    }
}

/// Subgroup generated by `gens`.
pub fn generate<G: FiniteGroup + ?Sized>(g: &G, gens: &[usize]) -> Subgroup {
    let n = g.order();
    let e = g.identity();
    let mut seen = vec![false; n];
    seen[e] = true;
    let mut members = vec![e];
    let mut head = 0;
    while head < members.len() {
        let x = members[head];
        head += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                members.push(y);
            }
        }
    }
    members.sort_unstable();
    assert_eq!(n % members.len(), 0, "Lagrange: subgroup order must divide the group order");
    Subgroup {
        members,
        generators: gens.to_vec(),
    }
}

fn check_genset<G: FiniteGroup + ?Sized>(g: &G, s: &[usize]) -> Result<(), GroupError> {
    if s.is_empty() {
        return Err(GroupError::Precondition("generating set is empty".into()));
    }
    if s.contains(&g.identity()) {
        return Err(GroupError::Precondition("generating set contains the identity".into()));
    }
    Ok(())
}

pub fn is_generating<G: FiniteGroup + ?Sized>(g: &G, s: &[usize]) -> Result<bool, GroupError> {
    check_genset(g, s)?;
    Ok(generate(g, s).order() == g.order())
}

/// Generating, and no proper subset generates. Checking the maximal proper
/// subsets suffices.
pub fn is_minimal_generating<G: FiniteGroup + ?Sized>(g: &G, s: &[usize]) -> Result<bool, GroupError> {
    if !is_generating(g, s)? {
        return Ok(false);
    }
    for skip in 0..s.len() {
        let rest: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
        if generate(g, &rest).order() == g.order() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest normal subgroup containing `elems`.
pub fn normal_closure<G: FiniteGroup + ?Sized>(g: &G, elems: &[usize]) -> Subgroup {
    let ggens = g.generators();
    let mut gens: Vec<usize> = elems.to_vec();
    let mut h = generate(g, &gens);
    loop {
        let mut grew = false;
        let current = h.generators().to_vec();
        'outer: for &x in &current {
            for &y in &ggens {
                let c = g.conj(x, y);
                if !h.contains(c) {
                    gens.push(c);
                    h = generate(g, &gens);
                    grew = true;
                    break 'outer;
                }
            }
        }
        if !grew {
            return h;
        }
    }
}

/// The commutator subgroup.
pub fn derived_subgroup<G: FiniteGroup + ?Sized>(g: &G) -> Subgroup {
    let ggens = g.generators();
    let mut comms = Vec::new();
    for (i, &a) in ggens.iter().enumerate() {
        for &b in &ggens[i + 1..] {
            let c = g.commutator(a, b);
            if c != g.identity() && !comms.contains(&c) {
                comms.push(c);
            }
        }
    }
    normal_closure(g, &comms)
}

/// Elements commuting with every element of `elems`.
pub fn centralizer<G: FiniteGroup + ?Sized>(g: &G, elems: &[usize]) -> Subgroup {
    let members: Vec<usize> = (0..g.order())
        .filter(|&z| elems.iter().all(|&x| g.mul(z, x) == g.mul(x, z)))
        .collect();
    generate(g, &members)
}

pub fn center<G: FiniteGroup + ?Sized>(g: &G) -> Subgroup {
    centralizer(g, &g.generators())
}

/// Closure of `h` under conjugation by every element.
pub fn is_normal<G: FiniteGroup + ?Sized>(g: &G, h: &Subgroup) -> bool {
    let ggens = g.generators();
    h.members()
        .iter()
        .all(|&x| ggens.iter().all(|&y| h.contains(g.conj(x, y))))
}

/// A Sylow `q`-subgroup. Grows a `q`-subgroup one element at a time; a
/// `q`-subgroup that is not Sylow always has such an extension.
pub fn sylow_subgroup<G: FiniteGroup + ?Sized>(g: &G, q: usize) -> Result<Subgroup, GroupError> {
    let n = g.order();
    if q < 2 || n % q != 0 || (2..q).any(|d| q % d == 0) {
        return Err(GroupError::Precondition(format!("{q} is not a prime dividing {n}")));
    }
    let mut target = 1;
    let mut m = n;
    while m % q == 0 {
        m /= q;
        target *= q;
    }
    let is_q_power = |k: usize| {
        let mut k = k;
        while k % q == 0 {
            k /= q;
        }
        k == 1
    };
    let mut gens = Vec::new();
    let mut h = generate(g, &gens);
    while h.order() < target {
        let mut extended = false;
        for x in 0..n {
            if h.contains(x) || !is_q_power(g.element_order(x)) {
                continue;
            }
            gens.push(x);
            let trial = generate(g, &gens);
            if is_q_power(trial.order()) {
                h = trial;
                extended = true;
                break;
            }
            gens.pop();
        }
        if !extended {
            return Err(GroupError::Precondition(format!(
                "no q-subgroup extends one of order {}",
                h.order()
            )));
        }
    }
    Ok(h)
}
