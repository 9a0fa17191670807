//! Identification with a preset and the structural facts the case analysis
//! branches on.

use std::sync::OnceLock;

use crate::catalog::{fingerprint, Fingerprint};
use crate::group::{
    center, centralizer, derived_subgroup, find_isomorphism, presets::PRESETS, sylow_subgroup, FiniteGroup, Group,
    GroupError, Subgroup,
};

/// An isomorphism from some group onto a preset.
#[derive(Clone, Debug)]
pub struct Identified {
    pub name: String,
    pub preset: Group,
    /// `map[x]` is the preset element corresponding to `x`.
    pub map: Vec<usize>,
}

impl Identified {
    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x)
    }
}

fn presets_150() -> &'static [(String, Group, Fingerprint)] {
    static CACHE: OnceLock<Vec<(String, Group, Fingerprint)>> = OnceLock::new();
    CACHE.get_or_init(|| {
        PRESETS
            .iter()
            .filter_map(|(name, _)| Group::preset(name).ok())
            .filter(|g| g.order() == 150)
            .map(|g| {
                let fp = fingerprint(&g);
                (g.name().unwrap_or_default().to_string(), g, fp)
            })
            .collect()
    })
}

/// Find the preset isomorphic to `g`, with an explicit isomorphism. A group
/// compiled from a preset's own spec maps by the identity.
pub fn identify_preset(g: &Group) -> Result<Option<Identified>, GroupError> {
    if g.order() != 150 {
        return Ok(None);
    }
    let all = presets_150();
    for (name, h, _) in all {
        if h.spec() == g.spec() {
            return Ok(Some(Identified { name: name.clone(), preset: h.clone(), map: (0..g.order()).collect() }));
        }
    }
    let fp = fingerprint(g);
    for (name, h, hfp) in all {
        if *hfp == fp {
            if let Some(map) = find_isomorphism(g, h)? {
                return Ok(Some(Identified { name: name.clone(), preset: h.clone(), map }));
            }
        }
    }
    Ok(None)
}

/// Subgroups of an order-150 group named in the case analysis.
#[derive(Clone, Debug)]
pub(crate) struct Facts {
    /// Sylow 5-subgroup.
    pub p: Subgroup,
    pub p_cyclic: bool,
    pub derived: Subgroup,
    /// Whether `G/P` is abelian, i.e. `G' ⊆ P`.
    pub quotient_abelian: bool,
    pub centralizer_p: Subgroup,
    pub center: Subgroup,
}

impl Facts {
    pub fn of(g: &Group) -> Result<Self, GroupError> {
        let p = sylow_subgroup(g, 5)?;
        let p_cyclic = p.members().iter().any(|&x| g.element_order(x) == p.order());
        let derived = derived_subgroup(g);
        let quotient_abelian = derived.members().iter().all(|&x| p.contains(x));
        let centralizer_p = centralizer(g, p.members());
        Ok(Facts { p, p_cyclic, derived, quotient_abelian, centralizer_p, center: center(g) })
    }

    /// Order of `x` modulo `P`.
    pub fn order_mod_p(&self, g: &Group, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while !self.p.contains(y) {
            y = g.mul(y, x);
            k += 1;
        }
        k
    }
}
