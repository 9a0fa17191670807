use std::fmt;

/// A group element as the flat list of its leaf residues.
///
/// The coordinates follow a depth-first walk of the owning [`GroupSpec`]:
/// a cyclic leaf contributes one residue, a dihedral leaf contributes
/// `(flip, rotation)`, and products concatenate their parts in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Element(pub Vec<u32>);

/// Serialized as its display form, e.g. `"(1,0,2)"`.
impl serde::Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Element {
    pub fn new(coords: impl Into<Vec<u32>>) -> Self {
        Element(coords.into())
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl From<Vec<u32>> for Element {
    fn from(v: Vec<u32>) -> Self {
        Element(v)
    }
}

impl<const N: usize> From<[u32; N]> for Element {
    fn from(v: [u32; N]) -> Self {
        Element(v.to_vec())
    }
}

/// How the acting factor of a semidirect product acts on the acted factor.
///
/// Images are listed per standard generator of the acting group, and every
/// action is a right action: `v^(gh) = (v^g)^h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ActionMap {
    /// Row vector times matrix on `Z_p x Z_p`.
    Matrix { p: u32, images: Vec<[[u32; 2]; 2]> },
    /// Multiplication by a unit on a cyclic group.
    Unit(Vec<u32>),
    /// Images of the acted group's standard generators, in acted coordinates.
    Images(Vec<Vec<Element>>),
}

/// Recursive description of a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(u32),
    /// Dihedral group of the given (even) order.
    Dihedral(u32),
    /// Dicyclic group of the given order, a multiple of 4: `<x, y | x^(m/2),
    /// y^2 = x^(m/4), x^y = x^-1>`. `Q8` is the quaternion group.
    Dicyclic(u32),
    Direct(Vec<GroupSpec>),
    Semidirect {
        acting: Box<GroupSpec>,
        acted: Box<GroupSpec>,
        action: ActionMap,
    },
}

impl GroupSpec {
    pub fn semidirect(acting: GroupSpec, acted: GroupSpec, action: ActionMap) -> Self {
        GroupSpec::Semidirect {
            acting: Box::new(acting),
            acted: Box::new(acted),
            action,
        }
    }

    /// `Z_n^k` as a direct product of `k` copies.
    pub fn power(n: u32, k: usize) -> Self {
        GroupSpec::Direct(vec![GroupSpec::Cyclic(n); k])
    }

    /// Group order, or `None` on overflow.
    pub fn order(&self) -> Option<u64> {
        match self {
            GroupSpec::Cyclic(n) => Some(*n as u64),
            GroupSpec::Dihedral(m) | GroupSpec::Dicyclic(m) => Some(*m as u64),
            GroupSpec::Direct(parts) => parts
                .iter()
                .try_fold(1u64, |acc, p| acc.checked_mul(p.order()?)),
            GroupSpec::Semidirect { acting, acted, .. } => acting.order()?.checked_mul(acted.order()?),
        }
    }

    /// Number of leaf coordinates in an element.
    pub fn arity(&self) -> usize {
        match self {
            GroupSpec::Cyclic(_) => 1,
            GroupSpec::Dihedral(_) | GroupSpec::Dicyclic(_) => 2,
            GroupSpec::Direct(parts) => parts.iter().map(GroupSpec::arity).sum(),
            GroupSpec::Semidirect { acting, acted, .. } => acting.arity() + acted.arity(),
        }
    }

    /// Moduli of the leaf coordinates.
    pub fn radices(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.push_radices(&mut out);
        out
    }

    fn push_radices(&self, out: &mut Vec<u32>) {
        match self {
            GroupSpec::Cyclic(n) => out.push(*n),
            GroupSpec::Dihedral(m) | GroupSpec::Dicyclic(m) => {
                out.push(2);
                out.push(m / 2);
            }
            GroupSpec::Direct(parts) => parts.iter().for_each(|p| p.push_radices(out)),
            GroupSpec::Semidirect { acting, acted, .. } => {
                acting.push_radices(out);
                acted.push_radices(out);
            }
        }
    }

    /// The standard generators: `1` for a cyclic group, `f` then `t` for a
    /// dihedral group, and the concatenation of the parts for products.
    pub fn standard_generators(&self) -> Vec<Element> {
        let arity = self.arity();
        let mut out = Vec::new();
        self.push_generators(0, arity, &mut out);
        out
    }

    fn push_generators(&self, offset: usize, arity: usize, out: &mut Vec<Element>) {
        let unit = |pos: usize| {
            let mut v = vec![0u32; arity];
            v[pos] = 1;
            Element(v)
        };
        match self {
            GroupSpec::Cyclic(n) => {
                if *n > 1 {
                    out.push(unit(offset));
                }
            }
            GroupSpec::Dicyclic(_) => {
                out.push(unit(offset));
                out.push(unit(offset + 1));
            }
            GroupSpec::Dihedral(m) => {
                out.push(unit(offset));
                if *m > 2 {
                    out.push(unit(offset + 1));
                }
            }
            GroupSpec::Direct(parts) => {
                let mut off = offset;
                for p in parts {
                    p.push_generators(off, arity, out);
                    off += p.arity();
                }
            }
            GroupSpec::Semidirect { acting, acted, .. } => {
                acting.push_generators(offset, arity, out);
                acted.push_generators(offset + acting.arity(), arity, out);
            }
        }
    }

    fn is_cyclic_power(&self) -> Option<(u32, usize)> {
        match self {
            GroupSpec::Direct(parts) if parts.len() > 1 => {
                let first = match parts[0] {
                    GroupSpec::Cyclic(n) => n,
                    _ => return None,
                };
                parts
                    .iter()
                    .all(|p| *p == GroupSpec::Cyclic(first))
                    .then_some((first, parts.len()))
            }
            _ => None,
        }
    }

    fn needs_parens(&self) -> bool {
        match self {
            GroupSpec::Cyclic(_) | GroupSpec::Dihedral(_) | GroupSpec::Dicyclic(_) => false,
            GroupSpec::Direct(_) => self.is_cyclic_power().is_none(),
            GroupSpec::Semidirect { .. } => true,
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.needs_parens() {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "Z{n}"),
            GroupSpec::Dihedral(m) => write!(f, "D{m}"),
            GroupSpec::Dicyclic(m) => write!(f, "Q{m}"),
            GroupSpec::Direct(parts) => {
                if let Some((n, k)) = self.is_cyclic_power() {
                    return write!(f, "Z{n}^{k}");
                }
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    p.fmt_operand(f)?;
                }
                Ok(())
            }
            GroupSpec::Semidirect { acting, acted, action } => {
                acting.fmt_operand(f)?;
                f.write_str(" ltimes ")?;
                acted.fmt_operand(f)?;
                write!(f, " via {action}")
            }
        }
    }
}

impl fmt::Display for ActionMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionMap::Matrix { p, images } => {
                write!(f, "matrix {p} ")?;
                for (i, m) in images.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "[[{},{}],[{},{}]]", m[0][0], m[0][1], m[1][0], m[1][1])?;
                }
                Ok(())
            }
            ActionMap::Unit(units) => {
                f.write_str("unit ")?;
                for (i, u) in units.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{u}")?;
                }
                Ok(())
            }
            ActionMap::Images(per_gen) => {
                f.write_str("images ")?;
                for (i, imgs) in per_gen.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_str("[")?;
                    for (j, e) in imgs.iter().enumerate() {
                        if j > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "({})", join_coords(&e.0))?;
                    }
                    f.write_str("]")?;
                }
                Ok(())
            }
        }
    }
}

fn join_coords(c: &[u32]) -> String {
    c.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}
