//! Registry of explicit walks. Each walk is written over role names
//! (`a`, `b`, `c`, `f`, `s`, `t`) and the sub-walk `L`; [`substitute`] maps
//! roles to actual generator tokens.

use std::collections::BTreeMap;

use crate::hamilton::{Token, Walk, WalkExpr};
use crate::quotient::is_prime;

use super::{StrategyError, StrategyParams};

/// `(name, formula)` of every registered walk.
pub const PARAMETRIC_WALKS: &[(&str, &str)] = &[
    ("fcsc", "(f, c^(p-1), s, c^(p-1))^(3p)"),
    ("c3p-f", "(c^(3p-1), f)^2"),
    ("Lt3", "(L, t)^3"),
    ("LfLf", "(L, f, L^(-eps), f)"),
    ("dihedral-x-zr", "(c^(r-1), a, ((b,a)^(q-1), c^-1, (a,b)^(q-1), c^-1)^((r-1)/2), (b,a)^(q-1), b)"),
    ("dihedral-x-zr-swap", "dihedral-x-zr with (c, a, (b,a)^(q-1), c^-1, a) replaced by (b, c, (b,a)^(q-1), b, c^-1)"),
    ("commutator", "(a^-(r-1), b^-1, a^(r-1), b)"),
    ("ab5", "((a, b^-5)^4, a, b^5)"),
    ("abab", "((a, b, a^-1, b)^((i-1)/2), a, b^(2r+1-2i))"),
    ("w-cycle-1", "(W, c^(r-2), a, c^-(r-1), a) with W = ((b,a)^(q-1), c, (c^(r-2), a, c^-(r-2), b)^(q-1))"),
    ("w-cycle-2", "(W, c^(r-3), a, c^-(r-1), a, c)"),
];

fn need<T: Copy>(v: Option<T>, what: &str, walk: &str) -> Result<T, StrategyError> {
    v.ok_or_else(|| StrategyError::Constraint(format!("{walk} needs parameter {what}")))
}

fn prime(v: Option<u32>, what: &str, walk: &str) -> Result<i64, StrategyError> {
    let x = need(v, what, walk)?;
    if !is_prime(x as usize) {
        return Err(StrategyError::Constraint(format!("{walk}: {what} = {x} is not prime")));
    }
    Ok(x as i64)
}

fn odd_prime(v: Option<u32>, what: &str, walk: &str) -> Result<i64, StrategyError> {
    let x = prime(v, what, walk)?;
    if x == 2 {
        return Err(StrategyError::Constraint(format!("{walk}: {what} must be odd")));
    }
    Ok(x)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn sub_walk(params: &StrategyParams, walk: &str) -> Result<WalkExpr, StrategyError> {
    params
        .walks
        .get("L")
        .map(WalkExpr::from_walk)
        .ok_or_else(|| StrategyError::Constraint(format!("{walk} needs the sub-walk L")))
}

use WalkExpr as E;

fn pw(name: &str, k: i64) -> WalkExpr {
    E::gen_pow(name, k)
}

fn dihedral_x_zr(q: i64, r: i64) -> WalkExpr {
    let ba = E::seq(vec![E::atom("b"), E::atom("a")]).pow((q - 1) as usize);
    let ab = E::seq(vec![E::atom("a"), E::atom("b")]).pow((q - 1) as usize);
    let block = E::seq(vec![ba.clone(), E::atom_inv("c"), ab, E::atom_inv("c")]).pow(((r - 1) / 2) as usize);
    E::seq(vec![pw("c", r - 1), E::atom("a"), block, ba, E::atom("b")])
}

fn w_prefix(q: i64, r: i64) -> WalkExpr {
    let ba = E::seq(vec![E::atom("b"), E::atom("a")]).pow((q - 1) as usize);
    let inner = E::seq(vec![pw("c", r - 2), E::atom("a"), pw("c", -(r - 2)), E::atom("b")]).pow((q - 1) as usize);
    E::seq(vec![ba, E::atom("c"), inner])
}

/// Replace the first occurrence of `from` in `w` by `to`.
fn splice(w: &Walk, from: &Walk, to: &Walk) -> Option<Walk> {
    let n = from.len();
    let at = (0..=w.len().checked_sub(n)?).find(|&i| w.tokens[i..i + n] == from.tokens[..])?;
    let mut out = w.tokens[..at].to_vec();
    out.extend(to.tokens.iter().cloned());
    out.extend(w.tokens[at + n..].iter().cloned());
    Some(Walk::new(out))
}

/// Instantiate a registered walk over role names.
pub fn build_parametric_walk(name: &str, params: &StrategyParams) -> Result<WalkExpr, StrategyError> {
    let expr = match name {
        "fcsc" => {
            let p = prime(params.p, "p", name)?;
            E::seq(vec![E::atom("f"), pw("c", p - 1), E::atom("s"), pw("c", p - 1)]).pow((3 * p) as usize)
        }
        "c3p-f" => {
            let p = prime(params.p, "p", name)?;
            E::seq(vec![pw("c", 3 * p - 1), E::atom("f")]).pow(2)
        }
        "Lt3" => E::seq(vec![sub_walk(params, name)?, E::atom("t")]).pow(3),
        "LfLf" => {
            let l = sub_walk(params, name)?;
            let back = match need(params.eps, "eps", name)? {
                1 => l.clone().reverse_inverse(),
                -1 => l.clone(),
                e => return Err(StrategyError::Constraint(format!("{name}: eps = {e} is not ±1"))),
            };
            E::seq(vec![l, E::atom("f"), back, E::atom("f")])
        }
        "dihedral-x-zr" | "dihedral-x-zr-swap" => {
            let q = odd_prime(params.q, "q", name)?;
            let r = odd_prime(params.r, "r", name)?;
            let base = dihedral_x_zr(q, r);
            if name == "dihedral-x-zr" {
                base
            } else {
                let ba = E::seq(vec![E::atom("b"), E::atom("a")]).pow((q - 1) as usize);
                let from = E::seq(vec![E::atom("c"), E::atom("a"), ba.clone(), E::atom_inv("c"), E::atom("a")]).flatten();
                let to = E::seq(vec![E::atom("b"), E::atom("c"), ba, E::atom("b"), E::atom_inv("c")]).flatten();
                let swapped = splice(&base.flatten(), &from, &to)
                    .ok_or_else(|| StrategyError::Internal("the swapped string does not occur".into()))?;
                E::from_walk(&swapped)
            }
        }
        "commutator" => {
            let r = prime(params.r, "r", name)?;
            E::seq(vec![pw("a", -(r - 1)), E::atom_inv("b"), pw("a", r - 1), E::atom("b")])
        }
        "ab5" => E::seq(vec![E::seq(vec![E::atom("a"), pw("b", -5)]).pow(4), E::atom("a"), pw("b", 5)]),
        "abab" => {
            let r = odd_prime(params.r, "r", name)?;
            let i = need(params.i, "i", name)?;
            if i < 1 || i >= r || gcd(i, 2 * r) != 1 {
                return Err(StrategyError::Constraint(format!("{name}: need 1 <= i < r and gcd(i, 2r) = 1, got i = {i}")));
            }
            let unit = E::seq(vec![E::atom("a"), E::atom("b"), E::atom_inv("a"), E::atom("b")]);
            E::seq(vec![unit.pow(((i - 1) / 2) as usize), E::atom("a"), pw("b", 2 * r + 1 - 2 * i)])
        }
        "w-cycle-1" | "w-cycle-2" => {
            let q = prime(params.q, "q", name)?;
            let r = odd_prime(params.r, "r", name)?;
            let w = w_prefix(q, r);
            if name == "w-cycle-1" {
                E::seq(vec![w, pw("c", r - 2), E::atom("a"), pw("c", -(r - 1)), E::atom("a")])
            } else {
                E::seq(vec![w, pw("c", r - 3), E::atom("a"), pw("c", -(r - 1)), E::atom("a"), E::atom("c")])
            }
        }
        other => return Err(StrategyError::UnknownWalk(other.to_string())),
    };
    Ok(expr)
}

/// Rename role tokens: a role `x` maps to `roles[x]`, and `x-` to its inverse.
/// Tokens without a role pass through.
pub fn substitute(walk: &Walk, roles: &BTreeMap<String, Token>) -> Walk {
    walk.tokens
        .iter()
        .map(|t| match roles.get(&t.name) {
            Some(r) if t.inverse => r.inverted(),
            Some(r) => r.clone(),
            None => t.clone(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qr(q: u32, r: u32) -> StrategyParams {
        StrategyParams { q: Some(q), r: Some(r), ..Default::default() }
    }

    #[test]
    fn lengths() {
        let p5 = StrategyParams::with_p(5);
        assert_eq!(build_parametric_walk("c3p-f", &p5).unwrap().flatten().len(), 30);
        assert_eq!(build_parametric_walk("fcsc", &p5).unwrap().flatten().len(), 150);
        assert_eq!(build_parametric_walk("dihedral-x-zr", &qr(3, 5)).unwrap().flatten().len(), 30);
        assert_eq!(build_parametric_walk("dihedral-x-zr-swap", &qr(3, 5)).unwrap().flatten().len(), 30);
        assert_eq!(build_parametric_walk("ab5", &StrategyParams::default()).unwrap().flatten().len(), 30);
    }

    #[test]
    fn abab_at_i_one_degenerates() {
        let params = StrategyParams { r: Some(5), i: Some(1), ..Default::default() };
        let w = build_parametric_walk("abab", &params).unwrap().flatten();
        assert_eq!(w, Walk::parse("a b b b b b b b b b").unwrap());
    }

    #[test]
    fn constraints_are_checked() {
        let bad = StrategyParams { r: Some(5), i: Some(2), ..Default::default() };
        assert!(matches!(build_parametric_walk("abab", &bad), Err(StrategyError::Constraint(_))));
        assert!(matches!(build_parametric_walk("c3p-f", &StrategyParams::with_p(6)), Err(StrategyError::Constraint(_))));
        assert!(matches!(build_parametric_walk("Lt3", &StrategyParams::default()), Err(StrategyError::Constraint(_))));
        assert!(matches!(build_parametric_walk("nope", &StrategyParams::default()), Err(StrategyError::UnknownWalk(_))));
    }

    #[test]
    fn substitution_respects_signs() {
        let roles: BTreeMap<String, Token> = [("c".to_string(), Token::neg("x"))].into_iter().collect();
        let w = substitute(&Walk::parse("c c- f").unwrap(), &roles);
        assert_eq!(w, Walk::parse("x- x f").unwrap());
    }
}
