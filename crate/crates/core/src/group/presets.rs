//! Named groups. Every group of order 150 has a preset here, and the
//! coordinates of each preset expose the elements named in the case analysis
//! (`x`, `y`, `f`, `t`, `v1 = (1,0)`, `v2 = (0,1)`).

use super::parse::parse_group_spec;
use super::spec::GroupSpec;

/// `(name, spec text)` for every preset.
pub const PRESETS: &[(&str, &str)] = &[
    ("G150_CYCLIC", "Z150"),
    ("G150_Z3_D50", "Z3 x D50"),
    ("G150_S3_Z25", "D6 x Z25"),
    ("G150_D150", "D150"),
    ("G150_ABELIAN", "Z6 x Z5^2"),
    ("G150_Z3_INV", "Z3 x (Z2 ltimes Z5^2 via matrix 5 [[4,0],[0,4]])"),
    ("G150_Z15_D10", "Z15 x D10"),
    ("G150_ABELIAN_QUOT", "Z2 x (Z3 ltimes Z5^2 via matrix 5 [[0,1],[4,4]])"),
    ("G150_SELF_CENT", "(Z2 x Z3) ltimes Z5^2 via matrix 5 [[4,0],[0,4]], [[0,1],[4,4]]"),
    ("G150_S3_P", "D6 x Z5^2"),
    ("G150_DIHEDRAL_TYPE", "D6 ltimes Z5^2 via matrix 5 [[4,0],[0,4]], [[1,0],[0,1]]"),
    ("G150_D30_Z5", "D30 x Z5"),
    ("G150_D6", "D6 ltimes Z5^2 via matrix 5 [[1,0],[0,4]], [[2,1],[3,2]]"),
];

/// Text form of a preset.
pub fn preset_text(name: &str) -> Option<&'static str> {
    PRESETS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Spec of a preset.
pub fn preset(name: &str) -> Option<GroupSpec> {
    preset_text(name).map(|t| parse_group_spec(t).expect("preset texts are valid"))
}
