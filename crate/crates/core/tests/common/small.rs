//! Every group of order 2 to 16, one spec per isomorphism class.

pub const SMALL_GROUPS: &[&str] = &[
    "Z2",
    "Z3",
    "Z4",
    "Z2^2",
    "Z5",
    "Z6",
    "D6",
    "Z7",
    "Z8",
    "Z2 x Z4",
    "Z2^3",
    "D8",
    "Q8",
    "Z9",
    "Z3^2",
    "Z10",
    "D10",
    "Z11",
    "Z12",
    "Z2 x Z6",
    "D12",
    "Q12",
    "Z3 ltimes Z2^2 via matrix 2 [[0,1],[1,1]]",
    "Z13",
    "Z14",
    "D14",
    "Z15",
    "Z16",
    "Z4^2",
    "Z2 x Z8",
    "Z2^2 x Z4",
    "Z2^4",
    "D16",
    "Q16",
    "Z2 ltimes Z8 via unit 3",
    "Z2 ltimes Z8 via unit 5",
    "Z2 x D8",
    "Z2 x Q8",
    "Z4 ltimes Z4 via unit 3",
    "Z4 ltimes Z2^2 via matrix 2 [[1,1],[0,1]]",
    "Z2 ltimes (Z4 x Z2) via images [(1,0),(2,1)]",
];

/// Number of isomorphism classes of each order from 2 to 16.
pub const CLASS_COUNTS: [usize; 15] = [1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14];
