//! Reference data transcribed from the published listings.

#![allow(dead_code)]

/// The kernel Markov basis of the four-node model with the filled triangle.
pub const KERNEL_BASIS: [[i64; 16]; 20] = [
    [1, 0, -1, 0, -1, 0, 1, 0, -1, 0, 1, 0, 1, 0, -1, 0],
    [0, 1, 0, -1, 0, -1, 0, 1, 0, -1, 0, 1, 0, 1, 0, -1],
    [1, -1, 0, 0, -1, 1, 0, 0, -1, 1, 0, 0, 1, -1, 0, 0],
    [0, 0, 1, -1, 0, 0, -1, 1, 0, 0, -1, 1, 0, 0, 1, -1],
    [1, -1, -1, 1, 0, 0, 0, 0, -1, 1, 1, -1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, -1, -1, 1, 0, 0, 0, 0, -1, 1, 1, -1],
    [1, 0, -1, 0, 0, -1, 0, 1, -1, 0, 1, 0, 0, 1, 0, -1],
    [0, 1, 0, -1, -1, 0, 1, 0, 0, -1, 0, 1, 1, 0, -1, 0],
    [1, -1, 0, 0, 0, 0, -1, 1, -1, 1, 0, 0, 0, 0, 1, -1],
    [0, 0, 1, -1, -1, 1, 0, 0, 0, 0, -1, 1, 1, -1, 0, 0],
    [1, 0, 0, -1, -1, 0, 0, 1, -1, 0, 0, 1, 1, 0, 0, -1],
    [0, 1, -1, 0, 0, -1, 1, 0, 0, -1, 1, 0, 0, 1, -1, 0],
    [2, -1, -1, 0, -1, 0, 0, 1, -2, 1, 1, 0, 1, 0, 0, -1],
    [1, -2, 0, 1, 0, 1, -1, 0, -1, 2, 0, -1, 0, -1, 1, 0],
    [1, 0, -2, 1, 0, -1, 1, 0, -1, 0, 2, -1, 0, 1, -1, 0],
    [0, 1, 1, -2, -1, 0, 0, 1, 0, -1, -1, 2, 1, 0, 0, -1],
    [1, 0, 0, -1, -2, 1, 1, 0, -1, 0, 0, 1, 2, -1, -1, 0],
    [0, 1, -1, 0, 1, -2, 0, 1, 0, -1, 1, 0, -1, 2, 0, -1],
    [0, 1, -1, 0, -1, 0, 2, -1, 0, -1, 1, 0, 1, 0, -2, 1],
    [1, 0, 0, -1, 0, -1, -1, 2, -1, 0, 0, 1, 0, 1, 1, -2],
];

/// The projected-fiber Markov basis as `2×2×2` sign cubes (line / block / character).
pub const PF_CUBES: [&str; 16] = [
    "+- 00 / -+ 00",
    "00 +- / 00 -+",
    "+0 -0 / -0 +0",
    "0+ 0- / 0- 0+",
    "+- -+ / 00 00",
    "00 00 / +- -+",
    "+0 0- / -0 0+",
    "0+ -0 / 0- +0",
    "+- 00 / 00 -+",
    "00 -+ / +- 00",
    "+0 -0 / 0- 0+",
    "0- 0+ / +0 -0",
    "+- +- / -+ -+",
    "+- -+ / +- -+",
    "++ -- / -- ++",
    "+- -+ / -+ +-",
];

pub const LIFTS_SWAP_MOVE: [i64; 8] = [1, -1, -1, 1, 0, 0, 0, 0];
pub const LIFTS_SWAP: [[i64; 16]; 10] = [
    [1, -1, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, -1, -1, 1, 0, 0, 0, 0],
    [1, -1, 0, 0, 0, 0, -1, 1, 0, 0, -1, 1, 0, 0, 1, -1],
    [1, -1, 0, 0, -1, 1, 0, 0, 0, 0, -1, 1, 1, -1, 0, 0],
    [0, 0, 1, -1, -1, 1, 0, 0, -1, 1, 0, 0, 1, -1, 0, 0],
    [0, 0, 1, -1, 0, 0, -1, 1, -1, 1, 0, 0, 0, 0, 1, -1],
    [0, 1, 0, -1, -1, 0, 1, 0, -1, 0, 1, 0, 1, 0, -1, 0],
    [1, 0, -1, 0, -1, 0, 1, 0, 0, -1, 0, 1, 1, 0, -1, 0],
    [0, 1, 0, -1, 0, -1, 0, 1, -1, 0, 1, 0, 0, 1, 0, -1],
    [1, 0, -1, 0, 0, -1, 0, 1, 0, -1, 0, 1, 0, 1, 0, -1],
];

pub const LIFTS_DIAGONAL_MOVE: [i64; 8] = [1, 0, -1, 0, 0, -1, 0, 1];
pub const LIFTS_DIAGONAL: [[i64; 16]; 6] = [
    [1, 0, -1, 0, 0, -1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, -1, 0, 0, -1, 0, 1],
    [0, 0, 0, 0, 1, -1, -1, 1, 1, 0, -1, 0, -1, 0, 1, 0],
    [0, 1, 0, -1, 0, -1, 0, 1, 1, -1, -1, 1, 0, 0, 0, 0],
    [1, -1, -1, 1, 0, 0, 0, 0, 0, 1, 0, -1, 0, -1, 0, 1],
    [1, 0, -1, 0, -1, 0, 1, 0, 0, 0, 0, 0, 1, -1, -1, 1],
];

pub const LIFTS_DOUBLE_MOVE: [i64; 8] = [1, -1, -1, 1, 1, -1, -1, 1];
pub const LIFTS_DOUBLE: [[i64; 16]; 21] = [
    [0, 1, 0, -1, -1, 0, 1, 0, -1, 0, 1, 0, 0, 1, 0, -1],
    [1, -1, -1, 1, 1, -1, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, -1, -1, 1, 1, -1, -1, 1],
    [1, -1, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, -1, -1, 1],
    [0, 0, 0, 0, 1, -1, -1, 1, 1, -1, -1, 1, 0, 0, 0, 0],
    [2, -2, -1, 1, 0, 0, -1, 1, -1, 1, 0, 0, 1, -1, 0, 0],
    [1, -1, -2, 2, 1, -1, 0, 0, 0, 0, 1, -1, 0, 0, -1, 1],
    [2, -1, -2, 1, 0, -1, 0, 1, -1, 0, 1, 0, 1, 0, -1, 0],
    [1, -2, -1, 2, 1, 0, -1, 0, 0, 1, 0, -1, 0, -1, 0, 1],
    [0, 0, 1, -1, -2, 2, 1, -1, -1, 1, 0, 0, 1, -1, 0, 0],
    [1, -1, 0, 0, 1, -1, -2, 2, 0, 0, -1, 1, 0, 0, 1, -1],
    [0, 1, 0, -1, -2, 1, 2, -1, -1, 0, 1, 0, 1, 0, -1, 0],
    [1, 0, -1, 0, 1, -2, -1, 2, 0, -1, 0, 1, 0, 1, 0, -1],
    [1, -1, 0, 0, -1, 1, 0, 0, -2, 2, 1, -1, 0, 0, 1, -1],
    [0, 0, 1, -1, 0, 0, -1, 1, 1, -1, -2, 2, 1, -1, 0, 0],
    [1, 0, -1, 0, -1, 0, 1, 0, -2, 1, 2, -1, 0, 1, 0, -1],
    [0, 1, 0, -1, 0, -1, 0, 1, 1, -2, -1, 2, 1, 0, -1, 0],
    [1, -1, 0, 0, -1, 1, 0, 0, 0, 0, -1, 1, 2, -2, -1, 1],
    [0, 0, 1, -1, 0, 0, -1, 1, -1, 1, 0, 0, -1, 1, 2, -2],
    [1, 0, -1, 0, -1, 0, 1, 0, 0, -1, 0, 1, 2, -1, -2, 1],
    [0, 1, 0, -1, 0, -1, 0, 1, -1, 0, 1, 0, -1, 2, 1, -2],
];

pub const LIFTS_XOR_MOVE: [i64; 8] = [1, -1, -1, 1, -1, 1, 1, -1];
pub const LIFTS_XOR: [[i64; 16]; 40] = [
    [1, -1, -1, 1, -1, 1, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, -1, -1, 1, -1, 1, 1, -1],
    [1, -1, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0, -1, 1, 1, -1],
    [0, 0, 0, 0, 1, -1, -1, 1, -1, 1, 1, -1, 0, 0, 0, 0],
    [1, -1, 0, 0, -1, 1, 0, 0, 0, 0, -1, 1, 0, 0, 1, -1],
    [0, 0, 1, -1, 0, 0, -1, 1, -1, 1, 0, 0, 1, -1, 0, 0],
    [1, 0, -1, 0, -1, 0, 1, 0, 0, -1, 0, 1, 0, 1, 0, -1],
    [0, 1, 0, -1, 0, -1, 0, 1, -1, 0, 1, 0, 1, 0, -1, 0],
    [2, -2, -1, 1, -1, 1, 0, 0, -1, 1, 0, 0, 0, 0, 1, -1],
    [1, -1, -2, 2, 0, 0, 1, -1, 0, 0, 1, -1, -1, 1, 0, 0],
    [2, -1, -2, 1, -1, 0, 1, 0, -1, 0, 1, 0, 0, 1, 0, -1],
    [1, -2, -1, 2, 0, 1, 0, -1, 0, 1, 0, -1, -1, 0, 1, 0],
    [1, -1, 0, 0, -2, 2, 1, -1, 0, 0, -1, 1, 1, -1, 0, 0],
    [0, 0, 1, -1, 1, -1, -2, 2, -1, 1, 0, 0, 0, 0, 1, -1],
    [1, 0, -1, 0, -2, 1, 2, -1, 0, -1, 0, 1, 1, 0, -1, 0],
    [0, 1, 0, -1, 1, -2, -1, 2, -1, 0, 1, 0, 0, 1, 0, -1],
    [1, -1, 0, 0, 0, 0, -1, 1, -2, 2, 1, -1, 1, -1, 0, 0],
    [0, 0, 1, -1, -1, 1, 0, 0, 1, -1, -2, 2, 0, 0, 1, -1],
    [1, 0, -1, 0, 0, -1, 0, 1, -2, 1, 2, -1, 1, 0, -1, 0],
    [0, 1, 0, -1, -1, 0, 1, 0, 1, -2, -1, 2, 0, 1, 0, -1],
    [0, 0, 1, -1, -1, 1, 0, 0, -1, 1, 0, 0, 2, -2, -1, 1],
    [1, -1, 0, 0, 0, 0, -1, 1, 0, 0, -1, 1, -1, 1, 2, -2],
    [0, 1, 0, -1, -1, 0, 1, 0, -1, 0, 1, 0, 2, -1, -2, 1],
    [1, 0, -1, 0, 0, -1, 0, 1, 0, -1, 0, 1, -1, 2, 1, -2],
    [2, -1, -1, 0, -2, 1, 1, 0, -1, 0, 0, 1, 1, 0, 0, -1],
    [1, -2, 0, 1, -1, 2, 0, -1, 0, 1, -1, 0, 0, -1, 1, 0],
    [1, 0, -2, 1, -1, 0, 2, -1, 0, -1, 1, 0, 0, 1, -1, 0],
    [0, 1, 1, -2, 0, -1, -1, 2, -1, 0, 0, 1, 1, 0, 0, -1],
    [1, 0, 0, -1, -1, 0, 0, 1, -2, 1, 1, 0, 2, -1, -1, 0],
    [0, 1, -1, 0, 0, -1, 1, 0, 1, -2, 0, 1, -1, 2, 0, -1],
    [0, 1, -1, 0, 0, -1, 1, 0, -1, 0, 2, -1, 1, 0, -2, 1],
    [1, 0, 0, -1, -1, 0, 0, 1, 0, -1, -1, 2, 0, 1, 1, -2],
    [2, -1, -1, 0, -1, 0, 0, 1, -1, 0, 0, 1, 0, 1, 1, -2],
    [1, -2, 0, 1, 0, 1, -1, 0, 0, 1, -1, 0, -1, 0, 2, -1],
    [0, 1, 1, -2, -1, 0, 0, 1, -1, 0, 0, 1, 2, -1, -1, 0],
    [1, 0, -2, 1, 0, -1, 1, 0, 0, -1, 1, 0, -1, 2, 0, -1],
    [1, 0, 0, -1, -2, 1, 1, 0, 0, -1, -1, 2, 1, 0, 0, -1],
    [0, 1, -1, 0, 1, -2, 0, 1, -1, 0, 2, -1, 0, 1, -1, 0],
    [0, 1, -1, 0, -1, 0, 2, -1, 1, -2, 0, 1, 0, 1, -1, 0],
    [1, 0, 0, -1, 0, -1, -1, 2, -2, 1, 1, 0, 1, 0, 0, -1],
];
