//! Example systems shipped with the library.

use crate::complex::{parse_complex, SquareComplex};
use crate::net::{parse_net, NetSystem};

pub const NSTAR: &str = include_str!("../data/nstar.net");
pub const Z: &str = include_str!("../data/z.cx");
pub const ZPRIME: &str = include_str!("../data/zprime.cx");
pub const GRID: &str = include_str!("../data/grid.net");
pub const RAY: &str = include_str!("../data/ray.net");
pub const TREE: &str = include_str!("../data/tree.net");
pub const CONFLICT: &str = include_str!("../data/conflict.net");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Net,
    Complex,
}

/// Name, kind and source text of every shipped example.
pub const EXAMPLES: &[(&str, Kind, &str)] = &[
    ("nstar", Kind::Net, NSTAR),
    ("z", Kind::Complex, Z),
    ("zprime", Kind::Complex, ZPRIME),
    ("grid", Kind::Net, GRID),
    ("ray", Kind::Net, RAY),
    ("tree", Kind::Net, TREE),
    ("conflict", Kind::Net, CONFLICT),
];

pub fn nstar() -> NetSystem {
    parse_net(NSTAR).expect("shipped net parses")
}

/// Its hair: `Ṅ*`, one extra place per transition and a terminal `h`.
pub fn nstar_haired() -> NetSystem {
    crate::net::hair_net(&nstar())
}

pub fn z() -> SquareComplex {
    parse_complex(Z).expect("shipped complex parses")
}

pub fn zprime() -> SquareComplex {
    parse_complex(ZPRIME).expect("shipped complex parses")
}

pub fn grid_net() -> NetSystem {
    parse_net(GRID).expect("shipped net parses")
}

pub fn ray_net() -> NetSystem {
    parse_net(RAY).expect("shipped net parses")
}

pub fn tree_net() -> NetSystem {
    parse_net(TREE).expect("shipped net parses")
}

pub fn conflict_net() -> NetSystem {
    parse_net(CONFLICT).expect("shipped net parses")
}
