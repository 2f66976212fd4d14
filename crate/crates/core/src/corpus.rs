//! The standard presentations used throughout the tests and docs.

use crate::presentations::Presentation;

/// Free group of rank 2.
pub const P1_FREE_F2: &str = "<a,b | >";
/// `ℤ²`, the fundamental group of the torus.
pub const P2_TORUS: &str = "<a,b | [a,b]>";
/// The Baumslag–Solitar group `BS(1,2)`.
pub const P3_BS12: &str = "<a,t | t a t^-1 a^-2>";
/// The trefoil knot group.
pub const P4_TREFOIL: &str = "<x,y | x y x y^-1 x^-1 y^-1>";
/// Fundamental group of the closed orientable genus-2 surface.
pub const P5_GENUS2: &str = "<a,b,c,d | [a,b] [c,d]>";

pub const ALL: [(&str, &str); 5] = [
    ("P1", P1_FREE_F2),
    ("P2", P2_TORUS),
    ("P3", P3_BS12),
    ("P4", P4_TREFOIL),
    ("P5", P5_GENUS2),
];

pub fn load(text: &str) -> Presentation {
    Presentation::parse(text).expect("corpus presentations parse")
}

pub fn p1() -> Presentation {
    load(P1_FREE_F2)
}

pub fn p2() -> Presentation {
    load(P2_TORUS)
}

pub fn p3() -> Presentation {
    load(P3_BS12)
}

pub fn p4() -> Presentation {
    load(P4_TREFOIL)
}

pub fn p5() -> Presentation {
    load(P5_GENUS2)
}

pub fn all() -> Vec<(&'static str, Presentation)> {
    ALL.iter().map(|(name, text)| (*name, load(text))).collect()
}
