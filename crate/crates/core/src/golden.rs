//! Worked systems of fans used as reference data: the affine line with a
//! doubled origin, a two-chart smooth surface, the five-chart homogeneous
//! spectrum of the Hirzebruch surface's Cox ring, and `A^3` with doubled
//! coordinate axes. Also a few deliberately broken inputs.

use crate::cone::Cone;
use crate::fan::{Fan, SystemOfFans};
use crate::linalg::IntVector;

fn cone(gens: &[&[i64]]) -> Cone {
    let g: Vec<IntVector> = gens.iter().map(|r| r.to_vec()).collect();
    Cone::from_generators(&g, gens[0].len()).expect("golden cones are pointed")
}

fn faces_of(gens: &[&[i64]]) -> Fan {
    Fan::irreducible(&cone(gens))
}

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn pair(i: usize, j: usize, fan: Fan) -> ((String, String), Fan) {
    ((i.to_string(), j.to_string()), fan)
}

/// Two copies of `R_{≥0}` glued along `{0}`.
pub fn double_origin() -> SystemOfFans {
    SystemOfFans::new(
        1,
        labels(2),
        vec![faces_of(&[&[1]]), faces_of(&[&[1]])],
        vec![pair(1, 2, Fan::origin(1))],
    )
    .expect("well formed")
}

/// Charts `σ1 = cone((0,1),(1,-1))` and `σ2 = cone((1,0),(-1,-1))` glued
/// along the torus only.
pub fn two_charts() -> SystemOfFans {
    SystemOfFans::new(
        2,
        labels(2),
        vec![faces_of(&[&[0, 1], &[1, -1]]), faces_of(&[&[1, 0], &[-1, -1]])],
        vec![pair(1, 2, Fan::origin(2))],
    )
    .expect("well formed")
}

/// The five-chart affine system of fans of the multigraded homogeneous
/// spectrum of the Cox ring of the blow-up of `P^2` at a fixed point.
pub fn homogeneous_spectra() -> SystemOfFans {
    let r = |v: &[i64]| faces_of(&[v]);
    let diagonal = vec![
        faces_of(&[&[1, 0], &[1, 1]]),
        faces_of(&[&[0, 1], &[1, 1]]),
        faces_of(&[&[1, 0], &[0, 1]]),
        faces_of(&[&[1, 0], &[-1, -1]]),
        faces_of(&[&[0, 1], &[-1, -1]]),
    ];
    let off = vec![
        pair(1, 2, r(&[1, 1])),
        pair(1, 3, r(&[1, 0])),
        pair(1, 4, r(&[1, 0])),
        pair(1, 5, Fan::origin(2)),
        pair(2, 3, r(&[0, 1])),
        pair(2, 4, Fan::origin(2)),
        pair(2, 5, r(&[0, 1])),
        pair(3, 4, r(&[1, 0])),
        pair(3, 5, r(&[0, 1])),
        pair(4, 5, r(&[-1, -1])),
    ];
    SystemOfFans::new(2, labels(5), diagonal, off).expect("well formed")
}

/// Two copies of the positive octant glued along the three coordinate rays.
pub fn a3_doubled_axes() -> SystemOfFans {
    let octant = || faces_of(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    let axes = Fan::from_cones(
        3,
        &[cone(&[&[1, 0, 0]]), cone(&[&[0, 1, 0]]), cone(&[&[0, 0, 1]])],
    )
    .expect("three rays form a fan");
    SystemOfFans::new(3, labels(2), vec![octant(), octant()], vec![pair(1, 2, axes)])
        .expect("well formed")
}

/// Three charts on a line with `Δ_12 = Δ_23 = {R_{≥0}, {0}}` but
/// `Δ_13 = {{0}}`: the triple `(1,2,3)` breaks the subfan axiom.
pub fn broken_chain() -> SystemOfFans {
    let half = || faces_of(&[&[1]]);
    SystemOfFans::new(
        1,
        labels(3),
        vec![half(), half(), half()],
        vec![pair(1, 2, half()), pair(2, 3, half()), pair(1, 3, Fan::origin(1))],
    )
    .expect("well formed")
}

/// Two cones of the plane whose intersection `cone((1,0),(1,1))` is not a
/// face of the quadrant.
pub fn overlapping_cones() -> Vec<Cone> {
    vec![cone(&[&[1, 0], &[0, 1]]), cone(&[&[1, 1], &[1, -1]])]
}
