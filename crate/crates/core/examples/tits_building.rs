//! Prevaluations, apartments, and piecewise-linear maps into the Tits
//! building.

use std::sync::Arc;

use toric_prevar::fan::GluedSystem;
use toric_prevar::golden;
use toric_prevar::linalg::{to_rational, Subspace};
use toric_prevar::sheaf::{tangent_bundle, Filtration};
use toric_prevar::tits::{bundle_from_plmap, plmap_from_bundle, ExtendedApartment, Prevaluation};

fn main() {
    let line = Subspace::span_ints(&[vec![1, 1]], 2).unwrap();
    let v = Prevaluation::new(Filtration::line_then_full(&line, -1).unwrap());
    for e in [[1, 1], [1, 0], [0, 0]] {
        println!("v{e:?} = {:?}", v.eval(&to_rational(&e)).unwrap());
    }
    let standard = ExtendedApartment::new(vec![to_rational(&[1, 0]), to_rational(&[0, 1])]).unwrap();
    let adapted = ExtendedApartment::new(vec![to_rational(&[1, 1]), to_rational(&[0, 1])]).unwrap();
    println!("in standard apartment: {}", v.in_apartment(&standard).unwrap());
    println!("in apartment of (1,1),(0,1): {}", v.in_apartment(&adapted).unwrap());

    let g = Arc::new(GluedSystem::new(golden::two_charts()).unwrap());
    let t = tangent_bundle(g.clone()).unwrap();
    let pl = plmap_from_bundle(&t).unwrap();
    for (&c, piece) in pl.pieces() {
        println!("piece {}: basis {:?} weights {:?}", g.class_name(c), piece.basis, piece.weights);
        let x = g.class(c).cone.interior_point();
        let at = pl.prevaluation_at(c, &x).unwrap();
        println!("  Φ({x:?}) has jumps {:?}", at.backing());
    }
    println!("valid: {}", pl.validate().valid);
    let back = bundle_from_plmap(&pl).unwrap();
    println!("round trip exact: {}", back.filtrations().eq(t.filtrations()));
}
