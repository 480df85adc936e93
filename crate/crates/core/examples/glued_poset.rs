//! The glued cone poset, its ray classes, and orbit closures.

use toric_prevar::fan::GluedSystem;
use toric_prevar::golden;

fn main() {
    let g = GluedSystem::new(golden::homogeneous_spectra()).unwrap();
    println!("|Ω| = {}", g.len());
    for c in 0..g.len() {
        let labels: Vec<&str> = g.class(c).labels.iter().map(|&i| g.system().label(i)).collect();
        println!("  {:<14} labels {:?}", g.class_name(c), labels);
    }
    let lambda: Vec<String> = g.lambda().iter().map(|&c| g.class_name(c)).collect();
    println!("Λ = {lambda:?}");

    // The orbit of a class lies in the closure of the orbit of every class
    // below it.
    let origin = g.origin_class();
    for &r in g.lambda() {
        let above: Vec<String> = (0..g.len()).filter(|&b| g.leq(r, b)).map(|b| g.class_name(b)).collect();
        println!("closure of O({}) = {above:?}", g.class_name(r));
        assert!(g.leq(origin, r));
    }
}
