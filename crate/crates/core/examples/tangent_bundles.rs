//! Tangent bundle filtrations, local freeness and equivariant splitting.

use std::sync::Arc;

use toric_prevar::fan::GluedSystem;
use toric_prevar::golden;
use toric_prevar::sheaf::tangent_bundle;

fn main() {
    for (name, s) in [
        ("double origin", golden::double_origin()),
        ("two charts", golden::two_charts()),
        ("homogeneous spectra", golden::homogeneous_spectra()),
        ("A^3 doubled axes", golden::a3_doubled_axes()),
    ] {
        let g = Arc::new(GluedSystem::new(s).unwrap());
        let t = tangent_bundle(g.clone()).unwrap();
        println!("{name}:");
        for (c, f) in t.filtrations() {
            let line = f.at(-1);
            println!("  E^{}(-1) = {:?}", g.class_name(c), line.basis());
        }
        let report = t.is_locally_free().unwrap();
        for v in &report.cones {
            let weights: Vec<_> = v
                .decomposition
                .iter()
                .flat_map(|d| &d.components)
                .map(|c| c.weight.clone())
                .collect();
            println!("  {}: weights {weights:?}", g.class_name(v.class));
        }
        let split = t.splits_equivariantly().unwrap();
        println!("  splits equivariantly: {}", split.is_some());
    }
}
