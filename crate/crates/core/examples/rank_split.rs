//! The structural criterion for every rank-m bundle to split.

use toric_prevar::fan::GluedSystem;
use toric_prevar::golden;
use toric_prevar::sheaf::{rank_split_structural, rank_split_unchecked};

fn main() {
    for (name, s) in [
        ("A^3 doubled axes", golden::a3_doubled_axes()),
        ("two charts", golden::two_charts()),
        ("homogeneous spectra", golden::homogeneous_spectra()),
    ] {
        let g = GluedSystem::new(s).unwrap();
        for m in 2..=4 {
            let v = rank_split_structural(&g, m, true).unwrap();
            let witness: Option<Vec<String>> =
                v.witness.map(|w| w.iter().map(|&c| g.class_name(c)).collect());
            println!("{name}, m = {m}: {} {witness:?}", v.holds);
        }
    }
    // m = 1 is outside the criterion's scope; the predicate itself is still
    // computable, and labels matter.
    let g = GluedSystem::new(golden::double_origin()).unwrap();
    println!(
        "double origin, m = 1: strict {}, loose {}",
        rank_split_unchecked(&g, 1, true).holds,
        rank_split_unchecked(&g, 1, false).holds
    );
}
