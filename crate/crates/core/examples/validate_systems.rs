//! Checking the axioms of a system of fans, including broken inputs.

use toric_prevar::fan::{Fan, FanError};
use toric_prevar::golden;

fn main() {
    for (name, s) in [
        ("double origin", golden::double_origin()),
        ("two charts", golden::two_charts()),
        ("homogeneous spectra", golden::homogeneous_spectra()),
        ("A^3 doubled axes", golden::a3_doubled_axes()),
        ("broken chain", golden::broken_chain()),
    ] {
        let r = s.validate();
        println!(
            "{name}: valid {}, affine {}, smooth {}",
            r.valid,
            s.is_affine(),
            s.is_smooth()
        );
        for v in &r.violations {
            println!("  {}: {} {:?}", v.kind, v.detail, v.witness);
        }
        if r.valid {
            println!("  glues to a single fan: {}", s.is_single_fan_system());
        }
    }

    let cones = golden::overlapping_cones();
    match Fan::from_cones(2, &cones) {
        Err(FanError::NotAFan { a, b, meet }) => println!("not a fan: {a} ∩ {b} = {meet}"),
        other => println!("unexpected: {other:?}"),
    }
}
