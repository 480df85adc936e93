//! Reading and writing system, bundle and PL-map documents.

use std::sync::Arc;

use toric_prevar::fan::GluedSystem;
use toric_prevar::golden;
use toric_prevar::io::{parse_bundle, parse_system, write_bundle, write_plmap, write_system};
use toric_prevar::sheaf::tangent_bundle;
use toric_prevar::tits::plmap_from_bundle;

fn main() {
    let text = write_system(&golden::double_origin());
    println!("{text}");
    let s = parse_system(&text).unwrap();
    let g = Arc::new(GluedSystem::new(s).unwrap());
    let bundle_text = write_bundle(&tangent_bundle(g.clone()).unwrap());
    println!("{bundle_text}");
    let b = parse_bundle(g, &bundle_text).unwrap();
    println!("{}", write_plmap(&plmap_from_bundle(&b).unwrap()));

    let bad = r#"{"rank": 1, "filtrations": {"1:1": [{"s": 0, "basis": [[1]]}]}}"#;
    let g = Arc::new(GluedSystem::new(golden::double_origin()).unwrap());
    println!("{}", parse_bundle(g, bad).unwrap_err());
}
