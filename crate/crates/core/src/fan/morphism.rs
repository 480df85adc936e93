use crate::linalg::{to_rational, IntVector};
use crate::report::ValidationReport;

use super::{ClassId, GluedSystem};

/// A lattice map `F: N → N'` together with a map on glued cone classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoFMorphism {
    /// `rank(N') × rank(N)` integer matrix.
    pub lattice_map: Vec<IntVector>,
    /// Image class in the target for every class of the source.
    pub class_map: Vec<ClassId>,
}

impl SoFMorphism {
    pub fn identity(s: &GluedSystem) -> Self {
        let n = s.ambient_rank();
        SoFMorphism {
            lattice_map: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect(),
            class_map: (0..s.len()).collect(),
        }
    }

    fn apply(&self, v: &[i64]) -> IntVector {
        self.lattice_map
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Checks that the class map preserves `⪯` and that `F` sends each cone
    /// into its image cone with relative interior to relative interior.
    /// A linear image of a relative interior is the relative interior of the
    /// image cone, so testing the ray images and the sum of the rays suffices.
    pub fn validate(&self, source: &GluedSystem, target: &GluedSystem) -> ValidationReport {
        let mut report = ValidationReport::new();
        if self.lattice_map.len() != target.ambient_rank()
            || self.lattice_map.iter().any(|r| r.len() != source.ambient_rank())
        {
            report.push(
                "shape",
                format!(
                    "lattice map must be {}×{}",
                    target.ambient_rank(),
                    source.ambient_rank()
                ),
                vec![],
            );
            return report;
        }
        if self.class_map.len() != source.len() || self.class_map.iter().any(|&c| c >= target.len()) {
            report.push("class_map", "class map is not a total map into the target classes", vec![]);
            return report;
        }
        for a in 0..source.len() {
            for b in 0..source.len() {
                if source.leq(a, b) && !target.leq(self.class_map[a], self.class_map[b]) {
                    report.push(
                        "order",
                        format!(
                            "{} ⪯ {} but images are not comparable",
                            source.class_name(a),
                            source.class_name(b)
                        ),
                        vec![source.class_name(a), source.class_name(b)],
                    );
                }
            }
        }
        for a in 0..source.len() {
            let cone = &source.class(a).cone;
            let image = &target.class(self.class_map[a]).cone;
            let rays_inside = cone
                .rays()
                .iter()
                .all(|r| image.contains_point(&to_rational(&self.apply(r))));
            let centre = to_rational(&self.apply(&cone.interior_point()));
            if !rays_inside || !image.relint_contains(&centre) {
                report.push(
                    "interior",
                    format!(
                        "F does not map relint {} into relint of {}",
                        source.class_name(a),
                        target.class_name(self.class_map[a])
                    ),
                    vec![source.class_name(a)],
                );
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::Cone;
    use crate::fan::{Fan, SystemOfFans};
    use crate::golden;

    fn fold() -> (GluedSystem, GluedSystem, SoFMorphism) {
        let src = GluedSystem::new(golden::double_origin()).unwrap();
        let tgt = GluedSystem::new(SystemOfFans::single(
            "1",
            Fan::irreducible(&Cone::ray(&[1]).unwrap()),
        ))
        .unwrap();
        let ray_t = tgt.lambda()[0];
        let class_map = (0..src.len())
            .map(|c| if src.class(c).dim() == 1 { ray_t } else { tgt.origin_class() })
            .collect();
        (src, tgt, SoFMorphism { lattice_map: vec![vec![1]], class_map })
    }

    #[test]
    fn identity_is_valid() {
        for s in [golden::double_origin(), golden::two_charts(), golden::homogeneous_spectra()] {
            let g = GluedSystem::new(s).unwrap();
            assert!(SoFMorphism::identity(&g).validate(&g, &g).valid);
        }
    }

    #[test]
    fn fold_onto_the_line() {
        let (src, tgt, m) = fold();
        assert!(m.validate(&src, &tgt).valid);
    }

    #[test]
    fn fold_to_origin_fails_interior_condition() {
        let (src, tgt, mut m) = fold();
        m.class_map[src.lambda()[0]] = tgt.origin_class();
        let r = m.validate(&src, &tgt);
        assert!(!r.valid);
        assert!(r.has_kind("interior"));
    }

    #[test]
    fn order_reversal_is_reported() {
        let (src, tgt, mut m) = fold();
        m.class_map[src.origin_class()] = tgt.lambda()[0];
        m.class_map[src.lambda()[0]] = tgt.origin_class();
        assert!(m.validate(&src, &tgt).has_kind("order"));
    }
}
