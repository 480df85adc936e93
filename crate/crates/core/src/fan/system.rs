use std::collections::BTreeMap;

use crate::cone::Cone;
use crate::report::ValidationReport;

use super::{Fan, FanError};

/// A family `Δ_ij` of fans indexed by pairs of labels. Off-diagonal fans are
/// stored once per unordered pair; a missing pair means `{ {0} }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemOfFans {
    ambient_rank: usize,
    labels: Vec<String>,
    diagonal: Vec<Fan>,
    offdiag: BTreeMap<(usize, usize), Fan>,
    origin: Fan,
}

fn ordered(i: usize, j: usize) -> (usize, usize) {
    if i <= j {
        (i, j)
    } else {
        (j, i)
    }
}

impl SystemOfFans {
    /// `offdiag` is keyed by label pairs in either order.
    pub fn new(
        ambient_rank: usize,
        labels: Vec<String>,
        diagonal: Vec<Fan>,
        offdiag: Vec<((String, String), Fan)>,
    ) -> Result<Self, FanError> {
        if labels.is_empty() {
            return Err(FanError::EmptyIndex);
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(FanError::DuplicateLabel(l.clone()));
            }
        }
        if diagonal.len() != labels.len() {
            return Err(FanError::MissingDiagonal {
                expected: labels.len(),
                found: diagonal.len(),
            });
        }
        let fans = diagonal.iter().chain(offdiag.iter().map(|(_, f)| f));
        if let Some(f) = fans.into_iter().find(|f| f.ambient_rank() != ambient_rank) {
            return Err(FanError::AmbientMismatch {
                expected: ambient_rank,
                found: f.ambient_rank(),
            });
        }
        let mut map = BTreeMap::new();
        for ((a, b), fan) in offdiag {
            let i = position(&labels, &a)?;
            let j = position(&labels, &b)?;
            if i == j {
                return Err(FanError::DiagonalAsPair(a));
            }
            if map.insert(ordered(i, j), fan).is_some() {
                return Err(FanError::DuplicatePair(a, b));
            }
        }
        Ok(SystemOfFans {
            ambient_rank,
            labels,
            diagonal,
            offdiag: map,
            origin: Fan::origin(ambient_rank),
        })
    }

    /// The one-chart system of a single fan.
    pub fn single(label: &str, fan: Fan) -> Self {
        let n = fan.ambient_rank();
        SystemOfFans::new(n, vec![label.to_string()], vec![fan], Vec::new())
            .expect("a single chart is well formed")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// `Δ_ij` (symmetric in `i`, `j`).
    pub fn fan(&self, i: usize, j: usize) -> &Fan {
        if i == j {
            &self.diagonal[i]
        } else {
            self.offdiag.get(&ordered(i, j)).unwrap_or(&self.origin)
        }
    }

    /// Explicitly stored off-diagonal fans, keyed by index pairs `i < j`.
    pub fn stored_pairs(&self) -> impl Iterator<Item = (&(usize, usize), &Fan)> {
        self.offdiag.iter()
    }

    fn pair_name(&self, i: usize, j: usize) -> String {
        format!("{}|{}", self.labels[i], self.labels[j])
    }

    /// Checks every stored fan, the subfan axiom for off-diagonal fans and
    /// `Δ_ij ∩ Δ_jk ⊆ Δ_ik` for every triple.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let n = self.len();
        for i in 0..n {
            if let Some((a, b, meet)) = self.diagonal[i].first_clash() {
                report.push(
                    "not_a_fan",
                    format!("Δ_{0}{0}: {a} ∩ {b} = {meet} is not a common face", self.labels[i]),
                    vec![self.labels[i].clone()],
                );
            }
        }
        for (&(i, j), fan) in &self.offdiag {
            if let Some((a, b, meet)) = fan.first_clash() {
                report.push(
                    "not_a_fan",
                    format!("Δ_{}: {a} ∩ {b} = {meet} is not a common face", self.pair_name(i, j)),
                    vec![self.labels[i].clone(), self.labels[j].clone()],
                );
            }
            for k in [i, j] {
                if !fan.is_subfan_of(&self.diagonal[k]) {
                    report.push(
                        "not_subfan_of_diagonal",
                        format!(
                            "Δ_{} is not a subfan of Δ_{1}{1}",
                            self.pair_name(i, j),
                            self.labels[k]
                        ),
                        vec![self.labels[i].clone(), self.labels[j].clone()],
                    );
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    let meet = self.fan(i, j).intersection(self.fan(j, k));
                    if !meet.is_subfan_of(self.fan(i, k)) {
                        let extra = meet
                            .cones()
                            .find(|c| !self.fan(i, k).contains(c))
                            .map(|c| c.to_string())
                            .unwrap_or_default();
                        report.push(
                            "triple_axiom",
                            format!(
                                "Δ_{} ∩ Δ_{} contains {extra} which is not in Δ_{}",
                                self.pair_name(i, j),
                                self.pair_name(j, k),
                                self.pair_name(i, k)
                            ),
                            vec![
                                self.labels[i].clone(),
                                self.labels[j].clone(),
                                self.labels[k].clone(),
                            ],
                        );
                    }
                }
            }
        }
        report
    }

    /// Every diagonal fan is the face set of one cone.
    pub fn is_affine(&self) -> bool {
        self.diagonal.iter().all(Fan::is_irreducible)
    }

    pub fn is_smooth(&self) -> bool {
        self.diagonal.iter().all(|f| f.cones().all(Cone::is_smooth))
    }

    /// `Ok(true)` iff `Δ_ij = Δ_ii ∩ Δ_jj` for all pairs and `∪ Δ_ii` is a
    /// fan; `Err(ConesClash)` when the equalities hold but the union is not a
    /// fan.
    pub fn single_fan_check(&self) -> Result<bool, FanError> {
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                if *self.fan(i, j) != self.diagonal[i].intersection(&self.diagonal[j]) {
                    return Ok(false);
                }
            }
        }
        let union = self
            .diagonal
            .iter()
            .skip(1)
            .fold(self.diagonal[0].clone(), |acc, f| acc.union(f));
        match union.first_clash() {
            Some((a, b, meet)) => Err(FanError::ConesClash { a, b, meet }),
            None => Ok(true),
        }
    }

    /// Sufficient witness that the system carries no glueing beyond a single
    /// fan.
    pub fn is_single_fan_system(&self) -> bool {
        matches!(self.single_fan_check(), Ok(true))
    }
}

fn position(labels: &[String], l: &str) -> Result<usize, FanError> {
    labels
        .iter()
        .position(|x| x == l)
        .ok_or_else(|| FanError::UnknownLabel(l.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden;

    fn ray_fan(v: &[i64]) -> Fan {
        Fan::irreducible(&Cone::ray(v).unwrap())
    }

    #[test]
    fn double_origin_is_valid_affine() {
        let s = golden::double_origin();
        assert!(s.validate().valid);
        assert!(s.is_affine());
        assert!(!s.is_single_fan_system());
    }

    #[test]
    fn broken_chain_violates_triple_axiom() {
        let s = golden::broken_chain();
        let r = s.validate();
        assert!(!r.valid);
        let v = r.violations.iter().find(|v| v.kind == "triple_axiom").unwrap();
        assert_eq!(v.witness, vec!["1", "2", "3"]);
    }

    #[test]
    fn singleton_systems() {
        let s = SystemOfFans::single("1", ray_fan(&[1, 0]));
        assert!(s.validate().valid);
        assert!(s.is_single_fan_system());
        let two = Fan::from_cones(2, &[Cone::ray(&[1, 0]).unwrap(), Cone::ray(&[0, 1]).unwrap()]).unwrap();
        assert!(!SystemOfFans::single("1", two).is_affine());
    }

    #[test]
    fn offdiag_not_in_diagonal_is_reported() {
        let s = SystemOfFans::new(
            2,
            vec!["a".into(), "b".into()],
            vec![ray_fan(&[1, 0]), ray_fan(&[0, 1])],
            vec![(("b".into(), "a".into()), ray_fan(&[1, 0]))],
        )
        .unwrap();
        let r = s.validate();
        assert!(r.has_kind("not_subfan_of_diagonal"));
    }

    #[test]
    fn homogeneous_spectra_single_fan_check() {
        let s = golden::homogeneous_spectra();
        assert!(s.validate().valid);
        assert!(s.is_affine());
        assert!(matches!(s.single_fan_check(), Err(FanError::ConesClash { .. })));
        assert!(!s.is_single_fan_system());
        assert!(!golden::two_charts().is_single_fan_system());
    }

    #[test]
    fn separated_two_chart_system() {
        // P^1 as two charts glued along the torus.
        let s = SystemOfFans::new(
            1,
            vec!["0".into(), "1".into()],
            vec![ray_fan(&[1]), ray_fan(&[-1])],
            vec![],
        )
        .unwrap();
        assert!(s.validate().valid);
        assert_eq!(s.single_fan_check(), Ok(true));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            SystemOfFans::new(1, vec!["a".into(), "a".into()], vec![Fan::origin(1), Fan::origin(1)], vec![]),
            Err(FanError::DuplicateLabel(_))
        ));
        assert!(matches!(
            SystemOfFans::new(1, vec!["a".into()], vec![Fan::origin(1)], vec![(("a".into(), "z".into()), Fan::origin(1))]),
            Err(FanError::UnknownLabel(_))
        ));
        assert!(matches!(
            SystemOfFans::new(1, vec!["a".into()], vec![Fan::origin(2)], vec![]),
            Err(FanError::AmbientMismatch { .. })
        ));
    }
}
