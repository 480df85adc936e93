use std::collections::BTreeSet;

use crate::cone::Cone;

use super::FanError;

/// A finite set of cones closed under taking faces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fan {
    ambient_rank: usize,
    cones: BTreeSet<Cone>,
}

impl Fan {
    /// Face closure of `cones` without checking the intersection axiom.
    pub fn closure(ambient_rank: usize, cones: &[Cone]) -> Fan {
        let mut set = BTreeSet::new();
        set.insert(Cone::zero(ambient_rank));
        for c in cones {
            assert_eq!(c.ambient_rank(), ambient_rank, "cone outside the ambient lattice");
            set.extend(c.faces());
        }
        Fan {
            ambient_rank,
            cones: set,
        }
    }

    /// Face closure of `cones`, rejected unless every pair meets in a common
    /// face.
    pub fn from_cones(ambient_rank: usize, cones: &[Cone]) -> Result<Fan, FanError> {
        if let Some(c) = cones.iter().find(|c| c.ambient_rank() != ambient_rank) {
            return Err(FanError::AmbientMismatch {
                expected: ambient_rank,
                found: c.ambient_rank(),
            });
        }
        let fan = Fan::closure(ambient_rank, cones);
        match fan.first_clash() {
            Some((a, b, meet)) => Err(FanError::NotAFan { a, b, meet }),
            None => Ok(fan),
        }
    }

    /// `{ {0} }`: the fan of the torus.
    pub fn origin(ambient_rank: usize) -> Fan {
        Fan::closure(ambient_rank, &[])
    }

    /// The faces of a single cone.
    pub fn irreducible(cone: &Cone) -> Fan {
        Fan::closure(cone.ambient_rank(), std::slice::from_ref(cone))
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn cones(&self) -> impl Iterator<Item = &Cone> {
        self.cones.iter()
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn contains(&self, c: &Cone) -> bool {
        self.cones.contains(c)
    }

    /// A pair of maximal cones whose intersection is not a face of both.
    pub fn first_clash(&self) -> Option<(Cone, Cone, Cone)> {
        let maximal = self.maximal_cones();
        for (i, a) in maximal.iter().enumerate() {
            for b in &maximal[i + 1..] {
                let meet = a.intersection(b);
                if !(meet.is_face_of(a) && meet.is_face_of(b)) {
                    return Some((a.clone(), b.clone(), meet));
                }
            }
        }
        None
    }

    pub fn is_fan(&self) -> bool {
        self.first_clash().is_none()
    }

    pub fn maximal_cones(&self) -> Vec<Cone> {
        self.cones
            .iter()
            .filter(|c| !self.cones.iter().any(|d| d != *c && c.is_face_of(d)))
            .cloned()
            .collect()
    }

    pub fn is_subfan_of(&self, other: &Fan) -> bool {
        self.ambient_rank == other.ambient_rank && self.cones.is_subset(&other.cones)
    }

    /// The cones common to both fans (again a face-closed set).
    pub fn intersection(&self, other: &Fan) -> Fan {
        Fan {
            ambient_rank: self.ambient_rank,
            cones: self.cones.intersection(&other.cones).cloned().collect(),
        }
    }

    /// Union of cone sets; the result may fail the intersection axiom.
    pub fn union(&self, other: &Fan) -> Fan {
        Fan {
            ambient_rank: self.ambient_rank,
            cones: self.cones.union(&other.cones).cloned().collect(),
        }
    }

    /// Whether the fan is the face set of one cone.
    pub fn is_irreducible(&self) -> bool {
        self.maximal_cones().len() == 1
    }
}
