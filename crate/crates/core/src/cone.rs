//! Strongly convex rational polyhedral cones.
//!
//! A [`Cone`] is identified by its sorted set of primitive extreme-ray
//! generators. Facet normals are computed once at construction and live in
//! `span(σ)`, so they are canonical even for cones that are not full
//! dimensional.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg::{
    dot, kernel, pairing, primitive, primitive_from_rational, smith_invariants, to_rational,
    IntVector, Rational, Subspace,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConeError {
    #[error("generators {generators:?} span a cone containing a line")]
    NotStronglyConvex { generators: Vec<IntVector> },
    #[error("generator {generator:?} has length {found}, expected ambient rank {expected}")]
    DimensionMismatch {
        generator: IntVector,
        expected: usize,
        found: usize,
    },
}

pub struct Cone {
    ambient_rank: usize,
    rays: Vec<IntVector>,
    facet_normals: Vec<IntVector>,
    dim: usize,
    faces: OnceLock<Vec<Vec<usize>>>,
}

impl Clone for Cone {
    fn clone(&self) -> Self {
        Cone {
            ambient_rank: self.ambient_rank,
            rays: self.rays.clone(),
            facet_normals: self.facet_normals.clone(),
            dim: self.dim,
            faces: self.faces.clone(),
        }
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.rays == other.rays
    }
}

impl Eq for Cone {}

impl Hash for Cone {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient_rank.hash(state);
        self.rays.hash(state);
    }
}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Cones order by dimension first, then lexicographically by ray list.
impl Ord for Cone {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient_rank, self.dim, &self.rays).cmp(&(other.ambient_rank, other.dim, &other.rays))
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone{:?}", self.rays)
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rays.is_empty() {
            return write!(f, "{{0}}");
        }
        let rays = self
            .rays
            .iter()
            .map(|r| format!("({})", r.iter().join(",")))
            .join(",");
        write!(f, "cone[{rays}]")
    }
}

impl Serialize for Cone {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rays.serialize(serializer)
    }
}

/// Deserialized generators, not yet a canonical cone: the ambient rank lives
/// in the enclosing document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeGenerators(pub Vec<IntVector>);

impl<'de> Deserialize<'de> for ConeGenerators {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(ConeGenerators(Vec::<IntVector>::deserialize(deserializer)?))
    }
}

/// The rays of the pointed cone `{x ∈ W : ⟨u, x⟩ ≥ 0 ∀u}` where `W` has the
/// given (rational) basis. Each extreme ray meets `k - 1` independent active
/// constraints, so candidate directions come from `(k-1)`-subsets.
fn hrep_rays(ineqs: &[Vec<Rational>], space_basis: &[Vec<Rational>]) -> Vec<IntVector> {
    let k = space_basis.len();
    if k == 0 {
        return Vec::new();
    }
    let n = space_basis[0].len();
    let local: Vec<Vec<Rational>> = ineqs
        .iter()
        .map(|u| space_basis.iter().map(|w| dot(u, w)).collect())
        .collect();
    let lift = |y: &[Rational]| -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n];
        for (c, w) in y.iter().zip(space_basis) {
            for (xi, wi) in x.iter_mut().zip(w) {
                *xi = &*xi + &(c * wi);
            }
        }
        x
    };
    let mut out: Vec<IntVector> = Vec::new();
    for subset in (0..local.len()).combinations(k - 1) {
        let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| local[i].clone()).collect();
        let ker = kernel(&rows, k);
        if ker.len() != 1 {
            continue;
        }
        let y = &ker[0];
        let vals: Vec<Rational> = local.iter().map(|u| dot(u, y)).collect();
        let sign = if vals.iter().all(|v| !v.is_negative()) {
            1
        } else if vals.iter().all(|v| !v.is_positive()) {
            -1
        } else {
            continue;
        };
        let mut ray = primitive_from_rational(&lift(y));
        if sign < 0 {
            ray.iter_mut().for_each(|x| *x = -*x);
        }
        if !out.contains(&ray) {
            out.push(ray);
        }
    }
    out
}

impl Cone {
    /// The cone generated by `gens` in canonical form.
    pub fn from_generators(gens: &[IntVector], ambient_rank: usize) -> Result<Cone, ConeError> {
        for g in gens {
            if g.len() != ambient_rank {
                return Err(ConeError::DimensionMismatch {
                    generator: g.clone(),
                    expected: ambient_rank,
                    found: g.len(),
                });
            }
        }
        let mut prims: Vec<IntVector> = gens
            .iter()
            .filter(|g| g.iter().any(|&x| x != 0))
            .map(|g| primitive(g))
            .collect();
        prims.sort();
        prims.dedup();
        if prims.is_empty() {
            return Ok(Cone::zero(ambient_rank));
        }
        let span = Subspace::span_ints(&prims, ambient_rank).expect("lengths checked");
        let d = span.dim();
        let facet_normals = facets_in_span(&prims, &span);

        // Lineality space inside span(σ): common zeros of all facet normals.
        let mut rows: Vec<Vec<Rational>> = facet_normals.iter().map(|u| to_rational(u)).collect();
        rows.extend(kernel(span.basis(), ambient_rank));
        let lineality = kernel(&rows, ambient_rank);
        if !lineality.is_empty() {
            return Err(ConeError::NotStronglyConvex {
                generators: gens.to_vec(),
            });
        }

        let rays: Vec<IntVector> = if d == 1 {
            prims.clone()
        } else {
            prims
                .iter()
                .filter(|g| {
                    let tight: Vec<&IntVector> = facet_normals
                        .iter()
                        .filter(|u| pairing(u, g) == 0)
                        .collect();
                    prims
                        .iter()
                        .filter(|h| tight.iter().all(|u| pairing(u, h) == 0))
                        .count()
                        == 1
                })
                .cloned()
                .collect()
        };
        Ok(Cone {
            ambient_rank,
            rays,
            facet_normals,
            dim: d,
            faces: OnceLock::new(),
        })
    }

    pub fn zero(ambient_rank: usize) -> Cone {
        Cone {
            ambient_rank,
            rays: Vec::new(),
            facet_normals: Vec::new(),
            dim: 0,
            faces: OnceLock::new(),
        }
    }

    /// The ray through a single nonzero vector.
    pub fn ray(v: &[i64]) -> Result<Cone, ConeError> {
        Cone::from_generators(&[v.to_vec()], v.len())
    }

    /// Canonical cone spanned by a subset of extreme rays of a strongly
    /// convex cone; such a subset is always the ray set of the result when it
    /// comes from a face.
    fn face_from_rays(&self, idx: &[usize]) -> Cone {
        let gens: Vec<IntVector> = idx.iter().map(|&i| self.rays[i].clone()).collect();
        Cone::from_generators(&gens, self.ambient_rank).expect("face of a pointed cone is pointed")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn facet_normals(&self) -> &[IntVector] {
        &self.facet_normals
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn span(&self) -> Subspace {
        Subspace::span_ints(&self.rays, self.ambient_rank).expect("rays have ambient length")
    }

    /// Sum of the ray generators, a lattice point of the relative interior.
    pub fn interior_point(&self) -> IntVector {
        let mut p = vec![0; self.ambient_rank];
        for r in &self.rays {
            for (x, y) in p.iter_mut().zip(r) {
                *x += y;
            }
        }
        p
    }

    fn face_index_sets(&self) -> &Vec<Vec<usize>> {
        self.faces.get_or_init(|| {
            let all: Vec<usize> = (0..self.rays.len()).collect();
            let mut seen = vec![all.clone()];
            let mut queue = vec![all];
            while let Some(set) = queue.pop() {
                for u in &self.facet_normals {
                    let next: Vec<usize> = set
                        .iter()
                        .copied()
                        .filter(|&i| pairing(u, &self.rays[i]) == 0)
                        .collect();
                    if !seen.contains(&next) {
                        seen.push(next.clone());
                        queue.push(next);
                    }
                }
            }
            seen.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            seen
        })
    }

    /// All faces, from `{0}` up to the cone itself.
    pub fn faces(&self) -> Vec<Cone> {
        let mut out: Vec<Cone> = self
            .face_index_sets()
            .iter()
            .map(|idx| self.face_from_rays(idx))
            .collect();
        out.sort();
        out
    }

    /// Whether `self` is a face of `other`.
    pub fn is_face_of(&self, other: &Cone) -> bool {
        if self.ambient_rank != other.ambient_rank {
            return false;
        }
        let Some(idx) = self
            .rays
            .iter()
            .map(|r| other.rays.iter().position(|s| s == r))
            .collect::<Option<Vec<usize>>>()
        else {
            return false;
        };
        let mut idx = idx;
        idx.sort_unstable();
        other.face_index_sets().contains(&idx)
    }

    fn in_span(&self, x: &[Rational]) -> bool {
        self.span().contains_vector(x).unwrap_or(false)
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        x.len() == self.ambient_rank
            && self.in_span(x)
            && self
                .facet_normals
                .iter()
                .all(|u| !dot(&to_rational(u), x).is_negative())
    }

    pub fn relint_contains(&self, x: &[Rational]) -> bool {
        x.len() == self.ambient_rank
            && self.in_span(x)
            && self
                .facet_normals
                .iter()
                .all(|u| dot(&to_rational(u), x).is_positive())
    }

    pub fn contains_lattice_point(&self, x: &[i64]) -> bool {
        self.contains_point(&to_rational(x))
    }

    /// The ray generators extend to a basis of the lattice.
    pub fn is_smooth(&self) -> bool {
        if self.rays.is_empty() {
            return true;
        }
        self.rays.len() == self.dim && smith_invariants(&self.rays).iter().all(|&d| d == 1)
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim
    }

    /// `m ≤_σ m2`: the difference pairs nonnegatively with every ray.
    pub fn leq_sigma(&self, m: &[i64], m2: &[i64]) -> bool {
        let diff: IntVector = m2.iter().zip(m).map(|(a, b)| a - b).collect();
        self.rays.iter().all(|v| pairing(&diff, v) >= 0)
    }

    /// `self ∩ other` as a cone.
    pub fn intersection(&self, other: &Cone) -> Cone {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        let w = self.span().intersect(&other.span()).expect("same ambient");
        let ineqs: Vec<Vec<Rational>> = self
            .facet_normals
            .iter()
            .chain(&other.facet_normals)
            .map(|u| to_rational(u))
            .collect();
        let rays = hrep_rays(&ineqs, w.basis());
        Cone::from_generators(&rays, self.ambient_rank).expect("intersection of pointed cones")
    }
}

/// Primitive facet normals of the cone generated by `gens`, taken inside
/// `span` so that they are unique.
fn facets_in_span(gens: &[IntVector], span: &Subspace) -> Vec<IntVector> {
    let d = span.dim();
    let basis = span.basis();
    let gens_q: Vec<Vec<Rational>> = gens.iter().map(|g| to_rational(g)).collect();
    // Coordinates of ⟨w, g⟩ for w = Σ c_i basis_i.
    let gram: Vec<Vec<Rational>> = gens_q
        .iter()
        .map(|g| basis.iter().map(|b| dot(b, g)).collect())
        .collect();
    let mut normals: Vec<IntVector> = Vec::new();
    for subset in (0..gens.len()).combinations(d.saturating_sub(1)) {
        let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| gram[i].clone()).collect();
        let ker = kernel(&rows, d);
        if ker.len() != 1 {
            continue;
        }
        let c = &ker[0];
        let vals: Vec<Rational> = gram.iter().map(|g| dot(g, c)).collect();
        let sign = if vals.iter().all(|v| !v.is_negative()) {
            1
        } else if vals.iter().all(|v| !v.is_positive()) {
            -1
        } else {
            continue;
        };
        let mut w = vec![Rational::zero(); span.ambient_dim()];
        for (ci, b) in c.iter().zip(basis) {
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi = &*wi + &(ci * bi);
            }
        }
        let mut u = primitive_from_rational(&w);
        if sign < 0 {
            u.iter_mut().for_each(|x| *x = -*x);
        }
        if !normals.contains(&u) {
            normals.push(u);
        }
    }
    normals.sort();
    normals
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(gens: &[&[i64]]) -> Cone {
        let n = gens[0].len();
        let g: Vec<IntVector> = gens.iter().map(|r| r.to_vec()).collect();
        Cone::from_generators(&g, n).unwrap()
    }

    fn q(v: &[i64]) -> Vec<Rational> {
        to_rational(v)
    }

    #[test]
    fn from_generators_examples() {
        let c = cone(&[&[2, 0]]);
        assert_eq!(c.rays(), &[vec![1, 0]]);
        assert_eq!(c.dim(), 1);
        let c = cone(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(c.rays(), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(c.dim(), 2);
        let err = Cone::from_generators(&[vec![1, 0], vec![-1, 0]], 2).unwrap_err();
        assert!(matches!(err, ConeError::NotStronglyConvex { .. }));
        let err = Cone::from_generators(&[vec![1, 0], vec![-1, 0], vec![0, 1]], 2).unwrap_err();
        assert!(matches!(err, ConeError::NotStronglyConvex { .. }));
        assert!(Cone::from_generators(&[vec![1, 0, 0]], 2).is_err());
    }

    #[test]
    fn facet_examples() {
        assert_eq!(cone(&[&[1, 0], &[0, 1]]).facet_normals(), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(cone(&[&[0, 1], &[1, -1]]).facet_normals(), &[vec![1, 0], vec![1, 1]]);
        assert!(Cone::zero(2).facet_normals().is_empty());
        // a ray in the plane: normal is its own direction
        assert_eq!(cone(&[&[1, 1]]).facet_normals(), &[vec![1, 1]]);
    }

    #[test]
    fn face_examples() {
        let quad = cone(&[&[1, 0], &[0, 1]]);
        assert_eq!(quad.faces().len(), 4);
        let oct = cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(oct.faces().len(), 8);
        assert_eq!(Cone::zero(3).faces(), vec![Cone::zero(3)]);
        // square pyramid: 1 + 4 + 4 + 1 faces
        let sq = cone(&[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]);
        assert_eq!(sq.rays().len(), 4);
        assert_eq!(sq.faces().len(), 10);
    }

    #[test]
    fn is_face_examples() {
        let quad = cone(&[&[1, 0], &[0, 1]]);
        assert!(Cone::ray(&[1, 0]).unwrap().is_face_of(&quad));
        assert!(!Cone::ray(&[1, 1]).unwrap().is_face_of(&quad));
        assert!(quad.is_face_of(&quad));
        assert!(Cone::zero(2).is_face_of(&quad));
        let sq = cone(&[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]);
        let diagonal = cone(&[&[1, 0, 1], &[-1, 0, 1]]);
        assert!(!diagonal.is_face_of(&sq));
    }

    #[test]
    fn point_location() {
        let quad = cone(&[&[1, 0], &[0, 1]]);
        assert!(quad.contains_point(&q(&[1, 1])) && quad.relint_contains(&q(&[1, 1])));
        assert!(quad.contains_point(&q(&[1, 0])) && !quad.relint_contains(&q(&[1, 0])));
        let z = Cone::zero(2);
        assert!(z.contains_point(&q(&[0, 0])) && z.relint_contains(&q(&[0, 0])));
        let r = Cone::ray(&[1, 1]).unwrap();
        assert!(!r.contains_point(&q(&[1, 2])));
        assert!(r.relint_contains(&q(&[3, 3])));
    }

    #[test]
    fn smoothness() {
        assert!(cone(&[&[0, 1], &[1, -1]]).is_smooth());
        assert!(!cone(&[&[1, 0], &[1, 2]]).is_smooth());
        assert!(Cone::zero(2).is_smooth());
        let sq = cone(&[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]);
        assert!(!sq.is_smooth());
    }

    #[test]
    fn leq_sigma_examples() {
        let quad = cone(&[&[1, 0], &[0, 1]]);
        assert!(quad.leq_sigma(&[0, 0], &[1, 2]));
        assert!(!quad.leq_sigma(&[0, 0], &[-1, 0]));
        assert!(cone(&[&[0, 1], &[1, -1]]).leq_sigma(&[0, 0], &[1, 1]));
    }

    #[test]
    fn intersections() {
        let quad = cone(&[&[1, 0], &[0, 1]]);
        let wedge = cone(&[&[1, 1], &[1, -1]]);
        assert_eq!(quad.intersection(&wedge), cone(&[&[1, 0], &[1, 1]]));
        let r = Cone::ray(&[-1, -1]).unwrap();
        assert!(quad.intersection(&r).is_zero());
        assert_eq!(quad.intersection(&Cone::ray(&[1, 0]).unwrap()), Cone::ray(&[1, 0]).unwrap());
    }
}
