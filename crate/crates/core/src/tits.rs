//! Prevaluations, extended apartments, and integral piecewise-linear maps
//! from the support `|S|` into the extended Tits building of `E`.
//!
//! Sign convention: `v(e) = -min{a : e ∈ E_a}`, so that
//! `{e : v(e) ≥ -a} = E_a` holds exactly and `v` is non-Archimedean.
//! A piece with weights `m(b)` sends `x` to the prevaluation with
//! `Φ(x)(b) = -⟨m(b), x⟩` on its basis.

use std::collections::BTreeMap;
use std::sync::Arc;

use itertools::Itertools;

use crate::fan::{ClassId, GluedSystem};
use crate::linalg::{dot, to_rational, LinalgError, Rational, Subspace};
use crate::report::ValidationReport;
use crate::sheaf::{BundleData, Filtration, SheafError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TitsError {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("vectors do not form a basis of Q^{0}")]
    NotABasis(usize),
    #[error("bundle is not locally free on cone class {0}")]
    NotLocallyFree(String),
    #[error("invalid piecewise-linear map ({} violations)", .0.violations.len())]
    InvalidPLMap(ValidationReport),
    #[error("weights do not pair integrally with the lattice")]
    NonIntegral,
    #[error("no piece for cone class {0}")]
    MissingPiece(String),
    #[error(transparent)]
    Sheaf(#[from] SheafError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A prevaluation `E → Z ∪ {∞}`, held as the filtration it determines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prevaluation {
    backing: Filtration,
}

/// The extended apartment of a basis `B`: prevaluations with
/// `v(Σ λ_i b_i) = min{v(b_i) : λ_i ≠ 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedApartment {
    basis: Vec<Vec<Rational>>,
}

impl ExtendedApartment {
    pub fn new(basis: Vec<Vec<Rational>>) -> Result<Self, TitsError> {
        let r = basis.len();
        if r == 0 || basis.iter().any(|b| b.len() != r) || !Subspace::rref(&basis, r)?.is_full() {
            return Err(TitsError::NotABasis(r));
        }
        Ok(ExtendedApartment { basis })
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

impl Prevaluation {
    pub fn new(backing: Filtration) -> Self {
        Prevaluation { backing }
    }

    /// The prevaluation of the apartment of `apt` taking `values[i]` on
    /// `b_i`.
    pub fn from_apartment(apt: &ExtendedApartment, values: &[i64]) -> Result<Self, TitsError> {
        if values.len() != apt.rank() {
            return Err(TitsError::RankMismatch {
                expected: apt.rank(),
                found: values.len(),
            });
        }
        let r = apt.rank();
        // E_a = span{b : v(b) ≥ -a}; jumps at a = -v(b).
        let levels = values.iter().map(|v| -v).sorted().dedup();
        let chain = levels
            .map(|a| {
                let rows: Vec<Vec<Rational>> = apt
                    .basis
                    .iter()
                    .zip(values)
                    .filter(|(_, &v)| v >= -a)
                    .map(|(b, _)| b.clone())
                    .collect();
                Ok((a, Subspace::rref(&rows, r)?))
            })
            .collect::<Result<Vec<_>, LinalgError>>()?;
        Ok(Prevaluation::new(Filtration::from_chain(r, chain)?))
    }

    pub fn backing(&self) -> &Filtration {
        &self.backing
    }

    pub fn rank(&self) -> usize {
        self.backing.rank()
    }

    /// `v(e)`; `None` stands for `∞` and occurs exactly at `e = 0`.
    pub fn eval(&self, e: &[Rational]) -> Result<Option<i64>, TitsError> {
        Ok(self.backing.entry_level(e)?.map(|a| -a))
    }

    /// Whether `self` lies in the extended apartment of `apt`, i.e. `apt`'s
    /// basis is adapted to the backing filtration.
    pub fn in_apartment(&self, apt: &ExtendedApartment) -> Result<bool, TitsError> {
        if apt.rank() != self.rank() {
            return Err(TitsError::RankMismatch {
                expected: self.rank(),
                found: apt.rank(),
            });
        }
        let r = self.rank();
        for (_, space) in self.backing.jumps() {
            let inside: Vec<Vec<Rational>> = apt
                .basis
                .iter()
                .filter(|b| space.contains_vector(b).unwrap_or(false))
                .cloned()
                .collect();
            if Subspace::rref(&inside, r)? != *space {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The restriction of a piecewise-linear map to one maximal cone: a basis
/// of `E` and a weight `m(b) ∈ M` per basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub basis: Vec<Vec<Rational>>,
    /// Rational so that non-integral input can be reported rather than
    /// rejected at parse time.
    pub weights: Vec<Vec<Rational>>,
}

impl Piece {
    fn is_integral(&self) -> bool {
        self.weights.iter().flatten().all(Rational::is_integer)
    }

    /// `Φ(x)` as a filtration: `E_a = span{b : ⟨m(b), x⟩ ≤ a}`.
    pub fn filtration_at(&self, x: &[i64]) -> Result<Filtration, TitsError> {
        let r = self.basis.len();
        let x = to_rational(x);
        let levels: Vec<i64> = self
            .weights
            .iter()
            .map(|m| {
                let p = dot(m, &x);
                p.to_i64().filter(|_| p.is_integer()).ok_or(TitsError::NonIntegral)
            })
            .collect::<Result<_, _>>()?;
        let chain = levels
            .iter()
            .copied()
            .sorted()
            .dedup()
            .map(|a| {
                let rows: Vec<Vec<Rational>> = self
                    .basis
                    .iter()
                    .zip(&levels)
                    .filter(|(_, &l)| l <= a)
                    .map(|(b, _)| b.clone())
                    .collect();
                Ok((a, Subspace::rref(&rows, r)?))
            })
            .collect::<Result<Vec<_>, LinalgError>>()?;
        Ok(Filtration::from_chain(r, chain)?)
    }
}

/// An integral piecewise-linear map `|S| → B̃(E)`, one piece per maximal
/// chart cone class.
#[derive(Debug, Clone)]
pub struct PLMap {
    system: Arc<GluedSystem>,
    rank: usize,
    pieces: BTreeMap<ClassId, Piece>,
}

impl PLMap {
    /// Builds the map without checking it; see [`PLMap::validate`].
    pub fn new(system: Arc<GluedSystem>, rank: usize, pieces: BTreeMap<ClassId, Piece>) -> Self {
        PLMap {
            system,
            rank,
            pieces,
        }
    }

    pub fn system(&self) -> &Arc<GluedSystem> {
        &self.system
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn pieces(&self) -> &BTreeMap<ClassId, Piece> {
        &self.pieces
    }

    pub fn piece(&self, class: ClassId) -> Option<&Piece> {
        self.pieces.get(&class)
    }

    /// `Φ(x)` for a lattice point `x` of the cone of `class`.
    pub fn prevaluation_at(&self, class: ClassId, x: &[i64]) -> Result<Prevaluation, TitsError> {
        let piece = self
            .pieces
            .get(&class)
            .ok_or_else(|| TitsError::MissingPiece(self.system.class_name(class)))?;
        Ok(Prevaluation::new(piece.filtration_at(x)?))
    }

    /// Checks bases, integrality, coverage of the maximal chart cones, and
    /// agreement of neighbouring pieces on shared faces.
    pub fn validate(&self) -> ValidationReport {
        let g = &*self.system;
        let n = g.ambient_rank();
        let r = self.rank;
        let mut report = ValidationReport::new();
        let maximal = g.maximal_chart_classes();

        for &c in &maximal {
            if !self.pieces.contains_key(&c) {
                report.push("coverage", "maximal cone class has no piece", vec![g.class_name(c)]);
            }
        }
        let mut usable = Vec::new();
        for (&c, piece) in &self.pieces {
            let name = if c < g.len() { g.class_name(c) } else { format!("#{c}") };
            if !maximal.contains(&c) {
                report.push("coverage", "piece on a class that is not a maximal chart cone", vec![name]);
                continue;
            }
            let shape_ok = piece.basis.len() == r
                && piece.weights.len() == r
                && piece.basis.iter().all(|b| b.len() == r)
                && piece.weights.iter().all(|m| m.len() == n);
            if !shape_ok {
                report.push(
                    "shape",
                    format!("expected {r} basis vectors of length {r} and {r} weights of length {n}"),
                    vec![name],
                );
                continue;
            }
            if !Subspace::rref(&piece.basis, r).is_ok_and(|s| s.is_full()) {
                report.push("basis", "basis vectors are linearly dependent", vec![name]);
                continue;
            }
            if !piece.is_integral() {
                report.push("integrality", "weights are not in M", vec![name]);
                continue;
            }
            usable.push(c);
        }

        for (a, b) in usable.iter().copied().tuple_combinations() {
            let (pa, pb) = (&self.pieces[&a], &self.pieces[&b]);
            for face in g.downset(a) {
                if !g.leq(face, b) || g.class(face).cone.is_zero() {
                    continue;
                }
                let cone = &g.class(face).cone;
                let mut points: Vec<Vec<i64>> = cone.rays().to_vec();
                if points.len() > 1 {
                    points.push(
                        (0..n)
                            .map(|k| cone.rays().iter().map(|v| v[k]).sum())
                            .collect(),
                    );
                }
                let disagree = points.iter().find(|x| {
                    match (pa.filtration_at(x), pb.filtration_at(x)) {
                        (Ok(fa), Ok(fb)) => fa != fb,
                        _ => true,
                    }
                });
                if let Some(x) = disagree {
                    report.push(
                        "face_consistency",
                        format!("pieces disagree at {x:?}"),
                        vec![g.class_name(face), g.class_name(a), g.class_name(b)],
                    );
                }
            }
        }
        report
    }
}

/// The PL map of a locally free bundle: each maximal cone's weight
/// decomposition, flattened into a basis with weights.
pub fn plmap_from_bundle(bundle: &BundleData) -> Result<PLMap, TitsError> {
    let report = bundle.is_locally_free()?;
    let g = bundle.system().clone();
    let mut pieces = BTreeMap::new();
    for verdict in report.cones {
        let Some(dec) = verdict.decomposition else {
            return Err(TitsError::NotLocallyFree(g.class_name(verdict.class)));
        };
        let mut basis = Vec::new();
        let mut weights = Vec::new();
        for comp in dec.components {
            for v in comp.basis {
                basis.push(v);
                weights.push(to_rational(&comp.weight));
            }
        }
        pieces.insert(verdict.class, Piece { basis, weights });
    }
    Ok(PLMap::new(g, bundle.rank(), pieces))
}

/// Filtrations `E^ρ(s) = span{b : ⟨m(b), v_ρ⟩ ≤ s}` read off any piece
/// containing the ray.
pub fn bundle_from_plmap(map: &PLMap) -> Result<BundleData, TitsError> {
    let report = map.validate();
    if !report.valid {
        return Err(TitsError::InvalidPLMap(report));
    }
    let g = map.system();
    let filtrations = g
        .lambda()
        .iter()
        .map(|&ray| {
            let (_, piece) = map
                .pieces
                .iter()
                .find(|(&c, _)| g.leq(ray, c))
                .ok_or_else(|| TitsError::MissingPiece(g.class_name(ray)))?;
            let v = &g.class(ray).cone.rays()[0];
            Ok((ray, piece.filtration_at(v)?))
        })
        .collect::<Result<Vec<_>, TitsError>>()?;
    Ok(BundleData::new(g.clone(), map.rank, filtrations)?)
}
