use std::sync::Arc;

use itertools::Itertools;

use crate::cone::Cone;
use crate::fan::{ClassId, GluedSystem};
use crate::linalg::{smith_form, IntVector, Rational, Subspace};

use super::grid::{check_ranks, graded_pieces, jump_grid, GridOutcome};
use super::{Filtration, SheafError};

/// Filtration data of an equivariant reflexive sheaf: one filtration of
/// `Q^r` per ray class of the glued system.
#[derive(Debug, Clone)]
pub struct BundleData {
    rank: usize,
    system: Arc<GluedSystem>,
    /// Parallel to `system.lambda()`.
    filtrations: Vec<Filtration>,
}

/// A basis adapted to a family of filtrations; `labels[b][j]` is the level
/// at which basis vector `b` enters filtration `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedBasis {
    pub vectors: Vec<Vec<Rational>>,
    pub labels: Vec<Vec<i64>>,
}

/// One eigenspace of a cone-local decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightComponent {
    /// A lift of the character in `M / (σ^⊥ ∩ M)`.
    pub weight: IntVector,
    /// `(⟨m, v_1⟩, ..., ⟨m, v_d⟩)` over the rays of the cone.
    pub tuple: Vec<i64>,
    pub basis: Vec<Vec<Rational>>,
}

impl WeightComponent {
    pub fn space(&self) -> Subspace {
        let n = self.basis.first().map_or(0, Vec::len);
        Subspace::rref(&self.basis, n).expect("component vectors share a length")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDecomposition {
    pub class: ClassId,
    pub components: Vec<WeightComponent>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeVerdict {
    pub class: ClassId,
    pub compatible: bool,
    pub decomposition: Option<WeightDecomposition>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityReport {
    pub cones: Vec<ConeVerdict>,
    pub locally_free: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankSplitVerdict {
    pub holds: bool,
    /// An `(m+1)`-subset of `Λ` that generates no cone of any chart.
    pub witness: Option<Vec<ClassId>>,
}

impl BundleData {
    /// `filtrations` must contain exactly one entry per ray class.
    pub fn new(
        system: Arc<GluedSystem>,
        rank: usize,
        filtrations: Vec<(ClassId, Filtration)>,
    ) -> Result<Self, SheafError> {
        let lambda = system.lambda().to_vec();
        let mut slots: Vec<Option<Filtration>> = vec![None; lambda.len()];
        for (class, f) in filtrations {
            let pos = system
                .lambda_position(class)
                .ok_or_else(|| SheafError::UnknownClass(class_label(&system, class)))?;
            if f.rank() != rank {
                return Err(SheafError::RankMismatch {
                    expected: rank,
                    found: f.rank(),
                });
            }
            if slots[pos].replace(f).is_some() {
                return Err(SheafError::DuplicateFiltration(system.class_name(class)));
            }
        }
        let filtrations = slots
            .into_iter()
            .zip(&lambda)
            .map(|(f, &c)| f.ok_or_else(|| SheafError::MissingRayFiltration(system.class_name(c))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BundleData {
            rank,
            system,
            filtrations,
        })
    }

    /// Every filtration jumps from `0` to `E` at level 0.
    pub fn trivial(system: Arc<GluedSystem>, rank: usize) -> Self {
        let filtrations = vec![Filtration::trivial(rank); system.lambda().len()];
        BundleData {
            rank,
            system,
            filtrations,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn system(&self) -> &Arc<GluedSystem> {
        &self.system
    }

    /// `(class, filtration)` pairs in `Λ` order.
    pub fn filtrations(&self) -> impl Iterator<Item = (ClassId, &Filtration)> {
        self.system.lambda().iter().copied().zip(&self.filtrations)
    }

    pub fn filtration(&self, class: ClassId) -> Option<&Filtration> {
        self.system
            .lambda_position(class)
            .map(|p| &self.filtrations[p])
    }

    fn cone_data(&self, class: ClassId) -> Result<(Cone, Vec<&Filtration>), SheafError> {
        let c = self.system.class(class);
        let label = c.representative_label();
        let mut filts = Vec::new();
        for r in c.cone.rays() {
            let ray = Cone::ray(r).expect("nonzero ray");
            let rc = self
                .system
                .class_of(&ray, label)
                .ok_or_else(|| SheafError::MissingRayFiltration(format!("{r:?}")))?;
            let f = self
                .filtration(rc)
                .ok_or_else(|| SheafError::MissingRayFiltration(self.system.class_name(rc)))?;
            filts.push(f);
        }
        Ok((c.cone.clone(), filts))
    }

    /// Decides whether the filtrations on the rays of `class` come from a
    /// character decomposition `E = ⊕ E_m` over the cone, and returns one.
    pub fn check_cone_compatibility(&self, class: ClassId) -> Result<ConeVerdict, SheafError> {
        let (cone, filts) = self.cone_data(class)?;
        if filts.is_empty() {
            let comp = WeightComponent {
                weight: vec![0; cone.ambient_rank()],
                tuple: Vec::new(),
                basis: Subspace::full(self.rank).basis().to_vec(),
            };
            return Ok(ConeVerdict {
                class,
                compatible: true,
                decomposition: Some(WeightDecomposition {
                    class,
                    components: vec![comp],
                }),
            });
        }
        let smith = smith_form(cone.rays());
        let tuples = admissible_tuples(&cone, &filts);
        let outcome = graded_pieces(&filts, &tuples)?;
        if !outcome.splits() {
            return Ok(ConeVerdict {
                class,
                compatible: false,
                decomposition: None,
            });
        }
        let components = outcome
            .pieces
            .into_iter()
            .map(|p| {
                let weight = smith
                    .solve_integral(&p.tuple)
                    .ok_or(SheafError::NonPointedIndex)?;
                Ok(WeightComponent {
                    weight,
                    tuple: p.tuple,
                    basis: p.vectors,
                })
            })
            .collect::<Result<Vec<_>, SheafError>>()?;
        Ok(ConeVerdict {
            class,
            compatible: true,
            decomposition: Some(WeightDecomposition { class, components }),
        })
    }

    /// Runs the cone check on every maximal cone of every chart.
    pub fn is_locally_free(&self) -> Result<CompatibilityReport, SheafError> {
        let cones = self
            .system
            .maximal_chart_classes()
            .into_iter()
            .map(|c| self.check_cone_compatibility(c))
            .collect::<Result<Vec<_>, _>>()?;
        let locally_free = cones.iter().all(|c| c.compatible);
        Ok(CompatibilityReport {
            cones,
            locally_free,
        })
    }

    /// A global basis adapted to every filtration of `Λ`, i.e. an
    /// equivariant splitting into line bundles. Only meaningful on smooth
    /// systems.
    pub fn splits_equivariantly(&self) -> Result<Option<AdaptedBasis>, SheafError> {
        if !self.system.system().is_smooth() {
            return Err(SheafError::NotSmooth);
        }
        if self.filtrations.is_empty() {
            return Ok(Some(AdaptedBasis {
                vectors: Subspace::full(self.rank).basis().to_vec(),
                labels: vec![Vec::new(); self.rank],
            }));
        }
        adapted_basis(&self.filtrations)
    }

    /// Whether `map` (a `rank(b) × rank(a)` matrix) carries every
    /// `A(s)` into `B(s)`.
    pub fn is_morphism_to(&self, map: &[Vec<Rational>], target: &BundleData) -> Result<bool, SheafError> {
        if self.system.system() != target.system.system() {
            return Err(SheafError::SystemMismatch);
        }
        if map.len() != target.rank || map.iter().any(|r| r.len() != self.rank) {
            return Err(SheafError::ShapeMismatch {
                rows: target.rank,
                cols: self.rank,
            });
        }
        for (fa, fb) in self.filtrations.iter().zip(&target.filtrations) {
            let levels = fa.jump_levels().into_iter().chain(fb.jump_levels()).sorted().dedup();
            for s in levels {
                if !fa.at(s).image(map)?.is_subspace_of(&fb.at(s))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn class_label(system: &GluedSystem, class: ClassId) -> String {
    if class < system.len() {
        system.class_name(class)
    } else {
        format!("#{class}")
    }
}

/// The tuples `(⟨m, v_1⟩, ..., ⟨m, v_d⟩)`, `m ∈ M`, inside a window that
/// carries every nonzero graded piece. For smooth cones this is the product
/// of jump levels. Otherwise the lattice of tuples contains `e·Z^d` (`e` the
/// largest Smith invariant) on simplicial cones, so above `last_jump + e - 1`
/// in any coordinate a tuple repeats the space of a smaller one.
fn admissible_tuples(cone: &Cone, filts: &[&Filtration]) -> Vec<Vec<i64>> {
    if cone.is_smooth() {
        return jump_grid(filts);
    }
    let smith = smith_form(cone.rays());
    let e = smith
        .diagonal
        .iter()
        .copied()
        .filter(|&d| d != 0)
        .max()
        .unwrap_or(1) as i64;
    let d = filts.len() as i64;
    let slack = if cone.is_simplicial() { e } else { d * e };
    filts
        .iter()
        .map(|f| f.first_level()..=f.last_level() + slack - 1)
        .multi_cartesian_product()
        .filter(|t| smith.solve_integral(t).is_some())
        .collect()
}

/// A common adapted basis of `filts` over the full product of jump levels.
pub fn adapted_basis(filts: &[Filtration]) -> Result<Option<AdaptedBasis>, SheafError> {
    let refs: Vec<&Filtration> = filts.iter().collect();
    check_ranks(&refs)?;
    let outcome = graded_pieces(&refs, &jump_grid(&refs))?;
    Ok(basis_from_outcome(outcome))
}

fn basis_from_outcome(outcome: GridOutcome) -> Option<AdaptedBasis> {
    if !outcome.splits() {
        return None;
    }
    let mut vectors = Vec::new();
    let mut labels = Vec::new();
    for p in outcome.pieces {
        for v in p.vectors {
            vectors.push(v);
            labels.push(p.tuple.clone());
        }
    }
    Some(AdaptedBasis { vectors, labels })
}

impl AdaptedBasis {
    /// Checks directly that `B ∩ F(s)` spans `F(s)` for every jump.
    pub fn is_adapted_to(&self, filts: &[Filtration]) -> Result<bool, SheafError> {
        let Some(r) = filts.first().map(Filtration::rank) else {
            return Ok(true);
        };
        if self.vectors.len() != r || !Subspace::rref(&self.vectors, r)?.is_full() {
            return Ok(false);
        }
        for f in filts {
            for (_, space) in f.jumps() {
                let inside: Vec<Vec<Rational>> = self
                    .vectors
                    .iter()
                    .filter(|v| space.contains_vector(v).unwrap_or(false))
                    .cloned()
                    .collect();
                if Subspace::rref(&inside, r)? != *space {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// The tangent bundle of a smooth system: `Span(v_ρ)` at level `-1` and
/// everything from level `0` on, for every ray class.
pub fn tangent_bundle(system: Arc<GluedSystem>) -> Result<BundleData, SheafError> {
    if !system.system().is_smooth() {
        return Err(SheafError::NotSmooth);
    }
    let r = system.ambient_rank();
    let filtrations = system
        .lambda()
        .iter()
        .map(|&c| {
            let v = system.class(c).cone.rays()[0].clone();
            let line = Subspace::span_ints(&[v], r)?;
            Ok((c, Filtration::line_then_full(&line, -1)?))
        })
        .collect::<Result<Vec<_>, SheafError>>()?;
    BundleData::new(system, r, filtrations)
}

/// Whether every `(m+1)`-subset `A ⊆ Λ` has its rays generating a cone of
/// some chart. With `strict_labels`, each class of `A` must moreover be the
/// class of its ray under that chart's label.
pub fn rank_split_structural(
    system: &GluedSystem,
    m: usize,
    strict_labels: bool,
) -> Result<RankSplitVerdict, SheafError> {
    if m < 2 {
        return Err(SheafError::DegenerateRank(m));
    }
    Ok(rank_split_unchecked(system, m, strict_labels))
}

/// [`rank_split_structural`] without the `m ≥ 2` precondition.
pub fn rank_split_unchecked(system: &GluedSystem, m: usize, strict_labels: bool) -> RankSplitVerdict {
    let sof = system.system();
    for subset in system.lambda().iter().copied().combinations(m + 1) {
        let mut rays: Vec<IntVector> = subset
            .iter()
            .map(|&c| system.class(c).cone.rays()[0].clone())
            .collect();
        rays.sort();
        rays.dedup();
        let realized = (0..sof.len()).any(|j| {
            sof.fan(j, j).cones().any(|c| {
                c.rays() == rays.as_slice()
                    && (!strict_labels
                        || subset.iter().all(|&cls| {
                            let ray = &system.class(cls).cone;
                            system.class_of(ray, j) == Some(cls)
                        }))
            })
        });
        if !realized {
            return RankSplitVerdict {
                holds: false,
                witness: Some(subset),
            };
        }
    }
    RankSplitVerdict {
        holds: true,
        witness: None,
    }
}
