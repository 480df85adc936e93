use std::fmt;

use crate::linalg::{Rational, Subspace};

use super::SheafError;

/// A full increasing `Z`-filtration of `Q^r`, stored by its jumps.
///
/// The value at level `s` is the space of the largest jump `≤ s`, and zero
/// below the first jump. The last jump is always the whole space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Filtration {
    rank: usize,
    jumps: Vec<(i64, Subspace)>,
}

impl fmt::Debug for Filtration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.jumps.iter().map(|(s, v)| (s, v.basis())))
            .finish()
    }
}

impl Filtration {
    pub fn new(rank: usize, jumps: Vec<(i64, Subspace)>) -> Result<Self, SheafError> {
        if rank == 0 {
            return Err(SheafError::InvalidFiltration("rank must be positive".into()));
        }
        if jumps.is_empty() {
            return Err(SheafError::InvalidFiltration("no jumps".into()));
        }
        for (s, v) in &jumps {
            if v.ambient_dim() != rank {
                return Err(SheafError::InvalidFiltration(format!(
                    "space at level {s} lives in dimension {}, expected {rank}",
                    v.ambient_dim()
                )));
            }
        }
        for w in jumps.windows(2) {
            let ((s0, v0), (s1, v1)) = (&w[0], &w[1]);
            if s0 >= s1 {
                return Err(SheafError::InvalidFiltration(format!(
                    "levels must increase strictly ({s0} then {s1})"
                )));
            }
            if v0.dim() >= v1.dim() || !v0.is_subspace_of(v1)? {
                return Err(SheafError::InvalidFiltration(format!(
                    "space at level {s1} does not strictly contain the space at level {s0}"
                )));
            }
        }
        if jumps[0].1.is_zero() {
            return Err(SheafError::InvalidFiltration(
                "a jump to the zero space is not a jump".into(),
            ));
        }
        let (last, top) = jumps.last().expect("nonempty");
        if !top.is_full() {
            return Err(SheafError::InvalidFiltration(format!(
                "last jump at level {last} is not the whole space"
            )));
        }
        Ok(Filtration { rank, jumps })
    }

    /// Builds a filtration from an arbitrary increasing chain, dropping
    /// repeated spaces and zero levels.
    pub fn from_chain(rank: usize, chain: Vec<(i64, Subspace)>) -> Result<Self, SheafError> {
        let mut jumps: Vec<(i64, Subspace)> = Vec::new();
        for (s, v) in chain {
            if v.is_zero() || jumps.last().is_some_and(|(_, w)| *w == v) {
                continue;
            }
            jumps.push((s, v));
        }
        Filtration::new(rank, jumps)
    }

    /// `0` below level 0, everything from level 0 on.
    pub fn trivial(rank: usize) -> Self {
        Filtration {
            rank,
            jumps: vec![(0, Subspace::full(rank))],
        }
    }

    /// `0 ⊂ line ⊂ E` with jumps at `level` and `level + 1`. A line equal
    /// to `E` gives a single jump.
    pub fn line_then_full(line: &Subspace, level: i64) -> Result<Self, SheafError> {
        let r = line.ambient_dim();
        Filtration::from_chain(r, vec![(level, line.clone()), (level + 1, Subspace::full(r))])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn jumps(&self) -> &[(i64, Subspace)] {
        &self.jumps
    }

    pub fn jump_levels(&self) -> Vec<i64> {
        self.jumps.iter().map(|(s, _)| *s).collect()
    }

    pub fn first_level(&self) -> i64 {
        self.jumps[0].0
    }

    pub fn last_level(&self) -> i64 {
        self.jumps[self.jumps.len() - 1].0
    }

    /// The space at level `s`.
    pub fn at(&self, s: i64) -> Subspace {
        match self.jumps.iter().rev().find(|(l, _)| *l <= s) {
            Some((_, v)) => v.clone(),
            None => Subspace::zero(self.rank),
        }
    }

    pub(crate) fn at_ref(&self, s: i64) -> Option<&Subspace> {
        self.jumps.iter().rev().find(|(l, _)| *l <= s).map(|(_, v)| v)
    }

    /// Least level whose space contains `v`; `None` for the zero vector.
    pub fn entry_level(&self, v: &[Rational]) -> Result<Option<i64>, SheafError> {
        if v.len() != self.rank {
            return Err(SheafError::RankMismatch {
                expected: self.rank,
                found: v.len(),
            });
        }
        if v.iter().all(Rational::is_zero) {
            return Ok(None);
        }
        for (s, space) in &self.jumps {
            if space.contains_vector(v)? {
                return Ok(Some(*s));
            }
        }
        unreachable!("the last jump is the whole space")
    }

    /// The filtration `g·F` for an invertible matrix `g`.
    pub fn transform(&self, g: &[Vec<Rational>]) -> Result<Self, SheafError> {
        let jumps = self
            .jumps
            .iter()
            .map(|(s, v)| Ok((*s, v.image(g)?)))
            .collect::<Result<Vec<_>, SheafError>>()?;
        Filtration::new(self.rank, jumps)
    }

    /// Shift every level by `k`.
    pub fn shifted(&self, k: i64) -> Self {
        Filtration {
            rank: self.rank,
            jumps: self.jumps.iter().map(|(s, v)| (s + k, v.clone())).collect(),
        }
    }
}
