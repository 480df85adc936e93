//! The graded-piece criterion shared by adapted bases, per-cone
//! compatibility and global splitting.
//!
//! Given filtrations `F_1..F_d` of `E` and a finite, down-complete set `T` of
//! level tuples, put `V_t = ∩_j F_j(t_j)` and `P_t = Σ_{t' ∈ T, t' < t} V_{t'}`.
//! A decomposition `E = ⊕_t E_t` with `F_j(s) = Σ_{t_j ≤ s} E_t` exists iff
//! `Σ_t dim(V_t / P_t) = dim E`; on success any complements of `P_t` in
//! `V_t` form one. The identity `Σ_{t_j ≤ s} V_t = F_j(s)` is also checked,
//! since it is what ties the tuple set back to the filtrations.

use itertools::Itertools;

use crate::linalg::{Rational, Subspace};

use super::{Filtration, SheafError};

/// One graded piece: the level tuple and the vectors chosen to span a
/// complement of the lower pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece {
    pub tuple: Vec<i64>,
    pub vectors: Vec<Vec<Rational>>,
}

#[derive(Debug, Clone)]
pub struct GridOutcome {
    pub pieces: Vec<GradedPiece>,
    /// `Σ_t dim(V_t / P_t)`.
    pub graded_dim: usize,
    /// Whether `Σ_{t_j ≤ s} V_t = F_j(s)` held at every jump.
    pub sums_match: bool,
    pub rank: usize,
}

impl GridOutcome {
    pub fn splits(&self) -> bool {
        self.sums_match && self.graded_dim == self.rank
    }
}

fn leq(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Runs the criterion over `tuples`. `tuples` need not be sorted.
pub fn graded_pieces(filts: &[&Filtration], tuples: &[Vec<i64>]) -> Result<GridOutcome, SheafError> {
    let rank = check_ranks(filts)?;
    let mut order: Vec<&Vec<i64>> = tuples.iter().collect();
    order.sort_by_key(|t| (t.iter().sum::<i64>(), (*t).clone()));
    order.dedup();

    let spaces: Vec<Subspace> = order
        .iter()
        .map(|t| intersection_at(filts, t, rank))
        .collect::<Result<_, _>>()?;

    let mut pieces = Vec::new();
    let mut graded_dim = 0;
    for (k, t) in order.iter().enumerate() {
        let v_t = &spaces[k];
        if v_t.is_zero() {
            continue;
        }
        let mut below = Subspace::zero(rank);
        for p in (0..k).rev() {
            if spaces[p].is_zero() || !leq(order[p], t) || *order[p] == **t {
                continue;
            }
            if !spaces[p].is_subspace_of(&below)? {
                below = below.sum(&spaces[p])?;
                if below == *v_t {
                    break;
                }
            }
        }
        let fresh = v_t.complement_basis(&below)?;
        if !fresh.is_empty() {
            graded_dim += fresh.len();
            pieces.push(GradedPiece {
                tuple: (*t).clone(),
                vectors: fresh,
            });
        }
        if graded_dim > rank {
            break;
        }
    }

    let mut sums_match = true;
    'outer: for (j, f) in filts.iter().enumerate() {
        for (s, space) in f.jumps() {
            let mut acc = Subspace::zero(rank);
            for (k, t) in order.iter().enumerate() {
                if t[j] <= *s && !spaces[k].is_subspace_of(&acc)? {
                    acc = acc.sum(&spaces[k])?;
                }
            }
            if acc != *space {
                sums_match = false;
                break 'outer;
            }
        }
    }

    Ok(GridOutcome {
        pieces,
        graded_dim,
        sums_match,
        rank,
    })
}

pub(crate) fn check_ranks(filts: &[&Filtration]) -> Result<usize, SheafError> {
    let Some(first) = filts.first() else {
        return Err(SheafError::EmptyFamily);
    };
    let rank = first.rank();
    if let Some(f) = filts.iter().find(|f| f.rank() != rank) {
        return Err(SheafError::RankMismatch {
            expected: rank,
            found: f.rank(),
        });
    }
    Ok(rank)
}

fn intersection_at(filts: &[&Filtration], t: &[i64], rank: usize) -> Result<Subspace, SheafError> {
    let mut acc = Subspace::full(rank);
    for (f, &s) in filts.iter().zip(t) {
        match f.at_ref(s) {
            None => return Ok(Subspace::zero(rank)),
            Some(v) if v.is_full() => {}
            Some(v) => {
                acc = acc.intersect(v)?;
                if acc.is_zero() {
                    return Ok(acc);
                }
            }
        }
    }
    Ok(acc)
}

/// Product of the jump-level sets: enough tuples for the full grid, since
/// every `V_t` equals `V` at the tuple of largest jump levels below `t`.
pub fn jump_grid(filts: &[&Filtration]) -> Vec<Vec<i64>> {
    if filts.is_empty() {
        return vec![Vec::new()];
    }
    filts
        .iter()
        .map(|f| f.jump_levels())
        .multi_cartesian_product()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(v: &[i64]) -> Subspace {
        Subspace::span_ints(&[v.to_vec()], v.len()).unwrap()
    }

    fn tangent_line(v: &[i64]) -> Filtration {
        Filtration::line_then_full(&line(v), -1).unwrap()
    }

    #[test]
    fn shared_line_on_two_rays() {
        // Both rays filter through the same line L at -1, then E at 0.
        let f = tangent_line(&[1, 2]);
        let g = tangent_line(&[1, 2]);
        let out = graded_pieces(&[&f, &g], &jump_grid(&[&f, &g])).unwrap();
        assert!(out.splits());
        let tuples: Vec<Vec<i64>> = out.pieces.iter().map(|p| p.tuple.clone()).collect();
        assert_eq!(tuples, vec![vec![-1, -1], vec![0, 0]]);
    }

    #[test]
    fn three_lines_in_a_plane_do_not_split() {
        let fs = [tangent_line(&[1, 0]), tangent_line(&[0, 1]), tangent_line(&[1, 1])];
        let refs: Vec<&Filtration> = fs.iter().collect();
        let out = graded_pieces(&refs, &jump_grid(&refs)).unwrap();
        assert!(out.sums_match);
        assert_eq!(out.graded_dim, 3);
        assert!(!out.splits());
    }

    #[test]
    fn rank_mismatch() {
        let a = Filtration::trivial(2);
        let b = Filtration::trivial(3);
        assert!(matches!(
            graded_pieces(&[&a, &b], &[vec![0, 0]]),
            Err(SheafError::RankMismatch { .. })
        ));
    }
}
