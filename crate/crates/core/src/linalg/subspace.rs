use std::fmt;

use serde::{Deserialize, Serialize};

use super::{LinalgError, Rational};

/// A linear subspace of `Q^n`, stored as the reduced row-echelon form of a
/// spanning set. Two values are equal as sets iff they are equal as values.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{:?} in Q^{}", self.basis, self.ambient_dim)
    }
}

/// Reduces `rows` in place to reduced row-echelon form and drops zero rows.
/// Returns the pivot columns.
fn reduce_in_place(rows: &mut Vec<Vec<Rational>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of the kernel `{x : A x = 0}` for a matrix given by rows, with
/// `ncols` columns.
pub fn kernel(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = reduce_in_place(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); ncols];
            v[fc] = Rational::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -&row[fc];
            }
            v
        })
        .collect()
}

/// Rank of a rational matrix.
pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    reduce_in_place(&mut m, ncols).len()
}

/// One solution `x` of `A x = b`, or `None` when the system is inconsistent.
pub fn solve(rows: &[Vec<Rational>], rhs: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    let mut aug: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let pivots = reduce_in_place(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &pc) in aug.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn to_rational(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_int(x)).collect()
}

impl Subspace {
    /// Row space of `rows` in canonical form.
    pub fn rref(rows: &[Vec<Rational>], ambient_dim: usize) -> Result<Self, LinalgError> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ambient_dim) {
            return Err(LinalgError::DimensionMismatch {
                expected: ambient_dim,
                found: bad.len(),
            });
        }
        let mut basis = rows.to_vec();
        reduce_in_place(&mut basis, ambient_dim);
        Ok(Subspace { ambient_dim, basis })
    }

    pub fn span_ints(rows: &[Vec<i64>], ambient_dim: usize) -> Result<Self, LinalgError> {
        let rows: Vec<_> = rows.iter().map(|r| to_rational(r)).collect();
        Self::rref(&rows, ambient_dim)
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                (0..ambient_dim)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        Subspace { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    /// The canonical (RREF) basis rows.
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::rref(&rows, self.ambient_dim)
    }

    /// Intersection via the kernel of `[A^T | -B^T]`: every `(λ, μ)` with
    /// `Σ λ_i a_i = Σ μ_j b_j` yields an element of `a ∩ b`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        let n = self.ambient_dim;
        let (ka, kb) = (self.dim(), other.dim());
        if ka == 0 || kb == 0 {
            return Ok(Subspace::zero(n));
        }
        let system: Vec<Vec<Rational>> = (0..n)
            .map(|c| {
                self.basis
                    .iter()
                    .map(|a| a[c].clone())
                    .chain(other.basis.iter().map(|b| -&b[c]))
                    .collect()
            })
            .collect();
        let ker = kernel(&system, ka + kb);
        let gens: Vec<Vec<Rational>> = ker
            .iter()
            .map(|lam| {
                let mut v = vec![Rational::zero(); n];
                for (l, a) in lam[..ka].iter().zip(&self.basis) {
                    if l.is_zero() {
                        continue;
                    }
                    for (x, y) in v.iter_mut().zip(a) {
                        *x = &*x + &(l * y);
                    }
                }
                v
            })
            .collect();
        Subspace::rref(&gens, n)
    }

    pub fn contains_vector(&self, v: &[Rational]) -> Result<bool, LinalgError> {
        if v.len() != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        // Reduce v against the RREF rows; membership iff the remainder vanishes.
        let mut rem = v.to_vec();
        for row in &self.basis {
            let pc = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
            if rem[pc].is_zero() {
                continue;
            }
            let f = rem[pc].clone();
            for (x, r) in rem.iter_mut().zip(row) {
                *x = &*x - &(&f * r);
            }
        }
        Ok(rem.iter().all(Rational::is_zero))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_ambient(other)?;
        for row in &self.basis {
            if !other.contains_vector(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Vectors drawn from `self`'s basis (in RREF order) whose span is a
    /// complement of `inner ∩ self` inside `self`.
    pub fn complement_basis(&self, inner: &Subspace) -> Result<Vec<Vec<Rational>>, LinalgError> {
        self.check_ambient(inner)?;
        let mut acc = inner.clone();
        let mut out = Vec::new();
        for row in &self.basis {
            if !acc.contains_vector(row)? {
                acc = acc.sum(&Subspace::rref(std::slice::from_ref(row), self.ambient_dim)?)?;
                out.push(row.clone());
            }
        }
        Ok(out)
    }

    /// Image under the linear map with matrix `map` (rows = output
    /// coordinates, columns = input coordinates).
    pub fn image(&self, map: &[Vec<Rational>]) -> Result<Subspace, LinalgError> {
        let out_dim = map.len();
        if let Some(bad) = map.iter().find(|r| r.len() != self.ambient_dim) {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: bad.len(),
            });
        }
        let rows: Vec<Vec<Rational>> = self
            .basis
            .iter()
            .map(|v| map.iter().map(|r| dot(r, v)).collect())
            .collect();
        Subspace::rref(&rows, out_dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]], n: usize) -> Subspace {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Subspace::span_ints(&rows, n).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        to_rational(v)
    }

    #[test]
    fn rref_examples() {
        let s = q(&[&[2, 0], &[0, 3]], 2);
        assert_eq!(s.basis(), &[ints(&[1, 0]), ints(&[0, 1])]);
        let s = q(&[&[1, 1], &[2, 2]], 2);
        assert_eq!(s.basis(), &[ints(&[1, 1])]);
        let s = Subspace::rref(&[], 3).unwrap();
        assert_eq!(s.dim(), 0);
        assert!(Subspace::rref(&[ints(&[1, 2, 3])], 2).is_err());
    }

    #[test]
    fn sum_examples() {
        let a = q(&[&[1, 0]], 2);
        let b = q(&[&[0, 1]], 2);
        assert!(a.sum(&b).unwrap().is_full());
        assert_eq!(a.sum(&a).unwrap(), a);
        let s = q(&[&[1, 1, 0]], 3).sum(&q(&[&[0, 1, 1]], 3)).unwrap();
        assert_eq!(s.basis(), &[ints(&[1, 0, -1]), ints(&[0, 1, 1])]);
        assert!(a.sum(&Subspace::zero(3)).is_err());
    }

    #[test]
    fn intersect_examples() {
        let a = q(&[&[1, 0]], 2);
        let b = q(&[&[0, 1]], 2);
        assert!(a.intersect(&b).unwrap().is_zero());
        let full = Subspace::full(2);
        let diag = q(&[&[1, 1]], 2);
        assert_eq!(full.intersect(&diag).unwrap(), diag);
        let x = q(&[&[1, 0, 0], &[0, 1, 0]], 3);
        let y = q(&[&[0, 1, 0], &[0, 0, 1]], 3);
        assert_eq!(x.intersect(&y).unwrap(), q(&[&[0, 1, 0]], 3));
    }

    #[test]
    fn contains_examples() {
        let a = q(&[&[1, 0]], 2);
        assert!(a.contains_vector(&ints(&[0, 0])).unwrap());
        assert!(!a.contains_vector(&ints(&[1, 1])).unwrap());
        assert!(q(&[&[1, 1]], 2).contains_vector(&ints(&[2, 2])).unwrap());
        assert!(a.contains_vector(&ints(&[1])).is_err());
    }

    #[test]
    fn kernel_and_solve() {
        let rows = vec![ints(&[1, 1, 0]), ints(&[0, 1, 1])];
        let ker = kernel(&rows, 3);
        assert_eq!(ker, vec![ints(&[1, -1, 1])]);
        let x = solve(&rows, &ints(&[2, 3]), 3).unwrap();
        assert_eq!(dot(&rows[0], &x), Rational::from_int(2));
        assert_eq!(dot(&rows[1], &x), Rational::from_int(3));
        let bad = vec![ints(&[1, 1]), ints(&[2, 2])];
        assert!(solve(&bad, &ints(&[1, 3]), 2).is_none());
    }

    #[test]
    fn complement_basis_extends() {
        let inner = q(&[&[1, 1, 0]], 3);
        let c = Subspace::full(3).complement_basis(&inner).unwrap();
        assert_eq!(c.len(), 2);
        let mut all = inner.basis().to_vec();
        all.extend(c);
        assert!(Subspace::rref(&all, 3).unwrap().is_full());
    }
}
