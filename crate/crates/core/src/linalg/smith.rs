//! Smith normal form over the integers, with unimodular transforms.

/// Result of `U · A · W = D` with `U`, `W` unimodular and `D` diagonal with
/// `d_1 | d_2 | ...`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    pub diagonal: Vec<i128>,
    pub left: Vec<Vec<i128>>,
    pub right: Vec<Vec<i128>>,
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

pub fn smith_form(matrix: &[Vec<i64>]) -> SmithForm {
    let m = matrix.len();
    let n = matrix.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<i128>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let mut u = identity(m);
    let mut w = identity(n);

    let swap_rows = |a: &mut Vec<Vec<i128>>, u: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        a.swap(i, j);
        u.swap(i, j);
    };
    let swap_cols = |a: &mut Vec<Vec<i128>>, w: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        for r in a.iter_mut() {
            r.swap(i, j);
        }
        for r in w.iter_mut() {
            r.swap(i, j);
        }
    };
    // row_i -= f * row_j
    let add_row = |a: &mut Vec<Vec<i128>>, u: &mut Vec<Vec<i128>>, i: usize, j: usize, f: i128| {
        for c in 0..a[0].len() {
            let t = a[j][c];
            a[i][c] -= f * t;
        }
        for c in 0..u[0].len() {
            let t = u[j][c];
            u[i][c] -= f * t;
        }
    };
    // col_i -= f * col_j
    let add_col = |a: &mut Vec<Vec<i128>>, w: &mut Vec<Vec<i128>>, i: usize, j: usize, f: i128| {
        for r in a.iter_mut() {
            let t = r[j];
            r[i] -= f * t;
        }
        for r in w.iter_mut() {
            let t = r[j];
            r[i] -= f * t;
        }
    };

    let k = m.min(n);
    for t in 0..k {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            swap_rows(&mut a, &mut u, t, bi);
            swap_cols(&mut a, &mut w, t, bj);
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let q = a[i][t].div_euclid(p);
                if q != 0 {
                    add_row(&mut a, &mut u, i, t, q);
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = a[t][j].div_euclid(p);
                if q != 0 {
                    add_col(&mut a, &mut w, j, t, q);
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => add_row(&mut a, &mut u, t, i, -1),
                None => break,
            }
        }
        if a[t][t] < 0 {
            for c in 0..n {
                a[t][c] = -a[t][c];
            }
            for c in 0..m {
                u[t][c] = -u[t][c];
            }
        }
    }
    let diagonal = (0..k).map(|i| a[i][i]).collect();
    SmithForm {
        rows: m,
        cols: n,
        diagonal,
        left: u,
        right: w,
    }
}

/// Invariant factors `d_1 | d_2 | ...` (length `min(rows, cols)`).
pub fn smith_invariants(matrix: &[Vec<i64>]) -> Vec<i64> {
    smith_form(matrix)
        .diagonal
        .into_iter()
        .map(|d| i64::try_from(d).expect("invariant factor overflows i64"))
        .collect()
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|&&d| d != 0).count()
    }

    /// An integral solution of `A x = b`, or `None` when none exists. Free
    /// coordinates of the Smith basis are set to zero, so the solution is a
    /// deterministic lift modulo the kernel.
    pub fn solve_integral(&self, rhs: &[i64]) -> Option<Vec<i64>> {
        assert_eq!(rhs.len(), self.rows);
        // A = U^{-1} D W^{-1}; A x = b  <=>  D y = U b with x = W y.
        let ub: Vec<i128> = self
            .left
            .iter()
            .map(|row| row.iter().zip(rhs).map(|(u, &b)| u * i128::from(b)).sum())
            .collect();
        let r = self.rank();
        let mut y = vec![0i128; self.cols];
        for (i, &c) in ub.iter().enumerate() {
            if i < r {
                let d = self.diagonal[i];
                if c % d != 0 {
                    return None;
                }
                y[i] = c / d;
            } else if c != 0 {
                return None;
            }
        }
        let x = self
            .right
            .iter()
            .map(|row| row.iter().zip(&y).map(|(w, v)| w * v).sum::<i128>())
            .map(|v| i64::try_from(v).ok())
            .collect::<Option<Vec<_>>>()?;
        Some(x)
    }
}
