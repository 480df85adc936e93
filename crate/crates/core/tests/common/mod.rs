#![allow(dead_code)]

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use toric_prevar::linalg::{to_rational, Rational, Subspace};
use toric_prevar::sheaf::Filtration;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vector(rng: &mut TestRng, n: usize, bound: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()
}

pub fn random_subspace(rng: &mut TestRng, n: usize) -> Subspace {
    let k = rng.gen_range(0..=n);
    let rows: Vec<Vec<i64>> = (0..k).map(|_| random_vector(rng, n, 2)).collect();
    Subspace::span_ints(&rows, n).unwrap()
}

/// A random invertible integer matrix with small entries.
pub fn random_invertible(rng: &mut TestRng, n: usize) -> Vec<Vec<Rational>> {
    loop {
        let rows: Vec<Vec<i64>> = (0..n).map(|_| random_vector(rng, n, 2)).collect();
        if Subspace::span_ints(&rows, n).unwrap().is_full() {
            return rows.iter().map(|r| to_rational(r)).collect();
        }
    }
}

/// A random full filtration of `Q^rank` with jump levels in `lo..=hi`.
/// Vectors have entries in {-1,0,1} so that different filtrations often
/// share lines, sums and intersections.
pub fn random_filtration(rng: &mut TestRng, rank: usize, lo: i64, hi: i64) -> Filtration {
    let span = (hi - lo + 1) as usize;
    let k = rng.gen_range(1..=rank.min(span));
    let mut levels: Vec<i64> = (lo..=hi).collect();
    levels.shuffle(rng);
    let mut levels: Vec<i64> = levels.into_iter().take(k).collect();
    levels.sort();
    let mut dims: Vec<usize> = (1..rank).collect();
    dims.shuffle(rng);
    let mut dims: Vec<usize> = dims.into_iter().take(k - 1).collect();
    dims.sort();
    dims.push(rank);
    let basis = loop {
        let rows: Vec<Vec<i64>> = (0..rank).map(|_| random_vector(rng, rank, 1)).collect();
        if Subspace::span_ints(&rows, rank).unwrap().is_full() {
            break rows;
        }
    };
    let jumps = levels
        .into_iter()
        .zip(dims)
        .map(|(s, d)| (s, Subspace::span_ints(&basis[..d], rank).unwrap()))
        .collect();
    Filtration::new(rank, jumps).unwrap()
}

/// Independent decision procedure for the existence of a common adapted
/// basis: an exhaustive backtracking search over candidate vectors.
///
/// Walks the product of jump levels in a linear extension of the product
/// order; at each tuple `t` the vectors chosen so far that lie in
/// `V_t = ∩ F_j(t_j)` must be completed to a basis of `V_t` with new
/// candidates, trying every completion. Candidates are the echelon
/// generators of all `V_t` and their pairwise sums.
pub fn oracle_adapted_basis(filts: &[Filtration]) -> Option<Vec<Vec<Rational>>> {
    let r = filts[0].rank();
    let mut tuples: Vec<Vec<i64>> = filts
        .iter()
        .map(|f| f.jump_levels())
        .multi_cartesian_product()
        .collect();
    tuples.sort_by_key(|t| (t.iter().sum::<i64>(), t.clone()));
    let spaces: Vec<Subspace> = tuples
        .iter()
        .map(|t| {
            filts
                .iter()
                .zip(t)
                .fold(Subspace::full(r), |acc, (f, &s)| acc.intersect(&f.at(s)).unwrap())
        })
        .collect();

    let mut pool: Vec<Vec<Rational>> = Vec::new();
    for v in &spaces {
        let gens = v.basis();
        pool.extend(gens.iter().cloned());
        for (a, b) in gens.iter().tuple_combinations() {
            pool.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
        }
    }
    // One representative per line.
    let mut lines: Vec<(Subspace, Vec<Rational>)> = Vec::new();
    for v in pool {
        let l = Subspace::rref(std::slice::from_ref(&v), r).unwrap();
        if !lines.iter().any(|(m, _)| *m == l) {
            lines.push((l, v));
        }
    }
    let pool: Vec<Vec<Rational>> = lines.into_iter().map(|(_, v)| v).collect();

    let mut chosen = Vec::new();
    if search(&spaces, &pool, 0, &mut chosen, r) {
        Some(chosen)
    } else {
        None
    }
}

fn search(
    spaces: &[Subspace],
    pool: &[Vec<Rational>],
    idx: usize,
    chosen: &mut Vec<Vec<Rational>>,
    r: usize,
) -> bool {
    if idx == spaces.len() {
        return chosen.len() == r;
    }
    let v = &spaces[idx];
    let inside: Vec<Vec<Rational>> = chosen
        .iter()
        .filter(|b| v.contains_vector(b).unwrap())
        .cloned()
        .collect();
    let have = Subspace::rref(&inside, r).unwrap();
    let need = v.dim() - have.dim();
    // Codimension pruning: the chosen vectors are independent, so there is
    // room for exactly r - |chosen| more.
    if need > r - chosen.len() {
        return false;
    }
    if need == 0 {
        return search(spaces, pool, idx + 1, chosen, r);
    }
    let all = Subspace::rref(chosen, r).unwrap();
    let cands: Vec<&Vec<Rational>> = pool
        .iter()
        .filter(|c| v.contains_vector(c).unwrap() && !all.contains_vector(c).unwrap())
        .collect();
    for pick in cands.into_iter().combinations(need) {
        let mut rows = chosen.clone();
        rows.extend(pick.iter().map(|c| (*c).clone()));
        if Subspace::rref(&rows, r).unwrap().dim() != rows.len() {
            continue;
        }
        let before = chosen.len();
        chosen.extend(pick.into_iter().cloned());
        if search(spaces, pool, idx + 1, chosen, r) {
            return true;
        }
        chosen.truncate(before);
    }
    false
}

/// `B ∩ F(s)` spans `F(s)` for every filtration and jump.
pub fn is_adapted(basis: &[Vec<Rational>], filts: &[Filtration]) -> bool {
    let r = filts[0].rank();
    if basis.len() != r || !Subspace::rref(basis, r).unwrap().is_full() {
        return false;
    }
    filts.iter().all(|f| {
        f.jumps().iter().all(|(_, space)| {
            let inside: Vec<Vec<Rational>> = basis
                .iter()
                .filter(|b| space.contains_vector(b).unwrap())
                .cloned()
                .collect();
            Subspace::rref(&inside, r).unwrap() == *space
        })
    })
}

/// Determinant by fraction-free elimination.
pub fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}
