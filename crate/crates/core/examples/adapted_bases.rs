//! Common adapted bases of families of filtrations.

use toric_prevar::linalg::Subspace;
use toric_prevar::sheaf::{adapted_basis, Filtration};

fn line_filtration(v: &[i64]) -> Filtration {
    let line = Subspace::span_ints(&[v.to_vec()], v.len()).unwrap();
    Filtration::line_then_full(&line, -1).unwrap()
}

fn main() {
    // Any two filtrations are jointly diagonalizable.
    let pair = [line_filtration(&[1, 1]), line_filtration(&[1, 0])];
    let b = adapted_basis(&pair).unwrap().unwrap();
    println!("two lines: basis {:?} with levels {:?}", b.vectors, b.labels);

    // Three lines in a plane generate a non-distributive lattice.
    let three = [line_filtration(&[1, 0]), line_filtration(&[0, 1]), line_filtration(&[1, 1])];
    println!("three lines: adapted basis exists = {}", adapted_basis(&three).unwrap().is_some());

    // Three coordinate planes in rank 3 do admit one.
    let planes: Vec<Filtration> = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        .iter()
        .map(|skip| {
            let rows: Vec<Vec<i64>> = (0..3)
                .filter(|&k| skip[k] == 0)
                .map(|k| (0..3).map(|j| i64::from(j == k)).collect())
                .collect();
            let plane = Subspace::span_ints(&rows, 3).unwrap();
            Filtration::new(3, vec![(0, plane), (1, Subspace::full(3))]).unwrap()
        })
        .collect();
    let b = adapted_basis(&planes).unwrap().unwrap();
    println!("coordinate planes: basis {:?}", b.vectors);
}
