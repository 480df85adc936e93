//! Exact subspace arithmetic and Smith normal forms.

use toric_prevar::linalg::{smith_form, smith_invariants, to_rational, Subspace};

fn main() {
    let a = Subspace::span_ints(&[vec![1, 1, 0]], 3).unwrap();
    let b = Subspace::span_ints(&[vec![0, 1, 1]], 3).unwrap();
    let sum = a.sum(&b).unwrap();
    println!("span(1,1,0) + span(0,1,1) has RREF basis:");
    for row in sum.basis() {
        println!("  ({})", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
    }
    println!("intersection dim = {}", a.intersect(&b).unwrap().dim());
    println!("(1,2,1) in the sum: {}", sum.contains_vector(&to_rational(&[1, 2, 1])).unwrap());

    let rays = vec![vec![1, 0], vec![1, 2]];
    println!("invariants of rows (1,0),(1,2): {:?}", smith_invariants(&rays));
    // Which tuples (<m,v1>, <m,v2>) come from a lattice point m?
    let snf = smith_form(&rays);
    for t in [[0, 0], [1, 1], [0, 1], [-1, 3]] {
        match snf.solve_integral(&t) {
            Some(m) => println!("  tuple {t:?} <- m = {m:?}"),
            None => println!("  tuple {t:?} not attained"),
        }
    }
}
