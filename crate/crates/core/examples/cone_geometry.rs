//! Rays, faces, smoothness and the preorder m <=_sigma m' of a cone.

use toric_prevar::cone::Cone;

fn main() {
    let sigma = Cone::from_generators(&[vec![2, 0], vec![0, 3], vec![1, 1]], 2).unwrap();
    println!("{sigma}: dim {}, smooth {}", sigma.dim(), sigma.is_smooth());
    println!("facet normals {:?}", sigma.facet_normals());
    for f in sigma.faces() {
        println!("  face {f}");
    }

    let singular = Cone::from_generators(&[vec![1, 0], vec![1, 2]], 2).unwrap();
    println!("{singular}: smooth {}, simplicial {}", singular.is_smooth(), singular.is_simplicial());

    // m <=_sigma m' iff m' - m pairs nonnegatively with sigma; faces are
    // coarser, so the relation only grows when passing to a face.
    let tau = Cone::ray(&[1, 0]).unwrap();
    let (m, m2) = ([0, 0], [1, -1]);
    println!("{m:?} <= {m2:?} on {sigma}: {}", sigma.leq_sigma(&m, &m2));
    println!("{m:?} <= {m2:?} on {tau}: {}", tau.leq_sigma(&m, &m2));

    let a = Cone::from_generators(&[vec![1, 0], vec![0, 1]], 2).unwrap();
    let b = Cone::from_generators(&[vec![1, 1], vec![1, -1]], 2).unwrap();
    let meet = a.intersection(&b);
    println!("{a} ∩ {b} = {meet}; face of {a}: {}", meet.is_face_of(&a));
}
