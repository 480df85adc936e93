//! Property tests for the exact linear algebra, cone and fan layers.

mod common;

use proptest::prelude::*;
use toric_prevar::cone::Cone;
use toric_prevar::fan::GluedSystem;
use toric_prevar::golden;
use toric_prevar::linalg::{pairing, smith_invariants, to_rational, Subspace};

fn int_rows(max_rows: usize, n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), 0..=max_rows)
}

fn subspace_pair() -> impl Strategy<Value = (usize, Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    (1usize..=5).prop_flat_map(|n| (Just(n), int_rows(n, n), int_rows(n, n)))
}

fn generators() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (2usize..=3).prop_flat_map(|n| (Just(n), prop::collection::vec(prop::collection::vec(-2i64..=3, n), 1..=4)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dimension_formula((n, a, b) in subspace_pair()) {
        let a = Subspace::span_ints(&a, n).unwrap();
        let b = Subspace::span_ints(&b, n).unwrap();
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        prop_assert!(i.is_subspace_of(&a).unwrap() && i.is_subspace_of(&b).unwrap());
        prop_assert!(a.is_subspace_of(&s).unwrap() && b.is_subspace_of(&s).unwrap());
    }

    #[test]
    fn rref_is_idempotent((n, a, _b) in subspace_pair()) {
        let s = Subspace::span_ints(&a, n).unwrap();
        let again = Subspace::rref(s.basis(), n).unwrap();
        prop_assert_eq!(&again, &s);
        // Row order and scaling do not matter.
        let mut rev = a.clone();
        rev.reverse();
        let scaled: Vec<Vec<i64>> = rev.iter().map(|r| r.iter().map(|x| 3 * x).collect()).collect();
        prop_assert_eq!(Subspace::span_ints(&scaled, n).unwrap(), s);
    }

    #[test]
    fn membership_matches_sum((n, a, v) in subspace_pair()) {
        let s = Subspace::span_ints(&a, n).unwrap();
        for v in v {
            let line = Subspace::span_ints(std::slice::from_ref(&v), n).unwrap();
            let member = s.contains_vector(&to_rational(&v)).unwrap();
            prop_assert_eq!(member, s.sum(&line).unwrap() == s);
        }
    }

    #[test]
    fn smith_product_is_abs_det(m in (1usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-4i64..=4, n), n))) {
        let inv = smith_invariants(&m);
        let prod: i128 = inv.iter().map(|&d| d as i128).product();
        prop_assert_eq!(prod, common::det(&m).abs());
        for w in inv.windows(2) {
            prop_assert!(w[0] >= 0 && (w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0)));
        }
    }

    #[test]
    fn facet_normals_are_sound((n, gens) in generators()) {
        let Ok(c) = Cone::from_generators(&gens, n) else { return Ok(()) };
        for u in c.facet_normals() {
            let on: Vec<&Vec<i64>> = c.rays().iter().filter(|v| pairing(u, v) == 0).collect();
            prop_assert!(c.rays().iter().all(|v| pairing(u, v) >= 0));
            for g in &gens {
                prop_assert!(pairing(u, g) >= 0);
            }
            let rows: Vec<Vec<i64>> = on.into_iter().cloned().collect();
            prop_assert_eq!(Subspace::span_ints(&rows, n).unwrap().dim() + 1, c.dim());
        }
        for g in &gens {
            prop_assert!(c.contains_lattice_point(g));
        }
    }

    #[test]
    fn generator_order_is_irrelevant((n, gens) in generators(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let Ok(c) = Cone::from_generators(&gens, n) else { return Ok(()) };
        let mut shuffled = gens.clone();
        shuffled.shuffle(&mut common::rng(seed));
        shuffled.push(gens[0].iter().map(|x| 2 * x).collect());
        let d = Cone::from_generators(&shuffled, n).unwrap();
        prop_assert_eq!(&c, &d);
        prop_assert_eq!(c.facet_normals(), d.facet_normals());
    }

    #[test]
    fn faces_are_face_closed((n, gens) in generators()) {
        let Ok(c) = Cone::from_generators(&gens, n) else { return Ok(()) };
        let faces = c.faces();
        for f in &faces {
            prop_assert!(f.is_face_of(&c));
            for g in f.faces() {
                prop_assert!(faces.contains(&g));
            }
        }
        for (a, b) in faces.iter().zip(faces.iter().skip(1)) {
            prop_assert!(faces.contains(&a.intersection(b)));
        }
    }

    #[test]
    fn leq_sigma_is_monotone_under_faces(
        (n, gens) in generators(),
        ms in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 2),
    ) {
        let Ok(c) = Cone::from_generators(&gens, n) else { return Ok(()) };
        let (m, m2) = (&ms[0][..n], &ms[1][..n]);
        if c.leq_sigma(m, m2) {
            for f in c.faces() {
                prop_assert!(f.leq_sigma(m, m2));
            }
        }
        prop_assert!(c.leq_sigma(m, m));
    }
}

#[test]
fn omega_order_is_a_partial_order() {
    for s in [
        golden::double_origin(),
        golden::two_charts(),
        golden::homogeneous_spectra(),
        golden::a3_doubled_axes(),
    ] {
        let g = GluedSystem::new(s).unwrap();
        let n = g.len();
        for a in 0..n {
            assert!(g.leq(a, a));
            assert!(g.leq(g.origin_class(), a));
            for b in 0..n {
                if a != b && g.leq(a, b) {
                    assert!(!g.leq(b, a));
                    assert!(g.class(a).dim() < g.class(b).dim());
                }
                for c in 0..n {
                    if g.leq(a, b) && g.leq(b, c) {
                        assert!(g.leq(a, c));
                    }
                }
            }
        }
    }
}

#[test]
fn omega_classes_respect_glueing() {
    // (σ,i) ~ (σ,j) exactly when σ ∈ Δ_ij.
    for s in [golden::two_charts(), golden::homogeneous_spectra(), golden::a3_doubled_axes()] {
        let g = GluedSystem::new(s.clone()).unwrap();
        for i in 0..s.len() {
            for j in 0..s.len() {
                for cone in s.fan(i, i).cones() {
                    if !s.fan(j, j).contains(cone) {
                        continue;
                    }
                    let same = g.class_of(cone, i) == g.class_of(cone, j);
                    assert_eq!(same, s.fan(i, j).contains(cone), "{cone} {i} {j}");
                }
            }
        }
    }
}
