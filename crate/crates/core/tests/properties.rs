use proptest::prelude::*;

use hyptrig::lorentz::{classify, gram, realize_gram, CausalKind, LVec};
use hyptrig::pairings::{dist_point_point, sdist_point_horosphere, sdist_point_plane};
use hyptrig::sampling::{
    edge_matrix, instance_rng, random_halfspace, random_horoball, random_isometry, random_point,
};
use hyptrig::tetra::{critical_point, OPPOSITE_PAIRS};
use hyptrig::{EdgeMatrix, HPoint, HalfSpace, Horoball, TruncatedTetrahedron};

fn coords(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-50.0f64..50.0, len)
}

fn triple() -> impl Strategy<Value = (Vec<f64>, Vec<f64>, Vec<f64>)> {
    (2usize..6).prop_flat_map(|n| (coords(n), coords(n), coords(n)))
}

fn lv(c: &[f64]) -> LVec {
    LVec::new(c.to_vec()).unwrap()
}

proptest! {
    #[test]
    fn pairing_is_symmetric_and_bilinear((a, b, c) in triple(), s in -10.0f64..10.0, t in -10.0f64..10.0) {
        let (a, b, c) = (lv(&a), lv(&b), lv(&c));
        prop_assert_eq!(a.dot(&b), b.dot(&a));
        let lhs = LVec::combine(s, &a, t, &b).dot(&c);
        let rhs = s * a.dot(&c) + t * b.dot(&c);
        let scale = (s.abs() * a.euclidean_norm() + t.abs() * b.euclidean_norm()) * c.euclidean_norm();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn reverse_cauchy_schwarz(seed: u64, n in 2usize..5) {
        let mut rng = instance_rng(seed, 0);
        let p = random_point(&mut rng, n, 4.0);
        let q = random_point(&mut rng, n, 4.0);
        // For unit time-like vectors, -p∘q >= 1.
        prop_assert!(-p.vec().dot(q.vec()) >= 1.0 - 1e-12 * p.vec().euclidean_norm() * q.vec().euclidean_norm());
    }

    #[test]
    fn isometries_preserve_the_form((a, b, _) in triple(), seed: u64) {
        let (a, b) = (lv(&a), lv(&b));
        let g = random_isometry(&mut instance_rng(seed, 1), a.len() - 1, 1.5);
        let (ga, gb) = (g.apply(&a), g.apply(&b));
        let scale = ga.euclidean_norm() * gb.euclidean_norm() + a.euclidean_norm() * b.euclidean_norm();
        prop_assert!((ga.dot(&gb) - a.dot(&b)).abs() <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn classification_is_scale_invariant_away_from_the_band(c in coords(4), k in 0.1f64..10.0) {
        let v = lv(&c);
        let q = v.norm_squared();
        prop_assume!(q.abs() > 1e-6 * v.euclidean_norm_squared().max(1.0));
        let a = classify(&v, 1e-10);
        let b = classify(&v.scaled(k), 1e-10);
        prop_assert_eq!(a, b);
        prop_assert_ne!(a.kind, CausalKind::LightLike);
    }

    #[test]
    fn point_distance_is_a_symmetric_invariant(seed: u64, n in 2usize..5) {
        let mut rng = instance_rng(seed, 2);
        let p = random_point(&mut rng, n, 4.0);
        let q = random_point(&mut rng, n, 4.0);
        let d = dist_point_point(&p, &q);
        prop_assert!(d >= 0.0);
        prop_assert_eq!(d, dist_point_point(&q, &p));
        prop_assert!(dist_point_point(&p, &p) == 0.0);
        let g = random_isometry(&mut rng, n, 1.0);
        let (gp, gq) = (HPoint::new(g.apply(p.vec())).unwrap(), HPoint::new(g.apply(q.vec())).unwrap());
        prop_assert!((dist_point_point(&gp, &gq) - d).abs() <= 1e-9 * d.max(1.0));
    }

    #[test]
    fn signed_distances_are_isometry_invariant(seed: u64, n in 2usize..4) {
        let mut rng = instance_rng(seed, 3);
        let p = random_point(&mut rng, n, 3.0);
        let b = random_horoball(&mut rng, n, 2.0);
        let y = random_halfspace(&mut rng, n, 2.0);
        let g = random_isometry(&mut rng, n, 1.0);
        let gp = HPoint::new(g.apply(p.vec())).unwrap();
        let gb = Horoball::new(g.apply(b.vec())).unwrap();
        let gy = HalfSpace::new(g.apply(y.vec())).unwrap();
        let d0 = sdist_point_horosphere(&p, &b).unwrap().distance.value;
        let d1 = sdist_point_horosphere(&gp, &gb).unwrap().distance.value;
        prop_assert!((d0 - d1).abs() <= 1e-9 * d0.abs().max(1.0));
        let e0 = sdist_point_plane(&p, &y).unwrap().value;
        let e1 = sdist_point_plane(&gp, &gy).unwrap().value;
        prop_assert!((e0 - e1).abs() <= 1e-9 * e0.abs().max(1.0));
    }

    #[test]
    fn gram_realization_round_trips(seed: u64) {
        let l = edge_matrix(&mut instance_rng(seed, 4), 0.1, 5.0);
        let g = l.normal_gram();
        let vs = realize_gram(&g, 3, 1e-10).unwrap();
        prop_assert!(gram(&vs).unwrap().max_abs_diff(&g) <= 1e-9);
    }

    #[test]
    fn edge_lengths_survive_realization(seed: u64) {
        let l = edge_matrix(&mut instance_rng(seed, 5), 0.1, 5.0);
        let t = TruncatedTetrahedron::from_edge_lengths(&l).unwrap();
        let back = EdgeMatrix::new(t.edges().rows()).unwrap();
        prop_assert!(back.max_abs_diff(&l) <= 1e-9 * l.rows().iter().flatten().fold(1.0f64, |m, x| m.max(x.abs())));
    }

    #[test]
    fn transversal_parameters_lie_on_the_critical_point(seed: u64) {
        let l = edge_matrix(&mut instance_rng(seed, 6), 0.1, 5.0);
        for pair in OPPOSITE_PAIRS {
            let cp = critical_point(&l, pair, 1e-14).unwrap();
            prop_assert!(cp.cosh_t >= 1.0 - 1e-12);
            let (r0, r1) = cp.roots;
            prop_assert!(r0 > 0.0 && r0 < 1.0 && (r0 * r1 - 1.0).abs() <= 1e-10);
        }
    }
}
