//! Property tests for the structural invariants: dominance order laws,
//! projection/clipping commutation, hypervolume measure laws, derivative
//! sign and sparsity patterns, and cross-algorithm agreement.

use proptest::prelude::*;

use hvhess::geometry::{
    check_general_position, clip, concat, deconcat, dominates, pareto_filter, project, PointSet,
};
use hvhess::hessian3d::hessian_3d_sweep_with_stats;
use hvhess::hessian_nd::{hessian_decision, hessian_objective, hessian_objective_full};
use hvhess::hypervolume::{hv, hv_points, hvc};
use hvhess::model::IdentityModel;
use hvhess::oracle::{fd_gradient, hv_inclusion_exclusion_points, FdConfig};
use hvhess::synthetic::{random_front_3d, random_general_position_set};

fn arb_point(m: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..0.95f64, m)
}

fn arb_points(m: usize, max_n: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(arb_point(m), 0..=max_n)
}

fn arb_int_points(m: usize, max_n: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(0..9i32, m), 0..=max_n)
        .prop_map(|pts| pts.into_iter().map(|p| p.into_iter().map(f64::from).collect()).collect())
}

proptest! {
    // dominance is a strict partial order
    #[test]
    fn dominance_is_irreflexive_and_antisymmetric(p in arb_point(4), q in arb_point(4)) {
        prop_assert!(!dominates(&p, &p).unwrap());
        if dominates(&p, &q).unwrap() {
            prop_assert!(!dominates(&q, &p).unwrap());
        }
    }

    #[test]
    fn dominance_is_transitive(a in arb_point(3), b in arb_point(3), c in arb_point(3)) {
        if dominates(&a, &b).unwrap() && dominates(&b, &c).unwrap() {
            prop_assert!(dominates(&a, &c).unwrap());
        }
    }

    #[test]
    fn projection_commutes_with_clipping(a in arb_point(4), b in arb_point(4), k in 0usize..4) {
        let lhs = project(&clip(&a, &b).unwrap(), k).unwrap();
        let rhs = clip(&project(&a, k).unwrap(), &project(&b, k).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn deconcat_inverts_concat(points in arb_points(3, 6)) {
        let set = PointSet::new(points.clone(), vec![1.0; 3]).unwrap();
        prop_assert_eq!(deconcat(&concat(&set), 3).unwrap(), points);
    }

    #[test]
    fn pareto_filter_is_sound_and_complete(points in arb_points(3, 8)) {
        let kept = pareto_filter(&points);
        for &i in &kept {
            for &j in &kept {
                if i != j {
                    prop_assert!(!dominates(&points[j], &points[i]).unwrap() || points[i] == points[j]);
                }
            }
        }
        for i in 0..points.len() {
            if !kept.contains(&i) {
                let covered = kept.iter().any(|&j| {
                    dominates(&points[j], &points[i]).unwrap() || points[j] == points[i]
                });
                prop_assert!(covered, "excluded point {} not dominated", i);
            }
        }
    }

    // hypervolume measure laws
    #[test]
    fn hv_ignores_dominated_points(points in arb_points(3, 8)) {
        let r = vec![1.0; 3];
        let kept: Vec<Vec<f64>> =
            pareto_filter(&points).into_iter().map(|i| points[i].clone()).collect();
        let all = hv_points(&points, &r);
        let filtered = hv_points(&kept, &r);
        // different slab subdivisions reorder the floating-point sums
        prop_assert!((all - filtered).abs() <= 1e-12 * all.max(1.0), "{all} vs {filtered}");
    }

    #[test]
    fn hv_is_permutation_invariant(points in arb_points(3, 8), seed in 0u64..1000) {
        let r = vec![1.0; 3];
        let mut shuffled = points.clone();
        // cheap deterministic shuffle
        let n = shuffled.len();
        if n > 1 {
            for i in 0..n {
                let j = (seed as usize + 7 * i) % n;
                shuffled.swap(i, j);
            }
        }
        prop_assert_eq!(hv_points(&points, &r), hv_points(&shuffled, &r));
    }

    #[test]
    fn hv_matches_inclusion_exclusion_exactly_on_integers(
        points in arb_int_points(3, 10),
        m4 in arb_int_points(4, 8),
    ) {
        let r3 = vec![10.0; 3];
        prop_assert_eq!(
            hv_points(&points, &r3),
            hv_inclusion_exclusion_points(&points, &r3).unwrap()
        );
        let r4 = vec![10.0; 4];
        prop_assert_eq!(
            hv_points(&m4, &r4),
            hv_inclusion_exclusion_points(&m4, &r4).unwrap()
        );
    }

    #[test]
    fn hv_matches_inclusion_exclusion_on_reals(points in arb_points(4, 7)) {
        let r = vec![1.0; 4];
        let fast = hv_points(&points, &r);
        let slow = hv_inclusion_exclusion_points(&points, &r).unwrap();
        prop_assert!((fast - slow).abs() <= 1e-12 * slow.max(1.0), "{fast} vs {slow}");
    }

    #[test]
    fn adding_a_point_never_decreases_hv(points in arb_points(3, 6), extra in arb_point(3)) {
        let r = vec![1.0; 3];
        let before = hv_points(&points, &r);
        let mut with = points.clone();
        with.push(extra.clone());
        let after = hv_points(&with, &r);
        prop_assert!(after >= before - 1e-12 * before.max(1.0), "{after} < {before}");
        // hvc is the difference up to fp reordering noise
        let contribution = hvc(&extra, &points, &r).unwrap();
        prop_assert!((contribution - (after - before)).abs() <= 1e-12);
    }

    #[test]
    fn hvc_is_exactly_the_hv_difference_on_integers(
        points in arb_int_points(3, 8),
        extra in prop::collection::vec(0..9i32, 3),
    ) {
        let r = vec![10.0; 3];
        let y: Vec<f64> = extra.into_iter().map(f64::from).collect();
        let mut with = points.clone();
        with.push(y.clone());
        prop_assert_eq!(
            hvc(&y, &points, &r).unwrap(),
            hv_points(&with, &r) - hv_points(&points, &r)
        );
    }

    #[test]
    fn hv_is_translation_covariant(points in arb_points(3, 6), shift in arb_point(3)) {
        let r = vec![1.0; 3];
        let moved: Vec<Vec<f64>> = points
            .iter()
            .map(|p| p.iter().zip(&shift).map(|(a, s)| a + s).collect())
            .collect();
        let r_moved: Vec<f64> = r.iter().zip(&shift).map(|(a, s)| a + s).collect();
        let before = hv_points(&points, &r);
        let after = hv_points(&moved, &r_moved);
        prop_assert!((before - after).abs() <= 1e-12 * before.max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // first derivatives
    #[test]
    fn gradient_entries_are_nonpositive_and_match_fd(
        m in 2usize..=5,
        n in 1usize..=6,
        seed in 0u64..10_000,
    ) {
        let set: PointSet<f64> = random_general_position_set(m, n, seed);
        let grad = hvhess::gradient::hv_gradient(&set).unwrap();
        prop_assert!(grad.values.iter().all(|&g| g <= 0.0));

        let r = set.reference().to_vec();
        let cfg = FdConfig::gradient_default();
        let fd = fd_gradient(
            |v| hv_points(&deconcat(v, m).unwrap(), &r),
            &concat(&set),
            &cfg,
        );
        for (&a, &f) in grad.values.iter().zip(&fd) {
            prop_assert!(cfg.within(a, f), "analytic {a} vs fd {f}");
        }
    }

    #[test]
    fn first_order_taylor_prediction_holds(seed in 0u64..10_000) {
        let set: PointSet<f64> = random_general_position_set(3, 5, seed);
        let grad = hvhess::gradient::hv_gradient(&set).unwrap();
        let base = hv(&set).value;
        let eps = 1e-4;
        let moved: Vec<Vec<f64>> = set
            .points()
            .iter()
            .map(|p| p.iter().map(|c| c - eps).collect())
            .collect();
        let shifted = hv_points(&moved, set.reference());
        prop_assert!(shifted > base, "shrinking all objectives must grow hv");
        let predicted: f64 = base - eps * grad.values.iter().sum::<f64>();
        // second-order remainder only
        prop_assert!((shifted - predicted).abs() <= 100.0 * eps * eps, "{shifted} vs {predicted}");
    }

    // 3-D sweep vs general algorithm and sparsity accounting
    #[test]
    fn sweep_matches_general_and_respects_bounds(n in 1usize..=24, seed in 0u64..10_000) {
        let set: PointSet<f64> = random_front_3d(n, seed);
        let (sweep, stats) = hessian_3d_sweep_with_stats(&set).unwrap();
        let general = hessian_objective(&set).unwrap();
        prop_assert!(sweep.support_equal(&general, 1e-12));
        prop_assert!(sweep.max_abs_diff(&general) <= 1e-12);
        // provable bound: three sweeps of at most 6n - 4 stored cells each
        prop_assert!(sweep.nnz() <= 18 * n - 12, "nnz {} at n {n}", sweep.nnz());
        if n <= 3 {
            prop_assert!(sweep.nnz() <= 12 * n - 6);
        }
        for pass in stats.passes {
            prop_assert_eq!(pass.removed, pass.processed - pass.final_front_len);
            prop_assert!(pass.removed <= n.saturating_sub(1));
        }
    }

    #[test]
    fn sweep_nonzero_count_is_permutation_invariant(n in 2usize..=16, seed in 0u64..10_000) {
        let set: PointSet<f64> = random_front_3d(n, seed);
        let baseline = hessian_3d_sweep_with_stats(&set).unwrap().0.nnz();
        let mut reversed: Vec<Vec<f64>> = set.points().to_vec();
        reversed.reverse();
        let permuted = PointSet::new(reversed, set.reference().to_vec()).unwrap();
        prop_assert_eq!(hessian_3d_sweep_with_stats(&permuted).unwrap().0.nnz(), baseline);
    }

    // general Hessian: zero pattern, sign pattern, symmetry, sparsity bound
    #[test]
    fn hessian_patterns_hold(m in 2usize..=4, n in 1usize..=6, seed in 0u64..10_000) {
        let set: PointSet<f64> = random_general_position_set(m, n, seed);
        let full = hessian_objective_full(&set).unwrap();
        prop_assert!(
            full.symmetry_defect <= 1e-9,
            "symmetry defect {}",
            full.symmetry_defect
        );
        let a = &full.matrix;
        prop_assert!(a.nnz() <= n * n * m * m);
        for i in 0..n {
            for k in 0..m {
                prop_assert_eq!(a.get(i * m + k, i * m + k), 0.0);
                for j in 0..n {
                    prop_assert_eq!(a.get(i * m + k, j * m + k), 0.0);
                }
            }
        }
        for (row, col, v) in a.entries() {
            let (i, j) = (row / m, col / m);
            if i == j {
                prop_assert!(v >= 0.0, "same-point entry ({row},{col}) = {v}");
            } else {
                prop_assert!(v <= 0.0, "cross-point entry ({row},{col}) = {v}");
            }
        }
    }

    #[test]
    fn identity_model_transport_is_exact(n in 1usize..=5, seed in 0u64..10_000) {
        let set: PointSet<f64> = random_general_position_set(3, n, seed);
        let x = concat(&set);
        let model = IdentityModel { dim: 3 };
        let h = hessian_decision(&x, n, &model, set.reference()).unwrap();
        let a = hessian_objective(&set).unwrap();
        prop_assert_eq!(h.to_dense(), a.to_dense());
    }
}

#[test]
fn f32_pipeline_smoke() {
    let set: PointSet<f32> = random_general_position_set(3, 4, 99);
    assert!(check_general_position(set.points()).ok());
    let value = hv(&set).value;
    assert!(value > 0.0);
    let grad = hvhess::gradient::hv_gradient(&set).unwrap();
    assert!(grad.values.iter().all(|&g| g <= 0.0));
    let sweep = hvhess::hessian3d::hessian_3d_sweep(&set).unwrap();
    let general = hessian_objective(&set).unwrap();
    assert!(sweep.max_abs_diff(&general) <= 1e-3);
}
