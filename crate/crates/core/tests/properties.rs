//! Property tests for the invariants of each module.

use std::sync::OnceLock;

use nalgebra::DMatrix;
use proptest::prelude::*;

use iepl::graph::connected_graphs;
use iepl::minvar::{self, DescentOptions, QPInstance};
use iepl::multiplicity::construct_all_distinct;
use iepl::realizability::{
    check_quadratic_system, check_star, join_construct, realize_kn, realize_p3, realize_star,
    solve_sum_of_squares, TargetSpectrum,
};
use iepl::sampler::sample_spectra;
use iepl::spectral::{assemble_laplacian, laplacian_spectrum, spectrum_of};
use iepl::{Graph, OrderedMultiplicityList};

fn small_graphs() -> &'static [Graph] {
    static GRAPHS: OnceLock<Vec<Graph>> = OnceLock::new();
    GRAPHS.get_or_init(|| (2..=6).flat_map(connected_graphs).collect())
}

fn bipartite_graphs() -> &'static [Graph] {
    static GRAPHS: OnceLock<Vec<Graph>> = OnceLock::new();
    GRAPHS.get_or_init(|| {
        small_graphs().iter().filter(|g| g.bipartition().unwrap().is_some()).cloned().collect()
    })
}

fn weighted_from(pool: fn() -> &'static [Graph]) -> impl Strategy<Value = (Graph, Vec<f64>)> {
    (0..pool().len()).prop_flat_map(move |i| {
        let g = pool()[i].clone();
        let m = g.m();
        (Just(g), prop::collection::vec(0.01f64..10.0, m))
    })
}

fn weighted_graph() -> impl Strategy<Value = (Graph, Vec<f64>)> {
    weighted_from(small_graphs)
}

fn positive_target(max_n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01f64..10.0, 1..max_n).prop_map(|mut v| {
        v.push(0.0);
        v.sort_by(f64::total_cmp);
        v
    })
}

fn laplacian_block(size: usize) -> impl Strategy<Value = DMatrix<f64>> {
    let edges = size * (size.saturating_sub(1)) / 2;
    prop::collection::vec(0.0f64..3.0, edges).prop_map(move |w| {
        let g = Graph::complete(size);
        assemble_laplacian(&g, &w).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn laplacian_spectrum_is_psd_with_trace_2w((g, w) in weighted_graph()) {
        let s = laplacian_spectrum(&g, &w).unwrap();
        let scale = s.largest().max(1.0);
        prop_assert!(s.values()[0].abs() <= 1e-10 * scale);
        prop_assert!(s.values().iter().all(|&x| x >= -1e-10 * scale));
        let total: f64 = s.values().iter().sum();
        let expected = 2.0 * w.iter().sum::<f64>();
        prop_assert!((total - expected).abs() <= 1e-10 * expected);
        // connected: zero is simple
        prop_assert!(s.values()[1] > 1e-10 * scale);
    }

    #[test]
    fn spectrum_scales_with_weights((g, w) in weighted_graph(), k in 0.1f64..10.0) {
        let a = laplacian_spectrum(&g, &w).unwrap();
        let scaled: Vec<f64> = w.iter().map(|x| k * x).collect();
        let b = laplacian_spectrum(&g, &scaled).unwrap();
        let tol = 1e-10 * b.largest().max(1.0);
        for (x, y) in a.values().iter().zip(b.values()) {
            prop_assert!((k * x - y).abs() <= tol);
        }
    }

    #[test]
    fn nullity_counts_components(sizes in prop::collection::vec(1usize..5, 1..4), w in 0.1f64..5.0) {
        // disjoint union of paths
        let mut edges = Vec::new();
        let mut offset = 0;
        for &k in &sizes {
            edges.extend((0..k - 1).map(|i| (offset + i, offset + i + 1)));
            offset += k;
        }
        let g = Graph::new(offset, edges).unwrap();
        let s = laplacian_spectrum(&g, &vec![w; g.m()]).unwrap();
        let zeros = s.values().iter().filter(|x| x.abs() <= 1e-9).count();
        prop_assert_eq!(zeros, sizes.len());
        prop_assert_eq!(g.component_count(), sizes.len());
    }

    #[test]
    fn bipartite_largest_eigenvalue_is_simple((g, w) in weighted_from(bipartite_graphs)) {
        let s = laplacian_spectrum(&g, &w).unwrap();
        let v = s.values();
        prop_assert!(v[v.len() - 1] - v[v.len() - 2] > 1e-9 * v[v.len() - 1]);
    }

    #[test]
    fn path_spectra_are_simple(n in 2usize..9, seed in any::<u64>()) {
        let g = Graph::path(n);
        let w = iepl::sampler::sample_weights(g.m(), seed, 0);
        let s = laplacian_spectrum(&g, &w).unwrap();
        prop_assert_eq!(s.multiplicity_list(), OrderedMultiplicityList(vec![1; n]));
    }

    #[test]
    fn bipartition_edges_cross((g, _w) in weighted_graph()) {
        if let Some(b) = g.bipartition().unwrap() {
            let sig = b.signature(g.n());
            for [a, c] in g.edges() {
                prop_assert!(sig[*a] != sig[*c]);
            }
        }
    }

    #[test]
    fn kn_witness_matches_target(t in positive_target(8)) {
        let target = TargetSpectrum::new(t.clone()).unwrap();
        let w = realize_kn(&target).unwrap();
        prop_assert!(w.is_generalized_laplacian(1e-12));
        prop_assert!(w.spectrum_error(&t) < 1e-10);
    }

    #[test]
    fn star_check_is_scale_invariant(t in positive_target(8), k in 0.01f64..100.0) {
        let a = check_star(&TargetSpectrum::new(t.clone()).unwrap()).unwrap();
        let scaled: Vec<f64> = t.iter().map(|x| k * x).collect();
        let b = check_star(&TargetSpectrum::new(scaled).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn p3_check_matches_inequality(l2 in 0.01f64..10.0, ratio in 0.5f64..6.0) {
        let t = vec![0.0, l2, l2 * ratio];
        prop_assume!(ratio >= 1.0);
        let target = TargetSpectrum::new(t.clone()).unwrap();
        let by_check = check_star(&target).unwrap();
        let by_inequality = t[2] >= 3.0 * t[1];
        prop_assume!((ratio - 3.0).abs() > 1e-9);
        prop_assert_eq!(by_check, by_inequality);
        prop_assert_eq!(realize_p3(&target).is_ok(), by_inequality);
    }

    #[test]
    fn realized_star_spectra_pass_check(w in prop::collection::vec(0.01f64..10.0, 1..7)) {
        let g = Graph::star(w.len() + 1).unwrap();
        let s = laplacian_spectrum(&g, &w).unwrap();
        let target = TargetSpectrum::new({
            let mut v = s.values().to_vec();
            v[0] = 0.0;
            v
        }).unwrap();
        prop_assert!(check_star(&target).unwrap());
        let witness = realize_star(&target).unwrap();
        prop_assert!(witness.is_generalized_laplacian(1e-12));
        prop_assert!(witness.spectrum_error(target.values()) < 1e-8);
    }

    #[test]
    fn join_spectrum_formula(
        a in (1usize..4).prop_flat_map(laplacian_block),
        b in (1usize..4).prop_flat_map(laplacian_block),
        rho in 0.1f64..3.0,
    ) {
        let (p, q) = (a.nrows(), b.nrows());
        let m = join_construct(&a, &b, rho).unwrap();
        let sa = spectrum_of(&a, 1e-12).unwrap();
        let sb = spectrum_of(&b, 1e-12).unwrap();
        let mut expected = vec![0.0, rho * (p + q) as f64];
        expected.extend(sa.values()[1..].iter().map(|x| x + rho * q as f64));
        expected.extend(sb.values()[1..].iter().map(|x| x + rho * p as f64));
        expected.sort_by(f64::total_cmp);
        let got = spectrum_of(&m, 1e-12).unwrap();
        prop_assert!(got.max_abs_diff(&expected) < 1e-10);
    }

    #[test]
    fn quadratic_system_solutions(p in 0.01f64..5.0, q in 0.01f64..5.0) {
        let (alpha, beta) = (p * p + q * q, p * q);
        prop_assert!(check_quadratic_system(alpha, beta).unwrap());
        let (x, y) = solve_sum_of_squares(alpha, beta).unwrap();
        prop_assert!(x <= y);
        prop_assert!((x * x + y * y - alpha).abs() < 1e-10 * alpha);
        prop_assert!((x * y - beta).abs() < 1e-10 * alpha);
    }

    #[test]
    fn c4_never_has_a_repeated_top(w in prop::collection::vec(0.01f64..10.0, 4)) {
        let s = laplacian_spectrum(&Graph::cycle(4).unwrap(), &w).unwrap();
        prop_assert_ne!(s.multiplicity_list(), OrderedMultiplicityList(vec![1, 1, 2]));
    }

    #[test]
    fn all_distinct_has_positive_weights(i in 0..small_graphs().len()) {
        let g = &small_graphs()[i];
        let w = construct_all_distinct(g).unwrap();
        prop_assert!(w.weights.iter().all(|&x| x > 0.0));
        prop_assert_eq!(w.achieved.multiplicity_list(), OrderedMultiplicityList(vec![1; g.n()]));
    }

    #[test]
    fn random_feasible_weights_do_not_beat_the_minimum(
        i in 0..small_graphs().len(),
        raw in prop::collection::vec(0.0f64..1.0, 15),
    ) {
        let g = &small_graphs()[i];
        let q = QPInstance::new(g).unwrap();
        let r = minvar::minvar_exact(g, 20).unwrap();
        let mut w: Vec<f64> = raw[..g.m()].to_vec();
        let total: f64 = w.iter().sum();
        prop_assume!(total > 0.0);
        for x in &mut w {
            *x *= g.m() as f64 / total;
        }
        let var = q.variance_of_objective(q.objective(&w));
        prop_assert!(var >= r.variance - 1e-9);
    }

    #[test]
    fn descent_keeps_feasibility_and_decreases(i in 0..small_graphs().len(), exact_step in any::<bool>()) {
        let g = &small_graphs()[i];
        let q = QPInstance::new(g).unwrap();
        let m = g.m() as f64;
        let mut prev = q.objective(&vec![1.0; g.m()]);
        let mut ok = true;
        let opts = DescentOptions { exact_step, ..DescentOptions::default() };
        minvar::minvar_descent_observed(g, &opts, |step| {
            let sum: f64 = step.weights.iter().sum();
            let f = q.objective(step.weights);
            // either step rule guarantees a decrease of at least 6η²,
            // up to rounding in the objective itself
            ok &= (sum - m).abs() <= 1e-9 * m
                && step.weights.iter().all(|&x| x >= 0.0)
                && prev - f >= 6.0 * step.eta * step.eta - 1e-12 * prev;
            prev = f;
        }).unwrap();
        prop_assert!(ok);
    }

    #[test]
    fn sampled_spectra_pass_family_checks(seed in any::<u64>()) {
        for n in 3..=6 {
            let run = sample_spectra(&Graph::star(n).unwrap(), 20, seed, false).unwrap();
            for r in &run.records {
                let mut v = r.clone();
                v[0] = 0.0;
                prop_assert!(check_star(&TargetSpectrum::new(v).unwrap()).unwrap());
            }
        }
        let run = sample_spectra(&Graph::path(3), 50, seed, false).unwrap();
        prop_assert!(run.records.iter().all(|r| r[2] >= 3.0 * r[1] * (1.0 - 1e-12)));
    }
}
