//! Exhaustive invariant checks over all small connected graphs.

use nalgebra::DMatrix;

use iepl::graph::connected_graphs;
use iepl::minvar::{self, DescentOptions};
use iepl::sampler::{export_csv, sample_spectra};
use iepl::spectral::{laplacian_spectrum, variance_stats};
use iepl::Graph;

#[test]
fn incidence_identities_up_to_five_vertices() {
    for n in 2..=5 {
        for g in connected_graphs(n) {
            let nm = g.incidence_matrix();
            assert_eq!(&nm * nm.transpose(), g.combinatorial_laplacian());
            // oriented incidence: off-diagonal signs depend on orientation
            let gram = (nm.transpose() * &nm).abs();
            let expected = DMatrix::identity(g.m(), g.m()) * 2.0 + g.line_graph_adjacency();
            assert_eq!(gram, expected);
            let m2 = g.m2_matrix().unwrap();
            assert_eq!(m2, m2.transpose());
            let lo = m2.symmetric_eigenvalues().min();
            assert!(lo >= 2.0 - 1e-12, "{g}: min eigenvalue {lo}");
        }
    }
}

#[test]
fn bipartition_exists_iff_no_odd_cycle() {
    // Brute force: a graph is bipartite iff some 2-colouring is proper.
    for n in 2..=6 {
        for g in connected_graphs(n) {
            let brute = (0u32..1 << n).any(|mask| {
                g.edges().iter().all(|[a, b]| (mask >> a & 1) != (mask >> b & 1))
            });
            assert_eq!(g.bipartition().unwrap().is_some(), brute, "{g}");
        }
    }
}

#[test]
fn solvers_agree_on_all_graphs_up_to_six_vertices() {
    let opts = DescentOptions::default();
    for n in 2..=6 {
        for g in connected_graphs(n) {
            let e = minvar::minvar_exact(&g, 20).unwrap();
            let d = minvar::minvar_descent(&g, &opts).unwrap();
            assert!((e.objective - d.objective).abs() < 1e-8, "{g}");
            assert_eq!(e.support, d.support, "{g}");
        }
    }
}

#[test]
fn sandwich_amv_mv_var_one() {
    for n in 2..=6 {
        for g in connected_graphs(n) {
            let amv = minvar::amv(&g).unwrap();
            let mv = minvar::minvar_exact(&g, 20).unwrap().variance;
            let v1 = minvar::var_one(&g).unwrap();
            let bound = minvar::var_one_upper_bound(&g).unwrap();
            assert!(amv <= mv + 1e-10, "{g}: amv {amv} > mv {mv}");
            assert!(mv <= v1 + 1e-10, "{g}: mv {mv} > var_one {v1}");
            assert!(v1 <= bound + 1e-10, "{g}: var_one {v1} > bound {bound}");
        }
    }
}

#[test]
fn var_one_matches_combinatorial_spectrum() {
    for n in 2..=6 {
        for g in connected_graphs(n) {
            let s = laplacian_spectrum(&g, &vec![1.0; g.m()]).unwrap();
            let stats = variance_stats(&s).unwrap();
            assert!((stats.variance - minvar::var_one(&g).unwrap()).abs() < 1e-10, "{g}");
            assert!((stats.variance - stats.variance_from_p2(n - 1)).abs() < 1e-10);
        }
    }
}

#[test]
fn exactly_one_support_passes_the_test() {
    let mut graphs: Vec<Graph> = (2..=6).flat_map(connected_graphs).filter(|g| g.m() <= 10).collect();
    graphs.extend([Graph::double_star(3, 3), Graph::double_star(2, 5), Graph::double_star(1, 8)]);
    for g in graphs {
        let passing = minvar::scan_all_supports(&g).unwrap();
        assert_eq!(passing.len(), 1, "{g}: {passing:?}");
    }
}

#[test]
fn path_closed_form_matches_exact() {
    for n in 2..=10 {
        let exact = minvar::minvar_exact(&Graph::path(n), 20).unwrap().variance;
        assert!((minvar::path_mv_exact(n).unwrap() - exact).abs() < 1e-8);
    }
}

#[test]
fn line_regular_closed_form_matches_exact() {
    for n in 2..=6 {
        for g in connected_graphs(n) {
            if let Some(cf) = minvar::closed_form_line_regular(&g) {
                let exact = minvar::minvar_exact(&g, 20).unwrap().variance;
                assert!((cf - exact).abs() < 1e-10, "{g}");
            }
        }
    }
}

#[test]
fn sampler_is_reproducible_across_thread_counts() {
    let g = Graph::paw();
    let dir = tempfile::tempdir().unwrap();
    let mut bytes = Vec::new();
    for threads in [1, 4] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let run = pool.install(|| sample_spectra(&g, 2000, 42, false)).unwrap();
        let path = dir.path().join(format!("paw{threads}.csv"));
        export_csv(&run, &path).unwrap();
        bytes.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(bytes[0], bytes[1]);
    let other = sample_spectra(&g, 2000, 43, false).unwrap();
    let path = dir.path().join("other.csv");
    export_csv(&other, &path).unwrap();
    assert_ne!(std::fs::read(&path).unwrap(), bytes[0]);
}

#[test]
fn csv_examples() {
    let dir = tempfile::tempdir().unwrap();

    let run = sample_spectra(&Graph::path(2), 3, 5, false).unwrap();
    let path = dir.path().join("k2.csv");
    export_csv(&run, &path).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "lambda2\n2\n2\n2\n");

    let run = sample_spectra(&Graph::cycle(4).unwrap(), 0, 5, false).unwrap();
    let path = dir.path().join("empty.csv");
    let sidecar = export_csv(&run, &path).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "lambda2,lambda3,lambda4\n");
    let meta: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(sidecar).unwrap()).unwrap();
    assert_eq!(meta["trace"], 8.0);
    assert_eq!(meta["combinatorial_point"], serde_json::json!([2.0, 2.0, 4.0]));
    assert_eq!(meta["reference_lines"].as_array().unwrap().len(), 3);

    let run = sample_spectra(&Graph::path(3), 0, 5, false).unwrap();
    let sidecar = export_csv(&run, &dir.path().join("p3.csv")).unwrap();
    let meta: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(sidecar).unwrap()).unwrap();
    assert_eq!(meta["reference_lines"], serde_json::json!([]));

    let run = sample_spectra(&Graph::cycle(4).unwrap(), 500, 5, false).unwrap();
    let path = dir.path().join("c4.csv");
    export_csv(&run, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    for line in text.lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert!(v[0] <= v[1] && v[1] <= 8.0 - v[0] - v[1] + 1e-9, "{line}");
    }
}
