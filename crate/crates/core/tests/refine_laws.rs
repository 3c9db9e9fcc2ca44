use proptest::prelude::*;
use wllab_core::field::FieldSpec;
use wllab_core::generators::{corpus_up_to, random_coloured_digraph};
use wllab_core::partition::{atomic_types, is_graph_like, project_partition};
use wllab_core::refine::{
    fixed_point, hat_extension, is_c_stable, is_stable, is_wl_stable, step, EngineConfig, OperatorSpec,
};
use wllab_core::spas::sch_oracle;
use wllab_core::{Graph, LabelledPartition};

fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn operators(k: usize) -> Vec<OperatorSpec> {
    vec![
        OperatorSpec::wl(k, 1),
        OperatorSpec::wl(k, 2),
        OperatorSpec::c(k, 1),
        OperatorSpec::c(k, 2),
        OperatorSpec::im(k, FieldSpec::Rationals),
        OperatorSpec::im(k, gf(2)),
        OperatorSpec::imt(k, gf(3)),
        OperatorSpec::imr(k, 1, gf(2)),
    ]
}

fn fixed(spec: &OperatorSpec, g: &Graph) -> LabelledPartition {
    let start = atomic_types(g, spec.k).unwrap();
    fixed_point(spec, &start, &EngineConfig::default()).unwrap().partition
}

fn small_corpus() -> Vec<Graph> {
    corpus_up_to(5).unwrap().into_iter().map(|e| e.graph).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn steps_refine_and_stay_graph_like(n in 1usize..5, c in 2usize..5, seed in any::<u64>()) {
        let g = random_coloured_digraph(n, c, seed).unwrap();
        let cfg = EngineConfig::default();
        for spec in operators(3) {
            let mut current = atomic_types(&g, 3).unwrap();
            for _ in 0..2 {
                let next = step(&spec, &current, &cfg).unwrap().into_owned();
                prop_assert!(current.compare(&next).unwrap().right_refines(), "{spec}");
                prop_assert!(is_graph_like(&next).holds, "{spec}");
                current = next;
            }
        }
    }

    #[test]
    fn wl_stable_implies_c_stable(n in 1usize..5, c in 2usize..5, seed in any::<u64>()) {
        let g = random_coloured_digraph(n, c, seed).unwrap();
        for r in 1..=2 {
            let x = fixed(&OperatorSpec::wl(3, r), &g);
            prop_assert!(is_wl_stable(&x, r).unwrap());
            prop_assert!(is_c_stable(&x, r).unwrap());
        }
    }

    #[test]
    fn results_do_not_depend_on_thread_count(n in 2usize..5, c in 2usize..4, seed in any::<u64>()) {
        let g = random_coloured_digraph(n, c, seed).unwrap();
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| {
                operators(3)
                    .iter()
                    .map(|spec| fixed_point(spec, &atomic_types(&g, 3).unwrap(), &EngineConfig::default()).unwrap())
                    .collect::<Vec<_>>()
            })
        };
        prop_assert_eq!(run(1), run(4));
    }
}

#[test]
fn fixed_points_project_to_fixed_points() {
    for g in small_corpus() {
        for spec in [OperatorSpec::wl(3, 1), OperatorSpec::c(3, 1), OperatorSpec::wl(3, 2), OperatorSpec::c(3, 2)] {
            let x = fixed(&spec, &g);
            let lower = project_partition(&x, 2).unwrap();
            assert!(is_stable(&spec.with_k(2), &lower, &EngineConfig::default()).unwrap());
        }
    }
    for g in corpus_up_to(4).unwrap().into_iter().map(|e| e.graph) {
        for spec in [OperatorSpec::im(4, FieldSpec::Rationals), OperatorSpec::imt(4, gf(2))] {
            let x = fixed(&spec, &g);
            let lower = project_partition(&x, 3).unwrap();
            assert!(is_stable(&spec.with_k(3), &lower, &EngineConfig::default()).unwrap(), "{spec}");
        }
    }
}

#[test]
fn c_stable_implies_c_r_stable() {
    for g in small_corpus() {
        let x = fixed(&OperatorSpec::c(3, 1), &g);
        assert!(is_c_stable(&x, 1).unwrap());
        assert!(is_c_stable(&x, 2).unwrap());
    }
}

#[test]
fn projections_of_c_fixed_points_are_wl_stable() {
    for g in small_corpus() {
        for (k, r) in [(2, 1), (2, 2), (3, 1)] {
            let x = fixed(&OperatorSpec::c(k + r, r), &g);
            let lower = project_partition(&x, k).unwrap();
            assert!(is_graph_like(&lower).holds);
            assert!(is_wl_stable(&lower, r).unwrap(), "k={k}, r={r}");
        }
    }
}

#[test]
fn projections_of_im_fixed_points_are_c_stable() {
    for g in corpus_up_to(4).unwrap().into_iter().map(|e| e.graph) {
        for field in [FieldSpec::Rationals, gf(2)] {
            let x = fixed(&OperatorSpec::im(4, field), &g);
            assert!(is_c_stable(&project_partition(&x, 2).unwrap(), 1).unwrap());
        }
    }
}

#[test]
fn hat_extension_of_wl_fixed_points_is_c_stable() {
    for g in small_corpus() {
        let x = fixed(&OperatorSpec::wl(2, 1), &g);
        let hat = hat_extension(&x, true).unwrap();
        assert_eq!(hat.arity(), 3);
        assert!(is_c_stable(&hat, 1).unwrap());
    }
}

#[test]
fn orbit_partitions_are_fixed_points_of_every_family() {
    let cfg = EngineConfig::default();
    for g in small_corpus() {
        let orbits = sch_oracle(&g, 3).unwrap();
        assert!(is_graph_like(&orbits).holds);
        for spec in operators(3).into_iter().chain([OperatorSpec::imr(3, 2, gf(3))]) {
            assert!(is_stable(&spec, &orbits, &cfg).unwrap(), "{spec}");
        }
    }
}
