use itertools::Itertools;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wllab_core::coherent::intersection_numbers;
use wllab_core::field::FieldSpec;
use wllab_core::generators::{corpus_up_to, random_coloured_digraph};
use wllab_core::partition::project_partition;
use wllab_core::refine::EngineConfig;
use wllab_core::spas::{automorphisms, ep, find_isomorphism, sch_oracle, spas_apply, IsoBudget, SpasId};
use wllab_core::{Graph, LabelledPartition};

fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn apply(s: &SpasId, g: &Graph, k: usize) -> LabelledPartition {
    spas_apply(s, g, k, &EngineConfig::default()).unwrap()
}

/// `a ⪯ b`: `b` refines `a`.
fn coarser(a: &LabelledPartition, b: &LabelledPartition) -> bool {
    a.compare(b).unwrap().right_refines()
}

fn corpus(max_n: usize) -> Vec<(String, Graph)> {
    corpus_up_to(max_n).unwrap().into_iter().map(|e| (e.name, e.graph)).collect()
}

fn is_isomorphism(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    (0..g.n()).cartesian_product(0..g.n()).all(|(u, v)| g.colour_name(u, v) == h.colour_name(map[u], map[v]))
}

#[test]
fn chains_are_monotone() {
    let schemes = [
        SpasId::wl(),
        SpasId::wl_r(2),
        SpasId::c(),
        SpasId::c_r(2),
        SpasId::im(FieldSpec::Rationals),
        SpasId::imt(gf(3)),
        SpasId::imr(1, gf(2)),
    ];
    for (name, g) in corpus(5) {
        for s in &schemes {
            let levels: Vec<_> = (1..=4).map(|k| apply(s, &g, k)).collect();
            for (k, pair) in levels.windows(2).enumerate() {
                assert!(coarser(&pair[0], &pair[1]), "{name}: {s} at k={}", k + 1);
            }
        }
    }
}

#[test]
fn orbits_refine_every_scheme() {
    let schemes = [SpasId::wl(), SpasId::c(), SpasId::im(gf(2)), SpasId::imt(FieldSpec::Rationals), SpasId::imr(2, gf(3))];
    for (name, g) in corpus(5) {
        let orbits = project_partition(&sch_oracle(&g, 3).unwrap(), 2).unwrap();
        for s in &schemes {
            assert!(coarser(&apply(s, &g, 3), &orbits), "{name}: {s}");
        }
    }
}

#[test]
fn ep_outputs_are_coherent_configurations() {
    let cfg = EngineConfig::default();
    for (name, g) in corpus(5) {
        for k in 1..=2 {
            let c = ep(&g, k, &cfg).unwrap();
            let again = intersection_numbers(c.graph()).unwrap_or_else(|e| panic!("{name}, k={k}: {e}"));
            assert_eq!(again.rank(), c.rank());
        }
    }
}

#[test]
fn c_with_larger_r_sits_between_lower_and_same_level() {
    for (name, g) in corpus(5) {
        for r in 1..=2 {
            for k in r..=r + 2 {
                let middle = apply(&SpasId::c_r(r), &g, k);
                assert!(coarser(&apply(&SpasId::c(), &g, k - r + 1), &middle), "{name}: k={k}, r={r}");
                assert!(coarser(&middle, &apply(&SpasId::c(), &g, k)), "{name}: k={k}, r={r}");
            }
        }
    }
}

#[test]
fn wl_and_c_bound_each_other() {
    for (name, g) in corpus(5) {
        for (k, r) in [(2, 1), (3, 1), (3, 2)] {
            let wl = apply(&SpasId::wl_r(r), &g, k);
            assert!(coarser(&apply(&SpasId::c_r(r), &g, k), &wl), "{name}: k={k}, r={r}");
            assert!(coarser(&wl, &apply(&SpasId::c_r(r), &g, k + r)), "{name}: k={k}, r={r}");
        }
    }
}

#[test]
fn imt_is_sandwiched_between_im_levels() {
    for (name, g) in corpus(4) {
        for field in [FieldSpec::Rationals, gf(2), gf(3)] {
            let imt = apply(&SpasId::imt(field), &g, 3);
            assert!(coarser(&apply(&SpasId::im(field), &g, 3), &imt), "{name}: {field}");
            assert!(coarser(&imt, &apply(&SpasId::im(field), &g, 5)), "{name}: {field}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn isomorphism_search_agrees_with_brute_force(n in 1usize..6, c in 2usize..4, seed in any::<u64>()) {
        let g = random_coloured_digraph(n, c, seed).unwrap();
        let brute: Vec<Vec<usize>> = (0..n).permutations(n).filter(|p| is_isomorphism(&g, &g, p)).collect();
        let found = automorphisms(&g, IsoBudget::default()).unwrap();
        prop_assert_eq!(found, brute);

        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let h = g.permute(&perm).unwrap();
        let map = find_isomorphism(&g, &h, IsoBudget::default()).unwrap().expect("relabelling is an isomorphism");
        prop_assert!(is_isomorphism(&g, &h, &map));

        let other = random_coloured_digraph(n, c, seed.wrapping_add(1)).unwrap();
        let expected = (0..n).permutations(n).any(|p| is_isomorphism(&g, &other, &p));
        prop_assert_eq!(find_isomorphism(&g, &other, IsoBudget::default()).unwrap().is_some(), expected);
    }
}
