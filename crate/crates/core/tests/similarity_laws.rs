use itertools::Itertools;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wllab_core::field::{decide_similar, simultaneously_similar, Field, Matrix, PrimeField, Rationals, SimilarityConfig};

fn random_matrix<F: Field>(f: &F, n: usize, rng: &mut ChaCha8Rng, bound: i64) -> Matrix<F> {
    Matrix::from_fn(f, n, n, |_, _| f.from_i64(rng.gen_range(-bound..=bound)))
}

fn random_invertible<F: Field>(f: &F, n: usize, rng: &mut ChaCha8Rng, bound: i64) -> (Matrix<F>, Matrix<F>) {
    loop {
        let s = random_matrix(f, n, rng, bound);
        if let Some(inv) = s.inverse() {
            return (s, inv);
        }
    }
}

fn conjugate<F: Field>(xs: &[Matrix<F>], s: &Matrix<F>, inv: &Matrix<F>) -> Vec<Matrix<F>> {
    xs.iter().map(|x| s.mul(x).unwrap().mul(inv).unwrap()).collect()
}

fn witness_is_valid<F: Field>(w: &Matrix<F>, xs: &[Matrix<F>], ys: &[Matrix<F>]) -> bool {
    w.is_invertible() && xs.iter().zip(ys).all(|(x, y)| w.mul(x).unwrap() == y.mul(w).unwrap())
}

fn tuple<F: Field>(f: &F, n: usize, len: usize, rng: &mut ChaCha8Rng, bound: i64) -> Vec<Matrix<F>> {
    (0..len).map(|_| random_matrix(f, n, rng, bound)).collect()
}

/// Rank and trace of every word of length at most 3.
fn word_profile<F: Field>(xs: &[Matrix<F>]) -> Vec<(usize, F::Elem)> {
    (1..=3)
        .flat_map(|len| (0..len).map(|_| 0..xs.len()).multi_cartesian_product())
        .map(|word| {
            let product = word[1..].iter().fold(xs[word[0]].clone(), |acc, &i| acc.mul(&xs[i]).unwrap());
            (product.rank(), product.trace())
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugates_are_found_with_valid_witnesses(seed in any::<u64>(), n in 1usize..4, len in 1usize..3, p in prop::sample::select(vec![2u64, 3, 5])) {
        let cfg = SimilarityConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = PrimeField::new(p).unwrap();
        let xs = tuple(&f, n, len, &mut rng, 4);
        let (s, inv) = random_invertible(&f, n, &mut rng, 4);
        let ys = conjugate(&xs, &s, &inv);
        let w = simultaneously_similar(&xs, &ys, &cfg).unwrap();
        prop_assert!(w.is_some());
        prop_assert!(witness_is_valid(&w.unwrap(), &xs, &ys));

        let q = Rationals;
        let xs = tuple(&q, n, len, &mut rng, 3);
        let (s, inv) = random_invertible(&q, n, &mut rng, 2);
        let ys = conjugate(&xs, &s, &inv);
        let w = simultaneously_similar(&xs, &ys, &cfg).unwrap().expect("conjugate tuples are similar");
        prop_assert!(witness_is_valid(&w, &xs, &ys));
    }

    #[test]
    fn similarity_is_an_equivalence(seed in any::<u64>(), n in 1usize..4) {
        let cfg = SimilarityConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = PrimeField::new(2).unwrap();
        let xs = tuple(&f, n, 2, &mut rng, 1);
        let ys = tuple(&f, n, 2, &mut rng, 1);
        prop_assert!(decide_similar(&xs, &xs, &cfg).unwrap());
        prop_assert_eq!(decide_similar(&xs, &ys, &cfg).unwrap(), decide_similar(&ys, &xs, &cfg).unwrap());

        let (s, si) = random_invertible(&f, n, &mut rng, 1);
        let (t, ti) = random_invertible(&f, n, &mut rng, 1);
        let mid = conjugate(&xs, &s, &si);
        let last = conjugate(&mid, &t, &ti);
        prop_assert!(decide_similar(&xs, &mid, &cfg).unwrap());
        prop_assert!(decide_similar(&mid, &last, &cfg).unwrap());
        prop_assert!(decide_similar(&xs, &last, &cfg).unwrap());
    }

    #[test]
    fn similar_tuples_share_word_ranks_and_traces(seed in any::<u64>(), n in 1usize..4, len in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = PrimeField::new(5).unwrap();
        let xs = tuple(&f, n, len, &mut rng, 4);
        let (s, inv) = random_invertible(&f, n, &mut rng, 4);
        prop_assert_eq!(word_profile(&xs), word_profile(&conjugate(&xs, &s, &inv)));
        let q = Rationals;
        let xs = tuple(&q, n, len, &mut rng, 3);
        let (s, inv) = random_invertible(&q, n, &mut rng, 2);
        prop_assert_eq!(word_profile(&xs), word_profile(&conjugate(&xs, &s, &inv)));
    }
}
