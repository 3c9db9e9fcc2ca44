use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::partition::Graph;

/// A seeded random rainbow on `n` vertices.
///
/// Unordered pairs draw one of `colour_count` arc colours `a<i>`; a fair coin
/// decides whether the pair is symmetric (`a<i>` both ways) or oriented
/// (`a<i>+` one way and `a<i>-` back). Loops draw from a separate palette of
/// `ceil(colour_count / 2)` colours `l<i>`.
pub fn random_coloured_digraph(n: usize, colour_count: usize, seed: u64) -> Result<Graph> {
    if colour_count < 2 {
        return Err(Error::InvalidParameter("colour_count must be at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let loops = colour_count.div_ceil(2);
    let mut names = vec![String::new(); n * n];
    for v in 0..n {
        names[v * n + v] = format!("l{}", rng.gen_range(0..loops));
    }
    for u in 0..n {
        for v in u + 1..n {
            let c = rng.gen_range(0..colour_count);
            if rng.gen_bool(0.5) {
                names[u * n + v] = format!("a{c}");
                names[v * n + u] = format!("a{c}");
            } else {
                let forward = rng.gen_bool(0.5);
                let (s, t) = if forward { ("+", "-") } else { ("-", "+") };
                names[u * n + v] = format!("a{c}{s}");
                names[v * n + u] = format!("a{c}{t}");
            }
        }
    }
    Graph::from_fn(n, |u, v| names[u * n + v].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::validate_rainbow;
    use proptest::prelude::*;

    #[test]
    fn deterministic_and_small_cases() {
        assert_eq!(
            random_coloured_digraph(5, 3, 9).unwrap(),
            random_coloured_digraph(5, 3, 9).unwrap()
        );
        let one = random_coloured_digraph(1, 2, 0).unwrap();
        assert_eq!(one.n(), 1);
        assert_eq!(one.class_count(), 1);
        assert!(random_coloured_digraph(3, 1, 0).is_err());
    }

    proptest! {
        #[test]
        fn always_a_rainbow(n in 1usize..7, c in 2usize..6, seed in any::<u64>()) {
            let g = random_coloured_digraph(n, c, seed).unwrap();
            prop_assert!(validate_rainbow(g.partition()).holds);
        }
    }
}
