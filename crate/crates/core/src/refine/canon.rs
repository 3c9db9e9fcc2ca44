//! Canonical forms of square colour matrices under simultaneous row and
//! column permutation, by individualization and refinement.

/// Returns the lexicographically least permuted matrix over all leaves of the
/// search tree, or `None` when more than `leaf_budget` leaves would be visited.
pub fn canonical_form(mat: &[u32], n: usize, leaf_budget: usize) -> Option<Vec<u32>> {
    debug_assert_eq!(mat.len(), n * n);
    let diag: Vec<u32> = (0..n).map(|x| mat[x * n + x]).collect();
    let colours = rank_values(&diag);
    let mut search = Search {
        mat,
        n,
        best: None,
        leaves: 0,
        budget: leaf_budget,
    };
    search.descend(colours).then_some(search.best.expect("at least one leaf"))
}

fn rank_values<T: Ord + Clone>(values: &[T]) -> Vec<u32> {
    let mut sorted = values.to_vec();
    sorted.sort();
    sorted.dedup();
    values
        .iter()
        .map(|v| sorted.binary_search(v).expect("present") as u32)
        .collect()
}

fn distinct(colours: &[u32]) -> usize {
    colours.iter().copied().max().map_or(0, |m| m as usize + 1)
}

struct Search<'a> {
    mat: &'a [u32],
    n: usize,
    best: Option<Vec<u32>>,
    leaves: usize,
    budget: usize,
}

impl Search<'_> {
    /// Colour refinement by (colour, out-profile, in-profile) until stable.
    fn refine(&self, mut colours: Vec<u32>) -> Vec<u32> {
        let n = self.n;
        loop {
            let before = distinct(&colours);
            if before == n {
                return colours;
            }
            let sigs: Vec<(u32, Vec<(u32, u32)>, Vec<(u32, u32)>)> = (0..n)
                .map(|x| {
                    let mut out: Vec<(u32, u32)> = (0..n).map(|y| (self.mat[x * n + y], colours[y])).collect();
                    let mut inc: Vec<(u32, u32)> = (0..n).map(|y| (self.mat[y * n + x], colours[y])).collect();
                    out.sort_unstable();
                    inc.sort_unstable();
                    (colours[x], out, inc)
                })
                .collect();
            colours = rank_values(&sigs);
            if distinct(&colours) == before {
                return colours;
            }
        }
    }

    fn descend(&mut self, colours: Vec<u32>) -> bool {
        let colours = self.refine(colours);
        let n = self.n;
        let k = distinct(&colours);
        if k == n {
            self.leaves += 1;
            if self.leaves > self.budget {
                return false;
            }
            let mut permuted = vec![0u32; n * n];
            for x in 0..n {
                for y in 0..n {
                    permuted[colours[x] as usize * n + colours[y] as usize] = self.mat[x * n + y];
                }
            }
            if self.best.as_ref().is_none_or(|b| permuted < *b) {
                self.best = Some(permuted);
            }
            return true;
        }
        let mut sizes = vec![0usize; k];
        for &c in &colours {
            sizes[c as usize] += 1;
        }
        let target = sizes.iter().position(|&s| s > 1).expect("not discrete") as u32;
        for x in 0..n {
            if colours[x] != target {
                continue;
            }
            let split: Vec<u32> = colours
                .iter()
                .enumerate()
                .map(|(y, &c)| 2 * c + u32::from(y != x))
                .collect();
            if !self.descend(rank_values(&split)) {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn permute(mat: &[u32], n: usize, perm: &[usize]) -> Vec<u32> {
        let mut out = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                out[perm[x] * n + perm[y]] = mat[x * n + y];
            }
        }
        out
    }

    #[test]
    fn invariant_under_permutation() {
        let n = 5;
        // Directed 5-cycle with loops.
        let mat: Vec<u32> = (0..n * n)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                if x == y {
                    0
                } else if (x + 1) % n == y {
                    1
                } else {
                    2
                }
            })
            .collect();
        let c = canonical_form(&mat, n, 1000).unwrap();
        for perm in [[1, 2, 3, 4, 0], [4, 3, 2, 1, 0], [0, 2, 4, 1, 3]] {
            assert_eq!(canonical_form(&permute(&mat, n, &perm), n, 1000).unwrap(), c);
        }
        let mut other = mat.clone();
        other[1] = 2;
        other[2] = 1;
        assert_ne!(canonical_form(&other, n, 1000).unwrap(), c);
    }

    #[test]
    fn budget_is_respected() {
        let n = 6;
        let mat: Vec<u32> = (0..n * n).map(|i| u32::from(i / n != i % n)).collect();
        assert!(canonical_form(&mat, n, 10).is_none());
        assert!(canonical_form(&mat, n, 720).is_some());
    }
}
