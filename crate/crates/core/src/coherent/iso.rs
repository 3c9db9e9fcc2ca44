use super::CoherentConfiguration;
use crate::error::{Error, Result};

pub const DEFAULT_COLOUR_CAP: usize = 64;

/// A colour bijection `φ` with `p_{στ}^κ = q_{φσ,φτ}^{φκ}`, if one exists.
pub fn algebraic_isomorphism(
    c1: &CoherentConfiguration,
    c2: &CoherentConfiguration,
) -> Result<Option<Vec<u32>>> {
    algebraic_isomorphism_with(c1, c2, DEFAULT_COLOUR_CAP)
}

pub fn algebraic_isomorphism_with(
    c1: &CoherentConfiguration,
    c2: &CoherentConfiguration,
    colour_cap: usize,
) -> Result<Option<Vec<u32>>> {
    let r = c1.rank();
    if r.max(c2.rank()) > colour_cap {
        return Err(Error::CapExceeded {
            what: "colours for algebraic isomorphism",
            requested: r.max(c2.rank()) as u128,
            cap: colour_cap as u128,
        });
    }
    if r != c2.rank() || c1.n() != c2.n() {
        return Ok(None);
    }
    let inv1: Vec<Invariant> = (0..r as u32).map(|s| invariant(c1, s)).collect();
    let inv2: Vec<Invariant> = (0..r as u32).map(|s| invariant(c2, s)).collect();
    let candidates: Vec<Vec<u32>> = inv1
        .iter()
        .map(|a| (0..r as u32).filter(|&t| inv2[t as usize] == *a).collect())
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    // Assign the most constrained colours first.
    let mut order: Vec<u32> = (0..r as u32).collect();
    order.sort_by_key(|&s| (candidates[s as usize].len(), s));
    let mut search = Search {
        c1,
        c2,
        candidates,
        order,
        phi: vec![u32::MAX; r],
        used: vec![false; r],
    };
    Ok(search.extend(0).then_some(search.phi))
}

#[derive(Debug, PartialEq, Eq)]
struct Invariant {
    size: usize,
    is_loop: bool,
    self_paired: bool,
    /// Sorted row `p_{σ·}^{·}`, column `p_{·σ}^{·}` and target `p_{··}^σ` profiles.
    profiles: [Vec<u32>; 3],
}

fn invariant(c: &CoherentConfiguration, s: u32) -> Invariant {
    let r = c.rank() as u32;
    let mut profiles: [Vec<u32>; 3] = Default::default();
    for a in 0..r {
        for b in 0..r {
            profiles[0].push(c.p(s, a, b));
            profiles[1].push(c.p(a, s, b));
            profiles[2].push(c.p(a, b, s));
        }
    }
    for p in profiles.iter_mut() {
        p.sort_unstable();
    }
    Invariant {
        size: c.class_sizes()[s as usize],
        is_loop: c.is_loop_colour(s),
        self_paired: c.transpose_of(s) == s,
        profiles,
    }
}

struct Search<'a> {
    c1: &'a CoherentConfiguration,
    c2: &'a CoherentConfiguration,
    candidates: Vec<Vec<u32>>,
    order: Vec<u32>,
    phi: Vec<u32>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn consistent(&self, s: u32) -> bool {
        let (c1, c2) = (self.c1, self.c2);
        let t = self.phi[s as usize];
        let st = c1.transpose_of(s);
        let mapped_t = self.phi[st as usize];
        if mapped_t != u32::MAX && mapped_t != c2.transpose_of(t) {
            return false;
        }
        let assigned: Vec<u32> = (0..c1.rank() as u32)
            .filter(|&a| self.phi[a as usize] != u32::MAX)
            .collect();
        for &a in &assigned {
            for &b in &assigned {
                let (pa, pb) = (self.phi[a as usize], self.phi[b as usize]);
                // Only triples that involve the new colour need checking.
                if c1.p(s, a, b) != c2.p(t, pa, pb)
                    || c1.p(a, s, b) != c2.p(pa, t, pb)
                    || c1.p(a, b, s) != c2.p(pa, pb, t)
                {
                    return false;
                }
            }
        }
        true
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let s = self.order[depth];
        for i in 0..self.candidates[s as usize].len() {
            let t = self.candidates[s as usize][i];
            if self.used[t as usize] {
                continue;
            }
            self.phi[s as usize] = t;
            self.used[t as usize] = true;
            if self.consistent(s) && self.extend(depth + 1) {
                return true;
            }
            self.phi[s as usize] = u32::MAX;
            self.used[t as usize] = false;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::intersection_numbers;
    use crate::partition::Graph;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn self_isomorphism_is_found() {
        let c = intersection_numbers(&cycle(5)).unwrap();
        let phi = algebraic_isomorphism(&c, &c).unwrap().unwrap();
        // C_5's two non-loop colours are interchangeable; any answer must preserve sizes.
        let sizes = c.class_sizes();
        for (s, &t) in phi.iter().enumerate() {
            assert_eq!(sizes[s], sizes[t as usize]);
        }
    }

    #[test]
    fn different_colour_counts() {
        let c5 = intersection_numbers(&cycle(5)).unwrap();
        let k5 = intersection_numbers(&Graph::from_fn(5, |u, v| if u == v { "l" } else { "e" }).unwrap()).unwrap();
        assert_eq!(algebraic_isomorphism(&c5, &k5).unwrap(), None);
        assert!(algebraic_isomorphism_with(&c5, &c5, 2).is_err());
    }
}
