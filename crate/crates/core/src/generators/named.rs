use itertools::Itertools;

use crate::error::{Error, Result};
use crate::partition::Graph;

pub fn path(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs at least 3 vertices, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (0..n).tuple_combinations().collect();
    Graph::from_edges(n, &edges)
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    let edges: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
    Graph::from_edges(a + b, &edges)
}

/// The `rows × cols` grid.
pub fn grid(rows: usize, cols: usize) -> Result<Graph> {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::from_edges(rows * cols, &edges)
}

/// The Kneser graph on 2-subsets of a 5-set.
pub fn petersen() -> Result<Graph> {
    let pairs: Vec<(usize, usize)> = (0..5).tuple_combinations().collect();
    let edges: Vec<_> = (0..pairs.len())
        .tuple_combinations()
        .filter(|&(i, j)| {
            let ((a, b), (c, d)) = (pairs[i], pairs[j]);
            a != c && a != d && b != c && b != d
        })
        .collect();
    Graph::from_edges(10, &edges)
}

fn cayley_z4_squared(connection: &[(usize, usize)]) -> Result<Graph> {
    let id = |a: usize, b: usize| 4 * (a % 4) + b % 4;
    let mut edges = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for &(da, db) in connection {
                let (u, v) = (id(a, b), id(a + da, b + db));
                if u < v {
                    edges.push((u, v));
                }
            }
        }
    }
    Graph::from_edges(16, &edges)
}

/// Cayley graph on `Z_4 × Z_4` with connection set `±(1,0), ±(0,1), ±(1,1)`.
pub fn shrikhande() -> Result<Graph> {
    cayley_z4_squared(&[(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)])
}

/// The 4×4 rook's graph `K_4 □ K_4`.
pub fn rook44() -> Result<Graph> {
    let edges: Vec<_> = (0..16)
        .tuple_combinations()
        .filter(|&(u, v): &(usize, usize)| (u / 4 == v / 4) != (u % 4 == v % 4))
        .collect();
    Graph::from_edges(16, &edges)
}

/// All 11 simple graphs on 4 vertices up to isomorphism, ordered by edge
/// count and then by their least adjacency code.
pub fn all_n4() -> Result<Vec<Graph>> {
    let pairs: Vec<(usize, usize)> = (0..4).tuple_combinations().collect();
    let perms = permutations(4);
    let code = |mask: u32, perm: &[usize]| -> u32 {
        pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &(a, b))| {
                let (x, y) = (perm[a].min(perm[b]), perm[a].max(perm[b]));
                1u32 << pairs.iter().position(|&p| p == (x, y)).expect("pair")
            })
            .sum()
    };
    let mut reps: Vec<(u32, u32)> = (0..64u32)
        .map(|mask| {
            let min = perms.iter().map(|p| code(mask, p)).min().expect("perms");
            (mask.count_ones(), min)
        })
        .collect();
    reps.sort_unstable();
    reps.dedup();
    reps.into_iter()
        .map(|(_, mask)| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(4, &edges)
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    (0..n).permutations(n).collect()
}

fn param(params: &[usize], i: usize, name: &str) -> Result<usize> {
    params
        .get(i)
        .copied()
        .ok_or_else(|| Error::InvalidParameter(format!("{name} needs parameter #{}", i + 1)))
}

/// Look up a named construction.
///
/// `path n`, `cycle n`, `complete n`, `complete_bipartite a b`, `grid r c`,
/// `petersen`, `shrikhande`, `rook44`, and `all_n4 i` for `i < 11`.
pub fn named(name: &str, params: &[usize]) -> Result<Graph> {
    match name {
        "path" => path(param(params, 0, name)?),
        "cycle" => cycle(param(params, 0, name)?),
        "complete" => complete(param(params, 0, name)?),
        "complete_bipartite" => complete_bipartite(param(params, 0, name)?, param(params, 1, name)?),
        "grid" => grid(param(params, 0, name)?, param(params, 1, name)?),
        "petersen" => petersen(),
        "shrikhande" => shrikhande(),
        "rook44" => rook44(),
        "all_n4" => {
            let i = param(params, 0, name)?;
            all_n4()?
                .into_iter()
                .nth(i)
                .ok_or_else(|| Error::InvalidParameter(format!("all_n4 has 11 graphs, index {i}")))
        }
        other => Err(Error::InvalidParameter(format!("unknown graph family {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(g: &Graph) -> Vec<usize> {
        (0..g.n()).map(|u| (0..g.n()).filter(|&v| g.adjacent(u, v)).count()).collect()
    }

    fn colour_counts(g: &Graph) -> Vec<(String, usize)> {
        let mut out: Vec<(String, usize)> = g
            .names()
            .iter()
            .zip(g.partition().class_sizes())
            .map(|(n, s)| (n.clone(), s))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn cycle_counts() {
        let c5 = cycle(5).unwrap();
        assert_eq!(
            colour_counts(&c5),
            vec![("edge".into(), 10), ("loop".into(), 5), ("nonedge".into(), 10)]
        );
        assert_eq!(complete(3).unwrap().class_count(), 2);
    }

    #[test]
    fn strongly_regular_pair() {
        for g in [shrikhande().unwrap(), rook44().unwrap()] {
            assert!(degrees(&g).iter().all(|&d| d == 6));
            for u in 0..16 {
                for v in 0..16 {
                    if u == v {
                        continue;
                    }
                    let common = (0..16).filter(|&w| g.adjacent(u, w) && g.adjacent(w, v)).count();
                    assert_eq!(common, 2, "λ = μ = 2");
                }
            }
        }
    }

    #[test]
    fn four_vertex_graphs() {
        let all = all_n4().unwrap();
        assert_eq!(all.len(), 11);
        let edge_counts: Vec<usize> = all.iter().map(|g| degrees(g).iter().sum::<usize>() / 2).collect();
        assert_eq!(edge_counts, vec![0, 1, 2, 2, 3, 3, 3, 4, 4, 5, 6]);
    }

    #[test]
    fn named_lookup() {
        assert_eq!(named("petersen", &[]).unwrap().n(), 10);
        assert_eq!(named("grid", &[2, 3]).unwrap().n(), 6);
        assert_eq!(named("complete_bipartite", &[2, 3]).unwrap().n(), 5);
        assert!(named("cycle", &[]).is_err());
        assert!(named("nope", &[]).is_err());
        assert!(named("all_n4", &[11]).is_err());
        assert!(degrees(&petersen().unwrap()).iter().all(|&d| d == 3));
    }
}
