use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::partition::{Graph, LabelledPartition, TupleSpace};

/// Largest `n` accepted by [`sch_oracle`].
pub const SCH_DEFAULT_MAX_N: usize = 8;

/// Limits for the backtracking search.
#[derive(Debug, Clone, Copy)]
pub struct IsoBudget {
    pub max_nodes: usize,
    pub max_results: usize,
}

impl Default for IsoBudget {
    fn default() -> Self {
        IsoBudget {
            max_nodes: 1 << 24,
            max_results: 1 << 20,
        }
    }
}

/// Arc-colour matrices of two graphs over a shared name alphabet.
struct Search {
    n: usize,
    g: Vec<u32>,
    h: Vec<u32>,
    nodes: usize,
    budget: IsoBudget,
}

enum Flow {
    Continue,
    Stop,
}

impl Search {
    fn new(g: &Graph, h: &Graph, budget: IsoBudget) -> Self {
        let n = g.n();
        let mut ids: HashMap<String, u32> = HashMap::new();
        let mut matrix = |x: &Graph| -> Vec<u32> {
            (0..n * n)
                .map(|i| {
                    let next = ids.len() as u32;
                    *ids.entry(x.colour_name(i / n, i % n).to_string()).or_insert(next)
                })
                .collect()
        };
        let g_mat = matrix(g);
        let h_mat = matrix(h);
        Search { n, g: g_mat, h: h_mat, nodes: 0, budget }
    }

    /// Joint colour refinement of the vertex colourings of both graphs.
    /// Returns false when the colour histograms diverge.
    fn refine(&self, cg: &mut Vec<u32>, ch: &mut Vec<u32>) -> bool {
        let n = self.n;
        let mut classes = usize::MAX;
        loop {
            let signature = |m: &[u32], c: &[u32], v: usize| {
                let mut around: Vec<(u32, u32, u32)> =
                    (0..n).map(|w| (m[v * n + w], m[w * n + v], c[w])).collect();
                around.sort_unstable();
                (c[v], m[v * n + v], around)
            };
            let sg: Vec<_> = (0..n).map(|v| signature(&self.g, cg, v)).collect();
            let sh: Vec<_> = (0..n).map(|v| signature(&self.h, ch, v)).collect();
            let mut all: Vec<_> = sg.iter().chain(&sh).collect();
            all.sort();
            all.dedup();
            let rank = |s: &_| all.binary_search(&s).expect("present") as u32;
            *cg = sg.iter().map(rank).collect();
            *ch = sh.iter().map(rank).collect();
            let mut hist_g = cg.clone();
            let mut hist_h = ch.clone();
            hist_g.sort_unstable();
            hist_h.sort_unstable();
            if hist_g != hist_h {
                return false;
            }
            if all.len() == classes {
                return true;
            }
            classes = all.len();
        }
    }

    fn visit(
        &mut self,
        mut cg: Vec<u32>,
        mut ch: Vec<u32>,
        on_leaf: &mut dyn FnMut(&[usize]) -> Flow,
    ) -> Result<Flow> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(Error::BudgetExceeded);
        }
        if !self.refine(&mut cg, &mut ch) {
            return Ok(Flow::Continue);
        }
        let n = self.n;
        let mut sizes: HashMap<u32, usize> = HashMap::new();
        for &c in &cg {
            *sizes.entry(c).or_default() += 1;
        }
        let target = sizes
            .iter()
            .filter(|&(_, &s)| s > 1)
            .min_by_key(|&(&c, &s)| (s, c))
            .map(|(&c, _)| c);
        let Some(target) = target else {
            let mut by_colour = vec![0; n];
            for (w, &c) in ch.iter().enumerate() {
                by_colour[c as usize] = w;
            }
            let map: Vec<usize> = cg.iter().map(|&c| by_colour[c as usize]).collect();
            let ok = (0..n * n).all(|i| self.g[i] == self.h[map[i / n] * n + map[i % n]]);
            return Ok(if ok { on_leaf(&map) } else { Flow::Continue });
        };
        let v = cg.iter().position(|&c| c == target).expect("non-empty cell");
        let fresh = u32::MAX;
        for w in (0..n).filter(|&w| ch[w] == target) {
            let mut ng = cg.clone();
            let mut nh = ch.clone();
            ng[v] = fresh;
            nh[w] = fresh;
            if let Flow::Stop = self.visit(ng, nh, on_leaf)? {
                return Ok(Flow::Stop);
            }
        }
        Ok(Flow::Continue)
    }

    fn run(&mut self, on_leaf: &mut dyn FnMut(&[usize]) -> Flow) -> Result<()> {
        let n = self.n;
        self.visit(vec![0; n], vec![0; n], on_leaf).map(|_| ())
    }
}

/// A colour-name-preserving bijection `φ` with `h(φu, φv) = g(u, v)`, found
/// by individualization and joint colour refinement.
pub fn find_isomorphism(g: &Graph, h: &Graph, budget: IsoBudget) -> Result<Option<Vec<usize>>> {
    if g.n() != h.n() {
        return Ok(None);
    }
    let mut found = None;
    Search::new(g, h, budget).run(&mut |map| {
        found = Some(map.to_vec());
        Flow::Stop
    })?;
    Ok(found)
}

pub fn are_isomorphic(g: &Graph, h: &Graph, budget: IsoBudget) -> Result<bool> {
    find_isomorphism(g, h, budget).map(|m| m.is_some())
}

/// Every colour-preserving permutation of `V(g)`.
pub fn automorphisms(g: &Graph, budget: IsoBudget) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut overflow = false;
    Search::new(g, g, budget).run(&mut |map| {
        if out.len() == budget.max_results {
            overflow = true;
            return Flow::Stop;
        }
        out.push(map.to_vec());
        Flow::Continue
    })?;
    if overflow {
        return Err(Error::CapExceeded {
            what: "automorphisms",
            requested: budget.max_results as u128 + 1,
            cap: budget.max_results as u128,
        });
    }
    out.sort();
    Ok(out)
}

/// Orbits of `Aut(g)` on `V^k`.
pub fn sch_oracle(g: &Graph, k: usize) -> Result<LabelledPartition> {
    sch_oracle_with(g, k, SCH_DEFAULT_MAX_N)
}

pub fn sch_oracle_with(g: &Graph, k: usize, max_n: usize) -> Result<LabelledPartition> {
    let n = g.n();
    if n > max_n {
        return Err(Error::CapExceeded {
            what: "orbit oracle vertices",
            requested: n as u128,
            cap: max_n as u128,
        });
    }
    let space = TupleSpace::new(n, k)?;
    let group = automorphisms(g, IsoBudget::default())?;
    let mut parent: Vec<usize> = (0..space.size()).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut tuple = vec![0; k];
    let mut image = vec![0; k];
    for perm in &group {
        for idx in 0..space.size() {
            space.decode_into(idx, &mut tuple);
            for (i, &u) in tuple.iter().enumerate() {
                image[i] = perm[u];
            }
            let (a, b) = (root(&mut parent, idx), root(&mut parent, space.encode(&image)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let labels: Vec<usize> = (0..space.size()).map(|i| root(&mut parent, i)).collect();
    LabelledPartition::from_labels(n, k, labels)
}
