//! Vertex tuples, index vectors and the mixed-radix encoding of `V^k`.

use crate::error::{Error, Result};

/// A tuple of vertices. Vertices are plain indices into `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tuple(Vec<usize>);

impl Tuple {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::ZeroArity);
        }
        Ok(Tuple(entries))
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// Entry at a 1-based position.
    pub fn entry(&self, position: usize) -> Result<usize> {
        if position == 0 || position > self.0.len() {
            return Err(Error::IndexOutOfRange {
                position,
                arity: self.0.len(),
            });
        }
        Ok(self.0[position - 1])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl From<Tuple> for Vec<usize> {
    fn from(t: Tuple) -> Self {
        t.0
    }
}

/// A sequence of 1-based positions into a tuple of arity `k`.
///
/// With `distinct` set the vector is an element of `[k]^(r)`, otherwise of `[k]^r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexVector {
    positions: Vec<usize>,
    distinct: bool,
}

impl IndexVector {
    pub fn new(positions: Vec<usize>, arity: usize, distinct: bool) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::ZeroArity);
        }
        for &p in &positions {
            if p == 0 || p > arity {
                return Err(Error::IndexOutOfRange { position: p, arity });
            }
        }
        if distinct {
            for (a, &p) in positions.iter().enumerate() {
                if positions[..a].contains(&p) {
                    return Err(Error::RepeatedIndex(p));
                }
            }
        }
        Ok(IndexVector {
            positions,
            distinct,
        })
    }

    /// Shorthand for a repetition-free index vector.
    pub fn distinct(positions: Vec<usize>, arity: usize) -> Result<Self> {
        Self::new(positions, arity, true)
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn is_distinct(&self) -> bool {
        self.distinct
    }
}

/// `v<i, u>`: position `i_s` receives `u_s`, every other position keeps its entry.
pub fn substitute(v: &Tuple, idx: &IndexVector, u: &Tuple) -> Result<Tuple> {
    if !idx.is_distinct() {
        // Re-validate: a non-distinct vector may still happen to be repetition-free.
        IndexVector::distinct(idx.positions().to_vec(), v.arity())?;
    }
    if idx.len() != u.arity() {
        return Err(Error::ArityMismatch {
            expected: idx.len(),
            found: u.arity(),
        });
    }
    if idx.len() > v.arity() {
        return Err(Error::ArityMismatch {
            expected: v.arity(),
            found: idx.len(),
        });
    }
    let mut out = v.0.clone();
    for (s, &p) in idx.positions().iter().enumerate() {
        if p > out.len() {
            return Err(Error::IndexOutOfRange {
                position: p,
                arity: out.len(),
            });
        }
        out[p - 1] = u.0[s];
    }
    Ok(Tuple(out))
}

/// `pr_i v`: entry `j` of the result is `v_{i_j}`. Repeated positions are allowed.
pub fn project(v: &Tuple, idx: &IndexVector) -> Result<Tuple> {
    idx.positions()
        .iter()
        .map(|&p| v.entry(p))
        .collect::<Result<Vec<_>>>()
        .map(Tuple)
}

pub fn concat(v: &Tuple, w: &Tuple) -> Tuple {
    let mut out = Vec::with_capacity(v.arity() + w.arity());
    out.extend_from_slice(&v.0);
    out.extend_from_slice(&w.0);
    Tuple(out)
}

/// All elements of `[k]^(r)` (0-based positions) in lexicographic order.
pub fn injective_index_vectors(k: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(r);
    fn rec(k: usize, r: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == r {
            out.push(current.clone());
            return;
        }
        for p in 0..k {
            if !current.contains(&p) {
                current.push(p);
                rec(k, r, current, out);
                current.pop();
            }
        }
    }
    if r <= k {
        rec(k, r, &mut current, &mut out);
    }
    out
}

/// All elements of `[k]^r` (0-based positions) in lexicographic order.
pub fn all_index_vectors(k: usize, r: usize) -> Vec<Vec<usize>> {
    let total = k.pow(r as u32);
    (0..total)
        .map(|mut c| {
            let mut v = vec![0; r];
            for slot in v.iter_mut().rev() {
                *slot = c % k;
                c /= k;
            }
            v
        })
        .collect()
}

/// Mixed-radix encoding of `V^k` with the first entry most significant, so that
/// increasing indices enumerate tuples in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleSpace {
    n: usize,
    arity: usize,
    weights: Vec<usize>,
    size: usize,
}

/// Default bound on `n^k` for dense storage.
pub const DEFAULT_MAX_TUPLES: usize = 1 << 24;

impl TupleSpace {
    pub fn new(n: usize, arity: usize) -> Result<Self> {
        Self::with_cap(n, arity, usize::MAX)
    }

    pub fn with_cap(n: usize, arity: usize, cap: usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::ZeroArity);
        }
        let size = (n as u128).checked_pow(arity as u32).unwrap_or(u128::MAX);
        if size > cap as u128 || size > usize::MAX as u128 {
            return Err(Error::CapExceeded {
                what: "tuple space n^k",
                requested: size,
                cap: cap as u128,
            });
        }
        let mut weights = vec![1; arity];
        for i in (0..arity.saturating_sub(1)).rev() {
            weights[i] = weights[i + 1] * n;
        }
        Ok(TupleSpace {
            n,
            arity,
            weights,
            size: size as usize,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Weight of a 0-based position.
    #[inline]
    pub fn weight(&self, position: usize) -> usize {
        self.weights[position]
    }

    #[inline]
    pub fn digit(&self, index: usize, position: usize) -> usize {
        (index / self.weights[position]) % self.n
    }

    #[inline]
    pub fn replace(&self, index: usize, position: usize, vertex: usize) -> usize {
        let w = self.weights[position];
        index - self.digit(index, position) * w + vertex * w
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.arity);
        tuple
            .iter()
            .zip(&self.weights)
            .map(|(&v, &w)| v * w)
            .sum()
    }

    pub fn decode(&self, index: usize) -> Vec<usize> {
        let mut out = vec![0; self.arity];
        self.decode_into(index, &mut out);
        out
    }

    pub fn decode_into(&self, mut index: usize, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = index % self.n;
            index /= self.n;
        }
    }

    pub fn check_tuple(&self, tuple: &[usize]) -> Result<()> {
        if tuple.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: tuple.len(),
            });
        }
        if let Some(&v) = tuple.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }
}
