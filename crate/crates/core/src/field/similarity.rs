//! Simultaneous similarity of matrix tuples.
//!
//! The decision computes the intertwiner space `H = {T : T X_i = Y_i T}` and
//! looks for an invertible element. Non-similarity is certified by one of:
//! an empty `H`, mismatched rank or trace of a generator, mismatched
//! intertwiner dimensions, a word-algebra basis element with differing rank
//! or trace, or an exhaustive scan of `H`. Over the rationals, when both
//! tuples are closed under transposition with a common pairing, the generated
//! algebras are semisimple and equal traces on the joint word algebra already
//! decide similarity.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::matrix::{nullspace_from_rref, EchelonBasis};
use super::{Field, Matrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimilarityConfig {
    pub seed: u64,
    /// Random elements of `H` tried before falling back to certificates.
    pub random_tries: usize,
    /// Largest number of candidates scanned exhaustively.
    pub exhaustive_cap: u64,
}

impl Default for SimilarityConfig {
    fn default() -> Self {
        SimilarityConfig {
            seed: 0x5eed,
            random_tries: 24,
            exhaustive_cap: 1 << 20,
        }
    }
}

fn check_tuples<F: Field>(xs: &[Matrix<F>], ys: &[Matrix<F>]) -> Result<usize> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch(format!(
            "tuples of length {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    let n = xs.first().or(ys.first()).map_or(0, Matrix::rows);
    for m in xs.iter().chain(ys) {
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "expected {n}x{n}, found {}x{}",
                m.rows(),
                m.cols()
            )));
        }
    }
    Ok(n)
}

/// A basis of `{T : T·x_i = y_i·T for all i}`.
pub fn intertwiner_space<F: Field>(xs: &[Matrix<F>], ys: &[Matrix<F>]) -> Result<Vec<Matrix<F>>> {
    let n = check_tuples(xs, ys)?;
    let field = match xs.first() {
        Some(m) => m.field().clone(),
        None => return Ok(Vec::new()),
    };
    Ok(intertwiners(&field, n, xs, ys))
}

fn intertwiners<F: Field>(f: &F, n: usize, xs: &[Matrix<F>], ys: &[Matrix<F>]) -> Vec<Matrix<F>> {
    let dim = n * n;
    let mut eqs = EchelonBasis::new(f, dim);
    'outer: for (x, y) in xs.iter().zip(ys) {
        if x.is_zero() && y.is_zero() {
            continue;
        }
        // Row (a, c): Σ_b t_ab x_bc − Σ_b y_ab t_bc = 0.
        for a in 0..n {
            for c in 0..n {
                let mut row = vec![f.zero(); dim];
                for b in 0..n {
                    let xb = x.get(b, c);
                    if !f.is_zero(xb) {
                        row[a * n + b] = f.add(&row[a * n + b], xb);
                    }
                    let yb = y.get(a, b);
                    if !f.is_zero(yb) {
                        row[b * n + c] = f.sub(&row[b * n + c], yb);
                    }
                }
                if row.iter().any(|v| !f.is_zero(v)) {
                    eqs.insert(row);
                    if eqs.is_full() {
                        break 'outer;
                    }
                }
            }
        }
    }
    let (rows, pivots) = eqs.into_parts();
    nullspace_from_rref(f, &rows, &pivots, dim)
        .into_iter()
        .map(|v| Matrix::from_vec(f, n, n, v).expect("n*n entries"))
        .collect()
}

enum Verdict<F: Field> {
    Similar(Option<Matrix<F>>),
    NotSimilar,
}

/// Returns an invertible `S` with `S·x_i·S^{-1} = y_i` for all `i`, or `None`.
///
/// The answer is exact. When neither a witness nor a certificate of
/// non-similarity is found within the configured caps, the call fails with
/// [`Error::SimilarityUndecided`].
pub fn simultaneously_similar<F: Field>(
    xs: &[Matrix<F>],
    ys: &[Matrix<F>],
    cfg: &SimilarityConfig,
) -> Result<Option<Matrix<F>>> {
    match decide(xs, ys, cfg, true)? {
        Verdict::Similar(w) => Ok(Some(w.expect("witness requested"))),
        Verdict::NotSimilar => Ok(None),
    }
}

/// Like [`simultaneously_similar`] but may skip constructing a witness.
pub fn decide_similar<F: Field>(xs: &[Matrix<F>], ys: &[Matrix<F>], cfg: &SimilarityConfig) -> Result<bool> {
    Ok(matches!(decide(xs, ys, cfg, false)?, Verdict::Similar(_)))
}

fn decide<F: Field>(xs: &[Matrix<F>], ys: &[Matrix<F>], cfg: &SimilarityConfig, witness: bool) -> Result<Verdict<F>> {
    let n = check_tuples(xs, ys)?;
    let Some(first) = xs.first() else {
        return Err(Error::DimensionMismatch("empty matrix tuple".into()));
    };
    let f = first.field().clone();
    if xs == ys {
        return Ok(Verdict::Similar(Some(Matrix::identity(&f, n))));
    }
    for (x, y) in xs.iter().zip(ys) {
        if x.is_zero() != y.is_zero() || x.trace() != y.trace() || x.rank() != y.rank() {
            return Ok(Verdict::NotSimilar);
        }
    }

    let semisimple_case = f.characteristic() == 0 && transpose_closed(xs, ys);
    let mut words_checked = false;
    if semisimple_case {
        if !word_algebra_agrees(&f, n, xs, ys) {
            return Ok(Verdict::NotSimilar);
        }
        if !witness {
            return Ok(Verdict::Similar(None));
        }
        words_checked = true;
    }

    let h = intertwiners(&f, n, xs, ys);
    if h.is_empty() {
        return Ok(Verdict::NotSimilar);
    }
    if let Some(s) = h.iter().find(|t| t.is_invertible()) {
        return Ok(Verdict::Similar(Some(s.clone())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let bound = (10 * n as u64).max(100);
    if let Some(s) = random_search(&f, n, &h, &mut rng, bound, cfg.random_tries) {
        return Ok(Verdict::Similar(Some(s)));
    }

    if semisimple_case {
        // Similarity is certain; keep sampling with growing bounds.
        let mut bound = bound;
        for _ in 0..16 {
            bound = bound.saturating_mul(16);
            if let Some(s) = random_search(&f, n, &h, &mut rng, bound, cfg.random_tries.max(8)) {
                return Ok(Verdict::Similar(Some(s)));
            }
        }
        return Err(Error::SimilarityUndecided {
            dimension: h.len(),
            field: f.spec().to_string(),
        });
    }

    let d = h.len();
    let dims = [
        intertwiners(&f, n, xs, xs).len(),
        intertwiners(&f, n, ys, ys).len(),
        intertwiners(&f, n, ys, xs).len(),
    ];
    if dims.iter().any(|&e| e != d) {
        return Ok(Verdict::NotSimilar);
    }
    if !words_checked && !word_algebra_agrees(&f, n, xs, ys) {
        return Ok(Verdict::NotSimilar);
    }
    match exhaustive_search(&f, n, &h, cfg.exhaustive_cap) {
        Some(Some(s)) => Ok(Verdict::Similar(Some(s))),
        Some(None) => Ok(Verdict::NotSimilar),
        None => Err(Error::SimilarityUndecided {
            dimension: d,
            field: f.spec().to_string(),
        }),
    }
}

/// Every `(x_i^T, y_i^T)` occurs as some `(x_j, y_j)`.
fn transpose_closed<F: Field>(xs: &[Matrix<F>], ys: &[Matrix<F>]) -> bool {
    xs.iter().zip(ys).all(|(x, y)| {
        let (xt, yt) = (x.transpose(), y.transpose());
        xs.iter().zip(ys).any(|(a, b)| *a == xt && *b == yt)
    })
}

/// Spans `{(w(X), w(Y))}` over words `w` and compares rank and trace of each basis element.
fn word_algebra_agrees<F: Field>(f: &F, n: usize, xs: &[Matrix<F>], ys: &[Matrix<F>]) -> bool {
    let gens: Vec<(&Matrix<F>, &Matrix<F>)> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| !(x.is_zero() && y.is_zero()))
        .collect();
    let flat = |a: &Matrix<F>, b: &Matrix<F>| {
        let mut v = a.entries().to_vec();
        v.extend_from_slice(b.entries());
        v
    };
    let mut span = EchelonBasis::new(f, 2 * n * n);
    let id = Matrix::identity(f, n);
    span.insert(flat(&id, &id));
    let mut queue = vec![(id.clone(), id)];
    let mut head = 0;
    while head < queue.len() {
        let (a, b) = queue[head].clone();
        head += 1;
        for (x, y) in &gens {
            let (ax, by) = (a.mul(x).expect("square"), b.mul(y).expect("square"));
            if span.insert(flat(&ax, &by)) {
                if ax.trace() != by.trace() || ax.rank() != by.rank() {
                    return false;
                }
                queue.push((ax, by));
            }
        }
    }
    true
}

fn random_search<F: Field>(
    f: &F,
    n: usize,
    h: &[Matrix<F>],
    rng: &mut ChaCha8Rng,
    bound: u64,
    tries: usize,
) -> Option<Matrix<F>> {
    for _ in 0..tries {
        let coeffs: Vec<F::Elem> = h.iter().map(|_| f.random(rng, bound)).collect();
        let terms: Vec<(F::Elem, &Matrix<F>)> = coeffs.into_iter().zip(h).collect();
        let t = Matrix::linear_combination(f, n, n, &terms);
        if t.is_invertible() {
            return Some(t);
        }
    }
    None
}

/// Scans `H` exhaustively if small enough. `None` means the scan was too large.
///
/// Over GF(p) the scan covers one representative per line of `H`. Over the
/// rationals it covers the grid `{0..n}^d`: `det(Σ c_j B_j)` has degree at
/// most `n` in each `c_j`, so a nonzero determinant polynomial cannot vanish
/// on the whole grid.
fn exhaustive_search<F: Field>(f: &F, n: usize, h: &[Matrix<F>], cap: u64) -> Option<Option<Matrix<F>>> {
    let d = h.len() as u32;
    let (base, projective) = match f.characteristic() {
        0 => (n as u64 + 1, false),
        p => (p, true),
    };
    let total = (base as u128).checked_pow(d).unwrap_or(u128::MAX);
    if total > cap as u128 {
        return None;
    }
    let mut digits = vec![0u64; d as usize];
    for _ in 0..total {
        // Increment the mixed-radix counter.
        for slot in digits.iter_mut().rev() {
            *slot += 1;
            if *slot < base {
                break;
            }
            *slot = 0;
        }
        if projective && digits.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let terms: Vec<(F::Elem, &Matrix<F>)> = digits.iter().map(|&c| f.nth(c)).zip(h).collect();
        let t = Matrix::linear_combination(f, n, n, &terms);
        if t.is_invertible() {
            return Some(Some(t));
        }
    }
    Some(None)
}
