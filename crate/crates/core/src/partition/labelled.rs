use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use super::tuple::TupleSpace;
use crate::error::{Error, Result};

/// Outcome of comparing two labelled partitions of the same tuple space.
///
/// `FinerRight` means the right-hand partition refines the left-hand one
/// (`g ⪯ h`), i.e. every class of `h` lies inside a class of `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Comparison {
    Equivalent,
    FinerRight,
    FinerLeft,
    Incomparable,
}

impl Comparison {
    /// `g ⪯ h`: the right side is finer or equivalent.
    pub fn right_refines(self) -> bool {
        matches!(self, Comparison::Equivalent | Comparison::FinerRight)
    }

    /// `h ⪯ g`: the left side is finer or equivalent.
    pub fn left_refines(self) -> bool {
        matches!(self, Comparison::Equivalent | Comparison::FinerLeft)
    }

    pub fn flip(self) -> Self {
        match self {
            Comparison::FinerRight => Comparison::FinerLeft,
            Comparison::FinerLeft => Comparison::FinerRight,
            other => other,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Comparison::Equivalent => "Equivalent",
            Comparison::FinerRight => "FinerRight",
            Comparison::FinerLeft => "FinerLeft",
            Comparison::Incomparable => "Incomparable",
        }
    }
}

impl std::fmt::Display for Comparison {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A total colouring of `V^k`, stored densely in lexicographic tuple order.
///
/// Colour ids are always canonical: `0..class_count`, numbered by first
/// occurrence in lexicographic order. Two partitions with the same classes
/// therefore have identical colour vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabelledPartition {
    n: usize,
    arity: usize,
    colours: Vec<u32>,
    class_count: usize,
}

/// Relabel `labels` by first occurrence. Returns the new ids and the number of classes.
pub fn canonical_labels<L: Eq + Hash + Clone>(labels: impl IntoIterator<Item = L>) -> (Vec<u32>, usize) {
    let mut ids: HashMap<L, u32> = HashMap::new();
    let out = labels
        .into_iter()
        .map(|l| {
            let next = ids.len() as u32;
            *ids.entry(l).or_insert(next)
        })
        .collect();
    (out, ids.len())
}

/// Relabel dense ids in `0..bound` by first occurrence, without hashing.
fn canonical_dense(labels: &[u32], bound: usize) -> (Vec<u32>, usize) {
    let mut map = vec![u32::MAX; bound];
    let mut next = 0u32;
    let out = labels
        .iter()
        .map(|&l| {
            let slot = &mut map[l as usize];
            if *slot == u32::MAX {
                *slot = next;
                next += 1;
            }
            *slot
        })
        .collect();
    (out, next as usize)
}

impl LabelledPartition {
    /// Build from arbitrary labels listed in lexicographic tuple order.
    pub fn new(n: usize, arity: usize, labels: Vec<u32>) -> Result<Self> {
        Self::from_labels(n, arity, labels)
    }

    pub fn from_labels<L: Eq + Hash + Clone>(
        n: usize,
        arity: usize,
        labels: impl IntoIterator<Item = L>,
    ) -> Result<Self> {
        let space = TupleSpace::new(n, arity)?;
        let (colours, class_count) = canonical_labels(labels);
        if colours.len() != space.size() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} labels for n={n}, k={arity}, found {}",
                space.size(),
                colours.len()
            )));
        }
        Ok(LabelledPartition {
            n,
            arity,
            colours,
            class_count,
        })
    }

    /// Colour each tuple by `f`, which receives the tuple entries.
    pub fn from_fn<L: Eq + Hash + Clone>(
        n: usize,
        arity: usize,
        mut f: impl FnMut(&[usize]) -> L,
    ) -> Result<Self> {
        let space = TupleSpace::new(n, arity)?;
        let mut buf = vec![0; arity];
        let labels: Vec<L> = (0..space.size())
            .map(|idx| {
                space.decode_into(idx, &mut buf);
                f(&buf)
            })
            .collect();
        Self::from_labels(n, arity, labels)
    }

    /// Assemble from colours that are already canonical.
    pub(crate) fn from_canonical(n: usize, arity: usize, colours: Vec<u32>, class_count: usize) -> Self {
        debug_assert!(is_canonical(&colours, class_count));
        LabelledPartition {
            n,
            arity,
            colours,
            class_count,
        }
    }

    /// Assemble from dense ids in `0..bound`, relabelling them canonically.
    pub(crate) fn from_dense(n: usize, arity: usize, labels: &[u32], bound: usize) -> Self {
        let (colours, class_count) = canonical_dense(labels, bound);
        LabelledPartition {
            n,
            arity,
            colours,
            class_count,
        }
    }

    /// Every tuple in its own class.
    pub fn discrete(n: usize, arity: usize) -> Result<Self> {
        let space = TupleSpace::new(n, arity)?;
        let colours: Vec<u32> = (0..space.size() as u32).collect();
        Ok(Self::from_canonical(n, arity, colours, space.size()))
    }

    /// A single class.
    pub fn trivial(n: usize, arity: usize) -> Result<Self> {
        let space = TupleSpace::new(n, arity)?;
        let count = usize::from(space.size() > 0);
        Ok(Self::from_canonical(n, arity, vec![0; space.size()], count))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn colours(&self) -> &[u32] {
        &self.colours
    }

    pub fn space(&self) -> TupleSpace {
        TupleSpace::new(self.n, self.arity).expect("validated at construction")
    }

    /// Colour of the tuple with the given lexicographic index.
    #[inline]
    pub fn colour_at(&self, index: usize) -> u32 {
        self.colours[index]
    }

    pub fn colour_of(&self, tuple: &[usize]) -> Result<u32> {
        let space = self.space();
        space.check_tuple(tuple)?;
        Ok(self.colours[space.encode(tuple)])
    }

    /// Class sizes indexed by colour id.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.class_count];
        for &c in &self.colours {
            sizes[c as usize] += 1;
        }
        sizes
    }

    /// Tuple indices of each class, in lexicographic order within a class.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.class_count];
        for (idx, &c) in self.colours.iter().enumerate() {
            out[c as usize].push(idx);
        }
        out
    }

    /// First tuple index of each class.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.class_count];
        for (idx, &c) in self.colours.iter().enumerate() {
            if reps[c as usize] == usize::MAX {
                reps[c as usize] = idx;
            }
        }
        reps
    }

    /// Already canonical by construction; provided for API symmetry.
    pub fn canonicalize(&self) -> Self {
        self.clone()
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.arity != other.arity {
            return Err(Error::ShapeMismatch(format!(
                "(n={}, k={}) vs (n={}, k={})",
                self.n, self.arity, other.n, other.arity
            )));
        }
        Ok(())
    }

    /// Compare class structures; see [`Comparison`].
    pub fn compare(&self, other: &Self) -> Result<Comparison> {
        self.check_shape(other)?;
        let left_to_right = is_function(&self.colours, self.class_count, &other.colours);
        let right_to_left = is_function(&other.colours, other.class_count, &self.colours);
        Ok(match (left_to_right, right_to_left) {
            (true, true) => Comparison::Equivalent,
            (false, true) => Comparison::FinerRight,
            (true, false) => Comparison::FinerLeft,
            (false, false) => Comparison::Incomparable,
        })
    }

    /// The common refinement: tuples share a class iff they do in both inputs.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Self::from_labels(
            self.n,
            self.arity,
            self.colours.iter().zip(&other.colours).map(|(&a, &b)| (a, b)),
        )
    }

    /// `pr_r γ(v_1..v_r) = γ(v_1..v_r, v_r, ..., v_r)`, canonicalized.
    pub fn project(&self, r: usize) -> Result<Self> {
        if r == 0 || r > self.arity {
            return Err(Error::InvalidParameter(format!(
                "projection arity {r} outside 1..={}",
                self.arity
            )));
        }
        if r == self.arity {
            return Ok(self.clone());
        }
        let big = self.space();
        let small = TupleSpace::new(self.n, r)?;
        let tail_weight: usize = (r..self.arity).map(|p| big.weight(p)).sum();
        let labels: Vec<u32> = (0..small.size())
            .map(|idx| {
                let mut full = 0;
                for p in 0..r {
                    full += small.digit(idx, p) * big.weight(p);
                }
                full += small.digit(idx, r - 1) * tail_weight;
                self.colours[full]
            })
            .collect();
        Ok(Self::from_dense(self.n, r, &labels, self.class_count))
    }
}

fn is_canonical(colours: &[u32], class_count: usize) -> bool {
    let mut next = 0u32;
    for &c in colours {
        if c > next {
            return false;
        }
        if c == next {
            next += 1;
        }
    }
    next as usize == class_count
}

/// Whether `from[i] == from[j]` always implies `to[i] == to[j]`.
fn is_function(from: &[u32], from_count: usize, to: &[u32]) -> bool {
    let mut map = vec![u32::MAX; from_count];
    for (&a, &b) in from.iter().zip(to) {
        let slot = &mut map[a as usize];
        if *slot == u32::MAX {
            *slot = b;
        } else if *slot != b {
            return false;
        }
    }
    true
}

/// Free-function form of [`LabelledPartition::compare`].
pub fn compare(g: &LabelledPartition, h: &LabelledPartition) -> Result<Comparison> {
    g.compare(h)
}

/// Free-function form of [`LabelledPartition::project`].
pub fn project_partition(g: &LabelledPartition, r: usize) -> Result<LabelledPartition> {
    g.project(r)
}

/// Canonical relabelling; see [`LabelledPartition::canonicalize`].
pub fn canonicalize(g: &LabelledPartition) -> LabelledPartition {
    g.canonicalize()
}

/// View a partition of `V^{pk}` as a partition of `(V^k)^p`, i.e. an arity-`p`
/// partition whose vertices are the `n^k` encoded `k`-tuples.
///
/// Lexicographic order is preserved by the block encoding, so the colour
/// vector is unchanged.
pub fn reshape(g: &LabelledPartition, k: usize, p: usize) -> Result<LabelledPartition> {
    if k == 0 || p == 0 || k * p != g.arity() {
        return Err(Error::ShapeMismatch(format!(
            "cannot reshape arity {} into {p} blocks of {k}",
            g.arity()
        )));
    }
    let blocks = TupleSpace::new(g.n(), k)?.size();
    Ok(LabelledPartition::from_canonical(
        blocks,
        p,
        g.colours().to_vec(),
        g.class_count(),
    ))
}

/// Inverse of [`reshape`]: the vertices of `h` are `k`-tuples over `n` vertices.
pub fn flatten(h: &LabelledPartition, n: usize, k: usize) -> Result<LabelledPartition> {
    let blocks = TupleSpace::new(n, k)?.size();
    if blocks != h.n() {
        return Err(Error::ShapeMismatch(format!(
            "{} vertices are not the {k}-tuples over {n} points",
            h.n()
        )));
    }
    TupleSpace::new(n, k * h.arity())?;
    Ok(LabelledPartition::from_canonical(
        n,
        k * h.arity(),
        h.colours().to_vec(),
        h.class_count(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_relabelling() {
        let g = LabelledPartition::new(3, 1, vec![7, 7, 3]).unwrap();
        assert_eq!(g.colours(), &[0, 0, 1]);
        assert_eq!(g.class_count(), 2);
        assert_eq!(canonicalize(&g), g);
    }

    #[test]
    fn compare_examples() {
        let evens = LabelledPartition::new(4, 1, vec![0, 1, 0, 1]).unwrap();
        let halves = LabelledPartition::new(4, 1, vec![0, 0, 1, 1]).unwrap();
        assert_eq!(evens.compare(&halves).unwrap(), Comparison::Incomparable);
        let discrete = LabelledPartition::discrete(4, 1).unwrap();
        assert_eq!(evens.compare(&discrete).unwrap(), Comparison::FinerRight);
        assert_eq!(discrete.compare(&evens).unwrap(), Comparison::FinerLeft);
        assert_eq!(evens.compare(&evens).unwrap(), Comparison::Equivalent);
        let other = LabelledPartition::discrete(4, 2).unwrap();
        assert!(matches!(evens.compare(&other), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn projection_of_discrete() {
        let d = LabelledPartition::discrete(3, 2).unwrap();
        let p = d.project(1).unwrap();
        assert_eq!(p.compare(&LabelledPartition::discrete(3, 1).unwrap()).unwrap(), Comparison::Equivalent);
        assert_eq!(d.project(2).unwrap(), d);
        assert!(d.project(3).is_err());
        assert!(d.project(0).is_err());
    }

    #[test]
    fn reshape_examples() {
        let g = LabelledPartition::from_fn(2, 4, |t| t.iter().map(|&x| x as u32 * 3).sum::<u32>() + t[0] as u32).unwrap();
        let h = reshape(&g, 2, 2).unwrap();
        assert_eq!(h.n(), 4);
        // (0,1,1,0) becomes the pair ((0,1),(1,0)); (0,1) encodes to 1 and (1,0) to 2.
        assert_eq!(h.colour_of(&[1, 2]).unwrap(), g.colour_of(&[0, 1, 1, 0]).unwrap());
        assert_eq!(flatten(&h, 2, 2).unwrap(), g);
        let g2 = LabelledPartition::discrete(3, 2).unwrap();
        assert_eq!(reshape(&g2, 1, 2).unwrap(), g2);
        assert!(reshape(&g, 3, 2).is_err());
    }

    fn arb_partition() -> impl Strategy<Value = LabelledPartition> {
        (1usize..4, 1usize..4, 1u32..6).prop_flat_map(|(n, k, c)| {
            let size = n.pow(k as u32);
            proptest::collection::vec(0..c, size)
                .prop_map(move |labels| LabelledPartition::new(n, k, labels).unwrap())
        })
    }

    fn same_shape_triple() -> impl Strategy<Value = (LabelledPartition, LabelledPartition, LabelledPartition)> {
        (1usize..4, 1usize..3, 1u32..4).prop_flat_map(|(n, k, c)| {
            let size = n.pow(k as u32);
            let one = move || {
                proptest::collection::vec(0..c, size)
                    .prop_map(move |l| LabelledPartition::new(n, k, l).unwrap())
            };
            (one(), one(), one())
        })
    }

    proptest! {
        #[test]
        fn canonical_form_ignores_label_values(g in arb_partition(), shift in 1u32..1000) {
            let relabelled: Vec<u32> = g.colours().iter().map(|&c| (c * 7919 + shift) % 100_003).collect();
            let h = LabelledPartition::new(g.n(), g.arity(), relabelled).unwrap();
            prop_assert_eq!(&h, &g);
            prop_assert_eq!(g.compare(&h).unwrap(), Comparison::Equivalent);
        }

        #[test]
        fn compare_is_a_preorder((a, b, c) in same_shape_triple()) {
            prop_assert_eq!(a.compare(&a).unwrap(), Comparison::Equivalent);
            let ab = a.compare(&b).unwrap();
            prop_assert_eq!(b.compare(&a).unwrap(), ab.flip());
            if ab == Comparison::Equivalent {
                prop_assert_eq!(&a, &b);
            }
            if ab.right_refines() && b.compare(&c).unwrap().right_refines() {
                prop_assert!(a.compare(&c).unwrap().right_refines());
            }
            let m = a.meet(&b).unwrap();
            prop_assert!(a.compare(&m).unwrap().right_refines());
            prop_assert!(b.compare(&m).unwrap().right_refines());
        }
    }
}
