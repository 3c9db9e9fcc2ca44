//! The invertible-map operators `IM_k`, `IMt_k` and `IM_{k,r}`.
//!
//! For each tuple and slot the χ-matrices are encoded as one colour matrix
//! whose `(x, y)` entry names the selector that `(x, y)` satisfies. Tuples of
//! χ-matrices whose colour matrices are permutation-similar are similar, so
//! tuples are first keyed by the canonical form of their colour matrix; keys
//! within an old class are then merged by exact similarity tests against one
//! representative per group.

use std::collections::HashMap;

use rayon::prelude::*;

use super::canon::canonical_form;
use super::wl::{intern_signatures, Substitutions};
use super::EngineConfig;
use crate::error::Result;
use crate::field::{decide_similar, Field, FieldSpec, Matrix};
use crate::partition::{LabelledPartition, TupleSpace};
use crate::with_field;

/// Key matrices interned to dense ids.
struct Keys {
    dim: usize,
    mats: Vec<Vec<u32>>,
    ids: HashMap<Vec<u32>, u32>,
}

impl Keys {
    fn new(dim: usize) -> Self {
        Keys {
            dim,
            mats: Vec::new(),
            ids: HashMap::new(),
        }
    }

    fn intern(&mut self, key: Vec<u32>) -> u32 {
        if let Some(&id) = self.ids.get(&key) {
            return id;
        }
        let id = self.mats.len() as u32;
        // Drop the tag that separates canonical forms from raw fallbacks.
        self.mats.push(key[1..].to_vec());
        self.ids.insert(key, id);
        id
    }
}

fn key_of(mat: Vec<u32>, dim: usize, budget: usize) -> Vec<u32> {
    let (tag, body) = match canonical_form(&mat, dim, budget) {
        Some(c) => (0, c),
        None => (1, mat),
    };
    let mut key = Vec::with_capacity(body.len() + 1);
    key.push(tag);
    key.extend(body);
    key
}

/// `IM_{k,r}` (with `r = 1` giving `IM_k`).
pub(super) fn im_step(g: &LabelledPartition, field: FieldSpec, r: usize, cfg: &EngineConfig) -> Result<LabelledPartition> {
    let space = g.space();
    let subs = Substitutions::new(&space, 2 * r);
    let dim = TupleSpace::new(g.n(), r)?.size();
    let colours = g.colours();

    // Tuples agreeing outside a slot's positions share that slot's matrix.
    let jobs: Vec<(usize, usize)> = (0..subs.index_vectors.len())
        .flat_map(|j| {
            let subs = &subs;
            let space = &space;
            (0..space.size())
                .filter(move |&idx| subs.index_vectors[j].iter().all(|&p| space.digit(idx, p) == 0))
                .map(move |base| (j, base))
        })
        .collect();
    let raw_keys: Vec<Vec<u32>> = jobs
        .par_iter()
        .map(|&(j, base)| {
            cfg.check_deadline()?;
            let mat: Vec<u32> = subs.offsets[j].iter().map(|&o| colours[base + o]).collect();
            Ok(key_of(mat, dim, cfg.canon_leaf_budget))
        })
        .collect::<Result<_>>()?;
    let mut keys = Keys::new(dim);
    let mut key_at: Vec<HashMap<usize, u32>> = vec![HashMap::new(); subs.index_vectors.len()];
    for (&(j, base), key) in jobs.iter().zip(raw_keys) {
        key_at[j].insert(base, keys.intern(key));
    }
    let slot_keys: Vec<Vec<u32>> = (0..subs.index_vectors.len())
        .map(|j| {
            (0..space.size())
                .map(|idx| key_at[j][&subs.base(&space, idx, j)])
                .collect()
        })
        .collect();
    finish(g, field, &keys, &slot_keys, cfg)
}

/// `IMt_k`: one colour matrix per tuple whose entries are the colour vectors
/// over all slots, compared with a single witness.
pub(super) fn imt_step(g: &LabelledPartition, field: FieldSpec, cfg: &EngineConfig) -> Result<LabelledPartition> {
    let space = g.space();
    let subs = Substitutions::new(&space, 2);
    let n = g.n();
    let m = subs.index_vectors.len();
    let colours = g.colours();
    let vectors: Vec<Vec<u32>> = (0..space.size())
        .into_par_iter()
        .map(|idx| {
            let bases: Vec<usize> = (0..m).map(|j| subs.base(&space, idx, j)).collect();
            let mut out = Vec::with_capacity(n * n * m);
            for xy in 0..n * n {
                out.extend((0..m).map(|j| colours[bases[j] + subs.offsets[j][xy]]));
            }
            out
        })
        .collect();
    let mut entry_ids: HashMap<&[u32], u32> = HashMap::new();
    let mats: Vec<Vec<u32>> = vectors
        .iter()
        .map(|v| {
            v.chunks(m.max(1))
                .map(|entry| {
                    let next = entry_ids.len() as u32;
                    *entry_ids.entry(entry).or_insert(next)
                })
                .collect()
        })
        .collect();
    let raw_keys: Vec<Vec<u32>> = mats
        .into_par_iter()
        .map(|mat| {
            cfg.check_deadline()?;
            Ok(key_of(mat, n, cfg.canon_leaf_budget))
        })
        .collect::<Result<_>>()?;
    let mut keys = Keys::new(n);
    let slot_keys = vec![raw_keys.into_iter().map(|k| keys.intern(k)).collect()];
    finish(g, field, &keys, &slot_keys, cfg)
}

fn finish(
    g: &LabelledPartition,
    field: FieldSpec,
    keys: &Keys,
    slot_keys: &[Vec<u32>],
    cfg: &EngineConfig,
) -> Result<LabelledPartition> {
    let groups = with_field!(field, |f| group_slots(&f, g, keys, slot_keys, cfg))?;
    let signatures: Vec<Vec<u32>> = (0..g.len())
        .map(|idx| {
            let mut sig = Vec::with_capacity(groups.len() + 1);
            sig.push(g.colour_at(idx));
            sig.extend(groups.iter().map(|slot| slot[idx]));
            sig
        })
        .collect();
    Ok(intern_signatures(g, signatures))
}

type Profile<E> = Vec<(u32, usize, E)>;

struct Similarity<'a, F: Field> {
    field: F,
    keys: &'a Keys,
    profiles: Vec<Option<Profile<F::Elem>>>,
    chis: HashMap<u32, Vec<Matrix<F>>>,
    decided: HashMap<(u32, u32), bool>,
}

impl<'a, F: Field> Similarity<'a, F> {
    fn new(field: &F, keys: &'a Keys) -> Self {
        Similarity {
            field: field.clone(),
            keys,
            profiles: vec![None; keys.mats.len()],
            chis: HashMap::new(),
            decided: HashMap::new(),
        }
    }

    fn present(&self, key: u32) -> Vec<u32> {
        let mut cs = self.keys.mats[key as usize].clone();
        cs.sort_unstable();
        cs.dedup();
        cs
    }

    fn chi(&mut self, key: u32) -> &Vec<Matrix<F>> {
        if !self.chis.contains_key(&key) {
            let d = self.keys.dim;
            let mat = &self.keys.mats[key as usize];
            let chi = self
                .present(key)
                .into_iter()
                .map(|c| Matrix::indicator(&self.field, d, d, |x, y| mat[x * d + y] == c))
                .collect();
            self.chis.insert(key, chi);
        }
        &self.chis[&key]
    }

    /// Per present colour: its rank and trace.
    fn profile(&mut self, key: u32) -> &Profile<F::Elem> {
        if self.profiles[key as usize].is_none() {
            let present = self.present(key);
            let chi = self.chi(key).clone();
            let p = present
                .into_iter()
                .zip(&chi)
                .map(|(c, m)| (c, m.rank(), m.trace()))
                .collect();
            self.profiles[key as usize] = Some(p);
        }
        self.profiles[key as usize].as_ref().expect("just set")
    }

    fn similar(&mut self, a: u32, b: u32, cfg: &EngineConfig) -> Result<bool> {
        if a == b {
            return Ok(true);
        }
        let pair = (a.min(b), a.max(b));
        if let Some(&d) = self.decided.get(&pair) {
            return Ok(d);
        }
        let pa = self.profile(a).clone();
        let verdict = if pa != *self.profile(b) {
            false
        } else {
            cfg.check_deadline()?;
            let xs = self.chi(a).clone();
            let ys = self.chi(b).clone();
            decide_similar(&xs, &ys, &cfg.similarity)?
        };
        self.decided.insert(pair, verdict);
        Ok(verdict)
    }
}

/// Group ids per slot and tuple: tuples in one old class share a group iff
/// their slot matrices are similar.
fn group_slots<F: Field>(
    f: &F,
    g: &LabelledPartition,
    keys: &Keys,
    slot_keys: &[Vec<u32>],
    cfg: &EngineConfig,
) -> Result<Vec<Vec<u32>>> {
    let mut sim = Similarity::new(f, keys);
    let mut out = Vec::with_capacity(slot_keys.len());
    for per_tuple in slot_keys {
        let mut reps: Vec<Vec<u32>> = vec![Vec::new(); g.class_count()];
        let mut assigned: HashMap<(u32, u32), u32> = HashMap::new();
        let mut groups = Vec::with_capacity(per_tuple.len());
        for (idx, &key) in per_tuple.iter().enumerate() {
            let class = g.colour_at(idx);
            if let Some(&gid) = assigned.get(&(class, key)) {
                groups.push(gid);
                continue;
            }
            let mut found = None;
            for (gid, &rep) in reps[class as usize].iter().enumerate() {
                if sim.similar(key, rep, cfg)? {
                    found = Some(gid as u32);
                    break;
                }
            }
            let gid = found.unwrap_or_else(|| {
                reps[class as usize].push(key);
                (reps[class as usize].len() - 1) as u32
            });
            assigned.insert((class, key), gid);
            groups.push(gid);
        }
        out.push(groups);
        cfg.check_deadline()?;
    }
    Ok(out)
}
