use std::collections::HashMap;
use std::sync::Arc;

use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::rational::{factorial, Q};

/// Parity of every basis vector of one tensor factor. The extent of the
/// factor is the length of the slice; `true` marks an odd basis vector.
pub type Space = Arc<[bool]>;

pub fn even_space(extent: usize) -> Space {
    vec![false; extent].into()
}

/// Whether the permutation sending source slot `i` to `target[i]` picks up a
/// Koszul sign, given the parity of the index sitting in each source slot.
pub fn koszul_negative(odd: &[bool], target: &[usize]) -> bool {
    let mut flips = 0usize;
    for i in 0..odd.len() {
        if !odd[i] {
            continue;
        }
        for j in (i + 1)..odd.len() {
            if odd[j] && target[i] > target[j] {
                flips += 1;
            }
        }
    }
    flips % 2 == 1
}

/// A multi-index tensor with only its nonzero entries stored.
#[derive(Clone, Debug)]
pub struct SparseTensor<S> {
    axes: Vec<Space>,
    entries: HashMap<Vec<u32>, S>,
}

impl<S: Scalar> PartialEq for SparseTensor<S> {
    fn eq(&self, other: &Self) -> bool {
        self.axes == other.axes && self.entries == other.entries
    }
}

impl<S: Scalar> SparseTensor<S> {
    pub fn new(axes: Vec<Space>) -> Self {
        SparseTensor { axes, entries: HashMap::new() }
    }

    /// Rank-zero tensor holding `value`.
    pub fn scalar(value: S) -> Self {
        let mut t = SparseTensor::new(Vec::new());
        t.add_entry(Vec::new(), value);
        t
    }

    pub fn from_entries(axes: Vec<Space>, entries: impl IntoIterator<Item = (Vec<u32>, S)>) -> Result<Self> {
        let mut t = SparseTensor::new(axes);
        for (idx, v) in entries {
            t.check_index(&idx)?;
            t.add_entry(idx, v);
        }
        Ok(t)
    }

    fn check_index(&self, idx: &[u32]) -> Result<()> {
        if idx.len() != self.axes.len() {
            return Err(Error::IndexOutOfRange(format!(
                "index of length {} for rank-{} tensor",
                idx.len(),
                self.axes.len()
            )));
        }
        for (k, (&i, ax)) in idx.iter().zip(&self.axes).enumerate() {
            if i as usize >= ax.len() {
                return Err(Error::IndexOutOfRange(format!("axis {k}: {i} >= {}", ax.len())));
            }
        }
        Ok(())
    }

    /// Adds `value` into the entry at `idx`, dropping it if the sum vanishes.
    /// The index is assumed in range.
    pub fn add_entry(&mut self, idx: Vec<u32>, value: S) {
        if value.vanishes() {
            return;
        }
        match self.entries.entry(idx) {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                o.get_mut().accumulate(&value);
                if o.get().vanishes() {
                    o.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(value);
            }
        }
    }

    pub fn axes(&self) -> &[Space] {
        &self.axes
    }

    pub fn rank(&self) -> usize {
        self.axes.len()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.len()).collect()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, idx: &[u32]) -> S {
        self.entries.get(idx).cloned().unwrap_or_else(S::zero_elem)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &S)> {
        self.entries.iter()
    }

    /// Entries in lexicographic index order.
    pub fn sorted_entries(&self) -> Vec<(Vec<u32>, S)> {
        let mut v: Vec<_> = self.entries.iter().map(|(k, s)| (k.clone(), s.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    /// Value of a rank-zero tensor.
    pub fn scalar_value(&self) -> Option<S> {
        if self.axes.is_empty() {
            Some(self.get(&[]))
        } else {
            None
        }
    }

    pub fn has_odd(&self) -> bool {
        self.axes.iter().any(|a| a.iter().any(|&p| p))
    }

    pub fn index_odd(&self, idx: &[u32]) -> Vec<bool> {
        idx.iter().zip(&self.axes).map(|(&i, a)| a[i as usize]).collect()
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = SparseTensor::new(self.axes.clone());
        for (k, v) in &self.entries {
            out.add_entry(k.clone(), v.times(s));
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.axes != other.axes {
            return Err(Error::structural("adding tensors over different spaces"));
        }
        let mut out = self.clone();
        for (k, v) in &other.entries {
            out.add_entry(k.clone(), v.clone());
        }
        Ok(out)
    }

    /// Reorders axes so that new axis `k` is old axis `order[k]`, applying the
    /// Koszul sign of the rearrangement to every entry.
    pub fn permute_axes(&self, order: &[usize]) -> Result<Self> {
        let n = self.axes.len();
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&o| o >= n || std::mem::replace(&mut seen[o], true)) {
            return Err(Error::structural("axis order is not a permutation"));
        }
        let mut target = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            target[old] = new;
        }
        let axes = order.iter().map(|&o| self.axes[o].clone()).collect();
        let graded = self.has_odd();
        let mut out = SparseTensor::new(axes);
        for (idx, v) in &self.entries {
            let new_idx: Vec<u32> = order.iter().map(|&o| idx[o]).collect();
            let neg = graded && koszul_negative(&self.index_odd(idx), &target);
            out.add_entry(new_idx, if neg { v.negated() } else { v.clone() });
        }
        Ok(out)
    }

    /// Tensor product, axes of `self` first.
    pub fn outer(&self, other: &Self) -> Self {
        let mut axes = self.axes.clone();
        axes.extend(other.axes.iter().cloned());
        let mut out = SparseTensor::new(axes);
        for (a, x) in &self.entries {
            for (b, y) in &other.entries {
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                out.add_entry(idx, x.times(y));
            }
        }
        out
    }

    /// Graded average over all permutations of the listed axes.
    pub fn symmetrize(&self, axes: &[usize]) -> Result<Self> {
        let k = axes.len();
        if k <= 1 {
            return Ok(self.clone());
        }
        for &a in axes {
            if a >= self.rank() {
                return Err(Error::IndexOutOfRange(format!("axis {a}")));
            }
            if self.axes[a] != self.axes[axes[0]] {
                return Err(Error::structural("symmetrized axes differ in extent or parity"));
            }
        }
        let mut seen = axes.to_vec();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != k {
            return Err(Error::structural("repeated axis in symmetrization"));
        }
        let weight = S::from_q(&Q::new(1.into(), factorial(k)));
        let n = self.rank();
        let mut acc = SparseTensor::new(self.axes.clone());
        let mut perm: Vec<usize> = (0..k).collect();
        loop {
            // order[axes[i]] = axes[perm[i]]
            let mut order: Vec<usize> = (0..n).collect();
            for i in 0..k {
                order[axes[i]] = axes[perm[i]];
            }
            let p = self.permute_axes(&order)?;
            for (idx, v) in p.entries {
                acc.add_entry(idx, v.times(&weight));
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        Ok(acc)
    }
}

/// Advances to the next permutation in lexicographic order; false once the
/// last one has been reached.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
