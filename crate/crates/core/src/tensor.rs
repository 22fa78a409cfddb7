//! Sparse elements of tensor powers `A^{⊗k}`, keyed by the flattened
//! index `((i1 * n + i2) * n + i3) ...`.

use std::collections::BTreeMap;

use crate::field::{FieldSpec, Scalar};
use crate::linalg::Vector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseTensor {
    field: FieldSpec,
    entries: BTreeMap<usize, Scalar>,
}

impl SparseTensor {
    pub fn zero(field: FieldSpec) -> Self {
        SparseTensor { field, entries: BTreeMap::new() }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn add_term(&mut self, idx: usize, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        match self.entries.get_mut(&idx) {
            Some(v) => {
                let nv = &*v + s;
                if nv.is_zero() {
                    self.entries.remove(&idx);
                } else {
                    *v = nv;
                }
            }
            None => {
                self.entries.insert(idx, s.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, s: &Scalar, o: &SparseTensor) {
        for (k, v) in &o.entries {
            self.add_term(*k, &(s * v));
        }
    }

    pub fn get(&self, idx: usize) -> Scalar {
        self.entries.get(&idx).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// First flattened index where `self` and `o` differ.
    pub fn first_difference(&self, o: &SparseTensor) -> Option<usize> {
        let keys: std::collections::BTreeSet<usize> = self.entries.keys().chain(o.entries.keys()).copied().collect();
        keys.into_iter().find(|&k| self.entries.get(&k) != o.entries.get(&k))
    }

    pub fn from_vector(v: &Vector) -> Self {
        let mut t = Self::zero(v.field());
        for (i, c) in v.nonzero() {
            t.entries.insert(i, c.clone());
        }
        t
    }

    pub fn to_vector(&self, len: usize) -> Vector {
        let mut v = Vector::zeros(self.field, len);
        for (k, c) in &self.entries {
            v.set(*k, c.clone());
        }
        v
    }

    /// `self ⊗ o` where `o` lives in a space of total size `o_size`.
    pub fn outer(&self, o: &SparseTensor, o_size: usize) -> SparseTensor {
        let mut t = Self::zero(self.field);
        for (a, x) in &self.entries {
            for (b, y) in &o.entries {
                t.entries.insert(a * o_size + b, x * y);
            }
        }
        t
    }
}

/// Splits a flattened index of order `k` over dimension `n` into its legs.
pub fn split_index(mut idx: usize, n: usize, k: usize) -> Vec<usize> {
    let mut legs = vec![0; k];
    for leg in legs.iter_mut().rev() {
        *leg = idx % n;
        idx /= n;
    }
    legs
}

pub fn join_index(legs: &[usize], n: usize) -> usize {
    legs.iter().fold(0, |acc, &l| acc * n + l)
}

/// `(f ⊗ g)(t)` for a tensor of order two over dimension `n`, with `f` and
/// `g` in the row convention.
pub fn map_pair(f: &crate::linalg::Matrix, g: &crate::linalg::Matrix, t: &SparseTensor, n: usize) -> SparseTensor {
    let mut out = SparseTensor::zero(t.field);
    for (idx, c) in t.iter() {
        let (p, q) = (idx / n, idx % n);
        for (i, a) in f.row(p).iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            let ca = c * a;
            for (j, b) in g.row(q).iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out.add_term(i * n + j, &(&ca * b));
            }
        }
    }
    out
}
