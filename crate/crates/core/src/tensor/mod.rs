//! Dense tensors of [`Poly`] over a fixed basis `X_0..X_{dim-1}`.
//!
//! Slot layout: the `down` covariant slots come first, followed by the `up`
//! contravariant slots. A tensor is read as a multilinear map whose vector
//! arguments are the covariant slots and whose output components are the
//! contravariant ones, so `Γ[i, j, k]` is the `X_k` component of
//! `∇_{X_i} X_j` and `R[x, y, z, p]` is the `X_p` component of `R(X_x, X_y) X_z`.

mod json;
pub mod matrix;
mod metric;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::algebra::{ParameterSpace, Poly, Rational};
use crate::error::{Error, Result};

pub use metric::{metric_invert, Metric, Signature};

/// Counts of contravariant (`up`) and covariant (`down`) slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Valence {
    pub up: usize,
    pub down: usize,
}

impl Valence {
    pub const fn new(up: usize, down: usize) -> Self {
        Self { up, down }
    }

    pub const fn rank(&self) -> usize {
        self.up + self.down
    }
}

impl fmt::Display for Valence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.up, self.down)
    }
}

/// Row-major iterator over `[0, dim)^rank`.
#[derive(Debug, Clone)]
pub struct MultiIndices {
    dim: usize,
    current: Option<Vec<usize>>,
}

impl MultiIndices {
    pub fn new(dim: usize, rank: usize) -> Self {
        let current = (dim > 0 || rank == 0).then(|| vec![0; rank]);
        Self { dim, current }
    }
}

impl Iterator for MultiIndices {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        for slot in (0..next.len()).rev() {
            next[slot] += 1;
            if next[slot] < self.dim {
                self.current = Some(next);
                return Some(out);
            }
            next[slot] = 0;
        }
        Some(out)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Tensor {
    dim: usize,
    valence: Valence,
    space: ParameterSpace,
    data: Vec<Poly>,
}

impl Tensor {
    pub fn zeros(space: &ParameterSpace, dim: usize, valence: Valence) -> Self {
        let len = dim.pow(valence.rank() as u32);
        Self {
            dim,
            valence,
            space: space.clone(),
            data: vec![Poly::zero(space); len],
        }
    }

    pub fn from_fn<F>(space: &ParameterSpace, dim: usize, valence: Valence, mut f: F) -> Self
    where
        F: FnMut(&[usize]) -> Poly,
    {
        let data = MultiIndices::new(dim, valence.rank()).map(|idx| f(&idx)).collect();
        Self {
            dim,
            valence,
            space: space.clone(),
            data,
        }
    }

    /// Build from explicit entries (0-based indices); anything unspecified
    /// is zero.
    pub fn build<I>(space: &ParameterSpace, dim: usize, valence: Valence, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Poly)>,
    {
        let mut t = Self::zeros(space, dim, valence);
        let mut seen = std::collections::BTreeSet::new();
        for (idx, val) in entries {
            t.check_index(&idx)?;
            if val.space() != space {
                return Err(Error::SpaceMismatch {
                    left: space.names().to_vec(),
                    right: val.space().names().to_vec(),
                });
            }
            if !seen.insert(idx.clone()) {
                return Err(Error::DuplicateEntry(idx));
            }
            let k = t.offset(&idx);
            t.data[k] = val;
        }
        Ok(t)
    }

    /// Rank-two tensor from a rational matrix, `rows[a][b]` landing at `[a, b]`.
    pub fn from_matrix(space: &ParameterSpace, valence: Valence, rows: &[Vec<Rational>]) -> Result<Self> {
        if valence.rank() != 2 {
            return Err(Error::Shape(format!("matrix needs a rank-2 valence, got {valence}")));
        }
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Shape("matrix is not square".into()));
        }
        Ok(Self::from_fn(space, dim, valence, |i| {
            Poly::constant(space, rows[i[0]][i[1]].clone())
        }))
    }

    /// Constant entries of a rank-two tensor as a matrix.
    pub fn to_matrix(&self) -> Result<matrix::Matrix> {
        if self.rank() != 2 {
            return Err(Error::Shape(format!("rank {} is not a matrix", self.rank())));
        }
        (0..self.dim)
            .map(|a| {
                (0..self.dim)
                    .map(|b| {
                        let p = self.get(&[a, b]);
                        p.as_constant().ok_or_else(|| Error::NonConstant {
                            index: vec![a, b],
                            value: p.to_string(),
                        })
                    })
                    .collect()
            })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn valence(&self) -> Valence {
        self.valence
    }

    pub fn rank(&self) -> usize {
        self.valence.rank()
    }

    pub fn space(&self) -> &ParameterSpace {
        &self.space
    }

    pub fn data(&self) -> &[Poly] {
        &self.data
    }

    pub fn indices(&self) -> MultiIndices {
        MultiIndices::new(self.dim, self.rank())
    }

    fn is_covariant(&self, slot: usize) -> bool {
        slot < self.valence.down
    }

    fn check_index(&self, idx: &[usize]) -> Result<()> {
        if idx.len() != self.rank() || idx.iter().any(|&i| i >= self.dim) {
            return Err(Error::IndexOutOfRange {
                index: idx.to_vec(),
                dim: self.dim,
            });
        }
        Ok(())
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank());
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    /// Component at a 0-based multi-index. Panics when out of range.
    pub fn get(&self, idx: &[usize]) -> &Poly {
        assert!(
            idx.len() == self.rank() && idx.iter().all(|&i| i < self.dim),
            "index {idx:?} out of range"
        );
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: Poly) {
        assert!(
            idx.len() == self.rank() && idx.iter().all(|&i| i < self.dim),
            "index {idx:?} out of range"
        );
        let k = self.offset(idx);
        self.data[k] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    /// Nonzero components in lexicographic index order.
    pub fn nonzero(&self) -> impl Iterator<Item = (Vec<usize>, &Poly)> + '_ {
        self.indices().zip(&self.data).filter(|(_, p)| !p.is_zero())
    }

    fn check_same_shape(&self, other: &Tensor) -> Result<()> {
        if self.dim != other.dim || self.valence != other.valence {
            return Err(Error::Shape(format!(
                "dim {} valence {} vs dim {} valence {}",
                self.dim, self.valence, other.dim, other.valence
            )));
        }
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                left: self.space.names().to_vec(),
                right: other.space.names().to_vec(),
            });
        }
        Ok(())
    }

    /// Componentwise canonical equality.
    pub fn equal(&self, other: &Tensor) -> Result<bool> {
        self.check_same_shape(other)?;
        Ok(self.data == other.data)
    }

    /// Components where the two tensors differ: `(index, self, other)`.
    pub fn diff(&self, other: &Tensor) -> Result<Vec<(Vec<usize>, Poly, Poly)>> {
        self.check_same_shape(other)?;
        Ok(self
            .indices()
            .zip(self.data.iter().zip(&other.data))
            .filter(|(_, (a, b))| a != b)
            .map(|(i, (a, b))| (i, a.clone(), b.clone()))
            .collect())
    }

    pub fn checked_add(&self, other: &Tensor) -> Result<Tensor> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Tensor) -> Result<Tensor> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Rational) -> Tensor {
        self.map(|p| p.scale(factor))
    }

    pub fn map<F: FnMut(&Poly) -> Poly>(&self, f: F) -> Tensor {
        Tensor {
            dim: self.dim,
            valence: self.valence,
            space: self.space.clone(),
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Evaluate every component at positional parameter values.
    pub fn substitute(&self, values: &[Rational]) -> Result<Tensor> {
        let data = self.data.iter().map(|p| p.substitute(values)).collect::<Result<_>>()?;
        Ok(Tensor { data, ..self.clone() })
    }

    /// Reorder slots: `out[i_0, .., i_k] = self[i_{perm[0]}, .., i_{perm[k]}]`.
    /// The permutation may only exchange slots of the same variance.
    pub fn permuted(&self, perm: &[usize]) -> Result<Tensor> {
        let rank = self.rank();
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if sorted != (0..rank).collect::<Vec<_>>() {
            return Err(Error::Shape(format!("{perm:?} is not a permutation of {rank} slots")));
        }
        if perm
            .iter()
            .enumerate()
            .any(|(s, &p)| self.is_covariant(s) != self.is_covariant(p))
        {
            return Err(Error::Shape(
                "permutation mixes covariant and contravariant slots".into(),
            ));
        }
        let mut src = vec![0; rank];
        Ok(Tensor::from_fn(&self.space, self.dim, self.valence, |idx| {
            for (s, &p) in perm.iter().enumerate() {
                src[s] = idx[p];
            }
            self.get(&src).clone()
        }))
    }

    /// Natural pairing of a contravariant slot with a covariant slot.
    pub fn contract(&self, up_slot: usize, down_slot: usize) -> Result<Tensor> {
        let rank = self.rank();
        if up_slot >= rank || down_slot >= rank {
            return Err(Error::Shape(format!("slot out of range for rank {rank}")));
        }
        if self.is_covariant(up_slot) || !self.is_covariant(down_slot) {
            return Err(Error::Shape(format!(
                "slot {up_slot} must be contravariant and slot {down_slot} covariant in a {} tensor",
                self.valence
            )));
        }
        let valence = Valence::new(self.valence.up - 1, self.valence.down - 1);
        Ok(self.reduce_pair(up_slot, down_slot, valence, |_, _| None))
    }

    /// Contract two covariant slots with an inverse metric `(2,0)`, or two
    /// contravariant slots with a metric `(0,2)`.
    pub fn metric_contract(&self, slot_a: usize, slot_b: usize, m: &Tensor) -> Result<Tensor> {
        let rank = self.rank();
        if slot_a == slot_b || slot_a >= rank || slot_b >= rank {
            return Err(Error::Shape(format!("bad slots {slot_a}, {slot_b} for rank {rank}")));
        }
        let cov = self.is_covariant(slot_a);
        if cov != self.is_covariant(slot_b) {
            return Err(Error::Shape(
                "metric contraction needs two slots of the same variance".into(),
            ));
        }
        let wanted = if cov { Valence::new(2, 0) } else { Valence::new(0, 2) };
        if m.valence != wanted || m.dim != self.dim {
            return Err(Error::Shape(format!(
                "contracting with a {} tensor needs {wanted}",
                m.valence
            )));
        }
        self.check_space(m)?;
        let valence = if cov {
            Valence::new(self.valence.up, self.valence.down - 2)
        } else {
            Valence::new(self.valence.up - 2, self.valence.down)
        };
        Ok(self.reduce_pair(slot_a, slot_b, valence, |a, b| Some(m.get(&[a, b]))))
    }

    fn check_space(&self, other: &Tensor) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                left: self.space.names().to_vec(),
                right: other.space.names().to_vec(),
            });
        }
        Ok(())
    }

    /// Sum over two slots, optionally weighted by `weight(a, b)` (natural
    /// pairing when `None`, i.e. only `a == b` with weight one).
    fn reduce_pair<'m, W>(&self, s1: usize, s2: usize, valence: Valence, weight: W) -> Tensor
    where
        W: Fn(usize, usize) -> Option<&'m Poly>,
    {
        let rank = self.rank();
        let mut full = vec![0; rank];
        Tensor::from_fn(&self.space, self.dim, valence, |out| {
            let mut it = out.iter();
            for (s, slot) in full.iter_mut().enumerate() {
                if s != s1 && s != s2 {
                    *slot = *it.next().expect("rank bookkeeping");
                }
            }
            let mut acc = Poly::zero(&self.space);
            for a in 0..self.dim {
                for b in 0..self.dim {
                    let w = match weight(a, b) {
                        None if a == b => None,
                        None => continue,
                        Some(w) if w.is_zero() => continue,
                        Some(w) => Some(w),
                    };
                    full[s1] = a;
                    full[s2] = b;
                    let v = self.get(&full);
                    if v.is_zero() {
                        continue;
                    }
                    match w {
                        Some(w) => acc += &(v * w),
                        None => acc += v,
                    }
                }
            }
            acc
        })
    }

    /// Lower a contravariant slot with `g`; the new covariant slot becomes
    /// the last covariant slot.
    pub fn lower(&self, up_slot: usize, g: &Tensor) -> Result<Tensor> {
        if up_slot >= self.rank() || self.is_covariant(up_slot) {
            return Err(Error::Shape(format!("slot {up_slot} is not contravariant")));
        }
        if g.valence != Valence::new(0, 2) || g.dim != self.dim {
            return Err(Error::Shape("lowering needs a (0,2) metric".into()));
        }
        self.check_space(g)?;
        let down = self.valence.down;
        let valence = Valence::new(self.valence.up - 1, down + 1);
        let mut src = vec![0; self.rank()];
        Ok(Tensor::from_fn(&self.space, self.dim, valence, |out| {
            // out = [covariant..., new, remaining ups...]
            let new = out[down];
            let mut rest = out[down + 1..].iter();
            for s in 0..self.rank() {
                if s < down {
                    src[s] = out[s];
                } else if s != up_slot {
                    src[s] = *rest.next().expect("rank bookkeeping");
                }
            }
            let mut acc = Poly::zero(&self.space);
            for m in 0..self.dim {
                let w = g.get(&[m, new]);
                if w.is_zero() {
                    continue;
                }
                src[up_slot] = m;
                acc += &(self.get(&src) * w);
            }
            acc
        }))
    }

    /// Raise a covariant slot with the inverse metric; the new contravariant
    /// slot becomes the last slot.
    pub fn raise(&self, down_slot: usize, inverse: &Tensor) -> Result<Tensor> {
        if down_slot >= self.rank() || !self.is_covariant(down_slot) {
            return Err(Error::Shape(format!("slot {down_slot} is not covariant")));
        }
        if inverse.valence != Valence::new(2, 0) || inverse.dim != self.dim {
            return Err(Error::Shape("raising needs a (2,0) inverse metric".into()));
        }
        self.check_space(inverse)?;
        let rank = self.rank();
        let valence = Valence::new(self.valence.up + 1, self.valence.down - 1);
        let mut src = vec![0; rank];
        Ok(Tensor::from_fn(&self.space, self.dim, valence, |out| {
            let new = out[rank - 1];
            let mut it = out[..rank - 1].iter();
            for (s, slot) in src.iter_mut().enumerate() {
                if s != down_slot {
                    *slot = *it.next().expect("rank bookkeeping");
                }
            }
            let mut acc = Poly::zero(&self.space);
            for m in 0..self.dim {
                let w = inverse.get(&[m, new]);
                if w.is_zero() {
                    continue;
                }
                src[down_slot] = m;
                acc += &(self.get(&src) * w);
            }
            acc
        }))
    }

    /// Change of basis `X'_a = Σ_i basis[i][a] X_i`. Covariant slots pick up
    /// `basis`, contravariant slots its inverse.
    pub fn change_basis(&self, basis: &matrix::Matrix) -> Result<Tensor> {
        if basis.len() != self.dim {
            return Err(Error::Shape("basis matrix has the wrong size".into()));
        }
        let inv = matrix::invert(basis)?;
        let down = self.valence.down;
        let mut out = self.clone();
        for slot in 0..self.rank() {
            let weight = |new: usize, old: usize| -> Rational {
                if slot < down {
                    basis[old][new].clone()
                } else {
                    inv[new][old].clone()
                }
            };
            let prev = out.clone();
            let mut src = vec![0; self.rank()];
            out = Tensor::from_fn(&self.space, self.dim, self.valence, |idx| {
                src.copy_from_slice(idx);
                let mut acc = Poly::zero(&self.space);
                for old in 0..self.dim {
                    let w = weight(idx[slot], old);
                    if num_traits::Zero::is_zero(&w) {
                        continue;
                    }
                    src[slot] = old;
                    acc += &prev.get(&src).scale(&w);
                }
                acc
            });
        }
        Ok(out)
    }
}

impl Add for &Tensor {
    type Output = Tensor;
    fn add(self, rhs: &Tensor) -> Tensor {
        self.checked_add(rhs).expect("tensor add")
    }
}

impl Sub for &Tensor {
    type Output = Tensor;
    fn sub(self, rhs: &Tensor) -> Tensor {
        self.checked_sub(rhs).expect("tensor sub")
    }
}

impl Neg for &Tensor {
    type Output = Tensor;
    fn neg(self) -> Tensor {
        self.map(|p| -p)
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor{} dim {} {{", self.valence, self.dim)?;
        for (idx, p) in self.nonzero() {
            let one_based: Vec<_> = idx.iter().map(|i| i + 1).collect();
            write!(f, " {one_based:?}: {p};")?;
        }
        write!(f, " }}")
    }
}
