//! Factorized index spaces and the partial trace.
//!
//! A square matrix on `H_1 ⊗ … ⊗ H_k` is addressed by flat indices in which
//! the first factor varies slowest, matching [`crate::matrix::kron`]. The
//! partial trace reduces such a matrix onto any subset of factors, kept in
//! their original relative order.

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;

/// Ordered factor dimensions of a tensor-product space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorShape {
    dims: Vec<usize>,
}

impl FactorShape {
    /// Requires at least one factor, all dimensions ≥ 1.
    pub fn new(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::ShapeMismatch(
                "factor shape needs at least one factor".into(),
            ));
        }
        if dims.contains(&0) {
            return Err(Error::ShapeMismatch(format!(
                "zero factor dimension in {dims:?}"
            )));
        }
        Ok(Self {
            dims: dims.to_vec(),
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_factors(&self) -> usize {
        self.dims.len()
    }

    /// Total dimension, the side length of matrices this shape describes.
    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Flattens a multi-index, first factor slowest.
    pub fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.dims.len());
        idx.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| {
            debug_assert!(i < d);
            acc * d + i
        })
    }

    /// Inverse of [`flat_index`](Self::flat_index).
    pub fn unflatten(&self, mut flat: usize, out: &mut [usize]) {
        debug_assert_eq!(out.len(), self.dims.len());
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = flat % d;
            flat /= d;
        }
    }
}

/// Splits each flat index of `shape` into (kept part, traced part), both
/// flattened in original factor order. Used by the partial trace and by the
/// pure-state marginals.
pub(crate) struct IndexSplit {
    pub keep_dim: usize,
    pub trace_dim: usize,
    /// For every global flat index: (kept flat index, traced flat index).
    pub split: Vec<(usize, usize)>,
}

pub(crate) fn split_indices(shape: &FactorShape, keep_sorted: &[usize]) -> IndexSplit {
    let dims = shape.dims();
    let kept: Vec<bool> = {
        let mut v = vec![false; dims.len()];
        for &p in keep_sorted {
            v[p] = true;
        }
        v
    };
    let keep_dim: usize = keep_sorted.iter().map(|&p| dims[p]).product();
    let trace_dim = shape.total_dim() / keep_dim.max(1);

    let total = shape.total_dim();
    let mut split = Vec::with_capacity(total);
    let mut digits = vec![0usize; dims.len()];
    for flat in 0..total {
        shape.unflatten(flat, &mut digits);
        let mut kf = 0usize;
        let mut tf = 0usize;
        for (pos, (&digit, &d)) in digits.iter().zip(dims).enumerate() {
            if kept[pos] {
                kf = kf * d + digit;
            } else {
                tf = tf * d + digit;
            }
        }
        split.push((kf, tf));
    }
    IndexSplit {
        keep_dim,
        trace_dim,
        split,
    }
}

/// Validates `keep` against the shape: in range, duplicates rejected.
/// Returns the sorted kept positions.
pub(crate) fn normalize_keep(shape: &FactorShape, keep: &[usize]) -> Result<Vec<usize>> {
    let mut sorted = keep.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != keep.len() {
        return Err(Error::ShapeMismatch(format!(
            "duplicate factor positions in {keep:?}"
        )));
    }
    if let Some(&p) = sorted.iter().find(|&&p| p >= shape.num_factors()) {
        return Err(Error::ShapeMismatch(format!(
            "factor position {p} out of range for {} factors",
            shape.num_factors()
        )));
    }
    Ok(sorted)
}

/// Partial trace of `x` over all factors not listed in `keep`.
///
/// `x` must be square with side equal to `shape.total_dim()`. The reduced
/// matrix lives on the kept factors in their original relative order, and
/// `Tr(result) = Tr(x)`. An empty `keep` is allowed and yields the 1×1
/// matrix `[Tr x]`; keeping every factor returns `x` unchanged.
pub fn partial_trace<T: Scalar>(
    x: &ComplexMatrix<T>,
    shape: &FactorShape,
    keep: &[usize],
) -> Result<ComplexMatrix<T>> {
    if !x.is_square() {
        return Err(Error::NotSquare {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    if x.rows() != shape.total_dim() {
        return Err(Error::ShapeMismatch(format!(
            "matrix side {} but factor dimensions {:?} multiply to {}",
            x.rows(),
            shape.dims(),
            shape.total_dim()
        )));
    }
    let keep = normalize_keep(shape, keep)?;
    if keep.len() == shape.num_factors() {
        return Ok(x.clone());
    }

    let IndexSplit {
        keep_dim, split, ..
    } = split_indices(shape, &keep);

    let mut out = ComplexMatrix::zeros(keep_dim, keep_dim);
    let side = shape.total_dim();
    for i in 0..side {
        let (ki, ti) = split[i];
        for j in 0..side {
            let (kj, tj) = split[j];
            if ti == tj {
                out[(ki, kj)] = out[(ki, kj)] + x[(i, j)];
            }
        }
    }
    Ok(out)
}
