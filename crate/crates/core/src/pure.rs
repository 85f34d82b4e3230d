//! Pure states on labeled tensor factors.
//!
//! A `LabeledPureState` is a unit vector on H_1 ⊗ … ⊗ H_k whose factors
//! carry names (R, Q, E, …). Labels make marginal extraction self-describing:
//! callers ask for the factors to keep by name, and the factor order inside
//! the flat amplitude vector (first label slowest) stays an internal
//! convention.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::factor::{split_indices, FactorShape};
use crate::matrix::ComplexMatrix;
use crate::scalar::{scaled_tol, Scalar};
use crate::state::DensityMatrix;

/// Norm slack tolerated by the validating constructor.
const NORM_TOL: f64 = 1e-10;

/// Unit vector on named tensor factors.
#[derive(Debug, Clone)]
pub struct LabeledPureState<T: Scalar> {
    labels: Vec<String>,
    shape: FactorShape,
    amplitudes: Vec<Complex<T>>,
}

/// Density matrix on a named subset of factors, as produced by
/// [`LabeledPureState::marginal`].
#[derive(Debug, Clone)]
pub struct MarginalState<T: Scalar> {
    labels: Vec<String>,
    matrix: DensityMatrix<T>,
}

impl<T: Scalar> MarginalState<T> {
    /// Kept factor names, in their original order.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &DensityMatrix<T> {
        &self.matrix
    }

    pub fn into_density(self) -> DensityMatrix<T> {
        self.matrix
    }
}

impl<T: Scalar> LabeledPureState<T> {
    /// Builds a labeled pure state, validating that labels are distinct and
    /// match `dims`, that the amplitude count is the total dimension, and
    /// that the vector has unit norm within 1e-10.
    pub fn new(labels: &[&str], dims: &[usize], amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let state = Self::new_unchecked(labels, dims, amplitudes)?;
        let defect = (state.norm() - T::one()).abs();
        if !(defect <= scaled_tol::<T>(NORM_TOL)) {
            return Err(Error::NotNormalized {
                defect: defect.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(state)
    }

    /// Same shape validation without the norm check. The purification
    /// constructors use this: their norm is the completeness condition in
    /// disguise, and diagnostic flows deliberately feed broken channels whose
    /// defect must surface in marginal comparisons, not here.
    pub(crate) fn new_unchecked(
        labels: &[&str],
        dims: &[usize],
        amplitudes: Vec<Complex<T>>,
    ) -> Result<Self> {
        if labels.len() != dims.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} labels for {} factors",
                labels.len(),
                dims.len()
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::ShapeMismatch(format!("duplicate factor label {l}")));
            }
        }
        let shape = FactorShape::new(dims)?;
        if amplitudes.len() != shape.total_dim() {
            return Err(Error::ShapeMismatch(format!(
                "{} amplitudes for total dimension {}",
                amplitudes.len(),
                shape.total_dim()
            )));
        }
        if !amplitudes
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            labels: labels.iter().map(|s| s.to_string()).collect(),
            shape,
            amplitudes,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dims(&self) -> &[usize] {
        self.shape.dims()
    }

    pub fn shape(&self) -> &FactorShape {
        &self.shape
    }

    /// Flat amplitude vector, first factor slowest.
    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn norm(&self) -> T {
        self.amplitudes
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    /// Resolves `keep` labels to sorted factor positions.
    fn keep_positions(&self, keep: &[&str]) -> Result<Vec<usize>> {
        if keep.is_empty() {
            return Err(Error::ShapeMismatch("empty keep set".into()));
        }
        let mut positions = Vec::with_capacity(keep.len());
        for l in keep {
            let p = self
                .labels
                .iter()
                .position(|have| have == l)
                .ok_or_else(|| Error::UnknownLabel {
                    label: (*l).to_string(),
                    available: self.labels.clone(),
                })?;
            if positions.contains(&p) {
                return Err(Error::ShapeMismatch(format!("duplicate keep label {l}")));
            }
            positions.push(p);
        }
        positions.sort_unstable();
        Ok(positions)
    }

    /// Reduced matrix on the kept factors (original factor order), with no
    /// validation of the result. For a unit vector this is the partial trace
    /// of |ψ⟩⟨ψ| over the complement, computed as BB† where B reshapes ψ
    /// into a (kept × traced) block.
    pub fn reduced_matrix(&self, keep: &[&str]) -> Result<ComplexMatrix<T>> {
        let positions = self.keep_positions(keep)?;
        let split = split_indices(&self.shape, &positions);
        let mut b = ComplexMatrix::zeros(split.keep_dim, split.trace_dim);
        for (flat, &(kf, tf)) in split.split.iter().enumerate() {
            b[(kf, tf)] = self.amplitudes[flat];
        }
        Ok(b.matmul(&b.adjoint()))
    }

    /// Validated marginal state on the kept factors.
    pub fn marginal(&self, keep: &[&str]) -> Result<MarginalState<T>> {
        let positions = self.keep_positions(keep)?;
        let reduced = self.reduced_matrix(keep)?;
        let matrix = DensityMatrix::from_matrix(&reduced, scaled_tol::<T>(1e-9))?;
        Ok(MarginalState {
            labels: positions.iter().map(|&p| self.labels[p].clone()).collect(),
            matrix,
        })
    }
}
