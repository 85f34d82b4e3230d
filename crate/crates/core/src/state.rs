//! Density matrices with cached spectral data.
//!
//! Every `DensityMatrix` carries its spectral decomposition
//! ρ = Σ_j λ_j|e_j⟩⟨e_j| with λ_j sorted descending and eigenvalues at or
//! below the rank cutoff dropped, so the stored rank is the effective one.
//! Construction validates Hermiticity, positivity, and unit trace, then
//! renormalizes, so arithmetic downstream can trust the invariants.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::eigen::hermitian_eig;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::{real, scaled_tol, Scalar};

/// Eigenvalues at or below this threshold count as zero: they are dropped
/// from spectral data and contribute nothing to entropies.
pub const RANK_CUTOFF: f64 = 1e-12;

/// Spectral data of a density matrix: eigenvalues descending, all above the
/// rank cutoff, with matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition<T: Scalar> {
    eigenvalues: Vec<T>,
    eigenvectors: ComplexMatrix<T>,
}

impl<T: Scalar> SpectralDecomposition<T> {
    /// Eigenvalues λ_j, descending, each > rank cutoff, summing to 1.
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    /// d × rank matrix whose columns are the eigenvectors |e_j⟩.
    pub fn eigenvectors(&self) -> &ComplexMatrix<T> {
        &self.eigenvectors
    }

    /// Effective rank d_eff.
    pub fn rank(&self) -> usize {
        self.eigenvalues.len()
    }
}

/// Validated density matrix: Hermitian, positive semidefinite, unit trace.
#[derive(Debug, Clone)]
pub struct DensityMatrix<T: Scalar> {
    dim: usize,
    matrix: ComplexMatrix<T>,
    spectral: SpectralDecomposition<T>,
}

impl<T: Scalar> DensityMatrix<T> {
    /// Validates `raw` as a density matrix.
    ///
    /// Checks in order: square shape, finite entries, Hermiticity within
    /// `tol`, eigenvalues ≥ −`tol` (small negatives clipped to zero), trace
    /// within `tol` of 1 (then renormalized exactly). The stored matrix is
    /// reconstructed from the cleaned spectrum.
    pub fn from_matrix(raw: &ComplexMatrix<T>, tol: T) -> Result<Self> {
        if !raw.is_square() {
            return Err(Error::NotSquare {
                rows: raw.rows(),
                cols: raw.cols(),
            });
        }
        if !raw.all_finite() {
            return Err(Error::NonFinite);
        }
        let defect = raw.hermiticity_defect();
        if !(defect <= tol) {
            return Err(Error::NotHermitian {
                defect: defect.to_f64().unwrap_or(f64::NAN),
                tol: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        let (lambdas, vectors) = hermitian_eig(raw, tol)?;
        Self::build(raw.rows(), lambdas, vectors, tol)
    }

    /// Builds directly from spectral data: `eigenvectors` is d × k with
    /// orthonormal columns matching `eigenvalues` (any order; sorted
    /// descending here with a stable sort, so the relative order of equal
    /// eigenvalues is preserved).
    pub fn from_spectral(
        eigenvalues: &[T],
        eigenvectors: &ComplexMatrix<T>,
        tol: T,
    ) -> Result<Self> {
        let d = eigenvectors.rows();
        let k = eigenvalues.len();
        if eigenvectors.cols() != k || k > d {
            return Err(Error::ShapeMismatch(format!(
                "{k} eigenvalues with a {}x{} eigenvector matrix",
                d,
                eigenvectors.cols()
            )));
        }
        let gram = eigenvectors.adjoint().matmul(eigenvectors);
        let ortho_defect = gram.max_abs_diff(&ComplexMatrix::identity(k));
        if !(ortho_defect <= scaled_tol::<T>(1e-8)) {
            return Err(Error::BadParam(format!(
                "eigenvector columns not orthonormal (defect {:e})",
                ortho_defect.to_f64().unwrap_or(f64::NAN)
            )));
        }

        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&i, &j| eigenvalues[j].partial_cmp(&eigenvalues[i]).unwrap());
        let lambdas: Vec<T> = order.iter().map(|&i| eigenvalues[i]).collect();
        let vectors = ComplexMatrix::from_fn(d, k, |i, j| eigenvectors[(i, order[j])]);
        Self::build(d, lambdas, vectors, tol)
    }

    /// Shared construction tail. Expects eigenvalues sorted descending with
    /// aligned eigenvector columns; enforces positivity and unit trace, then
    /// drops the zero part of the spectrum.
    fn build(dim: usize, mut lambdas: Vec<T>, vectors: ComplexMatrix<T>, tol: T) -> Result<Self> {
        for l in &mut lambdas {
            if *l < T::zero() {
                if !(-*l <= tol) {
                    return Err(Error::NotPositive {
                        eigenvalue: l.to_f64().unwrap_or(f64::NAN),
                        tol: tol.to_f64().unwrap_or(f64::NAN),
                    });
                }
                *l = T::zero();
            }
        }
        let trace = lambdas.iter().fold(T::zero(), |a, &l| a + l);
        if !((trace - T::one()).abs() <= tol) {
            return Err(Error::TraceNotOne {
                trace: trace.to_f64().unwrap_or(f64::NAN),
                tol: tol.to_f64().unwrap_or(f64::NAN),
            });
        }

        let cutoff = real::<T>(RANK_CUTOFF);
        let kept: Vec<(T, usize)> = lambdas
            .iter()
            .enumerate()
            .filter(|&(_, &l)| l / trace > cutoff)
            .map(|(j, &l)| (l / trace, j))
            .collect();
        let eigenvalues: Vec<T> = kept.iter().map(|&(l, _)| l).collect();
        let eigenvectors = ComplexMatrix::from_fn(dim, kept.len(), |i, j| vectors[(i, kept[j].1)]);

        let matrix = ComplexMatrix::from_fn(dim, dim, |i, l| {
            let mut acc = Complex::new(T::zero(), T::zero());
            for (j, &lam) in eigenvalues.iter().enumerate() {
                acc = acc + eigenvectors[(i, j)] * eigenvectors[(l, j)].conj().scale(lam);
            }
            acc
        });

        Ok(Self {
            dim,
            matrix,
            spectral: SpectralDecomposition {
                eigenvalues,
                eigenvectors,
            },
        })
    }

    /// The state I_d/d.
    pub fn maximally_mixed(d: usize) -> Self {
        assert!(d >= 1, "maximally_mixed needs d >= 1");
        let inv = T::one() / real::<T>(d as f64);
        Self {
            dim: d,
            matrix: ComplexMatrix::identity(d).scale_re(inv),
            spectral: SpectralDecomposition {
                eigenvalues: vec![inv; d],
                eigenvectors: ComplexMatrix::identity(d),
            },
        }
    }

    /// Rank-1 projector |ψ⟩⟨ψ| from an amplitude vector, which must have
    /// norm 1 within `tol`.
    pub fn pure(psi: &[Complex<T>], tol: T) -> Result<Self> {
        let norm = psi
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt();
        let defect = (norm - T::one()).abs();
        if !(defect <= tol) {
            return Err(Error::NotNormalized {
                defect: defect.to_f64().unwrap_or(f64::NAN),
            });
        }
        let unit: Vec<Complex<T>> = psi.iter().map(|z| z.scale(T::one() / norm)).collect();
        let d = unit.len();
        Ok(Self {
            dim: d,
            matrix: ComplexMatrix::outer(&unit, &unit),
            spectral: SpectralDecomposition {
                eigenvalues: vec![T::one()],
                eigenvectors: ComplexMatrix::from_fn(d, 1, |i, _| unit[i]),
            },
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn spectral(&self) -> &SpectralDecomposition<T> {
        &self.spectral
    }

    /// Shorthand for the spectral eigenvalues.
    pub fn eigenvalues(&self) -> &[T] {
        self.spectral.eigenvalues()
    }

    pub fn rank(&self) -> usize {
        self.spectral.rank()
    }
}

/// Random density matrix ρ = GG*/Tr(GG*) with G a d×d matrix of independent
/// complex Gaussian entries. Deterministic per seed.
pub fn random_state<T: Scalar>(d: usize, seed: u64) -> DensityMatrix<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_state_with(d, &mut rng)
}

/// Same construction driven by a caller-supplied generator.
pub fn random_state_with<T: Scalar, R: Rng>(d: usize, rng: &mut R) -> DensityMatrix<T> {
    assert!(d >= 1, "random_state needs d >= 1");
    let g: ComplexMatrix<T> = ComplexMatrix::from_fn(d, d, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex::new(real::<T>(re), real::<T>(im))
    });
    let gg = g.matmul(&g.adjoint());
    let tr = gg.trace().re;
    let normalized = gg.scale_re(T::one() / tr);
    DensityMatrix::from_matrix(&normalized, scaled_tol::<T>(1e-9))
        .expect("GG*/Tr(GG*) is a valid state by construction")
}
