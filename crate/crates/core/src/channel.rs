//! Quantum channels in Kraus form.
//!
//! A channel Φ[σ] = Σ_α A_α σ A_α* is stored as its list of Kraus operators
//! A_α: H_in → H_out, validated against the completeness condition
//! Σ_α A_α*A_α = I. Input and output dimensions may differ.
//!
//! Flattening conventions for derived Kraus lists (these fix how environment
//! factors are indexed downstream):
//! - `compose(φ₂, φ₁)` has operators B_μ A_α at list index α·N₂ + μ, so the
//!   first channel's index α is the slow digit.
//! - `tensor(φ₁, φ₂)` has operators A_α ⊗ B_μ at list index α·N₂ + μ, again
//!   with the second factor fastest.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::matrix::{kron, orthonormalize_columns, ComplexMatrix};
use crate::scalar::{real, scaled_tol, Scalar};
use crate::state::DensityMatrix;

/// Completely positive trace-preserving map in Kraus representation.
#[derive(Debug, Clone)]
pub struct KrausChannel<T: Scalar> {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<ComplexMatrix<T>>,
}

impl<T: Scalar> KrausChannel<T> {
    /// Validates a Kraus family: nonempty, uniform shapes, and completeness
    /// Σ A_α*A_α = I within `tol` in Frobenius norm.
    pub fn from_kraus(ops: Vec<ComplexMatrix<T>>, tol: T) -> Result<Self> {
        let first = ops.first().ok_or(Error::EmptyKrausList)?;
        let (dim_out, dim_in) = (first.rows(), first.cols());
        if dim_in == 0 || dim_out == 0 {
            return Err(Error::ShapeMismatch(
                "zero-dimensional Kraus operator".into(),
            ));
        }
        if let Some(bad) = ops
            .iter()
            .find(|a| a.rows() != dim_out || a.cols() != dim_in)
        {
            return Err(Error::ShapeMismatch(format!(
                "Kraus operators mix shapes {dim_out}x{dim_in} and {}x{}",
                bad.rows(),
                bad.cols()
            )));
        }
        let mut sum = ComplexMatrix::zeros(dim_in, dim_in);
        for a in &ops {
            sum = sum.add(&a.adjoint().matmul(a));
        }
        let defect = sum.sub(&ComplexMatrix::identity(dim_in)).frobenius_norm();
        if !(defect <= tol) {
            return Err(Error::NotTracePreserving {
                defect: defect.to_f64().unwrap_or(f64::NAN),
                tol: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self {
            dim_in,
            dim_out,
            kraus: ops,
        })
    }

    /// Wraps a Kraus list without the completeness check. Shapes must still
    /// be uniform. Exists so tests can build deliberately broken channels as
    /// negative controls; real channels should go through [`from_kraus`].
    ///
    /// [`from_kraus`]: KrausChannel::from_kraus
    pub fn from_kraus_unchecked(ops: Vec<ComplexMatrix<T>>) -> Self {
        let first = ops.first().expect("nonempty Kraus list");
        let (dim_out, dim_in) = (first.rows(), first.cols());
        assert!(
            ops.iter()
                .all(|a| a.rows() == dim_out && a.cols() == dim_in),
            "uniform Kraus shapes"
        );
        Self {
            dim_in,
            dim_out,
            kraus: ops,
        }
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    /// Number of Kraus operators N.
    pub fn n_kraus(&self) -> usize {
        self.kraus.len()
    }

    pub fn kraus(&self) -> &[ComplexMatrix<T>] {
        &self.kraus
    }

    /// Φ[σ] = Σ_α A_α σ A_α*, returned as a validated state.
    pub fn apply(&self, sigma: &DensityMatrix<T>) -> Result<DensityMatrix<T>> {
        if sigma.dim() != self.dim_in {
            return Err(Error::DimMismatch(format!(
                "state dimension {} vs channel input {}",
                sigma.dim(),
                self.dim_in
            )));
        }
        let mut out = ComplexMatrix::zeros(self.dim_out, self.dim_out);
        for a in &self.kraus {
            out = out.add(&a.matmul(sigma.matrix()).matmul(&a.adjoint()));
        }
        DensityMatrix::from_matrix(&out, scaled_tol::<T>(1e-9))
    }

    /// Composition Φ₂∘Φ₁ (`self` is Φ₂, applied second). The Kraus family is
    /// {B_μ A_α} at list index α·N₂ + μ.
    pub fn compose(&self, phi1: &KrausChannel<T>) -> Result<Self> {
        if phi1.dim_out != self.dim_in {
            return Err(Error::DimMismatch(format!(
                "first channel outputs dimension {}, second expects {}",
                phi1.dim_out, self.dim_in
            )));
        }
        let mut ops = Vec::with_capacity(phi1.n_kraus() * self.n_kraus());
        for a in &phi1.kraus {
            for b in &self.kraus {
                ops.push(b.matmul(a));
            }
        }
        Ok(Self {
            dim_in: phi1.dim_in,
            dim_out: self.dim_out,
            kraus: ops,
        })
    }

    /// Tensor product Φ₁⊗Φ₂ (`self` is Φ₁). The Kraus family is {A_α ⊗ B_μ}
    /// at list index α·N₂ + μ.
    pub fn tensor(&self, phi2: &KrausChannel<T>) -> Self {
        let mut ops = Vec::with_capacity(self.n_kraus() * phi2.n_kraus());
        for a in &self.kraus {
            for b in &phi2.kraus {
                ops.push(kron(a, b));
            }
        }
        Self {
            dim_in: self.dim_in * phi2.dim_in,
            dim_out: self.dim_out * phi2.dim_out,
            kraus: ops,
        }
    }

    /// Identity channel on dimension `d`.
    pub fn identity(d: usize) -> Self {
        Self {
            dim_in: d,
            dim_out: d,
            kraus: vec![ComplexMatrix::identity(d)],
        }
    }

    /// Qubit depolarizing channel with Kraus family
    /// {√(1−3p/4)·I, √(p/4)·X, √(p/4)·Y, √(p/4)·Z}; p = 1 is completely
    /// depolarizing.
    pub fn depolarizing(p: T) -> Result<Self> {
        check_probability(p, "depolarizing p")?;
        let quarter = p / real::<T>(4.0);
        let keep = (T::one() - real::<T>(3.0) * quarter).sqrt();
        let flip = quarter.sqrt();
        let ops = vec![
            ComplexMatrix::identity(2).scale_re(keep),
            pauli_x().scale_re(flip),
            pauli_y().scale_re(flip),
            pauli_z().scale_re(flip),
        ];
        Ok(Self {
            dim_in: 2,
            dim_out: 2,
            kraus: ops,
        })
    }

    /// Qubit dephasing channel {√(1−p)·I, √p·Z}.
    pub fn dephasing(p: T) -> Result<Self> {
        check_probability(p, "dephasing p")?;
        let ops = vec![
            ComplexMatrix::identity(2).scale_re((T::one() - p).sqrt()),
            pauli_z().scale_re(p.sqrt()),
        ];
        Ok(Self {
            dim_in: 2,
            dim_out: 2,
            kraus: ops,
        })
    }

    /// Qubit amplitude damping channel with decay probability γ:
    /// A₀ = diag(1, √(1−γ)), A₁ = √γ·|0⟩⟨1|.
    pub fn amplitude_damping(gamma: T) -> Result<Self> {
        check_probability(gamma, "amplitude damping gamma")?;
        let zero = Complex::new(T::zero(), T::zero());
        let a0 = ComplexMatrix::from_rows(&[
            vec![Complex::new(T::one(), T::zero()), zero],
            vec![zero, Complex::new((T::one() - gamma).sqrt(), T::zero())],
        ])
        .expect("fixed shape");
        let a1 = ComplexMatrix::from_rows(&[
            vec![zero, Complex::new(gamma.sqrt(), T::zero())],
            vec![zero, zero],
        ])
        .expect("fixed shape");
        Ok(Self {
            dim_in: 2,
            dim_out: 2,
            kraus: vec![a0, a1],
        })
    }

    /// Embedding of a `d_in`-dimensional system into `d_out ≥ d_in`
    /// dimensions via the single isometric Kraus operator V|i⟩ = |i⟩.
    pub fn isometry_embed(d_in: usize, d_out: usize) -> Result<Self> {
        if d_in < 1 || d_out < d_in {
            return Err(Error::BadParam(format!(
                "isometry_embed needs 1 <= d_in <= d_out, got {d_in} -> {d_out}"
            )));
        }
        let v = ComplexMatrix::from_fn(d_out, d_in, |i, j| {
            if i == j {
                Complex::new(T::one(), T::zero())
            } else {
                Complex::new(T::zero(), T::zero())
            }
        });
        Ok(Self {
            dim_in: d_in,
            dim_out: d_out,
            kraus: vec![v],
        })
    }
}

fn check_probability<T: Scalar>(p: T, what: &str) -> Result<()> {
    if p >= T::zero() && p <= T::one() {
        Ok(())
    } else {
        Err(Error::BadParam(format!(
            "{what} must lie in [0, 1], got {p}"
        )))
    }
}

fn pauli_x<T: Scalar>() -> ComplexMatrix<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    ComplexMatrix::from_rows(&[vec![zero, one], vec![one, zero]]).expect("fixed shape")
}

fn pauli_y<T: Scalar>() -> ComplexMatrix<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    ComplexMatrix::from_rows(&[vec![zero, -i], vec![i, zero]]).expect("fixed shape")
}

fn pauli_z<T: Scalar>() -> ComplexMatrix<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    ComplexMatrix::from_rows(&[vec![one, zero], vec![zero, -one]]).expect("fixed shape")
}

/// The catalog of named channels reachable from configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    Identity,
    Depolarizing,
    Dephasing,
    AmplitudeDamping,
    IsometryEmbed,
}

impl std::str::FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(Self::Identity),
            "depolarizing" => Ok(Self::Depolarizing),
            "dephasing" => Ok(Self::Dephasing),
            "amplitude_damping" => Ok(Self::AmplitudeDamping),
            "isometry_embed" => Ok(Self::IsometryEmbed),
            other => Err(Error::BadParam(format!(
                "unknown channel '{other}' (expected identity, depolarizing, dephasing, \
                 amplitude_damping, or isometry_embed)"
            ))),
        }
    }
}

/// Builds a channel from the named catalog. `params` carries probabilities
/// (one for depolarizing/dephasing/amplitude_damping, none otherwise); `dims`
/// carries [d] for identity and [d_in, d_out] for isometry_embed.
pub fn named_channel<T: Scalar>(
    kind: ChannelKind,
    params: &[T],
    dims: &[usize],
) -> Result<KrausChannel<T>> {
    let one_param = |what: &str| -> Result<T> {
        match params {
            [p] => Ok(*p),
            _ => Err(Error::BadParam(format!(
                "{what} takes exactly one parameter, got {}",
                params.len()
            ))),
        }
    };
    match kind {
        ChannelKind::Identity => {
            if !params.is_empty() {
                return Err(Error::BadParam("identity takes no parameters".into()));
            }
            match dims {
                [d] if *d >= 1 => Ok(KrausChannel::identity(*d)),
                _ => Err(Error::BadParam("identity needs dims [d >= 1]".into())),
            }
        }
        ChannelKind::Depolarizing => KrausChannel::depolarizing(one_param("depolarizing")?),
        ChannelKind::Dephasing => KrausChannel::dephasing(one_param("dephasing")?),
        ChannelKind::AmplitudeDamping => {
            KrausChannel::amplitude_damping(one_param("amplitude_damping")?)
        }
        ChannelKind::IsometryEmbed => {
            if !params.is_empty() {
                return Err(Error::BadParam("isometry_embed takes no parameters".into()));
            }
            match dims {
                [d_in, d_out] => KrausChannel::isometry_embed(*d_in, *d_out),
                _ => Err(Error::BadParam(
                    "isometry_embed needs dims [d_in, d_out]".into(),
                )),
            }
        }
    }
}

/// Random channel: a Haar-like isometry V from `dim_in` into
/// `n_kraus · dim_out` dimensions, obtained by orthonormalizing a Gaussian
/// matrix, sliced into `n_kraus` blocks of shape dim_out × dim_in.
/// Completeness Σ A_α*A_α = V*V = I holds by construction. Deterministic per
/// seed. Fails with [`Error::InfeasibleShape`] when
/// `n_kraus · dim_out < dim_in`, where no isometry exists.
pub fn random_channel<T: Scalar>(
    dim_in: usize,
    dim_out: usize,
    n_kraus: usize,
    seed: u64,
) -> Result<KrausChannel<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_channel_with(dim_in, dim_out, n_kraus, &mut rng)
}

/// Same construction driven by a caller-supplied generator.
pub fn random_channel_with<T: Scalar, R: Rng>(
    dim_in: usize,
    dim_out: usize,
    n_kraus: usize,
    rng: &mut R,
) -> Result<KrausChannel<T>> {
    if dim_in < 1 || dim_out < 1 || n_kraus < 1 {
        return Err(Error::InfeasibleShape(format!(
            "dimensions and Kraus count must be >= 1, got ({dim_in}, {dim_out}, {n_kraus})"
        )));
    }
    if n_kraus * dim_out < dim_in {
        return Err(Error::InfeasibleShape(format!(
            "no isometry from dimension {dim_in} into {n_kraus} x {dim_out}"
        )));
    }
    let rows = n_kraus * dim_out;
    let v = loop {
        let mut g: ComplexMatrix<T> = ComplexMatrix::from_fn(rows, dim_in, |_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex::new(real::<T>(re), real::<T>(im))
        });
        // Gaussian columns are dependent only on a measure-zero event; redraw
        // if it happens.
        if orthonormalize_columns(&mut g) {
            break g;
        }
    };
    let ops: Vec<ComplexMatrix<T>> = (0..n_kraus)
        .map(|alpha| ComplexMatrix::from_fn(dim_out, dim_in, |r, c| v[(alpha * dim_out + r, c)]))
        .collect();
    KrausChannel::from_kraus(ops, scaled_tol::<T>(1e-9))
}
