//! Joint purification of a state and a channel.
//!
//! Given ρ = Σ_j λ_j|e_j⟩⟨e_j| and Φ with Kraus operators A_α, the vector
//!
//!   |ψ_(ρ,Φ)⟩ = Σ_{j,α} √λ_j (A_α|e_j⟩) ⊗ |j⟩_R ⊗ |α⟩_E
//!
//! is a unit vector on R ⊗ Q ⊗ E (reference, output, environment) whose
//! marginals carry every quantity of interest: Ω_R ≃ ρ as diag(λ),
//! Ω_Q = Φ[ρ], and Ω_E the exchange state [Tr A_α ρ A_β*]. The variants for
//! a composed channel Φ₂∘Φ₁ and a product channel Φ₁⊗Φ₂ expose the split
//! environment and output factors used when relating the information
//! quantities of the pieces to those of the whole.
//!
//! Factor order is fixed: R first, outputs before environments, subscript 1
//! before 2. The flat layouts agree with the Kraus list orders of
//! [`compose`](crate::channel::KrausChannel::compose) and
//! [`tensor`](crate::channel::KrausChannel::tensor), so refining the labels
//! of a joint-channel purification is purely a relabeling of the same
//! amplitude vector.

use num_complex::Complex;

use crate::channel::KrausChannel;
use crate::error::{Error, Result};
use crate::pure::{LabeledPureState, MarginalState};
use crate::scalar::Scalar;
use crate::state::DensityMatrix;

/// Purification of ρ alone, on factors (R, S) with dims (rank(ρ), d):
/// amplitude(j, s) = √λ_j ⟨s|e_j⟩. The S-marginal is ρ and the R-marginal is
/// diag(λ).
pub fn purify_state<T: Scalar>(rho: &DensityMatrix<T>) -> LabeledPureState<T> {
    let spec = rho.spectral();
    let rank = spec.rank();
    let d = rho.dim();
    let mut amps = vec![Complex::new(T::zero(), T::zero()); rank * d];
    for j in 0..rank {
        let w = spec.eigenvalues()[j].sqrt();
        for s in 0..d {
            amps[j * d + s] = spec.eigenvectors()[(s, j)].scale(w);
        }
    }
    LabeledPureState::new_unchecked(&["R", "S"], &[rank, d], amps)
        .expect("shape is consistent by construction")
}

/// Shared amplitude kernel: entry at flat (j, q, α) is √λ_j ⟨q|A_α|e_j⟩.
fn pair_amplitudes<T: Scalar>(rho: &DensityMatrix<T>, phi: &KrausChannel<T>) -> Vec<Complex<T>> {
    let spec = rho.spectral();
    let rank = spec.rank();
    let dout = phi.dim_out();
    let n = phi.n_kraus();
    let mut amps = vec![Complex::new(T::zero(), T::zero()); rank * dout * n];
    for j in 0..rank {
        let e_j = spec.eigenvectors().column(j);
        let w = spec.eigenvalues()[j].sqrt();
        for (alpha, a) in phi.kraus().iter().enumerate() {
            let image = a.mul_vec(&e_j);
            for (q, z) in image.iter().enumerate() {
                amps[(j * dout + q) * n + alpha] = z.scale(w);
            }
        }
    }
    amps
}

/// Purification of the pair (ρ, Φ) on factors (R, Q, E) with dims
/// (rank(ρ), dim_out, N). Unit norm is the completeness condition combined
/// with Tr ρ = 1.
pub fn purify_pair<T: Scalar>(
    rho: &DensityMatrix<T>,
    phi: &KrausChannel<T>,
) -> Result<LabeledPureState<T>> {
    if rho.dim() != phi.dim_in() {
        return Err(Error::DimMismatch(format!(
            "state dimension {} vs channel input {}",
            rho.dim(),
            phi.dim_in()
        )));
    }
    LabeledPureState::new_unchecked(
        &["R", "Q", "E"],
        &[rho.rank(), phi.dim_out(), phi.n_kraus()],
        pair_amplitudes(rho, phi),
    )
}

/// The three marginals (Ω_R, Ω_Q, Ω_E) of a pair purification. Rejects
/// states whose labels are not exactly (R, Q, E).
pub fn partial_states<T: Scalar>(
    omega: &LabeledPureState<T>,
) -> Result<(MarginalState<T>, MarginalState<T>, MarginalState<T>)> {
    let expected = ["R", "Q", "E"];
    if omega.labels().len() != 3 || !omega.labels().iter().zip(expected).all(|(a, b)| a == b) {
        return Err(Error::WrongLabels {
            found: omega.labels().to_vec(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        });
    }
    Ok((
        omega.marginal(&["R"])?,
        omega.marginal(&["Q"])?,
        omega.marginal(&["E"])?,
    ))
}

/// Purification of (ρ, Φ₂∘Φ₁) with the environment split per stage: factors
/// (R, Q2, E1, E2), dims (rank(ρ), dim_out₂, N₁, N₂), amplitude at
/// (j, q, α, μ) = √λ_j ⟨q|B_μ A_α|e_j⟩.
pub fn purify_pair_composed<T: Scalar>(
    rho: &DensityMatrix<T>,
    phi1: &KrausChannel<T>,
    phi2: &KrausChannel<T>,
) -> Result<LabeledPureState<T>> {
    if rho.dim() != phi1.dim_in() {
        return Err(Error::DimMismatch(format!(
            "state dimension {} vs first channel input {}",
            rho.dim(),
            phi1.dim_in()
        )));
    }
    let joint = phi2.compose(phi1)?;
    LabeledPureState::new_unchecked(
        &["R", "Q2", "E1", "E2"],
        &[rho.rank(), phi2.dim_out(), phi1.n_kraus(), phi2.n_kraus()],
        pair_amplitudes(rho, &joint),
    )
}

/// Purification of (ρ₁₂, Φ₁⊗Φ₂) with outputs and environments split per
/// subsystem: factors (R, Q1, Q2, E1, E2), dims
/// (rank(ρ₁₂), dim_out₁, dim_out₂, N₁, N₂), amplitude at (j, q₁, q₂, α, μ) =
/// √λ_j ⟨q₁q₂|(A_α⊗B_μ)|e_j⟩.
pub fn purify_pair_product<T: Scalar>(
    rho12: &DensityMatrix<T>,
    phi1: &KrausChannel<T>,
    phi2: &KrausChannel<T>,
) -> Result<LabeledPureState<T>> {
    let din = phi1.dim_in() * phi2.dim_in();
    if rho12.dim() != din {
        return Err(Error::DimMismatch(format!(
            "state dimension {} vs product channel input {}x{}",
            rho12.dim(),
            phi1.dim_in(),
            phi2.dim_in()
        )));
    }
    let joint = phi1.tensor(phi2);
    LabeledPureState::new_unchecked(
        &["R", "Q1", "Q2", "E1", "E2"],
        &[
            rho12.rank(),
            phi1.dim_out(),
            phi2.dim_out(),
            phi1.n_kraus(),
            phi2.n_kraus(),
        ],
        pair_amplitudes(rho12, &joint),
    )
}
