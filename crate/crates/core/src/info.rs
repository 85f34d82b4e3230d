//! Entropy and the information quantities of a (state, channel) pair.
//!
//! All entropies are in bits (base-2 logarithms). For a pair (ρ, Φ) the
//! quantities are
//!
//!   H(ρ)      input entropy
//!   H(Φ[ρ])   output entropy
//!   H(ρ,Φ)    entropy exchange = H(Ω_E), the environment marginal of the
//!             pair purification
//!   I(ρ,Φ)    = H(ρ) + H(Φ[ρ]) − H(ρ,Φ)   mutual information
//!   I_c(ρ,Φ)  = H(Φ[ρ]) − H(ρ,Φ)          coherent information
//!
//! `info_report` computes the three entropies from a single purification and
//! combines them, so the two derived rows satisfy their defining formulas
//! exactly as floating-point identities.

use crate::channel::KrausChannel;
use crate::error::Result;
use crate::purify::purify_pair;
use crate::scalar::Scalar;
use crate::state::DensityMatrix;

/// The five scalars of a pair, plus the shape they were computed at.
#[derive(Debug, Clone)]
pub struct InfoReport<T: Scalar> {
    pub h_in: T,
    pub h_out: T,
    pub h_exchange: T,
    pub mutual: T,
    pub coherent: T,
    pub d_in: usize,
    pub d_out: usize,
    pub n_kraus: usize,
    /// Seed of the randomized trial that produced this report, if any.
    pub seed: Option<u64>,
}

/// Von Neumann entropy H(ρ) = −Σ λ_j log₂ λ_j in bits. Eigenvalues at or
/// below the rank cutoff were already dropped at construction and contribute
/// zero, the λ log λ → 0 limit.
pub fn von_neumann_entropy<T: Scalar>(rho: &DensityMatrix<T>) -> T {
    neg_sum_xlog2x(rho.eigenvalues())
}

pub(crate) fn neg_sum_xlog2x<T: Scalar>(lambdas: &[T]) -> T {
    let mut h = T::zero();
    for &l in lambdas {
        if l > T::zero() {
            h = h - l * l.log2();
        }
    }
    h
}

/// Entropy exchange H(ρ,Φ): the entropy of the environment marginal Ω_E of
/// the pair purification.
pub fn entropy_exchange<T: Scalar>(rho: &DensityMatrix<T>, phi: &KrausChannel<T>) -> Result<T> {
    let omega = purify_pair(rho, phi)?;
    let e = omega.marginal(&["E"])?;
    Ok(von_neumann_entropy(e.matrix()))
}

/// Mutual information I(ρ,Φ) = H(ρ) + H(Φ[ρ]) − H(ρ,Φ).
pub fn mutual_information<T: Scalar>(rho: &DensityMatrix<T>, phi: &KrausChannel<T>) -> Result<T> {
    Ok(info_report(rho, phi)?.mutual)
}

/// Coherent information I_c(ρ,Φ) = H(Φ[ρ]) − H(ρ,Φ).
pub fn coherent_information<T: Scalar>(rho: &DensityMatrix<T>, phi: &KrausChannel<T>) -> Result<T> {
    Ok(info_report(rho, phi)?.coherent)
}

/// Computes all five scalars from one purification of the pair.
pub fn info_report<T: Scalar>(
    rho: &DensityMatrix<T>,
    phi: &KrausChannel<T>,
) -> Result<InfoReport<T>> {
    let omega = purify_pair(rho, phi)?;
    let h_in = von_neumann_entropy(rho);
    let h_out = von_neumann_entropy(omega.marginal(&["Q"])?.matrix());
    let h_exchange = von_neumann_entropy(omega.marginal(&["E"])?.matrix());
    Ok(InfoReport {
        h_in,
        h_out,
        h_exchange,
        mutual: h_in + h_out - h_exchange,
        coherent: h_out - h_exchange,
        d_in: phi.dim_in(),
        d_out: phi.dim_out(),
        n_kraus: phi.n_kraus(),
        seed: None,
    })
}
