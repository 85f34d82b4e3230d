//! Numerical checks of the purification identities and the two theorems:
//! the data processing inequality for coherent information and
//! subadditivity of mutual information.
//!
//! Every check returns a [`CheckResult`] with a uniform margin convention:
//! for inequalities `margin = rhs − lhs` and passing means
//! `margin ≥ −tolerance`; for identities `margin` is the worst entrywise
//! deviation and passing means `margin ≤ tolerance`. These are theorems, so
//! a failing result on validated inputs indicates a numerical defect, not
//! physics; campaign code attaches the trial seed for reproduction.

use crate::channel::KrausChannel;
use crate::eigen::hermitian_eig;
use crate::error::{Error, Result};
use crate::factor::{partial_trace, FactorShape};
use crate::info::{info_report, neg_sum_xlog2x, von_neumann_entropy};
use crate::matrix::ComplexMatrix;
use crate::pure::LabeledPureState;
use crate::purify::{purify_pair, purify_pair_composed, purify_state};
use crate::scalar::{real, scaled_tol, Scalar};
use crate::state::{DensityMatrix, RANK_CUTOFF};

/// Agreement required between the compose route and the purification route
/// inside [`check_dpi`].
pub const ROUTE_TOL: f64 = 1e-8;

/// Outcome of one check.
#[derive(Debug, Clone)]
pub struct CheckResult<T: Scalar> {
    pub name: &'static str,
    pub passed: bool,
    pub lhs: T,
    pub rhs: T,
    /// rhs − lhs for inequalities; worst entrywise deviation for identities.
    pub margin: T,
    pub tolerance: T,
    /// Seed of the randomized trial that produced this check, if any.
    pub seed: Option<u64>,
}

/// Both evaluation routes of the data processing inequality, for callers
/// that want to inspect route agreement rather than just the verdict.
#[derive(Debug, Clone)]
pub struct DpiEvaluation<T: Scalar> {
    pub result: CheckResult<T>,
    /// I_c(ρ, Φ₂Φ₁) computed through the composed channel.
    pub lhs_compose: T,
    /// I_c(ρ, Φ₁) computed directly.
    pub rhs_direct: T,
    /// I_c(ρ, Φ₂Φ₁) = H(Ω¹²_RE₁E₂) − H(Ω¹²_E₁E₂) from the split
    /// purification.
    pub lhs_purification: T,
    /// I_c(ρ, Φ₁) = H(Ω¹_RE₁) − H(Ω¹_E₁) from the single-stage purification.
    pub rhs_purification: T,
}

/// Entropy of a Hermitian positive matrix given by its eigenvalues above the
/// rank cutoff. Works on raw (possibly unnormalized) reduced matrices, which
/// the negative-control flows need.
fn entropy_of_matrix<T: Scalar>(m: &ComplexMatrix<T>) -> Result<T> {
    let (lambdas, _) = hermitian_eig(m, scaled_tol::<T>(1e-8))?;
    let cutoff = real::<T>(RANK_CUTOFF);
    let kept: Vec<T> = lambdas.into_iter().filter(|&l| l > cutoff).collect();
    Ok(neg_sum_xlog2x(&kept))
}

/// Data processing inequality I_c(ρ, Φ₂Φ₁) ≤ I_c(ρ, Φ₁), evaluated through
/// both routes. The verdict requires the inequality to hold with `tol` slack
/// and the two routes to agree within [`ROUTE_TOL`] on each side.
pub fn evaluate_dpi<T: Scalar>(
    rho: &DensityMatrix<T>,
    phi1: &KrausChannel<T>,
    phi2: &KrausChannel<T>,
    tol: T,
) -> Result<DpiEvaluation<T>> {
    let composed = phi2.compose(phi1)?;
    let lhs_compose = info_report(rho, &composed)?.coherent;
    let rhs_direct = info_report(rho, phi1)?.coherent;

    let omega12 = purify_pair_composed(rho, phi1, phi2)?;
    let lhs_purification = von_neumann_entropy(omega12.marginal(&["R", "E1", "E2"])?.matrix())
        - von_neumann_entropy(omega12.marginal(&["E1", "E2"])?.matrix());
    let omega1 = purify_pair(rho, phi1)?;
    let rhs_purification = von_neumann_entropy(omega1.marginal(&["R", "E"])?.matrix())
        - von_neumann_entropy(omega1.marginal(&["E"])?.matrix());

    let margin = rhs_direct - lhs_compose;
    let route_tol = real::<T>(ROUTE_TOL);
    let routes_agree = (lhs_compose - lhs_purification).abs() <= route_tol
        && (rhs_direct - rhs_purification).abs() <= route_tol;
    let result = CheckResult {
        name: "dpi",
        passed: margin >= -tol && routes_agree,
        lhs: lhs_compose,
        rhs: rhs_direct,
        margin,
        tolerance: tol,
        seed: None,
    };
    Ok(DpiEvaluation {
        result,
        lhs_compose,
        rhs_direct,
        lhs_purification,
        rhs_purification,
    })
}

/// Verdict-only form of [`evaluate_dpi`].
pub fn check_dpi<T: Scalar>(
    rho: &DensityMatrix<T>,
    phi1: &KrausChannel<T>,
    phi2: &KrausChannel<T>,
    tol: T,
) -> Result<CheckResult<T>> {
    Ok(evaluate_dpi(rho, phi1, phi2, tol)?.result)
}

/// Subadditivity of mutual information,
/// I(ρ₁₂, Φ₁⊗Φ₂) ≤ I(ρ₁, Φ₁) + I(ρ₂, Φ₂), with ρ₁ and ρ₂ the partial
/// traces of ρ₁₂.
pub fn check_subadditivity<T: Scalar>(
    rho12: &DensityMatrix<T>,
    phi1: &KrausChannel<T>,
    phi2: &KrausChannel<T>,
    tol: T,
) -> Result<CheckResult<T>> {
    let din = phi1.dim_in() * phi2.dim_in();
    if rho12.dim() != din {
        return Err(Error::DimMismatch(format!(
            "state dimension {} vs product channel input {}x{}",
            rho12.dim(),
            phi1.dim_in(),
            phi2.dim_in()
        )));
    }
    let shape = FactorShape::new(&[phi1.dim_in(), phi2.dim_in()])?;
    let state_tol = scaled_tol::<T>(1e-9);
    let rho1 =
        DensityMatrix::from_matrix(&partial_trace(rho12.matrix(), &shape, &[0])?, state_tol)?;
    let rho2 =
        DensityMatrix::from_matrix(&partial_trace(rho12.matrix(), &shape, &[1])?, state_tol)?;

    let lhs = info_report(rho12, &phi1.tensor(phi2))?.mutual;
    let rhs = info_report(&rho1, phi1)?.mutual + info_report(&rho2, phi2)?.mutual;
    let margin = rhs - lhs;
    Ok(CheckResult {
        name: "subadd",
        passed: margin >= -tol,
        lhs,
        rhs,
        margin,
        tolerance: tol,
        seed: None,
    })
}

/// Closed form of the (R, E) marginal of a pair purification:
/// entry ((j,α), (k,β)) = √(λ_j λ_k) ⟨e_k|A_β* A_α|e_j⟩, computed as the
/// Gram matrix of the vectors x_{jα} = √λ_j A_α|e_j⟩.
fn re_closed_form<T: Scalar>(rho: &DensityMatrix<T>, phi: &KrausChannel<T>) -> ComplexMatrix<T> {
    let x = stage_vectors(rho, phi);
    gram(&x)
}

/// Closed form of the (R, E1) marginal of the two-stage purification:
/// entry ((j,α), (k,β)) = √(λ_j λ_k) Σ_μ ⟨e_k|A_β* B_μ* B_μ A_α|e_j⟩, the
/// Gram matrix of the stacked vectors {B_μ x_{jα}}_μ.
fn re1_closed_form<T: Scalar>(
    rho: &DensityMatrix<T>,
    phi1: &KrausChannel<T>,
    phi2: &KrausChannel<T>,
) -> ComplexMatrix<T> {
    let x = stage_vectors(rho, phi1);
    let stacked: Vec<Vec<num_complex::Complex<T>>> = x
        .iter()
        .map(|v| {
            let mut out = Vec::with_capacity(phi2.n_kraus() * phi2.dim_out());
            for b in phi2.kraus() {
                out.extend(b.mul_vec(v));
            }
            out
        })
        .collect();
    gram(&stacked)
}

/// The vectors x_{jα} = √λ_j A_α|e_j⟩ in flat (j, α) order, α fastest.
fn stage_vectors<T: Scalar>(
    rho: &DensityMatrix<T>,
    phi: &KrausChannel<T>,
) -> Vec<Vec<num_complex::Complex<T>>> {
    let spec = rho.spectral();
    let mut out = Vec::with_capacity(spec.rank() * phi.n_kraus());
    for j in 0..spec.rank() {
        let e_j = spec.eigenvectors().column(j);
        let w = spec.eigenvalues()[j].sqrt();
        for a in phi.kraus() {
            out.push(a.mul_vec(&e_j).into_iter().map(|z| z.scale(w)).collect());
        }
    }
    out
}

/// Gram matrix G[r][s] = ⟨v_s, v_r⟩ of a family of vectors, so that
/// G = Σ |v_r⟩⟨v_s| pattern matches the marginal entry ⟨e_k…|…e_j⟩ with rows
/// indexed by (j,α).
fn gram<T: Scalar>(vectors: &[Vec<num_complex::Complex<T>>]) -> ComplexMatrix<T> {
    let n = vectors.len();
    ComplexMatrix::from_fn(n, n, |r, s| {
        let mut acc = num_complex::Complex::new(T::zero(), T::zero());
        for (a, b) in vectors[r].iter().zip(&vectors[s]) {
            acc = acc + *a * b.conj();
        }
        acc
    })
}

/// The marginal identity behind the data processing inequality:
/// Ω¹_RE₁ = Ω¹²_RE₁. Both marginals are computed generically from their
/// purifications and also from the two closed forms; the margin is the
/// largest deviation across all four representations.
pub fn check_marginal_consistency<T: Scalar>(
    rho: &DensityMatrix<T>,
    phi1: &KrausChannel<T>,
    phi2: &KrausChannel<T>,
    tol: T,
) -> Result<CheckResult<T>> {
    let omega1 = purify_pair(rho, phi1)?;
    let m1 = omega1.reduced_matrix(&["R", "E"])?;
    let omega12 = purify_pair_composed(rho, phi1, phi2)?;
    let m12 = omega12.reduced_matrix(&["R", "E1"])?;
    let c1 = re_closed_form(rho, phi1);
    let c12 = re1_closed_form(rho, phi1, phi2);

    let margin = m1
        .max_abs_diff(&m12)
        .max(m1.max_abs_diff(&c1))
        .max(m12.max_abs_diff(&c12))
        .max(c1.max_abs_diff(&c12));
    Ok(CheckResult {
        name: "marginal",
        passed: margin <= tol,
        lhs: entropy_of_matrix(&m1)?,
        rhs: entropy_of_matrix(&m12)?,
        margin,
        tolerance: tol,
        seed: None,
    })
}

/// The exchange identities H(Ω_E) = H(Ω_RQ) and
/// Ω_RQ = (Id⊗Φ)[|ψ_ρ⟩⟨ψ_ρ|]. The margin folds both sub-checks:
/// max(entrywise deviation, |ΔH|/10), so passing at tolerance t means the
/// matrices agree within t and the entropies within 10·t (at the 1e-10
/// default: 1e-10 entrywise and 1e-9 on the entropy gap).
pub fn check_exchange_identity<T: Scalar>(
    rho: &DensityMatrix<T>,
    phi: &KrausChannel<T>,
    tol: T,
) -> Result<CheckResult<T>> {
    let omega = purify_pair(rho, phi)?;
    let h_e = von_neumann_entropy(omega.marginal(&["E"])?.matrix());
    let rq = omega.reduced_matrix(&["R", "Q"])?;
    let h_rq = entropy_of_matrix(&rq)?;

    let psi = purify_state(rho);
    let projector = DensityMatrix::pure(psi.amplitudes(), scaled_tol::<T>(1e-8))?;
    let extended = KrausChannel::identity(rho.rank()).tensor(phi);
    let alt = extended.apply(&projector)?;
    let dev = rq.max_abs_diff(alt.matrix());

    let dh = (h_e - h_rq).abs();
    let margin = dev.max(dh / real::<T>(10.0));
    Ok(CheckResult {
        name: "exchange",
        passed: margin <= tol,
        lhs: h_e,
        rhs: h_rq,
        margin,
        tolerance: tol,
        seed: None,
    })
}

/// Strong subadditivity H(AB) + H(BC) ≥ H(ABC) + H(B) on a tripartite
/// state, consumed here as the known inequality guarding the entropy
/// pipeline.
pub fn check_strong_subadditivity<T: Scalar>(
    rho_abc: &DensityMatrix<T>,
    shape: &FactorShape,
    tol: T,
) -> Result<CheckResult<T>> {
    if shape.num_factors() != 3 {
        return Err(Error::ShapeMismatch(format!(
            "strong subadditivity needs 3 factors, got {}",
            shape.num_factors()
        )));
    }
    if shape.total_dim() != rho_abc.dim() {
        return Err(Error::ShapeMismatch(format!(
            "shape covers dimension {} but the state has {}",
            shape.total_dim(),
            rho_abc.dim()
        )));
    }
    let m = rho_abc.matrix();
    let h_ab = entropy_of_matrix(&partial_trace(m, shape, &[0, 1])?)?;
    let h_bc = entropy_of_matrix(&partial_trace(m, shape, &[1, 2])?)?;
    let h_b = entropy_of_matrix(&partial_trace(m, shape, &[1])?)?;
    let h_abc = von_neumann_entropy(rho_abc);

    let lhs = h_abc + h_b;
    let rhs = h_ab + h_bc;
    let margin = rhs - lhs;
    Ok(CheckResult {
        name: "ssa",
        passed: margin >= -tol,
        lhs,
        rhs,
        margin,
        tolerance: tol,
        seed: None,
    })
}

/// The purification norm defect |‖ψ‖ − 1| of a pair; zero for every valid
/// channel, nonzero when completeness fails. Diagnostic helper for negative
/// controls.
pub fn purification_norm_defect<T: Scalar>(omega: &LabeledPureState<T>) -> T {
    (omega.norm() - T::one()).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::random_channel;
    use crate::matrix::kron;
    use crate::state::random_state;
    use num_complex::Complex64;

    type M = ComplexMatrix<f64>;
    type D = DensityMatrix<f64>;
    type K = KrausChannel<f64>;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn product(a: &D, b: &D) -> D {
        D::from_matrix(&kron(a.matrix(), b.matrix()), 1e-9).unwrap()
    }

    #[test]
    fn dpi_with_trivial_second_stage_is_equality() {
        let rho: D = random_state(2, 1);
        let phi1: K = random_channel(2, 3, 2, 2).unwrap();
        let eval = evaluate_dpi(&rho, &phi1, &K::identity(3), 1e-9).unwrap();
        assert!(eval.result.passed);
        assert!(eval.result.margin.abs() <= 1e-9);
    }

    #[test]
    fn dpi_qubit_fixture() {
        let rho = D::maximally_mixed(2);
        let eval =
            evaluate_dpi(&rho, &K::identity(2), &K::depolarizing(1.0).unwrap(), 1e-9).unwrap();
        assert!(eval.result.passed);
        assert!((eval.result.lhs + 1.0).abs() <= 1e-9);
        assert!((eval.result.rhs - 1.0).abs() <= 1e-9);
        assert!((eval.result.margin - 2.0).abs() <= 1e-9);
        assert!((eval.lhs_compose - eval.lhs_purification).abs() <= 1e-8);
        assert!((eval.rhs_direct - eval.rhs_purification).abs() <= 1e-8);
    }

    #[test]
    fn dpi_across_dimension_changing_chain() {
        let rho: D = random_state(2, 3);
        let phi1 = K::isometry_embed(2, 3).unwrap();
        let phi2: K = random_channel(3, 2, 3, 4).unwrap();
        let r = check_dpi(&rho, &phi1, &phi2, 1e-9).unwrap();
        assert!(r.passed);
        assert!(r.margin >= -1e-9);
    }

    #[test]
    fn dpi_rejects_mismatched_dims() {
        let rho: D = random_state(2, 5);
        let phi1: K = random_channel(2, 3, 2, 6).unwrap();
        let phi2: K = random_channel(2, 2, 2, 7).unwrap();
        assert!(matches!(
            check_dpi(&rho, &phi1, &phi2, 1e-9),
            Err(Error::DimMismatch(_))
        ));
    }

    #[test]
    fn subadditivity_is_equality_on_products() {
        let rho1: D = random_state(2, 8);
        let rho2: D = random_state(3, 9);
        let phi1: K = random_channel(2, 2, 2, 10).unwrap();
        let phi2: K = random_channel(3, 2, 3, 11).unwrap();
        let r = check_subadditivity(&product(&rho1, &rho2), &phi1, &phi2, 1e-9).unwrap();
        assert!(r.passed);
        assert!(r.margin.abs() <= 1e-9);
    }

    #[test]
    fn subadditivity_on_entangled_input() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = D::pure(&[c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)], 1e-10).unwrap();
        let r = check_subadditivity(&bell, &K::identity(2), &K::identity(2), 1e-9).unwrap();
        assert!(r.passed);
        assert!(r.margin >= -1e-9);
    }

    #[test]
    fn subadditivity_on_random_entangled_inputs() {
        for seed in 0..5u64 {
            let rho12: D = random_state(4, 20 + seed);
            let phi1: K = random_channel(2, 3, 2, 30 + seed).unwrap();
            let phi2: K = random_channel(2, 2, 3, 40 + seed).unwrap();
            let r = check_subadditivity(&rho12, &phi1, &phi2, 1e-9).unwrap();
            assert!(r.passed, "seed {seed}");
        }
    }

    #[test]
    fn subadditivity_rejects_mismatched_dims() {
        let rho: D = random_state(5, 12);
        let phi: K = random_channel(2, 2, 2, 13).unwrap();
        assert!(matches!(
            check_subadditivity(&rho, &phi, &phi, 1e-9),
            Err(Error::DimMismatch(_))
        ));
    }

    #[test]
    fn marginal_consistency_on_random_triples() {
        for seed in 0..5u64 {
            let rho: D = random_state(3, 50 + seed);
            let phi1: K = random_channel(3, 2, 3, 60 + seed).unwrap();
            let phi2: K = random_channel(2, 4, 2, 70 + seed).unwrap();
            let r = check_marginal_consistency(&rho, &phi1, &phi2, 1e-10).unwrap();
            assert!(r.passed, "seed {seed}: margin {}", r.margin);
        }
    }

    #[test]
    fn marginal_consistency_negative_control() {
        // A second stage that is not trace preserving breaks the identity;
        // the check must notice rather than normalize it away.
        let rho: D = random_state(2, 14);
        let phi1: K = random_channel(2, 2, 2, 15).unwrap();
        let broken = K::from_kraus_unchecked(vec![M::identity(2).scale_re(0.9)]);
        let r = check_marginal_consistency(&rho, &phi1, &broken, 1e-10).unwrap();
        assert!(!r.passed);
        assert!(r.margin > 1e-10);
    }

    #[test]
    fn exchange_identity_for_identity_channel() {
        let rho: D = random_state(2, 16);
        let r = check_exchange_identity(&rho, &K::identity(2), 1e-10).unwrap();
        assert!(r.passed);
        assert!(r.margin <= 1e-12);
    }

    #[test]
    fn exchange_identity_for_random_pair() {
        let rho: D = random_state(3, 17);
        let phi: K = random_channel(3, 2, 4, 18).unwrap();
        let r = check_exchange_identity(&rho, &phi, 1e-10).unwrap();
        assert!(r.passed);
        assert!((r.lhs - r.rhs).abs() <= 1e-9);
    }

    #[test]
    fn exchange_identity_for_pure_input() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let rho = D::pure(&[c(s, 0.0), c(0.0, -s)], 1e-10).unwrap();
        let phi: K = random_channel(2, 3, 2, 19).unwrap();
        let r = check_exchange_identity(&rho, &phi, 1e-10).unwrap();
        assert!(r.passed);
        // With a rank-1 input, H(exchange) equals the output entropy.
        let h_out = von_neumann_entropy(&phi.apply(&rho).unwrap());
        assert!((r.lhs - h_out).abs() <= 1e-9);
    }

    #[test]
    fn ssa_on_products_is_tight() {
        let a: D = random_state(2, 80);
        let b: D = random_state(2, 81);
        let cc: D = random_state(2, 82);
        let rho = product(&product(&a, &b), &cc);
        let shape = FactorShape::new(&[2, 2, 2]).unwrap();
        let r = check_strong_subadditivity(&rho, &shape, 1e-9).unwrap();
        assert!(r.passed);
        assert!(r.margin.abs() <= 1e-9);
    }

    #[test]
    fn ssa_on_random_states() {
        for (seed, dims) in [(83u64, [2usize, 2, 2]), (84, [2, 3, 2]), (85, [3, 2, 2])] {
            let rho: D = random_state(dims.iter().product(), seed);
            let shape = FactorShape::new(&dims).unwrap();
            let r = check_strong_subadditivity(&rho, &shape, 1e-9).unwrap();
            assert!(r.passed, "seed {seed}");
        }
    }

    #[test]
    fn ssa_on_ghz_state() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = vec![c(0.0, 0.0); 8];
        amps[0] = c(s, 0.0);
        amps[7] = c(s, 0.0);
        let ghz = D::pure(&amps, 1e-10).unwrap();
        let shape = FactorShape::new(&[2, 2, 2]).unwrap();
        let r = check_strong_subadditivity(&ghz, &shape, 1e-9).unwrap();
        assert!(r.passed);
        // H(AB) = H(BC) = H(B) = 1 and H(ABC) = 0.
        assert!((r.margin - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn ssa_rejects_bad_shapes() {
        let rho: D = random_state(4, 86);
        assert!(matches!(
            check_strong_subadditivity(&rho, &FactorShape::new(&[2, 2]).unwrap(), 1e-9),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            check_strong_subadditivity(&rho, &FactorShape::new(&[2, 2, 2]).unwrap(), 1e-9),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn broken_channel_shows_up_as_norm_defect() {
        let rho: D = random_state(2, 87);
        let broken = K::from_kraus_unchecked(vec![M::identity(2).scale_re(0.9)]);
        let omega = purify_pair(&rho, &broken).unwrap();
        assert!(purification_norm_defect(&omega) > 1e-2);
    }
}
