//! Release gate: one test per acceptance criterion, each printing a summary
//! line (visible with --nocapture). Criterion 9 (the CLI contract) lives in
//! the CLI package's test suite.

use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qpair::checks::{
    check_exchange_identity, check_marginal_consistency, check_strong_subadditivity,
    check_subadditivity, evaluate_dpi,
};
use qpair::info::info_report;
use qpair::state::DensityMatrix as GenericDensity;
use qpair::{
    kron, partial_trace, purify_pair, purify_pair_product, random_channel_with, random_state_with,
    ComplexMatrix, DensityMatrix, FactorShape, InfoReport, KrausChannel,
};

const FIXTURE_TOL: f64 = 1e-9;
const IDENTITY_TOL: f64 = 1e-10;
const INEQUALITY_TOL: f64 = 1e-9;
const ROUTE_TOL: f64 = 1e-8;

const PAIR_SEED: u64 = 0x5041_4952; // criterion 2 and 3 share these pairs
const TRIPLE_SEED: u64 = 0x5452_4950; // criterion 4 and 5 share these triples
const SUBADD_SEED: u64 = 0x5355_4241;
const INVARIANCE_SEED: u64 = 0x494e_5641;
const SSA_SEED: u64 = 0x5353_4131;

fn trial_rng(base: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(base.wrapping_add(trial as u64))
}

fn draw_channel(din: usize, dout: usize, n_max: usize, rng: &mut ChaCha8Rng) -> KrausChannel {
    let n_lo = din.div_ceil(dout).max(1);
    let n = rng.random_range(n_lo..=n_max.max(n_lo));
    random_channel_with(din, dout, n, rng).unwrap()
}

/// The 200 (ρ, Φ) pairs shared by criteria 2 and 3.
fn sample_pair(trial: usize) -> (DensityMatrix, KrausChannel) {
    let mut rng = trial_rng(PAIR_SEED, trial);
    let din = rng.random_range(2..=4);
    let dout = rng.random_range(2..=4);
    let rho = random_state_with(din, &mut rng);
    let phi = draw_channel(din, dout, 5, &mut rng);
    (rho, phi)
}

/// The 500 (ρ, Φ₁, Φ₂) triples shared by criteria 4 and 5, with fixed
/// dimension-changing chains woven in.
fn sample_triple(trial: usize) -> (DensityMatrix, KrausChannel, KrausChannel) {
    let mut rng = trial_rng(TRIPLE_SEED, trial);
    let (din, dmid, dout) = match trial % 4 {
        0 => (2, 3, 2),
        1 => (3, 2, 4),
        _ => (
            rng.random_range(2..=4),
            rng.random_range(2..=4),
            rng.random_range(2..=4),
        ),
    };
    let rho = random_state_with(din, &mut rng);
    let phi1 = draw_channel(din, dmid, 5, &mut rng);
    let phi2 = draw_channel(dmid, dout, 5, &mut rng);
    (rho, phi1, phi2)
}

fn scalar_gap(a: &InfoReport, b: &InfoReport) -> f64 {
    [
        a.h_in - b.h_in,
        a.h_out - b.h_out,
        a.h_exchange - b.h_exchange,
        a.mutual - b.mutual,
        a.coherent - b.coherent,
    ]
    .into_iter()
    .map(f64::abs)
    .fold(0.0, f64::max)
}

fn exchange_closed_form(rho: &DensityMatrix, phi: &KrausChannel) -> ComplexMatrix {
    let n = phi.n_kraus();
    ComplexMatrix::from_fn(n, n, |a, b| {
        phi.kraus()[a]
            .matmul(rho.matrix())
            .matmul(&phi.kraus()[b].adjoint())
            .trace()
    })
}

#[test]
fn criterion_1_fixture_exactness() {
    let start = Instant::now();
    let half = DensityMatrix::maximally_mixed(2);

    let r = info_report(&half, &KrausChannel::identity(2)).unwrap();
    for (value, expected) in [
        (r.h_in, 1.0),
        (r.h_out, 1.0),
        (r.h_exchange, 0.0),
        (r.mutual, 2.0),
        (r.coherent, 1.0),
    ] {
        assert!(
            (value - expected).abs() <= FIXTURE_TOL,
            "identity fixture: got {value}, expected {expected}"
        );
    }

    let r = info_report(&half, &KrausChannel::depolarizing(1.0).unwrap()).unwrap();
    for (value, expected) in [
        (r.h_in, 1.0),
        (r.h_out, 1.0),
        (r.h_exchange, 2.0),
        (r.mutual, 0.0),
        (r.coherent, -1.0),
    ] {
        assert!(
            (value - expected).abs() <= FIXTURE_TOL,
            "depolarizing fixture: got {value}, expected {expected}"
        );
    }

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 1.0, "fixtures took {elapsed:.3}s, budget 1s");
    println!("criterion 1 (fixture exactness): PASS in {elapsed:.3}s");
}

#[test]
fn criterion_2_closed_form_marginals() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for trial in 0..200 {
        let (rho, phi) = sample_pair(trial);
        let omega = purify_pair(&rho, &phi).unwrap();

        let spec = rho.spectral();
        let dev_r = omega
            .reduced_matrix(&["R"])
            .unwrap()
            .max_abs_diff(&ComplexMatrix::from_real_diag(spec.eigenvalues()));
        let dev_q = omega
            .reduced_matrix(&["Q"])
            .unwrap()
            .max_abs_diff(phi.apply(&rho).unwrap().matrix());
        let dev_e = omega
            .reduced_matrix(&["E"])
            .unwrap()
            .max_abs_diff(&exchange_closed_form(&rho, &phi));

        let dev = dev_r.max(dev_q).max(dev_e);
        assert!(
            dev <= IDENTITY_TOL,
            "trial {trial}: closed-form marginal deviation {dev:.3e}"
        );
        worst = worst.max(dev);
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 10.0, "marginals took {elapsed:.3}s, budget 10s");
    println!(
        "criterion 2 (closed-form marginals): PASS, 200 pairs, worst deviation {worst:.3e}, in {elapsed:.3}s"
    );
}

#[test]
fn criterion_3_exchange_identity() {
    let mut worst_dev = 0.0f64;
    let mut worst_dh = 0.0f64;
    for trial in 0..200 {
        let (rho, phi) = sample_pair(trial);
        let r = check_exchange_identity(&rho, &phi, IDENTITY_TOL).unwrap();
        assert!(
            r.passed,
            "trial {trial}: exchange identity margin {:.3e}",
            r.margin
        );
        let dh = (r.lhs - r.rhs).abs();
        assert!(dh <= 1e-9, "trial {trial}: entropy gap {dh:.3e}");
        worst_dev = worst_dev.max(r.margin);
        worst_dh = worst_dh.max(dh);
    }
    println!(
        "criterion 3 (exchange identity): PASS, 200 pairs, worst folded deviation {worst_dev:.3e}, worst entropy gap {worst_dh:.3e}"
    );
}

#[test]
fn criterion_4_dpi_theorem() {
    let start = Instant::now();
    let mut worst_margin = f64::INFINITY;
    let mut worst_route = 0.0f64;
    for trial in 0..500 {
        let (rho, phi1, phi2) = sample_triple(trial);
        let eval = evaluate_dpi(&rho, &phi1, &phi2, INEQUALITY_TOL).unwrap();
        assert!(
            eval.result.margin >= -INEQUALITY_TOL,
            "trial {trial}: margin {:.3e}",
            eval.result.margin
        );
        let route = (eval.lhs_compose - eval.lhs_purification)
            .abs()
            .max((eval.rhs_direct - eval.rhs_purification).abs());
        assert!(route <= ROUTE_TOL, "trial {trial}: route gap {route:.3e}");
        assert!(eval.result.passed, "trial {trial}");
        worst_margin = worst_margin.min(eval.result.margin);
        worst_route = worst_route.max(route);
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 60.0, "dpi took {elapsed:.3}s, budget 60s");
    println!(
        "criterion 4 (data processing inequality): PASS, 500 triples, worst margin {worst_margin:.3e}, worst route gap {worst_route:.3e}, in {elapsed:.3}s"
    );
}

#[test]
fn criterion_5_dpi_marginal_identity() {
    let mut worst = 0.0f64;
    for trial in 0..500 {
        let (rho, phi1, phi2) = sample_triple(trial);
        let r = check_marginal_consistency(&rho, &phi1, &phi2, IDENTITY_TOL).unwrap();
        assert!(
            r.passed && r.margin < IDENTITY_TOL,
            "trial {trial}: marginal deviation {:.3e}",
            r.margin
        );
        worst = worst.max(r.margin);
    }

    // Negative control: a non-trace-preserving second stage must fail.
    let mut rng = trial_rng(TRIPLE_SEED, 1_000_000);
    let rho = random_state_with(2, &mut rng);
    let phi1 = draw_channel(2, 2, 3, &mut rng);
    let broken = KrausChannel::from_kraus_unchecked(vec![
        ComplexMatrix::identity(2).scale(Complex64::new(0.9, 0.0))
    ]);
    let control = check_marginal_consistency(&rho, &phi1, &broken, IDENTITY_TOL).unwrap();
    assert!(!control.passed, "corrupted channel slipped through");

    println!(
        "criterion 5 (marginal identity): PASS, 500 triples, worst deviation {worst:.3e}, negative control rejected"
    );
}

#[test]
fn criterion_6_subadditivity_theorem() {
    let mut worst_margin = f64::INFINITY;
    let mut worst_product = 0.0f64;
    let mut worst_identity = 0.0f64;
    for trial in 0..300 {
        let mut rng = trial_rng(SUBADD_SEED, trial);
        let d1 = rng.random_range(2..=3);
        let d2 = rng.random_range(2..=3);
        let product_input = trial % 3 == 0;
        let rho12 = if product_input {
            let a: DensityMatrix = random_state_with(d1, &mut rng);
            let b: DensityMatrix = random_state_with(d2, &mut rng);
            DensityMatrix::from_matrix(&kron(a.matrix(), b.matrix()), 1e-9).unwrap()
        } else {
            random_state_with(d1 * d2, &mut rng)
        };
        let phi1 = draw_channel(d1, rng.random_range(2..=3), 3, &mut rng);
        let phi2 = draw_channel(d2, rng.random_range(2..=3), 3, &mut rng);

        let r = check_subadditivity(&rho12, &phi1, &phi2, INEQUALITY_TOL).unwrap();
        assert!(r.passed, "trial {trial}: margin {:.3e}", r.margin);
        worst_margin = worst_margin.min(r.margin);
        if product_input {
            assert!(
                r.margin.abs() <= INEQUALITY_TOL,
                "trial {trial}: product input not tight, margin {:.3e}",
                r.margin
            );
            worst_product = worst_product.max(r.margin.abs());
        }

        // Both product marginal identities, on every trial.
        let shape = FactorShape::new(&[d1, d2]).unwrap();
        let rho1 =
            DensityMatrix::from_matrix(&partial_trace(rho12.matrix(), &shape, &[0]).unwrap(), 1e-9)
                .unwrap();
        let rho2 =
            DensityMatrix::from_matrix(&partial_trace(rho12.matrix(), &shape, &[1]).unwrap(), 1e-9)
                .unwrap();
        let omega12 = purify_pair_product(&rho12, &phi1, &phi2).unwrap();
        let omega1 = purify_pair(&rho1, &phi1).unwrap();
        let omega2 = purify_pair(&rho2, &phi2).unwrap();
        let dev1 = omega12
            .reduced_matrix(&["Q1", "E1"])
            .unwrap()
            .max_abs_diff(&omega1.reduced_matrix(&["Q", "E"]).unwrap());
        let dev2 = omega12
            .reduced_matrix(&["Q2", "E2"])
            .unwrap()
            .max_abs_diff(&omega2.reduced_matrix(&["Q", "E"]).unwrap());
        let dev = dev1.max(dev2);
        assert!(
            dev <= IDENTITY_TOL,
            "trial {trial}: product marginal identity deviation {dev:.3e}"
        );
        worst_identity = worst_identity.max(dev);
    }
    println!(
        "criterion 6 (subadditivity): PASS, 300 triples, worst margin {worst_margin:.3e}, worst product margin {worst_product:.3e}, worst marginal deviation {worst_identity:.3e}"
    );
}

#[test]
fn criterion_7_invariance_suite() {
    let mut worst = 0.0f64;
    for trial in 0..100 {
        let mut rng = trial_rng(INVARIANCE_SEED, trial);
        let din = rng.random_range(2..=4);
        let dout = rng.random_range(2..=4);
        let rho: DensityMatrix = random_state_with(din, &mut rng);
        let phi = draw_channel(din, dout, 4, &mut rng);
        let n = phi.n_kraus();
        let base = info_report(&rho, &phi).unwrap();

        // Kraus remix by a random N x N unitary.
        let unitary = random_channel_with(n, n, 1, &mut rng).unwrap();
        let u = &unitary.kraus()[0];
        let remixed: Vec<ComplexMatrix> = (0..n)
            .map(|beta| {
                let mut acc = ComplexMatrix::zeros(dout, din);
                for (alpha, a) in phi.kraus().iter().enumerate() {
                    acc = acc.add(&a.scale(u[(beta, alpha)]));
                }
                acc
            })
            .collect();
        let remix_report =
            info_report(&rho, &KrausChannel::from_kraus(remixed, 1e-8).unwrap()).unwrap();

        // Zero-padding with a vanishing operator.
        let mut padded = phi.kraus().to_vec();
        padded.push(ComplexMatrix::zeros(dout, din));
        let padded_report =
            info_report(&rho, &KrausChannel::from_kraus(padded, 1e-8).unwrap()).unwrap();

        // Eigenbasis permutation: reversed spectral order, same state.
        let spec = rho.spectral();
        let k = spec.rank();
        let vals: Vec<f64> = (0..k).rev().map(|j| spec.eigenvalues()[j]).collect();
        let vecs = ComplexMatrix::from_fn(rho.dim(), k, |i, j| spec.eigenvectors()[(i, k - 1 - j)]);
        let permuted = GenericDensity::from_spectral(&vals, &vecs, 1e-9).unwrap();
        let permuted_report = info_report(&permuted, &phi).unwrap();

        let gap = scalar_gap(&base, &remix_report)
            .max(scalar_gap(&base, &padded_report))
            .max(scalar_gap(&base, &permuted_report));
        assert!(gap <= 1e-9, "trial {trial}: invariance gap {gap:.3e}");
        worst = worst.max(gap);
    }
    println!("criterion 7 (invariance suite): PASS, 100 trials, worst scalar drift {worst:.3e}");
}

#[test]
fn criterion_8_strong_subadditivity_oracle() {
    let mut worst_margin = f64::INFINITY;
    let mut worst_product = 0.0f64;
    for trial in 0..300 {
        let mut rng = trial_rng(SSA_SEED, trial);
        let dims: [usize; 3] = if trial % 2 == 0 { [2, 2, 2] } else { [2, 3, 2] };
        let shape = FactorShape::new(&dims).unwrap();
        let product_input = trial % 3 == 0;
        let rho = if product_input {
            let a: DensityMatrix = random_state_with(dims[0], &mut rng);
            let b: DensityMatrix = random_state_with(dims[1], &mut rng);
            let c: DensityMatrix = random_state_with(dims[2], &mut rng);
            let ab = kron(a.matrix(), b.matrix());
            DensityMatrix::from_matrix(&kron(&ab, c.matrix()), 1e-9).unwrap()
        } else {
            random_state_with(shape.total_dim(), &mut rng)
        };
        let r = check_strong_subadditivity(&rho, &shape, INEQUALITY_TOL).unwrap();
        assert!(r.passed, "trial {trial}: margin {:.3e}", r.margin);
        worst_margin = worst_margin.min(r.margin);
        if product_input {
            assert!(
                r.margin < INEQUALITY_TOL,
                "trial {trial}: product state not tight, margin {:.3e}",
                r.margin
            );
            worst_product = worst_product.max(r.margin.abs());
        }
    }
    println!(
        "criterion 8 (strong subadditivity): PASS, 300 states, worst margin {worst_margin:.3e}, worst product margin {worst_product:.3e}"
    );
}
