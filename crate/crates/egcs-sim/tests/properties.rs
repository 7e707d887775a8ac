//! Property tests over the Fock-space algebra, probe families, and optics.

use egcs_sim::fock::{
    displaced_number_state, displacement_expm, displacement_safe_len, fock_state, two_mode,
    MultiModeState, StateVector, TruncationDim,
};
use egcs_sim::metrology::phase_generator;
use egcs_sim::optics::{bs_transform, generate_egcs_n1, polarizer_45};
use egcs_sim::states::{apply_phase, ecs, egcs, noon};
use ndarray::{Array1, ArrayD, IxDyn};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn adim(n: u32, a: f64) -> TruncationDim {
    TruncationDim::adequate_for(n, a)
}

/// Arbitrary complex amplitude in a disk.
fn complex_in_disk(radius: f64) -> impl Strategy<Value = Complex64> {
    (0.0..radius, 0.0..std::f64::consts::TAU).prop_map(|(r, phi)| Complex64::from_polar(r, phi))
}

fn random_two_mode(d: usize) -> impl Strategy<Value = MultiModeState> {
    proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), d * d).prop_map(move |vals| {
        let amps = Array1::from_iter(vals.iter().map(|&(re, im)| c(re, im)))
            .into_shape_with_order(IxDyn(&[d, d]))
            .unwrap();
        MultiModeState::from_amplitudes(vec!["1".into(), "2".into()], amps)
            .unwrap()
            .normalize()
            .0
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn displaced_state_matches_expm_route(
        n in 0u32..=10,
        alpha in complex_in_disk(5.0),
    ) {
        let dim = adim(n, alpha.norm());
        let via_laguerre = displaced_number_state(n, alpha, dim).unwrap();
        let via_expm = displacement_expm(alpha, dim)
            .unwrap()
            .apply(&fock_state(n, dim).unwrap())
            .unwrap();
        let safe = displacement_safe_len(dim, alpha.norm()).max(n as usize + 1);
        let mut worst = 0.0f64;
        for m in 0..safe {
            worst = worst.max((via_laguerre.amp(m) - via_expm.amp(m)).norm());
        }
        prop_assert!(worst <= 1e-8, "worst amplitude deviation {worst:.3e}");
        // the full states agree as vectors too at these scales
        prop_assert!(via_laguerre.fidelity(&via_expm).unwrap() >= 1.0 - 1e-10);
    }

    #[test]
    fn tensor_norm_is_multiplicative(
        a in complex_in_disk(1.5),
        b in complex_in_disk(1.5),
        scale in 0.3..2.0f64,
    ) {
        let d = adim(0, 1.5);
        let x = displaced_number_state(0, a, d).unwrap().scaled(c(scale, 0.0));
        let y = displaced_number_state(0, b, d).unwrap();
        let t = two_mode(&x, &y).unwrap();
        prop_assert!((t.norm() - x.norm() * y.norm()).abs() <= 1e-10);
    }

    #[test]
    fn mode_swap_preserves_norm_and_is_involutive(psi in random_two_mode(6)) {
        let swapped = psi.swap_modes(0, 1).unwrap();
        prop_assert!((swapped.norm() - psi.norm()).abs() <= 1e-10);
        let back = swapped.swap_modes(0, 1).unwrap();
        prop_assert!(back.fidelity(&psi).unwrap() >= 1.0 - 1e-12);
    }

    #[test]
    fn beam_splitter_preserves_norm(psi in random_two_mode(7)) {
        let out = bs_transform(&psi).unwrap();
        prop_assert!((out.norm() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn phase_encoding_is_additive_and_isometric(
        n in 0u32..=3,
        alpha in complex_in_disk(2.0),
        phi1 in -3.0..3.0f64,
        phi2 in -3.0..3.0f64,
    ) {
        let dim = adim(n, alpha.norm());
        let s = egcs(n, alpha, dim).unwrap();
        let once = apply_phase(&s, phi1).unwrap();
        prop_assert!((once.norm() - 1.0).abs() <= 1e-12);
        let chained = apply_phase(&once, phi2).unwrap();
        let direct = apply_phase(&s, phi1 + phi2).unwrap();
        prop_assert!(chained.fidelity(&direct).unwrap() >= 1.0 - 1e-12);
    }

    #[test]
    fn egcs_is_exchange_symmetric_with_zero_mean_generator(
        n in 0u32..=4,
        alpha in complex_in_disk(3.0),
    ) {
        let dim = adim(n, alpha.norm());
        let s = egcs(n, alpha, dim).unwrap();
        let swapped = s.swap_modes(0, 1).unwrap();
        prop_assert!(s.fidelity(&swapped).unwrap() >= 1.0 - 1e-12);
        let mean = phase_generator(dim).expectation(&s).unwrap();
        prop_assert!(mean.norm() <= 1e-10, "<H> = {mean}");
    }

    #[test]
    fn pipeline_fidelity_is_phase_invariant(
        mag in 0.1..1.5f64,
        theta in 0.0..std::f64::consts::TAU,
    ) {
        let dim = adim(1, mag);
        let base = generate_egcs_n1(c(mag, 0.0), dim).unwrap();
        let rotated = generate_egcs_n1(Complex64::from_polar(mag, theta), dim).unwrap();
        prop_assert!(
            (base.fidelity_to_target - rotated.fidelity_to_target).abs() <= 1e-9
        );
    }

    #[test]
    fn polarizer_is_idempotent_on_packet_states(
        h_amp in complex_in_disk(1.0),
        v_amp in complex_in_disk(1.0),
        m in 1usize..4,
    ) {
        // per-port superposition of vacuum and an m-photon packet in H or V
        let d = 5usize;
        let mut amps = ArrayD::<Complex64>::zeros(IxDyn(&[d, d, d, d]));
        amps[IxDyn(&[0, 0, 0, 0])] = c(0.5, 0.0);
        amps[IxDyn(&[m, 0, 0, 0])] = h_amp;
        amps[IxDyn(&[0, m, 0, 0])] = v_amp;
        amps[IxDyn(&[0, 0, m, 0])] = h_amp * v_amp;
        let labels = ["c_H", "c_V", "d_H", "d_V"].iter().map(|s| s.to_string()).collect();
        let psi = MultiModeState::from_amplitudes(labels, amps).unwrap().normalize().0;
        match polarizer_45(&psi) {
            Ok((once, _)) => {
                let (twice, success2) = polarizer_45(&once).unwrap();
                prop_assert!(twice.fidelity(&once).unwrap() >= 1.0 - 1e-12);
                prop_assert!((success2 - 1.0).abs() <= 1e-12);
            }
            Err(egcs_sim::Error::ZeroNorm) => {} // fully anti-diagonal input
            Err(other) => return Err(TestCaseError::fail(format!("{other}"))),
        }
    }
}

#[test]
fn family_identities_across_grid() {
    for n in 1..=5u32 {
        for &mag in &[0.1, 0.5, 1.0, 2.0, 5.0] {
            let dim = adim(n, mag);
            let a = egcs(n, Complex64::ZERO, dim).unwrap();
            let b = noon(n, dim).unwrap();
            assert!(a.fidelity(&b).unwrap() >= 1.0 - 1e-12, "noon identity at n = {n}");
            let dim0 = adim(0, mag);
            let x = egcs(0, c(mag, 0.0), dim0).unwrap();
            let y = ecs(c(mag, 0.0), dim0).unwrap();
            assert!(x.fidelity(&y).unwrap() >= 1.0 - 1e-12, "ecs identity at |a| = {mag}");
        }
    }
}

#[test]
fn ladder_commutator_across_dims() {
    use egcs_sim::fock::OperatorMatrix;
    for d in [2usize, 5, 16, 64, 200] {
        let td = TruncationDim::new(d).unwrap();
        let a = OperatorMatrix::annihilation(td);
        let adag = OperatorMatrix::creation(td);
        let comm = a.dot(&adag).matrix() - adag.dot(&a).matrix();
        for i in 0..d - 1 {
            for j in 0..d - 1 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (comm[[i, j]] - c(want, 0.0)).norm() <= 1e-12,
                    "commutator defect at dim {d}"
                );
            }
        }
    }
}

#[test]
fn unitary_application_preserves_norm() {
    // displacement applied to a generic state vector
    let dim = TruncationDim::new(120).unwrap();
    let alpha = c(1.2, -0.4);
    let dm = egcs_sim::fock::displacement(alpha, dim).unwrap();
    let mut amps = Array1::<Complex64>::zeros(120);
    for (k, slot) in amps.iter_mut().enumerate() {
        // keep support away from the cutoff so truncation cannot leak
        if k < 40 {
            *slot = c((k as f64 * 0.7).sin(), (k as f64 * 0.3).cos());
        }
    }
    let psi = StateVector::from_amplitudes(amps).unwrap().normalize().0;
    let out = dm.apply(&psi).unwrap();
    assert!((out.norm() - 1.0).abs() <= 1e-10);
}
