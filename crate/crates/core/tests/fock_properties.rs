mod common;

use common::{random_complex_matrix, random_unitary, rng, two_photon_amplitude};
use photonchip::circuit::{assemble_unitary, parse_netlist, Convention};
use photonchip::fock::{enumerate_basis, evolve, permanent, permanent_naive, transition_amplitude, FockState};
use photonchip::interference::v_ideal;
use photonchip::Netlist64;
use proptest::prelude::*;

#[test]
fn fast_permanent_matches_expansion_on_random_matrices() {
    let mut r = rng(2024);
    for trial in 0..200 {
        let n = 1 + trial % 6;
        let m = random_complex_matrix(&mut r, n);
        let fast = permanent(&m).unwrap();
        let slow = permanent_naive(&m).unwrap();
        assert!((fast - slow).norm() < 1e-10, "n={n}: {fast} vs {slow}");
    }
}

#[test]
fn evolution_conserves_probability() {
    let mut r = rng(7);
    for m in 1..=6 {
        for n in 0..=3 {
            let u = random_unitary(&mut r, m);
            for input in enumerate_basis(n, m).unwrap().iter().take(6) {
                let d = evolve(&u, input).unwrap();
                assert!((d.total() - 1.0).abs() < 1e-10, "m={m} n={n} {input}");
                assert!(d.outcomes().iter().all(|o| o.probability >= 0.0));
            }
        }
    }
}

#[test]
fn two_photon_amplitudes_match_hand_formula() {
    let mut r = rng(99);
    let u = random_unitary(&mut r, 4);
    let pairs = [(0, 1), (0, 0), (2, 3), (1, 3), (3, 3)];
    for &inp in &pairs {
        for &out in &pairs {
            let input = FockState::with_photons_in(4, &[inp.0, inp.1]).unwrap();
            let output = FockState::with_photons_in(4, &[out.0, out.1]).unwrap();
            let amp = transition_amplitude(&u, &input, &output).unwrap();
            assert!((amp - two_photon_amplitude(&u, inp, out)).norm() < 1e-14);
        }
    }
}

#[test]
fn hom_coincidence_matches_ideal_visibility() {
    let both = FockState::new(vec![1, 1]);
    for i in 0..=100 {
        let eta = i as f64 / 100.0;
        let net: Netlist64 = parse_netlist(&format!("modes 2\ndc 1 2 {eta}")).unwrap();
        let d = evolve(&assemble_unitary(&net, Convention::Real), &both).unwrap();
        let c_quant = d.probability(&both);
        assert!((c_quant - (2.0 * eta - 1.0).powi(2)).abs() < 1e-12);
        let c_class = eta * eta + (1.0 - eta) * (1.0 - eta);
        assert!((1.0 - c_quant / c_class - v_ideal(eta).unwrap()).abs() < 1e-12, "eta={eta}");
    }
}

#[test]
fn exchange_symmetry_of_symmetric_coupler() {
    for i in 0..=20 {
        let eta = i as f64 / 20.0;
        let fwd: Netlist64 = parse_netlist(&format!("modes 2\ndc 1 2 {eta}")).unwrap();
        let rev: Netlist64 = parse_netlist(&format!("modes 2\ndc 2 1 {eta}")).unwrap();
        let both = FockState::new(vec![1, 1]);
        let pf = evolve(&assemble_unitary(&fwd, Convention::Symmetric), &both).unwrap().probability(&both);
        let pr = evolve(&assemble_unitary(&rev, Convention::Symmetric), &both).unwrap().probability(&both);
        assert!((pf - pr).abs() < 1e-14);
    }
}

#[test]
fn single_precision_evolution() {
    let net: photonchip::circuit::Netlist<f32> = parse_netlist("modes 2\ndc 1 2 0.5").unwrap();
    let both = FockState::new(vec![1, 1]);
    let d = evolve(&assemble_unitary(&net, Convention::Real), &both).unwrap();
    assert!(d.probability(&both) < 1e-6);
    assert!((d.total() - 1.0).abs() < 1e-5);
}

proptest! {
    #[test]
    fn permanent_is_invariant_under_transpose(seed in any::<u64>(), n in 0usize..6) {
        let mut r = rng(seed);
        let m = random_complex_matrix(&mut r, n);
        let a = permanent(&m).unwrap();
        let b = permanent(&m.transpose()).unwrap();
        prop_assert!((a - b).norm() < 1e-9 * (1.0 + a.norm()));
    }

    #[test]
    fn random_unitaries_conserve_probability(seed in any::<u64>(), m in 1usize..=6, n in 0usize..=3) {
        let mut r = rng(seed);
        let u = random_unitary(&mut r, m);
        let basis = enumerate_basis(n, m).unwrap();
        let input = &basis.states()[seed as usize % basis.len()];
        let d = evolve(&u, input).unwrap();
        prop_assert!((d.total() - 1.0).abs() < 1e-10);
    }
}
