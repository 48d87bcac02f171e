//! Heavier truncated-basis checks: large-cutoff agreement with the direct
//! matching solve and the variational ordering across channels and radii.

use hyperadia::adiabatic;
use hyperadia::ritz::{ritz_eigenvalues, RitzBasisSpec};
use hyperadia::{Channel, StepPotential};

const TABLE2_CHANNELS: [(i32, i32, u32); 16] = [
    (0, 0, 0),
    (0, 0, 1),
    (1, 1, 0),
    (0, 0, 2),
    (2, 2, 0),
    (1, 1, 1),
    (0, 1, 0),
    (1, 0, 0),
    (2, 1, 0),
    (1, 2, 0),
    (0, 1, 1),
    (1, 0, 1),
    (2, 0, 0),
    (0, 2, 0),
    (2, 0, 1),
    (0, 2, 1),
];

#[test]
fn large_cutoff_reaches_the_direct_values() {
    let pot = StepPotential::from_lambda_star(10.0).unwrap();
    for (l1, l2, l) in TABLE2_CHANNELS {
        let ch = Channel::new(l1, l2, l);
        let direct = adiabatic::solve(&ch, &pot, 5.0).unwrap();
        let spec = RitzBasisSpec::new(ch, 200).unwrap();
        let ritz = ritz_eigenvalues(&spec, &pot, 5.0).unwrap().v_eff(&ch);
        let gap = ritz - direct.v_eff;
        // measured truncation gaps at this cutoff span 6.4e-11 (fast
        // channels) to 1.86e-7 (the slow l1 = 0 ones with l or l2 large)
        assert!(
            gap > 0.0 && gap < 2.5e-7,
            "{ch}: ritz {ritz} direct {} gap {gap:e}",
            direct.v_eff
        );
    }
}

#[test]
fn upper_bound_at_every_tested_radius_and_cutoff() {
    let pot = StepPotential::from_lambda_star(10.0).unwrap();
    for (l1, l2, l) in [(0, 0, 0), (1, 0, 0), (1, 1, 1), (0, 2, 0)] {
        let ch = Channel::new(l1, l2, l);
        for rho in [2.0, 5.0, 9.0] {
            let direct = adiabatic::solve(&ch, &pot, rho).unwrap();
            let mut prev = f64::INFINITY;
            for n_max in [40, 80, 120] {
                let spec = RitzBasisSpec::new(ch, n_max).unwrap();
                let v = ritz_eigenvalues(&spec, &pot, rho).unwrap().v_eff(&ch);
                assert!(
                    v > direct.v_eff,
                    "{ch} rho={rho} n_max={n_max}: {v} vs {}",
                    direct.v_eff
                );
                assert!(v <= prev + 1e-15, "{ch} rho={rho} n_max={n_max}");
                prev = v;
            }
        }
    }
}

#[test]
fn every_family_in_one_spectrum_is_an_upper_bound() {
    // all eigenvalues of one truncated matrix bound their exact counterparts
    let pot = StepPotential::from_lambda_star(10.0).unwrap();
    let base = Channel::new(1, 1, 0);
    let spec = RitzBasisSpec::new(base, 120).unwrap();
    let spectrum = ritz_eigenvalues(&spec, &pot, 5.0).unwrap();
    for l in 0..6u32 {
        let ch = Channel::new(1, 1, l);
        let direct = adiabatic::solve(&ch, &pot, 5.0).unwrap();
        let lam_ritz = spectrum.eigenvalues[l as usize];
        assert!(
            lam_ritz >= direct.lambda,
            "family l={l}: {lam_ritz} vs {}",
            direct.lambda
        );
    }
}
