use planewave_core::dirac::{solve_dirac, theta_residual, EMPotentialField};
use planewave_core::momentum::{closed_form_distribution, hydrogen_momentum_distribution};
use planewave_core::schrodinger::{solve_eigen, solve_hydrogen_radial, PotentialField};
use planewave_core::verify::{energy_breakdown, verify_solution};
use planewave_core::{make_grid, SPEED_OF_LIGHT};

#[test]
fn solved_hydrogen_momentum_distribution() {
    let sol = solve_hydrogen_radial(2048, 40.0, 1).unwrap();
    let dist = hydrogen_momentum_distribution(&sol.states()[0]).unwrap();
    assert!(dist.max_relative_error(5.0) < 1e-3, "{}", dist.max_relative_error(5.0));
    assert!(dist.amplitude.windows(2).all(|w| w[1] < w[0]));
    assert!((dist.normalization_check - 1.0).abs() < 1e-4);
    let exact = closed_form_distribution(1.0).unwrap();
    assert!((exact.normalization_check - 1.0).abs() < 1e-4);
}

#[test]
fn hydrogen_states_satisfy_averaged_relation() {
    let sol = solve_hydrogen_radial(2048, 40.0, 3).unwrap();
    for (n, c) in verify_solution(&sol).unwrap().iter().enumerate() {
        assert!(c.breakdown.passes(), "state {n}: {:?}", c.breakdown);
        assert!(c.residual.passes(sol.energies()[n]));
    }
    // virial theorem for the ground state: <T> = -E
    let b = verify_solution(&sol).unwrap()[0].breakdown;
    assert!((b.kinetic_avg - 0.5).abs() < 0.01);
    assert!((b.potential_avg + 1.0).abs() < 0.01);
}

#[test]
fn smooth_well_non_relativistic_limit() {
    let g = make_grid(1, 128, 20.0).unwrap();
    let (depth, sigma, q) = (0.3, 1.0, -1.0);
    let a0: Vec<f64> = (0..g.len())
        .map(|j| {
            let x = g.position(j)[0];
            depth / (-q) * (-x * x / (2.0 * sigma * sigma)).exp()
        })
        .collect();
    let pot = EMPotentialField::new(g, a0, vec![0.0; g.len()], q, "gaussian").unwrap();
    let schr = PotentialField::new(g, pot.potential_energy(), "gaussian").unwrap();
    let s = solve_eigen(&schr, 1.0, 1).unwrap();
    let e_s = s.energies()[0];
    let p_typ = (2.0 * energy_breakdown(&s.states()[0], &schr, 1.0).unwrap().kinetic_avg).sqrt();
    let tolerance = 10.0 * (p_typ / SPEED_OF_LIGHT).powi(2);

    for c in [SPEED_OF_LIGHT, 0.25 * SPEED_OF_LIGHT] {
        let d = solve_dirac(&pot, 1.0, c, 1).unwrap();
        let e_d = d.energies()[0] - d.rest_energy();
        let rel = ((e_d - e_s) / e_s).abs();
        let tol = 10.0 * (p_typ / c).powi(2);
        assert!(rel < tol, "c = {c}: {rel} vs {tol}");
        let r = theta_residual(&d.states()[0], &pot, 1.0, c).unwrap();
        assert!(r.pointwise_l2 < 1e-8 * c * c);
    }
    assert!(tolerance < 1e-4);
}
