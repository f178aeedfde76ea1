//! The operator picture: Bogoliubov-squeezed ladder operators, their
//! commutators, the squeezed ground state, and the three-route construction
//! of the squeezed polynomials.
//!
//! Run with: `cargo run --release --example ladder_construction`

use elliptic_hermite::hermite::{sqrt_factorial, squeezed_hermite, squeezed_hermite_via_matrix};
use elliptic_hermite::operators::{ground_state, ladder_construct, LadderOperator};
use num_complex::Complex64;

fn main() -> elliptic_hermite::Result<()> {
    let tau = 0.55f64;
    let mu = tau.atanh();

    // commutators survive the squeezing
    let (b_mu, b_mu_star) = LadderOperator::bogoliubov(mu)?;
    let unit = b_mu.commutator(&b_mu_star);
    println!("[B_mu, B_mu*] has {} term(s):", unit.num_terms());
    for t in unit.terms() {
        println!(
            "    {:+.3}{:+.3}i · z^{} z̄^{} ∂_z^{} ∂_z̄^{}",
            t.coeff.re, t.coeff.im, t.z_pow, t.zbar_pow, t.dz, t.dzbar
        );
    }

    // the squeezed ground state is annihilated by the squeezed lowering
    let psi = ground_state(mu)?;
    let hit = b_mu.apply(&psi).poly.max_coeff_norm();
    println!("‖B_mu ψ_mu‖ (coefficient space) = {hit:.2e}");

    // ladder route → squeezed polynomials: apply the creation power, then
    // stretch the variables by 1/√(1-τ²) and undo the 1/√(n!) normalization
    let stretch = Complex64::new(1.0 / (1.0 - tau * tau).sqrt(), 0.0);
    println!("\nthree routes to H_{{m,n}}(z, z̄; τ), τ = {tau}:");
    for (m, n) in [(2usize, 1usize), (3, 3), (5, 2)] {
        let direct = squeezed_hermite(m, n, tau)?;
        let ladder = ladder_construct(m, n, mu)?
            .poly
            .scale_arguments(stretch, stretch)
            .scale(Complex64::new(sqrt_factorial(n), 0.0));
        let matrix = squeezed_hermite_via_matrix(m, n, tau)?;
        let scale = direct.max_coeff_norm();
        println!(
            "    (m, n) = ({m}, {n}): |closed - ladder| = {:.2e}, |closed - matrix| = {:.2e}",
            direct.sub(&ladder).max_coeff_norm() / scale,
            direct.sub(&matrix).max_coeff_norm() / scale,
        );
    }

    // Landau levels: the number operator sees the level index
    let hl = LadderOperator::landau_hamiltonian();
    for n in 0..=3 {
        let state = ladder_construct(2, n, mu)?;
        let acted = hl.apply(&state).poly;
        let residual = acted
            .sub(&state.poly.scale(Complex64::new(n as f64, 0.0)))
            .max_coeff_norm();
        println!("H_L ψ_2^({n}) - {n} ψ_2^({n}): {residual:.2e}");
    }
    Ok(())
}
