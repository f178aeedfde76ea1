//! Planar Gaussian quadrature: masses, moments, and the Gram matrices that
//! certify orthogonality of the polynomial families.
//!
//! Run with: `cargo run --release --example quadrature_gram`

use elliptic_hermite::hermite::{rescaled_hermite_poly, sqrt_factorial, squeezed_hermite};
use elliptic_hermite::quadrature::{elliptic_moment_closed_form, inner_product, QuadratureGrid};
use num_complex::Complex64;

fn main() -> elliptic_hermite::Result<()> {
    let tau = 0.6;
    let grid = QuadratureGrid::elliptic(64, tau)?;

    let mass = grid.integrate(|_| Complex64::new(1.0, 0.0)).re;
    println!(
        "∫ ω_τ dz = {mass:.15} (closed form {:.15})",
        (1.0f64 - tau * tau).sqrt()
    );

    // raw even moments against the closed product of 1D Gaussian moments
    println!("\nmoments ∫ x^(2a) y^(2b) ω_τ dz:");
    for (a, b) in [(1u32, 0u32), (0, 1), (2, 1), (3, 2)] {
        let quad = grid
            .integrate(|z| Complex64::new(z.re.powi(2 * a as i32) * z.im.powi(2 * b as i32), 0.0))
            .re;
        let closed = elliptic_moment_closed_form(a, b, tau)?;
        println!("    (a, b) = ({a}, {b}): quadrature {quad:.12e}, closed {closed:.12e}");
    }

    // the normalized holomorphic family has a diagonal Gram under ω_τ;
    // the diagonal is measured, not assumed
    println!("\nGram of h_τ,k = H_k(·, τ)/√(k!):");
    let h: Vec<_> = (0..=6)
        .map(|k| {
            let p = rescaled_hermite_poly(k, tau).unwrap();
            let norm = sqrt_factorial(k);
            move |z: Complex64| p.eval(z) / norm
        })
        .collect();
    for (j, hj) in h.iter().enumerate() {
        let row: Vec<String> = h
            .iter()
            .map(|hk| {
                let ip = inner_product(hj, hk, tau, &grid).unwrap();
                format!("{:+.2e}", ip.norm())
            })
            .collect();
        println!("    row {j}: [{}]", row.join(", "));
    }

    // squeezed polynomials at a fixed level are orthogonal too
    let mut worst = 0.0f64;
    for n in 0..=3usize {
        let polys: Vec<_> = (0..=6)
            .map(|m| squeezed_hermite(m, n, tau).unwrap())
            .collect();
        for (a, pa) in polys.iter().enumerate() {
            for (b, pb) in polys.iter().enumerate() {
                if a == b {
                    continue;
                }
                let off = inner_product(|z| pa.eval(z), |z| pb.eval(z), tau, &grid)?;
                let da = inner_product(|z| pa.eval(z), |z| pa.eval(z), tau, &grid)?;
                let db = inner_product(|z| pb.eval(z), |z| pb.eval(z), tau, &grid)?;
                worst = worst.max(off.norm() / (da.re * db.re).sqrt());
            }
        }
    }
    println!("\nworst off-diagonal/diagonal ratio over levels 0..=3: {worst:.2e}");
    Ok(())
}
