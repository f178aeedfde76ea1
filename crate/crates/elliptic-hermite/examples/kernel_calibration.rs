//! The level-n transform kernel: series against closed form (ratio
//! calibration), the flat-limit degeneration, the integral transform, and
//! the two-photon coherent state kernel.
//!
//! Run with: `cargo run --release --example kernel_calibration`

use elliptic_hermite::hermite::{phi_normalized, rescaled_hermite_poly, sqrt_factorial};
use elliptic_hermite::kernels::{
    kernel_w_closed, kernel_w_series, tpcs_kernel, tpcs_parameters, tpcs_reference,
    transform_apply, KernelSpec,
};
use elliptic_hermite::quadrature::QuadratureGrid;
use num_complex::Complex64;
use rand::Rng;

fn main() -> elliptic_hermite::Result<()> {
    let tau = 0.5;
    let mut rng = elliptic_hermite::ginibre::rng_for(42, 0);
    let mut probe = |r: f64| {
        Complex64::new(
            r * (2.0 * rng.gen::<f64>() - 1.0),
            r * (2.0 * rng.gen::<f64>() - 1.0),
        )
    };

    // calibrate the closed/series ratio per level: it is constant in (z, w)
    // and comes out as 1 in this normalization
    println!("measured closed/series calibration constants at τ = {tau}:");
    for n in 0..=3usize {
        let probes: Vec<_> = (0..100).map(|_| (probe(1.5), probe(1.5))).collect();
        let mut spec = KernelSpec::new(tau, n)?;
        let (mean, spread) = spec.calibrate(&probes, 200)?;
        println!(
            "    n = {n}: c = {:+.12} {:+.2e}i, spread {spread:.2e}",
            mean.re, mean.im
        );
    }

    // one sample value of both forms
    let (z, w) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    let closed = kernel_w_closed(0.5, 1, z, w)?;
    let series = kernel_w_series(0.5, 1, z, w, 200)?;
    println!(
        "\nW(1, 0) at level 1: closed {:.9}, series {:.9} ({} terms)",
        closed.re, series.value.re, series.terms_used
    );

    // the transform maps the holomorphic basis onto the level basis
    let grid = QuadratureGrid::elliptic(64, tau)?;
    let level = 2usize;
    println!("\nT[h_τ,k] / φ_(k,{level}) proportionality constants:");
    for k in 0..=4usize {
        let hk = rescaled_hermite_poly(k, tau)?;
        let norm = sqrt_factorial(k);
        let z0 = Complex64::new(0.7, -0.4);
        let image = transform_apply(tau, level, &grid, |u| hk.eval(u) / norm, z0)?;
        let target = phi_normalized(k, level, z0)?;
        let ratio = image / target;
        println!("    k = {k}: {:+.6} {:+.2e}i", ratio.re, ratio.im);
    }

    // two-photon coherent state kernel: hyperbolic parameters and identity
    let (a, b) = tpcs_parameters(tau)?;
    println!(
        "\nTPCS parameters at τ = {tau}: a = {a:.12}, b = {b:.12}, a²-b²-1 = {:+.2e}",
        a * a - b * b - 1.0
    );
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let (z, w) = (probe(1.5), probe(1.5));
        let lhs = tpcs_kernel(tau, z, w)?;
        let rhs = tpcs_reference(tau, z, w)?;
        worst = worst.max((lhs - rhs).norm() / rhs.norm().max(1e-30));
    }
    println!("TPCS kernel vs ground-level kernel: worst relative deviation {worst:.2e}");
    Ok(())
}
