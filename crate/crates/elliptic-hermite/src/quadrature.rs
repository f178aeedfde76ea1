//! Planar Gaussian measures and tensor Gauss–Hermite quadrature.
//!
//! The measures:
//!
//! - `ω_0(z) dz = π^{-1} e^{-|z|²} dz` (flat Gaussian), and
//! - `ω_τ(z) dz = π^{-1} e^{-(|z|² - τ Re z²)/(1-τ²)} dz
//!    = π^{-1} e^{-x²/(1+τ) - y²/(1-τ)} dz` (elliptic), with total mass
//!   `√(1-τ²)` — the `π^{-1}` convention is kept, never renormalized.
//!
//! One-dimensional nodes and weights come from the Golub–Welsch eigenvalue
//! problem (symmetric tridiagonal QL with implicit shifts), with one Newton
//! polish step on the orthonormal recurrence and Christoffel-number weights;
//! no external solver is involved. Tensor grids rescale the axes so that
//! `Σ w f(node)` integrates `f` against the requested measure, exactly for
//! polynomials up to per-axis degree `2 n_q - 1`.
//!
//! Big sums use pairwise accumulation over a fixed tree, so results are
//! reproducible no matter how the evaluation is partitioned.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hermite::check_tau_half_open;
use crate::linalg::symmetric_tridiagonal_eigenvalues;

const MIN_NODES: usize = 2;
const MAX_NODES: usize = 256;

/// `ω_τ(z) = π^{-1} exp(-(|z|² - τ Re z²)/(1-τ²))`; `ω_0` at τ = 0.
pub fn omega_density(z: Complex64, tau: f64) -> Result<f64> {
    check_tau_half_open(tau)?;
    let (x, y) = (z.re, z.im);
    Ok((-(x * x) / (1.0 + tau) - y * y / (1.0 - tau)).exp() / std::f64::consts::PI)
}

/// Nodes and weights of the `n`-point Gauss–Hermite rule for `∫ e^{-t²} f(t) dt`.
pub fn gauss_hermite(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(MIN_NODES..=MAX_NODES).contains(&n) {
        return Err(Error::NodesOutOfRange { n_q: n });
    }
    // Golub–Welsch: zero diagonal, off-diagonal √(k/2)
    let mut d = vec![0.0; n];
    let mut e: Vec<f64> = (1..=n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    e[n - 1] = 0.0;
    symmetric_tridiagonal_eigenvalues(&mut d, &mut e)?;
    // enforce the exact ± pairing, then polish each node by one Newton step
    let mut nodes = d;
    for i in 0..n / 2 {
        let avg = 0.5 * (nodes[n - 1 - i] - nodes[i]);
        nodes[i] = -avg;
        nodes[n - 1 - i] = avg;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    let mut weights = vec![0.0; n];
    for (node, weight) in nodes.iter_mut().zip(weights.iter_mut()) {
        let (pn, pn_minus) = orthonormal_hermite_pair(n, *node);
        let derivative = (2.0 * n as f64).sqrt() * pn_minus;
        if derivative != 0.0 {
            *node -= pn / derivative;
        }
        *weight = christoffel_weight(n, *node);
    }
    Ok((nodes, weights))
}

/// `(p_n(x), p_{n-1}(x))` for the orthonormal Hermite family
/// (`∫ p_j p_k e^{-x²} = δ_{jk}`).
fn orthonormal_hermite_pair(n: usize, x: f64) -> (f64, f64) {
    let mut prev = std::f64::consts::PI.powf(-0.25);
    let mut cur = std::f64::consts::SQRT_2 * x * prev;
    if n == 1 {
        return (cur, prev);
    }
    for k in 1..n {
        let next =
            x * (2.0 / (k as f64 + 1.0)).sqrt() * cur - (k as f64 / (k as f64 + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// Gauss weight as the reciprocal Christoffel sum `1/Σ_{k<n} p_k(x)²`.
fn christoffel_weight(n: usize, x: f64) -> f64 {
    let mut prev = std::f64::consts::PI.powf(-0.25);
    let mut sum = prev * prev;
    let mut cur = std::f64::consts::SQRT_2 * x * prev;
    for k in 1..n {
        sum += cur * cur;
        let next =
            x * (2.0 / (k as f64 + 1.0)).sqrt() * cur - (k as f64 / (k as f64 + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    1.0 / sum
}

/// How a tensor grid relates to the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    /// Integrates against the elliptic measure `ω_τ(z) dz`.
    EllipticNative,
    /// Integrates a Gaussian density against the flat Lebesgue measure
    /// (used for L²(dz) pairings of weighted functions).
    FlatWithDensity,
}

/// Tensor Gauss–Hermite grid with the axis scalings and the `π^{-1}` factor
/// folded into the stored weights: `Σ_ij wx_i wy_j f(x_i + i y_j)`
/// approximates the corresponding planar integral.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    pub nodes_x: Vec<f64>,
    pub weights_x: Vec<f64>,
    pub nodes_y: Vec<f64>,
    pub weights_y: Vec<f64>,
    pub tau: f64,
    pub kind: GridKind,
}

impl QuadratureGrid {
    /// Grid for `∫ f(z) π^{-1} e^{-x²/sx² - y²/sy²} dz`.
    fn from_scales(n_q: usize, sx: f64, sy: f64, tau: f64, kind: GridKind) -> Result<Self> {
        let (t, w) = gauss_hermite(n_q)?;
        let root_pi = std::f64::consts::PI.sqrt();
        let scale_axis = |s: f64| -> (Vec<f64>, Vec<f64>) {
            (
                t.iter().map(|&ti| s * ti).collect(),
                w.iter().map(|&wi| wi * s / root_pi).collect(),
            )
        };
        let (nodes_x, weights_x) = scale_axis(sx);
        let (nodes_y, weights_y) = scale_axis(sy);
        Ok(Self {
            nodes_x,
            weights_x,
            nodes_y,
            weights_y,
            tau,
            kind,
        })
    }

    /// Grid integrating against `ω_τ(z) dz`.
    pub fn elliptic(n_q: usize, tau: f64) -> Result<Self> {
        check_tau_half_open(tau)?;
        Self::from_scales(
            n_q,
            (1.0 + tau).sqrt(),
            (1.0 - tau).sqrt(),
            tau,
            GridKind::EllipticNative,
        )
    }

    /// Grid integrating against `|ψ_μ|² dz = π^{-1} e^{-(1-τ)x² - (1+τ)y²} dz`
    /// with `τ = tanh μ`: the flat-measure pairing of the squeezed states.
    pub fn flat_weighted(n_q: usize, tau: f64) -> Result<Self> {
        check_tau_half_open(tau)?;
        Self::from_scales(
            n_q,
            1.0 / (1.0 - tau).sqrt(),
            1.0 / (1.0 + tau).sqrt(),
            tau,
            GridKind::FlatWithDensity,
        )
    }

    pub fn n_q(&self) -> usize {
        self.nodes_x.len()
    }

    /// `Σ_ij wx_i wy_j f(x_i + i y_j)`, row sums and the final reduction both
    /// pairwise; rows are evaluated in parallel but the reduction tree is
    /// fixed, so the result does not depend on the partitioning.
    pub fn integrate<F>(&self, f: F) -> Complex64
    where
        F: Fn(Complex64) -> Complex64 + Sync,
    {
        let rows: Vec<Complex64> = self
            .nodes_y
            .par_iter()
            .zip(self.weights_y.par_iter())
            .map(|(&y, &wy)| {
                let terms: Vec<Complex64> = self
                    .nodes_x
                    .iter()
                    .zip(self.weights_x.iter())
                    .map(|(&x, &wx)| f(Complex64::new(x, y)) * wx)
                    .collect();
                pairwise_sum(&terms) * wy
            })
            .collect();
        pairwise_sum(&rows)
    }

    /// All tensor points with their combined weights.
    pub fn points(&self) -> impl Iterator<Item = (Complex64, f64)> + '_ {
        self.nodes_y
            .iter()
            .zip(&self.weights_y)
            .flat_map(move |(&y, &wy)| {
                self.nodes_x
                    .iter()
                    .zip(&self.weights_x)
                    .map(move |(&x, &wx)| (Complex64::new(x, y), wx * wy))
            })
    }

    /// CSV rows `x,y,weight` for the full tensor grid.
    pub fn write_csv<W: std::io::Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "x,y,weight")?;
        for (z, w) in self.points() {
            writeln!(out, "{:.16e},{:.16e},{:.16e}", z.re, z.im, w)?;
        }
        Ok(())
    }
}

/// Pairwise (tree) summation over a slice; deterministic for fixed input.
pub fn pairwise_sum(xs: &[Complex64]) -> Complex64 {
    match xs.len() {
        0 => Complex64::default(),
        1 => xs[0],
        n => pairwise_sum(&xs[..n / 2]) + pairwise_sum(&xs[n / 2..]),
    }
}

/// `⟨f, g⟩ = Σ conj(f) g w` over the grid; conjugate-linear in the first
/// slot. The caller states the τ it expects, which must match the grid.
pub fn inner_product<F, G>(f: F, g: G, tau: f64, grid: &QuadratureGrid) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64 + Sync,
    G: Fn(Complex64) -> Complex64 + Sync,
{
    if grid.tau != tau {
        return Err(Error::GridMismatch {
            grid_tau: grid.tau,
            requested: tau,
        });
    }
    Ok(grid.integrate(|z| f(z).conj() * g(z)))
}

/// Closed-form moment `∫ x^{2a} y^{2b} ω_τ(z) dz
/// = sx^{2a+1} sy^{2b+1} (2a-1)!! (2b-1)!! / 2^{a+b}` with `sx = √(1+τ)`,
/// `sy = √(1-τ)`: the product of two one-dimensional Gaussian moments.
pub fn elliptic_moment_closed_form(a: u32, b: u32, tau: f64) -> Result<f64> {
    check_tau_half_open(tau)?;
    let sx = (1.0 + tau).sqrt();
    let sy = (1.0 - tau).sqrt();
    let double_fact = |k: u32| -> f64 { (1..=k).fold(1.0, |acc, j| acc * (2 * j - 1) as f64) };
    Ok(
        sx.powi(2 * a as i32 + 1) * sy.powi(2 * b as i32 + 1) * double_fact(a) * double_fact(b)
            / 2f64.powi((a + b) as i32),
    )
}
