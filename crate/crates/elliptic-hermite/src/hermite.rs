//! The polynomial families: real, rescaled and complex Hermite, generalized
//! Laguerre, squeezed complex Hermite, and the bivariate Hermite family
//! generated by a complex symmetric 2×2 matrix.
//!
//! Conventions used throughout the crate:
//!
//! - `H_m` are the physicists' Hermite polynomials, orthogonal for `e^{-x²}`.
//! - The rescaled family is `H_m(z, τ) = (τ/2)^{m/2} H_m(z / √(2τ))`, with
//!   `H_m(z, 0) = z^m`.
//! - The complex Hermite polynomials are
//!   `H_{m,n}(z, z̄) = Σ_k (-1)^k k! C(m,k) C(n,k) z^{m-k} z̄^{n-k}`.
//! - The squeezed family is
//!   `H_{m,n}(z, z̄; τ) = (τ/2)^{(m+n)/2} / √(m!) · Σ_k i^{n-k} k! C(n,k) C(m,k)
//!    · 2^k (1-τ²)^{k/2} τ^{-k} · H_{m-k}(z/√(2τ)) · H_{n-k}(i(z̄-τz)/√(2τ(1-τ²)))`,
//!   which retains the `1/√(m!)` prefactor so that its τ → 0 limit is
//!   `(-1)^n H_{m,n}(z, z̄) / √(m!)`, matching the generating function below.
//!
//! Scalar evaluation uses three-term recurrences with the τ-dependent scale
//! folded in (`r_{j+1} = z r_j - jτ r_{j-1}` for the rescaled family), which
//! is stable for the supported degrees and exact in the τ → 0 limit. The
//! explicit sums survive as independent test oracles.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{BivariatePolynomial, GaussianEnvelope, WeightedFunction};

/// Degree cap for scalar Hermite/Laguerre evaluation.
pub const MAX_SCALAR_DEGREE: usize = 200;
/// Degree cap for complex Hermite coefficient expansion.
pub const MAX_BIVARIATE_DEGREE: usize = 60;
/// Degree cap for the squeezed and matrix-generated families.
pub const MAX_SQUEEZED_DEGREE: usize = 40;

/// `n!` as a double; callers keep `n ≤ 170`.
pub fn factorial(n: usize) -> f64 {
    assert!(n <= 170, "factorial overflows f64 beyond 170");
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// `√(n!)`, the normalization constant of the orthonormal families.
pub fn sqrt_factorial(n: usize) -> f64 {
    assert!(n <= 170, "factorial overflows f64 beyond 170");
    factorial(n).sqrt()
}

/// Binomial coefficient as a double.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Exact integer power of the imaginary unit.
pub(crate) fn i_pow(p: usize) -> Complex64 {
    match p % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

fn check_degree(what: &'static str, requested: usize, max: usize) -> Result<()> {
    if requested > max {
        Err(Error::DegreeTooLarge {
            what,
            requested,
            max,
        })
    } else {
        Ok(())
    }
}

pub(crate) fn check_tau_half_open(tau: f64) -> Result<()> {
    if tau.is_finite() && (0.0..1.0).contains(&tau) {
        Ok(())
    } else {
        Err(Error::TauOutOfRange {
            tau,
            allowed: "[0, 1)",
        })
    }
}

pub(crate) fn check_tau_open(tau: f64) -> Result<()> {
    if tau.is_finite() && tau > 0.0 && tau < 1.0 {
        Ok(())
    } else {
        Err(Error::TauOutOfRange {
            tau,
            allowed: "(0, 1)",
        })
    }
}

/// Physicists' Hermite polynomial `H_m` at a complex argument, by the
/// three-term recurrence `H_{k+1} = 2x H_k - 2k H_{k-1}`.
pub fn hermite(m: usize, x: Complex64) -> Result<Complex64> {
    check_degree("Hermite", m, MAX_SCALAR_DEGREE)?;
    let mut prev = Complex64::new(1.0, 0.0);
    if m == 0 {
        return Ok(prev);
    }
    let mut cur = 2.0 * x;
    for k in 1..m {
        let next = 2.0 * x * cur - (2 * k) as f64 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Values `H_0(x), …, H_mmax(x)` in one recurrence pass.
pub fn hermite_values(mmax: usize, x: Complex64) -> Result<Vec<Complex64>> {
    check_degree("Hermite", mmax, MAX_SCALAR_DEGREE)?;
    let mut out = Vec::with_capacity(mmax + 1);
    out.push(Complex64::new(1.0, 0.0));
    if mmax == 0 {
        return Ok(out);
    }
    out.push(2.0 * x);
    for k in 1..mmax {
        let next = 2.0 * x * out[k] - (2 * k) as f64 * out[k - 1];
        out.push(next);
    }
    Ok(out)
}

/// Monomial coefficients of `H_m`: `H_m(x) = Σ_j coeffs[j] x^j`.
/// Integer-valued, exact in doubles for the supported degrees.
pub(crate) fn hermite_coeffs(m: usize) -> Vec<f64> {
    let mut prev = vec![1.0];
    if m == 0 {
        return prev;
    }
    let mut cur = vec![0.0, 2.0];
    for k in 1..m {
        let mut next = vec![0.0; k + 2];
        for (j, &c) in cur.iter().enumerate() {
            next[j + 1] += 2.0 * c;
        }
        for (j, &c) in prev.iter().enumerate() {
            next[j] -= (2 * k) as f64 * c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// `H_m(αz + βz̄)` expanded into the `(z, z̄)` coefficient basis.
pub(crate) fn hermite_in_linear(
    m: usize,
    alpha: Complex64,
    beta: Complex64,
) -> BivariatePolynomial {
    let coeffs = hermite_coeffs(m);
    let linear = BivariatePolynomial::from_terms([((1, 0), alpha), ((0, 1), beta)]);
    let mut power = BivariatePolynomial::one();
    let mut acc = BivariatePolynomial::constant(Complex64::new(coeffs[0], 0.0));
    for &c in &coeffs[1..] {
        power = power.mul(&linear);
        if c != 0.0 {
            acc = acc.add(&power.scale(Complex64::new(c, 0.0)));
        }
    }
    acc
}

/// Rescaled Hermite polynomial `H_m(z, τ) = (τ/2)^{m/2} H_m(z/√(2τ))`,
/// evaluated by the scale-folded recurrence `r_{j+1} = z r_j - jτ r_{j-1}`;
/// `H_m(z, 0) = z^m`.
pub fn hermite_rescaled(m: usize, z: Complex64, tau: f64) -> Result<Complex64> {
    check_degree("rescaled Hermite", m, MAX_SCALAR_DEGREE)?;
    check_tau_half_open(tau)?;
    Ok(rescaled_values(m, z, tau)[m])
}

/// `(τ/2)^{j/2} H_j(x)` for `j ≤ mmax` where `z = √(2τ)·x`; the recurrence
/// works directly in `z` so τ = 0 degenerates to plain monomials.
pub(crate) fn rescaled_values(mmax: usize, z: Complex64, tau: f64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(mmax + 1);
    out.push(Complex64::new(1.0, 0.0));
    if mmax == 0 {
        return out;
    }
    out.push(z);
    for j in 1..mmax {
        let next = z * out[j] - (j as f64 * tau) * out[j - 1];
        out.push(next);
    }
    out
}

/// The rescaled family as a polynomial in `z` alone.
pub fn rescaled_hermite_poly(m: usize, tau: f64) -> Result<BivariatePolynomial> {
    check_degree("rescaled Hermite", m, MAX_BIVARIATE_DEGREE)?;
    check_tau_half_open(tau)?;
    let z = BivariatePolynomial::monomial(1, 0, Complex64::new(1.0, 0.0));
    let mut prev = BivariatePolynomial::one();
    if m == 0 {
        return Ok(prev);
    }
    let mut cur = z.clone();
    for j in 1..m {
        let next = cur
            .mul(&z)
            .sub(&prev.scale(Complex64::new(j as f64 * tau, 0.0)));
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Generalized Laguerre polynomial `L_m^{(α)}(x)`. Uses the three-term
/// recurrence for `α > -1`; otherwise the shifted-factorial sum
/// `L_m^{(α)}(x) = Σ_k (-1)^k (k+α+1)_{m-k} / ((m-k)! k!) · x^k`,
/// which stays valid for the negative integer orders `α ≥ -m`.
pub fn laguerre(m: usize, alpha: f64, x: Complex64) -> Result<Complex64> {
    check_degree("Laguerre", m, MAX_SCALAR_DEGREE)?;
    if alpha > -1.0 {
        let mut prev = Complex64::new(1.0, 0.0);
        if m == 0 {
            return Ok(prev);
        }
        let mut cur = Complex64::new(1.0 + alpha, 0.0) - x;
        for k in 1..m {
            let kf = k as f64;
            let next = ((Complex64::new(2.0 * kf + alpha + 1.0, 0.0) - x) * cur
                - (kf + alpha) * prev)
                / (kf + 1.0);
            prev = cur;
            cur = next;
        }
        Ok(cur)
    } else {
        let mut sum = Complex64::default();
        let mut xk_over_kfact = Complex64::new(1.0, 0.0);
        for k in 0..=m {
            if k > 0 {
                xk_over_kfact = xk_over_kfact * x / k as f64;
            }
            // (k+α+1)_{m-k} / (m-k)! as a product of O(1) ratios
            let mut f = 1.0;
            for i in 1..=(m - k) {
                f *= (k as f64 + alpha + i as f64) / i as f64;
            }
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * f * xk_over_kfact;
        }
        Ok(sum)
    }
}

/// Complex Hermite polynomial `H_{m,n}(z, z̄)` in coefficient form.
pub fn complex_hermite(m: usize, n: usize) -> Result<BivariatePolynomial> {
    check_degree("complex Hermite", m.max(n), MAX_BIVARIATE_DEGREE)?;
    let mut terms = Vec::with_capacity(m.min(n) + 1);
    let mut factor = 1.0; // k! C(m,k) C(n,k)
    for k in 0..=m.min(n) {
        if k > 0 {
            factor *= ((m - k + 1) * (n - k + 1)) as f64 / k as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        terms.push((
            ((m - k) as u32, (n - k) as u32),
            Complex64::new(sign * factor, 0.0),
        ));
    }
    Ok(BivariatePolynomial::from_terms(terms))
}

/// `H_{m,n}(z, z̄)` evaluated directly from the defining sum.
pub fn complex_hermite_value(m: usize, n: usize, z: Complex64) -> Result<Complex64> {
    check_degree("complex Hermite", m.max(n), MAX_BIVARIATE_DEGREE)?;
    let zbar = z.conj();
    let mut sum = Complex64::default();
    let mut factor = 1.0;
    for k in 0..=m.min(n) {
        if k > 0 {
            factor *= ((m - k + 1) * (n - k + 1)) as f64 / k as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * factor * z.powu((m - k) as u32) * zbar.powu((n - k) as u32);
    }
    Ok(sum)
}

/// `H_{m,n}(z, z̄)` by the Rodrigues route
/// `(-1)^{m+n} e^{|z|²} ∂_z^n ∂_z̄^m e^{-|z|²}`, realized as repeated
/// envelope-folded differentiation of the Gaussian; independent oracle for
/// [`complex_hermite`].
pub fn complex_hermite_rodrigues(m: usize, n: usize) -> Result<BivariatePolynomial> {
    check_degree("complex Hermite", m.max(n), MAX_BIVARIATE_DEGREE)?;
    let env = GaussianEnvelope::new(
        Complex64::default(),
        Complex64::new(-1.0, 0.0),
        Complex64::default(),
        Complex64::new(1.0, 0.0),
    )?;
    let mut f = WeightedFunction::new(BivariatePolynomial::one(), env);
    for _ in 0..m {
        f = f.d_zbar();
    }
    for _ in 0..n {
        f = f.d_z();
    }
    let sign = if (m + n) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(f.poly.scale(Complex64::new(sign, 0.0)))
}

/// Normalized complex Hermite polynomial `φ_{m,n}(z) = H_{m,n}(z, z̄)/√(m! n!)`,
/// computed through the polar Laguerre form
/// `(-1)^{m∧n} (m∧n)!/√(m! n!) · |z|^{|m-n|} e^{i(m-n)θ} L_{m∧n}^{(|m-n|)}(|z|²)`.
/// The angular factor is taken as `z^{m-n}` (or `z̄^{n-m}`), so `z = 0` falls
/// out of the same expression. The index convention is fixed by requiring
/// agreement with [`complex_hermite`] divided by `√(m! n!)`.
pub fn phi_normalized(m: usize, n: usize, z: Complex64) -> Result<Complex64> {
    check_degree("complex Hermite", m.max(n), MAX_BIVARIATE_DEGREE)?;
    let s = m.min(n);
    let d = m.max(n) - s;
    // s! / √(m! n!) = 1 / √((m!/s!) (n!/s!)), kept as a product of ratios
    let mut norm = 1.0;
    for i in (s + 1)..=m.max(n) {
        norm /= i as f64;
    }
    let norm = norm.sqrt();
    let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
    let angular = if m >= n {
        z.powu(d as u32)
    } else {
        z.conj().powu(d as u32)
    };
    let lag = laguerre(s, d as f64, Complex64::new(z.norm_sqr(), 0.0))?;
    Ok(sign * norm * angular * lag)
}

/// Table of `φ_{k,j}(z)` for `k ≤ kmax`, `j ≤ jmax`, by the normalized
/// recurrence `φ_{k+1,j} = (z φ_{k,j} - √j φ_{k,j-1}) / √(k+1)`.
pub(crate) fn phi_table(kmax: usize, jmax: usize, z: Complex64) -> Vec<Vec<Complex64>> {
    let zbar = z.conj();
    let mut table = vec![vec![Complex64::default(); jmax + 1]; kmax + 1];
    let mut norm = 1.0;
    for j in 0..=jmax {
        if j > 0 {
            norm /= (j as f64).sqrt();
        }
        table[0][j] = zbar.powu(j as u32) * norm;
    }
    for k in 0..kmax {
        for j in 0..=jmax {
            let lower = if j > 0 {
                (j as f64).sqrt() * table[k][j - 1]
            } else {
                Complex64::default()
            };
            table[k + 1][j] = (z * table[k][j] - lower) / ((k + 1) as f64).sqrt();
        }
    }
    table
}

/// Squeezed complex Hermite polynomial `H_{m,n}(z, z̄; τ)` in coefficient
/// form. The τ = 0 branch returns the limit `(-1)^n H_{m,n}(z, z̄)/√(m!)`.
pub fn squeezed_hermite(m: usize, n: usize, tau: f64) -> Result<BivariatePolynomial> {
    check_degree("squeezed Hermite", m.max(n), MAX_SQUEEZED_DEGREE)?;
    check_tau_half_open(tau)?;
    if tau == 0.0 {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(complex_hermite(m, n)?.scale(Complex64::new(sign / sqrt_factorial(m), 0.0)));
    }
    let omt = 1.0 - tau * tau;
    let pref = (tau / 2.0).powf((m + n) as f64 / 2.0) / sqrt_factorial(m);
    // H_{m-k} sees z/√(2τ); H_{n-k} sees i(z̄ - τz)/√(2τ(1-τ²)).
    let s1 = Complex64::new(1.0 / (2.0 * tau).sqrt(), 0.0);
    let s2 = Complex64::new(0.0, 1.0 / (2.0 * tau * omt).sqrt());
    let (alpha2, beta2) = (-tau * s2, s2);
    let mut acc = BivariatePolynomial::zero();
    let mut factor = 1.0; // k! C(n,k) C(m,k) 2^k (1-τ²)^{k/2} / τ^k
    for k in 0..=m.min(n) {
        if k > 0 {
            factor *= ((n - k + 1) * (m - k + 1)) as f64 / k as f64 * 2.0 * omt.sqrt() / tau;
        }
        let coeff = i_pow(n - k) * factor * pref;
        let h1 = hermite_in_linear(m - k, s1, Complex64::default());
        let h2 = hermite_in_linear(n - k, alpha2, beta2);
        acc = acc.add(&h1.mul(&h2).scale(coeff));
    }
    Ok(acc)
}

/// Table of squeezed values `H_{j,l}(z, z̄; τ)` for `j ≤ mmax`, `l ≤ nmax`,
/// using the scale-folded rescaled recurrences; degenerates exactly to the
/// complex Hermite limit at τ = 0.
pub fn squeezed_value_table(
    mmax: usize,
    nmax: usize,
    tau: f64,
    z: Complex64,
) -> Result<Vec<Vec<Complex64>>> {
    check_degree(
        "squeezed Hermite",
        mmax.max(nmax),
        MAX_SQUEEZED_DEGREE.max(64),
    )?;
    check_tau_half_open(tau)?;
    let omt = 1.0 - tau * tau;
    let zbar = z.conj();
    // r1[j] = (τ/2)^{j/2} H_j(z/√(2τ)),  r2[j] = (τ/2)^{j/2} H_j(i(z̄-τz)/√(2τ(1-τ²)))
    let r1 = rescaled_values(mmax, z, tau);
    let arg2 = Complex64::new(0.0, 1.0) * (zbar - tau * z) / omt.sqrt();
    let r2 = rescaled_values(nmax, arg2, tau);
    let mut table = vec![vec![Complex64::default(); nmax + 1]; mmax + 1];
    for (m, row) in table.iter_mut().enumerate() {
        let inv_sqrt_mfact = 1.0 / sqrt_factorial(m);
        for (n, slot) in row.iter_mut().enumerate() {
            let mut sum = Complex64::default();
            let mut factor = 1.0; // k! C(n,k) C(m,k) (1-τ²)^{k/2}
            for k in 0..=m.min(n) {
                if k > 0 {
                    factor *= ((n - k + 1) * (m - k + 1)) as f64 / k as f64 * omt.sqrt();
                }
                sum += i_pow(n - k) * factor * r1[m - k] * r2[n - k];
            }
            *slot = sum * inv_sqrt_mfact;
        }
    }
    Ok(table)
}

/// `H_{m,n}(z, z̄; τ)` as a scalar value.
pub fn squeezed_hermite_value(m: usize, n: usize, tau: f64, z: Complex64) -> Result<Complex64> {
    Ok(squeezed_value_table(m, n, tau, z)?[m][n])
}

/// Residual of the squeezed generating function at truncation order `kmax`:
/// the truncated `Σ_{m,n ≤ K} √(m!) H_{m,n}(z, z̄; τ) u^m v^n / (m! n!)`
/// against `exp(τ(v²-u²)/2 + uz - v(z̄-τz)/√(1-τ²) + uv√(1-τ²))`.
/// Errors with `TruncationTooSmall` when the magnitude of the last summed
/// shell still exceeds the reported residual (series not yet converged).
pub fn genfun_residual(
    u: Complex64,
    v: Complex64,
    z: Complex64,
    tau: f64,
    kmax: usize,
) -> Result<f64> {
    check_tau_half_open(tau)?;
    if kmax == 0 {
        return Err(Error::TruncationTooSmall {
            order: 0,
            tail: f64::INFINITY,
            scale: 0.0,
        });
    }
    let table = squeezed_value_table(kmax, kmax, tau, z)?;
    // weight(m,n) = u^m v^n / (√(m!) n!): combines with the 1/√(m!) already
    // inside the table entries to give the 1/m! of the series.
    let mut sum = Complex64::default();
    let mut shell = 0.0;
    let mut wu = vec![Complex64::new(1.0, 0.0); kmax + 1];
    for m in 1..=kmax {
        wu[m] = wu[m - 1] * u / (m as f64).sqrt();
    }
    let mut wv = vec![Complex64::new(1.0, 0.0); kmax + 1];
    for n in 1..=kmax {
        wv[n] = wv[n - 1] * v / n as f64;
    }
    for m in 0..=kmax {
        for n in 0..=kmax {
            let term = table[m][n] * wu[m] * wv[n];
            sum += term;
            if m == kmax || n == kmax {
                shell += term.norm();
            }
        }
    }
    let omt = 1.0 - tau * tau;
    let zbar = z.conj();
    let exponent = tau * (v * v - u * u) / 2.0 + u * z - v * (zbar - tau * z) / omt.sqrt()
        + u * v * omt.sqrt();
    let residual = (sum - exponent.exp()).norm();
    // unconverged when the final shell still dominates the reported residual
    // and sits above rounding level
    if shell > residual && shell > f64::EPSILON * sum.norm() {
        return Err(Error::TruncationTooSmall {
            order: kmax,
            tail: shell,
            scale: residual,
        });
    }
    Ok(residual)
}

/// Squeeze parameters: `τ = tanh(μ)` with `τ ∈ [0, 1)`, `μ ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParams {
    tau: f64,
    mu: f64,
}

impl SqueezeParams {
    pub fn from_tau(tau: f64) -> Result<Self> {
        check_tau_half_open(tau)?;
        Ok(Self {
            tau,
            mu: tau.atanh(),
        })
    }

    pub fn from_mu(mu: f64) -> Result<Self> {
        if !mu.is_finite() || mu < 0.0 {
            return Err(Error::MuOutOfRange { mu });
        }
        Ok(Self { tau: mu.tanh(), mu })
    }

    /// Accepts an explicitly paired `(τ, μ)` only when they agree.
    pub fn new(tau: f64, mu: f64) -> Result<Self> {
        let p = Self::from_mu(mu)?;
        if (p.tau - tau).abs() > 1e-14 {
            return Err(Error::TauOutOfRange {
                tau,
                allowed: "tanh(mu) ± 1e-14",
            });
        }
        Ok(Self { tau, mu })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
}

/// Complex symmetric 2×2 matrix `[[r11, r12], [r12, r22]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymMatrix2 {
    pub r11: Complex64,
    pub r12: Complex64,
    pub r22: Complex64,
}

impl SymMatrix2 {
    pub fn new(r11: Complex64, r12: Complex64, r22: Complex64) -> Self {
        Self { r11, r12, r22 }
    }

    /// The unimodular matrix `[[τ, i√(1-τ²)], [i√(1-τ²), τ]]` that generates
    /// the squeezed family.
    pub fn elliptic(tau: f64) -> Result<Self> {
        check_tau_half_open(tau)?;
        let off = Complex64::new(0.0, (1.0 - tau * tau).sqrt());
        Ok(Self::new(
            Complex64::new(tau, 0.0),
            off,
            Complex64::new(tau, 0.0),
        ))
    }

    pub fn det(&self) -> Complex64 {
        self.r11 * self.r22 - self.r12 * self.r12
    }

    pub fn apply(&self, xi: (Complex64, Complex64)) -> (Complex64, Complex64) {
        (
            self.r11 * xi.0 + self.r12 * xi.1,
            self.r12 * xi.0 + self.r22 * xi.1,
        )
    }
}

/// Bivariate Hermite polynomial `H^{(R)}_{n,m}(ξ₁, ξ₂)` generated by
/// `exp(-½⟨Rγ,γ⟩ + ⟨Rξ,γ⟩) = Σ γ₁^n γ₂^m / (n! m!) · H^{(R)}_{n,m}(ξ₁, ξ₂)`,
/// evaluated through the one-variable Hermite expansion
/// `(√r11)^n (√r22)^m 2^{-(n+m)/2} Σ_k (-2 r12/(√r11 √r22))^k k! C(n,k) C(m,k)
///  H_{n-k}(ζ₁/√(2 r11)) H_{m-k}(ζ₂/√(2 r22))` with `ζ = Rξ`.
/// Square roots are principal; the mixed radical is taken as the product of
/// the diagonal ones so the expansion matches the generating function for
/// every complex `R`. The first degree index pairs with `ζ₁`.
pub fn hermite2d(
    r: &SymMatrix2,
    n: usize,
    m: usize,
    xi1: Complex64,
    xi2: Complex64,
) -> Result<Complex64> {
    check_degree("bivariate Hermite", n.max(m), MAX_SQUEEZED_DEGREE)?;
    if r.r11.norm() == 0.0 || r.r22.norm() == 0.0 {
        return Err(Error::SingularR);
    }
    let s1 = r.r11.sqrt();
    let s2 = r.r22.sqrt();
    let (z1, z2) = r.apply((xi1, xi2));
    let h1 = hermite_values(n, z1 / (s1 * 2.0f64.sqrt()))?;
    let h2 = hermite_values(m, z2 / (s2 * 2.0f64.sqrt()))?;
    let q = -2.0 * r.r12 / (s1 * s2);
    let mut sum = Complex64::default();
    let mut qk = Complex64::new(1.0, 0.0);
    let mut factor = 1.0; // k! C(n,k) C(m,k)
    for k in 0..=n.min(m) {
        if k > 0 {
            factor *= ((n - k + 1) * (m - k + 1)) as f64 / k as f64;
            qk *= q;
        }
        sum += qk * factor * h1[n - k] * h2[m - k];
    }
    let pref = s1.powu(n as u32) * s2.powu(m as u32) / 2.0f64.powf((n + m) as f64 / 2.0);
    Ok(pref * sum)
}

/// Independent oracle for [`hermite2d`]: extracts the coefficient of
/// `γ₁^n γ₂^m / (n! m!)` from the generating function by exponentiating the
/// truncated power series. Since the exponent has no constant term, summing
/// `kmax ≥ n + m` powers makes the extracted coefficient exact.
pub fn hermite2d_genfun(
    r: &SymMatrix2,
    n: usize,
    m: usize,
    xi1: Complex64,
    xi2: Complex64,
    kmax: usize,
) -> Result<Complex64> {
    check_degree("bivariate Hermite", n.max(m), MAX_SQUEEZED_DEGREE)?;
    if kmax < n + m {
        return Err(Error::TruncationTooSmall {
            order: kmax,
            tail: f64::INFINITY,
            scale: (n + m) as f64,
        });
    }
    let (z1, z2) = r.apply((xi1, xi2));
    // P(γ₁, γ₂) = -½(r11 γ₁² + 2 r12 γ₁γ₂ + r22 γ₂²) + ζ₁γ₁ + ζ₂γ₂,
    // stored as a dense (n+1)×(m+1) truncated coefficient table.
    let rows = n + 1;
    let cols = m + 1;
    let idx = |a: usize, b: usize| a * cols + b;
    let mut p = vec![Complex64::default(); rows * cols];
    let set = |tab: &mut Vec<Complex64>, a: usize, b: usize, v: Complex64| {
        if a < rows && b < cols {
            tab[idx(a, b)] = v;
        }
    };
    set(&mut p, 1, 0, z1);
    set(&mut p, 0, 1, z2);
    set(&mut p, 2, 0, -r.r11 / 2.0);
    set(&mut p, 1, 1, -r.r12);
    set(&mut p, 0, 2, -r.r22 / 2.0);

    let mut result = vec![Complex64::default(); rows * cols];
    result[idx(0, 0)] = Complex64::new(1.0, 0.0);
    let mut power = result.clone();
    let mut inv_fact = 1.0;
    for j in 1..=(n + m).min(kmax) {
        // power <- power * p, truncated
        let mut next = vec![Complex64::default(); rows * cols];
        for a1 in 0..rows {
            for b1 in 0..cols {
                let c1 = power[idx(a1, b1)];
                if c1.norm() == 0.0 {
                    continue;
                }
                for a2 in 0..(rows - a1) {
                    for b2 in 0..(cols - b1) {
                        let c2 = p[idx(a2, b2)];
                        if c2.norm() != 0.0 {
                            next[idx(a1 + a2, b1 + b2)] += c1 * c2;
                        }
                    }
                }
            }
        }
        power = next;
        inv_fact /= j as f64;
        for (slot, &term) in result.iter_mut().zip(power.iter()) {
            *slot += term * inv_fact;
        }
    }
    Ok(result[idx(n, m)] * factorial(n) * factorial(m))
}

/// The squeezed family through the matrix-generated route: the generating
/// function of `H^{(R_τ)}` is expanded with polynomial-valued arguments
/// `ζ₁ = z`, `ζ₂ = i(z̄-τz)/√(1-τ²)`, and the `γ₁^m γ₂^n` coefficient is
/// scaled by `i^n/√(m!)`. Shares no code with the direct expansion in
/// [`squeezed_hermite`] beyond the raw polynomial arithmetic.
pub fn squeezed_hermite_via_matrix(m: usize, n: usize, tau: f64) -> Result<BivariatePolynomial> {
    check_degree("squeezed Hermite", m.max(n), MAX_SQUEEZED_DEGREE)?;
    check_tau_open(tau)?;
    let omt_sqrt = (1.0 - tau * tau).sqrt();
    let rows = m + 1;
    let cols = n + 1;
    let idx = |a: usize, b: usize| a * cols + b;
    let zero = BivariatePolynomial::zero();
    let mut p = vec![zero.clone(); rows * cols];
    let i_unit = Complex64::new(0.0, 1.0);
    // ζ₁ = z pairs with γ₁ (degree m); ζ₂ = i(z̄-τz)/√(1-τ²) with γ₂.
    let zeta1 = BivariatePolynomial::monomial(1, 0, Complex64::new(1.0, 0.0));
    let zeta2 = BivariatePolynomial::from_terms([
        ((0, 1), i_unit / omt_sqrt),
        ((1, 0), -i_unit * tau / omt_sqrt),
    ]);
    if rows > 1 {
        p[idx(1, 0)] = zeta1;
    }
    if cols > 1 {
        p[idx(0, 1)] = zeta2;
    }
    if rows > 2 {
        p[idx(2, 0)] = BivariatePolynomial::constant(Complex64::new(-tau / 2.0, 0.0));
    }
    if rows > 1 && cols > 1 {
        p[idx(1, 1)] = BivariatePolynomial::constant(-i_unit * omt_sqrt);
    }
    if cols > 2 {
        p[idx(0, 2)] = BivariatePolynomial::constant(Complex64::new(-tau / 2.0, 0.0));
    }

    let mut result = vec![zero.clone(); rows * cols];
    result[idx(0, 0)] = BivariatePolynomial::one();
    let mut power = result.clone();
    let mut inv_fact = 1.0;
    for j in 1..=(m + n) {
        let mut next = vec![zero.clone(); rows * cols];
        for a1 in 0..rows {
            for b1 in 0..cols {
                if power[idx(a1, b1)].is_zero() {
                    continue;
                }
                for a2 in 0..(rows - a1) {
                    for b2 in 0..(cols - b1) {
                        if p[idx(a2, b2)].is_zero() {
                            continue;
                        }
                        let prod = power[idx(a1, b1)].mul(&p[idx(a2, b2)]);
                        next[idx(a1 + a2, b1 + b2)] = next[idx(a1 + a2, b1 + b2)].add(&prod);
                    }
                }
            }
        }
        power = next;
        inv_fact /= j as f64;
        for (slot, term) in result.iter_mut().zip(power.iter()) {
            *slot = slot.add(&term.scale(Complex64::new(inv_fact, 0.0)));
        }
    }
    let scale = i_pow(n) * factorial(m) * factorial(n) / sqrt_factorial(m);
    Ok(result[idx(m, n)].scale(scale))
}

/// The rejected Rodrigues-style construction
/// `(-1)^{m+n} ω_τ(z)^{-1} ∂_z^n ∂_z̄^m ω_τ(z)`: reduces to the complex
/// Hermite polynomials at τ = 0 but loses holomorphy at the lowest level
/// for τ > 0. Kept as a negative-test subject.
pub fn rodrigues_candidate(m: usize, n: usize, tau: f64) -> Result<BivariatePolynomial> {
    check_degree("Rodrigues candidate", m.max(n), MAX_BIVARIATE_DEGREE)?;
    check_tau_half_open(tau)?;
    let omt = 1.0 - tau * tau;
    let env = GaussianEnvelope::new(
        Complex64::new(tau / (2.0 * omt), 0.0),
        Complex64::new(-1.0 / omt, 0.0),
        Complex64::new(tau / (2.0 * omt), 0.0),
        Complex64::new(1.0, 0.0),
    )?;
    let mut f = WeightedFunction::new(BivariatePolynomial::one(), env);
    for _ in 0..m {
        f = f.d_zbar();
    }
    for _ in 0..n {
        f = f.d_z();
    }
    let sign = if (m + n) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(f.poly.scale(Complex64::new(sign, 0.0)))
}

/// The rejected substitution construction
/// `Σ_k (-1)^k k! C(m,k) C(n,k) H_{m-k}(z, τ) z̄^{n-k}`: polyanalytic of the
/// right order but not orthogonal for the elliptic measure — its level-one
/// members carry components along the holomorphic level (already
/// `⟨z, z̄⟩_{ω_τ} = τ ≠ 0`), so the family cannot be an orthogonal
/// eigenbasis. Kept as a negative-test subject.
pub fn substitution_candidate(m: usize, n: usize, tau: f64) -> Result<BivariatePolynomial> {
    check_degree("substitution candidate", m.max(n), MAX_BIVARIATE_DEGREE)?;
    check_tau_half_open(tau)?;
    let mut acc = BivariatePolynomial::zero();
    let mut factor = 1.0;
    for k in 0..=m.min(n) {
        if k > 0 {
            factor *= ((m - k + 1) * (n - k + 1)) as f64 / k as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let term = rescaled_hermite_poly(m - k, tau)?
            .mul_monomial(0, (n - k) as u32)
            .scale(Complex64::new(sign * factor, 0.0));
        acc = acc.add(&term);
    }
    Ok(acc)
}
