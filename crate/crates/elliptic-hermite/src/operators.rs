//! Ladder operators on the plane, the Bogoliubov transformation, the
//! magnetic Laplacian, and the operator construction of the squeezed
//! complex Hermite polynomials.
//!
//! An operator is a finite sum of normal-ordered terms
//! `c · z^a z̄^b ∂_z^p ∂_z̄^q` (multiplications to the left of derivatives).
//! Composition and commutators are computed symbolically through the
//! rewrite `∂_z^p ∘ z^a = Σ_k C(p,k) a!/(a-k)! z^{a-k} ∂_z^{p-k}` (and its
//! conjugate), never numerically.
//!
//! The basic operators, all with `[lowering, raising] = 1`:
//!
//! - `A* = ∂_z - z̄/2`, `A = -∂_z̄ - z/2` (the pair attached to the magnetic
//!   Laplacian; `H_L = A*A`);
//! - `B = -∂_z - z̄/2`, `B* = ∂_z̄ - z/2` (the commuting pair);
//! - `B_μ = cosh(μ) B - sinh(μ) B*`, `B_μ* = -sinh(μ) B + cosh(μ) B*`
//!   (the Bogoliubov transform, which preserves the commutator).

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hermite::{hermite_in_linear, i_pow, sqrt_factorial};
use crate::poly::{BivariatePolynomial, GaussianEnvelope, WeightedFunction};

const COEFF_TRIM: f64 = 1e-300;

/// One normal-ordered term `coeff · z^a z̄^b ∂_z^p ∂_z̄^q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpTerm {
    pub coeff: Complex64,
    pub z_pow: u32,
    pub zbar_pow: u32,
    pub dz: u32,
    pub dzbar: u32,
}

/// Finite sum of normal-ordered differential-multiplication terms.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LadderOperator {
    terms: BTreeMap<(u32, u32, u32, u32), Complex64>,
}

/// The named operators exposed on the command line and in the suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    /// `A = -∂_z̄ - z/2`
    A,
    /// `A* = ∂_z - z̄/2`
    AStar,
    /// `B = -∂_z - z̄/2`
    B,
    /// `B* = ∂_z̄ - z/2`
    BStar,
    /// `H_L = A*A`
    HL,
    /// `-∂_z∂_z̄ + z̄ ∂_z̄`
    Laplacian,
}

impl LadderOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::term(Complex64::new(1.0, 0.0), 0, 0, 0, 0)
    }

    pub fn term(coeff: Complex64, z_pow: u32, zbar_pow: u32, dz: u32, dzbar: u32) -> Self {
        let mut op = Self::zero();
        op.add_term(coeff, z_pow, zbar_pow, dz, dzbar);
        op.normalize();
        op
    }

    pub fn from_terms(terms: impl IntoIterator<Item = OpTerm>) -> Self {
        let mut op = Self::zero();
        for t in terms {
            op.add_term(t.coeff, t.z_pow, t.zbar_pow, t.dz, t.dzbar);
        }
        op.normalize();
        op
    }

    pub fn named(kind: OperatorKind) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let half = Complex64::new(0.5, 0.0);
        match kind {
            OperatorKind::A => Self::from_terms([op(-one, 0, 0, 0, 1), op(-half, 1, 0, 0, 0)]),
            OperatorKind::AStar => Self::from_terms([op(one, 0, 0, 1, 0), op(-half, 0, 1, 0, 0)]),
            OperatorKind::B => Self::from_terms([op(-one, 0, 0, 1, 0), op(-half, 0, 1, 0, 0)]),
            OperatorKind::BStar => Self::from_terms([op(one, 0, 0, 0, 1), op(-half, 1, 0, 0, 0)]),
            OperatorKind::HL => {
                Self::named(OperatorKind::AStar).compose(&Self::named(OperatorKind::A))
            }
            OperatorKind::Laplacian => {
                Self::from_terms([op(-one, 0, 0, 1, 1), op(one, 0, 1, 0, 1)])
            }
        }
    }

    /// `A = -∂_z̄ - z/2`.
    pub fn annihilation() -> Self {
        Self::named(OperatorKind::A)
    }

    /// `A* = ∂_z - z̄/2`.
    pub fn creation() -> Self {
        Self::named(OperatorKind::AStar)
    }

    pub fn b_lowering() -> Self {
        Self::named(OperatorKind::B)
    }

    pub fn b_raising() -> Self {
        Self::named(OperatorKind::BStar)
    }

    /// `H_L = A*A`, built by composition.
    pub fn landau_hamiltonian() -> Self {
        Self::named(OperatorKind::HL)
    }

    /// `-∂_z ∂_z̄ + z̄ ∂_z̄`, whose polynomial eigenfunctions at eigenvalue `n`
    /// are the complex Hermite polynomials `H_{m,n}(z, z̄)`.
    pub fn magnetic_laplacian() -> Self {
        Self::named(OperatorKind::Laplacian)
    }

    /// The magnetic Laplacian transported to the elliptic coordinates:
    /// `-(1-τ²) ∂_z ∂_z̄ + (z̄ - τz) ∂_z̄`. The squeezed polynomials
    /// `H_{m,n}(z, z̄; τ)` are its eigenfunctions with eigenvalue `n`; at
    /// τ = 0 it coincides with [`LadderOperator::magnetic_laplacian`].
    pub fn elliptic_laplacian(tau: f64) -> Result<Self> {
        crate::hermite::check_tau_half_open(tau)?;
        let one = Complex64::new(1.0, 0.0);
        Ok(Self::from_terms([
            op(Complex64::new(-(1.0 - tau * tau), 0.0), 0, 0, 1, 1),
            op(one, 0, 1, 0, 1),
            op(Complex64::new(-tau, 0.0), 1, 0, 0, 1),
        ]))
    }

    /// The squeezed pair `(B_μ, B_μ*)`.
    pub fn bogoliubov(mu: f64) -> Result<(Self, Self)> {
        if !mu.is_finite() || mu < 0.0 {
            return Err(Error::MuOutOfRange { mu });
        }
        let (ch, sh) = (
            Complex64::new(mu.cosh(), 0.0),
            Complex64::new(mu.sinh(), 0.0),
        );
        let b = Self::b_lowering();
        let bs = Self::b_raising();
        let b_mu = b.scale(ch).add(&bs.scale(-sh));
        let b_mu_star = b.scale(-sh).add(&bs.scale(ch));
        Ok((b_mu, b_mu_star))
    }

    fn add_term(&mut self, coeff: Complex64, a: u32, b: u32, p: u32, q: u32) {
        *self.terms.entry((a, b, p, q)).or_default() += coeff;
    }

    fn normalize(&mut self) {
        self.terms.retain(|_, c| c.norm() >= COEFF_TRIM);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = OpTerm> + '_ {
        self.terms.iter().map(|(&(a, b, p, q), &coeff)| OpTerm {
            coeff,
            z_pow: a,
            zbar_pow: b,
            dz: p,
            dzbar: q,
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, &c) in other.terms.iter() {
            out.add_term(c, k.0, k.1, k.2, k.3);
        }
        out.normalize();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = Self {
            terms: self.terms.iter().map(|(&k, &c)| (k, c * factor)).collect(),
        };
        out.normalize();
        out
    }

    /// Operator product `self ∘ other`, normal-ordered and collected.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a1, b1, p1, q1), &c1) in self.terms.iter() {
            for (&(a2, b2, p2, q2), &c2) in other.terms.iter() {
                // move ∂_z^{p1} across z^{a2} and ∂_z̄^{q1} across z̄^{b2}
                let mut zfac = 1.0; // C(p1,k) a2!/(a2-k)!
                for k in 0..=p1.min(a2) {
                    if k > 0 {
                        zfac *= (p1 - k + 1) as f64 * (a2 - k + 1) as f64 / k as f64;
                    }
                    let mut zbfac = 1.0;
                    for l in 0..=q1.min(b2) {
                        if l > 0 {
                            zbfac *= (q1 - l + 1) as f64 * (b2 - l + 1) as f64 / l as f64;
                        }
                        out.add_term(
                            c1 * c2 * zfac * zbfac,
                            a1 + a2 - k,
                            b1 + b2 - l,
                            p1 - k + p2,
                            q1 - l + q2,
                        );
                    }
                }
            }
        }
        out.normalize();
        out
    }

    /// `[self, other] = self∘other - other∘self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut out = Self::identity();
        for _ in 0..n {
            out = out.compose(self);
        }
        out
    }

    /// Act on a Gaussian-weighted function; envelope derivatives fold into
    /// the polynomial part, the envelope itself never changes.
    pub fn apply(&self, f: &WeightedFunction) -> WeightedFunction {
        let mut acc = BivariatePolynomial::zero();
        for (&(a, b, p, q), &c) in self.terms.iter() {
            let mut g = f.clone();
            for _ in 0..p {
                g = g.d_z();
            }
            for _ in 0..q {
                g = g.d_zbar();
            }
            acc = acc.add(&g.poly.mul_monomial(a, b).scale(c));
        }
        WeightedFunction::new(acc, f.env)
    }

    /// Act on a bare polynomial (no envelope).
    pub fn apply_poly(&self, p: &BivariatePolynomial) -> BivariatePolynomial {
        let mut acc = BivariatePolynomial::zero();
        for (&(a, b, dp, dq), &c) in self.terms.iter() {
            let mut g = p.clone();
            for _ in 0..dp {
                g = g.d_z();
            }
            for _ in 0..dq {
                g = g.d_zbar();
            }
            acc = acc.add(&g.mul_monomial(a, b).scale(c));
        }
        acc
    }
}

fn op(coeff: Complex64, a: u32, b: u32, p: u32, q: u32) -> OpTerm {
    OpTerm {
        coeff,
        z_pow: a,
        zbar_pow: b,
        dz: p,
        dzbar: q,
    }
}

/// `-∂_z∂_z̄ p + z̄ ∂_z̄ p`, exact in coefficients.
pub fn laplacian_apply(p: &BivariatePolynomial) -> BivariatePolynomial {
    LadderOperator::magnetic_laplacian().apply_poly(p)
}

/// `-(1-τ²) ∂_z∂_z̄ p + (z̄ - τz) ∂_z̄ p`, exact in coefficients.
pub fn elliptic_laplacian_apply(p: &BivariatePolynomial, tau: f64) -> Result<BivariatePolynomial> {
    Ok(LadderOperator::elliptic_laplacian(tau)?.apply_poly(p))
}

/// Squeezed ground state `ψ_μ = π^{-1/2} exp(-(|z|² - τz²)/2)`, τ = tanh(μ):
/// the normalized solution of `B_μ ψ = 0`.
pub fn ground_state(mu: f64) -> Result<WeightedFunction> {
    if !mu.is_finite() || mu < 0.0 {
        return Err(Error::MuOutOfRange { mu });
    }
    let tau = mu.tanh();
    let env = GaussianEnvelope::new(
        Complex64::new(tau / 2.0, 0.0),
        Complex64::new(-0.5, 0.0),
        Complex64::default(),
        Complex64::new(std::f64::consts::PI.powf(-0.5), 0.0),
    )?;
    Ok(WeightedFunction::new(BivariatePolynomial::one(), env))
}

const MAX_LADDER_DEGREE: usize = 40;

/// Lowest-Landau-level states of the squeezed model:
/// `(1/√(m!)) (-B_μ*)^m ψ_μ`, whose polynomial part equals
/// `(1/√(m!)) (tanh(μ)/2)^{m/2} H_m(z/√(sinh 2μ))`.
pub fn squeezed_ground_ladder(m: usize, mu: f64) -> Result<WeightedFunction> {
    if m > MAX_LADDER_DEGREE {
        return Err(Error::DegreeTooLarge {
            what: "squeezed ground ladder",
            requested: m,
            max: MAX_LADDER_DEGREE,
        });
    }
    let (_, b_mu_star) = LadderOperator::bogoliubov(mu)?;
    let raise = b_mu_star.scale(Complex64::new(-1.0, 0.0));
    let mut state = ground_state(mu)?;
    for _ in 0..m {
        state = raise.apply(&state);
    }
    Ok(state.scale(Complex64::new(1.0 / sqrt_factorial(m), 0.0)))
}

const MAX_LEVEL: usize = 20;

/// Landau-level-`n` states of the squeezed model:
/// `ψ_m^{(n)} = (1/√(n!)) (A*)^n [squeezed ground ladder m]`. The polynomial
/// part is the squeezed complex Hermite polynomial before the elliptic
/// change of variables `z ↦ z/√(1-τ²)`.
pub fn ladder_construct(m: usize, n: usize, mu: f64) -> Result<WeightedFunction> {
    if m > MAX_LEVEL || n > MAX_LEVEL {
        return Err(Error::DegreeTooLarge {
            what: "ladder construction",
            requested: m.max(n),
            max: MAX_LEVEL,
        });
    }
    let creation = LadderOperator::creation();
    let mut state = squeezed_ground_ladder(m, mu)?;
    for _ in 0..n {
        state = creation.apply(&state);
    }
    Ok(state.scale(Complex64::new(1.0 / sqrt_factorial(n), 0.0)))
}

/// Closed form of the polynomial part of [`ladder_construct`]:
/// `G_{m,n}(z, z̄; tanh μ) = (1/√(m! n!)) (tanh(μ)/2)^{m/2} Σ_k k! C(n,k) C(m,k)
///  (2^k / sinh(2μ)^{k/2}) (i √(tanh(μ)/2))^{n-k}
///  H_{m-k}(z/√(sinh 2μ)) H_{n-k}(-i√(tanh(μ)/2) z + i z̄/√(2 tanh μ))`.
/// Serves as the independent oracle for the operator route. The `1/√(n!)`
/// matches the ladder normalization; the squeezed polynomials are the
/// `√(n!)`-rescaled image, `H_{m,n}(z, z̄; τ) = √(n!) G_{m,n}(z/√(1-τ²),
/// z̄/√(1-τ²); τ)` with `τ = tanh μ`.
pub fn ladder_closed_form(m: usize, n: usize, mu: f64) -> Result<BivariatePolynomial> {
    if m > MAX_LEVEL || n > MAX_LEVEL {
        return Err(Error::DegreeTooLarge {
            what: "ladder closed form",
            requested: m.max(n),
            max: MAX_LEVEL,
        });
    }
    if !mu.is_finite() || mu <= 0.0 {
        return Err(Error::MuOutOfRange { mu });
    }
    let tau = mu.tanh();
    let s2mu = (2.0 * mu).sinh();
    let root_tau_half = (tau / 2.0).sqrt();
    let alpha1 = Complex64::new(1.0 / s2mu.sqrt(), 0.0);
    let alpha2 = Complex64::new(0.0, -root_tau_half);
    let beta2 = Complex64::new(0.0, 1.0 / (2.0 * tau).sqrt());
    let pref = (tau / 2.0).powf(m as f64 / 2.0) / (sqrt_factorial(m) * sqrt_factorial(n));
    let mut acc = BivariatePolynomial::zero();
    let mut factor = 1.0; // k! C(n,k) C(m,k) 2^k / sinh(2μ)^{k/2}
    for k in 0..=m.min(n) {
        if k > 0 {
            factor *= ((n - k + 1) * (m - k + 1)) as f64 / k as f64 * 2.0 / s2mu.sqrt();
        }
        let coeff = i_pow(n - k) * root_tau_half.powi((n - k) as i32) * factor * pref;
        let h1 = hermite_in_linear(m - k, alpha1, Complex64::default());
        let h2 = hermite_in_linear(n - k, alpha2, beta2);
        acc = acc.add(&h1.mul(&h2).scale(coeff));
    }
    Ok(acc)
}

/// Image of the normalized monomial `w^k/√(k!)` under the squeeze operator:
/// `(1-τ²)^{1/4} e^{τw²/2} (τ/2)^{k/2} H_k(√((1-τ²)/(2τ)) w)/√(k!)`,
/// represented with envelope exponent `τw²/2`.
pub fn squeeze_monomial(k: usize, tau: f64) -> Result<WeightedFunction> {
    if k > MAX_LADDER_DEGREE {
        return Err(Error::DegreeTooLarge {
            what: "squeezed monomial",
            requested: k,
            max: MAX_LADDER_DEGREE,
        });
    }
    crate::hermite::check_tau_open(tau)?;
    let omt = 1.0 - tau * tau;
    let env = GaussianEnvelope::new(
        Complex64::new(tau / 2.0, 0.0),
        Complex64::default(),
        Complex64::default(),
        Complex64::new(omt.powf(0.25), 0.0),
    )?;
    let scale = (tau / 2.0).powf(k as f64 / 2.0) / sqrt_factorial(k);
    let arg = Complex64::new((omt / (2.0 * tau)).sqrt(), 0.0);
    let poly = hermite_in_linear(k, arg, Complex64::default()).scale(Complex64::new(scale, 0.0));
    Ok(WeightedFunction::new(poly, env))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::{complex_hermite, squeezed_hermite};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_op_close(lhs: &LadderOperator, rhs: &LadderOperator, tol: f64) {
        let diff = lhs.sub(rhs);
        let max = diff.terms().map(|t| t.coeff.norm()).fold(0.0, f64::max);
        assert!(
            max <= tol,
            "operator difference {max}, lhs={lhs:?} rhs={rhs:?}"
        );
    }

    fn assert_poly_close(lhs: &BivariatePolynomial, rhs: &BivariatePolynomial, tol: f64) {
        let diff = lhs.sub(rhs).max_coeff_norm();
        let scale = lhs.max_coeff_norm().max(rhs.max_coeff_norm()).max(1.0);
        assert!(diff <= tol * scale, "coefficient difference {diff}");
    }

    #[test]
    fn heisenberg_commutators() {
        let a = LadderOperator::annihilation();
        let astar = LadderOperator::creation();
        let b = LadderOperator::b_lowering();
        let bstar = LadderOperator::b_raising();
        assert_op_close(&a.commutator(&astar), &LadderOperator::identity(), 1e-15);
        assert_op_close(&b.commutator(&bstar), &LadderOperator::identity(), 1e-15);
        assert!(a.commutator(&b).is_zero());
        assert!(a.commutator(&bstar).is_zero());
        assert!(astar.commutator(&b).is_zero());
        let l = LadderOperator::landau_hamiltonian();
        assert!(l.commutator(&l).is_zero());
    }

    #[test]
    fn bogoliubov_preserves_commutator() {
        for &mu in &[0.2, 0.8] {
            let (b_mu, b_mu_star) = LadderOperator::bogoliubov(mu).unwrap();
            assert_op_close(
                &b_mu.commutator(&b_mu_star),
                &LadderOperator::identity(),
                1e-13,
            );
        }
        let (b0, b0s) = LadderOperator::bogoliubov(0.0).unwrap();
        assert_eq!(b0, LadderOperator::b_lowering());
        assert_eq!(b0s, LadderOperator::b_raising());
        assert!(LadderOperator::bogoliubov(-1.0).is_err());
    }

    #[test]
    fn ground_states_are_annihilated() {
        let psi0 = ground_state(0.0).unwrap();
        assert!(LadderOperator::annihilation().apply(&psi0).poly.is_zero());
        assert!(LadderOperator::b_lowering().apply(&psi0).poly.is_zero());
        for &mu in &[0.3, 1.1] {
            let psi = ground_state(mu).unwrap();
            let (b_mu, _) = LadderOperator::bogoliubov(mu).unwrap();
            let hit = b_mu.apply(&psi).poly;
            assert!(hit.max_coeff_norm() <= 1e-15, "residual {hit:?}");
            // A annihilates every squeezed ground state as well
            assert!(
                LadderOperator::annihilation()
                    .apply(&psi)
                    .poly
                    .max_coeff_norm()
                    <= 1e-15
            );
        }
    }

    #[test]
    fn identity_operator_acts_trivially() {
        let psi = ground_state(0.4).unwrap();
        let id = LadderOperator::identity();
        assert_eq!(id.apply(&psi), psi);
    }

    #[test]
    fn composition_matches_sequential_application() {
        let (b_mu, b_mu_star) = LadderOperator::bogoliubov(0.6).unwrap();
        let l = b_mu_star.compose(&b_mu);
        let psi = squeezed_ground_ladder(3, 0.6).unwrap();
        let via_compose = l.apply(&psi);
        let via_sequence = b_mu_star.apply(&b_mu.apply(&psi));
        assert_poly_close(&via_compose.poly, &via_sequence.poly, 1e-12);
    }

    #[test]
    fn creation_power_has_binomial_expansion() {
        // (A*)^n = Σ_j C(n,j) (-z̄/2)^{n-j} ∂_z^j since [∂_z, z̄] = 0
        for n in 0..=5usize {
            let lhs = LadderOperator::creation().pow(n);
            let mut terms = Vec::new();
            for j in 0..=n {
                let coeff = crate::hermite::binomial(n, j) * (-0.5f64).powi((n - j) as i32);
                terms.push(OpTerm {
                    coeff: c(coeff, 0.0),
                    z_pow: 0,
                    zbar_pow: (n - j) as u32,
                    dz: j as u32,
                    dzbar: 0,
                });
            }
            let rhs = LadderOperator::from_terms(terms);
            assert_op_close(&lhs, &rhs, 1e-13);
        }
    }

    #[test]
    fn ground_state_envelope() {
        let psi = ground_state(0.0).unwrap();
        assert_eq!(psi.env.q20, c(0.0, 0.0));
        assert_eq!(psi.env.q11, c(-0.5, 0.0));
        let mu = 0.7f64;
        let psi = ground_state(mu).unwrap();
        assert!((psi.env.q20.re - mu.tanh() / 2.0).abs() <= 1e-15);
        assert!(psi.env.is_integrable());
    }

    #[test]
    fn squeezed_ground_ladder_small_orders() {
        let mu = 0.55f64;
        let psi = squeezed_ground_ladder(0, mu).unwrap();
        assert_eq!(psi.poly, BivariatePolynomial::one());
        // order one: polynomial part z/cosh(μ)
        let psi = squeezed_ground_ladder(1, mu).unwrap();
        assert_eq!(psi.poly.num_terms(), 1);
        let expected = 1.0 / mu.cosh();
        assert!((psi.poly.coeff(1, 0) - c(expected, 0.0)).norm() <= 1e-14);
    }

    #[test]
    fn squeezed_ground_ladder_matches_closed_form() {
        for &mu in &[0.25f64, 0.7] {
            let tau = mu.tanh();
            let s2mu = (2.0 * mu).sinh();
            for m in 0..=12usize {
                let ladder = squeezed_ground_ladder(m, mu).unwrap().poly;
                let closed = hermite_in_linear(m, c(1.0 / s2mu.sqrt(), 0.0), Complex64::default())
                    .scale(c((tau / 2.0).powf(m as f64 / 2.0) / sqrt_factorial(m), 0.0));
                assert_poly_close(&ladder, &closed, 1e-10);
            }
        }
    }

    #[test]
    fn ladder_construct_base_cases() {
        let mu = 0.5;
        assert_eq!(
            ladder_construct(0, 0, mu).unwrap().poly,
            BivariatePolynomial::one()
        );
        for m in 0..=4 {
            let a = ladder_construct(m, 0, mu).unwrap();
            let b = squeezed_ground_ladder(m, mu).unwrap();
            assert_poly_close(&a.poly, &b.poly, 1e-14);
        }
    }

    #[test]
    fn ladder_construct_matches_closed_form() {
        for &mu in &[0.25, 0.55, 0.9] {
            for m in 0..=8usize {
                for n in 0..=8usize {
                    let ladder = ladder_construct(m, n, mu).unwrap().poly;
                    let closed = ladder_closed_form(m, n, mu).unwrap();
                    assert_poly_close(&ladder, &closed, 1e-10);
                }
            }
        }
    }

    #[test]
    fn ladder_route_reproduces_squeezed_family() {
        // √(n!) G_{m,n}(z/√(1-τ²), z̄/√(1-τ²); τ) = H_{m,n}(z, z̄; τ);
        // the √(n!) undoes the ladder normalization
        for &tau in &[0.3f64, 0.7] {
            let mu = tau.atanh();
            let scale = c(1.0 / (1.0 - tau * tau).sqrt(), 0.0);
            for m in 0..=6 {
                for n in 0..=6 {
                    let via_ladder = ladder_construct(m, n, mu)
                        .unwrap()
                        .poly
                        .scale_arguments(scale, scale)
                        .scale(c(sqrt_factorial(n), 0.0));
                    let direct = squeezed_hermite(m, n, tau).unwrap();
                    assert_poly_close(&via_ladder, &direct, 1e-10);
                }
            }
        }
    }

    #[test]
    fn lowering_raising_product_identity() {
        // A^n (A*)^n = Π_{k=1..n} (H_L + k) on the lowest-level states
        let mu = 0.45;
        let a = LadderOperator::annihilation();
        let astar = LadderOperator::creation();
        let hl = LadderOperator::landau_hamiltonian();
        for n in 0..=4usize {
            let lhs_op = a.pow(n).compose(&astar.pow(n));
            let mut rhs_op = LadderOperator::identity();
            for k in 1..=n {
                let shifted = hl.add(&LadderOperator::identity().scale(c(k as f64, 0.0)));
                rhs_op = rhs_op.compose(&shifted);
            }
            for m in 0..=3usize {
                let f = squeezed_ground_ladder(m, mu).unwrap();
                let lhs = lhs_op.apply(&f).poly;
                let rhs = rhs_op.apply(&f).poly;
                assert_poly_close(&lhs, &rhs, 1e-9);
            }
        }
    }

    #[test]
    fn landau_levels_are_operator_eigenspaces() {
        // H_L ψ_m^{(n)} = n ψ_m^{(n)}
        let hl = LadderOperator::landau_hamiltonian();
        for &mu in &[0.0, 0.4, 0.9] {
            for m in 0..=4 {
                for n in 0..=4 {
                    let psi = ladder_construct(m, n, mu).unwrap();
                    let hit = hl.apply(&psi).poly;
                    let scaled = psi.poly.scale(c(n as f64, 0.0));
                    assert_poly_close(&hit, &scaled, 1e-10);
                }
            }
        }
    }

    #[test]
    fn laplacian_annihilates_holomorphic_monomials() {
        for m in 0..6 {
            let p = BivariatePolynomial::monomial(m, 0, c(1.0, 0.0));
            assert!(laplacian_apply(&p).is_zero());
        }
        // z̄ is an eigenfunction with eigenvalue 1
        let p = BivariatePolynomial::monomial(0, 1, c(1.0, 0.0));
        assert_eq!(laplacian_apply(&p), p);
    }

    #[test]
    fn laplacian_eigencheck_complex_hermite() {
        // at τ = 0 the plain operator has the complex Hermite eigenbasis
        for m in 0..=8 {
            for n in 0..=6 {
                let p = complex_hermite(m, n).unwrap();
                let lhs = laplacian_apply(&p);
                let rhs = p.scale(c(n as f64, 0.0));
                assert_poly_close(&lhs, &rhs, 1e-12);
            }
        }
    }

    #[test]
    fn elliptic_laplacian_eigencheck_squeezed_family() {
        for &tau in &[0.0, 0.25, 0.5, 0.75, 0.9] {
            for m in 0..=8 {
                for n in 0..=6 {
                    let p = squeezed_hermite(m, n, tau).unwrap();
                    let lhs = elliptic_laplacian_apply(&p, tau).unwrap();
                    let rhs = p.scale(c(n as f64, 0.0));
                    assert_poly_close(&lhs, &rhs, 1e-10);
                }
            }
        }
    }

    #[test]
    fn plain_laplacian_fails_on_squeezed_family_for_positive_tau() {
        // the eigen-identity genuinely needs the elliptic form: the plain
        // operator misses it whenever τ > 0 and n ≥ 1
        let tau = 0.5;
        let p = squeezed_hermite(0, 1, tau).unwrap();
        let lhs = laplacian_apply(&p);
        let rhs = p.scale(c(1.0, 0.0));
        let diff = lhs.sub(&rhs).max_coeff_norm();
        assert!(diff > 1e-2, "plain operator unexpectedly matched: {diff}");
    }

    #[test]
    fn elliptic_laplacian_reduces_to_plain() {
        assert_eq!(
            LadderOperator::elliptic_laplacian(0.0).unwrap(),
            LadderOperator::magnetic_laplacian()
        );
    }

    #[test]
    fn squeeze_monomial_forms() {
        let tau = 0.4f64;
        let f = squeeze_monomial(0, tau).unwrap();
        assert_eq!(f.poly, BivariatePolynomial::one());
        assert!((f.env.c.re - (1.0 - tau * tau).powf(0.25)).abs() <= 1e-15);
        assert!((f.env.q20.re - tau / 2.0).abs() <= 1e-15);
        // k = 1: polynomial part √(1-τ²) w
        let f = squeeze_monomial(1, tau).unwrap();
        assert_eq!(f.poly.num_terms(), 1);
        assert!((f.poly.coeff(1, 0) - c((1.0 - tau * tau).sqrt(), 0.0)).norm() <= 1e-14);
        // τ → 0⁺: polynomial part approaches w^k/√(k!)
        let f = squeeze_monomial(3, 1e-9).unwrap();
        let expected = 1.0 / sqrt_factorial(3);
        assert!((f.poly.coeff(3, 0).re - expected).abs() <= 1e-6);
    }

    #[test]
    fn apply_is_linear_in_composition() {
        // gw-application over a composed operator equals the composition of
        // applications (associativity of the action)
        let (b_mu, b_mu_star) = LadderOperator::bogoliubov(0.35).unwrap();
        let astar = LadderOperator::creation();
        let product = astar.compose(&b_mu_star).compose(&b_mu);
        let f = squeezed_ground_ladder(2, 0.35).unwrap();
        let lhs = product.apply(&f);
        let rhs = astar.apply(&b_mu_star.apply(&b_mu.apply(&f)));
        assert_poly_close(&lhs.poly, &rhs.poly, 1e-12);
    }

    fn random_operator(state: &mut u64, terms: usize) -> LadderOperator {
        let mut next = |hi: u32| {
            *state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((*state >> 33) % hi as u64) as u32
        };
        LadderOperator::from_terms((0..terms).map(|_| OpTerm {
            coeff: c(next(7) as f64 - 3.0, next(7) as f64 - 3.0),
            z_pow: next(3),
            zbar_pow: next(3),
            dz: next(3),
            dzbar: next(3),
        }))
    }

    #[test]
    fn composition_is_associative() {
        // integer-coefficient operators compose exactly, so the two
        // parenthesizations must agree term for term
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..15 {
            let l1 = random_operator(&mut state, 3);
            let l2 = random_operator(&mut state, 3);
            let l3 = random_operator(&mut state, 3);
            let left = l1.compose(&l2).compose(&l3);
            let right = l1.compose(&l2.compose(&l3));
            assert_op_close(&left, &right, 1e-9);
        }
    }

    #[test]
    fn commutators_satisfy_jacobi() {
        let mut state = 0x243f6a8885a308d3u64;
        for _ in 0..10 {
            let a = random_operator(&mut state, 3);
            let b = random_operator(&mut state, 3);
            let d = random_operator(&mut state, 3);
            let cyclic = a
                .commutator(&b.commutator(&d))
                .add(&b.commutator(&d.commutator(&a)))
                .add(&d.commutator(&a.commutator(&b)));
            let worst = cyclic.terms().map(|t| t.coeff.norm()).fold(0.0, f64::max);
            assert!(worst <= 1e-9, "Jacobi defect {worst}");
        }
    }
}
