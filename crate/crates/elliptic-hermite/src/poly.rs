//! Exact coefficient algebra for planar polynomials in the two independent
//! symbols `z` and `z̄`, and for such polynomials multiplied by a fixed
//! Gaussian envelope `exp(q20 z² + q11 z z̄ + q02 z̄²)`.
//!
//! Working in coefficient space lets differential and ladder identities be
//! checked exactly rather than pointwise only. Coefficients are
//! double-precision complex; coefficients with magnitude below `1e-300`
//! (true underflow) are dropped, every other comparison carries an explicit
//! tolerance.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Magnitude below which a stored coefficient counts as exactly zero.
pub const TRIM_THRESHOLD: f64 = 1e-300;

/// A finite point of the complex plane. Construction rejects NaN and
/// infinities so that downstream evaluation is always well defined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    pub re: f64,
    pub im: f64,
}

impl ComplexPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if re.is_finite() && im.is_finite() {
            Ok(Self { re, im })
        } else {
            Err(Error::NonFinite {
                what: "complex point",
            })
        }
    }

    pub fn value(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

impl From<ComplexPoint> for Complex64 {
    fn from(p: ComplexPoint) -> Self {
        p.value()
    }
}

impl TryFrom<Complex64> for ComplexPoint {
    type Error = Error;

    fn try_from(z: Complex64) -> Result<Self> {
        ComplexPoint::new(z.re, z.im)
    }
}

/// One serialized coefficient: `c · z^a z̄^b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoeffRecord {
    pub a: u32,
    pub b: u32,
    pub re: f64,
    pub im: f64,
}

/// Sparse polynomial in the two independent symbols `z` and `z̄`.
///
/// The map is keyed by the exponent pair `(a, b)` of `z^a z̄^b`; stored
/// coefficients are never zero (trimmed representation) and the cached
/// degrees equal the true maxima over stored keys.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), Complex64>,
    deg_z: u32,
    deg_zbar: u32,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    /// `c · z^a z̄^b`.
    pub fn monomial(a: u32, b: u32, c: Complex64) -> Self {
        let mut terms = BTreeMap::new();
        if c.norm() >= TRIM_THRESHOLD {
            terms.insert((a, b), c);
        }
        let mut p = Self {
            terms,
            deg_z: 0,
            deg_zbar: 0,
        };
        p.refresh_degrees();
        p
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32), Complex64)>) -> Self {
        let mut p = Self::zero();
        for (key, c) in it {
            p.add_term(key.0, key.1, c);
        }
        p.normalize();
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_z(&self) -> u32 {
        self.deg_z
    }

    pub fn deg_zbar(&self) -> u32 {
        self.deg_zbar
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, a: u32, b: u32) -> Complex64 {
        self.terms.get(&(a, b)).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &Complex64)> {
        self.terms.iter()
    }

    /// Largest coefficient magnitude; 0 for the zero polynomial.
    pub fn max_coeff_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn add_term(&mut self, a: u32, b: u32, c: Complex64) {
        let entry = self.terms.entry((a, b)).or_default();
        *entry += c;
    }

    fn refresh_degrees(&mut self) {
        self.deg_z = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        self.deg_zbar = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
    }

    fn normalize(&mut self) {
        self.terms.retain(|_, c| c.norm() >= TRIM_THRESHOLD);
        self.refresh_degrees();
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), &c) in other.terms.iter() {
            out.add_term(a, b, c);
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
            deg_z: 0,
            deg_zbar: 0,
        };
        out.normalize();
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a1, b1), &c1) in self.terms.iter() {
            for (&(a2, b2), &c2) in other.terms.iter() {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out.normalize();
        out
    }

    /// Multiply by `z^a z̄^b`.
    pub fn mul_monomial(&self, a: u32, b: u32) -> Self {
        let mut out = Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a1, b1), &c)| ((a1 + a, b1 + b), c))
                .collect(),
            deg_z: 0,
            deg_zbar: 0,
        };
        out.normalize();
        out
    }

    /// Partial derivative with respect to `z`: `(a, b) ↦ (a-1, b)` with factor `a`.
    pub fn d_z(&self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), &c) in self.terms.iter() {
            if a > 0 {
                out.add_term(a - 1, b, c * a as f64);
            }
        }
        out.normalize();
        out
    }

    /// Partial derivative with respect to `z̄`.
    pub fn d_zbar(&self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), &c) in self.terms.iter() {
            if b > 0 {
                out.add_term(a, b - 1, c * b as f64);
            }
        }
        out.normalize();
        out
    }

    /// Substitute `z ↦ sz·z` and `z̄ ↦ szbar·z̄`; coefficient `(a, b)` picks up
    /// `sz^a szbar^b`.
    pub fn scale_arguments(&self, sz: Complex64, szbar: Complex64) -> Self {
        let mut out = Self::zero();
        for (&(a, b), &c) in self.terms.iter() {
            out.add_term(a, b, c * sz.powu(a) * szbar.powu(b));
        }
        out.normalize();
        out
    }

    /// The polynomial whose values are the complex conjugates of this one on
    /// the diagonal `z̄ = conj(z)`: coefficient `(a, b)` moves to `(b, a)`
    /// conjugated.
    pub fn conj_mirror(&self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), &c) in self.terms.iter() {
            out.add_term(b, a, c.conj());
        }
        out.normalize();
        out
    }

    /// Evaluate with independent values for the two symbols. Two-level
    /// Horner over the sparse exponent ladder, deterministic for fixed input.
    pub fn eval_pair(&self, z: Complex64, zbar: Complex64) -> Complex64 {
        if self.terms.is_empty() {
            return Complex64::default();
        }
        // Reverse iteration visits keys in descending (a, b) order, which
        // groups by `a` with descending `b` inside each group: exactly the
        // ladder order a generalized Horner scheme wants.
        let mut outer = Complex64::default();
        let mut prev_a: Option<u32> = None;
        let mut inner = Complex64::default();
        let mut prev_b = 0u32;
        for (&(a, b), &c) in self.terms.iter().rev() {
            match prev_a {
                Some(pa) if pa == a => {
                    inner = inner * zbar.powu(prev_b - b) + c;
                }
                Some(pa) => {
                    outer = (outer + inner * zbar.powu(prev_b)) * z.powu(pa - a);
                    inner = c;
                }
                None => inner = c,
            }
            prev_a = Some(a);
            prev_b = b;
        }
        let a_last = prev_a.expect("nonempty polynomial");
        (outer + inner * zbar.powu(prev_b)) * z.powu(a_last)
    }

    /// Evaluate on the diagonal `z̄ = conj(z)`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.eval_pair(z, z.conj())
    }

    /// Serialized form: records sorted lexicographically by `(a, b)`.
    pub fn to_records(&self) -> Vec<CoeffRecord> {
        self.terms
            .iter()
            .map(|(&(a, b), &c)| CoeffRecord {
                a,
                b,
                re: c.re,
                im: c.im,
            })
            .collect()
    }

    pub fn from_records(records: &[CoeffRecord]) -> Result<Self> {
        let mut p = Self::zero();
        for r in records {
            if !(r.re.is_finite() && r.im.is_finite()) {
                return Err(Error::NonFinite {
                    what: "polynomial coefficient",
                });
            }
            p.add_term(r.a, r.b, Complex64::new(r.re, r.im));
        }
        p.normalize();
        Ok(p)
    }
}

impl Serialize for BivariatePolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_records().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BivariatePolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<CoeffRecord>::deserialize(d)?;
        BivariatePolynomial::from_records(&records).map_err(serde::de::Error::custom)
    }
}

/// Gaussian envelope `c · exp(q20 z² + q11 z z̄ + q02 z̄²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianEnvelope {
    pub q20: Complex64,
    pub q11: Complex64,
    pub q02: Complex64,
    pub c: Complex64,
}

impl GaussianEnvelope {
    pub fn new(q20: Complex64, q11: Complex64, q02: Complex64, c: Complex64) -> Result<Self> {
        for (v, what) in [
            (q20, "envelope coefficient q20"),
            (q11, "envelope coefficient q11"),
            (q02, "envelope coefficient q02"),
            (c, "envelope prefactor"),
        ] {
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::NonFinite { what });
            }
        }
        Ok(Self { q20, q11, q02, c })
    }

    /// Whether `|exp(Q)|` decays in every direction of the plane, i.e. the
    /// real quadratic form induced on `(x, y)` is negative definite. Fock
    /// space elements such as `e^{τ z²/2}` legitimately fail this; anything
    /// used as an L² weight must satisfy it.
    pub fn is_integrable(&self) -> bool {
        // Re(q20 z² + q11 z z̄ + q02 z̄²) = A x² + B y² + C xy on z = x + iy.
        let a = self.q20.re + self.q11.re + self.q02.re;
        let b = self.q11.re - self.q20.re - self.q02.re;
        let c = 2.0 * (self.q02.im - self.q20.im);
        a < 0.0 && b < 0.0 && a * b - 0.25 * c * c > 0.0
    }

    /// Exponent `Q(z, z̄)` as a polynomial.
    pub fn exponent(&self) -> BivariatePolynomial {
        BivariatePolynomial::from_terms([
            ((2, 0), self.q20),
            ((1, 1), self.q11),
            ((0, 2), self.q02),
        ])
    }

    /// `∂Q/∂z = 2 q20 z + q11 z̄`.
    pub fn d_z_exponent(&self) -> BivariatePolynomial {
        BivariatePolynomial::from_terms([((1, 0), 2.0 * self.q20), ((0, 1), self.q11)])
    }

    /// `∂Q/∂z̄ = q11 z + 2 q02 z̄`.
    pub fn d_zbar_exponent(&self) -> BivariatePolynomial {
        BivariatePolynomial::from_terms([((1, 0), self.q11), ((0, 1), 2.0 * self.q02)])
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let zbar = z.conj();
        self.c * (self.q20 * z * z + self.q11 * z * zbar + self.q02 * zbar * zbar).exp()
    }
}

/// A polynomial times a fixed Gaussian envelope. Closed under `∂_z`, `∂_z̄`
/// and multiplication by `z` or `z̄`: the envelope never changes, envelope
/// derivatives fold into the polynomial part.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedFunction {
    pub poly: BivariatePolynomial,
    pub env: GaussianEnvelope,
}

impl WeightedFunction {
    pub fn new(poly: BivariatePolynomial, env: GaussianEnvelope) -> Self {
        Self { poly, env }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.poly.eval(z) * self.env.eval(z)
    }

    /// `∂_z (p e^Q) = (∂_z p + p ∂_z Q) e^Q`.
    pub fn d_z(&self) -> Self {
        let poly = self
            .poly
            .d_z()
            .add(&self.poly.mul(&self.env.d_z_exponent()));
        Self {
            poly,
            env: self.env,
        }
    }

    pub fn d_zbar(&self) -> Self {
        let poly = self
            .poly
            .d_zbar()
            .add(&self.poly.mul(&self.env.d_zbar_exponent()));
        Self {
            poly,
            env: self.env,
        }
    }

    pub fn mul_monomial(&self, a: u32, b: u32) -> Self {
        Self {
            poly: self.poly.mul_monomial(a, b),
            env: self.env,
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            poly: self.poly.scale(factor),
            env: self.env,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.env != other.env {
            return Err(Error::EnvelopeMismatch);
        }
        Ok(Self {
            poly: self.poly.add(&other.poly),
            env: self.env,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_constant() {
        let p = BivariatePolynomial::one();
        assert_eq!(p.eval(c(3.7, -1.2)), c(1.0, 0.0));
    }

    #[test]
    fn eval_zzbar_minus_one() {
        // |1+i|² - 1 = 1
        let p = BivariatePolynomial::from_terms([((1, 1), c(1.0, 0.0)), ((0, 0), c(-1.0, 0.0))]);
        assert_relative_eq!(p.eval(c(1.0, 1.0)).re, 1.0, max_relative = 1e-15);
        assert!(p.eval(c(1.0, 1.0)).im.abs() < 1e-15);
    }

    #[test]
    fn eval_z_squared_at_i() {
        let p = BivariatePolynomial::monomial(2, 0, c(1.0, 0.0));
        let v = p.eval(c(0.0, 1.0));
        assert_relative_eq!(v.re, -1.0, max_relative = 1e-15);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn derivative_of_holomorphic_monomial_vanishes() {
        let p = BivariatePolynomial::monomial(5, 0, c(1.0, 0.0));
        assert!(p.d_zbar().is_zero());
    }

    #[test]
    fn power_rule() {
        // ∂_z (z² z̄) = 2 z z̄
        let p = BivariatePolynomial::monomial(2, 1, c(1.0, 0.0));
        let d = p.d_z();
        assert_eq!(d.num_terms(), 1);
        assert_eq!(d.coeff(1, 1), c(2.0, 0.0));
    }

    #[test]
    fn distributivity() {
        // (z z̄ - 1) · z = z² z̄ - z
        let p = BivariatePolynomial::from_terms([((1, 1), c(1.0, 0.0)), ((0, 0), c(-1.0, 0.0))]);
        let q = BivariatePolynomial::monomial(1, 0, c(1.0, 0.0));
        let r = p.mul(&q);
        assert_eq!(r.coeff(2, 1), c(1.0, 0.0));
        assert_eq!(r.coeff(1, 0), c(-1.0, 0.0));
        assert_eq!(r.num_terms(), 2);
    }

    #[test]
    fn degree_caches_track_maxima() {
        let p = BivariatePolynomial::from_terms([((3, 1), c(1.0, 0.0)), ((1, 4), c(2.0, 0.0))]);
        assert_eq!(p.deg_z(), 3);
        assert_eq!(p.deg_zbar(), 4);
        let d = p.d_zbar();
        assert_eq!(d.deg_zbar(), 3);
    }

    #[test]
    fn cancellation_trims() {
        let p = BivariatePolynomial::monomial(1, 0, c(1.0, 0.0));
        let q = p.sub(&p);
        assert!(q.is_zero());
        assert_eq!(q.num_terms(), 0);
    }

    #[test]
    fn envelope_derivative_folds_into_polynomial() {
        // ∂_z̄ of 1 · exp(-z z̄ / 2) has polynomial part -z/2 (same envelope);
        // the z-derivative gives -z̄/2.
        let env =
            GaussianEnvelope::new(c(0.0, 0.0), c(-0.5, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let f = WeightedFunction::new(BivariatePolynomial::one(), env);
        let fz = f.d_z();
        assert_eq!(fz.poly.num_terms(), 1);
        assert_eq!(fz.poly.coeff(0, 1), c(-0.5, 0.0));
        assert_eq!(fz.env, env);
    }

    #[test]
    fn envelope_integrability() {
        let gauss =
            GaussianEnvelope::new(c(0.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(gauss.is_integrable());
        // e^{τ z² / 2} grows along the real axis.
        let fock =
            GaussianEnvelope::new(c(0.25, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(!fock.is_integrable());
        // ground-state envelope: τ z²/2 - z z̄/2 stays integrable for τ < 1
        let ground =
            GaussianEnvelope::new(c(0.45, 0.0), c(-0.5, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(ground.is_integrable());
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let p = BivariatePolynomial::from_terms([
            ((0, 0), c(0.1, -0.3)),
            ((2, 1), c(1.0 / 3.0, 2.0f64.sqrt())),
            ((5, 4), c(-1e-200, 3.25e100)),
        ]);
        let json = serde_json::to_string(&p).unwrap();
        let q: BivariatePolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(p, q);
        // records come out sorted lexicographically by (a, b)
        let recs = p.to_records();
        let mut sorted = recs.clone();
        sorted.sort_by_key(|r| (r.a, r.b));
        assert_eq!(
            recs.iter().map(|r| (r.a, r.b)).collect::<Vec<_>>(),
            sorted.iter().map(|r| (r.a, r.b)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn rejects_non_finite() {
        assert!(ComplexPoint::new(f64::NAN, 0.0).is_err());
        assert!(ComplexPoint::new(0.0, f64::INFINITY).is_err());
        let bad = [CoeffRecord {
            a: 0,
            b: 0,
            re: f64::NAN,
            im: 0.0,
        }];
        assert!(BivariatePolynomial::from_records(&bad).is_err());
    }

    prop_compose! {
        /// Small integer-coefficient polynomials: all arithmetic on them is
        /// exact in doubles, so structural identities can be asserted bit-exactly.
        fn int_poly()(terms in prop::collection::vec(
            ((0u32..6, 0u32..6), (-8i32..=8, -8i32..=8)), 0..10))
            -> BivariatePolynomial
        {
            BivariatePolynomial::from_terms(terms.into_iter().map(
                |((a, b), (re, im))| ((a, b), c(re as f64, im as f64))))
        }
    }

    proptest! {
        #[test]
        fn mul_is_evaluation_homomorphism(p in int_poly(), q in int_poly(),
                                          re in -2.0f64..2.0, im in -2.0f64..2.0) {
            let z = c(re, im);
            let lhs = p.mul(&q).eval(z);
            let rhs = p.eval(z) * q.eval(z);
            let scale = lhs.norm().max(rhs.norm()).max(1.0);
            prop_assert!((lhs - rhs).norm() <= 1e-12 * scale);
        }

        #[test]
        fn mixed_partials_commute(p in int_poly()) {
            prop_assert_eq!(p.d_z().d_zbar(), p.d_zbar().d_z());
        }

        #[test]
        fn serde_round_trip(p in int_poly()) {
            let json = serde_json::to_string(&p).unwrap();
            let q: BivariatePolynomial = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(p, q);
        }

        #[test]
        fn conj_mirror_matches_conjugate_values(p in int_poly(),
                                                re in -2.0f64..2.0, im in -2.0f64..2.0) {
            let z = c(re, im);
            let lhs = p.conj_mirror().eval(z);
            let rhs = p.eval(z).conj();
            prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
        }
    }
}
