//! Minimal dense complex linear algebra: Householder Hessenberg reduction,
//! implicitly shifted QR eigenvalue iteration with Wilkinson shifts, LU with
//! partial pivoting (for inverse iteration), Householder least squares, and
//! the real symmetric tridiagonal QL iteration used by the quadrature rules.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            data: vec![Complex64::default(); n_rows * n_cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn mat_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.n_cols);
        (0..self.n_rows)
            .map(|i| {
                let row = &self.data[i * self.n_cols..(i + 1) * self.n_cols];
                row.iter().zip(v).map(|(a, x)| a * x).sum()
            })
            .collect()
    }

    /// Largest magnitude of `M - M†` over all entries; square matrices only.
    pub fn hermitian_defect(&self) -> f64 {
        assert_eq!(self.n_rows, self.n_cols);
        let mut worst = 0.0f64;
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n_cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n_cols + j]
    }
}

/// Reduce a square matrix to upper Hessenberg form by Householder
/// reflections (similarity transform; the orthogonal factor is discarded).
pub fn hessenberg_in_place(h: &mut CMatrix) {
    let n = h.n_rows();
    assert_eq!(n, h.n_cols());
    for k in 0..n.saturating_sub(2) {
        // Householder vector for column k below the subdiagonal.
        let mut norm_sq = 0.0;
        for i in (k + 1)..n {
            norm_sq += h[(i, k)].norm_sqr();
        }
        if norm_sq == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let alpha = if x0.norm() == 0.0 {
            Complex64::new(-norm_sq.sqrt(), 0.0)
        } else {
            -(x0 / x0.norm()) * norm_sq.sqrt()
        };
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm_sq: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        if vnorm_sq == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm_sq;
        // left: H <- (I - beta v v†) H on rows k+1.., columns k..
        for j in k..n {
            let mut dot = Complex64::default();
            for (t, vi) in v.iter().enumerate() {
                dot += vi.conj() * h[(k + 1 + t, j)];
            }
            dot *= beta;
            for (t, vi) in v.iter().enumerate() {
                let delta = vi * dot;
                h[(k + 1 + t, j)] -= delta;
            }
        }
        // right: H <- H (I - beta v v†) on columns k+1.., all rows
        for i in 0..n {
            let mut dot = Complex64::default();
            for (t, vi) in v.iter().enumerate() {
                dot += h[(i, k + 1 + t)] * vi;
            }
            dot *= beta;
            for (t, vi) in v.iter().enumerate() {
                let delta = dot * vi.conj();
                h[(i, k + 1 + t)] -= delta;
            }
        }
        // clean the annihilated entries
        h[(k + 1, k)] = alpha;
        for i in (k + 2)..n {
            h[(i, k)] = Complex64::default();
        }
    }
}

/// Complex Givens rotation `[c, s; -s̄, c]` (c real) sending `(f, g)` to `(r, 0)`.
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    let gn = g.norm();
    if gn == 0.0 {
        return (1.0, Complex64::default());
    }
    let fnorm = f.norm();
    if fnorm == 0.0 {
        return (0.0, g.conj() / gn);
    }
    let d = (fnorm * fnorm + gn * gn).sqrt();
    let c = fnorm / d;
    let s = (f / fnorm) * (g.conj() / d);
    (c, s)
}

/// Wilkinson shift: the eigenvalue of the trailing 2×2 block closer to its
/// bottom-right entry.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let tr2 = (a + d) / 2.0;
    let det = a * d - b * c;
    let disc = (tr2 * tr2 - det).sqrt();
    let r1 = tr2 + disc;
    let r2 = tr2 - disc;
    if (r1 - d).norm() <= (r2 - d).norm() {
        r1
    } else {
        r2
    }
}

/// All eigenvalues of a square complex matrix: Householder reduction to
/// Hessenberg form followed by implicitly shifted QR with Wilkinson shifts.
/// Deflation sets a subdiagonal to zero once it falls below
/// `ε(|h_kk| + |h_{k+1,k+1}|)`; gives up after `30·n` sweeps.
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<Complex64>> {
    let n = a.n_rows();
    assert_eq!(n, a.n_cols());
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = a.clone();
    hessenberg_in_place(&mut h);

    let eps = f64::EPSILON;
    let mut eigs = vec![Complex64::default(); n];
    let mut hi = n - 1;
    let max_sweeps = 30 * n;
    let mut sweeps = 0usize;
    let mut stalls = 0usize;

    loop {
        // deflate any negligible subdiagonal in the active window
        for k in 1..=hi {
            let tol = eps * (h[(k - 1, k - 1)].norm() + h[(k, k)].norm());
            if h[(k, k - 1)].norm() <= tol {
                h[(k, k - 1)] = Complex64::default();
            }
        }
        if hi == 0 {
            eigs[0] = h[(0, 0)];
            break;
        }
        if h[(hi, hi - 1)].norm() == 0.0 {
            eigs[hi] = h[(hi, hi)];
            hi -= 1;
            stalls = 0;
            continue;
        }
        // active block [lo..=hi]
        let mut lo = hi;
        while lo > 0 && h[(lo, lo - 1)].norm() != 0.0 {
            lo -= 1;
        }
        if sweeps >= max_sweeps {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        stalls += 1;
        let sigma = if stalls % 20 == 0 {
            // exceptional shift to break limit cycles
            h[(hi, hi)] + 0.75 * h[(hi, hi - 1)].norm()
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        // implicit single-shift sweep: chase the bulge down the block
        let mut x = h[(lo, lo)] - sigma;
        let mut y = h[(lo + 1, lo)];
        for k in lo..hi {
            let (c, s) = givens(x, y);
            let sbar = s.conj();
            let col_start = if k > lo { k - 1 } else { lo };
            for j in col_start..=hi {
                let t1 = h[(k, j)];
                let t2 = h[(k + 1, j)];
                h[(k, j)] = c * t1 + s * t2;
                h[(k + 1, j)] = -sbar * t1 + c * t2;
            }
            let row_end = (k + 2).min(hi);
            for i in lo..=row_end {
                let t1 = h[(i, k)];
                let t2 = h[(i, k + 1)];
                h[(i, k)] = t1 * c + t2 * sbar;
                h[(i, k + 1)] = -t1 * s + t2 * c;
            }
            if k + 2 <= hi {
                x = h[(k + 1, k)];
                y = h[(k + 2, k)];
            }
        }
    }
    Ok(eigs)
}

/// LU decomposition with partial pivoting; exact zero pivots are nudged to
/// `ε·‖A‖_F` so that inverse iteration at a computed eigenvalue stays usable.
fn lu_decompose(a: &CMatrix) -> (CMatrix, Vec<usize>) {
    let n = a.n_rows();
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let floor = f64::EPSILON * a.frobenius_norm().max(f64::MIN_POSITIVE);
    for k in 0..n {
        let mut pivot = k;
        let mut best = lu[(k, k)].norm();
        for i in (k + 1)..n {
            let v = lu[(i, k)].norm();
            if v > best {
                best = v;
                pivot = i;
            }
        }
        if pivot != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(pivot, j)];
                lu[(pivot, j)] = tmp;
            }
            perm.swap(k, pivot);
        }
        if lu[(k, k)].norm() == 0.0 {
            lu[(k, k)] = Complex64::new(floor, 0.0);
        }
        let inv = Complex64::new(1.0, 0.0) / lu[(k, k)];
        for i in (k + 1)..n {
            let factor = lu[(i, k)] * inv;
            lu[(i, k)] = factor;
            for j in (k + 1)..n {
                let delta = factor * lu[(k, j)];
                lu[(i, j)] -= delta;
            }
        }
    }
    (lu, perm)
}

fn lu_solve_factored(lu: &CMatrix, perm: &[usize], b: &[Complex64]) -> Vec<Complex64> {
    let n = lu.n_rows();
    let mut x: Vec<Complex64> = perm.iter().map(|&p| b[p]).collect();
    // forward: L y = P b (unit lower triangular)
    for i in 1..n {
        for j in 0..i {
            let delta = lu[(i, j)] * x[j];
            x[i] -= delta;
        }
    }
    // backward: U x = y
    for i in (0..n).rev() {
        for j in (i + 1)..n {
            let delta = lu[(i, j)] * x[j];
            x[i] -= delta;
        }
        x[i] /= lu[(i, i)];
    }
    x
}

/// Solve `A x = b` by LU with partial pivoting.
pub fn lu_solve(a: &CMatrix, b: &[Complex64]) -> Vec<Complex64> {
    let (lu, perm) = lu_decompose(a);
    lu_solve_factored(&lu, &perm, b)
}

/// Relative residual `‖Av - λv‖₂ / ‖A‖_F` of one inverse-iteration vector
/// for the computed eigenvalue `λ`.
pub fn eigen_residual(a: &CMatrix, lambda: Complex64) -> f64 {
    let n = a.n_rows();
    let mut shifted = a.clone();
    for i in 0..n {
        shifted[(i, i)] -= lambda;
    }
    let (lu, perm) = lu_decompose(&shifted);
    // a mildly irregular start vector avoids accidental orthogonality
    let mut v: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(1.0, (i as f64 + 0.5) / n as f64))
        .collect();
    let vnorm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    for c in v.iter_mut() {
        *c /= vnorm;
    }
    for _ in 0..2 {
        let w = lu_solve_factored(&lu, &perm, &v);
        let norm = w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            break;
        }
        v = w.into_iter().map(|c| c / norm).collect();
    }
    let av = a.mat_vec(&v);
    let resid = av
        .iter()
        .zip(&v)
        .map(|(aw, w)| (aw - lambda * w).norm_sqr())
        .sum::<f64>()
        .sqrt();
    resid / a.frobenius_norm().max(f64::MIN_POSITIVE)
}

/// Least squares `min ‖Ax - b‖₂` by Householder QR; returns the solution
/// and the residual norm. Requires `n_rows ≥ n_cols`.
pub fn lstsq(a: &CMatrix, b: &[Complex64]) -> (Vec<Complex64>, f64) {
    let m = a.n_rows();
    let n = a.n_cols();
    assert!(
        m >= n,
        "least squares needs at least as many rows as columns"
    );
    assert_eq!(b.len(), m);
    let mut r = a.clone();
    let mut rhs = b.to_vec();
    for k in 0..n {
        let mut norm_sq = 0.0;
        for i in k..m {
            norm_sq += r[(i, k)].norm_sqr();
        }
        if norm_sq == 0.0 {
            continue;
        }
        let x0 = r[(k, k)];
        let alpha = if x0.norm() == 0.0 {
            Complex64::new(-norm_sq.sqrt(), 0.0)
        } else {
            -(x0 / x0.norm()) * norm_sq.sqrt()
        };
        let mut v: Vec<Complex64> = (k..m).map(|i| r[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm_sq: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        if vnorm_sq == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm_sq;
        for j in k..n {
            let mut dot = Complex64::default();
            for (t, vi) in v.iter().enumerate() {
                dot += vi.conj() * r[(k + t, j)];
            }
            dot *= beta;
            for (t, vi) in v.iter().enumerate() {
                let delta = vi * dot;
                r[(k + t, j)] -= delta;
            }
        }
        let mut dot = Complex64::default();
        for (t, vi) in v.iter().enumerate() {
            dot += vi.conj() * rhs[k + t];
        }
        dot *= beta;
        for (t, vi) in v.iter().enumerate() {
            let delta = vi * dot;
            rhs[k + t] -= delta;
        }
    }
    // back substitution on the upper-triangular part
    let mut x = vec![Complex64::default(); n];
    for i in (0..n).rev() {
        let mut acc = rhs[i];
        for j in (i + 1)..n {
            acc -= r[(i, j)] * x[j];
        }
        x[i] = if r[(i, i)].norm() == 0.0 {
            Complex64::default()
        } else {
            acc / r[(i, i)]
        };
    }
    let residual = rhs[n..].iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    (x, residual)
}

/// Eigenvalues of a real symmetric tridiagonal matrix (diagonal `d`,
/// off-diagonal `e`, `e[i]` couples rows i and i+1) by the QL iteration with
/// implicit shifts; results ascend.
pub fn symmetric_tridiagonal_eigenvalues(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    assert_eq!(e.len(), n);
    // e[i] couples rows (i, i+1); the last slot is workspace
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::EigensolveFailure);
            }
            // implicit shift from the 2x2 at l
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            if g < 0.0 {
                r = -r;
            }
            g = d[m] - d[l] + e[l] / (g + r);
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0f64;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                f = (d[i] - g) * s + 2.0 * c * b;
                p = s * f;
                d[i + 1] = g + p;
                g = c * f - b;
            }
            if r == 0.0 && m > l + 1 {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| {
            a.re.partial_cmp(&b.re)
                .unwrap()
                .then(a.im.partial_cmp(&b.im).unwrap())
        });
        v
    }

    #[test]
    fn diagonal_matrix_eigenvalues_exact() {
        let mut a = CMatrix::zeros(4, 4);
        for (i, v) in [c(1.0, 0.0), c(-2.0, 0.5), c(0.0, -1.0), c(3.5, 0.0)]
            .into_iter()
            .enumerate()
        {
            a[(i, i)] = v;
        }
        let eigs = sorted(eigenvalues(&a).unwrap());
        let expected = sorted(vec![c(1.0, 0.0), c(-2.0, 0.5), c(0.0, -1.0), c(3.5, 0.0)]);
        for (got, want) in eigs.iter().zip(&expected) {
            assert!((got - want).norm() <= 1e-14);
        }
    }

    #[test]
    fn companion_matrix_roots() {
        // companion of λ² - 1 has roots ±1
        let mut a = CMatrix::zeros(2, 2);
        a[(0, 1)] = c(1.0, 0.0);
        a[(1, 0)] = c(1.0, 0.0);
        let eigs = sorted(eigenvalues(&a).unwrap());
        assert!((eigs[0] - c(-1.0, 0.0)).norm() <= 1e-12);
        assert!((eigs[1] - c(1.0, 0.0)).norm() <= 1e-12);
    }

    #[test]
    fn triangular_matrix_eigenvalues() {
        let mut a = CMatrix::zeros(3, 3);
        a[(0, 0)] = c(2.0, 1.0);
        a[(0, 1)] = c(1.0, 0.0);
        a[(0, 2)] = c(0.5, -0.5);
        a[(1, 1)] = c(-1.0, 0.0);
        a[(1, 2)] = c(0.25, 0.0);
        a[(2, 2)] = c(0.5, -2.0);
        let eigs = sorted(eigenvalues(&a).unwrap());
        let expected = sorted(vec![c(2.0, 1.0), c(-1.0, 0.0), c(0.5, -2.0)]);
        for (got, want) in eigs.iter().zip(&expected) {
            assert!((got - want).norm() <= 1e-12, "got {got}, want {want}");
        }
    }

    #[test]
    fn random_matrix_residuals_and_trace() {
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            ((state >> 11) as f64) / ((1u64 << 53) as f64) * 2.0 - 1.0
        };
        let n = 16;
        let mut a = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] = c(next(), next());
            }
        }
        let eigs = eigenvalues(&a).unwrap();
        assert_eq!(eigs.len(), n);
        for &lambda in &eigs {
            let r = eigen_residual(&a, lambda);
            assert!(r <= 1e-8, "residual {r} for {lambda}");
        }
        let tr: Complex64 = (0..n).map(|i| a[(i, i)]).sum();
        let sum: Complex64 = eigs.iter().sum();
        assert!((tr - sum).norm() <= 1e-10 * a.frobenius_norm());
    }

    #[test]
    fn lu_solves_linear_systems() {
        let mut a = CMatrix::zeros(3, 3);
        let entries = [
            [c(2.0, 0.0), c(1.0, -1.0), c(0.0, 0.5)],
            [c(0.0, 1.0), c(3.0, 0.0), c(-1.0, 0.0)],
            [c(1.0, 0.0), c(0.0, 0.0), c(1.0, 1.0)],
        ];
        for i in 0..3 {
            for j in 0..3 {
                a[(i, j)] = entries[i][j];
            }
        }
        let x_true = vec![c(1.0, 2.0), c(-0.5, 0.0), c(0.25, -1.0)];
        let b = a.mat_vec(&x_true);
        let x = lu_solve(&a, &b);
        for (got, want) in x.iter().zip(&x_true) {
            assert!((got - want).norm() <= 1e-12);
        }
    }

    #[test]
    fn least_squares_recovers_exact_solution() {
        let mut a = CMatrix::zeros(5, 2);
        for i in 0..5 {
            a[(i, 0)] = c(1.0, 0.0);
            a[(i, 1)] = c(i as f64, 0.2 * i as f64);
        }
        let x_true = vec![c(0.5, -0.25), c(2.0, 1.0)];
        let b = a.mat_vec(&x_true);
        let (x, resid) = lstsq(&a, &b);
        assert!(resid <= 1e-12);
        for (got, want) in x.iter().zip(&x_true) {
            assert!((got - want).norm() <= 1e-12);
        }
    }

    #[test]
    fn defective_matrix_converges() {
        // a Jordan block has one (defective) eigenvalue; shifted QR still
        // terminates, with the usual cube-root-of-eps cluster radius
        let n = 3;
        let mut a = CMatrix::zeros(n, n);
        for i in 0..n {
            a[(i, i)] = c(1.0, 0.5);
            if i + 1 < n {
                a[(i, i + 1)] = c(1.0, 0.0);
            }
        }
        let eigs = eigenvalues(&a).unwrap();
        let tol = f64::EPSILON.powf(1.0 / n as f64) * 10.0;
        for l in &eigs {
            assert!(
                (l - c(1.0, 0.5)).norm() <= tol,
                "cluster radius exceeded: {l}"
            );
        }
        let sum: Complex64 = eigs.iter().sum();
        assert!((sum - c(3.0, 1.5)).norm() <= 1e-10);
    }

    #[test]
    fn tridiagonal_eigenvalues_known_case() {
        // d = 0, e = 1 (size 4): eigenvalues 2cos(kπ/5)
        let mut d = vec![0.0; 4];
        let mut e = vec![1.0; 4];
        symmetric_tridiagonal_eigenvalues(&mut d, &mut e).unwrap();
        let mut expected: Vec<f64> = (1..=4)
            .map(|k| 2.0 * (k as f64 * std::f64::consts::PI / 5.0).cos())
            .collect();
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, want) in d.iter().zip(&expected) {
            assert!((got - want).abs() <= 1e-12, "{got} vs {want}");
        }
    }
}
