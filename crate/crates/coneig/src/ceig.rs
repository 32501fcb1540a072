//! Dense complex eigensolver: the single numerical kernel behind every
//! spectral computation in this crate.
//!
//! Three entry points:
//!
//! * [`complex_eigenvalues`] — general spectra via balancing, Householder
//!   reduction to upper Hessenberg form, and Wilkinson-shifted QR iteration
//!   with deflation.
//! * [`complex_eigenvector`] — inverse iteration at a given (approximate)
//!   eigenvalue, with a tiny randomized shift so exact eigenvalues do not
//!   produce singular solves.
//! * [`hermitian_eigs`] — real spectra of Hermitian matrices via cyclic
//!   Jacobi rotations; used for spectral norms, where the deterministic
//!   two-sided sweep is worth more than QR's speed.
//!
//! The QR iteration uses explicit single shifts applied through complex
//! Givens rotations, Wilkinson's shift (the eigenvalue of the trailing 2×2
//! closest to the corner entry), a deflation threshold relative to the
//! neighbouring diagonal magnitudes, and an exceptional real shift every ten
//! stalled iterations to break symmetry cycles.  Results are sorted by
//! (real, imaginary) ascending so repeated runs agree bit for bit.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qmat::{cvec_norm, CMatrix};
use crate::rng::SplitMix64;

/// QR iterations allowed per eigenvalue before giving up.
const MAX_QR_ITERS: usize = 40;

/// Stalled iterations between exceptional shifts.
const EXCEPTIONAL_EVERY: usize = 10;

/// Relative deflation threshold on subdiagonal entries.
const DEFLATE_REL: f64 = 1e-14;

/// Jacobi sweeps allowed before giving up on a Hermitian matrix.
const MAX_JACOBI_SWEEPS: usize = 100;

/// Inverse-iteration steps per randomized shift attempt.
const MAX_INVIT_STEPS: usize = 50;

/// Randomized shift attempts before inverse iteration reports failure.
const MAX_INVIT_ATTEMPTS: usize = 5;

// ---------------------------------------------------------------------------
// General eigenvalues
// ---------------------------------------------------------------------------

/// Eigenvalues of a square complex matrix, sorted by (re, im) ascending.
///
/// Fails with [`Error::NotSquare`] for rectangular input and
/// [`Error::NoConvergence`] if some eigenvalue fails to deflate within 40 QR
/// iterations (not observed on finite input in practice).
pub fn complex_eigenvalues(m: &CMatrix) -> Result<Vec<Complex64>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut h = m.clone();
    balance(&mut h);
    hessenberg(&mut h);
    let mut eigs = Vec::with_capacity(n);

    let mut hi = n - 1;
    let mut iters = 0usize;
    loop {
        // Look for a negligible subdiagonal entry inside the active block.
        let mut lo = 0;
        for k in (1..=hi).rev() {
            let scale = h[(k - 1, k - 1)].norm() + h[(k, k)].norm();
            let thr = DEFLATE_REL * if scale > 0.0 { scale } else { f64::MIN_POSITIVE };
            if h[(k, k - 1)].norm() <= thr {
                h[(k, k - 1)] = Complex64::new(0.0, 0.0);
                lo = k;
                break;
            }
        }

        if lo == hi {
            // 1×1 block converged.
            eigs.push(h[(hi, hi)]);
            if hi == 0 {
                break;
            }
            hi -= 1;
            iters = 0;
        } else if lo + 1 == hi {
            // 2×2 block: solve directly.
            let (e1, e2) = eig_2x2(h[(lo, lo)], h[(lo, hi)], h[(hi, lo)], h[(hi, hi)]);
            eigs.push(e1);
            eigs.push(e2);
            if lo == 0 {
                break;
            }
            hi = lo - 1;
            iters = 0;
        } else {
            if iters >= MAX_QR_ITERS {
                return Err(Error::NoConvergence);
            }
            iters += 1;
            let shift = if iters.is_multiple_of(EXCEPTIONAL_EVERY) {
                // Exceptional real shift from subdiagonal magnitudes.
                Complex64::new(h[(hi, hi - 1)].norm() + h[(hi - 1, hi - 2)].norm(), 0.0)
            } else {
                wilkinson_shift(&h, hi)
            };
            qr_step(&mut h, lo, hi, shift);
        }
    }

    eigs.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(eigs)
}

/// Parlett–Reinsch balancing: diagonal similarity scaling by powers of two
/// until every row/column pair has comparable 1-norms.  Exact in floating
/// point (only exponents change), so eigenvalues are untouched.
fn balance(m: &mut CMatrix) {
    const RADIX: f64 = 2.0;
    let n = m.rows();
    loop {
        let mut converged = true;
        for i in 0..n {
            let mut col = 0.0;
            let mut row = 0.0;
            for j in 0..n {
                if j != i {
                    col += m[(j, i)].norm();
                    row += m[(i, j)].norm();
                }
            }
            if col == 0.0 || row == 0.0 {
                continue;
            }
            let start = col + row;
            let mut factor = 1.0;
            let mut c = col;
            let mut r = row;
            while c < r / RADIX {
                c *= RADIX;
                r /= RADIX;
                factor *= RADIX;
            }
            while c >= r * RADIX {
                c /= RADIX;
                r *= RADIX;
                factor /= RADIX;
            }
            if c + r < 0.95 * start {
                converged = false;
                let inv = 1.0 / factor;
                for j in 0..n {
                    m[(i, j)] *= inv;
                }
                for j in 0..n {
                    m[(j, i)] *= factor;
                }
            }
        }
        if converged {
            break;
        }
    }
}

/// Householder reduction to upper Hessenberg form, in place.
fn hessenberg(m: &mut CMatrix) {
    let n = m.rows();
    for k in 0..n.saturating_sub(2) {
        // Reflect column k below the subdiagonal onto a single entry.
        let len = n - k - 1;
        let mut x = vec![Complex64::new(0.0, 0.0); len];
        for (idx, item) in x.iter_mut().enumerate() {
            *item = m[(k + 1 + idx, k)];
        }
        let sigma = cvec_norm(&x);
        if sigma == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 {
            x[0] / x[0].norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -phase * sigma;
        let mut v = x;
        v[0] -= alpha;
        let vnorm_sq = v.iter().map(|c| c.norm_sqr()).sum::<f64>();
        if vnorm_sq == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm_sq;

        // Left application: rows k+1..n, columns k..n (earlier columns are
        // already reduced and zero in those rows).
        for j in k..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (idx, vi) in v.iter().enumerate() {
                dot += vi.conj() * m[(k + 1 + idx, j)];
            }
            let scaled = dot * tau;
            for (idx, vi) in v.iter().enumerate() {
                let delta = *vi * scaled;
                m[(k + 1 + idx, j)] -= delta;
            }
        }
        // Right application: all rows, columns k+1..n.
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (idx, vi) in v.iter().enumerate() {
                dot += m[(i, k + 1 + idx)] * *vi;
            }
            let scaled = dot * tau;
            for (idx, vi) in v.iter().enumerate() {
                let delta = scaled * vi.conj();
                m[(i, k + 1 + idx)] -= delta;
            }
        }
        // The reflected column is now (alpha, 0, ..., 0) analytically; force it.
        m[(k + 1, k)] = alpha;
        for i in k + 2..n {
            m[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
}

/// Eigenvalues of `[[a, b], [c, d]]`, larger-magnitude root first.
///
/// The smaller root comes from `det/big` rather than the near-cancelling
/// quadratic branch.
fn eig_2x2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let mean = (a + d) * 0.5;
    let disc = (a - d) * 0.5;
    let sq = (disc * disc + b * c).sqrt();
    let r1 = mean + sq;
    let r2 = mean - sq;
    let big = if r1.norm() >= r2.norm() { r1 } else { r2 };
    if big.norm() == 0.0 {
        return (r1, r2);
    }
    let det = a * d - b * c;
    (big, det / big)
}

/// Wilkinson shift: the eigenvalue of the trailing 2×2 block closest to the
/// corner entry `h[hi][hi]`.
fn wilkinson_shift(h: &CMatrix, hi: usize) -> Complex64 {
    let corner = h[(hi, hi)];
    let (e1, e2) = eig_2x2(
        h[(hi - 1, hi - 1)],
        h[(hi - 1, hi)],
        h[(hi, hi - 1)],
        corner,
    );
    if (e1 - corner).norm() <= (e2 - corner).norm() {
        e1
    } else {
        e2
    }
}

/// Complex Givens rotation: returns `(c, s)` with `c` real, `c² + |s|² = 1`,
/// such that `−s̄·f + c·g = 0` (the rotated second component vanishes).
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    if g.norm() == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if f.norm() == 0.0 {
        return (0.0, g.conj() / g.norm());
    }
    let h = (f.norm_sqr() + g.norm_sqr()).sqrt();
    let c = f.norm() / h;
    let s = (f / f.norm()) * g.conj() / h;
    (c, s)
}

/// One explicit-shift QR step on the Hessenberg block `lo..=hi`:
/// factor `H − σI = QR` by Givens rotations, then form `RQ + σI`.
fn qr_step(h: &mut CMatrix, lo: usize, hi: usize, shift: Complex64) {
    for k in lo..=hi {
        h[(k, k)] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    // Left pass: eliminate the subdiagonal, producing R.
    for k in lo..hi {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        for j in k..=hi {
            let top = h[(k, j)];
            let bot = h[(k + 1, j)];
            h[(k, j)] = top * c + bot * s;
            h[(k + 1, j)] = -(s.conj() * top) + bot * c;
        }
        rotations.push((c, s));
    }
    // Right pass: multiply by the adjoints in order, restoring Hessenberg form.
    for (k, &(c, s)) in (lo..hi).zip(&rotations) {
        for i in lo..=(k + 1).min(hi) {
            let left = h[(i, k)];
            let right = h[(i, k + 1)];
            h[(i, k)] = left * c + right * s.conj();
            h[(i, k + 1)] = -(s * left) + right * c;
        }
    }
    for k in lo..=hi {
        h[(k, k)] += shift;
    }
}

// ---------------------------------------------------------------------------
// Eigenvectors by inverse iteration
// ---------------------------------------------------------------------------

/// Unit eigenvector of `m` at the (approximate) eigenvalue `lambda`.
///
/// Inverse iteration with the shift nudged by a deterministic pseudo-random
/// `1e−12·(1+|λ|)` step so that exactly-represented eigenvalues do not make
/// the shifted solve singular.  The result has its largest component rotated
/// to the positive real axis, making the returned phase deterministic.
/// Accepts when `‖Mv − λv‖ ≤ 1e−8·‖M‖_F`; fails with
/// [`Error::NoConvergence`] otherwise.
pub fn complex_eigenvector(m: &CMatrix, lambda: Complex64) -> Result<Vec<Complex64>> {
    complex_eigenvector_deflated(m, lambda, &[])
}

/// Inverse iteration constrained to the orthogonal complement of `prior`.
///
/// Used to pull several independent eigenvectors out of a repeated
/// eigenvalue: each iterate is re-orthogonalized against the previously
/// accepted vectors, so the iteration converges inside the remaining
/// invariant subspace.
pub(crate) fn complex_eigenvector_deflated(
    m: &CMatrix,
    lambda: Complex64,
    prior: &[Vec<Complex64>],
) -> Result<Vec<Complex64>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let fro = m.fro_norm();
    let tol = 1e-8 * if fro > 0.0 { fro } else { 1.0 };
    let mut rng = SplitMix64::new(lambda.re.to_bits() ^ lambda.im.to_bits().rotate_left(31));

    for _attempt in 0..MAX_INVIT_ATTEMPTS {
        // Randomized shift direction keeps (M − shift·I) invertible even when
        // lambda is an exact eigenvalue.
        let theta = rng.next_f64() * std::f64::consts::TAU;
        let shift = lambda
            + Complex64::new(theta.cos(), theta.sin()) * (1e-12 * (1.0 + lambda.norm()));
        let mut shifted = m.clone();
        for i in 0..n {
            shifted[(i, i)] -= shift;
        }
        let lu = match CLu::factor(&shifted, 0.0) {
            Ok(lu) => lu,
            Err(_) => continue, // exactly singular: retry with a new direction
        };

        let mut v = random_unit_vector(n, &mut rng, prior);
        for _step in 0..MAX_INVIT_STEPS {
            let mut w = lu.solve(&v);
            orthogonalize(&mut w, prior);
            let norm = cvec_norm(&w);
            if norm < f64::MIN_POSITIVE.sqrt() {
                // Solve collapsed into the deflated subspace; restart direction.
                v = random_unit_vector(n, &mut rng, prior);
                continue;
            }
            for c in w.iter_mut() {
                *c /= norm;
            }
            let residual: f64 = {
                let mv = m.mul_vec(&w);
                let diff: Vec<Complex64> =
                    mv.iter().zip(&w).map(|(&a, &b)| a - b * lambda).collect();
                cvec_norm(&diff)
            };
            if residual <= tol {
                canonical_phase(&mut w);
                return Ok(w);
            }
            v = w;
        }
    }
    Err(Error::NoConvergence)
}

/// Random unit vector orthogonal to `prior`.
fn random_unit_vector(n: usize, rng: &mut SplitMix64, prior: &[Vec<Complex64>]) -> Vec<Complex64> {
    loop {
        let mut v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.next_normal(), rng.next_normal()))
            .collect();
        orthogonalize(&mut v, prior);
        let norm = cvec_norm(&v);
        if norm > 1e-3 {
            for c in v.iter_mut() {
                *c /= norm;
            }
            return v;
        }
    }
}

/// Modified Gram–Schmidt projection of `v` against each unit vector in `prior`.
fn orthogonalize(v: &mut [Complex64], prior: &[Vec<Complex64>]) {
    for p in prior {
        let mut dot = Complex64::new(0.0, 0.0);
        for (pi, vi) in p.iter().zip(v.iter()) {
            dot += pi.conj() * *vi;
        }
        for (pi, vi) in p.iter().zip(v.iter_mut()) {
            *vi -= *pi * dot;
        }
    }
}

/// Rotates the largest-magnitude component onto the positive real axis.
fn canonical_phase(v: &mut [Complex64]) {
    let mut best = 0;
    for (i, c) in v.iter().enumerate() {
        if c.norm_sqr() > v[best].norm_sqr() {
            best = i;
        }
    }
    let pivot = v[best];
    if pivot.norm() > 0.0 {
        let phase = pivot.conj() / pivot.norm();
        for c in v.iter_mut() {
            *c *= phase;
        }
    }
}

// ---------------------------------------------------------------------------
// Hermitian eigenvalues
// ---------------------------------------------------------------------------

/// Real eigenvalues of a Hermitian matrix, ascending, via cyclic Jacobi.
///
/// The input must be Hermitian within `1e−10·(1+‖H‖_F)`
/// ([`Error::NotHermitian`] otherwise); it is symmetrized exactly before the
/// sweeps.  Converged when the off-diagonal Frobenius norm drops below
/// `1e−12·‖H‖_F`; fails with [`Error::NoConvergence`] after 100 sweeps
/// (unreachable for genuinely Hermitian input at double precision).
pub fn hermitian_eigs(h: &CMatrix) -> Result<Vec<f64>> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let n = h.rows();
    let fro = h.fro_norm();
    if (h - &h.conj_transpose()).fro_norm() > 1e-10 * (1.0 + fro) {
        return Err(Error::NotHermitian);
    }
    // Exact symmetrization wipes any residual skew before the sweeps.
    let mut w = CMatrix::from_fn(n, n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5);
    if n == 1 {
        return Ok(vec![w[(0, 0)].re]);
    }
    let target = 1e-12 * fro;

    for _sweep in 0..MAX_JACOBI_SWEEPS {
        let mut off = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += w[(i, j)].norm_sqr();
                }
            }
        }
        if off.sqrt() <= target {
            let mut diag: Vec<f64> = (0..n).map(|i| w[(i, i)].re).collect();
            diag.sort_by(f64::total_cmp);
            return Ok(diag);
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let beta = w[(p, q)];
                let beta_abs = beta.norm();
                if beta_abs == 0.0 {
                    continue;
                }
                // Diagonalize the 2×2 principal block [[α, β], [β̄, γ]] with
                // the classical real Jacobi angle applied through β's phase.
                let alpha = w[(p, p)].re;
                let gamma = w[(q, q)].re;
                let phase = beta / beta_abs;
                let tau = (alpha - gamma) / (2.0 * beta_abs);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sigma = t * c;
                let s = phase.conj() * sigma;

                // W ← R* W R with R = [[c, −s̄], [s, c]] in the (p, q) plane.
                for r in 0..n {
                    let wp = w[(r, p)];
                    let wq = w[(r, q)];
                    w[(r, p)] = wp * c + wq * s;
                    w[(r, q)] = -(wp * s.conj()) + wq * c;
                }
                for col in 0..n {
                    let wp = w[(p, col)];
                    let wq = w[(q, col)];
                    w[(p, col)] = wp * c + wq * s.conj();
                    w[(q, col)] = -(wp * s) + wq * c;
                }
                w[(p, q)] = Complex64::new(0.0, 0.0);
                w[(q, p)] = Complex64::new(0.0, 0.0);
                w[(p, p)] = Complex64::new(w[(p, p)].re, 0.0);
                w[(q, q)] = Complex64::new(w[(q, q)].re, 0.0);
            }
        }
    }
    Err(Error::NoConvergence)
}

// ---------------------------------------------------------------------------
// LU factorization
// ---------------------------------------------------------------------------

/// Partially pivoted LU factorization of a square complex matrix.
///
/// One factorization serves repeated right-hand sides; used for matrix
/// inversion through the complex adjoint and for the shifted solves of
/// inverse iteration.
pub(crate) struct CLu {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
}

impl CLu {
    /// Factors `m`, failing with [`Error::Singular`] when the best available
    /// pivot has magnitude below `pivot_floor` (or is exactly zero).
    pub(crate) fn factor(m: &CMatrix, pivot_floor: f64) -> Result<CLu> {
        assert!(m.is_square(), "LU factorization requires a square matrix");
        let n = m.rows();
        let mut lu = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                lu[i * n + j] = m[(i, j)];
            }
        }
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut best = k;
            let mut best_mag = lu[k * n + k].norm_sqr();
            for i in k + 1..n {
                let mag = lu[i * n + k].norm_sqr();
                if mag > best_mag {
                    best = i;
                    best_mag = mag;
                }
            }
            let pivot_mag = best_mag.sqrt();
            if pivot_mag < pivot_floor || pivot_mag == 0.0 {
                return Err(Error::Singular);
            }
            if best != k {
                for j in 0..n {
                    lu.swap(k * n + j, best * n + j);
                }
                perm.swap(k, best);
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                for j in k + 1..n {
                    let delta = factor * lu[k * n + j];
                    lu[i * n + j] -= delta;
                }
            }
        }
        Ok(CLu { n, lu, perm })
    }

    /// Solves `A·x = b` for the factored matrix.
    ///
    /// # Panics
    /// Panics when `b.len()` does not match the matrix dimension.
    pub(crate) fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(b.len(), self.n, "right-hand side length must match");
        let n = self.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let delta = self.lu[i * n + j] * x[j];
                x[i] -= delta;
            }
        }
        for i in (0..n).rev() {
            let mut acc = x[i];
            for (l, xv) in self.lu[i * n + i + 1..i * n + n].iter().zip(&x[i + 1..]) {
                acc -= l * xv;
            }
            x[i] = acc / self.lu[i * n + i];
        }
        x
    }
}
