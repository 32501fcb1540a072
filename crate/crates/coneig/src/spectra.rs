//! Standard eigenvalues and basal right coneigenvalues of quaternion
//! matrices, coneigenvector extraction, and condiagonalization.
//!
//! A square quaternion matrix has exactly `n` *standard eigenvalues*:
//! complex numbers with nonnegative imaginary part, one representative per
//! similarity orbit of right eigenvalues.  They are computed from the
//! complex adjoint `χ_A`, whose `2n` eigenvalues occur in conjugate pairs;
//! pairing them and keeping the upper-half-plane representative recovers the
//! quaternion spectrum.
//!
//! The consimilarity counterpart uses the same machinery once the problem is
//! rotated by `j`: a basal value `λ = a + b·j` (with `a ≥ 0`) is a right
//! coneigenvalue of `A` exactly when its *hat* `λ̂ = −b + a·i` is a standard
//! eigenvalue of `j·A`.  Coneigenvectors transfer through the same bridge:
//! a complex eigenvector `(u, v)` of `χ_{jA}` at `λ̂` folds into the
//! quaternion eigenvector `w = u − v̄·j` of `jA`, and `z = w·(i+j)` then
//! satisfies `A·z = z̃·λ`.
//!
//! Condiagonalization assembles one quaternion eigenvector of `jA` per
//! standard eigenvalue into `P̂`, sets `P = P̂·(i+j)`, and verifies
//! `P̃⁻¹AP = diag(λ_1, …, λ_n)`; failure to find enough independent vectors
//! (a defective `jA`) or an excessive condition number reports the matrix as
//! not condiagonalizable.

use num_complex::Complex64;

use crate::ceig;
use crate::error::{Error, Result};
use crate::qmat::{vec_norm, QMatrix};
use crate::quat::{BasalQuaternion, Quaternion};

/// Conjugate-pairing tolerance for the χ spectrum, relative to `‖A‖_F`.
const PAIRING_REL: f64 = 1e-7;

/// Relative distance below which a supplied value is accepted as "one of the
/// computed coneigenvalues" by [`right_coneigenvector`].
const CONEIG_ACCEPT_REL: f64 = 1e-6;

/// Relative width for clustering repeated standard eigenvalues during
/// condiagonalization.
const CLUSTER_REL: f64 = 1e-7;

/// Condition-number threshold beyond which condiagonalization is refused.
const MAX_CONDITION: f64 = 1e8;

/// Relative residual allowed on `P̃⁻¹AP − diag(D_c)`.
pub(crate) const CONDIAG_RESIDUAL_REL: f64 = 1e-6;

/// The standard (similarity) spectrum: `n` complex values with `Im ≥ 0`.
///
/// Ordered descending by modulus, ties broken by imaginary part descending,
/// then real part descending.  The order is a convention of this crate;
/// spectra are mathematically multisets.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardSpectrum {
    values: Vec<Complex64>,
}

impl StandardSpectrum {
    /// The eigenvalues in the documented order.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Consumes the spectrum, yielding the ordered values.
    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Number of eigenvalues (the matrix dimension).
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false: spectra of positive-dimension matrices are non-empty.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// The basal (consimilarity) spectrum: `n` basal values `a + b·j`, `a ≥ 0`.
///
/// Same ordering convention as [`StandardSpectrum`]: descending modulus,
/// ties by `b` descending, then stable input order.
#[derive(Debug, Clone, PartialEq)]
pub struct BasalSpectrum {
    values: Vec<BasalQuaternion>,
}

impl BasalSpectrum {
    /// Assembles a spectrum from externally obtained basal values, sorting
    /// them into the documented order.
    ///
    /// Useful for feeding hand-built or oracle-computed multisets into
    /// matching and distance routines that take spectra.
    pub fn from_values(mut values: Vec<BasalQuaternion>) -> Self {
        values.sort_by(|x, y| {
            y.modulus_sq()
                .total_cmp(&x.modulus_sq())
                .then(y.b.total_cmp(&x.b))
        });
        BasalSpectrum { values }
    }

    /// The basal coneigenvalues in the documented order.
    pub fn values(&self) -> &[BasalQuaternion] {
        &self.values
    }

    /// Consumes the spectrum, yielding the ordered values.
    pub fn into_values(self) -> Vec<BasalQuaternion> {
        self.values
    }

    /// Number of coneigenvalues (the matrix dimension).
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false: spectra of positive-dimension matrices are non-empty.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Standard eigenvalues of a square quaternion matrix.
///
/// Computes the `2n` eigenvalues of `χ_A`, pairs each with its conjugate
/// partner by greedy nearest-conjugate matching within `1e−7·‖A‖_F`, and
/// keeps one representative per pair with the imaginary part clamped to be
/// nonnegative.  Fails with [`Error::PairingFailure`] if some value has no
/// conjugate partner within tolerance (not expected for finite input, since
/// the χ spectrum is conjugate-symmetric by construction) and propagates
/// solver errors.
pub fn standard_eigenvalues(a: &QMatrix) -> Result<StandardSpectrum> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let chi = a.complex_adjoint();
    let eigs = ceig::complex_eigenvalues(&chi)?;
    let mut values = pair_conjugates(eigs, PAIRING_REL * a.fro_norm())?;
    values.sort_by(|x, y| {
        y.norm_sqr()
            .total_cmp(&x.norm_sqr())
            .then(y.im.total_cmp(&x.im))
            .then(y.re.total_cmp(&x.re))
    });
    Ok(StandardSpectrum { values })
}

/// Collapses a conjugate-symmetric multiset of `2m` complex values to its
/// `m` upper-half-plane representatives.
///
/// Greedy: repeatedly take the value with the largest imaginary part and
/// match it with the remaining value whose conjugate is nearest; each pair
/// must agree within `tol`.  The representative is the mean of `v` and the
/// conjugate of its partner, which cancels opposite rounding errors.
fn pair_conjugates(eigs: Vec<Complex64>, tol: f64) -> Result<Vec<Complex64>> {
    let mut remaining = eigs;
    remaining.sort_by(|x, y| y.im.total_cmp(&x.im).then(x.re.total_cmp(&y.re)));
    let mut reps = Vec::with_capacity(remaining.len() / 2);
    while let Some(&v) = remaining.first() {
        remaining.remove(0);
        let mut best = usize::MAX;
        let mut best_dist = f64::INFINITY;
        for (idx, &u) in remaining.iter().enumerate() {
            let d = (v - u.conj()).norm();
            if d < best_dist {
                best_dist = d;
                best = idx;
            }
        }
        if best == usize::MAX || best_dist > tol {
            return Err(Error::PairingFailure);
        }
        let u = remaining.remove(best);
        let mean = (v + u.conj()) * 0.5;
        reps.push(Complex64::new(mean.re, mean.im.max(0.0)));
    }
    Ok(reps)
}

/// Basal right coneigenvalues of a square quaternion matrix.
///
/// Bridge: the standard eigenvalues `μ = x + y·i` of `j·A` are exactly the
/// hats of the basal coneigenvalues of `A`, so each pulls back to
/// `λ = y + (−x)·j` — automatically in basal form because `y ≥ 0`.
pub fn basal_coneigenvalues(a: &QMatrix) -> Result<BasalSpectrum> {
    let ja = a.scale_left(Quaternion::J);
    let std = standard_eigenvalues(&ja)?;
    let mut values: Vec<BasalQuaternion> = std
        .into_values()
        .into_iter()
        .map(BasalQuaternion::from_hat)
        .collect();
    values.sort_by(|x, y| {
        let mx = x.modulus_sq();
        let my = y.modulus_sq();
        my.total_cmp(&mx).then(y.b.total_cmp(&x.b))
    });
    Ok(BasalSpectrum { values })
}

/// A right coneigenvector for a basal coneigenvalue `λ` of `A`.
///
/// Returns a unit quaternion vector `z` with `‖A·z − z̃·λ‖ ≤ 1e−7·‖A‖_F`.
/// The supplied `lambda` must lie within `1e−6·(1+‖A‖_F)` of a computed
/// basal coneigenvalue ([`Error::NotAConeigenvalue`] otherwise); the solve
/// happens at the nearest computed value, which keeps the residual at the
/// level of the eigensolver rather than of the caller's rounding.
///
/// The representative is deterministic: the first structurally nonzero
/// component has its `span{1, j}` part (or, when that part vanishes, its
/// `i·span{1, j}` part) rotated to the positive real axis.  Only unit
/// scalars from `span{1, j}` are used, because they are exactly the right
/// factors that preserve a basal coneigenvalue with `a > 0`.
pub fn right_coneigenvector(a: &QMatrix, lambda: BasalQuaternion) -> Result<Vec<Quaternion>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let fro = a.fro_norm();
    let basal = basal_coneigenvalues(a)?;
    let mut nearest = basal.values()[0];
    let mut nearest_dist = f64::INFINITY;
    for &mu in basal.values() {
        let d = lambda.dist(mu);
        if d < nearest_dist {
            nearest_dist = d;
            nearest = mu;
        }
    }
    if nearest_dist > CONEIG_ACCEPT_REL * (1.0 + fro) {
        return Err(Error::NotAConeigenvalue(format!(
            "{lambda} is {nearest_dist:.3e} away from the nearest computed basal coneigenvalue {nearest}"
        )));
    }

    let ja = a.scale_left(Quaternion::J);
    let chi = ja.complex_adjoint();
    let (u, v) = split_halves(ceig::complex_eigenvector(&chi, nearest.hat())?);
    let w = fold_to_quaternion(&u, &v);
    let mut z: Vec<Quaternion> = w
        .iter()
        .map(|&wr| wr * (Quaternion::I + Quaternion::J))
        .collect();
    normalize_coneigenvector(&mut z);
    Ok(z)
}

/// Splits a `2n` complex vector into its `(u, v)` halves.
fn split_halves(x: Vec<Complex64>) -> (Vec<Complex64>, Vec<Complex64>) {
    let n = x.len() / 2;
    let v = x[n..].to_vec();
    let mut u = x;
    u.truncate(n);
    (u, v)
}

/// Folds a `χ`-eigenvector `(u, v)` into the quaternion vector `w = u − v̄·j`.
fn fold_to_quaternion(u: &[Complex64], v: &[Complex64]) -> Vec<Quaternion> {
    u.iter()
        .zip(v)
        .map(|(&ur, &vr)| Quaternion::from_complex_pair(ur, -vr.conj()))
        .collect()
}

/// Scales `z` to unit norm and canonical phase.
///
/// The phase factor is a unit element of the commutative subfield
/// `span{1, j}`: writing the first structurally nonzero component as
/// `ζ + i·η` with `ζ, η ∈ span{1, j}`, right multiplication by `β` maps
/// `ζ ↦ ζβ` and `η ↦ ηβ` (complex multiplication inside the subfield), so
/// `β = ζ̄/|ζ|` rotates `ζ` onto the positive real axis.
fn normalize_coneigenvector(z: &mut [Quaternion]) {
    let norm = vec_norm(z);
    if norm == 0.0 {
        return;
    }
    let lead = z
        .iter()
        .position(|q| q.abs() > 1e-12 * norm)
        .unwrap_or(0);
    let q = z[lead];
    let zeta = Complex64::new(q.a0, q.a2);
    let eta = Complex64::new(q.a1, q.a3);
    let part = if zeta.norm() > 1e-12 * q.abs() { zeta } else { eta };
    if part.norm() > 0.0 {
        let beta_c = part.conj() / part.norm();
        // β = x + y·j for the subfield element x + y·𝕚.
        let beta = Quaternion::new(beta_c.re, 0.0, beta_c.im, 0.0);
        for item in z.iter_mut() {
            *item *= beta;
        }
    }
    for item in z.iter_mut() {
        *item = *item * (1.0 / norm);
    }
}

/// A successful condiagonalization `P̃⁻¹·A·P = diag(dc)`.
#[derive(Debug, Clone)]
pub struct Condiagonalization {
    /// The condiagonalizing matrix `P = P̂·(i+j)`, columns aligned with `dc`.
    pub p: QMatrix,
    /// The basal coneigenvalues on the diagonal, in basal spectrum order.
    pub dc: Vec<BasalQuaternion>,
    /// Condition number `‖P‖₂·‖P⁻¹‖₂`.
    pub kappa: f64,
}

/// Condiagonalizes `A`, or explains why it cannot be done.
///
/// Builds `P̂` from one quaternion eigenvector of `j·A` per standard
/// eigenvalue (repeated eigenvalues are handled by deflating inside the
/// eigenspace, which for real repeated values must also exclude the
/// `J`-partners `w·j` spanning the same quaternion line), then sets
/// `P = P̂·(i+j)` and checks `‖P̃⁻¹AP − diag(dc)‖_F ≤ 1e−6·‖A‖_F`.
///
/// Fails with [`Error::NotCondiagonalizable`] when `j·A` is defective (not
/// enough independent eigenvectors), when `P` is singular or has condition
/// number above `1e8`, or when the residual check fails.
pub fn condiagonalize(a: &QMatrix) -> Result<Condiagonalization> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let fro = a.fro_norm();
    let ja = a.scale_left(Quaternion::J);
    let chi = ja.complex_adjoint();
    let std = standard_eigenvalues(&ja)?;

    // Group equal-within-tolerance standard eigenvalues; each cluster of
    // multiplicity m needs m independent quaternion eigenvectors.
    let cluster_tol = CLUSTER_REL * (1.0 + fro);
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for &mu in std.values() {
        match clusters.iter_mut().find(|(c, _)| (*c - mu).norm() <= cluster_tol) {
            Some((_, count)) => *count += 1,
            None => clusters.push((mu, 1)),
        }
    }

    let real_threshold = 1e-8 * (1.0 + fro);
    let mut columns: Vec<Vec<Quaternion>> = Vec::with_capacity(n);
    let mut dc: Vec<BasalQuaternion> = Vec::with_capacity(n);
    for &(mu, multiplicity) in &clusters {
        let mut prior: Vec<Vec<Complex64>> = Vec::new();
        for _ in 0..multiplicity {
            let x = ceig::complex_eigenvector_deflated(&chi, mu, &prior).map_err(|e| match e {
                Error::NoConvergence => Error::NotCondiagonalizable(format!(
                    "j·A is defective at standard eigenvalue {mu}: \
                     only {} of {multiplicity} independent eigenvectors found",
                    prior.len().min(multiplicity)
                )),
                other => other,
            })?;
            let (u, v) = split_halves(x.clone());
            columns.push(fold_to_quaternion(&u, &v));
            dc.push(BasalQuaternion::from_hat(mu));
            if mu.im.abs() <= real_threshold {
                // Real eigenvalue: (−v̄, ū) is the χ image of w·j — the same
                // quaternion line — and must be deflated away too.
                let jpartner: Vec<Complex64> = v
                    .iter()
                    .map(|c| -c.conj())
                    .chain(u.iter().map(|c| c.conj()))
                    .collect();
                prior.push(x);
                prior.push(jpartner);
            } else {
                prior.push(x);
            }
        }
    }

    // Order columns by the basal spectrum convention.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| {
        let mx = dc[x].modulus_sq();
        let my = dc[y].modulus_sq();
        my.total_cmp(&mx).then(dc[y].b.total_cmp(&dc[x].b))
    });
    let columns: Vec<Vec<Quaternion>> = order.iter().map(|&idx| columns[idx].clone()).collect();
    let dc: Vec<BasalQuaternion> = order.iter().map(|&idx| dc[idx]).collect();

    let p_hat = QMatrix::from_columns(columns)?;
    let p = p_hat.scale_right(Quaternion::I + Quaternion::J);
    let p_inv = p.qm_inverse().map_err(|e| match e {
        Error::Singular => Error::NotCondiagonalizable(
            "the assembled eigenvector matrix P is numerically singular".to_string(),
        ),
        other => other,
    })?;
    let kappa = p.spec_norm() * p_inv.spec_norm();
    if !kappa.is_finite() || kappa > MAX_CONDITION {
        return Err(Error::NotCondiagonalizable(format!(
            "condition number of P is {kappa:.3e} (threshold {MAX_CONDITION:.0e})"
        )));
    }

    let recovered = &(&p_inv.jconj() * a) * &p;
    let mut residual = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let want = if i == j {
                dc[i].to_quaternion()
            } else {
                Quaternion::ZERO
            };
            residual += (recovered[(i, j)] - want).abs_sq();
        }
    }
    let residual = residual.sqrt();
    if residual > CONDIAG_RESIDUAL_REL * if fro > 0.0 { fro } else { 1.0 } {
        return Err(Error::NotCondiagonalizable(format!(
            "residual ‖P̃⁻¹AP − diag(D_c)‖_F = {residual:.3e} exceeds {:.3e}",
            CONDIAG_RESIDUAL_REL * if fro > 0.0 { fro } else { 1.0 }
        )));
    }

    Ok(Condiagonalization { p, dc, kappa })
}
