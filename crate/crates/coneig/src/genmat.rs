//! Seeded generators of structured random quaternion matrices.
//!
//! Property suites and Monte-Carlo verification need matrices that satisfy
//! the hypotheses of the perturbation theorems *by construction*:
//!
//! * `plain` — componentwise standard-normal quaternions, scaled.
//! * `normal` — `U·Λ·U*` with a random quaternion-unitary `U` and a random
//!   complex diagonal `Λ`.
//! * `conjugate_normal` — `(−j)·N` for a normal `N`; then `j·A = N` is
//!   normal, which is exactly what conjugate normality means.
//! * `condiagonalizable` — `P̃·D_c·P⁻¹` with a random well-conditioned `P`
//!   (condition number ≤ 100, resampled otherwise) and a planted basal
//!   diagonal `D_c`; the plant ships in the metadata so recovered spectra
//!   can be checked against ground truth.
//! * `skew_symmetric` — `(M − Mᵀ)/2` of a plain sample.
//! * `unitary` — the `U` above (Gram–Schmidt over quaternion columns).
//!
//! Output is a pure function of `(kind, n, seed, scale)`; the stream is a
//! 64-bit splittable counter-based generator, so parallel campaigns get
//! independent streams by deriving per-trial seeds with [`split_seed`].

use crate::error::{Error, Result};
use crate::qmat::QMatrix;
use crate::quat::{BasalQuaternion, Quaternion};
use crate::rng::{self, SplitMix64};
use crate::spectra::BasalSpectrum;

/// Attempts allowed when rejection-sampling a well-conditioned `P` (or a
/// numerically independent unitary sample).
pub const MAX_RESAMPLE_ATTEMPTS: usize = 100;

/// Condition-number ceiling for planted condiagonalizers; keeps generalized
/// Hoffman–Wielandt right-hand sides small enough to be informative.
pub const MAX_PLANT_CONDITION: f64 = 100.0;

/// Minimum column norm surviving Gram–Schmidt before a unitary sample is
/// rejected as numerically dependent.
const GS_FLOOR: f64 = 1e-8;

/// The structure classes the generator can target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    /// Unstructured componentwise-Gaussian entries.
    Plain,
    /// Normal: `A·A* = A*·A`.
    Normal,
    /// Conjugate normal: `j·A` is normal.
    ConjugateNormal,
    /// `P̃⁻¹·A·P` diagonal for a planted `P` (metadata carries the plant).
    Condiagonalizable,
    /// Skew symmetric: `Aᵀ = −A`.
    SkewSymmetric,
    /// Unitary: `A*·A = I`.
    Unitary,
}

/// Ground truth planted inside a condiagonalizable sample.
#[derive(Debug, Clone)]
pub struct Planted {
    /// The planted basal diagonal, in basal-spectrum order.
    pub dc: Vec<BasalQuaternion>,
    /// The planted condiagonalizer: `P̃⁻¹·A·P = diag(dc)`.
    pub p: QMatrix,
}

/// A generated matrix together with any planted ground truth.
#[derive(Debug, Clone)]
pub struct GeneratedMatrix {
    /// The sample.
    pub a: QMatrix,
    /// Present only for [`MatrixKind::Condiagonalizable`].
    pub planted: Option<Planted>,
}

/// Derives an independent child seed for stream `stream` of campaign
/// `seed`; parallel trials must take distinct streams from here.
pub fn split_seed(seed: u64, stream: u64) -> u64 {
    rng::split(seed, stream)
}

/// Generates one structured sample, deterministically in
/// `(kind, n, seed, scale)`.
///
/// `scale` multiplies the entry magnitudes (for `unitary` it is ignored —
/// scaling would destroy unitarity).  Fails with [`Error::ResampleLimit`]
/// when conditioning rejection exhausts its attempts.
///
/// # Panics
///
/// When `n = 0`: spectra of empty matrices are not useful test subjects.
pub fn random_structured(
    kind: MatrixKind,
    n: usize,
    seed: u64,
    scale: f64,
) -> Result<GeneratedMatrix> {
    assert!(n >= 1, "generator requires n >= 1");
    let kind_tag = match kind {
        MatrixKind::Plain => 1u64,
        MatrixKind::Normal => 2,
        MatrixKind::ConjugateNormal => 3,
        MatrixKind::Condiagonalizable => 4,
        MatrixKind::SkewSymmetric => 5,
        MatrixKind::Unitary => 6,
    };
    let mut rng = SplitMix64::new(rng::split(rng::split(seed, kind_tag), n as u64));
    let plain = |rng: &mut SplitMix64, s: f64| {
        QMatrix::from_fn(n, n, |_, _| random_quaternion(rng) * s)
    };
    let a = match kind {
        MatrixKind::Plain => plain(&mut rng, scale),
        MatrixKind::Normal => random_normal(n, &mut rng, scale)?,
        MatrixKind::ConjugateNormal => {
            random_normal(n, &mut rng, scale)?.scale_left(-Quaternion::J)
        }
        MatrixKind::SkewSymmetric => {
            let m = plain(&mut rng, scale);
            (&m - &m.transpose()).map(|q| q * 0.5)
        }
        MatrixKind::Unitary => random_unitary(n, &mut rng)?,
        MatrixKind::Condiagonalizable => {
            let dc: Vec<BasalQuaternion> = (0..n)
                .map(|_| {
                    BasalQuaternion::new(rng.next_normal().abs() * scale, rng.next_normal() * scale)
                })
                .collect();
            let dc = BasalSpectrum::from_values(dc).into_values();
            let mut d = QMatrix::zeros(n, n);
            for (i, &lambda) in dc.iter().enumerate() {
                d[(i, i)] = lambda.to_quaternion();
            }
            let p = well_conditioned(n, &mut rng)?;
            let a = &(&p.jconj() * &d) * &p.qm_inverse()?;
            return Ok(GeneratedMatrix {
                a,
                planted: Some(Planted { dc, p }),
            });
        }
    };
    Ok(GeneratedMatrix { a, planted: None })
}

fn random_quaternion(rng: &mut SplitMix64) -> Quaternion {
    Quaternion::new(
        rng.next_normal(),
        rng.next_normal(),
        rng.next_normal(),
        rng.next_normal(),
    )
}

/// `U·Λ·U*` with `Λ` a random complex diagonal.
fn random_normal(n: usize, rng: &mut SplitMix64, scale: f64) -> Result<QMatrix> {
    let u = random_unitary(n, rng)?;
    let mut d = QMatrix::zeros(n, n);
    for i in 0..n {
        d[(i, i)] = Quaternion::new(rng.next_normal() * scale, rng.next_normal() * scale, 0.0, 0.0);
    }
    Ok(&(&u * &d) * &u.conj_transpose())
}

/// Random quaternion-unitary matrix: Gram–Schmidt on Gaussian columns under
/// the inner product `⟨u, v⟩ = Σ ū_i·v_i`.
fn random_unitary(n: usize, rng: &mut SplitMix64) -> Result<QMatrix> {
    'attempt: for _ in 0..MAX_RESAMPLE_ATTEMPTS {
        let sample = QMatrix::from_fn(n, n, |_, _| random_quaternion(rng));
        let mut columns: Vec<Vec<Quaternion>> = Vec::with_capacity(n);
        for c in 0..n {
            let mut col = sample.column(c);
            for prev in &columns {
                // coef = ⟨prev, col⟩; right-multiplying keeps orthogonality
                // because Σ p̄_i·p_i is real and commutes through.
                let coef = prev
                    .iter()
                    .zip(&col)
                    .fold(Quaternion::ZERO, |acc, (&p, &x)| acc + p.conj() * x);
                for (xi, &pi) in col.iter_mut().zip(prev) {
                    *xi -= pi * coef;
                }
            }
            let norm = col.iter().map(|q| q.abs_sq()).sum::<f64>().sqrt();
            if norm < GS_FLOOR {
                continue 'attempt;
            }
            for xi in col.iter_mut() {
                *xi = *xi * (1.0 / norm);
            }
            columns.push(col);
        }
        return QMatrix::from_columns(columns);
    }
    Err(Error::ResampleLimit {
        attempts: MAX_RESAMPLE_ATTEMPTS,
    })
}

/// Gaussian invertible matrix with `‖P‖₂·‖P⁻¹‖₂ ≤ 100`, by rejection.
fn well_conditioned(n: usize, rng: &mut SplitMix64) -> Result<QMatrix> {
    for _ in 0..MAX_RESAMPLE_ATTEMPTS {
        let p = QMatrix::from_fn(n, n, |_, _| random_quaternion(rng));
        let Ok(p_inv) = p.qm_inverse() else {
            continue;
        };
        let kappa = p.spec_norm() * p_inv.spec_norm();
        if kappa.is_finite() && kappa <= MAX_PLANT_CONDITION {
            return Ok(p);
        }
    }
    Err(Error::ResampleLimit {
        attempts: MAX_RESAMPLE_ATTEMPTS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{basal_coneigenvalues, condiagonalize};

    const FLAG_TOL: f64 = 1e-9;

    #[test]
    fn generation_is_deterministic() {
        for kind in [
            MatrixKind::Plain,
            MatrixKind::Normal,
            MatrixKind::ConjugateNormal,
            MatrixKind::Condiagonalizable,
            MatrixKind::SkewSymmetric,
            MatrixKind::Unitary,
        ] {
            let x = random_structured(kind, 3, 99, 1.0).unwrap();
            let y = random_structured(kind, 3, 99, 1.0).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(x.a[(i, j)], y.a[(i, j)], "kind {kind:?} not deterministic");
                }
            }
            let z = random_structured(kind, 3, 100, 1.0).unwrap();
            let same = (0..3).all(|i| (0..3).all(|j| x.a[(i, j)] == z.a[(i, j)]));
            assert!(!same, "kind {kind:?} ignored the seed");
        }
    }

    #[test]
    fn structured_outputs_pass_their_predicates() {
        for seed in [7, 42, 77] {
            for n in [1usize, 2, 4] {
                let flags = |kind| {
                    random_structured(kind, n, seed, 1.0)
                        .unwrap()
                        .a
                        .structure_flags(FLAG_TOL)
                        .unwrap()
                };
                assert!(flags(MatrixKind::Normal).normal);
                assert!(flags(MatrixKind::ConjugateNormal).conjugate_normal);
                assert!(flags(MatrixKind::SkewSymmetric).skew_symmetric);
                assert!(flags(MatrixKind::Unitary).unitary);
            }
        }
    }

    #[test]
    fn planted_condiagonalization_round_trips() {
        let sample = random_structured(MatrixKind::Condiagonalizable, 3, 7, 1.0).unwrap();
        let planted = sample.planted.as_ref().unwrap();
        // The planted P really condiagonalizes A to diag(dc)...
        let d = &(&planted.p.qm_inverse().unwrap().jconj() * &sample.a) * &planted.p;
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j {
                    planted.dc[i].to_quaternion()
                } else {
                    Quaternion::ZERO
                };
                assert!((d[(i, j)] - want).abs() < 1e-9);
            }
        }
        // ...and the computed spectrum recovers the plant as a multiset.
        let spectrum = basal_coneigenvalues(&sample.a).unwrap();
        for (got, want) in spectrum.values().iter().zip(&planted.dc) {
            assert!(got.dist(*want) < 1e-6, "{got:?} vs planted {want:?}");
        }
        // spectra::condiagonalize agrees on the same input.
        let cd = condiagonalize(&sample.a).unwrap();
        for (got, want) in cd.dc.iter().zip(&planted.dc) {
            assert!(got.dist(*want) < 1e-6);
        }
    }

    #[test]
    fn planted_condition_stays_bounded() {
        for seed in 1..=10u64 {
            let sample = random_structured(MatrixKind::Condiagonalizable, 4, seed, 1.0).unwrap();
            let p = &sample.planted.as_ref().unwrap().p;
            let kappa = p.spec_norm() * p.qm_inverse().unwrap().spec_norm();
            assert!(kappa <= MAX_PLANT_CONDITION * (1.0 + 1e-9));
        }
    }

    #[test]
    fn scale_controls_magnitude() {
        let small = random_structured(MatrixKind::Plain, 4, 5, 0.01).unwrap();
        let large = random_structured(MatrixKind::Plain, 4, 5, 10.0).unwrap();
        // Same stream, same draws: exactly a factor 1000 apart.
        assert!((large.a.fro_norm() / small.a.fro_norm() - 1000.0).abs() < 1e-6);
    }

    #[test]
    fn one_by_one_plain_is_a_quaternion() {
        let sample = random_structured(MatrixKind::Plain, 1, 3, 1.0).unwrap();
        assert_eq!(sample.a.rows(), 1);
        assert!(sample.a[(0, 0)].abs() > 0.0);
        assert!(sample.planted.is_none());
    }

    #[test]
    fn split_seed_separates_streams() {
        let a = split_seed(1, 0);
        let b = split_seed(1, 1);
        let c = split_seed(2, 0);
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_eq!(a, split_seed(1, 0));
    }
}
