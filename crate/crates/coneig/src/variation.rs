//! Spectral variation, Hausdorff distance, and Elsner-type bounds.
//!
//! The *spectral variation of `B` with respect to `A`* measures how far the
//! eigenvalues of `B` stray from those of `A`:
//!
//! ```text
//! sv_A(B) = max_j min_i |μ_j − λ_i|
//! ```
//!
//! over standard eigenvalues `μ_j` of `B` and `λ_i` of `A`; the Hausdorff
//! distance symmetrizes it, `hd(A,B) = max{sv_A(B), sv_B(A)}`.  The same
//! construction over basal right coneigenvalues (with quaternion modulus
//! distance) gives the con-spectral variation `svc_A(B)` and `hdc(A,B)`.
//!
//! All four quantities obey one Elsner-type bound,
//!
//! ```text
//! ‖A−B‖₂^(1/2n) · (‖A‖₂ + ‖B‖₂)^(1−1/2n),
//! ```
//!
//! where `n` is the dimension of the quaternion matrices (the exponent is
//! `1/2n`, not the `1/4n` the doubled complex adjoint would suggest — the
//! coneigenvalue case reduces to the standard one via `svc_A(B) =
//! sv_{jA}(jB)`, which leaves `n`, the norms, and the difference unchanged).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perturbation::bound_holds;
use crate::qmat::QMatrix;
use crate::spectra::{basal_coneigenvalues, standard_eigenvalues};

/// Shape guard shared by every pairwise operation here.
fn same_shape(op: &'static str, a: &QMatrix, b: &QMatrix) -> Result<()> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::ShapeMismatch {
            op,
            left_rows: a.rows(),
            left_cols: a.cols(),
            right_rows: b.rows(),
            right_cols: b.cols(),
        });
    }
    Ok(())
}

/// `max over outer of (min over inner)` for any distance function; zero for
/// empty spectra.
fn max_min<T: Copy>(outer: &[T], inner: &[T], dist: impl Fn(T, T) -> f64) -> f64 {
    outer
        .iter()
        .map(|&mu| {
            inner
                .iter()
                .map(|&lambda| dist(mu, lambda))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0f64, f64::max)
}

/// Spectral variation `sv_A(B)` over standard eigenvalues.
pub fn spectral_variation(a: &QMatrix, b: &QMatrix) -> Result<f64> {
    same_shape("spectral_variation", a, b)?;
    let la = standard_eigenvalues(a)?;
    let mb = standard_eigenvalues(b)?;
    Ok(max_min(mb.values(), la.values(), |x, y| (x - y).norm()))
}

/// Hausdorff distance `max{sv_A(B), sv_B(A)}` between standard spectra.
pub fn hausdorff(a: &QMatrix, b: &QMatrix) -> Result<f64> {
    Ok(spectral_variation(a, b)?.max(spectral_variation(b, a)?))
}

/// Con-spectral variation `svc_A(B)` over basal right coneigenvalues.
pub fn con_spectral_variation(a: &QMatrix, b: &QMatrix) -> Result<f64> {
    same_shape("con_spectral_variation", a, b)?;
    let la = basal_coneigenvalues(a)?;
    let mb = basal_coneigenvalues(b)?;
    Ok(max_min(mb.values(), la.values(), |x, y| x.dist(y)))
}

/// Hausdorff distance `max{svc_A(B), svc_B(A)}` between basal spectra.
pub fn con_hausdorff(a: &QMatrix, b: &QMatrix) -> Result<f64> {
    Ok(con_spectral_variation(a, b)?.max(con_spectral_variation(b, a)?))
}

/// The Elsner-type bound `‖A−B‖₂^(1/2n)·(‖A‖₂+‖B‖₂)^(1−1/2n)`.
///
/// Symmetric in `A` and `B`; zero when `A = B` (and for empty matrices).
pub fn elsner_bound(a: &QMatrix, b: &QMatrix) -> Result<f64> {
    same_shape("elsner_bound", a, b)?;
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(0.0);
    }
    let exponent = 1.0 / (2.0 * n as f64);
    let diff = (a - b).spec_norm();
    let sum = a.spec_norm() + b.spec_norm();
    Ok(diff.powf(exponent) * sum.powf(1.0 - exponent))
}

/// One inequality's outcome inside a [`VariationReport`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundCheck {
    /// The measured variation or Hausdorff distance.
    pub lhs: f64,
    /// The Elsner-type bound.
    pub rhs: f64,
    /// Verdict under [`bound_holds`].
    pub holds: bool,
}

/// All four variation quantities checked against the Elsner-type bound.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct VariationReport {
    /// `sv_A(B)` against the bound.
    pub sv: BoundCheck,
    /// `hd(A,B)` against the bound.
    pub hd: BoundCheck,
    /// `svc_A(B)` against the bound.
    pub svc: BoundCheck,
    /// `hdc(A,B)` against the bound.
    pub hdc: BoundCheck,
    /// Conjunction of the four verdicts.
    pub overall: bool,
}

/// Checks `sv_A(B)`, `hd(A,B)`, `svc_A(B)`, and `hdc(A,B)` against the
/// shared Elsner-type bound and reports each.
pub fn verify_variation_bounds(a: &QMatrix, b: &QMatrix) -> Result<VariationReport> {
    let rhs = elsner_bound(a, b)?;
    let check = |lhs: f64| BoundCheck {
        lhs,
        rhs,
        holds: bound_holds(lhs, rhs),
    };
    let sv = check(spectral_variation(a, b)?);
    let hd = check(hausdorff(a, b)?);
    let svc = check(con_spectral_variation(a, b)?);
    let hdc = check(con_hausdorff(a, b)?);
    let overall = sv.holds && hd.holds && svc.holds && hdc.holds;
    Ok(VariationReport {
        sv,
        hd,
        svc,
        hdc,
        overall,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::Quaternion;
    use crate::rng::SplitMix64;

    fn q(a0: f64, a1: f64, a2: f64, a3: f64) -> Quaternion {
        Quaternion::new(a0, a1, a2, a3)
    }

    /// The worked pair: `A = [[−j, k], [k, −j]]`, `B = [[4k, j+k], [−j−k, 4k]]`.
    fn worked_pair() -> (QMatrix, QMatrix) {
        let a = QMatrix::from_rows(vec![
            vec![-Quaternion::J, Quaternion::K],
            vec![Quaternion::K, -Quaternion::J],
        ])
        .unwrap();
        let jk = Quaternion::J + Quaternion::K;
        let b = QMatrix::from_rows(vec![
            vec![Quaternion::K * 4.0, jk],
            vec![-jk, Quaternion::K * 4.0],
        ])
        .unwrap();
        (a, b)
    }

    fn random_matrix(n: usize, rng: &mut SplitMix64) -> QMatrix {
        QMatrix::from_fn(n, n, |_, _| {
            q(
                rng.next_normal(),
                rng.next_normal(),
                rng.next_normal(),
                rng.next_normal(),
            )
        })
    }

    #[test]
    fn worked_pair_variation_values() {
        let (a, b) = worked_pair();
        assert!((spectral_variation(&a, &b).unwrap() - 2.6734536784846457).abs() < 1e-9);
        assert!((con_spectral_variation(&a, &b).unwrap() - 4.0).abs() < 1e-9);
        assert!((elsner_bound(&a, &b).unwrap() - 6.24230245545019).abs() < 1e-9);
        // ‖A−B‖₂ that feeds the bound.
        assert!(((&a - &b).spec_norm() - (20.0 + 104.0f64.sqrt()).sqrt()).abs() < 1e-9);
    }

    #[test]
    fn worked_pair_bounds_all_hold() {
        let (a, b) = worked_pair();
        let report = verify_variation_bounds(&a, &b).unwrap();
        assert!(report.overall);
        assert!(report.hd.lhs >= report.sv.lhs);
        assert!(report.hdc.lhs >= report.svc.lhs);
        // hdc = max{4, svc_B(A)} where svc_B(A) = √8 < 4.
        assert!((report.hdc.lhs - 4.0).abs() < 1e-9);
    }

    #[test]
    fn equal_matrices_have_zero_everything() {
        let (a, _) = worked_pair();
        let report = verify_variation_bounds(&a, &a.clone()).unwrap();
        assert!(report.overall);
        for check in [report.sv, report.hd, report.svc, report.hdc] {
            assert!(check.lhs.abs() < 1e-7);
        }
        assert!(report.sv.rhs.abs() < 1e-12);
    }

    #[test]
    fn one_by_one_case_is_a_plain_distance() {
        let a = QMatrix::from_rows(vec![vec![q(1.0, 2.0, 0.0, 0.0)]]).unwrap();
        let b = QMatrix::from_rows(vec![vec![q(4.0, 6.0, 0.0, 0.0)]]).unwrap();
        // Standard eigenvalues are 1 + 2i and 4 + 6i: sv = |3 + 4i| = 5.
        assert!((spectral_variation(&a, &b).unwrap() - 5.0).abs() < 1e-9);
        assert!((hausdorff(&a, &b).unwrap() - 5.0).abs() < 1e-9);
    }

    #[test]
    fn hausdorff_and_bound_are_symmetric() {
        let mut rng = SplitMix64::new(41);
        for _ in 0..5 {
            let a = random_matrix(3, &mut rng);
            let b = random_matrix(3, &mut rng);
            let hd_ab = hausdorff(&a, &b).unwrap();
            let hd_ba = hausdorff(&b, &a).unwrap();
            assert!((hd_ab - hd_ba).abs() < 1e-12);
            let e_ab = elsner_bound(&a, &b).unwrap();
            let e_ba = elsner_bound(&b, &a).unwrap();
            assert!((e_ab - e_ba).abs() < 1e-12 * (1.0 + e_ab));
            let hdc_ab = con_hausdorff(&a, &b).unwrap();
            let hdc_ba = con_hausdorff(&b, &a).unwrap();
            assert!((hdc_ab - hdc_ba).abs() < 1e-12);
        }
    }

    #[test]
    fn con_variation_equals_variation_of_rotated_matrices() {
        // svc_A(B) = sv_{jA}(jB): the j-rotation turns basal coneigenvalues
        // into standard eigenvalues without moving distances.
        let mut rng = SplitMix64::new(43);
        for _ in 0..8 {
            let a = random_matrix(3, &mut rng);
            let b = random_matrix(3, &mut rng);
            let svc = con_spectral_variation(&a, &b).unwrap();
            let sv_rot = spectral_variation(
                &a.scale_left(Quaternion::J),
                &b.scale_left(Quaternion::J),
            )
            .unwrap();
            assert!(
                (svc - sv_rot).abs() <= 1e-9 * (1.0 + svc),
                "svc {svc} vs rotated sv {sv_rot}"
            );
        }
    }

    #[test]
    fn random_pairs_satisfy_all_four_bounds() {
        let mut rng = SplitMix64::new(47);
        for trial in 0..20 {
            let n = 2 + trial % 3;
            let a = random_matrix(n, &mut rng);
            let b = random_matrix(n, &mut rng);
            let report = verify_variation_bounds(&a, &b).unwrap();
            assert!(report.overall, "bounds failed on trial {trial}");
        }
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let (a, _) = worked_pair();
        let wide = QMatrix::zeros(2, 3);
        assert!(matches!(
            spectral_variation(&a, &QMatrix::identity(3)),
            Err(Error::ShapeMismatch { .. })
        ));
        assert!(matches!(
            elsner_bound(&wide, &wide.clone()),
            Err(Error::NotSquare { .. })
        ));
    }
}
