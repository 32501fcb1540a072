//! Hoffman–Wielandt-type and Bauer–Fike-type perturbation bounds for basal
//! right coneigenvalues.
//!
//! Three inequalities are verified on concrete matrix pairs:
//!
//! * **Hoffman–Wielandt type** — for conjugate-normal `A, B` (and likewise
//!   for skew-symmetric pairs) there is a permutation `π` with
//!   `Σ_l |λ_l − μ_{π(l)}|² ≤ ‖A−B‖²_F`.
//! * **Generalized Hoffman–Wielandt** — for condiagonalizable `A` (with
//!   `A = P·D_c·P̃⁻¹`) and conjugate-normal `B`, the same sum is bounded by
//!   `‖P‖²₂·‖P⁻¹‖²₂·‖A−B‖²_F`.
//! * **Bauer–Fike type** — every basal coneigenvalue `μ` of `A+E` lies
//!   within `‖P‖₂·‖P⁻¹‖₂·‖E‖₂` of some basal coneigenvalue `λ` of `A`.
//!
//! The theorems assert that *some* permutation works; the verifier always
//! uses the optimal one (Hungarian assignment on squared distances), which is
//! the strongest certificate.  For plain normal matrices the first inequality
//! can genuinely fail, and [`check_normal_counterexample`] reports such
//! failures rather than erroring.
//!
//! All verdicts use the shared slack rule [`bound_holds`]:
//! `lhs ≤ rhs·(1 + 1e−9) + 1e−9`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qmat::{QMatrix, StructureFlags, DEFAULT_STRUCTURE_TOL};
use crate::quat::BasalQuaternion;
use crate::spectra::{basal_coneigenvalues, condiagonalize, BasalSpectrum, CONDIAG_RESIDUAL_REL};

/// Relative slack in the verification rule.
pub const VERIFY_REL: f64 = 1e-9;

/// Absolute slack in the verification rule.
pub const VERIFY_ABS: f64 = 1e-9;

/// The crate-wide verdict rule: `lhs ≤ rhs·(1 + 1e−9) + 1e−9`.
///
/// The slack absorbs floating-point noise in quantities that are equal in
/// exact arithmetic; it is far below the margins the inequalities exhibit in
/// practice.
pub fn bound_holds(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs * (1.0 + VERIFY_REL) + VERIFY_ABS
}

/// An optimal assignment between two equal-length basal spectra.
#[derive(Debug, Clone, Serialize)]
pub struct MatchResult {
    /// `permutation[l] = m` pairs `λ_l` with `μ_m`; a bijection on `0..n`.
    pub permutation: Vec<usize>,
    /// `Σ_l |λ_l − μ_{π(l)}|²`, minimal over all permutations.
    pub cost: f64,
}

/// One row of a Bauer–Fike nearest-match table.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NearestMatch {
    /// A basal coneigenvalue of the perturbed matrix.
    pub mu: BasalQuaternion,
    /// The closest basal coneigenvalue of the unperturbed matrix.
    pub nearest_lambda: BasalQuaternion,
    /// `|μ − nearest λ|`.
    pub distance: f64,
}

/// The certificate backing a verification verdict.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Witness {
    /// An optimal matching (Hoffman–Wielandt-type checks).
    Matching(MatchResult),
    /// A per-value nearest-match table (Bauer–Fike-type checks).
    Nearest(Vec<NearestMatch>),
}

/// Norms and conditioning that entered a verification, for the record.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ReportContext {
    /// `‖A − B‖_F` (the norm itself, not its square).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fro_diff: Option<f64>,
    /// `‖P‖₂·‖P⁻¹‖₂` of the condiagonalizer used.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    /// `‖E‖₂` of the perturbation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec_norm_e: Option<f64>,
    /// Full cost matrix `c_{lm} = |λ_l − μ_m|²` (counterexample reports).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cost_matrix: Option<Vec<Vec<f64>>>,
}

/// Outcome of checking one inequality on one matrix pair.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    /// Left-hand side of the inequality.
    pub lhs: f64,
    /// Right-hand side of the inequality.
    pub rhs: f64,
    /// Verdict under [`bound_holds`].
    pub holds: bool,
    /// The matching or nearest-match certificate.
    pub witness: Witness,
    /// Norms and conditioning used to form `rhs`.
    pub context: ReportContext,
}

/// Which structural hypothesis a Hoffman–Wielandt check runs under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HwVariant {
    /// Both matrices conjugate normal (`A·A*` and `A*·A` are j-conjugates).
    ConjugateNormal,
    /// Both matrices skew-symmetric (`Aᵀ = −A`).
    SkewSymmetric,
}

/// Minimal-cost assignment between two basal spectra.
///
/// Costs are squared basal distances `c_{lm} = |λ_l − μ_m|²`; the Hungarian
/// algorithm (potentials form, `O(n³)`) finds a certified optimum.  Fails
/// with [`Error::LengthMismatch`] when the spectra have different sizes.
pub fn optimal_matching(ls: &BasalSpectrum, ms: &BasalSpectrum) -> Result<MatchResult> {
    if ls.len() != ms.len() {
        return Err(Error::LengthMismatch {
            left: ls.len(),
            right: ms.len(),
        });
    }
    let cost = cost_matrix(ls, ms);
    let (permutation, cost) = hungarian(&cost);
    Ok(MatchResult { permutation, cost })
}

/// `c_{lm} = |λ_l − μ_m|²` for all pairs.
fn cost_matrix(ls: &BasalSpectrum, ms: &BasalSpectrum) -> Vec<Vec<f64>> {
    ls.values()
        .iter()
        .map(|l| ms.values().iter().map(|m| l.dist(*m).powi(2)).collect())
        .collect()
}

/// Hungarian assignment on a square cost matrix, returning the minimizing
/// permutation (`perm[row] = column`) and its total cost.
///
/// Shortest-augmenting-path formulation with row/column potentials; exact
/// optimality is certified against brute force for `n ≤ 6` in the tests.
fn hungarian(cost: &[Vec<f64>]) -> (Vec<usize>, f64) {
    let n = cost.len();
    // 1-based arrays; index 0 is the virtual unmatched column.
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut matched_row = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        matched_row[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = matched_row[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let reduced = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if reduced < minv[j] {
                    minv[j] = reduced;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[matched_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if matched_row[j0] == 0 {
                break;
            }
        }
        // Augment along the alternating path back to the virtual column.
        while j0 != 0 {
            let j1 = way[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
        }
    }
    let mut perm = vec![0usize; n];
    for j in 1..=n {
        if matched_row[j] > 0 {
            perm[matched_row[j] - 1] = j - 1;
        }
    }
    let total = (0..n).map(|l| cost[l][perm[l]]).sum();
    (perm, total)
}

/// Structure flags of both operands, or the appropriate error.
fn flags_pair(a: &QMatrix, b: &QMatrix) -> Result<(StructureFlags, StructureFlags)> {
    Ok((
        a.structure_flags(DEFAULT_STRUCTURE_TOL)?,
        b.structure_flags(DEFAULT_STRUCTURE_TOL)?,
    ))
}

/// Matching-based report core shared by the Hoffman–Wielandt checks:
/// `lhs` = optimal matching cost, `rhs` = `scale·‖A−B‖²_F`.
fn matching_report(
    a: &QMatrix,
    b: &QMatrix,
    scale: f64,
    mut context: ReportContext,
    with_cost_matrix: bool,
) -> Result<VerificationReport> {
    let diff = a.checked_sub(b)?;
    let fro_diff = diff.fro_norm();
    let ls = basal_coneigenvalues(a)?;
    let ms = basal_coneigenvalues(b)?;
    if with_cost_matrix {
        context.cost_matrix = Some(cost_matrix(&ls, &ms));
    }
    let matching = optimal_matching(&ls, &ms)?;
    let lhs = matching.cost;
    let rhs = scale * fro_diff * fro_diff;
    context.fro_diff = Some(fro_diff);
    Ok(VerificationReport {
        lhs,
        rhs,
        holds: bound_holds(lhs, rhs),
        witness: Witness::Matching(matching),
        context,
    })
}

/// Hoffman–Wielandt-type check: optimal matching cost against `‖A−B‖²_F`.
///
/// Both matrices must satisfy the variant's structural hypothesis
/// (conjugate normal or skew symmetric, checked with the default structure
/// tolerance); otherwise [`Error::StructureViolation`] names the offender.
pub fn verify_hw(a: &QMatrix, b: &QMatrix, variant: HwVariant) -> Result<VerificationReport> {
    let (fa, fb) = flags_pair(a, b)?;
    let (pick, predicate): (fn(&StructureFlags) -> bool, &'static str) = match variant {
        HwVariant::ConjugateNormal => (|f| f.conjugate_normal, "conjugate normal"),
        HwVariant::SkewSymmetric => (|f| f.skew_symmetric, "skew symmetric"),
    };
    if !pick(&fa) {
        return Err(Error::StructureViolation {
            matrix: "A",
            predicate,
        });
    }
    if !pick(&fb) {
        return Err(Error::StructureViolation {
            matrix: "B",
            predicate,
        });
    }
    matching_report(a, b, 1.0, ReportContext::default(), false)
}

/// The same computation as [`verify_hw`] for *plain normal* matrices, where
/// the inequality can fail: the report is returned either way, with the
/// full cost matrix included for inspection.
///
/// Both matrices must be normal; otherwise [`Error::StructureViolation`].
pub fn check_normal_counterexample(a: &QMatrix, b: &QMatrix) -> Result<VerificationReport> {
    let (fa, fb) = flags_pair(a, b)?;
    if !fa.normal {
        return Err(Error::StructureViolation {
            matrix: "A",
            predicate: "normal",
        });
    }
    if !fb.normal {
        return Err(Error::StructureViolation {
            matrix: "B",
            predicate: "normal",
        });
    }
    matching_report(a, b, 1.0, ReportContext::default(), true)
}

/// Condition number of a caller-supplied condiagonalizer of `A`, after
/// verifying that `P̃⁻¹·A·P` really is diagonal to working precision.
///
/// Only diagonality is required: rotating each column of `P` by a unit
/// factor reaches the basal form without changing `‖P‖₂·‖P⁻¹‖₂`.
fn supplied_kappa(a: &QMatrix, p: &QMatrix) -> Result<f64> {
    if p.rows() != a.rows() || p.cols() != a.cols() {
        return Err(Error::ShapeMismatch {
            op: "condiagonalize with supplied P",
            left_rows: a.rows(),
            left_cols: a.cols(),
            right_rows: p.rows(),
            right_cols: p.cols(),
        });
    }
    let p_inv = p.qm_inverse().map_err(|e| match e {
        Error::Singular => {
            Error::NotCondiagonalizable("the supplied P is numerically singular".to_string())
        }
        other => other,
    })?;
    let d = &(&p_inv.jconj() * a) * p;
    let mut off = 0.0f64;
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            if i != j {
                off += d[(i, j)].abs_sq();
            }
        }
    }
    let off = off.sqrt();
    let fro = a.fro_norm();
    let allowed = CONDIAG_RESIDUAL_REL * if fro > 0.0 { fro } else { 1.0 };
    if off > allowed {
        return Err(Error::NotCondiagonalizable(format!(
            "supplied P leaves off-diagonal mass ‖offdiag(P̃⁻¹AP)‖_F = {off:.3e} \
             (allowed {allowed:.3e})"
        )));
    }
    Ok(p.spec_norm() * p_inv.spec_norm())
}

/// The condition number to use: from the caller's `P` (verified) or from a
/// freshly computed condiagonalization.
fn kappa_for(a: &QMatrix, p_opt: Option<&QMatrix>) -> Result<f64> {
    match p_opt {
        Some(p) => supplied_kappa(a, p),
        None => Ok(condiagonalize(a)?.kappa),
    }
}

/// Generalized Hoffman–Wielandt check: matching cost against
/// `‖P‖²₂·‖P⁻¹‖²₂·‖A−B‖²_F` for condiagonalizable `A` and conjugate-normal
/// `B`.
///
/// When `p_opt` is given it is verified to condiagonalize `A` and its
/// condition number is used; otherwise a condiagonalization is computed.
/// The report's context records which `κ` entered the bound — the bound is
/// `P`-dependent and no canonical choice exists.
pub fn verify_generalized_hw(
    a: &QMatrix,
    b: &QMatrix,
    p_opt: Option<&QMatrix>,
) -> Result<VerificationReport> {
    let (_, fb) = flags_pair(a, b)?;
    if !fb.conjugate_normal {
        return Err(Error::StructureViolation {
            matrix: "B",
            predicate: "conjugate normal",
        });
    }
    let kappa = kappa_for(a, p_opt)?;
    let context = ReportContext {
        kappa: Some(kappa),
        ..ReportContext::default()
    };
    matching_report(a, b, kappa * kappa, context, false)
}

/// Bauer–Fike-type check: every basal coneigenvalue of `A+E` must lie
/// within `‖P‖₂·‖P⁻¹‖₂·‖E‖₂` of some basal coneigenvalue of `A`.
///
/// `lhs` is the worst (largest) nearest-neighbour distance, `rhs` the
/// bound; the witness table lists each perturbed value with its nearest
/// unperturbed partner.  `A` must be condiagonalizable (or `p_opt` must
/// supply a verified condiagonalizer).
pub fn verify_bauer_fike(
    a: &QMatrix,
    e: &QMatrix,
    p_opt: Option<&QMatrix>,
) -> Result<VerificationReport> {
    let perturbed = a.checked_add(e)?;
    let kappa = kappa_for(a, p_opt)?;
    let spec_e = e.spec_norm();
    let ls = basal_coneigenvalues(a)?;
    let ms = basal_coneigenvalues(&perturbed)?;
    let table: Vec<NearestMatch> = ms
        .values()
        .iter()
        .map(|&mu| {
            let (nearest_lambda, distance) = ls
                .values()
                .iter()
                .map(|&l| (l, mu.dist(l)))
                .min_by(|x, y| x.1.total_cmp(&y.1))
                .expect("spectra of equal positive dimension");
            NearestMatch {
                mu,
                nearest_lambda,
                distance,
            }
        })
        .collect();
    let lhs = table.iter().map(|r| r.distance).fold(0.0f64, f64::max);
    let rhs = kappa * spec_e;
    Ok(VerificationReport {
        lhs,
        rhs,
        holds: bound_holds(lhs, rhs),
        witness: Witness::Nearest(table),
        context: ReportContext {
            kappa: Some(kappa),
            spec_norm_e: Some(spec_e),
            ..ReportContext::default()
        },
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

    /// `A = [[−j, k], [k, −j]]`: condiagonalizable with a κ = 1 matrix.
    fn ghw_a() -> QMatrix {
        QMatrix::from_rows(vec![
            vec![-Quaternion::J, Quaternion::K],
            vec![Quaternion::K, -Quaternion::J],
        ])
        .unwrap()
    }

    /// `B = [[4k, j+k], [−j−k, 4k]]`: conjugate normal.
    fn ghw_b() -> QMatrix {
        let jk = Quaternion::J + Quaternion::K;
        QMatrix::from_rows(vec![
            vec![Quaternion::K * 4.0, jk],
            vec![-jk, Quaternion::K * 4.0],
        ])
        .unwrap()
    }

    /// The κ = 1 condiagonalizer of [`ghw_a`]: `P = P̂·(i+j)` with
    /// `P̂ = [[−j/2, 1/2], [j/2, 1/2]]`.
    fn ghw_p() -> QMatrix {
        let p_hat = QMatrix::from_rows(vec![
            vec![Quaternion::J * -0.5, Quaternion::real(0.5)],
            vec![Quaternion::J * 0.5, Quaternion::real(0.5)],
        ])
        .unwrap();
        p_hat.scale_right(Quaternion::I + Quaternion::J)
    }

    /// The normal pair on which plain Hoffman–Wielandt fails:
    /// `[[j, i], [i, −j]]` and `[[j, i], [i, −j/4]]`.
    fn normal_pair() -> (QMatrix, QMatrix) {
        let a = QMatrix::from_rows(vec![
            vec![Quaternion::J, Quaternion::I],
            vec![Quaternion::I, -Quaternion::J],
        ])
        .unwrap();
        let b = QMatrix::from_rows(vec![
            vec![Quaternion::J, Quaternion::I],
            vec![Quaternion::I, Quaternion::J * -0.25],
        ])
        .unwrap();
        (a, b)
    }

    fn random_quaternion(rng: &mut SplitMix64) -> Quaternion {
        q(
            rng.next_normal(),
            rng.next_normal(),
            rng.next_normal(),
            rng.next_normal(),
        )
    }

    /// Random diagonal matrices are conjugate normal: `j·D` has
    /// `(jD)(jD)* = (jD)*(jD) = diag(|d_i|²)`.
    fn random_diagonal(n: usize, rng: &mut SplitMix64) -> QMatrix {
        let mut d = QMatrix::zeros(n, n);
        for i in 0..n {
            d[(i, i)] = random_quaternion(rng);
        }
        d
    }

    fn random_skew(n: usize, rng: &mut SplitMix64) -> QMatrix {
        let m = QMatrix::from_fn(n, n, |_, _| random_quaternion(rng));
        (&m - &m.transpose()).map(|x| x * 0.5)
    }

    fn brute_force_cost(cost: &[Vec<f64>]) -> f64 {
        fn recurse(cost: &[Vec<f64>], row: usize, taken: &mut [bool], acc: f64, best: &mut f64) {
            if row == cost.len() {
                *best = best.min(acc);
                return;
            }
            for col in 0..cost.len() {
                if !taken[col] {
                    taken[col] = true;
                    recurse(cost, row + 1, taken, acc + cost[row][col], best);
                    taken[col] = false;
                }
            }
        }
        let mut best = f64::INFINITY;
        recurse(cost, 0, &mut vec![false; cost.len()], 0.0, &mut best);
        best
    }

    #[test]
    fn matching_of_equal_spectra_is_free() {
        let ls = BasalSpectrum::from_values(vec![
            BasalQuaternion::new(2.0, -1.0),
            BasalQuaternion::new(1.0, 3.0),
            BasalQuaternion::new(0.0, 0.0),
        ]);
        let m = optimal_matching(&ls, &ls.clone()).unwrap();
        assert!(m.cost.abs() < 1e-12);
        let mut seen = m.permutation.clone();
        seen.sort_unstable();
        assert_eq!(seen, vec![0, 1, 2]);
    }

    #[test]
    fn matching_cost_of_the_counterexample_spectra() {
        // {0, 0} against two copies of (√39 + 3j)/8: every permutation
        // costs 2·(39 + 9)/64 = 1.5.
        let ls = BasalSpectrum::from_values(vec![
            BasalQuaternion::new(0.0, 0.0),
            BasalQuaternion::new(0.0, 0.0),
        ]);
        let mu = BasalQuaternion::new(39.0f64.sqrt() / 8.0, 3.0 / 8.0);
        let ms = BasalSpectrum::from_values(vec![mu, mu]);
        let m = optimal_matching(&ls, &ms).unwrap();
        assert!((m.cost - 1.5).abs() < 1e-12);
    }

    #[test]
    fn matching_rejects_unequal_lengths() {
        let ls = BasalSpectrum::from_values(vec![BasalQuaternion::new(1.0, 0.0)]);
        let ms = BasalSpectrum::from_values(vec![]);
        assert!(matches!(
            optimal_matching(&ls, &ms),
            Err(Error::LengthMismatch { left: 1, right: 0 })
        ));
    }

    #[test]
    fn matching_agrees_with_brute_force_up_to_six() {
        let mut rng = SplitMix64::new(23);
        for n in 2..=6usize {
            for _ in 0..8 {
                let mk = |rng: &mut SplitMix64| {
                    BasalSpectrum::from_values(
                        (0..n)
                            .map(|_| {
                                BasalQuaternion::new(
                                    rng.next_normal().abs() * 3.0,
                                    rng.next_normal() * 3.0,
                                )
                            })
                            .collect(),
                    )
                };
                let ls = mk(&mut rng);
                let ms = mk(&mut rng);
                let m = optimal_matching(&ls, &ms).unwrap();
                let brute = brute_force_cost(&cost_matrix(&ls, &ms));
                assert!(
                    (m.cost - brute).abs() <= 1e-9 * (1.0 + brute),
                    "hungarian {} vs brute force {brute} at n={n}",
                    m.cost
                );
                // And the permutation really attains the reported cost.
                let attained: f64 = ls
                    .values()
                    .iter()
                    .zip(&m.permutation)
                    .map(|(l, &p)| l.dist(ms.values()[p]).powi(2))
                    .sum();
                assert!((attained - m.cost).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn hw_holds_for_diagonal_conjugate_normal_pairs() {
        let mut rng = SplitMix64::new(11);
        for trial in 0..15 {
            let n = 2 + trial % 4;
            let a = random_diagonal(n, &mut rng);
            let b = random_diagonal(n, &mut rng);
            assert!(a.structure_flags(DEFAULT_STRUCTURE_TOL).unwrap().conjugate_normal);
            let report = verify_hw(&a, &b, HwVariant::ConjugateNormal).unwrap();
            assert!(report.holds, "trial {trial}: {} > {}", report.lhs, report.rhs);
        }
    }

    #[test]
    fn hw_holds_for_skew_pairs() {
        let mut rng = SplitMix64::new(13);
        for trial in 0..15 {
            let n = 2 + trial % 4;
            let a = random_skew(n, &mut rng);
            let b = random_skew(n, &mut rng);
            assert!(a.structure_flags(DEFAULT_STRUCTURE_TOL).unwrap().skew_symmetric);
            let report = verify_hw(&a, &b, HwVariant::SkewSymmetric).unwrap();
            assert!(report.holds, "trial {trial}: {} > {}", report.lhs, report.rhs);
        }
    }

    #[test]
    fn hw_of_equal_matrices_is_trivial() {
        let a = ghw_b();
        let report = verify_hw(&a, &a.clone(), HwVariant::ConjugateNormal).unwrap();
        assert!(report.holds);
        assert!(report.lhs.abs() < 1e-12);
        assert!(report.rhs.abs() < 1e-24);
    }

    #[test]
    fn hw_rejects_structure_violations() {
        let good = random_diagonal(2, &mut SplitMix64::new(5));
        let bad = QMatrix::from_rows(vec![
            vec![Quaternion::ONE, Quaternion::ONE],
            vec![Quaternion::ZERO, Quaternion::ONE],
        ])
        .unwrap();
        assert!(matches!(
            verify_hw(&bad, &good, HwVariant::ConjugateNormal),
            Err(Error::StructureViolation { matrix: "A", .. })
        ));
        assert!(matches!(
            verify_hw(&good, &bad, HwVariant::ConjugateNormal),
            Err(Error::StructureViolation { matrix: "B", .. })
        ));
        assert!(matches!(
            verify_hw(&good, &good, HwVariant::SkewSymmetric),
            Err(Error::StructureViolation { matrix: "A", .. })
        ));
    }

    #[test]
    fn normal_counterexample_reproduces() {
        let (a, b) = normal_pair();
        let report = check_normal_counterexample(&a, &b).unwrap();
        assert!((report.lhs - 1.5).abs() < 1e-9);
        assert!((report.rhs - 0.5625).abs() < 1e-12);
        assert!(!report.holds);
        assert!(report.lhs - report.rhs >= 0.9);
        // The full cost matrix ships with the report: all four entries are
        // |0 − (√39 + 3j)/8|² = 48/64 = 0.75.
        let cm = report.context.cost_matrix.as_ref().unwrap();
        for row in cm {
            for &c in row {
                assert!((c - 0.75).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn normal_counterexample_requires_normality() {
        let (a, _) = normal_pair();
        let bad = QMatrix::from_rows(vec![
            vec![Quaternion::ONE, Quaternion::ONE],
            vec![Quaternion::ZERO, Quaternion::ONE],
        ])
        .unwrap();
        assert!(matches!(
            check_normal_counterexample(&a, &bad),
            Err(Error::StructureViolation {
                matrix: "B",
                predicate: "normal"
            })
        ));
    }

    #[test]
    fn generalized_hw_on_the_worked_pair_with_supplied_p() {
        let report = verify_generalized_hw(&ghw_a(), &ghw_b(), Some(&ghw_p())).unwrap();
        assert!((report.lhs - 24.0).abs() < 1e-9);
        assert!((report.rhs - 40.0).abs() < 1e-9);
        assert!(report.holds);
        assert!((report.context.kappa.unwrap() - 1.0).abs() < 1e-9);
        assert!((report.context.fro_diff.unwrap() - 40.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn generalized_hw_with_computed_condiagonalization() {
        let report = verify_generalized_hw(&ghw_a(), &ghw_b(), None).unwrap();
        assert!(report.holds);
        assert!((report.lhs - 24.0).abs() < 1e-6);
        // κ ≥ 1 always, so the computed bound is at least the κ = 1 value 40.
        assert!(report.rhs >= 40.0 - 1e-6);
    }

    #[test]
    fn generalized_hw_rejects_bad_inputs() {
        let bad = QMatrix::from_rows(vec![
            vec![Quaternion::ONE, Quaternion::ONE],
            vec![Quaternion::ZERO, Quaternion::ONE],
        ])
        .unwrap();
        assert!(matches!(
            verify_generalized_hw(&ghw_a(), &bad, None),
            Err(Error::StructureViolation {
                matrix: "B",
                predicate: "conjugate normal"
            })
        ));
        // The identity does not condiagonalize A: P̃⁻¹AP = A is not diagonal.
        assert!(matches!(
            verify_generalized_hw(&ghw_a(), &ghw_b(), Some(&QMatrix::identity(2))),
            Err(Error::NotCondiagonalizable(_))
        ));
    }

    #[test]
    fn bauer_fike_zero_perturbation_is_trivial() {
        let a = ghw_a();
        let report = verify_bauer_fike(&a, &QMatrix::zeros(2, 2), Some(&ghw_p())).unwrap();
        assert!(report.lhs.abs() < 1e-9);
        assert!(report.holds);
    }

    #[test]
    fn bauer_fike_on_the_composed_worked_pair() {
        let a = ghw_a();
        let e = &ghw_b() - &a;
        let report = verify_bauer_fike(&a, &e, Some(&ghw_p())).unwrap();
        // κ = 1, so the bound is ‖E‖₂ = √(20 + √104) ≈ 5.4953; the worst
        // displacement is |(5,−1) − (1,−1)| = 4.
        assert!((report.rhs - (20.0 + 104.0f64.sqrt()).sqrt()).abs() < 1e-9);
        assert!((report.lhs - 4.0).abs() < 1e-8);
        assert!(report.holds);
        match &report.witness {
            Witness::Nearest(table) => {
                assert_eq!(table.len(), 2);
                for row in table {
                    assert!(row.distance <= report.rhs);
                }
            }
            Witness::Matching(_) => panic!("expected a nearest-match table"),
        }
    }

    #[test]
    fn bauer_fike_small_random_perturbations() {
        let mut rng = SplitMix64::new(17);
        for trial in 0..10 {
            let n = 2 + trial % 3;
            // Plant a condiagonalizable A = S̃·D·S⁻¹ with a mild S.
            let d = random_diagonal(n, &mut rng);
            let bump = QMatrix::from_fn(n, n, |_, _| random_quaternion(&mut rng) * 0.2);
            let s = &QMatrix::identity(n) + &bump;
            let a = &(&s.jconj() * &d) * &s.qm_inverse().unwrap();
            let mut e = QMatrix::from_fn(n, n, |_, _| random_quaternion(&mut rng));
            let scale = 0.01 * a.fro_norm() / e.fro_norm();
            e = e.map(|x| x * scale);
            let report = verify_bauer_fike(&a, &e, None).unwrap();
            assert!(report.holds, "trial {trial}: {} > {}", report.lhs, report.rhs);
        }
    }

    #[test]
    fn bound_holds_edge_cases() {
        assert!(bound_holds(0.0, 0.0));
        assert!(bound_holds(1e-10, 0.0));
        assert!(bound_holds(1.0 + 1e-10, 1.0));
        assert!(!bound_holds(1.0 + 1e-7, 1.0));
        assert!(!bound_holds(0.1, 0.0));
    }
}
