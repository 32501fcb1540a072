//! Geršgorin-type localization of basal right coneigenvalues.
//!
//! For a square quaternion matrix, each diagonal entry spawns a closed ball
//! whose radius is the deleted absolute row sum `R_i` (or column sum `C_i`).
//! Unlike the complex case, the balls capture coneigenvalues only *through
//! their consimilarity orbits*: some point of the orbit
//! `{α̃⁻¹λα}` of each basal coneigenvalue lies in the union of the balls,
//! even though the basal representative itself may not.  The identity matrix
//! is the canonical witness: its single ball is the point `{1}`, the basal
//! coneigenvalue is `1`, and the orbit point `−1` (consimilar to `1`) lies
//! outside — membership holds only orbit-wise.
//!
//! Orbit membership is decided with the closed-form [`orbit_distance`]: a
//! ball contains an orbit point exactly when the distance from the orbit to
//! the ball's center is at most its radius.
//!
//! The same balls support two refinements: a connected component of `k`
//! balls contains (orbit-wise) at least `k` coneigenvalues, and every left
//! coneigenpair `(λ, x)` places `λ·q` (with `q = x̃_p·x_p⁻¹` consimilar to
//! `1`) inside the union of the row balls.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qmat::{vec_norm, QMatrix};
use crate::quat::{orbit_distance, BasalQuaternion, Quaternion};
use crate::spectra::basal_coneigenvalues;

/// Default membership tolerance: `1e−8·(1 + ‖A‖_F)`.
pub fn default_membership_tol(a: &QMatrix) -> f64 {
    1e-8 * (1.0 + a.fro_norm())
}

/// Which deleted absolute sum a ball's radius comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BallKind {
    Row,
    Column,
}

/// A closed Geršgorin ball `{p : |p − center| ≤ radius}` in the quaternions.
///
/// A radius-0 ball is the singleton `{center}`, not the empty set; this is
/// what makes the identity-matrix witness above come out right.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GersgorinBall {
    /// The diagonal entry `q_ii`.
    pub center: Quaternion,
    /// Deleted absolute row or column sum; nonnegative.
    pub radius: f64,
    /// Which diagonal entry this ball belongs to.
    pub index: usize,
    /// Row or column flavour.
    pub kind: BallKind,
}

/// The Geršgorin balls of a square matrix.
///
/// Fails with [`Error::NotSquare`] for rectangular input.
pub fn gersgorin_balls(a: &QMatrix, kind: BallKind) -> Result<Vec<GersgorinBall>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    Ok((0..n)
        .map(|i| {
            let radius: f64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| match kind {
                    BallKind::Row => a[(i, j)].abs(),
                    BallKind::Column => a[(j, i)].abs(),
                })
                .sum();
            GersgorinBall {
                center: a[(i, i)],
                radius,
                index: i,
                kind,
            }
        })
        .collect())
}

/// One coneigenvalue's localization outcome.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LocalizationEntry {
    /// The basal coneigenvalue being located.
    pub lambda: BasalQuaternion,
    /// Index of the ball minimizing the orbit gap.
    pub best_ball: usize,
    /// `orbit_distance(lambda, center) − radius` at the best ball;
    /// nonpositive means the orbit meets the ball.
    pub orbit_gap: f64,
    /// Whether the orbit meets the union of balls within tolerance.
    pub holds: bool,
}

/// Localization report for a whole spectrum.
#[derive(Debug, Clone, Serialize)]
pub struct LocalizationReport {
    /// One entry per basal coneigenvalue, in spectrum order.
    pub entries: Vec<LocalizationEntry>,
    /// Conjunction of the per-value `holds` flags.
    pub overall: bool,
}

/// Checks that every basal coneigenvalue's orbit meets the union of the
/// row or column Geršgorin balls, within `tol`.
///
/// For each coneigenvalue the report records the ball with the smallest
/// orbit gap; the theorem holds when that gap is `≤ tol`.
pub fn verify_right_gersgorin(a: &QMatrix, kind: BallKind, tol: f64) -> Result<LocalizationReport> {
    let balls = gersgorin_balls(a, kind)?;
    let spectrum = basal_coneigenvalues(a)?;
    let entries: Vec<LocalizationEntry> = spectrum
        .values()
        .iter()
        .map(|&lambda| {
            let mut best_ball = 0;
            let mut orbit_gap = f64::INFINITY;
            for ball in &balls {
                let gap = orbit_distance(lambda, ball.center) - ball.radius;
                if gap < orbit_gap {
                    orbit_gap = gap;
                    best_ball = ball.index;
                }
            }
            LocalizationEntry {
                lambda,
                best_ball,
                orbit_gap,
                holds: orbit_gap <= tol,
            }
        })
        .collect();
    let overall = entries.iter().all(|e| e.holds);
    Ok(LocalizationReport { entries, overall })
}

/// Connected components of the ball intersection graph.
///
/// Balls `i`, `j` are adjacent when `|center_i − center_j| ≤ radius_i +
/// radius_j` (closed balls: touching counts, and coincident radius-0 balls
/// are adjacent).  Components are returned as sorted index sets, ordered by
/// their smallest member.
pub fn connected_components(balls: &[GersgorinBall]) -> Vec<Vec<usize>> {
    let n = balls.len();
    let mut component = vec![usize::MAX; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![start];
        component[start] = id;
        let mut frontier = vec![start];
        while let Some(i) = frontier.pop() {
            for j in 0..n {
                if component[j] == usize::MAX
                    && (balls[i].center - balls[j].center).abs()
                        <= balls[i].radius + balls[j].radius
                {
                    component[j] = id;
                    members.push(j);
                    frontier.push(j);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    components
}

/// One connected component's counting outcome.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentCount {
    /// Indices of the row balls forming the component.
    pub ball_indices: Vec<usize>,
    /// Number of balls in the component.
    pub ball_count: usize,
    /// Number of basal coneigenvalues whose orbit meets the component's
    /// union of balls (within tolerance).
    pub coneig_count: usize,
    /// Whether `coneig_count ≥ ball_count`.
    pub holds: bool,
}

/// Component-counting report: each component of `k` balls must capture at
/// least `k` coneigenvalue orbits.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentReport {
    /// Per-component counts, ordered by smallest ball index.
    pub components: Vec<ComponentCount>,
    /// Conjunction of the per-component `holds` flags.
    pub overall: bool,
}

/// Counts coneigenvalue orbits per connected component of the row balls.
///
/// A coneigenvalue is counted in every component whose union its orbit
/// meets within `tol` (an orbit spanning two components counts in both).
pub fn verify_component_counts(a: &QMatrix, tol: f64) -> Result<ComponentReport> {
    let balls = gersgorin_balls(a, BallKind::Row)?;
    let spectrum = basal_coneigenvalues(a)?;
    let partition = connected_components(&balls);
    let components: Vec<ComponentCount> = partition
        .into_iter()
        .map(|ball_indices| {
            let coneig_count = spectrum
                .values()
                .iter()
                .filter(|&&lambda| {
                    ball_indices.iter().any(|&i| {
                        orbit_distance(lambda, balls[i].center) - balls[i].radius <= tol
                    })
                })
                .count();
            let ball_count = ball_indices.len();
            ComponentCount {
                ball_indices,
                ball_count,
                coneig_count,
                holds: coneig_count >= ball_count,
            }
        })
        .collect();
    let overall = components.iter().all(|c| c.holds);
    Ok(ComponentReport { components, overall })
}

/// Outcome of checking a claimed left coneigenpair.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LeftPairReport {
    /// Whether `‖A·x − λ·x̃‖ ≤ tol·‖A‖_F·‖x‖`.
    pub is_pair: bool,
    /// The unit quaternion `q = x̃_p·x_p⁻¹` (consimilar to 1), where `p` is
    /// the smallest index of maximal `|x_i|`.
    pub q: Quaternion,
    /// Whether `λ·q` lies in the union of the row balls (within `tol`).
    pub in_union: bool,
}

/// Checks a claimed left coneigenpair `A·x = λ·x̃` and locates `λ·q` in the
/// row Geršgorin balls.
///
/// Fails with [`Error::ZeroVector`] when `x` has norm zero and
/// [`Error::LengthMismatch`] when `x` does not match the matrix dimension.
pub fn verify_left_pair(
    a: &QMatrix,
    lambda: Quaternion,
    x: &[Quaternion],
    tol: f64,
) -> Result<LeftPairReport> {
    let balls = gersgorin_balls(a, BallKind::Row)?;
    if x.len() != a.rows() {
        return Err(Error::LengthMismatch {
            left: a.rows(),
            right: x.len(),
        });
    }
    let x_norm = vec_norm(x);
    if x_norm == 0.0 {
        return Err(Error::ZeroVector);
    }

    let ax = a.mul_vec(x);
    let residual: Vec<Quaternion> = ax
        .iter()
        .zip(x)
        .map(|(&axi, &xi)| axi - lambda * xi.jconj())
        .collect();
    let is_pair = vec_norm(&residual) <= tol * a.fro_norm() * x_norm;

    // Smallest index attaining the maximal modulus.
    let mut p = 0;
    for (idx, xi) in x.iter().enumerate() {
        if xi.abs_sq() > x[p].abs_sq() {
            p = idx;
        }
    }
    let q = x[p].jconj() * x[p].inv()?;
    let lambda_q = lambda * q;
    let in_union = balls
        .iter()
        .any(|ball| (lambda_q - ball.center).abs() <= ball.radius + tol);

    Ok(LeftPairReport { is_pair, q, in_union })
}
