//! Shared oracles for the integration suites: an independent test-side
//! stream, characteristic-polynomial roots via Durand–Kerner, brute-force
//! assignment, and sampled consimilarity-orbit minimization.
//!
//! Everything here deliberately avoids the library's own algorithms so that
//! agreement is evidence, not tautology.

use num_complex::Complex64;

use coneig::qmat::CMatrix;
use coneig::{BasalQuaternion, Quaternion};

/// SplitMix64-style stream for test sampling; independent of (and not
/// required to match) the library's generator.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Standard normal via Box–Muller.
    pub fn next_normal(&mut self) -> f64 {
        let u1 = (1.0 - self.next_f64()).max(f64::MIN_POSITIVE);
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    pub fn quaternion(&mut self) -> Quaternion {
        Quaternion::new(
            self.next_normal(),
            self.next_normal(),
            self.next_normal(),
            self.next_normal(),
        )
    }

    pub fn complex(&mut self) -> Complex64 {
        Complex64::new(self.next_normal(), self.next_normal())
    }
}

/// Monic characteristic polynomial of `m` by the Faddeev–LeVerrier
/// recurrence: returns `c` with `p(z) = z^n + c[n−1]·z^{n−1} + … + c[0]`.
pub fn char_poly(m: &CMatrix) -> Vec<Complex64> {
    let n = m.rows();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    let mut power = m.clone();
    for k in 1..=n {
        let trace: Complex64 = (0..n).map(|i| power[(i, i)]).sum();
        let c = -trace / k as f64;
        coeffs[n - k] = c;
        if k < n {
            let mut shifted = power.clone();
            for i in 0..n {
                shifted[(i, i)] += c;
            }
            power = m * &shifted;
        }
    }
    coeffs
}

/// All roots of the monic polynomial `z^d + c[d−1]·z^{d−1} + … + c[0]` by
/// Durand–Kerner iteration.
pub fn durand_kerner(coeffs: &[Complex64]) -> Vec<Complex64> {
    let d = coeffs.len();
    if d == 0 {
        return Vec::new();
    }
    let eval = |z: Complex64| {
        let mut p = Complex64::new(1.0, 0.0);
        for &c in coeffs.iter().rev() {
            p = p * z + c;
        }
        p
    };
    let base = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..d).map(|i| base.powu(i as u32 + 1)).collect();
    for _ in 0..200 {
        let mut max_move = 0.0f64;
        for i in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for l in 0..d {
                if l != i {
                    denom *= roots[i] - roots[l];
                }
            }
            if denom.norm() < 1e-300 {
                roots[i] += Complex64::new(1e-6, 1e-6);
                max_move = f64::INFINITY;
                continue;
            }
            let delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            max_move = max_move.max(delta.norm());
        }
        if max_move < 1e-12 {
            break;
        }
    }
    roots
}

/// Greedy multiset matching: every `got` value must sit within `tol` of a
/// distinct `want` value.  Returns a description of the first miss.
pub fn match_multiset<T: Copy + std::fmt::Debug>(
    got: &[T],
    want: &[T],
    dist: impl Fn(T, T) -> f64,
    tol: f64,
) -> Result<(), String> {
    if got.len() != want.len() {
        return Err(format!(
            "multiset sizes differ: {} vs {}",
            got.len(),
            want.len()
        ));
    }
    let mut free: Vec<T> = want.to_vec();
    for &g in got {
        let (idx, best) = free
            .iter()
            .enumerate()
            .map(|(i, &w)| (i, dist(g, w)))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .ok_or_else(|| "empty reference multiset".to_string())?;
        if best > tol {
            return Err(format!(
                "{g:?} is {best:.3e} from its nearest partner (tol {tol:.3e})"
            ));
        }
        free.swap_remove(idx);
    }
    Ok(())
}

/// Minimal assignment cost by exhaustive permutation search.
pub fn brute_force_cost(cost: &[Vec<f64>]) -> f64 {
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

/// Sampled minimum of `|α̃⁻¹·λ·α − c|` over the consimilarity orbit of a
/// basal value: a global stage over random unit `α` followed by two local
/// refinement stages around the best sample (10⁵ evaluations total).
pub fn sampled_orbit_min(lambda: BasalQuaternion, c: Quaternion, rng: &mut TestRng) -> f64 {
    let lq = lambda.to_quaternion();
    let point_distance = |alpha: Quaternion| {
        // Unit α: (α̃)⁻¹ = conj(α̃).
        let orbit_point = alpha.jconj().conj() * lq * alpha;
        (orbit_point - c).abs()
    };
    let unit = |q: Quaternion| {
        let n = q.abs();
        if n < 1e-300 {
            Quaternion::ONE
        } else {
            q * (1.0 / n)
        }
    };

    let mut best_alpha = Quaternion::ONE;
    let mut best = point_distance(best_alpha);
    for _ in 0..40_000 {
        let alpha = unit(rng.quaternion());
        let d = point_distance(alpha);
        if d < best {
            best = d;
            best_alpha = alpha;
        }
    }
    for &radius in &[0.1, 0.01] {
        let center = best_alpha;
        for _ in 0..30_000 {
            let alpha = unit(center + rng.quaternion() * radius);
            let d = point_distance(alpha);
            if d < best {
                best = d;
                best_alpha = alpha;
            }
        }
    }
    best
}
