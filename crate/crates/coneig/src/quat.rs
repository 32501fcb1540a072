//! Quaternion scalar arithmetic, conjugations, and consimilarity geometry.
//!
//! A quaternion is written `q = a0 + a1·i + a2·j + a3·k` with the usual
//! multiplication table `ij = k = −ji`, `jk = i = −kj`, `ki = j = −ik`.
//! Besides the familiar conjugate `q̄` and modulus `|q|`, this module carries
//! the j-conjugate `q̃ = −jqj` (negate the i and k components), the
//! similarity and consimilarity predicates, and the distance from a point to
//! a consimilarity orbit.
//!
//! Two quaternions are similar exactly when they share real part and modulus,
//! and `p`, `q` are consimilar exactly when `jp`, `jq` are similar.  The
//! consimilarity orbit `{α̃⁻¹λα : α ≠ 0}` of a basal value `λ = a + b·j`
//! (see [`BasalQuaternion`]) is the 2-sphere of radius `a` centred at `b·j`
//! inside the hyperplane of fixed j-component; [`orbit_distance`] evaluates
//! the distance from any quaternion to that sphere in closed form.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_complex::Complex64;
use serde::de::{self, SeqAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A quaternion `a0 + a1·i + a2·j + a3·k` over `f64`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    /// Real component.
    pub a0: f64,
    /// Coefficient of `i`.
    pub a1: f64,
    /// Coefficient of `j`.
    pub a2: f64,
    /// Coefficient of `k`.
    pub a3: f64,
}

impl Quaternion {
    /// The zero quaternion.
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    /// The multiplicative identity.
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    /// The unit `i`.
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    /// The unit `j`.
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    /// The unit `k`.
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    /// Builds a quaternion from its four real components.
    #[inline]
    pub const fn new(a0: f64, a1: f64, a2: f64, a3: f64) -> Self {
        Quaternion { a0, a1, a2, a3 }
    }

    /// Embeds a real number.
    #[inline]
    pub const fn real(r: f64) -> Self {
        Quaternion::new(r, 0.0, 0.0, 0.0)
    }

    /// Embeds a complex number `x + y·i` as `x + y·i + 0·j + 0·k`.
    #[inline]
    pub fn from_complex(c: Complex64) -> Self {
        Quaternion::new(c.re, c.im, 0.0, 0.0)
    }

    /// Splits `q = c1 + c2·j` with `c1 = a0 + a1·i` and `c2 = a2 + a3·i`.
    ///
    /// This is the decomposition behind the complex adjoint: note that
    /// `(a2 + a3·i)·j = a2·j + a3·k`.
    #[inline]
    pub fn complex_split(self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.a0, self.a1),
            Complex64::new(self.a2, self.a3),
        )
    }

    /// Rebuilds a quaternion from its complex split `q = c1 + c2·j`.
    #[inline]
    pub fn from_complex_pair(c1: Complex64, c2: Complex64) -> Self {
        Quaternion::new(c1.re, c1.im, c2.re, c2.im)
    }

    /// Real part `a0`.
    #[inline]
    pub fn re(self) -> f64 {
        self.a0
    }

    /// Quaternion conjugate `q̄ = a0 − a1·i − a2·j − a3·k`.
    #[inline]
    pub fn conj(self) -> Self {
        Quaternion::new(self.a0, -self.a1, -self.a2, -self.a3)
    }

    /// j-conjugate `q̃ = −jqj = a0 − a1·i + a2·j − a3·k`.
    #[inline]
    pub fn jconj(self) -> Self {
        Quaternion::new(self.a0, -self.a1, self.a2, -self.a3)
    }

    /// Squared modulus `a0² + a1² + a2² + a3²`.
    #[inline]
    pub fn abs_sq(self) -> f64 {
        self.a0 * self.a0 + self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3
    }

    /// Modulus `|q|`.
    #[inline]
    pub fn abs(self) -> f64 {
        self.abs_sq().sqrt()
    }

    /// Multiplicative inverse `q⁻¹ = q̄ / |q|²`.
    ///
    /// Fails with [`Error::ZeroDivision`] when `|q|²` underflows.
    pub fn inv(self) -> Result<Self> {
        let n = self.abs_sq();
        if n < f64::MIN_POSITIVE {
            return Err(Error::ZeroDivision);
        }
        Ok(self.conj() / n)
    }

    /// True when every component is exactly zero.
    #[inline]
    pub fn is_zero(self) -> bool {
        self.a0 == 0.0 && self.a1 == 0.0 && self.a2 == 0.0 && self.a3 == 0.0
    }

    /// True when every component is finite.
    #[inline]
    pub fn is_finite(self) -> bool {
        self.a0.is_finite() && self.a1.is_finite() && self.a2.is_finite() && self.a3.is_finite()
    }
}

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

impl Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Quaternion::new(
            self.a0 + rhs.a0,
            self.a1 + rhs.a1,
            self.a2 + rhs.a2,
            self.a3 + rhs.a3,
        )
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Quaternion::new(
            self.a0 - rhs.a0,
            self.a1 - rhs.a1,
            self.a2 - rhs.a2,
            self.a3 - rhs.a3,
        )
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Self {
        Quaternion::new(-self.a0, -self.a1, -self.a2, -self.a3)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    /// Hamilton product under `ij = k = −ji`, `jk = i = −kj`, `ki = j = −ik`.
    #[inline]
    fn mul(self, r: Self) -> Self {
        let p = self;
        Quaternion::new(
            p.a0 * r.a0 - p.a1 * r.a1 - p.a2 * r.a2 - p.a3 * r.a3,
            p.a0 * r.a1 + p.a1 * r.a0 + p.a2 * r.a3 - p.a3 * r.a2,
            p.a0 * r.a2 - p.a1 * r.a3 + p.a2 * r.a0 + p.a3 * r.a1,
            p.a0 * r.a3 + p.a1 * r.a2 - p.a2 * r.a1 + p.a3 * r.a0,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Quaternion::new(self.a0 * s, self.a1 * s, self.a2 * s, self.a3 * s)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn div(self, s: f64) -> Self {
        Quaternion::new(self.a0 / s, self.a1 / s, self.a2 / s, self.a3 / s)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for Quaternion {
    #[inline]
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

// ---------------------------------------------------------------------------
// Similarity, consimilarity, orbit geometry
// ---------------------------------------------------------------------------

/// Similarity test: `p ~ q` iff `Re p = Re q` and `|p| = |q|`, within `tol`.
///
/// This is the standard characterization of quaternion similarity
/// (`s⁻¹qs = p` for some nonzero `s`).
#[inline]
pub fn is_similar(p: Quaternion, q: Quaternion, tol: f64) -> bool {
    (p.re() - q.re()).abs() <= tol && (p.abs() - q.abs()).abs() <= tol
}

/// Consimilarity test: `p` is consimilar to `q` iff `jp` is similar to `jq`.
#[inline]
pub fn is_consimilar(p: Quaternion, q: Quaternion, tol: f64) -> bool {
    is_similar(Quaternion::J * p, Quaternion::J * q, tol)
}

/// Distance from `c` to the consimilarity orbit of a basal value `λ = a + b·j`.
///
/// The orbit `{α̃⁻¹λα : α ≠ 0}` is the 2-sphere of radius `a` centred at
/// `b·j` inside the hyperplane of j-component `b`; writing
/// `ρ = √(c0² + c1² + c3²)` the distance is `√((c2 − b)² + (ρ − a)²)`.
/// For `a = 0` the sphere degenerates to the single point `b·j` and the
/// formula still applies.
#[inline]
pub fn orbit_distance(lambda: BasalQuaternion, c: Quaternion) -> f64 {
    let rho = (c.a0 * c.a0 + c.a1 * c.a1 + c.a3 * c.a3).sqrt();
    let dj = c.a2 - lambda.b;
    let dr = rho - lambda.a;
    (dj * dj + dr * dr).sqrt()
}

// ---------------------------------------------------------------------------
// Basal values
// ---------------------------------------------------------------------------

/// A basal right coneigenvalue `λ = a + b·j` with `a ≥ 0`.
///
/// Every consimilarity orbit of coneigenvalues contains exactly one value of
/// this form, which makes it the canonical representative reported by the
/// spectral routines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasalQuaternion {
    /// Radius of the orbit sphere; nonnegative by construction.
    pub a: f64,
    /// Coefficient of `j`.
    pub b: f64,
}

impl BasalQuaternion {
    /// Largest negative `a` accepted (and clamped to zero) at construction.
    pub const NEG_CLAMP: f64 = 1e-9;

    /// Builds a basal value, clamping `a ∈ [−1e−9, 0)` to `0`.
    ///
    /// Panics when `a < −1e−9`: a clearly negative radius indicates a caller
    /// bug, not floating-point noise.
    #[inline]
    pub fn new(a: f64, b: f64) -> Self {
        assert!(
            a >= -Self::NEG_CLAMP,
            "basal value requires a >= 0, got a = {a}"
        );
        BasalQuaternion { a: a.max(0.0), b }
    }

    /// The value as an ordinary quaternion `a + b·j`.
    #[inline]
    pub fn to_quaternion(self) -> Quaternion {
        Quaternion::new(self.a, 0.0, self.b, 0.0)
    }

    /// Modulus `√(a² + b²)`.
    #[inline]
    pub fn modulus(self) -> f64 {
        self.a.hypot(self.b)
    }

    /// Squared modulus `a² + b²` (cheaper sort key).
    #[inline]
    pub fn modulus_sq(self) -> f64 {
        self.a * self.a + self.b * self.b
    }

    /// Euclidean distance `|λ − μ|` between two basal values.
    #[inline]
    pub fn dist(self, other: Self) -> f64 {
        (self.a - other.a).hypot(self.b - other.b)
    }

    /// Basal form of the quaternion conjugate: `a − b·j`.
    ///
    /// If `λ` is a basal coneigenvalue of `A` then this is the corresponding
    /// basal coneigenvalue of `A*`.
    #[inline]
    pub fn quat_conj(self) -> Self {
        BasalQuaternion { a: self.a, b: -self.b }
    }

    /// The standard-eigenvalue image `λ̂ = −b + a·i` under the hat map
    /// conjugating by `i + j` (the bridge between coneigenvalues of `A` and
    /// eigenvalues of `jA`).
    #[inline]
    pub fn hat(self) -> Complex64 {
        Complex64::new(-self.b, self.a)
    }

    /// Inverse of [`BasalQuaternion::hat`]: standard eigenvalue `x + y·i` of
    /// `jA` (with `y ≥ 0`) back to the basal value `y + (−x)·j`.
    #[inline]
    pub fn from_hat(mu: Complex64) -> Self {
        BasalQuaternion::new(mu.im, -mu.re)
    }
}

impl fmt::Display for BasalQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_quaternion())
    }
}

// ---------------------------------------------------------------------------
// Text form: "1-2i+0.5j-1k"
// ---------------------------------------------------------------------------

impl fmt::Display for Quaternion {
    /// Compact sum-of-terms form omitting zero components, `0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (coeff, unit) in [
            (self.a0, ""),
            (self.a1, "i"),
            (self.a2, "j"),
            (self.a3, "k"),
        ] {
            if coeff == 0.0 {
                continue;
            }
            if first {
                write!(f, "{coeff}{unit}")?;
                first = false;
            } else if coeff < 0.0 {
                write!(f, "-{}{unit}", -coeff)?;
            } else {
                write!(f, "+{coeff}{unit}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Quaternion {
    type Err = Error;

    /// Parses the compact text form: a signed sum of terms, each a decimal
    /// coefficient (optional for bare units) followed by an optional unit
    /// `i`, `j` or `k` — e.g. `1-2i+0.5j-1k`, `-j`, `2.5`, `1e-3i`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty quaternion literal".into()));
        }
        let bytes = s.as_bytes();
        let mut pos = 0usize;
        let mut q = Quaternion::ZERO;
        while pos < bytes.len() {
            let term_start = pos;
            // Optional sign (mandatory separator after the first term).
            let mut sign = 1.0;
            match bytes[pos] {
                b'+' => pos += 1,
                b'-' => {
                    sign = -1.0;
                    pos += 1;
                }
                _ if term_start > 0 => {
                    return Err(Error::Parse(format!(
                        "expected '+' or '-' before `{}` at byte {pos}",
                        &s[pos..]
                    )));
                }
                _ => {}
            }
            // Numeric part: digits, '.', and exponents ('e'/'E' with an
            // optional sign immediately after).
            let num_start = pos;
            while pos < bytes.len() {
                match bytes[pos] {
                    b'0'..=b'9' | b'.' => pos += 1,
                    b'e' | b'E'
                        if pos + 1 < bytes.len()
                            && (bytes[pos + 1].is_ascii_digit()
                                || bytes[pos + 1] == b'+'
                                || bytes[pos + 1] == b'-') =>
                    {
                        pos += 2;
                    }
                    _ => break,
                }
            }
            let coeff = if num_start == pos {
                1.0 // bare unit such as "i" or "-k"
            } else {
                let text = &s[num_start..pos];
                text.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("invalid number `{text}`")))?
            };
            // Optional unit.
            let slot = if pos < bytes.len() {
                match bytes[pos] {
                    b'i' => {
                        pos += 1;
                        1
                    }
                    b'j' => {
                        pos += 1;
                        2
                    }
                    b'k' => {
                        pos += 1;
                        3
                    }
                    _ if num_start == pos => {
                        return Err(Error::Parse(format!(
                            "unexpected token `{}` at byte {pos}",
                            &s[pos..=pos]
                        )));
                    }
                    _ => 0,
                }
            } else {
                if num_start == pos {
                    return Err(Error::Parse("dangling sign in quaternion literal".into()));
                }
                0
            };
            let signed = sign * coeff;
            match slot {
                0 => q.a0 += signed,
                1 => q.a1 += signed,
                2 => q.a2 += signed,
                _ => q.a3 += signed,
            }
        }
        Ok(q)
    }
}

// ---------------------------------------------------------------------------
// Serde: 4-array on output, 4-array or string on input
// ---------------------------------------------------------------------------

impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeTuple;
        let mut t = serializer.serialize_tuple(4)?;
        t.serialize_element(&self.a0)?;
        t.serialize_element(&self.a1)?;
        t.serialize_element(&self.a2)?;
        t.serialize_element(&self.a3)?;
        t.end()
    }
}

struct QuaternionVisitor;

impl<'de> Visitor<'de> for QuaternionVisitor {
    type Value = Quaternion;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a 4-element array [a0,a1,a2,a3] or a string like \"1-2i+0.5j-1k\"")
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Quaternion, A::Error> {
        let mut c = [0.0f64; 4];
        for (idx, slot) in c.iter_mut().enumerate() {
            *slot = seq
                .next_element::<f64>()?
                .ok_or_else(|| de::Error::invalid_length(idx, &self))?;
        }
        if seq.next_element::<f64>()?.is_some() {
            return Err(de::Error::invalid_length(5, &self));
        }
        Ok(Quaternion::new(c[0], c[1], c[2], c[3]))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Quaternion, E> {
        v.parse::<Quaternion>().map_err(|e| E::custom(e.to_string()))
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        deserializer.deserialize_any(QuaternionVisitor)
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
