//! Dense quaternion and complex matrices, the complex adjoint, norms, and
//! structural predicates.
//!
//! [`QMatrix`] is a dense, row-major quaternion matrix; [`CMatrix`] is its
//! complex counterpart and the carrier type for everything the eigensolver
//! touches.  The bridge between the two worlds is the complex adjoint
//!
//! ```text
//! χ_A = [  A′    A″ ]      where  A = A′ + A″·j,  A′, A″ complex,
//!       [ −Ā″    Ā′ ]
//! ```
//!
//! which turns an m×n quaternion matrix into a 2m×2n complex one while
//! preserving products, conjugate transposes, invertibility, and the spectral
//! norm (`‖χ_A‖₂ = ‖A‖₂`, `‖χ_A‖_F = √2·‖A‖_F`).  Inversion and the spectral
//! norm are computed through this embedding so that one complex kernel serves
//! every numerical question asked of a quaternion matrix.
//!
//! Everything here targets desk-scale verification work (n ≤ 64 or so):
//! storage is dense, multiplication is the textbook triple loop, and all
//! operations are pure functions over immutable inputs.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ceig;
use crate::error::{Error, Result};
use crate::quat::Quaternion;

/// Default tolerance for [`QMatrix::structure_flags`].
///
/// Each structural residual is compared against `tol·(1 + ‖A‖_F²)`: relative
/// in scale for large matrices, with an additive floor so that tiny matrices
/// are not held to an impossible standard.
pub const DEFAULT_STRUCTURE_TOL: f64 = 1e-10;

/// Relative pivot floor for [`QMatrix::qm_inverse`]: elimination pivots below
/// `1e−12·‖A‖_F` are treated as exact zeros and the matrix as singular.
const INVERSE_PIVOT_REL: f64 = 1e-12;

// ---------------------------------------------------------------------------
// QMatrix
// ---------------------------------------------------------------------------

/// A dense quaternion matrix in row-major order.
///
/// Dimensions are fixed at construction and always positive.  Entries are
/// accessed with `m[(i, j)]` or [`QMatrix::get`]/[`QMatrix::set`]; indices are
/// zero-based.
///
/// Serialization uses the matrix file format: an object with `rows`, `cols`,
/// and `entries` (an array of rows, each entry either a `[a0,a1,a2,a3]`
/// 4-array or a quaternion string such as `"1-2i+0.5j"`).  Serialization
/// always emits 4-arrays.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixWire", into = "MatrixWire")]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QMatrix {
    /// Builds an all-zero matrix.
    ///
    /// # Panics
    /// Panics if either dimension is zero.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        QMatrix {
            rows,
            cols,
            data: vec![Quaternion::ZERO; rows * cols],
        }
    }

    /// Builds the n×n identity.
    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Quaternion::ONE;
        }
        m
    }

    /// Builds a matrix entry by entry from `f(i, j)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut m = QMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from a list of rows.
    ///
    /// Fails with [`Error::RaggedRows`] when the list is empty, a row is
    /// empty, or two rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<Quaternion>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 || rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::RaggedRows);
        }
        Ok(QMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from a list of columns.
    ///
    /// Same shape rules as [`QMatrix::from_rows`].
    pub fn from_columns(cols: Vec<Vec<Quaternion>>) -> Result<Self> {
        Ok(QMatrix::from_rows(cols)?.transpose())
    }

    /// Number of rows.
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Whether the matrix is square.
    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry at row `i`, column `j`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Quaternion {
        self[(i, j)]
    }

    /// Overwrites the entry at row `i`, column `j`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, q: Quaternion) {
        self[(i, j)] = q;
    }

    /// Copy of row `i`.
    pub fn row(&self, i: usize) -> Vec<Quaternion> {
        (0..self.cols).map(|j| self[(i, j)]).collect()
    }

    /// Copy of column `j`.
    pub fn column(&self, j: usize) -> Vec<Quaternion> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Applies `f` to every entry.
    pub fn map(&self, mut f: impl FnMut(Quaternion) -> Quaternion) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&q| f(q)).collect(),
        }
    }

    /// Transpose `Aᵀ = (q_ji)` — no conjugation.
    pub fn transpose(&self) -> Self {
        QMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Entrywise quaternion conjugate `Ā = (q̄_ij)`.
    pub fn conj(&self) -> Self {
        self.map(Quaternion::conj)
    }

    /// Conjugate transpose `A* = (q̄_ji)`.
    pub fn conj_transpose(&self) -> Self {
        QMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Entrywise j-conjugate `Ã = −jAj = (q̃_ij)`.
    ///
    /// For complex matrices this is the entrywise complex conjugate.  Unlike
    /// the conjugate transpose, the j-conjugate is multiplicative without
    /// reversal: `(AB)~ = Ã·B̃`.
    pub fn jconj(&self) -> Self {
        self.map(Quaternion::jconj)
    }

    /// Left scalar multiple `q·A`.
    pub fn scale_left(&self, q: Quaternion) -> Self {
        self.map(|e| q * e)
    }

    /// Right scalar multiple `A·q`.
    pub fn scale_right(&self, q: Quaternion) -> Self {
        self.map(|e| e * q)
    }

    /// Sum, failing with [`Error::ShapeMismatch`] on incompatible dimensions.
    pub fn checked_add(&self, other: &QMatrix) -> Result<QMatrix> {
        self.shape_check("add", other, other.rows, other.cols)?;
        Ok(self + other)
    }

    /// Difference, failing with [`Error::ShapeMismatch`] on incompatible
    /// dimensions.
    pub fn checked_sub(&self, other: &QMatrix) -> Result<QMatrix> {
        self.shape_check("sub", other, other.rows, other.cols)?;
        Ok(self - other)
    }

    /// Product, failing with [`Error::ShapeMismatch`] when the inner
    /// dimensions disagree.
    pub fn checked_mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                op: "mul",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(self * other)
    }

    fn shape_check(
        &self,
        op: &'static str,
        other: &QMatrix,
        want_rows: usize,
        want_cols: usize,
    ) -> Result<()> {
        if self.rows != want_rows || self.cols != want_cols {
            return Err(Error::ShapeMismatch {
                op,
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(())
    }

    /// Matrix–vector product `A·v`.
    ///
    /// # Panics
    /// Panics when `v.len() != self.cols()`.
    pub fn mul_vec(&self, v: &[Quaternion]) -> Vec<Quaternion> {
        assert_eq!(v.len(), self.cols, "vector length must match matrix columns");
        (0..self.rows)
            .map(|i| {
                let mut acc = Quaternion::ZERO;
                for j in 0..self.cols {
                    acc += self[(i, j)] * v[j];
                }
                acc
            })
            .collect()
    }

    /// Frobenius norm `‖A‖_F = (Σ|q_ij|²)^{1/2}`.
    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|q| q.abs_sq()).sum::<f64>().sqrt()
    }

    /// Spectral norm `‖A‖₂`, the largest singular value.
    ///
    /// Computed as the square root of the largest eigenvalue of `χ* χ` where
    /// `χ` is the complex adjoint; `‖χ_A‖₂ = ‖A‖₂` makes the two views agree.
    /// Returns `NaN` when the matrix contains non-finite entries.
    pub fn spec_norm(&self) -> f64 {
        if self.data.iter().any(|q| !q.is_finite()) {
            return f64::NAN;
        }
        let chi = self.complex_adjoint();
        let gram = &chi.conj_transpose() * &chi;
        match ceig::hermitian_eigs(&gram) {
            Ok(eigs) => eigs.last().copied().unwrap_or(0.0).max(0.0).sqrt(),
            Err(_) => f64::NAN,
        }
    }

    /// Splits `A = A′ + A″·j` into its two complex parts.
    pub fn complex_split(&self) -> (CMatrix, CMatrix) {
        let mut ap = CMatrix::zeros(self.rows, self.cols);
        let mut app = CMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let (c1, c2) = self[(i, j)].complex_split();
                ap[(i, j)] = c1;
                app[(i, j)] = c2;
            }
        }
        (ap, app)
    }

    /// Rebuilds a quaternion matrix from its complex split `A = A′ + A″·j`.
    ///
    /// Fails with [`Error::ShapeMismatch`] when the parts disagree in shape.
    pub fn from_complex_pair(ap: &CMatrix, app: &CMatrix) -> Result<QMatrix> {
        if ap.rows != app.rows || ap.cols != app.cols {
            return Err(Error::ShapeMismatch {
                op: "from_complex_pair",
                left_rows: ap.rows,
                left_cols: ap.cols,
                right_rows: app.rows,
                right_cols: app.cols,
            });
        }
        Ok(QMatrix::from_fn(ap.rows, ap.cols, |i, j| {
            Quaternion::from_complex_pair(ap[(i, j)], app[(i, j)])
        }))
    }

    /// Complex adjoint `χ_A = [[A′, A″], [−Ā″, Ā′]]` of size 2m×2n.
    ///
    /// The embedding is a homomorphism: `χ_{AB} = χ_A·χ_B`,
    /// `χ_{A*} = (χ_A)*`, and `χ_A` is invertible exactly when `A` is.
    pub fn complex_adjoint(&self) -> CMatrix {
        let (ap, app) = self.complex_split();
        let mut chi = CMatrix::zeros(2 * self.rows, 2 * self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                chi[(i, j)] = ap[(i, j)];
                chi[(i, self.cols + j)] = app[(i, j)];
                chi[(self.rows + i, j)] = -app[(i, j)].conj();
                chi[(self.rows + i, self.cols + j)] = ap[(i, j)].conj();
            }
        }
        chi
    }

    /// Matrix inverse through the complex adjoint.
    ///
    /// Factors `χ_A` by partially pivoted elimination, solves for `χ_A⁻¹`,
    /// and maps the block result back to quaternions (symmetrizing the two
    /// redundant blocks of the embedding).  Fails with [`Error::NotSquare`]
    /// for rectangular input and [`Error::Singular`] when a pivot falls below
    /// `1e−12·‖A‖_F`.
    pub fn qm_inverse(&self) -> Result<QMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let chi = self.complex_adjoint();
        let lu = ceig::CLu::factor(&chi, INVERSE_PIVOT_REL * self.fro_norm())?;
        let mut inv = CMatrix::zeros(2 * n, 2 * n);
        let mut e = vec![Complex64::new(0.0, 0.0); 2 * n];
        for col in 0..2 * n {
            e[col] = Complex64::new(1.0, 0.0);
            let x = lu.solve(&e);
            e[col] = Complex64::new(0.0, 0.0);
            for (row, &value) in x.iter().enumerate() {
                inv[(row, col)] = value;
            }
        }
        // χ_{A⁻¹} has the block structure [[B₁, B₂], [−B̄₂, B̄₁]]; averaging the
        // two copies of each block cancels the elimination's rounding skew.
        let inv_ap = CMatrix::from_fn(n, n, |i, j| {
            (inv[(i, j)] + inv[(n + i, n + j)].conj()) * 0.5
        });
        let inv_app = CMatrix::from_fn(n, n, |i, j| {
            (inv[(i, n + j)] - inv[(n + i, j)].conj()) * 0.5
        });
        QMatrix::from_complex_pair(&inv_ap, &inv_app)
    }

    /// Evaluates the five structural predicates at tolerance `tol`.
    ///
    /// Each flag is set when the defining residual has Frobenius norm at most
    /// `tol·(1 + ‖A‖_F²)`; see [`DEFAULT_STRUCTURE_TOL`].  Fails with
    /// [`Error::NotSquare`] for rectangular input.
    pub fn structure_flags(&self, tol: f64) -> Result<StructureFlags> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let fro = self.fro_norm();
        let bound = tol * (1.0 + fro * fro);
        let a_star = self.conj_transpose();
        let left_gram = &a_star * self; // A*A
        let right_gram = self * &a_star; // AA*
        Ok(StructureFlags {
            normal: (&left_gram - &right_gram).fro_norm() <= bound,
            conjugate_normal: (&right_gram.jconj() - &left_gram).fro_norm() <= bound,
            hermitian: (self - &a_star).fro_norm() <= bound,
            skew_symmetric: (self + &self.transpose()).fro_norm() <= bound,
            unitary: (&left_gram - &QMatrix::identity(self.rows)).fro_norm() <= bound,
        })
    }
}

/// Result of [`QMatrix::structure_flags`]: one bit per structural class.
///
/// * `normal`: `A*A = AA*`
/// * `conjugate_normal`: `(AA*)~ = A*A`
/// * `hermitian`: `A = A*`
/// * `skew_symmetric`: `A = −Aᵀ` (transpose without conjugation)
/// * `unitary`: `A*A = I`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFlags {
    pub normal: bool,
    pub conjugate_normal: bool,
    pub hermitian: bool,
    pub skew_symmetric: bool,
    pub unitary: bool,
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;

    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "shape mismatch in matrix addition"
        );
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;

    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "shape mismatch in matrix subtraction"
        );
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;

    fn neg(self) -> QMatrix {
        self.map(|q| -q)
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;

    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert!(
            self.cols == rhs.rows,
            "inner dimension mismatch in matrix multiplication"
        );
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += aik * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[ ")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Wire format
// ---------------------------------------------------------------------------

/// On-disk shape of a matrix: explicit dimensions plus a row-of-rows entry
/// list.  Kept separate from [`QMatrix`] so deserialization can validate the
/// declared dimensions against the data before a matrix exists.
#[derive(Serialize, Deserialize)]
struct MatrixWire {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Quaternion>>,
}

impl TryFrom<MatrixWire> for QMatrix {
    type Error = Error;

    fn try_from(wire: MatrixWire) -> Result<QMatrix> {
        if wire.rows == 0 || wire.cols == 0 {
            return Err(Error::Parse(
                "matrix dimensions must be positive".to_string(),
            ));
        }
        if wire.entries.len() != wire.rows {
            return Err(Error::Parse(format!(
                "matrix declares {} rows but has {} entry rows",
                wire.rows,
                wire.entries.len()
            )));
        }
        for (i, row) in wire.entries.iter().enumerate() {
            if row.len() != wire.cols {
                return Err(Error::Parse(format!(
                    "matrix declares {} columns but row {} has {} entries",
                    wire.cols,
                    i,
                    row.len()
                )));
            }
        }
        Ok(QMatrix {
            rows: wire.rows,
            cols: wire.cols,
            data: wire.entries.into_iter().flatten().collect(),
        })
    }
}

impl From<QMatrix> for MatrixWire {
    fn from(m: QMatrix) -> MatrixWire {
        let entries = m
            .data
            .chunks(m.cols)
            .map(|row| row.to_vec())
            .collect::<Vec<_>>();
        MatrixWire {
            rows: m.rows,
            cols: m.cols,
            entries,
        }
    }
}

// ---------------------------------------------------------------------------
// CMatrix
// ---------------------------------------------------------------------------

/// A dense complex matrix in row-major order.
///
/// This is the working type of the eigensolver and of every computation that
/// routes through the complex adjoint.  The surface mirrors [`QMatrix`] where
/// the quaternion side needs it.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    /// Builds an all-zero matrix.
    ///
    /// # Panics
    /// Panics if either dimension is zero.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Builds the n×n identity.
    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix entry by entry from `f(i, j)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = CMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Number of rows.
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Whether the matrix is square.
    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Conjugate transpose `M*`.
    pub fn conj_transpose(&self) -> Self {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Frobenius norm.
    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Entrywise scalar multiple `s·M`.
    pub fn scale(&self, s: Complex64) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&c| s * c).collect(),
        }
    }

    /// Matrix–vector product `M·v`.
    ///
    /// # Panics
    /// Panics when `v.len() != self.cols()`.
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols, "vector length must match matrix columns");
        (0..self.rows)
            .map(|i| {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..self.cols {
                    acc += self[(i, j)] * v[j];
                }
                acc
            })
            .collect()
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "shape mismatch in matrix addition"
        );
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "shape mismatch in matrix subtraction"
        );
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert!(
            self.cols == rhs.rows,
            "inner dimension mismatch in matrix multiplication"
        );
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = aik * rhs[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        out
    }
}

/// Euclidean norm of a quaternion vector.
pub fn vec_norm(v: &[Quaternion]) -> f64 {
    v.iter().map(|q| q.abs_sq()).sum::<f64>().sqrt()
}

/// Euclidean norm of a complex vector.
pub fn cvec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}
