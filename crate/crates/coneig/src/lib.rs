//! Coneigenvalues of quaternion matrices: computation, localization, and
//! perturbation bounds.
//!
//! Quaternion matrices carry two distinct spectral theories.  Under
//! *similarity* (`S⁻¹AS`) one gets the standard eigenvalues — complex numbers
//! with nonnegative imaginary part.  Under *consimilarity* (`S̃⁻¹AS`, with
//! `S̃ = −jSj`) one gets coneigenvalues, whose natural representatives are
//! the *basal* values `λ = a + b·j` with `a ≥ 0`.  This crate computes both,
//! localizes basal coneigenvalues with Geršgorin-type balls, and verifies
//! Hoffman–Wielandt, Bauer–Fike, and spectral-variation perturbation bounds
//! on concrete matrices.
//!
//! Everything reduces to one dense complex eigensolver ([`ceig`]) through the
//! complex adjoint embedding `χ_A`; the bridge from coneigenvalues to
//! ordinary spectra is the observation that `λ = a + b·j` is a basal
//! coneigenvalue of `A` exactly when `−b + a·i` is a standard eigenvalue of
//! `j·A`.
//!
//! # Layout
//!
//! * [`quat`] — scalar quaternions, conjugations, consimilarity orbits.
//! * [`qmat`] — dense quaternion/complex matrices, norms, the complex
//!   adjoint, structure predicates.
//! * [`ceig`] — the from-scratch complex eigensolver (Hessenberg + shifted
//!   QR, Jacobi for Hermitian, inverse iteration).
//! * [`spectra`] — standard eigenvalues, basal coneigenvalues,
//!   coneigenvectors, condiagonalization.
//! * [`localization`] — Geršgorin-type coneigenvalue balls and component
//!   counting.
//! * [`perturbation`] — Hoffman–Wielandt-type and Bauer–Fike-type bounds
//!   with optimal matchings.
//! * [`variation`] — spectral variation and Hausdorff distances between
//!   spectra.
//! * [`genmat`] — seeded generators for structured random test matrices.

pub mod ceig;
pub mod error;
pub mod genmat;
pub mod localization;
pub mod perturbation;
pub mod qmat;
pub mod quat;
mod rng;
pub mod spectra;
pub mod variation;

pub use error::{Error, Result};
pub use genmat::{random_structured, split_seed, GeneratedMatrix, MatrixKind, Planted};
pub use localization::{
    connected_components, default_membership_tol, gersgorin_balls, verify_component_counts,
    verify_left_pair, verify_right_gersgorin, BallKind, ComponentReport, GersgorinBall,
    LeftPairReport, LocalizationReport,
};
pub use perturbation::{
    bound_holds, check_normal_counterexample, optimal_matching, verify_bauer_fike,
    verify_generalized_hw, verify_hw, HwVariant, MatchResult, NearestMatch, VerificationReport,
    Witness,
};
pub use qmat::{CMatrix, QMatrix, StructureFlags, DEFAULT_STRUCTURE_TOL};
pub use quat::{is_consimilar, is_similar, orbit_distance, BasalQuaternion, Quaternion};
pub use spectra::{
    basal_coneigenvalues, condiagonalize, right_coneigenvector, standard_eigenvalues,
    BasalSpectrum, Condiagonalization, StandardSpectrum,
};
pub use variation::{
    con_hausdorff, con_spectral_variation, elsner_bound, hausdorff, spectral_variation,
    verify_variation_bounds, VariationReport,
};
