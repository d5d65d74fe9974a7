//! Numerical tolerances shared by validation, channels and measures.

/// Max elementwise |ρ - ρ†| accepted for a density matrix.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Max |tr ρ - 1| accepted for a density matrix.
pub const TRACE_TOL: f64 = 1e-12;

/// Smallest eigenvalue accepted for a density matrix. Channels introduce
/// roundoff at the 1e-16 level; anything below this is a logic error.
pub const PSD_TOL: f64 = -1e-10;

/// Pre-symmetrization anti-Hermitian residue above which a partial trace
/// is treated as broken rather than merely rounded.
pub const SYMMETRIZE_ABORT: f64 = 1e-9;

/// Imaginary residue tolerated on quantities that are real in exact arithmetic.
pub const IMAG_RESIDUE_TOL: f64 = 1e-12;

/// Slack allowed on [0, 1]-valued measures before they are clamped.
pub const UNIT_INTERVAL_SLACK: f64 = 1e-12;
