//! Entanglement, fidelity and teleportation-usefulness measures for
//! two-qubit states.

use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix3;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, ZERO};
use crate::states::{density_to_bloch, require_valid, BlochForm, DensityMatrix};
use crate::tolerances::{IMAG_RESIDUE_TOL, UNIT_INTERVAL_SLACK};

/// Tolerance used to decide whether a state belongs to the self-transposed class.
pub const SELF_TRANSPOSED_TOL: f64 = 1e-12;

/// σy ⊗ σy, which is real.
fn spin_flip() -> CMatrix {
    let one = Complex64::new(1.0, 0.0);
    let mut y = CMatrix::zeros(4, 4);
    y[(0, 3)] = -one;
    y[(1, 2)] = one;
    y[(2, 1)] = one;
    y[(3, 0)] = -one;
    y
}

fn clamp_unit(value: f64, what: &str) -> Result<f64> {
    if !value.is_finite() || value < -UNIT_INTERVAL_SLACK || value > 1.0 + UNIT_INTERVAL_SLACK {
        return Err(Error::NumericInvariant(format!("{what} = {value} outside [0, 1]")));
    }
    Ok(value.clamp(0.0, 1.0))
}

/// Wootters concurrence max{0, λ1 − λ2 − λ3 − λ4}, with λ the decreasing
/// square roots of the eigenvalues of ρ (σy⊗σy) ρ* (σy⊗σy).
///
/// The λ are obtained as singular values of T = Wᵀ (σy⊗σy) W where ρ = W W†,
/// which avoids taking square roots of roundoff-sized eigenvalues.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    require_valid(rho, 4)?;
    let (values, vectors) = linalg::hermitian_eigen(rho.matrix());
    // require_valid bounds the spectrum below by the PSD tolerance
    let mut w = vectors;
    for (k, &ev) in values.iter().enumerate() {
        let scale = ev.max(0.0).sqrt();
        w.column_mut(k).scale_mut(scale);
    }
    let t = w.transpose() * spin_flip() * &w;
    let mut lambda: Vec<f64> = t.singular_values().iter().copied().collect();
    lambda.sort_by(|a, b| b.total_cmp(a));
    let raw = lambda[0] - lambda[1] - lambda[2] - lambda[3];
    clamp_unit(raw.max(0.0), "concurrence")
}

fn require_self_transposed(b: &BlochForm) -> Result<()> {
    if !b.is_self_transposed(SELF_TRANSPOSED_TOL) {
        return Err(Error::invalid(
            "state is not self-transposed (needs zero Bloch vectors and a diagonal dyadic)",
        ));
    }
    Ok(())
}

/// tr|C| for a diagonal dyadic.
fn trace_abs(c: &Matrix3<f64>) -> f64 {
    (0..3).map(|i| c[(i, i)].abs()).sum()
}

/// max{0, (tr|C| − 1)/2} for a self-transposed state.
pub fn concurrence_self_transposed(b: &BlochForm) -> Result<f64> {
    require_self_transposed(b)?;
    Ok(((trace_abs(&b.c) - 1.0) / 2.0).max(0.0))
}

/// Overlap fidelity tr(ρ_final ρ_initial). This is not Uhlmann fidelity:
/// for a mixed input it is bounded by the input purity.
pub fn overlap_fidelity(rho_final: &DensityMatrix, rho_initial: &DensityMatrix) -> Result<f64> {
    require_valid(rho_final, 4)?;
    require_valid(rho_initial, 4)?;
    let f = linalg::trace_of_product(rho_final.matrix(), rho_initial.matrix());
    if f.im.abs() > IMAG_RESIDUE_TOL {
        return Err(Error::NumericInvariant(format!("overlap has imaginary part {:.3e}", f.im)));
    }
    clamp_unit(f.re, "fidelity")
}

/// tr √(CᵀC): the sum of singular values of the correlation dyadic.
/// Values above 1 mean the state beats classical teleportation fidelity.
pub fn teleportation_criterion(rho: &DensityMatrix) -> Result<f64> {
    require_valid(rho, 4)?;
    let b = density_to_bloch(rho)?;
    Ok(b.c.singular_values().sum())
}

/// tr ρ², in [1/dim, 1] for valid states.
pub fn purity(rho: &DensityMatrix) -> f64 {
    linalg::trace_of_product(rho.matrix(), rho.matrix()).re
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Separable,
    Entangled,
    Undetermined,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Separable => "separable",
            Verdict::Entangled => "entangled",
            Verdict::Undetermined => "undetermined",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Separable iff det C ≥ 0 or tr|C| ≤ 1; entangled otherwise.
pub fn separability_self_transposed(b: &BlochForm) -> Result<Verdict> {
    require_self_transposed(b)?;
    let det = b.c[(0, 0)] * b.c[(1, 1)] * b.c[(2, 2)];
    if det >= 0.0 || trace_abs(&b.c) <= 1.0 {
        Ok(Verdict::Separable)
    } else {
        Ok(Verdict::Entangled)
    }
}

/// Below this concurrence a non-self-transposed state is reported as undetermined.
pub const CONCURRENCE_VERDICT_TOL: f64 = 1e-10;

/// Self-transposed states use the determinant/trace rule; other states fall
/// back on the sign of the concurrence.
pub fn separability_verdict(rho: &DensityMatrix) -> Result<Verdict> {
    let b = density_to_bloch(rho)?;
    if b.is_self_transposed(SELF_TRANSPOSED_TOL) {
        return separability_self_transposed(&b);
    }
    let c = concurrence(rho)?;
    Ok(if c == 0.0 {
        Verdict::Separable
    } else if c > CONCURRENCE_VERDICT_TOL {
        Verdict::Entangled
    } else {
        Verdict::Undetermined
    })
}

/// Every measure of a travelled state against its initial preparation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureReport {
    pub concurrence: f64,
    pub fidelity: f64,
    pub telp: f64,
    pub purity: f64,
    pub separable_verdict: Verdict,
}

impl MeasureReport {
    pub fn compute(rho_final: &DensityMatrix, rho_initial: &DensityMatrix) -> Result<Self> {
        Ok(Self {
            concurrence: concurrence(rho_final)?,
            fidelity: overlap_fidelity(rho_final, rho_initial)?,
            telp: teleportation_criterion(rho_final)?,
            purity: purity(rho_final),
            separable_verdict: separability_verdict(rho_final)?,
        })
    }
}

impl fmt::Display for MeasureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "concurrence: {:.12}", self.concurrence)?;
        writeln!(f, "fidelity:    {:.12}", self.fidelity)?;
        writeln!(f, "telp:        {:.12}{}", self.telp, if self.telp > 1.0 { "  (useful for teleportation)" } else { "" })?;
        writeln!(f, "purity:      {:.12}", self.purity)?;
        write!(f, "verdict:     {}", self.separable_verdict)
    }
}

/// Selectable measure columns, in canonical output order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    Concurrence,
    Fidelity,
    Telp,
    Purity,
    Separability,
}

impl Measure {
    pub const ALL: [Measure; 5] = [
        Measure::Concurrence,
        Measure::Fidelity,
        Measure::Telp,
        Measure::Purity,
        Measure::Separability,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Concurrence => "concurrence",
            Measure::Fidelity => "fidelity",
            Measure::Telp => "telp",
            Measure::Purity => "purity",
            Measure::Separability => "separability",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown measure '{s}'")))
    }
}

/// Eigenvalues of the partial transpose on Rob's qubit, ascending.
/// A negative value certifies entanglement.
pub fn partial_transpose_spectrum(rho: &DensityMatrix) -> Result<Vec<f64>> {
    rho.require_dim(4)?;
    let m = rho.matrix();
    let mut pt = CMatrix::from_element(4, 4, ZERO);
    for a in 0..2 {
        for b in 0..2 {
            for a2 in 0..2 {
                for b2 in 0..2 {
                    pt[(2 * a + b, 2 * a2 + b2)] = m[(2 * a + b2, 2 * a2 + b)];
                }
            }
        }
    }
    Ok(linalg::hermitian_eigenvalues(&pt))
}
