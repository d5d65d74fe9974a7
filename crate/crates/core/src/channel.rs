//! Unruh-mode dilation of a two-qubit state and the four region channels.
//!
//! Each observer's qubit is mapped into the pair of Rindler-wedge modes by
//! the isometry
//!
//! ```text
//! |0⟩ ↦ cos r |0_I 0_II⟩ + sin r |1_I 1_II⟩
//! |1⟩ ↦ |1_I 0_II⟩
//! ```
//!
//! The dilated 16-dimensional state is ordered A_I ⊗ A_II ⊗ R_I ⊗ R_II, so
//! its index is `8 a_I + 4 a_II + 2 r_I + r_II`. A region channel keeps one
//! wedge per observer and traces out the other two factors; the output is
//! always ordered Alice ⊗ Rob.

use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::str::FromStr;

use log::debug;
use nalgebra::SMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, ZERO};
use crate::states::DensityMatrix;
use crate::tolerances::SYMMETRIZE_ABORT;

/// Acceleration parameters (r_a, r_b) of Alice and Rob, each in [0, π/4].
/// r = π/4 is the infinite-acceleration limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccelerationPair {
    r_a: f64,
    r_b: f64,
}

impl AccelerationPair {
    pub const MAX: f64 = FRAC_PI_4;

    pub fn new(r_a: f64, r_b: f64) -> Result<Self> {
        check_r("r_a", r_a)?;
        check_r("r_b", r_b)?;
        Ok(Self { r_a, r_b })
    }

    pub fn inertial() -> Self {
        Self { r_a: 0.0, r_b: 0.0 }
    }

    pub fn r_a(&self) -> f64 {
        self.r_a
    }

    pub fn r_b(&self) -> f64 {
        self.r_b
    }

    pub fn swapped(&self) -> Self {
        Self { r_a: self.r_b, r_b: self.r_a }
    }
}

fn check_r(name: &str, r: f64) -> Result<()> {
    if !r.is_finite() || !(0.0..=FRAC_PI_4).contains(&r) {
        return Err(Error::invalid(format!("{name} = {r} outside [0, pi/4]")));
    }
    Ok(())
}

/// Rindler wedge kept for one observer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    I,
    II,
}

impl Region {
    fn label(self) -> &'static str {
        match self {
            Region::I => "I",
            Region::II => "II",
        }
    }
}

/// Which wedge each observer keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegionSelector {
    pub alice: Region,
    pub rob: Region,
}

impl RegionSelector {
    pub const fn new(alice: Region, rob: Region) -> Self {
        Self { alice, rob }
    }

    /// Alice and Rob, both in wedge I.
    pub const I_I: Self = Self::new(Region::I, Region::I);
    /// Anti-Alice and Anti-Rob.
    pub const II_II: Self = Self::new(Region::II, Region::II);
    /// Alice and Anti-Rob.
    pub const I_II: Self = Self::new(Region::I, Region::II);
    /// Anti-Alice and Rob.
    pub const II_I: Self = Self::new(Region::II, Region::I);

    pub const ALL: [Self; 4] = [Self::I_I, Self::II_II, Self::I_II, Self::II_I];

    pub fn swapped(&self) -> Self {
        Self { alice: self.rob, rob: self.alice }
    }
}

impl fmt::Display for RegionSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.alice.label(), self.rob.label())
    }
}

impl FromStr for RegionSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |part: &str| match part {
            "I" => Ok(Region::I),
            "II" => Ok(Region::II),
            other => Err(Error::invalid(format!("unknown region '{other}' (expected I or II)"))),
        };
        let (a, b) = s
            .split_once('-')
            .ok_or_else(|| Error::invalid(format!("region selector '{s}' must look like I-II")))?;
        Ok(Self { alice: parse(a)?, rob: parse(b)? })
    }
}

pub type Isometry = SMatrix<Complex64, 4, 2>;

/// 4×2 map from one qubit into its (wedge I ⊗ wedge II) modes.
pub fn unruh_isometry(r: f64) -> Result<Isometry> {
    check_r("r", r)?;
    let mut v = Isometry::zeros();
    v[(0, 0)] = Complex64::new(r.cos(), 0.0);
    v[(3, 0)] = Complex64::new(r.sin(), 0.0);
    v[(2, 1)] = Complex64::new(1.0, 0.0);
    Ok(v)
}

fn to_dynamic(v: &Isometry) -> CMatrix {
    CMatrix::from_fn(4, 2, |i, j| v[(i, j)])
}

/// (V_a ⊗ V_b) ρ (V_a ⊗ V_b)† in A_I ⊗ A_II ⊗ R_I ⊗ R_II ordering.
pub fn dilate(rho: &DensityMatrix, acc: AccelerationPair) -> Result<DensityMatrix> {
    rho.require_dim(4)?;
    let va = to_dynamic(&unruh_isometry(acc.r_a)?);
    let vb = to_dynamic(&unruh_isometry(acc.r_b)?);
    let w = linalg::kron(&va, &vb);
    DensityMatrix::from_matrix(&w * rho.matrix() * w.adjoint())
}

// Tensor slot (0..4) of each kept factor in A_I ⊗ A_II ⊗ R_I ⊗ R_II.
fn kept_slots(sel: RegionSelector) -> (usize, usize) {
    let alice = match sel.alice {
        Region::I => 0,
        Region::II => 1,
    };
    let rob = match sel.rob {
        Region::I => 2,
        Region::II => 3,
    };
    (alice, rob)
}

fn index16(bits: [usize; 4]) -> usize {
    8 * bits[0] + 4 * bits[1] + 2 * bits[2] + bits[3]
}

/// Partial trace of a dilated state onto the selected pair of wedges.
///
/// The result is replaced by its Hermitian part; an anti-Hermitian residue
/// above [`SYMMETRIZE_ABORT`] is reported as a numeric-invariant error.
pub fn project_region(dilated: &DensityMatrix, sel: RegionSelector) -> Result<DensityMatrix> {
    dilated.require_dim(16)?;
    let (ka, kr) = kept_slots(sel);
    let traced: Vec<usize> = (0..4).filter(|s| *s != ka && *s != kr).collect();
    let d = dilated.matrix();

    let mut out = CMatrix::from_element(4, 4, ZERO);
    for a in 0..2 {
        for b in 0..2 {
            for a2 in 0..2 {
                for b2 in 0..2 {
                    let mut acc = ZERO;
                    for t0 in 0..2 {
                        for t1 in 0..2 {
                            let mut ket = [0; 4];
                            let mut bra = [0; 4];
                            ket[ka] = a;
                            ket[kr] = b;
                            bra[ka] = a2;
                            bra[kr] = b2;
                            ket[traced[0]] = t0;
                            bra[traced[0]] = t0;
                            ket[traced[1]] = t1;
                            bra[traced[1]] = t1;
                            acc += d[(index16(ket), index16(bra))];
                        }
                    }
                    out[(2 * a + b, 2 * a2 + b2)] = acc;
                }
            }
        }
    }

    let residue = linalg::hermiticity_deviation(&out);
    debug!("region {sel}: pre-symmetrization hermiticity residue {residue:.3e}");
    if residue > SYMMETRIZE_ABORT {
        return Err(Error::NumericInvariant(format!(
            "partial trace onto {sel} left hermiticity residue {residue:.3e}"
        )));
    }
    DensityMatrix::from_matrix(linalg::hermitian_part(&out))
}

/// Region channel: dilation followed by the partial trace for `sel`.
pub fn channel(rho: &DensityMatrix, acc: AccelerationPair, sel: RegionSelector) -> Result<DensityMatrix> {
    project_region(&dilate(rho, acc)?, sel)
}

/// All four region channels from a single dilation, in [`RegionSelector::ALL`] order.
pub fn all_regions(rho: &DensityMatrix, acc: AccelerationPair) -> Result<[DensityMatrix; 4]> {
    let dilated = dilate(rho, acc)?;
    Ok([
        project_region(&dilated, RegionSelector::ALL[0])?,
        project_region(&dilated, RegionSelector::ALL[1])?,
        project_region(&dilated, RegionSelector::ALL[2])?,
        project_region(&dilated, RegionSelector::ALL[3])?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use crate::random::StateSampler;
    use crate::states::{density_to_bloch, make_state, validate_density, StateFamily};

    #[test]
    fn isometry_limits() {
        let v = unruh_isometry(0.0).unwrap();
        assert_eq!(v[(0, 0)].re, 1.0);
        assert_eq!(v[(3, 0)].re, 0.0);
        assert_eq!(v[(2, 1)].re, 1.0);

        let v = unruh_isometry(FRAC_PI_4).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((v[(0, 0)].re - h).abs() < 1e-15);
        assert!((v[(3, 0)].re - h).abs() < 1e-15);
    }

    #[test]
    fn isometry_is_isometric() {
        let mut sampler = StateSampler::new(5);
        for _ in 0..100 {
            let r = sampler.uniform(0.0, FRAC_PI_4);
            let v = unruh_isometry(r).unwrap();
            let g = v.adjoint() * v;
            let id = nalgebra::Matrix2::<Complex64>::identity();
            assert!((g - id).map(|z| z.norm()).max() <= 1e-15);
        }
    }

    #[test]
    fn out_of_range_r_rejected() {
        assert!(unruh_isometry(-0.01).is_err());
        assert!(unruh_isometry(0.8).is_err());
        assert!(AccelerationPair::new(0.1, f64::NAN).is_err());
    }

    #[test]
    fn region_selector_round_trips_through_text() {
        for sel in RegionSelector::ALL {
            assert_eq!(sel.to_string().parse::<RegionSelector>().unwrap(), sel);
        }
        assert!("I-III".parse::<RegionSelector>().is_err());
        assert!("I".parse::<RegionSelector>().is_err());
    }

    #[test]
    fn dilation_at_rest_embeds_with_vacuum_partners() {
        let mut sampler = StateSampler::new(8);
        let rho = sampler.mixed_state();
        let d = dilate(&rho, AccelerationPair::inertial()).unwrap();
        for i in 0..16 {
            for j in 0..16 {
                let (ai, aii, ri, rii) = (i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1);
                let (aj, ajj, rj, rjj) = (j >> 3 & 1, j >> 2 & 1, j >> 1 & 1, j & 1);
                let expected = if aii == 0 && rii == 0 && ajj == 0 && rjj == 0 {
                    rho.entry(2 * ai + ri, 2 * aj + rj)
                } else {
                    ZERO
                };
                assert!((d.entry(i, j) - expected).norm() < 1e-16);
            }
        }
    }

    #[test]
    fn dilation_preserves_trace() {
        let mut sampler = StateSampler::new(9);
        for _ in 0..1000 {
            let rho = sampler.mixed_state();
            let acc = sampler.acceleration_pair();
            let d = dilate(&rho, acc).unwrap();
            assert!((d.trace() - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn dilated_singlet_at_infinite_acceleration() {
        let singlet = make_state(&StateFamily::singlet()).unwrap();
        let acc = AccelerationPair::new(FRAC_PI_4, FRAC_PI_4).unwrap();
        let d = dilate(&singlet, acc).unwrap();
        assert!(validate_density(&d).passed());
        let b = density_to_bloch(&project_region(&d, RegionSelector::I_I).unwrap()).unwrap();
        // cos r1 cos r2 = 1/2
        assert!((b.c[(0, 0)] + 0.5).abs() < 1e-15);
        assert!((b.c[(1, 1)] + 0.5).abs() < 1e-15);
    }

    #[test]
    fn identity_channel_at_rest() {
        let mut sampler = StateSampler::new(10);
        for _ in 0..100 {
            let rho = sampler.mixed_state();
            let out = channel(&rho, AccelerationPair::inertial(), RegionSelector::I_I).unwrap();
            assert!(max_abs_diff(out.matrix(), rho.matrix()) <= 1e-14);
        }
    }

    #[test]
    fn anti_observers_at_rest_see_vacuum() {
        let mut sampler = StateSampler::new(12);
        let mut vacuum = CMatrix::zeros(4, 4);
        vacuum[(0, 0)] = Complex64::new(1.0, 0.0);
        for _ in 0..50 {
            let rho = sampler.mixed_state();
            let out = channel(&rho, AccelerationPair::inertial(), RegionSelector::II_II).unwrap();
            assert!(max_abs_diff(out.matrix(), &vacuum) < 1e-15);
        }
    }

    #[test]
    fn singlet_region_one_coefficients() {
        let singlet = make_state(&StateFamily::singlet()).unwrap();
        let mut sampler = StateSampler::new(13);
        for _ in 0..50 {
            let acc = sampler.acceleration_pair();
            let (r1, r2) = (acc.r_a(), acc.r_b());
            let b = density_to_bloch(&channel(&singlet, acc, RegionSelector::I_I).unwrap()).unwrap();
            assert!((b.c[(0, 0)] + r1.cos() * r2.cos()).abs() < 1e-12);
            assert!((b.c[(1, 1)] + r1.cos() * r2.cos()).abs() < 1e-12);
            // hand-derived from the diagonal (0, cos²r1/2, cos²r2/2, (sin²r1+sin²r2)/2)
            assert!((b.c[(2, 2)] + ((2.0 * r1).cos() + (2.0 * r2).cos()) / 2.0).abs() < 1e-12);
            assert!((b.s.z - ((2.0 * r1).cos() - 1.0) / 2.0).abs() < 1e-12);
            assert!((b.t.z - ((2.0 * r2).cos() - 1.0) / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn family_coefficients_scale_with_cosines_and_sines() {
        let mut sampler = StateSampler::new(14);
        let x = 0.6;
        let werner = make_state(&StateFamily::Werner { x }).unwrap();
        let (cxx, cyy, czz) = (0.7, 0.5, -0.3);
        let gw = make_state(&StateFamily::GeneralizedWerner { cxx, cyy, czz }).unwrap();
        for _ in 0..50 {
            let acc = sampler.acceleration_pair();
            let (c1, c2) = (acc.r_a().cos(), acc.r_b().cos());
            let (s1, s2) = (acc.r_a().sin(), acc.r_b().sin());
            let b = density_to_bloch(&channel(&werner, acc, RegionSelector::I_I).unwrap()).unwrap();
            assert!((b.c[(0, 0)] - x * c1 * c2).abs() < 1e-12);
            let b = density_to_bloch(&channel(&gw, acc, RegionSelector::II_II).unwrap()).unwrap();
            assert!((b.c[(0, 0)] - cxx * s1 * s2).abs() < 1e-12);
            assert!((b.c[(1, 1)] - cyy * s1 * s2).abs() < 1e-12);
            assert!((b.s.z - (1.0 + (2.0 * acc.r_a()).cos()) / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn one_stationary_observer() {
        // With Rob at rest, region I-I only depends on Alice's parameter, and
        // region II-II traces Rob's vacuum partner out as |0⟩.
        let mut sampler = StateSampler::new(15);
        for _ in 0..20 {
            let rho = sampler.mixed_state();
            let ra = sampler.uniform(0.0, FRAC_PI_4);
            let acc = AccelerationPair::new(ra, 0.0).unwrap();
            let out = channel(&rho, acc, RegionSelector::I_I).unwrap();
            let (c, s) = (ra.cos(), ra.sin());
            // Alice-only Unruh map: |0⟩⟨0| ↦ c²|0⟩⟨0| + s²|1⟩⟨1|, |0⟩⟨1| ↦ c|0⟩⟨1|, |1⟩⟨1| fixed
            for rob in 0..2 {
                for rob2 in 0..2 {
                    let r00 = rho.entry(rob, rob2);
                    let r01 = rho.entry(rob, 2 + rob2);
                    let r11 = rho.entry(2 + rob, 2 + rob2);
                    assert!((out.entry(rob, rob2) - r00 * (c * c)).norm() < 1e-14);
                    assert!((out.entry(rob, 2 + rob2) - r01 * c).norm() < 1e-14);
                    assert!((out.entry(2 + rob, 2 + rob2) - (r11 + r00 * (s * s))).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn dimension_errors() {
        let rho = DensityMatrix::maximally_mixed(4);
        assert!(matches!(
            project_region(&rho, RegionSelector::I_I),
            Err(Error::DimensionMismatch { expected: 16, found: 4 })
        ));
        let big = DensityMatrix::maximally_mixed(16);
        assert!(matches!(
            dilate(&big, AccelerationPair::inertial()),
            Err(Error::DimensionMismatch { expected: 4, found: 16 })
        ));
    }

    #[test]
    fn broken_hermiticity_aborts_projection() {
        let mut m = CMatrix::identity(16, 16).scale(1.0 / 16.0);
        // index 2 differs from 0 only in the kept R_I slot
        m[(0, 2)] = Complex64::new(1e-6, 0.0);
        let bad = DensityMatrix::from_matrix(m).unwrap();
        assert!(matches!(project_region(&bad, RegionSelector::I_I), Err(Error::NumericInvariant(_))));
    }
}
