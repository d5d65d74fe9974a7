//! Seeded samplers for random states, unitaries and accelerations.
//!
//! Used by the discrepancy report and by tests; ChaCha keeps streams stable
//! across platforms and crate versions.

use std::f64::consts::FRAC_PI_4;

use nalgebra::Vector3;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::channel::AccelerationPair;
use crate::linalg::CMatrix;
use crate::states::{BlochForm, DensityMatrix};

pub struct StateSampler {
    rng: ChaCha8Rng,
}

impl StateSampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..=hi)
    }

    fn gaussian(&mut self) -> Complex64 {
        Complex64::new(self.rng.sample(StandardNormal), self.rng.sample(StandardNormal))
    }

    fn ginibre(&mut self, rows: usize, cols: usize) -> CMatrix {
        CMatrix::from_fn(rows, cols, |_, _| self.gaussian())
    }

    /// Random `dim`-state of random rank (1 to `dim`).
    pub fn state_of_dim(&mut self, dim: usize) -> DensityMatrix {
        let rank = self.rng.gen_range(1..=dim);
        let g = self.ginibre(dim, rank);
        let m = &g * g.adjoint();
        let tr = m.trace().re;
        DensityMatrix::from_matrix(m.unscale(tr)).expect("finite by construction")
    }

    /// Random two-qubit state of random rank.
    pub fn mixed_state(&mut self) -> DensityMatrix {
        self.state_of_dim(4)
    }

    pub fn pure_state(&mut self) -> DensityMatrix {
        let psi: Vec<Complex64> = (0..4).map(|_| self.gaussian()).collect();
        DensityMatrix::from_pure(&psi).expect("non-zero with probability one")
    }

    /// ρ_A ⊗ ρ_B with random single-qubit factors.
    pub fn product_state(&mut self) -> DensityMatrix {
        let a = self.state_of_dim(2);
        let b = self.state_of_dim(2);
        DensityMatrix::from_matrix(a.matrix().kronecker(b.matrix())).expect("finite")
    }

    /// Bloch parameters uniform in the cube [-1, 1]^15; usually not a state.
    pub fn bloch_box(&mut self) -> BlochForm {
        let mut next = || self.rng.gen_range(-1.0..=1.0);
        let s = Vector3::new(next(), next(), next());
        let t = Vector3::new(next(), next(), next());
        let c = nalgebra::Matrix3::from_fn(|_, _| next());
        BlochForm::new(s, t, c)
    }

    /// Valid self-transposed state: diagonal dyadic inside the tetrahedron
    /// of positive X states, by rejection from the cube.
    pub fn self_transposed(&mut self) -> BlochForm {
        loop {
            let c = [
                self.rng.gen_range(-1.0..=1.0),
                self.rng.gen_range(-1.0..=1.0),
                self.rng.gen_range(-1.0..=1.0),
            ];
            let [x, y, z] = c;
            let ok = [1.0 + x - y + z, 1.0 - x + y + z, 1.0 + x + y - z, 1.0 - x - y - z]
                .iter()
                .all(|&v| v >= 0.0);
            if ok {
                return BlochForm::diagonal(x, y, z);
            }
        }
    }

    /// Haar-random 2×2 unitary.
    pub fn unitary2(&mut self) -> CMatrix {
        let g = self.ginibre(2, 2);
        let qr = g.qr();
        let (q, r) = (qr.q(), qr.r());
        // fix column phases so the distribution is Haar
        let mut u = q.clone();
        for k in 0..2 {
            let d = r[(k, k)];
            let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
            for i in 0..2 {
                u[(i, k)] = q[(i, k)] * phase;
            }
        }
        u
    }

    pub fn acceleration_pair(&mut self) -> AccelerationPair {
        let ra = self.rng.gen_range(0.0..=FRAC_PI_4);
        let rb = self.rng.gen_range(0.0..=FRAC_PI_4);
        AccelerationPair::new(ra, rb).expect("in range by construction")
    }
}
