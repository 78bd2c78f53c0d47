//! Seeded random instance generation shared by searches and property suites.
//!
//! Every instance `k` of a run with seed `s` draws from its own ChaCha stream
//! `(s, k)`, so results never depend on evaluation order or thread count.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::linalg::ComplexMatrix;

/// Generator for instance `index` of a run seeded with `seed`.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryDistribution {
    RealGaussian,
    ComplexGaussian,
    /// Uniform integers in `-3..=3`.
    IntegerSmall,
}

impl std::str::FromStr for EntryDistribution {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "real-gaussian" => Ok(Self::RealGaussian),
            "complex-gaussian" => Ok(Self::ComplexGaussian),
            "integer-small" => Ok(Self::IntegerSmall),
            other => Err(format!(
                "unknown distribution {other:?} (expected real-gaussian, complex-gaussian or integer-small)"
            )),
        }
    }
}

pub fn sample_entry<R: Rng + ?Sized>(rng: &mut R, dist: EntryDistribution) -> Complex64 {
    match dist {
        EntryDistribution::RealGaussian => Complex64::new(rng.sample(StandardNormal), 0.0),
        EntryDistribution::ComplexGaussian => {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
        }
        EntryDistribution::IntegerSmall => Complex64::new(rng.random_range(-3i32..=3) as f64, 0.0),
    }
}

pub fn random_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    dist: EntryDistribution,
) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| sample_entry(rng, dist)).collect();
    ComplexMatrix::new(rows, cols, data).expect("sampled entries are finite")
}

/// `G*G` for a sampled `G`; always positive semidefinite.
pub fn random_psd<R: Rng + ?Sized>(rng: &mut R, n: usize, dist: EntryDistribution) -> ComplexMatrix {
    let g = random_matrix(rng, n, n, dist);
    g.adjoint().matmul(&g).expect("square").hermitian_part()
}

/// `(G + G*)/2` for a complex Gaussian `G`.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    random_matrix(rng, n, n, EntryDistribution::ComplexGaussian).hermitian_part()
}
