#![allow(dead_code)]

use photonchip::matrix::CMatrix;
use photonchip::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex_matrix(rng: &mut impl Rng, n: usize) -> CMatrix<f64> {
    CMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Haar-ish unitary: modified Gram-Schmidt on the columns of a Gaussian matrix.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> CMatrix<f64> {
    let g = random_complex_matrix(rng, n);
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|c| (0..n).map(|r| g[(r, c)]).collect()).collect();
    for j in 0..n {
        for k in 0..j {
            let proj: Complex64 = (0..n).map(|r| cols[k][r].conj() * cols[j][r]).sum();
            for r in 0..n {
                let v = cols[k][r];
                cols[j][r] -= proj * v;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut cols[j] {
            *z /= norm;
        }
    }
    CMatrix::from_fn(n, n, |r, c| cols[c][r])
}

/// Two-photon amplitude `⟨o1 o2| U |i1 i2⟩` written out by hand (distinct
/// or coincident modes), independent of the permanent code path.
pub fn two_photon_amplitude(u: &CMatrix<f64>, inputs: (usize, usize), outputs: (usize, usize)) -> Complex64 {
    let (i1, i2) = inputs;
    let (o1, o2) = outputs;
    let raw = u[(o1, i1)] * u[(o2, i2)] + u[(o1, i2)] * u[(o2, i1)];
    let norm_in = if i1 == i2 { 2f64.sqrt() } else { 1.0 };
    let norm_out = if o1 == o2 { 2f64.sqrt() } else { 1.0 };
    raw / (norm_in * norm_out)
}

pub fn shipped(name: &str) -> String {
    let path = format!("{}/circuits/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}
