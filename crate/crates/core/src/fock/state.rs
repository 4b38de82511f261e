use std::fmt;

use crate::{Error, Result};

/// Photon occupation numbers, one per mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockState(Vec<usize>);

impl FockState {
    pub fn new(occupations: Vec<usize>) -> Self {
        Self(occupations)
    }

    pub fn vacuum(n_modes: usize) -> Self {
        Self(vec![0; n_modes])
    }

    /// One photon in each listed mode (repeats add photons).
    pub fn with_photons_in(n_modes: usize, modes: &[usize]) -> Result<Self> {
        let mut occ = vec![0; n_modes];
        for &m in modes {
            *occ.get_mut(m).ok_or(Error::ModeOutOfRange {
                index: m,
                modes: n_modes,
            })? += 1;
        }
        Ok(Self(occ))
    }

    pub fn occupations(&self) -> &[usize] {
        &self.0
    }

    pub fn n_modes(&self) -> usize {
        self.0.len()
    }

    pub fn n_photons(&self) -> usize {
        self.0.iter().sum()
    }

    /// Mode index of every photon, in ascending mode order.
    pub fn mode_list(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(m, &k)| std::iter::repeat_n(m, k))
            .collect()
    }

    /// `∏ n_k!` over all modes, as a float.
    pub fn factorial_product(&self) -> f64 {
        self.0
            .iter()
            .map(|&k| (1..=k).map(|j| j as f64).product::<f64>())
            .product()
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, "⟩")
    }
}

impl From<Vec<usize>> for FockState {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

/// Every `n`-photon state over `m` modes, lexicographically descending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockBasis {
    n_photons: usize,
    n_modes: usize,
    states: Vec<FockState>,
}

impl FockBasis {
    pub fn n_photons(&self) -> usize {
        self.n_photons
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn states(&self) -> &[FockState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FockState> {
        self.states.iter()
    }
}

impl<'a> IntoIterator for &'a FockBasis {
    type Item = &'a FockState;
    type IntoIter = std::slice::Iter<'a, FockState>;

    fn into_iter(self) -> Self::IntoIter {
        self.states.iter()
    }
}

pub fn enumerate_basis(n_photons: usize, n_modes: usize) -> Result<FockBasis> {
    if n_modes == 0 {
        return Err(Error::NoModes);
    }
    let mut states = Vec::new();
    let mut occ = vec![0; n_modes];
    fill(&mut occ, 0, n_photons, &mut states);
    Ok(FockBasis {
        n_photons,
        n_modes,
        states,
    })
}

fn fill(occ: &mut [usize], mode: usize, remaining: usize, out: &mut Vec<FockState>) {
    if mode + 1 == occ.len() {
        occ[mode] = remaining;
        out.push(FockState(occ.to_vec()));
        return;
    }
    for k in (0..=remaining).rev() {
        occ[mode] = k;
        fill(occ, mode + 1, remaining - k, out);
    }
    occ[mode] = 0;
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn small_bases() {
        let b = enumerate_basis(1, 2).unwrap();
        assert_eq!(b.states(), &[FockState::new(vec![1, 0]), FockState::new(vec![0, 1])]);
        let b = enumerate_basis(2, 2).unwrap();
        let occ: Vec<_> = b.iter().map(|s| s.occupations().to_vec()).collect();
        assert_eq!(occ, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn two_photons_six_modes_matches_brute_force() {
        let b = enumerate_basis(2, 6).unwrap();
        assert_eq!(b.len(), 21);
        assert_eq!(b.len(), binomial(7, 2));
        // brute force over all 3^6 occupation vectors with entries 0..=2
        let mut brute = Vec::new();
        for code in 0..3usize.pow(6) {
            let occ: Vec<usize> = (0..6).map(|i| code / 3usize.pow(i) % 3).collect();
            if occ.iter().sum::<usize>() == 2 {
                brute.push(FockState::new(occ));
            }
        }
        brute.sort_by(|a, b| b.cmp(a));
        assert_eq!(b.states(), brute.as_slice());
    }

    #[test]
    fn sizes_and_uniqueness() {
        for n in 0..=4 {
            for m in 1..=6 {
                let b = enumerate_basis(n, m).unwrap();
                assert_eq!(b.len(), binomial(n + m - 1, n), "n={n} m={m}");
                let set: HashSet<_> = b.iter().collect();
                assert_eq!(set.len(), b.len());
                assert!(b.states().windows(2).all(|w| w[0] > w[1]));
                assert!(b.iter().all(|s| s.n_photons() == n && s.n_modes() == m));
            }
        }
    }

    #[test]
    fn zero_modes_rejected() {
        assert!(matches!(enumerate_basis(1, 0), Err(Error::NoModes)));
    }

    #[test]
    fn zero_photons_is_vacuum() {
        let b = enumerate_basis(0, 3).unwrap();
        assert_eq!(b.states(), &[FockState::vacuum(3)]);
    }

    #[test]
    fn mode_list_and_factorials() {
        let s = FockState::new(vec![2, 0, 1, 3]);
        assert_eq!(s.mode_list(), vec![0, 0, 2, 3, 3, 3]);
        assert_eq!(s.factorial_product(), 12.0);
        assert_eq!(s.to_string(), "|2,0,1,3⟩");
        assert!(FockState::with_photons_in(2, &[2]).is_err());
    }
}
