//! Exponent combinatorics of the perturbed Fermat variety: the index set I,
//! weights A_beta, and Hodge-number counting.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{is_integer, Rational};

/// Degrees (m_1, ..., m_n) of the Fermat part plus the perturbation degree
/// m = m_{n+1}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub fermat_degrees: Vec<u32>,
    pub perturbation_degree: u32,
}

impl DegreeProfile {
    pub fn new(fermat_degrees: Vec<u32>, perturbation_degree: u32) -> Result<Self> {
        if fermat_degrees.is_empty() || fermat_degrees.len() % 2 != 0 {
            return Err(Error::Parse(format!(
                "number of Fermat degrees must be even and positive, got {}",
                fermat_degrees.len()
            )));
        }
        if fermat_degrees.iter().any(|&m| m < 2) || perturbation_degree < 2 {
            return Err(Error::Parse("all degrees must be >= 2".into()));
        }
        Ok(DegreeProfile { fermat_degrees, perturbation_degree })
    }

    /// n: the number of Fermat variables (even).
    pub fn n(&self) -> usize {
        self.fermat_degrees.len()
    }

    /// All degrees (m_1, ..., m_n, m_{n+1}).
    pub fn all_degrees(&self) -> Vec<u32> {
        let mut v = self.fermat_degrees.clone();
        v.push(self.perturbation_degree);
        v
    }

    /// lcm of the Fermat degrees m_1..m_n.
    pub fn fermat_lcm(&self) -> u64 {
        use num_integer::Integer;
        self.fermat_degrees.iter().fold(1u64, |acc, &m| acc.lcm(&(m as u64)))
    }

    /// Lexicographic enumeration of J = I_{m_1} x ... x I_{m_n},
    /// I_m = {0, ..., m-2}. This ordering fixes the constraint-matrix columns.
    pub fn enumerate_j(&self) -> Vec<Vec<u32>> {
        enumerate_boxes(&self.fermat_degrees)
    }

    /// Lexicographic enumeration of I = J x I_m.
    pub fn enumerate_i(&self) -> Vec<Vec<u32>> {
        enumerate_boxes(&self.all_degrees())
    }

    pub fn j_size(&self) -> usize {
        self.fermat_degrees.iter().map(|&m| (m - 1) as usize).product()
    }
}

fn enumerate_boxes(degrees: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &m in degrees {
        let mut next = Vec::with_capacity(out.len() * (m as usize - 1));
        for prefix in &out {
            for b in 0..m - 1 {
                let mut v = prefix.clone();
                v.push(b);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Which coordinates enter the weight sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightRange {
    /// A_beta over all n+1 coordinates.
    Full,
    /// A_beta' over the first n coordinates only.
    FermatOnly,
}

/// A_beta = sum (beta_j + 1)/m_j over the requested range, exact.
pub fn weight(beta: &[u32], profile: &DegreeProfile, range: WeightRange) -> Result<Rational> {
    let n = profile.n();
    let expected = n + 1;
    match range {
        WeightRange::Full => {
            if beta.len() != expected {
                return Err(Error::DimensionMismatch { expected, got: beta.len() });
            }
            let mut acc = weight_fermat(&beta[..n], profile);
            acc += Rational::new(
                BigInt::from(beta[n] + 1),
                BigInt::from(profile.perturbation_degree),
            );
            Ok(acc)
        }
        WeightRange::FermatOnly => {
            if beta.len() != expected && beta.len() != n {
                return Err(Error::DimensionMismatch { expected, got: beta.len() });
            }
            Ok(weight_fermat(&beta[..n], profile))
        }
    }
}

fn weight_fermat(beta_prime: &[u32], profile: &DegreeProfile) -> Rational {
    let mut acc = Rational::zero();
    for (b, &m) in beta_prime.iter().zip(&profile.fermat_degrees) {
        acc += Rational::new(BigInt::from(b + 1), BigInt::from(m));
    }
    acc
}

/// One Hodge-number entry: the count of beta in I with level-1 < A_beta < level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeLevel {
    pub level: u32,
    pub count: u64,
}

/// h_0^{k-1, n-k+1} = #{beta in I : k-1 < A_beta < k} for k = 1..n+1.
/// Betas with integral A_beta fall in no open interval.
pub fn hodge_numbers(profile: &DegreeProfile) -> Vec<HodgeLevel> {
    let n = profile.n() as u32;
    let mut counts = vec![0u64; (n + 2) as usize];
    for beta in profile.enumerate_i() {
        let a = weight(&beta, profile, WeightRange::Full).expect("enumerated beta fits profile");
        if is_integer(&a) {
            continue;
        }
        let k = a.ceil().to_integer();
        let k: u64 = k.try_into().expect("weight positive");
        if k >= 1 && k <= (n + 1) as u64 {
            counts[k as usize] += 1;
        }
    }
    (1..=n + 1).map(|k| HodgeLevel { level: k, count: counts[k as usize] }).collect()
}

/// Betas sitting exactly on integral weights, per level, for diagnostics.
pub fn hodge_boundary(profile: &DegreeProfile) -> Vec<HodgeLevel> {
    let mut counts: std::collections::BTreeMap<u32, u64> = Default::default();
    for beta in profile.enumerate_i() {
        let a = weight(&beta, profile, WeightRange::Full).expect("enumerated beta fits profile");
        if is_integer(&a) {
            let k: u64 = a.to_integer().try_into().expect("weight positive");
            *counts.entry(k as u32).or_default() += 1;
        }
    }
    counts.into_iter().map(|(level, count)| HodgeLevel { level, count }).collect()
}

/// Closed-form Hodge numbers for the profile (2, ..., 2, m_n; 3):
/// (floor((m_n-1)/6), m_n - 2 + ceil(5 m_n/6) - floor(m_n/6)).
pub fn cubic_hodge_formula(m_n: u32) -> (u64, u64) {
    assert!(m_n >= 2);
    let m = m_n as u64;
    let off_diag = (m - 1) / 6;
    let diag = m - 2 + (5 * m).div_ceil(6) - m / 6;
    (off_diag, diag)
}
