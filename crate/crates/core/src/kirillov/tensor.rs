//! Tensor product rules at the level of orbit labels.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::OrbitLabelSL2C;
use crate::error::{Error, Result};

/// SU(2) orbit (spherical shell) of radius `j`, stored as `2j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SU2OrbitLabel {
    pub two_j: u32,
}

impl SU2OrbitLabel {
    pub fn from_spin(j: f64) -> Result<Self> {
        Ok(Self { two_j: twice(j)? })
    }

    pub fn j(&self) -> f64 {
        f64::from(self.two_j) / 2.0
    }

    /// Dimension `2j + 1` of the corresponding irrep.
    pub fn dim(&self) -> u32 {
        self.two_j + 1
    }
}

impl fmt::Display for SU2OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.two_j % 2 == 0 {
            write!(f, "{}", self.two_j / 2)
        } else {
            write!(f, "{}/2", self.two_j)
        }
    }
}

fn twice(j: f64) -> Result<u32> {
    let t = 2.0 * j;
    if !(t.is_finite() && t >= 0.0 && (t - t.round()).abs() < 1e-12 && t <= f64::from(u32::MAX)) {
        return Err(Error::NotHalfInteger(j));
    }
    Ok(t.round() as u32)
}

/// Shells `|j − l|, |j − l| + 1, …, j + l` of `H_j ⊗ H_l`.
pub fn su2_tensor_decompose(j: f64, l: f64) -> Result<Vec<SU2OrbitLabel>> {
    let (a, b) = (twice(j)?, twice(l)?);
    let lo = a.abs_diff(b);
    Ok((lo..=a + b).step_by(2).map(|two_j| SU2OrbitLabel { two_j }).collect())
}

/// `⊕_{m : m + n₁ + n₂ ∈ ℤ} ∫⊕ π_{m,ρ} dρ`, kept symbolic in `ρ`.
///
/// The admissible `m` form the coset `offset + ℤ` with `offset ∈ [0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sl2cTensorDescriptor {
    /// The factors, ordered so that the descriptor does not depend on the
    /// order of the arguments.
    pub factors: [OrbitLabelSL2C; 2],
    pub offset: f64,
}

/// Tolerance for deciding `m + n₁ + n₂ ∈ ℤ`.
const INTEGRALITY_TOL: f64 = 1e-9;

impl Sl2cTensorDescriptor {
    pub fn admits(&self, m: f64) -> bool {
        let s = m + self.factors[0].n() + self.factors[1].n();
        (s - s.round()).abs() <= INTEGRALITY_TOL
    }

    /// Admissible `m` in `[lo, hi]`.
    pub fn m_values(&self, lo: f64, hi: f64) -> Vec<f64> {
        let start = (lo - self.offset).ceil() as i64;
        let end = (hi - self.offset).floor() as i64;
        (start..=end).map(|k| k as f64 + self.offset).collect()
    }

    /// Whether the admissible `m` are exactly the integers.
    pub fn m_is_integral(&self) -> bool {
        self.offset == 0.0
    }
}

impl fmt::Display for Sl2cTensorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m_is_integral() {
            write!(f, "sum over m in Z of integral pi(m,rho) drho")
        } else {
            write!(f, "sum over m in {}+Z of integral pi(m,rho) drho", self.offset)
        }
    }
}

pub fn sl2c_tensor_decompose(l1: OrbitLabelSL2C, l2: OrbitLabelSL2C) -> Sl2cTensorDescriptor {
    let mut factors = [l1, l2];
    factors.sort_by(|a, b| a.n().total_cmp(&b.n()).then(a.rho().total_cmp(&b.rho())));
    let mut offset = (-(l1.n() + l2.n())).rem_euclid(1.0);
    if offset < INTEGRALITY_TOL || 1.0 - offset < INTEGRALITY_TOL {
        offset = 0.0;
    }
    Sl2cTensorDescriptor { factors, offset }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn spins(v: &[SU2OrbitLabel]) -> Vec<f64> {
        v.iter().map(|l| l.j()).collect()
    }

    #[test]
    fn su2_examples() {
        assert_eq!(spins(&su2_tensor_decompose(0.5, 0.5).unwrap()), vec![0.0, 1.0]);
        assert_eq!(spins(&su2_tensor_decompose(1.5, 0.0).unwrap()), vec![1.5]);
        let d = su2_tensor_decompose(1.0, 2.0).unwrap();
        assert_eq!(spins(&d), vec![1.0, 2.0, 3.0]);
        assert_eq!(d.iter().map(|l| l.dim()).sum::<u32>(), 15);
        assert!(matches!(su2_tensor_decompose(0.3, 1.0), Err(Error::NotHalfInteger(_))));
        assert!(su2_tensor_decompose(-0.5, 1.0).is_err());
    }

    /// Peel highest weights off the weight multiset of `H_j ⊗ H_l`.
    fn weight_oracle(tj: u32, tl: u32) -> Vec<u32> {
        let mut mult: BTreeMap<i64, i64> = BTreeMap::new();
        for a in 0..=tj {
            for b in 0..=tl {
                let w = (2 * a as i64 - tj as i64) + (2 * b as i64 - tl as i64);
                *mult.entry(w).or_default() += 1;
            }
        }
        let mut out = Vec::new();
        while let Some((&top, _)) = mult.iter().rev().find(|(_, &m)| m > 0) {
            out.push(top as u32);
            let mut w = top;
            while w >= -top {
                *mult.get_mut(&w).unwrap() -= 1;
                w -= 2;
            }
        }
        out.sort();
        out
    }

    #[test]
    fn su2_matches_weight_oracle() {
        for tj in 0..=8 {
            for tl in 0..=8 {
                let got: Vec<u32> = su2_tensor_decompose(f64::from(tj) / 2.0, f64::from(tl) / 2.0)
                    .unwrap()
                    .iter()
                    .map(|l| l.two_j)
                    .collect();
                assert_eq!(got, weight_oracle(tj, tl), "2j={tj} 2l={tl}");
            }
        }
    }

    #[test]
    fn sl2c_examples() {
        let zero = OrbitLabelSL2C::new(0.0, 2.0).unwrap();
        assert!(sl2c_tensor_decompose(zero, zero).m_is_integral());
        let half = OrbitLabelSL2C::new(0.5, 1.0).unwrap();
        let d = sl2c_tensor_decompose(half, half);
        assert!(d.m_is_integral() && d.admits(3.0) && !d.admits(0.5));
        let mixed = sl2c_tensor_decompose(half, zero);
        assert_eq!(mixed.offset, 0.5);
        assert_eq!(mixed.m_values(-1.0, 1.0), vec![-0.5, 0.5]);
        assert_eq!(mixed, sl2c_tensor_decompose(zero, half));
    }
}
