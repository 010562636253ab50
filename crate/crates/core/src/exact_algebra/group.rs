use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::int::Int;
use super::ring::{is_prime, Integers, PrimeField};
use super::smith::invariant_factors;
use super::sparse::IntMatrix;
use crate::{Error, Result};

/// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `1 < d_1 | d_2 | ... | d_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroupPresentation {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl AbelianGroupPresentation {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroupPresentation { free_rank: rank, torsion: Vec::new() }
    }

    /// Canonical form of `Z^free_rank ⊕ ⊕ Z/c_i` for arbitrary cyclic orders `c_i`.
    /// Orders of 1 are dropped; order 0 counts as a free summand.
    pub fn from_cyclic(free_rank: usize, orders: &[Int]) -> Self {
        let mut free = free_rank;
        let nontrivial: Vec<Int> = orders
            .iter()
            .map(Int::abs)
            .filter(|d| {
                if d.is_zero() {
                    free += 1;
                }
                !d.is_zero() && !d.is_one()
            })
            .collect();
        let diag = IntMatrix::from_triplets(
            nontrivial.len(),
            nontrivial.len(),
            nontrivial.iter().enumerate().map(|(i, d)| (i, i, d.clone())),
        );
        let torsion = invariant_factors(&Integers, &diag).into_iter().filter(|d| !d.is_one()).collect();
        AbelianGroupPresentation { free_rank: free, torsion }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Number of cyclic summands in the canonical decomposition.
    pub fn ngens(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let orders: Vec<Int> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        Self::from_cyclic(self.free_rank + other.free_rank, &orders)
    }

    /// Group order if finite.
    pub fn order(&self) -> Option<Int> {
        (self.free_rank == 0).then(|| self.torsion.iter().fold(Int::ONE, |a, b| &a * b))
    }

    /// Dimension of `G ⊗ Z/p`.
    pub fn dim_mod(&self, p: u64) -> usize {
        self.free_rank + self.torsion.iter().filter(|d| d.rem_euclid_u64(p) == 0).count()
    }

    /// Reinterprets an integral group as a group over `coeff` by tensoring.
    pub fn tensor(&self, coeff: Coefficients) -> Self {
        match coeff {
            Coefficients::Z => self.clone(),
            Coefficients::Q => Self::free(self.free_rank),
            Coefficients::Zp(p) => Self::free(self.dim_mod(p)),
        }
    }
}

impl fmt::Display for AbelianGroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// Coefficient ring for (co)homology computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coefficients {
    Z,
    Q,
    Zp(u64),
}

impl Coefficients {
    pub fn zp(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Coefficients::Zp(p))
        } else {
            Err(Error::InvalidParameter(format!("{p} is not prime")))
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Coefficients::Z)
    }

    pub fn field(&self) -> Option<PrimeField> {
        match self {
            Coefficients::Zp(p) => Some(PrimeField::new(*p)),
            _ => None,
        }
    }

    /// Group of rank one over these coefficients.
    pub fn unit_group(&self) -> AbelianGroupPresentation {
        AbelianGroupPresentation::free(1)
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Z => write!(f, "Z"),
            Coefficients::Q => write!(f, "Q"),
            Coefficients::Zp(p) => write!(f, "Z{p}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Z" | "z" => Ok(Coefficients::Z),
            "Q" | "q" => Ok(Coefficients::Q),
            _ => {
                let digits = t
                    .strip_prefix("Z/")
                    .or_else(|| t.strip_prefix("Z"))
                    .or_else(|| t.strip_prefix("z"))
                    .ok_or_else(|| Error::Parse(format!("unknown coefficients `{s}`")))?;
                let p: u64 = digits.parse().map_err(|_| Error::Parse(format!("unknown coefficients `{s}`")))?;
                Coefficients::zp(p)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let g = AbelianGroupPresentation::from_cyclic(1, &[Int::from(2i64), Int::from(3i64), Int::ONE]);
        assert_eq!(g.torsion, vec![Int::from(6i64)]);
        assert_eq!(g.free_rank, 1);
        assert_eq!(g.to_string(), "Z ⊕ Z/6");
        let h = AbelianGroupPresentation::from_cyclic(0, &[Int::from(4i64), Int::from(6i64)]);
        assert_eq!(h.torsion, vec![Int::from(2i64), Int::from(12i64)]);
    }

    #[test]
    fn parse_coefficients() {
        assert_eq!("Z2".parse::<Coefficients>().unwrap(), Coefficients::Zp(2));
        assert_eq!("Z/7".parse::<Coefficients>().unwrap(), Coefficients::Zp(7));
        assert_eq!("Q".parse::<Coefficients>().unwrap(), Coefficients::Q);
        assert!("Z4".parse::<Coefficients>().is_err());
        assert!("R".parse::<Coefficients>().is_err());
    }

    #[test]
    fn universal_coefficients_count() {
        let g = AbelianGroupPresentation::from_cyclic(2, &[Int::from(2i64), Int::from(4i64)]);
        assert_eq!(g.dim_mod(2), 4);
        assert_eq!(g.dim_mod(3), 2);
    }
}
