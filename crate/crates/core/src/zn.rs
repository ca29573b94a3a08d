//! Subsets of the cyclic group Z_n and the unit-orbit sets (Z_n)_d.

use std::collections::BTreeSet;
use std::fmt;

use crate::arith::{self, gcd};
use crate::error::{Error, Result};

/// A set of residues modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZnSubset {
    modulus: usize,
    members: BTreeSet<usize>,
}

impl ZnSubset {
    pub fn new(modulus: usize, residues: impl IntoIterator<Item = usize>) -> Result<Self> {
        arith::check_modulus(modulus as u64)?;
        Ok(ZnSubset {
            modulus,
            members: residues.into_iter().map(|x| x % modulus).collect(),
        })
    }

    /// Signed residues, reduced into `0..n`.
    pub fn from_signed(modulus: usize, residues: impl IntoIterator<Item = i64>) -> Result<Self> {
        arith::check_modulus(modulus as u64)?;
        let n = modulus as i64;
        Ok(ZnSubset {
            modulus,
            members: residues.into_iter().map(|x| x.rem_euclid(n) as usize).collect(),
        })
    }

    pub fn empty(modulus: usize) -> Self {
        ZnSubset { modulus, members: BTreeSet::new() }
    }

    /// Union of the orbit sets `(Z_n)_d` over `d` in `divisors`.
    pub fn from_divisors(modulus: usize, divisors: &[u64]) -> Result<Self> {
        let mut out = Self::empty(modulus);
        for &d in divisors {
            out.members.extend(orbit_set(modulus, d)?.members);
        }
        Ok(out)
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(&(x % self.modulus))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn negated(&self) -> Self {
        let n = self.modulus;
        ZnSubset {
            modulus: n,
            members: self.members.iter().map(|&x| (n - x) % n).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.negated()
    }

    pub fn without_zero(&self) -> Self {
        let mut out = self.clone();
        out.members.remove(&0);
        out
    }

    pub fn union(&self, other: &Self) -> Self {
        ZnSubset {
            modulus: self.modulus,
            members: self.members.union(&other.members).copied().collect(),
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.members.is_subset(&other.members)
    }

    /// The divisors `d` for which this set meets `(Z_n)_d`, ascending.
    pub fn gcd_classes(&self) -> Vec<u64> {
        let n = self.modulus as u64;
        let set: BTreeSet<u64> = self.members.iter().map(|&x| gcd(x as u64, n)).collect();
        set.into_iter().collect()
    }

    /// The trace: union of `mS` over all units `m`.
    pub fn trace(&self) -> Self {
        let n = self.modulus;
        let units = units(n);
        let mut members = BTreeSet::new();
        for &x in &self.members {
            for &u in &units {
                members.insert(x * u % n);
            }
        }
        ZnSubset { modulus: n, members }
    }

    pub fn is_trace_closed(&self) -> bool {
        self.trace() == *self
    }

    /// First element whose unit orbit is not contained in the set.
    pub fn first_non_closed(&self) -> Option<usize> {
        let n = self.modulus;
        let units = units(n);
        self.members
            .iter()
            .copied()
            .find(|&x| units.iter().any(|&u| !self.members.contains(&(x * u % n))))
    }

    pub(crate) fn indicator(&self) -> Vec<bool> {
        let mut v = vec![false; self.modulus];
        for &x in &self.members {
            v[x] = true;
        }
        v
    }
}

impl fmt::Display for ZnSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Units of Z_n. For `n = 1` this is `{0}` (the zero ring's unit).
pub fn units(n: usize) -> Vec<usize> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&u| gcd(u as u64, n as u64) == 1).collect()
}

/// `(Z_n)_d = { x : gcd(x, n) = d }`, with `gcd(0, n) = n`.
pub fn orbit_set(n: usize, d: u64) -> Result<ZnSubset> {
    arith::check_modulus(n as u64)?;
    if d == 0 || !(n as u64).is_multiple_of(d) {
        return Err(Error::NotADivisor { value: d, modulus: n as u64 });
    }
    Ok(ZnSubset {
        modulus: n,
        members: (0..n).filter(|&x| gcd(x as u64, n as u64) == d).collect(),
    })
}

/// The subgroup of order `l`: multiples of `n / l`.
pub fn subgroup(n: usize, l: u64) -> Result<ZnSubset> {
    arith::check_modulus(n as u64)?;
    if l == 0 || !(n as u64).is_multiple_of(l) {
        return Err(Error::NotADivisor { value: l, modulus: n as u64 });
    }
    let step = n / l as usize;
    Ok(ZnSubset {
        modulus: n,
        members: (0..n).step_by(step).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::euler_phi;

    #[test]
    fn orbit_set_examples() {
        assert_eq!(orbit_set(36, 6).unwrap().to_vec(), vec![6, 30]);
        assert_eq!(orbit_set(9, 9).unwrap().to_vec(), vec![0]);
        assert_eq!(orbit_set(6, 1).unwrap().to_vec(), vec![1, 5]);
        assert!(orbit_set(6, 4).is_err());
    }

    #[test]
    fn orbit_sets_partition_and_sizes() {
        for n in 1..80usize {
            let mut total = 0;
            for d in arith::divisors(n as u64).unwrap() {
                let o = orbit_set(n, d).unwrap();
                assert_eq!(o.len() as u64, euler_phi(n as u64 / d));
                assert!(o.is_trace_closed());
                assert!(o.is_symmetric());
                total += o.len();
            }
            assert_eq!(total, n);
        }
    }

    #[test]
    fn trace_examples() {
        let s = ZnSubset::new(6, [1]).unwrap();
        assert_eq!(s.trace().to_vec(), vec![1, 5]);
        assert_eq!(ZnSubset::new(36, [6]).unwrap().trace().to_vec(), vec![6, 30]);
        let striking = ZnSubset::from_divisors(36, &[2, 3, 4, 6]).unwrap();
        assert_eq!(
            striking.to_vec(),
            vec![2, 3, 4, 6, 8, 10, 14, 15, 16, 20, 21, 22, 26, 28, 30, 32, 33, 34]
        );
        assert_eq!(striking.trace(), striking);
        assert_eq!(ZnSubset::new(6, [1, 2]).unwrap().first_non_closed(), Some(1));
    }

    #[test]
    fn trace_is_idempotent_and_a_union_of_orbit_sets() {
        for n in 1..30usize {
            for x in 0..n {
                let t = ZnSubset::new(n, [x]).unwrap().trace();
                assert_eq!(t.trace(), t);
                assert_eq!(t, orbit_set(n, gcd(x as u64, n as u64)).unwrap());
            }
        }
    }

    #[test]
    fn subgroups() {
        assert_eq!(subgroup(36, 18).unwrap().len(), 18);
        assert_eq!(subgroup(6, 2).unwrap().to_vec(), vec![0, 3]);
        assert_eq!(subgroup(6, 1).unwrap().to_vec(), vec![0]);
    }
}
