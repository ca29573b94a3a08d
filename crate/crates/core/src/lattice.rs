//! Sublattices of the divisor lattice L(n): gcd is the meet, lcm the join.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{self, gcd, lcm};
use crate::error::{Error, Result};

/// Default bound on the number of divisors for exhaustive sublattice
/// enumeration.
pub const DEFAULT_TAU_BOUND: usize = 12;

/// A gcd/lcm-closed set of divisors of `modulus` containing 1 and `modulus`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DivisorLattice {
    modulus: u64,
    elements: Vec<u64>,
}

impl DivisorLattice {
    /// Validates the lattice invariants. Elements may be given in any order
    /// and with repetitions.
    pub fn new(modulus: u64, elements: impl IntoIterator<Item = u64>) -> Result<Self> {
        arith::check_modulus(modulus)?;
        let mut elements: Vec<u64> = elements.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        for &x in &elements {
            if x == 0 || !modulus.is_multiple_of(x) {
                return Err(Error::NotADivisor { value: x, modulus });
            }
        }
        if elements.first() != Some(&1) || elements.last() != Some(&modulus) {
            return Err(Error::InvalidLattice(format!(
                "1 and {modulus} must both be elements"
            )));
        }
        for (i, &x) in elements.iter().enumerate() {
            for &y in &elements[i + 1..] {
                for z in [gcd(x, y), lcm(x, y)] {
                    if elements.binary_search(&z).is_err() {
                        return Err(Error::InvalidLattice(format!(
                            "{z} (meet or join of {x} and {y}) is missing"
                        )));
                    }
                }
            }
        }
        Ok(DivisorLattice { modulus, elements })
    }

    /// L(n) itself.
    pub fn full(n: u64) -> Result<Self> {
        Ok(DivisorLattice {
            modulus: n,
            elements: arith::divisors(n)?,
        })
    }

    /// The trivial sublattice {1, n}.
    pub fn trivial(n: u64) -> Result<Self> {
        arith::check_modulus(n)?;
        let mut elements = vec![1, n];
        elements.dedup();
        Ok(DivisorLattice { modulus: n, elements })
    }

    /// Smallest sublattice of L(n) containing `seed`, 1 and n.
    pub fn closure(n: u64, seed: impl IntoIterator<Item = u64>) -> Result<Self> {
        arith::check_modulus(n)?;
        let mut set: Vec<u64> = vec![1, n];
        for x in seed {
            if x == 0 || !n.is_multiple_of(x) {
                return Err(Error::NotADivisor { value: x, modulus: n });
            }
            set.push(x);
        }
        set.sort_unstable();
        set.dedup();
        loop {
            let mut fresh = Vec::new();
            for (i, &x) in set.iter().enumerate() {
                for &y in &set[i + 1..] {
                    for z in [gcd(x, y), lcm(x, y)] {
                        if set.binary_search(&z).is_err() {
                            fresh.push(z);
                        }
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            set.extend(fresh);
            set.sort_unstable();
            set.dedup();
        }
        Ok(DivisorLattice { modulus: n, elements: set })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() <= 2
    }

    fn require(&self, m: u64) -> Result<()> {
        if self.contains(m) {
            Ok(())
        } else {
            Err(Error::NotInLattice { value: m })
        }
    }

    /// `L_⊆m`: the elements dividing `m`, as a lattice on modulus `m`.
    pub fn below(&self, m: u64) -> Result<Self> {
        self.require(m)?;
        Ok(DivisorLattice {
            modulus: m,
            elements: self.elements.iter().copied().filter(|x| m.is_multiple_of(*x)).collect(),
        })
    }

    /// `L_⊇m`: the elements divisible by `m`.
    ///
    /// This is an interval of L(n) rather than a sublattice containing 1, so
    /// it is returned as a plain ascending list.
    pub fn above(&self, m: u64) -> Result<Vec<u64>> {
        self.require(m)?;
        Ok(self.elements.iter().copied().filter(|x| x % m == 0).collect())
    }

    /// `L_⊇m` rescaled by `1/m`: a sublattice of L(n/m).
    pub fn above_quotient(&self, m: u64) -> Result<Self> {
        let elements = self.above(m)?.into_iter().map(|x| x / m).collect();
        Ok(DivisorLattice { modulus: self.modulus / m, elements })
    }

    /// The maximal element of `L \ {n}` used by the recursive constructions:
    /// the numerically largest one, which is always maximal.
    pub fn chosen_maximal(&self) -> Option<u64> {
        let k = self.elements.len();
        (k >= 2).then(|| self.elements[k - 2])
    }

    /// Covering pairs `(x, y)`: `x | y` with nothing of the lattice strictly
    /// between.
    pub fn covering_pairs(&self) -> Vec<(u64, u64)> {
        let e = &self.elements;
        let mut out = Vec::new();
        for (i, &x) in e.iter().enumerate() {
            for &y in &e[i + 1..] {
                if y % x != 0 {
                    continue;
                }
                let between = e.iter().any(|&z| z != x && z != y && z % x == 0 && y % z == 0);
                if !between {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Hasse diagram in Graphviz DOT; bottom element drawn lowest.
    pub fn to_dot(&self) -> String {
        let mut s = format!("graph lattice_{} {{\n", self.modulus);
        s.push_str("  rankdir=BT;\n  node [shape=plaintext];\n");
        for x in &self.elements {
            s.push_str(&format!("  \"{x}\";\n"));
        }
        for (x, y) in self.covering_pairs() {
            s.push_str(&format!("  \"{x}\" -- \"{y}\";\n"));
        }
        s.push_str("}\n");
        s
    }

    /// Checks the identity
    /// `L \ L_⊆m = { x·s/(m∧s) : x ∈ (L_⊆m)_⊇(m∧s) }`
    /// for the chosen maximal `m` of `L \ {n}` and the smallest `s` outside
    /// `L_⊆m`.
    pub fn complement_identity_check(&self) -> Result<ComplementIdentity> {
        let m = self.chosen_maximal().ok_or_else(|| {
            Error::InvalidInput("the identity needs a lattice with at least two elements".into())
        })?;
        let lhs: Vec<u64> = self.elements.iter().copied().filter(|x| m % x != 0).collect();
        let s = lhs[0];
        let meet = gcd(m, s);
        let mut rhs: Vec<u64> = self
            .elements
            .iter()
            .copied()
            .filter(|x| m % x == 0 && x % meet == 0)
            .map(|x| x * (s / meet))
            .collect();
        rhs.sort_unstable();
        rhs.dedup();
        Ok(ComplementIdentity {
            holds: lhs == rhs,
            m,
            s,
            lhs,
            rhs,
        })
    }
}

impl fmt::Display for DivisorLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplementIdentity {
    pub m: u64,
    pub s: u64,
    pub lhs: Vec<u64>,
    pub rhs: Vec<u64>,
    pub holds: bool,
}

/// Every sublattice of L(n) containing 1 and n, sorted by size then
/// elements. Fails when τ(n) exceeds `tau_bound`.
pub fn sublattices_bounded(n: u64, tau_bound: usize) -> Result<Vec<DivisorLattice>> {
    let divs = arith::divisors(n)?;
    if divs.len() > tau_bound {
        return Err(Error::TooLarge {
            what: "number of divisors",
            value: divs.len() as u64,
            bound: tau_bound as u64,
        });
    }
    if n == 1 {
        return Ok(vec![DivisorLattice { modulus: 1, elements: vec![1] }]);
    }
    let middle = &divs[1..divs.len() - 1];
    let mut chosen = vec![1u64];
    let mut out = Vec::new();
    extend_sublattices(n, middle, 0, &mut chosen, &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.elements.cmp(&b.elements)));
    Ok(out)
}

pub fn sublattices(n: u64) -> Result<Vec<DivisorLattice>> {
    sublattices_bounded(n, DEFAULT_TAU_BOUND)
}

// Divisors are decided in ascending order. A gcd never exceeds its
// arguments, so a missing gcd can be rejected as soon as the larger argument
// is added; joins are only checked once the set is complete.
fn extend_sublattices(n: u64, middle: &[u64], idx: usize, chosen: &mut Vec<u64>, out: &mut Vec<DivisorLattice>) {
    if idx == middle.len() {
        chosen.push(n);
        let joins_ok = chosen.iter().enumerate().all(|(i, &x)| {
            chosen[i + 1..]
                .iter()
                .all(|&y| chosen.binary_search(&lcm(x, y)).is_ok())
        });
        if joins_ok {
            out.push(DivisorLattice { modulus: n, elements: chosen.clone() });
        }
        chosen.pop();
        return;
    }
    extend_sublattices(n, middle, idx + 1, chosen, out);
    let x = middle[idx];
    if chosen.iter().all(|&y| chosen.binary_search(&gcd(x, y)).is_ok()) {
        chosen.push(x);
        extend_sublattices(n, middle, idx + 1, chosen, out);
        chosen.pop();
    }
}
