//! From a connection set to its automorphism group: generated S-ring,
//! group basis, weighted poset and generalized wreath product.

use crate::error::{Error, Result};
use crate::gwp::GeneralizedWreathProduct;
use crate::lattice::DivisorLattice;
use crate::poset::WeightedPoset;
use crate::schur::{RationalSRing, SchurRing};
use crate::zn::ZnSubset;

#[derive(Debug, Clone)]
pub struct Analysis {
    pub set: ZnSubset,
    pub sring: RationalSRing,
    pub poset: WeightedPoset,
    pub gwp: GeneralizedWreathProduct,
}

impl Analysis {
    pub fn modulus(&self) -> u64 {
        self.set.modulus() as u64
    }

    pub fn lattice(&self) -> &DivisorLattice {
        self.sring.lattice()
    }
}

/// Analyzes `Cay(Z_n, S)`. `S` must be loopless and trace-closed, and
/// `n ≥ 2`.
pub fn analyze_set(set: &ZnSubset) -> Result<Analysis> {
    let n = set.modulus();
    if n < 2 {
        return Err(Error::InvalidInput(format!("modulus must be at least 2, got {n}")));
    }
    if set.contains(0) {
        return Err(Error::InvalidInput("connection set contains 0 (a loop)".into()));
    }
    if let Some(x) = set.first_non_closed() {
        let single = ZnSubset::new(n, [x])?;
        return Err(Error::NotRational(format!("trace of {single} is {}", single.trace())));
    }
    let ring = SchurRing::generate(set);
    if !ring.is_rational() {
        return Err(Error::Inconsistency(format!("trace-closed set {set} generated a non-rational S-ring")));
    }
    let sring = ring.group_basis()?;
    let poset = WeightedPoset::from_lattice(sring.lattice())?;
    if poset.to_lattice()? != *sring.lattice() {
        return Err(Error::Inconsistency(format!("poset {poset} does not return lattice {}", sring.lattice())));
    }
    let gwp = GeneralizedWreathProduct::new(poset.clone());
    Ok(Analysis { set: set.clone(), sring, poset, gwp })
}

/// Analyzes `S = ⋃_{d ∈ X} (Z_n)_d` for proper divisors `d` of `n`.
pub fn analyze_divisors(n: u64, divisors: &[u64]) -> Result<Analysis> {
    if divisors.contains(&n) {
        return Err(Error::InvalidInput(format!("divisor {n} would put 0 (a loop) in the connection set")));
    }
    analyze_set(&ZnSubset::from_divisors(n as usize, divisors)?)
}
