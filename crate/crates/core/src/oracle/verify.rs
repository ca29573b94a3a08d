use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{self, Factored};
use crate::error::{Error, Result};
use crate::gwp::GeneralizedWreathProduct;
use crate::lattice::DivisorLattice;
use crate::perm::{TwoOrbits, DEFAULT_TWO_ORBIT_BOUND};
use crate::pipeline;
use crate::poset::{PosetJson, WeightedPoset};
use crate::schur::RationalSRing;
use crate::zn::{self, ZnSubset};

use super::graph::CirculantGraph;
use super::search::brute_force_aut;

/// Largest `τ(n) − 1` for which all divisor subsets are listed.
const SUBSET_EXPONENT_BOUND: usize = 16;

/// Number of loopless rational circulants on Z_n up to isomorphism:
/// `2^(τ(n)−1)`.
pub fn count_rational_circulants(n: u64) -> Result<u128> {
    let t = arith::tau(n)? as u64;
    if t > 128 {
        return Err(Error::TooLarge { what: "τ(n) − 1 for a 128-bit count", value: t - 1, bound: 127 });
    }
    Ok(1u128 << (t - 1))
}

/// All subsets of the proper divisors of `n`, each ascending, sorted.
pub fn divisor_subsets(n: u64) -> Result<Vec<Vec<u64>>> {
    let divs = arith::divisors(n)?;
    let proper = &divs[..divs.len() - 1];
    if proper.len() > SUBSET_EXPONENT_BOUND {
        return Err(Error::TooLarge {
            what: "τ(n) − 1 for subset enumeration",
            value: proper.len() as u64,
            bound: SUBSET_EXPONENT_BOUND as u64,
        });
    }
    let mut out: Vec<Vec<u64>> = (0u32..1 << proper.len())
        .map(|mask| (0..proper.len()).filter(|&i| mask >> i & 1 == 1).map(|i| proper[i]).collect())
        .collect();
    out.sort();
    Ok(out)
}

/// For trace-closed sets, `S ≅ R` iff `S ∩ (Z_n)_d = R ∩ (Z_n)_d` for all
/// `d | n`.
pub fn rational_iso_test(s: &ZnSubset, r: &ZnSubset) -> Result<bool> {
    if s.modulus() != r.modulus() {
        return Err(Error::ModulusMismatch(s.modulus() as u64, r.modulus() as u64));
    }
    for set in [s, r] {
        if let Some(x) = set.first_non_closed() {
            return Err(Error::NotRational(format!(
                "{set} is not trace-closed (element {x}); isomorphism of general circulants is not supported"
            )));
        }
    }
    let n = s.modulus();
    for d in arith::divisors(n as u64)? {
        let orbit = zn::orbit_set(n, d)?;
        let a: Vec<usize> = orbit.iter().filter(|&x| s.contains(x)).collect();
        let b: Vec<usize> = orbit.iter().filter(|&x| r.contains(x)).collect();
        if a != b {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchurityReport {
    pub classes: usize,
    pub basic_sets: usize,
    pub holds: bool,
}

/// Compares the 2-orbits of the constructed group with the basic relations
/// `{(x, y) : y − x ∈ Ẑ_l}`.
pub fn schurity_check(lattice: &DivisorLattice) -> Result<SchurityReport> {
    let n = lattice.modulus() as usize;
    if n > DEFAULT_TWO_ORBIT_BOUND {
        return Err(Error::TooLarge { what: "degree for 2-orbits", value: n as u64, bound: DEFAULT_TWO_ORBIT_BOUND as u64 });
    }
    let ring = RationalSRing::from_lattice(lattice)?;
    let group = if n == 1 {
        crate::perm::PermutationGroup::trivial(1)
    } else {
        GeneralizedWreathProduct::new(WeightedPoset::from_lattice(lattice)?).group_on_zn(n)?
    };
    let orbits = group.two_orbits(DEFAULT_TWO_ORBIT_BOUND)?;
    let class = ring.ring().class_labels();
    let labels: Vec<usize> = (0..n * n).map(|k| class[(k % n + n - k / n) % n]).collect();
    let relations = TwoOrbits::from_labels(n, &labels);
    Ok(SchurityReport { classes: orbits.len(), basic_sets: ring.ring().rank(), holds: orbits == relations })
}

/// One connection set `S = ⋃_{d ∈ X} (Z_n)_d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub n: u64,
    pub divisors: Vec<u64>,
    pub lattice: Vec<u64>,
    pub poset: PosetJson,
    pub order_factored: Factored,
    pub expression: String,
    pub oracle_order_factored: Option<Factored>,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n: u64,
    pub oracle_run: bool,
    pub records: Vec<VerifyRecord>,
    pub all_match: bool,
}

/// Runs the pipeline on every divisor subset of `n`, and the brute-force
/// oracle as well when `n ≤ max_oracle_n`. Without the oracle a record
/// matches when the pipeline's own order checks agree.
pub fn full_verify(n: u64, max_oracle_n: usize) -> Result<VerifyReport> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("verification needs n ≥ 2, got {n}")));
    }
    let oracle_run = n as usize <= max_oracle_n;
    let records = divisor_subsets(n)?
        .into_par_iter()
        .map(|x| -> Result<VerifyRecord> {
            let analysis = pipeline::analyze_divisors(n, &x)?;
            let order = analysis.gwp.order().clone();
            let (oracle, matches) = if oracle_run {
                let graph = CirculantGraph::new(analysis.set.clone())?;
                let o = brute_force_aut(&graph, max_oracle_n)?.order();
                let m = o == order;
                (Some(o), m)
            } else {
                (None, analysis.gwp.expression().order() == order)
            };
            Ok(VerifyRecord {
                n,
                divisors: x,
                lattice: analysis.lattice().elements().to_vec(),
                poset: analysis.poset.to_json(),
                order_factored: order,
                expression: analysis.gwp.expression().to_string(),
                oracle_order_factored: oracle,
                matches,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let all_match = records.iter().all(|r| r.matches);
    Ok(VerifyReport { n, oracle_run, records, all_match })
}
