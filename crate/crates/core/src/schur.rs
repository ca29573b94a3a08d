//! Schur rings over Z_n, represented by their partition into basic sets.
//!
//! The S-ring generated by a set is computed by convolution-fingerprint
//! refinement: a class splits whenever two of its elements `x`, `y` see a
//! different number of decompositions `x = a + b` over some ordered pair of
//! classes. The coarsest stable refinement of the starting partition is the
//! basic-set partition of the generated S-ring.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::lattice::DivisorLattice;
use crate::zn::{self, ZnSubset};

type Fingerprint = Vec<(u32, u32, u32)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurRing {
    modulus: usize,
    basic_sets: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl SchurRing {
    /// Builds an S-ring from an explicit partition, checking the axioms.
    pub fn from_partition(modulus: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        let n = modulus;
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        let mut class_of = vec![usize::MAX; n];
        for (i, set) in sets.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::InvalidSchurRing("empty basic set".into()));
            }
            for &x in set {
                if x >= n {
                    return Err(Error::InvalidSchurRing(format!("{x} is not a residue mod {n}")));
                }
                if class_of[x] != usize::MAX {
                    return Err(Error::InvalidSchurRing(format!("{x} lies in two basic sets")));
                }
                class_of[x] = i;
            }
        }
        if let Some(x) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidSchurRing(format!("{x} is not covered")));
        }
        let ring = Self::from_labels(n, &class_of);
        if ring.basic_sets[0] != [0] {
            return Err(Error::InvalidSchurRing("{0} is not a basic set".into()));
        }
        for set in &ring.basic_sets {
            let neg = ring.class_of[(n - set[0]) % n];
            if set.iter().any(|&x| ring.class_of[(n - x) % n] != neg) || ring.basic_sets[neg].len() != set.len() {
                return Err(Error::InvalidSchurRing(format!(
                    "the negative of the basic set containing {} is not a basic set",
                    set[0]
                )));
            }
        }
        let prints = fingerprints(n, &ring.class_of);
        for set in &ring.basic_sets {
            if set.iter().any(|&x| prints[x] != prints[set[0]]) {
                return Err(Error::InvalidSchurRing(format!(
                    "products are not constant on the basic set containing {}",
                    set[0]
                )));
            }
        }
        Ok(ring)
    }

    /// The S-ring generated by `s`. Zero is split off; `s` need not be
    /// symmetric.
    pub fn generate(s: &ZnSubset) -> Self {
        let n = s.modulus();
        let member = s.indicator();
        let mut labels: Vec<usize> = (0..n)
            .map(|x| {
                if x == 0 {
                    0
                } else {
                    1 + usize::from(member[x]) + 2 * usize::from(member[(n - x) % n])
                }
            })
            .collect();
        let mut classes = count_classes(&labels);
        loop {
            let prints = fingerprints(n, &labels);
            let mut ids: HashMap<(usize, &Fingerprint), usize> = HashMap::new();
            let next: Vec<usize> = (0..n)
                .map(|x| {
                    let fresh = ids.len();
                    *ids.entry((labels[x], &prints[x])).or_insert(fresh)
                })
                .collect();
            let count = ids.len();
            labels = next;
            if count == classes {
                break;
            }
            classes = count;
        }
        Self::from_labels(n, &labels)
    }

    // Canonical form: classes ordered by their minimum element.
    fn from_labels(n: usize, labels: &[usize]) -> Self {
        let mut remap: HashMap<usize, usize> = HashMap::new();
        let mut basic_sets: Vec<Vec<usize>> = Vec::new();
        let mut class_of = vec![0; n];
        for x in 0..n {
            let next = remap.len();
            let c = *remap.entry(labels[x]).or_insert(next);
            if c == basic_sets.len() {
                basic_sets.push(Vec::new());
            }
            basic_sets[c].push(x);
            class_of[x] = c;
        }
        SchurRing { modulus: n, basic_sets, class_of }
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.basic_sets.len()
    }

    pub fn basic_sets(&self) -> &[Vec<usize>] {
        &self.basic_sets
    }

    /// Index of the basic set containing `x`.
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x % self.modulus]
    }

    pub fn class_labels(&self) -> &[usize] {
        &self.class_of
    }

    /// Index `j` with `-T_i = T_j`.
    pub fn transpose_index(&self, i: usize) -> usize {
        let x = self.basic_sets[i][0];
        self.class_of[(self.modulus - x) % self.modulus]
    }

    /// `p^k_{i,j}`: the number of ways a fixed `x ∈ T_k` is `a + b` with
    /// `a ∈ T_i`, `b ∈ T_j`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> u32 {
        let n = self.modulus;
        let x = self.basic_sets[k][0];
        self.basic_sets[i]
            .iter()
            .filter(|&&a| self.class_of[(x + n - a) % n] == j)
            .count() as u32
    }

    /// All structure constants, indexed `[i][j][k]`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<u32>>> {
        let r = self.rank();
        let n = self.modulus;
        let mut out = vec![vec![vec![0u32; r]; r]; r];
        for (k, set) in self.basic_sets.iter().enumerate() {
            let x = set[0];
            for a in 0..n {
                out[self.class_of[a]][self.class_of[(x + n - a) % n]][k] += 1;
            }
        }
        out
    }

    /// Every basic set is a union of orbit sets `(Z_n)_d`.
    pub fn is_rational(&self) -> bool {
        let n = self.modulus as u64;
        let mut label_of_gcd: HashMap<u64, usize> = HashMap::new();
        (0..self.modulus).all(|x| {
            let d = gcd(x as u64, n);
            *label_of_gcd.entry(d).or_insert(self.class_of[x]) == self.class_of[x]
        })
    }

    /// Whether `set` is a union of basic sets.
    pub fn contains_set(&self, set: &ZnSubset) -> bool {
        set.iter().all(|x| self.basic_sets[self.class_of[x]].iter().all(|&y| set.contains(y)))
    }

    /// The lattice of all `l` with `Z_l` a union of basic sets, bundled
    /// with the ring. Fails for non-rational rings.
    pub fn group_basis(&self) -> Result<RationalSRing> {
        if !self.is_rational() {
            return Err(Error::NotRational(format!(
                "the S-ring over Z_{} has a basic set that is not a union of orbit sets",
                self.modulus
            )));
        }
        let n = self.modulus as u64;
        let mut members = Vec::new();
        for l in crate::arith::divisors(n)? {
            if self.contains_set(&zn::subgroup(self.modulus, l)?) {
                members.push(l);
            }
        }
        let lattice = DivisorLattice::new(n, members)
            .map_err(|e| Error::Inconsistency(format!("subgroups of a rational S-ring: {e}")))?;
        let rebuilt = RationalSRing::from_lattice(&lattice)?;
        if rebuilt.ring != *self {
            return Err(Error::Inconsistency(format!(
                "basic sets differ from the sets Ẑ_l of lattice {lattice}"
            )));
        }
        Ok(rebuilt)
    }

    pub fn to_json(&self) -> SRingJson {
        SRingJson {
            n: self.modulus,
            rank: self.rank(),
            basic_sets: self.basic_sets.clone(),
            rational: self.is_rational(),
            group_basis: self.group_basis().ok().map(|r| r.lattice().elements().to_vec()),
        }
    }
}

/// Per-element convolution fingerprint: the classes of `x` and `-x`
/// followed by the run-length encoded multiset of class pairs
/// `(class(a), class(x - a))`.
fn fingerprints(n: usize, labels: &[usize]) -> Vec<Fingerprint> {
    (0..n)
        .into_par_iter()
        .map(|x| {
            let mut pairs: Vec<(u32, u32)> = (0..n)
                .map(|a| (labels[a] as u32, labels[(x + n - a) % n] as u32))
                .collect();
            pairs.sort_unstable();
            let mut out: Fingerprint = Vec::with_capacity(pairs.len() + 1);
            out.push((labels[x] as u32, labels[(n - x) % n] as u32, 0));
            for p in pairs {
                let runs = out.len() > 1;
                match out.last_mut() {
                    Some(last) if runs && (last.0, last.1) == p => last.2 += 1,
                    _ => out.push((p.0, p.1, 1)),
                }
            }
            out
        })
        .collect()
}

fn count_classes(labels: &[usize]) -> usize {
    labels.iter().collect::<BTreeSet<_>>().len()
}

/// A rational S-ring together with its group basis lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSRing {
    ring: SchurRing,
    lattice: DivisorLattice,
    // basic-set index of Ẑ_l, parallel to the lattice elements
    hat_index: Vec<usize>,
}

impl RationalSRing {
    /// The rational S-ring with basic sets `Ẑ_l = Z_l \ ⋃_{d ∈ L, d | l, d < l} Z_d`.
    pub fn from_lattice(lattice: &DivisorLattice) -> Result<Self> {
        let n = lattice.modulus() as usize;
        let sets = hat_sets(lattice)?;
        let ring = SchurRing::from_partition(n, sets.clone())?;
        let hat_index = sets.iter().map(|s| ring.class_of(s[0])).collect();
        Ok(RationalSRing {
            ring,
            lattice: lattice.clone(),
            hat_index,
        })
    }

    pub fn ring(&self) -> &SchurRing {
        &self.ring
    }

    pub fn lattice(&self) -> &DivisorLattice {
        &self.lattice
    }

    /// The basic set `Ẑ_l`.
    pub fn hat(&self, l: u64) -> Result<&[usize]> {
        let pos = self
            .lattice
            .elements()
            .binary_search(&l)
            .map_err(|_| Error::NotInLattice { value: l })?;
        Ok(&self.ring.basic_sets[self.hat_index[pos]])
    }

    /// Lattice element labelling each basic set, in basic-set order.
    pub fn labels(&self) -> Vec<u64> {
        let mut out = vec![0; self.ring.rank()];
        for (pos, &idx) in self.hat_index.iter().enumerate() {
            out[idx] = self.lattice.elements()[pos];
        }
        out
    }
}

fn hat_sets(lattice: &DivisorLattice) -> Result<Vec<Vec<usize>>> {
    let n = lattice.modulus() as usize;
    let mut out = Vec::with_capacity(lattice.len());
    for &l in lattice.elements() {
        let z = zn::subgroup(n, l)?;
        let smaller: Vec<ZnSubset> = lattice
            .elements()
            .iter()
            .filter(|&&d| d < l && l % d == 0)
            .map(|&d| zn::subgroup(n, d))
            .collect::<Result<_>>()?;
        out.push(z.iter().filter(|&x| !smaller.iter().any(|s| s.contains(x))).collect());
    }
    Ok(out)
}

/// A trace-closed set `S` with `⟨⟨S⟩⟩` having group basis `lattice`, built
/// recursively as `S = R ∪ Ẑ_s` over the chosen maximal `m` and the smallest
/// `s ∉ L_⊆m`. The result is checked by regenerating its S-ring.
pub fn generator_subset(lattice: &DivisorLattice) -> Result<ZnSubset> {
    let s = generator_subset_unchecked(lattice)?;
    let got = SchurRing::generate(&s).group_basis()?;
    if got.lattice() != lattice {
        return Err(Error::Inconsistency(format!(
            "generator subset {s} regenerates {} instead of {lattice}",
            got.lattice()
        )));
    }
    Ok(s)
}

fn generator_subset_unchecked(lattice: &DivisorLattice) -> Result<ZnSubset> {
    let n = lattice.modulus() as usize;
    if n == 1 {
        return ZnSubset::new(1, []);
    }
    let m = lattice.chosen_maximal().expect("lattice on n > 1 has two elements");
    let inner = generator_subset_unchecked(&lattice.below(m)?)?;
    let scale = n / m as usize;
    let mut r: BTreeSet<usize> = inner.iter().map(|x| x * scale).collect();

    let s = *lattice
        .elements()
        .iter()
        .find(|&&x| !m.is_multiple_of(x))
        .expect("n itself does not divide m");
    let meet = gcd(m, s);
    let z_s = zn::subgroup(n, s)?;
    let z_meet = zn::subgroup(n, meet)?;
    let hat_s: BTreeSet<usize> = z_s.iter().filter(|&x| !z_meet.contains(x)).collect();

    // Z_m must be recoverable from S: from R when s < n, from the
    // complement of S when s = n. Otherwise R is swapped for its complement
    // in Z_m \ {0}.
    let z_m = zn::subgroup(n, m)?;
    let generators_of_z_m = zn::orbit_set(n, (n as u64) / m)?;
    let meets = |set: &BTreeSet<usize>| generators_of_z_m.iter().any(|g| set.contains(&g));
    let complement: BTreeSet<usize> = z_m.iter().filter(|&x| x != 0 && !r.contains(&x)).collect();
    let switch = if s < n as u64 {
        !meets(&r)
    } else {
        let rest: BTreeSet<usize> = z_m.iter().filter(|x| !r.contains(x)).collect();
        !meets(&rest)
    };
    if switch {
        r = complement;
    }
    ZnSubset::new(n, r.into_iter().chain(hat_s))
}

/// JSON rendering of an S-ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SRingJson {
    pub n: usize,
    pub rank: usize,
    pub basic_sets: Vec<Vec<usize>>,
    pub rational: bool,
    pub group_basis: Option<Vec<u64>>,
}
