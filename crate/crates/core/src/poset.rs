//! Increasing weighted posets, their ancestral sets, and the poset block
//! structures they induce on Z_n.
//!
//! Nodes are 0-based in the API. The JSON and DOT renderings number nodes
//! from 1.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{self, gcd};
use crate::error::{Error, Result};
use crate::lattice::DivisorLattice;

/// A set of poset nodes as a bit mask (at most 64 nodes).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct NodeSet(pub u64);

impl NodeSet {
    pub fn empty() -> Self {
        NodeSet(0)
    }

    pub fn full(r: usize) -> Self {
        NodeSet(if r == 64 { u64::MAX } else { (1u64 << r) - 1 })
    }

    pub fn from_nodes(nodes: impl IntoIterator<Item = usize>) -> Self {
        NodeSet(nodes.into_iter().fold(0, |acc, i| acc | 1 << i))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        NodeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        NodeSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement(self, r: usize) -> Self {
        NodeSet(!self.0 & NodeSet::full(r).0)
    }

    pub fn nodes(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedPoset {
    leq: Vec<Vec<bool>>,
    weights: Vec<u64>,
}

const MAX_NODES: usize = 64;

impl WeightedPoset {
    /// Builds the poset generated by the strict relations `i ≺ j` and checks
    /// that it is increasing, that every weight is at least 2, and that
    /// incomparable nodes carry coprime weights.
    pub fn new(weights: Vec<u64>, relations: &[(usize, usize)]) -> Result<Self> {
        let r = weights.len();
        if r == 0 || r > MAX_NODES {
            return Err(Error::InvalidPoset(format!("{r} nodes (need 1..={MAX_NODES})")));
        }
        let mut leq = vec![vec![false; r]; r];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(i, j) in relations {
            if i >= r || j >= r {
                return Err(Error::InvalidPoset(format!("relation ({i}, {j}) names a missing node")));
            }
            leq[i][j] = true;
        }
        for k in 0..r {
            for i in 0..r {
                if leq[i][k] {
                    for j in 0..r {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                if leq[i][j] && i > j {
                    return Err(Error::InvalidPoset(format!(
                        "node {} precedes node {}: not increasing (or not antisymmetric)",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let mut product: u64 = 1;
        for (i, &w) in weights.iter().enumerate() {
            if w < 2 {
                return Err(Error::InvalidPoset(format!("weight of node {} is {w} < 2", i + 1)));
            }
            product = product
                .checked_mul(w)
                .filter(|&p| p <= arith::MAX_MODULUS)
                .ok_or(Error::TooLarge {
                    what: "product of weights",
                    value: u64::MAX,
                    bound: arith::MAX_MODULUS,
                })?;
        }
        for i in 0..r {
            for j in i + 1..r {
                if !leq[i][j] && gcd(weights[i], weights[j]) != 1 {
                    return Err(Error::InvalidPoset(format!(
                        "incomparable nodes {} and {} have weights {} and {} with a common factor",
                        i + 1,
                        j + 1,
                        weights[i],
                        weights[j]
                    )));
                }
            }
        }
        Ok(WeightedPoset { leq, weights })
    }

    pub fn chain(weights: Vec<u64>) -> Result<Self> {
        let rel: Vec<(usize, usize)> = (1..weights.len()).map(|i| (i - 1, i)).collect();
        Self::new(weights, &rel)
    }

    pub fn antichain(weights: Vec<u64>) -> Result<Self> {
        Self::new(weights, &[])
    }

    /// The poset N: 1 ≺ 3, 2 ≺ 3, 2 ≺ 4 (1-based).
    pub fn n_shape(weights: [u64; 4]) -> Result<Self> {
        Self::new(weights.to_vec(), &[(0, 2), (1, 2), (1, 3)])
    }

    pub fn size(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// `n = n_1 ⋯ n_r`.
    pub fn modulus(&self) -> u64 {
        self.weights.iter().product()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq[i][j]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq[i][j] || self.leq[j][i]
    }

    /// All strict relations `i ≺ j`.
    pub fn strict_relations(&self) -> Vec<(usize, usize)> {
        let r = self.size();
        (0..r)
            .flat_map(|i| (0..r).map(move |j| (i, j)))
            .filter(|&(i, j)| self.lt(i, j))
            .collect()
    }

    pub fn covering_relations(&self) -> Vec<(usize, usize)> {
        let r = self.size();
        self.strict_relations()
            .into_iter()
            .filter(|&(i, j)| !(0..r).any(|k| self.lt(i, k) && self.lt(k, j)))
            .collect()
    }

    /// `A_i = { j : i ≺ j }`.
    pub fn strict_up(&self, i: usize) -> NodeSet {
        NodeSet::from_nodes((0..self.size()).filter(|&j| self.lt(i, j)))
    }

    /// Up-closed: `i ∈ J` and `i ⪯ j` imply `j ∈ J`.
    pub fn is_ancestral(&self, set: NodeSet) -> bool {
        set.nodes().all(|i| self.strict_up(i).is_subset(set))
    }

    pub fn ancestral_sets(&self) -> AncestralFamily {
        let r = self.size();
        let mut out = Vec::new();
        // Increasing labels put every strict upper bound of i after i, so
        // deciding nodes from the top down never hits a dead end.
        fn walk(p: &WeightedPoset, i: usize, cur: NodeSet, out: &mut Vec<NodeSet>) {
            if i == 0 {
                out.push(cur);
                return;
            }
            let node = i - 1;
            walk(p, node, cur, out);
            if p.strict_up(node).is_subset(cur) {
                let mut with = cur;
                with.insert(node);
                walk(p, node, with, out);
            }
        }
        walk(self, r, NodeSet::empty(), &mut out);
        out.sort_by_key(|s| (s.len(), s.nodes().collect::<Vec<_>>()));
        AncestralFamily { sets: out }
    }

    /// `Π_{j ∉ J} n_j`.
    pub fn complement_product(&self, set: NodeSet) -> u64 {
        set.complement(self.size()).nodes().map(|j| self.weights[j]).product()
    }

    /// The sublattice `{ Π_{j ∉ J} n_j : J ancestral }` of L(n).
    pub fn to_lattice(&self) -> Result<DivisorLattice> {
        let fam = self.ancestral_sets();
        let elements: Vec<u64> = fam.sets.iter().map(|&j| self.complement_product(j)).collect();
        DivisorLattice::new(self.modulus(), elements)
    }

    /// Inverse of [`WeightedPoset::to_lattice`]. The new node of each
    /// recursion step is appended last, above exactly the nodes outside the
    /// ancestral set whose complement product is `m ∧ s`.
    pub fn from_lattice(lattice: &DivisorLattice) -> Result<Self> {
        let n = lattice.modulus();
        if n < 2 {
            return Err(Error::InvalidInput("a weighted poset needs n ≥ 2".into()));
        }
        if lattice.is_trivial() {
            return WeightedPoset::new(vec![n], &[]);
        }
        let m = lattice.chosen_maximal().expect("nontrivial lattice");
        let inner = WeightedPoset::from_lattice(&lattice.below(m)?)?;
        let s = *lattice.elements().iter().find(|&&x| !m.is_multiple_of(x)).expect("n does not divide m");
        let meet = gcd(m, s);
        let fam = inner.ancestral_sets();
        let j_star = fam
            .sets
            .iter()
            .copied()
            .find(|&j| inner.complement_product(j) == meet)
            .ok_or_else(|| Error::Inconsistency(format!("no ancestral set with complement product {meet}")))?;
        let r = inner.size();
        let mut relations = inner.strict_relations();
        relations.extend((0..r).filter(|&x| !j_star.contains(x)).map(|x| (x, r)));
        let mut weights = inner.weights.clone();
        weights.push(n / m);
        WeightedPoset::new(weights, &relations)
    }

    /// Coefficients `c_i = Π_{j ⋠ i} n_j` of the point bijection
    /// `(x_i) ↦ Σ c_i x_i mod n`.
    pub fn map_coefficients(&self) -> Vec<u64> {
        let r = self.size();
        (0..r)
            .map(|i| (0..r).filter(|&j| !self.leq(j, i)).map(|j| self.weights[j]).product())
            .collect()
    }

    pub fn weak_iso_map(&self) -> WeakIsoMap {
        WeakIsoMap {
            modulus: self.modulus(),
            weights: self.weights.clone(),
            coefficients: self.map_coefficients(),
        }
    }

    /// Image on Z_n of the partition "agree on every coordinate in `J`".
    pub fn block_partition(&self, set: NodeSet) -> Result<PartitionOfZn> {
        if !self.is_ancestral(set) {
            return Err(Error::NotAncestral(set.nodes().collect()));
        }
        let map = self.weak_iso_map();
        let n = self.modulus() as usize;
        let mut key_of = vec![0usize; n];
        for idx in 0..n {
            let tuple = map.tuple_of(idx);
            // mixed-radix key over the coordinates in J only
            let key = set
                .nodes()
                .fold(0usize, |acc, j| acc * self.weights[j] as usize + tuple[j]);
            key_of[map.apply(&tuple)] = key;
        }
        Ok(PartitionOfZn::from_labels(n, &key_of))
    }

    /// An induced copy of N as `[a, b, c, d]` with `a ≺ c`, `b ≺ c`,
    /// `b ≺ d` and no other relations among them.
    pub fn find_n_subposet(&self) -> Option<[usize; 4]> {
        let r = self.size();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    for d in 0..r {
                        let q = [a, b, c, d];
                        let distinct = (0..4).all(|i| (i + 1..4).all(|j| q[i] != q[j]));
                        if !distinct {
                            continue;
                        }
                        let want = [(0, 2), (1, 2), (1, 3)];
                        let ok = (0..4).all(|i| {
                            (0..4).all(|j| i == j || self.lt(q[i], q[j]) == want.contains(&(i, j)))
                        });
                        if ok {
                            return Some(q);
                        }
                    }
                }
            }
        }
        None
    }

    /// Weighted-poset isomorphism by brute force over node permutations.
    pub fn is_isomorphic(&self, other: &WeightedPoset) -> bool {
        let r = self.size();
        if r != other.size() {
            return false;
        }
        let mut sorted_a = self.weights.clone();
        let mut sorted_b = other.weights.clone();
        sorted_a.sort_unstable();
        sorted_b.sort_unstable();
        if sorted_a != sorted_b {
            return false;
        }
        fn extend(a: &WeightedPoset, b: &WeightedPoset, image: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let i = image.len();
            if i == a.size() {
                return true;
            }
            for j in 0..b.size() {
                if used[j] || a.weights[i] != b.weights[j] {
                    continue;
                }
                let consistent = (0..i).all(|k| {
                    a.leq(k, i) == b.leq(image[k], j) && a.leq(i, k) == b.leq(j, image[k])
                });
                if consistent {
                    used[j] = true;
                    image.push(j);
                    if extend(a, b, image, used) {
                        return true;
                    }
                    image.pop();
                    used[j] = false;
                }
            }
            false
        }
        extend(self, other, &mut Vec::new(), &mut vec![false; r])
    }

    /// Hasse diagram in DOT; node labels are 1-based with the weight beside.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=circle];\n");
        for (i, w) in self.weights.iter().enumerate() {
            s.push_str(&format!("  \"{}\" [xlabel=\"n={w}\"];\n", i + 1));
        }
        for (i, j) in self.covering_relations() {
            s.push_str(&format!("  \"{}\" -> \"{}\" [arrowhead=none];\n", i + 1, j + 1));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            r: self.size(),
            relations: self.strict_relations().into_iter().map(|(i, j)| [i + 1, j + 1]).collect(),
            weights: self.weights.clone(),
        }
    }

    pub fn from_json(json: &PosetJson) -> Result<Self> {
        if json.weights.len() != json.r {
            return Err(Error::InvalidPoset("r does not match the number of weights".into()));
        }
        let rel: Vec<(usize, usize)> = json
            .relations
            .iter()
            .map(|&[i, j]| {
                if i == 0 || j == 0 {
                    Err(Error::InvalidPoset("nodes are numbered from 1".into()))
                } else {
                    Ok((i - 1, j - 1))
                }
            })
            .collect::<Result<_>>()?;
        WeightedPoset::new(json.weights.clone(), &rel)
    }
}

impl fmt::Display for WeightedPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel: Vec<String> = self
            .covering_relations()
            .iter()
            .map(|(i, j)| format!("{}≺{}", i + 1, j + 1))
            .collect();
        let w: Vec<String> = self.weights.iter().map(u64::to_string).collect();
        write!(f, "{{{}}} weights ({})", rel.join(", "), w.join(","))
    }
}

/// 1-based JSON form: `{ "r", "relations": [[i, j], ..], "weights": [..] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub r: usize,
    pub relations: Vec<[usize; 2]>,
    pub weights: Vec<u64>,
}

/// All ancestral sets of a poset, ordered by size and then by members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AncestralFamily {
    sets: Vec<NodeSet>,
}

impl AncestralFamily {
    pub fn sets(&self) -> &[NodeSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, set: NodeSet) -> bool {
        self.sets.contains(&set)
    }
}

/// Point bijection `Π [n_i] → Z_n`, `(x_i) ↦ Σ c_i x_i mod n`, with 0-based
/// coordinates. Tuples are indexed in mixed radix, coordinate 0 least
/// significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakIsoMap {
    modulus: u64,
    weights: Vec<u64>,
    coefficients: Vec<u64>,
}

impl WeakIsoMap {
    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn apply(&self, tuple: &[usize]) -> usize {
        let n = self.modulus as u128;
        let sum: u128 = tuple
            .iter()
            .zip(&self.coefficients)
            .map(|(&x, &c)| x as u128 * c as u128)
            .sum();
        (sum % n) as usize
    }

    pub fn tuple_of(&self, mut index: usize) -> Vec<usize> {
        self.weights
            .iter()
            .map(|&w| {
                let x = index % w as usize;
                index /= w as usize;
                x
            })
            .collect()
    }

    pub fn index_of(&self, tuple: &[usize]) -> usize {
        tuple
            .iter()
            .zip(&self.weights)
            .rev()
            .fold(0, |acc, (&x, &w)| acc * w as usize + x)
    }

    /// `table[index] = f(tuple_of(index))`.
    pub fn table(&self) -> Vec<usize> {
        (0..self.modulus as usize).map(|i| self.apply(&self.tuple_of(i))).collect()
    }

    pub fn is_bijection(&self) -> bool {
        let n = self.modulus as usize;
        let mut seen = vec![false; n];
        for y in self.table() {
            if std::mem::replace(&mut seen[y], true) {
                return false;
            }
        }
        true
    }
}

/// A partition of Z_n; blocks sorted internally and by minimum element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionOfZn {
    modulus: usize,
    blocks: Vec<Vec<usize>>,
}

impl PartitionOfZn {
    pub fn from_blocks(modulus: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; modulus];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            b.sort_unstable();
            for &x in b.iter() {
                if x >= modulus || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidPartition(format!("{x} is repeated or out of range")));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidPartition("blocks do not cover Z_n".into()));
        }
        blocks.sort();
        Ok(PartitionOfZn { modulus, blocks })
    }

    fn from_labels<T: Eq + std::hash::Hash + Copy>(modulus: usize, labels: &[T]) -> Self {
        let mut index = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (x, l) in labels.iter().enumerate() {
            let next = index.len();
            let b = *index.entry(*l).or_insert(next);
            if b == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[b].push(x);
        }
        PartitionOfZn { modulus, blocks }
    }

    /// Cosets of the subgroup of order `d`.
    pub fn cosets(modulus: usize, d: u64) -> Result<Self> {
        if d == 0 || !(modulus as u64).is_multiple_of(d) {
            return Err(Error::NotADivisor { value: d, modulus: modulus as u64 });
        }
        let step = modulus / d as usize;
        let labels: Vec<usize> = (0..modulus).map(|x| x % step).collect();
        Ok(Self::from_labels(modulus, &labels))
    }

    pub fn equality(modulus: usize) -> Self {
        PartitionOfZn { modulus, blocks: (0..modulus).map(|x| vec![x]).collect() }
    }

    pub fn universal(modulus: usize) -> Self {
        PartitionOfZn { modulus, blocks: vec![(0..modulus).collect()] }
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn is_uniform(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == self.blocks[0].len())
    }

    fn block_index(&self) -> Vec<usize> {
        let mut out = vec![0; self.modulus];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                out[x] = i;
            }
        }
        out
    }

    /// Whether the 0/1 relation matrices commute.
    pub fn is_orthogonal_to(&self, other: &PartitionOfZn) -> Result<bool> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus as u64, other.modulus as u64));
        }
        let (be, bf) = (self.block_index(), other.block_index());
        // (A_E A_F)[x][y] = |E(x) ∩ F(y)|
        let mut meet = vec![vec![0u32; other.blocks.len()]; self.blocks.len()];
        for x in 0..self.modulus {
            meet[be[x]][bf[x]] += 1;
        }
        Ok((0..self.modulus).all(|x| (0..self.modulus).all(|y| meet[be[x]][bf[y]] == meet[be[y]][bf[x]])))
    }
}

/// `L_1 ⊗_d L_2 = L_2 ∪ { l_1 l_2 : l_1 ∈ L_1, l_2 ∈ L_2, d | l_2 }` on
/// `n_1 n_2`, defined when `d ∈ L_2` and `gcd(n_1, n_2 / d) = 1`.
pub fn crested_product(first: &DivisorLattice, d: u64, second: &DivisorLattice) -> Result<DivisorLattice> {
    if !second.contains(d) {
        return Err(Error::CrestedNotMember { d });
    }
    let (n1, n2) = (first.modulus(), second.modulus());
    let g = gcd(n1, n2 / d);
    if g != 1 {
        return Err(Error::CrestedNotCoprime { n1, n2, d, g });
    }
    let n = n1.checked_mul(n2).ok_or(Error::TooLarge {
        what: "modulus",
        value: u64::MAX,
        bound: arith::MAX_MODULUS,
    })?;
    let mut out: Vec<u64> = second.elements().to_vec();
    for &l1 in first.elements() {
        for &l2 in second.elements() {
            if l2 % d == 0 {
                out.push(l1 * l2);
            }
        }
    }
    DivisorLattice::new(n, out).map_err(|e| Error::Inconsistency(format!("crested product: {e}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Simplicity {
    pub simple: bool,
    /// Nodes (0-based) of an induced N when not simple.
    pub certificate: Option<[usize; 4]>,
}

/// Simple (buildable by crossing and nesting alone) iff the lattice's poset
/// has no induced N.
pub fn is_simple_lattice(lattice: &DivisorLattice) -> Result<Simplicity> {
    if lattice.modulus() == 1 {
        return Ok(Simplicity { simple: true, certificate: None });
    }
    let cert = WeightedPoset::from_lattice(lattice)?.find_n_subposet();
    Ok(Simplicity { simple: cert.is_none(), certificate: cert })
}

/// Whether `n` is `p^e`, `p^e q` or `pqr` for distinct primes.
pub fn simple_reduction_applies(n: u64) -> Result<bool> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("simplicity test needs n ≥ 2, got {n}")));
    }
    let f = arith::factorize(n);
    let exps: Vec<u32> = f.values().copied().collect();
    Ok(match exps.len() {
        1 => true,
        2 => exps.contains(&1),
        3 => exps.iter().all(|&e| e == 1),
        _ => false,
    })
}
