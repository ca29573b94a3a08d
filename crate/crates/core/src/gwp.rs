//! Generalized wreath products of symmetric groups over a weighted poset.
//!
//! Points of the product set are tuples `(x_0, …, x_{r−1})` with
//! `x_i < n_i`, indexed in mixed radix with coordinate 0 least significant.

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::arith::Factored;
use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup, UnionFind};
use crate::poset::{NodeSet, WeightedPoset};
use crate::schur::RationalSRing;

/// Degree bound for materializing generators.
pub const DEFAULT_GENERATOR_BOUND: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedWreathProduct {
    poset: WeightedPoset,
    exponents: Vec<u64>,
    order: Factored,
}

impl GeneralizedWreathProduct {
    pub fn new(poset: WeightedPoset) -> Self {
        let exponents: Vec<u64> = (0..poset.size())
            .map(|i| poset.strict_up(i).nodes().map(|j| poset.weights()[j]).product())
            .collect();
        let order = poset
            .weights()
            .iter()
            .zip(&exponents)
            .map(|(&w, &m)| Factored::factorial(w).pow(m))
            .product();
        GeneralizedWreathProduct { poset, exponents, order }
    }

    pub fn poset(&self) -> &WeightedPoset {
        &self.poset
    }

    /// `m_i = Π_{i ≺ j} n_j` (1 when nothing lies above `i`).
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// `Π (n_i!)^{m_i}`.
    pub fn order(&self) -> &Factored {
        &self.order
    }

    pub fn degree(&self) -> u64 {
        self.poset.modulus()
    }

    fn check_degree(&self, bound: usize) -> Result<usize> {
        let n = self.degree();
        if n > bound as u64 {
            return Err(Error::TooLarge { what: "degree for generators", value: n, bound: bound as u64 });
        }
        Ok(n as usize)
    }

    /// For each node `i`, each assignment `u` to the coordinates above `i`,
    /// and each adjacent transposition `(t t+1)` of `S_{n_i}`: swap `t` and
    /// `t+1` in coordinate `i` on exactly the tuples that agree with `u`
    /// above `i`.
    pub fn generators(&self, bound: usize) -> Result<Vec<Permutation>> {
        let n = self.check_degree(bound)?;
        let w = self.poset.weights();
        let r = w.len();
        let stride: Vec<usize> = (0..r)
            .scan(1usize, |acc, i| {
                let s = *acc;
                *acc *= w[i] as usize;
                Some(s)
            })
            .collect();
        let mut out = Vec::new();
        for i in 0..r {
            let above: Vec<usize> = self.poset.strict_up(i).nodes().collect();
            let patterns = self.exponents[i] as usize;
            for pattern in 0..patterns {
                // decode the pattern over the coordinates above i
                let mut rest = pattern;
                let u: Vec<(usize, usize)> = above
                    .iter()
                    .map(|&j| {
                        let x = rest % w[j] as usize;
                        rest /= w[j] as usize;
                        (j, x)
                    })
                    .collect();
                for t in 0..w[i] as usize - 1 {
                    let mut images: Vec<usize> = (0..n).collect();
                    for (idx, img) in images.iter_mut().enumerate() {
                        let coord = |j: usize| idx / stride[j] % w[j] as usize;
                        if u.iter().all(|&(j, x)| coord(j) == x) {
                            let xi = coord(i);
                            if xi == t {
                                *img = idx + stride[i];
                            } else if xi == t + 1 {
                                *img = idx - stride[i];
                            }
                        }
                    }
                    out.push(Permutation::from_images(images).expect("swap of two coordinates"));
                }
            }
        }
        Ok(out)
    }

    /// The generators moved to Z_n along the point bijection `f`:
    /// `g'(f(x)) = f(g(x))`.
    pub fn transported_generators(&self, bound: usize) -> Result<Vec<Permutation>> {
        let table = self.poset.weak_iso_map().table();
        let gens = self.generators(bound)?;
        Ok(gens
            .iter()
            .map(|g| {
                let mut images = vec![0; table.len()];
                for (idx, &fx) in table.iter().enumerate() {
                    images[fx] = table[g.apply(idx)];
                }
                Permutation::from_images(images).expect("conjugate of a permutation")
            })
            .collect())
    }

    /// The transported group on Z_n, after checking that every generator
    /// preserves every basic relation of the lattice's S-ring.
    pub fn group_on_zn(&self, bound: usize) -> Result<PermutationGroup> {
        let gens = self.transported_generators(bound)?;
        let ring = RationalSRing::from_lattice(&self.poset.to_lattice()?)?;
        check_automorphisms(&ring, &gens)?;
        PermutationGroup::new(self.degree() as usize, gens)
    }

    pub fn expression(&self) -> GroupExpression {
        GroupExpression::of_poset(&self.poset)
    }
}

/// Every `g` must satisfy `class(g(y) − g(x)) = class(y − x)`.
pub fn check_automorphisms(ring: &RationalSRing, gens: &[Permutation]) -> Result<()> {
    let n = ring.ring().modulus();
    let class = ring.ring().class_labels();
    gens.par_iter().enumerate().try_for_each(|(k, g)| {
        if g.degree() != n {
            return Err(Error::DegreeMismatch(n, g.degree()));
        }
        for x in 0..n {
            let gx = g.apply(x);
            for y in 0..n {
                let d = (y + n - x) % n;
                let gd = (g.apply(y) + n - gx) % n;
                if class[d] != class[gd] {
                    return Err(Error::Inconsistency(format!(
                        "generator {k} maps the pair ({x}, {y}) out of its basic relation"
                    )));
                }
            }
        }
        Ok(())
    })
}

/// Direct and wreath decompositions of the group, bottoming out at
/// symmetric groups or at a generalized-wreath descriptor for parts that do
/// not split.
///
/// Wreath chains list the top of the poset first: in `A ≀ C` the group `C`
/// appears once per point of `A`, so `|A ≀ C| = |A| · |C|^deg(A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupExpression {
    Symmetric(u64),
    Direct(Vec<GroupExpression>),
    Wreath(Vec<GroupExpression>),
    /// A part with an induced N; nodes are 1-based labels from the full
    /// poset, relations are covering pairs.
    Generalized { nodes: Vec<usize>, relations: Vec<(usize, usize)>, weights: Vec<u64> },
}

impl GroupExpression {
    pub fn of_poset(poset: &WeightedPoset) -> Self {
        Self::of_subset(poset, NodeSet::full(poset.size()))
    }

    fn of_subset(p: &WeightedPoset, set: NodeSet) -> Self {
        let nodes: Vec<usize> = set.nodes().collect();
        if nodes.len() == 1 {
            return GroupExpression::Symmetric(p.weights()[nodes[0]]);
        }
        let comp = components(&nodes, |a, b| p.comparable(a, b));
        if comp.len() > 1 {
            let mut parts: Vec<GroupExpression> = comp.into_iter().map(|c| Self::of_subset(p, c)).collect();
            parts.sort_by_key(|e| (e.degree(), e.to_string()));
            return GroupExpression::Direct(parts);
        }
        let mut comp = components(&nodes, |a, b| !p.comparable(a, b));
        if comp.len() > 1 {
            // series parts are totally ordered; put the top one first
            comp.sort_by(|&a, &b| {
                let (x, y) = (a.nodes().next().unwrap(), b.nodes().next().unwrap());
                if p.lt(y, x) {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                }
            });
            return GroupExpression::Wreath(comp.into_iter().map(|c| Self::of_subset(p, c)).collect());
        }
        let relations = p
            .covering_relations()
            .into_iter()
            .filter(|&(a, b)| set.contains(a) && set.contains(b))
            .map(|(a, b)| (a + 1, b + 1))
            .collect();
        GroupExpression::Generalized {
            nodes: nodes.iter().map(|i| i + 1).collect(),
            relations,
            weights: nodes.iter().map(|&i| p.weights()[i]).collect(),
        }
    }

    /// Degree of the natural action.
    pub fn degree(&self) -> u64 {
        match self {
            GroupExpression::Symmetric(n) => *n,
            GroupExpression::Direct(parts) | GroupExpression::Wreath(parts) => parts.iter().map(Self::degree).product(),
            GroupExpression::Generalized { weights, .. } => weights.iter().product(),
        }
    }

    /// Group order read off the expression tree.
    pub fn order(&self) -> Factored {
        match self {
            GroupExpression::Symmetric(n) => Factored::factorial(*n),
            GroupExpression::Direct(parts) => parts.iter().map(Self::order).product(),
            GroupExpression::Wreath(parts) => {
                // A_1 ≀ (A_2 ≀ …): the tail appears deg(A_1) times
                let (head, tail) = parts.split_first().expect("nonempty wreath");
                let rest = if tail.len() == 1 { tail[0].clone() } else { GroupExpression::Wreath(tail.to_vec()) };
                head.order() * rest.order().pow(head.degree())
            }
            GroupExpression::Generalized { nodes, relations, weights } => {
                let local = |label: usize| nodes.iter().position(|&x| x == label).expect("node in part");
                let rel: Vec<(usize, usize)> = relations.iter().map(|&(a, b)| (local(a), local(b))).collect();
                let p = WeightedPoset::new(weights.clone(), &rel).expect("subposet of a valid poset");
                GeneralizedWreathProduct::new(p).order
            }
        }
    }

    pub fn is_generalized(&self) -> bool {
        match self {
            GroupExpression::Symmetric(_) => false,
            GroupExpression::Direct(p) | GroupExpression::Wreath(p) => p.iter().any(Self::is_generalized),
            GroupExpression::Generalized { .. } => true,
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpression::Symmetric(_) | GroupExpression::Generalized { .. } => write!(f, "{self}"),
            _ => write!(f, "({self})"),
        }
    }
}

impl fmt::Display for GroupExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpression::Symmetric(n) => write!(f, "S_{n}"),
            GroupExpression::Direct(parts) | GroupExpression::Wreath(parts) => {
                let sep = if matches!(self, GroupExpression::Direct(_)) { " × " } else { " ≀ " };
                for (k, part) in parts.iter().enumerate() {
                    if k > 0 {
                        f.write_str(sep)?;
                    }
                    part.fmt_child(f)?;
                }
                Ok(())
            }
            GroupExpression::Generalized { relations, weights, nodes } => {
                let rel: Vec<String> = relations.iter().map(|(a, b)| format!("{a}≺{b}")).collect();
                let w: Vec<String> = nodes.iter().zip(weights).map(|(i, w)| format!("n_{i}={w}")).collect();
                write!(f, "GWP[{}; {}]", rel.join(", "), w.join(", "))
            }
        }
    }
}

impl Serialize for GroupExpression {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn components(nodes: &[usize], adjacent: impl Fn(usize, usize) -> bool) -> Vec<NodeSet> {
    let mut uf = UnionFind::new(nodes.len());
    for a in 0..nodes.len() {
        for b in a + 1..nodes.len() {
            if adjacent(nodes[a], nodes[b]) {
                uf.union(a, b);
            }
        }
    }
    uf.classes()
        .into_iter()
        .map(|c| NodeSet::from_nodes(c.into_iter().map(|k| nodes[k])))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{sublattices, DivisorLattice};
    use crate::poset::PartitionOfZn;

    fn n_shape() -> WeightedPoset {
        WeightedPoset::n_shape([3, 2, 3, 2]).unwrap()
    }

    #[test]
    fn order_examples() {
        let g = GeneralizedWreathProduct::new(n_shape());
        assert_eq!(g.order().to_string(), "2^11 · 3^4");
        assert_eq!(g.order().to_u64(), Some(165_888));
        assert_eq!(g.exponents(), &[3, 6, 1, 1]);
        let single = GeneralizedWreathProduct::new(WeightedPoset::antichain(vec![7]).unwrap());
        assert_eq!(single.order(), &Factored::factorial(7));
        let chain = GeneralizedWreathProduct::new(WeightedPoset::chain(vec![3, 2]).unwrap());
        assert_eq!(chain.exponents(), &[2, 1]);
        assert_eq!(chain.order().to_u64(), Some(72));
    }

    #[test]
    fn generated_orders() {
        let anti = GeneralizedWreathProduct::new(WeightedPoset::antichain(vec![2, 3]).unwrap());
        let gens = anti.generators(DEFAULT_GENERATOR_BOUND).unwrap();
        assert_eq!(gens.len(), 3);
        assert_eq!(PermutationGroup::new(6, gens).unwrap().order().to_u64(), Some(12));
        for p in [WeightedPoset::chain(vec![3, 2]).unwrap(), n_shape()] {
            let g = GeneralizedWreathProduct::new(p);
            let group = PermutationGroup::new(g.degree() as usize, g.generators(64).unwrap()).unwrap();
            assert_eq!(&group.order(), g.order());
        }
        assert!(GeneralizedWreathProduct::new(n_shape()).generators(20).is_err());
    }

    #[test]
    fn transport_examples() {
        let single = GeneralizedWreathProduct::new(WeightedPoset::antichain(vec![5]).unwrap());
        assert_eq!(single.transported_generators(64).unwrap(), single.generators(64).unwrap());
        assert_eq!(single.group_on_zn(64).unwrap().order(), Factored::factorial(5));

        let g = GeneralizedWreathProduct::new(n_shape());
        let group = g.group_on_zn(64).unwrap();
        assert_eq!(group.order().to_u64(), Some(165_888));
        // the 2-regular graph with connection set {6, 30}
        for s in group.generators() {
            for x in 0..36 {
                for d in [6, 30] {
                    let e = (s.apply((x + d) % 36) + 36 - s.apply(x)) % 36;
                    assert!(e == 6 || e == 30);
                }
            }
        }

        let chain = GeneralizedWreathProduct::new(WeightedPoset::chain(vec![3, 2]).unwrap());
        let parity = PartitionOfZn::from_blocks(6, vec![vec![0, 2, 4], vec![1, 3, 5]]).unwrap();
        for s in chain.transported_generators(64).unwrap() {
            for b in parity.blocks() {
                let img: Vec<usize> = b.iter().map(|&x| s.apply(x) % 2).collect();
                assert!(img.iter().all(|&y| y == img[0]));
            }
        }
    }

    #[test]
    fn generators_preserve_poset_blocks() {
        for n in 2..=24u64 {
            for l in sublattices(n).unwrap() {
                let p = WeightedPoset::from_lattice(&l).unwrap();
                let g = GeneralizedWreathProduct::new(p.clone());
                let gens = g.transported_generators(64).unwrap();
                for &j in p.ancestral_sets().sets() {
                    let part = p.block_partition(j).unwrap();
                    let mut block_of = vec![0; n as usize];
                    for (b, blk) in part.blocks().iter().enumerate() {
                        for &x in blk {
                            block_of[x] = b;
                        }
                    }
                    for s in &gens {
                        for x in 0..n as usize {
                            for y in 0..n as usize {
                                if block_of[x] == block_of[y] {
                                    assert_eq!(block_of[s.apply(x)], block_of[s.apply(y)]);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn expressions() {
        let e = |l: &[u64], n: u64| {
            GroupExpression::of_poset(&WeightedPoset::from_lattice(&DivisorLattice::new(n, l.to_vec()).unwrap()).unwrap())
        };
        assert_eq!(e(&[1, 3, 6], 6).to_string(), "S_2 ≀ S_3");
        assert_eq!(e(&[1, 2, 6], 6).to_string(), "S_3 ≀ S_2");
        assert_eq!(e(&[1, 2, 3, 6], 6).to_string(), "S_2 × S_3");
        assert_eq!(e(&[1, 6], 6).to_string(), "S_6");
        let mut chains: Vec<String> = [2, 3, 4, 6].iter().map(|&a| e(&[1, a, 12], 12).to_string()).collect();
        chains.sort();
        let mut want: Vec<String> = [2u64, 3, 4, 6].iter().map(|a| format!("S_{a} ≀ S_{}", 12 / a)).collect();
        want.sort();
        assert_eq!(chains, want);
        let striking = e(&[1, 2, 3, 4, 6, 12, 18, 36], 36);
        assert!(striking.is_generalized());
        assert_eq!(striking.to_string(), "GWP[1≺3, 2≺3, 2≺4; n_1=3, n_2=2, n_3=3, n_4=2]");
        assert_eq!(striking.order().to_u64(), Some(165_888));
        let nested = e(&[1, 2, 3, 6, 12], 12);
        assert_eq!(nested.to_string(), "S_2 ≀ (S_2 × S_3)");
    }

    #[test]
    fn expression_orders_agree() {
        for n in 2..=60u64 {
            for l in sublattices(n).unwrap() {
                let p = WeightedPoset::from_lattice(&l).unwrap();
                let g = GeneralizedWreathProduct::new(p.clone());
                let e = g.expression();
                assert_eq!(&e.order(), g.order(), "{l}");
                assert_eq!(e.degree(), n);
            }
        }
    }
}
