//! Permutations of {0, …, n−1} acting on the right, and permutation groups
//! with a deterministic stabilizer chain.
//!
//! `g.then(h)` is "first g, then h": `x^(gh) = (x^g)^h`.

use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::arith::{self, Factored};
use crate::error::{Error, Result};

/// Degree bound for 2-orbit computations.
pub const DEFAULT_TWO_ORBIT_BOUND: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in &images {
            if y >= n || std::mem::replace(&mut seen[y], true) {
                return Err(Error::InvalidPermutation(format!("image {y} repeated or out of range")));
            }
        }
        Ok(Permutation { images })
    }

    /// The transposition of `a` and `b`.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Self> {
        if a >= degree || b >= degree {
            return Err(Error::InvalidPermutation(format!("({a} {b}) on {degree} points")));
        }
        let mut p = Self::identity(degree);
        p.images.swap(a, b);
        Ok(p)
    }

    /// `x ↦ x + k mod n`.
    pub fn translation(n: usize, k: usize) -> Self {
        Permutation { images: (0..n).map(|x| (x + k) % n).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// First self, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&x| other.images[x]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &x)| i != x)
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut c = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = self.images[x];
            }
            out.push(c);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1, |acc, c| arith::lcm(acc, c.len() as u64))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Stabilizer chain with base 0, 1, …, n−1. Level `i` describes the
/// stabilizer of points `0..i`; its generators are `strong[i]` together
/// with all deeper `strong[j]`.
#[derive(Debug, Clone)]
struct StabChain {
    degree: usize,
    strong: Vec<Vec<Permutation>>,
    /// `transversal[i][x]` maps `i` to `x`.
    transversal: Vec<Vec<Option<Permutation>>>,
}

impl StabChain {
    fn build(degree: usize, generators: &[Permutation]) -> Self {
        let mut chain = StabChain {
            degree,
            strong: vec![Vec::new(); degree],
            transversal: (0..degree)
                .map(|i| {
                    let mut t = vec![None; degree];
                    t[i] = Some(Permutation::identity(degree));
                    t
                })
                .collect(),
        };
        for g in generators {
            let (res, level) = chain.strip(g.clone(), 0);
            if level < degree {
                chain.strong[level].push(res);
            }
        }
        // Complete from the bottom up. A level is finished once its orbit is
        // closed and every Schreier generator strips through the levels below.
        let mut i = degree;
        while i > 0 {
            i -= 1;
            if let Some(j) = chain.complete_level(i) {
                i = j + 1;
            }
        }
        chain
    }

    fn level_generators(&self, i: usize) -> Vec<&Permutation> {
        self.strong[i..].iter().flatten().collect()
    }

    /// Returns `Some(j)` if a new strong generator was added at level `j`.
    fn complete_level(&mut self, i: usize) -> Option<usize> {
        let gens: Vec<Permutation> = self.level_generators(i).into_iter().cloned().collect();
        if gens.is_empty() {
            return None;
        }
        let mut queue: VecDeque<usize> = (0..self.degree).filter(|&x| self.transversal[i][x].is_some()).collect();
        while let Some(x) = queue.pop_front() {
            let ux = self.transversal[i][x].clone().expect("orbit point");
            for s in &gens {
                let y = s.apply(x);
                if self.transversal[i][y].is_none() {
                    self.transversal[i][y] = Some(ux.then(s));
                    queue.push_back(y);
                }
            }
        }
        for x in 0..self.degree {
            let Some(ux) = self.transversal[i][x].clone() else { continue };
            for s in &gens {
                let y = s.apply(x);
                let uy = self.transversal[i][y].as_ref().expect("closed orbit");
                let h = ux.then(s).then(&uy.inverse());
                let (res, level) = self.strip(h, i + 1);
                if level < self.degree {
                    self.strong[level].push(res);
                    return Some(level);
                }
            }
        }
        None
    }

    /// Sifts `g` from level `from`; returns the residue and the level where
    /// it fell out (or `degree` if it sifted to the identity).
    fn strip(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for i in from..self.degree {
            let x = g.apply(i);
            match &self.transversal[i][x] {
                Some(u) => g = g.then(&u.inverse()),
                None => return (g, i),
            }
        }
        (g, self.degree)
    }

    fn orbit_lengths(&self) -> Vec<(usize, usize)> {
        (0..self.degree)
            .map(|i| (i, self.transversal[i].iter().filter(|t| t.is_some()).count()))
            .filter(|&(_, len)| len > 1)
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        Ok(PermutationGroup { degree, generators, chain: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup { degree, generators: Vec::new(), chain: OnceLock::new() }
    }

    /// Sym(n) via adjacent transpositions.
    pub fn symmetric(degree: usize) -> Self {
        let gens = (1..degree)
            .map(|i| Permutation::transposition(degree, i - 1, i).expect("in range"))
            .collect();
        PermutationGroup { degree, generators: gens, chain: OnceLock::new() }
    }

    /// The regular representation of Z_n by translations.
    pub fn cyclic_regular(n: usize) -> Self {
        let gens = if n > 1 { vec![Permutation::translation(n, 1)] } else { Vec::new() };
        PermutationGroup { degree: n, generators: gens, chain: OnceLock::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| StabChain::build(self.degree, &self.generators))
    }

    /// Base points (fixed points skipped) with their basic orbit lengths.
    pub fn base_and_orbit_lengths(&self) -> Vec<(usize, usize)> {
        self.chain().orbit_lengths()
    }

    pub fn order(&self) -> Factored {
        self.chain()
            .orbit_lengths()
            .iter()
            .map(|&(_, len)| Factored::from_u64(len as u64))
            .product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.chain().strip(g.clone(), 0).1 == self.degree
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    /// Orbits on points, each sorted, ordered by minimum.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.degree);
        for g in &self.generators {
            for x in 0..self.degree {
                uf.union(x, g.apply(x));
            }
        }
        uf.classes()
    }

    /// Orbits on ordered pairs.
    pub fn two_orbits(&self, bound: usize) -> Result<TwoOrbits> {
        let n = self.degree;
        if n > bound {
            return Err(Error::TooLarge { what: "degree for 2-orbits", value: n as u64, bound: bound as u64 });
        }
        let mut uf = UnionFind::new(n * n);
        for g in &self.generators {
            for x in 0..n {
                for y in 0..n {
                    uf.union(x * n + y, g.apply(x) * n + g.apply(y));
                }
            }
        }
        Ok(TwoOrbits::from_labels(n, &uf.labels()))
    }
}

/// A partition of the ordered pairs of `{0..n}`; class indices follow the
/// first pair in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoOrbits {
    degree: usize,
    class_of: Vec<usize>,
    count: usize,
}

impl TwoOrbits {
    /// Canonicalizes arbitrary labels on the `n²` pairs (row-major).
    pub fn from_labels(degree: usize, labels: &[usize]) -> Self {
        let mut remap = std::collections::HashMap::new();
        let class_of: Vec<usize> = labels
            .iter()
            .map(|l| {
                let next = remap.len();
                *remap.entry(*l).or_insert(next)
            })
            .collect();
        TwoOrbits { degree, class_of, count: remap.len() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn class_of(&self, x: usize, y: usize) -> usize {
        self.class_of[x * self.degree + y]
    }

    pub fn classes(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.count];
        for (k, &c) in self.class_of.iter().enumerate() {
            out[c].push((k / self.degree, k % self.degree));
        }
        out
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller root so labels are deterministic
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub(crate) fn labels(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|x| self.find(x)).collect()
    }

    pub(crate) fn classes(&mut self) -> Vec<Vec<usize>> {
        let labels = self.labels();
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; labels.len()];
        for (x, &r) in labels.iter().enumerate() {
            if index[r] == usize::MAX {
                index[r] = out.len();
                out.push(Vec::new());
            }
            out[index[r]].push(x);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn closure(g: &PermutationGroup, limit: usize) -> Option<usize> {
        let id = Permutation::identity(g.degree());
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for s in g.generators() {
                let q = p.then(s);
                if seen.insert(q.clone()) {
                    if seen.len() > limit {
                        return None;
                    }
                    queue.push_back(q);
                }
            }
        }
        Some(seen.len())
    }

    /// Small deterministic generator for test inputs.
    struct Lcg(u64);
    impl Lcg {
        fn next(&mut self, bound: usize) -> usize {
            self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((self.0 >> 33) % bound as u64) as usize
        }
        fn perm(&mut self, n: usize) -> Permutation {
            let mut v: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                v.swap(i, self.next(i + 1));
            }
            Permutation::from_images(v).unwrap()
        }
    }

    #[test]
    fn basics() {
        let t = Permutation::translation(6, 1);
        assert_eq!(t.order(), 6);
        assert_eq!(Permutation::identity(6).compose(&t).unwrap(), t);
        assert_eq!(t.to_string(), "(0 1 2 3 4 5)");
        assert_eq!(t.then(&t.inverse()), Permutation::identity(6));
        assert_eq!(t.compose(&Permutation::identity(5)), Err(Error::DegreeMismatch(6, 5)));
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        // right action: x^(gh) = (x^g)^h
        let a = Permutation::transposition(3, 0, 1).unwrap();
        let b = Permutation::transposition(3, 1, 2).unwrap();
        assert_eq!(a.then(&b).apply(0), 2);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, "[1,2,3,4,5,0]");
        assert_eq!(serde_json::from_str::<Permutation>(&json).unwrap(), t);
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(PermutationGroup::cyclic_regular(12).order().to_u64(), Some(12));
        assert_eq!(PermutationGroup::symmetric(4).order().to_u64(), Some(24));
        let all: Vec<Permutation> = (0..4)
            .flat_map(|a| (a + 1..4).map(move |b| Permutation::transposition(4, a, b).unwrap()))
            .collect();
        assert_eq!(PermutationGroup::new(4, all).unwrap().order().to_u64(), Some(24));
        assert_eq!(PermutationGroup::symmetric(30).order(), Factored::factorial(30));
        assert!(PermutationGroup::trivial(5).order().is_one());
    }

    #[test]
    fn order_matches_enumeration() {
        let mut rng = Lcg(7);
        for trial in 0..200 {
            let n = 2 + trial % 8;
            let k = 1 + rng.next(3);
            let gens: Vec<Permutation> = (0..k).map(|_| rng.perm(n)).collect();
            let g = PermutationGroup::new(n, gens).unwrap();
            if let Some(size) = closure(&g, 10_000) {
                assert_eq!(g.order().to_u64(), Some(size as u64), "trial {trial}");
            }
        }
    }

    #[test]
    fn membership() {
        let mut rng = Lcg(99);
        for _ in 0..50 {
            let n = 3 + rng.next(6);
            let gens: Vec<Permutation> = (0..2).map(|_| rng.perm(n)).collect();
            let g = PermutationGroup::new(n, gens.clone()).unwrap();
            let mut w = Permutation::identity(n);
            for _ in 0..10 {
                w = w.then(&gens[rng.next(2)]);
                assert!(g.contains(&w));
            }
            assert!(gens.iter().all(|s| g.contains(s)));
        }
        let c6 = PermutationGroup::cyclic_regular(6);
        assert!(!c6.contains(&Permutation::transposition(6, 0, 1).unwrap()));
        assert!(c6.is_subgroup_of(&PermutationGroup::symmetric(6)));
        assert!(!PermutationGroup::symmetric(6).is_subgroup_of(&c6));
    }

    #[test]
    fn components_of_q3_graph() {
        // g4 = x ↦ x+4 and g5 = x ↦ −x on Z_36; the graph with connection
        // set (Z_36)_3 = {3, 33, 15, 21} has three components, the classes
        // mod 3, which these permute as S_3.
        let g4 = Permutation::translation(36, 4);
        let g5 = Permutation::from_images((0..36).map(|x| (36 - x) % 36).collect()).unwrap();
        assert_eq!(g5.apply(18), 18);
        let comp = |x: usize| x % 3;
        let mut images = HashSet::new();
        let g = PermutationGroup::new(36, vec![g4.clone(), g5.clone()]).unwrap();
        for p in [&g4, &g5] {
            for x in 0..36 {
                for y in 0..36 {
                    if comp(x) == comp(y) {
                        assert_eq!(comp(p.apply(x)), comp(p.apply(y)));
                    }
                }
            }
        }
        let words = [
            Permutation::identity(36),
            g4.clone(),
            g5.clone(),
            g4.then(&g4),
            g4.then(&g5),
            g5.then(&g4),
        ];
        for w in &words {
            images.insert((0..3).map(|c| comp(w.apply(c))).collect::<Vec<_>>());
        }
        assert_eq!(images.len(), 6);
        assert!(g.order().to_u64().unwrap().is_multiple_of(6));
    }

    #[test]
    fn two_orbit_examples() {
        assert_eq!(PermutationGroup::symmetric(7).two_orbits(200).unwrap().len(), 2);
        let c = PermutationGroup::cyclic_regular(9).two_orbits(200).unwrap();
        assert_eq!(c.len(), 9);
        for x in 0..9 {
            for y in 0..9 {
                assert_eq!(c.class_of(x, y), c.class_of(0, (y + 9 - x) % 9));
            }
        }
        assert!(PermutationGroup::symmetric(201).two_orbits(200).is_err());
    }

    #[test]
    fn two_orbits_are_invariant() {
        let mut rng = Lcg(3);
        for _ in 0..20 {
            let n = 2 + rng.next(10);
            let gens: Vec<Permutation> = (0..2).map(|_| rng.perm(n)).collect();
            let g = PermutationGroup::new(n, gens.clone()).unwrap();
            let t = g.two_orbits(200).unwrap();
            for s in &gens {
                for x in 0..n {
                    for y in 0..n {
                        assert_eq!(t.class_of(x, y), t.class_of(s.apply(x), s.apply(y)));
                    }
                }
            }
        }
    }
}
