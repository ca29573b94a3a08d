//! Automorphisms of a digraph by individualization and refinement.
//!
//! The reference path individualizes the first vertex of the first smallest
//! non-singleton cell at every level. Working from the deepest level up,
//! for each other vertex `c` of the target cell that is not yet in the
//! orbit of the reference vertex, the subtree below `c` is searched for a
//! leaf that induces an automorphism. The automorphisms found generate the
//! full group.

use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup, UnionFind};

use super::graph::CirculantGraph;

/// Largest vertex count accepted by the brute-force search.
pub const DEFAULT_ORACLE_BOUND: usize = 40;

type Cells = Vec<Vec<usize>>;

struct Digraph {
    n: usize,
    adj: Vec<bool>,
}

impl Digraph {
    fn arc(&self, x: usize, y: usize) -> bool {
        self.adj[x * self.n + y]
    }

    /// Coarsest equitable refinement (out- and in-degrees into every cell).
    /// Split cells keep their place; parts come in ascending signature
    /// order.
    fn refine(&self, mut cells: Cells) -> Cells {
        let n = self.n;
        loop {
            let mut cell_of = vec![0; n];
            for (k, c) in cells.iter().enumerate() {
                for &x in c {
                    cell_of[x] = k;
                }
            }
            let k = cells.len();
            let sig: Vec<Vec<u32>> = (0..n)
                .map(|x| {
                    let mut s = vec![0u32; 2 * k];
                    for y in 0..n {
                        if self.arc(x, y) {
                            s[2 * cell_of[y]] += 1;
                        }
                        if self.arc(y, x) {
                            s[2 * cell_of[y] + 1] += 1;
                        }
                    }
                    s
                })
                .collect();
            let mut next: Cells = Vec::with_capacity(n);
            for c in &cells {
                let mut sorted = c.clone();
                sorted.sort_by(|&a, &b| sig[a].cmp(&sig[b]));
                let mut start = 0;
                for i in 1..=sorted.len() {
                    if i == sorted.len() || sig[sorted[i]] != sig[sorted[start]] {
                        next.push(sorted[start..i].to_vec());
                        start = i;
                    }
                }
            }
            if next.len() == cells.len() {
                return next;
            }
            cells = next;
        }
    }

    fn individualize(&self, cells: &Cells, v: usize) -> Cells {
        let mut out = Vec::with_capacity(cells.len() + 1);
        for c in cells {
            if c.contains(&v) {
                out.push(vec![v]);
                let rest: Vec<usize> = c.iter().copied().filter(|&x| x != v).collect();
                out.push(rest);
            } else {
                out.push(c.clone());
            }
        }
        self.refine(out)
    }

    fn is_automorphism(&self, p: &[usize]) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.arc(x, y) == self.arc(p[x], p[y])))
    }
}

fn target_cell(cells: &Cells) -> Option<usize> {
    cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i)
}

fn shape(cells: &Cells) -> Vec<usize> {
    cells.iter().map(Vec::len).collect()
}

/// Searches below `cells` (at `depth` of the reference path) for a leaf
/// that maps the reference leaf by an automorphism.
fn find_leaf(g: &Digraph, path: &[Cells], depth: usize, cells: Cells) -> Option<Permutation> {
    if shape(&cells) != shape(&path[depth]) {
        return None;
    }
    match target_cell(&cells) {
        None => {
            let mut images = vec![0; g.n];
            for (r, c) in path[depth].iter().zip(&cells) {
                images[r[0]] = c[0];
            }
            g.is_automorphism(&images).then(|| Permutation::from_images(images).expect("bijection"))
        }
        Some(t) => cells[t]
            .iter()
            .find_map(|&w| find_leaf(g, path, depth + 1, g.individualize(&cells, w))),
    }
}

/// Full automorphism group of a circulant (di)graph with at most `bound`
/// vertices.
pub fn brute_force_aut(graph: &CirculantGraph, bound: usize) -> Result<PermutationGroup> {
    let n = graph.order();
    if n > bound {
        return Err(Error::TooLarge { what: "vertices for brute-force search", value: n as u64, bound: bound as u64 });
    }
    let g = Digraph { n, adj: (0..n * n).map(|k| graph.has_arc(k / n, k % n)).collect() };
    let mut path: Vec<Cells> = vec![g.refine(vec![(0..n).collect()])];
    let mut fixed: Vec<usize> = Vec::new();
    while let Some(t) = target_cell(path.last().unwrap()) {
        let cells = path.last().unwrap();
        let v = cells[t][0];
        fixed.push(v);
        path.push(g.individualize(cells, v));
    }
    let mut gens: Vec<Permutation> = Vec::new();
    for level in (0..fixed.len()).rev() {
        let prefix = &fixed[..level];
        let v = fixed[level];
        let cells = &path[level];
        let t = target_cell(cells).expect("non-discrete on the path");
        let mut failed: Vec<usize> = Vec::new();
        for &c in &cells[t] {
            if c == v {
                continue;
            }
            let mut uf = UnionFind::new(n);
            for s in gens.iter().filter(|s| prefix.iter().all(|&p| s.apply(p) == p)) {
                for x in 0..n {
                    uf.union(x, s.apply(x));
                }
            }
            // skip c if it is already in the orbit of v, or in the orbit of a
            // vertex that no automorphism reaches
            if uf.find(c) == uf.find(v) || failed.iter().any(|&f| uf.find(f) == uf.find(c)) {
                continue;
            }
            match find_leaf(&g, &path, level + 1, g.individualize(cells, c)) {
                Some(p) => gens.push(p),
                None => failed.push(c),
            }
        }
    }
    PermutationGroup::new(n, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zn::ZnSubset;

    fn aut_order(n: usize, s: &[usize]) -> u64 {
        let g = CirculantGraph::new(ZnSubset::new(n, s.iter().copied()).unwrap()).unwrap();
        brute_force_aut(&g, DEFAULT_ORACLE_BOUND).unwrap().order().to_u64().unwrap()
    }

    #[test]
    fn small_examples() {
        assert_eq!(aut_order(6, &[1, 5]), 12);
        assert_eq!(aut_order(6, &[1, 3, 5]), 72);
        assert_eq!(aut_order(6, &[1, 2, 4, 5]), 48);
        assert_eq!(aut_order(6, &[1, 2, 3, 4, 5]), 720);
        assert_eq!(aut_order(6, &[]), 720);
        assert_eq!(aut_order(5, &[1]), 5);
        assert_eq!(aut_order(7, &[1, 2, 4]), 21);
        assert_eq!(aut_order(1, &[]), 1);
        // Möbius ladder on 8 vertices: dihedral of order 16
        assert_eq!(aut_order(8, &[1, 4, 7]), 16);
    }

    #[test]
    fn generators_are_automorphisms() {
        let s = ZnSubset::new(12, [1, 11, 3, 9, 6]).unwrap();
        let graph = CirculantGraph::new(s).unwrap();
        let group = brute_force_aut(&graph, 40).unwrap();
        for p in group.generators() {
            for x in 0..12 {
                for y in 0..12 {
                    assert_eq!(graph.has_arc(x, y), graph.has_arc(p.apply(x), p.apply(y)));
                }
            }
        }
        assert!(PermutationGroup::cyclic_regular(12).is_subgroup_of(&group));
    }

    #[test]
    fn bound() {
        let g = CirculantGraph::new(ZnSubset::new(41, [1, 40]).unwrap()).unwrap();
        assert!(matches!(brute_force_aut(&g, 40), Err(Error::TooLarge { .. })));
        assert_eq!(brute_force_aut(&g, 41).unwrap().order().to_u64(), Some(82));
    }
}
