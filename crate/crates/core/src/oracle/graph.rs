use crate::error::{Error, Result};
use crate::zn::ZnSubset;

/// `Cay(Z_n, S)`: arcs `x → x + s` for `s ∈ S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirculantGraph {
    set: ZnSubset,
    adjacency: Vec<bool>,
}

impl CirculantGraph {
    /// Rejects connection sets containing 0 (loops).
    pub fn new(set: ZnSubset) -> Result<Self> {
        if set.contains(0) {
            return Err(Error::InvalidInput("connection set contains 0 (a loop)".into()));
        }
        let n = set.modulus();
        let ind = set.indicator();
        let mut adjacency = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                adjacency[x * n + y] = ind[(y + n - x) % n];
            }
        }
        Ok(CirculantGraph { set, adjacency })
    }

    pub fn order(&self) -> usize {
        self.set.modulus()
    }

    pub fn connection_set(&self) -> &ZnSubset {
        &self.set
    }

    pub fn has_arc(&self, x: usize, y: usize) -> bool {
        self.adjacency[x * self.order() + y]
    }

    pub fn is_undirected(&self) -> bool {
        self.set.is_symmetric()
    }

    pub fn arc_count(&self) -> usize {
        self.adjacency.iter().filter(|&&a| a).count()
    }
}
