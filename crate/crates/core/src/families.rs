//! Constructors for the special poset families: shoelaces, W-posets and
//! inflations of rooted forests.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{Poset, PosetFile};

/// One comparable pair `(x_min, y_max)` of a shoelace together with the
/// length of the open chain between them. Indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShoelacePair {
    pub min: usize,
    pub max: usize,
    pub chain_len: usize,
}

/// Minimal elements `x_0..x_{l-1}`, maximal elements `y_0..y_{m-1}`, and
/// pairwise disjoint chains joining the selected pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShoelaceSpec {
    pub minimals: usize,
    pub maximals: usize,
    pub pairs: Vec<ShoelacePair>,
}

/// Layout of a built shoelace: element indices of the named parts.
#[derive(Clone, Debug)]
pub struct Shoelace {
    pub poset: Poset,
    pub minimals: Vec<usize>,
    pub maximals: Vec<usize>,
    /// Chain elements per pair, bottom to top, in `spec.pairs` order.
    pub chains: Vec<Vec<usize>>,
}

impl ShoelaceSpec {
    pub fn build(&self) -> Result<Shoelace> {
        let (l, m) = (self.minimals, self.maximals);
        if l == 0 || m == 0 {
            return Err(Error::Malformed("a shoelace needs minimal and maximal elements".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for p in &self.pairs {
            if p.min >= l || p.max >= m {
                return Err(Error::Malformed(format!("pair ({}, {}) out of range", p.min, p.max)));
            }
            if !seen.insert((p.min, p.max)) {
                return Err(Error::Malformed(format!("pair ({}, {}) listed twice", p.min, p.max)));
            }
        }
        let total = l + m + self.pairs.iter().map(|p| p.chain_len).sum::<usize>();
        let mut names: Vec<String> = (1..=l).map(|i| format!("x{i}")).collect();
        names.extend((1..=m).map(|j| format!("y{j}")));
        let mut covers = Vec::new();
        let mut chains = Vec::with_capacity(self.pairs.len());
        let mut next = l + m;
        for p in &self.pairs {
            let mut prev = p.min;
            let mut chain = Vec::with_capacity(p.chain_len);
            for t in 0..p.chain_len {
                covers.push((prev, next));
                names.push(format!("c{}_{}_{}", p.min + 1, p.max + 1, t + 1));
                chain.push(next);
                prev = next;
                next += 1;
            }
            covers.push((prev, l + p.max));
            chains.push(chain);
        }
        debug_assert_eq!(next, total);
        let poset = Poset::from_covers(total, &covers)?.with_names(names)?;
        if !poset.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(Shoelace {
            poset,
            minimals: (0..l).collect(),
            maximals: (l..l + m).collect(),
            chains,
        })
    }
}

/// Chain lengths of the W-poset `W_{a,b,c,d}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WParams {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl WParams {
    pub fn new(a: usize, b: usize, c: usize, d: usize) -> Self {
        WParams { a, b, c, d }
    }

    pub fn size(&self) -> usize {
        self.a + self.b + self.c + self.d + 3
    }

    /// Index of `x`; `y` and `z` follow it. The chains come first in the
    /// order alpha, beta, gamma, delta.
    pub fn x(&self) -> usize {
        self.a + self.b + self.c + self.d
    }

    pub fn y(&self) -> usize {
        self.x() + 1
    }

    pub fn z(&self) -> usize {
        self.x() + 2
    }

    /// Builds `W_{a,b,c,d}` with element names `alpha1.., beta1.., gamma1..,
    /// delta1.., x, y, z`.
    pub fn build(&self) -> Poset {
        let WParams { a, b, c, d } = *self;
        let alpha = |i: usize| i;
        let beta = |i: usize| a + i;
        let gamma = |i: usize| a + b + i;
        let delta = |i: usize| a + b + c + i;
        let (x, y, z) = (self.x(), self.y(), self.z());
        let mut covers = Vec::new();
        let mut chain = |len: usize, at: &dyn Fn(usize) -> usize, lo: Option<usize>, hi: Option<usize>| {
            for i in 1..len {
                covers.push((at(i - 1), at(i)));
            }
            match (len, lo, hi) {
                (0, Some(lo), Some(hi)) => covers.push((lo, hi)),
                (0, _, _) => {}
                (_, lo, hi) => {
                    if let Some(lo) = lo {
                        covers.push((lo, at(0)));
                    }
                    if let Some(hi) = hi {
                        covers.push((at(len - 1), hi));
                    }
                }
            }
        };
        chain(a, &alpha, Some(x), None);
        chain(b, &beta, Some(x), Some(y));
        chain(c, &gamma, Some(z), Some(y));
        chain(d, &delta, Some(z), None);
        let mut names: Vec<String> = Vec::with_capacity(self.size());
        names.extend((1..=a).map(|i| format!("alpha{i}")));
        names.extend((1..=b).map(|i| format!("beta{i}")));
        names.extend((1..=c).map(|i| format!("gamma{i}")));
        names.extend((1..=d).map(|i| format!("delta{i}")));
        names.extend(["x", "y", "z"].map(String::from));
        Poset::from_covers(self.size(), &covers)
            .and_then(|p| p.with_names(names))
            .expect("W-poset covers are acyclic")
    }

    /// The same poset described as a shoelace with minimals `{x, z}` and
    /// maximals `{alpha_a, y, delta_d}`; requires `a, d >= 1`.
    pub fn as_shoelace(&self) -> Result<ShoelaceSpec> {
        if self.a == 0 || self.d == 0 {
            return Err(Error::Param("a and d must be positive for the shoelace form".into()));
        }
        let pair = |min, max, chain_len| ShoelacePair { min, max, chain_len };
        Ok(ShoelaceSpec {
            minimals: 2,
            maximals: 3,
            pairs: vec![
                pair(0, 0, self.a - 1),
                pair(0, 1, self.b),
                pair(1, 1, self.c),
                pair(1, 2, self.d - 1),
            ],
        })
    }
}

/// A rooted forest `Q` (given by parent pointers) and one fiber poset per
/// node, each with a unique minimal element.
#[derive(Clone, Debug, PartialEq)]
pub struct InflationSpec {
    pub parent: Vec<Option<usize>>,
    pub fibers: Vec<Poset>,
}

/// Serialized form of [`InflationSpec`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InflationFile {
    pub parent: Vec<Option<usize>>,
    pub fibers: Vec<PosetFile>,
}

/// A built inflation: `poset` with inflation map `phi` onto the tree nodes.
#[derive(Clone, Debug)]
pub struct Inflation {
    pub poset: Poset,
    pub phi: Vec<usize>,
    /// First element index of each fiber.
    pub offsets: Vec<usize>,
}

/// A rooted forest with per-node weights, as used by the tangled-count
/// formula. Produced from an [`InflationSpec`] either as given or reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedForest {
    pub parent: Vec<Option<usize>>,
    pub weight: Vec<usize>,
    /// Node of this forest holding each original tree node.
    pub node_of: Vec<usize>,
}

impl InflationSpec {
    pub fn new(parent: Vec<Option<usize>>, fibers: Vec<Poset>) -> Result<Self> {
        let spec = InflationSpec { parent, fibers };
        spec.validate()?;
        Ok(spec)
    }

    /// Every fiber a single element.
    pub fn singletons(parent: Vec<Option<usize>>) -> Result<Self> {
        let fibers = parent.iter().map(|_| Poset::chain(1)).collect::<Result<Vec<_>>>()?;
        Self::new(parent, fibers)
    }

    pub fn from_file(file: &InflationFile) -> Result<Self> {
        let fibers = file.fibers.iter().map(Poset::from_file).collect::<Result<Vec<_>>>()?;
        Self::new(file.parent.clone(), fibers)
    }

    pub fn to_file(&self) -> InflationFile {
        InflationFile {
            parent: self.parent.clone(),
            fibers: self.fibers.iter().map(Poset::to_file).collect(),
        }
    }

    pub fn nodes(&self) -> usize {
        self.parent.len()
    }

    pub fn validate(&self) -> Result<()> {
        let q = self.parent.len();
        if q == 0 {
            return Err(Error::Forest("no nodes".into()));
        }
        if self.fibers.len() != q {
            return Err(Error::Forest(format!("{} fibers for {} nodes", self.fibers.len(), q)));
        }
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= q {
                    return Err(Error::Forest(format!("parent {p} of node {v} out of range")));
                }
            }
        }
        for start in 0..q {
            let mut v = start;
            let mut steps = 0;
            while let Some(p) = self.parent[v] {
                v = p;
                steps += 1;
                if steps > q {
                    return Err(Error::Forest(format!("cycle through node {start}")));
                }
            }
        }
        for (node, fiber) in self.fibers.iter().enumerate() {
            let minimals = fiber.minimal_elements().len();
            if minimals != 1 {
                return Err(Error::Fiber { node, minimals });
            }
        }
        Ok(())
    }

    /// `u <_Q v`: `v` is a proper ancestor of `u`.
    pub fn tree_lt(&self, u: usize, v: usize) -> bool {
        let mut w = u;
        while let Some(p) = self.parent[w] {
            if p == v {
                return true;
            }
            w = p;
        }
        false
    }

    /// The tree poset `Q` itself.
    pub fn tree_poset(&self) -> Result<Poset> {
        let pairs: Vec<_> = self
            .parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (v, p)))
            .collect();
        Poset::from_covers(self.nodes(), &pairs)
    }

    pub fn build(&self) -> Result<Inflation> {
        self.validate()?;
        let mut offsets = Vec::with_capacity(self.nodes());
        let mut phi = Vec::new();
        for (node, fiber) in self.fibers.iter().enumerate() {
            offsets.push(phi.len());
            phi.extend(std::iter::repeat_n(node, fiber.len()));
        }
        let n = phi.len();
        let mut pairs = Vec::new();
        for (node, fiber) in self.fibers.iter().enumerate() {
            let off = offsets[node];
            pairs.extend(fiber.covers().iter().map(|&(a, b)| (a + off, b + off)));
            if let Some(p) = self.parent[node] {
                // Every element of this fiber sits below the unique minimum
                // of the parent's fiber; closure supplies the rest.
                let parent_min = offsets[p] + self.fibers[p].minimal_elements()[0];
                pairs.extend((0..fiber.len()).map(|a| (a + off, parent_min)));
            }
        }
        let poset = Poset::from_covers(n, &pairs)?;
        Ok(Inflation { poset, phi, offsets })
    }

    /// The forest with fiber sizes as weights, unchanged.
    pub fn as_given(&self) -> WeightedForest {
        WeightedForest {
            parent: self.parent.clone(),
            weight: self.fibers.iter().map(Poset::len).collect(),
            node_of: (0..self.nodes()).collect(),
        }
    }

    /// Collapses every node with exactly one child into that child, summing
    /// weights, until each non-leaf node has at least two children.
    pub fn reduced(&self) -> WeightedForest {
        let q = self.nodes();
        let mut children = vec![Vec::new(); q];
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                children[p].push(v);
            }
        }
        // A node merges downward into its only child; follow to the bottom
        // of each single-child run to find the representative.
        let rep = |mut v: usize| {
            while children[v].len() == 1 {
                v = children[v][0];
            }
            v
        };
        let reps: Vec<usize> = (0..q).map(rep).collect();
        let mut index = vec![usize::MAX; q];
        let mut kept = Vec::new();
        for v in 0..q {
            if reps[v] == v {
                index[v] = kept.len();
                kept.push(v);
            }
        }
        let node_of: Vec<usize> = reps.iter().map(|&r| index[r]).collect();
        let mut weight = vec![0usize; kept.len()];
        for v in 0..q {
            weight[node_of[v]] += self.fibers[v].len();
        }
        let mut parent = vec![None; kept.len()];
        for v in 0..q {
            if let Some(p) = self.parent[v] {
                if node_of[p] != node_of[v] {
                    parent[node_of[v]] = Some(node_of[p]);
                }
            }
        }
        WeightedForest { parent, weight, node_of }
    }
}

impl WeightedForest {
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut children = vec![Vec::new(); self.len()];
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                children[p].push(v);
            }
        }
        children
    }

    pub fn root_of(&self, mut v: usize) -> usize {
        while let Some(p) = self.parent[v] {
            v = p;
        }
        v
    }

    /// Path from `v` up to its root, starting with `v`.
    pub fn path_to_root(&self, mut v: usize) -> Vec<usize> {
        let mut path = vec![v];
        while let Some(p) = self.parent[v] {
            path.push(p);
            v = p;
        }
        path
    }

    /// Total weight of the subtree rooted at each node.
    pub fn subtree_weights(&self) -> Vec<usize> {
        let mut total = self.weight.clone();
        // Children have no fixed index order relative to parents, so push
        // weights up along each path.
        for v in 0..self.len() {
            let mut w = v;
            while let Some(p) = self.parent[w] {
                total[p] += self.weight[v];
                w = p;
            }
        }
        total
    }

    pub fn leaves(&self) -> Vec<usize> {
        let children = self.children();
        (0..self.len()).filter(|&v| children[v].is_empty()).collect()
    }

    /// Whether every non-leaf node has at least two children.
    pub fn is_reduced(&self) -> bool {
        self.children().iter().all(|c| c.len() != 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w2211_shape() {
        let p = WParams::new(2, 2, 1, 1).build();
        assert_eq!(p.len(), 9);
        assert_eq!(p.minimal_elements().len(), 2);
        assert_eq!(p.maximal_elements().len(), 3);
        let id = |s| p.index_of(s).unwrap();
        let expected = [
            ("x", "alpha1"),
            ("alpha1", "alpha2"),
            ("x", "beta1"),
            ("beta1", "beta2"),
            ("beta2", "y"),
            ("gamma1", "y"),
            ("z", "gamma1"),
            ("z", "delta1"),
        ];
        let mut want: Vec<_> = expected.iter().map(|&(a, b)| (id(a), id(b))).collect();
        want.sort();
        assert_eq!(p.covers(), want.as_slice());
    }

    #[test]
    fn w0000_degenerate() {
        let w = WParams::new(0, 0, 0, 0);
        let p = w.build();
        assert_eq!(p.len(), 3);
        assert_eq!(p.covers(), &[(w.x(), w.y()), (w.z(), w.y())]);
    }

    #[test]
    fn w1111_shape() {
        let p = WParams::new(1, 1, 1, 1).build();
        assert_eq!(p.len(), 7);
        assert_eq!(p.minimal_elements().len(), 2);
        assert_eq!(p.maximal_elements().len(), 3);
    }

    #[test]
    fn shoelace_chain() {
        let s = ShoelaceSpec {
            minimals: 1,
            maximals: 1,
            pairs: vec![ShoelacePair { min: 0, max: 0, chain_len: 0 }],
        };
        let built = s.build().unwrap();
        assert_eq!(built.poset, Poset::chain(2).unwrap());
    }

    #[test]
    fn seven_pair_shoelace() {
        // Pairs and chain lengths read off the drawing, 0-based.
        let pairs = [(0, 1, 2), (0, 2, 0), (0, 3, 5), (1, 0, 1), (1, 2, 2), (2, 2, 0), (2, 3, 3)];
        let s = ShoelaceSpec {
            minimals: 3,
            maximals: 4,
            pairs: pairs
                .iter()
                .map(|&(min, max, chain_len)| ShoelacePair { min, max, chain_len })
                .collect(),
        };
        let built = s.build().unwrap();
        let p = &built.poset;
        assert_eq!(p.minimal_elements(), vec![0, 1, 2]);
        assert_eq!(p.maximal_elements(), vec![3, 4, 5, 6]);
        // S_1 = {y2, y3, y4}
        let above_x1: Vec<_> = built.maximals.iter().copied().filter(|&y| p.lt(0, y)).collect();
        assert_eq!(above_x1, vec![4, 5, 6]);
        // S^2 = {x1}
        let below_y2: Vec<_> = built.minimals.iter().copied().filter(|&x| p.lt(x, 4)).collect();
        assert_eq!(below_y2, vec![0]);
    }

    #[test]
    fn shoelace_errors() {
        let disconnected = ShoelaceSpec {
            minimals: 2,
            maximals: 1,
            pairs: vec![ShoelacePair { min: 0, max: 0, chain_len: 1 }],
        };
        assert!(matches!(disconnected.build(), Err(Error::Disconnected)));
        let bad = ShoelaceSpec {
            minimals: 1,
            maximals: 1,
            pairs: vec![ShoelacePair { min: 0, max: 3, chain_len: 0 }],
        };
        assert!(matches!(bad.build(), Err(Error::Malformed(_))));
        let dup = ShoelaceSpec {
            minimals: 1,
            maximals: 1,
            pairs: vec![ShoelacePair { min: 0, max: 0, chain_len: 0 }; 2],
        };
        assert!(matches!(dup.build(), Err(Error::Malformed(_))));
    }

    #[test]
    fn inflation_identity_and_lambda() {
        let s = Poset::from_covers(4, &[(0, 1), (0, 2), (2, 3)]).unwrap();
        let spec = InflationSpec::new(vec![None], vec![s.clone()]).unwrap();
        let inf = spec.build().unwrap();
        assert_eq!(inf.poset, s);
        assert_eq!(inf.phi, vec![0; 4]);

        let spec = InflationSpec::singletons(vec![None, Some(0), Some(0)]).unwrap();
        let inf = spec.build().unwrap();
        assert_eq!(inf.poset.covers(), &[(1, 0), (2, 0)]);
    }

    #[test]
    fn inflation_of_two_chain() {
        let spec = InflationSpec::new(
            vec![Some(1), None],
            vec![Poset::chain(1).unwrap(), Poset::chain(2).unwrap()],
        )
        .unwrap();
        let inf = spec.build().unwrap();
        assert_eq!(inf.poset, Poset::chain(3).unwrap());
        assert_eq!(inf.phi, vec![0, 1, 1]);
    }

    #[test]
    fn inflation_errors() {
        let bad_fiber = InflationSpec::new(vec![None], vec![Poset::antichain(2).unwrap()]);
        assert!(matches!(bad_fiber, Err(Error::Fiber { node: 0, minimals: 2 })));
        let cyc = InflationSpec::singletons(vec![Some(1), Some(0)]);
        assert!(matches!(cyc, Err(Error::Forest(_))));
        let range = InflationSpec::singletons(vec![Some(5)]);
        assert!(matches!(range, Err(Error::Forest(_))));
    }

    #[test]
    fn reduction_collapses_single_child_runs() {
        // root 0 with a single child 1, which has children 2 and 3; 3 has a
        // single child 4.
        let spec = InflationSpec::singletons(vec![None, Some(0), Some(1), Some(1), Some(3)]).unwrap();
        let r = spec.reduced();
        assert!(r.is_reduced());
        assert_eq!(r.len(), 3);
        assert_eq!(r.node_of[0], r.node_of[1]);
        assert_eq!(r.node_of[3], r.node_of[4]);
        assert_eq!(r.weight[r.node_of[0]], 2);
        assert_eq!(r.weight[r.node_of[4]], 2);
        assert_eq!(r.subtree_weights()[r.node_of[0]], 5);
    }
}
