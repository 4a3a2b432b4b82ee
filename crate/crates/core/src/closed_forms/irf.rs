//! Tangled counts of inflated rooted forests.
//!
//! For a leaf `l` of the tree and the path `l = u_0 ⋖ u_1 ⋖ ... ⋖ u_w` up to
//! the node of `x`, step `j` contributes `(b_j - 1) / (c_j - 1)` with `b_j`
//! the weight of the subtree at `u_{j-1}` and `c_j` the weight strictly
//! below `u_j`. The count of tangled `x`-labelings is `(n-2)!` times the
//! sum over leaves below `x` of these products.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::families::{InflationSpec, WeightedForest};
use crate::perm::{binomial, factorial};

/// Which tree the formula is evaluated on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeRoute {
    /// Collapse single-child nodes first, so every step has `c_j >= 2`.
    Reduced,
    /// Use the forest as given; a step with `c_j = 1` (hence `b_j = 1`)
    /// contributes a factor of 1.
    AsGiven,
}

/// Result of evaluating the formula for one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrfEvaluation {
    pub count: BigUint,
    /// Sum of products over the leaves below `x` within its tree.
    pub sum: BigRational,
    /// Steps that hit `c_j = 1` and used the unit convention.
    pub degenerate_factors: usize,
}

fn ratio(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Product along the path from `leaf` up to `top`, counting degenerate
/// steps.
fn path_product(forest: &WeightedForest, subtree: &[usize], leaf: usize, top: usize) -> (BigRational, usize) {
    let mut prod = BigRational::one();
    let mut degenerate = 0;
    let mut below = leaf;
    while below != top {
        let node = forest.parent[below].expect("top is an ancestor of the leaf");
        let b = subtree[below];
        let c = subtree[node] - forest.weight[node];
        if c == 1 {
            debug_assert_eq!(b, 1);
            degenerate += 1;
        } else {
            prod *= ratio(b - 1, c - 1);
        }
        below = node;
    }
    (prod, degenerate)
}

fn tree_forest(spec: &InflationSpec, route: TreeRoute) -> WeightedForest {
    match route {
        TreeRoute::Reduced => spec.reduced(),
        TreeRoute::AsGiven => spec.as_given(),
    }
}

/// Evaluates the formula for element `x` of the built inflation.
pub fn irf_evaluate(spec: &InflationSpec, x: usize, route: TreeRoute) -> Result<IrfEvaluation> {
    let built = spec.build()?;
    let n = built.poset.len();
    if x >= n {
        return Err(Error::Index { index: x, n });
    }
    if built.poset.is_minimal(x) {
        return Ok(IrfEvaluation { count: BigUint::zero(), sum: BigRational::zero(), degenerate_factors: 0 });
    }
    let forest = tree_forest(spec, route);
    let subtree = forest.subtree_weights();
    let top = forest.node_of[built.phi[x]];
    let root = forest.root_of(top);
    let tree_size = subtree[root];
    let mut sum = BigRational::zero();
    let mut degenerate_factors = 0;
    for leaf in forest.leaves() {
        if leaf == top || forest.path_to_root(leaf).contains(&top) {
            let (prod, degenerate) = path_product(&forest, &subtree, leaf, top);
            sum += prod;
            degenerate_factors += degenerate;
        }
    }
    // Count inside the tree of x, then spread the remaining elements over
    // the labels: (n1-2)! S * (n-n1)! * C(n-2, n1-2).
    let in_tree = BigRational::from_integer(BigInt::from(factorial(tree_size - 2))) * &sum;
    if !in_tree.is_integer() {
        return Err(Error::Internal(format!("non-integral tangled count {in_tree} for element {x}")));
    }
    let in_tree = in_tree.to_integer().to_biguint().expect("nonnegative");
    let count = in_tree * factorial(n - tree_size) * binomial((n - 2) as u64, (tree_size - 2) as u64);
    Ok(IrfEvaluation { count, sum, degenerate_factors })
}

/// Number of tangled labelings of the inflation with `n - 1` on `x`.
pub fn irf_tangled_by_element(spec: &InflationSpec, x: usize) -> Result<BigUint> {
    Ok(irf_evaluate(spec, x, TreeRoute::Reduced)?.count)
}

/// The full sum over all leaves of the products up to the root, on the
/// reduced tree. Requires a single tree.
pub fn irf_bound(spec: &InflationSpec) -> Result<BigRational> {
    spec.validate()?;
    let forest = spec.reduced();
    let roots: Vec<usize> = (0..forest.len()).filter(|&v| forest.parent[v].is_none()).collect();
    if roots.len() != 1 {
        return Err(Error::Forest(format!("expected one tree, found {}", roots.len())));
    }
    let subtree = forest.subtree_weights();
    let mut sum = BigRational::zero();
    for leaf in forest.leaves() {
        sum += path_product(&forest, &subtree, leaf, roots[0]).0;
    }
    Ok(sum)
}

/// The value the bound sum may not exceed: 1 for a single element,
/// otherwise `(n - m) / (n - 1)` with `m` leaves of the reduced tree.
pub fn irf_bound_limit(spec: &InflationSpec) -> Result<BigRational> {
    spec.validate()?;
    let n: usize = spec.fibers.iter().map(|f| f.len()).sum();
    if n == 1 {
        return Ok(BigRational::one());
    }
    let m = spec.reduced().leaves().len();
    Ok(ratio(n - m, n - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Poset;

    fn lambda_tree(leaf_fiber: usize) -> InflationSpec {
        InflationSpec::new(
            vec![None, Some(0), Some(0)],
            vec![Poset::chain(1).unwrap(), Poset::chain(leaf_fiber).unwrap(), Poset::chain(1).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn lambda_root_has_no_tangled_labelings() {
        let spec = lambda_tree(1);
        assert_eq!(irf_tangled_by_element(&spec, 0).unwrap(), BigUint::zero());
        assert_eq!(irf_bound(&spec).unwrap(), BigRational::zero());
        assert_eq!(irf_bound_limit(&spec).unwrap(), ratio(1, 2));
    }

    #[test]
    fn longer_leaf_fiber() {
        let spec = lambda_tree(2);
        // Elements: root 0, leaf chain 1 < 2, other leaf 3.
        assert_eq!(irf_tangled_by_element(&spec, 0).unwrap(), BigUint::from(1u32));
        assert_eq!(irf_tangled_by_element(&spec, 2).unwrap(), BigUint::from(2u32));
        assert_eq!(irf_tangled_by_element(&spec, 1).unwrap(), BigUint::zero());
        assert_eq!(irf_bound(&spec).unwrap(), ratio(1, 2));
        assert_eq!(irf_bound_limit(&spec).unwrap(), ratio(2, 3));
    }

    #[test]
    fn chain_through_two_nodes_uses_unit_factor() {
        let spec = InflationSpec::new(vec![Some(1), None], vec![Poset::chain(1).unwrap(), Poset::chain(2).unwrap()])
            .unwrap();
        let given = irf_evaluate(&spec, 2, TreeRoute::AsGiven).unwrap();
        assert_eq!(given.count, BigUint::one());
        assert_eq!(given.degenerate_factors, 1);
        let reduced = irf_evaluate(&spec, 2, TreeRoute::Reduced).unwrap();
        assert_eq!(reduced.count, BigUint::one());
        assert_eq!(reduced.degenerate_factors, 0);
    }

    #[test]
    fn single_node_bound() {
        let spec = InflationSpec::new(vec![None], vec![Poset::chain(3).unwrap()]).unwrap();
        assert_eq!(irf_bound(&spec).unwrap(), BigRational::one());
        assert_eq!(irf_bound_limit(&spec).unwrap(), BigRational::one());
    }

    #[test]
    fn forests_combine_components() {
        // A 2-chain tree next to an isolated node: the chain's top keeps
        // (n-2)! tangled labelings.
        let spec = InflationSpec::singletons(vec![None, Some(0), None]).unwrap();
        assert_eq!(irf_tangled_by_element(&spec, 0).unwrap(), BigUint::one());
        assert!(irf_bound(&spec).is_err());
    }
}
