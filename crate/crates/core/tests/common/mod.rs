#![allow(dead_code)]

macro_rules! check {
    ($cond:expr) => {
        if !$cond {
            return Err(format!("{} (line {})", stringify!($cond), line!()));
        }
    };
}

use std::sync::OnceLock;

use promosort_core::harness::generate::generate_all_levels;
use promosort_core::promotion::{frozen_set, is_tangled, order, promote, promotions, standardize, Engine};
use promosort_core::{InflationSpec, Labeling, Poset};
use rand::Rng;

/// Every poset on 1..=7 elements up to isomorphism, by size.
pub fn levels() -> &'static [Vec<Poset>] {
    static LEVELS: OnceLock<Vec<Vec<Poset>>> = OnceLock::new();
    LEVELS.get_or_init(|| generate_all_levels(7, 1).expect("generation within budget"))
}

/// Catalog posets with at most `n` elements, smallest first.
pub fn upto(n: usize) -> Vec<&'static Poset> {
    levels().iter().take(n).flatten().collect()
}

pub fn lambda() -> Poset {
    Poset::from_covers(3, &[(0, 2), (1, 2)]).unwrap()
}

/// Six elements: 0 < 1, 0 < 3, 1 < 2, 3 < 2, 1 < 4, 2 < 5.
pub fn running_example() -> Poset {
    Poset::from_covers(6, &[(0, 1), (0, 3), (1, 2), (3, 2), (1, 4), (2, 5)]).unwrap()
}

/// Every labeling of `n` elements as label vectors.
pub fn all_labelings(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (1..=n).collect();
    loop {
        out.push(p.clone());
        if !promosort_core::perm::next_permutation(&mut p) {
            break;
        }
    }
    out
}

/// A random inflated rooted forest with at most `max_n` elements: node `i`
/// hangs below a random earlier node (or starts a new tree when `forests`),
/// and each fiber is a catalog poset of size at most 3 with a unique
/// minimal element.
pub fn random_inflation<R: Rng>(rng: &mut R, max_n: usize, forests: bool) -> InflationSpec {
    let fibers: Vec<&Poset> = upto(3).into_iter().filter(|p| p.minimal_elements().len() == 1).collect();
    loop {
        let nodes = rng.gen_range(1..=max_n.min(6));
        let parent: Vec<Option<usize>> = (0..nodes)
            .map(|i| {
                if i == 0 || (forests && rng.gen_bool(0.15)) {
                    None
                } else {
                    Some(rng.gen_range(0..i))
                }
            })
            .collect();
        let mut budget = max_n - nodes;
        let chosen: Vec<Poset> = (0..nodes)
            .map(|_| {
                let f = fibers[rng.gen_range(0..fibers.len())];
                if f.len() - 1 <= budget && rng.gen_bool(0.4) {
                    budget -= f.len() - 1;
                    f.clone()
                } else {
                    Poset::chain(1).unwrap()
                }
            })
            .collect();
        let total: usize = chosen.iter().map(Poset::len).sum();
        if total >= 2 {
            return InflationSpec::new(parent, chosen).unwrap();
        }
    }
}

/// `L_0 .. L_{n-1}`.
fn orbit(p: &Poset, l: &Labeling) -> Vec<Labeling> {
    let mut out = vec![l.clone()];
    out.extend(promotions(p, l, p.len().saturating_sub(1)).unwrap().into_iter().map(|s| s.result));
    out
}

pub fn check_labeling(p: &Poset, l: &Labeling) -> Result<(), String> {
    let n = p.len();
    let seq = orbit(p, l);

    // n - 1 promotions always sort.
    check!(seq[n - 1].is_natural(p));
    let k = order(p, l).unwrap();
    check!(k < n);
    check!(seq[k].is_natural(p));
    check!(seq[..k].iter().all(|s| !s.is_natural(p)));

    for j in 0..n - 1 {
        let cur = &seq[j];
        let next = &seq[j + 1];
        let frozen_now = frozen_set(p, cur).unwrap();
        let frozen_next = frozen_set(p, next).unwrap();
        // Frozen sets are upper ideals and grow strictly until sorted.
        let mut ind = vec![false; n];
        for &x in &frozen_now {
            ind[x] = true;
        }
        check!(p.is_upper_ideal(&ind));
        if cur.is_natural(p) {
            check!(frozen_now.len() == n);
            check!(next.is_natural(p));
        } else {
            check!(frozen_now.len() < frozen_next.len());
            check!(frozen_now.iter().all(|x| frozen_next.contains(x)));
        }
        // Labels slide down along the order.
        for i in 2..=n {
            check!(p.le(next.element(i - 1), cur.element(i)));
        }
        // The chain is increasing and ends at a maximal element.
        let step = promote(p, cur).unwrap();
        check!(step.chain[0] == cur.element(1));
        check!(p.is_maximal(*step.chain.last().unwrap()));
        for w in step.chain.windows(2) {
            check!(p.lt(w[0], w[1]));
        }
    }

    let tangled = is_tangled(p, l).unwrap();
    check!(tangled == (n >= 2 && k == n - 1));
    let engine = Engine::new(p).unwrap();
    let mut lab: Vec<u8> = l.labels().iter().map(|&x| x as u8).collect();
    let mut inv = vec![0u8; n + 1];
    check!(engine.order_in_place(&mut lab, &mut inv).unwrap() == k);

    if n >= 2 {
        let top = l.element(n);
        let second = l.element(n - 1);
        if tangled {
            check!(p.is_basin(top));
            for (r, lr) in seq.iter().enumerate().take(n - 1) {
                check!(p.lt(lr.element(n - r), lr.element(n - 1 - r)));
            }
            check!(p.funnel(top).iter().any(|&z| p.le(z, second)));
        }
        if p.is_basin(top) && p.funnel(top).contains(&second) {
            check!(tangled);
        }
    }

    // Standardization on a prefix of the elements keeps relative order.
    let subset: Vec<usize> = (0..n).step_by(2).collect();
    let st = standardize(l, &subset).unwrap();
    for (a, &x) in subset.iter().enumerate() {
        for (b, &y) in subset.iter().enumerate() {
            check!((st.label(a) < st.label(b)) == (l.label(x) < l.label(y)));
        }
    }
    Ok(())
}

/// `order(L^I) = max(i_k - k, order(L))` on `T_k ⊕ p`, plus the lifted
/// labeling restricting back to `l`.
pub fn check_lift(p: &Poset, l: &Labeling, indices: &[usize]) -> Result<(), String> {
    let k = indices.len();
    let lifted = promosort_core::promotion::lift_labeling(l, indices).map_err(|e| e.to_string())?;
    let big = Poset::antichain(k).unwrap().ordinal_sum(p);
    let expect = (indices[k - 1] - k).max(order(p, l).unwrap());
    check!(order(&big, &lifted).unwrap() == expect);
    let restricted: Vec<usize> = (k..k + p.len()).collect();
    check!(standardize(&lifted, &restricted).unwrap() == *l);
    check!(indices.iter().enumerate().all(|(s, &i)| lifted.label(s) == i));
    Ok(())
}
