//! Ordered trees and their succinct coding by binary strings.
//!
//! A tree is a prefix-closed set of navigation paths over a linearly
//! ordered set of branching directions. [`succinct_code`] relabels the
//! directions of a tree with `ℓ` leaves by binary strings so that every
//! navigation path uses at most `⌈lg ℓ⌉` bits in total.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::counters::{ceil_lg, BitString};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("a tree needs at least one path")]
    Empty,
}

/// A prefix-closed set of paths, always containing the root `[]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrderedTree<D: Ord> {
    paths: BTreeSet<Vec<D>>,
}

impl<D: Ord + Clone> OrderedTree<D> {
    /// The prefix closure of `paths`. At least one path is required; `[]`
    /// alone is the one-node tree.
    pub fn from_paths<I: IntoIterator<Item = Vec<D>>>(paths: I) -> Result<Self, TreeError> {
        let mut closed = BTreeSet::new();
        for p in paths {
            for k in 0..=p.len() {
                closed.insert(p[..k].to_vec());
            }
        }
        if closed.is_empty() {
            return Err(TreeError::Empty);
        }
        Ok(OrderedTree { paths: closed })
    }

    pub fn paths(&self) -> impl Iterator<Item = &Vec<D>> {
        self.paths.iter()
    }

    pub fn contains(&self, path: &[D]) -> bool {
        self.paths.contains(path)
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn height(&self) -> usize {
        self.paths.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// The maximal paths, in order.
    pub fn leaves(&self) -> Vec<&Vec<D>> {
        // Extensions of a path follow it directly in lexicographic order.
        let mut it = self.paths.iter().peekable();
        let mut out = Vec::new();
        while let Some(p) = it.next() {
            if !it.peek().is_some_and(|q| q.starts_with(p)) {
                out.push(p);
            }
        }
        out
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().len()
    }

    /// Directions leading from `node` to its children, ascending.
    pub fn children(&self, node: &[D]) -> Vec<D> {
        self.paths
            .range(node.to_vec()..)
            .skip(1)
            .take_while(|p| p.starts_with(node))
            .filter(|p| p.len() == node.len() + 1)
            .map(|p| p[node.len()].clone())
            .collect()
    }

    /// Leaves in the subtree rooted at `node`.
    pub fn leaves_below(&self, node: &[D]) -> usize {
        self.leaves().into_iter().filter(|p| p.starts_with(node)).count()
    }
}

impl OrderedTree<BitString> {
    /// Total number of bits on the navigation path.
    pub fn path_bits(path: &[BitString]) -> usize {
        path.iter().map(BitString::len).sum()
    }

    pub fn max_path_bits(&self) -> usize {
        self.paths.iter().map(|p| Self::path_bits(p)).max().unwrap_or(0)
    }
}

impl<D: Ord + fmt::Display> fmt::Debug for OrderedTree<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<String> = self
            .paths
            .iter()
            .map(|p| format!("[{}]", p.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(".")))
            .collect();
        f.debug_set().entries(rendered).finish()
    }
}

/// Original node ↦ coded node.
pub type Coding<D> = BTreeMap<Vec<D>, Vec<BitString>>;

/// The index of the splitting direction among weighted siblings: the
/// smallest `M` whose later siblings hold at most half the total weight.
pub fn split_direction(weights: &[usize]) -> usize {
    let total: usize = weights.iter().sum();
    let mut after = total;
    for (i, &w) in weights.iter().enumerate() {
        after -= w;
        if 2 * after <= total {
            return i;
        }
    }
    unreachable!("the last index always qualifies")
}

/// Codes for siblings of the given leaf weights.
fn code_siblings(weights: &[usize], prefix: BitString, out: &mut [BitString]) {
    if weights.is_empty() {
        return;
    }
    let m = split_direction(weights);
    out[m] = prefix;
    code_siblings(&weights[..m], prefix.push(false), &mut out[..m]);
    code_siblings(&weights[m + 1..], prefix.push(true), &mut out[m + 1..]);
}

/// Relabels the branching directions of `tree` by binary strings.
///
/// At each node the children are split around the direction `M` chosen by
/// [`split_direction`] on their leaf counts; `M` gets `ε`, the smaller
/// directions are coded recursively behind a `0` and the larger ones behind
/// a `1`. Subtrees are coded independently.
pub fn succinct_code<D: Ord + Clone>(
    tree: &OrderedTree<D>,
) -> Result<(OrderedTree<BitString>, Coding<D>), TreeError> {
    if tree.is_empty() {
        return Err(TreeError::Empty);
    }
    let mut weight: BTreeMap<&Vec<D>, usize> = BTreeMap::new();
    for leaf in tree.leaves() {
        for k in 0..=leaf.len() {
            *weight.entry(tree.paths.get(&leaf[..k]).expect("closed")).or_default() += 1;
        }
    }
    let mut mapping: Coding<D> = BTreeMap::new();
    mapping.insert(Vec::new(), Vec::new());
    // Paths ascend, so each parent is coded before its children.
    for node in &tree.paths {
        let children = tree.children(node);
        if children.is_empty() {
            continue;
        }
        let weights: Vec<usize> = children
            .iter()
            .map(|c| {
                let mut p = node.clone();
                p.push(c.clone());
                weight[&p]
            })
            .collect();
        let mut codes = vec![BitString::EMPTY; children.len()];
        code_siblings(&weights, BitString::EMPTY, &mut codes);
        let base = mapping[node].clone();
        for (c, code) in children.into_iter().zip(codes) {
            let mut p = node.clone();
            p.push(c);
            let mut q = base.clone();
            q.push(code);
            mapping.insert(p, q);
        }
    }
    let coded = OrderedTree {
        paths: mapping.values().cloned().collect(),
    };
    Ok((coded, mapping))
}

/// Whether `mapping` is an order-preserving isomorphism from `original`
/// onto `coded` and every coded path uses at most `⌈lg ℓ⌉` bits.
pub fn verify_coding<D: Ord + Clone>(
    original: &OrderedTree<D>,
    coded: &OrderedTree<BitString>,
    mapping: &Coding<D>,
) -> bool {
    let domain_ok = mapping.len() == original.len() && original.paths().all(|p| mapping.contains_key(p));
    if !domain_ok {
        return false;
    }
    let image: BTreeSet<&Vec<BitString>> = mapping.values().collect();
    if image.len() != mapping.len() || image.len() != coded.len() || !coded.paths().all(|p| image.contains(p)) {
        return false;
    }
    let structure_ok = mapping.iter().all(|(p, q)| {
        p.len() == q.len() && (p.is_empty() || mapping.get(&p[..p.len() - 1]) == Some(&q[..q.len() - 1].to_vec()))
    });
    if !structure_ok {
        return false;
    }
    let order_ok = original.paths().all(|node| {
        let children = original.children(node);
        let codes: Vec<&BitString> = children
            .iter()
            .map(|c| {
                let mut p = node.clone();
                p.push(c.clone());
                mapping[&p].last().expect("child paths are nonempty")
            })
            .collect();
        codes.windows(2).all(|w| w[0] < w[1])
    });
    let budget = ceil_lg(original.leaf_count() as u64);
    order_ok && coded.max_path_bits() <= budget
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn tree(paths: &[&[u64]]) -> OrderedTree<u64> {
        OrderedTree::from_paths(paths.iter().map(|p| p.to_vec())).unwrap()
    }

    #[test]
    fn structure() {
        let t = tree(&[&[2, 0, 5], &[2, 1], &[3]]);
        assert_eq!(t.len(), 6);
        assert_eq!(t.height(), 3);
        assert_eq!(t.leaf_count(), 3);
        assert_eq!(t.children(&[]), [2, 3]);
        assert_eq!(t.children(&[2]), [0, 1]);
        assert_eq!(t.leaves_below(&[2]), 2);
        assert!(OrderedTree::<u64>::from_paths([]).is_err());
        assert_eq!(tree(&[&[]]).leaf_count(), 1);
    }

    #[test]
    fn two_leaves() {
        let t = tree(&[&[5], &[9]]);
        let (coded, map) = succinct_code(&t).unwrap();
        assert_eq!(map[&vec![5]], [b("e")]);
        assert_eq!(map[&vec![9]], [b("1")]);
        assert!(verify_coding(&t, &coded, &map));
    }

    #[test]
    fn chain_uses_no_bits() {
        let t = tree(&[&[4, 1, 7]]);
        let (coded, map) = succinct_code(&t).unwrap();
        assert_eq!(map[&vec![4, 1, 7]], [b("e"), b("e"), b("e")]);
        assert_eq!(coded.max_path_bits(), 0);
        assert!(verify_coding(&t, &coded, &map));
    }

    #[test]
    fn eight_leaf_example() {
        let t = tree(&[&[0, 0], &[1, 0], &[1, 1], &[2, 0], &[2, 1], &[2, 2], &[2, 3], &[2, 4]]);
        let (coded, map) = succinct_code(&t).unwrap();
        let expected = [
            (vec![0], vec!["00"]),
            (vec![1], vec!["0"]),
            (vec![2], vec!["e"]),
            (vec![0, 0], vec!["00", "e"]),
            (vec![1, 0], vec!["0", "e"]),
            (vec![1, 1], vec!["0", "1"]),
            (vec![2, 0], vec!["e", "0"]),
            (vec![2, 1], vec!["e", "01"]),
            (vec![2, 2], vec!["e", "e"]),
            (vec![2, 3], vec!["e", "1"]),
            (vec![2, 4], vec!["e", "11"]),
        ];
        for (p, q) in expected {
            let q: Vec<BitString> = q.into_iter().map(b).collect();
            assert_eq!(map[&p], q, "{p:?}");
        }
        assert!(coded.max_path_bits() <= 3);
        assert!(verify_coding(&t, &coded, &map));
    }

    #[test]
    fn star_code_lengths() {
        for l in 1..=40u64 {
            let t = OrderedTree::from_paths((0..l).map(|i| vec![i])).unwrap();
            let (coded, map) = succinct_code(&t).unwrap();
            assert!(verify_coding(&t, &coded, &map));
            let longest = coded.max_path_bits();
            assert!(longest <= ceil_lg(l));
            assert_eq!(longest, 63 - l.leading_zeros() as usize, "ℓ = {l}");
        }
    }

    #[test]
    fn split_halves() {
        assert_eq!(split_direction(&[1, 1]), 0);
        assert_eq!(split_direction(&[1, 2, 5]), 2);
        assert_eq!(split_direction(&[1, 1, 1]), 1);
        assert_eq!(split_direction(&[4]), 0);
    }

    #[test]
    fn verify_rejects_broken_codings() {
        let t = tree(&[&[0], &[1], &[2]]);
        let (coded, map) = succinct_code(&t).unwrap();
        let mut swapped = map.clone();
        let (a, c) = (swapped[&vec![0]].clone(), swapped[&vec![2]].clone());
        swapped.insert(vec![0], c);
        swapped.insert(vec![2], a);
        assert!(!verify_coding(&t, &coded, &swapped));

        let mut long = map.clone();
        long.insert(vec![2], vec![b("111")]);
        let long_tree = OrderedTree::from_paths(long.values().cloned()).unwrap();
        assert!(!verify_coding(&t, &long_tree, &long));
    }
}
