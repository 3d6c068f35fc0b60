//! Isomorph-free generation of free trees and the exhaustive searches built on it.
//!
//! Trees are generated as level sequences with the successor scheme of Wright,
//! Richmond, Odlyzko and McKay: rooted level sequences are stepped with the
//! Beyer-Hedetniemi successor, and sequences that are not the canonical
//! centre-rooted form of a free tree are skipped in a single jump.

use rayon::prelude::*;
use thiserror::Error;

use crate::classify::{certify_with, Threshold};
use crate::spectral::{energy, EnergyResult, Method, SpectralError, DEFAULT_TOL};
use crate::tree::Tree;

/// Largest order the exhaustive searches accept without an explicit override.
pub const DEFAULT_MAX_N: usize = 20;

const BATCH: usize = 2048;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnumerationError {
    #[error("order {n} exceeds the exhaustive-search limit {limit} (raise it explicitly to go further)")]
    BudgetExceeded { n: usize, limit: usize },
    #[error("order must be at least 1")]
    EmptyOrder,
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Stream of all free trees of order `n`, one per isomorphism class, optionally
/// restricted to maximum degree at most `delta_cap`.
#[derive(Clone, Debug)]
pub struct TreeStream {
    n: usize,
    delta_cap: Option<usize>,
    layout: Option<Vec<usize>>,
    single_pending: bool,
}

pub fn free_trees(n: usize, delta_cap: Option<usize>) -> TreeStream {
    assert!(n >= 1, "free_trees needs n >= 1");
    let layout = (n >= 2).then(|| {
        // path rooted at its centre
        let mut l: Vec<usize> = (0..=n / 2).collect();
        l.extend(1..n.div_ceil(2));
        l
    });
    TreeStream { n, delta_cap, layout, single_pending: n == 1 }
}

impl TreeStream {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta_cap(&self) -> Option<usize> {
        self.delta_cap
    }

    /// Next canonical level sequence, ignoring the degree cap.
    fn next_layout(&mut self) -> Option<Vec<usize>> {
        let current = self.layout.take()?;
        let valid = next_free(current)?;
        self.layout = next_rooted(&valid, None);
        Some(valid)
    }

    fn within_cap(&self, layout: &[usize]) -> bool {
        let Some(cap) = self.delta_cap else {
            return true;
        };
        let mut degree = vec![0usize; layout.len()];
        let mut stack: Vec<usize> = Vec::with_capacity(layout.len());
        for (v, &level) in layout.iter().enumerate() {
            stack.truncate(level);
            if let Some(&p) = stack.last() {
                degree[p] += 1;
                degree[v] += 1;
                if degree[p] > cap {
                    return false;
                }
            }
            stack.push(v);
        }
        degree.iter().all(|&d| d <= cap)
    }
}

impl Iterator for TreeStream {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        if self.single_pending {
            self.single_pending = false;
            return Some(Tree::singleton());
        }
        loop {
            let layout = self.next_layout()?;
            if self.within_cap(&layout) {
                return Some(layout_to_tree(&layout));
            }
        }
    }
}

fn layout_to_tree(layout: &[usize]) -> Tree {
    let mut parents = Vec::with_capacity(layout.len() - 1);
    let mut stack: Vec<usize> = Vec::with_capacity(layout.len());
    for (v, &level) in layout.iter().enumerate() {
        stack.truncate(level);
        if let Some(&p) = stack.last() {
            parents.push(p);
        }
        stack.push(v);
    }
    Tree::from_parents(&parents)
}

/// Beyer-Hedetniemi successor of a rooted level sequence. With `p` given, the
/// step starts at that position instead of the last non-level-1 entry.
fn next_rooted(layout: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = layout.len() - 1;
            while layout[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while layout[q] + 1 != layout[p] {
        q -= 1;
    }
    let mut out = layout.to_vec();
    for i in p..out.len() {
        out[i] = out[i - p + q];
    }
    Some(out)
}

/// Splits off the first subtree of the root: `(left, rest)` where `left` is
/// re-levelled to start at 0 and `rest` keeps the root.
fn split(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = layout
        .iter()
        .enumerate()
        .skip(2)
        .find(|&(_, &l)| l == 1)
        .map_or(layout.len(), |(i, _)| i);
    let left = layout[1..m].iter().map(|l| l - 1).collect();
    let mut rest = Vec::with_capacity(layout.len() - m + 1);
    rest.push(0);
    rest.extend_from_slice(&layout[m..]);
    (left, rest)
}

fn is_canonical_free(layout: &[usize]) -> bool {
    let (left, rest) = split(layout);
    let lh = left.iter().copied().max().unwrap_or(0);
    let rh = rest.iter().copied().max().unwrap_or(0);
    if rh < lh {
        return false;
    }
    if rh == lh {
        if left.len() > rest.len() {
            return false;
        }
        if left.len() == rest.len() && left > rest {
            return false;
        }
    }
    true
}

/// First canonical free-tree sequence at or after `candidate`.
fn next_free(mut candidate: Vec<usize>) -> Option<Vec<usize>> {
    while !is_canonical_free(&candidate) {
        let (left, _) = split(&candidate);
        let p = left.len();
        let mut jumped = next_rooted(&candidate, Some(p))?;
        if candidate[p] > 2 {
            let (new_left, _) = split(&jumped);
            let h = new_left.iter().copied().max().unwrap_or(0);
            let len = jumped.len();
            for (i, level) in (1..=h + 1).enumerate() {
                jumped[len - (h + 1) + i] = level;
            }
        }
        candidate = jumped;
    }
    Some(candidate)
}

/// Minimum-energy tree over `free_trees(n, Some(delta_cap))`.
#[derive(Clone, Debug)]
pub struct MinEnergy {
    pub tree: Tree,
    pub energy: EnergyResult,
    /// No other isomorphism class comes within the combined error bounds.
    pub unique: bool,
    /// Lowest energy among the other classes, if any.
    pub runner_up: Option<f64>,
    pub trees_scanned: usize,
}

/// Runs `f` over the stream in parallel batches, keeping stream order in the output.
fn map_stream<T, F>(stream: TreeStream, f: F) -> Vec<(Tree, T)>
where
    T: Send,
    F: Fn(&Tree) -> T + Sync,
{
    let mut out = Vec::new();
    let mut stream = stream.peekable();
    while stream.peek().is_some() {
        let batch: Vec<Tree> = stream.by_ref().take(BATCH).collect();
        let mapped: Vec<(Tree, T)> = batch
            .into_par_iter()
            .map(|t| {
                let v = f(&t);
                (t, v)
            })
            .collect();
        out.extend(mapped);
    }
    out
}

pub fn min_energy_tree(n: usize, delta_cap: usize) -> Result<MinEnergy, EnumerationError> {
    min_energy_tree_with(n, delta_cap, DEFAULT_TOL)
}

pub fn min_energy_tree_with(n: usize, delta_cap: usize, tol: f64) -> Result<MinEnergy, EnumerationError> {
    if n == 0 {
        return Err(EnumerationError::EmptyOrder);
    }
    let scored = map_stream(free_trees(n, Some(delta_cap)), |t| energy(t, tol, Method::ExactRoots));
    let trees_scanned = scored.len();
    let mut results = Vec::with_capacity(scored.len());
    for (t, e) in scored {
        results.push((t, e?));
    }
    let best = results
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.energy.total_cmp(&b.1 .1.energy))
        .map(|(i, _)| i)
        .expect("at least one tree of every order");
    let (tree, best_e) = results.swap_remove(best);
    let runner_up = results.iter().map(|(_, e)| e.energy).min_by(f64::total_cmp);
    let unique = results.iter().all(|(_, e)| e.lower() > best_e.upper());
    Ok(MinEnergy { tree, energy: best_e, unique, runner_up, trees_scanned })
}

/// Whether some tree of order `n` with maximum degree exactly `delta`
/// certifies as (strongly) hypoenergetic, by exhaustive search.
pub fn exhaustive_verdict(n: usize, delta: usize, strong: bool) -> Result<bool, EnumerationError> {
    exhaustive_verdict_with(n, delta, strong, DEFAULT_MAX_N)
}

pub fn exhaustive_verdict_with(n: usize, delta: usize, strong: bool, max_n: usize) -> Result<bool, EnumerationError> {
    Ok(exhaustive_witness_with(n, delta, strong, max_n)?.is_some())
}

/// First tree in stream order (order `n`, maximum degree exactly `delta`)
/// that certifies.
pub fn exhaustive_witness_with(
    n: usize,
    delta: usize,
    strong: bool,
    max_n: usize,
) -> Result<Option<Tree>, EnumerationError> {
    if n == 0 {
        return Err(EnumerationError::EmptyOrder);
    }
    if n > max_n {
        return Err(EnumerationError::BudgetExceeded { n, limit: max_n });
    }
    let threshold = Threshold::for_order(n, strong);
    let mut stream = free_trees(n, Some(delta)).filter(|t| t.max_degree() == delta).peekable();
    while stream.peek().is_some() {
        let batch: Vec<Tree> = stream.by_ref().take(BATCH).collect();
        let hits: Vec<Option<usize>> = batch
            .par_iter()
            .enumerate()
            .map(|(i, t)| certify_with(t, threshold, DEFAULT_TOL).map(|ok| ok.then_some(i)))
            .collect::<Result<_, _>>()?;
        if let Some(i) = hits.into_iter().flatten().next() {
            return Ok(Some(batch[i].clone()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    // OEIS A000055
    const FREE_TREE_COUNTS: [usize; 17] = [1, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741, 19320];

    #[test]
    fn counts_match_known_sequence() {
        for n in 1..FREE_TREE_COUNTS.len() {
            assert_eq!(free_trees(n, None).count(), FREE_TREE_COUNTS[n], "n={n}");
        }
    }

    #[test]
    fn small_orders() {
        let four: Vec<_> = free_trees(4, None).collect();
        assert_eq!(four.len(), 2);
        assert_ne!(four[0].canonical_code(), four[1].canonical_code());
        assert_eq!(free_trees(1, None).next().unwrap().n(), 1);
        assert_eq!(free_trees(2, None).count(), 1);
    }

    #[test]
    fn no_duplicates_and_valid_trees() {
        for n in 1..=12 {
            let mut seen = HashSet::new();
            for t in free_trees(n, None) {
                assert_eq!(t.n(), n);
                assert_eq!(t.edges().len(), n - 1);
                assert!(seen.insert(t.canonical_code()));
            }
        }
    }

    #[test]
    fn cap_is_equivalent_to_post_filtering() {
        for n in 1..=11 {
            for cap in 1..n {
                let capped: Vec<_> = free_trees(n, Some(cap)).map(|t| t.canonical_code()).collect();
                let filtered: Vec<_> = free_trees(n, None)
                    .filter(|t| t.max_degree() <= cap)
                    .map(|t| t.canonical_code())
                    .collect();
                assert_eq!(capped, filtered, "n={n} cap={cap}");
            }
        }
    }

    #[test]
    fn deterministic_order() {
        let a: Vec<_> = free_trees(9, Some(4)).collect();
        let b: Vec<_> = free_trees(9, Some(4)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn guard_rejects_large_orders() {
        assert_eq!(
            exhaustive_verdict(21, 4, true).unwrap_err(),
            EnumerationError::BudgetExceeded { n: 21, limit: 20 }
        );
    }

    #[test]
    fn min_energy_small_cases() {
        let m = min_energy_tree(5, 4).unwrap();
        assert!(m.tree.is_star());
        assert!((m.energy.energy - 4.0).abs() < 1e-9);
        assert!(m.unique);
        assert_eq!(m.trees_scanned, 3);
    }
}
