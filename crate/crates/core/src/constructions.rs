//! Tree families: stars, paths, complete d-ary trees, the minimum-energy trees
//! `T*(n, d)` of bounded degree, maximum-nullity trees and a few small named
//! trees.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::tree::Tree;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no digit expansion of ({d}-1)*{n}+1 found")]
    NoExpansion { n: usize, d: usize },
    #[error("digit expansion of ({d}-1)*{n}+1 is not unique (top levels {levels:?})")]
    AmbiguousExpansion { n: usize, d: usize, levels: Vec<usize> },
    #[error("assembled tree has {got} vertices, expected {expected}")]
    AssemblyMismatch { expected: usize, got: usize },
    #[error("no tree of order {n} has maximum degree {delta}")]
    InfeasibleDegree { n: usize, delta: usize },
    #[error("unknown tree name {0:?}")]
    UnknownName(String),
}

/// `K_{1, n-1}`; vertex 0 is the centre.
pub fn star(n: usize) -> Tree {
    assert!(n >= 1, "star needs at least one vertex");
    let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
    Tree::new(n, &edges).expect("star is a tree")
}

pub fn path(n: usize) -> Tree {
    assert!(n >= 1, "path needs at least one vertex");
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Tree::new(n, &edges).expect("path is a tree")
}

/// Number of vertices of `C_h`: `(d^h - 1) / (d - 1)`.
pub fn complete_dary_order(d: usize, h: usize) -> usize {
    (0..h).map(|i| d.pow(i as u32)).sum()
}

/// Incremental edge-list builder for rooted constructions.
struct Builder {
    next: usize,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn new() -> Self {
        Builder { next: 0, edges: Vec::new() }
    }

    fn vertex(&mut self) -> usize {
        self.next += 1;
        self.next - 1
    }

    fn child(&mut self, parent: usize) -> usize {
        let v = self.vertex();
        self.edges.push((parent, v));
        v
    }

    /// Hangs a copy of `C_h` below `parent`; `C_0` adds nothing.
    fn hang_complete(&mut self, parent: usize, d: usize, h: usize) {
        if h == 0 {
            return;
        }
        let root = self.child(parent);
        self.grow_complete(root, d, h);
    }

    fn grow_complete(&mut self, root: usize, d: usize, h: usize) {
        let mut frontier = vec![root];
        for _ in 1..h {
            let mut next = Vec::with_capacity(frontier.len() * d);
            for &v in &frontier {
                for _ in 0..d {
                    next.push(self.child(v));
                }
            }
            frontier = next;
        }
    }

    fn finish(self) -> Tree {
        Tree::new(self.next, &self.edges).expect("builder output is a tree")
    }
}

/// The complete d-ary tree `C_h` of height `h - 1`, rooted at vertex 0.
/// `C_0` is the empty graph and is returned as `None`.
pub fn complete_dary(d: usize, h: usize) -> Result<Option<Tree>, ConstructionError> {
    if d < 2 {
        return Err(ConstructionError::InvalidParameter(format!("branching d={d} must be >= 2")));
    }
    if h == 0 {
        return Ok(None);
    }
    let mut b = Builder::new();
    let root = b.vertex();
    b.grow_complete(root, d, h);
    Ok(Some(b.finish()))
}

/// Branch configuration at the top spine vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Terminal {
    /// All `d` branches are `C_{l-1}`; digit 1.
    AllShorter,
    /// All `d` branches are `C_l`; digit `d`.
    AllLevel,
    /// `q >= 2` branches `C_{l+1}`, `r` branches `C_{l+2}`, the rest `C_l`.
    Mixed { q: usize, r: usize },
}

/// Digit expansion `(d-1)n + 1 = sum a_k d^k` describing `T*(n, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TStarDigits {
    pub n: usize,
    pub d: usize,
    /// Index of the top spine vertex.
    pub l: usize,
    /// `a_0..a_l`.
    pub digits: Vec<u128>,
    /// For each `k < l`, the number of `C_{k+2}` branches at spine vertex `k`.
    pub larger: Vec<usize>,
    pub terminal: Terminal,
}

fn lower_digit(d: u128, r: u128) -> u128 {
    (d - 1) * (1 + (d + 1) * r)
}

/// Decodes a top digit, if it is one of the admissible terminal values.
fn decode_terminal(a: u128, d: u128, l: usize) -> Option<Terminal> {
    if a == 1 {
        return (l >= 1).then_some(Terminal::AllShorter);
    }
    if a == d {
        return Some(Terminal::AllLevel);
    }
    if a < d || !(a - d).is_multiple_of(d - 1) {
        return None;
    }
    let s = (a - d) / (d - 1);
    let (q, r) = (s % (d + 1), s / (d + 1));
    (q >= 2 && q + r <= d).then_some(Terminal::Mixed { q: q as usize, r: r as usize })
}

/// Finds the digit expansion of `(d-1)n + 1`.
///
/// Below the top level each digit is forced by its residue mod `d` (the `d`
/// admissible lower digits fall in distinct residue classes), so the only
/// choice is where the expansion stops. Every admissible stopping level is
/// tried and the result must be unique.
pub fn tstar_digits(n: usize, d: usize) -> Result<TStarDigits, ConstructionError> {
    if n == 0 || d < 2 {
        return Err(ConstructionError::InvalidParameter(format!("need n >= 1 and d >= 2, got n={n}, d={d}")));
    }
    let dd = d as u128;
    let mut rem = (dd - 1) * n as u128 + 1;
    let mut digits = Vec::new();
    let mut larger = Vec::new();
    let mut found = Vec::new();
    for l in 0.. {
        if let Some(terminal) = decode_terminal(rem, dd, l) {
            let mut a = digits.clone();
            a.push(rem);
            found.push(TStarDigits { n, d, l, digits: a, larger: larger.clone(), terminal });
        }
        let residue = rem % dd;
        let r = (2 * dd - residue - 1) % dd;
        let a = lower_digit(dd, r);
        if a >= rem {
            // the next level would need a positive remainder
            break;
        }
        digits.push(a);
        larger.push(r as usize);
        rem = (rem - a) / dd;
    }
    match found.len() {
        0 => Err(ConstructionError::NoExpansion { n, d }),
        1 => Ok(found.pop().unwrap()),
        _ => Err(ConstructionError::AmbiguousExpansion { n, d, levels: found.iter().map(|f| f.l).collect() }),
    }
}

/// Assembles the tree described by a digit expansion: a spine `0 - 1 - .. - l`
/// where spine vertex `k < l` carries `d - 1` branches from `{C_k, C_{k+2}}`
/// and vertex `l` carries `d` branches per the terminal configuration.
pub fn assemble_tstar(digits: &TStarDigits) -> Result<Tree, ConstructionError> {
    let d = digits.d;
    let l = digits.l;
    let mut b = Builder::new();
    for _ in 0..=l {
        b.vertex();
    }
    for k in 0..l {
        b.edges.push((k, k + 1));
    }
    for (k, &r) in digits.larger.iter().enumerate() {
        for _ in 0..r {
            b.hang_complete(k, d, k + 2);
        }
        for _ in r..d - 1 {
            b.hang_complete(k, d, k);
        }
    }
    match digits.terminal {
        Terminal::AllShorter => (0..d).for_each(|_| b.hang_complete(l, d, l - 1)),
        Terminal::AllLevel => (0..d).for_each(|_| b.hang_complete(l, d, l)),
        Terminal::Mixed { q, r } => {
            (0..r).for_each(|_| b.hang_complete(l, d, l + 2));
            (0..q).for_each(|_| b.hang_complete(l, d, l + 1));
            (q + r..d).for_each(|_| b.hang_complete(l, d, l));
        }
    }
    if b.next != digits.n {
        return Err(ConstructionError::AssemblyMismatch { expected: digits.n, got: b.next });
    }
    Ok(b.finish())
}

/// The minimum-energy tree of order `n` among trees with maximum degree at most `d + 1`.
pub fn tstar(n: usize, d: usize) -> Result<Tree, ConstructionError> {
    let digits = tstar_digits(n, d)?;
    let t = assemble_tstar(&digits)?;
    debug_assert!(t.max_degree() <= d + 1);
    if t.max_degree() > d + 1 || (d == 3 && n >= 5 && t.max_degree() != 4) {
        return Err(ConstructionError::InvalidParameter(format!(
            "T*({n},{d}) assembled with max degree {}",
            t.max_degree()
        )));
    }
    Ok(t)
}

/// Whether some tree of order `n` has maximum degree exactly `delta`.
pub fn degree_feasible(n: usize, delta: usize) -> bool {
    match delta {
        0 => n == 1,
        1 => n == 2,
        _ => n > delta,
    }
}

/// `ceil((n - 1) / delta)`, the minimum matching number of a tree of order `n`
/// and maximum degree `delta`.
pub fn min_matching_number(n: usize, delta: usize) -> usize {
    assert!(delta >= 1);
    (n - 1).div_ceil(delta)
}

/// A tree of order `n`, maximum degree exactly `delta` and the largest
/// possible nullity `n - 2 ceil((n-1)/delta)`.
///
/// Built as a chain of stars: centres `c_1..c_t` with `t = ceil((n-1)/delta)`,
/// where one pendant of star `i` is joined to `c_{i+1}`. The centres cover all
/// edges and each has a private neighbour, so the matching number is `t`.
pub fn max_nullity_tree(n: usize, delta: usize) -> Result<Tree, ConstructionError> {
    if !degree_feasible(n, delta) {
        return Err(ConstructionError::InfeasibleDegree { n, delta });
    }
    if n <= 2 {
        return Ok(star(n));
    }
    let t = min_matching_number(n, delta);
    if t == 1 {
        return Ok(star(n));
    }
    // every centre owns one pendant slot; `extra` leaves are distributed on top
    let extra_total = n - 2 * t;
    let mut extra = vec![0usize; t];
    if extra_total + 1 >= delta {
        let mut left = extra_total;
        for (i, slot) in extra.iter_mut().enumerate() {
            let cap = if i == 0 { delta - 1 } else { delta - 2 };
            let take = cap.min(left);
            *slot = take;
            left -= take;
        }
        debug_assert_eq!(left, 0);
    } else {
        // the second centre already has degree 2 from the chain
        extra[1] = extra_total;
    }
    let mut b = Builder::new();
    let mut prev_link: Option<usize> = None;
    for (i, &x) in extra.iter().enumerate() {
        let c = match prev_link {
            Some(link) => b.child(link),
            None => b.vertex(),
        };
        let own = b.child(c);
        for _ in 0..x {
            b.child(c);
        }
        prev_link = (i + 1 < t).then_some(own);
    }
    let tree = b.finish();
    if tree.n() != n || tree.max_degree() != delta {
        return Err(ConstructionError::AssemblyMismatch { expected: n, got: tree.n() });
    }
    Ok(tree)
}

/// The small hypoenergetic trees of maximum degree at most 3:
/// `S1`, `S3`, `S4` (stars) and `W` (two degree-3 vertices joined through a
/// middle vertex, each carrying two pendant leaves).
pub fn figure1(name: &str) -> Result<Tree, ConstructionError> {
    match name {
        "S1" => Ok(star(1)),
        "S3" => Ok(star(3)),
        "S4" => Ok(star(4)),
        "W" => Ok(Tree::new(7, &[(0, 1), (1, 2), (0, 3), (0, 4), (2, 5), (2, 6)]).expect("W is a tree")),
        other => Err(ConstructionError::UnknownName(other.to_string())),
    }
}

pub const FIGURE1_NAMES: [&str; 4] = ["S1", "S3", "S4", "W"];

/// Uniformly random labeled tree via a random Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Tree {
    assert!(n >= 1);
    if n <= 2 {
        return path(n);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    Tree::from_prufer(&seq).expect("Prüfer sequence decodes")
}

/// Some leaf of `t` (the smallest-labelled one), or 0 for a single vertex.
pub fn first_leaf(t: &Tree) -> usize {
    t.leaves().next().unwrap_or(0)
}

/// Leaf-to-leaf coalescence, the gluing used by the witness chains.
pub fn glue_at_leaves(g: &Tree, h: &Tree) -> Tree {
    g.coalesce(first_leaf(g), h, first_leaf(h)).expect("leaf indices are valid")
}
