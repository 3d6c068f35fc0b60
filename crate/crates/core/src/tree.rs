//! Labeled trees: validation, coalescence, canonical codes and text formats.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    Empty,
    #[error("expected {expected} edges for {n} vertices, got {got}")]
    EdgeCountMismatch { n: usize, expected: usize, got: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex index {index} out of range for {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// An unweighted, undirected tree on the vertices `0..n`.
///
/// Neighbor lists are kept sorted. Values are immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tree {
    adj: Vec<Vec<usize>>,
}

/// Isomorphism-class identifier: equal codes iff the trees are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalCode(pub Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl std::fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.0))
    }
}

impl Tree {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        if edges.len() != n - 1 {
            return Err(TreeError::EdgeCountMismatch {
                n,
                expected: n - 1,
                got: edges.len(),
            });
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for index in [u, v] {
                if index >= n {
                    return Err(TreeError::IndexOutOfRange { index, n });
                }
            }
            if u == v {
                return Err(TreeError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(TreeError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        let tree = Tree { adj };
        if tree.bfs_order(0).len() != n {
            return Err(TreeError::Disconnected);
        }
        Ok(tree)
    }

    /// The tree on one vertex.
    pub fn singleton() -> Self {
        Tree { adj: vec![Vec::new()] }
    }

    /// Builds a tree from a parent array (`parents[v]` for v >= 1, root 0).
    pub(crate) fn from_parents(parents: &[usize]) -> Self {
        let n = parents.len() + 1;
        let mut adj = vec![Vec::new(); n];
        for (i, &p) in parents.iter().enumerate() {
            let v = i + 1;
            debug_assert!(p < v);
            adj[p].push(v);
            adj[v].push(p);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Tree { adj }
    }

    /// Decodes a Prüfer sequence of length `n - 2` over `0..n`.
    pub fn from_prufer(seq: &[usize]) -> Result<Self, TreeError> {
        let n = seq.len() + 2;
        if let Some(&index) = seq.iter().find(|&&x| x >= n) {
            return Err(TreeError::IndexOutOfRange { index, n });
        }
        let mut degree = vec![1usize; n];
        for &x in seq {
            degree[x] += 1;
        }
        let mut leaves: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
            .filter(|&v| degree[v] == 1)
            .map(std::cmp::Reverse)
            .collect();
        let mut edges = Vec::with_capacity(n - 1);
        for &x in seq {
            let std::cmp::Reverse(leaf) = leaves.pop().expect("Prüfer decode ran out of leaves");
            edges.push((leaf, x));
            degree[x] -= 1;
            if degree[x] == 1 {
                leaves.push(std::cmp::Reverse(x));
            }
        }
        let std::cmp::Reverse(a) = leaves.pop().unwrap();
        let std::cmp::Reverse(b) = leaves.pop().unwrap();
        edges.push((a, b));
        Tree::new(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.n() - 1
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&v| self.degree(v) == 1)
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    pub fn is_star(&self) -> bool {
        self.n() <= 2 || self.max_degree() == self.n() - 1
    }

    /// Vertices in breadth-first order from `root`.
    pub fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n()];
        let mut order = Vec::with_capacity(self.n());
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        order
    }

    /// Parent of every vertex when rooted at `root` (`usize::MAX` for the root),
    /// together with a BFS order.
    pub fn rooted(&self, root: usize) -> (Vec<usize>, Vec<usize>) {
        let order = self.bfs_order(root);
        let mut parent = vec![usize::MAX; self.n()];
        for &u in &order {
            for &v in &self.adj[u] {
                if v != parent[u] {
                    parent[v] = u;
                }
            }
        }
        (parent, order)
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Tree {
        assert_eq!(perm.len(), self.n());
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Tree::new(self.n(), &edges).expect("relabeling by a permutation preserves tree shape")
    }

    /// The one or two centroid vertices.
    pub fn centroids(&self) -> Vec<usize> {
        let n = self.n();
        let (parent, order) = self.rooted(0);
        let mut size = vec![1usize; n];
        for &v in order.iter().rev() {
            if parent[v] != usize::MAX {
                size[parent[v]] += size[v];
            }
        }
        let mut out = Vec::with_capacity(2);
        for v in 0..n {
            let mut heaviest = n - size[v];
            for &c in &self.adj[v] {
                if c != parent[v] {
                    heaviest = heaviest.max(size[c]);
                }
            }
            if 2 * heaviest <= n {
                out.push(v);
            }
        }
        out
    }

    /// AHU encoding of the tree rooted at `root`: `(` children-sorted `)`.
    pub fn rooted_code(&self, root: usize) -> Vec<u8> {
        let (parent, order) = self.rooted(root);
        let mut codes: Vec<Vec<u8>> = vec![Vec::new(); self.n()];
        for &v in order.iter().rev() {
            let mut children: Vec<Vec<u8>> = self.adj[v]
                .iter()
                .filter(|&&c| c != parent[v])
                .map(|&c| std::mem::take(&mut codes[c]))
                .collect();
            children.sort_unstable();
            let mut code = Vec::with_capacity(2 + children.iter().map(Vec::len).sum::<usize>());
            code.push(b'(');
            for c in children {
                code.extend_from_slice(&c);
            }
            code.push(b')');
            codes[v] = code;
        }
        std::mem::take(&mut codes[root])
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        let code = self
            .centroids()
            .into_iter()
            .map(|c| self.rooted_code(c))
            .min()
            .expect("every tree has a centroid");
        CanonicalCode(code)
    }

    pub fn is_isomorphic(&self, other: &Tree) -> bool {
        self.n() == other.n() && self.canonical_code() == other.canonical_code()
    }

    /// Identifies vertex `u` of `self` with vertex `v` of `other`.
    ///
    /// Labels of `self` are kept; the remaining vertices of `other` are appended
    /// in increasing label order after `self.n()`, and `v` maps onto `u`.
    pub fn coalesce(&self, u: usize, other: &Tree, v: usize) -> Result<Tree, TreeError> {
        if u >= self.n() {
            return Err(TreeError::IndexOutOfRange { index: u, n: self.n() });
        }
        if v >= other.n() {
            return Err(TreeError::IndexOutOfRange { index: v, n: other.n() });
        }
        let offset = self.n();
        let map = |w: usize| -> usize {
            match w.cmp(&v) {
                std::cmp::Ordering::Equal => u,
                std::cmp::Ordering::Less => offset + w,
                std::cmp::Ordering::Greater => offset + w - 1,
            }
        };
        let mut edges = self.edges();
        edges.extend(other.edges().into_iter().map(|(a, b)| (map(a), map(b))));
        Tree::new(self.n() + other.n() - 1, &edges)
    }

    /// Edge-list text: one `u v` line per edge in canonical order.
    /// The single-vertex tree is written as an `n=1` header.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        if self.n() == 1 {
            out.push_str("n=1\n");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph T {\n");
        for v in 0..self.n() {
            let _ = writeln!(out, "  {v};");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Tree, TreeError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| TreeError::Parse { line: line_no, message };
            if let Some(rest) = line.strip_prefix("n=") {
                let n = rest
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| err(format!("bad vertex count {rest:?}: {e}")))?;
                header = Some((n, line_no));
                continue;
            }
            let mut fields = line.split_whitespace();
            let mut next = || -> Result<usize, TreeError> {
                let tok = fields.next().ok_or_else(|| err("expected two vertex indices".into()))?;
                tok.parse::<usize>()
                    .map_err(|e| err(format!("bad vertex index {tok:?}: {e}")))
            };
            let u = next()?;
            let v = next()?;
            if fields.next().is_some() {
                return Err(err("trailing fields after edge".into()));
            }
            edges.push((u, v, line_no));
        }
        let inferred = edges.iter().map(|&(u, v, _)| u.max(v) + 1).max();
        let n = match (header, inferred) {
            (Some((h, _)), Some(m)) if m > h => {
                let (_, _, line) = *edges.iter().find(|&&(u, v, _)| u.max(v) >= h).unwrap();
                return Err(TreeError::Parse {
                    line,
                    message: format!("vertex index exceeds declared n={h}"),
                });
            }
            (Some((h, _)), _) => h,
            (None, Some(m)) => m,
            (None, None) => {
                return Err(TreeError::Parse {
                    line: last_line.max(1),
                    message: "no edges and no n= header".into(),
                })
            }
        };
        let plain: Vec<_> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
        Tree::new(n, &plain)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(n: usize) -> Tree {
        let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
        Tree::new(n, &edges).unwrap()
    }

    fn path(n: usize) -> Tree {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Tree::new(n, &edges).unwrap()
    }

    #[test]
    fn builds_small_trees() {
        let p2 = Tree::new(2, &[(0, 1)]).unwrap();
        assert_eq!(p2.n(), 2);
        assert_eq!(p2.edges(), vec![(0, 1)]);

        let s4 = Tree::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(s4.degree(0), 3);
        assert!(s4.is_star());
    }

    #[test]
    fn rejects_non_trees() {
        assert_eq!(
            Tree::new(4, &[(0, 1), (2, 3), (2, 3)]),
            Err(TreeError::DuplicateEdge(2, 3))
        );
        assert_eq!(Tree::new(4, &[(0, 1), (2, 3), (1, 1)]), Err(TreeError::SelfLoop(1)));
        assert_eq!(
            Tree::new(3, &[(0, 1), (1, 5)]),
            Err(TreeError::IndexOutOfRange { index: 5, n: 3 })
        );
        assert_eq!(
            Tree::new(4, &[(0, 1), (2, 3)]),
            Err(TreeError::EdgeCountMismatch { n: 4, expected: 3, got: 2 })
        );
        assert_eq!(Tree::new(4, &[(0, 1), (1, 0), (2, 3)]), Err(TreeError::DuplicateEdge(0, 1)));
        // right edge count, but a cycle plus an isolated vertex
        assert_eq!(Tree::new(4, &[(0, 1), (1, 2), (2, 0)]), Err(TreeError::Disconnected));
        assert_eq!(Tree::new(0, &[]), Err(TreeError::Empty));
    }

    #[test]
    fn forest_is_disconnected_when_counts_match() {
        // two components with n-1 edges must contain a cycle
        let err = Tree::new(5, &[(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap_err();
        assert_eq!(err, TreeError::Disconnected);
    }

    #[test]
    fn max_degree_cases() {
        assert_eq!(star(5).max_degree(), 4);
        assert_eq!(path(4).max_degree(), 2);
        assert_eq!(Tree::singleton().max_degree(), 0);
    }

    #[test]
    fn coalesce_size_and_labels() {
        let g = star(5);
        let h = star(5);
        let t = g.coalesce(4, &h, 1).unwrap();
        assert_eq!(t.n(), 9);
        assert_eq!((0..9).filter(|&v| t.degree(v) == 4).count(), 2);
        // h's vertex 0 (its centre) lands at offset 5
        assert_eq!(t.degree(5), 4);
        assert!(t.neighbors(5).contains(&4));

        let k1 = Tree::singleton();
        let h = path(4);
        let t = k1.coalesce(0, &h, 2).unwrap();
        assert!(t.is_isomorphic(&h));
        assert!(g.coalesce(9, &h, 0).is_err());
    }

    #[test]
    fn canonical_codes() {
        let p3 = path(3);
        let relabeled = p3.relabel(&[2, 0, 1]);
        assert_eq!(p3.canonical_code(), relabeled.canonical_code());
        assert_ne!(path(4).canonical_code(), star(4).canonical_code());
        // bicentroidal
        let p6 = path(6);
        assert_eq!(p6.centroids(), vec![2, 3]);
        assert_eq!(p6.canonical_code(), p6.relabel(&[5, 3, 1, 0, 2, 4]).canonical_code());
    }

    #[test]
    fn prufer_decodes() {
        let t = Tree::from_prufer(&[0, 0, 0]).unwrap();
        assert!(t.is_isomorphic(&star(5)));
        let t = Tree::from_prufer(&[]).unwrap();
        assert_eq!(t.n(), 2);
    }

    #[test]
    fn parse_and_serialize() {
        let t = Tree::parse_edge_list("0 1\n0 2\n").unwrap();
        assert!(t.is_isomorphic(&star(3)));
        let t = Tree::parse_edge_list("# star\n\n2 0\n   # indented comment\n1 0\n").unwrap();
        assert_eq!(t.to_edge_list(), "0 1\n0 2\n");
        let single = Tree::parse_edge_list("n=1\n").unwrap();
        assert_eq!(single.n(), 1);
        assert_eq!(single.to_edge_list(), "n=1\n");
        assert_eq!(Tree::parse_edge_list(&single.to_edge_list()).unwrap(), single);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match Tree::parse_edge_list("0 1\n# ok\n1 x\n") {
            Err(TreeError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        match Tree::parse_edge_list("0 1 2\n") {
            Err(TreeError::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
        match Tree::parse_edge_list("n=2\n0 1\n1 2\n") {
            Err(TreeError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(Tree::parse_edge_list("# nothing\n"), Err(TreeError::Parse { .. })));
        assert_eq!(Tree::parse_edge_list("0 1\n2 3\n1 2\n0 3\n").unwrap_err(),
            TreeError::EdgeCountMismatch { n: 4, expected: 3, got: 4 });
    }

    #[test]
    fn dot_lists_every_vertex() {
        let dot = path(3).to_dot();
        assert!(dot.starts_with("graph T {"));
        assert!(dot.contains("0 -- 1;"));
        assert!(dot.contains("1 -- 2;"));
        assert!(dot.trim_end().ends_with('}'));
        assert!(Tree::singleton().to_dot().contains("  0;"));
    }
}
