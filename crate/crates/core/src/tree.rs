//! Immutable undirected trees over dense vertex ids `0..n`.
//!
//! Every constructor validates the tree invariants (exactly `n - 1` edges,
//! connected, acyclic, no self-loops or duplicate edges). The original vertex
//! ids supplied at ingestion are kept as display labels.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    adj: Vec<Vec<usize>>,
    labels: Vec<u64>,
}

/// The vertex set of `T_{u,v}`: the component of `T - {u,v}` holding `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtreeView {
    pub anchor: usize,
    pub excluded: usize,
    /// Sorted vertex ids of the component.
    pub vertices: Vec<usize>,
}

impl SubtreeView {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Materializes the view as a standalone tree; returns the tree and the
    /// anchor's id inside it.
    pub fn to_tree(&self, tree: &Tree) -> (Tree, usize) {
        let (sub, map) = tree.induced(&self.vertices);
        (sub, map[self.anchor])
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

impl Tree {
    fn build(labels: Vec<u64>, edges: &[(usize, usize)]) -> Result<Tree> {
        let n = labels.len();
        let mut seen = HashSet::with_capacity(edges.len());
        let mut uf = UnionFind::new(n);
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(labels[u]));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge(labels[u], labels[v]));
            }
            if !uf.union(u, v) {
                return Err(Error::Cyclic(labels[u], labels[v]));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        if n > 0 && edges.len() != n - 1 {
            let root = uf.find(0);
            let size = (0..n).filter(|&x| uf.find(x) == root).count();
            return Err(Error::Disconnected { first: labels[0], size, total: n });
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Tree { adj, labels })
    }

    /// Builds a tree from edges over arbitrary nonnegative ids. Ids are
    /// remapped densely in ascending order; the originals become labels.
    pub fn from_edge_list(edges: &[(u64, u64)]) -> Result<Tree> {
        if edges.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut ids: Vec<u64> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        ids.sort_unstable();
        ids.dedup();
        let index = |x: u64| ids.binary_search(&x).expect("id collected above");
        let dense: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (index(u), index(v))).collect();
        Tree::build(ids, &dense)
    }

    /// Builds a tree on `0..n` from dense edges.
    pub fn from_dense_edges(n: usize, edges: &[(usize, usize)]) -> Result<Tree> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= n || v >= n) {
            return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
        }
        Tree::build((0..n as u64).collect(), edges)
    }

    /// The tree `G_v` with one isolated vertex.
    pub fn single(label: u64) -> Tree {
        Tree { adj: vec![Vec::new()], labels: vec![label] }
    }

    /// The line `L_n` with edges `{i, i+1}`.
    pub fn line(n: usize) -> Tree {
        assert!(n >= 1, "a line needs at least one vertex");
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Tree::from_dense_edges(n, &edges).expect("a line is a tree")
    }

    /// A star with center 0 and leaves `1..=k`.
    pub fn star(k: usize) -> Tree {
        let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
        Tree::from_dense_edges(k + 1, &edges).expect("a star is a tree")
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.adj[v].len() == 1
    }

    pub fn label(&self, v: usize) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.len().saturating_sub(1));
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.len() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.len() })
        }
    }

    /// BFS from `root` that never enters `blocked`. Returns the visit order
    /// and the BFS parent of every visited vertex (`usize::MAX` for the root
    /// and for unvisited vertices).
    pub fn bfs_from(&self, root: usize, blocked: Option<usize>) -> (Vec<usize>, Vec<usize>) {
        let mut parent = vec![NONE; self.len()];
        let mut order = Vec::with_capacity(self.len());
        let mut visited = vec![false; self.len()];
        visited[root] = true;
        if let Some(b) = blocked {
            visited[b] = true;
        }
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &y in &self.adj[x] {
                if !visited[y] {
                    visited[y] = true;
                    parent[y] = x;
                    order.push(y);
                }
            }
        }
        (order, parent)
    }

    /// `T_{u,v}` for the edge `{u, v}`.
    pub fn hang_subtree(&self, u: usize, v: usize) -> Result<SubtreeView> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge { u, v });
        }
        let (mut vertices, _) = self.bfs_from(u, Some(v));
        vertices.sort_unstable();
        Ok(SubtreeView { anchor: u, excluded: v, vertices })
    }

    /// Adds a fresh vertex `n` (labelled one past the largest label) as a
    /// leaf of `v`.
    pub fn add_leaf(&self, v: usize) -> Result<Tree> {
        self.check_vertex(v)?;
        let mut adj = self.adj.clone();
        let w = adj.len();
        adj[v].push(w);
        adj.push(vec![v]);
        let mut labels = self.labels.clone();
        labels.push(self.labels.iter().max().map_or(0, |m| m + 1));
        Ok(Tree { adj, labels })
    }

    /// `(T1 ∪ T2) + {v1, v2}` with `T2`'s ids shifted by `|T1|`.
    pub fn join(t1: &Tree, v1: usize, t2: &Tree, v2: usize) -> Result<Tree> {
        t1.check_vertex(v1)?;
        t2.check_vertex(v2)?;
        let off = t1.len();
        let mut adj = t1.adj.clone();
        adj.extend(t2.adj.iter().map(|list| list.iter().map(|&x| x + off).collect::<Vec<_>>()));
        adj[v1].push(v2 + off);
        adj[v2 + off].insert(0, v1);
        Ok(Tree { adj, labels: (0..(off + t2.len()) as u64).collect() })
    }

    /// The subtree induced by `vertices` (assumed connected), plus the map
    /// from old ids to new ids (`usize::MAX` for dropped vertices). Vertices
    /// keep their relative order.
    pub fn induced(&self, vertices: &[usize]) -> (Tree, Vec<usize>) {
        let mut map = vec![NONE; self.len()];
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        for (i, &v) in sorted.iter().enumerate() {
            map[v] = i;
        }
        let adj = sorted
            .iter()
            .map(|&v| self.adj[v].iter().filter_map(|&y| (map[y] != NONE).then_some(map[y])).collect())
            .collect();
        let labels = sorted.iter().map(|&v| self.labels[v]).collect();
        (Tree { adj, labels }, map)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Tree {
        assert_eq!(perm.len(), self.len());
        let mut adj = vec![Vec::new(); self.len()];
        for (v, list) in self.adj.iter().enumerate() {
            let mut mapped: Vec<usize> = list.iter().map(|&y| perm[y]).collect();
            mapped.sort_unstable();
            adj[perm[v]] = mapped;
        }
        Tree { adj, labels: (0..self.len() as u64).collect() }
    }

    pub fn distances_from(&self, v: usize) -> Vec<usize> {
        let mut dist = vec![0usize; self.len()];
        let (order, parent) = self.bfs_from(v, None);
        for &x in &order[1..] {
            dist[x] = dist[parent[x]] + 1;
        }
        dist
    }

    /// The unique simple path `u .. v`.
    pub fn path_between(&self, u: usize, v: usize) -> Vec<usize> {
        let (_, parent) = self.bfs_from(v, None);
        let mut path = vec![u];
        let mut x = u;
        while x != v {
            x = parent[x];
            path.push(x);
        }
        path
    }

    /// AHU canonical encoding of the tree rooted at `v`. Two rooted trees
    /// are isomorphic iff their encodings are equal.
    pub fn rooted_canonical(&self, v: usize) -> String {
        self.canonical_excluding(v, None)
    }

    /// Canonical encoding of `(u, T_{u,v})` when `blocked = Some(v)`.
    pub fn canonical_excluding(&self, root: usize, blocked: Option<usize>) -> String {
        let (order, parent) = self.bfs_from(root, blocked);
        let mut codes: Vec<Option<String>> = vec![None; self.len()];
        let mut children: Vec<Vec<String>> = vec![Vec::new(); self.len()];
        for &x in order.iter().rev() {
            let mut kids = std::mem::take(&mut children[x]);
            kids.sort_unstable();
            let mut code = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
            code.push('(');
            for k in &kids {
                code.push_str(k);
            }
            code.push(')');
            if parent[x] == NONE {
                codes[x] = Some(code);
            } else {
                children[parent[x]].push(code);
            }
        }
        codes[root].take().expect("root is encoded last")
    }
}

/// Multi-source BFS from `sources`; returns each vertex's parent toward the
/// source set (`usize::MAX` for sources).
pub(crate) fn multi_source_parents(tree: &Tree, sources: &[usize]) -> Vec<usize> {
    let mut parent = vec![NONE; tree.len()];
    let mut visited = vec![false; tree.len()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &s in sources {
        visited[s] = true;
        queue.push_back(s);
    }
    while let Some(x) = queue.pop_front() {
        for &y in tree.neighbors(x) {
            if !visited[y] {
                visited[y] = true;
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    parent
}
