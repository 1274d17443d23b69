//! Finite undirected graphs that may carry loops.
//!
//! Vertices are the indices `0..n`. Non-loop edges are simple and stored as
//! ordered pairs `(u, v)` with `u < v`; loops are a set of vertex indices.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    loops: BTreeSet<usize>,
    edges: BTreeSet<(usize, usize)>,
}

fn normalize(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph, rejecting out-of-range indices, self-edges and duplicates.
    pub fn new(
        n: usize,
        loops: impl IntoIterator<Item = usize>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut g = Graph::empty(n);
        for v in loops {
            g.add_loop(v)?;
        }
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// `n` isolated loopless vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            loops: BTreeSet::new(),
            edges: BTreeSet::new(),
        }
    }

    pub fn add_loop(&mut self, v: usize) -> Result<()> {
        self.check_vertex(v)?;
        if !self.loops.insert(v) {
            return Err(Error::DuplicateLoop(v));
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfEdge(u));
        }
        let e = normalize(u, v);
        if !self.edges.insert(e) {
            return Err(Error::DuplicateEdge(e.0, e.1));
        }
        Ok(())
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn loops(&self) -> &BTreeSet<usize> {
        &self.loops
    }

    /// Non-loop edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.loops.contains(&v)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&normalize(u, v))
    }

    /// Total size `|V| + |E|`, counting loops and non-loop edges.
    pub fn size(&self) -> usize {
        self.n + self.loops.len() + self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn is_reflexive(&self) -> bool {
        self.loops.len() == self.n
    }

    pub fn is_irreflexive(&self) -> bool {
        self.loops.is_empty()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Dense adjacency matrix; the diagonal holds the loop flags.
    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n]; self.n];
        for &v in &self.loops {
            adj[v][v] = true;
        }
        for &(u, v) in &self.edges {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        adj
    }

    /// Non-loop neighbour lists.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut nbrs = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            nbrs[u].push(v);
            nbrs[v].push(u);
        }
        nbrs
    }

    /// `H[S]`: keeps the vertices of `s` (reindexed in increasing order) and
    /// every loop and edge with all endpoints in `s`.
    pub fn induced_subgraph(&self, s: &BTreeSet<usize>) -> Result<Graph> {
        for &v in s {
            self.check_vertex(v)?;
        }
        let index = self.reindex(s);
        let loops = self.loops.iter().filter_map(|v| index[*v]).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((index[u]?, index[v]?)))
            .collect();
        Ok(Graph {
            n: s.len(),
            loops,
            edges,
        })
    }

    /// Same as [`Graph::induced_subgraph`] for a vertex bitmask (`n <= 64`).
    pub fn induced_by_mask(&self, mask: u64) -> Graph {
        let s: BTreeSet<usize> = (0..self.n).filter(|v| mask >> v & 1 == 1).collect();
        self.induced_subgraph(&s).expect("mask vertices are in range")
    }

    fn reindex(&self, s: &BTreeSet<usize>) -> Vec<Option<usize>> {
        let mut index = vec![None; self.n];
        for (i, &v) in s.iter().enumerate() {
            index[v] = Some(i);
        }
        index
    }

    /// Contracts each class of `partition` to a single vertex. Classes are
    /// numbered in the order given. A class gets a loop when it contains a
    /// loop or an internal edge.
    pub fn quotient(&self, partition: &[Vec<usize>]) -> Result<Graph> {
        let mut class_of = vec![None; self.n];
        for (c, class) in partition.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::MalformedPartition(format!("class {c} is empty")));
            }
            for &v in class {
                if v >= self.n {
                    return Err(Error::MalformedPartition(format!(
                        "vertex {v} out of range for graph on {} vertices",
                        self.n
                    )));
                }
                if class_of[v].replace(c).is_some() {
                    return Err(Error::MalformedPartition(format!(
                        "vertex {v} appears in more than one class"
                    )));
                }
            }
        }
        if let Some(v) = class_of.iter().position(Option::is_none) {
            return Err(Error::MalformedPartition(format!("vertex {v} is not covered")));
        }
        let class_of: Vec<usize> = class_of.into_iter().flatten().collect();
        Ok(self.quotient_by_labels(&class_of, partition.len()))
    }

    /// Quotient by a total labelling `class_of[v] in 0..classes` (every label used).
    pub(crate) fn quotient_by_labels(&self, class_of: &[usize], classes: usize) -> Graph {
        let mut q = Graph::empty(classes);
        for &v in &self.loops {
            q.loops.insert(class_of[v]);
        }
        for &(u, v) in &self.edges {
            let (a, b) = (class_of[u], class_of[v]);
            if a == b {
                q.loops.insert(a);
            } else {
                q.edges.insert(normalize(a, b));
            }
        }
        q
    }

    /// Places `other` after `self`, shifting its indices by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let mut g = self.clone();
        g.n += other.n;
        g.loops.extend(other.loops.iter().map(|v| v + shift));
        g.edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        g
    }

    /// `H - e` for a non-loop edge `e`.
    pub fn delete_nonloop_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut g = self.clone();
        if !g.edges.remove(&normalize(u, v)) {
            return Err(Error::EdgeNotPresent(u, v));
        }
        Ok(g)
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member. Loops do not affect connectivity.
    pub fn component_vertex_sets(&self) -> Vec<BTreeSet<usize>> {
        let nbrs = self.neighbors();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = BTreeSet::from([start]);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &nbrs[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.insert(w);
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn connected_components(&self) -> Vec<Graph> {
        self.component_vertex_sets()
            .iter()
            .map(|s| self.induced_subgraph(s).expect("component vertices are in range"))
            .collect()
    }

    // Named families, all loopless unless stated.

    pub fn complete(k: usize) -> Graph {
        let mut g = Graph::empty(k);
        for u in 0..k {
            for v in u + 1..k {
                g.edges.insert((u, v));
            }
        }
        g
    }

    /// Complete graph on `k` vertices with every loop present.
    pub fn reflexive_clique(k: usize) -> Graph {
        let mut g = Graph::complete(k);
        g.loops = (0..k).collect();
        g
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn biclique(a: usize, b: usize) -> Graph {
        let mut g = Graph::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.edges.insert((u, v));
            }
        }
        g
    }

    /// Path on `k` vertices.
    pub fn path(k: usize) -> Graph {
        let mut g = Graph::empty(k);
        for v in 1..k {
            g.edges.insert((v - 1, v));
        }
        g
    }

    /// Cycle on `k >= 3` vertices.
    pub fn cycle(k: usize) -> Graph {
        let mut g = Graph::path(k);
        if k >= 3 {
            g.edges.insert((0, k - 1));
        }
        g
    }

    /// A single vertex carrying a loop.
    pub fn looped_vertex() -> Graph {
        Graph::reflexive_clique(1)
    }

    /// Text form: `vertices <n>`, then `loop <v>` lines, then `edge <u> <v>` lines.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse_text(text: &str) -> Result<Graph> {
        text.parse()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices {}", self.n)?;
        for v in &self.loops {
            writeln!(f, "loop {v}")?;
        }
        for (u, v) in &self.edges {
            writeln!(f, "edge {u} {v}")?;
        }
        Ok(())
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Graph> {
        let mut graph: Option<Graph> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::Parse { line, message };
            let mut words = content.split_whitespace();
            let keyword = words.next().unwrap_or_default();
            let args: Vec<usize> = words
                .map(|w| {
                    w.parse::<usize>()
                        .map_err(|_| parse_err(format!("expected a vertex index, found `{w}`")))
                })
                .collect::<Result<_>>()?;
            let expect_args = |k: usize| {
                if args.len() == k {
                    Ok(())
                } else {
                    Err(parse_err(format!(
                        "`{keyword}` takes {k} argument(s), found {}",
                        args.len()
                    )))
                }
            };
            match (keyword, graph.as_mut()) {
                ("vertices", None) => {
                    expect_args(1)?;
                    graph = Some(Graph::empty(args[0]));
                }
                ("vertices", Some(_)) => return Err(parse_err("`vertices` given more than once".into())),
                (_, None) => return Err(parse_err("first statement must be `vertices <n>`".into())),
                ("edge", Some(g)) => {
                    expect_args(2)?;
                    g.add_edge(args[0], args[1]).map_err(|e| parse_err(e.to_string()))?;
                }
                ("loop", Some(g)) => {
                    expect_args(1)?;
                    g.add_loop(args[0]).map_err(|e| parse_err(e.to_string()))?;
                }
                (other, Some(_)) => return Err(parse_err(format!("unknown statement `{other}`"))),
            }
        }
        graph.ok_or(Error::Parse {
            line: 0,
            message: "missing `vertices <n>` line".into(),
        })
    }
}
