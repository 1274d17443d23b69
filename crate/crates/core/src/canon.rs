//! Canonical keys for isomorphism classes and exhaustive enumeration of
//! small graphs with loops.
//!
//! The key is the lexicographically smallest adjacency encoding over all
//! vertex orderings that respect a (loop, degree, neighbour-degree) profile.
//! The profile is isomorphism invariant, so the minimum over the restricted
//! orderings is still a complete invariant. Cost is factorial in the size of
//! the largest profile class; intended for graphs on at most ~8 vertices.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::graph::Graph;

/// Canonical identifier of an isomorphism class.
///
/// Ordered first by total size `|V| + |E|`, then by the encoding bytes. Every
/// graph operation used here (induced subgraphs, edge deletion, quotients)
/// does not increase the size, which makes the graph-indexed count matrices
/// triangular in this order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphKey {
    size: usize,
    bytes: Vec<u8>,
}

impl GraphKey {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn vertex_count(&self) -> usize {
        u16::from_be_bytes([self.bytes[0], self.bytes[1]]) as usize
    }

    pub fn hex(&self) -> String {
        hex::encode(&self.bytes)
    }

    /// Rebuilds the canonically labelled representative.
    pub fn to_graph(&self) -> Graph {
        let n = self.vertex_count();
        let bit = |i: usize| self.bytes[2 + i / 8] >> (7 - i % 8) & 1 == 1;
        let mut g = Graph::empty(n);
        let mut i = 0;
        for j in 0..n {
            if bit(i) {
                g.add_loop(j).expect("canonical encoding is well formed");
            }
            i += 1;
            for u in 0..j {
                if bit(i) {
                    g.add_edge(u, j).expect("canonical encoding is well formed");
                }
                i += 1;
            }
        }
        g
    }
}

impl fmt::Display for GraphKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.hex())
    }
}

impl Serialize for GraphKey {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.hex())
    }
}

/// Encoding bit order: for each position `j`, the loop flag of `j` followed
/// by adjacency with positions `0..j`. The bits of positions `0..=j` thus
/// form a prefix, which the search below uses for pruning.
fn encoded_len(n: usize) -> usize {
    n * (n + 1) / 2
}

struct Search<'a> {
    adj: &'a [Vec<bool>],
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    order: Vec<usize>,
    used: Vec<bool>,
    bits: Vec<bool>,
    best: Option<Vec<bool>>,
}

impl Search<'_> {
    fn run(&mut self, pos: usize) {
        let n = self.adj.len();
        if pos == n {
            if self.best.as_ref().is_none_or(|best| self.bits < *best) {
                self.best = Some(self.bits.clone());
            }
            return;
        }
        let block = self.block_of[pos];
        for k in 0..self.blocks[block].len() {
            let v = self.blocks[block][k];
            if self.used[v] {
                continue;
            }
            let start = self.bits.len();
            self.bits.push(self.adj[v][v]);
            for p in 0..pos {
                self.bits.push(self.adj[self.order[p]][v]);
            }
            let worse = self
                .best
                .as_ref()
                .is_some_and(|best| self.bits[..] > best[..self.bits.len()]);
            if !worse {
                self.used[v] = true;
                self.order.push(v);
                self.run(pos + 1);
                self.order.pop();
                self.used[v] = false;
            }
            self.bits.truncate(start);
        }
    }
}

/// Canonical key of `g`. Equal exactly for isomorphic graphs.
pub fn canonical_key(g: &Graph) -> GraphKey {
    let n = g.vertex_count();
    assert!(n <= u16::MAX as usize, "graph too large to canonicalize");
    let adj = g.adjacency();
    let nbrs = g.neighbors();
    let degree: Vec<usize> = nbrs.iter().map(Vec::len).collect();
    let profile = |v: usize| {
        let mut nd: Vec<usize> = nbrs[v].iter().map(|&w| degree[w]).collect();
        nd.sort_unstable();
        (g.has_loop(v), degree[v], nd)
    };
    let mut by_profile: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        by_profile.entry(profile(v)).or_default().push(v);
    }
    let blocks: Vec<Vec<usize>> = by_profile.into_values().collect();
    let block_of: Vec<usize> = blocks
        .iter()
        .enumerate()
        .flat_map(|(b, vs)| std::iter::repeat_n(b, vs.len()))
        .collect();

    let mut search = Search {
        adj: &adj,
        block_of,
        blocks,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        bits: Vec::with_capacity(encoded_len(n)),
        best: None,
    };
    search.run(0);
    let best = search.best.unwrap_or_default();

    let mut bytes = (n as u16).to_be_bytes().to_vec();
    bytes.extend(best.chunks(8).map(|chunk| {
        chunk
            .iter()
            .enumerate()
            .fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << (7 - i)))
    }));
    GraphKey { size: g.size(), bytes }
}

/// Whether `g` and `h` are isomorphic.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.vertex_count() == h.vertex_count() && g.size() == h.size() && canonical_key(g) == canonical_key(h)
}

/// Every labelled graph on exactly `n` vertices, indexed by a bitmask over
/// the `n` loop slots followed by the `n(n-1)/2` edge slots.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let slots = n + pairs.len();
    assert!(slots < 64, "too many labelled graphs to enumerate");
    (0u64..1 << slots).map(move |mask| {
        let mut g = Graph::empty(n);
        for v in 0..n {
            if mask >> v & 1 == 1 {
                g.add_loop(v).expect("fresh loop");
            }
        }
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> (n + i) & 1 == 1 {
                g.add_edge(u, v).expect("fresh edge");
            }
        }
        g
    })
}

/// One canonical representative per isomorphism class of graphs with loops
/// on at most `n_max` vertices, in key order.
pub fn enumerate_graphs(n_max: usize) -> Vec<(GraphKey, Graph)> {
    let mut classes = BTreeMap::new();
    for n in 0..=n_max {
        for g in labeled_graphs(n) {
            classes.entry(canonical_key(&g)).or_insert(());
        }
    }
    classes
        .into_keys()
        .map(|k| {
            let g = k.to_graph();
            (k, g)
        })
        .collect()
}
