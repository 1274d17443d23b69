//! Brute-force exact counters for `hom`, `aut`, `vsurj` and `vesurj`.
//!
//! These enumerate homomorphisms by backtracking over vertex assignments of
//! the pattern graph, pruning any partial map that already breaks adjacency.
//! They are the ground truth the other modules are checked against.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Pow;

use crate::graph::Graph;

/// Exact nonnegative count.
pub type Count = BigUint;

/// Backtracking enumerator of homomorphisms `g -> h`.
struct HomSearch<'a> {
    h_adj: Vec<Vec<bool>>,
    /// Pattern vertices in assignment order (components in BFS order).
    order: Vec<usize>,
    /// For each position: whether the vertex has a loop, and the positions of
    /// earlier neighbours.
    constraints: Vec<(bool, Vec<usize>)>,
    image: Vec<usize>,
    g: &'a Graph,
}

impl<'a> HomSearch<'a> {
    fn new(g: &'a Graph, h: &Graph) -> Self {
        let nbrs = g.neighbors();
        let mut order = Vec::with_capacity(g.vertex_count());
        for comp in g.component_vertex_sets() {
            let root = *comp.first().expect("components are nonempty");
            let mut queue = std::collections::VecDeque::from([root]);
            let mut seen = std::collections::BTreeSet::from([root]);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &w in &nbrs[v] {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut position = vec![0; g.vertex_count()];
        for (p, &v) in order.iter().enumerate() {
            position[v] = p;
        }
        let constraints = order
            .iter()
            .enumerate()
            .map(|(p, &v)| {
                let earlier = nbrs[v].iter().map(|&w| position[w]).filter(|&q| q < p).collect();
                (g.has_loop(v), earlier)
            })
            .collect();
        HomSearch {
            h_adj: h.adjacency(),
            order,
            constraints,
            image: Vec::with_capacity(g.vertex_count()),
            g,
        }
    }

    /// Calls `visit` with `phi` indexed by pattern vertex for every homomorphism.
    fn run(&mut self, visit: &mut impl FnMut(&[usize])) {
        let mut phi = vec![0; self.g.vertex_count()];
        self.step(visit, &mut phi);
    }

    fn step(&mut self, visit: &mut impl FnMut(&[usize]), phi: &mut Vec<usize>) {
        let pos = self.image.len();
        if pos == self.order.len() {
            for (p, &v) in self.order.iter().enumerate() {
                phi[v] = self.image[p];
            }
            visit(phi);
            return;
        }
        for y in 0..self.h_adj.len() {
            let (looped, ref earlier) = self.constraints[pos];
            if looped && !self.h_adj[y][y] {
                continue;
            }
            if earlier.iter().all(|&q| self.h_adj[self.image[q]][y]) {
                self.image.push(y);
                self.step(visit, phi);
                self.image.pop();
            }
        }
    }
}

/// Calls `visit` once per homomorphism `g -> h`, passing the vertex map.
pub fn for_each_hom(g: &Graph, h: &Graph, mut visit: impl FnMut(&[usize])) {
    HomSearch::new(g, h).run(&mut visit);
}

/// Number of homomorphisms from `g` to `h`.
pub fn hom_count(g: &Graph, h: &Graph) -> Count {
    let mut n: u128 = 0;
    for_each_hom(g, h, |_| n += 1);
    Count::from(n)
}

fn is_vertex_surjective(phi: &[usize], seen: &mut [bool]) -> bool {
    seen.fill(false);
    for &y in phi {
        seen[y] = true;
    }
    seen.iter().all(|&s| s)
}

/// Number of homomorphisms whose image covers every vertex of `h`.
pub fn vsurj_count(g: &Graph, h: &Graph) -> Count {
    let mut seen = vec![false; h.vertex_count()];
    let mut n: u128 = 0;
    for_each_hom(g, h, |phi| {
        if is_vertex_surjective(phi, &mut seen) {
            n += 1;
        }
    });
    Count::from(n)
}

/// Number of compactions: homomorphisms onto every vertex and every
/// non-loop edge of `h`. Loops of `h` need not be hit.
pub fn vesurj_count(g: &Graph, h: &Graph) -> Count {
    let edge_index: HashMap<(usize, usize), usize> = h.edges().iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut seen = vec![false; h.vertex_count()];
    let mut covered = vec![false; edge_index.len()];
    let mut n: u128 = 0;
    for_each_hom(g, h, |phi| {
        if !is_vertex_surjective(phi, &mut seen) {
            return;
        }
        covered.fill(false);
        for &(x, y) in g.edges() {
            let (a, b) = (phi[x], phi[y]);
            if a != b {
                covered[edge_index[&(a.min(b), a.max(b))]] = true;
            }
        }
        if covered.iter().all(|&c| c) {
            n += 1;
        }
    });
    Count::from(n)
}

/// Number of automorphisms of `h`.
pub fn aut_count(h: &Graph) -> Count {
    fn extend(adj: &[Vec<bool>], perm: &mut Vec<usize>, used: &mut [bool], n: &mut u128) {
        let x = perm.len();
        if x == adj.len() {
            *n += 1;
            return;
        }
        for y in 0..adj.len() {
            if used[y]
                || (0..=x).any(|w| {
                    let image = if w == x { y } else { perm[w] };
                    adj[w][x] != adj[image][y]
                })
            {
                continue;
            }
            used[y] = true;
            perm.push(y);
            extend(adj, perm, used, n);
            perm.pop();
            used[y] = false;
        }
    }
    let adj = h.adjacency();
    let mut n = 0;
    extend(&adj, &mut Vec::new(), &mut vec![false; adj.len()], &mut n);
    Count::from(n)
}

/// Size `|V(h)|^|V(g)|` of the unpruned assignment space.
pub fn assignment_space(g: &Graph, h: &Graph) -> BigUint {
    BigUint::from(h.vertex_count()).pow(g.vertex_count())
}
