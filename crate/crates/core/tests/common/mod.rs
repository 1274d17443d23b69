//! Independent oracles for the integration tests. Nothing here goes through
//! canonical keys or the backtracking counters.

#![allow(dead_code)]

use homcount::Graph;
use rand::Rng;

/// All permutations of `0..n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    let mut out = Vec::new();
    heap(n, &mut (0..n).collect(), &mut out);
    out
}

/// Isomorphism by trying every vertex bijection.
pub fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.size() != h.size() {
        return false;
    }
    let (ga, ha) = (g.adjacency(), h.adjacency());
    permutations(n)
        .iter()
        .any(|p| (0..n).all(|x| (0..n).all(|y| ga[x][y] == ha[p[x]][p[y]])))
}

/// Every map `V(g) -> V(h)`, as vectors.
pub fn all_maps(g: &Graph, h: &Graph) -> Vec<Vec<usize>> {
    let (n, m) = (g.vertex_count(), h.vertex_count());
    if n == 0 {
        return vec![vec![]];
    }
    if m == 0 {
        return vec![];
    }
    let total = m.pow(n as u32);
    (0..total)
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let d = code % m;
                    code /= m;
                    d
                })
                .collect()
        })
        .collect()
}

pub fn is_hom(g: &Graph, h: &Graph, phi: &[usize]) -> bool {
    g.loops().iter().all(|&x| h.has_loop(phi[x]))
        && g.edges().iter().all(|&(x, y)| {
            let (a, b) = (phi[x], phi[y]);
            if a == b {
                h.has_loop(a)
            } else {
                h.has_edge(a, b)
            }
        })
}

pub fn onto_vertices(h: &Graph, phi: &[usize]) -> bool {
    (0..h.vertex_count()).all(|v| phi.contains(&v))
}

pub fn onto_edges(g: &Graph, h: &Graph, phi: &[usize]) -> bool {
    h.edges().iter().all(|&(u, v)| {
        g.edges().iter().any(|&(x, y)| {
            let (a, b) = (phi[x], phi[y]);
            (a, b) == (u, v) || (b, a) == (u, v)
        })
    })
}

pub fn raw_hom(g: &Graph, h: &Graph) -> u64 {
    all_maps(g, h).iter().filter(|p| is_hom(g, h, p)).count() as u64
}

pub fn raw_vsurj(g: &Graph, h: &Graph) -> u64 {
    all_maps(g, h)
        .iter()
        .filter(|p| is_hom(g, h, p) && onto_vertices(h, p))
        .count() as u64
}

pub fn raw_vesurj(g: &Graph, h: &Graph) -> u64 {
    all_maps(g, h)
        .iter()
        .filter(|p| is_hom(g, h, p) && onto_vertices(h, p) && onto_edges(g, h, p))
        .count() as u64
}

/// `dsub(f, h)` by listing every `(V', E')` and testing isomorphism directly.
pub fn raw_dsub(f: &Graph, h: &Graph) -> u64 {
    let n = h.vertex_count();
    let mut hits = 0;
    for mask in 0u64..1 << n {
        if mask.count_ones() as usize != f.vertex_count() {
            continue;
        }
        let induced = h.induced_by_mask(mask);
        let edges: Vec<_> = induced.edges().iter().copied().collect();
        for emask in 0u64..1 << edges.len() {
            let chosen = edges
                .iter()
                .enumerate()
                .filter(|(i, _)| emask >> i & 1 == 1)
                .map(|(_, &e)| e);
            let sub = Graph::new(induced.vertex_count(), induced.loops().iter().copied(), chosen).unwrap();
            if brute_isomorphic(&sub, f) {
                hits += 1;
            }
        }
    }
    hits
}

/// Deduplicates graphs by brute-force isomorphism.
pub fn dedupe(graphs: impl IntoIterator<Item = Graph>) -> Vec<Graph> {
    let mut reps: Vec<Graph> = Vec::new();
    for g in graphs {
        if !reps.iter().any(|r| brute_isomorphic(r, &g)) {
            reps.push(g);
        }
    }
    reps
}

pub fn random_graph(rng: &mut impl Rng, n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for v in 0..n {
        if rng.gen_bool(0.4) {
            g.add_loop(v).unwrap();
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random relabelling of `g`.
pub fn shuffle(rng: &mut impl Rng, g: &Graph) -> Graph {
    use rand::seq::SliceRandom;
    let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
    perm.shuffle(rng);
    Graph::new(
        g.vertex_count(),
        g.loops().iter().map(|&v| perm[v]),
        g.edges().iter().map(|&(u, v)| (perm[u], perm[v])),
    )
    .unwrap()
}
