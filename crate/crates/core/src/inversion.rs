//! Graph-indexed triangular count matrices and the identities linking
//! `hom` to `vsurj` and `vesurj`.
//!
//! * `hom(G,H) = sum over S of vsurj(G, H[S])`, inverted by inclusion-exclusion;
//! * `hom(G,H) = sum over F of vesurj(G,F) * dsub(F,H)`, inverted through the
//!   unit upper-triangular inverse of `dsub`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::canon::{canonical_key, enumerate_graphs, GraphKey};
use crate::counting::{hom_count, vesurj_count, vsurj_count, Count};
use crate::graph::Graph;

/// Finite-support integer coefficients indexed by isomorphism class, each
/// paired with a representative graph. Zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoeffVector {
    entries: BTreeMap<GraphKey, (Graph, BigInt)>,
}

impl CoeffVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `coeff` to the entry for `graph`'s class, removing it if it cancels.
    pub fn add(&mut self, key: GraphKey, graph: &Graph, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.entries.entry(key) {
            Entry::Vacant(slot) => {
                slot.insert((graph.clone(), coeff));
            }
            Entry::Occupied(mut slot) => {
                slot.get_mut().1 += coeff;
                if slot.get().1.is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Coefficient for the class of `key` (zero when outside the support).
    pub fn get(&self, key: &GraphKey) -> BigInt {
        self.entries.get(key).map(|(_, c)| c.clone()).unwrap_or_default()
    }

    pub fn coeff_of(&self, g: &Graph) -> BigInt {
        self.get(&canonical_key(g))
    }

    pub fn contains(&self, key: &GraphKey) -> bool {
        self.entries.contains_key(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in key order.
    pub fn iter(&self) -> impl Iterator<Item = (&GraphKey, &Graph, &BigInt)> {
        self.entries.iter().map(|(k, (g, c))| (k, g, c))
    }

    pub fn support(&self) -> impl Iterator<Item = (&GraphKey, &Graph)> {
        self.entries.iter().map(|(k, (g, _))| (k, g))
    }

    /// `sum over F of coeff(F) * value(F)`.
    pub fn evaluate(&self, mut value: impl FnMut(&Graph) -> BigInt) -> BigInt {
        self.iter().map(|(_, g, c)| c * value(g)).sum()
    }
}

#[derive(Serialize)]
struct CoeffEntry {
    graph: String,
    coeff: String,
}

impl Serialize for CoeffVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for (_, g, c) in self.iter() {
            seq.serialize_element(&CoeffEntry {
                graph: g.to_text(),
                coeff: c.to_string(),
            })?;
        }
        seq.end()
    }
}

fn to_count(value: BigInt) -> Count {
    match value.sign() {
        Sign::Minus => panic!("identity produced a negative count {value}"),
        _ => value.magnitude().clone(),
    }
}

/// Number of vertex subsets of `h` that induce a copy of `f`.
pub fn ind_count(f: &Graph, h: &Graph) -> Count {
    let k = f.vertex_count();
    let n = h.vertex_count();
    if k > n {
        return Count::zero();
    }
    let target = canonical_key(f);
    let hits = (0u64..1 << n)
        .filter(|mask| mask.count_ones() as usize == k)
        .filter(|&mask| canonical_key(&h.induced_by_mask(mask)) == target)
        .count();
    Count::from(hits)
}

/// The classes `F` with `dsub(F,h) != 0`, each with its multiplicity
/// `dsub(F,h)`, in key order.
pub type Downset = BTreeMap<GraphKey, (Graph, Count)>;

/// Enumerates every `(V', E')` with `V' ⊆ V(h)` and `E' ⊆ E2(h[V'])`, keeping
/// the loops of `h[V']`, and tallies the results by isomorphism class.
pub fn dsub_downset(h: &Graph) -> Downset {
    let n = h.vertex_count();
    assert!(n < 64, "dsub enumeration needs fewer than 64 vertices");
    let mut downset = Downset::new();
    for mask in 0u64..1 << n {
        let induced = h.induced_by_mask(mask);
        let edges: Vec<(usize, usize)> = induced.edges().iter().copied().collect();
        assert!(edges.len() < 64, "too many edges for dsub enumeration");
        for edge_mask in 0u64..1 << edges.len() {
            let mut sub = Graph::empty(induced.vertex_count());
            for &v in induced.loops() {
                sub.add_loop(v).expect("loop in range");
            }
            for (i, &(u, v)) in edges.iter().enumerate() {
                if edge_mask >> i & 1 == 1 {
                    sub.add_edge(u, v).expect("edge in range");
                }
            }
            let entry = downset
                .entry(canonical_key(&sub))
                .or_insert_with(|| (sub, Count::zero()));
            entry.1 += 1u32;
        }
    }
    downset
}

/// Number of subgraphs of `h` isomorphic to `f` obtained by deleting
/// vertices or non-loop edges.
pub fn dsub_count(f: &Graph, h: &Graph) -> Count {
    dsub_downset(h)
        .remove(&canonical_key(f))
        .map(|(_, c)| c)
        .unwrap_or_default()
}

/// The column `F -> dsub⁻¹(F,h)`, obtained by unit-triangular back
/// substitution over the downset of `h` in decreasing key order.
pub fn dsub_inverse_column(h: &Graph) -> CoeffVector {
    let top = dsub_downset(h);
    let members: Vec<(&GraphKey, &Graph)> = top.iter().map(|(k, (g, _))| (k, g)).collect();
    let h_key = canonical_key(h);
    // dsub(F', F) for all F in the downset, one enumeration per F.
    let below: BTreeMap<&GraphKey, Downset> = members.iter().map(|&(k, g)| (k, dsub_downset(g))).collect();

    let mut solved: BTreeMap<&GraphKey, BigInt> = BTreeMap::new();
    for &(key, _) in members.iter().rev() {
        let value = if *key == h_key {
            BigInt::one()
        } else {
            let acc: BigInt = solved
                .iter()
                .filter_map(|(upper, x)| below[upper].get(key).map(|(_, mult)| BigInt::from(mult.clone()) * x))
                .sum();
            -acc
        };
        solved.insert(key, value);
    }

    let mut column = CoeffVector::new();
    for (key, g) in members {
        column.add(key.clone(), g, solved.remove(key).unwrap_or_default());
    }
    column
}

/// `sum over S ⊆ V(h) of (-1)^{|V(h) \ S|} * hom(g, h[S])`.
pub fn vsurj_via_inversion(g: &Graph, h: &Graph) -> Count {
    let n = h.vertex_count();
    assert!(n < 64, "subset sum needs fewer than 64 vertices");
    let total: BigInt = (0u64..1 << n)
        .map(|mask| {
            let term = BigInt::from(hom_count(g, &h.induced_by_mask(mask)));
            if (n - mask.count_ones() as usize).is_multiple_of(2) {
                term
            } else {
                -term
            }
        })
        .sum();
    to_count(total)
}

/// `sum over F of hom(g,F) * dsub⁻¹(F,h)`.
pub fn vesurj_via_inversion(g: &Graph, h: &Graph) -> Count {
    let column = dsub_inverse_column(h);
    to_count(column.evaluate(|f| BigInt::from(hom_count(g, f))))
}

/// A single failed identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub identity: &'static str,
    pub g: String,
    pub h: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExpansionReport {
    pub n_max: usize,
    pub graphs: usize,
    pub pairs_checked: usize,
    pub violations: Vec<Violation>,
}

impl ExpansionReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `hom = sum_S vsurj(·, H[S])` and `hom = sum_F vesurj(·,F) dsub(F,H)`
/// for one ordered pair, appending any failures.
pub fn check_expansions(g: &Graph, h: &Graph, downset: &Downset, out: &mut Vec<Violation>) {
    let hom = hom_count(g, h);
    let n = h.vertex_count();
    let by_subsets: Count = (0u64..1 << n)
        .map(|mask| vsurj_count(g, &h.induced_by_mask(mask)))
        .sum();
    let by_subgraphs: Count = downset.values().map(|(f, mult)| vesurj_count(g, f) * mult).sum();
    for (identity, rhs) in [
        ("hom = sum_S vsurj(G,H[S])", by_subsets),
        ("hom = sum_F vesurj(G,F)·dsub(F,H)", by_subgraphs),
    ] {
        if rhs != hom {
            out.push(Violation {
                identity,
                g: g.to_text(),
                h: h.to_text(),
                lhs: hom.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }
}

/// Checks both forward expansions on every ordered pair of graphs with at
/// most `n_max` vertices.
pub fn verify_expansions(n_max: usize) -> ExpansionReport {
    let graphs = enumerate_graphs(n_max);
    let downsets: Vec<Downset> = graphs.iter().map(|(_, h)| dsub_downset(h)).collect();
    let mut report = ExpansionReport {
        n_max,
        graphs: graphs.len(),
        ..Default::default()
    };
    for (_, g) in &graphs {
        for ((_, h), downset) in graphs.iter().zip(&downsets) {
            check_expansions(g, h, downset, &mut report.violations);
            report.pairs_checked += 1;
        }
    }
    report
}

/// Negative-safe conversion used by callers that hold signed intermediate sums.
pub fn nonnegative(value: &BigInt) -> Option<Count> {
    (!value.is_negative()).then(|| value.magnitude().clone())
}
