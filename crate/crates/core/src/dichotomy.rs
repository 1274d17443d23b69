//! Recognition of the tractable target families and the polynomial-time
//! counters that go with them.
//!
//! * family F: disjoint unions of irreflexive bicliques and reflexive cliques;
//! * family C: disjoint unions of irreflexive stars and reflexive cliques on at
//!   most two vertices. C ⊆ F, and C is closed under deleting vertices and
//!   non-loop edges.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Pow, Zero};
use serde::{Serialize, Serializer};

use crate::counting::Count;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::inversion::{dsub_inverse_column, nonnegative};

/// Shape of a connected target component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentShape {
    /// `K_{a,b}` with `a >= b`, no loops. An isolated vertex is `(1, 0)`.
    IrreflexiveBiclique {
        a: usize,
        b: usize,
    },
    /// `k >= 1` vertices, all loops and all edges present.
    ReflexiveClique {
        k: usize,
    },
    NotRecognized,
}

impl ComponentShape {
    pub fn in_f(self) -> bool {
        self != ComponentShape::NotRecognized
    }

    pub fn in_c(self) -> bool {
        match self {
            ComponentShape::IrreflexiveBiclique { b, .. } => b <= 1,
            ComponentShape::ReflexiveClique { k } => k <= 2,
            ComponentShape::NotRecognized => false,
        }
    }
}

impl fmt::Display for ComponentShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentShape::IrreflexiveBiclique { a, b } => write!(f, "biclique({a},{b})"),
            ComponentShape::ReflexiveClique { k } => write!(f, "reflexive_clique({k})"),
            ComponentShape::NotRecognized => f.write_str("unrecognized"),
        }
    }
}

impl Serialize for ComponentShape {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Two-colouring of a loop-free connected graph, as part sizes `(x, y)` with
/// the start vertex in the first part. `None` if there is an odd cycle.
fn bipartition(g: &Graph) -> Option<(usize, usize)> {
    let n = g.vertex_count();
    if n == 0 {
        return Some((0, 0));
    }
    let nbrs = g.neighbors();
    let mut side: Vec<Option<bool>> = vec![None; n];
    let mut counts = (0, 0);
    for start in 0..n {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(false);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let s = side[v].expect("visited");
            if s {
                counts.1 += 1;
            } else {
                counts.0 += 1;
            }
            for &w in &nbrs[v] {
                match side[w] {
                    None => {
                        side[w] = Some(!s);
                        stack.push(w);
                    }
                    Some(t) if t == s => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(counts)
}

/// Shape of a connected graph.
pub fn component_shape(c: &Graph) -> ComponentShape {
    let n = c.vertex_count();
    let m = c.edges().len();
    if n == 0 {
        return ComponentShape::NotRecognized;
    }
    if c.is_reflexive() && m == n * (n - 1) / 2 {
        return ComponentShape::ReflexiveClique { k: n };
    }
    if c.is_irreflexive() && c.component_vertex_sets().len() == 1 {
        if let Some((x, y)) = bipartition(c) {
            if m == x * y || n == 1 {
                return ComponentShape::IrreflexiveBiclique {
                    a: x.max(y),
                    b: x.min(y),
                };
            }
        }
    }
    ComponentShape::NotRecognized
}

/// Membership in a family together with the per-component shapes, in
/// component order (by smallest vertex).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub components: Vec<ComponentShape>,
}

fn shapes(h: &Graph) -> Vec<ComponentShape> {
    h.connected_components().iter().map(component_shape).collect()
}

pub fn classify_f(h: &Graph) -> Membership {
    let components = shapes(h);
    Membership {
        member: components.iter().all(|s| s.in_f()),
        components,
    }
}

pub fn classify_c(h: &Graph) -> Membership {
    let components = shapes(h);
    Membership {
        member: components.iter().all(|s| s.in_c()),
        components,
    }
}

pub fn in_f(h: &Graph) -> bool {
    classify_f(h).member
}

pub fn in_c(h: &Graph) -> bool {
    classify_c(h).member
}

/// Smallest non-loop edge `e` (lexicographically) with `h - e` outside F.
/// Requires `h` in F but not in C.
pub fn find_hard_edge(h: &Graph) -> Result<(usize, usize)> {
    if !in_f(h) {
        return Err(Error::Precondition("target is not in family F".into()));
    }
    if in_c(h) {
        return Err(Error::Precondition("target is already in family C".into()));
    }
    h.edges()
        .iter()
        .copied()
        .find(|&(u, v)| !in_f(&h.delete_nonloop_edge(u, v).expect("edge of h")))
        .ok_or_else(|| Error::Precondition("no edge leaves family F".into()))
}

/// JSON-facing classification record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    #[serde(rename = "in_F")]
    pub in_f: bool,
    #[serde(rename = "in_C")]
    pub in_c: bool,
    pub components: Vec<ComponentShape>,
    pub hard_edge: Option<[usize; 2]>,
}

pub fn classify(h: &Graph) -> Classification {
    let f = classify_f(h);
    let c = in_c(h);
    let hard_edge = if f.member && !c {
        find_hard_edge(h).ok().map(|(u, v)| [u, v])
    } else {
        None
    };
    Classification {
        in_f: f.member,
        in_c: c,
        components: f.components,
        hard_edge,
    }
}

/// `hom(g_i, target)` for a connected pattern with the given profile.
fn component_hom(vertices: usize, looped: bool, parts: Option<(usize, usize)>, target: ComponentShape) -> BigUint {
    match target {
        ComponentShape::ReflexiveClique { k } => BigUint::from(k).pow(vertices),
        ComponentShape::IrreflexiveBiclique { a, b } => match parts {
            Some((x, y)) if !looped => {
                let (a, b) = (BigUint::from(a), BigUint::from(b));
                a.clone().pow(x) * b.clone().pow(y) + a.pow(y) * b.pow(x)
            }
            _ => BigUint::zero(),
        },
        ComponentShape::NotRecognized => unreachable!("checked by caller"),
    }
}

/// `hom(g, h)` for `h` given by its component shapes (all in F). Multiplies
/// over the components of `g`, summing over target components for each.
pub fn hom_with_shapes(g: &Graph, target: &[ComponentShape]) -> Result<Count> {
    if target.iter().any(|s| !s.in_f()) {
        return Err(Error::Precondition("target is not in family F".into()));
    }
    let mut total = BigUint::from(1u32);
    for comp in g.connected_components() {
        let parts = bipartition(&comp);
        let looped = !comp.is_irreflexive();
        let sum: BigUint = target
            .iter()
            .map(|&s| component_hom(comp.vertex_count(), looped, parts, s))
            .sum();
        if sum.is_zero() {
            return Ok(Count::zero());
        }
        total *= sum;
    }
    Ok(total)
}

/// `hom(g, h)` in time polynomial in `g` for `h` in F.
pub fn hom_polytime(g: &Graph, h: &Graph) -> Result<Count> {
    let f = classify_f(h);
    if !f.member {
        return Err(Error::Precondition("target is not in family F".into()));
    }
    hom_with_shapes(g, &f.components)
}

/// Vertex-surjective count for `h` in F by inclusion-exclusion over vertex
/// subsets; every induced subgraph of `h` stays in F.
pub fn vsurj_polytime(g: &Graph, h: &Graph) -> Result<Count> {
    if !in_f(h) {
        return Err(Error::Precondition("target is not in family F".into()));
    }
    let n = h.vertex_count();
    let mut total = BigInt::zero();
    for mask in 0u64..1 << n {
        let term = BigInt::from(hom_polytime(g, &h.induced_by_mask(mask))?);
        if (n - mask.count_ones() as usize).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    nonnegative(&total).ok_or_else(|| Error::InconsistentOracle(total.to_string()))
}

/// Compaction count for `h` in C through the `dsub` inverse column; every
/// member of the downset of `h` stays in C.
pub fn vesurj_polytime(g: &Graph, h: &Graph) -> Result<Count> {
    if !in_c(h) {
        return Err(Error::Precondition("target is not in family C".into()));
    }
    let column = dsub_inverse_column(h);
    let mut total = BigInt::zero();
    for (_, f, coeff) in column.iter() {
        total += coeff * BigInt::from(hom_polytime(g, f)?);
    }
    nonnegative(&total).ok_or_else(|| Error::InconsistentOracle(total.to_string()))
}
