//! Recovering individual `hom(·, H)` values from oracle access to a finite
//! linear combination `f(G) = sum over H of alpha(H) * hom(G, H)`.
//!
//! With `S` the closure of `supp(alpha)` under homomorphic images, the matrix
//! `A[F][H] = hom(F, H)` over `S` is invertible. Querying `b(F) = f(G ∪ F)`
//! for every `F` in `S` gives `b = A·beta` with `beta(H) = alpha(H) * hom(G, H)`,
//! so each `hom(G, H)` is `beta(H) / alpha(H)`.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::process::{Command, Stdio};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::canon::{canonical_key, GraphKey};
use crate::counting::{hom_count, vesurj_count, vsurj_count, Count};
use crate::dichotomy::{find_hard_edge, in_c, in_f};
use crate::error::{Error, Result};
use crate::exact;
use crate::graph::Graph;
use crate::inversion::{dsub_inverse_column, CoeffVector};

/// Largest graph whose vertex partitions are enumerated.
pub const MAX_IMAGE_VERTICES: usize = 8;
/// Largest closed set accepted for the linear system.
pub const MAX_SYSTEM_SIZE: usize = 64;

/// Calls `visit` with a class label per vertex for every set partition of
/// `0..n` (restricted growth strings), along with the number of classes.
pub fn for_each_partition(n: usize, mut visit: impl FnMut(&[usize], usize)) {
    fn rec(labels: &mut Vec<usize>, used: usize, n: usize, visit: &mut impl FnMut(&[usize], usize)) {
        if labels.len() == n {
            visit(labels, used);
            return;
        }
        for c in 0..=used {
            labels.push(c);
            rec(labels, used.max(c + 1), n, visit);
            labels.pop();
        }
    }
    rec(&mut Vec::with_capacity(n), 0, n, &mut visit);
}

/// One representative per isomorphism class of quotients of `h`, in key order.
pub fn homomorphic_images(h: &Graph) -> Result<Vec<(GraphKey, Graph)>> {
    let n = h.vertex_count();
    if n > MAX_IMAGE_VERTICES {
        return Err(Error::SizeLimit(format!(
            "homomorphic images need at most {MAX_IMAGE_VERTICES} vertices, got {n}"
        )));
    }
    let mut images = BTreeMap::new();
    for_each_partition(n, |labels, classes| {
        let q = h.quotient_by_labels(labels, classes);
        images.entry(canonical_key(&q)).or_insert(q);
    });
    Ok(images.into_iter().collect())
}

/// Whether every homomorphic image of every member is itself a member.
pub fn is_closed(set: &[(GraphKey, Graph)]) -> Result<bool> {
    let keys: std::collections::BTreeSet<&GraphKey> = set.iter().map(|(k, _)| k).collect();
    for (_, g) in set {
        if !homomorphic_images(g)?.iter().all(|(k, _)| keys.contains(k)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Union of the homomorphic images of `t`, deduplicated and in key order.
pub fn closed_set(t: &[Graph]) -> Result<Vec<(GraphKey, Graph)>> {
    let mut set = BTreeMap::new();
    for g in t {
        for (k, img) in homomorphic_images(g)? {
            set.entry(k).or_insert(img);
        }
    }
    let set: Vec<(GraphKey, Graph)> = set.into_iter().collect();
    if !is_closed(&set)? {
        return Err(Error::NotClosed);
    }
    Ok(set)
}

/// A closed graph set `S`, its hom matrix and the coefficients `alpha`.
#[derive(Clone, Debug)]
pub struct LovaszSystem {
    members: Vec<(GraphKey, Graph)>,
    index: BTreeMap<GraphKey, usize>,
    matrix: Vec<Vec<BigInt>>,
    determinant: BigInt,
    alpha: CoeffVector,
}

/// Builds `A[F][H] = hom(F, H)` over a closed set and checks it is invertible.
pub fn lovasz_matrix(set: &[(GraphKey, Graph)]) -> Result<LovaszSystem> {
    if set.len() > MAX_SYSTEM_SIZE {
        return Err(Error::SizeLimit(format!(
            "closed set has {} members, limit is {MAX_SYSTEM_SIZE}",
            set.len()
        )));
    }
    if !is_closed(set)? {
        return Err(Error::NotClosed);
    }
    let mut members = set.to_vec();
    members.sort_by(|a, b| a.0.cmp(&b.0));
    members.dedup_by(|a, b| a.0 == b.0);
    let matrix: Vec<Vec<BigInt>> = members
        .iter()
        .map(|(_, f)| members.iter().map(|(_, h)| BigInt::from(hom_count(f, h))).collect())
        .collect();
    let determinant = exact::determinant(&matrix)?;
    if determinant.is_zero() {
        return Err(Error::Singular);
    }
    let index = members.iter().enumerate().map(|(i, (k, _))| (k.clone(), i)).collect();
    Ok(LovaszSystem {
        members,
        index,
        matrix,
        determinant,
        alpha: CoeffVector::new(),
    })
}

impl LovaszSystem {
    /// Attaches coefficients; `supp(alpha)` must lie in the closed set.
    pub fn with_alpha(mut self, alpha: CoeffVector) -> Result<Self> {
        for (key, _) in alpha.support() {
            if !self.index.contains_key(key) {
                return Err(Error::Precondition(format!(
                    "coefficient support member {key} is not in the closed set"
                )));
            }
        }
        self.alpha = alpha;
        Ok(self)
    }

    pub fn members(&self) -> &[(GraphKey, Graph)] {
        &self.members
    }

    pub fn matrix(&self) -> &[Vec<BigInt>] {
        &self.matrix
    }

    pub fn determinant(&self) -> &BigInt {
        &self.determinant
    }

    pub fn alpha(&self) -> &CoeffVector {
        &self.alpha
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Queries `b(F) = f(g ∪ F)` for each member `F` (one oracle call each)
    /// and solves `A·beta = b`.
    pub fn solve_beta(&self, oracle: &dyn HomOracle, g: &Graph) -> Result<Vec<BigRational>> {
        let b = self
            .members
            .iter()
            .map(|(_, f)| oracle.eval(&g.disjoint_union(f)))
            .collect::<Result<Vec<BigInt>>>()?;
        exact::solve(&self.matrix, &b)
    }

    /// `beta(target) / alpha(target)`, checked to be a nonnegative integer.
    pub fn extract(&self, beta: &[BigRational], target: &GraphKey) -> Result<Count> {
        let i = *self
            .index
            .get(target)
            .ok_or_else(|| Error::Precondition(format!("target {target} is not in the closed set")))?;
        let alpha = self.alpha.get(target);
        if alpha.is_zero() {
            return Err(Error::Precondition(format!(
                "target {target} is outside the coefficient support"
            )));
        }
        let value = &beta[i] / BigRational::from_integer(alpha);
        if !value.is_integer() || value.is_negative() {
            return Err(Error::InconsistentOracle(value.to_string()));
        }
        Ok(value.to_integer().magnitude().clone())
    }
}

/// Black-box access to a graph parameter.
pub trait HomOracle {
    fn eval(&self, g: &Graph) -> Result<BigInt>;
}

impl<F> HomOracle for F
where
    F: Fn(&Graph) -> Result<BigInt>,
{
    fn eval(&self, g: &Graph) -> Result<BigInt> {
        self(g)
    }
}

/// `hom(g, target)` via one solve of the Lovász system.
pub fn recover_hom(system: &LovaszSystem, oracle: &dyn HomOracle, g: &Graph, target: &GraphKey) -> Result<Count> {
    if !system.alpha.contains(target) {
        return Err(Error::Precondition(format!(
            "target {target} is outside the coefficient support"
        )));
    }
    let beta = system.solve_beta(oracle, g)?;
    system.extract(&beta, target)
}

/// Which surjective count the oracle computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Vsurj,
    Vesurj,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Vsurj => "vsurj",
            Mode::Vesurj => "vesurj",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "vsurj" => Ok(Mode::Vsurj),
            "vesurj" => Ok(Mode::Vesurj),
            other => Err(Error::Precondition(format!("unknown mode `{other}`"))),
        }
    }
}

impl Serialize for Mode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The in-process brute-force counter `vsurj(·, h)` or `vesurj(·, h)`.
#[derive(Clone, Debug)]
pub struct BruteForceOracle {
    pub target: Graph,
    pub mode: Mode,
}

impl HomOracle for BruteForceOracle {
    fn eval(&self, g: &Graph) -> Result<BigInt> {
        Ok(BigInt::from(match self.mode {
            Mode::Vsurj => vsurj_count(g, &self.target),
            Mode::Vesurj => vesurj_count(g, &self.target),
        }))
    }
}

/// Runs an external program once per query: the graph goes to its standard
/// input in text form and the first line of standard output must be a
/// decimal integer.
#[derive(Clone, Debug)]
pub struct ExternalOracle {
    pub program: String,
    pub args: Vec<String>,
}

impl HomOracle for ExternalOracle {
    fn eval(&self, g: &Graph) -> Result<BigInt> {
        let fail = |what: String| Error::Oracle(format!("`{}`: {what}", self.program));
        let mut child = Command::new(&self.program)
            .args(&self.args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| fail(format!("cannot start: {e}")))?;
        child
            .stdin
            .take()
            .expect("piped stdin")
            .write_all(g.to_text().as_bytes())
            .map_err(|e| fail(format!("cannot write query: {e}")))?;
        let output = child
            .wait_with_output()
            .map_err(|e| fail(format!("cannot read answer: {e}")))?;
        if !output.status.success() {
            return Err(fail(format!("exited with {}", output.status)));
        }
        let stdout = String::from_utf8_lossy(&output.stdout);
        let line = stdout.lines().next().unwrap_or("").trim();
        line.parse::<BigInt>()
            .map_err(|_| fail(format!("expected a decimal integer, got `{line}`")))
    }
}

/// Coefficients of `vsurj(·, h)` as a combination of `hom(·, F)`:
/// `alpha(F) = sum over S with h[S] ≅ F of (-1)^{|V(h) \ S|}`.
pub fn alpha_for_vsurj(h: &Graph) -> CoeffVector {
    let n = h.vertex_count();
    assert!(n < 64, "subset enumeration needs fewer than 64 vertices");
    let mut alpha = CoeffVector::new();
    for mask in 0u64..1 << n {
        let sub = h.induced_by_mask(mask);
        let sign = if (n - mask.count_ones() as usize).is_multiple_of(2) {
            1
        } else {
            -1
        };
        alpha.add(canonical_key(&sub), &sub, BigInt::from(sign));
    }
    alpha
}

/// Coefficients of `vesurj(·, h)`: the `dsub` inverse column of `h`.
pub fn alpha_for_vesurj(h: &Graph) -> CoeffVector {
    dsub_inverse_column(h)
}

pub fn alpha_for(mode: Mode, h: &Graph) -> CoeffVector {
    match mode {
        Mode::Vsurj => alpha_for_vsurj(h),
        Mode::Vesurj => alpha_for_vesurj(h),
    }
}

/// Builds the system for `f = vsurj(·, h)` or `vesurj(·, h)`: `alpha` per
/// mode, `S` the closure of its support. The empty graph is its own only
/// image, so it joins `S` exactly when it carries a coefficient; its row is
/// `hom(∅, ·) = 1` and its column `hom(·, ∅)` vanishes off the diagonal.
pub fn system_for(mode: Mode, h: &Graph) -> Result<LovaszSystem> {
    let alpha = alpha_for(mode, h);
    let support: Vec<Graph> = alpha.support().map(|(_, g)| g.clone()).collect();
    lovasz_matrix(&closed_set(&support)?)?.with_alpha(alpha)
}

/// One recovered `hom(g, target)` value next to the brute-force truth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecoveredTarget {
    pub role: &'static str,
    pub graph: String,
    pub deleted_edge: Option<[usize; 2]>,
    pub alpha: String,
    pub recovered: String,
    pub expected: String,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub mode: Mode,
    pub h: String,
    pub g: String,
    pub alpha: CoeffVector,
    pub closed_set: Vec<GraphKey>,
    pub determinant: String,
    pub oracle_calls: usize,
    pub targets: Vec<RecoveredTarget>,
}

impl ReductionReport {
    pub fn ok(&self) -> bool {
        self.targets.iter().all(|t| t.matches)
    }
}

/// Role, graph and deleted edge of one recovery target.
pub type DemoTarget = (&'static str, Graph, Option<[usize; 2]>);

/// Recovery targets: `h` itself, plus `h - e` for the hard edge when `h`
/// is in F but not in C and the mode is `vesurj`.
pub fn demo_targets(mode: Mode, h: &Graph) -> Result<Vec<DemoTarget>> {
    let mut targets = vec![("h", h.clone(), None)];
    if mode == Mode::Vesurj && in_f(h) && !in_c(h) {
        let (u, v) = find_hard_edge(h)?;
        targets.push(("h-e", h.delete_nonloop_edge(u, v)?, Some([u, v])));
    }
    Ok(targets)
}

/// Runs the reduction against the in-process brute-force oracle.
pub fn reduction_demo(h: &Graph, mode: Mode, g: &Graph) -> Result<ReductionReport> {
    let oracle = BruteForceOracle {
        target: h.clone(),
        mode,
    };
    reduction_demo_with(h, mode, g, &oracle)
}

/// Runs the reduction against any oracle for `f = mode(·, h)`.
pub fn reduction_demo_with(h: &Graph, mode: Mode, g: &Graph, oracle: &dyn HomOracle) -> Result<ReductionReport> {
    let system = system_for(mode, h)?;
    let calls = std::cell::Cell::new(0usize);
    let counted = |q: &Graph| {
        calls.set(calls.get() + 1);
        oracle.eval(q)
    };
    let beta = system.solve_beta(&counted, g)?;
    let mut targets = Vec::new();
    for (role, target, deleted_edge) in demo_targets(mode, h)? {
        let key = canonical_key(&target);
        let recovered = system.extract(&beta, &key)?;
        let expected = hom_count(g, &target);
        targets.push(RecoveredTarget {
            role,
            graph: target.to_text(),
            deleted_edge,
            alpha: system.alpha.get(&key).to_string(),
            matches: recovered == expected,
            recovered: recovered.to_string(),
            expected: expected.to_string(),
        });
    }
    Ok(ReductionReport {
        mode,
        h: h.to_text(),
        g: g.to_text(),
        closed_set: system.members.iter().map(|(k, _)| k.clone()).collect(),
        determinant: system.determinant.to_string(),
        oracle_calls: calls.get(),
        alpha: system.alpha,
        targets,
    })
}
