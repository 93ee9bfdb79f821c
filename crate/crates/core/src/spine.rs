//! Semilattice-graded spine systems.
//!
//! A spine system is a finite join-semilattice of nodes, one concrete
//! abelian group per node (ℝⁿ, ℤⁿ or finite abelian), and a compatible
//! family of connecting homomorphisms from higher nodes down to lower
//! ones.  Points are graded group elements plus an absorbing zero; the
//! product maps a mixed pair down to the meet of its nodes and vanishes
//! when no common lower node exists.

use std::collections::HashMap;
use std::fmt;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Concrete group attached to a node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeGroup {
    /// ℝ^dim with addition.
    Real { dim: usize },
    /// ℤ^dim with addition.
    Int { dim: usize },
    /// ⊕ ℤ/mᵢℤ with addition mod the moduli.
    Finite { moduli: Vec<u64> },
}

impl NodeGroup {
    pub fn dim(&self) -> usize {
        match self {
            NodeGroup::Real { dim } | NodeGroup::Int { dim } => *dim,
            NodeGroup::Finite { moduli } => moduli.len(),
        }
    }
}

/// An element of a node group.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupElem {
    Real(Vec<f64>),
    Int(Vec<i64>),
    Finite(Vec<u64>),
}

impl GroupElem {
    fn matches(&self, group: &NodeGroup) -> bool {
        match (self, group) {
            (GroupElem::Real(v), NodeGroup::Real { dim }) => v.len() == *dim,
            (GroupElem::Int(v), NodeGroup::Int { dim }) => v.len() == *dim,
            (GroupElem::Finite(v), NodeGroup::Finite { moduli }) => v.len() == moduli.len(),
            _ => false,
        }
    }

    /// Coordinates as reals (finite coordinates use their representative).
    pub fn as_reals(&self) -> Vec<f64> {
        match self {
            GroupElem::Real(v) => v.clone(),
            GroupElem::Int(v) => v.iter().map(|&x| x as f64).collect(),
            GroupElem::Finite(v) => v.iter().map(|&x| x as f64).collect(),
        }
    }

    /// Euclidean norm; finite coordinates measure distance to 0 in the cycle.
    pub fn norm(&self, group: &NodeGroup) -> f64 {
        match (self, group) {
            (GroupElem::Finite(v), NodeGroup::Finite { moduli }) => v
                .iter()
                .zip(moduli)
                .map(|(&x, &m)| {
                    let r = x % m.max(1);
                    let r = r.min(m.max(1) - r) as f64;
                    r * r
                })
                .sum::<f64>()
                .sqrt(),
            _ => self
                .as_reals()
                .iter()
                .map(|x| x * x)
                .sum::<f64>()
                .sqrt(),
        }
    }
}

/// Connecting homomorphism, stored as a matrix (rows = target dim,
/// columns = source dim).  Integer matrices serve ℤⁿ and finite targets;
/// real matrices serve ℝⁿ targets.
#[derive(Debug, Clone, PartialEq)]
pub enum Hom {
    Real(Vec<Vec<f64>>),
    Int(Vec<Vec<i64>>),
}

impl Hom {
    fn rows(&self) -> usize {
        match self {
            Hom::Real(m) => m.len(),
            Hom::Int(m) => m.len(),
        }
    }

    fn cols(&self) -> usize {
        match self {
            Hom::Real(m) => m.first().map_or(0, |r| r.len()),
            Hom::Int(m) => m.first().map_or(0, |r| r.len()),
        }
    }
}

/// A point of the spine: the absorbing zero or an element over a node.
#[derive(Debug, Clone, PartialEq)]
pub enum SpinePoint {
    Zero,
    At { node: usize, elem: GroupElem },
}

impl SpinePoint {
    pub fn at(node: usize, elem: GroupElem) -> Self {
        SpinePoint::At { node, elem }
    }
}

impl fmt::Display for SpinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpinePoint::Zero => write!(f, "0"),
            SpinePoint::At { node, elem } => write!(f, "node {node}: {elem:?}"),
        }
    }
}

/// Result of a meet lookup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Meet {
    Node(usize),
    /// No common lower bound exists; products across this pair vanish.
    Absent,
}

/// Open window in a node group, for neighbourhood membership.
#[derive(Debug, Clone, PartialEq)]
pub enum Window {
    /// Per-coordinate open intervals.
    Box(Vec<(f64, f64)>),
    /// Open Euclidean ball.
    Ball { center: Vec<f64>, radius: f64 },
}

impl Window {
    fn contains(&self, v: &[f64]) -> bool {
        match self {
            Window::Box(ivs) => {
                ivs.len() == v.len()
                    && ivs
                        .iter()
                        .zip(v)
                        .all(|(&(lo, hi), &x)| x > lo && x < hi)
            }
            Window::Ball { center, radius } => {
                center.len() == v.len()
                    && center
                        .iter()
                        .zip(v)
                        .map(|(&c, &x)| (x - c) * (x - c))
                        .sum::<f64>()
                        .sqrt()
                        < *radius
            }
        }
    }
}

/// Basic-neighbourhood specification at a base node: an open window in the
/// base group and, for finitely many higher nodes, a cocompact constraint
/// encoded as "projection norm exceeds R".
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborhoodSpec {
    pub base_node: usize,
    pub base_window: Window,
    pub cocompact: Vec<(usize, f64)>,
}

/// Report of the closed-ideal check on the complement of the unit group.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealReport {
    /// Whether the supplied node is the maximum of the order.
    pub top_is_maximum: bool,
    pub holds: bool,
    pub pairs_checked: usize,
    pub counterexample: Option<String>,
    pub note: String,
}

/// A validated spine system.
#[derive(Debug, Clone)]
pub struct SpineSystem {
    names: Vec<String>,
    join: Vec<Vec<usize>>,
    groups: Vec<NodeGroup>,
    homs: HashMap<(usize, usize), Hom>,
}

impl SpineSystem {
    /// Validates and builds a spine system.
    ///
    /// `join[i][j]` is the join of nodes i and j; `homs` maps (source,
    /// target) pairs with target < source in the order to the connecting
    /// homomorphism.
    pub fn new(
        names: Vec<String>,
        join: Vec<Vec<usize>>,
        groups: Vec<NodeGroup>,
        homs: HashMap<(usize, usize), Hom>,
    ) -> Result<Self> {
        let k = names.len();
        if k == 0 {
            return Err(Error::InvalidInput("spine needs at least one node".into()));
        }
        if groups.len() != k || join.len() != k || join.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidInput(
                "join table and group list must match the node count".into(),
            ));
        }
        if join.iter().flatten().any(|&v| v >= k) {
            return Err(Error::InvalidInput("join table entry out of range".into()));
        }
        for i in 0..k {
            if join[i][i] != i {
                return Err(Error::InvalidInput(format!("join not idempotent at {i}")));
            }
            for j in 0..k {
                if join[i][j] != join[j][i] {
                    return Err(Error::InvalidInput(format!(
                        "join not commutative at ({i},{j})"
                    )));
                }
                for l in 0..k {
                    if join[join[i][j]][l] != join[i][join[j][l]] {
                        return Err(Error::InvalidInput(format!(
                            "join not associative at ({i},{j},{l})"
                        )));
                    }
                }
            }
        }
        let system = SpineSystem {
            names,
            join,
            groups,
            homs,
        };
        system.validate_homs()?;
        Ok(system)
    }

    fn validate_homs(&self) -> Result<()> {
        let k = self.node_count();
        for i in 0..k {
            for j in 0..k {
                if i != j && self.leq(i, j) {
                    let hom = self.homs.get(&(j, i)).ok_or_else(|| {
                        Error::InvalidInput(format!(
                            "missing hom {} -> {}",
                            self.names[j], self.names[i]
                        ))
                    })?;
                    let shape_ok = hom.rows() == self.groups[i].dim()
                        && (hom.rows() == 0 || hom.cols() == self.groups[j].dim());
                    if !shape_ok {
                        return Err(Error::InvalidInput(format!(
                            "hom {} -> {} has shape {}x{}, expected {}x{}",
                            self.names[j],
                            self.names[i],
                            hom.rows(),
                            hom.cols(),
                            self.groups[i].dim(),
                            self.groups[j].dim()
                        )));
                    }
                    self.validate_hom_kinds(j, i, hom)?;
                }
            }
        }
        // compatibility on chains i < j < l, checked on basis elements
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    if i != j && j != l && i != l && self.leq(i, j) && self.leq(j, l) {
                        for e in self.basis_elems(l) {
                            let via = self.project(j, i, &self.project(l, j, &e)?)?;
                            let direct = self.project(l, i, &e)?;
                            if !elems_close(&via, &direct, 1e-12) {
                                return Err(Error::InvalidInput(format!(
                                    "homs {} -> {} -> {} do not compose to {} -> {}",
                                    self.names[l],
                                    self.names[j],
                                    self.names[i],
                                    self.names[l],
                                    self.names[i]
                                )));
                            }
                        }
                    }
                }
            }
        }
        // additivity spot-check on random pairs
        let mut rng = ChaCha8Rng::seed_from_u64(0x5917);
        let mut keys: Vec<(usize, usize)> = self.homs.keys().copied().collect();
        keys.sort_unstable();
        for (src, dst) in keys {
            for _ in 0..8 {
                let a = self.random_elem(src, &mut rng);
                let b = self.random_elem(src, &mut rng);
                let sum = self.add_in_node(src, &a, &b)?;
                let lhs = self.project(src, dst, &sum)?;
                let rhs = self.add_in_node(
                    dst,
                    &self.project(src, dst, &a)?,
                    &self.project(src, dst, &b)?,
                )?;
                if !elems_close(&lhs, &rhs, 1e-12) {
                    return Err(Error::InvalidInput(format!(
                        "hom {} -> {} is not additive",
                        self.names[src], self.names[dst]
                    )));
                }
            }
        }
        Ok(())
    }

    fn validate_hom_kinds(&self, src: usize, dst: usize, hom: &Hom) -> Result<()> {
        let bad = |msg: &str| {
            Err(Error::InvalidInput(format!(
                "hom {} -> {}: {msg}",
                self.names[src], self.names[dst]
            )))
        };
        match (&self.groups[src], &self.groups[dst], hom) {
            (_, NodeGroup::Real { .. }, _) => {
                if matches!(self.groups[src], NodeGroup::Finite { .. }) {
                    return bad("finite groups admit no nonzero maps into vector groups");
                }
                Ok(())
            }
            (NodeGroup::Int { .. }, NodeGroup::Int { .. }, Hom::Int(_)) => Ok(()),
            (_, NodeGroup::Int { .. }, _) => {
                bad("integer targets need integer matrices from integer sources")
            }
            (NodeGroup::Int { .. }, NodeGroup::Finite { .. }, Hom::Int(_)) => Ok(()),
            (NodeGroup::Finite { moduli: ms }, NodeGroup::Finite { moduli: mt }, Hom::Int(m)) => {
                // well-definedness: each column annihilates its source modulus
                for (s, &m_src) in ms.iter().enumerate() {
                    for (t, &m_dst) in mt.iter().enumerate() {
                        let v = m[t][s].rem_euclid(m_dst as i64) as u128;
                        if !(v * m_src as u128).is_multiple_of(m_dst as u128) {
                            return bad("matrix does not respect the source moduli");
                        }
                    }
                }
                Ok(())
            }
            (_, NodeGroup::Finite { .. }, _) => {
                bad("finite targets need integer matrices from integer or finite sources")
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn group(&self, node: usize) -> &NodeGroup {
        &self.groups[node]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i][j]
    }

    /// Order relation: i ≤ j iff i ∨ j = j.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.join[i][j] == j
    }

    /// Greatest lower bound of two nodes, [`Meet::Absent`] when no common
    /// lower bound exists, and an error when lower bounds exist without a
    /// greatest one.
    pub fn meet(&self, i: usize, j: usize) -> Result<Meet> {
        let k = self.node_count();
        if i >= k || j >= k {
            return Err(Error::InvalidInput("node index out of range".into()));
        }
        let lower: Vec<usize> = (0..k)
            .filter(|&m| self.leq(m, i) && self.leq(m, j))
            .collect();
        if lower.is_empty() {
            return Ok(Meet::Absent);
        }
        let greatest: Vec<usize> = lower
            .iter()
            .copied()
            .filter(|&m| lower.iter().all(|&x| self.leq(x, m)))
            .collect();
        match greatest.as_slice() {
            [m] => Ok(Meet::Node(*m)),
            _ => Err(Error::InvalidSpine(format!(
                "nodes {} and {} have lower bounds but no greatest one",
                self.names[i], self.names[j]
            ))),
        }
    }

    /// Applies the connecting homomorphism from `src` down to `dst ≤ src`.
    pub fn project(&self, src: usize, dst: usize, elem: &GroupElem) -> Result<GroupElem> {
        if !elem.matches(&self.groups[src]) {
            return Err(Error::InvalidInput("element does not match its node".into()));
        }
        if src == dst {
            return Ok(elem.clone());
        }
        if !self.leq(dst, src) {
            return Err(Error::InvalidInput(format!(
                "no hom from {} to {}",
                self.names[src], self.names[dst]
            )));
        }
        let hom = self
            .homs
            .get(&(src, dst))
            .ok_or_else(|| Error::InvalidInput("missing hom".into()))?;
        let src_reals = elem.as_reals();
        match (&self.groups[dst], hom) {
            (NodeGroup::Real { dim }, Hom::Real(m)) => Ok(GroupElem::Real(
                (0..*dim)
                    .map(|t| m[t].iter().zip(&src_reals).map(|(a, b)| a * b).sum())
                    .collect(),
            )),
            (NodeGroup::Real { dim }, Hom::Int(m)) => Ok(GroupElem::Real(
                (0..*dim)
                    .map(|t| {
                        m[t].iter()
                            .zip(&src_reals)
                            .map(|(&a, b)| a as f64 * b)
                            .sum()
                    })
                    .collect(),
            )),
            (NodeGroup::Int { dim }, Hom::Int(m)) => {
                let GroupElem::Int(v) = elem else {
                    return Err(Error::InvalidInput("integer hom needs integer source".into()));
                };
                Ok(GroupElem::Int(
                    (0..*dim)
                        .map(|t| m[t].iter().zip(v).map(|(a, b)| a * b).sum())
                        .collect(),
                ))
            }
            (NodeGroup::Finite { moduli }, Hom::Int(m)) => {
                let ints: Vec<i64> = match elem {
                    GroupElem::Int(v) => v.clone(),
                    GroupElem::Finite(v) => v.iter().map(|&x| x as i64).collect(),
                    GroupElem::Real(_) => {
                        return Err(Error::InvalidInput(
                            "finite targets need discrete sources".into(),
                        ))
                    }
                };
                Ok(GroupElem::Finite(
                    moduli
                        .iter()
                        .enumerate()
                        .map(|(t, &md)| {
                            let s: i64 = m[t].iter().zip(&ints).map(|(a, b)| a * b).sum();
                            s.rem_euclid(md as i64) as u64
                        })
                        .collect(),
                ))
            }
            _ => Err(Error::InvalidInput("hom kind mismatch".into())),
        }
    }

    fn add_in_node(&self, node: usize, a: &GroupElem, b: &GroupElem) -> Result<GroupElem> {
        if !a.matches(&self.groups[node]) || !b.matches(&self.groups[node]) {
            return Err(Error::InvalidInput("element does not match its node".into()));
        }
        Ok(match (a, b, &self.groups[node]) {
            (GroupElem::Real(x), GroupElem::Real(y), _) => {
                GroupElem::Real(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (GroupElem::Int(x), GroupElem::Int(y), _) => {
                GroupElem::Int(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (GroupElem::Finite(x), GroupElem::Finite(y), NodeGroup::Finite { moduli }) => {
                GroupElem::Finite(
                    x.iter()
                        .zip(y)
                        .zip(moduli)
                        .map(|((p, q), &m)| (p + q) % m)
                        .collect(),
                )
            }
            _ => unreachable!("matches() guards the variants"),
        })
    }

    /// Graded product: zero absorbs, same-node pairs multiply in the node
    /// group, mixed pairs project to the meet and multiply there, or
    /// vanish when the meet is absent.
    pub fn spine_product(&self, p: &SpinePoint, q: &SpinePoint) -> Result<SpinePoint> {
        let (pi, pe, qi, qe) = match (p, q) {
            (SpinePoint::Zero, _) | (_, SpinePoint::Zero) => return Ok(SpinePoint::Zero),
            (
                SpinePoint::At { node: pi, elem: pe },
                SpinePoint::At { node: qi, elem: qe },
            ) => (*pi, pe, *qi, qe),
        };
        if pi >= self.node_count() || qi >= self.node_count() {
            return Err(Error::InvalidInput("node index out of range".into()));
        }
        match self.meet(pi, qi)? {
            Meet::Absent => Ok(SpinePoint::Zero),
            Meet::Node(m) => {
                let a = self.project(pi, m, pe)?;
                let b = self.project(qi, m, qe)?;
                Ok(SpinePoint::At {
                    node: m,
                    elem: self.add_in_node(m, &a, &b)?,
                })
            }
        }
    }

    /// Checks on random samples that products never climb back into the
    /// candidate unit node, i.e. that its complement absorbs.
    pub fn complement_is_ideal(
        &self,
        top_node: usize,
        sample_count: usize,
        seed: u64,
    ) -> Result<IdealReport> {
        if top_node >= self.node_count() {
            return Err(Error::InvalidInput("node index out of range".into()));
        }
        let top_is_maximum = (0..self.node_count()).all(|j| self.leq(j, top_node));
        if !top_is_maximum {
            return Ok(IdealReport {
                top_is_maximum: false,
                holds: false,
                pairs_checked: 0,
                counterexample: None,
                note: "no open unit group candidate".into(),
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pairs_checked = 0;
        for i in 0..self.node_count() {
            if i == top_node && self.node_count() > 1 {
                continue;
            }
            for j in 0..self.node_count() {
                for _ in 0..sample_count.max(1) {
                    let p = SpinePoint::at(i, self.random_elem(i, &mut rng));
                    let q = SpinePoint::at(j, self.random_elem(j, &mut rng));
                    let prod = self.spine_product(&p, &q)?;
                    pairs_checked += 1;
                    if self.node_count() > 1 {
                        if let SpinePoint::At { node, .. } = &prod {
                            if *node == top_node && i != top_node {
                                return Ok(IdealReport {
                                    top_is_maximum,
                                    holds: false,
                                    pairs_checked,
                                    counterexample: Some(format!("{p} * {q} = {prod}")),
                                    note: "complement is not an ideal".into(),
                                });
                            }
                        }
                    }
                }
            }
        }
        let note = if self.node_count() == 1 {
            "complement is empty; ideal condition holds vacuously".into()
        } else {
            "complement absorbs all sampled products".into()
        };
        Ok(IdealReport {
            top_is_maximum,
            holds: true,
            pairs_checked,
            counterexample: None,
            note,
        })
    }

    /// Membership of a point in a basic neighbourhood of the spine
    /// topology: the point must live over a node above the base, project
    /// into the base window, and have large projections at every listed
    /// intermediate node (the cocompact constraints).
    pub fn in_basic_neighborhood(
        &self,
        point: &SpinePoint,
        spec: &NeighborhoodSpec,
    ) -> Result<bool> {
        if spec.base_node >= self.node_count() {
            return Err(Error::InvalidSpec("base node out of range".into()));
        }
        for &(ik, _) in &spec.cocompact {
            if ik >= self.node_count() {
                return Err(Error::InvalidSpec("cocompact node out of range".into()));
            }
            if !(self.leq(spec.base_node, ik) && ik != spec.base_node) {
                return Err(Error::InvalidSpec(format!(
                    "cocompact node {} is not strictly above the base",
                    self.names[ik]
                )));
            }
        }
        let (node, elem) = match point {
            SpinePoint::Zero => return Ok(false),
            SpinePoint::At { node, elem } => (*node, elem),
        };
        if !self.leq(spec.base_node, node) {
            return Ok(false);
        }
        let base_proj = self.project(node, spec.base_node, elem)?;
        if !spec.base_window.contains(&base_proj.as_reals()) {
            return Ok(false);
        }
        for &(ik, radius) in &spec.cocompact {
            if self.leq(ik, node) {
                let proj = self.project(node, ik, elem)?;
                if proj.norm(&self.groups[ik]) <= radius {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Worst associativity deviation over random triples; incomparable
    /// grading outcomes count as infinite.
    pub fn sampled_associativity(&self, triples: usize, seed: u64) -> Result<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst: f64 = 0.0;
        for _ in 0..triples {
            let pick = |rng: &mut ChaCha8Rng| {
                let node = rng.random_range(0..self.node_count());
                SpinePoint::At {
                    node,
                    elem: self.random_elem(node, rng),
                }
            };
            let (p, q, r) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let lhs = self.spine_product(&self.spine_product(&p, &q)?, &r)?;
            let rhs = self.spine_product(&p, &self.spine_product(&q, &r)?)?;
            worst = worst.max(match (&lhs, &rhs) {
                (SpinePoint::Zero, SpinePoint::Zero) => 0.0,
                (
                    SpinePoint::At { node: a, elem: x },
                    SpinePoint::At { node: b, elem: y },
                ) if a == b => x
                    .as_reals()
                    .iter()
                    .zip(y.as_reals())
                    .map(|(u, v)| (u - v).abs())
                    .fold(0.0, f64::max),
                _ => f64::INFINITY,
            });
        }
        Ok(worst)
    }

    /// Standard basis elements of a node group (unit vectors).
    fn basis_elems(&self, node: usize) -> Vec<GroupElem> {
        match &self.groups[node] {
            NodeGroup::Real { dim } => (0..*dim)
                .map(|i| {
                    let mut v = vec![0.0; *dim];
                    v[i] = 1.0;
                    GroupElem::Real(v)
                })
                .collect(),
            NodeGroup::Int { dim } => (0..*dim)
                .map(|i| {
                    let mut v = vec![0i64; *dim];
                    v[i] = 1;
                    GroupElem::Int(v)
                })
                .collect(),
            NodeGroup::Finite { moduli } => (0..moduli.len())
                .map(|i| {
                    let mut v = vec![0u64; moduli.len()];
                    v[i] = 1 % moduli[i].max(1);
                    GroupElem::Finite(v)
                })
                .collect(),
        }
    }

    /// Draws a random element of a node group.
    pub fn random_elem(&self, node: usize, rng: &mut ChaCha8Rng) -> GroupElem {
        match &self.groups[node] {
            NodeGroup::Real { dim } => {
                GroupElem::Real((0..*dim).map(|_| rng.random_range(-5.0..5.0)).collect())
            }
            NodeGroup::Int { dim } => {
                GroupElem::Int((0..*dim).map(|_| rng.random_range(-9i64..10)).collect())
            }
            NodeGroup::Finite { moduli } => GroupElem::Finite(
                moduli
                    .iter()
                    .map(|&m| rng.random_range(0..m.max(1)))
                    .collect(),
            ),
        }
    }

    /// Chain ℝ¹ ⊂ ℝ² ⊂ … ⊂ ℝ^depth with leading-coordinate projections.
    pub fn projection_chain(depth: usize) -> Result<SpineSystem> {
        let names = (1..=depth).map(|n| format!("R{n}")).collect();
        let join = (0..depth)
            .map(|i| (0..depth).map(|j| i.max(j)).collect())
            .collect();
        let groups = (1..=depth).map(|n| NodeGroup::Real { dim: n }).collect();
        let mut homs = HashMap::new();
        for hi in 0..depth {
            for lo in 0..hi {
                // project R^{hi+1} onto its first lo+1 coordinates
                let m: Vec<Vec<f64>> = (0..=lo)
                    .map(|r| {
                        (0..=hi)
                            .map(|c| if r == c { 1.0 } else { 0.0 })
                            .collect()
                    })
                    .collect();
                homs.insert((hi, lo), Hom::Real(m));
            }
        }
        SpineSystem::new(names, join, groups, homs)
    }

    /// The flat system over G = H × H (H = ℝ) with left and right
    /// projections: three nodes l, r and the top o = l ∨ r, with no node
    /// below both l and r.
    pub fn flat_product_pair() -> Result<SpineSystem> {
        let names = vec!["l".into(), "r".into(), "o".into()];
        // l v r = o, o is the maximum; l and r are incomparable.
        let join = vec![vec![0, 2, 2], vec![2, 1, 2], vec![2, 2, 2]];
        let groups = vec![
            NodeGroup::Real { dim: 1 },
            NodeGroup::Real { dim: 1 },
            NodeGroup::Real { dim: 2 },
        ];
        let mut homs = HashMap::new();
        homs.insert((2, 0), Hom::Real(vec![vec![1.0, 0.0]]));
        homs.insert((2, 1), Hom::Real(vec![vec![0.0, 1.0]]));
        SpineSystem::new(names, join, groups, homs)
    }
}

fn elems_close(a: &GroupElem, b: &GroupElem, tol: f64) -> bool {
    match (a, b) {
        (GroupElem::Int(x), GroupElem::Int(y)) => x == y,
        (GroupElem::Finite(x), GroupElem::Finite(y)) => x == y,
        _ => {
            let x = a.as_reals();
            let y = b.as_reals();
            x.len() == y.len()
                && x.iter()
                    .zip(&y)
                    .all(|(p, q)| (p - q).abs() <= tol * (1.0 + p.abs().max(q.abs())))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> SpineSystem {
        SpineSystem::projection_chain(3).unwrap()
    }

    #[test]
    fn meets_on_a_chain() {
        let s = chain3();
        assert_eq!(s.meet(1, 2).unwrap(), Meet::Node(1));
        assert_eq!(s.meet(2, 2).unwrap(), Meet::Node(2));
        assert_eq!(s.meet(0, 2).unwrap(), Meet::Node(0));
    }

    #[test]
    fn meet_absent_on_flat_pair() {
        let s = SpineSystem::flat_product_pair().unwrap();
        assert_eq!(s.meet(0, 1).unwrap(), Meet::Absent);
        assert_eq!(s.meet(0, 2).unwrap(), Meet::Node(0));
    }

    #[test]
    fn mixed_products_vanish_on_flat_pair() {
        let s = SpineSystem::flat_product_pair().unwrap();
        let p = SpinePoint::at(0, GroupElem::Real(vec![1.5]));
        let q = SpinePoint::at(1, GroupElem::Real(vec![-0.5]));
        assert_eq!(s.spine_product(&p, &q).unwrap(), SpinePoint::Zero);
    }

    #[test]
    fn truncation_products_on_chain() {
        let s = chain3();
        let p = SpinePoint::at(2, GroupElem::Real(vec![1.0, 2.0, 3.0]));
        let q = SpinePoint::at(1, GroupElem::Real(vec![10.0, 20.0]));
        let prod = s.spine_product(&p, &q).unwrap();
        assert_eq!(
            prod,
            SpinePoint::at(1, GroupElem::Real(vec![11.0, 22.0]))
        );
    }

    #[test]
    fn zero_absorbs() {
        let s = chain3();
        let p = SpinePoint::at(2, GroupElem::Real(vec![1.0, 2.0, 3.0]));
        assert_eq!(
            s.spine_product(&p, &SpinePoint::Zero).unwrap(),
            SpinePoint::Zero
        );
        assert_eq!(
            s.spine_product(&SpinePoint::Zero, &p).unwrap(),
            SpinePoint::Zero
        );
    }

    #[test]
    fn ideal_check_on_chain_and_flat() {
        let s = chain3();
        let r = s.complement_is_ideal(2, 20, 1).unwrap();
        assert!(r.top_is_maximum && r.holds);

        let f = SpineSystem::flat_product_pair().unwrap();
        let r = f.complement_is_ideal(2, 20, 1).unwrap();
        assert!(r.top_is_maximum && r.holds);

        // l is not a maximum
        let r = f.complement_is_ideal(0, 5, 1).unwrap();
        assert!(!r.top_is_maximum);
        assert_eq!(r.note, "no open unit group candidate");
    }

    #[test]
    fn single_node_ideal_vacuous() {
        let s = SpineSystem::projection_chain(1).unwrap();
        let r = s.complement_is_ideal(0, 5, 1).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn neighborhood_membership() {
        let s = chain3();
        let spec = NeighborhoodSpec {
            base_node: 0,
            base_window: Window::Box(vec![(0.0, 2.0)]),
            cocompact: vec![(2, 5.0)],
        };
        // point in the base node inside the window
        let p = SpinePoint::at(0, GroupElem::Real(vec![1.0]));
        assert!(s.in_basic_neighborhood(&p, &spec).unwrap());
        // higher node, base projection inside, large tail norm
        let q = SpinePoint::at(2, GroupElem::Real(vec![1.0, 9.0, 9.0]));
        assert!(s.in_basic_neighborhood(&q, &spec).unwrap());
        // higher node with small tail norm fails the cocompact constraint
        let small = SpinePoint::at(2, GroupElem::Real(vec![1.0, 0.1, 0.1]));
        assert!(!s.in_basic_neighborhood(&small, &spec).unwrap());
        // zero point is never inside
        assert!(!s.in_basic_neighborhood(&SpinePoint::Zero, &spec).unwrap());
    }

    #[test]
    fn neighborhood_incomparable_node() {
        let f = SpineSystem::flat_product_pair().unwrap();
        let spec = NeighborhoodSpec {
            base_node: 0,
            base_window: Window::Ball {
                center: vec![0.0],
                radius: 10.0,
            },
            cocompact: vec![],
        };
        let p = SpinePoint::at(1, GroupElem::Real(vec![0.0]));
        assert!(!f.in_basic_neighborhood(&p, &spec).unwrap());
    }

    #[test]
    fn neighborhood_spec_validation() {
        let s = chain3();
        let bad = NeighborhoodSpec {
            base_node: 1,
            base_window: Window::Box(vec![(0.0, 1.0), (0.0, 1.0)]),
            cocompact: vec![(0, 2.0)], // node 0 is below the base
        };
        let p = SpinePoint::at(1, GroupElem::Real(vec![0.5, 0.5]));
        assert!(matches!(
            s.in_basic_neighborhood(&p, &bad),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn finite_group_spine() {
        // Z/4 -> Z/2 reduction chain
        let names = vec!["Z2".into(), "Z4".into()];
        let join = vec![vec![0, 1], vec![1, 1]];
        let groups = vec![
            NodeGroup::Finite { moduli: vec![2] },
            NodeGroup::Finite { moduli: vec![4] },
        ];
        let mut homs = HashMap::new();
        homs.insert((1, 0), Hom::Int(vec![vec![1]]));
        let s = SpineSystem::new(names, join, groups, homs).unwrap();
        let p = SpinePoint::at(1, GroupElem::Finite(vec![3]));
        let q = SpinePoint::at(0, GroupElem::Finite(vec![1]));
        let prod = s.spine_product(&p, &q).unwrap();
        assert_eq!(prod, SpinePoint::at(0, GroupElem::Finite(vec![0])));
    }

    #[test]
    fn finite_spine_associativity_exhaustive() {
        // Z/4 -> Z/2 chain: every triple of points associates exactly
        let names = vec!["Z2".into(), "Z4".into()];
        let join = vec![vec![0, 1], vec![1, 1]];
        let groups = vec![
            NodeGroup::Finite { moduli: vec![2] },
            NodeGroup::Finite { moduli: vec![4] },
        ];
        let mut homs = HashMap::new();
        homs.insert((1, 0), Hom::Int(vec![vec![1]]));
        let s = SpineSystem::new(names, join, groups, homs).unwrap();

        let mut points = vec![SpinePoint::Zero];
        for x in 0..2u64 {
            points.push(SpinePoint::at(0, GroupElem::Finite(vec![x])));
        }
        for x in 0..4u64 {
            points.push(SpinePoint::at(1, GroupElem::Finite(vec![x])));
        }
        for p in &points {
            for q in &points {
                for r in &points {
                    let lhs = s
                        .spine_product(&s.spine_product(p, q).unwrap(), r)
                        .unwrap();
                    let rhs = s
                        .spine_product(p, &s.spine_product(q, r).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs, "triple {p} {q} {r}");
                }
            }
        }
    }

    #[test]
    fn invalid_join_table_rejected() {
        let names = vec!["a".into(), "b".into()];
        let join = vec![vec![0, 0], vec![1, 1]]; // not commutative
        let groups = vec![NodeGroup::Int { dim: 1 }, NodeGroup::Int { dim: 1 }];
        assert!(matches!(
            SpineSystem::new(names, join, groups, HashMap::new()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn subspace_lattice_products_match_projections() {
        // subspaces of R^2: {0}, X, Y, R^2 with orthogonal projections
        let names = vec!["zero".into(), "x".into(), "y".into(), "plane".into()];
        let join = vec![
            vec![0, 1, 2, 3],
            vec![1, 1, 3, 3],
            vec![2, 3, 2, 3],
            vec![3, 3, 3, 3],
        ];
        let groups = vec![
            NodeGroup::Real { dim: 0 },
            NodeGroup::Real { dim: 1 },
            NodeGroup::Real { dim: 1 },
            NodeGroup::Real { dim: 2 },
        ];
        let mut homs = HashMap::new();
        homs.insert((1, 0), Hom::Real(vec![]));
        homs.insert((2, 0), Hom::Real(vec![]));
        homs.insert((3, 0), Hom::Real(vec![]));
        homs.insert((3, 1), Hom::Real(vec![vec![1.0, 0.0]]));
        homs.insert((3, 2), Hom::Real(vec![vec![0.0, 1.0]]));
        let s = SpineSystem::new(names, join, groups, homs).unwrap();

        // a point over X times a point over Y lands over X ∩ Y = {0}
        let p = SpinePoint::at(1, GroupElem::Real(vec![2.0]));
        let q = SpinePoint::at(2, GroupElem::Real(vec![-1.0]));
        let prod = s.spine_product(&p, &q).unwrap();
        assert_eq!(prod, SpinePoint::at(0, GroupElem::Real(vec![])));

        // a plane point times an X point projects onto X and adds
        let r = SpinePoint::at(3, GroupElem::Real(vec![0.5, 7.0]));
        let prod = s.spine_product(&r, &p).unwrap();
        assert_eq!(prod, SpinePoint::at(1, GroupElem::Real(vec![2.5])));
    }
}
