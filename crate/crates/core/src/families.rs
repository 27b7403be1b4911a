//! Labeled constructions of the named hypergraph families and the two
//! edge transformations used to compare them.
//!
//! The decorated families all have `n = m·k(k−1)` vertices, `m·k` edges,
//! exactly one cycle, and a perfect matching recorded at build time:
//!
//! * `S` — star: `a` edges through one hub vertex `u0` (acyclic).
//! * `C` — linear cycle of length `l >= 3`.
//! * `C2` — two edges sharing the two vertices `u1`, `u2`.
//! * `A` — triangle with a star of `m−3` extra edges at corner `v1` and a
//!   pendent edge at every vertex; matching = pendent edges.
//! * `B` / `D` — triangle with a star of `m−2` edges at `v1` and pendent
//!   edges at every vertex off the designated cycle edge (`e1` joining
//!   `v1`–`v2` for `B`, `e2` joining `v2`–`v3` for `D`); that cycle edge
//!   joins the matching in place of the missing pendents.
//! * `I` / `J` — two-edge cycle with a star of `m−1` edges at the shared
//!   vertex `u1` (`I`) or at the interior vertex `u2_1` of the second
//!   cycle edge (`J`), pendent edges everywhere off the matched cycle
//!   edge `e1`.
//! * `L` — two-edge cycle with a star of `m−2` edges at `u1` and pendent
//!   edges at every vertex; matching = pendent edges.
//!
//! Vertex labels follow the drawing conventions: linear-cycle corners
//! `v1, v2, ...` with interior vertices `v{i}_{j}`; two-edge-cycle shared
//! vertices `u1`, `u2` with interiors `u1_{j}` (first edge) and `u2_{j}`
//! (second edge); standalone star hub `u0`. Edge labels: cycle edges
//! `e1, e2, ...`, star edges `g1, ...`, pendent edges `p1, ...` in
//! attachment order. New vertices always take the next unused indices, so
//! every build is reproducible byte for byte.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Matching, UniformHypergraph};

/// Tag for a named construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Star with `a` edges.
    S,
    /// Linear cycle of length `l`.
    CLinear,
    /// Two edges sharing two vertices.
    C2,
    /// Decorated triangle, no matched cycle edge.
    A,
    /// Decorated triangle, matched cycle edge at the star corner.
    B,
    /// Decorated triangle, matched cycle edge opposite the star corner.
    D,
    /// Decorated two-edge cycle, star at a shared vertex.
    I,
    /// Decorated two-edge cycle, star at an interior vertex.
    J,
    /// Decorated two-edge cycle, no matched cycle edge.
    L,
}

impl Family {
    /// Canonical short name, as accepted by [`Family::from_str`].
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::S => "S",
            Family::CLinear => "C",
            Family::C2 => "C2",
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
            Family::I => "I",
            Family::J => "J",
            Family::L => "L",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "S" => Ok(Family::S),
            "C" => Ok(Family::CLinear),
            "C2" => Ok(Family::C2),
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "D" => Ok(Family::D),
            "I" => Ok(Family::I),
            "J" => Ok(Family::J),
            "L" => Ok(Family::L),
            other => Err(Error::InvalidInput(format!(
                "unknown family {other:?} (expected one of S, C, C2, A, B, D, I, J, L)"
            ))),
        }
    }
}

/// A family together with its uniformity and size parameter.
///
/// The size parameter is `a` (edge count) for `S`, the cycle length `l`
/// for `C`, the matching size factor `m` for the decorated families, and
/// absent for `C2`. Ranges are checked by [`build_family`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub k: usize,
    pub size: Option<usize>,
}

impl FamilySpec {
    pub fn new(family: Family, k: usize, size: Option<usize>) -> Self {
        FamilySpec { family, k, size }
    }

    /// Checks the parameter ranges: `k >= 3` throughout; `S` needs
    /// `a >= 1`, `C` needs `l >= 3`, `A` needs `m >= 3`, `B`/`D`/`L` need
    /// `m >= 2`, `I`/`J` need `m >= 1`, `C2` takes no size.
    pub fn validate(&self) -> Result<()> {
        if self.k < 3 {
            return Err(Error::InvalidInput(format!(
                "family {} requires k >= 3, got {}",
                self.family, self.k
            )));
        }
        let need = |min: usize, name: &str| -> Result<usize> {
            match self.size {
                None => Err(Error::InvalidInput(format!(
                    "family {} requires a size parameter {name} >= {min}",
                    self.family
                ))),
                Some(s) if s < min => Err(Error::InvalidInput(format!(
                    "family {} requires {name} >= {min}, got {s}",
                    self.family
                ))),
                Some(s) => Ok(s),
            }
        };
        match self.family {
            Family::S => need(1, "a").map(|_| ()),
            Family::CLinear => need(3, "l").map(|_| ()),
            Family::C2 => match self.size {
                None => Ok(()),
                Some(s) => Err(Error::InvalidInput(format!(
                    "family C2 takes no size parameter, got {s}"
                ))),
            },
            Family::A => need(3, "m").map(|_| ()),
            Family::B | Family::D | Family::L => need(2, "m").map(|_| ()),
            Family::I | Family::J => need(1, "m").map(|_| ()),
        }
    }
}

/// A hypergraph carrying the construction's named vertices and edges and,
/// for the decorated families, the perfect matching it was built with.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabeledHypergraph {
    pub graph: UniformHypergraph,
    /// Injective map from vertex names to indices.
    pub labels: BTreeMap<String, usize>,
    /// Injective map from edge names to edge indices.
    pub edge_labels: BTreeMap<String, usize>,
    /// The construction's canonical perfect matching, when one exists.
    pub matching: Option<Matching>,
}

impl LabeledHypergraph {
    /// Resolves a vertex label.
    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.labels
            .get(label)
            .copied()
            .ok_or_else(|| Error::InvalidInput(format!("no vertex labeled {label:?}")))
    }

    /// Resolves an edge label to an edge index.
    pub fn edge_index(&self, label: &str) -> Result<usize> {
        self.edge_labels
            .get(label)
            .copied()
            .ok_or_else(|| Error::InvalidInput(format!("no edge labeled {label:?}")))
    }

    /// Reverse lookup: the label of vertex `v`, if any.
    pub fn vertex_label_of(&self, v: usize) -> Option<&str> {
        self.labels
            .iter()
            .find(|(_, &idx)| idx == v)
            .map(|(name, _)| name.as_str())
    }

    /// Reverse lookup: the label of edge `e`, if any.
    pub fn edge_label_of(&self, e: usize) -> Option<&str> {
        self.edge_labels
            .iter()
            .find(|(_, &idx)| idx == e)
            .map(|(name, _)| name.as_str())
    }

    /// The label/matching companion written next to the graph JSON.
    pub fn sidecar(&self) -> Sidecar {
        Sidecar {
            labels: self.labels.clone(),
            edge_labels: self.edge_labels.clone(),
            matching: self.matching.as_ref().map(|m| m.edge_indices().to_vec()),
        }
    }
}

/// Serializable companion of a [`LabeledHypergraph`]: the label maps and
/// the matching edge-index list, without the graph itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sidecar {
    pub labels: BTreeMap<String, usize>,
    pub edge_labels: BTreeMap<String, usize>,
    pub matching: Option<Vec<usize>>,
}

impl Sidecar {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sidecar serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(format!("sidecar: {e}")))
    }
}

/// Incremental builder used by every construction: vertices are numbered
/// in creation order, edges are kept in insertion order until `finish`
/// canonicalizes them and remaps labels and matching through the
/// resulting permutation.
struct Assembler {
    k: usize,
    next_vertex: usize,
    edges: Vec<Vec<usize>>,
    labels: BTreeMap<String, usize>,
    edge_label_by_pos: Vec<Option<String>>,
}

impl Assembler {
    fn new(k: usize) -> Self {
        Assembler {
            k,
            next_vertex: 0,
            edges: Vec::new(),
            labels: BTreeMap::new(),
            edge_label_by_pos: Vec::new(),
        }
    }

    fn fresh(&mut self, label: Option<String>) -> usize {
        let v = self.next_vertex;
        self.next_vertex += 1;
        if let Some(name) = label {
            self.labels.insert(name, v);
        }
        v
    }

    fn fresh_many(&mut self, count: usize) -> Vec<usize> {
        (0..count).map(|_| self.fresh(None)).collect()
    }

    /// Appends an edge, returning its raw (insertion-order) position.
    fn push_edge(&mut self, label: Option<String>, vertices: Vec<usize>) -> usize {
        self.edges.push(vertices);
        self.edge_label_by_pos.push(label);
        self.edges.len() - 1
    }

    /// Adds `count` star edges `g1..` through `hub`; returns raw positions.
    fn add_star(&mut self, hub: usize, count: usize) -> Vec<usize> {
        let existing = self
            .edge_label_by_pos
            .iter()
            .flatten()
            .filter(|name| name.starts_with('g'))
            .count();
        (0..count)
            .map(|i| {
                let mut edge = vec![hub];
                edge.extend(self.fresh_many(self.k - 1));
                self.push_edge(Some(format!("g{}", existing + i + 1)), edge)
            })
            .collect()
    }

    /// Adds one pendent edge `p1..` at every vertex in `0..base_n` not in
    /// `excluded`, in vertex order; returns raw positions.
    fn add_pendents(&mut self, base_n: usize, excluded: &BTreeSet<usize>) -> Vec<usize> {
        (0..base_n)
            .filter(|v| !excluded.contains(v))
            .collect::<Vec<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                let mut edge = vec![v];
                edge.extend(self.fresh_many(self.k - 1));
                self.push_edge(Some(format!("p{}", i + 1)), edge)
            })
            .collect()
    }

    /// Builds the hypergraph and remaps edge labels and the matching from
    /// raw positions to canonical edge indices.
    fn finish(self, matching_raw: Option<Vec<usize>>) -> Result<LabeledHypergraph> {
        let (graph, perm) = UniformHypergraph::new_with_order(self.k, self.next_vertex, self.edges)?;
        let mut edge_labels = BTreeMap::new();
        for (pos, label) in self.edge_label_by_pos.into_iter().enumerate() {
            if let Some(name) = label {
                edge_labels.insert(name, perm[pos]);
            }
        }
        let matching = match matching_raw {
            None => None,
            Some(raw) => {
                let mapped = raw.into_iter().map(|pos| perm[pos]).collect();
                let m = Matching::new(&graph, mapped)?;
                if !m.perfect() {
                    return Err(Error::Structure(
                        "construction produced a non-perfect matching".into(),
                    ));
                }
                Some(m)
            }
        };
        Ok(LabeledHypergraph {
            graph,
            labels: self.labels,
            edge_labels,
            matching,
        })
    }
}

/// Lays down a linear cycle `v1 e1 v2 e2 ... vl el v1`; returns the corner
/// indices. Edge `e{i}` has raw position `i-1`.
fn assemble_linear_cycle(asm: &mut Assembler, l: usize) -> Vec<usize> {
    let mut corners = Vec::with_capacity(l);
    let mut interiors = Vec::with_capacity(l);
    for i in 1..=l {
        corners.push(asm.fresh(Some(format!("v{i}"))));
        let ints: Vec<usize> = (1..=asm.k - 2)
            .map(|j| asm.fresh(Some(format!("v{i}_{j}"))))
            .collect();
        interiors.push(ints);
    }
    for i in 0..l {
        let mut edge = vec![corners[i]];
        edge.extend(&interiors[i]);
        edge.push(corners[(i + 1) % l]);
        asm.push_edge(Some(format!("e{}", i + 1)), edge);
    }
    corners
}

/// Lays down the two-edge cycle on shared vertices `u1`, `u2` with
/// interiors `u1_{j}` (edge `e1`, raw position 0) and `u2_{j}` (edge
/// `e2`, raw position 1); returns `(u1, u2)`.
fn assemble_two_edge_cycle(asm: &mut Assembler) -> (usize, usize) {
    let u1 = asm.fresh(Some("u1".into()));
    let ints1: Vec<usize> = (1..=asm.k - 2)
        .map(|j| asm.fresh(Some(format!("u1_{j}"))))
        .collect();
    let u2 = asm.fresh(Some("u2".into()));
    let ints2: Vec<usize> = (1..=asm.k - 2)
        .map(|j| asm.fresh(Some(format!("u2_{j}"))))
        .collect();
    let mut e1 = vec![u1];
    e1.extend(&ints1);
    e1.push(u2);
    asm.push_edge(Some("e1".into()), e1);
    let mut e2 = vec![u1];
    e2.extend(&ints2);
    e2.push(u2);
    asm.push_edge(Some("e2".into()), e2);
    (u1, u2)
}

/// Star with `a` edges through the hub `u0` (vertex 0).
pub fn build_star(a: usize, k: usize) -> Result<LabeledHypergraph> {
    if a < 1 {
        return Err(Error::InvalidInput(format!("star needs at least one edge, got {a}")));
    }
    if k < 2 {
        return Err(Error::InvalidInput(format!("star needs k >= 2, got {k}")));
    }
    let mut asm = Assembler::new(k);
    let hub = asm.fresh(Some("u0".into()));
    asm.add_star(hub, a);
    asm.finish(None)
}

/// Linear cycle of length `l`: consecutive edges share exactly one corner.
pub fn build_linear_cycle(l: usize, k: usize) -> Result<LabeledHypergraph> {
    if l < 3 {
        return Err(Error::InvalidInput(format!("linear cycle needs l >= 3, got {l}")));
    }
    if k < 3 {
        return Err(Error::InvalidInput(format!("linear cycle needs k >= 3, got {k}")));
    }
    let mut asm = Assembler::new(k);
    assemble_linear_cycle(&mut asm, l);
    asm.finish(None)
}

/// Two edges sharing exactly the two vertices `u1` and `u2`.
pub fn build_c2(k: usize) -> Result<LabeledHypergraph> {
    if k < 3 {
        return Err(Error::InvalidInput(format!("two-edge cycle needs k >= 3, got {k}")));
    }
    let mut asm = Assembler::new(k);
    assemble_two_edge_cycle(&mut asm);
    asm.finish(None)
}

/// Disjoint union of `g` and `h` with `g`'s vertex `v` identified with
/// `h`'s vertex `w`. Labels of `g` win on name conflicts; the matching is
/// dropped (the merge point generally breaks it).
pub fn coalesce(
    g: &LabeledHypergraph,
    v_label: &str,
    h: &LabeledHypergraph,
    w_label: &str,
) -> Result<LabeledHypergraph> {
    if g.graph.k() != h.graph.k() {
        return Err(Error::InvalidInput(format!(
            "cannot coalesce uniformities {} and {}",
            g.graph.k(),
            h.graph.k()
        )));
    }
    let v = g.vertex(v_label)?;
    let w = h.vertex(w_label)?;
    let n_g = g.graph.n();
    let map_h = |x: usize| {
        if x == w {
            v
        } else if x > w {
            n_g + x - 1
        } else {
            n_g + x
        }
    };
    let mut edges: Vec<Vec<usize>> = g.graph.edges().to_vec();
    for e in h.graph.edges() {
        edges.push(e.iter().map(|&x| map_h(x)).collect());
    }
    {
        let mut sorted: Vec<Vec<usize>> = edges
            .iter()
            .map(|e| {
                let mut e = e.clone();
                e.sort_unstable();
                e
            })
            .collect();
        sorted.sort();
        if sorted.windows(2).any(|wnd| wnd[0] == wnd[1]) {
            return Err(Error::Structure("coalescing would create multiple edges".into()));
        }
    }
    let n = n_g + h.graph.n() - 1;
    let (graph, perm) = UniformHypergraph::new_with_order(g.graph.k(), n, edges)?;
    let mut labels = g.labels.clone();
    for (name, &x) in &h.labels {
        labels.entry(name.clone()).or_insert_with(|| map_h(x));
    }
    let mut edge_labels = BTreeMap::new();
    for (name, &idx) in &g.edge_labels {
        edge_labels.insert(name.clone(), perm[idx]);
    }
    for (name, &idx) in &h.edge_labels {
        edge_labels
            .entry(name.clone())
            .or_insert(perm[g.graph.num_edges() + idx]);
    }
    Ok(LabeledHypergraph {
        graph,
        labels,
        edge_labels,
        matching: None,
    })
}

/// Adds one pendent edge (labeled `p1..` past any existing ones) at the
/// labeled vertex. A previously recorded matching is kept with its
/// perfect flag recomputed; the fresh vertices are uncovered.
pub fn attach_pendent(g: &LabeledHypergraph, v_label: &str) -> Result<LabeledHypergraph> {
    let v = g.vertex(v_label)?;
    let k = g.graph.k();
    let n = g.graph.n();
    let mut edges: Vec<Vec<usize>> = g.graph.edges().to_vec();
    let mut pendent = vec![v];
    pendent.extend(n..n + k - 1);
    edges.push(pendent);
    let (graph, perm) = UniformHypergraph::new_with_order(k, n + k - 1, edges)?;
    let pendent_serial = 1 + g.edge_labels.keys().filter(|name| name.starts_with('p')).count();
    let mut edge_labels = BTreeMap::new();
    for (name, &idx) in &g.edge_labels {
        edge_labels.insert(name.clone(), perm[idx]);
    }
    edge_labels.insert(format!("p{pendent_serial}"), perm[g.graph.num_edges()]);
    let matching = match &g.matching {
        None => None,
        Some(m) => {
            let mapped = m.edge_indices().iter().map(|&e| perm[e]).collect();
            Some(Matching::new(&graph, mapped)?)
        }
    };
    Ok(LabeledHypergraph {
        graph,
        labels: g.labels.clone(),
        edge_labels,
        matching,
    })
}

/// Builds the named family at the given uniformity and size.
pub fn build_family(spec: &FamilySpec) -> Result<LabeledHypergraph> {
    spec.validate()?;
    let k = spec.k;
    match spec.family {
        Family::S => build_star(spec.size.expect("validated"), k),
        Family::CLinear => build_linear_cycle(spec.size.expect("validated"), k),
        Family::C2 => build_c2(k),
        Family::A | Family::B | Family::D => {
            let m = spec.size.expect("validated");
            let mut asm = Assembler::new(k);
            let corners = assemble_linear_cycle(&mut asm, 3);
            let star_count = match spec.family {
                Family::A => m - 3,
                _ => m - 2,
            };
            asm.add_star(corners[0], star_count);
            let base_n = asm.next_vertex;
            // Raw positions of e1, e2, e3 are 0, 1, 2.
            let excluded: BTreeSet<usize> = match spec.family {
                Family::A => BTreeSet::new(),
                Family::B => asm.edges[0].iter().copied().collect(),
                _ => asm.edges[1].iter().copied().collect(),
            };
            let mut matching = asm.add_pendents(base_n, &excluded);
            match spec.family {
                Family::B => matching.push(0),
                Family::D => matching.push(1),
                _ => {}
            }
            asm.finish(Some(matching))
        }
        Family::I | Family::J | Family::L => {
            let m = spec.size.expect("validated");
            let mut asm = Assembler::new(k);
            let (u1, _) = assemble_two_edge_cycle(&mut asm);
            let (hub, star_count) = match spec.family {
                Family::I => (u1, m - 1),
                Family::J => (asm.labels["u2_1"], m - 1),
                _ => (u1, m - 2),
            };
            asm.add_star(hub, star_count);
            let base_n = asm.next_vertex;
            let excluded: BTreeSet<usize> = match spec.family {
                Family::L => BTreeSet::new(),
                _ => asm.edges[0].iter().copied().collect(),
            };
            let mut matching = asm.add_pendents(base_n, &excluded);
            if matches!(spec.family, Family::I | Family::J) {
                matching.push(0);
            }
            asm.finish(Some(matching))
        }
    }
}

/// Outcome of [`move_edges`]: the rewritten edge list plus the structural
/// flags the caller must inspect before treating it as a hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveReport {
    pub k: usize,
    pub n: usize,
    /// Rewritten edges, each sorted ascending, in the host's edge order.
    pub edges: Vec<Vec<usize>>,
    /// True when two edges became identical.
    pub multiple_edges: bool,
    /// Vertices left with no incident edge.
    pub isolated: Vec<usize>,
}

impl MoveReport {
    /// Converts to a hypergraph, rejecting flagged structural damage.
    pub fn to_hypergraph(&self) -> Result<UniformHypergraph> {
        if self.multiple_edges {
            return Err(Error::Structure("edge move created multiple edges".into()));
        }
        if !self.isolated.is_empty() {
            return Err(Error::Structure(format!(
                "edge move isolated vertices {:?}",
                self.isolated
            )));
        }
        UniformHypergraph::new(self.k, self.n, self.edges.clone())
    }
}

/// Rewrites each listed edge by swapping one of its vertices for `to`:
/// `moves` pairs an edge index with the vertex surrendered. The result
/// may be disconnected, contain duplicate edges, or leave vertices
/// isolated; the report flags these instead of failing.
pub fn move_edges(
    g: &UniformHypergraph,
    moves: &[(usize, usize)],
    to: usize,
) -> Result<MoveReport> {
    if to >= g.n() {
        return Err(Error::InvalidInput(format!("target vertex {to} out of range")));
    }
    let mut seen = BTreeSet::new();
    let mut edges: Vec<Vec<usize>> = g.edges().to_vec();
    for &(e, v) in moves {
        if e >= g.num_edges() {
            return Err(Error::InvalidInput(format!("edge index {e} out of range")));
        }
        if !seen.insert(e) {
            return Err(Error::InvalidInput(format!("edge {e} moved twice")));
        }
        if !g.edge(e).contains(&v) {
            return Err(Error::InvalidInput(format!("edge {e} does not contain vertex {v}")));
        }
        if g.edge(e).contains(&to) {
            return Err(Error::InvalidInput(format!(
                "edge {e} already contains the target vertex {to}"
            )));
        }
        let edge = &mut edges[e];
        edge.retain(|&x| x != v);
        edge.push(to);
        edge.sort_unstable();
    }
    let mut sorted = edges.clone();
    sorted.sort();
    let multiple_edges = sorted.windows(2).any(|w| w[0] == w[1]);
    let mut covered = vec![false; g.n()];
    for e in &edges {
        for &v in e {
            covered[v] = true;
        }
    }
    let isolated = (0..g.n()).filter(|&v| !covered[v]).collect();
    Ok(MoveReport {
        k: g.k(),
        n: g.n(),
        edges,
        multiple_edges,
        isolated,
    })
}

/// Releases the non-pendent edge `e` at its vertex `u`: every edge that
/// meets `e` elsewhere and avoids `u` is moved onto `u`. On a linear host
/// this leaves `e` pendent at `u`.
pub fn edge_release(g: &UniformHypergraph, e: usize, u: usize) -> Result<UniformHypergraph> {
    if e >= g.num_edges() {
        return Err(Error::InvalidInput(format!("edge index {e} out of range")));
    }
    if !g.edge(e).contains(&u) {
        return Err(Error::InvalidInput(format!("edge {e} does not contain vertex {u}")));
    }
    let busy = g
        .edge(e)
        .iter()
        .filter(|&&v| g.incident_edges(v).len() >= 2)
        .count();
    if busy <= 1 {
        return Err(Error::InvalidInput("edge release requires a non-pendent edge".into()));
    }
    let mut moves = Vec::new();
    for f in 0..g.num_edges() {
        if f == e || g.edge(f).contains(&u) {
            continue;
        }
        let shared: Vec<usize> = g
            .edge(f)
            .iter()
            .copied()
            .filter(|v| g.edge(e).contains(v))
            .collect();
        match shared.len() {
            0 => {}
            1 => moves.push((f, shared[0])),
            _ => {
                return Err(Error::Unsupported(format!(
                    "edge {f} shares {} vertices with the released edge",
                    shared.len()
                )))
            }
        }
    }
    if moves.is_empty() {
        return Ok(g.clone());
    }
    let report = move_edges(g, &moves, u)?;
    if report.multiple_edges {
        return Err(Error::Structure("edge release would create multiple edges".into()));
    }
    report.to_hypergraph()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::are_isomorphic;
    use crate::spectral::spectral_radius_default;

    fn family(f: Family, k: usize, size: usize) -> LabeledHypergraph {
        build_family(&FamilySpec::new(f, k, Some(size))).unwrap()
    }

    fn matching_by_content(g: &UniformHypergraph, contents: &[Vec<usize>]) -> Matching {
        let idx = contents
            .iter()
            .map(|e| {
                let mut e = e.clone();
                e.sort_unstable();
                g.edges()
                    .iter()
                    .position(|f| *f == e)
                    .expect("matching edge present")
            })
            .collect();
        Matching::new(g, idx).unwrap()
    }

    #[test]
    fn star_shapes() {
        let single = build_star(1, 3).unwrap();
        assert_eq!(single.graph.num_edges(), 1);
        assert_eq!(single.vertex("u0").unwrap(), 0);
        let s3 = build_star(3, 3).unwrap();
        assert_eq!(s3.graph.n(), 7);
        assert_eq!(s3.graph.degree(s3.vertex("u0").unwrap()).unwrap(), 3);
        assert!(build_star(0, 3).is_err());
        assert!(build_star(2, 1).is_err());
    }

    #[test]
    fn star_radius_matches_closed_form() {
        let s4 = build_star(4, 3).unwrap();
        let pair = spectral_radius_default(&s4.graph).unwrap();
        assert!((pair.rho - 4f64.powf(1.0 / 3.0)).abs() < 1e-6, "rho = {}", pair.rho);
    }

    #[test]
    fn linear_cycle_shapes() {
        let c3 = build_linear_cycle(3, 3).unwrap();
        assert_eq!(c3.graph.num_edges(), 3);
        assert_eq!(c3.graph.n(), 6);
        let c4 = build_linear_cycle(4, 3).unwrap();
        assert!(c4.graph.is_linear());
        assert_eq!(c4.graph.cyclomatic_number(), 1);
        let c3k4 = build_linear_cycle(3, 4).unwrap();
        assert_eq!(c3k4.graph.n(), 9);
        for e in 0..3 {
            let interior = c3k4
                .graph
                .edge(e)
                .iter()
                .filter(|&&v| c3k4.graph.degree(v).unwrap() == 1)
                .count();
            assert_eq!(interior, 2);
        }
        assert!(build_linear_cycle(2, 3).is_err());
    }

    #[test]
    fn two_edge_cycle_shapes() {
        let c2 = build_c2(3).unwrap();
        assert_eq!(c2.graph.n(), 4);
        assert_eq!(c2.graph.num_edges(), 2);
        assert!(!c2.graph.is_linear());
        for label in ["u1", "u2"] {
            assert_eq!(c2.graph.degree(c2.vertex(label).unwrap()).unwrap(), 2);
        }
        let c2k4 = build_c2(4).unwrap();
        assert_eq!(c2k4.graph.n(), 6);
        assert_eq!(c2k4.graph.cyclomatic_number(), 1);
    }

    #[test]
    fn coalesce_two_edges_gives_path() {
        let g = build_star(1, 3).unwrap();
        let h = build_star(1, 3).unwrap();
        let path = coalesce(&g, "u0", &h, "u0").unwrap();
        assert_eq!(path.graph.n(), 5);
        assert_eq!(path.graph.num_edges(), 2);
        assert!(path.graph.is_connected());
        assert_eq!(path.graph.cyclomatic_number(), 0);
        assert_eq!(path.vertex("u0").unwrap(), 0);
    }

    #[test]
    fn coalesce_validates() {
        let g = build_star(1, 3).unwrap();
        let h = build_star(1, 4).unwrap();
        assert!(coalesce(&g, "u0", &h, "u0").is_err());
        let h3 = build_star(1, 3).unwrap();
        assert!(coalesce(&g, "hub", &h3, "u0").is_err());
    }

    #[test]
    fn attach_pendent_mechanics() {
        let single = build_star(1, 3).unwrap();
        let path = attach_pendent(&single, "u0").unwrap();
        assert_eq!(path.graph.num_edges(), 2);
        assert_eq!(path.graph.n(), 5);
        assert!(path.graph.is_linear());
        assert_eq!(path.graph.degree(path.vertex("u0").unwrap()).unwrap(), 2);
        let twice = attach_pendent(&path, "u0").unwrap();
        assert_eq!(twice.graph.degree(twice.vertex("u0").unwrap()).unwrap(), 3);
        assert_eq!(twice.edge_labels.keys().filter(|n| n.starts_with('p')).count(), 2);
    }

    #[test]
    fn pendents_on_triangle_match_smallest_decorated_family() {
        let mut g = build_linear_cycle(3, 3).unwrap();
        for label in ["v1", "v2", "v3", "v1_1", "v2_1", "v3_1"] {
            g = attach_pendent(&g, label).unwrap();
        }
        assert_eq!(g.graph.n(), 18);
        let a = family(Family::A, 3, 3);
        assert!(are_isomorphic(&g.graph, &a.graph).unwrap());
    }

    #[test]
    fn coalesced_star_base_matches_family_construction() {
        let c3 = build_linear_cycle(3, 3).unwrap();
        let star = build_star(1, 3).unwrap();
        let mut base = coalesce(&c3, "v1", &star, "u0").unwrap();
        assert_eq!(base.graph.n(), 8);
        // Pendent-decorate every base vertex; the star leaves need labels
        // first since attachment goes by name.
        let unlabeled: Vec<usize> =
            (0..base.graph.n()).filter(|&v| base.vertex_label_of(v).is_none()).collect();
        for (i, v) in unlabeled.into_iter().enumerate() {
            base.labels.insert(format!("leaf{i}"), v);
        }
        // The merged vertex carries two label aliases after coalescing, so
        // decorate each vertex once, not each name.
        let mut seen = std::collections::BTreeSet::new();
        let names: Vec<String> = base
            .labels
            .iter()
            .filter(|&(_, &v)| seen.insert(v))
            .map(|(name, _)| name.clone())
            .collect();
        for name in names {
            base = attach_pendent(&base, &name).unwrap();
        }
        let a4 = family(Family::A, 3, 4);
        assert_eq!(base.graph.n(), a4.graph.n());
        assert!(are_isomorphic(&base.graph, &a4.graph).unwrap());
    }

    #[test]
    fn family_shapes_and_placements() {
        struct Case {
            family: Family,
            k: usize,
            m: usize,
            pm_on_cycle: usize,
            cycle_len: usize,
            tag: &'static str,
        }
        let cases = [
            Case { family: Family::A, k: 3, m: 3, pm_on_cycle: 0, cycle_len: 3, tag: "U1bar" },
            Case { family: Family::A, k: 3, m: 5, pm_on_cycle: 0, cycle_len: 3, tag: "U1bar" },
            Case { family: Family::A, k: 4, m: 3, pm_on_cycle: 0, cycle_len: 3, tag: "U1bar" },
            Case { family: Family::B, k: 3, m: 2, pm_on_cycle: 1, cycle_len: 3, tag: "U21bar" },
            Case { family: Family::B, k: 3, m: 4, pm_on_cycle: 1, cycle_len: 3, tag: "U21bar" },
            Case { family: Family::B, k: 4, m: 2, pm_on_cycle: 1, cycle_len: 3, tag: "U21bar" },
            Case { family: Family::D, k: 3, m: 2, pm_on_cycle: 1, cycle_len: 3, tag: "U22bar" },
            Case { family: Family::D, k: 3, m: 4, pm_on_cycle: 1, cycle_len: 3, tag: "U22bar" },
            Case { family: Family::D, k: 4, m: 3, pm_on_cycle: 1, cycle_len: 3, tag: "U22bar" },
            Case { family: Family::I, k: 3, m: 1, pm_on_cycle: 1, cycle_len: 2, tag: "Gamma11bar" },
            Case { family: Family::I, k: 3, m: 3, pm_on_cycle: 1, cycle_len: 2, tag: "Gamma11bar" },
            Case { family: Family::I, k: 4, m: 2, pm_on_cycle: 1, cycle_len: 2, tag: "Gamma11bar" },
            Case { family: Family::J, k: 3, m: 1, pm_on_cycle: 1, cycle_len: 2, tag: "Gamma12bar" },
            Case { family: Family::J, k: 3, m: 3, pm_on_cycle: 1, cycle_len: 2, tag: "Gamma12bar" },
            Case { family: Family::J, k: 4, m: 2, pm_on_cycle: 1, cycle_len: 2, tag: "Gamma12bar" },
            Case { family: Family::L, k: 3, m: 2, pm_on_cycle: 0, cycle_len: 2, tag: "Gamma2bar" },
            Case { family: Family::L, k: 3, m: 4, pm_on_cycle: 0, cycle_len: 2, tag: "Gamma2bar" },
            Case { family: Family::L, k: 4, m: 2, pm_on_cycle: 0, cycle_len: 2, tag: "Gamma2bar" },
        ];
        for case in cases {
            let built = family(case.family, case.k, case.m);
            let (k, m) = (case.k, case.m);
            assert_eq!(built.graph.n(), m * k * (k - 1), "{} n", case.family);
            assert_eq!(built.graph.num_edges(), m * k, "{} edges", case.family);
            assert!(built.graph.is_connected());
            assert_eq!(built.graph.cyclomatic_number(), 1);
            let matching = built.matching.as_ref().expect("matching recorded");
            assert!(matching.perfect());
            let label = built.graph.classify_with_matching(matching).unwrap();
            assert_eq!(label.cycle_length, case.cycle_len, "{} cycle", case.family);
            assert_eq!(label.pm_edges_on_cycle, case.pm_on_cycle, "{} pm", case.family);
            assert!(
                label.tags.names().contains(&case.tag),
                "{} m={m} k={k}: tags {:?} missing {}",
                case.family,
                label.tags.names(),
                case.tag
            );
        }
    }

    #[test]
    fn subclass_tags_exclusive_once_star_is_big() {
        let b = family(Family::B, 3, 4);
        let tags = b.graph.classify_with_matching(b.matching.as_ref().unwrap()).unwrap().tags;
        assert!(tags.u_21_bar && !tags.u_22_bar);
        let d = family(Family::D, 3, 4);
        let tags = d.graph.classify_with_matching(d.matching.as_ref().unwrap()).unwrap().tags;
        assert!(tags.u_22_bar && !tags.u_21_bar);
        let i = family(Family::I, 3, 3);
        let tags = i.graph.classify_with_matching(i.matching.as_ref().unwrap()).unwrap().tags;
        assert!(tags.gamma_11_bar && !tags.gamma_12_bar);
        let j = family(Family::J, 3, 3);
        let tags = j.graph.classify_with_matching(j.matching.as_ref().unwrap()).unwrap().tags;
        assert!(tags.gamma_12_bar && !tags.gamma_11_bar);
    }

    #[test]
    fn triangle_variants_coincide_exactly_at_smallest_size() {
        let b2 = family(Family::B, 3, 2);
        let d2 = family(Family::D, 3, 2);
        assert!(are_isomorphic(&b2.graph, &d2.graph).unwrap());
        let b_label = b2.graph.classify_with_matching(b2.matching.as_ref().unwrap()).unwrap();
        let d_label = d2.graph.classify_with_matching(d2.matching.as_ref().unwrap()).unwrap();
        assert_eq!(b_label.tag_string(), d_label.tag_string());
        let b3 = family(Family::B, 3, 3);
        let d3 = family(Family::D, 3, 3);
        assert!(!are_isomorphic(&b3.graph, &d3.graph).unwrap());
    }

    #[test]
    fn two_edge_variants_coincide_exactly_at_smallest_size() {
        let i1 = family(Family::I, 3, 1);
        let j1 = family(Family::J, 3, 1);
        assert_eq!(i1.graph.n(), 6);
        assert!(are_isomorphic(&i1.graph, &j1.graph).unwrap());
        let i2 = family(Family::I, 3, 2);
        let j2 = family(Family::J, 3, 2);
        assert!(!are_isomorphic(&i2.graph, &j2.graph).unwrap());
    }

    #[test]
    fn smallest_fully_decorated_two_edge_family() {
        let l = family(Family::L, 3, 2);
        assert_eq!(l.graph.n(), 12);
        assert_eq!(l.graph.num_edges(), 6);
        let matching = l.matching.as_ref().unwrap();
        assert_eq!(matching.edge_indices().len(), 4);
        for &e in matching.edge_indices() {
            assert!(l.graph.pendent_attach_vertex(e).is_some(), "matching edge {e} pendent");
        }
    }

    #[test]
    fn family_spec_validation() {
        assert!(build_family(&FamilySpec::new(Family::A, 3, Some(2))).is_err());
        assert!(build_family(&FamilySpec::new(Family::I, 3, Some(0))).is_err());
        assert!(build_family(&FamilySpec::new(Family::C2, 3, Some(2))).is_err());
        assert!(build_family(&FamilySpec::new(Family::C2, 3, None)).is_ok());
        assert!(build_family(&FamilySpec::new(Family::S, 3, None)).is_err());
        assert!(build_family(&FamilySpec::new(Family::L, 2, Some(2))).is_err());
    }

    #[test]
    fn family_names_round_trip() {
        for f in [
            Family::S,
            Family::CLinear,
            Family::C2,
            Family::A,
            Family::B,
            Family::D,
            Family::I,
            Family::J,
            Family::L,
        ] {
            assert_eq!(f.as_str().parse::<Family>().unwrap(), f);
        }
        assert!("Q".parse::<Family>().is_err());
    }

    #[test]
    fn move_edges_mechanics_and_involution() {
        let g = UniformHypergraph::new(3, 5, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let moved = move_edges(&g, &[(1, 2)], 0).unwrap();
        assert!(!moved.multiple_edges);
        assert!(moved.isolated.is_empty());
        let star = moved.to_hypergraph().unwrap();
        assert_eq!(star.edges(), &[vec![0, 1, 2], vec![0, 3, 4]]);
        let back_idx = star.edges().iter().position(|e| e == &vec![0, 3, 4]).unwrap();
        let back = move_edges(&star, &[(back_idx, 0)], 2).unwrap().to_hypergraph().unwrap();
        assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn move_edges_flags_damage() {
        let g = UniformHypergraph::new(3, 5, vec![vec![0, 1, 2], vec![0, 3, 4], vec![2, 3, 4]])
            .unwrap();
        let idx = g.edges().iter().position(|e| e == &vec![2, 3, 4]).unwrap();
        let report = move_edges(&g, &[(idx, 2)], 0).unwrap();
        assert!(report.multiple_edges);
        assert!(matches!(report.to_hypergraph(), Err(Error::Structure(_))));

        let path = UniformHypergraph::new(3, 5, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let report = move_edges(&path, &[(0, 1)], 3).unwrap();
        assert_eq!(report.isolated, vec![1]);
        assert!(report.to_hypergraph().is_err());
    }

    #[test]
    fn move_edges_validates() {
        let g = UniformHypergraph::new(3, 5, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        assert!(move_edges(&g, &[(0, 3)], 4).is_err(), "vertex not in edge");
        assert!(move_edges(&g, &[(0, 1)], 2).is_err(), "target already in edge");
        assert!(move_edges(&g, &[(0, 1), (0, 2)], 4).is_err(), "edge moved twice");
        assert!(move_edges(&g, &[(5, 1)], 4).is_err(), "edge index range");
        assert!(move_edges(&g, &[(0, 1)], 9).is_err(), "target range");
    }

    #[test]
    fn moving_a_cycle_edge_onto_the_opposite_corner_shortens_the_cycle() {
        let mut g = build_linear_cycle(4, 3).unwrap();
        let names: Vec<String> = g.labels.keys().cloned().collect();
        for name in names {
            g = attach_pendent(&g, &name).unwrap();
        }
        assert_eq!(g.graph.n(), 24);
        let pendents: Vec<Vec<usize>> = g
            .edge_labels
            .iter()
            .filter(|(name, _)| name.starts_with('p'))
            .map(|(_, &e)| g.graph.edge(e).to_vec())
            .collect();
        assert_eq!(pendents.len(), 8);
        let e2 = g.edge_index("e2").unwrap();
        let v1 = g.vertex("v1").unwrap();
        let v2 = g.vertex("v2").unwrap();
        let before = g.graph.unique_cycle().unwrap();
        assert_eq!(before.edges.len(), 4);
        let after = move_edges(&g.graph, &[(e2, v2)], v1).unwrap().to_hypergraph().unwrap();
        let cycle = after.unique_cycle().unwrap();
        assert_eq!(cycle.edges.len(), 3);
        let matching = matching_by_content(&after, &pendents);
        let label = after.classify_with_matching(&matching).unwrap();
        assert_eq!(label.pm_edges_on_cycle, 0);
        assert!(label.tags.u_1_bar, "tags {:?}", label.tags.names());
    }

    #[test]
    fn release_mechanics_on_a_path() {
        let g = UniformHypergraph::new(
            3,
            7,
            vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 6]],
        )
        .unwrap();
        let middle = g.edges().iter().position(|e| e == &vec![2, 3, 4]).unwrap();
        let released = edge_release(&g, middle, 2).unwrap();
        let new_middle = released.edges().iter().position(|e| e == &vec![2, 3, 4]).unwrap();
        assert_eq!(released.pendent_attach_vertex(new_middle), Some(2));
        assert!(released.edges().contains(&vec![2, 5, 6]));
    }

    #[test]
    fn release_validates() {
        let g = UniformHypergraph::new(3, 5, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        // Both edges are pendent here.
        assert!(edge_release(&g, 0, 2).is_err());
        let path3 = UniformHypergraph::new(
            3,
            7,
            vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 6]],
        )
        .unwrap();
        let middle = path3.edges().iter().position(|e| e == &vec![2, 3, 4]).unwrap();
        assert!(edge_release(&path3, middle, 0).is_err(), "vertex not in edge");
    }

    #[test]
    fn release_skips_edges_through_the_anchor_and_rejects_double_overlap() {
        let c2 = build_c2(3).unwrap();
        let e1 = c2.edge_index("e1").unwrap();
        let u1 = c2.vertex("u1").unwrap();
        // The other cycle edge contains u1, so nothing moves.
        let same = edge_release(&c2.graph, e1, u1).unwrap();
        assert_eq!(same.edges(), c2.graph.edges());
        // Released at an interior vertex, the twin edge overlaps in two
        // vertices and cannot be moved along a single one.
        let interior = c2.vertex("u1_1").unwrap();
        assert!(matches!(
            edge_release(&c2.graph, e1, interior),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn releasing_a_matched_cycle_edge_shortens_the_cycle_and_keeps_the_matching() {
        // Length-4 cycle, two opposite matched cycle edges, pendents on the
        // two uncovered interior vertices.
        let g = UniformHypergraph::new(
            3,
            12,
            vec![
                vec![0, 1, 2],
                vec![2, 3, 4],
                vec![4, 5, 6],
                vec![6, 7, 0],
                vec![3, 8, 9],
                vec![7, 10, 11],
            ],
        )
        .unwrap();
        let m_before = matching_by_content(
            &g,
            &[vec![0, 1, 2], vec![4, 5, 6], vec![3, 8, 9], vec![7, 10, 11]],
        );
        let label = g.classify_with_matching(&m_before).unwrap();
        assert_eq!(label.cycle_length, 4);
        assert_eq!(label.pm_edges_on_cycle, 2);
        assert!(label.tags.u_2);

        let e1 = g.edges().iter().position(|e| e == &vec![0, 1, 2]).unwrap();
        let released = edge_release(&g, e1, 0).unwrap();
        let m_after = matching_by_content(
            &released,
            &[vec![0, 1, 2], vec![4, 5, 6], vec![3, 8, 9], vec![7, 10, 11]],
        );
        assert!(m_after.perfect());
        let label = released.classify_with_matching(&m_after).unwrap();
        assert_eq!(label.cycle_length, 3);
        assert_eq!(label.pm_edges_on_cycle, 1);
        assert!(label.tags.u_2);
        let pendent = released.edges().iter().position(|e| e == &vec![0, 1, 2]).unwrap();
        assert_eq!(released.pendent_attach_vertex(pendent), Some(0));
    }

    #[test]
    fn sidecar_round_trip() {
        let b = family(Family::B, 3, 2);
        let sidecar = b.sidecar();
        let text = sidecar.to_json();
        let back = Sidecar::from_json(&text).unwrap();
        assert_eq!(back, sidecar);
        assert_eq!(back.labels["v1"], b.vertex("v1").unwrap());
        assert_eq!(
            back.matching.as_deref(),
            b.matching.as_ref().map(|m| m.edge_indices())
        );
        assert!(Sidecar::from_json("{").is_err());
    }

    #[test]
    fn labels_resolve_against_the_graph() {
        let i = family(Family::I, 3, 2);
        let u1 = i.vertex("u1").unwrap();
        let u2 = i.vertex("u2").unwrap();
        let e1 = i.graph.edge(i.edge_index("e1").unwrap());
        assert!(e1.contains(&u1) && e1.contains(&u2));
        assert!(i.vertex("nope").is_err());
        assert!(i.edge_index("nope").is_err());
        assert_eq!(i.vertex_label_of(u1), Some("u1"));
        let g1 = i.edge_index("g1").unwrap();
        assert_eq!(i.edge_label_of(g1), Some("g1"));
        assert!(i.graph.edge(g1).contains(&u1));
    }
}
