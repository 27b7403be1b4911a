//! Core hypergraph type and structural operations.
//!
//! A [`UniformHypergraph`] stores a k-uniform hypergraph on vertices
//! `0..n` in a canonical form: every edge is a strictly ascending vertex
//! list and the edge list is sorted lexicographically. The JSON encoding
//! mirrors that normal form exactly and readers reject any deviation, so
//! a file has exactly one valid byte representation for a given graph.
//!
//! Structural operations cover the predicates needed for the unicyclic
//! extremal analysis: linearity, connectivity, the cyclomatic number
//! `a(k-1) - n + c`, perfect matchings, the "capped" subgraph left after
//! deleting a perfect matching, and classification of unicyclic
//! perfect-matching hypergraphs into the linear/nonlinear subclasses used
//! by the extremality claims.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A k-uniform hypergraph on vertices `0..n` with canonical edge storage.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniformHypergraph {
    k: usize,
    n: usize,
    /// Sorted lexicographically; every edge strictly ascending.
    edges: Vec<Vec<usize>>,
    /// `incidence[v]` lists the indices of edges containing `v`, ascending.
    incidence: Vec<Vec<usize>>,
}

/// Serde mirror of the on-disk JSON normal form.
#[derive(Serialize, Deserialize)]
struct RawHypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl Serialize for UniformHypergraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = RawHypergraph { k: self.k, n: self.n, edges: self.edges.clone() };
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for UniformHypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawHypergraph::deserialize(deserializer)?;
        UniformHypergraph::from_raw(raw).map_err(serde::de::Error::custom)
    }
}

impl UniformHypergraph {
    /// Builds a hypergraph from arbitrary edge lists, canonicalizing order.
    ///
    /// Rejects: `k < 2`, edges of the wrong size, out-of-range or repeated
    /// vertices within an edge, duplicate edges, and isolated vertices
    /// (every vertex in `0..n` must lie on at least one edge; `n == 0`
    /// with no edges is permitted as the empty hypergraph).
    pub fn new(k: usize, n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        Ok(Self::new_with_order(k, n, edges)?.0)
    }

    /// Like [`UniformHypergraph::new`], but also returns the permutation
    /// taking input edge positions to canonical edge indices
    /// (`perm[input_position] = canonical_index`).
    pub fn new_with_order(k: usize, n: usize, edges: Vec<Vec<usize>>) -> Result<(Self, Vec<usize>)> {
        if k < 2 {
            return Err(Error::InvalidInput(format!("uniformity k must be at least 2, got {k}")));
        }
        let mut sorted_inputs: Vec<(Vec<usize>, usize)> = Vec::with_capacity(edges.len());
        for (pos, mut e) in edges.into_iter().enumerate() {
            if e.len() != k {
                return Err(Error::InvalidInput(format!(
                    "edge {pos} has {} vertices, expected k = {k}",
                    e.len()
                )));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInput(format!("edge {pos} repeats a vertex")));
            }
            if let Some(&v) = e.last() {
                if v >= n {
                    return Err(Error::InvalidInput(format!(
                        "edge {pos} mentions vertex {v}, out of range for n = {n}"
                    )));
                }
            }
            sorted_inputs.push((e, pos));
        }
        sorted_inputs.sort();
        if sorted_inputs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidInput("duplicate edge".into()));
        }
        let mut perm = vec![0usize; sorted_inputs.len()];
        let mut edges = Vec::with_capacity(sorted_inputs.len());
        for (idx, (e, pos)) in sorted_inputs.into_iter().enumerate() {
            perm[pos] = idx;
            edges.push(e);
        }
        let mut incidence = vec![Vec::new(); n];
        for (idx, e) in edges.iter().enumerate() {
            for &v in e {
                incidence[v].push(idx);
            }
        }
        if let Some(v) = incidence.iter().position(|list| list.is_empty()) {
            return Err(Error::InvalidInput(format!("vertex {v} is isolated")));
        }
        Ok((Self { k, n, edges, incidence }, perm))
    }

    /// Uniformity (edge size).
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Canonicalized edge list.
    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// The edge at canonical index `e`.
    pub fn edge(&self, e: usize) -> &[usize] {
        &self.edges[e]
    }

    /// Indices of the edges containing `v`, ascending.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    /// Vertex degree (number of incident edges).
    pub fn degree(&self, v: usize) -> Result<usize> {
        if v >= self.n {
            return Err(Error::InvalidInput(format!(
                "vertex {v} out of range for n = {}",
                self.n
            )));
        }
        Ok(self.incidence[v].len())
    }

    /// True when every pair of distinct edges shares at most one vertex.
    pub fn is_linear(&self) -> bool {
        for (i, e) in self.edges.iter().enumerate() {
            for &j in e.iter().flat_map(|&v| &self.incidence[v]) {
                if j > i && shared_count(e, &self.edges[j]) >= 2 {
                    return false;
                }
            }
        }
        true
    }

    /// Connected components as sorted vertex lists, sorted by first vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut components = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut component = Vec::new();
            let mut queue = vec![start];
            seen[start] = true;
            while let Some(v) = queue.pop() {
                component.push(v);
                for &e in &self.incidence[v] {
                    for &w in &self.edges[e] {
                        if !seen[w] {
                            seen[w] = true;
                            queue.push(w);
                        }
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    /// True when the hypergraph has at most one connected component.
    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Cyclomatic number `a(k-1) - n + c` where `c` counts components.
    ///
    /// Zero characterizes forests of edge-trees; one characterizes
    /// unicyclic hypergraphs.
    pub fn cyclomatic_number(&self) -> i64 {
        let a = self.edges.len() as i64;
        let k = self.k as i64;
        let n = self.n as i64;
        let c = self.connected_components().len() as i64;
        a * (k - 1) - n + c
    }

    /// Deterministic search for a perfect matching: `None` when none exists.
    ///
    /// Branches on the lowest-index uncovered vertex and tries its edges in
    /// canonical order, so the result depends only on the canonical edge
    /// list.
    pub fn find_perfect_matching(&self) -> Option<Matching> {
        if self.n == 0 {
            return Some(Matching { edge_indices: Vec::new(), perfect: true });
        }
        if !self.n.is_multiple_of(self.k) {
            return None;
        }
        let mut covered = vec![false; self.n];
        let mut chosen = Vec::with_capacity(self.n / self.k);
        if self.matching_search(&mut covered, &mut chosen) {
            chosen.sort_unstable();
            Some(Matching { edge_indices: chosen, perfect: true })
        } else {
            None
        }
    }

    fn matching_search(&self, covered: &mut [bool], chosen: &mut Vec<usize>) -> bool {
        let v = match covered.iter().position(|&c| !c) {
            Some(v) => v,
            None => return true,
        };
        for &e in &self.incidence[v] {
            if self.edges[e].iter().any(|&w| covered[w]) {
                continue;
            }
            for &w in &self.edges[e] {
                covered[w] = true;
            }
            chosen.push(e);
            if self.matching_search(covered, chosen) {
                return true;
            }
            chosen.pop();
            for &w in &self.edges[e] {
                covered[w] = false;
            }
        }
        false
    }

    /// The subgraph induced by the edges outside a perfect matching, with
    /// the surviving vertices renumbered compactly in ascending order.
    ///
    /// Vertices that lay only on matching edges disappear.
    pub fn capped(&self, matching: &Matching) -> Result<UniformHypergraph> {
        matching.validate(self)?;
        if !matching.perfect {
            return Err(Error::InvalidInput(
                "capped subgraph requires a perfect matching".into(),
            ));
        }
        let in_matching: BTreeSet<usize> = matching.edge_indices.iter().copied().collect();
        let kept: Vec<&Vec<usize>> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !in_matching.contains(i))
            .map(|(_, e)| e)
            .collect();
        let used: BTreeSet<usize> = kept.iter().flat_map(|e| e.iter().copied()).collect();
        let mut remap = vec![usize::MAX; self.n];
        for (new, &old) in used.iter().enumerate() {
            remap[old] = new;
        }
        let edges = kept
            .into_iter()
            .map(|e| e.iter().map(|&v| remap[v]).collect())
            .collect();
        UniformHypergraph::new(self.k, used.len(), edges)
    }

    /// Serializes to the JSON normal form.
    pub fn to_json(&self) -> String {
        let raw = RawHypergraph { k: self.k, n: self.n, edges: self.edges.clone() };
        serde_json::to_string_pretty(&raw).expect("hypergraph serialization cannot fail")
    }

    /// Parses the JSON normal form, rejecting any deviation from it.
    ///
    /// Beyond structural validity, the reader insists that every inner
    /// array is strictly ascending and the outer array is sorted
    /// lexicographically; it never silently normalizes.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawHypergraph = serde_json::from_str(text)
            .map_err(|e| Error::Format(format!("hypergraph JSON: {e}")))?;
        Self::from_raw(raw)
    }

    fn from_raw(raw: RawHypergraph) -> Result<Self> {
        for (i, e) in raw.edges.iter().enumerate() {
            if e.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Format(format!(
                    "edge {i} is not strictly ascending"
                )));
            }
        }
        if raw.edges.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Format(
                "edge list is not sorted lexicographically without duplicates".into(),
            ));
        }
        UniformHypergraph::new(raw.k, raw.n, raw.edges)
    }

    /// The unique cycle of a connected unicyclic hypergraph.
    ///
    /// Works on the bipartite incidence graph (vertex nodes and edge
    /// nodes): leaves are stripped repeatedly and the surviving 2-core is
    /// the alternating cycle. Errors when the cyclomatic number is not 1
    /// or the graph is disconnected.
    pub fn unique_cycle(&self) -> Result<CycleInfo> {
        if !self.is_connected() {
            return Err(Error::Unsupported("cycle detection requires a connected hypergraph".into()));
        }
        let r = self.cyclomatic_number();
        if r != 1 {
            return Err(Error::Unsupported(format!(
                "cycle detection requires cyclomatic number 1, got {r}"
            )));
        }
        // Incidence graph nodes: 0..n vertices, n..n+a edges.
        let a = self.edges.len();
        let total = self.n + a;
        let neighbors = |node: usize| -> Vec<usize> {
            if node < self.n {
                self.incidence[node].iter().map(|&e| self.n + e).collect()
            } else {
                self.edges[node - self.n].clone()
            }
        };
        let mut degree: Vec<usize> = (0..total).map(|u| neighbors(u).len()).collect();
        let mut alive = vec![true; total];
        let mut queue: Vec<usize> = (0..total).filter(|&u| degree[u] <= 1).collect();
        while let Some(u) = queue.pop() {
            if !alive[u] {
                continue;
            }
            alive[u] = false;
            for w in neighbors(u) {
                if alive[w] {
                    degree[w] -= 1;
                    if degree[w] <= 1 {
                        queue.push(w);
                    }
                }
            }
        }
        // The 2-core is a single alternating cycle; walk it starting from
        // the smallest surviving vertex node.
        let start = (0..self.n)
            .find(|&v| alive[v])
            .ok_or_else(|| Error::Unsupported("2-core contains no vertex node".into()))?;
        let mut corners = Vec::new();
        let mut cycle_edges = Vec::new();
        let mut prev = usize::MAX;
        let mut node = start;
        loop {
            if node < self.n {
                corners.push(node);
            } else {
                cycle_edges.push(node - self.n);
            }
            let next = neighbors(node)
                .into_iter()
                .find(|&w| alive[w] && w != prev)
                .ok_or_else(|| Error::Unsupported("2-core walk failed".into()))?;
            prev = node;
            node = next;
            if node == start {
                break;
            }
        }
        if corners.len() != cycle_edges.len() || corners.len() < 2 {
            return Err(Error::Unsupported("2-core is not a single alternating cycle".into()));
        }
        Ok(CycleInfo { edges: cycle_edges, corners })
    }

    /// True when `e` is a pendent edge; returns its attach vertex.
    ///
    /// Pendent means all vertices but one have degree 1; the exception (the
    /// attach vertex) has degree at least 2.
    pub fn pendent_attach_vertex(&self, e: usize) -> Option<usize> {
        let mut attach = None;
        for &v in &self.edges[e] {
            if self.incidence[v].len() >= 2 {
                if attach.is_some() {
                    return None;
                }
                attach = Some(v);
            }
        }
        attach
    }

    fn has_pendent_edge_at(&self, v: usize) -> bool {
        self.incidence[v]
            .iter()
            .any(|&e| self.pendent_attach_vertex(e) == Some(v))
    }

    /// Number of edges in the branch hanging at cycle vertex `v`: the edge
    /// set of `v`'s component after the cycle edges are deleted.
    fn branch_edge_count(&self, cycle_edges: &BTreeSet<usize>, v: usize) -> usize {
        let mut seen_edges = BTreeSet::new();
        let mut seen_vertices = BTreeSet::new();
        let mut queue = vec![v];
        seen_vertices.insert(v);
        while let Some(u) = queue.pop() {
            for &e in &self.incidence[u] {
                if cycle_edges.contains(&e) || !seen_edges.insert(e) {
                    continue;
                }
                for &w in &self.edges[e] {
                    if seen_vertices.insert(w) {
                        queue.push(w);
                    }
                }
            }
        }
        seen_edges.len()
    }

    /// Classifies a connected unicyclic hypergraph with a perfect matching,
    /// using the deterministic matching found by
    /// [`UniformHypergraph::find_perfect_matching`].
    pub fn classify(&self) -> Result<ClassLabel> {
        let matching = self.find_perfect_matching().ok_or_else(|| {
            Error::Classification("perfect matching exists: no perfect matching found".into())
        })?;
        self.classify_with_matching(&matching)
    }

    /// Classifies against an explicitly supplied perfect matching.
    ///
    /// Subclass tags that depend on which edges belong to the matching are
    /// relative to the supplied matching.
    pub fn classify_with_matching(&self, matching: &Matching) -> Result<ClassLabel> {
        if !self.is_connected() {
            return Err(Error::Classification("connected: hypergraph is disconnected".into()));
        }
        let r = self.cyclomatic_number();
        if r != 1 {
            return Err(Error::Classification(format!(
                "cyclomatic_number == 1: got {r}"
            )));
        }
        matching.validate(self)?;
        if !matching.perfect {
            return Err(Error::Classification(
                "perfect matching exists: supplied matching is not perfect".into(),
            ));
        }
        let cycle = self.unique_cycle()?;
        let l = cycle.edges.len();
        let matched: BTreeSet<usize> = matching.edge_indices.iter().copied().collect();
        let pm_edges_on_cycle = cycle.edges.iter().filter(|e| matched.contains(e)).count();
        let cycle_edge_set: BTreeSet<usize> = cycle.edges.iter().copied().collect();
        let cycle_vertices: BTreeSet<usize> = cycle
            .edges
            .iter()
            .flat_map(|&e| self.edges[e].iter().copied())
            .collect();
        let big_branch = |v: usize| self.branch_edge_count(&cycle_edge_set, v) >= self.k;

        let mut tags = ClassTags::default();
        let kind;
        if l == 2 {
            kind = CycleKind::NonlinearUnicyclic;
            tags.gamma_1 = pm_edges_on_cycle == 1;
            tags.gamma_2 = pm_edges_on_cycle == 0;
            let [u1, u2] = [cycle.corners[0], cycle.corners[1]];
            if tags.gamma_1 {
                let (core_edge, decorated_edge) = if matched.contains(&cycle.edges[0]) {
                    (cycle.edges[0], cycle.edges[1])
                } else {
                    (cycle.edges[1], cycle.edges[0])
                };
                let interiors_core: Vec<usize> = self.edges[core_edge]
                    .iter()
                    .copied()
                    .filter(|v| *v != u1 && *v != u2)
                    .collect();
                let interiors_dec: Vec<usize> = self.edges[decorated_edge]
                    .iter()
                    .copied()
                    .filter(|v| *v != u1 && *v != u2)
                    .collect();
                let cond_core = interiors_core.iter().all(|&v| self.incidence[v].len() == 1);
                let cond_pendent = interiors_dec.iter().all(|&v| self.has_pendent_edge_at(v));
                let big_shared: Vec<usize> =
                    [u1, u2].iter().copied().filter(|&v| big_branch(v)).collect();
                let big_interior: Vec<usize> =
                    interiors_dec.iter().copied().filter(|&v| big_branch(v)).collect();
                tags.gamma_1_bar =
                    cond_core && cond_pendent && big_shared.len() + big_interior.len() <= 1;
                // When no vertex carries a big branch the two placements
                // coincide, so both sub-tags are set; this keeps the two
                // subclasses covering all of the barred class.
                tags.gamma_11_bar = tags.gamma_1_bar && big_interior.is_empty();
                tags.gamma_12_bar = tags.gamma_1_bar && big_shared.is_empty();
            }
            if tags.gamma_2 {
                let all_pendent = cycle_vertices.iter().all(|&v| self.has_pendent_edge_at(v));
                let big_shared = [u1, u2].iter().filter(|&&v| big_branch(v)).count();
                tags.gamma_2_bar = all_pendent && big_shared <= 1;
            }
        } else {
            kind = CycleKind::LinearUnicyclic;
            tags.u_1 = pm_edges_on_cycle == 0;
            tags.u_2 = pm_edges_on_cycle >= 1;
            if l == 3 {
                let corners = [cycle.corners[0], cycle.corners[1], cycle.corners[2]];
                if tags.u_1 {
                    let all_pendent = cycle_vertices.iter().all(|&v| self.has_pendent_edge_at(v));
                    let big_corners = corners.iter().filter(|&&v| big_branch(v)).count();
                    tags.u_1_bar = all_pendent && big_corners <= 1;
                }
                if tags.u_2 && pm_edges_on_cycle == 1 {
                    // Orient so that the matched cycle edge joins v1 and v2.
                    let matched_pos = (0..3)
                        .find(|&i| matched.contains(&cycle.edges[i]))
                        .expect("one cycle edge is matched");
                    // cycle.edges[i] joins corners[i] and corners[(i+1)%3].
                    let v1 = corners[matched_pos];
                    let v2 = corners[(matched_pos + 1) % 3];
                    let v3 = corners[(matched_pos + 2) % 3];
                    let matched_edge = cycle.edges[matched_pos];
                    let other_edges: Vec<usize> = (0..3)
                        .filter(|&i| i != matched_pos)
                        .map(|i| cycle.edges[i])
                        .collect();
                    let interiors_matched: Vec<usize> = self.edges[matched_edge]
                        .iter()
                        .copied()
                        .filter(|&v| v != v1 && v != v2)
                        .collect();
                    let decorated: Vec<usize> = other_edges
                        .iter()
                        .flat_map(|&e| self.edges[e].iter().copied())
                        .filter(|&v| v != v1 && v != v2)
                        .collect();
                    let cond_core =
                        interiors_matched.iter().all(|&v| self.incidence[v].len() == 1);
                    let cond_pendent = decorated.iter().all(|&v| self.has_pendent_edge_at(v));
                    let big_corners = corners.iter().filter(|&&v| big_branch(v)).count();
                    let big_interior_decorated = decorated
                        .iter()
                        .filter(|&&v| v != v3 && big_branch(v))
                        .count();
                    tags.u_2_bar =
                        cond_core && cond_pendent && big_corners <= 1 && big_interior_decorated == 0;
                    // Sub-tags place the at-most-one big branch; with no big
                    // branch both placements hold.
                    tags.u_21_bar = tags.u_2_bar && !big_branch(v3);
                    tags.u_22_bar = tags.u_2_bar && !big_branch(v1) && !big_branch(v2);
                }
            }
        }
        Ok(ClassLabel {
            kind,
            cycle_length: l,
            pm_edges_on_cycle,
            tags,
        })
    }
}

fn shared_count(a: &[usize], b: &[usize]) -> usize {
    // Both sorted ascending.
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// A set of pairwise-disjoint edges of a host hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    edge_indices: Vec<usize>,
    perfect: bool,
}

impl Matching {
    /// Validates the indices against `host` and computes the perfect flag.
    pub fn new(host: &UniformHypergraph, mut edge_indices: Vec<usize>) -> Result<Self> {
        edge_indices.sort_unstable();
        edge_indices.dedup();
        let mut covered = vec![false; host.n()];
        let mut count = 0usize;
        for &e in &edge_indices {
            if e >= host.num_edges() {
                return Err(Error::InvalidInput(format!("matching references edge {e}, out of range")));
            }
            for &v in host.edge(e) {
                if covered[v] {
                    return Err(Error::InvalidInput(format!(
                        "matching edges are not disjoint at vertex {v}"
                    )));
                }
                covered[v] = true;
                count += 1;
            }
        }
        let perfect = count == host.n();
        Ok(Matching { edge_indices, perfect })
    }

    /// Edge indices into the host, ascending.
    pub fn edge_indices(&self) -> &[usize] {
        &self.edge_indices
    }

    /// True when the matching covers every vertex of its host.
    pub fn perfect(&self) -> bool {
        self.perfect
    }

    fn validate(&self, host: &UniformHypergraph) -> Result<()> {
        let rebuilt = Matching::new(host, self.edge_indices.clone())?;
        if rebuilt.perfect != self.perfect {
            return Err(Error::InvalidInput("matching perfect flag is stale for this host".into()));
        }
        Ok(())
    }
}

/// The unique cycle of a unicyclic hypergraph.
///
/// `edges[i]` joins `corners[i]` to `corners[(i + 1) % l]`; corners are the
/// intersection vertices of consecutive cycle edges. Length 2 means two
/// edges sharing two vertices (the nonlinear cycle); length `l >= 3` is a
/// linear cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleInfo {
    pub edges: Vec<usize>,
    pub corners: Vec<usize>,
}

/// Coarse cycle kind of a unicyclic hypergraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CycleKind {
    /// The cycle is linear of length at least 3 ("U" kind).
    LinearUnicyclic,
    /// The cycle is two edges sharing two vertices ("Gamma" kind).
    NonlinearUnicyclic,
}

/// Subclass membership booleans for unicyclic perfect-matching hypergraphs.
///
/// `u_*` tags apply to the linear kind, `gamma_*` tags to the nonlinear
/// kind. The barred tags add the pendent-decoration and branch-size
/// conditions used by the extremality claims; the numbered sub-tags place
/// the at-most-one large branch (both are set when no large branch exists,
/// so the numbered subclasses together cover the barred class).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ClassTags {
    pub u_1: bool,
    pub u_2: bool,
    pub u_1_bar: bool,
    pub u_2_bar: bool,
    pub u_21_bar: bool,
    pub u_22_bar: bool,
    pub gamma_1: bool,
    pub gamma_2: bool,
    pub gamma_1_bar: bool,
    pub gamma_11_bar: bool,
    pub gamma_12_bar: bool,
    pub gamma_2_bar: bool,
}

impl ClassTags {
    /// Names of the set tags, in a fixed order.
    pub fn names(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let pairs: [(bool, &'static str); 12] = [
            (self.u_1, "U1"),
            (self.u_2, "U2"),
            (self.u_1_bar, "U1bar"),
            (self.u_2_bar, "U2bar"),
            (self.u_21_bar, "U21bar"),
            (self.u_22_bar, "U22bar"),
            (self.gamma_1, "Gamma1"),
            (self.gamma_2, "Gamma2"),
            (self.gamma_1_bar, "Gamma1bar"),
            (self.gamma_11_bar, "Gamma11bar"),
            (self.gamma_12_bar, "Gamma12bar"),
            (self.gamma_2_bar, "Gamma2bar"),
        ];
        for (set, name) in pairs {
            if set {
                out.push(name);
            }
        }
        out
    }
}

/// Classification of a connected unicyclic perfect-matching hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassLabel {
    pub kind: CycleKind,
    pub cycle_length: usize,
    pub pm_edges_on_cycle: usize,
    pub tags: ClassTags,
}

impl ClassLabel {
    /// Kind plus set tag names joined with `;` (stable, for CSV output).
    pub fn tag_string(&self) -> String {
        let kind = match self.kind {
            CycleKind::LinearUnicyclic => "U",
            CycleKind::NonlinearUnicyclic => "Gamma",
        };
        let mut parts = vec![kind.to_string()];
        parts.extend(self.tags.names().iter().map(|s| s.to_string()));
        parts.join(";")
    }
}
