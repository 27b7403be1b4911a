//! Canonical forms and isomorphism testing.
//!
//! The canonical form of a hypergraph is a byte string with the property
//! that two hypergraphs are isomorphic exactly when their canonical forms
//! are equal. It is computed by iterated partition refinement (vertices are
//! colored by the multiset of colors seen across their incident edges)
//! combined with backtracking individualization: whenever refinement
//! stalls with a non-singleton color class, each candidate vertex of the
//! first such class is individualized in turn and the minimum encoding over
//! all resulting discrete colorings is kept.
//!
//! Two exact prunings keep the search small on the symmetric instances that
//! arise here: candidates that are twins (swapping them is an automorphism)
//! produce identical subtrees, so only one representative per twin class is
//! explored; and the encoding minimum is taken lazily so equal branches
//! terminate quickly.
//!
//! The search is exponential in the worst case, so it is guarded by a
//! vertex cap (default 24) and returns a capacity error beyond it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;

/// Default vertex cap for canonicalization.
pub const DEFAULT_CANONICAL_CAP: usize = 24;

/// Canonical byte encoding of a hypergraph: `[k, n, edges...]` with each
/// relabeled edge stored as `k` ascending bytes and edges sorted
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    /// Raw canonical bytes.
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Lowercase hex rendering of the canonical bytes.
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Stable 64-bit FNV-1a digest of the canonical bytes, for compact
    /// summaries.
    pub fn digest(&self) -> u64 {
        let mut hash: u64 = 0xcbf29ce484222325;
        for &b in &self.0 {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x100000001b3);
        }
        hash
    }

    /// Reconstructs the canonical representative graph from the encoding.
    pub fn decode(&self) -> Result<UniformHypergraph> {
        if self.0.len() < 2 {
            return Err(Error::Format("canonical form too short".into()));
        }
        let k = self.0[0] as usize;
        let n = self.0[1] as usize;
        let body = &self.0[2..];
        if k == 0 || !body.len().is_multiple_of(k) {
            return Err(Error::Format("canonical form has a truncated edge".into()));
        }
        let edges = body
            .chunks(k)
            .map(|chunk| chunk.iter().map(|&b| b as usize).collect())
            .collect();
        UniformHypergraph::new(k, n, edges)
    }
}

/// Canonical form with the default vertex cap.
pub fn canonical_form(g: &UniformHypergraph) -> Result<CanonicalForm> {
    canonical_form_capped(g, DEFAULT_CANONICAL_CAP)
}

/// Canonical form with an explicit vertex cap.
pub fn canonical_form_capped(g: &UniformHypergraph, cap: usize) -> Result<CanonicalForm> {
    if g.n() > cap {
        return Err(Error::Capacity(format!(
            "canonical form supports at most {cap} vertices, got {}",
            g.n()
        )));
    }
    if g.n() > u8::MAX as usize {
        return Err(Error::Capacity("canonical form encoding is limited to 255 vertices".into()));
    }
    let mut search = Search { g, best: None };
    let initial = refine(g, vec![0; g.n()]);
    search.descend(initial);
    let mut bytes = vec![g.k() as u8, g.n() as u8];
    if let Some(best) = search.best {
        bytes.extend(best);
    }
    Ok(CanonicalForm(bytes))
}

/// True when the two hypergraphs are isomorphic.
///
/// Cheap invariants (sizes and the degree multiset) are compared first;
/// only on agreement are canonical forms computed.
pub fn are_isomorphic(a: &UniformHypergraph, b: &UniformHypergraph) -> Result<bool> {
    if a.k() != b.k() || a.n() != b.n() || a.num_edges() != b.num_edges() {
        return Ok(false);
    }
    let degrees = |g: &UniformHypergraph| {
        let mut d: Vec<usize> = (0..g.n()).map(|v| g.incident_edges(v).len()).collect();
        d.sort_unstable();
        d
    };
    if degrees(a) != degrees(b) {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

struct Search<'a> {
    g: &'a UniformHypergraph,
    best: Option<Vec<u8>>,
}

impl Search<'_> {
    fn descend(&mut self, colors: Vec<u32>) {
        match first_non_singleton_cell(&colors) {
            None => {
                let encoded = encode(self.g, &colors);
                if self.best.as_ref().is_none_or(|b| encoded < *b) {
                    self.best = Some(encoded);
                }
            }
            Some(cell) => {
                for v in twin_representatives(self.g, &cell) {
                    let mut next = individualize(&colors, v);
                    next = refine(self.g, next);
                    self.descend(next);
                }
            }
        }
    }
}

/// Vertices of the smallest color value that appears more than once.
fn first_non_singleton_cell(colors: &[u32]) -> Option<Vec<usize>> {
    let max = *colors.iter().max()? as usize;
    let mut counts = vec![0usize; max + 1];
    for &c in colors {
        counts[c as usize] += 1;
    }
    let target = counts.iter().position(|&c| c >= 2)? as u32;
    Some(
        colors
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == target)
            .map(|(v, _)| v)
            .collect(),
    )
}

/// Splits `v` into its own cell ordered before the remainder of its cell.
fn individualize(colors: &[u32], v: usize) -> Vec<u32> {
    colors
        .iter()
        .enumerate()
        .map(|(u, &c)| if u == v { 2 * c } else { 2 * c + 1 })
        .collect()
}

/// Refines vertex colors to a fixpoint.
///
/// Each round recolors a vertex by its current color together with the
/// sorted multiset, over its incident edges, of the sorted color lists of
/// the edge's other endpoints. New color ids are ranks in the sorted
/// signature order, so refinement is label-independent.
fn refine(g: &UniformHypergraph, mut colors: Vec<u32>) -> Vec<u32> {
    if g.n() == 0 {
        return colors;
    }
    let mut distinct = count_distinct(&colors);
    loop {
        let mut signatures: Vec<(Signature, usize)> = (0..g.n())
            .map(|v| {
                let mut per_edge: Vec<Vec<u32>> = g
                    .incident_edges(v)
                    .iter()
                    .map(|&e| {
                        let mut others: Vec<u32> = g
                            .edge(e)
                            .iter()
                            .filter(|&&w| w != v)
                            .map(|&w| colors[w])
                            .collect();
                        others.sort_unstable();
                        others
                    })
                    .collect();
                per_edge.sort_unstable();
                (Signature { color: colors[v], per_edge }, v)
            })
            .collect();
        signatures.sort_unstable();
        let mut next = vec![0u32; g.n()];
        let mut current = 0u32;
        for window in 0..signatures.len() {
            if window > 0 && signatures[window].0 != signatures[window - 1].0 {
                current += 1;
            }
            next[signatures[window].1] = current;
        }
        let next_distinct = current as usize + 1;
        colors = next;
        if next_distinct == distinct {
            return colors;
        }
        distinct = next_distinct;
    }
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct Signature {
    color: u32,
    per_edge: Vec<Vec<u32>>,
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut seen: Vec<u32> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// One representative from each twin class of the cell.
///
/// Two vertices are twins when the transposition swapping them maps the
/// edge set to itself; twins lead to identical search subtrees.
fn twin_representatives(g: &UniformHypergraph, cell: &[usize]) -> Vec<usize> {
    let mut reps: Vec<usize> = Vec::new();
    'candidates: for &v in cell {
        for &r in &reps {
            if transposition_is_automorphism(g, r, v) {
                continue 'candidates;
            }
        }
        reps.push(v);
    }
    reps
}

fn transposition_is_automorphism(g: &UniformHypergraph, a: usize, b: usize) -> bool {
    let swap = |v: usize| {
        if v == a {
            b
        } else if v == b {
            a
        } else {
            v
        }
    };
    let mut mapped: Vec<Vec<usize>> = g
        .edges()
        .iter()
        .map(|e| {
            let mut img: Vec<usize> = e.iter().map(|&v| swap(v)).collect();
            img.sort_unstable();
            img
        })
        .collect();
    mapped.sort();
    mapped == g.edges()
}

/// Encodes the graph under the permutation induced by a discrete coloring
/// (vertex v is relabeled to its color value).
fn encode(g: &UniformHypergraph, colors: &[u32]) -> Vec<u8> {
    let mut edges: Vec<Vec<u8>> = g
        .edges()
        .iter()
        .map(|e| {
            let mut img: Vec<u8> = e.iter().map(|&v| colors[v] as u8).collect();
            img.sort_unstable();
            img
        })
        .collect();
    edges.sort();
    edges.into_iter().flatten().collect()
}
