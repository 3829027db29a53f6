//! Finite-type decision for exchange matrices and naming of the Dynkin type.
//!
//! The search walks the mutation class of the principal part, deduplicated by
//! a canonical form under simultaneous row/column permutation. It stops as
//! soon as it meets either a pair with `|b_ij b_ji| >= 4` (infinite type) or a
//! disjoint union of Dynkin orientations (finite type). A class that closes
//! without meeting either is mutation-finite of infinite type.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::{self, DynkinDiagram};
use crate::seedgen::{self, ExchangeMatrix};

pub const DEFAULT_CAP: usize = 1_000_000;

/// Cap override from `FLAGCLUSTER_CAP`, falling back to [`DEFAULT_CAP`].
pub fn cap_from_env() -> usize {
    std::env::var("FLAGCLUSTER_CAP").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InfiniteWitness {
    /// A member of the class with an entry pair `|b_ij b_ji| >= 4`.
    EntryBound { sequence: Vec<String>, matrix: Vec<Vec<i64>>, pair: (String, String) },
    /// The class closed after `size` canonical members without any
    /// Dynkin-type member.
    ClosedClass { size: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ClusterTypeVerdict {
    /// `sequence` (execution order, column labels of the input) leads to
    /// `matrix`, a disjoint union of Dynkin orientations of type `name`.
    Finite { name: String, sequence: Vec<String>, matrix: Vec<Vec<i64>> },
    Infinite { witness: InfiniteWitness },
    Unknown { explored: usize },
}

impl ClusterTypeVerdict {
    pub fn is_finite(&self) -> bool {
        matches!(self, ClusterTypeVerdict::Finite { .. })
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ClusterTypeVerdict::Infinite { .. })
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            ClusterTypeVerdict::Finite { name, .. } => Some(name),
            _ => None,
        }
    }
}

impl fmt::Display for ClusterTypeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClusterTypeVerdict::Finite { name, .. } => write!(f, "Finite {name}"),
            ClusterTypeVerdict::Infinite { witness: InfiniteWitness::EntryBound { pair, .. } } => {
                write!(f, "Infinite (|b_ij b_ji| >= 4 at {}, {})", pair.0, pair.1)
            }
            ClusterTypeVerdict::Infinite { witness: InfiniteWitness::ClosedClass { size } } => {
                write!(f, "Infinite (mutation class of {size} quivers has no Dynkin member)")
            }
            ClusterTypeVerdict::Unknown { explored } => write!(f, "Unknown (cap reached after {explored} quivers)"),
        }
    }
}

// ---------------------------------------------------------------------------
// canonical form

/// Canonical code of a square matrix under simultaneous permutation of rows
/// and columns, with the permutation achieving it (`perm[new] = old`).
pub fn canonical_form(b: &[Vec<i64>]) -> (Vec<i64>, Vec<usize>) {
    let n = b.len();
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let mut best: Option<(Vec<i64>, Vec<usize>)> = None;
    let colours = refine(b, vec![0; n]);
    search(b, colours, &mut best);
    best.expect("at least one leaf")
}

/// Equitable refinement. Colours are cell indices; the ordering of new cells
/// depends only on invariants, so it commutes with relabeling.
fn refine(b: &[Vec<i64>], mut colour: Vec<usize>) -> Vec<usize> {
    let n = b.len();
    loop {
        let sigs: Vec<(usize, Vec<(usize, i64, i64)>)> = (0..n)
            .map(|v| {
                let mut s: Vec<(usize, i64, i64)> = (0..n)
                    .filter(|&u| u != v && (b[v][u] != 0 || b[u][v] != 0))
                    .map(|u| (colour[u], b[v][u], b[u][v]))
                    .collect();
                s.sort_unstable();
                (colour[v], s)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<(usize, i64, i64)>)> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(&s).expect("present")).collect();
        let before = colour.iter().copied().max().unwrap_or(0);
        let after = next.iter().copied().max().unwrap_or(0);
        colour = next;
        if after == before {
            return colour;
        }
    }
}

fn twins(b: &[Vec<i64>], u: usize, v: usize) -> bool {
    b[u][v] == 0
        && b[v][u] == 0
        && (0..b.len()).all(|w| w == u || w == v || (b[u][w] == b[v][w] && b[w][u] == b[w][v]))
}

fn search(b: &[Vec<i64>], colour: Vec<usize>, best: &mut Option<(Vec<i64>, Vec<usize>)>) {
    let n = b.len();
    let ncells = colour.iter().copied().max().unwrap_or(0) + 1;
    if ncells == n {
        let mut perm = vec![0; n];
        for (v, &c) in colour.iter().enumerate() {
            perm[c] = v;
        }
        let code: Vec<i64> = perm.iter().flat_map(|&i| perm.iter().map(move |&j| b[i][j])).collect();
        if best.as_ref().is_none_or(|(c, _)| code < *c) {
            *best = Some((code, perm));
        }
        return;
    }
    // target: the smallest non-singleton cell, lowest index on ties
    let mut sizes = vec![0usize; ncells];
    for &c in &colour {
        sizes[c] += 1;
    }
    let target = (0..ncells).filter(|&c| sizes[c] > 1).min_by_key(|&c| (sizes[c], c)).expect("non-discrete");
    let members: Vec<usize> = (0..n).filter(|&v| colour[v] == target).collect();
    let mut tried: Vec<usize> = Vec::new();
    for &v in &members {
        // a transposition of twins is an automorphism fixing the current colouring
        if tried.iter().any(|&u| twins(b, u, v)) {
            continue;
        }
        tried.push(v);
        let split: Vec<usize> = colour
            .iter()
            .enumerate()
            .map(|(u, &c)| if c > target || (c == target && u != v) { c + 1 } else { c })
            .collect();
        search(b, refine(b, split), best);
    }
}

// ---------------------------------------------------------------------------
// Dynkin recognition

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Component {
    rank: usize,
    series: char,
}

impl Component {
    fn name(&self) -> String {
        format!("{}{}", self.series, self.rank)
    }
}

/// Names the matrix if its underlying weighted graph is a disjoint union of
/// Dynkin diagrams, e.g. `"A5"`, `"(A1)^3 × D4"`, `"trivial"` for the empty
/// matrix. Simply-laced components need all entries in `{-1, 0, 1}`.
pub fn dynkin_recognize(b: &[Vec<i64>]) -> Option<String> {
    let n = b.len();
    for i in 0..n {
        if b[i].len() != n || b[i][i] != 0 {
            return None;
        }
        for j in 0..n {
            if (b[i][j] == 0) != (b[j][i] == 0) || b[i][j] * b[j][i] > 0 {
                return None;
            }
        }
    }
    let adj: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| b[i][j] != 0).collect()).collect();
    let mut comp = vec![usize::MAX; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![s];
        let mut verts = vec![];
        comp[s] = id;
        while let Some(v) = stack.pop() {
            verts.push(v);
            for &u in &adj[v] {
                if comp[u] == usize::MAX {
                    comp[u] = id;
                    stack.push(u);
                }
            }
        }
        verts.sort_unstable();
        comps.push(recognize_component(b, &adj, &verts)?);
    }
    Some(format_components(comps))
}

fn recognize_component(b: &[Vec<i64>], adj: &[Vec<usize>], verts: &[usize]) -> Option<Component> {
    let k = verts.len();
    let edges: usize = verts.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
    if edges + 1 != k {
        return None; // not a tree
    }
    let weight = |u: usize, v: usize| (b[u][v] * b[v][u]).abs();
    let heavy: Vec<(usize, usize)> = verts
        .iter()
        .flat_map(|&u| adj[u].iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
        .filter(|&(u, v)| weight(u, v) != 1)
        .collect();
    let degrees: Vec<usize> = verts.iter().map(|&v| adj[v].len()).collect();
    let max_deg = degrees.iter().copied().max().unwrap_or(0);
    if heavy.is_empty() {
        if max_deg <= 2 {
            return Some(Component { rank: k, series: 'A' });
        }
        let branch: Vec<usize> = verts.iter().copied().filter(|&v| adj[v].len() >= 3).collect();
        if branch.len() != 1 || adj[branch[0]].len() != 3 {
            return None;
        }
        let c = branch[0];
        let mut arms: Vec<usize> = adj[c].iter().map(|&start| arm_length(adj, c, start)).collect();
        arms.sort_unstable();
        return match arms[..] {
            [1, 1, _] => Some(Component { rank: k, series: 'D' }),
            [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Some(Component { rank: k, series: 'E' }),
            _ => None,
        };
    }
    if heavy.len() != 1 || max_deg > 2 {
        return None;
    }
    let (u, v) = heavy[0];
    match weight(u, v) {
        3 if k == 2 => Some(Component { rank: 2, series: 'G' }),
        2 if k == 2 => Some(Component { rank: 2, series: 'B' }),
        2 => {
            let (end, other) = if adj[u].len() == 1 {
                (u, v)
            } else if adj[v].len() == 1 {
                (v, u)
            } else {
                return if k == 4 { Some(Component { rank: 4, series: 'F' }) } else { None };
            };
            // the Cartan companion has a_{end,other} = -|b_{end,other}|;
            // -2 there marks `end` as the short root, giving B
            let series = if b[end][other].abs() == 2 { 'B' } else { 'C' };
            Some(Component { rank: k, series })
        }
        _ => None,
    }
}

fn arm_length(adj: &[Vec<usize>], centre: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (centre, start, 1);
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&x| x != prev).collect();
        match next[..] {
            [] => return len,
            [x] => {
                prev = cur;
                cur = x;
                len += 1;
            }
            _ => return usize::MAX,
        }
    }
}

fn format_components(mut comps: Vec<Component>) -> String {
    if comps.is_empty() {
        return "trivial".into();
    }
    comps.sort();
    let mut counts: BTreeMap<Component, usize> = BTreeMap::new();
    for c in comps {
        *counts.entry(c).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|(c, m)| if m == 1 { c.name() } else { format!("({})^{m}", c.name()) })
        .collect::<Vec<_>>()
        .join(" × ")
}

// ---------------------------------------------------------------------------
// search

fn entry_bound_violation(b: &[Vec<i64>]) -> Option<(usize, usize)> {
    let n = b.len();
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| (b[i][j] * b[j][i]).abs() >= 4)
}

/// Decides the cluster type of the principal part of `m`.
pub fn is_finite_type(m: &ExchangeMatrix, cap: usize) -> Result<ClusterTypeVerdict> {
    let labels = m.col_labels().to_vec();
    let start = m.principal_matrix();
    struct Node {
        matrix: ExchangeMatrix,
        parent: Option<(usize, usize)>,
    }
    let sequence_of = |nodes: &[Node], mut at: usize| {
        let mut seq = Vec::new();
        while let Some((p, k)) = nodes[at].parent {
            seq.push(labels[k].clone());
            at = p;
        }
        seq.reverse();
        seq
    };
    let mut nodes = vec![Node { matrix: start.clone(), parent: None }];
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    seen.insert(canonical_form(start.entries()).0, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(at) = queue.pop_front() {
        let b = nodes[at].matrix.entries().to_vec();
        if let Some((i, j)) = entry_bound_violation(&b) {
            return Ok(ClusterTypeVerdict::Infinite {
                witness: InfiniteWitness::EntryBound {
                    sequence: sequence_of(&nodes, at),
                    matrix: b,
                    pair: (labels[i].clone(), labels[j].clone()),
                },
            });
        }
        if let Some(name) = dynkin_recognize(&b) {
            return Ok(ClusterTypeVerdict::Finite { name, sequence: sequence_of(&nodes, at), matrix: b });
        }
        for k in 0..b.len() {
            let next = nodes[at].matrix.mutate_index(k);
            let key = canonical_form(next.entries()).0;
            if seen.contains_key(&key) {
                continue;
            }
            if seen.len() >= cap {
                return Ok(ClusterTypeVerdict::Unknown { explored: seen.len() });
            }
            seen.insert(key, nodes.len());
            queue.push_back(nodes.len());
            nodes.push(Node { matrix: next, parent: Some((at, k)) });
        }
    }
    Ok(ClusterTypeVerdict::Infinite { witness: InfiniteWitness::ClosedClass { size: seen.len() } })
}

/// `B(i, J)` for the canonical word of `R(w0, I \ J)`.
pub fn flag_seed_matrix(d: &DynkinDiagram, j: &[usize]) -> Result<ExchangeMatrix> {
    for &v in j {
        d.check_vertex(v)?;
    }
    let k: Vec<usize> = (1..=d.rank()).filter(|v| !j.contains(v)).collect();
    if k.len() == d.rank() {
        return Err(Error::EmptyJ);
    }
    let w = liealg::rw0k_word(d, &k)?;
    seedgen::b_matrix_restricted(d, &w, j)
}

/// The cluster type of the flag variety attached to `J`.
pub fn classify_flag(d: &DynkinDiagram, j: &[usize], cap: usize) -> Result<ClusterTypeVerdict> {
    is_finite_type(&flag_seed_matrix(d, j)?, cap)
}
