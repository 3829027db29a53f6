//! Initial seeds: exchangeable indices, the quiver `Gamma_i`, the matrices
//! `B(i)` and `B(i, J)`, degree rows, and the named grid, quadric and
//! isotropic seeds.
//!
//! Indices of the word are `1..=r`; the negative indices `-n..=-1` carry the
//! letters `i_{-m} = m`.

mod grid;
mod matrix;

pub use grid::{d5_isotropic_seed, grassmannian_grid_seed, quadric_seed, GridSeed};
pub use matrix::ExchangeMatrix;

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::liealg::{self, DynkinDiagram, ReducedWord, WeightVec};

/// Word positions with the letter convention for negative indices.
struct Positions<'a> {
    n: usize,
    w: &'a [usize],
}

impl<'a> Positions<'a> {
    fn r(&self) -> i64 {
        self.w.len() as i64
    }

    fn letter(&self, m: i64) -> usize {
        if m < 0 {
            (-m) as usize
        } else {
            self.w[(m - 1) as usize]
        }
    }

    /// `m^+`, or `r + 1` when the letter does not recur.
    fn plus(&self, m: i64) -> i64 {
        let a = self.letter(m);
        (m.max(0) + 1..=self.r()).find(|&l| self.letter(l) == a).unwrap_or(self.r() + 1)
    }

    fn exchangeable(&self, m: i64) -> bool {
        m >= 1 && self.plus(m) <= self.r()
    }

    fn negatives(&self) -> impl Iterator<Item = i64> {
        (1..=self.n as i64).map(|j| -j)
    }
}

/// `[1, r]` minus the last occurrence of each letter.
pub fn exchangeable_set(d: &DynkinDiagram, w: &ReducedWord) -> Result<Vec<i64>> {
    liealg::check_longest(d, &w.letters)?;
    let p = Positions { n: d.rank(), w: &w.letters };
    Ok((1..=p.r()).filter(|&m| p.exchangeable(m)).collect())
}

/// Entry `b_ml` of `B(i)` for `m < l` or `m > l`, following the arrow rule.
/// In non-simply-laced types the inner arrows carry Cartan weights.
fn rule_entry(d: &DynkinDiagram, p: &Positions, m: i64, l: i64) -> i64 {
    if m == l {
        return 0;
    }
    if !(p.exchangeable(m) || p.exchangeable(l)) {
        return 0;
    }
    let (lo, hi, sign) = if m < l { (m, l, 1) } else { (l, m, -1) };
    // the arrow rule is phrased for an ordered pair lo < hi
    if p.plus(lo) == hi {
        return sign; // lo -> hi
    }
    let (lo_plus, hi_plus) = (p.plus(lo), p.plus(hi));
    let a = d.a(p.letter(lo), p.letter(hi));
    if hi < lo_plus && lo_plus < hi_plus && a < 0 {
        // arrow hi -> lo
        return if m == lo {
            // b_{lo,hi}: row lo, column hi
            if d.is_simply_laced() { -1 } else { d.a(p.letter(lo), p.letter(hi)) }
        } else if d.is_simply_laced() {
            1
        } else {
            -d.a(p.letter(hi), p.letter(lo))
        };
    }
    0
}

/// The quiver `Gamma_i` on `[-n, -1] ∪ e(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaQuiver {
    pub vertices: Vec<i64>,
    pub arrows: Vec<(i64, i64)>,
    pub exchangeable: Vec<i64>,
}

impl GammaQuiver {
    /// Graphviz rendering with exchangeable vertices bold and the rest boxed.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph gamma {\n");
        for v in &self.vertices {
            let style = if self.exchangeable.contains(v) { "shape=circle, style=bold" } else { "shape=box" };
            let _ = writeln!(s, "  \"{v}\" [{style}];");
        }
        for (a, b) in &self.arrows {
            let _ = writeln!(s, "  \"{a}\" -> \"{b}\";");
        }
        s.push_str("}\n");
        s
    }
}

pub fn gamma_quiver(d: &DynkinDiagram, w: &ReducedWord) -> Result<GammaQuiver> {
    let e = exchangeable_set(d, w)?;
    let p = Positions { n: d.rank(), w: &w.letters };
    let mut vertices: Vec<i64> = p.negatives().collect();
    vertices.reverse();
    vertices.extend(e.iter().copied());
    let mut arrows = Vec::new();
    for (x, &m) in vertices.iter().enumerate() {
        for &l in &vertices[x + 1..] {
            let b = rule_entry(d, &p, m, l);
            if b > 0 {
                arrows.push((m, l));
            } else if b < 0 {
                arrows.push((l, m));
            }
        }
    }
    Ok(GammaQuiver { vertices, arrows, exchangeable: e })
}

fn labels(ix: &[i64]) -> Vec<String> {
    ix.iter().map(|m| m.to_string()).collect()
}

fn build(d: &DynkinDiagram, p: &Positions, rows: &[i64], cols: &[i64]) -> Result<ExchangeMatrix> {
    let entries = rows
        .iter()
        .map(|&m| cols.iter().map(|&l| rule_entry(d, p, m, l)).collect())
        .collect();
    if d.is_simply_laced() {
        ExchangeMatrix::new(entries, labels(rows), labels(cols))
    } else {
        let sym = d.symmetrizer();
        let dc = cols.iter().map(|&l| sym[p.letter(l) - 1]).collect();
        ExchangeMatrix::new_symmetrizable(entries, labels(rows), labels(cols), dc)
    }
}

/// `B(i)`: rows `e(i)` ascending then `-1, ..., -n`; columns `e(i)`.
pub fn b_matrix(d: &DynkinDiagram, w: &ReducedWord) -> Result<ExchangeMatrix> {
    let e = exchangeable_set(d, w)?;
    let p = Positions { n: d.rank(), w: &w.letters };
    let mut rows = e.clone();
    rows.extend(p.negatives());
    build(d, &p, &rows, &e)
}

/// Row and column indices of `B(i, J)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedIndices {
    pub columns: Vec<i64>,
    /// `t_1, ..., t_n`.
    pub t: Vec<i64>,
    pub r_k: usize,
}

impl RestrictedIndices {
    pub fn rows(&self) -> Vec<i64> {
        let mut rows = self.columns.clone();
        rows.extend(self.t.iter().copied());
        rows
    }
}

fn complement(d: &DynkinDiagram, j: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    for &v in j {
        d.check_vertex(v)?;
    }
    let mut j = j.to_vec();
    j.sort_unstable();
    j.dedup();
    if j.is_empty() {
        return Err(Error::EmptyJ);
    }
    let k = (1..=d.rank()).filter(|v| !j.contains(v)).collect();
    Ok((j, k))
}

pub fn restricted_indices(d: &DynkinDiagram, w: &ReducedWord, j: &[usize]) -> Result<RestrictedIndices> {
    let (j, k) = complement(d, j)?;
    liealg::validate_rw0k(d, &k, &w.letters)?;
    let r_k = liealg::parabolic_length(d, &k)?;
    let e = exchangeable_set(d, w)?;
    let columns = e.into_iter().filter(|&m| m > r_k as i64).collect();
    let t = (1..=d.rank())
        .map(|i| {
            if j.contains(&i) {
                -(i as i64)
            } else {
                (1..=r_k).rev().find(|&t| w.letters[t - 1] == i).expect("w0^K uses every letter of K") as i64
            }
        })
        .collect();
    Ok(RestrictedIndices { columns, t, r_k })
}

/// `B(i, J)`: columns `]r_K, r] ∩ e(i)`, rows the columns followed by
/// `t_1, ..., t_n`.
pub fn b_matrix_restricted(d: &DynkinDiagram, w: &ReducedWord, j: &[usize]) -> Result<ExchangeMatrix> {
    let ix = restricted_indices(d, w, j)?;
    let p = Positions { n: d.rank(), w: &w.letters };
    build(d, &p, &ix.rows(), &ix.columns)
}

/// The generalized minor `D_{u(ϖ_i), v(ϖ_i)}` attached to an index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorLabel {
    pub index: i64,
    pub vertex: usize,
    pub left: WeightVec,
    pub right: WeightVec,
}

impl MinorLabel {
    /// Subset form `D_{R,C}` in type A, weight form otherwise.
    pub fn render(&self, d: &DynkinDiagram) -> String {
        if d.series() == liealg::Series::A {
            let r = type_a_subset_of_weight(&self.left);
            let c = type_a_subset_of_weight(&self.right);
            format!("D_{{{},{}}}", fmt_subset(&r), fmt_subset(&c))
        } else {
            format!("D_{{{},{}}}", self.left, self.right)
        }
    }
}

/// `φ(m) = D_{u_{≤m}(ϖ_{i_m}), w0(ϖ_{i_m})}` for every row of `B(i, J)`, in
/// row order.
pub fn initial_cluster_labels(d: &DynkinDiagram, w: &ReducedWord, j: &[usize]) -> Result<Vec<MinorLabel>> {
    let ix = restricted_indices(d, w, j)?;
    let p = Positions { n: d.rank(), w: &w.letters };
    let w0 = liealg::longest_word(d);
    ix.rows()
        .into_iter()
        .map(|m| {
            let i = p.letter(m);
            let prefix: &[usize] = if m < 0 { &[] } else { &w.letters[..m as usize] };
            let fw = d.fundamental_weight(i);
            Ok(MinorLabel {
                index: m,
                vertex: i,
                left: liealg::apply_word(d, prefix, &fw)?,
                right: liealg::apply_word(d, &w0.letters, &fw)?,
            })
        })
        .collect()
}

/// In type `A_n`, the weight `w(ϖ_i)` determines the subset `w([1,i])` of
/// `[1, n+1]`: coordinate `k` equals `[k ∈ S] - [k+1 ∈ S]`.
pub fn type_a_subset_of_weight(lambda: &WeightVec) -> Vec<usize> {
    let n = lambda.0.len();
    // chi(k) - chi(n+1) = sum_{m >= k} lambda_m; pick chi(n+1) so that chi is 0/1
    let mut suffix = vec![0i64; n + 2];
    for k in (1..=n).rev() {
        suffix[k] = suffix[k + 1] + lambda.0[k - 1];
    }
    let base = if suffix[1..=n].iter().any(|&s| s < 0) { 1 } else { 0 };
    (1..=n + 1).filter(|&k| base + suffix[k] == 1).collect()
}

/// `{2,3,5}` renders as `235`; elements above 9 force a dotted form.
pub fn fmt_subset(s: &[usize]) -> String {
    if s.iter().all(|&x| x < 10) {
        s.iter().map(|x| x.to_string()).collect()
    } else {
        s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
    }
}

/// Appends one row per `j` with `b_{j,k} = -Σ_i deg_j(x_i) b_{i,k}`, the sum
/// running over all existing rows. `degs[i]` is the multidegree of row `i`.
pub fn extend_with_degree_rows(
    b: &ExchangeMatrix,
    degs: &[Vec<i64>],
    new_labels: Vec<String>,
) -> Result<ExchangeMatrix> {
    if degs.len() != b.nrows() {
        return Err(Error::Missing(format!("{} degree vectors for {} rows", degs.len(), b.nrows())));
    }
    let width = new_labels.len();
    if let Some(bad) = degs.iter().position(|v| v.len() != width) {
        return Err(Error::SizeMismatch(format!("degree vector of row {} has the wrong length", b.row_labels()[bad])));
    }
    let rows = (0..width)
        .map(|j| {
            (0..b.ncols())
                .map(|k| -(0..b.nrows()).map(|i| degs[i][j] * b.get(i, k)).sum::<i64>())
                .collect()
        })
        .collect();
    b.with_rows(rows, new_labels)
}
