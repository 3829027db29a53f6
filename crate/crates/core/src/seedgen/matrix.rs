use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer exchange matrix with labeled rows and columns.
///
/// The first `ncols` rows are the mutable (cluster) rows and carry the same
/// labels as the columns, in the same order; the remaining rows are frozen.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix")]
pub struct ExchangeMatrix {
    entries: Vec<Vec<i64>>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    symmetrizer: Option<Vec<i64>>,
}

#[derive(Deserialize)]
struct RawMatrix {
    entries: Vec<Vec<i64>>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    #[serde(default)]
    symmetrizer: Option<Vec<i64>>,
}

impl TryFrom<RawMatrix> for ExchangeMatrix {
    type Error = Error;
    fn try_from(r: RawMatrix) -> Result<Self> {
        let m = ExchangeMatrix {
            entries: r.entries,
            row_labels: r.row_labels,
            col_labels: r.col_labels,
            symmetrizer: r.symmetrizer,
        };
        m.validate()?;
        Ok(m)
    }
}

impl ExchangeMatrix {
    pub fn new(entries: Vec<Vec<i64>>, row_labels: Vec<String>, col_labels: Vec<String>) -> Result<Self> {
        let m = ExchangeMatrix { entries, row_labels, col_labels, symmetrizer: None };
        m.validate()?;
        Ok(m)
    }

    /// A matrix whose principal part is skew-symmetrizable by the given
    /// diagonal (one entry per column): `d_i b_ik = -d_k b_ki`.
    pub fn new_symmetrizable(
        entries: Vec<Vec<i64>>,
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        d: Vec<i64>,
    ) -> Result<Self> {
        let m = ExchangeMatrix { entries, row_labels, col_labels, symmetrizer: Some(d) };
        m.validate()?;
        Ok(m)
    }

    /// A square principal matrix with generated labels `1..=n`.
    pub fn from_principal(p: Vec<Vec<i64>>) -> Result<Self> {
        let labels: Vec<String> = (1..=p.len()).map(|i| i.to_string()).collect();
        Self::new(p, labels.clone(), labels)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::MalformedMatrix(s));
        let nc = self.col_labels.len();
        if self.entries.len() != self.row_labels.len() {
            return bad(format!("{} rows but {} row labels", self.entries.len(), self.row_labels.len()));
        }
        if self.row_labels.len() < nc {
            return bad("fewer rows than columns".into());
        }
        if let Some(r) = self.entries.iter().position(|row| row.len() != nc) {
            return bad(format!("row {} has {} entries, expected {nc}", self.row_labels[r], self.entries[r].len()));
        }
        if self.row_labels[..nc] != self.col_labels[..] {
            return bad("the leading rows must carry the column labels in order".into());
        }
        let mut seen = HashSet::new();
        if let Some(dup) = self.row_labels.iter().find(|l| !seen.insert(*l)) {
            return bad(format!("duplicate row label {dup:?}"));
        }
        match &self.symmetrizer {
            None => {
                if !self.is_skew_symmetrizable_by(&vec![1; nc]) {
                    return bad("principal part is not skew-symmetric".into());
                }
            }
            Some(d) => {
                if d.len() != nc || d.iter().any(|&x| x <= 0) {
                    return bad("symmetrizer must have one positive entry per column".into());
                }
                if !self.is_skew_symmetrizable_by(d) {
                    return bad("principal part is not skew-symmetrizable by the given symmetrizer".into());
                }
            }
        }
        Ok(())
    }

    fn is_skew_symmetrizable_by(&self, d: &[i64]) -> bool {
        let n = self.ncols();
        (0..n).all(|i| (0..n).all(|k| d[i] * self.entries[i][k] == -d[k] * self.entries[k][i]))
    }

    pub fn nrows(&self) -> usize {
        self.entries.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row][col]
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn frozen_labels(&self) -> &[String] {
        &self.row_labels[self.ncols()..]
    }

    pub fn symmetrizer(&self) -> Option<&[i64]> {
        self.symmetrizer.as_deref()
    }

    pub fn row_index(&self, label: &str) -> Option<usize> {
        self.row_labels.iter().position(|l| l == label)
    }

    pub fn col_index(&self, label: &str) -> Option<usize> {
        self.col_labels.iter().position(|l| l == label)
    }

    /// Entry looked up by labels.
    pub fn entry(&self, row: &str, col: &str) -> Option<i64> {
        Some(self.entries[self.row_index(row)?][self.col_index(col)?])
    }

    /// The square submatrix on the mutable indices.
    pub fn principal(&self) -> Vec<Vec<i64>> {
        self.entries[..self.ncols()].to_vec()
    }

    pub fn principal_matrix(&self) -> ExchangeMatrix {
        ExchangeMatrix {
            entries: self.principal(),
            row_labels: self.col_labels.clone(),
            col_labels: self.col_labels.clone(),
            symmetrizer: self.symmetrizer.clone(),
        }
    }

    /// Appends frozen rows.
    pub fn with_rows(&self, rows: Vec<Vec<i64>>, labels: Vec<String>) -> Result<Self> {
        if rows.len() != labels.len() {
            return Err(Error::SizeMismatch("row count differs from label count".into()));
        }
        let mut m = self.clone();
        m.entries.extend(rows);
        m.row_labels.extend(labels);
        m.validate()?;
        Ok(m)
    }

    /// Matrix mutation at column index `k`, applied to all rows.
    pub fn mutate_index(&self, k: usize) -> ExchangeMatrix {
        let b = &self.entries;
        let entries = (0..self.nrows())
            .map(|i| {
                (0..self.ncols())
                    .map(|j| {
                        if i == k || j == k {
                            -b[i][j]
                        } else {
                            b[i][j] + (b[i][k] * b[k][j].abs() + b[i][k].abs() * b[k][j]) / 2
                        }
                    })
                    .collect()
            })
            .collect();
        ExchangeMatrix { entries, ..self.clone() }
    }

    /// Mutation at the vertex with the given column label.
    pub fn mutate(&self, label: &str) -> Result<ExchangeMatrix> {
        let k = self.col_index(label).ok_or_else(|| Error::NotMutable(label.to_string()))?;
        Ok(self.mutate_index(k))
    }

    /// Arrows `(from, to, multiplicity)` of the quiver: `b_ik > 0` gives
    /// `i -> k`. Arrows between frozen rows are absent by construction.
    pub fn arrows(&self) -> Vec<(String, String, i64)> {
        let mut out = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (k, &b) in row.iter().enumerate() {
                if b > 0 {
                    out.push((self.row_labels[i].clone(), self.col_labels[k].clone(), b));
                } else if b < 0 && i >= self.ncols() {
                    out.push((self.col_labels[k].clone(), self.row_labels[i].clone(), -b));
                }
            }
        }
        out
    }

    /// Graphviz rendering: mutable vertices as bold circles, frozen as boxes.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", escape(name));
        for (i, l) in self.row_labels.iter().enumerate() {
            let style = if i < self.ncols() { "shape=circle, style=bold" } else { "shape=box" };
            let _ = writeln!(s, "  \"{}\" [{style}];", escape(l));
        }
        for (from, to, mult) in self.arrows() {
            let label = if mult > 1 { format!(" [label=\"{mult}\"]") } else { String::new() };
            let _ = writeln!(s, "  \"{}\" -> \"{}\"{label};", escape(&from), escape(&to));
        }
        s.push_str("}\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
