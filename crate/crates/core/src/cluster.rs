//! Seeds and mutation with exact Laurent-polynomial cluster variables.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::seedgen::ExchangeMatrix;

/// An exchange matrix together with one variable per row. Variables are
/// Laurent polynomials in the variables of some fixed initial seed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Seed {
    matrix: ExchangeMatrix,
    vars: Vec<Poly>,
    names: Vec<String>,
}

impl Seed {
    /// The seed whose variables are the free symbols named by the row labels.
    pub fn initial(matrix: ExchangeMatrix) -> Seed {
        let n = matrix.nrows();
        let vars = (0..n).map(|i| Poly::var(n, i)).collect();
        let names = matrix.row_labels().to_vec();
        Seed { matrix, vars, names }
    }

    /// A seed with explicit variables over the initial symbols `names`.
    pub fn with_vars(matrix: ExchangeMatrix, vars: Vec<Poly>, names: Vec<String>) -> Result<Seed> {
        if vars.len() != matrix.nrows() {
            return Err(Error::SizeMismatch(format!("{} variables for {} rows", vars.len(), matrix.nrows())));
        }
        if let Some(v) = vars.iter().find(|v| v.nvars() != names.len()) {
            return Err(Error::SizeMismatch(format!("variable over {} symbols, expected {}", v.nvars(), names.len())));
        }
        Ok(Seed { matrix, vars, names })
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn vars(&self) -> &[Poly] {
        &self.vars
    }

    /// Names of the initial symbols the variables are written in.
    pub fn symbol_names(&self) -> &[String] {
        &self.names
    }

    pub fn var(&self, label: &str) -> Option<&Poly> {
        Some(&self.vars[self.matrix.row_index(label)?])
    }

    /// The mutable part of the cluster.
    pub fn cluster(&self) -> &[Poly] {
        &self.vars[..self.matrix.ncols()]
    }

    pub fn frozen(&self) -> &[Poly] {
        &self.vars[self.matrix.ncols()..]
    }

    /// The two monomials of the exchange relation at column `k`.
    pub fn exchange_monomials(&self, k: usize) -> (Poly, Poly) {
        exchange_monomials(&self.matrix, &self.vars, k)
    }

    pub fn mutate_index(&self, k: usize) -> Result<Seed> {
        if k >= self.matrix.ncols() {
            return Err(Error::NotMutable(format!("column {k}")));
        }
        let (m, n) = self.exchange_monomials(k);
        let num = &m + &n;
        let label = &self.matrix.col_labels()[k];
        let fresh = num.div_exact(&self.vars[k]).ok_or_else(|| Error::InexactDivision(label.clone()))?;
        let mut vars = self.vars.clone();
        vars[k] = fresh;
        Ok(Seed { matrix: self.matrix.mutate_index(k), vars, names: self.names.clone() })
    }

    pub fn mutate(&self, label: &str) -> Result<Seed> {
        let k = self.matrix.col_index(label).ok_or_else(|| Error::NotMutable(label.to_string()))?;
        self.mutate_index(k)
    }

    /// Mutates at each label in execution order (first element first).
    pub fn apply_sequence<S: AsRef<str>>(&self, labels: &[S]) -> Result<Seed> {
        labels.iter().try_fold(self.clone(), |s, l| s.mutate(l.as_ref()))
    }

    /// The variable produced by the last mutation of a sequence.
    pub fn sequence_variable<S: AsRef<str>>(&self, labels: &[S]) -> Result<Option<Poly>> {
        let s = self.apply_sequence(labels)?;
        Ok(labels.last().map(|l| s.var(l.as_ref()).expect("label is mutable").clone()))
    }

    pub fn render_var(&self, p: &Poly) -> String {
        p.render(&self.names)
    }
}

/// `(∏_{b_ik>0} x_i^{b_ik}, ∏_{b_ik<0} x_i^{-b_ik})`.
pub fn exchange_monomials(b: &ExchangeMatrix, vars: &[Poly], k: usize) -> (Poly, Poly) {
    let nv = vars[0].nvars();
    let mut plus = Poly::one(nv);
    let mut minus = Poly::one(nv);
    for (i, v) in vars.iter().enumerate() {
        let e = b.get(i, k);
        if e > 0 {
            plus = &plus * &v.pow(e as u32);
        } else if e < 0 {
            minus = &minus * &v.pow((-e) as u32);
        }
    }
    (plus, minus)
}

/// Matrix mutation at a mutable label.
pub fn mutate_matrix(b: &ExchangeMatrix, label: &str) -> Result<ExchangeMatrix> {
    b.mutate(label)
}

/// Parses a composition such as `μ4μ1`, `mu4 mu1` or `4,1` written
/// right-to-left, returning labels in execution order (`["1", "4"]`).
pub fn parse_composition(s: &str) -> Result<Vec<String>> {
    let cleaned = s.replace('μ', " ").replace("mu", " ").replace(['_', ',', '∘', '*'], " ");
    let mut labels: Vec<String> = cleaned.split_whitespace().map(str::to_string).collect();
    if labels.is_empty() && !s.trim().is_empty() {
        return Err(Error::Invalid(format!("cannot parse mutation sequence {s:?}")));
    }
    labels.reverse();
    Ok(labels)
}

/// Every cluster variable reachable from `seed`, found by breadth-first
/// search over seeds keyed by their unordered clusters. Fails with
/// `CapExceeded` once more than `cap` seeds have been visited.
pub fn enumerate_cluster_variables(seed: &Seed, cap: usize) -> Result<BTreeSet<Poly>> {
    let key = |s: &Seed| -> Vec<Poly> {
        let mut c = s.cluster().to_vec();
        c.sort();
        c
    };
    let mut seen: HashSet<Vec<Poly>> = HashSet::new();
    let mut vars = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(key(seed));
    queue.push_back(seed.clone());
    while let Some(s) = queue.pop_front() {
        vars.extend(s.cluster().iter().cloned());
        for k in 0..s.matrix().ncols() {
            let t = s.mutate_index(k)?;
            if seen.insert(key(&t)) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded(cap));
                }
                queue.push_back(t);
            }
        }
    }
    Ok(vars)
}
