//! Polynomial models of flag coordinate rings.
//!
//! Type `A_n` is modeled on the upper unitriangular `(n+1) x (n+1)` matrix
//! with entries `x_{a,b}` (`a < b`). The derivation `e_j^†` is the
//! infinitesimal action adding row `j+1` to row `j`; it kills every minor on
//! the rows `[1, i]` unless `i = j`. The quadric model lives in
//! `Z[y_1, ..., y_{2n}]` modulo `Σ (-1)^i y_i y_{2n+1-i}`.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cluster::exchange_monomials;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::liealg::{DynkinDiagram, ReducedWord, Series};
use crate::seedgen::{self, fmt_subset, ExchangeMatrix, MinorLabel};

/// Determinant of the square submatrix `rows x cols` of a matrix given by
/// its entries, via Laplace expansion along the first row with memoization.
fn determinant(nvars: usize, rows: &[usize], cols: &[usize], entry: &dyn Fn(usize, usize) -> Poly) -> Poly {
    fn go(
        nvars: usize,
        rows: &[usize],
        cols: &[usize],
        k: usize,
        mask: u64,
        entry: &dyn Fn(usize, usize) -> Poly,
        memo: &mut HashMap<(usize, u64), Poly>,
    ) -> Poly {
        if k == rows.len() {
            return Poly::one(nvars);
        }
        if let Some(p) = memo.get(&(k, mask)) {
            return p.clone();
        }
        let mut acc = Poly::zero(nvars);
        let mut sign_pos = true;
        for (ci, &c) in cols.iter().enumerate() {
            if mask & (1 << ci) != 0 {
                continue;
            }
            let e = entry(rows[k], c);
            if !e.is_zero() {
                let sub = go(nvars, rows, cols, k + 1, mask | (1 << ci), entry, memo);
                let t = &e * &sub;
                if sign_pos {
                    acc += &t;
                } else {
                    acc -= &t;
                }
            }
            sign_pos = !sign_pos;
        }
        memo.insert((k, mask), acc.clone());
        acc
    }
    let mut memo = HashMap::new();
    go(nvars, rows, cols, 0, 0, entry, &mut memo)
}

/// Symbolic unitriangular matrix of size `n + 1` for type `A_n`.
#[derive(Clone, Debug)]
pub struct TypeAModel {
    n: usize,
    index: HashMap<(usize, usize), usize>,
    names: Vec<String>,
}

impl TypeAModel {
    pub fn new(n: usize) -> Self {
        let size = n + 1;
        let mut index = HashMap::new();
        let mut names = Vec::new();
        for a in 1..=size {
            for b in a + 1..=size {
                index.insert((a, b), names.len());
                names.push(format!("x{a}{b}"));
            }
        }
        TypeAModel { n, index, names }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.names
    }

    pub fn var_index(&self, a: usize, b: usize) -> usize {
        self.index[&(a, b)]
    }

    pub fn entry(&self, a: usize, b: usize) -> Poly {
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => Poly::one(self.nvars()),
            std::cmp::Ordering::Greater => Poly::zero(self.nvars()),
            std::cmp::Ordering::Less => Poly::var(self.nvars(), self.var_index(a, b)),
        }
    }

    fn check_subset(&self, s: &[usize]) -> Result<()> {
        let size = self.n + 1;
        if s.iter().any(|&x| x == 0 || x > size) || s.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(format!("{s:?} is not an increasing subset of [1, {size}]")));
        }
        Ok(())
    }

    /// The minor on rows `r` and columns `c`.
    pub fn minor(&self, r: &[usize], c: &[usize]) -> Result<Poly> {
        if r.len() != c.len() {
            return Err(Error::SizeMismatch(format!("{} rows but {} columns", r.len(), c.len())));
        }
        self.check_subset(r)?;
        self.check_subset(c)?;
        Ok(determinant(self.nvars(), r, c, &|a, b| self.entry(a, b)))
    }

    /// The flag minor `D_C`, on rows `[1, |C|]`.
    pub fn flag_minor(&self, c: &[usize]) -> Result<Poly> {
        let rows: Vec<usize> = (1..=c.len()).collect();
        self.minor(&rows, c)
    }

    /// `e_j^† = ∂/∂x_{j,j+1} + Σ_{b > j+1} x_{j+1,b} ∂/∂x_{j,b}`.
    pub fn ej_dagger(&self, f: &Poly, j: usize) -> Poly {
        let size = self.n + 1;
        let mut out = f.derivative(self.var_index(j, j + 1));
        for b in j + 2..=size {
            let d = f.derivative(self.var_index(j, b));
            if !d.is_zero() {
                out += &(&self.entry(j + 1, b) * &d);
            }
        }
        out
    }

    /// `a_j(f) = max { s : (e_j^†)^s f ≠ 0 }`.
    pub fn a_j(&self, f: &Poly, j: usize) -> Result<i64> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut g = self.ej_dagger(f, j);
        let mut s = 0;
        while !g.is_zero() {
            s += 1;
            g = self.ej_dagger(&g, j);
        }
        Ok(s)
    }

    /// `(a_j(f))_{j ∈ J}` for `f ∈ C[N_K]`; invariance under `e_k^†` for
    /// `k ∉ J` is checked first.
    pub fn multidegree(&self, f: &Poly, j: &[usize]) -> Result<Vec<i64>> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        for k in (1..=self.n).filter(|k| !j.contains(k)) {
            if !self.ej_dagger(f, k).is_zero() {
                return Err(Error::NotKInvariant(k));
            }
        }
        j.iter().map(|&jj| self.a_j(f, jj)).collect()
    }

    /// `w([1, i])` for the permutation realization of `W = S_{n+1}`; the
    /// letters act from last to first and `s_l` swaps `l` and `l + 1`.
    pub fn weight_subset(&self, letters: &[usize], i: usize) -> Vec<usize> {
        let mut set: Vec<usize> = (1..=i).collect();
        for &l in letters.iter().rev() {
            for x in set.iter_mut() {
                if *x == l {
                    *x = l + 1;
                } else if *x == l + 1 {
                    *x = l;
                }
            }
        }
        set.sort_unstable();
        set
    }

    /// The polynomial of a seed label `D_{u(ϖ_i), w0(ϖ_i)}`.
    pub fn label_minor(&self, label: &MinorLabel) -> Result<Poly> {
        let r = seedgen::type_a_subset_of_weight(&label.left);
        let c = seedgen::type_a_subset_of_weight(&label.right);
        self.minor(&r, &c)
    }
}

/// A formal integer combination of products of flag-minor symbols; each
/// monomial is a list of column subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorExpr {
    pub terms: Vec<(BigInt, Vec<Vec<usize>>)>,
}

impl MinorExpr {
    pub fn new(terms: Vec<(BigInt, Vec<Vec<usize>>)>) -> Self {
        let mut terms: Vec<(BigInt, Vec<Vec<usize>>)> = terms
            .into_iter()
            .map(|(c, mut f)| {
                f.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
                (c, f)
            })
            .collect();
        terms.sort_by(|a, b| a.1.cmp(&b.1));
        let mut merged: Vec<(BigInt, Vec<Vec<usize>>)> = Vec::new();
        for (c, f) in terms {
            match merged.last_mut() {
                Some(last) if last.1 == f => last.0 += c,
                _ => merged.push((c, f)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        MinorExpr { terms: merged }
    }

    /// Parses expressions such as `D2*D156 - D1*D256` or `D{1,10}`. The
    /// letter in front of each factor is ignored, so `Δ` works as well.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("cannot parse minor expression {s:?}"));
        let mut terms = Vec::new();
        let normalized = s.replace('−', "-").replace(' ', "");
        let mut rest = normalized.as_str();
        while !rest.is_empty() {
            let mut sign = BigInt::one();
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                sign = -sign;
                rest = r;
            }
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (term, tail) = rest.split_at(end);
            rest = tail;
            let mut coeff = sign;
            let mut factors = Vec::new();
            for f in term.split('*').filter(|f| !f.is_empty()) {
                if let Ok(c) = f.parse::<BigInt>() {
                    coeff *= c;
                    continue;
                }
                let body = f.trim_start_matches(|ch: char| ch.is_alphabetic() || ch == '_');
                let body = body.trim_start_matches('{').trim_end_matches('}');
                let subset: Vec<usize> = if body.contains(',') || body.contains('.') {
                    body.split([',', '.']).map(|x| x.parse().map_err(|_| bad())).collect::<Result<_>>()?
                } else {
                    body.chars().map(|ch| ch.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_>>()?
                };
                if subset.is_empty() {
                    return Err(bad());
                }
                factors.push(subset);
            }
            if term.is_empty() {
                return Err(bad());
            }
            terms.push((coeff, factors));
        }
        Ok(MinorExpr::new(terms))
    }

    /// Expands in the unitriangular model, reading `D_C` as a flag minor.
    pub fn expand(&self, m: &TypeAModel) -> Result<Poly> {
        let mut acc = Poly::zero(m.nvars());
        for (c, factors) in &self.terms {
            let mut t = Poly::constant(m.nvars(), c.clone());
            for f in factors {
                t = &t * &m.flag_minor(f)?;
            }
            acc += &t;
        }
        Ok(acc)
    }

    pub fn render(&self, symbol: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (c, factors)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() || factors.is_empty() {
                let _ = write!(out, "{abs}");
            }
            for f in factors {
                let _ = write!(out, "{symbol}{}", fmt_subset(f));
            }
        }
        out
    }
}

/// Minimal homogeneous lift of a combination of flag minors: each monomial
/// is padded by powers of `Δ_{[1,j]}` up to the multidegree of the whole
/// polynomial. Fails with `CancellationCase` when a monomial already exceeds
/// that degree, since then no monomial-wise lift exists.
pub fn lift(m: &TypeAModel, expr: &MinorExpr, j: &[usize]) -> Result<MinorExpr> {
    let f = expr.expand(m)?;
    let lambda = m.multidegree(&f, j)?;
    let mut out = Vec::new();
    for (c, factors) in &expr.terms {
        let mut d = vec![0i64; j.len()];
        for s in factors {
            let pos = j
                .iter()
                .position(|&jj| jj == s.len())
                .ok_or_else(|| Error::Invalid(format!("factor D{} has size outside J", fmt_subset(s))))?;
            d[pos] += 1;
        }
        let mut padded = factors.clone();
        for (pos, &jj) in j.iter().enumerate() {
            if d[pos] > lambda[pos] {
                return Err(Error::CancellationCase { j: jj });
            }
            for _ in d[pos]..lambda[pos] {
                padded.push((1..=jj).collect());
            }
        }
        out.push((c.clone(), padded));
    }
    Ok(MinorExpr::new(out))
}

/// `pr_J`: evaluate a lift on `N_K`, where `Δ_C` becomes `D_C` and every
/// `Δ_{[1,j]}` becomes 1.
pub fn project(m: &TypeAModel, lifted: &MinorExpr) -> Result<Poly> {
    lifted.expand(m)
}

/// Polynomials on `N` for the rows of `B(i, J)` in type A, one per row.
pub fn type_a_row_polynomials(m: &TypeAModel, d: &DynkinDiagram, w: &ReducedWord, j: &[usize]) -> Result<Vec<Poly>> {
    if d.series() != Series::A || d.rank() != m.rank() {
        return Err(Error::Invalid(format!("the unitriangular model of A{} does not cover {d}", m.rank())));
    }
    seedgen::initial_cluster_labels(d, w, j)?.iter().map(|l| m.label_minor(l)).collect()
}

/// `B(i, J)` extended by one degree row per `j ∈ J` (labelled `Δ1`, `Δ12`,
/// ...), with the multidegrees computed from the row minors.
pub fn type_a_extended_matrix(d: &DynkinDiagram, w: &ReducedWord, j: &[usize]) -> Result<ExchangeMatrix> {
    let mut j = j.to_vec();
    j.sort_unstable();
    j.dedup();
    let m = TypeAModel::new(d.rank());
    let b = seedgen::b_matrix_restricted(d, w, &j)?;
    let polys = type_a_row_polynomials(&m, d, w, &j)?;
    let degs = polys.iter().map(|p| m.multidegree(p, &j)).collect::<Result<Vec<_>>>()?;
    let labels = j.iter().map(|&jj| format!("Δ{}", fmt_subset(&(1..=jj).collect::<Vec<_>>()))).collect();
    seedgen::extend_with_degree_rows(&b, &degs, labels)
}

/// Outcome of checking one exchange relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub label: String,
    pub exact: bool,
    pub new_var: Option<Poly>,
    pub matches_expected: Option<bool>,
}

/// For each mutable column, divides `M_k + N_k` by `x_k` in the polynomial
/// model. Random integer points act as a fail-fast filter; the verdict is the
/// exact division.
pub fn verify_seed_on_model(
    b: &ExchangeMatrix,
    assignment: &[Poly],
    expected: &HashMap<String, Poly>,
    trials: usize,
    rng_seed: u64,
) -> Result<Vec<RelationCheck>> {
    if assignment.len() != b.nrows() {
        return Err(Error::Missing(format!("{} assignments for {} rows", assignment.len(), b.nrows())));
    }
    let nv = assignment.first().map(|p| p.nvars()).unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut out = Vec::new();
    for k in 0..b.ncols() {
        let label = b.col_labels()[k].clone();
        let (mp, np) = exchange_monomials(b, assignment, k);
        let num = &mp + &np;
        let den = &assignment[k];
        let mut plausible = true;
        for _ in 0..trials {
            let pt: Vec<BigInt> = (0..nv).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
            if let (Some(a), Some(d)) = (num.eval(&pt), den.eval(&pt)) {
                if !d.is_zero() && !(a % d).is_zero() {
                    plausible = false;
                    break;
                }
            }
        }
        let new_var = if plausible { num.div_exact(den) } else { None };
        let matches_expected = match (&new_var, expected.get(&label)) {
            (Some(v), Some(e)) => Some(v == e),
            (None, Some(_)) => Some(false),
            _ => None,
        };
        out.push(RelationCheck { label, exact: new_var.is_some(), new_var, matches_expected });
    }
    Ok(out)
}

/// Generic `rows x cols` matrix with independent entries `y_{r,c}`, for
/// Plücker-coordinate identities.
#[derive(Clone, Debug)]
pub struct GenericMatrix {
    pub rows: usize,
    pub cols: usize,
}

impl GenericMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        GenericMatrix { rows, cols }
    }

    pub fn nvars(&self) -> usize {
        self.rows * self.cols
    }

    /// The maximal minor on the given columns (1-based).
    pub fn pluecker(&self, c: &[usize]) -> Result<Poly> {
        if c.len() != self.rows || c.iter().any(|&x| x == 0 || x > self.cols) {
            return Err(Error::SizeMismatch(format!("{c:?} is not a {}-subset of [1, {}]", self.rows, self.cols)));
        }
        let rows: Vec<usize> = (1..=self.rows).collect();
        let nv = self.nvars();
        let cols = self.cols;
        Ok(determinant(nv, &rows, c, &|r, cc| Poly::var(nv, (r - 1) * cols + (cc - 1))))
    }
}

/// The lifted exchange relation at the corner vertex of the `(n, j)`
/// Grassmannian grid, checked as a polynomial identity between maximal
/// minors of a generic `j x (n+1)` matrix:
/// `Δ_{1..j-1,j+1} Δ_{1..j-2,j,j+2} = Δ_{1..j-1,j+2} Δ_{1..j-2,j,j+1}
///  + Δ_{[1,j]} Δ_{1..j-2,j+1,j+2}`.
pub fn verify_grid_corner_relation(n: usize, j: usize) -> Result<bool> {
    if j < 2 || j + 2 > n + 1 {
        return Err(Error::Invalid(format!("corner relation needs 2 <= j <= n - 1, got n={n}, j={j}")));
    }
    let g = GenericMatrix::new(j, n + 1);
    let with = |base: usize, extra: &[usize]| -> Vec<usize> { (1..=base).chain(extra.iter().copied()).collect() };
    let lhs = &g.pluecker(&with(j - 1, &[j + 1]))? * &g.pluecker(&with(j - 2, &[j, j + 2]))?;
    let t1 = &g.pluecker(&with(j - 1, &[j + 2]))? * &g.pluecker(&with(j - 2, &[j, j + 1]))?;
    let t2 = &g.pluecker(&with(j, &[]))? * &g.pluecker(&with(j - 2, &[j + 1, j + 2]))?;
    Ok(lhs == &t1 + &t2)
}

/// Matches the rows of the `(n, j)` grid seed with the rows of the
/// `A_n, J = {j}` seed of the canonical word by equality of minors on `N`.
/// Returns `grid row -> pipeline row` when every grid minor is found and the
/// two matrices agree entry for entry under that matching.
pub fn grid_pipeline_matching(n: usize, j: usize) -> Result<Option<Vec<usize>>> {
    let grid = seedgen::grassmannian_grid_seed(n, j)?;
    let d = DynkinDiagram::new(Series::A, n)?;
    let k: Vec<usize> = (1..=n).filter(|&v| v != j).collect();
    let w = crate::liealg::rw0k_word(&d, &k)?;
    let m = TypeAModel::new(n);
    let pipeline = seedgen::b_matrix_restricted(&d, &w, &[j])?;
    let rows = type_a_row_polynomials(&m, &d, &w, &[j])?;
    let gm = &grid.matrix;
    if gm.nrows() != pipeline.nrows() || gm.ncols() != pipeline.ncols() {
        return Ok(None);
    }
    let mut map = Vec::with_capacity(gm.nrows());
    for label in gm.row_labels() {
        let (r, c) = (0..grid.rows())
            .flat_map(|r| (0..grid.cols()).map(move |c| (r, c)))
            .find(|&(r, c)| &grid.label(r, c) == label)
            .expect("grid labels come from its subsets");
        let p = m.flag_minor(&grid.subsets[r][c])?;
        match rows.iter().position(|q| q == &p) {
            Some(i) => map.push(i),
            None => return Ok(None),
        }
    }
    let ncols = gm.ncols();
    // mutable rows come first in both seeds, so columns follow the row matching
    if map[..ncols].iter().any(|&i| i >= ncols) {
        return Ok(None);
    }
    let agree = (0..gm.nrows()).all(|a| (0..ncols).all(|c| gm.get(a, c) == pipeline.get(map[a], map[c])));
    Ok(agree.then_some(map))
}

// ---------------------------------------------------------------------------
// quadric

/// `Z[y_1, ..., y_{2n}]` modulo `q = Σ_{i=1}^n (-1)^i y_i y_{2n+1-i}`.
#[derive(Clone, Debug)]
pub struct QuadricModel {
    n: usize,
    names: Vec<String>,
}

impl QuadricModel {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Invalid(format!("quadric model needs n >= 3, got {n}")));
        }
        Ok(QuadricModel { n, names: (1..=2 * n).map(|i| format!("y{i}")).collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn y(&self, i: usize) -> Poly {
        Poly::var(2 * self.n, i - 1)
    }

    /// The defining quadric.
    pub fn q(&self) -> Poly {
        let n = self.n;
        let mut acc = Poly::zero(2 * n);
        for i in 1..=n {
            let t = &self.y(i) * &self.y(2 * n + 1 - i);
            if i % 2 == 0 {
                acc += &t;
            } else {
                acc -= &t;
            }
        }
        acc
    }

    /// Frozen coefficients: `q_0 = y_1`, `q_1 = y_n`, `q_2 = y_{n+1}`,
    /// `q_n = y_{2n}`, and for `3 <= k <= n-1`
    /// `q_k = y_{n+1-k} y_{n+k} - y_{n-k} y_{n+k+1} + ... ± y_1 y_{2n}`.
    pub fn qk_coeff(&self, k: usize) -> Result<Poly> {
        let n = self.n;
        Ok(match k {
            0 => self.y(1),
            1 => self.y(n),
            2 => self.y(n + 1),
            _ if k == n => self.y(2 * n),
            _ if k >= 3 && k < n => {
                let mut acc = Poly::zero(2 * n);
                for i in 1..=n + 1 - k {
                    let t = &self.y(i) * &self.y(2 * n + 1 - i);
                    if (n + 1 - k - i).is_multiple_of(2) {
                        acc += &t;
                    } else {
                        acc -= &t;
                    }
                }
                acc
            }
            _ => return Err(Error::Invalid(format!("q_{k} is defined for 0 <= k <= {n}"))),
        })
    }

    /// Reduces modulo `q` by rewriting `y_1 y_{2n} -> Σ_{i=2}^n (-1)^i y_i y_{2n+1-i}`.
    pub fn normal_form(&self, f: &Poly) -> Poly {
        let n = self.n;
        let mut rest = Poly::zero(2 * n);
        for i in 2..=n {
            let t = &self.y(i) * &self.y(2 * n + 1 - i);
            if i % 2 == 0 {
                rest += &t;
            } else {
                rest -= &t;
            }
        }
        let mut out = Poly::zero(2 * n);
        let mut todo = f.clone();
        while !todo.is_zero() {
            let mut next = Poly::zero(2 * n);
            for (e, c) in todo.terms() {
                let k = e[0].min(e[2 * n - 1]).max(0);
                let mono = Poly::monomial(2 * n, e.clone(), c.clone());
                if k == 0 {
                    out += &mono;
                    continue;
                }
                let mut base = e.clone();
                base[0] -= k;
                base[2 * n - 1] -= k;
                let t = &Poly::monomial(2 * n, base, c.clone()) * &rest.pow(k as u32);
                next += &t;
            }
            todo = next;
        }
        out
    }

    /// The right-hand side of `y_k y_{2n-k+1}` as displayed:
    /// `q_{n-1} + q_0 q_n` for `k = 2`, `q_{n-k+1} + q_{n-k+2}` for
    /// `3 <= k <= n-2`, `q_1 q_2 + q_3` for `k = n-1`, and
    /// `q_1 q_2 + q_0 q_3` when `n = 3`.
    pub fn displayed_rhs(&self, k: usize) -> Result<Poly> {
        let n = self.n;
        let q = |i| self.qk_coeff(i);
        Ok(if n == 3 && k == 2 {
            &(&q(1)? * &q(2)?) + &(&q(0)? * &q(3)?)
        } else if k == 2 {
            &q(n - 1)? + &(&q(0)? * &q(n)?)
        } else if k == n - 1 {
            &(&q(1)? * &q(2)?) + &q(3)?
        } else if (3..=n - 2).contains(&k) {
            &q(n - k + 1)? + &q(n - k + 2)?
        } else {
            return Err(Error::Invalid(format!("no exchange relation at k = {k}")));
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricRelation {
    pub k: usize,
    pub lhs: String,
    /// Right-hand side in the seed variables, e.g. `q4 + q0*q5`.
    pub rhs: String,
    /// The same expanded in the `y` coordinates.
    pub rhs_y: String,
    /// `y_k y_{2n-k+1} - rhs` reduces to zero modulo the quadric.
    pub holds: bool,
    /// The exchange monomials of the quadric seed give the displayed rhs.
    pub seed_agrees: bool,
}

/// Checks every exchange relation `y_k y_{2n-k+1} = M_k + N_k`, `2 <= k <= n-1`.
pub fn verify_quadric_relations(n: usize) -> Result<Vec<QuadricRelation>> {
    let model = QuadricModel::new(n)?;
    let seed = seedgen::quadric_seed(n)?;
    // variables of the seed in the y-ring: z_k = y_k, then q_0..q_n
    let mut vars: Vec<Poly> = (2..n).map(|k| model.y(k)).collect();
    for k in 0..=n {
        vars.push(model.qk_coeff(k)?);
    }
    let symbolic: Vec<Poly> = (0..seed.nrows()).map(|i| Poly::var(seed.nrows(), i)).collect();
    let mut out = Vec::new();
    for k in 2..n {
        let lhs = &model.y(k) * &model.y(2 * n - k + 1);
        let rhs = model.displayed_rhs(k)?;
        let (mp, np) = exchange_monomials(&seed, &vars, k - 2);
        let from_seed = &mp + &np;
        let (ms, ns) = exchange_monomials(&seed, &symbolic, k - 2);
        out.push(QuadricRelation {
            k,
            lhs: format!("y{k}*y{}", 2 * n - k + 1),
            rhs: (&ms + &ns).render(seed.row_labels()),
            rhs_y: rhs.render(model.names()),
            holds: model.normal_form(&(&lhs - &rhs)).is_zero(),
            seed_agrees: from_seed == rhs,
        });
    }
    Ok(out)
}
