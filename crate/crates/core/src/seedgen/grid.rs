use super::{fmt_subset, ExchangeMatrix};
use crate::error::{Error, Result};

/// Rectangular grid seed for the Grassmannian of `j`-subsets of `[1, n+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSeed {
    pub n: usize,
    pub j: usize,
    /// `subsets[r][c]` for grid row `r` and column `c` (0-based).
    pub subsets: Vec<Vec<Vec<usize>>>,
    pub matrix: ExchangeMatrix,
}

impl GridSeed {
    pub fn rows(&self) -> usize {
        self.j
    }

    pub fn cols(&self) -> usize {
        self.n - self.j + 1
    }

    pub fn is_frozen(&self, r: usize, c: usize) -> bool {
        r + 1 == self.rows() || c + 1 == self.cols()
    }

    pub fn label(&self, r: usize, c: usize) -> String {
        fmt_subset(&self.subsets[r][c])
    }
}

/// Grid with `j` rows and `n - j + 1` columns. The vertex in row `r`, column
/// `c` (1-based) is `{1..j-r} ∪ {j+c-r+1..j+c}`. Arrows go right, down and
/// diagonally north-west; the last row and last column are frozen.
pub fn grassmannian_grid_seed(n: usize, j: usize) -> Result<GridSeed> {
    if j == 0 || j > n {
        return Err(Error::Invalid(format!("grid needs 1 <= j <= n, got n={n}, j={j}")));
    }
    let rows = j;
    let cols = n - j + 1;
    let subsets: Vec<Vec<Vec<usize>>> = (1..=rows)
        .map(|r| {
            (1..=cols)
                .map(|c| (1..=j - r).chain(j + c - r + 1..=j + c).collect())
                .collect()
        })
        .collect();
    let frozen = |r: usize, c: usize| r + 1 == rows || c + 1 == cols;
    let mut order: Vec<(usize, usize)> = Vec::new();
    for pass in [false, true] {
        for r in 0..rows {
            for c in 0..cols {
                if frozen(r, c) == pass {
                    order.push((r, c));
                }
            }
        }
    }
    let nmut = order.iter().filter(|&&(r, c)| !frozen(r, c)).count();
    let pos = |r: usize, c: usize| order.iter().position(|&p| p == (r, c)).expect("grid vertex");
    let mut entries = vec![vec![0i64; nmut]; order.len()];
    let mut arrow = |from: (usize, usize), to: (usize, usize)| {
        let (a, b) = (pos(from.0, from.1), pos(to.0, to.1));
        if b < nmut {
            entries[a][b] += 1;
        }
        if a < nmut {
            entries[b][a] -= 1;
        }
    };
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                arrow((r, c), (r, c + 1));
            }
            if r + 1 < rows {
                arrow((r, c), (r + 1, c));
            }
            if r + 1 < rows && c + 1 < cols {
                arrow((r + 1, c + 1), (r, c));
            }
        }
    }
    let labels: Vec<String> = order.iter().map(|&(r, c)| fmt_subset(&subsets[r][c])).collect();
    let matrix = ExchangeMatrix::new(entries, labels.clone(), labels[..nmut].to_vec())?;
    Ok(GridSeed { n, j, subsets, matrix })
}

/// Seed of the quadric of dimension `2n - 2`: mutable `z_2, ..., z_{n-1}`,
/// frozen `q_0, ..., q_n`. Column `z_k` encodes the relation
/// `z_k z_{2n-k+1} = M + N` with `M` on the positive entries.
pub fn quadric_seed(n: usize) -> Result<ExchangeMatrix> {
    if n < 3 {
        return Err(Error::Invalid(format!("quadric seed needs n >= 3, got {n}")));
    }
    let nmut = n - 2;
    let mut rows: Vec<String> = (2..n).map(|k| format!("z{k}")).collect();
    let cols = rows.clone();
    rows.extend((0..=n).map(|k| format!("q{k}")));
    let mut entries = vec![vec![0i64; nmut]; rows.len()];
    let q = |k: usize| nmut + k;
    for k in 2..n {
        let col = k - 2;
        let (plus, minus): (Vec<usize>, Vec<usize>) = if n == 3 {
            (vec![1, 2], vec![0, 3])
        } else if k == 2 {
            (vec![n - 1], vec![0, n])
        } else if k == n - 1 {
            (vec![1, 2], vec![3])
        } else {
            (vec![n - k + 1], vec![n - k + 2])
        };
        for p in plus {
            entries[q(p)][col] += 1;
        }
        for m in minus {
            entries[q(m)][col] -= 1;
        }
    }
    ExchangeMatrix::new(entries, rows, cols)
}

/// The 11 x 5 extended exchange matrix of the isotropic D5 seed, rows
/// `z1..z5, q1..q5, q0`.
pub fn d5_isotropic_seed() -> ExchangeMatrix {
    let entries = vec![
        vec![0, 0, 0, 0, 1],
        vec![0, 0, 1, 1, -1],
        vec![0, -1, 0, 0, 0],
        vec![0, -1, 0, 0, 1],
        vec![-1, 1, 0, -1, 0],
        vec![1, 0, 0, 0, -1],
        vec![0, 0, 1, 0, 0],
        vec![0, 0, -1, 0, 1],
        vec![0, 0, 0, 1, -1],
        vec![0, 0, 0, -1, 0],
        vec![1, 0, 0, 0, 0],
    ];
    let mut rows: Vec<String> = (1..=5).map(|k| format!("z{k}")).collect();
    let cols = rows.clone();
    rows.extend((1..=5).map(|k| format!("q{k}")));
    rows.push("q0".into());
    ExchangeMatrix::new(entries, rows, cols).expect("fixed matrix is well formed")
}
